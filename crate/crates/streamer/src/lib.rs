//! Realtime streaming of the talking avatar.
//!
//! A [`Session`] turns user requests into a muxed stream of [`MediaPacket`]s
//! on a fixed frame grid. Requests run through dialog, speech synthesis and
//! viseme driving; every tick then emits queued events, the next 40 ms audio
//! chunk and a video frame, with a face rendered only while speech is
//! playing. Packets go through a bounded [`OutboundQueue`] that sheds stale
//! video rather than audio. [`server`] exposes sessions over WebSocket.

mod bench;
mod clock;
mod engine;
mod error;
mod hub;
mod latency;
mod queue;
pub mod server;
mod session;
mod wire;

pub use bench::{run_bench, BenchReport, SessionBench, DEFAULT_BENCH_SCRIPT};
pub use clock::{Clock, RealClock, VirtualClock};
pub use engine::Engine;
pub use error::StreamError;
pub use hub::Hub;
pub use latency::{end_to_end_ms, percentile, LatencyReport, MetricsDoc, METRICS_SCHEMA};
pub use queue::{Enqueued, Outbound, OutboundQueue};
pub use session::{encode_frame, Ack, ReportHook, Request, Session, Utterance};
pub use wire::{
    decode_packet, encode_packet, split_records, write_record, AudioChunk, ControlCode, EventKind, EventMsg,
    FrameFormat, MediaPacket, PacketKind, Payload, VideoFrame, WireError, AUDIO_HEADER_LEN, HEADER_LEN,
    VIDEO_HEADER_LEN,
};
