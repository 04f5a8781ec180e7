#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use vida_core::{frame_period_micros, EngineConfig, Timestamp};
use vida_streamer::{decode_packet, Engine, MediaPacket, Outbound, Session, VirtualClock};

pub fn assets_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../assets")
}

pub fn engine_with(cfg: EngineConfig) -> Engine {
    Engine::load(cfg, &assets_dir()).expect("bundled assets load")
}

pub fn engine() -> Arc<Engine> {
    Arc::new(engine_with(EngineConfig::default()))
}

pub fn virtual_session(id: u64, engine: &Arc<Engine>) -> (Session, Arc<VirtualClock>) {
    let clock = Arc::new(VirtualClock::new());
    (Session::new(id, engine.clone(), clock.clone()), clock)
}

/// Advances a virtual-clock session tick by tick, submitting `requests`
/// (tick index, text) just before their tick, and drains the queue as it
/// goes.
pub fn run_ticks(session: &mut Session, clock: &VirtualClock, ticks: u64, requests: &[(u64, &str)]) -> Vec<Outbound> {
    let period = frame_period_micros(session.engine().config());
    let mut out = Vec::new();
    for n in 0..ticks {
        for (_, text) in requests.iter().filter(|(at, _)| *at == n) {
            session.handle_text_request(text).unwrap();
        }
        let now = Timestamp::from_micros(n * period + 1);
        clock.set(session.origin() + now);
        session.pace(now).unwrap();
        out.extend(session.queue().drain());
    }
    out
}

pub fn decoded(out: &[Outbound]) -> Vec<MediaPacket> {
    out.iter().map(|o| decode_packet(&o.bytes).unwrap()).collect()
}
