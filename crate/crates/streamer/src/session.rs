use std::borrow::Cow;
use std::collections::VecDeque;
use std::sync::Arc;

use image::codecs::png::PngEncoder;
use image::{ExtendedColorType, ImageEncoder};
use vida_avatar::{
    build_viseme_track, fuse_into, play_control_step, sample_face_params, PlayEvent, PlayState, VisemeTrack,
};
use vida_core::{frame_period_micros, AudioBuffer, RgbaImage, Timestamp, VideoFormat, SAMPLE_RATE_HZ};
use vida_dialog::DialogState;
use vida_speech::{asr_decode, speak, PhonemeTiming, WINDOW_SAMPLES};

use crate::{
    encode_packet, AudioChunk, Clock, ControlCode, Engine, EventKind, EventMsg, FrameFormat, LatencyReport,
    MediaPacket, Outbound, OutboundQueue, Payload, StreamError, VideoFrame,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Request {
    Text(String),
    Audio(AudioBuffer),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ack {
    Accepted,
    Busy,
    Unintelligible,
}

/// The reply of the most recent accepted turn.
#[derive(Debug, Clone, PartialEq)]
pub struct Utterance {
    pub request: String,
    pub reply: String,
    pub timings: Vec<PhonemeTiming>,
    pub audio: AudioBuffer,
}

struct ActiveTurn {
    audio: AudioBuffer,
    track: VisemeTrack,
    epoch: Option<Timestamp>,
    t_request: Timestamp,
    t_transcript: Timestamp,
    t_reply_text: Timestamp,
    t_first_audio: Timestamp,
    t_first_frame: Option<Timestamp>,
    t_first_packet_sent: Option<Timestamp>,
}

pub type ReportHook = Box<dyn FnMut(&LatencyReport) + Send>;

/// One client's pipeline. Owned by a single pacing loop; requests are
/// handed to it between ticks.
pub struct Session {
    id: u64,
    engine: Arc<Engine>,
    clock: Arc<dyn Clock>,
    origin: Timestamp,
    period: u64,
    chunk_samples: usize,
    dialog: DialogState,
    play: PlayState,
    tick: u64,
    events: VecDeque<EventMsg>,
    turn: Option<ActiveTurn>,
    turns: u64,
    queue: Arc<OutboundQueue>,
    reports: Vec<LatencyReport>,
    last: Option<Utterance>,
    on_report: Option<ReportHook>,
    guard: Option<Box<dyn Send>>,
}

impl Session {
    /// A session whose epoch is the clock's current time.
    pub fn new(id: u64, engine: Arc<Engine>, clock: Arc<dyn Clock>) -> Self {
        let cfg = engine.config();
        let period = frame_period_micros(cfg);
        let queue = Arc::new(OutboundQueue::new(cfg.outbound_queue_cap));
        let origin = clock.now();
        Self {
            id,
            period,
            chunk_samples: (u64::from(SAMPLE_RATE_HZ) * period / 1_000_000) as usize,
            engine,
            clock,
            origin,
            dialog: DialogState::new(id),
            play: PlayState::idle(),
            tick: 0,
            events: VecDeque::new(),
            turn: None,
            turns: 0,
            queue,
            reports: Vec::new(),
            last: None,
            on_report: None,
            guard: None,
        }
    }

    pub fn set_report_hook(&mut self, hook: ReportHook) {
        self.on_report = Some(hook);
    }

    /// Keeps `guard` alive for as long as the session.
    pub(crate) fn hold(&mut self, guard: Box<dyn Send>) {
        self.guard = Some(guard);
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn engine(&self) -> &Arc<Engine> {
        &self.engine
    }

    pub fn clock(&self) -> &Arc<dyn Clock> {
        &self.clock
    }

    /// Clock reading at which pts 0 falls.
    pub fn origin(&self) -> Timestamp {
        self.origin
    }

    pub fn elapsed(&self) -> Timestamp {
        self.clock.now().saturating_sub(self.origin)
    }

    pub fn queue(&self) -> &Arc<OutboundQueue> {
        &self.queue
    }

    pub fn dialog_state(&self) -> &DialogState {
        &self.dialog
    }

    pub fn play_state(&self) -> &PlayState {
        &self.play
    }

    /// True from acceptance of a turn until its SpeakEnd has been emitted.
    pub fn is_busy(&self) -> bool {
        self.turn.is_some()
    }

    pub fn has_pending_events(&self) -> bool {
        !self.events.is_empty()
    }

    pub fn next_pts(&self) -> Timestamp {
        Timestamp::from_micros(self.tick * self.period)
    }

    /// Earliest session time at which [`Session::pace`] releases the next
    /// tick.
    pub fn next_due(&self) -> Timestamp {
        self.next_pts() + Timestamp::from_micros(1)
    }

    pub fn latency_reports(&self) -> &[LatencyReport] {
        &self.reports
    }

    pub fn last_utterance(&self) -> Option<&Utterance> {
        self.last.as_ref()
    }

    pub fn handle_text_request(&mut self, text: &str) -> Result<Ack, StreamError> {
        let now = self.elapsed();
        self.handle_request(Request::Text(text.to_owned()), now)
    }

    pub fn handle_audio_request(&mut self, audio: AudioBuffer) -> Result<Ack, StreamError> {
        let now = self.elapsed();
        self.handle_request(Request::Audio(audio), now)
    }

    /// Runs the turn pipeline up to synthesized audio. Packets follow on
    /// subsequent ticks. `t_request` is when the request reached the server.
    pub fn handle_request(&mut self, req: Request, t_request: Timestamp) -> Result<Ack, StreamError> {
        if self.turn.is_some() {
            let text = match &req {
                Request::Text(t) => t.clone(),
                Request::Audio(_) => String::new(),
            };
            self.events.push_back(EventMsg::new(EventKind::Busy, text));
            return Ok(Ack::Busy);
        }
        let text = match req {
            Request::Text(t) => t,
            Request::Audio(audio) => {
                if audio.len() < WINDOW_SAMPLES {
                    return Ok(self.unintelligible());
                }
                let transcript = asr_decode(&audio, self.engine.lexicon())?;
                if transcript.text.is_empty() {
                    return Ok(self.unintelligible());
                }
                self.events
                    .push_back(EventMsg::new(EventKind::Transcript, transcript.text.clone()));
                transcript.text
            }
        };
        if text.trim().is_empty() {
            return Ok(self.unintelligible());
        }
        let t_transcript = self.elapsed();
        let turn = self.engine.dialog().converse(&self.dialog, &text)?;
        self.dialog = turn.state;
        let t_reply_text = self.elapsed();
        let (timings, audio) = speak(&turn.reply, self.engine.lexicon())?;
        let t_first_audio = self.elapsed();
        let track = build_viseme_track(&timings);
        self.events
            .push_back(EventMsg::new(EventKind::Reply, turn.reply.clone()));
        self.turn = Some(ActiveTurn {
            audio: audio.clone(),
            track,
            epoch: None,
            t_request,
            t_transcript,
            t_reply_text,
            t_first_audio,
            t_first_frame: None,
            t_first_packet_sent: None,
        });
        self.last = Some(Utterance {
            request: text,
            reply: turn.reply,
            timings,
            audio,
        });
        Ok(Ack::Accepted)
    }

    fn unintelligible(&mut self) -> Ack {
        self.events.push_back(EventMsg::new(EventKind::Unintelligible, ""));
        Ack::Unintelligible
    }

    /// Emits every tick whose pts lies strictly before `now` (session time)
    /// and returns the number of packets enqueued. A frame becomes due once
    /// its interval has started, so one second releases pts 0 through
    /// 960 ms at 25 fps.
    pub fn pace(&mut self, now: Timestamp) -> Result<usize, StreamError> {
        let mut n = 0;
        while self.next_pts() < now {
            n += self.emit_tick()?;
        }
        Ok(n)
    }

    pub fn pace_elapsed(&mut self) -> Result<usize, StreamError> {
        let now = self.elapsed();
        self.pace(now)
    }

    fn emit_tick(&mut self) -> Result<usize, StreamError> {
        let pts = self.next_pts();
        let mut out: Vec<MediaPacket> = self
            .events
            .drain(..)
            .map(|e| MediaPacket {
                pts,
                payload: Payload::Event(e),
            })
            .collect();
        let mut play_event = None;
        let mut face_t_ms = None;
        let mut finished = false;
        if let Some(turn) = self.turn.as_mut() {
            let epoch = match turn.epoch {
                Some(e) => e,
                None => {
                    out.push(control(pts, ControlCode::SpeakStart));
                    play_event = Some(PlayEvent::SpeakStart);
                    turn.epoch = Some(pts);
                    pts
                }
            };
            let offset = (pts - epoch).as_micros();
            let start = (offset / self.period) as usize * self.chunk_samples;
            let samples = turn.audio.samples();
            if start < samples.len() {
                let mut chunk = samples[start..samples.len().min(start + self.chunk_samples)].to_vec();
                chunk.resize(self.chunk_samples, 0);
                out.push(MediaPacket {
                    pts,
                    payload: Payload::Audio(AudioChunk {
                        sample_rate: SAMPLE_RATE_HZ,
                        channels: 1,
                        samples: chunk,
                    }),
                });
                face_t_ms = Some((offset / 1000) as i64);
            } else {
                out.push(control(pts, ControlCode::SpeakEnd));
                play_event = Some(PlayEvent::SpeakEnd);
                finished = true;
            }
        }

        let engine = self.engine.clone();
        let cfg = engine.config();
        let (play, body) = play_control_step(&self.play, play_event, engine.body());
        self.play = play;
        let frame: Cow<RgbaImage> = match (face_t_ms, self.turn.as_mut()) {
            (Some(t), Some(turn)) => {
                let params = sample_face_params(&turn.track, t);
                let face = engine.renderer().render(&params, cfg.face_size)?;
                let mut f = body.clone();
                fuse_into(&mut f, &face, (cfg.anchor_x, cfg.anchor_y))?;
                turn.t_first_frame
                    .get_or_insert_with(|| self.clock.now().saturating_sub(self.origin));
                Cow::Owned(f)
            }
            _ => Cow::Borrowed(body),
        };
        out.push(MediaPacket {
            pts,
            payload: Payload::Video(encode_frame(&frame, cfg.video_format)?),
        });

        if finished {
            self.finish_turn();
        }
        let n = out.len();
        for p in &out {
            self.queue.enqueue_with_backpressure(Outbound {
                kind: p.kind(),
                pts,
                bytes: encode_packet(p)?,
            });
        }
        let sent = self.elapsed();
        if let Some(turn) = self.turn.as_mut() {
            turn.t_first_packet_sent.get_or_insert(sent);
        }
        self.tick += 1;
        Ok(n)
    }

    fn finish_turn(&mut self) {
        let Some(turn) = self.turn.take() else {
            return;
        };
        self.turns += 1;
        let first_packet = turn.t_first_packet_sent.unwrap_or(turn.t_first_audio);
        let report = LatencyReport::new(
            self.id,
            self.turns,
            turn.t_request,
            turn.t_transcript,
            turn.t_reply_text,
            turn.t_first_audio,
            turn.t_first_frame.unwrap_or(first_packet),
            first_packet,
        );
        if let Some(hook) = self.on_report.as_mut() {
            hook(&report);
        }
        self.reports.push(report);
    }
}

fn control(pts: Timestamp, code: ControlCode) -> MediaPacket {
    MediaPacket {
        pts,
        payload: Payload::Control(code),
    }
}

pub fn encode_frame(img: &RgbaImage, format: VideoFormat) -> Result<VideoFrame, StreamError> {
    let rgb = img.to_rgb24();
    let (format, data) = match format {
        VideoFormat::Raw => (FrameFormat::Rgb24, rgb),
        VideoFormat::Png => {
            let mut png = Vec::new();
            PngEncoder::new(&mut png).write_image(&rgb, img.width(), img.height(), ExtendedColorType::Rgb8)?;
            (FrameFormat::Png, png)
        }
    };
    Ok(VideoFrame {
        width: img.width() as u16,
        height: img.height() as u16,
        format,
        data,
    })
}
