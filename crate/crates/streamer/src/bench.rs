use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use vida_avatar::PlayMode;
use vida_core::{frame_period_micros, Timestamp};

use crate::{percentile, Clock, Hub, PacketKind, RealClock, StreamError, METRICS_SCHEMA};

pub const DEFAULT_BENCH_SCRIPT: &[&str] = &[
    "hello",
    "what's the temperature in london tomorrow",
    "turn on the lamp",
    "any technology headlines",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionBench {
    pub session_id: u64,
    pub turns: u64,
    pub video_packets: u64,
    pub audio_packets: u64,
    pub achieved_fps: f64,
    pub p95_jitter_ms: f64,
    pub dropped_video: u64,
    pub dropped_audio: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema: u32,
    pub target_fps: u32,
    pub seconds: f64,
    pub sessions: Vec<SessionBench>,
    pub pass: bool,
}

/// Required share of the configured frame rate.
pub const FPS_PASS_RATIO: f64 = 0.99;

struct Departures {
    video: Vec<Timestamp>,
    audio: u64,
}

/// Runs `sessions` sessions in parallel against the real clock for
/// `duration`. Each session starts the next scripted turn as soon as the
/// avatar is idle again.
pub fn run_bench(
    hub: &Hub,
    sessions: usize,
    duration: Duration,
    script: &[String],
) -> Result<BenchReport, StreamError> {
    let cfg = hub.engine().config().clone();
    let period = frame_period_micros(&cfg);
    let end = Timestamp::from_micros(duration.as_micros() as u64);
    let clock = Arc::new(RealClock::new());
    let script: Arc<Vec<String>> = Arc::new(script.to_vec());

    let mut handles = Vec::new();
    for _ in 0..sessions {
        let mut session = hub.open_session(clock.clone())?;
        let queue = session.queue().clone();
        let queue_for_drops = queue.clone();
        let origin = session.origin();
        let consumer_clock = clock.clone();
        let consumer_queue = queue.clone();
        let consumer = std::thread::spawn(move || {
            let mut d = Departures {
                video: Vec::new(),
                audio: 0,
            };
            while let Some(p) = consumer_queue.pop() {
                match p.kind {
                    PacketKind::Video => d.video.push(consumer_clock.now().saturating_sub(origin)),
                    PacketKind::Audio => d.audio += 1,
                    _ => {}
                }
            }
            d
        });
        let script = script.clone();
        let pacer = std::thread::spawn(move || -> Result<(u64, u64), StreamError> {
            let mut next_line = 0usize;
            let result = (|| -> Result<(), StreamError> {
                while session.next_pts() < end {
                    session.clock().sleep_until(origin + session.next_due());
                    let idle = !session.is_busy()
                        && !session.has_pending_events()
                        && session.play_state().mode == PlayMode::Idle;
                    if idle && !script.is_empty() {
                        let line = &script[next_line % script.len()];
                        next_line += 1;
                        session.handle_text_request(line)?;
                    }
                    session.pace(session.elapsed().min(end))?;
                }
                Ok(())
            })();
            queue.close();
            result?;
            Ok((session.id(), session.latency_reports().len() as u64))
        });
        handles.push((pacer, consumer, queue_for_drops));
    }

    let mut out = Vec::new();
    for (pacer, consumer, queue) in handles {
        let paced = pacer.join().expect("pacer thread panicked");
        let d = consumer.join().expect("consumer thread panicked");
        let (session_id, turns) = paced?;
        let span_us = d
            .video
            .last()
            .map_or(0, |t| t.as_micros() + period)
            .max(end.as_micros());
        let jitter: Vec<f64> = d
            .video
            .windows(2)
            .map(|w| ((w[1] - w[0]).as_micros() as f64 - period as f64).abs() / 1000.0)
            .collect();
        out.push(SessionBench {
            session_id,
            turns,
            video_packets: d.video.len() as u64,
            audio_packets: d.audio,
            achieved_fps: d.video.len() as f64 * 1e6 / span_us as f64,
            p95_jitter_ms: percentile(&jitter, 0.95).unwrap_or(0.0),
            dropped_video: queue.dropped_video(),
            dropped_audio: 0,
        });
    }
    let target = f64::from(cfg.fps) * FPS_PASS_RATIO;
    let pass = out.iter().all(|s| s.achieved_fps >= target && s.dropped_audio == 0);
    Ok(BenchReport {
        schema: METRICS_SCHEMA,
        target_fps: cfg.fps,
        seconds: duration.as_secs_f64(),
        sessions: out,
        pass,
    })
}
