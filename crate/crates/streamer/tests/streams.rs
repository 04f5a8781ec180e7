mod common;

use std::sync::Arc;
use std::time::Duration;

use common::*;
use vida_core::{EngineConfig, Timestamp};
use vida_streamer::{Outbound, PacketKind, Session, VirtualClock};

const SCRIPT: &[(u64, &str)] = &[
    (2, "hello"),
    (60, "book a hotel in paris for 2 nights on friday"),
    (260, "what's the temperature in london tomorrow"),
];

fn scripted_run(engine: &Arc<vida_streamer::Engine>) -> Vec<Outbound> {
    let (mut s, clock) = virtual_session(7, engine);
    run_ticks(&mut s, &clock, 400, SCRIPT)
}

#[test]
fn replay_is_byte_identical() {
    let engine = engine();
    assert_eq!(scripted_run(&engine), scripted_run(&engine));
}

#[test]
fn concurrent_sessions_match_sequential_runs() {
    let engine = engine();
    let sequential: Vec<Vec<Outbound>> = (0..4).map(|_| scripted_run(&engine)).collect();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let e = engine.clone();
            std::thread::spawn(move || scripted_run(&e))
        })
        .collect();
    let concurrent: Vec<Vec<Outbound>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert_eq!(concurrent, sequential);
}

fn small_queue_engine(cap: usize) -> Arc<vida_streamer::Engine> {
    Arc::new(engine_with(EngineConfig {
        outbound_queue_cap: cap,
        ..EngineConfig::default()
    }))
}

#[test]
fn idle_overflow_drops_oldest_video() {
    let engine = small_queue_engine(8);
    let clock = Arc::new(VirtualClock::new());
    let mut s = Session::new(1, engine, clock);
    s.pace(Timestamp::from_millis(800)).unwrap();
    let q = s.queue();
    assert_eq!(q.len(), 8);
    assert_eq!(q.dropped_video(), 12);
    let pts: Vec<u64> = q.drain().iter().map(|o| o.pts.as_micros()).collect();
    assert_eq!(pts, (12..20).map(|i| i * 40_000).collect::<Vec<u64>>());
}

#[test]
fn slow_consumer_never_loses_audio_or_events() {
    let engine = small_queue_engine(8);
    let clock = Arc::new(VirtualClock::new());
    let mut s = Session::new(1, engine, clock);
    let q = s.queue().clone();
    let consumer = std::thread::spawn(move || {
        // Stay away until the producer has overflowed the queue once.
        while q.dropped_video() == 0 && !q.is_closed() {
            std::thread::sleep(Duration::from_millis(1));
        }
        let mut got = Vec::new();
        while let Some(p) = q.pop() {
            got.push(p);
            std::thread::sleep(Duration::from_micros(300));
        }
        got
    });
    s.handle_text_request("book a hotel in paris for 2 nights on friday")
        .unwrap();
    let tts_len = s.last_utterance().unwrap().audio.len();
    s.pace(Timestamp::from_millis(12_000)).unwrap();
    s.queue().close();
    let got = consumer.join().unwrap();

    let count = |k| got.iter().filter(|o| o.kind == k).count();
    assert_eq!(count(PacketKind::Audio), tts_len.div_ceil(640));
    assert_eq!(count(PacketKind::Event), 1);
    assert_eq!(count(PacketKind::Control), 2);
    let dropped = s.queue().dropped_video() as usize;
    assert!(dropped > 0, "consumer was expected to fall behind");
    assert_eq!(count(PacketKind::Video) + dropped, 300);
    let video: Vec<u64> = got
        .iter()
        .filter(|o| o.kind == PacketKind::Video)
        .map(|o| o.pts.as_micros())
        .collect();
    assert!(video.windows(2).all(|w| w[0] < w[1]));
    let audio: Vec<u64> = got
        .iter()
        .filter(|o| o.kind == PacketKind::Audio)
        .map(|o| o.pts.as_micros())
        .collect();
    assert!(audio.windows(2).all(|w| w[1] - w[0] == 40_000));
}
