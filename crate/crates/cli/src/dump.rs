use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use image::codecs::png::PngEncoder;
use image::{ExtendedColorType, ImageEncoder};
use serde::{Deserialize, Serialize};
use vida_avatar::PlayMode;
use vida_core::{frame_period_micros, Timestamp, VideoFormat};
use vida_speech::write_wav_file;
use vida_streamer::{
    decode_packet, write_record, Ack, ControlCode, Engine, FrameFormat, LatencyReport, PacketKind, Payload, Session,
    VirtualClock, METRICS_SCHEMA,
};

use crate::DumpArgs;

/// Upper bound on a dumped turn, in frames.
const MAX_TICKS: u64 = 25 * 600;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PacketCounts {
    pub video: usize,
    pub audio: usize,
    pub event: usize,
    pub control: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DumpReport {
    pub schema: u32,
    pub text: String,
    pub reply: String,
    pub fps: u32,
    pub width: u32,
    pub height: u32,
    pub video_format: VideoFormat,
    pub speech_ms: u64,
    pub stream_ms: u64,
    pub frames: usize,
    pub packets: PacketCounts,
    pub reference_e2e_ms: u64,
    pub latency: LatencyReport,
}

pub fn run(args: &DumpArgs) -> anyhow::Result<ExitCode> {
    let cfg = args.common.engine_config()?;
    let engine = Arc::new(Engine::load(cfg, args.common.assets_dir()).context("loading assets")?);
    let report = dump(engine, &args.text, &args.out)?;
    println!(
        "{}: {} frames, {} packets, reply {:?}",
        args.out.display(),
        report.frames,
        report.packets.video + report.packets.audio + report.packets.event + report.packets.control,
        report.reply
    );
    Ok(ExitCode::SUCCESS)
}

/// Plays one turn from an idle start until the avatar is idle again and
/// writes `reply.txt`, `audio.wav`, `frames/NNNN.png` (one per speaking
/// frame), `packets.bin` and `report.json` into `out`.
pub fn dump(engine: Arc<Engine>, text: &str, out: &Path) -> anyhow::Result<DumpReport> {
    let cfg = engine.config().clone();
    let frames_dir = out.join("frames");
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    if frames_dir.exists() {
        fs::remove_dir_all(&frames_dir).with_context(|| format!("cannot clear {}", frames_dir.display()))?;
    }
    fs::create_dir(&frames_dir).with_context(|| format!("cannot create {}", frames_dir.display()))?;

    let clock = Arc::new(VirtualClock::new());
    let mut session = Session::new(1, engine, clock.clone());
    match session.handle_text_request(text)? {
        Ack::Accepted => {}
        other => bail!("turn not accepted: {other:?}"),
    }
    let period = frame_period_micros(&cfg);
    let mut stream = Vec::new();
    let mut ended = false;
    let mut tick = 0;
    while !(ended && session.play_state().mode == PlayMode::Idle) {
        if tick >= MAX_TICKS {
            bail!("turn did not finish within {MAX_TICKS} frames");
        }
        let pts = Timestamp::from_micros(tick * period);
        clock.set(pts);
        session.pace(session.next_due())?;
        for o in session.queue().drain() {
            if o.kind == PacketKind::Control && o.bytes.last() == Some(&(ControlCode::SpeakEnd as u8)) {
                ended = true;
            }
            stream.push(o);
        }
        tick += 1;
    }

    let utterance = session.last_utterance().expect("accepted turn").clone();
    let packets: Vec<_> = stream
        .iter()
        .map(|o| decode_packet(&o.bytes))
        .collect::<Result<_, _>>()?;
    let speaking: BTreeSet<Timestamp> = packets
        .iter()
        .filter(|p| p.kind() == PacketKind::Audio)
        .map(|p| p.pts)
        .collect();

    let mut counts = PacketCounts::default();
    let mut frames = 0;
    let mut bin = Vec::new();
    for (o, p) in stream.iter().zip(&packets) {
        write_record(&mut bin, &o.bytes);
        match &p.payload {
            Payload::Video(v) => {
                counts.video += 1;
                if speaking.contains(&p.pts) {
                    let path = frames_dir.join(format!("{frames:04}.png"));
                    let png = match v.format {
                        FrameFormat::Png => v.data.clone(),
                        FrameFormat::Rgb24 => {
                            let mut png = Vec::new();
                            PngEncoder::new(&mut png).write_image(
                                &v.data,
                                u32::from(v.width),
                                u32::from(v.height),
                                ExtendedColorType::Rgb8,
                            )?;
                            png
                        }
                    };
                    write(&path, &png)?;
                    frames += 1;
                }
            }
            Payload::Audio(_) => counts.audio += 1,
            Payload::Event(_) => counts.event += 1,
            Payload::Control(_) => counts.control += 1,
        }
    }

    write(&out.join("reply.txt"), format!("{}\n", utterance.reply).as_bytes())?;
    let wav = out.join("audio.wav");
    write_wav_file(&wav, &utterance.audio).with_context(|| format!("cannot write {}", wav.display()))?;
    write(&out.join("packets.bin"), &bin)?;
    let report = DumpReport {
        schema: METRICS_SCHEMA,
        text: text.to_owned(),
        reply: utterance.reply,
        fps: cfg.fps,
        width: cfg.video_width,
        height: cfg.video_height,
        video_format: cfg.video_format,
        speech_ms: utterance.audio.duration_ms(),
        stream_ms: tick * period / 1000,
        frames,
        packets: counts,
        reference_e2e_ms: cfg.latency_budget_ms,
        latency: session.latency_reports()[0].clone(),
    };
    write(
        &out.join("report.json"),
        format!("{}\n", serde_json::to_string_pretty(&report)?).as_bytes(),
    )?;
    Ok(report)
}

fn write(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}
