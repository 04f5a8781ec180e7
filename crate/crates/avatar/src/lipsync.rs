//! Frame-by-frame audio/mouth agreement check.

use vida_core::{AudioBuffer, SAMPLE_RATE_HZ};
use vida_speech::{rms, PhonemeTiming, SILENCE_RMS};

use crate::{build_viseme_track, sample_face_params, Viseme, CROSSFADE_MS};

pub const OPEN_THRESHOLD: f64 = 0.1;
pub const AUDIO_WINDOW_MS: i64 = 40;
pub const LONG_SILENCE_MS: u32 = 200;
pub const REST_OPENNESS: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub enum LipSyncViolation {
    /// Mouth open with no sound nearby.
    OpenInSilence { t_ms: i64, openness: f64, rms: f64 },
    /// Mouth moving inside a long pause.
    MovingInPause { t_ms: i64, openness: f64 },
}

fn window_rms(audio: &AudioBuffer, t_ms: i64) -> f64 {
    let per_ms = i64::from(SAMPLE_RATE_HZ / 1000);
    let len = audio.len() as i64;
    let lo = ((t_ms - AUDIO_WINDOW_MS) * per_ms).clamp(0, len) as usize;
    let hi = ((t_ms + AUDIO_WINDOW_MS) * per_ms).clamp(0, len) as usize;
    // Samples outside the utterance are silence and count toward the mean.
    let span = (2 * AUDIO_WINDOW_MS * per_ms) as f64;
    let inside = rms(&audio.samples()[lo..hi]);
    (inside * inside * (hi - lo) as f64 / span).sqrt()
}

/// Checks every frame time from 0 through the end of the utterance.
pub fn lip_sync_violations(
    timings: &[PhonemeTiming],
    audio: &AudioBuffer,
    frame_period_ms: u32,
) -> Vec<LipSyncViolation> {
    let track = build_viseme_track(timings);
    let pauses: Vec<(i64, i64)> = track
        .segments
        .iter()
        .filter(|s| s.viseme == Viseme::Sil && s.end_ms - s.start_ms >= LONG_SILENCE_MS)
        .map(|s| (i64::from(s.start_ms), i64::from(s.end_ms)))
        .collect();
    let end = i64::from(track.end_ms()) + 2 * AUDIO_WINDOW_MS;
    let mut out = Vec::new();
    let mut t = 0;
    while t <= end {
        let openness = sample_face_params(&track, t).openness();
        if openness > OPEN_THRESHOLD {
            let r = window_rms(audio, t);
            if r <= SILENCE_RMS {
                out.push(LipSyncViolation::OpenInSilence {
                    t_ms: t,
                    openness,
                    rms: r,
                });
            }
        }
        let in_pause = pauses
            .iter()
            .any(|&(s, e)| t >= s + CROSSFADE_MS && t < e - CROSSFADE_MS);
        if in_pause && openness > REST_OPENNESS {
            out.push(LipSyncViolation::MovingInPause { t_ms: t, openness });
        }
        t += i64::from(frame_period_ms);
    }
    out
}
