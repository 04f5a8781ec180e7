//! Duration model and tone synthesizer.

use serde::{Deserialize, Serialize};
use vida_core::{AudioBuffer, SAMPLE_RATE_HZ};

use crate::{Phoneme, SpeechError};

pub const VOWEL_MS: u32 = 120;
pub const SILENCE_MS: u32 = 100;
pub const CONSONANT_MS: u32 = 80;
pub const MIN_DURATION_MS: u32 = 10;

const SAMPLES_PER_MS: usize = (SAMPLE_RATE_HZ / 1000) as usize;
/// 5 ms linear ramp at each end of a phoneme.
const FADE_SAMPLES: usize = 5 * SAMPLES_PER_MS;
const AMPLITUDE: f64 = 0.5;

/// A phoneme placed on the utterance timeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhonemeTiming {
    pub phoneme: Phoneme,
    pub start_ms: u32,
    pub dur_ms: u32,
}

impl PhonemeTiming {
    pub fn end_ms(&self) -> u32 {
        self.start_ms + self.dur_ms
    }
}

pub fn default_duration_ms(p: Phoneme) -> u32 {
    if p.is_silence() {
        SILENCE_MS
    } else if p.is_vowel() {
        VOWEL_MS
    } else {
        CONSONANT_MS
    }
}

pub fn predict_durations(phonemes: &[Phoneme]) -> Result<Vec<PhonemeTiming>, SpeechError> {
    if phonemes.is_empty() {
        return Err(SpeechError::EmptyPhonemes);
    }
    let mut start_ms = 0;
    Ok(phonemes
        .iter()
        .map(|&phoneme| {
            let dur_ms = default_duration_ms(phoneme);
            let t = PhonemeTiming {
                phoneme,
                start_ms,
                dur_ms,
            };
            start_ms += dur_ms;
            t
        })
        .collect())
}

/// Checks minimum durations and that each timing starts where the previous
/// one ended.
pub fn validate_timings(timings: &[PhonemeTiming]) -> Result<(), SpeechError> {
    for (index, t) in timings.iter().enumerate() {
        if t.dur_ms < MIN_DURATION_MS {
            return Err(SpeechError::InvalidTimings {
                index,
                reason: format!("duration {} ms below {} ms", t.dur_ms, MIN_DURATION_MS),
            });
        }
        if index > 0 {
            let prev_end = timings[index - 1].end_ms();
            if t.start_ms != prev_end {
                let kind = if t.start_ms < prev_end { "overlap" } else { "gap" };
                return Err(SpeechError::InvalidTimings {
                    index,
                    reason: format!("{kind}: starts at {} ms, previous ends at {prev_end} ms", t.start_ms),
                });
            }
        }
    }
    Ok(())
}

pub fn total_duration_ms(timings: &[PhonemeTiming]) -> u32 {
    timings.iter().map(|t| t.dur_ms).sum()
}

fn render_tone(phoneme: Phoneme, n: usize, out: &mut Vec<i16>) {
    if phoneme.is_silence() {
        out.resize(out.len() + n, 0);
        return;
    }
    let w = 2.0 * std::f64::consts::PI * phoneme.tone_hz() / f64::from(SAMPLE_RATE_HZ);
    for i in 0..n {
        let ramp_in = i as f64 / FADE_SAMPLES as f64;
        let ramp_out = (n - 1 - i) as f64 / FADE_SAMPLES as f64;
        let gain = ramp_in.min(ramp_out).min(1.0);
        let x = AMPLITUDE * gain * (w * i as f64).sin();
        out.push((x * f64::from(i16::MAX)).round() as i16);
    }
}

/// Renders each phoneme as a pure tone at [`Phoneme::tone_hz`] (silence as
/// zeros), 16 samples per millisecond.
pub fn synthesize(timings: &[PhonemeTiming]) -> Result<AudioBuffer, SpeechError> {
    validate_timings(timings)?;
    let total = total_duration_ms(timings) as usize * SAMPLES_PER_MS;
    let mut samples = Vec::with_capacity(total);
    for t in timings {
        render_tone(t.phoneme, t.dur_ms as usize * SAMPLES_PER_MS, &mut samples);
    }
    Ok(AudioBuffer::new(samples))
}
