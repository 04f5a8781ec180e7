//! Reference decoder for the tone codec.
//!
//! Audio is cut into 20 ms windows every 10 ms. Each window is labelled as
//! silence (RMS below threshold) or as the phoneme whose tone carries the
//! most energy. Runs of at least [`MIN_RUN`] identical labels become
//! phonemes; shorter runs are boundary transients and are discarded. Silence
//! runs separate words, which are then looked up in the reverse lexicon.

use serde::{Deserialize, Serialize};
use vida_core::AudioBuffer;

use crate::goertzel::Goertzel;
use crate::{Lexicon, Phoneme, SpeechError};

pub const WINDOW_SAMPLES: usize = 320;
pub const HOP_SAMPLES: usize = 160;
pub const WINDOW_MS: u32 = 20;
pub const HOP_MS: u32 = 10;
pub const MIN_RUN: usize = 4;
pub const SILENCE_RMS: f64 = 0.01;
pub const UNKNOWN_WORD: &str = "<unk>";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordTiming {
    pub word: String,
    pub start_ms: u32,
    pub end_ms: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub text: String,
    pub confidence: f64,
    pub word_timings: Vec<WordTiming>,
}

/// RMS of a window with samples scaled to [-1, 1).
pub fn rms(window: &[i16]) -> f64 {
    if window.is_empty() {
        return 0.0;
    }
    let sum: f64 = window
        .iter()
        .map(|&s| {
            let x = f64::from(s) / 32768.0;
            x * x
        })
        .sum();
    (sum / window.len() as f64).sqrt()
}

struct Run {
    label: Phoneme,
    first: usize,
    last: usize,
}

impl Run {
    fn len(&self) -> usize {
        self.last - self.first + 1
    }
}

fn label_windows(samples: &[i16]) -> Vec<Phoneme> {
    let filters: Vec<(Phoneme, Goertzel)> = Phoneme::voiced().map(|p| (p, Goertzel::new(p.tone_hz()))).collect();
    samples
        .windows(WINDOW_SAMPLES)
        .step_by(HOP_SAMPLES)
        .map(|w| {
            if rms(w) < SILENCE_RMS {
                return Phoneme::Sil;
            }
            let mut best = (Phoneme::Sil, f64::NEG_INFINITY);
            for (p, g) in &filters {
                let e = g.energy(w);
                if e > best.1 {
                    best = (*p, e);
                }
            }
            best.0
        })
        .collect()
}

fn runs(labels: &[Phoneme]) -> Vec<Run> {
    let mut out: Vec<Run> = Vec::new();
    for (i, &label) in labels.iter().enumerate() {
        match out.last_mut() {
            Some(run) if run.label == label => run.last = i,
            _ => out.push(Run {
                label,
                first: i,
                last: i,
            }),
        }
    }
    out
}

pub fn asr_decode(audio: &AudioBuffer, lex: &Lexicon) -> Result<Transcript, SpeechError> {
    let samples = audio.samples();
    if samples.len() < WINDOW_SAMPLES {
        return Err(SpeechError::AudioTooShort {
            len: samples.len(),
            window: WINDOW_SAMPLES,
        });
    }
    let labels = label_windows(samples);

    // Keep runs long enough to be real phonemes, merging neighbours that
    // only a discarded transient separated.
    let mut accepted: Vec<Run> = Vec::new();
    let mut agreeing = 0usize;
    for run in runs(&labels).into_iter().filter(|r| r.len() >= MIN_RUN) {
        agreeing += run.len();
        match accepted.last_mut() {
            Some(prev) if prev.label == run.label => prev.last = run.last,
            _ => accepted.push(run),
        }
    }
    let confidence = agreeing as f64 / labels.len() as f64;

    let mut word_timings = Vec::new();
    let mut group: Vec<&Run> = Vec::new();
    let mut flush = |group: &mut Vec<&Run>| {
        if let (Some(first), Some(last)) = (group.first(), group.last()) {
            let pron: Vec<Phoneme> = group.iter().map(|r| r.label).collect();
            let word = lex.word_for(&pron).unwrap_or(UNKNOWN_WORD).to_string();
            word_timings.push(WordTiming {
                word,
                start_ms: first.first as u32 * HOP_MS,
                end_ms: last.last as u32 * HOP_MS + WINDOW_MS,
            });
        }
        group.clear();
    };
    for run in &accepted {
        if run.label.is_silence() {
            flush(&mut group);
        } else {
            group.push(run);
        }
    }
    flush(&mut group);

    let text = word_timings
        .iter()
        .map(|w| w.word.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    Ok(Transcript {
        text,
        confidence,
        word_timings,
    })
}
