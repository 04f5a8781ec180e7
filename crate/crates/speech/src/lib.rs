//! Speech front end built on a deterministic tone codec.
//!
//! Text goes through [`g2p`] and [`predict_durations`] into a timed phoneme
//! sequence, which [`synthesize`] renders as one pure tone per phoneme. The
//! same timings drive lip motion downstream. [`asr_decode`] inverts the
//! codec, so any lexicon word with a unique pronunciation survives a
//! synthesize/decode round trip unchanged.

mod asr;
mod error;
mod goertzel;
mod lexicon;
mod phoneme;
mod tts;
mod wav;

pub use asr::{
    asr_decode, rms, Transcript, WordTiming, HOP_MS, HOP_SAMPLES, MIN_RUN, SILENCE_RMS, UNKNOWN_WORD, WINDOW_MS,
    WINDOW_SAMPLES,
};
pub use error::SpeechError;
pub use goertzel::{goertzel_energy, MIN_WINDOW};
pub use lexicon::{g2p, normalize_words, word_phonemes, Lexicon};
pub use phoneme::{Phoneme, UnknownPhoneme};
pub use tts::{
    default_duration_ms, predict_durations, synthesize, total_duration_ms, validate_timings, PhonemeTiming,
    CONSONANT_MS, MIN_DURATION_MS, SILENCE_MS, VOWEL_MS,
};
pub use wav::{read_wav, write_wav, write_wav_file};

/// Text straight to timed phonemes and audio.
pub fn speak(text: &str, lex: &Lexicon) -> Result<(Vec<PhonemeTiming>, vida_core::AudioBuffer), SpeechError> {
    let timings = predict_durations(&g2p(text, lex)?)?;
    let audio = synthesize(&timings)?;
    Ok((timings, audio))
}
