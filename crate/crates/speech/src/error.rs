use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpeechError {
    #[error("input text is empty after normalization")]
    EmptyText,
    #[error("phoneme sequence is empty")]
    EmptyPhonemes,
    #[error("invalid timing at index {index}: {reason}")]
    InvalidTimings { index: usize, reason: String },
    #[error("window of {len} samples is shorter than the {min} sample minimum")]
    WindowTooShort { len: usize, min: usize },
    #[error("audio of {len} samples is shorter than one {window} sample analysis window")]
    AudioTooShort { len: usize, window: usize },
    #[error("lexicon line {line}: {reason}")]
    LexiconSyntax { line: usize, reason: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("wav: {0}")]
    Wav(#[from] hound::Error),
    #[error("wav must be 16 kHz mono 16-bit PCM, got {sample_rate} Hz, {channels} channel(s), {bits} bit")]
    WavFormat { sample_rate: u32, channels: u16, bits: u16 },
}
