use thiserror::Error;

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("session limit of {max} reached")]
    SessionLimit { max: usize },
    #[error(transparent)]
    Config(#[from] vida_core::ConfigError),
    #[error(transparent)]
    Dialog(#[from] vida_dialog::DialogError),
    #[error(transparent)]
    Speech(#[from] vida_speech::SpeechError),
    #[error(transparent)]
    Avatar(#[from] vida_avatar::AvatarError),
    #[error(transparent)]
    Wire(#[from] crate::WireError),
    #[error("png encoding failed: {0}")]
    Png(#[from] image::ImageError),
}
