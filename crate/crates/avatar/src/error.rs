use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AvatarError {
    #[error("face size {size} is below the minimum of {min}")]
    SizeTooSmall { size: u32, min: u32 },
    #[error("{what} of {w}x{h} at ({x}, {y}) does not fit a {bw}x{bh} frame")]
    OutOfBounds {
        what: &'static str,
        x: u32,
        y: u32,
        w: u32,
        h: u32,
        bw: u32,
        bh: u32,
    },
    #[error("{path}: frame is {found_w}x{found_h}, expected {w}x{h}")]
    Dimensions {
        path: PathBuf,
        w: u32,
        h: u32,
        found_w: u32,
        found_h: u32,
    },
    #[error("body assets: `{0}` has no frames")]
    EmptyState(&'static str),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot decode {path}: {source}")]
    Decode {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
}
