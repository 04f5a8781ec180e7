//! Shared building blocks for the vida engine.
//!
//! Every other crate in the workspace speaks in terms of the types defined
//! here: session-relative [`Timestamp`]s on a fixed frame grid, 16 kHz mono
//! [`AudioBuffer`]s, [`RgbaImage`] frames and the [`EngineConfig`] loaded from
//! `vida.toml`.

mod config;
mod media;
mod timing;

pub use config::{
    config_path_from_env, load_config, parse_config, AssetPaths, ConfigError, EngineConfig, VideoFormat,
    CONFIG_ENV_VAR, DEFAULT_CONFIG_PATH, PROCEDURAL_BODY,
};
pub use media::{AudioBuffer, ImageError, RgbaImage, SAMPLE_RATE_HZ};
pub use timing::{frame_period_micros, quantize_pts, Timestamp};
