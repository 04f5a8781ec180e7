use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Environment variable naming the config file.
pub const CONFIG_ENV_VAR: &str = "VIDA_CONFIG";
pub const DEFAULT_CONFIG_PATH: &str = "./vida.toml";
/// `body_frames` value selecting the built-in generated body loops.
pub const PROCEDURAL_BODY: &str = "procedural";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid config key `{key}`: {reason}")]
    Invalid { key: &'static str, reason: String },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VideoFormat {
    /// Uncompressed RGB24.
    #[default]
    Raw,
    Png,
}

/// Asset file locations. Relative paths are resolved against an assets
/// directory chosen by the caller, see [`AssetPaths::resolve`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AssetPaths {
    pub lexicon: PathBuf,
    pub kg: PathBuf,
    pub qa_pairs: PathBuf,
    pub templates: PathBuf,
    /// A directory of PNG frames, or [`PROCEDURAL_BODY`].
    pub body_frames: String,
    pub news: PathBuf,
    pub cities: PathBuf,
    pub devices: PathBuf,
}

impl Default for AssetPaths {
    fn default() -> Self {
        Self {
            lexicon: "lexicon.txt".into(),
            kg: "kg.tsv".into(),
            qa_pairs: "qa_pairs.tsv".into(),
            templates: "templates.toml".into(),
            body_frames: PROCEDURAL_BODY.into(),
            news: "news.tsv".into(),
            cities: "cities.txt".into(),
            devices: "devices.txt".into(),
        }
    }
}

impl AssetPaths {
    pub fn resolve(&self, base: &Path) -> AssetPaths {
        let join = |p: &PathBuf| {
            if p.is_absolute() {
                p.clone()
            } else {
                base.join(p)
            }
        };
        let body_frames = if self.body_frames == PROCEDURAL_BODY {
            self.body_frames.clone()
        } else {
            join(&PathBuf::from(&self.body_frames)).to_string_lossy().into_owned()
        };
        AssetPaths {
            lexicon: join(&self.lexicon),
            kg: join(&self.kg),
            qa_pairs: join(&self.qa_pairs),
            templates: join(&self.templates),
            body_frames,
            news: join(&self.news),
            cities: join(&self.cities),
            devices: join(&self.devices),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    pub fps: u32,
    pub video_width: u32,
    pub video_height: u32,
    pub face_size: u32,
    pub anchor_x: u32,
    pub anchor_y: u32,
    /// Reference end-to-end budget reported next to measured latency.
    pub latency_budget_ms: u64,
    pub outbound_queue_cap: usize,
    pub max_sessions: usize,
    pub video_format: VideoFormat,
    pub listen_addr: String,
    pub assets: AssetPaths,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            fps: 25,
            video_width: 320,
            video_height: 240,
            face_size: 128,
            anchor_x: 96,
            anchor_y: 16,
            latency_budget_ms: 400,
            outbound_queue_cap: 64,
            max_sessions: 16,
            video_format: VideoFormat::Raw,
            listen_addr: "127.0.0.1:8080".into(),
            assets: AssetPaths::default(),
        }
    }
}

impl EngineConfig {
    pub fn frame_period_ms(&self) -> u64 {
        1000 / u64::from(self.fps)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |key, reason: String| Err(ConfigError::Invalid { key, reason });
        if self.fps == 0 {
            return invalid("fps", "must be at least 1".into());
        }
        if 1000 % self.fps != 0 {
            return invalid("fps", format!("1000 % {} != 0", self.fps));
        }
        for (key, value) in [("video_width", self.video_width), ("video_height", self.video_height)] {
            if value < 16 {
                return invalid(key, format!("{value} is below the 16 pixel minimum"));
            }
            if value > u32::from(u16::MAX) {
                return invalid(key, format!("{value} does not fit the u16 wire field"));
            }
        }
        // The face rasterizer needs at least 32 pixels to draw eyes and mouth.
        if self.face_size < 32 {
            return invalid("face_size", format!("{} is below the 32 pixel minimum", self.face_size));
        }
        if self.anchor_x + self.face_size > self.video_width {
            return invalid(
                "anchor_x",
                format!(
                    "face at x={} with size {} overflows width {}",
                    self.anchor_x, self.face_size, self.video_width
                ),
            );
        }
        if self.anchor_y + self.face_size > self.video_height {
            return invalid(
                "anchor_y",
                format!(
                    "face at y={} with size {} overflows height {}",
                    self.anchor_y, self.face_size, self.video_height
                ),
            );
        }
        if self.outbound_queue_cap < 8 {
            return invalid(
                "outbound_queue_cap",
                format!("{} is below the minimum of 8", self.outbound_queue_cap),
            );
        }
        if self.max_sessions == 0 {
            return invalid("max_sessions", "must be at least 1".into());
        }
        Ok(())
    }
}

/// Parse and validate config text. Missing keys take their defaults.
pub fn parse_config(text: &str) -> Result<EngineConfig, ConfigError> {
    let cfg: EngineConfig = toml::from_str(text).map_err(|e| {
        let line = e
            .span()
            .map(|span| text[..span.start.min(text.len())].matches('\n').count() + 1)
            .unwrap_or(1);
        ConfigError::Parse {
            line,
            message: e.message().to_string(),
        }
    })?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<EngineConfig, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

/// `$VIDA_CONFIG` if set, else `./vida.toml`.
pub fn config_path_from_env() -> PathBuf {
    std::env::var_os(CONFIG_ENV_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CONFIG_PATH))
}
