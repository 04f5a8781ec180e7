use std::path::Path;
use std::sync::Arc;

use vida_avatar::{load_body_assets, BodyAssets, FaceRenderer, Rasterizer};
use vida_core::EngineConfig;
use vida_dialog::DialogEngine;
use vida_speech::Lexicon;

use crate::StreamError;

/// Read-only resources shared by every session.
pub struct Engine {
    cfg: EngineConfig,
    dialog: DialogEngine,
    lexicon: Lexicon,
    body: BodyAssets,
    renderer: Arc<dyn FaceRenderer>,
}

impl Engine {
    pub fn new(cfg: EngineConfig, dialog: DialogEngine, lexicon: Lexicon, body: BodyAssets) -> Self {
        Self {
            cfg,
            dialog,
            lexicon,
            body,
            renderer: Arc::new(Rasterizer),
        }
    }

    /// Loads every asset named in `cfg`, resolving relative paths against
    /// `assets_dir`.
    pub fn load(cfg: EngineConfig, assets_dir: &Path) -> Result<Self, StreamError> {
        cfg.validate()?;
        let paths = cfg.assets.resolve(assets_dir);
        let dialog = DialogEngine::load(&paths)?;
        let lexicon = Lexicon::load(&paths.lexicon)?;
        let body = load_body_assets(&paths.body_frames, &cfg)?;
        Ok(Self::new(cfg, dialog, lexicon, body))
    }

    pub fn with_renderer(mut self, renderer: Arc<dyn FaceRenderer>) -> Self {
        self.renderer = renderer;
        self
    }

    pub fn config(&self) -> &EngineConfig {
        &self.cfg
    }

    pub fn dialog(&self) -> &DialogEngine {
        &self.dialog
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn body(&self) -> &BodyAssets {
        &self.body
    }

    pub fn renderer(&self) -> &dyn FaceRenderer {
        self.renderer.as_ref()
    }
}
