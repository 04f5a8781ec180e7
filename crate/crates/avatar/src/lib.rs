//! Talking-head driving, rendering and compositing.
//!
//! Phoneme timings become a [`VisemeTrack`], which is sampled once per video
//! frame into [`FaceParams`]. [`render_face`] rasterizes the parameters, the
//! play controller picks the body frame for the current mode, and [`fuse`]
//! composites the face onto it.

mod body;
mod error;
mod fuse;
mod lipsync;
mod play;
mod render;
mod viseme;

pub use body::{
    load_body_assets, procedural_body, sway_px, BodyAssets, PROCEDURAL_LOOP_FRAMES, PROCEDURAL_TRANSITION_FRAMES,
};
pub use error::AvatarError;
pub use fuse::{blend, fuse, fuse_into};
pub use lipsync::{
    lip_sync_violations, LipSyncViolation, AUDIO_WINDOW_MS, LONG_SILENCE_MS, OPEN_THRESHOLD, REST_OPENNESS,
};
pub use play::{frames, play_control_step, PlayEvent, PlayMode, PlayState};
pub use render::{
    fill_ellipse, mouth_half_height, render_face, CountingRenderer, FaceRenderer, Rasterizer, EYE, MIN_FACE_SIZE,
    MOUTH, SKIN,
};
pub use viseme::{
    blink_at, build_viseme_track, phoneme_to_viseme, sample_face_params, FaceParams, Viseme, VisemeSegment,
    VisemeTrack, BLINK_MS, BLINK_PERIOD_MS, CROSSFADE_MS,
};
