//! Pre-loaded body frames for each play mode.

use std::path::{Path, PathBuf};

use vida_core::{EngineConfig, RgbaImage, PROCEDURAL_BODY};

use crate::fuse::{blend, fuse_into};
use crate::{render_face, AvatarError, FaceParams};

pub const PROCEDURAL_LOOP_FRAMES: usize = 50;
pub const PROCEDURAL_TRANSITION_FRAMES: usize = 10;

const BACKDROP_TOP: [u8; 3] = [52, 60, 82];
const BACKDROP_BOTTOM: [u8; 3] = [92, 104, 128];
const IDLE_SHIRT: [u8; 4] = [70, 110, 160, 255];
const SPEAK_SHIRT: [u8; 4] = [64, 128, 112, 255];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BodyAssets {
    pub idle_loop: Vec<RgbaImage>,
    pub enter_speak: Vec<RgbaImage>,
    pub speak_loop: Vec<RgbaImage>,
    pub exit_speak: Vec<RgbaImage>,
}

impl BodyAssets {
    pub fn dimensions(&self) -> (u32, u32) {
        let f = &self.idle_loop[0];
        (f.width(), f.height())
    }
}

/// Horizontal torso offset for loop frame `i`.
pub fn sway_px(i: usize) -> i64 {
    let phase = 2.0 * std::f64::consts::PI * (i % PROCEDURAL_LOOP_FRAMES) as f64 / PROCEDURAL_LOOP_FRAMES as f64;
    (2.0 * phase.sin()).round() as i64
}

fn backdrop(w: u32, h: u32) -> RgbaImage {
    let mut img = RgbaImage::new(w, h);
    for y in 0..h {
        let t = (y * 255 / h.max(1)) as u8;
        let c = [0, 1, 2].map(|i| blend(BACKDROP_BOTTOM[i], BACKDROP_TOP[i], t));
        for x in 0..w {
            img.put_pixel(x, y, [c[0], c[1], c[2], 255]);
        }
    }
    img
}

fn body_frame(cfg: &EngineConfig, base: &RgbaImage, face: &RgbaImage, shirt: [u8; 4], i: usize) -> RgbaImage {
    let (w, h) = (i64::from(cfg.video_width), i64::from(cfg.video_height));
    let mut img = base.clone();
    let fs = i64::from(cfg.face_size);
    let center = i64::from(cfg.anchor_x) + fs / 2 + sway_px(i);
    let half = fs * 5 / 8;
    let top = (i64::from(cfg.anchor_y) + fs * 7 / 8).min(h);
    for y in top..h {
        for x in (center - half).max(0)..(center + half).min(w) {
            img.put_pixel(x as u32, y as u32, shirt);
        }
    }
    fuse_into(&mut img, face, (cfg.anchor_x, cfg.anchor_y)).expect("config validated anchor");
    img
}

fn crossfade(from: &RgbaImage, to: &RgbaImage, frames: usize) -> Vec<RgbaImage> {
    (1..=frames)
        .map(|k| {
            let a = ((255 * k + frames.div_ceil(2)) / (frames + 1)) as u8;
            let px = from
                .pixels()
                .iter()
                .zip(to.pixels())
                .map(|(&f, &t)| blend(t, f, a))
                .collect();
            RgbaImage::from_pixels(from.width(), from.height(), px).expect("same size")
        })
        .collect()
}

/// Idle and speak loops of 50 frames with a swaying torso and the neutral
/// face in place, joined by 10-frame crossfades.
pub fn procedural_body(cfg: &EngineConfig) -> Result<BodyAssets, AvatarError> {
    let face = render_face(&FaceParams::neutral(), cfg.face_size)?;
    let base = backdrop(cfg.video_width, cfg.video_height);
    let lp = |shirt| {
        (0..PROCEDURAL_LOOP_FRAMES)
            .map(|i| body_frame(cfg, &base, &face, shirt, i))
            .collect::<Vec<_>>()
    };
    let idle_loop = lp(IDLE_SHIRT);
    let speak_loop = lp(SPEAK_SHIRT);
    let enter_speak = crossfade(&idle_loop[0], &speak_loop[0], PROCEDURAL_TRANSITION_FRAMES);
    let exit_speak = crossfade(&speak_loop[0], &idle_loop[0], PROCEDURAL_TRANSITION_FRAMES);
    Ok(BodyAssets {
        idle_loop,
        enter_speak,
        speak_loop,
        exit_speak,
    })
}

fn read_state_dir(
    dir: &Path,
    required: bool,
    name: &'static str,
    cfg: &EngineConfig,
) -> Result<Vec<RgbaImage>, AvatarError> {
    let path = dir.join(name);
    if !path.is_dir() {
        return if required {
            Err(AvatarError::EmptyState(name))
        } else {
            Ok(Vec::new())
        };
    }
    let io = |source| AvatarError::Io {
        path: path.clone(),
        source,
    };
    let mut files: Vec<(u64, PathBuf)> = Vec::new();
    for entry in std::fs::read_dir(&path).map_err(io)? {
        let p = entry.map_err(io)?.path();
        let numbered = p
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("png"))
            .then(|| p.file_stem()?.to_str()?.parse::<u64>().ok())
            .flatten();
        if let Some(n) = numbered {
            files.push((n, p));
        }
    }
    files.sort();
    let frames = files
        .into_iter()
        .map(|(_, p)| load_frame(&p, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    if required && frames.is_empty() {
        return Err(AvatarError::EmptyState(name));
    }
    Ok(frames)
}

/// Decodes a PNG as RGBA and makes it opaque.
fn load_frame(path: &Path, cfg: &EngineConfig) -> Result<RgbaImage, AvatarError> {
    let img = image::open(path)
        .map_err(|source| AvatarError::Decode {
            path: path.to_path_buf(),
            source,
        })?
        .into_rgba8();
    let (w, h) = img.dimensions();
    if (w, h) != (cfg.video_width, cfg.video_height) {
        return Err(AvatarError::Dimensions {
            path: path.to_path_buf(),
            w: cfg.video_width,
            h: cfg.video_height,
            found_w: w,
            found_h: h,
        });
    }
    let mut px = img.into_raw();
    for p in px.chunks_exact_mut(4) {
        p[3] = 255;
    }
    Ok(RgbaImage::from_pixels(w, h, px).expect("decoded buffer matches dimensions"))
}

/// Loads `idle/`, `enter/`, `speak/` and `exit/` numbered PNGs from `source`,
/// or generates frames when `source` is `"procedural"`.
pub fn load_body_assets(source: &str, cfg: &EngineConfig) -> Result<BodyAssets, AvatarError> {
    if source == PROCEDURAL_BODY {
        return procedural_body(cfg);
    }
    let dir = Path::new(source);
    Ok(BodyAssets {
        idle_loop: read_state_dir(dir, true, "idle", cfg)?,
        enter_speak: read_state_dir(dir, false, "enter", cfg)?,
        speak_loop: read_state_dir(dir, true, "speak", cfg)?,
        exit_speak: read_state_dir(dir, false, "exit", cfg)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> EngineConfig {
        EngineConfig {
            video_width: 96,
            video_height: 80,
            face_size: 48,
            anchor_x: 24,
            anchor_y: 8,
            ..EngineConfig::default()
        }
    }

    #[test]
    fn procedural_shape() {
        let b = load_body_assets(PROCEDURAL_BODY, &EngineConfig::default()).unwrap();
        assert_eq!(b.idle_loop.len(), 50);
        assert_eq!(b.speak_loop.len(), 50);
        assert_eq!(b.enter_speak.len(), 10);
        assert_eq!(b.exit_speak.len(), 10);
        for f in b
            .idle_loop
            .iter()
            .chain(&b.speak_loop)
            .chain(&b.enter_speak)
            .chain(&b.exit_speak)
        {
            assert_eq!((f.width(), f.height()), (320, 240));
            assert!(f.pixels().chunks_exact(4).all(|p| p[3] == 255));
        }
        assert_ne!(b.idle_loop[0], b.speak_loop[0]);
        assert_ne!(b.idle_loop[0], b.idle_loop[12]);
    }

    #[test]
    fn sway_period() {
        for i in 0..50 {
            assert_eq!(sway_px(i), sway_px(i + 50 * 7));
        }
        assert_eq!(sway_px(0), 0);
        assert_eq!(sway_px(12), 2);
        assert_eq!(sway_px(37), -2);
    }

    fn write_png(path: &Path, w: u32, h: u32) {
        image::RgbaImage::from_pixel(w, h, image::Rgba([1, 2, 3, 100]))
            .save(path)
            .unwrap();
    }

    #[test]
    fn png_directory() {
        let cfg = small_cfg();
        let dir = tempfile::tempdir().unwrap();
        for (state, n) in [("idle", 3), ("speak", 2), ("exit", 1)] {
            std::fs::create_dir(dir.path().join(state)).unwrap();
            for i in 0..n {
                write_png(&dir.path().join(state).join(format!("{i:03}.png")), 96, 80);
            }
        }
        std::fs::write(dir.path().join("idle/readme.txt"), "x").unwrap();
        let b = load_body_assets(dir.path().to_str().unwrap(), &cfg).unwrap();
        assert_eq!(
            (
                b.idle_loop.len(),
                b.enter_speak.len(),
                b.speak_loop.len(),
                b.exit_speak.len()
            ),
            (3, 0, 2, 1)
        );
        assert_eq!(b.idle_loop[0].pixel(0, 0), [1, 2, 3, 255]);

        std::fs::remove_dir_all(dir.path().join("speak")).unwrap();
        assert!(matches!(
            load_body_assets(dir.path().to_str().unwrap(), &cfg),
            Err(AvatarError::EmptyState("speak"))
        ));
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let cfg = small_cfg();
        let dir = tempfile::tempdir().unwrap();
        for state in ["idle", "speak"] {
            std::fs::create_dir(dir.path().join(state)).unwrap();
            write_png(&dir.path().join(state).join("000.png"), 96, 80);
        }
        write_png(&dir.path().join("speak/001.png"), 64, 80);
        assert!(matches!(
            load_body_assets(dir.path().to_str().unwrap(), &cfg),
            Err(AvatarError::Dimensions { found_w: 64, .. })
        ));
    }

    #[test]
    fn numeric_order() {
        let cfg = small_cfg();
        let dir = tempfile::tempdir().unwrap();
        std::fs::create_dir(dir.path().join("idle")).unwrap();
        std::fs::create_dir(dir.path().join("speak")).unwrap();
        write_png(&dir.path().join("speak/0.png"), 96, 80);
        for (name, v) in [("2.png", 20u8), ("10.png", 100), ("1.png", 10)] {
            image::RgbaImage::from_pixel(96, 80, image::Rgba([v, 0, 0, 255]))
                .save(dir.path().join("idle").join(name))
                .unwrap();
        }
        let b = load_body_assets(dir.path().to_str().unwrap(), &cfg).unwrap();
        let reds: Vec<u8> = b.idle_loop.iter().map(|f| f.pixel(0, 0)[0]).collect();
        assert_eq!(reds, vec![10, 20, 100]);
    }
}
