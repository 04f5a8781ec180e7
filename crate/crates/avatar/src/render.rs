//! Procedural face rasterizer.
//!
//! Geometry is specified as fractions of the canvas size and snapped to whole
//! pixels before drawing. A pixel is filled when its center lies inside the
//! ellipse, evaluated in doubled integer coordinates, so output depends on no
//! floating-point rounding beyond the initial snapping.

use std::sync::atomic::{AtomicU64, Ordering};

use vida_core::RgbaImage;

use crate::{AvatarError, FaceParams};

pub const MIN_FACE_SIZE: u32 = 32;
pub const SKIN: [u8; 4] = [230, 190, 170, 255];
pub const EYE: [u8; 4] = [45, 35, 40, 255];
pub const MOUTH: [u8; 4] = [140, 40, 55, 255];

/// `pct` percent of `size`, rounded down.
fn frac(size: u32, pct: u32) -> i64 {
    i64::from(size * pct / 100)
}

/// Fills every pixel whose center is inside the axis-aligned ellipse with
/// center (cx, cy) and radii (rx, ry). A zero radius draws nothing.
pub fn fill_ellipse(img: &mut RgbaImage, cx: i64, cy: i64, rx: i64, ry: i64, rgba: [u8; 4]) {
    if rx <= 0 || ry <= 0 {
        return;
    }
    let (w, h) = (i64::from(img.width()), i64::from(img.height()));
    let (rx2, ry2) = (rx * rx, ry * ry);
    let limit = 4 * rx2 * ry2;
    for y in (cy - ry).max(0)..(cy + ry + 1).min(h) {
        let dy = 2 * y + 1 - 2 * cy;
        for x in (cx - rx).max(0)..(cx + rx + 1).min(w) {
            let dx = 2 * x + 1 - 2 * cx;
            if dx * dx * ry2 + dy * dy * rx2 <= limit {
                img.put_pixel(x as u32, y as u32, rgba);
            }
        }
    }
}

/// Mouth half-height in rows: floor(0.14 · size · openness).
pub fn mouth_half_height(size: u32, openness: f64) -> i64 {
    (0.14 * f64::from(size) * openness.clamp(0.0, 1.0)).floor() as i64
}

pub fn render_face(params: &FaceParams, size: u32) -> Result<RgbaImage, AvatarError> {
    if size < MIN_FACE_SIZE {
        return Err(AvatarError::SizeTooSmall {
            size,
            min: MIN_FACE_SIZE,
        });
    }
    let mut img = RgbaImage::new(size, size);
    fill_ellipse(
        &mut img,
        frac(size, 50),
        frac(size, 50),
        frac(size, 42),
        frac(size, 48),
        SKIN,
    );

    let eye_r = frac(size, 6);
    let eye_h = (eye_r as f64 * (1.0 - params.blink.clamp(0.0, 1.0))).floor() as i64;
    for ex in [35, 65] {
        fill_ellipse(&mut img, frac(size, ex), frac(size, 38), eye_r, eye_h, EYE);
    }

    let mouth_h = mouth_half_height(size, params.openness());
    fill_ellipse(&mut img, frac(size, 50), frac(size, 72), frac(size, 16), mouth_h, MOUTH);
    Ok(img)
}

/// Anything that turns face parameters into a face image.
pub trait FaceRenderer: Send + Sync {
    fn render(&self, params: &FaceParams, size: u32) -> Result<RgbaImage, AvatarError>;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Rasterizer;

impl FaceRenderer for Rasterizer {
    fn render(&self, params: &FaceParams, size: u32) -> Result<RgbaImage, AvatarError> {
        render_face(params, size)
    }
}

/// Wraps a renderer and counts invocations.
#[derive(Debug, Default)]
pub struct CountingRenderer<R = Rasterizer> {
    inner: R,
    calls: AtomicU64,
}

impl<R: FaceRenderer> CountingRenderer<R> {
    pub fn new(inner: R) -> Self {
        Self {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }
}

impl<R: FaceRenderer> FaceRenderer for CountingRenderer<R> {
    fn render(&self, params: &FaceParams, size: u32) -> Result<RgbaImage, AvatarError> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.render(params, size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Viseme;

    fn rows_with(img: &RgbaImage, rgba: [u8; 4]) -> usize {
        (0..img.height())
            .filter(|&y| (0..img.width()).any(|x| img.pixel(x, y) == rgba))
            .count()
    }

    #[test]
    fn neutral_mouth_rows() {
        for size in [32, 64, 128, 200, 256] {
            let img = render_face(&FaceParams::neutral(), size).unwrap();
            let hh = (0.14 * size as f64 * 0.05).floor() as usize;
            let expected = if hh == 0 { 0 } else { 2 * hh };
            assert_eq!(rows_with(&img, MOUTH), expected, "size {size}");
        }
    }

    #[test]
    fn open_mouth_rows() {
        let img = render_face(&FaceParams::pure(Viseme::A), 128).unwrap();
        // Half-height 17 covers rows cy-17 ..= cy+16 by pixel-center test.
        assert_eq!(rows_with(&img, MOUTH), 34);
        let closed = render_face(&FaceParams::pure(Viseme::Mbp), 128).unwrap();
        assert_eq!(rows_with(&closed, MOUTH), 0);
    }

    #[test]
    fn blink_hides_eyes() {
        let mut p = FaceParams::neutral();
        assert!(rows_with(&render_face(&p, 128).unwrap(), EYE) > 0);
        p.blink = 1.0;
        assert_eq!(rows_with(&render_face(&p, 128).unwrap(), EYE), 0);
    }

    #[test]
    fn corners_transparent_and_center_skin() {
        let img = render_face(&FaceParams::neutral(), 64).unwrap();
        assert_eq!(img.pixel(0, 0), [0, 0, 0, 0]);
        assert_eq!(img.pixel(63, 63), [0, 0, 0, 0]);
        assert_eq!(img.pixel(32, 20), SKIN);
    }

    #[test]
    fn too_small() {
        assert!(matches!(
            render_face(&FaceParams::neutral(), 31),
            Err(AvatarError::SizeTooSmall { size: 31, .. })
        ));
    }

    /// Brute-force float check of the integer inside test.
    #[test]
    fn ellipse_matches_float_oracle() {
        for (cx, cy, rx, ry) in [(10, 10, 7, 4), (16, 12, 3, 9), (5, 5, 5, 5), (0, 3, 4, 2)] {
            let mut img = RgbaImage::new(24, 24);
            fill_ellipse(&mut img, cx, cy, rx, ry, [1, 2, 3, 4]);
            for y in 0..24 {
                for x in 0..24 {
                    let (px, py) = (x as f64 + 0.5, y as f64 + 0.5);
                    let v = ((px - cx as f64) / rx as f64).powi(2) + ((py - cy as f64) / ry as f64).powi(2);
                    assert_eq!(img.pixel(x, y)[3] == 4, v <= 1.0, "({x},{y}) for {cx},{cy},{rx},{ry}");
                }
            }
        }
    }

    #[test]
    fn counting() {
        let r = CountingRenderer::new(Rasterizer);
        assert_eq!(r.calls(), 0);
        r.render(&FaceParams::neutral(), 64).unwrap();
        r.render(&FaceParams::neutral(), 64).unwrap();
        assert_eq!(r.calls(), 2);
    }
}
