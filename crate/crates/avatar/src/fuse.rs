use vida_core::RgbaImage;

use crate::AvatarError;

/// Source-over channel blend with alpha in 0..=255, rounded to nearest.
pub fn blend(src: u8, dst: u8, alpha: u8) -> u8 {
    let (s, d, a) = (u32::from(src), u32::from(dst), u32::from(alpha));
    ((s * a + d * (255 - a) + 127) / 255) as u8
}

/// Composites `face` over a copy of `body` with its top-left corner at
/// `anchor`. The result is opaque.
pub fn fuse(body: &RgbaImage, face: &RgbaImage, anchor: (u32, u32)) -> Result<RgbaImage, AvatarError> {
    let mut out = body.clone();
    fuse_into(&mut out, face, anchor)?;
    Ok(out)
}

pub fn fuse_into(out: &mut RgbaImage, face: &RgbaImage, anchor: (u32, u32)) -> Result<(), AvatarError> {
    let (ax, ay) = anchor;
    let fits = u64::from(ax) + u64::from(face.width()) <= u64::from(out.width())
        && u64::from(ay) + u64::from(face.height()) <= u64::from(out.height());
    if !fits {
        return Err(AvatarError::OutOfBounds {
            what: "face",
            x: ax,
            y: ay,
            w: face.width(),
            h: face.height(),
            bw: out.width(),
            bh: out.height(),
        });
    }
    let bw = out.width() as usize;
    let fw = face.width() as usize;
    let src = face.pixels();
    let dst = out.pixels_mut();
    for y in 0..face.height() as usize {
        for x in 0..fw {
            let s = &src[(y * fw + x) * 4..][..4];
            let d = &mut dst[((y + ay as usize) * bw + x + ax as usize) * 4..][..4];
            match s[3] {
                0 => {}
                255 => d[..3].copy_from_slice(&s[..3]),
                a => {
                    for c in 0..3 {
                        d[c] = blend(s[c], d[c], a);
                    }
                }
            }
        }
    }
    for px in dst.chunks_exact_mut(4) {
        px[3] = 255;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transparent_face_is_identity() {
        let body = RgbaImage::filled(20, 10, [10, 20, 30, 255]);
        let face = RgbaImage::new(8, 8);
        assert_eq!(fuse(&body, &face, (12, 2)).unwrap(), body);
    }

    #[test]
    fn opaque_face_replaces_region() {
        let body = RgbaImage::filled(20, 10, [10, 20, 30, 255]);
        let face = RgbaImage::filled(4, 4, [200, 100, 50, 255]);
        let out = fuse(&body, &face, (3, 5)).unwrap();
        for y in 0..10 {
            for x in 0..20 {
                let inside = (3..7).contains(&x) && (5..9).contains(&y);
                let want = if inside { [200, 100, 50, 255] } else { [10, 20, 30, 255] };
                assert_eq!(out.pixel(x, y), want);
            }
        }
    }

    #[test]
    fn half_alpha_averages() {
        for (f, b) in [(200u8, 100u8), (90, 30), (201, 100), (255, 1)] {
            let body = RgbaImage::filled(4, 4, [b, b, b, 255]);
            let face = RgbaImage::filled(2, 2, [f, f, f, 128]);
            let out = fuse(&body, &face, (1, 1)).unwrap();
            // Float source-over as the oracle.
            let exact = (f64::from(f) * 128.0 + f64::from(b) * 127.0) / 255.0;
            assert_eq!(out.pixel(1, 1)[0], exact.round() as u8);
            assert_eq!(out.pixel(1, 1)[0], ((f64::from(f) + f64::from(b)) / 2.0).round() as u8);
        }
    }

    #[test]
    fn blend_rounds_to_nearest() {
        for s in (0..=255).step_by(7) {
            for d in (0..=255).step_by(11) {
                for a in [0u8, 1, 64, 128, 200, 255] {
                    let exact = (f64::from(s) * f64::from(a) + f64::from(d) * (255.0 - f64::from(a))) / 255.0;
                    assert_eq!(blend(s as u8, d as u8, a), exact.round() as u8);
                }
            }
        }
    }

    #[test]
    fn out_of_bounds() {
        let body = RgbaImage::new(10, 10);
        let face = RgbaImage::new(4, 4);
        assert!(fuse(&body, &face, (6, 6)).is_ok());
        assert!(matches!(
            fuse(&body, &face, (7, 0)),
            Err(AvatarError::OutOfBounds { .. })
        ));
        assert!(fuse(&body, &face, (0, u32::MAX)).is_err());
    }
}
