//! Single-bin spectral power via the Goertzel recurrence.
//! https://en.wikipedia.org/wiki/Goertzel_algorithm

use vida_core::SAMPLE_RATE_HZ;

use crate::SpeechError;

pub const MIN_WINDOW: usize = 32;

/// Squared magnitude of the DFT of `window` (samples scaled to [-1, 1)) at
/// `freq_hz`. The frequency need not fall on an integer bin.
pub fn goertzel_energy(window: &[i16], freq_hz: f64) -> Result<f64, SpeechError> {
    if window.len() < MIN_WINDOW {
        return Err(SpeechError::WindowTooShort {
            len: window.len(),
            min: MIN_WINDOW,
        });
    }
    Ok(Goertzel::new(freq_hz).energy(window))
}

/// Precomputed filter for one frequency, reused across windows.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Goertzel {
    coeff: f64,
}

impl Goertzel {
    pub(crate) fn new(freq_hz: f64) -> Self {
        let w = 2.0 * std::f64::consts::PI * freq_hz / f64::from(SAMPLE_RATE_HZ);
        Self { coeff: 2.0 * w.cos() }
    }

    pub(crate) fn energy(&self, window: &[i16]) -> f64 {
        // s[n] = x[n] + 2 cos(w) s[n-1] - s[n-2]
        let (mut q1, mut q2) = (0.0f64, 0.0f64);
        for &s in window {
            let q0 = f64::from(s) / 32768.0 + self.coeff * q1 - q2;
            q2 = q1;
            q1 = q0;
        }
        (q1 * q1 + q2 * q2 - self.coeff * q1 * q2).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: direct evaluation of the DFT sum.
    fn dft_power(window: &[i16], freq_hz: f64) -> f64 {
        let w = 2.0 * std::f64::consts::PI * freq_hz / 16_000.0;
        let (mut re, mut im) = (0.0, 0.0);
        for (n, &s) in window.iter().enumerate() {
            let x = f64::from(s) / 32768.0;
            re += x * (w * n as f64).cos();
            im -= x * (w * n as f64).sin();
        }
        re * re + im * im
    }

    fn tone(freq: f64, n: usize) -> Vec<i16> {
        let w = 2.0 * std::f64::consts::PI * freq / 16_000.0;
        (0..n)
            .map(|i| ((w * i as f64).sin() * 16_000.0).round() as i16)
            .collect()
    }

    #[test]
    fn zero_window() {
        let zeros = vec![0i16; 320];
        for f in [435.0, 960.0, 1765.0] {
            assert_eq!(goertzel_energy(&zeros, f).unwrap(), 0.0);
        }
    }

    #[test]
    fn tone_selectivity_matches_dft() {
        let window = tone(960.0, 320);
        let on = goertzel_energy(&window, 960.0).unwrap();
        let off = goertzel_energy(&window, 505.0).unwrap();
        let (on_ref, off_ref) = (dft_power(&window, 960.0), dft_power(&window, 505.0));
        assert!((on - on_ref).abs() <= 1e-9 * on_ref, "{on} vs {on_ref}");
        assert!((off - off_ref).abs() <= 1e-9 * on_ref, "{off} vs {off_ref}");
        assert!(on_ref > 100.0 * off_ref);
        assert!(on > 100.0 * off);
    }

    #[test]
    fn agrees_with_dft_on_every_codec_tone() {
        let window: Vec<i16> = tone(700.0, 320)
            .iter()
            .zip(tone(1230.0, 320))
            .map(|(a, b)| a / 2 + b / 2)
            .collect();
        for p in crate::Phoneme::voiced() {
            let g = goertzel_energy(&window, p.tone_hz()).unwrap();
            let d = dft_power(&window, p.tone_hz());
            assert!((g - d).abs() <= 1e-9 * d.max(1.0), "{p}: {g} vs {d}");
        }
    }

    #[test]
    fn sign_flip_invariant() {
        let window = tone(1100.0, 320);
        let flipped: Vec<i16> = window.iter().map(|s| -s).collect();
        let a = goertzel_energy(&window, 1100.0).unwrap();
        let b = goertzel_energy(&flipped, 1100.0).unwrap();
        assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn short_window() {
        assert!(matches!(
            goertzel_energy(&[0; 31], 960.0),
            Err(SpeechError::WindowTooShort { len: 31, min: 32 })
        ));
    }
}
