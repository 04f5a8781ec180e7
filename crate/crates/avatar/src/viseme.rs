//! Phoneme timings to per-frame face parameters.

use serde::{Deserialize, Serialize};
use vida_speech::{Phoneme, PhonemeTiming};

/// Half-width of the co-articulation crossfade around a segment boundary.
pub const CROSSFADE_MS: i64 = 20;
pub const BLINK_PERIOD_MS: i64 = 4000;
pub const BLINK_MS: i64 = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Viseme {
    Sil = 0,
    A,
    E,
    O,
    U,
    Mbp,
    Fv,
    Rest,
}

impl Viseme {
    pub const COUNT: usize = 8;
    pub const ALL: [Viseme; 8] = [
        Viseme::Sil,
        Viseme::A,
        Viseme::E,
        Viseme::O,
        Viseme::U,
        Viseme::Mbp,
        Viseme::Fv,
        Viseme::Rest,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Viseme::Sil => "V_SIL",
            Viseme::A => "V_A",
            Viseme::E => "V_E",
            Viseme::O => "V_O",
            Viseme::U => "V_U",
            Viseme::Mbp => "V_MBP",
            Viseme::Fv => "V_FV",
            Viseme::Rest => "V_REST",
        }
    }

    /// Mouth opening as a fraction of the maximum.
    pub fn openness(self) -> f64 {
        match self {
            Viseme::Sil => 0.05,
            Viseme::A => 1.0,
            Viseme::E => 0.6,
            Viseme::O => 0.8,
            Viseme::U => 0.5,
            Viseme::Mbp => 0.0,
            Viseme::Fv => 0.3,
            Viseme::Rest => 0.2,
        }
    }
}

pub fn phoneme_to_viseme(p: Phoneme) -> Viseme {
    use Phoneme::*;
    match p {
        Sil => Viseme::Sil,
        Aa | Ae | Ah | Aw | Ay | Er => Viseme::A,
        Eh | Ey | Ih | Iy | Y | Hh => Viseme::E,
        Ao | Ow | Oy | R | W => Viseme::O,
        Uh | Uw => Viseme::U,
        B | M | P => Viseme::Mbp,
        F | V | Dh | Th => Viseme::Fv,
        _ => Viseme::Rest,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VisemeSegment {
    pub viseme: Viseme,
    pub start_ms: u32,
    pub end_ms: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VisemeTrack {
    pub segments: Vec<VisemeSegment>,
}

impl VisemeTrack {
    pub fn end_ms(&self) -> u32 {
        self.segments.last().map_or(0, |s| s.end_ms)
    }
}

pub fn build_viseme_track(timings: &[PhonemeTiming]) -> VisemeTrack {
    let mut segments: Vec<VisemeSegment> = Vec::new();
    for t in timings {
        let viseme = phoneme_to_viseme(t.phoneme);
        match segments.last_mut() {
            Some(last) if last.viseme == viseme && last.end_ms == t.start_ms => last.end_ms = t.end_ms(),
            _ => segments.push(VisemeSegment {
                viseme,
                start_ms: t.start_ms,
                end_ms: t.end_ms(),
            }),
        }
    }
    VisemeTrack { segments }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaceParams {
    pub viseme_weights: [f64; Viseme::COUNT],
    pub blink: f64,
}

impl FaceParams {
    pub fn pure(v: Viseme) -> Self {
        let mut viseme_weights = [0.0; Viseme::COUNT];
        viseme_weights[v.index()] = 1.0;
        Self {
            viseme_weights,
            blink: 0.0,
        }
    }

    pub fn neutral() -> Self {
        Self::pure(Viseme::Sil)
    }

    pub fn weight(&self, v: Viseme) -> f64 {
        self.viseme_weights[v.index()]
    }

    pub fn openness(&self) -> f64 {
        Viseme::ALL.iter().map(|v| self.weight(*v) * v.openness()).sum()
    }
}

pub fn blink_at(t_ms: i64) -> f64 {
    if t_ms >= BLINK_PERIOD_MS && t_ms % BLINK_PERIOD_MS < BLINK_MS {
        1.0
    } else {
        0.0
    }
}

/// Face parameters at `t_ms` on the track's timeline. Outside the track the
/// face is at rest.
pub fn sample_face_params(track: &VisemeTrack, t_ms: i64) -> FaceParams {
    let mut p = FaceParams::neutral();
    p.blink = blink_at(t_ms);
    let segs = &track.segments;
    let Some(i) = segs
        .iter()
        .position(|s| i64::from(s.start_ms) <= t_ms && t_ms < i64::from(s.end_ms))
    else {
        return p;
    };
    let (start, end) = (i64::from(segs[i].start_ms), i64::from(segs[i].end_ms));
    // The nearer boundary governs, which keeps short segments convex too.
    let (a, b, boundary) = if t_ms - start < end - t_ms {
        (i.checked_sub(1), Some(i), start)
    } else {
        (Some(i), (i + 1 < segs.len()).then_some(i + 1), end)
    };
    let mut w = [0.0; Viseme::COUNT];
    match (a, b) {
        (Some(a), Some(b)) if (t_ms - boundary).abs() < CROSSFADE_MS => {
            let wb = (t_ms - (boundary - CROSSFADE_MS)) as f64 / (2 * CROSSFADE_MS) as f64;
            w[segs[b].viseme.index()] += wb;
            w[segs[a].viseme.index()] += 1.0 - wb;
        }
        _ => w[segs[i].viseme.index()] = 1.0,
    }
    p.viseme_weights = w;
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use Phoneme::*;

    fn pt(phoneme: Phoneme, start_ms: u32, dur_ms: u32) -> PhonemeTiming {
        PhonemeTiming {
            phoneme,
            start_ms,
            dur_ms,
        }
    }

    fn seg(viseme: Viseme, start_ms: u32, end_ms: u32) -> VisemeSegment {
        VisemeSegment {
            viseme,
            start_ms,
            end_ms,
        }
    }

    #[test]
    fn table() {
        assert_eq!(phoneme_to_viseme(Sil), Viseme::Sil);
        assert_eq!(phoneme_to_viseme(B), Viseme::Mbp);
        assert_eq!(phoneme_to_viseme(K), Viseme::Rest);
        let counts = Viseme::ALL.map(|v| Phoneme::ALL.iter().filter(|p| phoneme_to_viseme(**p) == v).count());
        assert_eq!(counts, [1, 6, 6, 5, 2, 3, 4, 13]);
    }

    #[test]
    fn track_merging() {
        assert_eq!(
            build_viseme_track(&[pt(B, 0, 80), pt(M, 80, 80)]).segments,
            vec![seg(Viseme::Mbp, 0, 160)]
        );
        assert_eq!(
            build_viseme_track(&[pt(Sil, 0, 100)]).segments,
            vec![seg(Viseme::Sil, 0, 100)]
        );
        assert_eq!(
            build_viseme_track(&[pt(Aa, 0, 120), pt(Sil, 120, 100)]).segments.len(),
            2
        );
    }

    #[test]
    fn sampling_examples() {
        let track = VisemeTrack {
            segments: vec![seg(Viseme::A, 0, 120), seg(Viseme::Mbp, 120, 200)],
        };
        assert_eq!(sample_face_params(&track, -5), FaceParams::neutral());
        let mid = sample_face_params(&track, 120);
        assert_eq!(mid.weight(Viseme::A), 0.5);
        assert_eq!(mid.weight(Viseme::Mbp), 0.5);
        assert_eq!(sample_face_params(&track, 60).weight(Viseme::A), 1.0);
        // Ramp edges.
        assert_eq!(sample_face_params(&track, 100).weight(Viseme::A), 1.0);
        assert_eq!(sample_face_params(&track, 110).weight(Viseme::Mbp), 0.25);
        assert_eq!(sample_face_params(&track, 139).weight(Viseme::Mbp), 0.975);
        assert_eq!(sample_face_params(&track, 140).weight(Viseme::Mbp), 1.0);
        // No fade at the outer edges of the track.
        assert_eq!(sample_face_params(&track, 0).weight(Viseme::A), 1.0);
        assert_eq!(sample_face_params(&track, 199).weight(Viseme::Mbp), 1.0);
        assert_eq!(sample_face_params(&track, 200), FaceParams::neutral());
    }

    #[test]
    fn blink_schedule() {
        for (t, b) in [
            (0, 0.0),
            (119, 0.0),
            (4000, 1.0),
            (4119, 1.0),
            (4120, 0.0),
            (8000, 1.0),
            (-4000, 0.0),
        ] {
            assert_eq!(blink_at(t), b, "t={t}");
        }
    }

    #[test]
    fn openness_blend() {
        let mut p = FaceParams::neutral();
        p.viseme_weights = [0.0; 8];
        p.viseme_weights[Viseme::A.index()] = 0.5;
        p.viseme_weights[Viseme::Mbp.index()] = 0.5;
        assert_eq!(p.openness(), 0.5);
        assert_eq!(FaceParams::neutral().openness(), 0.05);
    }
}
