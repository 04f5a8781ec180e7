use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The fixed 40-symbol inventory: silence plus the 39 ARPAbet phonemes.
///
/// Discriminants are the inventory ids and must not be reordered; the tone
/// frequency of every phoneme is derived from its id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(u8)]
pub enum Phoneme {
    Sil = 0,
    Aa,
    Ae,
    Ah,
    Ao,
    Aw,
    Ay,
    B,
    Ch,
    D,
    Dh,
    Eh,
    Er,
    Ey,
    F,
    G,
    Hh,
    Ih,
    Iy,
    Jh,
    K,
    L,
    M,
    N,
    Ng,
    Ow,
    Oy,
    P,
    R,
    S,
    Sh,
    T,
    Th,
    Uh,
    Uw,
    V,
    W,
    Y,
    Z,
    Zh,
}

impl Phoneme {
    pub const COUNT: usize = 40;

    pub const ALL: [Phoneme; Phoneme::COUNT] = [
        Phoneme::Sil,
        Phoneme::Aa,
        Phoneme::Ae,
        Phoneme::Ah,
        Phoneme::Ao,
        Phoneme::Aw,
        Phoneme::Ay,
        Phoneme::B,
        Phoneme::Ch,
        Phoneme::D,
        Phoneme::Dh,
        Phoneme::Eh,
        Phoneme::Er,
        Phoneme::Ey,
        Phoneme::F,
        Phoneme::G,
        Phoneme::Hh,
        Phoneme::Ih,
        Phoneme::Iy,
        Phoneme::Jh,
        Phoneme::K,
        Phoneme::L,
        Phoneme::M,
        Phoneme::N,
        Phoneme::Ng,
        Phoneme::Ow,
        Phoneme::Oy,
        Phoneme::P,
        Phoneme::R,
        Phoneme::S,
        Phoneme::Sh,
        Phoneme::T,
        Phoneme::Th,
        Phoneme::Uh,
        Phoneme::Uw,
        Phoneme::V,
        Phoneme::W,
        Phoneme::Y,
        Phoneme::Z,
        Phoneme::Zh,
    ];

    const SYMBOLS: [&'static str; Phoneme::COUNT] = [
        "SIL", "AA", "AE", "AH", "AO", "AW", "AY", "B", "CH", "D", "DH", "EH", "ER", "EY", "F", "G", "HH", "IH", "IY",
        "JH", "K", "L", "M", "N", "NG", "OW", "OY", "P", "R", "S", "SH", "T", "TH", "UH", "UW", "V", "W", "Y", "Z",
        "ZH",
    ];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Option<Phoneme> {
        Self::ALL.get(usize::from(id)).copied()
    }

    pub fn symbol(self) -> &'static str {
        Self::SYMBOLS[usize::from(self.id())]
    }

    pub fn is_silence(self) -> bool {
        self == Phoneme::Sil
    }

    pub fn is_vowel(self) -> bool {
        use Phoneme::*;
        matches!(
            self,
            Aa | Ae | Ah | Ao | Aw | Ay | Eh | Er | Ey | Ih | Iy | Ow | Oy | Uh | Uw
        )
    }

    /// Tone frequency used by the codec: 400 + 35 * id Hz.
    pub fn tone_hz(self) -> f64 {
        400.0 + 35.0 * f64::from(self.id())
    }

    /// Every phoneme that carries a tone.
    pub fn voiced() -> impl Iterator<Item = Phoneme> {
        Self::ALL.into_iter().skip(1)
    }
}

impl fmt::Display for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownPhoneme(pub String);

impl fmt::Display for UnknownPhoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown phoneme `{}`", self.0)
    }
}

impl std::error::Error for UnknownPhoneme {}

impl FromStr for Phoneme {
    type Err = UnknownPhoneme;

    /// Accepts ARPAbet symbols, ignoring CMUdict stress digits.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bare = s.trim_end_matches(|c: char| c.is_ascii_digit());
        Self::SYMBOLS
            .iter()
            .position(|sym| sym.eq_ignore_ascii_case(bare))
            .map(|i| Self::ALL[i])
            .ok_or_else(|| UnknownPhoneme(s.to_string()))
    }
}
