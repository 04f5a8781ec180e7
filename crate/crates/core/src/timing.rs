use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::EngineConfig;

/// Microseconds since the session epoch.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Timestamp(u64);

impl Timestamp {
    pub const ZERO: Timestamp = Timestamp(0);

    pub const fn from_micros(micros: u64) -> Self {
        Self(micros)
    }

    pub const fn from_millis(millis: u64) -> Self {
        Self(millis * 1000)
    }

    pub const fn as_micros(self) -> u64 {
        self.0
    }

    /// Whole milliseconds, rounded down.
    pub const fn as_millis(self) -> u64 {
        self.0 / 1000
    }

    pub fn saturating_sub(self, other: Timestamp) -> Timestamp {
        Timestamp(self.0.saturating_sub(other.0))
    }
}

impl Add for Timestamp {
    type Output = Timestamp;

    fn add(self, rhs: Timestamp) -> Timestamp {
        Timestamp(self.0 + rhs.0)
    }
}

impl Sub for Timestamp {
    type Output = Timestamp;

    fn sub(self, rhs: Timestamp) -> Timestamp {
        Timestamp(self.0 - rhs.0)
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}us", self.0)
    }
}

/// Length of one video frame on the pts grid.
pub fn frame_period_micros(cfg: &EngineConfig) -> u64 {
    1_000_000 / u64::from(cfg.fps)
}

/// Largest grid point `n * frame_period` not after `t`.
pub fn quantize_pts(t: Timestamp, cfg: &EngineConfig) -> Timestamp {
    let period = frame_period_micros(cfg);
    Timestamp(t.0 / period * period)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(fps: u32) -> EngineConfig {
        EngineConfig {
            fps,
            ..EngineConfig::default()
        }
    }

    #[test]
    fn frame_periods() {
        assert_eq!(frame_period_micros(&cfg(25)), 40_000);
        assert_eq!(frame_period_micros(&cfg(50)), 20_000);
        assert_eq!(frame_period_micros(&cfg(1)), 1_000_000);
    }

    #[test]
    fn quantize_examples() {
        let c = cfg(25);
        assert_eq!(quantize_pts(Timestamp::ZERO, &c), Timestamp::ZERO);
        assert_eq!(
            quantize_pts(Timestamp::from_micros(79_999), &c),
            Timestamp::from_micros(40_000)
        );
        assert_eq!(
            quantize_pts(Timestamp::from_micros(40_000), &c),
            Timestamp::from_micros(40_000)
        );
    }

    proptest! {
        #[test]
        fn quantize_brackets_t(t in 0u64..10_000_000_000, fps in prop::sample::select(vec![1u32, 2, 4, 5, 8, 10, 20, 25, 40, 50, 100])) {
            let c = cfg(fps);
            let q = quantize_pts(Timestamp::from_micros(t), &c).as_micros();
            let period = frame_period_micros(&c);
            prop_assert!(q <= t);
            prop_assert!(t < q + period);
            prop_assert_eq!(q % period, 0);
        }

        #[test]
        fn quantize_is_idempotent(t in 0u64..10_000_000_000) {
            let c = cfg(25);
            let once = quantize_pts(Timestamp::from_micros(t), &c);
            prop_assert_eq!(quantize_pts(once, &c), once);
        }
    }
}
