use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use vida_core::Timestamp;

/// Monotonic time source measured from the clock's own origin.
pub trait Clock: Send + Sync {
    fn now(&self) -> Timestamp;
    /// Returns once `now() >= t`.
    fn sleep_until(&self, t: Timestamp);
}

pub struct RealClock {
    origin: Instant,
}

impl RealClock {
    pub fn new() -> Self {
        Self { origin: Instant::now() }
    }
}

impl Default for RealClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for RealClock {
    fn now(&self) -> Timestamp {
        Timestamp::from_micros(self.origin.elapsed().as_micros() as u64)
    }

    fn sleep_until(&self, t: Timestamp) {
        let now = self.now();
        if t > now {
            std::thread::sleep(Duration::from_micros((t - now).as_micros()));
        }
    }
}

/// Time that moves only when told to. Sleeping jumps straight to the target.
#[derive(Default)]
pub struct VirtualClock {
    now: AtomicU64,
}

impl VirtualClock {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&self, t: Timestamp) {
        self.now.fetch_max(t.as_micros(), Ordering::SeqCst);
    }

    pub fn advance(&self, by: Timestamp) {
        self.now.fetch_add(by.as_micros(), Ordering::SeqCst);
    }
}

impl Clock for VirtualClock {
    fn now(&self) -> Timestamp {
        Timestamp::from_micros(self.now.load(Ordering::SeqCst))
    }

    fn sleep_until(&self, t: Timestamp) {
        self.set(t);
    }
}
