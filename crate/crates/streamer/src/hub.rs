use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, MutexGuard};

use tracing::info;

use crate::{
    percentile, Clock, Engine, LatencyReport, MetricsDoc, OutboundQueue, Session, StreamError, METRICS_SCHEMA,
};

#[derive(Default)]
struct MetricsState {
    reports: Vec<LatencyReport>,
    live: BTreeMap<u64, Arc<OutboundQueue>>,
    closed_dropped_video: u64,
}

/// Opens sessions against a shared engine, enforces the session limit and
/// collects metrics from every session.
pub struct Hub {
    engine: Arc<Engine>,
    active: Arc<AtomicUsize>,
    next_id: AtomicU64,
    metrics: Arc<Mutex<MetricsState>>,
}

struct Slot {
    id: u64,
    active: Arc<AtomicUsize>,
    metrics: Arc<Mutex<MetricsState>>,
}

impl Drop for Slot {
    fn drop(&mut self) {
        let mut m = lock(&self.metrics);
        if let Some(q) = m.live.remove(&self.id) {
            m.closed_dropped_video += q.dropped_video();
        }
        self.active.fetch_sub(1, Ordering::SeqCst);
    }
}

fn lock(m: &Mutex<MetricsState>) -> MutexGuard<'_, MetricsState> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

impl Hub {
    pub fn new(engine: Arc<Engine>) -> Self {
        Self {
            engine,
            active: Arc::new(AtomicUsize::new(0)),
            next_id: AtomicU64::new(1),
            metrics: Arc::default(),
        }
    }

    pub fn engine(&self) -> &Arc<Engine> {
        &self.engine
    }

    pub fn active_sessions(&self) -> usize {
        self.active.load(Ordering::SeqCst)
    }

    /// A fresh session with Idle play state and empty dialog state. Its
    /// slot is released when the session is dropped.
    pub fn open_session(&self, clock: Arc<dyn Clock>) -> Result<Session, StreamError> {
        let max = self.engine.config().max_sessions;
        self.active
            .fetch_update(Ordering::SeqCst, Ordering::SeqCst, |n| (n < max).then_some(n + 1))
            .map_err(|_| StreamError::SessionLimit { max })?;
        let id = self.next_id.fetch_add(1, Ordering::SeqCst);
        let mut session = Session::new(id, self.engine.clone(), clock);
        lock(&self.metrics).live.insert(id, session.queue().clone());
        let metrics = self.metrics.clone();
        session.set_report_hook(Box::new(move |r| {
            info!(
                session = r.session_id,
                turn = r.turn,
                "turn complete e2e_ms={:.1}",
                r.end_to_end_ms
            );
            lock(&metrics).reports.push(r.clone());
        }));
        session.hold(Box::new(Slot {
            id,
            active: self.active.clone(),
            metrics: self.metrics.clone(),
        }));
        Ok(session)
    }

    pub fn metrics(&self) -> MetricsDoc {
        let m = lock(&self.metrics);
        let e2e: Vec<f64> = m.reports.iter().map(|r| r.end_to_end_ms).collect();
        MetricsDoc {
            schema: METRICS_SCHEMA,
            reference_e2e_ms: self.engine.config().latency_budget_ms,
            p95_e2e_ms: percentile(&e2e, 0.95),
            reports: m.reports.clone(),
            dropped_video: m.closed_dropped_video + m.live.values().map(|q| q.dropped_video()).sum::<u64>(),
            dropped_audio: 0,
            dropped_events: 0,
            active_sessions: self.active_sessions(),
        }
    }
}
