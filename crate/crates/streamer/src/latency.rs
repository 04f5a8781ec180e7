use serde::{Deserialize, Serialize};
use vida_core::Timestamp;

pub const METRICS_SCHEMA: u32 = 1;

/// Stage timestamps for one completed turn, in session-relative
/// microseconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatencyReport {
    pub session_id: u64,
    pub turn: u64,
    pub t_request: Timestamp,
    pub t_transcript: Timestamp,
    pub t_reply_text: Timestamp,
    pub t_first_audio: Timestamp,
    pub t_first_frame: Timestamp,
    pub t_first_packet_sent: Timestamp,
    pub end_to_end_ms: f64,
}

impl LatencyReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        session_id: u64,
        turn: u64,
        t_request: Timestamp,
        t_transcript: Timestamp,
        t_reply_text: Timestamp,
        t_first_audio: Timestamp,
        t_first_frame: Timestamp,
        t_first_packet_sent: Timestamp,
    ) -> Self {
        Self {
            session_id,
            turn,
            t_request,
            t_transcript,
            t_reply_text,
            t_first_audio,
            t_first_frame,
            t_first_packet_sent,
            end_to_end_ms: end_to_end_ms(t_request, t_first_packet_sent),
        }
    }

    pub fn stages(&self) -> [Timestamp; 6] {
        [
            self.t_request,
            self.t_transcript,
            self.t_reply_text,
            self.t_first_audio,
            self.t_first_frame,
            self.t_first_packet_sent,
        ]
    }

    pub fn is_ordered(&self) -> bool {
        self.stages().windows(2).all(|w| w[0] <= w[1])
    }
}

pub fn end_to_end_ms(request: Timestamp, first_packet: Timestamp) -> f64 {
    first_packet.saturating_sub(request).as_micros() as f64 / 1000.0
}

/// Nearest-rank percentile; `q` in (0, 1].
pub fn percentile(values: &[f64], q: f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let rank = (q * v.len() as f64).ceil().max(1.0) as usize;
    Some(v[rank.min(v.len()) - 1])
}

/// Body of `GET /metrics`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsDoc {
    pub schema: u32,
    /// End-to-end latency the original system reports with neural models.
    pub reference_e2e_ms: u64,
    pub p95_e2e_ms: Option<f64>,
    pub reports: Vec<LatencyReport>,
    pub dropped_video: u64,
    pub dropped_audio: u64,
    pub dropped_events: u64,
    pub active_sessions: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(us: u64) -> Timestamp {
        Timestamp::from_micros(us)
    }

    #[test]
    fn end_to_end_is_a_difference() {
        let r = LatencyReport::new(1, 1, ts(0), ts(0), ts(10), ts(20), ts(30), ts(120_000));
        assert_eq!(r.end_to_end_ms, 120.0);
        assert!(r.is_ordered());
        let bad = LatencyReport::new(1, 1, ts(5), ts(4), ts(10), ts(20), ts(30), ts(40));
        assert!(!bad.is_ordered());
    }

    #[test]
    fn nearest_rank() {
        let v: Vec<f64> = (1..=20).map(f64::from).collect();
        assert_eq!(percentile(&v, 0.95), Some(19.0));
        assert_eq!(percentile(&v, 1.0), Some(20.0));
        assert_eq!(percentile(&[3.0], 0.5), Some(3.0));
        assert_eq!(percentile(&[], 0.95), None);
    }
}
