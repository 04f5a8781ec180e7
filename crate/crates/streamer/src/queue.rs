use std::collections::VecDeque;
use std::sync::{Condvar, Mutex, MutexGuard};
use std::time::Duration;

use vida_core::Timestamp;

use crate::PacketKind;

/// An encoded packet waiting to be sent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outbound {
    pub kind: PacketKind,
    pub pts: Timestamp,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enqueued {
    Accepted,
    /// Accepted after evicting the oldest queued video packet.
    DroppedOldestVideo,
    /// The queue was closed; the packet was discarded.
    Closed,
}

#[derive(Default)]
struct Inner {
    items: VecDeque<Outbound>,
    dropped_video: u64,
    closed: bool,
}

/// Bounded outbound FIFO. When full, the oldest queued video packet makes
/// room; if none is queued the producer waits for the consumer.
pub struct OutboundQueue {
    cap: usize,
    inner: Mutex<Inner>,
    changed: Condvar,
}

impl OutboundQueue {
    pub fn new(cap: usize) -> Self {
        assert!(cap > 0, "queue capacity must be positive");
        Self {
            cap,
            inner: Mutex::new(Inner::default()),
            changed: Condvar::new(),
        }
    }

    fn lock(&self) -> MutexGuard<'_, Inner> {
        self.inner.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn capacity(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.lock().items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dropped_video(&self) -> u64 {
        self.lock().dropped_video
    }

    pub fn enqueue_with_backpressure(&self, p: Outbound) -> Enqueued {
        let mut g = self.lock();
        let mut result = Enqueued::Accepted;
        loop {
            if g.closed {
                return Enqueued::Closed;
            }
            if g.items.len() < self.cap {
                break;
            }
            if let Some(i) = g.items.iter().position(|o| o.kind == PacketKind::Video) {
                g.items.remove(i);
                g.dropped_video += 1;
                result = Enqueued::DroppedOldestVideo;
                break;
            }
            g = self.changed.wait(g).unwrap_or_else(|e| e.into_inner());
        }
        g.items.push_back(p);
        self.changed.notify_all();
        result
    }

    pub fn try_pop(&self) -> Option<Outbound> {
        let mut g = self.lock();
        let p = g.items.pop_front();
        if p.is_some() {
            self.changed.notify_all();
        }
        p
    }

    /// Waits for a packet. `None` once the queue is closed and drained.
    pub fn pop(&self) -> Option<Outbound> {
        let mut g = self.lock();
        loop {
            if let Some(p) = g.items.pop_front() {
                self.changed.notify_all();
                return Some(p);
            }
            if g.closed {
                return None;
            }
            g = self.changed.wait(g).unwrap_or_else(|e| e.into_inner());
        }
    }

    pub fn pop_timeout(&self, timeout: Duration) -> Option<Outbound> {
        let g = self.lock();
        let (mut g, _) = self
            .changed
            .wait_timeout_while(g, timeout, |i| i.items.is_empty() && !i.closed)
            .unwrap_or_else(|e| e.into_inner());
        let p = g.items.pop_front();
        if p.is_some() {
            self.changed.notify_all();
        }
        p
    }

    pub fn drain(&self) -> Vec<Outbound> {
        let mut g = self.lock();
        self.changed.notify_all();
        g.items.drain(..).collect()
    }

    /// Waits until the consumer has taken everything. Returns false if the
    /// queue closed first.
    pub fn wait_empty(&self) -> bool {
        let g = self.lock();
        let g = self
            .changed
            .wait_while(g, |i| !i.items.is_empty() && !i.closed)
            .unwrap_or_else(|e| e.into_inner());
        !g.closed
    }

    /// Wakes every waiter; later pushes are discarded.
    pub fn close(&self) {
        self.lock().closed = true;
        self.changed.notify_all();
    }

    pub fn is_closed(&self) -> bool {
        self.lock().closed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pkt(kind: PacketKind, pts: u64) -> Outbound {
        Outbound {
            kind,
            pts: Timestamp::from_micros(pts),
            bytes: vec![kind as u8],
        }
    }

    #[test]
    fn drops_oldest_video_when_full() {
        let q = OutboundQueue::new(3);
        assert_eq!(
            q.enqueue_with_backpressure(pkt(PacketKind::Audio, 0)),
            Enqueued::Accepted
        );
        q.enqueue_with_backpressure(pkt(PacketKind::Video, 0));
        q.enqueue_with_backpressure(pkt(PacketKind::Video, 40));
        assert_eq!(
            q.enqueue_with_backpressure(pkt(PacketKind::Video, 80)),
            Enqueued::DroppedOldestVideo
        );
        assert_eq!(q.dropped_video(), 1);
        let rest: Vec<_> = q.drain().into_iter().map(|o| (o.kind, o.pts.as_micros())).collect();
        assert_eq!(
            rest,
            vec![(PacketKind::Audio, 0), (PacketKind::Video, 40), (PacketKind::Video, 80)]
        );
    }

    #[test]
    fn audio_blocks_instead_of_dropping() {
        let q = std::sync::Arc::new(OutboundQueue::new(2));
        q.enqueue_with_backpressure(pkt(PacketKind::Audio, 0));
        q.enqueue_with_backpressure(pkt(PacketKind::Event, 0));
        let q2 = q.clone();
        let producer = std::thread::spawn(move || q2.enqueue_with_backpressure(pkt(PacketKind::Audio, 40)));
        std::thread::sleep(Duration::from_millis(30));
        assert_eq!(q.len(), 2);
        assert_eq!(q.pop().unwrap().kind, PacketKind::Audio);
        assert_eq!(producer.join().unwrap(), Enqueued::Accepted);
        assert_eq!(q.dropped_video(), 0);
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn close_releases_waiters() {
        let q = std::sync::Arc::new(OutboundQueue::new(1));
        let q2 = q.clone();
        let consumer = std::thread::spawn(move || q2.pop());
        std::thread::sleep(Duration::from_millis(10));
        q.close();
        assert_eq!(consumer.join().unwrap(), None);
        assert_eq!(q.enqueue_with_backpressure(pkt(PacketKind::Video, 0)), Enqueued::Closed);
    }
}
