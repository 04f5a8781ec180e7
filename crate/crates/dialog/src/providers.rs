//! Deterministic stand-ins for external skill services.

use std::collections::{BTreeMap, BTreeSet};
use std::hash::Hasher;
use std::sync::Arc;

use crate::policy::Payload;
use crate::state::DialogState;
use crate::KnowledgeBase;

pub const CONDITIONS: [&str; 4] = ["sunny", "cloudy", "rain", "snow"];

pub type Args = BTreeMap<String, String>;

/// A skill backend. Swap a mock for a real client by registering a
/// different implementation.
pub trait Provider: Send + Sync {
    fn invoke(&self, args: &Args, state: &mut DialogState) -> Payload;
}

/// FNV-1a 64 over the concatenated UTF-8 arguments.
pub fn fnv1a(parts: &[&str]) -> u64 {
    let mut h = fnv::FnvHasher::default();
    for p in parts {
        h.write(p.as_bytes());
    }
    h.finish()
}

fn arg<'a>(args: &'a Args, name: &str) -> &'a str {
    args.get(name).map(String::as_str).unwrap_or_default()
}

pub struct MockWeather;

impl Provider for MockWeather {
    fn invoke(&self, args: &Args, _: &mut DialogState) -> Payload {
        let h = fnv1a(&[arg(args, "city"), arg(args, "date")]);
        Payload::found([
            ("condition", CONDITIONS[(h % 4) as usize].to_string()),
            ("temp", (10 + h % 20).to_string()),
        ])
    }
}

pub struct MockHotel;

impl Provider for MockHotel {
    fn invoke(&self, args: &Args, _: &mut DialogState) -> Payload {
        let h = fnv1a(&[arg(args, "city"), arg(args, "date"), arg(args, "nights")]);
        Payload::found([("booking_id", format!("BK{:06x}", h & 0xff_ffff))])
    }
}

pub struct MockNews {
    pub corpus: BTreeMap<String, Vec<String>>,
}

impl Provider for MockNews {
    fn invoke(&self, args: &Args, _: &mut DialogState) -> Payload {
        match self.corpus.get(arg(args, "topic")) {
            Some(lines) if !lines.is_empty() => {
                let headlines = lines
                    .iter()
                    .take(3)
                    .map(|h| format!("{}.", h.trim_end_matches('.')))
                    .collect::<Vec<_>>()
                    .join(" ");
                Payload::found([("headlines", headlines)])
            }
            _ => Payload::not_found(),
        }
    }
}

pub struct MockDevices {
    pub known: BTreeSet<String>,
}

impl Provider for MockDevices {
    fn invoke(&self, args: &Args, state: &mut DialogState) -> Payload {
        let device = arg(args, "device");
        if !self.known.contains(device) {
            return Payload::not_found();
        }
        let requested = arg(args, "on_off");
        let next = match requested {
            "on" | "off" => requested.to_string(),
            // No explicit target: toggle.
            _ => match state.devices.get(device).map(String::as_str) {
                Some("on") => "off".into(),
                _ => "on".into(),
            },
        };
        state.devices.insert(device.to_string(), next.clone());
        Payload::found([("state", next)])
    }
}

pub struct KgLookup {
    pub kb: Arc<KnowledgeBase>,
}

impl Provider for KgLookup {
    fn invoke(&self, args: &Args, _: &mut DialogState) -> Payload {
        match self.kb.kg_answer(arg(args, "entity"), arg(args, "relation")) {
            Some(answer) => Payload::found([("answer", answer)]),
            None => Payload::not_found(),
        }
    }
}
