//! Skills, their slot schemas and the dialog state tracker.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::nlu::{EntityType, Intent, NluResult};
use crate::policy::Payload;

/// Twenty user turns and their replies.
pub const HISTORY_LIMIT: usize = 40;

/// Declaration order doubles as the tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Skill {
    Greet,
    Weather,
    Hotel,
    News,
    Device,
    Kg,
    Chitchat,
    Reset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotSpec {
    pub name: &'static str,
    pub required: bool,
    pub default: Option<&'static str>,
}

const fn req(name: &'static str) -> SlotSpec {
    SlotSpec {
        name,
        required: true,
        default: None,
    }
}

const WEATHER: &[SlotSpec] = &[
    req("city"),
    SlotSpec {
        name: "date",
        required: false,
        default: Some("today"),
    },
];
const HOTEL: &[SlotSpec] = &[req("city"), req("date"), req("nights")];
const NEWS: &[SlotSpec] = &[req("topic")];
const DEVICE: &[SlotSpec] = &[req("device"), req("on_off")];
const KG: &[SlotSpec] = &[req("entity"), req("relation")];

impl Skill {
    pub const ALL: [Skill; 8] = [
        Skill::Greet,
        Skill::Weather,
        Skill::Hotel,
        Skill::News,
        Skill::Device,
        Skill::Kg,
        Skill::Chitchat,
        Skill::Reset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Skill::Greet => "greet",
            Skill::Weather => "weather",
            Skill::Hotel => "hotel",
            Skill::News => "news",
            Skill::Device => "device",
            Skill::Kg => "kg",
            Skill::Chitchat => "chitchat",
            Skill::Reset => "reset",
        }
    }

    pub fn schema(self) -> &'static [SlotSpec] {
        match self {
            Skill::Weather => WEATHER,
            Skill::Hotel => HOTEL,
            Skill::News => NEWS,
            Skill::Device => DEVICE,
            Skill::Kg => KG,
            Skill::Greet | Skill::Chitchat | Skill::Reset => &[],
        }
    }

    pub fn declares(self, slot: &str) -> bool {
        self.schema().iter().any(|s| s.name == slot)
    }

    /// Skills with slots that may span several turns.
    pub fn is_task(self) -> bool {
        !self.schema().is_empty()
    }

    /// Affinity of an intent to this skill: 1 for its own skill, else 0.
    pub fn affinity(self, intent: Intent) -> u8 {
        u8::from(skill_for(intent) == self)
    }
}

impl fmt::Display for Skill {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn skill_for(intent: Intent) -> Skill {
    match intent {
        Intent::Greet => Skill::Greet,
        Intent::WeatherQuery => Skill::Weather,
        Intent::NewsQuery => Skill::News,
        Intent::HotelBook => Skill::Hotel,
        Intent::DeviceControl => Skill::Device,
        Intent::KgQuestion => Skill::Kg,
        Intent::Reset => Skill::Reset,
        Intent::Chitchat => Skill::Chitchat,
    }
}

pub fn slot_for(kind: EntityType) -> &'static str {
    match kind {
        EntityType::City => "city",
        EntityType::Date => "date",
        EntityType::Number => "nights",
        EntityType::Device => "device",
        EntityType::OnOff => "on_off",
        EntityType::Topic => "topic",
        EntityType::KgEntity => "entity",
        EntityType::KgRelation => "relation",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Speaker {
    User,
    Agent,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DialogState {
    pub session_id: u64,
    pub active_skill: Option<Skill>,
    pub skill_stack: Vec<Skill>,
    pub slots: BTreeMap<Skill, BTreeMap<String, String>>,
    /// Provider results awaiting an Inform.
    pub results: BTreeMap<Skill, Payload>,
    pub devices: BTreeMap<String, String>,
    pub turn_count: u64,
    pub last_intent: Option<Intent>,
    pub history: VecDeque<(Speaker, String)>,
}

impl DialogState {
    pub fn new(session_id: u64) -> Self {
        Self {
            session_id,
            ..Self::default()
        }
    }

    pub fn slots_of(&self, skill: Skill) -> Option<&BTreeMap<String, String>> {
        self.slots.get(&skill)
    }

    pub fn slot(&self, skill: Skill, name: &str) -> Option<&str> {
        self.slots.get(&skill)?.get(name).map(String::as_str)
    }

    pub fn push_history(&mut self, speaker: Speaker, text: &str) {
        self.history.push_back((speaker, text.to_string()));
        while self.history.len() > HISTORY_LIMIT {
            self.history.pop_front();
        }
    }

    /// Drops a finished skill's slots and result and resumes the most
    /// recently suspended skill, if any.
    pub fn complete(&mut self, skill: Skill) -> Option<Skill> {
        self.slots.remove(&skill);
        self.results.remove(&skill);
        self.active_skill = self.skill_stack.pop();
        self.active_skill
    }
}

/// Chitchat carrying an entity the active task can use continues that task.
fn continues_active(state: &DialogState, nlu: &NluResult) -> Option<Skill> {
    let active = state.active_skill?;
    let fits = active.is_task()
        && nlu.intent == Intent::Chitchat
        && nlu.entities.iter().any(|e| active.declares(slot_for(e.kind)));
    fits.then_some(active)
}

pub fn dst_update(state: &DialogState, nlu: &NluResult) -> DialogState {
    let mut s = state.clone();
    s.turn_count += 1;
    s.last_intent = Some(nlu.intent);
    s.push_history(Speaker::User, &nlu.text);

    let target = continues_active(state, nlu).unwrap_or_else(|| skill_for(nlu.intent));
    if target == Skill::Reset {
        s.slots.clear();
        s.results.clear();
        s.skill_stack.clear();
    } else if let Some(active) = s.active_skill.filter(|a| *a != target) {
        s.skill_stack.push(active);
    }
    s.skill_stack.retain(|k| *k != target);
    s.active_skill = Some(target);

    // A new request restarts any pending result of the same skill.
    s.results.remove(&target);
    for e in &nlu.entities {
        let slot = slot_for(e.kind);
        if target.declares(slot) {
            s.slots
                .entry(target)
                .or_default()
                .insert(slot.to_string(), e.value.clone());
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nlu::Entity;

    fn nlu(intent: Intent, entities: &[(EntityType, &str)]) -> NluResult {
        NluResult {
            text: "x".into(),
            intent,
            confidence: 0.9,
            entities: entities
                .iter()
                .map(|(kind, v)| Entity {
                    kind: *kind,
                    surface: v.to_string(),
                    value: v.to_string(),
                    span: (0, 1),
                })
                .collect(),
        }
    }

    #[test]
    fn weather_fills_city() {
        let s = dst_update(
            &DialogState::new(1),
            &nlu(Intent::WeatherQuery, &[(EntityType::City, "beijing")]),
        );
        assert_eq!(s.active_skill, Some(Skill::Weather));
        assert_eq!(s.slot(Skill::Weather, "city"), Some("beijing"));
        assert_eq!(s.turn_count, 1);
    }

    #[test]
    fn interrupt_pushes() {
        let s = dst_update(&DialogState::new(1), &nlu(Intent::WeatherQuery, &[]));
        let s = dst_update(&s, &nlu(Intent::HotelBook, &[]));
        assert_eq!(s.skill_stack, vec![Skill::Weather]);
        assert_eq!(s.active_skill, Some(Skill::Hotel));
    }

    #[test]
    fn reset_clears() {
        let mut s = dst_update(
            &DialogState::new(1),
            &nlu(Intent::HotelBook, &[(EntityType::City, "paris")]),
        );
        s = dst_update(&s, &nlu(Intent::WeatherQuery, &[]));
        s = dst_update(&s, &nlu(Intent::Reset, &[]));
        assert!(s.slots.is_empty());
        assert!(s.skill_stack.is_empty());
        assert_eq!(s.turn_count, 3);
    }

    #[test]
    fn chitchat_with_fitting_entity_continues() {
        let s = dst_update(&DialogState::new(1), &nlu(Intent::HotelBook, &[]));
        let s = dst_update(&s, &nlu(Intent::Chitchat, &[(EntityType::City, "paris")]));
        assert_eq!(s.active_skill, Some(Skill::Hotel));
        assert!(s.skill_stack.is_empty());
        assert_eq!(s.slot(Skill::Hotel, "city"), Some("paris"));

        let s = dst_update(&s, &nlu(Intent::Chitchat, &[(EntityType::Topic, "sports")]));
        assert_eq!(s.active_skill, Some(Skill::Chitchat));
        assert_eq!(s.skill_stack, vec![Skill::Hotel]);
    }

    #[test]
    fn undeclared_entities_ignored() {
        let s = dst_update(
            &DialogState::new(1),
            &nlu(
                Intent::HotelBook,
                &[(EntityType::OnOff, "on"), (EntityType::Number, "2")],
            ),
        );
        assert_eq!(
            s.slots_of(Skill::Hotel).unwrap().keys().collect::<Vec<_>>(),
            vec!["nights"]
        );
    }

    #[test]
    fn history_is_bounded() {
        let mut s = DialogState::new(1);
        for _ in 0..50 {
            s = dst_update(&s, &nlu(Intent::Chitchat, &[]));
            s.push_history(Speaker::Agent, "ok");
        }
        assert_eq!(s.history.len(), HISTORY_LIMIT);
        assert_eq!(s.turn_count, 50);
    }
}
