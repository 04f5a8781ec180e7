//! Two-level policy: skill selection, then the primitive act within it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::state::{skill_for, DialogState, Skill};

/// Provider output. `found == false` renders the skill's apology.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Payload {
    pub found: bool,
    pub values: BTreeMap<String, String>,
}

impl Payload {
    pub fn found<const N: usize>(values: [(&str, String); N]) -> Self {
        Self {
            found: true,
            values: values.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }

    pub fn not_found() -> Self {
        Self::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "act", rename_all = "snake_case")]
pub enum Act {
    Request {
        slot: String,
    },
    Inform {
        payload: Payload,
    },
    Confirm {
        slot: String,
        value: String,
    },
    ApiCall {
        name: String,
        args: BTreeMap<String, String>,
    },
    Greet,
    Fallback,
}

impl Act {
    /// Template key under the skill's table.
    pub fn template_key(&self) -> String {
        match self {
            Act::Request { slot } => format!("request_{slot}"),
            Act::Inform { payload } if payload.found => "inform".into(),
            Act::Inform { .. } => "not_found".into(),
            Act::Confirm { slot, .. } => format!("confirm_{slot}"),
            Act::ApiCall { .. } => "api_call".into(),
            Act::Greet => "greet".into(),
            Act::Fallback => "fallback".into(),
        }
    }

    /// Acts after which the skill is finished for this request.
    pub fn completes(&self) -> bool {
        matches!(self, Act::Inform { .. } | Act::Greet | Act::Fallback)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentAction {
    pub skill: Skill,
    #[serde(flatten)]
    pub act: Act,
    pub bindings: BTreeMap<String, String>,
}

pub fn policy_top(state: &DialogState) -> Skill {
    if let Some(active) = state.active_skill {
        return active;
    }
    match state.last_intent {
        // max_by_key keeps the last maximum, so scan in reverse for the first.
        Some(intent) => Skill::ALL
            .iter()
            .rev()
            .copied()
            .max_by_key(|s| s.affinity(intent))
            .unwrap_or_else(|| skill_for(intent)),
        None => Skill::Chitchat,
    }
}

/// Filled slots plus schema defaults.
pub fn slot_bindings(state: &DialogState, skill: Skill) -> BTreeMap<String, String> {
    let mut b = state.slots_of(skill).cloned().unwrap_or_default();
    for spec in skill.schema() {
        if let Some(d) = spec.default {
            b.entry(spec.name.to_string()).or_insert_with(|| d.to_string());
        }
    }
    b
}

pub fn policy_low(state: &DialogState, skill: Skill) -> AgentAction {
    let mut bindings = slot_bindings(state, skill);
    let act = match skill {
        Skill::Greet => Act::Greet,
        Skill::Chitchat => Act::Fallback,
        Skill::Reset => Act::Inform {
            payload: Payload::found([]),
        },
        _ => {
            let missing = skill
                .schema()
                .iter()
                .find(|s| s.required && !bindings.contains_key(s.name));
            match (missing, state.results.get(&skill)) {
                (Some(spec), _) => Act::Request {
                    slot: spec.name.to_string(),
                },
                (None, Some(payload)) => {
                    bindings.extend(payload.values.clone());
                    Act::Inform {
                        payload: payload.clone(),
                    }
                }
                (None, None) => Act::ApiCall {
                    name: skill.name().to_string(),
                    args: bindings.clone(),
                },
            }
        }
    };
    AgentAction { skill, act, bindings }
}
