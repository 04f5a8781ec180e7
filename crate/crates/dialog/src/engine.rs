use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use vida_core::AssetPaths;

use crate::nlg::Templates;
use crate::nlu::{Nlu, NluResult};
use crate::policy::{policy_low, policy_top, Act, AgentAction};
use crate::providers::{KgLookup, MockDevices, MockHotel, MockNews, MockWeather, Provider};
use crate::state::{dst_update, DialogState, Skill, Speaker};
use crate::{kb_load, DialogError, Gazetteers, KnowledgeBase};

/// Outcome of one user turn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Turn {
    pub state: DialogState,
    pub reply: String,
    pub action: AgentAction,
    pub nlu: NluResult,
}

/// Immutable after construction; share one across sessions.
pub struct DialogEngine {
    kb: Arc<KnowledgeBase>,
    nlu: Nlu,
    templates: Templates,
    providers: HashMap<Skill, Box<dyn Provider>>,
}

impl DialogEngine {
    pub fn new(kb: KnowledgeBase, gaz: Gazetteers, templates: Templates) -> Self {
        let kb = Arc::new(kb);
        let nlu = Nlu::new(&kb, &gaz);
        let mut providers: HashMap<Skill, Box<dyn Provider>> = HashMap::new();
        providers.insert(Skill::Weather, Box::new(MockWeather));
        providers.insert(Skill::Hotel, Box::new(MockHotel));
        providers.insert(Skill::News, Box::new(MockNews { corpus: gaz.news }));
        providers.insert(
            Skill::Device,
            Box::new(MockDevices {
                known: gaz.devices.into_iter().collect(),
            }),
        );
        providers.insert(Skill::Kg, Box::new(KgLookup { kb: kb.clone() }));
        Self {
            kb,
            nlu,
            templates,
            providers,
        }
    }

    pub fn load(assets: &AssetPaths) -> Result<Self, DialogError> {
        Ok(Self::new(
            kb_load(&assets.kg, &assets.qa_pairs)?,
            Gazetteers::load(&assets.cities, &assets.devices, &assets.news)?,
            Templates::load(&assets.templates)?,
        ))
    }

    pub fn with_provider(mut self, skill: Skill, provider: Box<dyn Provider>) -> Self {
        self.providers.insert(skill, provider);
        self
    }

    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn templates(&self) -> &Templates {
        &self.templates
    }

    pub fn nlu_parse(&self, text: &str) -> NluResult {
        self.nlu.parse(text)
    }

    pub fn converse(&self, state: &DialogState, text: &str) -> Result<Turn, DialogError> {
        if text.trim().is_empty() {
            return Err(DialogError::EmptyInput);
        }
        let nlu = self.nlu.parse(text);
        let mut state = dst_update(state, &nlu);
        let skill = policy_top(&state);
        let mut action = policy_low(&state, skill);

        match &action.act {
            Act::ApiCall { args, .. } => {
                let payload = match self.providers.get(&skill) {
                    Some(p) => p.invoke(args, &mut state),
                    None => crate::policy::Payload::not_found(),
                };
                state.results.insert(skill, payload);
                action = policy_low(&state, skill);
            }
            Act::Fallback => {
                action.bindings.insert("answer".into(), self.kb.chitchat_retrieve(text));
            }
            _ => {}
        }

        let mut reply = self.templates.realize(&action, state.turn_count)?;
        if action.act.completes() {
            if let Some(resumed) = state.complete(skill) {
                let next = policy_low(&state, resumed);
                if matches!(next.act, Act::Request { .. }) {
                    reply.push(' ');
                    reply.push_str(&self.templates.realize(&next, state.turn_count)?);
                }
            }
        }
        state.push_history(Speaker::Agent, &reply);
        Ok(Turn {
            state,
            reply,
            action,
            nlu,
        })
    }
}
