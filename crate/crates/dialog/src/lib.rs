//! Task dialog engine.
//!
//! A user turn flows through [`Nlu::parse`], [`dst_update`], the two policy
//! levels [`policy_top`] and [`policy_low`], an optional provider call, and
//! [`Templates::realize`]. [`DialogEngine::converse`] composes the stages and
//! always yields exactly one reply per non-empty turn. Skills that interrupt
//! an unfinished task suspend it on a stack; the task resumes once the
//! interrupting skill has answered.

mod engine;
mod error;
mod gazetteer;
mod kb;
mod nlg;
mod nlu;
mod policy;
mod providers;
mod script;
mod state;

pub use engine::{DialogEngine, Turn};
pub use error::DialogError;
pub use gazetteer::{parse_list, parse_news, Gazetteers};
pub use kb::{jaccard, kb_load, normalize, tokens, KnowledgeBase, QaPair, Triple, DEFAULT_REPLY, JACCARD_THRESHOLD};
pub use nlg::{nlg_realize, Templates};
pub use nlu::{Entity, EntityType, Intent, Nlu, NluResult, FALLBACK_CONFIDENCE, KG_RELATIONS, PATTERN_CONFIDENCE};
pub use policy::{policy_low, policy_top, slot_bindings, Act, AgentAction, Payload};
pub use providers::{fnv1a, Args, KgLookup, MockDevices, MockHotel, MockNews, MockWeather, Provider, CONDITIONS};
pub use script::{load_script, parse_script, run_script, Mismatch, Script};
pub use state::{dst_update, skill_for, slot_for, DialogState, Skill, SlotSpec, Speaker, HISTORY_LIMIT};
