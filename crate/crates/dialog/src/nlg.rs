//! Template realization.

use std::collections::BTreeMap;
use std::path::Path;

use regex::{Captures, Regex};
use serde::Deserialize;

use crate::error::{read, DialogError};
use crate::policy::AgentAction;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    texts: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Templates {
    table: BTreeMap<(String, String), Vec<String>>,
    placeholder: Regex,
}

impl Templates {
    pub fn parse(text: &str) -> Result<Self, DialogError> {
        let raw: BTreeMap<String, BTreeMap<String, Entry>> =
            toml::from_str(text).map_err(|e| DialogError::TemplateSyntax(e.to_string()))?;
        let mut table = BTreeMap::new();
        for (skill, acts) in raw {
            for (act, entry) in acts {
                if entry.texts.is_empty() {
                    return Err(DialogError::TemplateSyntax(format!("[{skill}.{act}] has no texts")));
                }
                table.insert((skill.clone(), act), entry.texts);
            }
        }
        Ok(Self {
            table,
            placeholder: Regex::new(r"\{([A-Za-z_][A-Za-z0-9_]*)\}").expect("static pattern"),
        })
    }

    pub fn load(path: &Path) -> Result<Self, DialogError> {
        Self::parse(&read(path)?)
    }

    pub fn variants(&self, skill: &str, act: &str) -> Option<&[String]> {
        self.table.get(&(skill.to_string(), act.to_string())).map(Vec::as_slice)
    }

    pub fn fill(&self, template: &str, bindings: &BTreeMap<String, String>) -> Result<String, DialogError> {
        let mut missing = None;
        let out = self
            .placeholder
            .replace_all(template, |c: &Captures| match bindings.get(&c[1]) {
                Some(v) => v.clone(),
                None => {
                    missing.get_or_insert_with(|| c[1].to_string());
                    String::new()
                }
            });
        match missing {
            Some(slot) => Err(DialogError::UnresolvedPlaceholder { slot }),
            None => Ok(out.into_owned()),
        }
    }

    /// Picks variant `turn_count mod len` and fills its placeholders.
    pub fn realize(&self, action: &AgentAction, turn_count: u64) -> Result<String, DialogError> {
        let skill = action.skill.name();
        let act = action.act.template_key();
        let variants = self.variants(skill, &act).ok_or_else(|| DialogError::MissingTemplate {
            skill: skill.to_string(),
            act: act.clone(),
        })?;
        let template = &variants[(turn_count % variants.len() as u64) as usize];
        self.fill(template, &action.bindings)
    }
}

pub fn nlg_realize(action: &AgentAction, templates: &Templates, turn_count: u64) -> Result<String, DialogError> {
    templates.realize(action, turn_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::{Act, Payload};
    use crate::state::Skill;

    const T: &str = r#"
[hotel.request_date]
texts = ["Which date would you like to check in?"]

[hotel.inform]
texts = ["{nights} nights"]

[weather.inform]
texts = ["{city}: {condition}, {temp}°C", "second"]
"#;

    fn action(skill: Skill, act: Act, b: &[(&str, &str)]) -> AgentAction {
        AgentAction {
            skill,
            act,
            bindings: b.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        }
    }

    #[test]
    fn request_template() {
        let t = Templates::parse(T).unwrap();
        let a = action(Skill::Hotel, Act::Request { slot: "date".into() }, &[]);
        assert_eq!(t.realize(&a, 0).unwrap(), "Which date would you like to check in?");
    }

    #[test]
    fn substitution_and_variant() {
        let t = Templates::parse(T).unwrap();
        let a = action(
            Skill::Weather,
            Act::Inform {
                payload: Payload::found([]),
            },
            &[("city", "beijing"), ("condition", "rain"), ("temp", "17")],
        );
        assert_eq!(t.realize(&a, 4).unwrap(), "beijing: rain, 17°C");
        assert_eq!(t.realize(&a, 5).unwrap(), "second");
    }

    #[test]
    fn unresolved_names_slot() {
        let t = Templates::parse(T).unwrap();
        let a = action(
            Skill::Hotel,
            Act::Inform {
                payload: Payload::found([]),
            },
            &[],
        );
        let err = t.realize(&a, 0).unwrap_err();
        assert!(matches!(&err, DialogError::UnresolvedPlaceholder { slot } if slot == "nights"));
        assert!(err.to_string().contains("nights"));
    }

    #[test]
    fn missing_template() {
        let t = Templates::parse(T).unwrap();
        let a = action(Skill::News, Act::Request { slot: "topic".into() }, &[]);
        assert!(matches!(t.realize(&a, 0), Err(DialogError::MissingTemplate { .. })));
        assert!(Templates::parse("[a.b]\ntexts = []\n").is_err());
    }
}
