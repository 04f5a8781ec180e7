//! Intent patterns and gazetteer entity extraction.

use std::collections::HashMap;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::{Gazetteers, KnowledgeBase};

pub const PATTERN_CONFIDENCE: f64 = 0.9;
pub const FALLBACK_CONFIDENCE: f64 = 0.3;
pub const KG_RELATIONS: [&str; 6] = ["director", "actor", "singer", "author", "genre", "capital"];

/// Recognizes a single-token entity, returning its normalized value.
type Matcher<'a> = dyn Fn(&str) -> Option<String> + 'a;

const DATE_WORDS: [&str; 10] = [
    "today",
    "tonight",
    "tomorrow",
    "monday",
    "tuesday",
    "wednesday",
    "thursday",
    "friday",
    "saturday",
    "sunday",
];
const NUMBER_WORDS: [&str; 10] = [
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Intent {
    Greet,
    WeatherQuery,
    NewsQuery,
    HotelBook,
    DeviceControl,
    KgQuestion,
    Reset,
    Chitchat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntityType {
    City,
    Date,
    Number,
    Device,
    OnOff,
    Topic,
    KgEntity,
    KgRelation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    pub kind: EntityType,
    /// Text as it appears in the (lowercased) input.
    pub surface: String,
    /// Canonical value used as a slot filler.
    pub value: String,
    /// Half-open character span into the input text.
    pub span: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NluResult {
    pub text: String,
    pub intent: Intent,
    pub confidence: f64,
    pub entities: Vec<Entity>,
}

impl NluResult {
    pub fn entities_of(&self, kind: EntityType) -> impl Iterator<Item = &Entity> {
        self.entities.iter().filter(move |e| e.kind == kind)
    }
}

#[derive(Debug, Clone, Default)]
struct PhraseTable {
    phrases: HashMap<Vec<String>, String>,
    max_len: usize,
}

impl PhraseTable {
    fn insert(&mut self, token_re: &Regex, phrase: &str, value: &str) {
        let key: Vec<String> = token_re
            .find_iter(&phrase.to_lowercase())
            .map(|m| m.as_str().to_string())
            .collect();
        if key.is_empty() {
            return;
        }
        self.max_len = self.max_len.max(key.len());
        self.phrases.entry(key).or_insert_with(|| value.to_string());
    }
}

struct Token<'a> {
    text: &'a str,
    start: usize,
    end: usize,
}

/// Parser holding compiled patterns and gazetteer tables.
#[derive(Debug, Clone)]
pub struct Nlu {
    token_re: Regex,
    intents: Vec<(Intent, Regex)>,
    kg_lead: Regex,
    iso_date: Regex,
    tables: Vec<(EntityType, PhraseTable)>,
}

impl Nlu {
    pub fn new(kb: &KnowledgeBase, gaz: &Gazetteers) -> Self {
        let re = |p: &str| Regex::new(p).expect("static pattern");
        let token_re = re(r"[a-z0-9]+(?:['-][a-z0-9]+)*");
        let table = |items: &mut dyn Iterator<Item = (&str, &str)>| {
            let mut t = PhraseTable::default();
            for (phrase, value) in items {
                t.insert(&token_re, phrase, value);
            }
            t
        };
        let tables = vec![
            (
                EntityType::City,
                table(&mut gaz.cities.iter().map(|c| (c.as_str(), c.as_str()))),
            ),
            (
                EntityType::Device,
                table(&mut gaz.devices.iter().map(|d| (d.as_str(), d.as_str()))),
            ),
            (EntityType::Topic, table(&mut gaz.topics().map(|t| (t, t)))),
            (
                EntityType::KgRelation,
                table(&mut KG_RELATIONS.iter().map(|r| (*r, *r))),
            ),
            (
                EntityType::KgEntity,
                table(&mut kb.entities().into_iter().map(|e| (e, e))),
            ),
        ];
        Self {
            intents: vec![
                (Intent::Reset, re(r"reset|start over")),
                (Intent::Greet, re(r"^(hi|hello|hey)\b")),
                (Intent::WeatherQuery, re(r"weather|temperature|forecast")),
                (Intent::HotelBook, re(r"hotel|book.*room|reserve")),
                (Intent::NewsQuery, re(r"news|headline")),
                (Intent::DeviceControl, re(r"turn (on|off)|switch")),
            ],
            kg_lead: re(r"^(who|what|which)\b"),
            iso_date: re(r"^\d{4}-\d{2}-\d{2}$"),
            token_re,
            tables,
        }
    }

    pub fn parse(&self, text: &str) -> NluResult {
        let lower = text.to_ascii_lowercase();
        let trimmed = lower.trim();
        let entities = self.extract(&lower);
        let intent = self
            .intents
            .iter()
            .find(|(_, re)| re.is_match(trimmed))
            .map(|(i, _)| *i)
            .or_else(|| {
                self.is_kg_question(&lower, trimmed, &entities)
                    .then_some(Intent::KgQuestion)
            });
        NluResult {
            text: text.to_string(),
            intent: intent.unwrap_or(Intent::Chitchat),
            confidence: if intent.is_some() {
                PATTERN_CONFIDENCE
            } else {
                FALLBACK_CONFIDENCE
            },
            entities,
        }
    }

    /// who/what/which, then a relation keyword, then "of", then a known
    /// entity.
    fn is_kg_question(&self, lower: &str, trimmed: &str, entities: &[Entity]) -> bool {
        if !self.kg_lead.is_match(trimmed) {
            return false;
        }
        let ofs: Vec<usize> = self
            .tokens(lower)
            .filter(|t| t.text == "of")
            .map(|t| char_offset(lower, t.start))
            .collect();
        entities.iter().filter(|r| r.kind == EntityType::KgRelation).any(|r| {
            ofs.iter()
                .any(|&of| of >= r.span.1 && entities.iter().any(|e| e.kind == EntityType::KgEntity && e.span.0 > of))
        })
    }

    fn tokens<'a>(&'a self, lower: &'a str) -> impl Iterator<Item = Token<'a>> + 'a {
        self.token_re.find_iter(lower).map(|m| Token {
            text: m.as_str(),
            start: m.start(),
            end: m.end(),
        })
    }

    fn extract(&self, lower: &str) -> Vec<Entity> {
        let tokens: Vec<Token> = self.tokens(lower).collect();
        let mut claimed = vec![false; tokens.len()];
        let mut out = Vec::new();
        let mut emit = |kind, first: usize, last: usize, value: String, claimed: &mut Vec<bool>| {
            for c in &mut claimed[first..=last] {
                *c = true;
            }
            let (s, e) = (tokens[first].start, tokens[last].end);
            out.push(Entity {
                kind,
                surface: lower[s..e].to_string(),
                value,
                span: (char_offset(lower, s), char_offset(lower, e)),
            });
        };

        let singles: [(EntityType, &Matcher); 3] = [
            (EntityType::Date, &|t| {
                (DATE_WORDS.contains(&t) || self.iso_date.is_match(t)).then(|| t.to_string())
            }),
            (EntityType::Number, &|t| {
                if t.bytes().all(|b| b.is_ascii_digit()) {
                    Some(t.to_string())
                } else {
                    NUMBER_WORDS.iter().position(|w| *w == t).map(|i| (i + 1).to_string())
                }
            }),
            (EntityType::OnOff, &|t| matches!(t, "on" | "off").then(|| t.to_string())),
        ];
        for (kind, matcher) in singles {
            for i in 0..tokens.len() {
                if claimed[i] {
                    continue;
                }
                if let Some(value) = matcher(tokens[i].text) {
                    emit(kind, i, i, value, &mut claimed);
                }
            }
        }

        // Phrase gazetteers compete on length; equal lengths go to the
        // earlier table.
        let max_len = self.tables.iter().map(|(_, t)| t.max_len).max().unwrap_or(0);
        let mut i = 0;
        while i < tokens.len() {
            let longest = (1..=max_len.min(tokens.len() - i)).rev().find_map(|n| {
                if claimed[i..i + n].iter().any(|&c| c) {
                    return None;
                }
                let key: Vec<String> = tokens[i..i + n].iter().map(|t| t.text.to_string()).collect();
                self.tables
                    .iter()
                    .find_map(|(kind, t)| t.phrases.get(&key).map(|v| (n, *kind, v.clone())))
            });
            match longest {
                Some((n, kind, value)) => {
                    emit(kind, i, i + n - 1, value, &mut claimed);
                    i += n;
                }
                None => i += 1,
            }
        }
        out.sort_by_key(|e| e.span);
        out
    }
}

fn char_offset(s: &str, byte: usize) -> usize {
    s[..byte].chars().count()
}
