//! Knowledge graph triples and stored question/answer pairs.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{read, DialogError};

pub const DEFAULT_REPLY: &str = "I'm not sure about that.";
pub const JACCARD_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub subject: String,
    pub relation: String,
    pub object: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QaPair {
    pub question: String,
    pub answer: String,
}

#[derive(Debug, Clone, Default)]
pub struct KnowledgeBase {
    triples: Vec<Triple>,
    index: HashMap<(String, String), Vec<usize>>,
    /// Normalized name to the first spelling seen in load order.
    entities: HashMap<String, String>,
    qa_pairs: Vec<QaPair>,
    qa_tokens: Vec<Vec<String>>,
}

/// Lowercased and trimmed; the key for every lookup.
pub fn normalize(s: &str) -> String {
    s.trim().to_lowercase()
}

/// Lowercased word tokens, punctuation dropped.
pub fn tokens(s: &str) -> Vec<String> {
    s.to_lowercase()
        .split(|c: char| !(c.is_alphanumeric() || c == '\''))
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn jaccard(a: &[String], b: &[String]) -> f64 {
    let a: HashSet<&String> = a.iter().collect();
    let b: HashSet<&String> = b.iter().collect();
    let union = a.union(&b).count();
    if union == 0 {
        return 0.0;
    }
    a.intersection(&b).count() as f64 / union as f64
}

fn split_row<'a>(path: &Path, line: usize, row: &'a str, arity: usize) -> Result<Vec<&'a str>, DialogError> {
    let fields: Vec<&str> = row.split('\t').map(str::trim).collect();
    if fields.len() != arity {
        return Err(DialogError::Row {
            path: path.to_path_buf(),
            line,
            reason: format!("expected {arity} tab-separated fields, found {}", fields.len()),
        });
    }
    if let Some(i) = fields.iter().position(|f| f.is_empty()) {
        return Err(DialogError::Row {
            path: path.to_path_buf(),
            line,
            reason: format!("field {} is empty", i + 1),
        });
    }
    Ok(fields)
}

fn rows(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

impl KnowledgeBase {
    pub fn parse(kg: &str, kg_path: &Path, qa: &str, qa_path: &Path) -> Result<Self, DialogError> {
        let mut kb = KnowledgeBase::default();
        let mut seen = HashSet::new();
        for (line, row) in rows(kg) {
            let f = split_row(kg_path, line, row, 3)?;
            let triple = Triple {
                subject: f[0].to_string(),
                relation: f[1].to_string(),
                object: f[2].to_string(),
            };
            if seen.insert(triple.clone()) {
                kb.add(triple);
            }
        }
        if kb.triples.is_empty() {
            tracing::warn!(path = %kg_path.display(), "knowledge graph is empty");
        }
        for (line, row) in rows(qa) {
            let f = split_row(qa_path, line, row, 2)?;
            kb.qa_tokens.push(tokens(f[0]));
            kb.qa_pairs.push(QaPair {
                question: f[0].to_string(),
                answer: f[1].to_string(),
            });
        }
        Ok(kb)
    }

    fn add(&mut self, t: Triple) {
        let i = self.triples.len();
        self.index
            .entry((normalize(&t.subject), normalize(&t.relation)))
            .or_default()
            .push(i);
        for name in [&t.subject, &t.object] {
            self.entities.entry(normalize(name)).or_insert_with(|| name.clone());
        }
        self.triples.push(t);
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn qa_pairs(&self) -> &[QaPair] {
        &self.qa_pairs
    }

    /// Every subject and object, in their first-seen spelling.
    pub fn entities(&self) -> BTreeSet<&str> {
        self.entities.values().map(String::as_str).collect()
    }

    /// First-seen spelling of an entity, looked up case-insensitively.
    pub fn canonical_entity(&self, name: &str) -> Option<&str> {
        self.entities.get(&normalize(name)).map(String::as_str)
    }

    pub fn lookup(&self, subject: &str, relation: &str) -> Vec<&Triple> {
        self.index
            .get(&(normalize(subject), normalize(relation)))
            .map(|ix| ix.iter().map(|&i| &self.triples[i]).collect())
            .unwrap_or_default()
    }

    /// Objects for the pair joined by ", " in load order; `None` when the
    /// entity or the relation is unknown.
    pub fn kg_answer(&self, entity: &str, relation: &str) -> Option<String> {
        let hits = self.lookup(entity, relation);
        if hits.is_empty() {
            return None;
        }
        Some(hits.iter().map(|t| t.object.as_str()).collect::<Vec<_>>().join(", "))
    }

    pub fn chitchat_retrieve(&self, text: &str) -> String {
        let query = tokens(text);
        if let Some(i) = self.qa_tokens.iter().position(|q| *q == query) {
            return self.qa_pairs[i].answer.clone();
        }
        let mut best: Option<(usize, f64)> = None;
        for (i, q) in self.qa_tokens.iter().enumerate() {
            let sim = jaccard(&query, q);
            if sim >= JACCARD_THRESHOLD && best.is_none_or(|(_, b)| sim > b) {
                best = Some((i, sim));
            }
        }
        match best {
            Some((i, _)) => self.qa_pairs[i].answer.clone(),
            None => DEFAULT_REPLY.to_string(),
        }
    }
}

pub fn kb_load(kg_path: &Path, qa_path: &Path) -> Result<KnowledgeBase, DialogError> {
    KnowledgeBase::parse(&read(kg_path)?, kg_path, &read(qa_path)?, qa_path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kb(kg: &str, qa: &str) -> Result<KnowledgeBase, DialogError> {
        KnowledgeBase::parse(kg, Path::new("kg.tsv"), qa, Path::new("qa.tsv"))
    }

    #[test]
    fn dedup() {
        let k = kb("a\tr\tb\na\tr\tb\na\tr\tc\n", "").unwrap();
        assert_eq!(k.triples().len(), 2);
        assert_eq!(k.entities().into_iter().collect::<Vec<_>>(), vec!["a", "b", "c"]);
    }

    #[test]
    fn lookup_and_join() {
        let k = kb(
            "Inception\tdirector\tChristopher Nolan\nInception\tgenre\tscience fiction\nInception\tgenre\tthriller\n",
            "",
        )
        .unwrap();
        assert_eq!(k.kg_answer("inception", "director").unwrap(), "Christopher Nolan");
        assert_eq!(
            k.kg_answer(" INCEPTION ", "genre").unwrap(),
            "science fiction, thriller"
        );
        assert_eq!(k.kg_answer("inception", "composer"), None);
        assert_eq!(k.kg_answer("zorblax", "director"), None);
        assert_eq!(k.canonical_entity("christopher nolan"), Some("Christopher Nolan"));
    }

    #[test]
    fn bad_arity_names_the_line() {
        let err = kb("a\tr\tb\nbad\trow\n", "").unwrap_err();
        assert!(matches!(err, DialogError::Row { line: 2, .. }), "{err}");
        assert!(err.to_string().starts_with("kg.tsv:2:"));
        let err = kb("", "q only\n").unwrap_err();
        assert!(matches!(err, DialogError::Row { line: 1, .. }));
    }

    #[test]
    fn empty_kg_is_allowed() {
        assert!(kb("", "").unwrap().triples().is_empty());
    }

    #[test]
    fn chitchat_rules() {
        let k = kb(
            "",
            "how are you\tfine\nwhat is your name\tvida\nwhat is your age\tyoung\n",
        )
        .unwrap();
        assert_eq!(k.chitchat_retrieve("How are you?"), "fine");
        // 3 shared of 5 distinct tokens; the tie goes to the earlier row.
        assert_eq!(k.chitchat_retrieve("what is your job"), "vida");
        assert_eq!(k.chitchat_retrieve("purple monkey"), DEFAULT_REPLY);
        assert_eq!(k.chitchat_retrieve("what"), DEFAULT_REPLY);
        assert_eq!(k.chitchat_retrieve("what is"), "vida");
    }

    #[test]
    fn jaccard_values() {
        let t = |s: &str| tokens(s);
        assert_eq!(jaccard(&t("a b c"), &t("a b c d")), 0.75);
        assert_eq!(jaccard(&t(""), &t("")), 0.0);
        assert_eq!(jaccard(&t("a a b"), &t("b a")), 1.0);
    }
}
