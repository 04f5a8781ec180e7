//! Pronunciation lexicon and grapheme-to-phoneme conversion.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use crate::{Phoneme, SpeechError};

/// Word to pronunciation map with a reverse index for decoding.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<Phoneme>>,
    reverse: HashMap<Vec<Phoneme>, String>,
    /// Number of words sharing each pronunciation.
    sharing: HashMap<Vec<Phoneme>, usize>,
}

impl Lexicon {
    /// Parses `word PH1 PH2 ...` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, SpeechError> {
        let mut lex = Lexicon::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let word = fields.next().unwrap_or_default().to_lowercase();
            let pron = fields
                .map(|sym| {
                    sym.parse::<Phoneme>().map_err(|e| SpeechError::LexiconSyntax {
                        line: line_no,
                        reason: e.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if pron.is_empty() {
                return Err(SpeechError::LexiconSyntax {
                    line: line_no,
                    reason: format!("`{word}` has no pronunciation"),
                });
            }
            if pron.contains(&Phoneme::Sil) {
                return Err(SpeechError::LexiconSyntax {
                    line: line_no,
                    reason: format!("`{word}` contains SIL"),
                });
            }
            if lex.entries.contains_key(&word) {
                return Err(SpeechError::LexiconSyntax {
                    line: line_no,
                    reason: format!("duplicate entry `{word}`"),
                });
            }
            lex.insert(word, pron);
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self, SpeechError> {
        let text = fs::read_to_string(path).map_err(|source| SpeechError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    fn insert(&mut self, word: String, pron: Vec<Phoneme>) {
        *self.sharing.entry(pron.clone()).or_default() += 1;
        match self.reverse.get(&pron) {
            Some(existing) if existing <= &word => {}
            _ => {
                self.reverse.insert(pron.clone(), word.clone());
            }
        }
        self.entries.insert(word, pron);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pronunciation(&self, word: &str) -> Option<&[Phoneme]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    /// The word for a pronunciation; homophones resolve to the
    /// lexicographically smallest spelling.
    pub fn word_for(&self, pron: &[Phoneme]) -> Option<&str> {
        self.reverse.get(pron).map(String::as_str)
    }

    /// Words in sorted order.
    pub fn words(&self) -> impl Iterator<Item = (&str, &[Phoneme])> {
        self.entries.iter().map(|(w, p)| (w.as_str(), p.as_slice()))
    }

    /// Words whose pronunciation no other word shares, in sorted order.
    pub fn unique_words(&self) -> impl Iterator<Item = &str> {
        self.entries
            .iter()
            .filter(|(_, p)| self.sharing.get(*p) == Some(&1))
            .map(|(w, _)| w.as_str())
    }
}

fn letter_phoneme(c: char) -> Option<Phoneme> {
    use Phoneme::*;
    Some(match c {
        'a' => Ah,
        'b' => B,
        'c' => K,
        'd' => D,
        'e' => Eh,
        'f' => F,
        'g' => G,
        'h' => Hh,
        'i' => Ih,
        'j' => Jh,
        'k' => K,
        'l' => L,
        'm' => M,
        'n' => N,
        'o' => Ow,
        'p' => P,
        'q' => K,
        'r' => R,
        's' => S,
        't' => T,
        'u' => Uh,
        'v' => V,
        'w' => W,
        'x' => S,
        'y' => Y,
        'z' => Z,
        _ => return None,
    })
}

const DIGIT_WORDS: [&str; 10] = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
];

/// Lowercases, turns everything except ASCII letters and digits into word
/// breaks, and spells digits out one by one.
pub fn normalize_words(text: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut current = String::new();
    let flush = |current: &mut String, words: &mut Vec<String>| {
        if !current.is_empty() {
            words.push(std::mem::take(current));
        }
    };
    for c in text.chars().flat_map(char::to_lowercase) {
        if c.is_ascii_lowercase() {
            current.push(c);
        } else if let Some(d) = c.to_digit(10) {
            flush(&mut current, &mut words);
            words.push(DIGIT_WORDS[d as usize].to_string());
        } else {
            flush(&mut current, &mut words);
        }
    }
    flush(&mut current, &mut words);
    words
}

/// Pronunciation of a single normalized word, falling back to one phoneme
/// per letter for words missing from the lexicon.
pub fn word_phonemes(word: &str, lex: &Lexicon) -> Vec<Phoneme> {
    match lex.pronunciation(word) {
        Some(p) => p.to_vec(),
        None => word.chars().filter_map(letter_phoneme).collect(),
    }
}

/// Text to phonemes: one SIL between words and one at the end.
pub fn g2p(text: &str, lex: &Lexicon) -> Result<Vec<Phoneme>, SpeechError> {
    let words = normalize_words(text);
    if words.is_empty() {
        return Err(SpeechError::EmptyText);
    }
    let mut out = Vec::new();
    for word in &words {
        out.extend(word_phonemes(word, lex));
        out.push(Phoneme::Sil);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Phoneme::*;

    fn lex() -> Lexicon {
        Lexicon::parse("# test\nhello HH AH0 L OW1\nhi HH AY\nto T UW\ntwo T UW\ntoo T UW\n").unwrap()
    }

    #[test]
    fn single_word() {
        assert_eq!(g2p("hello", &lex()).unwrap(), vec![Hh, Ah, L, Ow, Sil]);
    }

    #[test]
    fn word_separator() {
        assert_eq!(g2p("hi hi", &lex()).unwrap(), vec![Hh, Ay, Sil, Hh, Ay, Sil]);
    }

    #[test]
    fn punctuation_only_is_empty() {
        assert!(matches!(g2p("!!!", &lex()), Err(SpeechError::EmptyText)));
        assert!(matches!(g2p("   ", &lex()), Err(SpeechError::EmptyText)));
    }

    #[test]
    fn normalization() {
        assert_eq!(
            normalize_words("  Hello,   WORLD!! it's 17°C "),
            vec!["hello", "world", "it", "s", "one", "seven", "c"]
        );
    }

    #[test]
    fn fallback_letters() {
        assert_eq!(g2p("xq", &lex()).unwrap(), vec![S, K, Sil]);
        assert_eq!(word_phonemes("bk", &lex()), vec![B, K]);
    }

    #[test]
    fn homophones_resolve_to_smallest_spelling() {
        let lex = lex();
        assert_eq!(lex.word_for(&[T, Uw]), Some("to"));
        let unique: Vec<_> = lex.unique_words().collect();
        assert_eq!(unique, vec!["hello", "hi"]);
    }

    #[test]
    fn rejects_bad_lines() {
        let err = Lexicon::parse("ok OW K EY\nbad HH QQ\n").unwrap_err();
        assert!(matches!(err, SpeechError::LexiconSyntax { line: 2, .. }));
        let err = Lexicon::parse("quiet SIL\n").unwrap_err();
        assert!(matches!(err, SpeechError::LexiconSyntax { line: 1, .. }));
        let err = Lexicon::parse("empty\n").unwrap_err();
        assert!(matches!(err, SpeechError::LexiconSyntax { line: 1, .. }));
        let err = Lexicon::parse("a AH\na EY\n").unwrap_err();
        assert!(matches!(err, SpeechError::LexiconSyntax { line: 2, .. }));
    }
}
