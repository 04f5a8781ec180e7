//! Entity lists and the news corpus.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{read, DialogError};

#[derive(Debug, Clone, Default)]
pub struct Gazetteers {
    pub cities: Vec<String>,
    pub devices: Vec<String>,
    /// Topic to headlines, file order kept.
    pub news: BTreeMap<String, Vec<String>>,
}

/// One entry per line; blank lines and `#` comments skipped.
pub fn parse_list(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

pub fn parse_news(text: &str, path: &Path) -> Result<BTreeMap<String, Vec<String>>, DialogError> {
    let mut news: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('\t') {
            Some((topic, headline)) if !topic.trim().is_empty() && !headline.trim().is_empty() => {
                news.entry(topic.trim().to_lowercase())
                    .or_default()
                    .push(headline.trim().to_string());
            }
            _ => {
                return Err(DialogError::Row {
                    path: path.to_path_buf(),
                    line: i + 1,
                    reason: "expected topic<TAB>headline".into(),
                })
            }
        }
    }
    Ok(news)
}

impl Gazetteers {
    pub fn load(cities: &Path, devices: &Path, news: &Path) -> Result<Self, DialogError> {
        Ok(Self {
            cities: parse_list(&read(cities)?),
            devices: parse_list(&read(devices)?),
            news: parse_news(&read(news)?, news)?,
        })
    }

    pub fn topics(&self) -> impl Iterator<Item = &str> {
        self.news.keys().map(String::as_str)
    }
}
