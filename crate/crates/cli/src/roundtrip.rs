use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use vida_speech::{asr_decode, predict_durations, synthesize, Lexicon};

use crate::RoundtripArgs;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripSummary {
    pub total: usize,
    pub passed: usize,
    /// Words left out because another word shares their pronunciation.
    pub skipped: usize,
    /// (word, decoded text) pairs that did not match.
    pub failures: Vec<(String, String)>,
}

impl RoundtripSummary {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn roundtrip(lex: &Lexicon) -> anyhow::Result<RoundtripSummary> {
    if lex.is_empty() {
        bail!("no words in lexicon");
    }
    let words: Vec<&str> = lex.unique_words().collect();
    let mut failures = Vec::new();
    for &word in &words {
        let pron = lex.pronunciation(word).expect("listed word has a pronunciation");
        let audio = synthesize(&predict_durations(pron)?)?;
        let got = asr_decode(&audio, lex)?.text;
        if got != word {
            failures.push((word.to_owned(), got));
        }
    }
    Ok(RoundtripSummary {
        total: words.len(),
        passed: words.len() - failures.len(),
        skipped: lex.len() - words.len(),
        failures,
    })
}

pub fn run(args: &RoundtripArgs) -> anyhow::Result<ExitCode> {
    let path = match &args.lexicon {
        Some(p) => p.clone(),
        None => {
            let cfg = args.common.engine_config()?;
            cfg.assets.resolve(args.common.assets_dir()).lexicon
        }
    };
    let lex = Lexicon::load(&path).with_context(|| format!("loading lexicon {}", path.display()))?;
    let start = Instant::now();
    let summary = roundtrip(&lex)?;
    for (word, got) in &summary.failures {
        println!("FAIL {word} -> {got}");
    }
    println!("{}/{} passed", summary.passed, summary.total);
    println!("skipped {} homophones", summary.skipped);
    println!("elapsed {:.2}s", start.elapsed().as_secs_f64());
    Ok(if summary.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
