use std::path::PathBuf;

use proptest::prelude::*;
use vida_speech::{asr_decode, speak, Lexicon};

fn bundled() -> Lexicon {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../assets/lexicon.txt");
    Lexicon::load(&path).unwrap()
}

#[test]
fn bundled_lexicon_is_large_enough() {
    let lex = bundled();
    assert!(lex.len() >= 200, "{} words", lex.len());
    assert!(lex.unique_words().count() >= 200);
}

#[test]
fn every_unique_word_round_trips() {
    let lex = bundled();
    let mut failures = Vec::new();
    for word in lex.unique_words() {
        let (_, audio) = speak(word, &lex).unwrap();
        let got = asr_decode(&audio, &lex).unwrap().text;
        if got != word {
            failures.push(format!("{word} -> {got}"));
        }
    }
    assert!(failures.is_empty(), "{failures:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sentences_round_trip(picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..=6)) {
        let lex = bundled();
        let words: Vec<&str> = lex.unique_words().collect();
        let sentence = picks
            .iter()
            .map(|i| *i.get(&words))
            .collect::<Vec<_>>()
            .join(" ");
        let (timings, audio) = speak(&sentence, &lex).unwrap();
        let t = asr_decode(&audio, &lex).unwrap();
        prop_assert_eq!(&t.text, &sentence);
        prop_assert_eq!(t.word_timings.len(), picks.len());
        let end = timings.last().unwrap().end_ms();
        prop_assert!(t.word_timings.iter().all(|w| w.end_ms <= end));
    }
}
