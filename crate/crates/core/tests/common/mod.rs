//! Test-only reference implementations shared by the integration suites.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use reqsmell_core::dictionary::is_past_participle;
use reqsmell_core::{builtin_dictionaries, DictionarySet, Metric};

/// One pattern as the oracle sees it: words plus an optional participle slot,
/// parsed straight from the `<PP>` phrase string.
#[derive(Debug, Clone)]
pub struct OraclePattern {
    pub words: Vec<String>,
    pub participle: bool,
}

impl OraclePattern {
    fn from_phrase(phrase: &str) -> Self {
        let mut words: Vec<String> = phrase.split(' ').map(str::to_string).collect();
        let participle = words.last().is_some_and(|w| w == "<PP>");
        if participle {
            words.pop();
        }
        OraclePattern { words, participle }
    }

    fn len(&self) -> usize {
        self.words.len() + usize::from(self.participle)
    }

    fn matches_at(&self, tokens: &[&str], i: usize) -> bool {
        if i + self.len() > tokens.len() {
            return false;
        }
        let literal_ok = self.words.iter().enumerate().all(|(k, w)| tokens[i + k] == w);
        literal_ok && (!self.participle || is_past_participle(tokens[i + self.words.len()]))
    }
}

pub fn oracle_patterns(set: &DictionarySet, metric: Metric) -> Vec<OraclePattern> {
    set.get(metric)
        .unwrap()
        .phrases()
        .iter()
        .map(|p| OraclePattern::from_phrase(p))
        .collect()
}

/// Tries every pattern at every position of one sentence; the longest match
/// wins, a literal beats a participle pattern of equal length, and matched
/// tokens are skipped.
pub fn naive_scan(tokens: &[&str], patterns: &[OraclePattern]) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let mut best: Option<(usize, bool)> = None;
        for p in patterns {
            if p.matches_at(tokens, i) {
                let key = (p.len(), !p.participle);
                if best.is_none_or(|b| key > b) {
                    best = Some(key);
                }
            }
        }
        match best {
            Some((len, _)) => {
                spans.push((i, i + len));
                i += len;
            }
            None => i += 1,
        }
    }
    spans
}

/// Naive per-metric spans for a text, sentence by sentence, with token
/// indices relative to the whole text.
pub fn oracle_spans(text: &str, set: &DictionarySet, metric: Metric) -> Vec<(usize, usize)> {
    let norm = reqsmell_core::normalize(text);
    let tokens = reqsmell_core::tokenize(&norm);
    let sentences = reqsmell_core::split_sentences(&norm, &tokens);
    let patterns = oracle_patterns(set, metric);
    let mut out = Vec::new();
    for s in sentences {
        let words: Vec<&str> = tokens[s.token_range.clone()].iter().map(|t| t.text.as_str()).collect();
        out.extend(
            naive_scan(&words, &patterns)
                .into_iter()
                .map(|(a, b)| (a + s.token_range.start, b + s.token_range.start)),
        );
    }
    out
}

const FILLER: &[&str] = &[
    "the", "system", "shall", "operator", "report", "signal", "within", "ms", "reference",
    "document", "implemented", "done", "taken", "have", "should", "must", "as", "to", "able",
    "see", "in", "of", "be", "all", "other", "X-ray", "don't", "42",
];

const SEPARATORS: &[&str] = &[" ", " ", " ", ", ", " - ", ". ", "; ", "? ", "! ", "\n"];

/// Builds texts by splicing dictionary phrases, their prefixes and filler
/// words with random separators and random capitalization.
pub struct SpliceGenerator {
    rng: StdRng,
    phrases: Vec<String>,
}

impl SpliceGenerator {
    pub fn new(seed: u64) -> Self {
        let set = builtin_dictionaries();
        let mut phrases = Vec::new();
        for d in set.iter() {
            for p in d.phrases() {
                phrases.push(p.replace(" <PP>", ""));
            }
        }
        SpliceGenerator { rng: StdRng::seed_from_u64(seed), phrases }
    }

    fn piece(&mut self) -> String {
        match self.rng.gen_range(0..10) {
            0..=4 => self.phrases[self.rng.gen_range(0..self.phrases.len())].clone(),
            5 => {
                let p = &self.phrases[self.rng.gen_range(0..self.phrases.len())];
                p.split(' ').next().unwrap().to_string()
            }
            _ => FILLER[self.rng.gen_range(0..FILLER.len())].to_string(),
        }
    }

    fn vary_case(&mut self, s: String) -> String {
        match self.rng.gen_range(0..4) {
            0 => s.to_uppercase(),
            1 => {
                let mut c = s.chars();
                c.next()
                    .map(|f| f.to_uppercase().chain(c).collect())
                    .unwrap_or_default()
            }
            _ => s,
        }
    }

    pub fn text(&mut self, max_pieces: usize) -> String {
        let n = self.rng.gen_range(0..=max_pieces);
        let mut out = String::new();
        for k in 0..n {
            if k > 0 {
                out.push_str(SEPARATORS[self.rng.gen_range(0..SEPARATORS.len())]);
            }
            let piece = self.piece();
            let piece = self.vary_case(piece);
            out.push_str(&piece);
        }
        if self.rng.gen_bool(0.5) {
            out.push('.');
        }
        out
    }

    /// A requirement-like text of about `words` words.
    pub fn requirement(&mut self, words: usize) -> String {
        let mut out = String::new();
        let mut count = 0;
        while count < words {
            let piece = self.piece();
            count += piece.split(' ').count();
            if !out.is_empty() {
                out.push_str(if self.rng.gen_range(0..12) == 0 { ". " } else { " " });
            }
            out.push_str(&piece);
        }
        out.push('.');
        out
    }
}
