//! Per-requirement metric computation.

use std::ops::Range;

use serde::Serialize;

use crate::dictionary::{builtin_dictionaries, DictionarySet};
use crate::matcher::{compile_all, CompiledMatcher};
use crate::metric::Metric;
use crate::text::{segment, Sentence, Token};

/// One keyword or phrase occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchSpan {
    pub metric: Metric,
    /// The matched words; for a participle pattern this includes the concrete
    /// participle, e.g. `should have implemented`.
    pub phrase: String,
    /// Token index range within the requirement.
    pub token_range: Range<usize>,
}

/// Intermediate values behind the readability index.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ReadabilityStats {
    /// Average words per sentence.
    pub words_per_sentence: f64,
    /// Average letters per word.
    pub letters_per_word: f64,
    pub sentence_count: usize,
    pub word_count: usize,
    pub letter_count: usize,
}

impl ReadabilityStats {
    /// `WS + 9 * SW`.
    pub fn ari(&self) -> f64 {
        self.words_per_sentence + 9.0 * self.letters_per_word
    }
}

/// All metric values for one requirement.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricVector {
    pub v: usize,
    pub nr1: usize,
    pub nr2: usize,
    pub o: usize,
    pub s: usize,
    pub w: usize,
    pub nc: usize,
    pub nw: usize,
    pub ari: f64,
    pub readability: ReadabilityStats,
    /// The text contained no words.
    pub degenerate: bool,
    /// Dictionary matches, grouped by metric in report order, then by position.
    pub spans: Vec<MatchSpan>,
}

impl MetricVector {
    pub fn count(&self, metric: Metric) -> Option<usize> {
        Some(match metric {
            Metric::V => self.v,
            Metric::NR1 => self.nr1,
            Metric::NR2 => self.nr2,
            Metric::O => self.o,
            Metric::S => self.s,
            Metric::W => self.w,
            Metric::NC => self.nc,
            Metric::NW => self.nw,
            Metric::ARI => return None,
        })
    }

    /// Any metric as a real number.
    pub fn value(&self, metric: Metric) -> f64 {
        match metric {
            Metric::ARI => self.ari,
            m => self.count(m).unwrap_or_default() as f64,
        }
    }

    fn count_mut(&mut self, metric: Metric) -> &mut usize {
        match metric {
            Metric::V => &mut self.v,
            Metric::NR1 => &mut self.nr1,
            Metric::NR2 => &mut self.nr2,
            Metric::O => &mut self.o,
            Metric::S => &mut self.s,
            Metric::W => &mut self.w,
            Metric::NC => &mut self.nc,
            Metric::NW => &mut self.nw,
            Metric::ARI => unreachable!("ARI is not a count"),
        }
    }
}

/// Dictionaries plus their compiled matchers. Immutable once built.
#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    dictionaries: DictionarySet,
    matchers: Vec<CompiledMatcher>,
}

impl AnalysisConfig {
    pub fn new(dictionaries: DictionarySet) -> Self {
        let matchers = compile_all(dictionaries.iter());
        AnalysisConfig { dictionaries, matchers }
    }

    pub fn dictionaries(&self) -> &DictionarySet {
        &self.dictionaries
    }

    pub fn matcher(&self, metric: Metric) -> Option<&CompiledMatcher> {
        self.matchers.iter().find(|m| m.metric() == metric)
    }
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig::new(builtin_dictionaries())
    }
}

/// Counts the matcher's patterns sentence by sentence, so no phrase crosses
/// a sentence boundary.
pub fn count_matches(
    tokens: &[Token],
    sentences: &[Sentence],
    matcher: &CompiledMatcher,
) -> (usize, Vec<MatchSpan>) {
    count_encoded(tokens, &matcher.vocabulary().encode(tokens), sentences, matcher)
}

fn count_encoded(
    tokens: &[Token],
    ids: &[Option<u32>],
    sentences: &[Sentence],
    matcher: &CompiledMatcher,
) -> (usize, Vec<MatchSpan>) {
    let mut spans = Vec::new();
    for sentence in sentences {
        let range = sentence.token_range.clone();
        let offset = range.start;
        for m in matcher.find_encoded(&tokens[range.clone()], &ids[range]) {
            let range = m.range.start + offset..m.range.end + offset;
            let phrase = tokens[range.clone()]
                .iter()
                .map(|t| t.text.as_str())
                .collect::<Vec<_>>()
                .join(" ");
            spans.push(MatchSpan {
                metric: matcher.metric(),
                phrase,
                token_range: range,
            });
        }
    }
    (spans.len(), spans)
}

pub fn compute_readability(tokens: &[Token], sentences: &[Sentence]) -> ReadabilityStats {
    let word_count = tokens.len();
    let sentence_count = sentences.len();
    let letter_count: usize = tokens.iter().map(|t| t.letter_count).sum();
    let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    ReadabilityStats {
        words_per_sentence: ratio(word_count, sentence_count),
        letters_per_word: ratio(letter_count, word_count),
        sentence_count,
        word_count,
        letter_count,
    }
}

/// Computes the metric vector of one piece of requirement text.
pub fn analyze_text(text: &str, config: &AnalysisConfig) -> MetricVector {
    let seg = segment(text);
    let readability = compute_readability(&seg.tokens, &seg.sentences);
    let mut vector = MetricVector {
        nw: seg.tokens.len(),
        ari: readability.ari(),
        readability,
        degenerate: seg.tokens.is_empty(),
        ..MetricVector::default()
    };
    let ids = match config.matchers.first() {
        Some(m) => m.vocabulary().encode(&seg.tokens),
        None => Vec::new(),
    };
    for matcher in &config.matchers {
        let (count, spans) = count_encoded(&seg.tokens, &ids, &seg.sentences, matcher);
        *vector.count_mut(matcher.metric()) = count;
        vector.spans.extend(spans);
    }
    vector
}

pub fn analyze_requirement(
    requirement: &crate::ingest::Requirement,
    config: &AnalysisConfig,
) -> MetricVector {
    analyze_text(&requirement.text, config)
}
