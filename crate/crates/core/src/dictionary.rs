//! Keyword dictionaries for the seven counted metrics.
//!
//! Builtin lists are stored in the same line syntax as user dictionary files,
//! so both go through one parser. A dictionary file looks like:
//!
//! ```text
//! # comment
//! [V]
//! may
//! should have <PP>
//!
//! [O]
//! can
//! ```
//!
//! Each section present in a file replaces the builtin list for that metric.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::metric::Metric;
use crate::text::{normalize, tokenize};

/// Placeholder for "any past participle" at the end of a phrase.
pub const PARTICIPLE_PLACEHOLDER: &str = "<PP>";

const VAGUENESS: &[&str] = &[
    "may",
    "could",
    "has to",
    "have to",
    "might",
    "will",
    "should have <PP>",
    "must have <PP>",
    "all the other",
    "all other",
    "based on",
    "some",
    "appropriate",
    "as a",
    "as an",
    "a minimum",
    "up to",
    "adequate",
    "as applicable",
    "be able to",
    "be capable",
    "but not limited to",
    "capability of",
    "capability to",
    "effective",
    "normal",
];

const DOCUMENT_REFERENCES: &[&str] = &[
    "defined in reference",
    "defined in the reference",
    "specified in reference",
    "specified in the reference",
    "specified by reference",
    "specified by the reference",
    "see reference",
    "see the reference",
    "refer to reference",
    "refer to the reference",
    "further reference",
    "follow reference",
    "follow the reference",
    "see document",
    "see",
];

const INLINE_REFERENCES: &[&str] = &["for example", "figure", "table", "note"];

const OPTIONALITY: &[&str] = &["can", "may", "optionally"];

const SUBJECTIVITY: &[&str] = &[
    "similar",
    "better",
    "similarly",
    "worse",
    "having in mind",
    "take into account",
    "take into consideration",
    "as possible",
];

const WEAKNESS: &[&str] = &[
    "adequate",
    "as appropriate",
    "be able to",
    "be capable of",
    "capability of",
    "capability to",
    "effective",
    "as required",
    "normal",
    "provide for",
    "timely",
    "easy to",
];

const CONJUNCTIONS: &[&str] = &[
    "and", "or", "but", "nor", "yet", "so", "for", "although", "because", "since", "unless",
    "until", "while", "whereas", "if", "when", "whenever", "after", "before", "once", "though",
];

/// Past participles that the `-ed`/`-en` suffix rule misses.
const IRREGULAR_PARTICIPLES: &[&str] = &[
    "arisen", "been", "begun", "bent", "bound", "bought", "brought", "built", "burnt", "caught",
    "chosen", "come", "cut", "dealt", "done", "drawn", "driven", "dug", "fed", "felt", "fought",
    "found", "got", "gone", "grown", "had", "heard", "held", "hit", "hung", "kept", "known",
    "laid", "led", "left", "lent", "let", "lost", "made", "meant", "met", "paid", "put", "quit",
    "read", "run", "said", "sat", "seen", "sent", "set", "shot", "shown", "shut", "sold",
    "spent", "split", "spread", "stood", "struck", "stuck", "sung", "taught", "told", "thought",
    "understood", "won", "wound", "written", "withheld", "overridden", "undergone",
];

/// Suffix heuristic for past participles: `-ed`, `-en`, or a known irregular form.
pub fn is_past_participle(token: &str) -> bool {
    let long_enough = token.chars().count() > 2;
    (long_enough && (token.ends_with("ed") || token.ends_with("en")))
        || IRREGULAR_PARTICIPLES.contains(&token)
}

/// A keyword phrase as a sequence of normalized tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhrasePattern {
    pub tokens: Vec<String>,
    /// The phrase ends with one past-participle token.
    pub participle_slot: bool,
}

impl PhrasePattern {
    /// Parses one phrase line. Returns `None` when nothing but the placeholder
    /// or separators remain.
    pub fn parse(line: &str) -> Option<PhrasePattern> {
        let line = line.trim();
        let (body, participle_slot) = match line.rsplit_once(char::is_whitespace) {
            Some((head, last)) if last.eq_ignore_ascii_case(PARTICIPLE_PLACEHOLDER) => (head, true),
            _ if line.eq_ignore_ascii_case(PARTICIPLE_PLACEHOLDER) => return None,
            _ => (line, false),
        };
        let tokens: Vec<String> = tokenize(&normalize(body)).into_iter().map(|t| t.text).collect();
        if tokens.is_empty() {
            return None;
        }
        Some(PhrasePattern { tokens, participle_slot })
    }

    /// Number of tokens a match of this pattern covers.
    pub fn match_len(&self) -> usize {
        self.tokens.len() + usize::from(self.participle_slot)
    }
}

impl fmt::Display for PhrasePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens.join(" "))?;
        if self.participle_slot {
            write!(f, " {PARTICIPLE_PLACEHOLDER}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    Builtin,
    UserFile,
}

/// The phrase list of one counted metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dictionary {
    metric: Metric,
    patterns: Vec<PhrasePattern>,
    origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DictionaryInvariant {
    #[error("{0} is not a dictionary metric")]
    NotDictionaryMetric(Metric),
    #[error("dictionary for {0} has no phrases")]
    Empty(Metric),
    #[error("duplicate phrase `{0}`")]
    DuplicatePhrase(String),
    #[error("phrase without words")]
    EmptyPhrase,
}

impl Dictionary {
    pub fn new(
        metric: Metric,
        patterns: Vec<PhrasePattern>,
        origin: Origin,
    ) -> Result<Self, DictionaryInvariant> {
        if !metric.is_dictionary() {
            return Err(DictionaryInvariant::NotDictionaryMetric(metric));
        }
        if patterns.is_empty() {
            return Err(DictionaryInvariant::Empty(metric));
        }
        let mut seen = HashSet::new();
        for p in &patterns {
            if p.tokens.is_empty() || p.tokens.iter().any(|t| t.is_empty()) {
                return Err(DictionaryInvariant::EmptyPhrase);
            }
            if !seen.insert(p) {
                return Err(DictionaryInvariant::DuplicatePhrase(p.to_string()));
            }
        }
        Ok(Dictionary { metric, patterns, origin })
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn patterns(&self) -> &[PhrasePattern] {
        &self.patterns
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// Normalized phrase strings, with `<PP>` for participle slots.
    pub fn phrases(&self) -> Vec<String> {
        self.patterns.iter().map(ToString::to_string).collect()
    }
}

fn builtin(metric: Metric, lines: &[&str]) -> Dictionary {
    let patterns = lines
        .iter()
        .map(|l| PhrasePattern::parse(l).expect("builtin phrase"))
        .collect();
    Dictionary::new(metric, patterns, Origin::Builtin).expect("builtin dictionary")
}

/// One dictionary per counted metric, in [`Metric::DICTIONARY`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictionarySet {
    dictionaries: Vec<Dictionary>,
}

impl DictionarySet {
    pub fn get(&self, metric: Metric) -> Option<&Dictionary> {
        metric.dictionary_index().map(|i| &self.dictionaries[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = &Dictionary> {
        self.dictionaries.iter()
    }

    /// Replaces the dictionary for its metric.
    pub fn replace(&mut self, dictionary: Dictionary) {
        let i = dictionary.metric.dictionary_index().expect("dictionary metric");
        self.dictionaries[i] = dictionary;
    }

    /// Renders every section in dictionary file syntax.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for (i, d) in self.dictionaries.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("[{}]\n", d.metric));
            for p in &d.patterns {
                out.push_str(&p.to_string());
                out.push('\n');
            }
        }
        out
    }
}

impl Default for DictionarySet {
    fn default() -> Self {
        builtin_dictionaries()
    }
}

pub fn builtin_dictionaries() -> DictionarySet {
    let dictionaries = vec![
        builtin(Metric::V, VAGUENESS),
        builtin(Metric::NR1, DOCUMENT_REFERENCES),
        builtin(Metric::NR2, INLINE_REFERENCES),
        builtin(Metric::O, OPTIONALITY),
        builtin(Metric::S, SUBJECTIVITY),
        builtin(Metric::W, WEAKNESS),
        builtin(Metric::NC, CONJUNCTIONS),
    ];
    DictionarySet { dictionaries }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Malformation {
    #[error("unknown metric `{0}`")]
    UnknownMetric(String),
    #[error("section [{0}] has no phrases")]
    EmptySection(Metric),
    #[error("section [{0}] appears more than once")]
    DuplicateSection(Metric),
    #[error("duplicate phrase `{0}`")]
    DuplicatePhrase(String),
    #[error("phrase before any section header")]
    PhraseOutsideSection,
    #[error("phrase `{0}` contains no words")]
    EmptyPhrase(String),
}

#[derive(Debug, thiserror::Error)]
pub enum DictionaryError {
    #[error("malformed dictionary at line {line}: {kind}")]
    Malformed { line: usize, kind: Malformation },
    #[error("cannot read dictionary file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

struct Section {
    metric: Metric,
    header_line: usize,
    patterns: Vec<PhrasePattern>,
    seen: HashSet<PhrasePattern>,
}

impl Section {
    fn finish(self) -> Result<Dictionary, DictionaryError> {
        Dictionary::new(self.metric, self.patterns, Origin::UserFile).map_err(|_| {
            DictionaryError::Malformed {
                line: self.header_line,
                kind: Malformation::EmptySection(self.metric),
            }
        })
    }
}

/// Parses dictionary file contents on top of the builtin dictionaries.
pub fn parse_dictionaries(source: &str) -> Result<DictionarySet, DictionaryError> {
    let mut set = builtin_dictionaries();
    let mut seen_sections = HashSet::new();
    let mut current: Option<Section> = None;
    let malformed = |line, kind| DictionaryError::Malformed { line, kind };

    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let name = name.trim();
            let metric = name
                .parse::<Metric>()
                .ok()
                .filter(|m| m.is_dictionary())
                .ok_or_else(|| malformed(line_no, Malformation::UnknownMetric(name.to_string())))?;
            if !seen_sections.insert(metric) {
                return Err(malformed(line_no, Malformation::DuplicateSection(metric)));
            }
            if let Some(section) = current.take() {
                set.replace(section.finish()?);
            }
            current = Some(Section {
                metric,
                header_line: line_no,
                patterns: Vec::new(),
                seen: HashSet::new(),
            });
            continue;
        }
        let section = current
            .as_mut()
            .ok_or_else(|| malformed(line_no, Malformation::PhraseOutsideSection))?;
        let pattern = PhrasePattern::parse(line)
            .ok_or_else(|| malformed(line_no, Malformation::EmptyPhrase(line.to_string())))?;
        if !section.seen.insert(pattern.clone()) {
            return Err(malformed(line_no, Malformation::DuplicatePhrase(pattern.to_string())));
        }
        section.patterns.push(pattern);
    }
    if let Some(section) = current.take() {
        set.replace(section.finish()?);
    }
    Ok(set)
}

pub fn load_dictionary_file(path: impl AsRef<Path>) -> Result<DictionarySet, DictionaryError> {
    let path = path.as_ref();
    let source = fs::read_to_string(path).map_err(|source| DictionaryError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_dictionaries(source.strip_prefix('\u{feff}').unwrap_or(&source))
}
