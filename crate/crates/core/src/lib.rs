//! Bad smell detection for natural-language requirements.
//!
//! The pipeline has three stages: [`ingest`] loads requirements from delimited
//! text, [`engine`] computes nine metrics per requirement using the keyword
//! lists in [`dictionary`], and [`report`] applies thresholds and renders the
//! results. [`cli`] ties them together.
//!
//! ```
//! use reqsmell_core::{analyze_text, AnalysisConfig};
//!
//! let v = analyze_text("The system may fail based on some conditions.", &AnalysisConfig::default());
//! assert_eq!(v.v, 3);
//! assert_eq!(v.nw, 8);
//! ```

pub mod cli;
pub mod dictionary;
pub mod engine;
pub mod ingest;
pub mod matcher;
pub mod metric;
pub mod report;
pub mod text;

pub use dictionary::{
    builtin_dictionaries, load_dictionary_file, parse_dictionaries, Dictionary, DictionaryError,
    DictionarySet, Origin, PhrasePattern,
};
pub use engine::{
    analyze_requirement, analyze_text, compute_readability, count_matches, AnalysisConfig,
    MatchSpan, MetricVector, ReadabilityStats,
};
pub use ingest::{load_requirements, ColumnMapping, Corpus, IngestError, Requirement};
pub use matcher::{compile, CompiledMatcher};
pub use metric::Metric;
pub use report::{
    apply_thresholds, build_report, parse_thresholds, render, summarize, AnalysisReport,
    Comparator, Format, ThresholdRule,
};
pub use text::{normalize, split_sentences, tokenize, Sentence, Token};
