use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// The nine per-requirement metrics.
///
/// The first seven are dictionary counts; `NW` is the word count and `ARI` the
/// readability index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    /// Vagueness.
    V,
    /// References to other documents.
    NR1,
    /// Pointers to examples, figures, tables and notes.
    NR2,
    /// Optionality.
    O,
    /// Subjectivity.
    S,
    /// Weakness.
    W,
    /// Conjunctions.
    NC,
    /// Words.
    NW,
    /// Readability.
    ARI,
}

impl Metric {
    pub const ALL: [Metric; 9] = [
        Metric::V,
        Metric::NR1,
        Metric::NR2,
        Metric::O,
        Metric::S,
        Metric::W,
        Metric::NC,
        Metric::NW,
        Metric::ARI,
    ];

    /// Metrics backed by a keyword dictionary, in report order.
    pub const DICTIONARY: [Metric; 7] = [
        Metric::V,
        Metric::NR1,
        Metric::NR2,
        Metric::O,
        Metric::S,
        Metric::W,
        Metric::NC,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::V => "V",
            Metric::NR1 => "NR1",
            Metric::NR2 => "NR2",
            Metric::O => "O",
            Metric::S => "S",
            Metric::W => "W",
            Metric::NC => "NC",
            Metric::NW => "NW",
            Metric::ARI => "ARI",
        }
    }

    pub fn is_dictionary(self) -> bool {
        !matches!(self, Metric::NW | Metric::ARI)
    }

    /// Position of a dictionary metric in [`Metric::DICTIONARY`].
    pub(crate) fn dictionary_index(self) -> Option<usize> {
        Metric::DICTIONARY.iter().position(|&m| m == self)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown metric `{0}`")]
pub struct UnknownMetric(pub String);

impl FromStr for Metric {
    type Err = UnknownMetric;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| UnknownMetric(s.to_string()))
    }
}

impl Serialize for Metric {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}
