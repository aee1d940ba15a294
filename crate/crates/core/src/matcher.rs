//! Token-level phrase matching.
//!
//! Patterns are compiled into a trie keyed by whole tokens. At each position
//! the scan walks the trie as far as the input allows and keeps the longest
//! pattern that ended on the way; a participle slot extends a pattern by one
//! token when that token looks like a past participle. On equal length a
//! literal pattern beats a participle pattern.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::Arc;

use crate::dictionary::{is_past_participle, Dictionary, PhrasePattern};
use crate::metric::Metric;
use crate::text::Token;

/// Word ids for every token that occurs in some pattern. Matchers compiled
/// together share one vocabulary, so a token sequence is encoded once and
/// scanned by all of them.
#[derive(Debug, Default, Clone)]
pub struct Vocabulary {
    ids: HashMap<String, u32>,
}

impl Vocabulary {
    fn intern(&mut self, word: &str) -> u32 {
        let next = self.ids.len() as u32;
        *self.ids.entry(word.to_string()).or_insert(next)
    }

    pub fn lookup(&self, word: &str) -> Option<u32> {
        self.ids.get(word).copied()
    }

    /// Ids for `tokens`; `None` for words no pattern uses.
    pub fn encode(&self, tokens: &[Token]) -> Vec<Option<u32>> {
        tokens.iter().map(|t| self.lookup(&t.text)).collect()
    }
}

#[derive(Debug, Default, Clone)]
struct Node {
    /// Sorted by word id.
    children: Vec<(u32, usize)>,
    literal: Option<usize>,
    participle: Option<usize>,
}

impl Node {
    fn child(&self, word: u32) -> Option<usize> {
        self.children
            .binary_search_by_key(&word, |&(w, _)| w)
            .ok()
            .map(|i| self.children[i].1)
    }
}

/// A compiled dictionary, immutable and shareable across threads.
#[derive(Debug, Clone)]
pub struct CompiledMatcher {
    metric: Metric,
    patterns: Vec<PhrasePattern>,
    nodes: Vec<Node>,
    vocabulary: Arc<Vocabulary>,
}

/// One pattern occurrence found by [`CompiledMatcher::find`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMatch {
    pub pattern: usize,
    pub range: Range<usize>,
}

fn build_trie(dictionary: &Dictionary, vocabulary: &mut Vocabulary) -> Vec<Node> {
    let mut nodes = vec![Node::default()];
    for (idx, pattern) in dictionary.patterns().iter().enumerate() {
        let mut cur = 0;
        for tok in &pattern.tokens {
            let word = vocabulary.intern(tok);
            cur = match nodes[cur].child(word) {
                Some(next) => next,
                None => {
                    nodes.push(Node::default());
                    let next = nodes.len() - 1;
                    let children = &mut nodes[cur].children;
                    let at = children.partition_point(|&(w, _)| w < word);
                    children.insert(at, (word, next));
                    next
                }
            };
        }
        let slot = if pattern.participle_slot {
            &mut nodes[cur].participle
        } else {
            &mut nodes[cur].literal
        };
        slot.get_or_insert(idx);
    }
    nodes
}

/// Compiles several dictionaries over one shared vocabulary.
pub fn compile_all<'a>(dictionaries: impl IntoIterator<Item = &'a Dictionary>) -> Vec<CompiledMatcher> {
    let mut vocabulary = Vocabulary::default();
    let tries: Vec<(&Dictionary, Vec<Node>)> = dictionaries
        .into_iter()
        .map(|d| (d, build_trie(d, &mut vocabulary)))
        .collect();
    let vocabulary = Arc::new(vocabulary);
    tries
        .into_iter()
        .map(|(d, nodes)| CompiledMatcher {
            metric: d.metric(),
            patterns: d.patterns().to_vec(),
            nodes,
            vocabulary: Arc::clone(&vocabulary),
        })
        .collect()
}

pub fn compile(dictionary: &Dictionary) -> CompiledMatcher {
    compile_all([dictionary]).pop().expect("one matcher")
}

impl CompiledMatcher {
    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn patterns(&self) -> &[PhrasePattern] {
        &self.patterns
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    /// Longest pattern starting at `start`, as `(pattern, length)`.
    fn longest_at(&self, tokens: &[Token], ids: &[Option<u32>], start: usize) -> Option<(usize, usize)> {
        // (length, literal beats participle, pattern)
        let mut best: Option<(usize, bool, usize)> = None;
        let mut consider = |len: usize, literal: bool, pattern: usize| {
            if best.is_none_or(|(l, lit, _)| (len, literal) > (l, lit)) {
                best = Some((len, literal, pattern));
            }
        };
        let mut node = &self.nodes[0];
        let mut depth = 0;
        loop {
            if let Some(p) = node.literal {
                consider(depth, true, p);
            }
            if let Some(p) = node.participle {
                if tokens.get(start + depth).is_some_and(|t| is_past_participle(&t.text)) {
                    consider(depth + 1, false, p);
                }
            }
            let Some(word) = ids.get(start + depth).copied().flatten() else { break };
            match node.child(word) {
                Some(next) => {
                    node = &self.nodes[next];
                    depth += 1;
                }
                None => break,
            }
        }
        best.filter(|&(len, _, _)| len > 0).map(|(len, _, p)| (p, len))
    }

    /// Greedy left-to-right scan of `tokens`; matched tokens are consumed.
    /// Ranges index into `tokens`.
    pub fn find(&self, tokens: &[Token]) -> Vec<RawMatch> {
        self.find_encoded(tokens, &self.vocabulary.encode(tokens))
    }

    /// Like [`find`](Self::find), with `ids` already encoded by this
    /// matcher's vocabulary.
    pub fn find_encoded(&self, tokens: &[Token], ids: &[Option<u32>]) -> Vec<RawMatch> {
        debug_assert_eq!(tokens.len(), ids.len());
        // Every pattern starts with a literal word.
        debug_assert!(self.nodes[0].participle.is_none());
        let mut out = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            if ids[i].is_none() {
                i += 1;
                continue;
            }
            match self.longest_at(tokens, ids, i) {
                Some((pattern, len)) => {
                    out.push(RawMatch { pattern, range: i..i + len });
                    i += len;
                }
                None => i += 1,
            }
        }
        out
    }
}
