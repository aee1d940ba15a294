//! Normalization, tokenization and sentence segmentation.
//!
//! Every metric works on the same token stream, so the rules here decide what
//! a "word" and a "sentence" are for the whole tool:
//!
//! * a token is a maximal run of alphanumeric characters; an apostrophe or
//!   hyphen between two alphanumerics stays inside the token (`don't`,
//!   `re-use`); combining marks attach to the token they follow;
//! * a sentence ends at any run of `.`, `!`, `?` or `;`. Abbreviations are not
//!   special-cased, so `e.g.` ends a sentence.

use std::ops::Range;

use serde::Serialize;
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

/// A word of normalized text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub text: String,
    /// Alphabetic characters in the token. Digits, apostrophes and hyphens are
    /// not letters.
    pub letter_count: usize,
    /// Byte range of the token in the text it was cut from.
    pub span: Range<usize>,
}

/// A half-open range of token indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sentence {
    pub token_range: Range<usize>,
}

impl Sentence {
    pub fn len(&self) -> usize {
        self.token_range.len()
    }

    pub fn is_empty(&self) -> bool {
        self.token_range.is_empty()
    }
}

/// Canonical composition plus full Unicode case folding.
pub fn normalize(text: &str) -> String {
    if text.is_ascii() {
        return text.to_ascii_lowercase();
    }
    let folded: String = caseless::default_case_fold_str(&text.nfd().collect::<String>());
    folded.nfc().collect()
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

fn is_joiner(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '-' | '\u{2010}' | '\u{2011}')
}

pub(crate) fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | ';')
}

/// Splits normalized text into tokens.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((start, first)) = chars.next() {
        if !is_word_char(first) {
            continue;
        }
        let mut letters = usize::from(first.is_alphabetic());
        let mut end = text.len();
        while let Some(&(at, c)) = chars.peek() {
            if is_word_char(c) {
                letters += usize::from(c.is_alphabetic());
            } else if is_combining_mark(c) {
                // attaches to the preceding letter
            } else if is_joiner(c) && text[at + c.len_utf8()..].chars().next().is_some_and(is_word_char) {
                // internal apostrophe or hyphen
            } else {
                end = at;
                break;
            }
            chars.next();
        }
        tokens.push(Token {
            text: text[start..end].to_string(),
            letter_count: letters,
            span: start..end,
        });
    }
    tokens
}

/// Groups `tokens` (cut from `text`) into sentences.
///
/// A boundary falls between two consecutive tokens whenever a terminator
/// character occurs in the gap between them. Empty sentences are never
/// produced, so text without tokens has no sentences.
pub fn split_sentences(text: &str, tokens: &[Token]) -> Vec<Sentence> {
    let mut sentences = Vec::new();
    let mut start = 0;
    for i in 1..tokens.len() {
        let gap = &text[tokens[i - 1].span.end..tokens[i].span.start];
        if gap.chars().any(is_terminator) {
            sentences.push(Sentence { token_range: start..i });
            start = i;
        }
    }
    if start < tokens.len() {
        sentences.push(Sentence { token_range: start..tokens.len() });
    }
    sentences
}

/// Normalized text together with its tokens and sentences.
#[derive(Debug, Clone)]
pub struct Segmented {
    pub normalized: String,
    pub tokens: Vec<Token>,
    pub sentences: Vec<Sentence>,
}

pub fn segment(raw: &str) -> Segmented {
    let normalized = normalize(raw);
    let tokens = tokenize(&normalized);
    let sentences = split_sentences(&normalized, &tokens);
    Segmented { normalized, tokens, sentences }
}
