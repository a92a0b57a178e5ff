//! Text normalization, word n-grams, and TF-IDF vectorization.
//!
//! `preprocess` is the single canonical cleanup applied before any text
//! feature is computed. It is idempotent: running it on its own output
//! changes nothing.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

static URL_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)(https?://|www\.)\S*").unwrap());
static TAG_RE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"[#@]\w+").unwrap());

/// A tokenized document: the whitespace-split words of preprocessed text.
pub type TokenSeq = Vec<String>;

/// Cleans raw tweet text down to lowercase alphanumeric words separated by
/// single spaces. URLs, hashtags, and mentions are dropped entirely; every
/// other non-alphanumeric character becomes a word boundary.
pub fn preprocess(text: &str) -> String {
    let lowered: String = text.to_lowercase().nfc().collect();
    let no_urls = URL_RE.replace_all(&lowered, " ");
    let no_tags = TAG_RE.replace_all(&no_urls, " ");
    let filtered: String = no_tags
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { ' ' })
        .collect();
    filtered.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Preprocesses and splits into word tokens.
pub fn tokenize(text: &str) -> TokenSeq {
    preprocess(text).split_whitespace().map(str::to_string).collect()
}

/// All word n-grams with `low <= n <= high` tokens, space-joined, ordered by
/// length then position. Returns empty when the range is empty or inverted.
pub fn ngrams(tokens: &[String], low: usize, high: usize) -> Vec<String> {
    let mut out = Vec::new();
    if low == 0 || high < low {
        return out;
    }
    for n in low..=high {
        if n > tokens.len() {
            break;
        }
        for window in tokens.windows(n) {
            out.push(window.join(" "));
        }
    }
    out
}

/// Errors raised while fitting or loading a vectorizer.
#[derive(Debug)]
pub enum TextError {
    EmptyCorpus,
    EmptyVocabulary,
    Io { path: String, error: std::io::Error },
    BadFormat { reason: String },
}

impl fmt::Display for TextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyCorpus => write!(f, "EmptyCorpus: no documents to fit on"),
            Self::EmptyVocabulary => {
                write!(f, "EmptyVocabulary: no n-grams survive preprocessing")
            }
            Self::Io { path, error } => write!(f, "Io: {path}: {error}"),
            Self::BadFormat { reason } => write!(f, "BadFormat: {reason}"),
        }
    }
}

impl std::error::Error for TextError {}

/// A sparse TF-IDF document vector. Entries are (vocabulary index, weight),
/// sorted by index; `dim` is the full vocabulary size.
#[derive(Debug, Clone, PartialEq)]
pub struct DocVector {
    pub dim: usize,
    pub entries: Vec<(usize, f64)>,
}

impl DocVector {
    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: Vec::new() }
    }

    pub fn l2_norm(&self) -> f64 {
        self.entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt()
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.dim];
        for &(i, w) in &self.entries {
            dense[i] = w;
        }
        dense
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Word n-gram TF-IDF vectorizer with smoothed inverse document frequency
/// and L2-normalized output rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfidfVectorizer {
    pub ngram_range: (usize, usize),
    pub vocabulary: BTreeMap<String, usize>,
    pub idf: Vec<f64>,
}

impl TfidfVectorizer {
    /// Fits vocabulary and IDF on raw documents. Each document is
    /// preprocessed, tokenized, and expanded into n-grams in `ngram_range`.
    /// Vocabulary indices follow the lexicographic order of the grams.
    /// idf(g) = ln((1 + N) / (1 + df(g))) + 1.
    pub fn fit<S: AsRef<str>>(docs: &[S], ngram_range: (usize, usize)) -> Result<Self, TextError> {
        if docs.is_empty() {
            return Err(TextError::EmptyCorpus);
        }
        let n_docs = docs.len() as f64;
        let mut df: BTreeMap<String, usize> = BTreeMap::new();
        for doc in docs {
            let tokens = tokenize(doc.as_ref());
            let mut seen: Vec<String> = ngrams(&tokens, ngram_range.0, ngram_range.1);
            seen.sort_unstable();
            seen.dedup();
            for gram in seen {
                *df.entry(gram).or_insert(0) += 1;
            }
        }
        if df.is_empty() {
            return Err(TextError::EmptyVocabulary);
        }
        let mut vocabulary = BTreeMap::new();
        let mut idf = Vec::with_capacity(df.len());
        for (index, (gram, count)) in df.into_iter().enumerate() {
            vocabulary.insert(gram, index);
            idf.push(((1.0 + n_docs) / (1.0 + count as f64)).ln() + 1.0);
        }
        Ok(Self { ngram_range, vocabulary, idf })
    }

    pub fn dim(&self) -> usize {
        self.vocabulary.len()
    }

    /// Maps one document to its L2-normalized TF-IDF vector. Grams outside
    /// the fitted vocabulary are ignored; a document with no known grams
    /// maps to the zero vector.
    pub fn transform(&self, doc: &str) -> DocVector {
        let tokens = tokenize(doc);
        let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
        for gram in ngrams(&tokens, self.ngram_range.0, self.ngram_range.1) {
            if let Some(&index) = self.vocabulary.get(&gram) {
                *counts.entry(index).or_insert(0.0) += 1.0;
            }
        }
        let mut entries: Vec<(usize, f64)> =
            counts.into_iter().map(|(i, tf)| (i, tf * self.idf[i])).collect();
        let norm = entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
        if norm > 0.0 {
            for entry in &mut entries {
                entry.1 /= norm;
            }
        }
        DocVector { dim: self.dim(), entries }
    }

    /// Transforms a batch of documents in order.
    pub fn transform_all<S: AsRef<str>>(&self, docs: &[S]) -> Vec<DocVector> {
        docs.iter().map(|d| self.transform(d.as_ref())).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("vectorizer serializes")
    }

    pub fn from_json(json: &str) -> Result<Self, TextError> {
        let v: Self = serde_json::from_str(json)
            .map_err(|e| TextError::BadFormat { reason: e.to_string() })?;
        if v.idf.len() != v.vocabulary.len() {
            return Err(TextError::BadFormat {
                reason: format!(
                    "idf length {} does not match vocabulary size {}",
                    v.idf.len(),
                    v.vocabulary.len()
                ),
            });
        }
        let mut indices: Vec<usize> = v.vocabulary.values().copied().collect();
        indices.sort_unstable();
        if indices.iter().enumerate().any(|(want, &got)| want != got) {
            return Err(TextError::BadFormat {
                reason: "vocabulary indices are not a permutation of 0..len".into(),
            });
        }
        Ok(v)
    }

    pub fn save(&self, path: &Path) -> Result<(), TextError> {
        fs::write(path, self.to_json())
            .map_err(|error| TextError::Io { path: path.display().to_string(), error })
    }

    pub fn load(path: &Path) -> Result<Self, TextError> {
        let json = fs::read_to_string(path)
            .map_err(|error| TextError::Io { path: path.display().to_string(), error })?;
        Self::from_json(&json)
    }
}
