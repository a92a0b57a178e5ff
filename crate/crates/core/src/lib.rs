//! Detection and analysis of Twitter-trend manipulation.
//!
//! The library ingests tweet/user/trend corpora and provides:
//!
//! - [`corpus`] — data model, JSONL ingestion, and corpus-selection rules
//!   (original tweets only, trend-time windows, language profiles)
//! - [`textproc`] — preprocessing, word n-grams, and a TF-IDF vectorizer
//!   over 1..3-grams
//! - [`features`] — the five manipulator features (including the n-gram
//!   overlap similarity score) and the eleven bot profile features
//! - [`ml`] — deterministic logistic regression, CART decision trees,
//!   stratified splits, and per-class evaluation metrics
//! - [`hashcat`] — bilingual one-vs-all hashtag topic classification
//! - [`locality`] — local-vs-global trend classification from trend
//!   meta-features
//! - [`analyzer`] — reach, language/category distributions, time-series
//!   binning, user-mix percentages, and hashtag-war pair checks
//! - [`synth`] — seeded synthetic corpus generation with ground-truth
//!   labels for end-to-end testing

pub mod analyzer;
pub mod corpus;
pub mod features;
pub mod hashcat;
pub mod locality;
pub mod ml;
pub mod synth;
pub mod textproc;

pub use analyzer::{LanguageDistribution, PairReport, ReachReport, TimeSeries, UserMixReport};
pub use corpus::{HashtagCorpus, LanguageProfile, Tweet, TrendRecord, UserProfile};
pub use features::{BotFeatureVector, ManipFeatureVector};
pub use hashcat::{Category, CategoryModelBundle, HashtagPrediction, Language};
pub use locality::LocalityFeatures;
pub use ml::{Dataset, LogRegModel, Metrics, TreeModel};
pub use synth::{LabelledCorpus, SynthConfig};
pub use textproc::{DocVector, TfidfVectorizer, TokenSeq};
