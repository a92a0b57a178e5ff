//! Hashtag topic classification: per-language one-vs-all logistic
//! regressions over TF-IDF hashtag documents, with an "Other" fallback for
//! low-confidence predictions and a minimum-volume guard.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::Tweet;
use crate::ml::{Dataset, LogRegConfig, LogRegModel, MlError, SCHEMA_VERSION};
use crate::textproc::{preprocess, TextError, TfidfVectorizer};

/// Tweet-volume floor below which a hashtag is not classified.
pub const DEFAULT_MIN_TWEETS: usize = 100;

/// Topic categories. Order is significant: argmax ties resolve to the
/// earliest category, and Other is the fallback rather than a trained
/// class.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum Category {
    Political,
    Sports,
    Religious,
    Campaign,
    Entertainment,
    Military,
    Other,
}

impl Category {
    /// The six categories that get a binary classifier.
    pub const TRAINED: [Category; 6] = [
        Category::Political,
        Category::Sports,
        Category::Religious,
        Category::Campaign,
        Category::Entertainment,
        Category::Military,
    ];

    pub const ALL: [Category; 7] = [
        Category::Political,
        Category::Sports,
        Category::Religious,
        Category::Campaign,
        Category::Entertainment,
        Category::Military,
        Category::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Political => "Political",
            Category::Sports => "Sports",
            Category::Religious => "Religious",
            Category::Campaign => "Campaign",
            Category::Entertainment => "Entertainment",
            Category::Military => "Military",
            Category::Other => "Other",
        }
    }

    pub fn from_name(name: &str) -> Option<Category> {
        Category::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Tweet language a bundle is trained for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Language {
    #[serde(rename = "en")]
    English,
    #[serde(rename = "ur")]
    Urdu,
}

impl Language {
    pub fn lang_tag(self) -> &'static str {
        match self {
            Language::English => "en",
            Language::Urdu => "ur",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Language> {
        match tag {
            "en" => Some(Language::English),
            "ur" => Some(Language::Urdu),
            _ => None,
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.lang_tag())
    }
}

/// Which language slice(s) produced a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LanguageUsed {
    English,
    Urdu,
    Both,
}

/// One fitted vectorizer plus six one-vs-all models for one language.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryModelBundle {
    pub language: Language,
    pub vectorizer: TfidfVectorizer,
    pub models: BTreeMap<Category, LogRegModel>,
}

/// Classification outcome for one hashtag.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HashtagPrediction {
    pub label: Category,
    pub probabilities: BTreeMap<Category, f64>,
    pub language_used: LanguageUsed,
}

/// Errors raised by training, classification, and bundle persistence.
#[derive(Debug)]
pub enum HashcatError {
    InsufficientTweets { count: usize, minimum: usize },
    InsufficientClassData { category: Category },
    MissingLanguageSlice { language: Language },
    BundleLanguage { expected: Language, found: Language },
    Text(TextError),
    Model(MlError),
    Io { path: String, error: std::io::Error },
    BadFormat { reason: String },
}

impl fmt::Display for HashcatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InsufficientTweets { count, minimum } => {
                write!(f, "InsufficientTweets: {count} tweets, minimum is {minimum}")
            }
            Self::InsufficientClassData { category } => {
                write!(f, "InsufficientClassData: {category} has fewer than 2 positive documents")
            }
            Self::MissingLanguageSlice { language } => {
                write!(f, "MissingLanguageSlice: no {language} tweets in a bilingual hashtag")
            }
            Self::BundleLanguage { expected, found } => {
                write!(f, "BundleLanguage: expected a {expected} bundle, found {found}")
            }
            Self::Text(e) => e.fmt(f),
            Self::Model(e) => e.fmt(f),
            Self::Io { path, error } => write!(f, "Io: {path}: {error}"),
            Self::BadFormat { reason } => write!(f, "BadFormat: {reason}"),
        }
    }
}

impl std::error::Error for HashcatError {}

impl From<TextError> for HashcatError {
    fn from(e: TextError) -> Self {
        Self::Text(e)
    }
}

impl From<MlError> for HashcatError {
    fn from(e: MlError) -> Self {
        Self::Model(e)
    }
}

/// Builds the preprocessed document for one hashtag: the cleaned texts of
/// its tweets in the requested language, in timestamp order, space-joined.
pub fn hashtag_document(tweets: &[Tweet], language: Language) -> String {
    let mut matching: Vec<&Tweet> =
        tweets.iter().filter(|t| t.lang == language.lang_tag()).collect();
    matching.sort_by_key(|t| t.created_at);
    matching
        .iter()
        .map(|t| preprocess(&t.text))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Trains six one-vs-all models over TF-IDF vectors of the labelled
/// hashtag documents. Every trained category needs at least two positive
/// documents; Other documents act as shared negatives.
pub fn train_bundle(
    labelled: &[(String, Category)],
    language: Language,
) -> Result<CategoryModelBundle, HashcatError> {
    train_bundle_with_config(labelled, language, &LogRegConfig::default())
}

/// `train_bundle` with explicit gradient-descent hyperparameters.
pub fn train_bundle_with_config(
    labelled: &[(String, Category)],
    language: Language,
    config: &LogRegConfig,
) -> Result<CategoryModelBundle, HashcatError> {
    for category in Category::TRAINED {
        let positives = labelled.iter().filter(|(_, c)| *c == category).count();
        if positives < 2 {
            return Err(HashcatError::InsufficientClassData { category });
        }
    }
    let docs: Vec<&str> = labelled.iter().map(|(d, _)| d.as_str()).collect();
    let vectorizer = TfidfVectorizer::fit(&docs, (1, 3))?;
    let feature_names: Vec<String> = vectorizer.vocabulary.keys().cloned().collect();
    let rows: Vec<Vec<f64>> = docs.iter().map(|d| vectorizer.transform(d).to_dense()).collect();

    let mut models = BTreeMap::new();
    for category in Category::TRAINED {
        let labels: Vec<usize> =
            labelled.iter().map(|(_, c)| usize::from(*c == category)).collect();
        let data = Dataset::new(feature_names.clone(), rows.clone(), labels)?;
        models.insert(category, LogRegModel::train(&data, config)?);
    }
    Ok(CategoryModelBundle { language, vectorizer, models })
}

/// Per-category probabilities for one hashtag document.
pub fn category_probabilities(
    bundle: &CategoryModelBundle,
    document: &str,
) -> BTreeMap<Category, f64> {
    let row = bundle.vectorizer.transform(document).to_dense();
    bundle
        .models
        .iter()
        .map(|(category, model)| (*category, model.predict_proba(&row)))
        .collect()
}

fn argmax(probabilities: &BTreeMap<Category, f64>) -> (Category, f64) {
    let mut best = (Category::Political, f64::NEG_INFINITY);
    for category in Category::TRAINED {
        let p = probabilities[&category];
        if p > best.1 {
            best = (category, p);
        }
    }
    best
}

fn labelled_prediction(
    probabilities: BTreeMap<Category, f64>,
    language_used: LanguageUsed,
) -> HashtagPrediction {
    let (category, max_p) = argmax(&probabilities);
    let label = if max_p >= 0.5 { category } else { Category::Other };
    HashtagPrediction { label, probabilities, language_used }
}

/// Classifies one already-built hashtag document with a single bundle.
/// No tweet-volume check applies; callers that start from raw tweets
/// should use `classify_monolingual` instead.
pub fn classify_document(
    bundle: &CategoryModelBundle,
    document: &str,
) -> HashtagPrediction {
    let used = match bundle.language {
        Language::English => LanguageUsed::English,
        Language::Urdu => LanguageUsed::Urdu,
    };
    labelled_prediction(category_probabilities(bundle, document), used)
}

/// Classifies a hashtag from its tweets in the bundle's language, using
/// the default 100-tweet minimum.
pub fn classify_monolingual(
    bundle: &CategoryModelBundle,
    tweets: &[Tweet],
) -> Result<HashtagPrediction, HashcatError> {
    classify_monolingual_with_min(bundle, tweets, DEFAULT_MIN_TWEETS)
}

/// `classify_monolingual` with an explicit tweet-volume minimum. Counts
/// only tweets in the bundle's language; the label is the most probable
/// category when its probability reaches 0.5 and Other otherwise.
pub fn classify_monolingual_with_min(
    bundle: &CategoryModelBundle,
    tweets: &[Tweet],
    min_tweets: usize,
) -> Result<HashtagPrediction, HashcatError> {
    let count = tweets.iter().filter(|t| t.lang == bundle.language.lang_tag()).count();
    if count < min_tweets {
        return Err(HashcatError::InsufficientTweets { count, minimum: min_tweets });
    }
    let document = hashtag_document(tweets, bundle.language);
    let used = match bundle.language {
        Language::English => LanguageUsed::English,
        Language::Urdu => LanguageUsed::Urdu,
    };
    Ok(labelled_prediction(category_probabilities(bundle, &document), used))
}

/// Classifies a bilingual hashtag with the default tweet-volume minimum.
pub fn classify_bilingual(
    english: &CategoryModelBundle,
    urdu: &CategoryModelBundle,
    tweets: &[Tweet],
) -> Result<HashtagPrediction, HashcatError> {
    classify_bilingual_with_min(english, urdu, tweets, DEFAULT_MIN_TWEETS)
}

/// Classifies a hashtag that carries both English and Urdu tweets. The
/// volume minimum applies to the total tweet count; each language slice
/// must be nonempty. Both bundles score their own slice and each
/// category keeps its higher probability, so the returned probability is
/// the single maximum across both classifiers.
pub fn classify_bilingual_with_min(
    english: &CategoryModelBundle,
    urdu: &CategoryModelBundle,
    tweets: &[Tweet],
    min_tweets: usize,
) -> Result<HashtagPrediction, HashcatError> {
    if english.language != Language::English {
        return Err(HashcatError::BundleLanguage {
            expected: Language::English,
            found: english.language,
        });
    }
    if urdu.language != Language::Urdu {
        return Err(HashcatError::BundleLanguage {
            expected: Language::Urdu,
            found: urdu.language,
        });
    }
    if tweets.len() < min_tweets {
        return Err(HashcatError::InsufficientTweets {
            count: tweets.len(),
            minimum: min_tweets,
        });
    }
    for language in [Language::English, Language::Urdu] {
        if !tweets.iter().any(|t| t.lang == language.lang_tag()) {
            return Err(HashcatError::MissingLanguageSlice { language });
        }
    }
    let en_probs = category_probabilities(english, &hashtag_document(tweets, Language::English));
    let ur_probs = category_probabilities(urdu, &hashtag_document(tweets, Language::Urdu));
    let merged: BTreeMap<Category, f64> = Category::TRAINED
        .into_iter()
        .map(|c| (c, en_probs[&c].max(ur_probs[&c])))
        .collect();
    Ok(labelled_prediction(merged, LanguageUsed::Both))
}

#[derive(Serialize, Deserialize)]
struct BundleManifest {
    language: Language,
    schema_version: u32,
}

fn model_file_name(category: Category) -> String {
    format!("{}.json", category.name().to_lowercase())
}

fn io_err(path: &Path, error: std::io::Error) -> HashcatError {
    HashcatError::Io { path: path.display().to_string(), error }
}

/// Persists a bundle as a directory: `vectorizer.json`, one model file per
/// trained category, and `manifest.json`.
pub fn save_bundle(bundle: &CategoryModelBundle, dir: &Path) -> Result<(), HashcatError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    bundle.vectorizer.save(&dir.join("vectorizer.json"))?;
    for (category, model) in &bundle.models {
        model.save(&dir.join(model_file_name(*category)))?;
    }
    let manifest = BundleManifest {
        language: bundle.language,
        schema_version: SCHEMA_VERSION,
    };
    let path = dir.join("manifest.json");
    fs::write(&path, serde_json::to_string(&manifest).expect("manifest serializes"))
        .map_err(|e| io_err(&path, e))
}

/// Loads a bundle directory, validating the schema version, the category
/// set, and that every model matches the vectorizer's dimensionality.
pub fn load_bundle(dir: &Path) -> Result<CategoryModelBundle, HashcatError> {
    let manifest_path = dir.join("manifest.json");
    let manifest_json =
        fs::read_to_string(&manifest_path).map_err(|e| io_err(&manifest_path, e))?;
    let value: serde_json::Value = serde_json::from_str(&manifest_json)
        .map_err(|e| HashcatError::BadFormat { reason: e.to_string() })?;
    let found = value
        .get("schema_version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| HashcatError::BadFormat { reason: "missing schema_version".into() })?
        as u32;
    if found != SCHEMA_VERSION {
        return Err(HashcatError::Model(MlError::SchemaVersion {
            found,
            supported: SCHEMA_VERSION,
        }));
    }
    let manifest: BundleManifest = serde_json::from_value(value)
        .map_err(|e| HashcatError::BadFormat { reason: e.to_string() })?;

    let vectorizer = TfidfVectorizer::load(&dir.join("vectorizer.json"))?;
    let mut models = BTreeMap::new();
    for category in Category::TRAINED {
        let model = LogRegModel::load(&dir.join(model_file_name(category)))?;
        if model.weights.len() != vectorizer.dim() {
            return Err(HashcatError::BadFormat {
                reason: format!(
                    "{category} model has {} weights but the vectorizer has {} grams",
                    model.weights.len(),
                    vectorizer.dim()
                ),
            });
        }
        models.insert(category, model);
    }
    Ok(CategoryModelBundle { language: manifest.language, vectorizer, models })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::{TimeZone, Utc};

    fn tweet(id: &str, text: &str, lang: &str, minute: u32) -> Tweet {
        Tweet {
            id: id.into(),
            user_id: "u1".into(),
            text: text.into(),
            created_at: Utc.with_ymd_and_hms(2021, 1, 24, 12, minute, 0).unwrap(),
            lang: lang.into(),
            hashtags: vec!["tag".into()],
            is_retweet: false,
        }
    }

    #[test]
    fn document_filters_sorts_and_preprocesses() {
        let tweets = vec![
            tweet("2", "B.", "en", 5),
            tweet("1", "A!", "en", 1),
            tweet("3", "نہیں", "ur", 3),
        ];
        assert_eq!(hashtag_document(&tweets, Language::English), "a b");
        assert_eq!(hashtag_document(&tweets, Language::Urdu), "نہیں");
        assert_eq!(hashtag_document(&[], Language::English), "");
    }

    fn vocab_sentence(category: Category, salt: usize) -> String {
        let stem = category.name().to_lowercase();
        (0..5).map(|k| format!("{stem}{}", (salt + k) % 8)).collect::<Vec<_>>().join(" ")
    }

    fn toy_corpus() -> Vec<(String, Category)> {
        let mut labelled = Vec::new();
        for category in Category::TRAINED {
            for salt in 0..4 {
                labelled.push((vocab_sentence(category, salt), category));
            }
        }
        labelled.push(("misc words outside every topic".into(), Category::Other));
        labelled.push(("even more unrelated chatter".into(), Category::Other));
        labelled
    }

    #[test]
    fn bundle_models_score_their_own_positives_highest() {
        let labelled = toy_corpus();
        let bundle = train_bundle(&labelled, Language::English).unwrap();
        assert_eq!(bundle.models.len(), 6);
        for (doc, category) in &labelled {
            if *category == Category::Other {
                continue;
            }
            let probs = category_probabilities(&bundle, doc);
            assert!(
                probs[category] > 0.5,
                "{category}: own probability {}",
                probs[category]
            );
            let (best, _) = probs
                .iter()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .unwrap();
            assert_eq!(best, category);
        }
    }

    #[test]
    fn missing_positives_name_the_category() {
        let labelled: Vec<(String, Category)> = toy_corpus()
            .into_iter()
            .filter(|(_, c)| *c != Category::Sports)
            .collect();
        match train_bundle(&labelled, Language::English) {
            Err(HashcatError::InsufficientClassData { category: Category::Sports }) => {}
            other => panic!("expected InsufficientClassData(Sports), got {other:?}"),
        }
    }

    fn tweets_saying(text: &str, lang: &str, n: usize) -> Vec<Tweet> {
        (0..n)
            .map(|i| tweet(&i.to_string(), text, lang, (i % 60) as u32))
            .collect()
    }

    #[test]
    fn monolingual_threshold_and_volume_rules() {
        let bundle = train_bundle(&toy_corpus(), Language::English).unwrap();

        let few = tweets_saying(&vocab_sentence(Category::Sports, 0), "en", 50);
        match classify_monolingual(&bundle, &few) {
            Err(HashcatError::InsufficientTweets { count: 50, minimum: 100 }) => {}
            other => panic!("expected InsufficientTweets(50), got {other:?}"),
        }

        let sports = tweets_saying(&vocab_sentence(Category::Sports, 1), "en", 120);
        let prediction = classify_monolingual(&bundle, &sports).unwrap();
        assert_eq!(prediction.label, Category::Sports);
        assert_eq!(prediction.language_used, LanguageUsed::English);
        assert!(prediction.probabilities[&Category::Sports] >= 0.5);

        let oov = tweets_saying("zebra quark xylophone", "en", 120);
        let fallback = classify_monolingual(&bundle, &oov).unwrap();
        assert_eq!(fallback.label, Category::Other);
        assert!(fallback.probabilities.values().all(|&p| p < 0.5));
    }

    #[test]
    fn urdu_tweets_do_not_count_toward_an_english_minimum() {
        let bundle = train_bundle(&toy_corpus(), Language::English).unwrap();
        let mut tweets = tweets_saying(&vocab_sentence(Category::Sports, 0), "en", 60);
        tweets.extend(tweets_saying("اردو", "ur", 60).into_iter().map(|mut t| {
            t.id = format!("ur{}", t.id);
            t
        }));
        match classify_monolingual(&bundle, &tweets) {
            Err(HashcatError::InsufficientTweets { count: 60, .. }) => {}
            other => panic!("expected InsufficientTweets(60), got {other:?}"),
        }
    }

    fn urdu_corpus() -> Vec<(String, Category)> {
        let mut labelled = Vec::new();
        for category in Category::TRAINED {
            for salt in 0..4 {
                let stem = category.name().to_lowercase();
                let doc = (0..5)
                    .map(|k| format!("اردو{stem}{}", (salt + k) % 8))
                    .collect::<Vec<_>>()
                    .join(" ");
                labelled.push((doc, category));
            }
        }
        labelled
    }

    #[test]
    fn bilingual_takes_the_single_highest_probability() {
        let en = train_bundle(&toy_corpus(), Language::English).unwrap();
        let ur = train_bundle(&urdu_corpus(), Language::Urdu).unwrap();

        let mut tweets = tweets_saying(&vocab_sentence(Category::Political, 0), "en", 70);
        let ur_sports = (0..5)
            .map(|k| format!("اردوsports{k}"))
            .collect::<Vec<_>>()
            .join(" ");
        tweets.extend(tweets_saying(&ur_sports, "ur", 70).into_iter().map(|mut t| {
            t.id = format!("ur{}", t.id);
            t
        }));

        let prediction = classify_bilingual(&en, &ur, &tweets).unwrap();
        assert_eq!(prediction.language_used, LanguageUsed::Both);
        let en_probs =
            category_probabilities(&en, &hashtag_document(&tweets, Language::English));
        let ur_probs = category_probabilities(&ur, &hashtag_document(&tweets, Language::Urdu));
        for category in Category::TRAINED {
            let expected = en_probs[&category].max(ur_probs[&category]);
            assert_eq!(prediction.probabilities[&category], expected);
        }
        let best = prediction
            .probabilities
            .values()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        if best >= 0.5 {
            assert_eq!(prediction.probabilities[&prediction.label], best);
        } else {
            assert_eq!(prediction.label, Category::Other);
        }
    }

    #[test]
    fn bilingual_preconditions() {
        let en = train_bundle(&toy_corpus(), Language::English).unwrap();
        let ur = train_bundle(&urdu_corpus(), Language::Urdu).unwrap();

        let english_only = tweets_saying("some words", "en", 120);
        match classify_bilingual(&en, &ur, &english_only) {
            Err(HashcatError::MissingLanguageSlice { language: Language::Urdu }) => {}
            other => panic!("expected MissingLanguageSlice(ur), got {other:?}"),
        }

        let mut mixed = tweets_saying("some words", "en", 30);
        mixed.extend(tweets_saying("اردو", "ur", 30).into_iter().map(|mut t| {
            t.id = format!("ur{}", t.id);
            t
        }));
        match classify_bilingual(&en, &ur, &mixed) {
            Err(HashcatError::InsufficientTweets { count: 60, .. }) => {}
            other => panic!("expected InsufficientTweets(60), got {other:?}"),
        }

        match classify_bilingual(&ur, &en, &mixed) {
            Err(HashcatError::BundleLanguage { expected: Language::English, .. }) => {}
            other => panic!("expected BundleLanguage, got {other:?}"),
        }
    }

    #[test]
    fn bundle_round_trip_is_byte_identical() {
        let bundle = train_bundle(&toy_corpus(), Language::English).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a");
        let b = dir.path().join("b");
        save_bundle(&bundle, &a).unwrap();
        save_bundle(&bundle, &b).unwrap();
        for name in ["manifest.json", "vectorizer.json", "political.json", "military.json"] {
            let bytes_a = std::fs::read(a.join(name)).unwrap();
            let bytes_b = std::fs::read(b.join(name)).unwrap();
            assert_eq!(bytes_a, bytes_b, "{name} differs between identical saves");
        }
        let restored = load_bundle(&a).unwrap();
        assert_eq!(restored, bundle);
    }

    #[test]
    fn relabelling_categories_permutes_predictions() {
        let swap = |c: Category| match c {
            Category::Political => Category::Military,
            Category::Military => Category::Political,
            other => other,
        };
        let original = toy_corpus();
        let swapped: Vec<(String, Category)> =
            original.iter().map(|(d, c)| (d.clone(), swap(*c))).collect();
        let bundle_a = train_bundle(&original, Language::English).unwrap();
        let bundle_b = train_bundle(&swapped, Language::English).unwrap();
        for (doc, _) in &original {
            let probs_a = category_probabilities(&bundle_a, doc);
            let probs_b = category_probabilities(&bundle_b, doc);
            for category in Category::TRAINED {
                assert!(
                    (probs_a[&category] - probs_b[&swap(category)]).abs() < 1e-12,
                    "{category} probability should survive the relabelling"
                );
            }
        }
    }
}
