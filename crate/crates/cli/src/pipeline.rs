//! Shared corpus loading and labelled-dataset assembly for the train,
//! classify, and evaluate commands.

use std::path::Path;

use anyhow::{anyhow, bail, Result};

use manipify::corpus::{window_filter, CorpusDir, TrendRecord, Tweet};
use manipify::features::{
    bot_features_all, manip_features_all, BOT_FEATURE_NAMES, MANIP_FEATURE_NAMES,
};
use manipify::hashcat::{hashtag_document, Category, Language};
use manipify::locality::locality_features;
use manipify::ml::Dataset;
use manipify::synth::TruthLabels;
use manipify::LocalityFeatures;

pub fn load_corpus(dir: &Path) -> Result<CorpusDir> {
    Ok(CorpusDir::load(dir)?)
}

pub fn load_truth(dir: &Path) -> Result<TruthLabels> {
    Ok(TruthLabels::load(&dir.join("truth.json"))?)
}

/// The hashtag a corpus-wide command acts on when none was named: the
/// first record in trends.jsonl.
pub fn default_hashtag(data: &CorpusDir) -> Result<String> {
    data.trends
        .first()
        .map(|t| t.hashtag.clone())
        .ok_or_else(|| anyhow!("MissingTrend: trends.jsonl is empty"))
}

pub fn resolve_hashtag(data: &CorpusDir, hashtag: Option<&str>) -> Result<String> {
    match hashtag {
        Some(tag) => Ok(tag.to_lowercase()),
        None => default_hashtag(data),
    }
}

/// All tweets carrying the hashtag, in corpus order.
pub fn hashtag_tweets(data: &CorpusDir, hashtag: &str) -> Vec<Tweet> {
    data.tweets
        .iter()
        .filter(|t| t.hashtags.iter().any(|h| h == hashtag))
        .cloned()
        .collect()
}

/// Hashtag tweets restricted to the trend's analysis window.
pub fn windowed_hashtag_tweets(
    data: &CorpusDir,
    trend: &TrendRecord,
) -> Vec<Tweet> {
    window_filter(&hashtag_tweets(data, &trend.hashtag), trend)
}

fn feature_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Manipulation features with truth labels for one hashtag's users.
pub fn manip_dataset(
    data: &CorpusDir,
    truth: &TruthLabels,
    hashtag: &str,
) -> Result<Dataset> {
    let trend = data.trend(hashtag)?;
    let tweets = windowed_hashtag_tweets(data, trend);
    let rows = manip_features_all(&tweets, trend);
    let mut matrix = Vec::with_capacity(rows.len());
    let mut labels = Vec::with_capacity(rows.len());
    for row in &rows {
        let flags = truth.users.get(&row.user_id).ok_or_else(|| {
            anyhow!("MissingUser: {} absent from truth.json", row.user_id)
        })?;
        matrix.push(row.to_row().to_vec());
        labels.push(usize::from(flags.manipulator));
    }
    Ok(Dataset::new(feature_names(&MANIP_FEATURE_NAMES), matrix, labels)?)
}

/// Profile features with truth labels for every user in the corpus.
pub fn bot_dataset(data: &CorpusDir, truth: &TruthLabels) -> Result<Dataset> {
    let rows = bot_features_all(&data.users);
    let mut matrix = Vec::with_capacity(rows.len());
    let mut labels = Vec::with_capacity(rows.len());
    for row in &rows {
        let flags = truth.users.get(&row.user_id).ok_or_else(|| {
            anyhow!("MissingUser: {} absent from truth.json", row.user_id)
        })?;
        matrix.push(row.to_row().to_vec());
        labels.push(usize::from(flags.bot));
    }
    Ok(Dataset::new(feature_names(&BOT_FEATURE_NAMES), matrix, labels)?)
}

/// Locality features with truth labels for every trend in the corpus.
pub fn locality_rows(
    data: &CorpusDir,
    truth: &TruthLabels,
    target_country: &str,
) -> Result<Vec<(LocalityFeatures, bool)>> {
    let mut rows = Vec::with_capacity(data.trends.len());
    for trend in &data.trends {
        let local = truth.hashtag_local.get(&trend.hashtag).ok_or_else(|| {
            anyhow!("MissingTrend: {} absent from truth.json", trend.hashtag)
        })?;
        rows.push((locality_features(trend, target_country), *local));
    }
    if rows.is_empty() {
        bail!("MissingTrend: trends.jsonl is empty");
    }
    Ok(rows)
}

/// One document per category-labelled hashtag, in hashtag order.
pub fn hashcat_docs(
    data: &CorpusDir,
    truth: &TruthLabels,
    language: Language,
) -> Result<Vec<(String, Category, String)>> {
    if truth.hashtag_categories.is_empty() {
        bail!("InsufficientClassData: truth.json labels no hashtag categories");
    }
    let mut docs = Vec::with_capacity(truth.hashtag_categories.len());
    for (hashtag, category) in &truth.hashtag_categories {
        let tweets = hashtag_tweets(data, hashtag);
        docs.push((hashtag.clone(), *category, hashtag_document(&tweets, language)));
    }
    Ok(docs)
}
