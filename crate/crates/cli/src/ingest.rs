//! The ingest-validate command: load a corpus directory through the full
//! validation path and summarize what it holds.

use std::collections::BTreeSet;
use std::path::Path;

use anyhow::Result;
use serde::Serialize;

use manipify::analyzer::{language_distribution, LanguageDistribution};

use crate::output::to_json;
use crate::pipeline::load_corpus;

#[derive(Serialize)]
struct IngestSummary {
    tweets: usize,
    users: usize,
    trends: usize,
    distinct_hashtags: usize,
    languages: LanguageDistribution,
}

pub fn run(corpus: &Path) -> Result<()> {
    let data = load_corpus(corpus)?;
    let distinct_hashtags: BTreeSet<&str> = data
        .tweets
        .iter()
        .flat_map(|t| t.hashtags.iter().map(String::as_str))
        .collect();
    let summary = IngestSummary {
        tweets: data.tweets.len(),
        users: data.users.len(),
        trends: data.trends.len(),
        distinct_hashtags: distinct_hashtags.len(),
        languages: language_distribution(&data.tweets),
    };
    print!("{}", to_json(&summary));
    Ok(())
}
