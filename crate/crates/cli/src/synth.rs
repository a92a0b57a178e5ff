//! The synth command: generate a labelled corpus directory.

use std::fs;

use anyhow::{Context, Result};
use serde::Serialize;

use manipify::synth::{generate, SynthConfig};

use crate::config::RunConfig;
use crate::output::{jsonl, write_atomic};
use crate::SynthArgs;

#[derive(Serialize)]
struct SynthSummary {
    main_hashtag: String,
    tweets: usize,
    users: usize,
    trends: usize,
}

pub fn run(run_config: &RunConfig, args: &SynthArgs) -> Result<()> {
    let config = SynthConfig {
        seed: run_config.seed,
        n_manipulators: args.manipulators,
        n_organic: args.organic,
        n_bots: args.bots,
        n_humans: args.humans,
        n_hashtags_per_category: args.hashtags_per_category,
        tweets_per_hashtag: args.tweets_per_hashtag,
        target_country: run_config.target_country.clone(),
    };
    let corpus = generate(&config)?;

    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    write_atomic(&args.out.join("tweets.jsonl"), jsonl(&corpus.tweets).as_bytes())?;
    write_atomic(&args.out.join("users.jsonl"), jsonl(&corpus.users).as_bytes())?;
    write_atomic(&args.out.join("trends.jsonl"), jsonl(&corpus.trends).as_bytes())?;
    let mut truth = serde_json::to_string_pretty(&corpus.truth).expect("truth serializes");
    truth.push('\n');
    write_atomic(&args.out.join("truth.json"), truth.as_bytes())?;

    let summary = SynthSummary {
        main_hashtag: corpus.main_hashtag,
        tweets: corpus.tweets.len(),
        users: corpus.users.len(),
        trends: corpus.trends.len(),
    };
    print!("{}", crate::output::to_json(&summary));
    Ok(())
}
