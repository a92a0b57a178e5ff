//! Run configuration: defaults, an optional key=value config file, and
//! command-line flags, with flags taking precedence over the file.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::{Cli, CliError};

pub struct RunConfig {
    pub target_country: String,
    pub seed: u64,
    pub train_fraction: f64,
    pub min_hashtag_tweets: usize,
    pub bin_width_s: i64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            target_country: "Pakistan".to_string(),
            seed: 42,
            train_fraction: 0.7,
            min_hashtag_tweets: 100,
            bin_width_s: 3600,
        }
    }
}

fn parse_file(path: &Path) -> Result<HashMap<String, String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::Usage(format!("cannot read config file {}: {e}", path.display()))
    })?;
    let mut values = HashMap::new();
    for (number, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "config file {} line {}: expected key=value, got {line:?}",
                path.display(),
                number + 1
            ))
        })?;
        values.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(values)
}

fn file_value<T: std::str::FromStr>(
    values: &HashMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    match values.get(key) {
        None => Ok(None),
        Some(raw) => raw.parse().map(Some).map_err(|_| {
            CliError::Usage(format!("config key {key} has unusable value {raw:?}"))
        }),
    }
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<Self, CliError> {
        let file = match &cli.config {
            Some(path) => parse_file(path)?,
            None => HashMap::new(),
        };
        for key in file.keys() {
            if !matches!(
                key.as_str(),
                "target_country" | "seed" | "train_fraction" | "min_hashtag_tweets"
                    | "bin_width_s"
            ) {
                return Err(CliError::Usage(format!("unknown config key {key:?}")));
            }
        }
        let defaults = Self::default();
        let config = Self {
            target_country: cli
                .target_country
                .clone()
                .or_else(|| file.get("target_country").cloned())
                .unwrap_or(defaults.target_country),
            seed: cli
                .seed
                .or(file_value(&file, "seed")?)
                .unwrap_or(defaults.seed),
            train_fraction: cli
                .train_fraction
                .or(file_value(&file, "train_fraction")?)
                .unwrap_or(defaults.train_fraction),
            min_hashtag_tweets: cli
                .min_hashtag_tweets
                .or(file_value(&file, "min_hashtag_tweets")?)
                .unwrap_or(defaults.min_hashtag_tweets),
            bin_width_s: cli
                .bin_width_s
                .or(file_value(&file, "bin_width_s")?)
                .unwrap_or(defaults.bin_width_s),
        };
        if !(config.train_fraction > 0.0 && config.train_fraction < 1.0) {
            return Err(CliError::Usage(format!(
                "train fraction {} is not in (0, 1)",
                config.train_fraction
            )));
        }
        if config.min_hashtag_tweets == 0 {
            return Err(CliError::Usage(
                "min_hashtag_tweets must be at least 1".to_string(),
            ));
        }
        if config.bin_width_s <= 0 {
            return Err(CliError::Usage(format!(
                "bin width {} s is not positive",
                config.bin_width_s
            )));
        }
        if config.target_country.is_empty() {
            return Err(CliError::Usage("target country must not be empty".to_string()));
        }
        Ok(config)
    }
}
