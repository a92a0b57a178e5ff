//! The analyze command: reach, distributions, time series, user mix, and
//! pair reports.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};

use manipify::analyzer::{
    category_distribution, language_distribution, reach, response_pair_check, time_series,
    tweets_per_user_series, user_mix, TimeSeries,
};
use manipify::corpus::{CorpusDir, Tweet};
use manipify::hashcat::Category;

use crate::config::RunConfig;
use crate::output::{emit, to_json};
use crate::pipeline::{hashtag_tweets, load_corpus, load_truth};
use crate::{AnalyzeCmd, GroupBy, ReportArgs};

fn named_hashtag_tweets(data: &CorpusDir, hashtag: &str) -> Result<Vec<Tweet>> {
    let tweets = hashtag_tweets(data, hashtag);
    if tweets.is_empty() {
        bail!("EmptyInput: no tweets carry #{hashtag}");
    }
    Ok(tweets)
}

fn grouper(
    group_by: GroupBy,
    corpus_dir: &Path,
) -> Result<Box<dyn Fn(&Tweet) -> String>> {
    match group_by {
        GroupBy::All => Ok(Box::new(|_| "all".to_string())),
        GroupBy::Lang => Ok(Box::new(|t: &Tweet| t.lang.clone())),
        GroupBy::Role => {
            let truth = load_truth(corpus_dir)?;
            Ok(Box::new(move |t: &Tweet| {
                match truth.users.get(&t.user_id) {
                    Some(flags) if flags.manipulator => "manipulator".to_string(),
                    _ => "organic".to_string(),
                }
            }))
        }
    }
}

fn emit_series(report: &ReportArgs, series: &TimeSeries) -> Result<()> {
    let rendered = if report.csv { series.plot_csv() } else { to_json(series) };
    emit(report.out.as_deref(), &rendered)
}

/// Reads hashtag-to-category labels from `path`: either a truth.json
/// (its hashtag_categories field) or a flat {"hashtag": "Category"} map.
fn load_category_labels(path: &Path) -> Result<BTreeMap<String, Category>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    let map = match value.get("hashtag_categories") {
        Some(inner) => inner,
        None => &value,
    };
    let object = map
        .as_object()
        .ok_or_else(|| anyhow!("BadFormat: {} is not a JSON object", path.display()))?;
    let mut labels = BTreeMap::new();
    for (hashtag, category) in object {
        let name = category.as_str().ok_or_else(|| {
            anyhow!("BadFormat: category for {hashtag} is not a string")
        })?;
        let category = Category::from_name(name)
            .ok_or_else(|| anyhow!("BadFormat: unknown category {name:?}"))?;
        labels.insert(hashtag.to_lowercase(), category);
    }
    Ok(labels)
}

pub fn run(run_config: &RunConfig, cmd: &AnalyzeCmd) -> Result<()> {
    match cmd {
        AnalyzeCmd::Reach { report, hashtag } => {
            let data = load_corpus(&report.corpus)?;
            let corpus = data.hashtag_corpus(&hashtag.to_lowercase())?;
            let reach_report = reach(&corpus)?;
            let rendered =
                if report.csv { reach_report.to_csv() } else { to_json(&reach_report) };
            emit(report.out.as_deref(), &rendered)
        }
        AnalyzeCmd::Langdist { report, hashtag } => {
            let data = load_corpus(&report.corpus)?;
            let dist = match hashtag {
                Some(tag) => {
                    language_distribution(&named_hashtag_tweets(&data, &tag.to_lowercase())?)
                }
                None => language_distribution(&data.tweets),
            };
            let rendered = if report.csv { dist.to_csv() } else { to_json(&dist) };
            emit(report.out.as_deref(), &rendered)
        }
        AnalyzeCmd::Catdist { report, labels } => {
            let data = load_corpus(&report.corpus)?;
            let labels_path = labels
                .clone()
                .unwrap_or_else(|| report.corpus.join("truth.json"));
            let labels = load_category_labels(&labels_path)?;
            let rows: Vec<(String, Category, u64)> = labels
                .into_iter()
                .map(|(hashtag, category)| {
                    let count = hashtag_tweets(&data, &hashtag).len() as u64;
                    (hashtag, category, count)
                })
                .collect();
            let dist = category_distribution(&rows)?;
            let rendered = if report.csv { dist.to_csv() } else { to_json(&dist) };
            emit(report.out.as_deref(), &rendered)
        }
        AnalyzeCmd::Timeseries { report, hashtag, group_by } => {
            let data = load_corpus(&report.corpus)?;
            let tweets = named_hashtag_tweets(&data, &hashtag.to_lowercase())?;
            let group = grouper(*group_by, &report.corpus)?;
            let series = time_series(&tweets, run_config.bin_width_s, group)?;
            emit_series(report, &series)
        }
        AnalyzeCmd::Usermix { report } => {
            let truth = load_truth(&report.corpus)?;
            let mix = user_mix(&truth.users)?;
            let rendered = if report.csv { mix.to_csv() } else { to_json(&mix) };
            emit(report.out.as_deref(), &rendered)
        }
        AnalyzeCmd::Pairs { report, orig, resp } => {
            let data = load_corpus(&report.corpus)?;
            let trend = data.trend(&orig.to_lowercase())?;
            let resp = resp.to_lowercase();
            let resp_tweets = named_hashtag_tweets(&data, &resp)?;
            let pair = response_pair_check(trend, &resp_tweets, &resp)?;
            let rendered = if report.csv { pair.to_csv() } else { to_json(&pair) };
            emit(report.out.as_deref(), &rendered)
        }
        AnalyzeCmd::TweetsPerUser { report, hashtag, group_by } => {
            let data = load_corpus(&report.corpus)?;
            let tweets = named_hashtag_tweets(&data, &hashtag.to_lowercase())?;
            let group = grouper(*group_by, &report.corpus)?;
            let series = tweets_per_user_series(&tweets, run_config.bin_width_s, group)?;
            emit_series(report, &series)
        }
    }
}
