//! Per-user feature vectors for manipulator and bot detection.

use std::collections::BTreeMap;

use chrono::{DateTime, Utc};

use crate::corpus::{TrendRecord, Tweet, UserProfile};
use crate::textproc::{ngrams, tokenize};

/// Column order for manipulator feature rows.
pub const MANIP_FEATURE_NAMES: [&str; 5] = [
    "tweets_total",
    "tweets_before",
    "time_after_s",
    "time_before_s",
    "sim_score",
];

/// Column order for bot feature rows.
pub const BOT_FEATURE_NAMES: [&str; 11] = [
    "has_description",
    "url_in_description",
    "friends_gt_1000",
    "followers_lt_30",
    "geo_enabled",
    "listed_gt_0",
    "statuses_gt_0",
    "url_in_profile",
    "verified",
    "followers_count",
    "friends_count",
];

/// Tweet-behavior features for one user on one trend.
#[derive(Debug, Clone, PartialEq)]
pub struct ManipFeatureVector {
    pub user_id: String,
    pub tweets_total: f64,
    pub tweets_before: f64,
    pub time_after_s: f64,
    pub time_before_s: f64,
    pub sim_score: f64,
}

impl ManipFeatureVector {
    pub fn to_row(&self) -> [f64; 5] {
        [
            self.tweets_total,
            self.tweets_before,
            self.time_after_s,
            self.time_before_s,
            self.sim_score,
        ]
    }
}

/// Profile features for one user.
#[derive(Debug, Clone, PartialEq)]
pub struct BotFeatureVector {
    pub user_id: String,
    pub has_description: bool,
    pub url_in_description: bool,
    pub friends_gt_1000: bool,
    pub followers_lt_30: bool,
    pub geo_enabled: bool,
    pub listed_gt_0: bool,
    pub statuses_gt_0: bool,
    pub url_in_profile: bool,
    pub verified: bool,
    pub followers_count: u64,
    pub friends_count: u64,
}

impl BotFeatureVector {
    pub fn to_row(&self) -> [f64; 11] {
        [
            f64::from(u8::from(self.has_description)),
            f64::from(u8::from(self.url_in_description)),
            f64::from(u8::from(self.friends_gt_1000)),
            f64::from(u8::from(self.followers_lt_30)),
            f64::from(u8::from(self.geo_enabled)),
            f64::from(u8::from(self.listed_gt_0)),
            f64::from(u8::from(self.statuses_gt_0)),
            f64::from(u8::from(self.url_in_profile)),
            f64::from(u8::from(self.verified)),
            self.followers_count as f64,
            self.friends_count as f64,
        ]
    }
}

/// Textual self-similarity of a set of tweets (higher is more repetitive).
///
/// Counts every word n-gram of two or more tokens that occurs in at least
/// two distinct tweets, weights it by token length times its total
/// occurrence count, and divides the sum by the number of tweets.
pub fn sim_score(texts: &[&str]) -> f64 {
    if texts.is_empty() {
        return 0.0;
    }
    struct GramStats {
        freq: usize,
        first_tweet: usize,
        in_multiple: bool,
    }
    let mut occurrences: BTreeMap<String, GramStats> = BTreeMap::new();
    for (tweet_idx, text) in texts.iter().enumerate() {
        let tokens = tokenize(text);
        if tokens.len() < 2 {
            continue;
        }
        for gram in ngrams(&tokens, 2, tokens.len()) {
            let stats = occurrences.entry(gram).or_insert(GramStats {
                freq: 0,
                first_tweet: tweet_idx,
                in_multiple: false,
            });
            stats.freq += 1;
            if stats.first_tweet != tweet_idx {
                stats.in_multiple = true;
            }
        }
    }
    let mut total = 0.0;
    for (gram, stats) in &occurrences {
        if stats.in_multiple {
            let token_len = gram.split(' ').count();
            total += (token_len * stats.freq) as f64;
        }
    }
    total / texts.len() as f64
}

fn mean_gap_seconds(times: &[DateTime<Utc>]) -> f64 {
    if times.len() < 2 {
        return 0.0;
    }
    let total: i64 = times.windows(2).map(|w| (w[1] - w[0]).num_seconds()).sum();
    total as f64 / (times.len() - 1) as f64
}

/// Computes the five manipulator features for one user from their tweets in
/// a trend's window. Tweets strictly before the trend was first seen form
/// the "before" segment; the rest form the "after" segment. Gap means are
/// over consecutive tweets within a segment and are zero for segments with
/// fewer than two tweets.
pub fn manip_features(user_id: &str, tweets: &[&Tweet], trend: &TrendRecord) -> ManipFeatureVector {
    let mut times: Vec<DateTime<Utc>> = tweets.iter().map(|t| t.created_at).collect();
    times.sort_unstable();
    let split = times.partition_point(|t| *t < trend.first_seen);
    let (before, after) = times.split_at(split);
    let texts: Vec<&str> = tweets.iter().map(|t| t.text.as_str()).collect();
    ManipFeatureVector {
        user_id: user_id.to_string(),
        tweets_total: tweets.len() as f64,
        tweets_before: before.len() as f64,
        time_after_s: mean_gap_seconds(after),
        time_before_s: mean_gap_seconds(before),
        sim_score: sim_score(&texts),
    }
}

/// Computes manipulator features for every author in a tweet set, one row
/// per user, ordered by user id.
pub fn manip_features_all(tweets: &[Tweet], trend: &TrendRecord) -> Vec<ManipFeatureVector> {
    let mut by_user: BTreeMap<&str, Vec<&Tweet>> = BTreeMap::new();
    for tweet in tweets {
        by_user.entry(tweet.user_id.as_str()).or_default().push(tweet);
    }
    by_user
        .into_iter()
        .map(|(user_id, tweets)| manip_features(user_id, &tweets, trend))
        .collect()
}

/// Computes the eleven bot profile features for one user.
pub fn bot_features(user: &UserProfile) -> BotFeatureVector {
    BotFeatureVector {
        user_id: user.id.clone(),
        has_description: !user.description.is_empty(),
        url_in_description: !user.description_url.is_empty(),
        friends_gt_1000: user.friends_count > 1000,
        followers_lt_30: user.followers_count < 30,
        geo_enabled: user.geo_enabled,
        listed_gt_0: user.listed_count > 0,
        statuses_gt_0: user.statuses_count > 0,
        url_in_profile: !user.profile_url.is_empty(),
        verified: user.verified,
        followers_count: user.followers_count,
        friends_count: user.friends_count,
    }
}

/// Computes bot features for every profile, ordered by user id.
pub fn bot_features_all(users: &[UserProfile]) -> Vec<BotFeatureVector> {
    let mut rows: Vec<BotFeatureVector> = users.iter().map(bot_features).collect();
    rows.sort_by(|a, b| a.user_id.cmp(&b.user_id));
    rows
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn feature_csv(header: &[&str], rows: impl Iterator<Item = (String, Vec<f64>)>) -> String {
    let mut out = String::from("user_id,");
    out.push_str(&header.join(","));
    out.push('\n');
    for (user_id, values) in rows {
        out.push_str(&csv_escape(&user_id));
        for value in values {
            out.push(',');
            out.push_str(&format_value(value));
        }
        out.push('\n');
    }
    out
}

fn format_value(value: f64) -> String {
    if value == value.trunc() && value.abs() < 1e15 {
        format!("{}", value as i64)
    } else {
        format!("{value}")
    }
}

/// Renders manipulator feature rows as CSV with a header line.
pub fn manip_csv(rows: &[ManipFeatureVector]) -> String {
    feature_csv(
        &MANIP_FEATURE_NAMES,
        rows.iter().map(|r| (r.user_id.clone(), r.to_row().to_vec())),
    )
}

/// Renders bot feature rows as CSV with a header line.
pub fn bot_csv(rows: &[BotFeatureVector]) -> String {
    feature_csv(
        &BOT_FEATURE_NAMES,
        rows.iter().map(|r| (r.user_id.clone(), r.to_row().to_vec())),
    )
}
