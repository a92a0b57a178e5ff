//! Trend-analysis reports: audience reach, language and category
//! distributions, time-series binning, user-mix percentages, and
//! original/response hashtag pair checks.
//!
//! Reports serialize to JSON with a fixed key order; each report also
//! renders a small CSV. Time series additionally emit a long-format plot
//! CSV (`bin_start,group,value`).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use chrono::{DateTime, SecondsFormat, TimeZone, Utc};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::corpus::{HashtagCorpus, TrendRecord, Tweet};
use crate::hashcat::Category;

/// Errors raised by analyzer operations.
#[derive(Debug)]
pub enum AnalyzerError {
    EmptyInput,
    MissingProfile { user_id: String },
    InvalidBinWidth { given: i64 },
}

impl fmt::Display for AnalyzerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyInput => write!(f, "EmptyInput: nothing to analyze"),
            Self::MissingProfile { user_id } => {
                write!(f, "MissingProfile: user {user_id:?} has no profile")
            }
            Self::InvalidBinWidth { given } => {
                write!(f, "InvalidBinWidth: {given} s is not positive")
            }
        }
    }
}

impl std::error::Error for AnalyzerError {}

fn rfc3339(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Secs, true)
}

/// Audience upper bound for one hashtag: the unique tweeting users plus
/// the sum of their follower counts, each user counted once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachReport {
    pub hashtag: String,
    pub n_unique_users: u64,
    pub total_followers: u64,
    pub reach: u64,
}

impl ReachReport {
    pub fn to_csv(&self) -> String {
        format!(
            "hashtag,n_unique_users,total_followers,reach\n{},{},{},{}\n",
            self.hashtag, self.n_unique_users, self.total_followers, self.reach
        )
    }
}

/// Computes the reach report for a hashtag corpus.
pub fn reach(corpus: &HashtagCorpus) -> Result<ReachReport, AnalyzerError> {
    let mut seen = HashSet::new();
    let mut total_followers: u64 = 0;
    for tweet in &corpus.tweets {
        if !seen.insert(tweet.user_id.as_str()) {
            continue;
        }
        let profile = corpus.users.get(&tweet.user_id).ok_or_else(|| {
            AnalyzerError::MissingProfile { user_id: tweet.user_id.clone() }
        })?;
        total_followers += profile.followers_count;
    }
    let n_unique_users = seen.len() as u64;
    Ok(ReachReport {
        hashtag: corpus.hashtag.clone(),
        n_unique_users,
        total_followers,
        reach: n_unique_users + total_followers,
    })
}

/// Tweet counts by language tag: en, ur, und, and everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LanguageDistribution {
    pub english: u64,
    pub urdu: u64,
    pub unknown: u64,
    pub other: u64,
}

impl LanguageDistribution {
    pub fn total(&self) -> u64 {
        self.english + self.urdu + self.unknown + self.other
    }

    pub fn to_csv(&self) -> String {
        format!(
            "language,count\nenglish,{}\nurdu,{}\nunknown,{}\nother,{}\n",
            self.english, self.urdu, self.unknown, self.other
        )
    }
}

/// Counts tweets per language bucket.
pub fn language_distribution(tweets: &[Tweet]) -> LanguageDistribution {
    let mut dist = LanguageDistribution::default();
    for tweet in tweets {
        match tweet.lang.as_str() {
            "en" => dist.english += 1,
            "ur" => dist.urdu += 1,
            "und" => dist.unknown += 1,
            _ => dist.other += 1,
        }
    }
    dist
}

/// Hashtag and tweet share of one category.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CategoryShare {
    pub hashtags: u64,
    pub hashtag_pct: f64,
    pub tweets: u64,
    pub tweet_pct: f64,
}

/// Hashtag and tweet percentages across all seven categories.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryDistribution {
    pub total_hashtags: u64,
    pub total_tweets: u64,
    pub categories: Vec<(Category, CategoryShare)>,
}

impl CategoryDistribution {
    pub fn share(&self, category: Category) -> &CategoryShare {
        &self
            .categories
            .iter()
            .find(|(c, _)| *c == category)
            .expect("all categories present")
            .1
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("category,hashtags,hashtag_pct,tweets,tweet_pct\n");
        for (category, share) in &self.categories {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                category, share.hashtags, share.hashtag_pct, share.tweets, share.tweet_pct
            ));
        }
        out
    }
}

impl Serialize for CategoryDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CategoryDistribution", 3)?;
        s.serialize_field("total_hashtags", &self.total_hashtags)?;
        s.serialize_field("total_tweets", &self.total_tweets)?;
        let map: CategoryShareMap = CategoryShareMap(&self.categories);
        s.serialize_field("categories", &map)?;
        s.end()
    }
}

struct CategoryShareMap<'a>(&'a [(Category, CategoryShare)]);

impl Serialize for CategoryShareMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(self.0.len()))?;
        for (category, share) in self.0 {
            m.serialize_entry(category.name(), share)?;
        }
        m.end()
    }
}

/// Aggregates per-hashtag predictions (hashtag, category, tweet count)
/// into category shares. Every category appears in the output, including
/// ones with no hashtags.
pub fn category_distribution(
    predictions: &[(String, Category, u64)],
) -> Result<CategoryDistribution, AnalyzerError> {
    if predictions.is_empty() {
        return Err(AnalyzerError::EmptyInput);
    }
    let mut hashtag_counts: BTreeMap<Category, u64> = BTreeMap::new();
    let mut tweet_counts: BTreeMap<Category, u64> = BTreeMap::new();
    let total_hashtags = predictions.len() as u64;
    let mut total_tweets: u64 = 0;
    for (_, category, tweets) in predictions {
        *hashtag_counts.entry(*category).or_insert(0) += 1;
        *tweet_counts.entry(*category).or_insert(0) += tweets;
        total_tweets += tweets;
    }
    let categories = Category::ALL
        .into_iter()
        .map(|category| {
            let hashtags = hashtag_counts.get(&category).copied().unwrap_or(0);
            let tweets = tweet_counts.get(&category).copied().unwrap_or(0);
            let share = CategoryShare {
                hashtags,
                hashtag_pct: 100.0 * hashtags as f64 / total_hashtags as f64,
                tweets,
                tweet_pct: if total_tweets > 0 {
                    100.0 * tweets as f64 / total_tweets as f64
                } else {
                    0.0
                },
            };
            (category, share)
        })
        .collect();
    Ok(CategoryDistribution { total_hashtags, total_tweets, categories })
}

/// One time bin: its start and one value per group, in group order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeBin {
    pub start: DateTime<Utc>,
    pub values: Vec<f64>,
}

/// Values per contiguous time bin, split by group. Bins start at
/// `origin`, which is the earliest timestamp truncated down to a multiple
/// of the bin width counted from the Unix epoch, so hourly and
/// multi-hourly bins align with whole UTC hours.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeSeries {
    pub bin_width_s: i64,
    pub origin: DateTime<Utc>,
    pub groups: Vec<String>,
    pub bins: Vec<TimeBin>,
}

impl TimeSeries {
    pub fn total(&self) -> f64 {
        self.bins.iter().flat_map(|b| &b.values).sum()
    }

    /// Long-format CSV with one row per (bin, group) cell.
    pub fn plot_csv(&self) -> String {
        let mut out = String::from("bin_start,group,value\n");
        for bin in &self.bins {
            for (group, value) in self.groups.iter().zip(&bin.values) {
                out.push_str(&format!("{},{},{}\n", rfc3339(bin.start), group, value));
            }
        }
        out
    }
}

struct BinLayout {
    origin_ts: i64,
    n_bins: usize,
}

fn bin_layout(tweets: &[Tweet], bin_width_s: i64) -> Result<BinLayout, AnalyzerError> {
    if bin_width_s <= 0 {
        return Err(AnalyzerError::InvalidBinWidth { given: bin_width_s });
    }
    let timestamps: Vec<i64> = tweets.iter().map(|t| t.created_at.timestamp()).collect();
    let earliest = *timestamps.iter().min().ok_or(AnalyzerError::EmptyInput)?;
    let latest = *timestamps.iter().max().unwrap();
    let origin_ts = earliest - earliest.rem_euclid(bin_width_s);
    let n_bins = ((latest - origin_ts) / bin_width_s + 1) as usize;
    Ok(BinLayout { origin_ts, n_bins })
}

fn sorted_groups(tweets: &[Tweet], group_of: &impl Fn(&Tweet) -> String) -> Vec<String> {
    let set: BTreeSet<String> = tweets.iter().map(group_of).collect();
    set.into_iter().collect()
}

fn assemble(
    layout: &BinLayout,
    bin_width_s: i64,
    groups: Vec<String>,
    values: Vec<Vec<f64>>,
) -> TimeSeries {
    let bins = values
        .into_iter()
        .enumerate()
        .map(|(i, values)| TimeBin {
            start: Utc
                .timestamp_opt(layout.origin_ts + i as i64 * bin_width_s, 0)
                .unwrap(),
            values,
        })
        .collect();
    TimeSeries {
        bin_width_s,
        origin: Utc.timestamp_opt(layout.origin_ts, 0).unwrap(),
        groups,
        bins,
    }
}

/// Counts tweets per time bin, split by the group each tweet belongs to.
pub fn time_series(
    tweets: &[Tweet],
    bin_width_s: i64,
    group_of: impl Fn(&Tweet) -> String,
) -> Result<TimeSeries, AnalyzerError> {
    let layout = bin_layout(tweets, bin_width_s)?;
    let groups = sorted_groups(tweets, &group_of);
    let index_of: HashMap<&str, usize> =
        groups.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
    let mut values = vec![vec![0.0; groups.len()]; layout.n_bins];
    for tweet in tweets {
        let bin = ((tweet.created_at.timestamp() - layout.origin_ts) / bin_width_s) as usize;
        values[bin][index_of[group_of(tweet).as_str()]] += 1.0;
    }
    Ok(assemble(&layout, bin_width_s, groups, values))
}

/// Mean tweets per distinct user, per time bin and group. Cells with no
/// tweets report 0.
pub fn tweets_per_user_series(
    tweets: &[Tweet],
    bin_width_s: i64,
    partition: impl Fn(&Tweet) -> String,
) -> Result<TimeSeries, AnalyzerError> {
    let layout = bin_layout(tweets, bin_width_s)?;
    let groups = sorted_groups(tweets, &partition);
    let index_of: HashMap<&str, usize> =
        groups.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
    let mut counts = vec![vec![0u64; groups.len()]; layout.n_bins];
    let mut users: Vec<Vec<HashSet<&str>>> =
        vec![vec![HashSet::new(); groups.len()]; layout.n_bins];
    for tweet in tweets {
        let bin = ((tweet.created_at.timestamp() - layout.origin_ts) / bin_width_s) as usize;
        let group = index_of[partition(tweet).as_str()];
        counts[bin][group] += 1;
        users[bin][group].insert(tweet.user_id.as_str());
    }
    let values = counts
        .into_iter()
        .zip(users)
        .map(|(count_row, user_row)| {
            count_row
                .into_iter()
                .zip(user_row)
                .map(|(count, users)| {
                    if count == 0 { 0.0 } else { count as f64 / users.len() as f64 }
                })
                .collect()
        })
        .collect();
    Ok(assemble(&layout, bin_width_s, groups, values))
}

/// Ground-truth or predicted role flags for one user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct UserFlags {
    pub bot: bool,
    pub manipulator: bool,
}

/// Counts of bots vs humans and manipulators vs organic users.
/// Percentages are derived from the counts only when the report is
/// serialized or queried, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UserMixReport {
    pub n_users: u64,
    pub n_bots: u64,
    pub n_humans: u64,
    pub n_manipulators: u64,
    pub n_organic: u64,
    pub n_bot_and_manipulator: u64,
}

impl UserMixReport {
    fn pct(&self, count: u64) -> f64 {
        100.0 * count as f64 / self.n_users as f64
    }

    pub fn bot_pct(&self) -> f64 {
        self.pct(self.n_bots)
    }

    pub fn human_pct(&self) -> f64 {
        self.pct(self.n_humans)
    }

    pub fn manipulator_pct(&self) -> f64 {
        self.pct(self.n_manipulators)
    }

    pub fn organic_pct(&self) -> f64 {
        self.pct(self.n_organic)
    }

    pub fn bot_and_manipulator_pct(&self) -> f64 {
        self.pct(self.n_bot_and_manipulator)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,count,pct\n");
        out.push_str(&format!("users,{},100\n", self.n_users));
        for (name, count, pct) in [
            ("bots", self.n_bots, self.bot_pct()),
            ("humans", self.n_humans, self.human_pct()),
            ("manipulators", self.n_manipulators, self.manipulator_pct()),
            ("organic", self.n_organic, self.organic_pct()),
            (
                "bot_and_manipulator",
                self.n_bot_and_manipulator,
                self.bot_and_manipulator_pct(),
            ),
        ] {
            out.push_str(&format!("{name},{count},{pct}\n"));
        }
        out
    }
}

impl Serialize for UserMixReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("UserMixReport", 11)?;
        s.serialize_field("n_users", &self.n_users)?;
        s.serialize_field("n_bots", &self.n_bots)?;
        s.serialize_field("bot_pct", &self.bot_pct())?;
        s.serialize_field("n_humans", &self.n_humans)?;
        s.serialize_field("human_pct", &self.human_pct())?;
        s.serialize_field("n_manipulators", &self.n_manipulators)?;
        s.serialize_field("manipulator_pct", &self.manipulator_pct())?;
        s.serialize_field("n_organic", &self.n_organic)?;
        s.serialize_field("organic_pct", &self.organic_pct())?;
        s.serialize_field("n_bot_and_manipulator", &self.n_bot_and_manipulator)?;
        s.serialize_field("bot_and_manipulator_pct", &self.bot_and_manipulator_pct())?;
        s.end()
    }
}

/// Tallies user role flags into a mix report.
pub fn user_mix(labels: &BTreeMap<String, UserFlags>) -> Result<UserMixReport, AnalyzerError> {
    if labels.is_empty() {
        return Err(AnalyzerError::EmptyInput);
    }
    let n_users = labels.len() as u64;
    let n_bots = labels.values().filter(|f| f.bot).count() as u64;
    let n_manipulators = labels.values().filter(|f| f.manipulator).count() as u64;
    let n_bot_and_manipulator =
        labels.values().filter(|f| f.bot && f.manipulator).count() as u64;
    Ok(UserMixReport {
        n_users,
        n_bots,
        n_humans: n_users - n_bots,
        n_manipulators,
        n_organic: n_users - n_manipulators,
        n_bot_and_manipulator,
    })
}

/// Timing relationship between an original trend and a response hashtag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub orig_hashtag: String,
    pub resp_hashtag: String,
    pub orig_trend_time: DateTime<Utc>,
    pub resp_first_tweet: DateTime<Utc>,
    pub resp_after_orig_trend: bool,
}

impl PairReport {
    pub fn to_csv(&self) -> String {
        format!(
            "orig_hashtag,resp_hashtag,orig_trend_time,resp_first_tweet,resp_after_orig_trend\n{},{},{},{},{}\n",
            self.orig_hashtag,
            self.resp_hashtag,
            rfc3339(self.orig_trend_time),
            rfc3339(self.resp_first_tweet),
            self.resp_after_orig_trend
        )
    }
}

/// Checks whether a response hashtag's first tweet strictly postdates the
/// original hashtag's trend time.
pub fn response_pair_check(
    orig: &TrendRecord,
    resp_tweets: &[Tweet],
    resp_name: &str,
) -> Result<PairReport, AnalyzerError> {
    let resp_first_tweet = resp_tweets
        .iter()
        .map(|t| t.created_at)
        .min()
        .ok_or(AnalyzerError::EmptyInput)?;
    Ok(PairReport {
        orig_hashtag: orig.hashtag.clone(),
        resp_hashtag: resp_name.to_lowercase(),
        orig_trend_time: orig.first_seen,
        resp_first_tweet,
        resp_after_orig_trend: resp_first_tweet > orig.first_seen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::UserProfile;

    fn ts(h: u32, m: u32, s: u32) -> DateTime<Utc> {
        Utc.with_ymd_and_hms(2021, 1, 24, h, m, s).unwrap()
    }

    fn tweet(id: &str, user: &str, at: DateTime<Utc>, lang: &str) -> Tweet {
        Tweet {
            id: id.into(),
            user_id: user.into(),
            text: "hello world #tag".into(),
            created_at: at,
            lang: lang.into(),
            hashtags: vec!["tag".into()],
            is_retweet: false,
        }
    }

    fn profile(id: &str, followers: u64) -> UserProfile {
        UserProfile {
            id: id.into(),
            description: String::new(),
            description_url: String::new(),
            friends_count: 0,
            followers_count: followers,
            geo_enabled: false,
            listed_count: 0,
            statuses_count: 1,
            profile_url: String::new(),
            verified: false,
        }
    }

    fn trend(first_seen: DateTime<Utc>) -> TrendRecord {
        TrendRecord {
            hashtag: "tag".into(),
            location: "Pakistan".into(),
            first_seen,
            last_seen: first_seen,
            first_trend_location: "Pakistan".into(),
            n_other_countries: 0,
            trended_worldwide: false,
        }
    }

    fn corpus(tweets: Vec<Tweet>, users: Vec<UserProfile>) -> HashtagCorpus {
        HashtagCorpus {
            hashtag: "tag".into(),
            trend: trend(ts(12, 0, 0)),
            tweets,
            users: users.into_iter().map(|u| (u.id.clone(), u)).collect(),
        }
    }

    #[test]
    fn reach_counts_each_user_once() {
        let c = corpus(
            vec![
                tweet("1", "a", ts(12, 0, 0), "en"),
                tweet("2", "b", ts(12, 1, 0), "en"),
                tweet("3", "c", ts(12, 2, 0), "en"),
            ],
            vec![profile("a", 10), profile("b", 20), profile("c", 30)],
        );
        let report = reach(&c).unwrap();
        assert_eq!(report.n_unique_users, 3);
        assert_eq!(report.total_followers, 60);
        assert_eq!(report.reach, 63);

        let repeat = corpus(
            (0..5).map(|i| tweet(&i.to_string(), "a", ts(12, i, 0), "en")).collect(),
            vec![profile("a", 100)],
        );
        assert_eq!(reach(&repeat).unwrap().reach, 101);

        let single = corpus(vec![tweet("1", "a", ts(12, 0, 0), "en")], vec![profile("a", 0)]);
        assert_eq!(reach(&single).unwrap().reach, 1);
    }

    #[test]
    fn reach_reports_missing_profile() {
        let c = corpus(vec![tweet("1", "ghost", ts(12, 0, 0), "en")], vec![]);
        match reach(&c) {
            Err(AnalyzerError::MissingProfile { user_id }) => assert_eq!(user_id, "ghost"),
            other => panic!("expected MissingProfile, got {other:?}"),
        }
    }

    #[test]
    fn language_distribution_buckets() {
        let tweets: Vec<Tweet> = ["en", "en", "ur", "und", "fr"]
            .iter()
            .enumerate()
            .map(|(i, l)| tweet(&i.to_string(), "u", ts(12, 0, 0), l))
            .collect();
        let dist = language_distribution(&tweets);
        assert_eq!(
            (dist.english, dist.urdu, dist.unknown, dist.other),
            (2, 1, 1, 1)
        );
        assert_eq!(dist.total(), 5);
        assert_eq!(language_distribution(&[]).total(), 0);
    }

    #[test]
    fn category_distribution_percentages() {
        let rows = vec![
            ("a".to_string(), Category::Political, 10),
            ("b".to_string(), Category::Political, 30),
            ("c".to_string(), Category::Sports, 0),
            ("d".to_string(), Category::Other, 0),
        ];
        let dist = category_distribution(&rows).unwrap();
        assert_eq!(dist.share(Category::Political).hashtag_pct, 50.0);
        assert_eq!(dist.share(Category::Political).tweet_pct, 100.0);
        assert_eq!(dist.share(Category::Military).hashtags, 0);
        let hashtag_sum: f64 = dist.categories.iter().map(|(_, s)| s.hashtag_pct).sum();
        assert!((hashtag_sum - 100.0).abs() < 1e-9);
        assert!(matches!(
            category_distribution(&[]),
            Err(AnalyzerError::EmptyInput)
        ));
    }

    #[test]
    fn time_series_bins_and_alignment() {
        let tweets = vec![
            tweet("1", "a", ts(0, 10, 0), "en"),
            tweet("2", "b", ts(1, 50, 0), "en"),
            tweet("3", "c", ts(2, 5, 0), "en"),
        ];
        let series = time_series(&tweets, 7200, |_| "all".to_string()).unwrap();
        assert_eq!(series.origin, ts(0, 0, 0));
        assert_eq!(series.groups, vec!["all".to_string()]);
        let counts: Vec<f64> = series.bins.iter().map(|b| b.values[0]).collect();
        assert_eq!(counts, vec![2.0, 1.0]);
        assert_eq!(series.total(), 3.0);
    }

    #[test]
    fn time_series_contiguous_with_empty_middle_bins() {
        let tweets = vec![
            tweet("1", "a", ts(0, 30, 0), "en"),
            tweet("2", "b", ts(3, 30, 0), "en"),
        ];
        let series = time_series(&tweets, 3600, |_| "g".to_string()).unwrap();
        let counts: Vec<f64> = series.bins.iter().map(|b| b.values[0]).collect();
        assert_eq!(counts, vec![1.0, 0.0, 0.0, 1.0]);
        for (i, bin) in series.bins.iter().enumerate() {
            assert_eq!(bin.start, ts(i as u32, 0, 0));
        }
    }

    #[test]
    fn time_series_shift_by_bin_width_shifts_bins() {
        let tweets = vec![
            tweet("1", "a", ts(0, 10, 0), "en"),
            tweet("2", "a", ts(1, 50, 0), "en"),
            tweet("3", "b", ts(2, 5, 0), "en"),
        ];
        let base = time_series(&tweets, 7200, |t| t.user_id.clone()).unwrap();
        let shifted_tweets: Vec<Tweet> = tweets
            .iter()
            .cloned()
            .map(|mut t| {
                t.created_at += chrono::Duration::seconds(7200);
                t
            })
            .collect();
        let shifted = time_series(&shifted_tweets, 7200, |t| t.user_id.clone()).unwrap();
        assert_eq!(shifted.origin, base.origin + chrono::Duration::seconds(7200));
        assert_eq!(
            shifted.bins.iter().map(|b| &b.values).collect::<Vec<_>>(),
            base.bins.iter().map(|b| &b.values).collect::<Vec<_>>()
        );
    }

    #[test]
    fn time_series_groups_sorted_and_plot_csv_shape() {
        let tweets = vec![
            tweet("1", "zeta", ts(0, 10, 0), "en"),
            tweet("2", "alpha", ts(0, 20, 0), "en"),
        ];
        let series = time_series(&tweets, 3600, |t| t.user_id.clone()).unwrap();
        assert_eq!(series.groups, vec!["alpha".to_string(), "zeta".to_string()]);
        assert_eq!(
            series.plot_csv(),
            "bin_start,group,value\n\
             2021-01-24T00:00:00Z,alpha,1\n\
             2021-01-24T00:00:00Z,zeta,1\n"
        );
    }

    #[test]
    fn time_series_input_validation() {
        assert!(matches!(
            time_series(&[], 3600, |_| "g".to_string()),
            Err(AnalyzerError::EmptyInput)
        ));
        let tweets = vec![tweet("1", "a", ts(0, 0, 0), "en")];
        assert!(matches!(
            time_series(&tweets, 0, |_| "g".to_string()),
            Err(AnalyzerError::InvalidBinWidth { given: 0 })
        ));
    }

    #[test]
    fn tweets_per_user_means() {
        let mut tweets = Vec::new();
        for i in 0..10 {
            let user = if i % 2 == 0 { "m1" } else { "m2" };
            tweets.push(tweet(&i.to_string(), user, ts(0, i as u32, 0), "en"));
        }
        let series =
            tweets_per_user_series(&tweets, 3600, |_| "manipulator".to_string()).unwrap();
        assert_eq!(series.bins[0].values, vec![5.0]);

        let per_user_once = vec![
            tweet("a", "u1", ts(0, 1, 0), "en"),
            tweet("b", "u2", ts(0, 2, 0), "en"),
            tweet("c", "u3", ts(2, 1, 0), "en"),
        ];
        let series =
            tweets_per_user_series(&per_user_once, 3600, |_| "g".to_string()).unwrap();
        let values: Vec<f64> = series.bins.iter().map(|b| b.values[0]).collect();
        assert_eq!(values, vec![1.0, 0.0, 1.0]);
    }

    #[test]
    fn user_mix_percentages() {
        let mut labels = BTreeMap::new();
        for i in 0..100 {
            let flags = UserFlags {
                bot: i < 52,
                manipulator: (50..54).contains(&i),
            };
            labels.insert(format!("u{i:03}"), flags);
        }
        let mix = user_mix(&labels).unwrap();
        assert_eq!(mix.n_bots, 52);
        assert_eq!(mix.n_humans, 48);
        assert_eq!(mix.n_manipulators, 4);
        assert_eq!(mix.n_organic, 96);
        assert_eq!(mix.n_bot_and_manipulator, 2);
        assert_eq!(mix.bot_pct(), 52.0);
        assert_eq!(mix.human_pct(), 48.0);
        assert_eq!(mix.manipulator_pct(), 4.0);
        assert_eq!(mix.organic_pct(), 96.0);
        assert_eq!(mix.bot_and_manipulator_pct(), 2.0);
        let json = serde_json::to_value(&mix).unwrap();
        assert_eq!(json["bot_pct"], 52.0);
        assert_eq!(json["n_users"], 100);

        let all_organic: BTreeMap<String, UserFlags> =
            [("a".to_string(), UserFlags::default())].into();
        let mix = user_mix(&all_organic).unwrap();
        assert_eq!((mix.bot_pct(), mix.organic_pct()), (0.0, 100.0));
        assert!(matches!(
            user_mix(&BTreeMap::new()),
            Err(AnalyzerError::EmptyInput)
        ));
    }

    #[test]
    fn response_pair_boundary_is_strict() {
        let orig = trend(ts(6, 0, 0));
        let after = vec![tweet("1", "a", ts(6, 30, 0), "en")];
        let report = response_pair_check(&orig, &after, "RESP").unwrap();
        assert!(report.resp_after_orig_trend);
        assert_eq!(report.resp_hashtag, "resp");
        assert_eq!(report.resp_first_tweet, ts(6, 30, 0));

        let before = vec![tweet("1", "a", ts(5, 0, 0), "en")];
        assert!(!response_pair_check(&orig, &before, "resp").unwrap().resp_after_orig_trend);

        let exact = vec![
            tweet("1", "a", ts(6, 0, 0), "en"),
            tweet("2", "a", ts(7, 0, 0), "en"),
        ];
        assert!(!response_pair_check(&orig, &exact, "resp").unwrap().resp_after_orig_trend);

        assert!(matches!(
            response_pair_check(&orig, &[], "resp"),
            Err(AnalyzerError::EmptyInput)
        ));
    }
}
