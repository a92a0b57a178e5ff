//! Deterministic synthetic corpora with ground-truth labels.
//!
//! `generate` builds a labelled tweet corpus around one main trend:
//! manipulators flood near-duplicate tweets before the trend surfaces,
//! organic users drift in afterwards, bot and human profile cohorts
//! exercise the account classifier, and per-category hashtags carry
//! templated text for topic training. `locality_set` builds labelled
//! trend records for the locality classifier, optionally with label
//! noise. Everything is driven by one seeded RNG, so equal configs
//! produce byte-identical corpora.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Duration, TimeZone, Utc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analyzer::UserFlags;
use crate::corpus::{self, CorpusError, TrendRecord, Tweet, UserProfile};
use crate::hashcat::Category;

/// Errors raised by corpus generation and persistence.
#[derive(Debug)]
pub enum SynthError {
    InvalidConfig { reason: String },
    Io { path: PathBuf, error: std::io::Error },
    BadFormat { reason: String },
    Corpus(CorpusError),
}

impl fmt::Display for SynthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidConfig { reason } => write!(f, "InvalidConfig: {reason}"),
            Self::Io { path, error } => write!(f, "Io: {}: {error}", path.display()),
            Self::BadFormat { reason } => write!(f, "BadFormat: {reason}"),
            Self::Corpus(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SynthError {}

impl From<CorpusError> for SynthError {
    fn from(e: CorpusError) -> Self {
        Self::Corpus(e)
    }
}

/// Knobs for `generate`. Equal configs yield identical corpora.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub seed: u64,
    pub n_manipulators: usize,
    pub n_organic: usize,
    pub n_bots: usize,
    pub n_humans: usize,
    pub n_hashtags_per_category: usize,
    pub tweets_per_hashtag: usize,
    pub target_country: String,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            n_manipulators: 50,
            n_organic: 50,
            n_bots: 100,
            n_humans: 100,
            n_hashtags_per_category: 3,
            tweets_per_hashtag: 30,
            target_country: "Pakistan".to_string(),
        }
    }
}

/// Ground truth for a generated corpus: per-user role flags, per-hashtag
/// categories, and per-hashtag locality.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TruthLabels {
    pub users: BTreeMap<String, UserFlags>,
    pub hashtag_categories: BTreeMap<String, Category>,
    pub hashtag_local: BTreeMap<String, bool>,
}

impl TruthLabels {
    pub fn save(&self, path: &Path) -> Result<(), SynthError> {
        let json = serde_json::to_string_pretty(self).expect("truth labels serialize");
        let write = |p: &Path| -> std::io::Result<()> {
            let mut f = fs::File::create(p)?;
            f.write_all(json.as_bytes())?;
            f.write_all(b"\n")
        };
        write(path).map_err(|error| SynthError::Io { path: path.to_path_buf(), error })
    }

    pub fn load(path: &Path) -> Result<Self, SynthError> {
        let text = fs::read_to_string(path)
            .map_err(|error| SynthError::Io { path: path.to_path_buf(), error })?;
        serde_json::from_str(&text).map_err(|e| SynthError::BadFormat {
            reason: format!("{}: {e}", path.display()),
        })
    }
}

/// A generated corpus plus its ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelledCorpus {
    pub main_hashtag: String,
    pub tweets: Vec<Tweet>,
    pub users: Vec<UserProfile>,
    pub trends: Vec<TrendRecord>,
    pub truth: TruthLabels,
}

impl LabelledCorpus {
    /// Writes tweets.jsonl, users.jsonl, trends.jsonl, and truth.json
    /// into `dir`, creating it if needed.
    pub fn write_to(&self, dir: &Path) -> Result<(), SynthError> {
        fs::create_dir_all(dir)
            .map_err(|error| SynthError::Io { path: dir.to_path_buf(), error })?;
        corpus::write_tweets(&self.tweets, &dir.join("tweets.jsonl"))?;
        corpus::write_users(&self.users, &dir.join("users.jsonl"))?;
        corpus::write_trends(&self.trends, &dir.join("trends.jsonl"))?;
        self.truth.save(&dir.join("truth.json"))
    }
}

const MAIN_HASHTAG: &str = "maintrend";

const MANIP_WORDS: [&str; 10] = [
    "support", "rise", "justice", "stand", "voice", "nation", "truth", "power", "unite",
    "strong",
];

const FILLER_WORDS: [&str; 5] = ["now", "today", "all", "please", "everyone"];

const ORGANIC_WORDS: [&str; 40] = [
    "morning", "coffee", "match", "news", "weather", "traffic", "music", "book", "movie",
    "dinner", "friends", "family", "work", "school", "garden", "market", "cricket", "story",
    "photo", "travel", "street", "river", "mountain", "game", "phone", "laptop", "recipe",
    "health", "doctor", "teacher", "student", "artist", "singer", "painter", "driver",
    "farmer", "builder", "writer", "reader", "walker",
];

const OTHER_COUNTRIES: [&str; 5] = ["France", "Brazil", "India", "Japan", "Nigeria"];

fn base_time() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2021, 1, 24, 12, 0, 0).unwrap()
}

fn category_vocab(category: Category) -> Vec<String> {
    let stem = category.name().to_lowercase();
    (0..20).map(|k| format!("{stem}w{k}")).collect()
}

fn category_template(vocab: &[String], template: usize) -> Vec<String> {
    (0..6).map(|k| vocab[(3 * template + k) % 20].clone()).collect()
}

fn human_profile(rng: &mut ChaCha8Rng, id: &str) -> UserProfile {
    let has_description = rng.gen_bool(0.85);
    let description = if has_description {
        format!("account of {id}")
    } else {
        String::new()
    };
    let description_url = if has_description && rng.gen_bool(0.3) {
        format!("http://example.com/{id}")
    } else {
        String::new()
    };
    UserProfile {
        id: id.to_string(),
        description,
        description_url,
        friends_count: rng.gen_range(50..=800),
        followers_count: rng.gen_range(30..=5000),
        geo_enabled: rng.gen_bool(0.6),
        listed_count: if rng.gen_bool(0.7) { rng.gen_range(1..=50) } else { 0 },
        statuses_count: rng.gen_range(100..=20000),
        profile_url: if rng.gen_bool(0.45) {
            format!("http://example.com/home/{id}")
        } else {
            String::new()
        },
        verified: rng.gen_bool(0.12),
    }
}

fn bot_profile(rng: &mut ChaCha8Rng, id: &str) -> UserProfile {
    let signature = rng.gen_bool(0.8);
    let (description, friends_count, followers_count) = if signature {
        if rng.gen_bool(0.5) {
            (String::new(), rng.gen_range(1001..=3000), rng.gen_range(0..=200))
        } else {
            (String::new(), rng.gen_range(0..=1000), rng.gen_range(0..=29))
        }
    } else {
        let description = if rng.gen_bool(0.5) {
            format!("just another account {id}")
        } else {
            String::new()
        };
        (description, rng.gen_range(0..=1000), rng.gen_range(30..=2000))
    };
    UserProfile {
        id: id.to_string(),
        description,
        description_url: String::new(),
        friends_count,
        followers_count,
        geo_enabled: rng.gen_bool(0.1),
        listed_count: if rng.gen_bool(0.15) { rng.gen_range(1..=5) } else { 0 },
        statuses_count: rng.gen_range(0..=50),
        profile_url: if rng.gen_bool(0.1) {
            format!("http://example.com/{id}")
        } else {
            String::new()
        },
        verified: false,
    }
}

struct TweetFactory {
    counter: usize,
}

impl TweetFactory {
    fn new() -> Self {
        Self { counter: 0 }
    }

    fn tweet(
        &mut self,
        user_id: &str,
        text: String,
        created_at: DateTime<Utc>,
        lang: &str,
        hashtag: &str,
    ) -> Tweet {
        let id = format!("t{:06}", self.counter);
        self.counter += 1;
        Tweet {
            id,
            user_id: user_id.to_string(),
            text,
            created_at,
            lang: lang.to_string(),
            hashtags: vec![hashtag.to_string()],
            is_retweet: false,
        }
    }
}

fn manipulator_tweets(
    rng: &mut ChaCha8Rng,
    factory: &mut TweetFactory,
    user_id: &str,
    first_seen: DateTime<Utc>,
) -> Vec<Tweet> {
    let n_tweets = rng.gen_range(8..=15);
    let n_before = ((n_tweets as f64 * 0.8).round() as usize).clamp(1, n_tweets);
    let template_len = rng.gen_range(3..=6);
    let template: Vec<&str> = (0..template_len)
        .map(|_| MANIP_WORDS[rng.gen_range(0..MANIP_WORDS.len())])
        .collect();
    let mut text = || {
        let mut tokens = template.clone();
        for _ in 0..rng.gen_range(0..=2) {
            tokens.push(FILLER_WORDS[rng.gen_range(0..FILLER_WORDS.len())]);
        }
        format!("{} #{MAIN_HASHTAG}", tokens.join(" "))
    };
    let mut texts: Vec<String> = (0..n_tweets).map(|_| text()).collect();

    let before_gaps: Vec<i64> = (0..n_before.saturating_sub(1))
        .map(|_| rng.gen_range(10..=120))
        .collect();
    let mut times = Vec::with_capacity(n_tweets);
    let mut t = first_seen
        - Duration::seconds(before_gaps.iter().sum::<i64>() + rng.gen_range(60..=600));
    for gap in before_gaps.iter().chain(std::iter::once(&0)) {
        t += Duration::seconds(*gap);
        times.push(t);
    }
    let mut t = first_seen + Duration::seconds(rng.gen_range(10..=600));
    for _ in n_before..n_tweets {
        times.push(t);
        t += Duration::seconds(rng.gen_range(10..=120));
    }

    times
        .into_iter()
        .zip(texts.drain(..))
        .map(|(at, text)| factory.tweet(user_id, text, at, "en", MAIN_HASHTAG))
        .collect()
}

fn organic_tweets(
    rng: &mut ChaCha8Rng,
    factory: &mut TweetFactory,
    user_id: &str,
    first_seen: DateTime<Utc>,
) -> Vec<Tweet> {
    let n_tweets = rng.gen_range(1..=4);
    let mut t = if rng.gen_bool(0.8) {
        first_seen + Duration::seconds(rng.gen_range(60..=7200))
    } else {
        first_seen - Duration::seconds(rng.gen_range(60..=7200))
    };
    let mut tweets = Vec::with_capacity(n_tweets);
    for _ in 0..n_tweets {
        let n_tokens = rng.gen_range(6..=12);
        let tokens: Vec<&str> = (0..n_tokens)
            .map(|_| ORGANIC_WORDS[rng.gen_range(0..ORGANIC_WORDS.len())])
            .collect();
        let text = format!("{} #{MAIN_HASHTAG}", tokens.join(" "));
        let lang = match rng.gen_range(0..20) {
            0..=13 => "en",
            14..=16 => "ur",
            17..=18 => "und",
            _ => "fr",
        };
        tweets.push(factory.tweet(user_id, text, t, lang, MAIN_HASHTAG));
        t += Duration::seconds(rng.gen_range(600..=7200));
    }
    tweets
}

fn local_trend(
    rng: &mut ChaCha8Rng,
    hashtag: &str,
    target_country: &str,
    first_seen: DateTime<Utc>,
    last_seen: DateTime<Utc>,
) -> TrendRecord {
    TrendRecord {
        hashtag: hashtag.to_string(),
        location: target_country.to_string(),
        first_seen,
        last_seen,
        first_trend_location: target_country.to_string(),
        n_other_countries: rng.gen_range(0..=2),
        trended_worldwide: false,
    }
}

fn global_trend(
    rng: &mut ChaCha8Rng,
    hashtag: &str,
    target_country: &str,
    first_seen: DateTime<Utc>,
    last_seen: DateTime<Utc>,
) -> TrendRecord {
    TrendRecord {
        hashtag: hashtag.to_string(),
        location: target_country.to_string(),
        first_seen,
        last_seen,
        first_trend_location: OTHER_COUNTRIES[rng.gen_range(0..OTHER_COUNTRIES.len())]
            .to_string(),
        n_other_countries: rng.gen_range(3..=60),
        trended_worldwide: rng.gen_bool(0.4),
    }
}

/// Generates a labelled corpus per `config`.
pub fn generate(config: &SynthConfig) -> Result<LabelledCorpus, SynthError> {
    if config.target_country.is_empty() {
        return Err(SynthError::InvalidConfig {
            reason: "target_country must not be empty".to_string(),
        });
    }
    if config.n_hashtags_per_category > 0 && config.tweets_per_hashtag == 0 {
        return Err(SynthError::InvalidConfig {
            reason: "tweets_per_hashtag must be positive when category hashtags are requested"
                .to_string(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut factory = TweetFactory::new();
    let first_seen = base_time();
    let last_seen = first_seen + Duration::hours(6);

    let mut tweets = Vec::new();
    let mut users = Vec::new();
    let mut truth = TruthLabels::default();

    let mut trends = vec![TrendRecord {
        hashtag: MAIN_HASHTAG.to_string(),
        location: config.target_country.clone(),
        first_seen,
        last_seen,
        first_trend_location: config.target_country.clone(),
        n_other_countries: 1,
        trended_worldwide: false,
    }];
    truth.hashtag_local.insert(MAIN_HASHTAG.to_string(), true);

    for i in 0..config.n_manipulators {
        let id = format!("m{i:04}");
        tweets.extend(manipulator_tweets(&mut rng, &mut factory, &id, first_seen));
        users.push(human_profile(&mut rng, &id));
        truth
            .users
            .insert(id, UserFlags { bot: false, manipulator: true });
    }

    for i in 0..config.n_organic {
        let id = format!("o{i:04}");
        tweets.extend(organic_tweets(&mut rng, &mut factory, &id, first_seen));
        users.push(human_profile(&mut rng, &id));
        truth.users.insert(id, UserFlags::default());
    }

    for i in 0..config.n_bots {
        let id = format!("b{i:04}");
        users.push(bot_profile(&mut rng, &id));
        truth
            .users
            .insert(id, UserFlags { bot: true, manipulator: false });
    }

    for i in 0..config.n_humans {
        let id = format!("h{i:04}");
        users.push(human_profile(&mut rng, &id));
        truth.users.insert(id, UserFlags::default());
    }

    let total_category_tweets =
        Category::TRAINED.len() * config.n_hashtags_per_category * config.tweets_per_hashtag;
    let n_crowd = if total_category_tweets == 0 {
        0
    } else {
        (total_category_tweets / 10).clamp(1, 100)
    };
    for i in 0..n_crowd {
        let id = format!("c{i:04}");
        users.push(human_profile(&mut rng, &id));
        truth.users.insert(id, UserFlags::default());
    }

    for category in Category::TRAINED {
        let vocab = category_vocab(category);
        let stem = category.name().to_lowercase();
        for i in 0..config.n_hashtags_per_category {
            let hashtag = format!("{stem}{i:03}");
            let mut times = Vec::with_capacity(config.tweets_per_hashtag);
            for _ in 0..config.tweets_per_hashtag {
                let at = first_seen + Duration::seconds(rng.gen_range(0..=21600));
                times.push(at);
                let tokens = category_template(&vocab, rng.gen_range(0..8));
                let text = format!("{} #{hashtag}", tokens.join(" "));
                let author = format!("c{:04}", rng.gen_range(0..n_crowd));
                tweets.push(factory.tweet(&author, text, at, "en", &hashtag));
            }
            let tag_first = *times.iter().min().unwrap();
            let tag_last = *times.iter().max().unwrap();
            let local = rng.gen_bool(0.5);
            let trend = if local {
                local_trend(&mut rng, &hashtag, &config.target_country, tag_first, tag_last)
            } else {
                global_trend(&mut rng, &hashtag, &config.target_country, tag_first, tag_last)
            };
            trends.push(trend);
            truth.hashtag_categories.insert(hashtag.clone(), category);
            truth.hashtag_local.insert(hashtag, local);
        }
    }

    tweets.sort_by(|a, b| (a.created_at, &a.id).cmp(&(b.created_at, &b.id)));

    Ok(LabelledCorpus {
        main_hashtag: MAIN_HASHTAG.to_string(),
        tweets,
        users,
        trends,
        truth,
    })
}

/// Generates labelled trend records for locality training. `label_noise`
/// is the probability each returned label is flipped away from the
/// pattern its features encode.
pub fn locality_set(
    n_total: usize,
    local_fraction: f64,
    label_noise: f64,
    target_country: &str,
    seed: u64,
) -> Result<Vec<(TrendRecord, bool)>, SynthError> {
    if n_total == 0 {
        return Err(SynthError::InvalidConfig { reason: "n_total must be positive".to_string() });
    }
    if !(0.0..=1.0).contains(&local_fraction) {
        return Err(SynthError::InvalidConfig {
            reason: format!("local_fraction {local_fraction} outside [0, 1]"),
        });
    }
    if !(0.0..1.0).contains(&label_noise) {
        return Err(SynthError::InvalidConfig {
            reason: format!("label_noise {label_noise} outside [0, 1)"),
        });
    }
    if target_country.is_empty() {
        return Err(SynthError::InvalidConfig {
            reason: "target_country must not be empty".to_string(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_local = (n_total as f64 * local_fraction).round() as usize;
    let mut rows = Vec::with_capacity(n_total);
    for i in 0..n_total {
        let hashtag = format!("trend{i:03}");
        let first_seen = base_time() + Duration::hours(i as i64);
        let last_seen = first_seen + Duration::hours(6);
        let local = i < n_local;
        let trend = if local {
            local_trend(&mut rng, &hashtag, target_country, first_seen, last_seen)
        } else {
            global_trend(&mut rng, &hashtag, target_country, first_seen, last_seen)
        };
        let label = if label_noise > 0.0 && rng.gen_bool(label_noise) { !local } else { local };
        rows.push((trend, label));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CorpusDir;
    use crate::features::manip_features_all;

    fn small_config() -> SynthConfig {
        SynthConfig {
            seed: 7,
            n_manipulators: 30,
            n_organic: 30,
            n_bots: 60,
            n_humans: 60,
            n_hashtags_per_category: 2,
            tweets_per_hashtag: 10,
            target_country: "Pakistan".to_string(),
        }
    }

    fn corpus_fingerprint(c: &LabelledCorpus) -> String {
        let mut out = String::new();
        for t in &c.tweets {
            out.push_str(&serde_json::to_string(t).unwrap());
            out.push('\n');
        }
        for u in &c.users {
            out.push_str(&serde_json::to_string(u).unwrap());
            out.push('\n');
        }
        for t in &c.trends {
            out.push_str(&serde_json::to_string(t).unwrap());
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&c.truth).unwrap());
        out
    }

    #[test]
    fn user_counts_are_exact() {
        let config = SynthConfig {
            seed: 1,
            n_manipulators: 500,
            n_organic: 500,
            n_bots: 0,
            n_humans: 0,
            n_hashtags_per_category: 0,
            tweets_per_hashtag: 0,
            target_country: "Pakistan".to_string(),
        };
        let corpus = generate(&config).unwrap();
        assert_eq!(corpus.users.len(), 1000);
        assert_eq!(corpus.truth.users.len(), 1000);
        let manipulators =
            corpus.truth.users.values().filter(|f| f.manipulator).count();
        assert_eq!(manipulators, 500);
        assert_eq!(corpus.trends.len(), 1);

        let with_cohorts = generate(&small_config()).unwrap();
        let n_crowd = (6 * 2 * 10) / 10;
        assert_eq!(with_cohorts.users.len(), 30 + 30 + 60 + 60 + n_crowd);
        assert_eq!(
            with_cohorts.truth.users.values().filter(|f| f.bot).count(),
            60
        );
        assert_eq!(with_cohorts.trends.len(), 1 + 6 * 2);
        assert_eq!(with_cohorts.truth.hashtag_categories.len(), 12);
        assert_eq!(with_cohorts.truth.hashtag_local.len(), 13);
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate(&small_config()).unwrap();
        let b = generate(&small_config()).unwrap();
        assert_eq!(corpus_fingerprint(&a), corpus_fingerprint(&b));

        let mut other = small_config();
        other.seed = 8;
        let c = generate(&other).unwrap();
        assert_ne!(corpus_fingerprint(&a), corpus_fingerprint(&c));
    }

    #[test]
    fn tweet_ids_unique_and_sorted_by_time() {
        let corpus = generate(&small_config()).unwrap();
        let mut ids: Vec<&str> = corpus.tweets.iter().map(|t| t.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), corpus.tweets.len());
        for pair in corpus.tweets.windows(2) {
            assert!(pair[0].created_at <= pair[1].created_at);
        }
    }

    #[test]
    fn manipulators_separate_from_organic() {
        let corpus = generate(&small_config()).unwrap();
        let trend = &corpus.trends[0];
        let main_tweets: Vec<Tweet> = corpus
            .tweets
            .iter()
            .filter(|t| t.hashtags.contains(&corpus.main_hashtag))
            .cloned()
            .collect();
        let rows = manip_features_all(&main_tweets, trend);
        let mean = |manip: bool, f: fn(&crate::features::ManipFeatureVector) -> f64| {
            let vals: Vec<f64> = rows
                .iter()
                .filter(|r| corpus.truth.users[&r.user_id].manipulator == manip)
                .map(f)
                .collect();
            vals.iter().sum::<f64>() / vals.len() as f64
        };
        assert!(mean(true, |r| r.tweets_before) > 2.0 * mean(false, |r| r.tweets_before));
        assert!(mean(true, |r| r.sim_score) > 2.0 * mean(false, |r| r.sim_score));
        for row in &rows {
            if corpus.truth.users[&row.user_id].manipulator {
                assert!(
                    (10.0..=120.0).contains(&row.time_before_s),
                    "manipulator gap {}",
                    row.time_before_s
                );
            } else {
                assert!(
                    row.time_before_s == 0.0 || row.time_before_s >= 600.0,
                    "organic gap {}",
                    row.time_before_s
                );
            }
        }
    }

    #[test]
    fn bot_profiles_carry_signature() {
        let corpus = generate(&small_config()).unwrap();
        let signature = |u: &UserProfile| {
            (u.friends_count > 1000 || u.followers_count < 30) && u.description.is_empty()
        };
        let bots: Vec<&UserProfile> =
            corpus.users.iter().filter(|u| corpus.truth.users[&u.id].bot).collect();
        let humans: Vec<&UserProfile> = corpus
            .users
            .iter()
            .filter(|u| u.id.starts_with('h'))
            .collect();
        let bot_rate =
            bots.iter().filter(|u| signature(u)).count() as f64 / bots.len() as f64;
        let human_rate =
            humans.iter().filter(|u| signature(u)).count() as f64 / humans.len() as f64;
        assert!(bot_rate > 0.6, "bot signature rate {bot_rate}");
        assert!(human_rate < 0.1, "human signature rate {human_rate}");
    }

    #[test]
    fn written_corpus_loads_back() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = generate(&small_config()).unwrap();
        corpus.write_to(dir.path()).unwrap();

        let loaded = CorpusDir::load(dir.path()).unwrap();
        assert_eq!(loaded.tweets.len(), corpus.tweets.len());
        assert_eq!(loaded.users.len(), corpus.users.len());
        assert_eq!(loaded.trends.len(), corpus.trends.len());
        let main = loaded.hashtag_corpus(&corpus.main_hashtag).unwrap();
        assert!(!main.tweets.is_empty());

        let truth = TruthLabels::load(&dir.path().join("truth.json")).unwrap();
        assert_eq!(truth, corpus.truth);
    }

    #[test]
    fn locality_rows_follow_requested_mix() {
        let rows = locality_set(193, 0.73, 0.0, "Pakistan", 11).unwrap();
        assert_eq!(rows.len(), 193);
        let locals = rows.iter().filter(|(_, local)| *local).count();
        assert_eq!(locals, 141);
        for (trend, local) in &rows {
            assert_eq!(*local, trend.first_trend_location == "Pakistan");
            if *local {
                assert!(trend.n_other_countries <= 2);
                assert!(!trend.trended_worldwide);
            } else {
                assert!(trend.n_other_countries >= 3);
            }
        }
    }

    #[test]
    fn locality_noise_flips_some_labels() {
        let clean = locality_set(193, 0.73, 0.0, "Pakistan", 11).unwrap();
        let noisy = locality_set(193, 0.73, 0.03, "Pakistan", 11).unwrap();
        let flipped = clean
            .iter()
            .zip(&noisy)
            .filter(|((_, a), (_, b))| a != b)
            .count();
        assert!(flipped >= 1 && flipped <= 20, "flipped {flipped}");
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut config = small_config();
        config.target_country = String::new();
        assert!(matches!(generate(&config), Err(SynthError::InvalidConfig { .. })));

        assert!(matches!(
            locality_set(0, 0.5, 0.0, "Pakistan", 1),
            Err(SynthError::InvalidConfig { .. })
        ));
        assert!(matches!(
            locality_set(10, 1.5, 0.0, "Pakistan", 1),
            Err(SynthError::InvalidConfig { .. })
        ));
        assert!(matches!(
            locality_set(10, 0.5, 1.0, "Pakistan", 1),
            Err(SynthError::InvalidConfig { .. })
        ));
    }
}
