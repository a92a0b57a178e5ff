//! Data model and ingestion for tweet, user, and trend corpora.
//!
//! Corpora are JSONL files (UTF-8, one object per line). Timestamps are
//! RFC 3339 and are normalized to UTC at second precision during ingestion.
//! Hashtag strings are lowercased at ingestion and compared
//! case-insensitively everywhere else.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::LazyLock;

use chrono::{DateTime, Duration, Timelike, Utc};
use regex::Regex;
use serde::{Deserialize, Serialize};

static HASHTAG_RE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"#(\w+)").unwrap());

/// One tweet as ingested from a corpus file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tweet {
    pub id: String,
    pub user_id: String,
    pub text: String,
    pub created_at: DateTime<Utc>,
    pub lang: String,
    pub hashtags: Vec<String>,
    pub is_retweet: bool,
}

/// Account statistics for one user, the source of all bot profile features.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserProfile {
    pub id: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub description_url: String,
    pub friends_count: u64,
    pub followers_count: u64,
    pub geo_enabled: bool,
    pub listed_count: u64,
    pub statuses_count: u64,
    #[serde(default)]
    pub profile_url: String,
    pub verified: bool,
}

impl UserProfile {
    /// Whether the profile description carries a URL.
    pub fn description_url_present(&self) -> bool {
        !self.description_url.is_empty()
    }
}

/// Trending-panel meta-information for one hashtag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrendRecord {
    pub hashtag: String,
    pub location: String,
    pub first_seen: DateTime<Utc>,
    pub last_seen: DateTime<Utc>,
    pub first_trend_location: String,
    pub n_other_countries: u64,
    pub trended_worldwide: bool,
}

/// Everything known about one trending hashtag: its trend record, the
/// tweets that carry it, and the profiles of the users who posted them.
#[derive(Debug, Clone)]
pub struct HashtagCorpus {
    pub hashtag: String,
    pub trend: TrendRecord,
    pub tweets: Vec<Tweet>,
    pub users: HashMap<String, UserProfile>,
}

impl HashtagCorpus {
    /// Builds a corpus, enforcing referential integrity: every tweet must
    /// list the hashtag and every tweet author must resolve to a profile.
    pub fn new(
        hashtag: &str,
        trend: TrendRecord,
        tweets: Vec<Tweet>,
        users: HashMap<String, UserProfile>,
    ) -> Result<Self, CorpusError> {
        let hashtag = hashtag.to_lowercase();
        if trend.hashtag != hashtag {
            return Err(CorpusError::TrendMismatch {
                expected: hashtag,
                found: trend.hashtag.clone(),
            });
        }
        let mut seen_ids = HashSet::new();
        for tweet in &tweets {
            if !seen_ids.insert(tweet.id.as_str()) {
                return Err(CorpusError::DuplicateId {
                    kind: "tweet",
                    id: tweet.id.clone(),
                });
            }
            if !tweet.hashtags.iter().any(|h| *h == hashtag) {
                return Err(CorpusError::HashtagMissing {
                    tweet_id: tweet.id.clone(),
                    hashtag: hashtag.clone(),
                });
            }
            if !users.contains_key(&tweet.user_id) {
                return Err(CorpusError::MissingUser {
                    user_id: tweet.user_id.clone(),
                });
            }
        }
        Ok(Self { hashtag, trend, tweets, users })
    }
}

/// Natural-language mix of a hashtag's tweets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LanguageProfile {
    EnglishOnly,
    UrduOnly,
    Bilingual,
    Neither,
}

/// Errors raised while ingesting or assembling corpora.
#[derive(Debug)]
pub enum CorpusError {
    Io { path: String, error: std::io::Error },
    MalformedRecord { line: usize, reason: String },
    InvalidTimestamp { line: usize, value: String },
    DuplicateId { kind: &'static str, id: String },
    MissingUser { user_id: String },
    HashtagMissing { tweet_id: String, hashtag: String },
    TrendMismatch { expected: String, found: String },
    MissingTrend { hashtag: String },
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io { path, error } => write!(f, "Io: {path}: {error}"),
            Self::MalformedRecord { line, reason } => {
                write!(f, "MalformedRecord: line {line}: {reason}")
            }
            Self::InvalidTimestamp { line, value } => {
                write!(f, "InvalidTimestamp: line {line}: {value:?}")
            }
            Self::DuplicateId { kind, id } => write!(f, "DuplicateId: {kind} id {id:?} repeats"),
            Self::MissingUser { user_id } => {
                write!(f, "MissingUser: tweet author {user_id:?} has no profile")
            }
            Self::HashtagMissing { tweet_id, hashtag } => {
                write!(f, "HashtagMissing: tweet {tweet_id:?} does not carry #{hashtag}")
            }
            Self::TrendMismatch { expected, found } => {
                write!(f, "TrendMismatch: corpus is #{expected} but trend record is #{found}")
            }
            Self::MissingTrend { hashtag } => {
                write!(f, "MissingTrend: no trend record for #{hashtag}")
            }
        }
    }
}

impl std::error::Error for CorpusError {}

fn open_lines(path: &Path) -> Result<impl Iterator<Item = std::io::Result<String>>, CorpusError> {
    let file = File::open(path).map_err(|error| CorpusError::Io {
        path: path.display().to_string(),
        error,
    })?;
    Ok(BufReader::new(file).lines())
}

fn io_err(path: &Path, error: std::io::Error) -> CorpusError {
    CorpusError::Io { path: path.display().to_string(), error }
}

/// Pulls `#word` tokens out of free text, lowercased, '#' stripped.
pub fn hashtags_from_text(text: &str) -> Vec<String> {
    HASHTAG_RE
        .captures_iter(text)
        .map(|c| c[1].to_lowercase())
        .collect()
}

fn parse_timestamp(value: &str, line: usize) -> Result<DateTime<Utc>, CorpusError> {
    let parsed = DateTime::parse_from_rfc3339(value).map_err(|_| CorpusError::InvalidTimestamp {
        line,
        value: value.to_string(),
    })?;
    // Second precision throughout; sub-second digits are dropped.
    Ok(parsed.with_timezone(&Utc).with_nanosecond(0).unwrap())
}

#[derive(Deserialize)]
struct RawTweet {
    id: String,
    user_id: String,
    text: String,
    created_at: String,
    lang: String,
    hashtags: Option<Vec<String>>,
    is_retweet: bool,
}

/// Loads tweets from a JSONL file, in file order. Unknown extra fields are
/// ignored; blank lines are skipped.
pub fn load_tweets(path: &Path) -> Result<Vec<Tweet>, CorpusError> {
    let mut tweets = Vec::new();
    let mut ids = HashSet::new();
    for (idx, line) in open_lines(path)?.enumerate() {
        let line = line.map_err(|e| io_err(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let raw: RawTweet =
            serde_json::from_str(&line).map_err(|e| CorpusError::MalformedRecord {
                line: line_no,
                reason: e.to_string(),
            })?;
        if raw.id.is_empty() {
            return Err(CorpusError::MalformedRecord {
                line: line_no,
                reason: "empty tweet id".into(),
            });
        }
        if !ids.insert(raw.id.clone()) {
            return Err(CorpusError::MalformedRecord {
                line: line_no,
                reason: format!("duplicate tweet id {:?}", raw.id),
            });
        }
        let created_at = parse_timestamp(&raw.created_at, line_no)?;
        let hashtags = match raw.hashtags {
            Some(tags) => {
                let tags: Vec<String> = tags.iter().map(|t| t.to_lowercase()).collect();
                for tag in &tags {
                    if tag.contains('#') || tag.chars().any(char::is_whitespace) {
                        return Err(CorpusError::MalformedRecord {
                            line: line_no,
                            reason: format!("invalid hashtag {tag:?}"),
                        });
                    }
                }
                tags
            }
            None => hashtags_from_text(&raw.text),
        };
        tweets.push(Tweet {
            id: raw.id,
            user_id: raw.user_id,
            text: raw.text,
            created_at,
            lang: raw.lang,
            hashtags,
            is_retweet: raw.is_retweet,
        });
    }
    Ok(tweets)
}

/// Loads user profiles from a JSONL file. Duplicate ids are rejected.
pub fn load_users(path: &Path) -> Result<Vec<UserProfile>, CorpusError> {
    let mut users = Vec::new();
    let mut ids = HashSet::new();
    for (idx, line) in open_lines(path)?.enumerate() {
        let line = line.map_err(|e| io_err(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let user: UserProfile =
            serde_json::from_str(&line).map_err(|e| CorpusError::MalformedRecord {
                line: line_no,
                reason: e.to_string(),
            })?;
        if user.id.is_empty() {
            return Err(CorpusError::MalformedRecord {
                line: line_no,
                reason: "empty user id".into(),
            });
        }
        if !ids.insert(user.id.clone()) {
            return Err(CorpusError::MalformedRecord {
                line: line_no,
                reason: format!("duplicate user id {:?}", user.id),
            });
        }
        users.push(user);
    }
    Ok(users)
}

#[derive(Deserialize)]
struct RawTrend {
    hashtag: String,
    location: String,
    first_seen: String,
    last_seen: String,
    first_trend_location: String,
    n_other_countries: u64,
    trended_worldwide: bool,
}

/// Loads trend records from a JSONL file.
pub fn load_trends(path: &Path) -> Result<Vec<TrendRecord>, CorpusError> {
    let mut trends = Vec::new();
    for (idx, line) in open_lines(path)?.enumerate() {
        let line = line.map_err(|e| io_err(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let raw: RawTrend =
            serde_json::from_str(&line).map_err(|e| CorpusError::MalformedRecord {
                line: line_no,
                reason: e.to_string(),
            })?;
        if raw.hashtag.is_empty() {
            return Err(CorpusError::MalformedRecord {
                line: line_no,
                reason: "empty hashtag".into(),
            });
        }
        let first_seen = parse_timestamp(&raw.first_seen, line_no)?;
        let last_seen = parse_timestamp(&raw.last_seen, line_no)?;
        if first_seen > last_seen {
            return Err(CorpusError::MalformedRecord {
                line: line_no,
                reason: "first_seen is after last_seen".into(),
            });
        }
        trends.push(TrendRecord {
            hashtag: raw.hashtag.to_lowercase(),
            location: raw.location,
            first_seen,
            last_seen,
            first_trend_location: raw.first_trend_location,
            n_other_countries: raw.n_other_countries,
            trended_worldwide: raw.trended_worldwide,
        });
    }
    Ok(trends)
}

fn write_jsonl<T: Serialize>(records: &[T], path: &Path) -> Result<(), CorpusError> {
    let mut out = Vec::new();
    for record in records {
        serde_json::to_writer(&mut out, record).expect("record serializes");
        out.push(b'\n');
    }
    let mut file = File::create(path).map_err(|e| io_err(path, e))?;
    file.write_all(&out).map_err(|e| io_err(path, e))
}

/// Writes tweets back out as JSONL, one object per line.
pub fn write_tweets(tweets: &[Tweet], path: &Path) -> Result<(), CorpusError> {
    write_jsonl(tweets, path)
}

/// Writes user profiles as JSONL.
pub fn write_users(users: &[UserProfile], path: &Path) -> Result<(), CorpusError> {
    write_jsonl(users, path)
}

/// Writes trend records as JSONL.
pub fn write_trends(trends: &[TrendRecord], path: &Path) -> Result<(), CorpusError> {
    write_jsonl(trends, path)
}

/// Keeps original tweets only; retweets never contribute to any feature.
pub fn original_only(tweets: &[Tweet]) -> Vec<Tweet> {
    tweets.iter().filter(|t| !t.is_retweet).cloned().collect()
}

/// Keeps tweets inside the trend-time window: from one day before the trend
/// was first seen to one day after it was last seen, boundaries inclusive.
pub fn window_filter(tweets: &[Tweet], trend: &TrendRecord) -> Vec<Tweet> {
    let lo = trend.first_seen - Duration::seconds(86_400);
    let hi = trend.last_seen + Duration::seconds(86_400);
    tweets
        .iter()
        .filter(|t| t.created_at >= lo && t.created_at <= hi)
        .cloned()
        .collect()
}

/// Classifies a tweet set by the languages present. Only "en" and "ur" tags
/// count; everything else is ignored for the profile.
pub fn language_profile(tweets: &[Tweet]) -> LanguageProfile {
    let mut has_en = false;
    let mut has_ur = false;
    for tweet in tweets {
        match tweet.lang.as_str() {
            "en" => has_en = true,
            "ur" => has_ur = true,
            _ => {}
        }
    }
    match (has_en, has_ur) {
        (true, true) => LanguageProfile::Bilingual,
        (true, false) => LanguageProfile::EnglishOnly,
        (false, true) => LanguageProfile::UrduOnly,
        (false, false) => LanguageProfile::Neither,
    }
}

/// All three corpus files plus optional ground-truth labels, loaded from one
/// directory (`tweets.jsonl`, `users.jsonl`, `trends.jsonl`).
#[derive(Debug, Clone)]
pub struct CorpusDir {
    pub tweets: Vec<Tweet>,
    pub users: Vec<UserProfile>,
    pub trends: Vec<TrendRecord>,
}

impl CorpusDir {
    pub fn load(dir: &Path) -> Result<Self, CorpusError> {
        Ok(Self {
            tweets: load_tweets(&dir.join("tweets.jsonl"))?,
            users: load_users(&dir.join("users.jsonl"))?,
            trends: load_trends(&dir.join("trends.jsonl"))?,
        })
    }

    pub fn user_map(&self) -> HashMap<String, UserProfile> {
        self.users.iter().map(|u| (u.id.clone(), u.clone())).collect()
    }

    pub fn trend(&self, hashtag: &str) -> Result<&TrendRecord, CorpusError> {
        let hashtag = hashtag.to_lowercase();
        self.trends
            .iter()
            .find(|t| t.hashtag == hashtag)
            .ok_or(CorpusError::MissingTrend { hashtag })
    }

    /// Assembles the validated per-hashtag corpus: tweets carrying the
    /// hashtag, their authors, and the matching trend record.
    pub fn hashtag_corpus(&self, hashtag: &str) -> Result<HashtagCorpus, CorpusError> {
        let hashtag = hashtag.to_lowercase();
        let trend = self.trend(&hashtag)?.clone();
        let tweets: Vec<Tweet> = self
            .tweets
            .iter()
            .filter(|t| t.hashtags.iter().any(|h| *h == hashtag))
            .cloned()
            .collect();
        let mut users = HashMap::new();
        for tweet in &tweets {
            if let Some(user) = self.users.iter().find(|u| u.id == tweet.user_id) {
                users.entry(user.id.clone()).or_insert_with(|| user.clone());
            }
        }
        HashtagCorpus::new(&hashtag, trend, tweets, users)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;

    fn ts(s: &str) -> DateTime<Utc> {
        DateTime::parse_from_rfc3339(s).unwrap().with_timezone(&Utc)
    }

    fn tweet_at(id: &str, at: &str, retweet: bool) -> Tweet {
        Tweet {
            id: id.into(),
            user_id: "u1".into(),
            text: "go team #pakvsa".into(),
            created_at: ts(at),
            lang: "en".into(),
            hashtags: vec!["pakvsa".into()],
            is_retweet: retweet,
        }
    }

    fn write_temp(lines: &str) -> tempfile::NamedTempFile {
        let file = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(file.path(), lines).unwrap();
        file
    }

    #[test]
    fn load_tweets_maps_fields() {
        let file = write_temp(
            r#"{"id":"1","user_id":"u1","text":"go team #pakvsa","created_at":"2021-01-24T13:00:00Z","lang":"en","hashtags":["pakvsa"],"is_retweet":false}"#,
        );
        let tweets = load_tweets(file.path()).unwrap();
        assert_eq!(tweets.len(), 1);
        let t = &tweets[0];
        assert_eq!(t.id, "1");
        assert_eq!(t.user_id, "u1");
        assert_eq!(t.text, "go team #pakvsa");
        assert_eq!(t.created_at, Utc.with_ymd_and_hms(2021, 1, 24, 13, 0, 0).unwrap());
        assert_eq!(t.lang, "en");
        assert_eq!(t.hashtags, vec!["pakvsa".to_string()]);
        assert!(!t.is_retweet);
    }

    #[test]
    fn load_tweets_missing_field_reports_line() {
        let file = write_temp(
            r#"{"id":"1","user_id":"u1","text":"hi","lang":"en","hashtags":[],"is_retweet":false}"#,
        );
        match load_tweets(file.path()) {
            Err(CorpusError::MalformedRecord { line: 1, .. }) => {}
            other => panic!("expected MalformedRecord(1), got {other:?}"),
        }
    }

    #[test]
    fn load_tweets_empty_file() {
        let file = write_temp("");
        assert!(load_tweets(file.path()).unwrap().is_empty());
    }

    #[test]
    fn load_tweets_bad_timestamp() {
        let file = write_temp(
            r#"{"id":"1","user_id":"u1","text":"hi","created_at":"yesterday","lang":"en","hashtags":[],"is_retweet":false}"#,
        );
        match load_tweets(file.path()) {
            Err(CorpusError::InvalidTimestamp { line: 1, value }) => assert_eq!(value, "yesterday"),
            other => panic!("expected InvalidTimestamp, got {other:?}"),
        }
    }

    #[test]
    fn load_tweets_extracts_hashtags_when_missing() {
        let file = write_temp(
            r#"{"id":"1","user_id":"u1","text":"We win #PakVsSA and #Victory!","created_at":"2021-01-24T13:00:00Z","lang":"en","is_retweet":false}"#,
        );
        let tweets = load_tweets(file.path()).unwrap();
        assert_eq!(tweets[0].hashtags, vec!["pakvssa".to_string(), "victory".to_string()]);
    }

    #[test]
    fn load_tweets_ignores_unknown_fields_and_normalizes_utc() {
        let file = write_temp(
            r#"{"id":"1","user_id":"u1","text":"hi","created_at":"2021-01-24T18:00:00.750+05:00","lang":"en","hashtags":[],"is_retweet":false,"favorite_count":3}"#,
        );
        let tweets = load_tweets(file.path()).unwrap();
        assert_eq!(tweets[0].created_at, Utc.with_ymd_and_hms(2021, 1, 24, 13, 0, 0).unwrap());
    }

    #[test]
    fn load_tweets_rejects_duplicate_ids() {
        let line = r#"{"id":"1","user_id":"u1","text":"hi","created_at":"2021-01-24T13:00:00Z","lang":"en","hashtags":[],"is_retweet":false}"#;
        let file = write_temp(&format!("{line}\n{line}\n"));
        match load_tweets(file.path()) {
            Err(CorpusError::MalformedRecord { line: 2, .. }) => {}
            other => panic!("expected duplicate id error, got {other:?}"),
        }
    }

    #[test]
    fn original_only_filters_and_preserves_order() {
        let tweets = vec![
            tweet_at("1", "2021-01-24T12:00:00Z", false),
            tweet_at("2", "2021-01-24T12:01:00Z", true),
            tweet_at("3", "2021-01-24T12:02:00Z", false),
        ];
        let kept = original_only(&tweets);
        assert_eq!(kept.iter().map(|t| t.id.as_str()).collect::<Vec<_>>(), ["1", "3"]);

        let all_rt = vec![tweet_at("1", "2021-01-24T12:00:00Z", true)];
        assert!(original_only(&all_rt).is_empty());

        let none_rt = vec![tweet_at("1", "2021-01-24T12:00:00Z", false)];
        assert_eq!(original_only(&none_rt), none_rt);
    }

    fn trend_at(first: &str, last: &str) -> TrendRecord {
        TrendRecord {
            hashtag: "pakvsa".into(),
            location: "Pakistan".into(),
            first_seen: ts(first),
            last_seen: ts(last),
            first_trend_location: "Pakistan".into(),
            n_other_countries: 0,
            trended_worldwide: false,
        }
    }

    #[test]
    fn window_filter_boundaries() {
        let trend = trend_at("2021-01-24T12:00:00Z", "2021-01-24T12:00:00Z");
        let inside = tweet_at("1", "2021-01-24T13:00:00Z", false);
        let early = tweet_at("2", "2021-01-22T12:00:00Z", false);
        let lower_edge = tweet_at("3", "2021-01-23T12:00:00Z", false);
        let upper_edge = tweet_at("4", "2021-01-25T12:00:00Z", false);
        let past_upper = tweet_at("5", "2021-01-25T12:00:01Z", false);
        let tweets = vec![inside, early, lower_edge, upper_edge, past_upper];
        let kept = window_filter(&tweets, &trend);
        assert_eq!(kept.iter().map(|t| t.id.as_str()).collect::<Vec<_>>(), ["1", "3", "4"]);
    }

    #[test]
    fn language_profile_cases() {
        let mk = |langs: &[&str]| -> Vec<Tweet> {
            langs
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let mut t = tweet_at(&i.to_string(), "2021-01-24T12:00:00Z", false);
                    t.lang = l.to_string();
                    t
                })
                .collect()
        };
        assert_eq!(language_profile(&mk(&["en", "en"])), LanguageProfile::EnglishOnly);
        assert_eq!(language_profile(&mk(&["en", "ur", "und"])), LanguageProfile::Bilingual);
        assert_eq!(language_profile(&mk(&["fr", "und"])), LanguageProfile::Neither);
        assert_eq!(language_profile(&mk(&["ur"])), LanguageProfile::UrduOnly);
        assert_eq!(language_profile(&[]), LanguageProfile::Neither);
    }

    #[test]
    fn hashtag_corpus_rejects_unresolved_author() {
        let trend = trend_at("2021-01-24T12:00:00Z", "2021-01-24T13:00:00Z");
        let tweets = vec![tweet_at("1", "2021-01-24T12:30:00Z", false)];
        let err = HashtagCorpus::new("pakvsa", trend, tweets, HashMap::new()).unwrap_err();
        assert!(matches!(err, CorpusError::MissingUser { .. }));
    }

    #[test]
    fn hashtag_corpus_rejects_foreign_tweet() {
        let trend = trend_at("2021-01-24T12:00:00Z", "2021-01-24T13:00:00Z");
        let mut tweet = tweet_at("1", "2021-01-24T12:30:00Z", false);
        tweet.hashtags = vec!["other".into()];
        let users = HashMap::from([(
            "u1".to_string(),
            UserProfile {
                id: "u1".into(),
                description: String::new(),
                description_url: String::new(),
                friends_count: 0,
                followers_count: 0,
                geo_enabled: false,
                listed_count: 0,
                statuses_count: 0,
                profile_url: String::new(),
                verified: false,
            },
        )]);
        let err = HashtagCorpus::new("pakvsa", trend, vec![tweet], users).unwrap_err();
        assert!(matches!(err, CorpusError::HashtagMissing { .. }));
    }
}
