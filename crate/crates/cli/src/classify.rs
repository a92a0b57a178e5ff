//! The classify command: apply a persisted model and report predictions.

use anyhow::Result;
use serde::Serialize;

use manipify::features::{bot_features_all, manip_features_all};
use manipify::hashcat::{
    classify_bilingual_with_min, classify_monolingual_with_min, load_bundle,
    HashtagPrediction,
};
use manipify::locality::{classify_local, locality_features};
use manipify::ml::{LogRegModel, TreeModel};

use crate::config::RunConfig;
use crate::output::{emit, to_json};
use crate::pipeline::{
    hashtag_tweets, load_corpus, resolve_hashtag, windowed_hashtag_tweets,
};
use crate::ClassifyCmd;

#[derive(Serialize)]
struct UserPrediction {
    user_id: String,
    probability: f64,
    predicted: bool,
}

fn user_predictions_csv(rows: &[UserPrediction]) -> String {
    let mut out = String::from("user_id,probability,predicted\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            row.user_id,
            row.probability,
            u8::from(row.predicted)
        ));
    }
    out
}

#[derive(Serialize)]
struct HashtagReport {
    hashtag: String,
    #[serde(flatten)]
    prediction: HashtagPrediction,
}

fn hashtag_report_csv(report: &HashtagReport) -> String {
    let mut out = String::from("hashtag,label,language_used");
    for category in report.prediction.probabilities.keys() {
        out.push_str(&format!(",{}", category.name().to_lowercase()));
    }
    out.push('\n');
    out.push_str(&format!(
        "{},{},{:?}",
        report.hashtag, report.prediction.label, report.prediction.language_used
    ));
    for probability in report.prediction.probabilities.values() {
        out.push_str(&format!(",{probability}"));
    }
    out.push('\n');
    out
}

#[derive(Serialize)]
struct TrendPrediction {
    hashtag: String,
    local: bool,
}

fn trend_predictions_csv(rows: &[TrendPrediction]) -> String {
    let mut out = String::from("hashtag,local\n");
    for row in rows {
        out.push_str(&format!("{},{}\n", row.hashtag, row.local));
    }
    out
}

pub fn run(run_config: &RunConfig, cmd: &ClassifyCmd) -> Result<()> {
    match cmd {
        ClassifyCmd::Manip { corpus, model, hashtag, out, csv } => {
            let data = load_corpus(corpus)?;
            let model = LogRegModel::load(model)?;
            let hashtag = resolve_hashtag(&data, hashtag.as_deref())?;
            let trend = data.trend(&hashtag)?;
            let tweets = windowed_hashtag_tweets(&data, trend);
            let rows: Vec<UserPrediction> = manip_features_all(&tweets, trend)
                .iter()
                .map(|row| {
                    let probability = model.predict_proba(&row.to_row());
                    UserPrediction {
                        user_id: row.user_id.clone(),
                        probability,
                        predicted: probability >= 0.5,
                    }
                })
                .collect();
            let rendered =
                if *csv { user_predictions_csv(&rows) } else { to_json(&rows) };
            emit(out.as_deref(), &rendered)
        }
        ClassifyCmd::Bot { corpus, model, out, csv } => {
            let data = load_corpus(corpus)?;
            let model = LogRegModel::load(model)?;
            let rows: Vec<UserPrediction> = bot_features_all(&data.users)
                .iter()
                .map(|row| {
                    let probability = model.predict_proba(&row.to_row());
                    UserPrediction {
                        user_id: row.user_id.clone(),
                        probability,
                        predicted: probability >= 0.5,
                    }
                })
                .collect();
            let rendered =
                if *csv { user_predictions_csv(&rows) } else { to_json(&rows) };
            emit(out.as_deref(), &rendered)
        }
        ClassifyCmd::Hashcat { corpus, model, model_ur, hashtag, out, csv } => {
            let data = load_corpus(corpus)?;
            let hashtag = hashtag.to_lowercase();
            let tweets = hashtag_tweets(&data, &hashtag);
            let bundle = load_bundle(model)?;
            let prediction = match model_ur {
                Some(ur_dir) => {
                    let urdu = load_bundle(ur_dir)?;
                    classify_bilingual_with_min(
                        &bundle,
                        &urdu,
                        &tweets,
                        run_config.min_hashtag_tweets,
                    )?
                }
                None => classify_monolingual_with_min(
                    &bundle,
                    &tweets,
                    run_config.min_hashtag_tweets,
                )?,
            };
            let report = HashtagReport { hashtag, prediction };
            let rendered =
                if *csv { hashtag_report_csv(&report) } else { to_json(&report) };
            emit(out.as_deref(), &rendered)
        }
        ClassifyCmd::Locality { corpus, model, hashtag, out, csv } => {
            let data = load_corpus(corpus)?;
            let model = TreeModel::load(model)?;
            let trends: Vec<&manipify::TrendRecord> = match hashtag {
                Some(tag) => vec![data.trend(&tag.to_lowercase())?],
                None => {
                    let mut all: Vec<_> = data.trends.iter().collect();
                    all.sort_by(|a, b| a.hashtag.cmp(&b.hashtag));
                    all
                }
            };
            let mut rows = Vec::with_capacity(trends.len());
            for trend in trends {
                let features = locality_features(trend, &run_config.target_country);
                rows.push(TrendPrediction {
                    hashtag: trend.hashtag.clone(),
                    local: classify_local(&model, &features)?,
                });
            }
            let rendered =
                if *csv { trend_predictions_csv(&rows) } else { to_json(&rows) };
            emit(out.as_deref(), &rendered)
        }
    }
}
