//! The features command: render feature tables as CSV.

use anyhow::Result;

use manipify::features::{bot_csv, bot_features_all, manip_csv, manip_features_all};

use crate::config::RunConfig;
use crate::output::emit;
use crate::pipeline::{load_corpus, resolve_hashtag, windowed_hashtag_tweets};
use crate::FeaturesCmd;

pub fn run(_run_config: &RunConfig, cmd: &FeaturesCmd) -> Result<()> {
    match cmd {
        FeaturesCmd::Manip { corpus, hashtag, out } => {
            let data = load_corpus(corpus)?;
            let hashtag = resolve_hashtag(&data, hashtag.as_deref())?;
            let trend = data.trend(&hashtag)?;
            let tweets = windowed_hashtag_tweets(&data, trend);
            let rows = manip_features_all(&tweets, trend);
            emit(out.as_deref(), &manip_csv(&rows))
        }
        FeaturesCmd::Bot { corpus, out } => {
            let data = load_corpus(corpus)?;
            let rows = bot_features_all(&data.users);
            emit(out.as_deref(), &bot_csv(&rows))
        }
    }
}
