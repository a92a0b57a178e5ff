//! The train command: fit a model from a corpus and its truth.json, and
//! persist it.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use manipify::hashcat::{save_bundle, train_bundle, CategoryModelBundle};
use manipify::locality::locality_dataset;
use manipify::ml::{LogRegConfig, LogRegModel, TreeConfig, TreeModel};

use crate::config::RunConfig;
use crate::output::write_atomic;
use crate::pipeline::{
    bot_dataset, hashcat_docs, load_corpus, load_truth, locality_rows, manip_dataset,
    resolve_hashtag,
};
use crate::TrainCmd;

/// Replaces `dir` with a freshly written bundle, staging it in a sibling
/// temp directory first so a crash never leaves a partial bundle behind.
fn save_bundle_atomic(bundle: &CategoryModelBundle, dir: &Path) -> Result<()> {
    let name = dir
        .file_name()
        .with_context(|| format!("{} has no directory name", dir.display()))?;
    let tmp = dir.with_file_name(format!("{}.tmp", name.to_string_lossy()));
    if tmp.exists() {
        fs::remove_dir_all(&tmp).with_context(|| format!("clearing {}", tmp.display()))?;
    }
    save_bundle(bundle, &tmp)?;
    if dir.exists() {
        fs::remove_dir_all(dir)
            .with_context(|| format!("replacing {}", dir.display()))?;
    }
    fs::rename(&tmp, dir).with_context(|| format!("renaming {} into place", tmp.display()))
}

pub fn run(run_config: &RunConfig, cmd: &TrainCmd) -> Result<()> {
    match cmd {
        TrainCmd::Manip { corpus, hashtag, out } => {
            let data = load_corpus(corpus)?;
            let truth = load_truth(corpus)?;
            let hashtag = resolve_hashtag(&data, hashtag.as_deref())?;
            let dataset = manip_dataset(&data, &truth, &hashtag)?;
            let model = LogRegModel::train(&dataset, &LogRegConfig::default())?;
            write_atomic(out, model.to_json().as_bytes())
        }
        TrainCmd::Bot { corpus, out } => {
            let data = load_corpus(corpus)?;
            let truth = load_truth(corpus)?;
            let dataset = bot_dataset(&data, &truth)?;
            let model = LogRegModel::train(&dataset, &LogRegConfig::default())?;
            write_atomic(out, model.to_json().as_bytes())
        }
        TrainCmd::Hashcat { corpus, language, out } => {
            let data = load_corpus(corpus)?;
            let truth = load_truth(corpus)?;
            let language = language.language();
            let docs = hashcat_docs(&data, &truth, language)?;
            let labelled: Vec<(String, manipify::Category)> =
                docs.into_iter().map(|(_, category, doc)| (doc, category)).collect();
            let bundle = train_bundle(&labelled, language)?;
            save_bundle_atomic(&bundle, out)
        }
        TrainCmd::Locality { corpus, out } => {
            let data = load_corpus(corpus)?;
            let truth = load_truth(corpus)?;
            let rows = locality_rows(&data, &truth, &run_config.target_country)?;
            let dataset = locality_dataset(&rows)?;
            let model = TreeModel::train(&dataset, &TreeConfig::default())?;
            write_atomic(out, model.to_json().as_bytes())
        }
    }
}
