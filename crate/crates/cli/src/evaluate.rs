//! The evaluate command: stratified split, train on one side, score the
//! other, and report metrics.

use anyhow::Result;
use serde::Serialize;

use manipify::hashcat::{classify_document, train_bundle, Category};
use manipify::locality::locality_dataset;
use manipify::ml::{
    evaluate, macro_f1, Dataset, LogRegConfig, LogRegModel, Metrics, TreeConfig, TreeModel,
};

use crate::config::RunConfig;
use crate::output::{emit, to_json};
use crate::pipeline::{
    bot_dataset, hashcat_docs, load_corpus, load_truth, locality_rows, manip_dataset,
    resolve_hashtag,
};
use crate::{EvaluateArgs, Task};

#[derive(Serialize)]
struct EvalReport {
    task: &'static str,
    n_train: usize,
    n_test: usize,
    accuracy: f64,
    macro_f1: f64,
    metrics: Metrics,
}

fn report(task: &'static str, n_train: usize, n_test: usize, metrics: Metrics) -> EvalReport {
    EvalReport {
        task,
        n_train,
        n_test,
        accuracy: metrics.accuracy,
        macro_f1: macro_f1(&metrics),
        metrics,
    }
}

fn eval_logreg(
    task: &'static str,
    dataset: &Dataset,
    run_config: &RunConfig,
) -> Result<EvalReport> {
    let (train, test) =
        dataset.train_test_split(run_config.train_fraction, run_config.seed)?;
    let model = LogRegModel::train(&train, &LogRegConfig::default())?;
    let predicted: Vec<usize> = test.rows.iter().map(|row| model.predict(row)).collect();
    let metrics = evaluate(&test.labels, &predicted, 2)?;
    Ok(report(task, train.len(), test.len(), metrics))
}

fn eval_tree(
    task: &'static str,
    dataset: &Dataset,
    run_config: &RunConfig,
) -> Result<EvalReport> {
    let (train, test) =
        dataset.train_test_split(run_config.train_fraction, run_config.seed)?;
    let model = TreeModel::train(&train, &TreeConfig::default())?;
    let predicted: Vec<usize> = test.rows.iter().map(|row| model.predict(row)).collect();
    let metrics = evaluate(&test.labels, &predicted, 2)?;
    Ok(report(task, train.len(), test.len(), metrics))
}

fn category_index(category: Category) -> usize {
    Category::ALL
        .iter()
        .position(|c| *c == category)
        .expect("category listed")
}

fn eval_hashcat(args: &EvaluateArgs, run_config: &RunConfig) -> Result<EvalReport> {
    let data = load_corpus(&args.corpus)?;
    let truth = load_truth(&args.corpus)?;
    let language = args.language.language();
    let docs = hashcat_docs(&data, &truth, language)?;

    // Rows hold the document index so the stratified splitter's
    // bookkeeping can be reused for non-numeric data.
    let rows: Vec<Vec<f64>> = (0..docs.len()).map(|i| vec![i as f64]).collect();
    let labels: Vec<usize> =
        docs.iter().map(|(_, category, _)| category_index(*category)).collect();
    let index_dataset = Dataset::new(vec!["doc_index".to_string()], rows, labels)?;
    let (train, test) =
        index_dataset.train_test_split(run_config.train_fraction, run_config.seed)?;

    let train_docs: Vec<(String, Category)> = train
        .rows
        .iter()
        .map(|row| {
            let (_, category, doc) = &docs[row[0] as usize];
            (doc.clone(), *category)
        })
        .collect();
    let bundle = train_bundle(&train_docs, language)?;

    let mut predicted = Vec::with_capacity(test.len());
    let mut actual = Vec::with_capacity(test.len());
    for row in &test.rows {
        let (_, category, doc) = &docs[row[0] as usize];
        predicted.push(category_index(classify_document(&bundle, doc).label));
        actual.push(category_index(*category));
    }
    let metrics = evaluate(&actual, &predicted, Category::ALL.len())?;
    Ok(report("hashcat", train.len(), test.len(), metrics))
}

pub fn run(run_config: &RunConfig, args: &EvaluateArgs) -> Result<()> {
    let eval_report = match args.task {
        Task::Manip => {
            let data = load_corpus(&args.corpus)?;
            let truth = load_truth(&args.corpus)?;
            let hashtag = resolve_hashtag(&data, args.hashtag.as_deref())?;
            let dataset = manip_dataset(&data, &truth, &hashtag)?;
            eval_logreg("manip", &dataset, run_config)?
        }
        Task::Bot => {
            let data = load_corpus(&args.corpus)?;
            let truth = load_truth(&args.corpus)?;
            let dataset = bot_dataset(&data, &truth)?;
            eval_logreg("bot", &dataset, run_config)?
        }
        Task::Locality => {
            let data = load_corpus(&args.corpus)?;
            let truth = load_truth(&args.corpus)?;
            let rows = locality_rows(&data, &truth, &run_config.target_country)?;
            let dataset = locality_dataset(&rows)?;
            eval_tree("locality", &dataset, run_config)?
        }
        Task::Hashcat => eval_hashcat(args, run_config)?,
    };
    emit(args.out.as_deref(), &to_json(&eval_report))
}
