//! Multi-class evaluation: confusion matrix, accuracy, and per-class
//! precision, recall, and F1.

use serde::{Deserialize, Serialize};

use super::MlError;

/// Evaluation results. `confusion[t][p]` counts rows whose true class is
/// `t` and predicted class is `p`. Per-class vectors are indexed by class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub confusion: Vec<Vec<usize>>,
    pub accuracy: f64,
    pub precision: Vec<f64>,
    pub recall: Vec<f64>,
    pub f1: Vec<f64>,
}

/// Scores predictions against ground truth. A class that is never
/// predicted has precision 0; a class absent from the truth has recall 0;
/// F1 is 0 whenever precision + recall is 0.
pub fn evaluate(truth: &[usize], predicted: &[usize], n_classes: usize) -> Result<Metrics, MlError> {
    if truth.is_empty() {
        return Err(MlError::EmptyInput);
    }
    if truth.len() != predicted.len() {
        return Err(MlError::ShapeMismatch {
            reason: format!("{} truth labels but {} predictions", truth.len(), predicted.len()),
        });
    }
    if n_classes == 0 {
        return Err(MlError::InvalidParam { reason: "n_classes must be positive".into() });
    }
    if let Some(&bad) = truth.iter().chain(predicted).find(|&&l| l >= n_classes) {
        return Err(MlError::InvalidParam {
            reason: format!("label {bad} outside 0..{n_classes}"),
        });
    }

    let mut confusion = vec![vec![0usize; n_classes]; n_classes];
    for (&t, &p) in truth.iter().zip(predicted) {
        confusion[t][p] += 1;
    }
    let total = truth.len() as f64;
    let correct: usize = (0..n_classes).map(|c| confusion[c][c]).sum();

    let mut precision = Vec::with_capacity(n_classes);
    let mut recall = Vec::with_capacity(n_classes);
    let mut f1 = Vec::with_capacity(n_classes);
    for class in 0..n_classes {
        let tp = confusion[class][class] as f64;
        let predicted_as: usize = (0..n_classes).map(|t| confusion[t][class]).sum();
        let actual: usize = confusion[class].iter().sum();
        let p = if predicted_as > 0 { tp / predicted_as as f64 } else { 0.0 };
        let r = if actual > 0 { tp / actual as f64 } else { 0.0 };
        precision.push(p);
        recall.push(r);
        f1.push(if p + r > 0.0 { 2.0 * p * r / (p + r) } else { 0.0 });
    }

    Ok(Metrics {
        confusion,
        accuracy: correct as f64 / total,
        precision,
        recall,
        f1,
    })
}

/// Unweighted mean of the per-class F1 scores.
pub fn macro_f1(metrics: &Metrics) -> f64 {
    metrics.f1.iter().sum::<f64>() / metrics.f1.len() as f64
}
