//! Binary logistic regression trained with full-batch gradient descent on
//! min-max scaled features.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Dataset, MlError, SCHEMA_VERSION};

/// Gradient-descent hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRegConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    pub l2: f64,
}

impl Default for LogRegConfig {
    fn default() -> Self {
        Self { learning_rate: 0.1, epochs: 1000, l2: 1e-4 }
    }
}

/// Per-feature min-max scaler fitted on training rows. A feature whose
/// min and max coincide scales to 0.0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub mins: Vec<f64>,
    pub maxs: Vec<f64>,
}

impl Scaler {
    pub fn fit(rows: &[Vec<f64>]) -> Result<Self, MlError> {
        let first = rows.first().ok_or(MlError::EmptyInput)?;
        let mut mins = first.clone();
        let mut maxs = first.clone();
        for row in &rows[1..] {
            for (j, &v) in row.iter().enumerate() {
                if v < mins[j] {
                    mins[j] = v;
                }
                if v > maxs[j] {
                    maxs[j] = v;
                }
            }
        }
        Ok(Self { mins, maxs })
    }

    pub fn transform(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.mins.iter().zip(&self.maxs))
            .map(|(&v, (&lo, &hi))| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 })
            .collect()
    }

    pub fn transform_all(&self, rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| self.transform(r)).collect()
    }
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Mean logistic loss over scaled rows plus (l2 / 2) * ||w||^2. The
/// intercept is not penalized. Per-sample loss is softplus(z) - y * z,
/// which stays finite for any z.
pub fn logistic_loss(
    rows: &[Vec<f64>],
    labels: &[usize],
    weights: &[f64],
    intercept: f64,
    l2: f64,
) -> f64 {
    let n = rows.len() as f64;
    let mut total = 0.0;
    for (row, &y) in rows.iter().zip(labels) {
        let z = dot(weights, row) + intercept;
        total += softplus(z) - y as f64 * z;
    }
    total / n + 0.5 * l2 * weights.iter().map(|w| w * w).sum::<f64>()
}

/// Analytic gradient of `logistic_loss` with respect to the weights and
/// the intercept.
pub fn logistic_gradient(
    rows: &[Vec<f64>],
    labels: &[usize],
    weights: &[f64],
    intercept: f64,
    l2: f64,
) -> (Vec<f64>, f64) {
    let n = rows.len() as f64;
    let mut grad_w = vec![0.0; weights.len()];
    let mut grad_b = 0.0;
    for (row, &y) in rows.iter().zip(labels) {
        let residual = sigmoid(dot(weights, row) + intercept) - y as f64;
        for (g, &x) in grad_w.iter_mut().zip(row) {
            *g += residual * x;
        }
        grad_b += residual;
    }
    for (g, &w) in grad_w.iter_mut().zip(weights) {
        *g = *g / n + l2 * w;
    }
    (grad_w, grad_b / n)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A trained logistic regression model together with the scaler fitted on
/// its training data.
#[derive(Debug, Clone, PartialEq)]
pub struct LogRegModel {
    pub feature_names: Vec<String>,
    pub weights: Vec<f64>,
    pub intercept: f64,
    pub scaler: Scaler,
    pub final_grad_norm: f64,
}

impl LogRegModel {
    /// Trains on a binary-labelled dataset. Weights start at zero and are
    /// updated by full-batch gradient descent for the configured number of
    /// epochs. Fails if either class is absent.
    pub fn train(data: &Dataset, config: &LogRegConfig) -> Result<Self, MlError> {
        if data.is_empty() {
            return Err(MlError::EmptyInput);
        }
        if !(config.learning_rate.is_finite() && config.learning_rate > 0.0) {
            return Err(MlError::InvalidParam {
                reason: format!("learning rate {} is not positive", config.learning_rate),
            });
        }
        if !(config.l2.is_finite() && config.l2 >= 0.0) {
            return Err(MlError::InvalidParam {
                reason: format!("l2 penalty {} is negative", config.l2),
            });
        }
        if let Some(&bad) = data.labels.iter().find(|&&l| l > 1) {
            return Err(MlError::InvalidParam {
                reason: format!("label {bad} is not binary"),
            });
        }
        let positives = data.labels.iter().filter(|&&l| l == 1).count();
        if positives == 0 || positives == data.len() {
            return Err(MlError::DegenerateData {
                reason: "training labels contain only one class".into(),
            });
        }

        let scaler = Scaler::fit(&data.rows)?;
        let rows = scaler.transform_all(&data.rows);
        let mut weights = vec![0.0; data.feature_names.len()];
        let mut intercept = 0.0;
        for _ in 0..config.epochs {
            let (grad_w, grad_b) =
                logistic_gradient(&rows, &data.labels, &weights, intercept, config.l2);
            for (w, g) in weights.iter_mut().zip(&grad_w) {
                *w -= config.learning_rate * g;
            }
            intercept -= config.learning_rate * grad_b;
        }
        let (grad_w, grad_b) =
            logistic_gradient(&rows, &data.labels, &weights, intercept, config.l2);
        let final_grad_norm =
            (grad_w.iter().map(|g| g * g).sum::<f64>() + grad_b * grad_b).sqrt();

        Ok(Self {
            feature_names: data.feature_names.clone(),
            weights,
            intercept,
            scaler,
            final_grad_norm,
        })
    }

    /// Probability of class 1 for a raw (unscaled) feature row.
    pub fn predict_proba(&self, row: &[f64]) -> f64 {
        let scaled = self.scaler.transform(row);
        sigmoid(dot(&self.weights, &scaled) + self.intercept)
    }

    /// Predicted class: 1 when the probability reaches 0.5.
    pub fn predict(&self, row: &[f64]) -> usize {
        usize::from(self.predict_proba(row) >= 0.5)
    }

    pub fn to_json(&self) -> String {
        let file = LogRegFile {
            kind: "logreg".into(),
            schema_version: SCHEMA_VERSION,
            feature_names: self.feature_names.clone(),
            weights: self.weights.clone(),
            intercept: self.intercept,
            scaler: self.scaler.clone(),
            final_grad_norm: self.final_grad_norm,
        };
        serde_json::to_string(&file).expect("model serializes")
    }

    pub fn from_json(json: &str) -> Result<Self, MlError> {
        let value: serde_json::Value = serde_json::from_str(json)
            .map_err(|e| MlError::BadFormat { reason: e.to_string() })?;
        match value.get("kind").and_then(|k| k.as_str()) {
            Some("logreg") => {}
            Some(other) => {
                return Err(MlError::BadFormat {
                    reason: format!("expected kind \"logreg\", found {other:?}"),
                })
            }
            None => return Err(MlError::BadFormat { reason: "missing kind".into() }),
        }
        let found = value
            .get("schema_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| MlError::BadFormat { reason: "missing schema_version".into() })?
            as u32;
        if found != SCHEMA_VERSION {
            return Err(MlError::SchemaVersion { found, supported: SCHEMA_VERSION });
        }
        let file: LogRegFile = serde_json::from_value(value)
            .map_err(|e| MlError::BadFormat { reason: e.to_string() })?;
        if file.weights.len() != file.feature_names.len()
            || file.scaler.mins.len() != file.feature_names.len()
            || file.scaler.maxs.len() != file.feature_names.len()
        {
            return Err(MlError::BadFormat {
                reason: "weights and scaler do not match feature_names".into(),
            });
        }
        Ok(Self {
            feature_names: file.feature_names,
            weights: file.weights,
            intercept: file.intercept,
            scaler: file.scaler,
            final_grad_norm: file.final_grad_norm,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), MlError> {
        fs::write(path, self.to_json())
            .map_err(|error| MlError::Io { path: path.display().to_string(), error })
    }

    pub fn load(path: &Path) -> Result<Self, MlError> {
        let json = fs::read_to_string(path)
            .map_err(|error| MlError::Io { path: path.display().to_string(), error })?;
        Self::from_json(&json)
    }
}

#[derive(Serialize, Deserialize)]
struct LogRegFile {
    kind: String,
    schema_version: u32,
    feature_names: Vec<String>,
    weights: Vec<f64>,
    intercept: f64,
    scaler: Scaler,
    final_grad_norm: f64,
}
