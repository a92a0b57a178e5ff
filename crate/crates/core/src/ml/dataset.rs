//! Labelled feature matrices and stratified train/test splitting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::MlError;

/// A labelled feature matrix. Every row has one value per feature name and
/// one class label.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub feature_names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
}

impl Dataset {
    pub fn new(
        feature_names: Vec<String>,
        rows: Vec<Vec<f64>>,
        labels: Vec<usize>,
    ) -> Result<Self, MlError> {
        if rows.len() != labels.len() {
            return Err(MlError::ShapeMismatch {
                reason: format!("{} rows but {} labels", rows.len(), labels.len()),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != feature_names.len() {
                return Err(MlError::ShapeMismatch {
                    reason: format!(
                        "row {} has {} values, expected {}",
                        i,
                        row.len(),
                        feature_names.len()
                    ),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(MlError::ShapeMismatch {
                    reason: format!("row {i} contains a non-finite value"),
                });
            }
        }
        Ok(Self { feature_names, rows, labels })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn n_classes(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m + 1)
    }

    fn subset(&self, indices: &[usize]) -> Self {
        Self {
            feature_names: self.feature_names.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    /// Splits into train and test sets, stratified by class. The train set
    /// holds exactly floor(fraction * n) rows: each class contributes
    /// floor(fraction * n_c), and the shortfall is topped up one row at a
    /// time from the classes with the largest fractional remainders
    /// (smaller class id wins remainder ties). Row order within each side
    /// follows the original dataset order.
    pub fn train_test_split(
        &self,
        fraction: f64,
        seed: u64,
    ) -> Result<(Dataset, Dataset), MlError> {
        if !(fraction > 0.0 && fraction < 1.0) {
            return Err(MlError::InvalidParam {
                reason: format!("train fraction {fraction} is not in (0, 1)"),
            });
        }
        if self.is_empty() {
            return Err(MlError::EmptyInput);
        }
        let n_classes = self.n_classes();
        let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
        for (i, &label) in self.labels.iter().enumerate() {
            by_class[label].push(i);
        }

        let target = (fraction * self.len() as f64).floor() as usize;
        let mut take: Vec<usize> = Vec::with_capacity(n_classes);
        let mut remainders: Vec<(usize, f64)> = Vec::with_capacity(n_classes);
        for (class, members) in by_class.iter().enumerate() {
            let exact = fraction * members.len() as f64;
            let base = exact.floor() as usize;
            take.push(base);
            remainders.push((class, exact - base as f64));
        }
        // Rounding the per-class products can land on either side of the
        // global floor, so settle the difference in whichever direction:
        // top up from the largest remainders, or claw back from the
        // smallest ones.
        let mut deficit = target as isize - take.iter().sum::<usize>() as isize;
        remainders.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        for &(class, _) in &remainders {
            if deficit <= 0 {
                break;
            }
            if take[class] < by_class[class].len() {
                take[class] += 1;
                deficit -= 1;
            }
        }
        for &(class, _) in remainders.iter().rev() {
            if deficit >= 0 {
                break;
            }
            if take[class] > 0 {
                take[class] -= 1;
                deficit += 1;
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut train_idx = Vec::new();
        let mut test_idx = Vec::new();
        for (class, members) in by_class.iter().enumerate() {
            let mut shuffled = members.clone();
            shuffled.shuffle(&mut rng);
            let (head, tail) = shuffled.split_at(take[class]);
            train_idx.extend_from_slice(head);
            test_idx.extend_from_slice(tail);
        }
        train_idx.sort_unstable();
        test_idx.sort_unstable();

        if train_idx.is_empty() || test_idx.is_empty() {
            return Err(MlError::TooFewSamples {
                train: train_idx.len(),
                test: test_idx.len(),
            });
        }
        Ok((self.subset(&train_idx), self.subset(&test_idx)))
    }
}
