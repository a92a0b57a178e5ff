//! Local-versus-global classification of trending hashtags from trend
//! meta-features, using a decision tree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::TrendRecord;
use crate::ml::{Dataset, MlError, TreeModel};

/// Feature column order for locality rows.
pub const LOCALITY_FEATURE_NAMES: [&str; 3] =
    ["first_trend_is_target", "n_other_countries", "trended_worldwide"];

/// Class label encoding: 0 = global, 1 = local.
pub const GLOBAL: usize = 0;
pub const LOCAL: usize = 1;

/// Trend meta-features relevant to locality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityFeatures {
    pub first_trend_is_target: bool,
    pub n_other_countries: u64,
    pub trended_worldwide: bool,
}

impl LocalityFeatures {
    pub fn to_row(&self) -> [f64; 3] {
        [
            f64::from(u8::from(self.first_trend_is_target)),
            self.n_other_countries as f64,
            f64::from(u8::from(self.trended_worldwide)),
        ]
    }
}

/// Errors raised during locality classification.
#[derive(Debug)]
pub enum LocalityError {
    DimensionMismatch { expected: usize, found: usize },
}

impl fmt::Display for LocalityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DimensionMismatch { expected, found } => write!(
                f,
                "DimensionMismatch: model expects {expected} features, locality rows have {found}"
            ),
        }
    }
}

impl std::error::Error for LocalityError {}

/// Derives locality features from a trend record. The target-country
/// comparison is case-insensitive.
pub fn locality_features(trend: &TrendRecord, target_country: &str) -> LocalityFeatures {
    LocalityFeatures {
        first_trend_is_target: trend
            .first_trend_location
            .eq_ignore_ascii_case(target_country),
        n_other_countries: trend.n_other_countries,
        trended_worldwide: trend.trended_worldwide,
    }
}

/// Assembles a training dataset from labelled locality rows
/// (label true = local).
pub fn locality_dataset(rows: &[(LocalityFeatures, bool)]) -> Result<Dataset, MlError> {
    Dataset::new(
        LOCALITY_FEATURE_NAMES.iter().map(|s| s.to_string()).collect(),
        rows.iter().map(|(f, _)| f.to_row().to_vec()).collect(),
        rows.iter().map(|(_, local)| usize::from(*local)).collect(),
    )
}

/// Routes the encoded features through a trained tree; true means local.
pub fn classify_local(model: &TreeModel, features: &LocalityFeatures) -> Result<bool, LocalityError> {
    if model.feature_names.len() != LOCALITY_FEATURE_NAMES.len() {
        return Err(LocalityError::DimensionMismatch {
            expected: model.feature_names.len(),
            found: LOCALITY_FEATURE_NAMES.len(),
        });
    }
    Ok(model.predict(&features.to_row()) == LOCAL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ml::TreeConfig;
    use chrono::{TimeZone, Utc};

    fn features(first_is_target: bool, others: u64, worldwide: bool) -> LocalityFeatures {
        LocalityFeatures {
            first_trend_is_target: first_is_target,
            n_other_countries: others,
            trended_worldwide: worldwide,
        }
    }

    fn sample_rows() -> Vec<(LocalityFeatures, bool)> {
        vec![
            (features(true, 0, false), true),
            (features(true, 1, false), true),
            (features(true, 2, false), true),
            (features(false, 12, false), false),
            (features(false, 58, true), false),
            (features(false, 2, false), false),
        ]
    }

    #[test]
    fn features_derive_from_trend_record() {
        let trend = TrendRecord {
            hashtag: "samsungpakistan".into(),
            location: "Pakistan".into(),
            first_seen: Utc.with_ymd_and_hms(2021, 1, 24, 12, 0, 0).unwrap(),
            last_seen: Utc.with_ymd_and_hms(2021, 1, 24, 18, 0, 0).unwrap(),
            first_trend_location: "Pakistan".into(),
            n_other_countries: 0,
            trended_worldwide: false,
        };
        assert_eq!(locality_features(&trend, "Pakistan"), features(true, 0, false));
        assert_eq!(locality_features(&trend, "pakistan"), features(true, 0, false));
        assert_eq!(locality_features(&trend, "India"), features(false, 0, false));
    }

    #[test]
    fn tree_separates_the_sample_rows() {
        let rows = sample_rows();
        let data = locality_dataset(&rows).unwrap();
        let model = TreeModel::train(&data, &TreeConfig::default()).unwrap();
        for (f, local) in &rows {
            assert_eq!(classify_local(&model, f).unwrap(), *local, "{f:?}");
        }
        assert!(classify_local(&model, &features(true, 1, false)).unwrap());
        assert!(!classify_local(&model, &features(false, 12, false)).unwrap());
    }

    #[test]
    fn single_leaf_model_is_constant() {
        let rows = vec![(features(true, 0, false), true), (features(false, 9, true), true)];
        let data = locality_dataset(&rows).unwrap();
        let model = TreeModel::train(&data, &TreeConfig::default()).unwrap();
        assert_eq!(model.nodes.len(), 1);
        for f in [features(false, 50, true), features(true, 0, false)] {
            assert!(classify_local(&model, &f).unwrap());
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let data = Dataset::new(
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 0.0], vec![1.0, 1.0]],
            vec![0, 1],
        )
        .unwrap();
        let model = TreeModel::train(&data, &TreeConfig::default()).unwrap();
        let err = classify_local(&model, &features(true, 0, false)).unwrap_err();
        assert!(matches!(err, LocalityError::DimensionMismatch { .. }));
    }
}
