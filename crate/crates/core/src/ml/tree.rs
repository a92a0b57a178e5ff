//! CART decision tree with Gini impurity and exhaustive threshold search.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Dataset, MlError, SCHEMA_VERSION};

/// Tree growth limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeConfig {
    pub max_depth: Option<usize>,
    pub min_leaf: usize,
}

impl Default for TreeConfig {
    fn default() -> Self {
        Self { max_depth: None, min_leaf: 1 }
    }
}

/// One stored tree node. Split nodes route a row left when
/// `row[feature] <= threshold`; children are indices into the node list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Node {
    Leaf { class: usize },
    Split { feature: usize, threshold: f64, left: usize, right: usize },
}

/// A trained decision tree. Node 0 is the root.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeModel {
    pub feature_names: Vec<String>,
    pub n_classes: usize,
    pub nodes: Vec<Node>,
}

struct Builder<'a> {
    rows: &'a [Vec<f64>],
    labels: &'a [usize],
    n_classes: usize,
    config: TreeConfig,
    nodes: Vec<Node>,
}

impl Builder<'_> {
    fn histogram(&self, indices: &[usize]) -> Vec<usize> {
        let mut counts = vec![0usize; self.n_classes];
        for &i in indices {
            counts[self.labels[i]] += 1;
        }
        counts
    }

    fn majority(counts: &[usize]) -> usize {
        let mut best = 0;
        for (class, &count) in counts.iter().enumerate() {
            if count > counts[best] {
                best = class;
            }
        }
        best
    }

    /// Scans every feature and every midpoint between consecutive distinct
    /// values, maximizing the sum of squared class proportions weighted by
    /// child size (equivalent to minimizing weighted Gini impurity). The
    /// first candidate wins ties, so the lowest feature index and then the
    /// lowest threshold is chosen.
    fn best_split(&self, indices: &[usize], counts: &[usize]) -> Option<(usize, f64)> {
        let n = indices.len();
        let n_features = self.rows[indices[0]].len();
        let mut best: Option<(f64, usize, f64)> = None;
        for feature in 0..n_features {
            let mut order = indices.to_vec();
            order.sort_by(|&a, &b| {
                self.rows[a][feature].partial_cmp(&self.rows[b][feature]).unwrap()
            });
            let mut left_counts = vec![0usize; self.n_classes];
            for i in 0..n - 1 {
                left_counts[self.labels[order[i]]] += 1;
                let here = self.rows[order[i]][feature];
                let next = self.rows[order[i + 1]][feature];
                if next <= here {
                    continue;
                }
                let n_left = i + 1;
                let n_right = n - n_left;
                if n_left < self.config.min_leaf || n_right < self.config.min_leaf {
                    continue;
                }
                let mut score = 0.0;
                for (class, &left) in left_counts.iter().enumerate() {
                    let right = counts[class] - left;
                    score += (left * left) as f64 / n_left as f64
                        + (right * right) as f64 / n_right as f64;
                }
                if best.map_or(true, |(s, _, _)| score > s) {
                    best = Some((score, feature, (here + next) / 2.0));
                }
            }
        }
        best.map(|(_, feature, threshold)| (feature, threshold))
    }

    fn build(&mut self, indices: &[usize], depth: usize) -> usize {
        let counts = self.histogram(indices);
        let majority = Self::majority(&counts);
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        let depth_capped = self.config.max_depth.is_some_and(|d| depth >= d);
        if pure || depth_capped {
            self.nodes.push(Node::Leaf { class: majority });
            return self.nodes.len() - 1;
        }
        let Some((feature, threshold)) = self.best_split(indices, &counts) else {
            self.nodes.push(Node::Leaf { class: majority });
            return self.nodes.len() - 1;
        };
        let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = indices
            .iter()
            .partition(|&&i| self.rows[i][feature] <= threshold);
        let node = self.nodes.len();
        self.nodes.push(Node::Leaf { class: majority });
        let left = self.build(&left_idx, depth + 1);
        let right = self.build(&right_idx, depth + 1);
        self.nodes[node] = Node::Split { feature, threshold, left, right };
        node
    }
}

impl TreeModel {
    /// Grows a tree on the dataset. Growth stops at pure nodes, at the
    /// depth limit, or when no split leaves both children with at least
    /// `min_leaf` rows. Splits with zero impurity decrease are taken, so a
    /// depth-unlimited tree fits any training set whose duplicate rows are
    /// consistently labelled.
    pub fn train(data: &Dataset, config: &TreeConfig) -> Result<Self, MlError> {
        if data.is_empty() {
            return Err(MlError::EmptyInput);
        }
        if config.min_leaf == 0 {
            return Err(MlError::InvalidParam { reason: "min_leaf must be at least 1".into() });
        }
        let n_classes = data.n_classes();
        let mut builder = Builder {
            rows: &data.rows,
            labels: &data.labels,
            n_classes,
            config: *config,
            nodes: Vec::new(),
        };
        let indices: Vec<usize> = (0..data.len()).collect();
        builder.build(&indices, 0);
        Ok(Self {
            feature_names: data.feature_names.clone(),
            n_classes,
            nodes: builder.nodes,
        })
    }

    /// Predicted class for a raw feature row.
    pub fn predict(&self, row: &[f64]) -> usize {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Leaf { class } => return *class,
                Node::Split { feature, threshold, left, right } => {
                    at = if row[*feature] <= *threshold { *left } else { *right };
                }
            }
        }
    }

    /// Longest root-to-leaf path, counted in split nodes.
    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], at: usize) -> usize {
            match &nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => {
                    1 + walk(nodes, *left).max(walk(nodes, *right))
                }
            }
        }
        walk(&self.nodes, 0)
    }

    pub fn to_json(&self) -> String {
        let file = TreeFile {
            kind: "tree".into(),
            schema_version: SCHEMA_VERSION,
            feature_names: self.feature_names.clone(),
            n_classes: self.n_classes,
            nodes: self.nodes.clone(),
        };
        serde_json::to_string(&file).expect("model serializes")
    }

    pub fn from_json(json: &str) -> Result<Self, MlError> {
        let value: serde_json::Value = serde_json::from_str(json)
            .map_err(|e| MlError::BadFormat { reason: e.to_string() })?;
        match value.get("kind").and_then(|k| k.as_str()) {
            Some("tree") => {}
            Some(other) => {
                return Err(MlError::BadFormat {
                    reason: format!("expected kind \"tree\", found {other:?}"),
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
        let file: TreeFile = serde_json::from_value(value)
            .map_err(|e| MlError::BadFormat { reason: e.to_string() })?;
        let model = Self {
            feature_names: file.feature_names,
            n_classes: file.n_classes,
            nodes: file.nodes,
        };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<(), MlError> {
        if self.nodes.is_empty() {
            return Err(MlError::BadFormat { reason: "tree has no nodes".into() });
        }
        let mut visited = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        while let Some(at) = stack.pop() {
            if at >= self.nodes.len() {
                return Err(MlError::BadFormat {
                    reason: format!("node index {at} out of range"),
                });
            }
            if visited[at] {
                return Err(MlError::BadFormat {
                    reason: format!("node {at} is reachable twice"),
                });
            }
            visited[at] = true;
            match &self.nodes[at] {
                Node::Leaf { class } => {
                    if *class >= self.n_classes {
                        return Err(MlError::BadFormat {
                            reason: format!("leaf class {class} exceeds n_classes"),
                        });
                    }
                }
                Node::Split { feature, left, right, .. } => {
                    if *feature >= self.feature_names.len() {
                        return Err(MlError::BadFormat {
                            reason: format!("split feature {feature} out of range"),
                        });
                    }
                    stack.push(*left);
                    stack.push(*right);
                }
            }
        }
        if visited.iter().any(|&v| !v) {
            return Err(MlError::BadFormat { reason: "unreachable nodes present".into() });
        }
        Ok(())
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
struct TreeFile {
    kind: String,
    schema_version: u32,
    feature_names: Vec<String>,
    n_classes: usize,
    nodes: Vec<Node>,
}
