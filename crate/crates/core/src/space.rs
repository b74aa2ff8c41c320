//! Labeled orthonormal basis spaces.
//!
//! Every state and operator in this crate is indexed by a [`Space`]: an
//! ordered list of unique text labels, one per basis vector. The ordinal of a
//! label is its position in the list. Composite spaces join factor labels
//! with `⊗` in row-major order.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Separator used in composite basis labels ("x1⊗w2").
pub const LABEL_JOIN: char = '⊗';

/// An ordered, labeled orthonormal basis.
#[derive(Debug, Clone, Eq)]
pub struct Space {
    name: String,
    labels: Vec<String>,
}

/// Two spaces are the same basis when their labels agree; the name is a
/// display handle only.
impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Space {
    /// Build a space from unique labels. The ordinal of each label is its index.
    pub fn new(name: impl Into<String>, labels: Vec<String>) -> Result<Arc<Self>> {
        let name = name.into();
        if labels.is_empty() {
            return Err(Error::InvalidFunction(format!(
                "space {name} must have at least one label"
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidFunction(format!(
                    "duplicate label {l:?} in space {name}"
                )));
            }
        }
        Ok(Arc::new(Space { name, labels }))
    }

    /// Space with labels `"0", "1", ..., "{dim-1}"`.
    pub fn indexed(name: impl Into<String>, dim: usize) -> Arc<Self> {
        let labels = (0..dim).map(|i| i.to_string()).collect();
        Space::new(name, labels).expect("indexed labels are unique")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, ordinal: usize) -> &str {
        &self.labels[ordinal]
    }

    /// Ordinal of a label, if present.
    pub fn ordinal(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Ordinal of a label, or an error naming the space.
    pub fn require(&self, label: &str) -> Result<usize> {
        self.ordinal(label).ok_or_else(|| Error::UnknownLabel {
            label: label.to_string(),
            space: self.name.clone(),
        })
    }

    /// Row-major tensor product: `a` labels major, `b` labels minor.
    ///
    /// The composite ordinal of `(i, j)` is `i * b.dim() + j`.
    pub fn tensor(a: &Arc<Space>, b: &Arc<Space>) -> Arc<Space> {
        let mut labels = Vec::with_capacity(a.dim() * b.dim());
        for la in a.labels() {
            for lb in b.labels() {
                labels.push(format!("{la}{LABEL_JOIN}{lb}"));
            }
        }
        Arc::new(Space {
            name: format!("{}{LABEL_JOIN}{}", a.name, b.name),
            labels,
        })
    }

    /// Prepend one fresh label (the `x0` / `y0` slot of the extended spaces).
    ///
    /// The preferred label is disambiguated with underscore prefixes if it
    /// collides with an existing label, so the result is always valid.
    pub fn extend_front(space: &Arc<Space>, preferred: &str, name: impl Into<String>) -> Arc<Space> {
        let extra = fresh_label(preferred, space.labels());
        let mut labels = Vec::with_capacity(space.dim() + 1);
        labels.push(extra);
        labels.extend(space.labels().iter().cloned());
        Arc::new(Space {
            name: name.into(),
            labels,
        })
    }

    /// Append `count` fresh labels derived from `stem` ("w1", "w2", ...).
    pub fn extend_back(space: &Arc<Space>, stem: &str, count: usize, name: impl Into<String>) -> Arc<Space> {
        let mut labels = space.labels().to_vec();
        for k in 1..=count {
            let lab = fresh_label(&format!("{stem}{k}"), &labels);
            labels.push(lab);
        }
        Arc::new(Space {
            name: name.into(),
            labels,
        })
    }
}

/// Return `preferred`, prefixing underscores until it avoids `taken`.
pub(crate) fn fresh_label(preferred: &str, taken: &[String]) -> String {
    let mut candidate = preferred.to_string();
    while taken.iter().any(|l| l == &candidate) {
        candidate.insert(0, '_');
    }
    candidate
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordinals_follow_label_order() {
        let s = Space::new("omega", vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.ordinal("b"), Some(1));
        assert_eq!(s.label(2), "c");
        assert!(s.ordinal("d").is_none());
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = Space::new("omega", vec!["a".into(), "a".into()]).unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn tensor_is_row_major() {
        let a = Space::new("a", vec!["x1".into(), "x2".into()]).unwrap();
        let b = Space::new("b", vec!["w1".into(), "w2".into(), "w3".into()]).unwrap();
        let p = Space::tensor(&a, &b);
        assert_eq!(p.dim(), 6);
        assert_eq!(p.label(0), "x1⊗w1");
        assert_eq!(p.label(1 * 3 + 2), "x2⊗w3");
    }

    #[test]
    fn extend_front_avoids_collisions() {
        let s = Space::new("omega", vec!["x0".into(), "x1".into()]).unwrap();
        let e = Space::extend_front(&s, "x0", "omega°");
        assert_eq!(e.label(0), "_x0");
        assert_eq!(e.label(1), "x0");
    }
}
