use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::label::Label;
use crate::error::{structural, Result};

/// A vector space with an ordered basis of distinct labels.
#[derive(Clone, Debug)]
pub struct BasedSpace {
    labels: Arc<Vec<Label>>,
}

impl PartialEq for BasedSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}
impl Eq for BasedSpace {}

impl BasedSpace {
    pub fn new(labels: Vec<Label>) -> Result<Self> {
        let mut seen = labels.clone();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(structural("basis labels are not distinct"));
        }
        Ok(Self::from_distinct(labels))
    }

    /// Caller guarantees the labels are pairwise distinct.
    pub fn from_distinct(labels: Vec<Label>) -> Self {
        BasedSpace { labels: Arc::new(labels) }
    }

    pub fn zero() -> Self {
        Self::from_distinct(Vec::new())
    }

    /// The ground field, spanned by `1`.
    pub fn unit() -> Self {
        Self::from_distinct(alloc::vec![Label::Unit])
    }

    /// `prefix1, …, prefixN`.
    pub fn atoms(prefix: &str, n: usize) -> Self {
        Self::from_distinct((1..=n).map(|k| Label::Atom(format!("{prefix}{k}"))).collect())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    pub fn index_map(&self) -> BTreeMap<Label, usize> {
        self.labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect()
    }

    pub fn dual(&self) -> Self {
        Self::from_distinct(self.labels.iter().map(Label::dual).collect())
    }

    /// Tensor product with the first factor most significant.
    pub fn tensor(factors: &[&BasedSpace]) -> Self {
        let mut words: Vec<Vec<Label>> = alloc::vec![Vec::new()];
        for f in factors {
            let mut next = Vec::with_capacity(words.len() * f.dim());
            for w in &words {
                for l in f.labels() {
                    let mut w = w.clone();
                    w.push(l.clone());
                    next.push(w);
                }
            }
            words = next;
        }
        Self::from_distinct(words.into_iter().map(Label::Tensor).collect())
    }

    pub fn direct_sum(parts: &[&BasedSpace]) -> Self {
        let mut out = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            out.extend(p.labels().iter().map(|l| Label::Summand(k, alloc::boxed::Box::new(l.clone()))));
        }
        Self::from_distinct(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_order_and_dims() {
        let a = BasedSpace::atoms("a", 2);
        let b = BasedSpace::atoms("b", 3);
        let t = BasedSpace::tensor(&[&a, &b]);
        assert_eq!(t.dim(), 6);
        assert_eq!(t.label(1), &Label::Tensor(alloc::vec![Label::atom("a1"), Label::atom("b2")]));
        assert_eq!(t.dual().dual(), t);
        assert!(BasedSpace::new(alloc::vec![Label::Unit, Label::Unit]).is_err());
        assert_eq!(BasedSpace::direct_sum(&[&a, &b]).dim(), 5);
    }
}
