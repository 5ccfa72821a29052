use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::matrix::{Accumulator, SparseVec};
use crate::arith::Rational;

/// Incrementally built echelon basis of a subspace of ℚ^dim.
///
/// Each stored vector has leading entry 1 at its pivot and no entries at
/// pivots created before it. Optionally every stored vector carries a
/// "tag": its expression as a combination of labelled input vectors.
/// Pivots are chosen as the smallest surviving index, so results depend
/// only on the insertion sequence.
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    slot_of_pivot: Vec<Option<usize>>,
    vectors: Vec<SparseVec>,
    tags: Option<Vec<SparseVec>>,
    label_dim: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            slot_of_pivot: vec![None; dim],
            vectors: Vec::new(),
            tags: None,
            label_dim: 0,
        }
    }

    /// An echelon basis whose vectors remember how they were formed from
    /// inputs labelled `0..label_dim`.
    pub fn with_tracking(dim: usize, label_dim: usize) -> Self {
        let mut e = Self::new(dim);
        e.tags = Some(Vec::new());
        e.label_dim = label_dim;
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Splits `v` as `Σ c_slot · vectors[slot] + residual`, where the
    /// residual has no entry at any pivot.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, Vec<(usize, Rational)>) {
        let mut work: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        let mut residual = Vec::new();
        let mut coeffs = Vec::new();
        while let Some((i, x)) = work.pop_first() {
            if x.is_zero() {
                continue;
            }
            match self.slot_of_pivot[i] {
                Some(slot) => {
                    // Stored vectors start at their pivot, so only larger
                    // indices are touched from here on.
                    let neg = -&x;
                    for (j, y) in &self.vectors[slot][1..] {
                        let entry = work.entry(*j).or_default();
                        *entry = entry.add_product(&neg, y);
                    }
                    coeffs.push((slot, x));
                }
                None => residual.push((i, x)),
            }
        }
        (residual, coeffs)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Adds `v` if it is independent of the current span; returns its slot.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let (residual, coeffs) = self.reduce(v);
        if residual.is_empty() {
            return None;
        }
        let tag = self.tags.as_ref().map(|_| self.combine_tags(&coeffs, None));
        Some(self.push(residual, tag))
    }

    /// Adds `v`, labelled `label`, if it is independent of the span.
    /// Otherwise returns the relation `e_label - Σ c · tag` in label space,
    /// whose combination of labelled inputs vanishes.
    pub fn insert_tracked(&mut self, v: &SparseVec, label: usize) -> Result<usize, SparseVec> {
        assert!(
            self.tags.is_some(),
            "insert_tracked on an untracked echelon basis"
        );
        let (residual, coeffs) = self.reduce(v);
        let expr = self.combine_tags(&coeffs, Some(label));
        if residual.is_empty() {
            return Err(expr);
        }
        Ok(self.push(residual, Some(expr)))
    }

    /// Label-space coordinates `Σ c_slot · tag[slot]`.
    pub fn tag_combination(&self, coeffs: &[(usize, Rational)]) -> SparseVec {
        let tags = self
            .tags
            .as_ref()
            .expect("tag_combination on an untracked echelon basis");
        let mut acc = Accumulator::new(self.label_dim);
        for (slot, c) in coeffs {
            acc.axpy(c, &tags[*slot]);
        }
        acc.drain_sorted()
    }

    fn combine_tags(&self, coeffs: &[(usize, Rational)], label: Option<usize>) -> SparseVec {
        let tags = match &self.tags {
            Some(t) => t,
            None => return Vec::new(),
        };
        let mut acc = Accumulator::new(self.label_dim);
        if let Some(l) = label {
            acc.add(l, &Rational::one());
        }
        for (slot, c) in coeffs {
            acc.axpy(&-c, &tags[*slot]);
        }
        acc.drain_sorted()
    }

    fn push(&mut self, mut residual: SparseVec, tag: Option<SparseVec>) -> usize {
        let lead = residual[0].1.recip();
        for e in residual.iter_mut() {
            e.1 = &e.1 * &lead;
        }
        let slot = self.vectors.len();
        self.slot_of_pivot[residual[0].0] = Some(slot);
        self.vectors.push(residual);
        if let (Some(tags), Some(mut tag)) = (self.tags.as_mut(), tag) {
            for e in tag.iter_mut() {
                e.1 = &e.1 * &lead;
            }
            tags.push(tag);
        }
        slot
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries
            .iter()
            .map(|&(i, x)| (i, Rational::from(x)))
            .collect()
    }

    #[test]
    fn insert_detects_dependence() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&v(&[(0, 2), (1, 2)])).is_some());
        assert!(e.insert(&v(&[(1, 1), (2, 1)])).is_some());
        assert!(e.insert(&v(&[(0, 1), (1, 2), (2, 1)])).is_none());
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 1), (2, -1)])));
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn tracked_relations() {
        let mut e = Echelon::with_tracking(2, 3);
        assert!(e.insert_tracked(&v(&[(0, 1), (1, 1)]), 0).is_ok());
        assert!(e.insert_tracked(&v(&[(1, 1)]), 1).is_ok());
        // (1, 3) = 1 * first + 2 * second
        let rel = e.insert_tracked(&v(&[(0, 1), (1, 3)]), 2).unwrap_err();
        assert_eq!(rel, v(&[(0, -1), (1, -2), (2, 1)]));
    }

    #[test]
    fn coordinates_from_tags() {
        let mut e = Echelon::with_tracking(2, 2);
        e.insert_tracked(&v(&[(0, 2)]), 0).unwrap();
        e.insert_tracked(&v(&[(0, 1), (1, 1)]), 1).unwrap();
        let (res, coeffs) = e.reduce(&v(&[(0, 3), (1, 1)]));
        assert!(res.is_empty());
        // (3, 1) = 1 * (2, 0) + 1 * (1, 1)
        assert_eq!(e.tag_combination(&coeffs), v(&[(0, 1), (1, 1)]));
    }
}
