//! Koszul complexes on linear forms, sliced by internal `q`-degree.
//!
//! A factor is a two-term complex `R{-1,1} --f--> R`. In the tensor product
//! of `F` factors, position `p` is spanned by `e_T ⊗ μ` with `T` a `p`-subset
//! of the factors and `μ` a monomial of degree `d - p`; its bidegree is
//! `(-p, d)`, so the `t^{-1}`-exponent equals the position.

use std::collections::HashMap;

use num_traits::One;

use crate::arith::Rational;
use crate::graph::{Graph, LinearForm};
use crate::linalg::{MonomialBasis, RatMatrix, SparseVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    /// Edge in the state: carries its linear form.
    Contracted,
    /// Edge outside the state: zero map.
    Deleted,
    /// Vertex factor: zero map.
    Vertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KoszulFactor {
    pub kind: FactorKind,
    pub form: LinearForm,
}

impl KoszulFactor {
    pub fn contracted(form: LinearForm) -> Self {
        KoszulFactor {
            kind: FactorKind::Contracted,
            form,
        }
    }

    pub fn deleted() -> Self {
        KoszulFactor {
            kind: FactorKind::Deleted,
            form: LinearForm::Zero,
        }
    }

    pub fn vertex() -> Self {
        KoszulFactor {
            kind: FactorKind::Vertex,
            form: LinearForm::Zero,
        }
    }
}

/// Edge factors for state `s` in edge order, optionally followed by one
/// zero factor per vertex.
pub fn state_factors(graph: &Graph, members: u64, with_vertices: bool) -> Vec<KoszulFactor> {
    let mut factors: Vec<KoszulFactor> = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(i, j))| {
            if members >> e & 1 == 1 {
                KoszulFactor::contracted(LinearForm::between(i, j))
            } else {
                KoszulFactor::deleted()
            }
        })
        .collect();
    if with_vertices {
        factors.extend((0..graph.n()).map(|_| KoszulFactor::vertex()));
    }
    factors
}

/// All positions of one `q`-degree of a Koszul complex.
#[derive(Debug, Clone)]
pub struct KoszulComplexSlice {
    nvars: usize,
    degree: usize,
    factors: Vec<KoszulFactor>,
    /// `subsets[p]`: the `p`-subsets of factors as ascending bitmasks.
    subsets: Vec<Vec<u64>>,
    subset_index: Vec<HashMap<u64, usize>>,
    /// `monomials[p]`: monomials of degree `degree - p`.
    monomials: Vec<MonomialBasis>,
}

impl KoszulComplexSlice {
    pub fn new(nvars: usize, factors: Vec<KoszulFactor>, degree: usize) -> Self {
        assert!(factors.len() < 64, "too many Koszul factors");
        let top = factors.len().min(degree);
        let mut subsets = vec![Vec::new(); top + 1];
        for mask in 0u64..(1u64 << factors.len()) {
            let p = mask.count_ones() as usize;
            if p <= top {
                subsets[p].push(mask);
            }
        }
        let subset_index = subsets
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, &m)| (m, i)).collect())
            .collect();
        let monomials = (0..=top)
            .map(|p| MonomialBasis::new(nvars, degree - p))
            .collect();
        KoszulComplexSlice {
            nvars,
            degree,
            factors,
            subsets,
            subset_index,
            monomials,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn factors(&self) -> &[KoszulFactor] {
        &self.factors
    }

    /// Highest position with a nonzero term.
    pub fn top_position(&self) -> usize {
        self.subsets.len() - 1
    }

    pub fn dim(&self, p: usize) -> usize {
        if p > self.top_position() {
            0
        } else {
            self.subsets[p].len() * self.monomials[p].len()
        }
    }

    /// Index of `e_T ⊗ μ` at position `|T|`.
    pub fn index(&self, subset: u64, monomial: usize) -> usize {
        let p = subset.count_ones() as usize;
        self.subset_index[p][&subset] * self.monomials[p].len() + monomial
    }

    pub fn subsets(&self, p: usize) -> &[u64] {
        self.subsets.get(p).map_or(&[], |v| v.as_slice())
    }

    pub fn monomial_basis(&self, p: usize) -> &MonomialBasis {
        &self.monomials[p]
    }

    /// `∂_p` from position `p` to `p - 1`: removing factor `j` from `T`
    /// multiplies by its form with sign `(-1)^{#{i ∈ T : i < j}}`.
    pub fn differential(&self, p: usize) -> RatMatrix {
        let rows = if p == 0 { 0 } else { self.dim(p - 1) };
        let cols = self.dim(p);
        if p == 0 || cols == 0 {
            return RatMatrix::zeros(rows, cols);
        }
        let src = &self.monomials[p];
        let tgt = &self.monomials[p - 1];
        let table = src.times_variable_table(tgt);
        let mut columns: Vec<SparseVec> = Vec::with_capacity(cols);
        for &t in &self.subsets[p] {
            for row in &table {
                let mut col = Vec::new();
                for j in bits(t) {
                    if let LinearForm::Diff { plus, minus } = self.factors[j].form {
                        let before = (t & ((1u64 << j) - 1)).count_ones();
                        let sign = if before.is_multiple_of(2) {
                            Rational::one()
                        } else {
                            -Rational::one()
                        };
                        let target = self.subset_index[p - 1][&(t ^ (1u64 << j))] * tgt.len();
                        col.push((target + row[plus - 1], sign.clone()));
                        col.push((target + row[minus - 1], -sign));
                    }
                }
                columns.push(col);
            }
        }
        RatMatrix::from_columns(rows, columns)
    }

    /// Position-`p` component of `id ⊗ (left slot ↦ form · left slot,
    /// right slot ↦ 0)` on factor `factor`: `e_T ⊗ μ ↦ e_T ⊗ form·μ` when
    /// `factor ∈ T`, zero otherwise. `target` sits one `q`-degree higher.
    pub fn multiply_on_factor(
        &self,
        target: &KoszulComplexSlice,
        p: usize,
        factor: usize,
        form: LinearForm,
    ) -> RatMatrix {
        self.check_compatible(target, 1);
        let (rows, cols) = (target.dim(p), self.dim(p));
        let LinearForm::Diff { plus, minus } = form else {
            return RatMatrix::zeros(rows, cols);
        };
        if cols == 0 || rows == 0 {
            return RatMatrix::zeros(rows, cols);
        }
        let table = self.monomials[p].times_variable_table(&target.monomials[p]);
        let tgt_len = target.monomials[p].len();
        let mut columns = Vec::with_capacity(cols);
        for &t in &self.subsets[p] {
            let base = target.subset_index[p][&t] * tgt_len;
            for row in &table {
                if t >> factor & 1 == 1 {
                    columns.push(vec![
                        (base + row[plus - 1], Rational::one()),
                        (base + row[minus - 1], -Rational::one()),
                    ]);
                } else {
                    columns.push(Vec::new());
                }
            }
        }
        RatMatrix::from_columns(rows, columns)
    }

    /// Position-`p` component of `id ⊗ (left slot ↦ 0, right slot ↦ id)` on
    /// factor `factor`: `e_T ⊗ μ ↦ e_T ⊗ μ` when `factor ∉ T`, zero
    /// otherwise. `target` has the same `q`-degree.
    pub fn project_off_factor(
        &self,
        target: &KoszulComplexSlice,
        p: usize,
        factor: usize,
    ) -> RatMatrix {
        self.check_compatible(target, 0);
        let (rows, cols) = (target.dim(p), self.dim(p));
        if cols == 0 {
            return RatMatrix::zeros(rows, cols);
        }
        let len = self.monomials[p].len();
        let mut columns = Vec::with_capacity(cols);
        for &t in &self.subsets[p] {
            let base = target.subset_index[p][&t] * len;
            for m in 0..len {
                if t >> factor & 1 == 0 {
                    columns.push(vec![(base + m, Rational::one())]);
                } else {
                    columns.push(Vec::new());
                }
            }
        }
        RatMatrix::from_columns(rows, columns)
    }

    fn check_compatible(&self, target: &KoszulComplexSlice, degree_shift: usize) {
        assert_eq!(
            self.factors.len(),
            target.factors.len(),
            "factor counts differ"
        );
        assert_eq!(self.nvars, target.nvars, "variable counts differ");
        assert_eq!(
            self.degree + degree_shift,
            target.degree,
            "unexpected degree shift"
        );
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let j = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(j)
        }
    })
}
