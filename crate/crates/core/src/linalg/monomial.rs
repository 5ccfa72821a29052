use std::collections::HashMap;

use num_traits::One;

use super::matrix::{RatMatrix, SparseVec};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::graph::{Graph, LinearForm, State};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u16>;

/// All monomials of one degree in `nvars` variables, in graded-lex order
/// with `x_1 > x_2 > ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    nvars: usize,
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: usize) -> Self {
        let mut monomials = Vec::new();
        let mut current = vec![0u16; nvars];
        fill(&mut monomials, &mut current, 0, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &[u16]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `table[i][v]` is the index in `next` of `monomials[i] * x_{v+1}`.
    /// `next` must be the basis one degree up in the same variables.
    pub fn times_variable_table(&self, next: &MonomialBasis) -> Vec<Vec<usize>> {
        assert_eq!(next.nvars, self.nvars);
        assert_eq!(next.degree, self.degree + 1);
        self.monomials
            .iter()
            .map(|m| {
                (0..self.nvars)
                    .map(|v| {
                        let mut up = m.clone();
                        up[v] += 1;
                        next.index[&up]
                    })
                    .collect()
            })
            .collect()
    }
}

fn fill(out: &mut Vec<Monomial>, current: &mut Monomial, var: usize, remaining: usize) {
    if var == current.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    if var + 1 == current.len() {
        current[var] = remaining as u16;
        out.push(current.clone());
        current[var] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e as u16;
        fill(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

/// Degree-`d` part of `R / I_s`, realised as polynomials in one variable per
/// component of `[G:s]` (the component's smallest vertex).
#[derive(Debug, Clone)]
pub struct QuotientSlice<'g> {
    state: State<'g>,
    reps: Vec<usize>,
    basis: MonomialBasis,
}

impl<'g> QuotientSlice<'g> {
    pub fn new(state: State<'g>, d: usize) -> Self {
        let reps = state.representatives();
        let basis = MonomialBasis::new(reps.len(), d);
        QuotientSlice { state, reps, basis }
    }

    pub fn state(&self) -> &State<'g> {
        &self.state
    }

    pub fn degree(&self) -> usize {
        self.basis.degree
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of the canonical surjection onto the slice of a larger state.
    pub fn map_to(&self, target: &QuotientSlice<'_>) -> Result<RatMatrix> {
        let (s, t) = (self.state.members(), target.state.members());
        if s & !t != 0 || self.degree() != target.degree() {
            return Err(Error::NotSubstate { sub: s, sup: t });
        }
        let position: HashMap<usize, usize> = target
            .reps
            .iter()
            .enumerate()
            .map(|(i, &r)| (r, i))
            .collect();
        let slot: Vec<usize> = self
            .reps
            .iter()
            .map(|&r| position[&target.state.representative(r)])
            .collect();
        let cols = self
            .basis
            .monomials
            .iter()
            .map(|m| {
                let mut image = vec![0u16; target.reps.len()];
                for (i, &e) in m.iter().enumerate() {
                    image[slot[i]] += e;
                }
                vec![(target.basis.index[&image], Rational::one())]
            })
            .collect();
        Ok(RatMatrix::from_columns(target.dim(), cols).with_tags(
            format!("R/I_{:#b} degree {}", t, target.degree()),
            format!("R/I_{:#b} degree {}", s, self.degree()),
        ))
    }
}

/// The degree-`d` slice of `R / I_s`.
pub fn quotient_slice(graph: &Graph, members: u64, d: usize) -> QuotientSlice<'_> {
    QuotientSlice::new(graph.state(members), d)
}

/// Matrix of `f + I_s ↦ f + I_{s'}` in degree `d`, for `s ⊆ s'`.
pub fn reduce_map(graph: &Graph, s: u64, s_prime: u64, d: usize) -> Result<RatMatrix> {
    if s & !s_prime != 0 {
        return Err(Error::NotSubstate {
            sub: s,
            sup: s_prime,
        });
    }
    quotient_slice(graph, s, d).map_to(&quotient_slice(graph, s_prime, d))
}

/// Multiplication by a linear form, from degree `d - 1` to degree `d` of
/// the polynomial ring in `nvars` variables (variables are 1-indexed in the
/// form). For `d = 0` the source is empty.
pub fn mult_matrix(form: LinearForm, nvars: usize, d: usize) -> RatMatrix {
    let target = MonomialBasis::new(nvars, d);
    if d == 0 {
        return RatMatrix::zeros(target.len(), 0);
    }
    let source = MonomialBasis::new(nvars, d - 1);
    match form {
        LinearForm::Zero => RatMatrix::zeros(target.len(), source.len()),
        LinearForm::Diff { plus, minus } => {
            let table = source.times_variable_table(&target);
            let cols: Vec<SparseVec> = table
                .iter()
                .map(|row| {
                    vec![
                        (row[plus - 1], Rational::one()),
                        (row[minus - 1], -Rational::one()),
                    ]
                })
                .collect();
            RatMatrix::from_columns(target.len(), cols)
        }
    }
}
