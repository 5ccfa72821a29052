use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::unipoly::{format_terms, power};

/// Integer polynomial in the series variable `q` and the component
/// variable `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    /// `(q-exponent, v-exponent) -> coefficient`, never storing zeros.
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, q: u32, v: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(q, v, c.into());
        p
    }

    pub fn from_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut p = BiPoly::zero();
        for &(c, q, v) in terms {
            p.add_term(q, v, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, q: u32, v: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((q, v)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(q, v));
        }
    }

    pub fn coeff(&self, q: u32, v: u32) -> BigInt {
        self.terms.get(&(q, v)).cloned().unwrap_or_default()
    }

    /// Nonzero terms ordered by `(q-exponent, v-exponent)`.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by `q^k`.
    pub fn shift_q(&self, k: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(q, v), c)| ((q + k, v), c.clone()))
                .collect(),
        }
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(q, v), c) in &rhs.terms {
            out.add_term(q, v, c.clone());
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(q1, v1), a) in &self.terms {
            for (&(q2, v2), b) in &rhs.terms {
                out.add_term(q1 + q2, v1 + v2, a * b);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    /// Ascending powers of `q`, descending powers of `v` within each, e.g.
    /// `v^2 - 2·q·v + q^2·v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let terms = keys.into_iter().map(|k| {
            let mono = [power("q", k.0 as usize), power("v", k.1 as usize)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("·");
            (&self.terms[k], mono)
        });
        format_terms(f, terms)
    }
}
