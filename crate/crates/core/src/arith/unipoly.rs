use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Integer polynomial in the colour-count variable λ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    /// Coefficient of λ^i at index i; no trailing zeros.
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// λ^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// The unique interpolant of degree below `points.len()`, provided its
    /// coefficients are integers.
    pub fn from_points(points: &[(BigInt, BigInt)]) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::NotEnoughPoints { needed: 1, got: 0 });
        }
        for i in 0..n {
            for j in 0..i {
                if points[i].0 == points[j].0 {
                    return Err(Error::DuplicateAbscissa);
                }
            }
        }
        // Newton divided differences, then expand the Newton form.
        let xs: Vec<Rational> = points
            .iter()
            .map(|(x, _)| Rational::from(x.clone()))
            .collect();
        let mut table: Vec<Rational> = points
            .iter()
            .map(|(_, y)| Rational::from(y.clone()))
            .collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &table[i] - &table[i - 1];
                let den = &xs[i] - &xs[i - level];
                table[i] = &num / &den;
            }
        }
        let mut result: Vec<Rational> = Vec::new();
        for i in (0..n).rev() {
            // result = result * (λ - x_i) + table[i]
            let mut next = vec![Rational::zero(); result.len() + 1];
            for (k, c) in result.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= &(c * &xs[i]);
            }
            next[0] += &table[i];
            result = next;
        }
        let mut coeffs = Vec::with_capacity(result.len());
        for c in result {
            if !c.is_integer() {
                return Err(Error::NonIntegralInterpolant);
            }
            coeffs.push(c.numer());
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(UniPoly::from_i64(&[1]), |acc, _| &acc * self)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, coeff: &BigInt, mono: &str) -> fmt::Result {
    let abs = coeff.abs();
    match (first, coeff.is_negative()) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    if mono.is_empty() {
        write!(f, "{}", abs)
    } else if abs.is_one() {
        f.write_str(mono)
    } else {
        write!(f, "{}·{}", abs, mono)
    }
}

pub(super) fn power(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{}^{}", var, e),
    }
}

pub(super) fn format_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a BigInt, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        write_term(f, first, c, &mono)?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for UniPoly {
    /// Highest power first, e.g. `λ^3 - 3·λ^2 + 2·λ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c, power("λ", i)));
        format_terms(f, terms)
    }
}
