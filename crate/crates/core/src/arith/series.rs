use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::binomial;
use crate::error::{Error, Result};

/// A power series in `t^{-1}` and `q` with integer coefficients, truncated
/// in `q` above `max_q`. Coefficient `c[a][d]` multiplies `t^{-a} q^d`.
///
/// The `t^{-1}` direction is never truncated: `max_a` bounds the support
/// exactly. A purely `q`-graded series has `max_a == 0`.
#[derive(Clone)]
pub struct BigradedSeries {
    max_q: usize,
    max_a: usize,
    coeffs: Vec<Vec<BigInt>>,
}

impl BigradedSeries {
    pub fn zero(max_q: usize) -> Self {
        Self::with_bounds(max_q, 0)
    }

    pub fn one(max_q: usize) -> Self {
        let mut s = Self::zero(max_q);
        s.coeffs[0][0] = BigInt::one();
        s
    }

    pub fn with_bounds(max_q: usize, max_a: usize) -> Self {
        BigradedSeries {
            max_q,
            max_a,
            coeffs: vec![vec![BigInt::zero(); max_q + 1]; max_a + 1],
        }
    }

    /// A `q`-graded series from its leading coefficients; entries beyond
    /// `max_q` are dropped and missing ones are zero.
    pub fn from_q_coeffs(max_q: usize, values: &[i64]) -> Self {
        let mut s = Self::zero(max_q);
        for (d, &v) in values.iter().enumerate().take(max_q + 1) {
            s.coeffs[0][d] = BigInt::from(v);
        }
        s
    }

    /// Builds a series from `(a, d, c)` triples, accumulating repeats.
    pub fn from_terms(max_q: usize, terms: &[(usize, usize, i64)]) -> Self {
        let max_a = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut s = Self::with_bounds(max_q, max_a);
        for &(a, d, c) in terms {
            if d <= max_q {
                s.coeffs[a][d] += BigInt::from(c);
            }
        }
        s
    }

    pub fn max_q(&self) -> usize {
        self.max_q
    }

    pub fn max_a(&self) -> usize {
        self.max_a
    }

    /// Coefficient of `t^{-a} q^d`; zero outside the stored range.
    pub fn coeff(&self, a: usize, d: usize) -> BigInt {
        self.coeffs
            .get(a)
            .and_then(|row| row.get(d))
            .cloned()
            .unwrap_or_default()
    }

    pub fn set_coeff(&mut self, a: usize, d: usize, c: BigInt) {
        assert!(
            d <= self.max_q,
            "q-degree {} beyond truncation {}",
            d,
            self.max_q
        );
        if a > self.max_a {
            self.coeffs
                .resize(a + 1, vec![BigInt::zero(); self.max_q + 1]);
            self.max_a = a;
        }
        self.coeffs[a][d] = c;
    }

    /// The `t^0` row: coefficients of `q^0 .. q^max_q`.
    pub fn q_row(&self, a: usize) -> Vec<BigInt> {
        (0..=self.max_q).map(|d| self.coeff(a, d)).collect()
    }

    fn check_bound(&self, other: &Self) -> Result<()> {
        if self.max_q != other.max_q {
            return Err(Error::MismatchedTruncation {
                left: self.max_q,
                right: other.max_q,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_bound(other)?;
        let mut out = Self::with_bounds(self.max_q, self.max_a.max(other.max_a));
        for (a, row) in out.coeffs.iter_mut().enumerate() {
            for (d, c) in row.iter_mut().enumerate() {
                *c = self.coeff(a, d) + other.coeff(a, d);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut().flatten() {
            *c *= factor;
        }
        out
    }

    /// Cauchy product truncated at `q^max_q`; the `t^{-1}` bound of the
    /// product is the sum of the operands' bounds.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_bound(other)?;
        let mut out = Self::with_bounds(self.max_q, self.max_a + other.max_a);
        for (a1, row1) in self.coeffs.iter().enumerate() {
            for (d1, c1) in row1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (a2, row2) in other.coeffs.iter().enumerate() {
                    for (d2, c2) in row2.iter().enumerate().take(self.max_q + 1 - d1) {
                        if !c2.is_zero() {
                            out.coeffs[a1 + a2][d1 + d2] += c1 * c2;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplies by `q^k`, dropping terms pushed past the truncation.
    pub fn shift_q(&self, k: usize) -> Self {
        let mut out = Self::with_bounds(self.max_q, self.max_a);
        for (a, row) in self.coeffs.iter().enumerate() {
            for (d, c) in row.iter().enumerate() {
                if d + k <= self.max_q {
                    out.coeffs[a][d + k] = c.clone();
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = Self::one(self.max_q);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Nonzero coefficients ordered by `(a, d)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(a, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(d, c)| (a, d, c))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms().next().is_none()
    }

    /// Index of the highest nonzero `t^{-1}` row, or zero.
    pub fn support_a(&self) -> usize {
        self.terms().map(|(a, _, _)| a).max().unwrap_or(0)
    }
}

/// `(1 - q)^{-k}` truncated at `q^max_q`: coefficient `C(d + k - 1, k - 1)`.
pub fn geom_pow(k: i64, max_q: usize) -> Result<BigradedSeries> {
    if k < 0 {
        return Err(Error::NegativeExponent(k));
    }
    let mut s = BigradedSeries::zero(max_q);
    for d in 0..=max_q {
        s.coeffs[0][d] = binomial(d as i64 + k - 1, k - 1);
    }
    Ok(s)
}

/// `(1 + t^{-1} q)^k`: coefficient `C(k, a)` at `t^{-a} q^a`.
pub fn tq_binom_pow(k: i64, max_q: usize) -> Result<BigradedSeries> {
    if k < 0 {
        return Err(Error::NegativeExponent(k));
    }
    let mut s = BigradedSeries::with_bounds(max_q, k as usize);
    for a in 0..=(k as usize).min(max_q) {
        s.coeffs[a][a] = binomial(k, a as i64);
    }
    Ok(s)
}

impl PartialEq for BigradedSeries {
    /// Equal truncation bound and equal coefficients; the `t^{-1}` bound
    /// itself is not compared.
    fn eq(&self, other: &Self) -> bool {
        if self.max_q != other.max_q {
            return false;
        }
        let rows = self.max_a.max(other.max_a);
        (0..=rows).all(|a| (0..=self.max_q).all(|d| self.coeff(a, d) == other.coeff(a, d)))
    }
}

impl Eq for BigradedSeries {}

impl fmt::Debug for BigradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigradedSeries(D={}", self.max_q)?;
        for (a, d, c) in self.terms() {
            write!(f, ", [{}][{}]={}", a, d, c)?;
        }
        write!(f, ")")
    }
}

/// A JSON number when `c` fits in 64 bits, otherwise a decimal string.
pub fn json_int(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => v.into(),
        None => c.to_string().into(),
    }
}

/// Integer that serializes as a JSON number when it fits in 64 bits and as
/// a decimal string otherwise.
#[derive(Debug, Clone, PartialEq)]
struct JsonInt(BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(JsonInt(v.into())),
            Raw::Text(s) => s.parse().map(JsonInt).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesTerm {
    a: usize,
    d: usize,
    c: JsonInt,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    #[serde(rename = "D")]
    max_q: usize,
    terms: Vec<SeriesTerm>,
}

impl Serialize for BigradedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            max_q: self.max_q,
            terms: self
                .terms()
                .map(|(a, d, c)| SeriesTerm {
                    a,
                    d,
                    c: JsonInt(c.clone()),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BigradedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(deserializer)?;
        let mut s = BigradedSeries::zero(raw.max_q);
        for t in raw.terms {
            if t.d > raw.max_q {
                return Err(serde::de::Error::custom(format!(
                    "term at q^{} beyond truncation {}",
                    t.d, raw.max_q
                )));
            }
            s.set_coeff(t.a, t.d, t.c.0);
        }
        Ok(s)
    }
}
