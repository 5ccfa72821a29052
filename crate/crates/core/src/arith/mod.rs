//! Exact arithmetic: rationals, integer polynomials and truncated bigraded
//! power series.

mod bipoly;
mod rational;
mod series;
mod unipoly;

pub use bipoly::BiPoly;
pub use rational::{primitive_integer_vector, Rational};
pub use series::{geom_pow, json_int, tq_binom_pow, BigradedSeries};
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`, and
/// `C(-1, -1) = 1` so that `C(d + k - 1, k - 1)` is the dimension of the
/// degree-`d` part of a polynomial ring in `k >= 0` variables.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n == -1 && k == -1 {
        return BigInt::one();
    }
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Dimension of the degree-`d` slice of a polynomial ring in `nvars`
/// variables.
pub fn monomial_count(nvars: usize, d: usize) -> usize {
    use num_traits::ToPrimitive;
    binomial(d as i64 + nvars as i64 - 1, nvars as i64 - 1)
        .to_usize()
        .expect("monomial count fits in usize")
}
