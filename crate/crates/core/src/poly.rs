//! Classical polynomial invariants: chromatic and dichromatic polynomials by
//! deletion-contraction and by state sum, their series reparametrisations,
//! and a brute-force colouring count.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{geom_pow, tq_binom_pow, BiPoly, BigradedSeries, UniPoly};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// State sums enumerate `2^m` subsets; beyond this many edges we refuse.
pub const STATE_SUM_MAX_EDGES: usize = 26;

/// Brute-force colouring enumerates at most this many maps.
pub const COLORING_BUDGET: u64 = 50_000_000;

type Key = (usize, Vec<(usize, usize)>);

/// χ_G(λ) together with its expansion at λ = 1/(1-q).
#[derive(Debug, Clone, PartialEq)]
pub struct ChromaticResult {
    pub classical: UniPoly,
    pub series: BigradedSeries,
}

/// P_G(q, v) together with D_G(t, q).
#[derive(Debug, Clone, PartialEq)]
pub struct DichromaticResult {
    pub poly: BiPoly,
    pub dseries: BigradedSeries,
}

pub fn chromatic(graph: &Graph, max_q: usize) -> Result<ChromaticResult> {
    Ok(ChromaticResult {
        classical: chromatic_classical(graph),
        series: chromatic_series(graph, max_q)?,
    })
}

pub fn dichromatic(graph: &Graph, max_q: usize) -> Result<DichromaticResult> {
    let poly = dichromatic_poly(graph)?;
    let dseries = substitute_dichromatic(&poly, graph.m(), max_q)?;
    Ok(DichromaticResult { poly, dseries })
}

/// Chromatic polynomial by memoised deletion-contraction.
pub fn chromatic_classical(graph: &Graph) -> UniPoly {
    chromatic_rec(graph, &mut HashMap::new())
}

fn chromatic_rec(graph: &Graph, memo: &mut HashMap<Key, UniPoly>) -> UniPoly {
    if graph.has_loop() {
        return UniPoly::zero();
    }
    if graph.m() == 0 {
        return UniPoly::monomial(graph.n());
    }
    let key = graph.canonical_key();
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let e = graph.m() - 1;
    let deleted = graph.delete_edge(e).expect("edge index in range");
    let contracted = graph.contract_edge(e).expect("edge index in range");
    let p = &chromatic_rec(&deleted, memo) - &chromatic_rec(&contracted, memo);
    memo.insert(key, p.clone());
    p
}

/// Number of proper colourings with `colors` colours; a loop admits none.
pub fn count_colorings(graph: &Graph, colors: u64) -> Result<BigInt> {
    let n = graph.n();
    let total = (colors as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > COLORING_BUDGET as u128 {
        return Err(Error::budget(
            "colorings to enumerate",
            total.min(u64::MAX as u128) as u64,
            COLORING_BUDGET,
        ));
    }
    if graph.has_loop() || (colors == 0 && n > 0) {
        return Ok(BigInt::zero());
    }
    let mut assignment = vec![0u64; n];
    let mut count = 0u64;
    loop {
        if graph
            .edges()
            .iter()
            .all(|&(i, j)| assignment[i - 1] != assignment[j - 1])
        {
            count += 1;
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(BigInt::from(count));
            }
            assignment[pos] += 1;
            if assignment[pos] < colors {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

fn check_state_budget(graph: &Graph) -> Result<()> {
    if graph.m() > STATE_SUM_MAX_EDGES {
        return Err(Error::budget(
            "edges for state sum",
            graph.m() as u64,
            STATE_SUM_MAX_EDGES as u64,
        ));
    }
    Ok(())
}

/// `(sign-weighted) counts[size][k]` of states, i.e. the number of subsets
/// `s` with `|s| = size` and `k(s) = k`.
pub fn state_census(graph: &Graph) -> Result<Vec<Vec<u64>>> {
    check_state_budget(graph)?;
    let mut census = vec![vec![0u64; graph.n() + 1]; graph.m() + 1];
    for s in 0..=graph.full_state() {
        let st = graph.state(s);
        census[st.size()][st.k()] += 1;
    }
    Ok(census)
}

/// `Σ_s (-1)^{|s|} (1-q)^{-k(s)}`, truncated.
pub fn chromatic_state_sum(graph: &Graph, max_q: usize) -> Result<BigradedSeries> {
    let census = state_census(graph)?;
    let mut acc = BigradedSeries::zero(max_q);
    for (size, row) in census.iter().enumerate() {
        for (k, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let sign = if size % 2 == 0 { 1 } else { -1 };
            let term = geom_pow(k as i64, max_q)?.scale(&BigInt::from(sign * count as i64));
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}

/// χ_G(1/(1-q)) via the classical polynomial, cross-checked against the
/// state sum.
pub fn chromatic_series(graph: &Graph, max_q: usize) -> Result<BigradedSeries> {
    let classical = chromatic_classical(graph);
    let mut via_poly = BigradedSeries::zero(max_q);
    for (k, c) in classical.coeffs().iter().enumerate() {
        via_poly = via_poly.add(&geom_pow(k as i64, max_q)?.scale(c))?;
    }
    let via_states = chromatic_state_sum(graph, max_q)?;
    if via_poly != via_states {
        return Err(Error::InternalMismatch(format!(
            "chromatic series: deletion-contraction {:?} vs state sum {:?}",
            via_poly, via_states
        )));
    }
    Ok(via_poly)
}

/// `Σ_s (-1)^{|s|} q^{|s|} v^{k(s)}`.
pub fn dichromatic_state_sum(graph: &Graph) -> Result<BiPoly> {
    let census = state_census(graph)?;
    let mut p = BiPoly::zero();
    for (size, row) in census.iter().enumerate() {
        for (k, &count) in row.iter().enumerate() {
            let sign = if size % 2 == 0 { 1i64 } else { -1 };
            p.add_term(size as u32, k as u32, BigInt::from(sign * count as i64));
        }
    }
    Ok(p)
}

/// Dichromatic polynomial by memoised deletion-contraction.
pub fn dichromatic_recursive(graph: &Graph) -> BiPoly {
    dichromatic_rec(graph, &mut HashMap::new())
}

fn dichromatic_rec(graph: &Graph, memo: &mut HashMap<Key, BiPoly>) -> BiPoly {
    if graph.m() == 0 {
        return BiPoly::monomial(1, 0, graph.n() as u32);
    }
    let key = graph.canonical_key();
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let non_loop = (0..graph.m()).rev().find(|&e| !graph.is_loop(e));
    let p = match non_loop {
        Some(e) => {
            let deleted = dichromatic_rec(&graph.delete_edge(e).expect("edge in range"), memo);
            let contracted = dichromatic_rec(&graph.contract_edge(e).expect("edge in range"), memo);
            &deleted - &contracted.shift_q(1)
        }
        None => {
            // Only loops remain: G - e = G / e, so P_G = (1 - q) P_{G-e}.
            let rest = dichromatic_rec(
                &graph.delete_edge(graph.m() - 1).expect("edge in range"),
                memo,
            );
            &rest - &rest.shift_q(1)
        }
    };
    memo.insert(key, p.clone());
    p
}

/// P_G(q, v) by state sum, cross-checked against deletion-contraction.
pub fn dichromatic_poly(graph: &Graph) -> Result<BiPoly> {
    let by_states = dichromatic_state_sum(graph)?;
    let by_recursion = dichromatic_recursive(graph);
    if by_states != by_recursion {
        return Err(Error::InternalMismatch(format!(
            "dichromatic polynomial: state sum {} vs recursion {}",
            by_states, by_recursion
        )));
    }
    Ok(by_states)
}

/// `(1 + t^{-1}q)^m P(q, (1 + t^{-1}q)/(1 - q))`, truncated at `q^max_q`.
pub fn substitute_dichromatic(poly: &BiPoly, m: usize, max_q: usize) -> Result<BigradedSeries> {
    let v = tq_binom_pow(1, max_q)?.mul(&geom_pow(1, max_q)?)?;
    let mut v_powers: Vec<BigradedSeries> = vec![BigradedSeries::one(max_q)];
    let mut acc = BigradedSeries::zero(max_q);
    for ((qe, ve), c) in poly.terms() {
        while v_powers.len() <= ve as usize {
            let next = v_powers.last().expect("nonempty").mul(&v)?;
            v_powers.push(next);
        }
        let term = v_powers[ve as usize].shift_q(qe as usize).scale(c);
        acc = acc.add(&term)?;
    }
    tq_binom_pow(m as i64, max_q)?.mul(&acc)
}

/// D_G(t, q) from the dichromatic polynomial.
pub fn dichromatic_d_series(graph: &Graph, max_q: usize) -> Result<BigradedSeries> {
    substitute_dichromatic(&dichromatic_poly(graph)?, graph.m(), max_q)
}

/// `Σ_s (-1)^{|s|} q^{|s|} (1-q)^{-k(s)}`: the `t^0` row of D_G(t, q).
pub fn dichromatic_untwisted_state_sum(graph: &Graph, max_q: usize) -> Result<BigradedSeries> {
    let census = state_census(graph)?;
    let mut acc = BigradedSeries::zero(max_q);
    for (size, row) in census.iter().enumerate() {
        for (k, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let sign = if size % 2 == 0 { 1 } else { -1 };
            let term = geom_pow(k as i64, max_q)?
                .shift_q(size)
                .scale(&BigInt::from(sign * count as i64));
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}

/// Coefficients of a polynomial in λ recovered from colouring counts at
/// `λ = 0..=n`, for use as an independent oracle.
pub fn chromatic_by_interpolation(graph: &Graph) -> Result<UniPoly> {
    let points = (0..=graph.n() as u64)
        .map(|l| Ok((BigInt::from(l), count_colorings(graph, l)?)))
        .collect::<Result<Vec<_>>>()?;
    UniPoly::from_points(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn g(text: &str) -> Graph {
        parse_graph(text).unwrap()
    }

    fn p2() -> Graph {
        g("v 2\ne 1 2")
    }

    fn c3() -> Graph {
        g("v 3\ne 1 2\ne 2 3\ne 1 3")
    }

    fn loop1() -> Graph {
        g("v 1\ne 1 1")
    }

    fn double() -> Graph {
        g("v 2\ne 1 2\ne 1 2")
    }

    #[test]
    fn chromatic_polynomials() {
        assert_eq!(
            chromatic_classical(&Graph::empty(3)),
            UniPoly::from_i64(&[0, 0, 0, 1])
        );
        assert_eq!(chromatic_classical(&p2()), UniPoly::from_i64(&[0, -1, 1]));
        assert_eq!(
            chromatic_classical(&c3()),
            UniPoly::from_i64(&[0, 2, -3, 1])
        );
        assert_eq!(chromatic_classical(&loop1()), UniPoly::zero());
        assert_eq!(
            chromatic_classical(&Graph::empty(0)),
            UniPoly::from_i64(&[1])
        );
    }

    #[test]
    fn colouring_counts() {
        assert_eq!(count_colorings(&p2(), 3).unwrap(), BigInt::from(6));
        assert_eq!(count_colorings(&c3(), 2).unwrap(), BigInt::from(0));
        assert_eq!(
            count_colorings(&Graph::empty(2), 2).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            count_colorings(&Graph::empty(0), 0).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(count_colorings(&loop1(), 3).unwrap(), BigInt::from(0));
        assert!(matches!(
            count_colorings(&Graph::empty(40), 6),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn interpolation_oracle_agrees() {
        for gr in [
            p2(),
            c3(),
            double(),
            g("v 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\ne 1 3"),
        ] {
            assert_eq!(
                chromatic_by_interpolation(&gr).unwrap(),
                chromatic_classical(&gr)
            );
        }
    }

    #[test]
    fn chromatic_series_examples() {
        assert_eq!(
            chromatic_series(&p2(), 4).unwrap(),
            BigradedSeries::from_q_coeffs(4, &[0, 1, 2, 3, 4])
        );
        assert_eq!(
            chromatic_series(&Graph::empty(2), 2).unwrap(),
            BigradedSeries::from_q_coeffs(2, &[1, 2, 3])
        );
        assert_eq!(
            chromatic_series(&c3(), 5).unwrap(),
            BigradedSeries::from_q_coeffs(5, &[0, -1, -1, 0, 2, 5])
        );
        assert!(chromatic_series(&loop1(), 3).unwrap().is_zero());
    }

    #[test]
    fn dichromatic_examples() {
        assert_eq!(
            dichromatic_poly(&Graph::empty(2)).unwrap(),
            BiPoly::from_terms(&[(1, 0, 2)])
        );
        assert_eq!(
            dichromatic_poly(&p2()).unwrap(),
            BiPoly::from_terms(&[(1, 0, 2), (-1, 1, 1)])
        );
        assert_eq!(
            dichromatic_poly(&loop1()).unwrap(),
            BiPoly::from_terms(&[(1, 0, 1), (-1, 1, 1)])
        );
        assert_eq!(
            dichromatic_poly(&double()).unwrap(),
            BiPoly::from_terms(&[(1, 0, 2), (-2, 1, 1), (1, 2, 1)])
        );
    }

    #[test]
    fn d_series_examples() {
        let n1 = dichromatic_d_series(&Graph::empty(1), 2).unwrap();
        assert_eq!(
            n1,
            BigradedSeries::from_terms(2, &[(0, 0, 1), (0, 1, 1), (0, 2, 1), (1, 1, 1), (1, 2, 1)])
        );
        let lp = dichromatic_d_series(&loop1(), 2).unwrap();
        assert_eq!(
            lp,
            BigradedSeries::from_terms(2, &[(0, 0, 1), (1, 1, 2), (2, 2, 1)])
        );
    }

    #[test]
    fn d_series_of_p2_matches_closed_form() {
        let d = 5;
        let b = |k| tq_binom_pow(k, d).unwrap();
        let gm = |k| geom_pow(k, d).unwrap();
        // (1+t^-1 q) [ (1+t^-1 q)^2 (1-q)^-2 - q (1+t^-1 q)(1-q)^-1 ]
        let first = b(2).mul(&gm(2)).unwrap();
        let second = b(1).mul(&gm(1)).unwrap().shift_q(1);
        let expected = b(1).mul(&first.sub(&second).unwrap()).unwrap();
        assert_eq!(dichromatic_d_series(&p2(), d).unwrap(), expected);
    }

    #[test]
    fn untwisted_row_is_a0_row() {
        for gr in [p2(), c3(), loop1(), double()] {
            let ds = dichromatic_d_series(&gr, 5).unwrap();
            let row = dichromatic_untwisted_state_sum(&gr, 5).unwrap();
            assert_eq!(ds.q_row(0), row.q_row(0));
        }
    }

    #[test]
    fn state_sum_budget() {
        let many = Graph::new(2, vec![(1, 2); 27]).unwrap();
        assert!(matches!(
            dichromatic_poly(&many),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
