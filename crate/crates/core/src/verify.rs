//! The full battery of checks behind `khroma verify`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::binomial;
use crate::chromatic::{
    build_cube_with, chromatic_euler_check_with, chromatic_homology, koszul_chromatic, SignRule,
    CUBE_MAX_EDGES,
};
use crate::dichromatic::{closed_form_check, dichromatic_euler_check, dichromatic_homology};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::quotient_slice;

/// Relabelings and reorderings tried by the invariance check.
pub const PERMUTATION_ROUNDS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_q: usize,
    pub seed: u64,
    pub signs: SignRule,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_q: 6,
            seed: 0,
            signs: SignRule::Standard,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// First failure, if any.
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn pass(name: &'static str) -> Self {
        CheckOutcome {
            name,
            passed: true,
            detail: None,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CheckOutcome {
            name,
            passed: false,
            detail: Some(detail),
        }
    }

    fn from_first_failure(name: &'static str, failure: Option<String>) -> Self {
        match failure {
            None => Self::pass(name),
            Some(detail) => Self::fail(name, detail),
        }
    }

    /// Turns verification errors into a failed outcome and passes budget
    /// and input errors through.
    fn from_result(name: &'static str, result: Result<Option<String>>) -> Result<Self> {
        match result {
            Ok(failure) => Ok(Self::from_first_failure(name, failure)),
            Err(
                err
                @ (Error::NonZeroSquare(_) | Error::NotChainMap(_) | Error::InternalMismatch(_)),
            ) => Ok(Self::fail(name, err.to_string())),
            Err(err) => Err(err),
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name
        )?;
        if let Some(detail) = &self.detail {
            write!(f, ": {}", detail)?;
        }
        Ok(())
    }
}

/// `dim (R/I_s)_d = C(d + k(s) - 1, k(s) - 1)` for every state and `d <= max_q`.
pub fn quotient_dimension_failure(graph: &Graph, max_q: usize) -> Result<Option<String>> {
    if graph.m() > CUBE_MAX_EDGES {
        return Err(Error::budget(
            "edges",
            graph.m() as u64,
            CUBE_MAX_EDGES as u64,
        ));
    }
    Ok((0u64..(1u64 << graph.m()))
        .into_par_iter()
        .find_map_first(|s| {
            let k = graph.state(s).k() as i64;
            (0..=max_q).find_map(|d| {
                let got = quotient_slice(graph, s, d).dim();
                let want = binomial(d as i64 + k - 1, k - 1);
                (want != got.into()).then(|| {
                    format!(
                        "state {:#b}, d={}: dimension {} expected {}",
                        s, d, got, want
                    )
                })
            })
        }))
}

pub fn closed_form_failure(graph: &Graph, max_q: usize) -> Result<Option<String>> {
    let reports = (0u64..(1u64 << graph.m()))
        .into_par_iter()
        .map(|s| closed_form_check(graph, s, max_q))
        .collect::<Result<Vec<_>>>()?;
    Ok(reports.iter().find_map(|r| {
        r.failures().next().map(|row| {
            format!(
                "state {:#b}, (a={}, d={}): H' {} expected {}, H {} expected {}",
                r.state, row.a, row.d, row.primed, row.primed_expected, row.full, row.full_expected
            )
        })
    }))
}

pub fn chromatic_euler_failure(
    graph: &Graph,
    max_q: usize,
    signs: SignRule,
) -> Result<Option<String>> {
    let report = chromatic_euler_check_with(graph, max_q, signs)?;
    let failure = report.failures().next().map(|r| {
        format!(
            "(i=*, a=0, d={}): chain {} homology {} expected {}",
            r.d, r.chain, r.homology, r.series
        )
    });
    Ok(failure)
}

pub fn dichromatic_euler_failure(graph: &Graph, max_q: usize) -> Result<Option<String>> {
    let report = dichromatic_euler_check(graph, max_q)?;
    let failure = report.failures().next().map(|r| {
        format!(
            "(j=*, a={}, d={}): chain {} homology {} expected {}",
            r.a, r.d, r.chain, r.homology, r.series
        )
    });
    Ok(failure)
}

pub fn cube_koszul_failure(graph: &Graph, max_q: usize, signs: SignRule) -> Result<Option<String>> {
    build_cube_with(graph, max_q, signs)?;
    let cube = chromatic_homology(graph, max_q)?;
    let koszul = koszul_chromatic(graph, max_q)?;
    let failure = cube
        .entries()
        .chain(koszul.entries())
        .map(|(cell, _)| cell)
        .find(|&(i, a, d)| cube.get(i, a, d) != koszul.get(i, a, d))
        .map(|(i, a, d)| {
            format!(
                "(i={}, a={}, d={}): cube {} koszul {}",
                i,
                a,
                d,
                cube.get(i, a, d),
                koszul.get(i, a, d)
            )
        });
    Ok(failure)
}

/// Seeded vertex permutations (1-based images) and edge orders.
pub fn relabelings(graph: &Graph, seed: u64) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices = (0..PERMUTATION_ROUNDS)
        .map(|_| {
            let mut perm: Vec<usize> = (1..=graph.n()).collect();
            perm.shuffle(&mut rng);
            perm
        })
        .collect();
    let edges = (0..PERMUTATION_ROUNDS)
        .map(|_| {
            let mut order: Vec<usize> = (0..graph.m()).collect();
            order.shuffle(&mut rng);
            order
        })
        .collect();
    (vertices, edges)
}

pub fn invariance_failure(graph: &Graph, max_q: usize, seed: u64) -> Result<Option<String>> {
    let chromatic = chromatic_homology(graph, max_q)?;
    let dichromatic = dichromatic_homology(graph, max_q)?;
    let (vertices, edges) = relabelings(graph, seed);
    let mut variants = Vec::new();
    for perm in &vertices {
        variants.push((
            format!("vertex relabeling {:?}", perm),
            graph.relabel_vertices(perm)?,
        ));
    }
    for order in &edges {
        variants.push((
            format!("edge order {:?}", order),
            graph.reorder_edges(order)?,
        ));
    }
    let outcomes = variants
        .par_iter()
        .map(|(label, g)| {
            let same = chromatic_homology(g, max_q)?.same_dimensions(&chromatic)
                && dichromatic_homology(g, max_q)? == dichromatic;
            Ok((!same).then(|| format!("tables differ under {}", label)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(outcomes.into_iter().flatten().next())
}

/// Runs every check in a fixed order. Budget and input errors abort the
/// run; everything else becomes a failed outcome.
pub fn run_all(graph: &Graph, options: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    let d = options.max_q;
    Ok(vec![
        CheckOutcome::from_result(
            "quotient ring dimensions",
            quotient_dimension_failure(graph, d),
        )?,
        CheckOutcome::from_result(
            "state cohomology closed form",
            closed_form_failure(graph, d),
        )?,
        CheckOutcome::from_result(
            "chromatic euler characteristic",
            chromatic_euler_failure(graph, d, options.signs),
        )?,
        CheckOutcome::from_result(
            "dichromatic euler characteristic",
            dichromatic_euler_failure(graph, d),
        )?,
        CheckOutcome::from_result(
            "cube and koszul agree",
            cube_koszul_failure(graph, d, options.signs),
        )?,
        CheckOutcome::from_result(
            "relabeling invariance",
            invariance_failure(graph, d, options.seed),
        )?,
    ])
}
