//! The cube complex of quotient rings `R/I_s` and its homology, plus the
//! same complex rebuilt from the rightmost cohomology of per-state Koszul
//! complexes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::koszul::{state_factors, KoszulComplexSlice};
use crate::linalg::{induced_map, subquotient, QuotientSlice, RatMatrix, Subquotient};
use crate::poly::chromatic_series;
use crate::table::{Construction, HomologyTable};

/// Largest edge count for the quotient-ring cube (`2^m` states).
pub const CUBE_MAX_EDGES: usize = 20;

/// Largest edge count for the Koszul rebuild of the cube.
pub const KOSZUL_CHROMATIC_MAX_EDGES: usize = 10;

/// Sign convention on the faces of the cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignRule {
    /// `-` exactly when an odd number of edges of `s` precede `e`.
    #[default]
    Standard,
    /// Standard, except the face `{e_0} -> {e_0, e_1}` has its sign flipped.
    /// Only useful for exercising the `d^2 = 0` trap.
    FlipFirstSquare,
}

impl SignRule {
    pub fn sign(self, s: u64, e: usize) -> Rational {
        let before = (s & ((1u64 << e) - 1)).count_ones();
        let flip = self == SignRule::FlipFirstSquare && s == 1 && e == 1;
        if (before % 2 == 1) != flip {
            -Rational::one()
        } else {
            Rational::one()
        }
    }
}

/// States of a cube grouped by size, each group in increasing bitmask order.
pub fn states_by_size(m: usize) -> Vec<Vec<u64>> {
    let mut groups = vec![Vec::new(); m + 1];
    for s in 0u64..(1u64 << m) {
        groups[s.count_ones() as usize].push(s);
    }
    groups
}

/// One `q`-degree of the cube complex.
#[derive(Debug, Clone)]
pub struct CubeDegree {
    pub degree: usize,
    /// `dims[i]` is the dimension of the `i`-th chain group.
    pub dims: Vec<usize>,
    /// `differentials[i]` maps chain group `i` to `i + 1`.
    pub differentials: Vec<RatMatrix>,
}

/// The cube complex truncated at `q^max_q`.
#[derive(Debug, Clone)]
pub struct CubeComplex {
    pub graph: Graph,
    pub max_q: usize,
    pub degrees: Vec<CubeDegree>,
}

impl CubeComplex {
    pub fn chain_dim(&self, i: usize, d: usize) -> usize {
        self.degrees[d].dims.get(i).copied().unwrap_or(0)
    }
}

fn check_cube_budget(graph: &Graph, limit: usize) -> Result<()> {
    if graph.m() > limit {
        return Err(Error::budget("edges", graph.m() as u64, limit as u64));
    }
    Ok(())
}

pub fn build_cube(graph: &Graph, max_q: usize) -> Result<CubeComplex> {
    build_cube_with(graph, max_q, SignRule::Standard)
}

pub fn build_cube_with(graph: &Graph, max_q: usize, signs: SignRule) -> Result<CubeComplex> {
    check_cube_budget(graph, CUBE_MAX_EDGES)?;
    let groups = states_by_size(graph.m());
    let degrees = (0..=max_q)
        .into_par_iter()
        .map(|d| cube_degree(graph, &groups, d, signs))
        .collect::<Result<Vec<_>>>()?;
    Ok(CubeComplex {
        graph: graph.clone(),
        max_q,
        degrees,
    })
}

fn cube_degree(
    graph: &Graph,
    groups: &[Vec<u64>],
    d: usize,
    signs: SignRule,
) -> Result<CubeDegree> {
    let m = graph.m();
    let slices: HashMap<u64, QuotientSlice<'_>> = groups
        .iter()
        .flatten()
        .map(|&s| (s, QuotientSlice::new(graph.state(s), d)))
        .collect();
    let offsets: Vec<HashMap<u64, usize>> = groups
        .iter()
        .map(|group| {
            let mut acc = 0;
            group
                .iter()
                .map(|&s| {
                    let off = acc;
                    acc += slices[&s].dim();
                    (s, off)
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = groups
        .iter()
        .map(|group| group.iter().map(|s| slices[s].dim()).sum())
        .collect();
    let mut differentials = Vec::with_capacity(m);
    for i in 0..m {
        let mut diff = RatMatrix::zeros(dims[i + 1], dims[i]);
        for &s in &groups[i] {
            for e in (0..m).filter(|&e| s >> e & 1 == 0) {
                let t = s | 1u64 << e;
                let block = slices[&s].map_to(&slices[&t])?.scaled(&signs.sign(s, e));
                diff.add_block(offsets[i + 1][&t], offsets[i][&s], &block);
            }
        }
        differentials.push(diff);
    }
    check_square_zero(&differentials, |i| format!("(i={}, a=0, d={})", i, d))?;
    Ok(CubeDegree {
        degree: d,
        dims,
        differentials,
    })
}

fn check_square_zero(differentials: &[RatMatrix], cell: impl Fn(usize) -> String) -> Result<()> {
    for i in 1..differentials.len() {
        if !differentials[i].mul(&differentials[i - 1])?.is_zero() {
            return Err(Error::NonZeroSquare(cell(i - 1)));
        }
    }
    Ok(())
}

/// Dimensions of cohomology of a complex given by its chain dimensions and
/// differentials (`differentials[i]` from degree `i` to `i + 1`).
fn complex_cohomology(dims: &[usize], differentials: &[RatMatrix]) -> Result<Vec<usize>> {
    (0..dims.len())
        .map(|i| {
            let incoming = if i == 0 {
                RatMatrix::zeros(dims[0], 0)
            } else {
                differentials[i - 1].clone()
            };
            let outgoing = differentials
                .get(i)
                .cloned()
                .unwrap_or_else(|| RatMatrix::zeros(0, dims[i]));
            Ok(subquotient(&incoming, &outgoing)?.dim())
        })
        .collect()
}

/// Homology of the quotient-ring cube, per cohomological degree and
/// `q`-degree.
pub fn chromatic_homology(graph: &Graph, max_q: usize) -> Result<HomologyTable> {
    cube_homology(&build_cube(graph, max_q)?)
}

pub fn cube_homology(cube: &CubeComplex) -> Result<HomologyTable> {
    let mut table = HomologyTable::new(Construction::Cube, cube.max_q, cube.graph.m());
    let per_degree = cube
        .degrees
        .par_iter()
        .map(|deg| complex_cohomology(&deg.dims, &deg.differentials))
        .collect::<Result<Vec<_>>>()?;
    for (d, dims) in per_degree.into_iter().enumerate() {
        for (i, dim) in dims.into_iter().enumerate() {
            table.set(i, 0, d, dim);
        }
    }
    Ok(table)
}

/// One row of the chromatic Euler characteristic comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticEulerRow {
    pub d: usize,
    pub chain: i64,
    pub homology: i64,
    pub series: BigInt,
}

impl ChromaticEulerRow {
    pub fn passed(&self) -> bool {
        BigInt::from(self.chain) == self.series && BigInt::from(self.homology) == self.series
    }
}

#[derive(Debug, Clone)]
pub struct ChromaticEulerReport {
    pub rows: Vec<ChromaticEulerRow>,
}

impl ChromaticEulerReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &ChromaticEulerRow> {
        self.rows.iter().filter(|r| !r.passed())
    }
}

/// Alternating sums of chain and homology dimensions against the
/// coefficients of χ_G(1/(1-q)).
pub fn chromatic_euler_check(graph: &Graph, max_q: usize) -> Result<ChromaticEulerReport> {
    chromatic_euler_check_with(graph, max_q, SignRule::Standard)
}

pub fn chromatic_euler_check_with(
    graph: &Graph,
    max_q: usize,
    signs: SignRule,
) -> Result<ChromaticEulerReport> {
    let cube = build_cube_with(graph, max_q, signs)?;
    let table = cube_homology(&cube)?;
    let series = chromatic_series(graph, max_q)?;
    let rows = (0..=max_q)
        .map(|d| {
            let chain = (0..=graph.m())
                .map(|i| {
                    let dim = cube.chain_dim(i, d) as i64;
                    if i % 2 == 0 {
                        dim
                    } else {
                        -dim
                    }
                })
                .sum();
            ChromaticEulerRow {
                d,
                chain,
                homology: table.euler(d),
                series: series.coeff(0, d),
            }
        })
        .collect();
    Ok(ChromaticEulerReport { rows })
}

/// Chromatic homology from rightmost Koszul cohomology: every state gets
/// the tensor product of `R --0--> R` (edges outside `s`) and
/// `R --m_e--> R` (edges in `s`), and the cube maps are induced by the
/// square with vertical maps `0` (left) and `1` (right).
pub fn koszul_chromatic(graph: &Graph, max_q: usize) -> Result<HomologyTable> {
    check_cube_budget(graph, KOSZUL_CHROMATIC_MAX_EDGES)?;
    let groups = states_by_size(graph.m());
    let per_degree = (0..=max_q)
        .into_par_iter()
        .map(|d| koszul_chromatic_degree(graph, &groups, d))
        .collect::<Result<Vec<_>>>()?;
    let mut table = HomologyTable::new(Construction::Koszul, max_q, graph.m());
    for (d, dims) in per_degree.into_iter().enumerate() {
        for (i, dim) in dims.into_iter().enumerate() {
            table.set(i, 0, d, dim);
        }
    }
    Ok(table)
}

fn koszul_chromatic_degree(graph: &Graph, groups: &[Vec<u64>], d: usize) -> Result<Vec<usize>> {
    let m = graph.m();
    let mut slices: HashMap<u64, KoszulComplexSlice> = HashMap::new();
    let mut rightmost: HashMap<u64, Subquotient> = HashMap::new();
    for &s in groups.iter().flatten() {
        let slice = KoszulComplexSlice::new(graph.n(), state_factors(graph, s, false), d);
        let sq = subquotient(&slice.differential(1), &slice.differential(0))?;
        slices.insert(s, slice);
        rightmost.insert(s, sq);
    }
    let offsets: Vec<HashMap<u64, usize>> = groups
        .iter()
        .map(|group| {
            let mut acc = 0;
            group
                .iter()
                .map(|&s| {
                    let off = acc;
                    acc += rightmost[&s].dim();
                    (s, off)
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = groups
        .iter()
        .map(|group| group.iter().map(|s| rightmost[s].dim()).sum())
        .collect();
    let mut differentials = Vec::with_capacity(m);
    for i in 0..m {
        let mut diff = RatMatrix::zeros(dims[i + 1], dims[i]);
        for &s in &groups[i] {
            for e in (0..m).filter(|&e| s >> e & 1 == 0) {
                let t = s | 1u64 << e;
                let (from, to) = (&slices[&s], &slices[&t]);
                let right = from.project_off_factor(to, 0, e);
                let left = from.project_off_factor(to, 1, e);
                let lhs = to.differential(1).mul(&left)?;
                let rhs = right.mul(&from.differential(1))?;
                if lhs != rhs {
                    return Err(Error::NotChainMap(format!(
                        "square for edge {} from state {:#b} in degree {}",
                        e, s, d
                    )));
                }
                let block = induced_map(&rightmost[&s], &rightmost[&t], &right)?
                    .scaled(&SignRule::Standard.sign(s, e));
                diff.add_block(offsets[i + 1][&t], offsets[i][&s], &block);
            }
        }
        differentials.push(diff);
    }
    check_square_zero(&differentials, |i| format!("(i={}, a=0, d={})", i, d))?;
    complex_cohomology(&dims, &differentials)
}
