//! Dichromatic homology: per-state Koszul cohomology `H(s)` assembled into a
//! cube with induced differentials, then cohomology again.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{geom_pow, tq_binom_pow, BigradedSeries};
use crate::chromatic::{states_by_size, SignRule};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::koszul::{state_factors, KoszulComplexSlice};
use crate::linalg::{induced_map, subquotient, RatMatrix, Subquotient};
use crate::poly::dichromatic_d_series;
use crate::table::TriplyGradedTable;

/// Largest `m + n` for the dichromatic complexes (`2^{m+n}` Koszul terms).
pub const DICHROMATIC_MAX_SIZE: usize = 14;

fn check_budget(graph: &Graph) -> Result<()> {
    let size = graph.m() + graph.n();
    if size > DICHROMATIC_MAX_SIZE {
        return Err(Error::budget(
            "edges+vertices",
            size as u64,
            DICHROMATIC_MAX_SIZE as u64,
        ));
    }
    Ok(())
}

/// Koszul slices of state `s` (edge factors, then vertex factors) for every
/// `q`-degree `0..=max_q`.
pub fn koszul_state(graph: &Graph, s: u64, max_q: usize) -> Result<Vec<KoszulComplexSlice>> {
    check_budget(graph)?;
    Ok(slices_for(graph, s, max_q, true))
}

fn slices_for(graph: &Graph, s: u64, max_q: usize, with_vertices: bool) -> Vec<KoszulComplexSlice> {
    let factors = state_factors(graph, s, with_vertices);
    (0..=max_q)
        .map(|d| KoszulComplexSlice::new(graph.n(), factors.clone(), d))
        .collect()
}

/// `cohomology[d][a]` is the subquotient at position `a` of the degree-`d`
/// slice.
fn slice_cohomology(slices: &[KoszulComplexSlice]) -> Result<Vec<Vec<Subquotient>>> {
    slices
        .iter()
        .map(|slice| {
            (0..=slice.top_position())
                .map(|p| subquotient(&slice.differential(p + 1), &slice.differential(p)))
                .collect()
        })
        .collect()
}

fn series_of(cohomology: &[Vec<Subquotient>], max_q: usize, max_a: usize) -> BigradedSeries {
    let mut series = BigradedSeries::with_bounds(max_q, max_a);
    for (d, row) in cohomology.iter().enumerate() {
        for (a, sq) in row.iter().enumerate() {
            series.set_coeff(a, d, BigInt::from(sq.dim()));
        }
    }
    series
}

/// Cohomology of the Koszul complex of one state.
#[derive(Debug, Clone)]
pub struct StateCohomology {
    pub state: u64,
    /// Components of the spanning subgraph `[G:s]`.
    pub k: usize,
    pub max_q: usize,
    /// `H(s)`, vertex factors included.
    pub full: BigradedSeries,
    /// `H'(s)`, edge factors only.
    pub primed: BigradedSeries,
    cohomology: Vec<Vec<Subquotient>>,
}

impl StateCohomology {
    pub fn subquotient(&self, a: usize, d: usize) -> Option<&Subquotient> {
        self.cohomology.get(d).and_then(|row| row.get(a))
    }
}

pub fn state_cohomology(graph: &Graph, s: u64, max_q: usize) -> Result<StateCohomology> {
    let slices = koszul_state(graph, s, max_q)?;
    let cohomology = slice_cohomology(&slices)?;
    let full = series_of(&cohomology, max_q, graph.m() + graph.n());
    let primed = series_of(
        &slice_cohomology(&slices_for(graph, s, max_q, false))?,
        max_q,
        graph.m(),
    );
    Ok(StateCohomology {
        state: s,
        k: graph.state(s).k(),
        max_q,
        full,
        primed,
        cohomology,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormRow {
    pub a: usize,
    pub d: usize,
    pub primed: BigInt,
    pub primed_expected: BigInt,
    pub full: BigInt,
    pub full_expected: BigInt,
}

impl ClosedFormRow {
    pub fn passed(&self) -> bool {
        self.primed == self.primed_expected && self.full == self.full_expected
    }
}

#[derive(Debug, Clone)]
pub struct ClosedFormReport {
    pub state: u64,
    pub rows: Vec<ClosedFormRow>,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClosedFormRow> {
        self.rows.iter().filter(|r| !r.passed())
    }
}

/// Compares `H'(s)` with `(1+t^{-1}q)^{k-n+m} (1-q)^{-k}` and `H(s)` with
/// `(1+t^{-1}q)^{m+k} (1-q)^{-k}`.
pub fn closed_form_check(graph: &Graph, s: u64, max_q: usize) -> Result<ClosedFormReport> {
    let sc = state_cohomology(graph, s, max_q)?;
    let (m, n, k) = (graph.m() as i64, graph.n() as i64, sc.k as i64);
    let geom = geom_pow(k, max_q)?;
    let primed_expected = tq_binom_pow(k - n + m, max_q)?.mul(&geom)?;
    let full_expected = tq_binom_pow(m, max_q)?
        .mul(&tq_binom_pow(k, max_q)?)?
        .mul(&geom)?;
    let rows = (0..=(m + n) as usize)
        .flat_map(|a| (0..=max_q).map(move |d| (a, d)))
        .map(|(a, d)| ClosedFormRow {
            a,
            d,
            primed: sc.primed.coeff(a, d),
            primed_expected: primed_expected.coeff(a, d),
            full: sc.full.coeff(a, d),
            full_expected: full_expected.coeff(a, d),
        })
        .collect();
    Ok(ClosedFormReport { state: s, rows })
}

/// Chain-level and homology-level dimensions of the dichromatic complex.
#[derive(Debug, Clone)]
pub struct DichromaticComplex {
    pub chain: TriplyGradedTable,
    pub homology: TriplyGradedTable,
}

pub fn dichromatic_homology(graph: &Graph, max_q: usize) -> Result<TriplyGradedTable> {
    Ok(build_d_of_g(graph, max_q)?.homology)
}

pub fn build_d_of_g(graph: &Graph, max_q: usize) -> Result<DichromaticComplex> {
    build_d_of_g_with(graph, max_q, SignRule::Standard)
}

/// `(state, edge, internal degree of the state, position)`.
type BlockKey = (u64, usize, usize, usize);

struct StatePieces {
    slices: Vec<KoszulComplexSlice>,
    cohomology: Vec<Vec<Subquotient>>,
}

impl StatePieces {
    fn dim(&self, a: usize, d: usize) -> usize {
        self.cohomology
            .get(d)
            .and_then(|row| row.get(a))
            .map_or(0, |sq| sq.dim())
    }
}

pub fn build_d_of_g_with(
    graph: &Graph,
    max_q: usize,
    signs: SignRule,
) -> Result<DichromaticComplex> {
    check_budget(graph)?;
    let m = graph.m();
    let max_a = m + graph.n();
    let groups: Vec<Vec<u64>> = states_by_size(m).into_iter().take(max_q + 1).collect();
    let top_size = groups.len() - 1;

    let states: Vec<u64> = groups.iter().flatten().copied().collect();
    let pieces: HashMap<u64, StatePieces> = states
        .par_iter()
        .map(|&s| {
            let slices = slices_for(graph, s, max_q - s.count_ones() as usize, true);
            let cohomology = slice_cohomology(&slices)?;
            Ok((s, StatePieces { slices, cohomology }))
        })
        .collect::<Result<_>>()?;

    let faces: Vec<(u64, usize)> = states
        .iter()
        .flat_map(|&s| {
            (0..m)
                .filter(move |&e| s >> e & 1 == 1)
                .map(move |e| (s, e))
        })
        .collect();
    let blocks: HashMap<BlockKey, RatMatrix> = faces
        .par_iter()
        .map(|&(s, e)| face_blocks(graph, &pieces, s, e, max_q))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let cells: Vec<(usize, usize)> = (0..=max_a)
        .flat_map(|a| (a..=max_q).map(move |d| (a, d)))
        .collect();
    let results = cells
        .par_iter()
        .map(|&(a, d)| {
            let sizes = d.min(top_size);
            let offsets: Vec<HashMap<u64, usize>> = (0..=sizes)
                .map(|k| {
                    let mut acc = 0;
                    groups[k]
                        .iter()
                        .map(|&s| {
                            let off = acc;
                            acc += pieces[&s].dim(a, d - k);
                            (s, off)
                        })
                        .collect()
                })
                .collect();
            let dims: Vec<usize> = (0..=sizes)
                .map(|k| groups[k].iter().map(|s| pieces[s].dim(a, d - k)).sum())
                .collect();
            // delta[k] maps size k to size k - 1; delta[0] is unused.
            let mut delta: Vec<RatMatrix> = vec![RatMatrix::zeros(0, dims[0])];
            for k in 1..=sizes {
                let mut mat = RatMatrix::zeros(dims[k - 1], dims[k]);
                for &s in &groups[k] {
                    for e in (0..m).filter(|&e| s >> e & 1 == 1) {
                        let t = s & !(1u64 << e);
                        if let Some(block) = blocks.get(&(s, e, d - k, a)) {
                            let block = block.scaled(&signs.sign(t, e));
                            mat.add_block(offsets[k - 1][&t], offsets[k][&s], &block);
                        }
                    }
                }
                delta.push(mat);
            }
            for k in 2..=sizes {
                if !delta[k - 1].mul(&delta[k])?.is_zero() {
                    return Err(Error::NonZeroSquare(format!(
                        "(j={}, a={}, d={})",
                        -(k as i64),
                        a,
                        d
                    )));
                }
            }
            let homology = (0..=sizes)
                .map(|k| {
                    let incoming = if k < sizes {
                        delta[k + 1].clone()
                    } else {
                        RatMatrix::zeros(dims[k], 0)
                    };
                    Ok(subquotient(&incoming, &delta[k])?.dim())
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((a, d, dims, homology))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut chain = TriplyGradedTable::new(max_q, m);
    let mut homology = TriplyGradedTable::new(max_q, m);
    for (a, d, dims, hom) in results {
        for (k, (c, h)) in dims.into_iter().zip(hom).enumerate() {
            chain.set(-(k as i64), a, d, c);
            homology.set(-(k as i64), a, d, h);
        }
    }
    Ok(DichromaticComplex { chain, homology })
}

/// Induced maps of `d(e)` from `H(s)` to `H(s \ e)` at every internal
/// degree and position, after checking the chain-map square.
fn face_blocks(
    graph: &Graph,
    pieces: &HashMap<u64, StatePieces>,
    s: u64,
    e: usize,
    max_q: usize,
) -> Result<Vec<(BlockKey, RatMatrix)>> {
    let t = s & !(1u64 << e);
    let (from, to) = (&pieces[&s], &pieces[&t]);
    let form = graph.edge_form(e)?;
    let mut out = Vec::new();
    for deg in 0..=(max_q - s.count_ones() as usize) {
        let (src, tgt) = (&from.slices[deg], &to.slices[deg + 1]);
        let maps: Vec<RatMatrix> = (0..=src.top_position())
            .map(|p| src.multiply_on_factor(tgt, p, e, form))
            .collect();
        for p in 1..maps.len() {
            let lhs = tgt.differential(p).mul(&maps[p])?;
            let rhs = maps[p - 1].mul(&src.differential(p))?;
            if lhs != rhs {
                return Err(Error::NotChainMap(format!(
                    "edge {} from state {:#b} at position {} in degree {}",
                    e, s, p, deg
                )));
            }
        }
        for (p, map) in maps.iter().enumerate() {
            let block = induced_map(&from.cohomology[deg][p], &to.cohomology[deg + 1][p], map)?;
            out.push(((s, e, deg, p), block));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichromaticEulerRow {
    pub a: usize,
    pub d: usize,
    pub chain: i64,
    pub homology: i64,
    pub series: BigInt,
}

impl DichromaticEulerRow {
    pub fn passed(&self) -> bool {
        BigInt::from(self.chain) == self.series && BigInt::from(self.homology) == self.series
    }
}

#[derive(Debug, Clone)]
pub struct DichromaticEulerReport {
    pub rows: Vec<DichromaticEulerRow>,
}

impl DichromaticEulerReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &DichromaticEulerRow> {
        self.rows.iter().filter(|r| !r.passed())
    }
}

/// Alternating sums over `j` against the coefficients of `D_G(t, q)`.
pub fn dichromatic_euler_check(graph: &Graph, max_q: usize) -> Result<DichromaticEulerReport> {
    let complex = build_d_of_g(graph, max_q)?;
    let series = dichromatic_d_series(graph, max_q)?;
    let rows = (0..=graph.m() + graph.n())
        .flat_map(|a| (0..=max_q).map(move |d| (a, d)))
        .map(|(a, d)| DichromaticEulerRow {
            a,
            d,
            chain: complex.chain.euler(a, d),
            homology: complex.homology.euler(a, d),
            series: series.coeff(a, d),
        })
        .collect();
    Ok(DichromaticEulerReport { rows })
}
