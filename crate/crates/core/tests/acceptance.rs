mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;

use khroma_core::arith::{geom_pow, tq_binom_pow, BigradedSeries};
use khroma_core::chromatic::{chromatic_homology, SignRule};
use khroma_core::dichromatic::dichromatic_homology;
use khroma_core::poly::{
    chromatic_classical, chromatic_series, chromatic_state_sum, count_colorings, dichromatic_poly,
    dichromatic_recursive, dichromatic_state_sum,
};
use khroma_core::table::{HomologyTable, TriplyGradedTable};
use khroma_core::verify::{
    chromatic_euler_failure, closed_form_failure, cube_koszul_failure, dichromatic_euler_failure,
    invariance_failure, quotient_dimension_failure,
};
use khroma_core::{Graph, Result};

use common::{corpus, graph};

type Check = fn(&[(&'static str, Graph)]) -> Result<Option<String>>;

fn small(graphs: &[(&'static str, Graph)]) -> Vec<(&'static str, Graph)> {
    graphs
        .iter()
        .filter(|(_, g)| g.m() + g.n() <= 10)
        .cloned()
        .collect()
}

fn first_failure(
    graphs: &[(&'static str, Graph)],
    check: impl Fn(&Graph) -> Result<Option<String>>,
) -> Result<Option<String>> {
    for (name, g) in graphs {
        if let Some(detail) = check(g)? {
            return Ok(Some(format!("{}: {}", name, detail)));
        }
    }
    Ok(None)
}

fn chromatic_euler(graphs: &[(&'static str, Graph)]) -> Result<Option<String>> {
    first_failure(graphs, |g| {
        chromatic_euler_failure(g, 6, SignRule::Standard)
    })
}

fn quotient_dimensions(graphs: &[(&'static str, Graph)]) -> Result<Option<String>> {
    first_failure(graphs, |g| quotient_dimension_failure(g, 6))
}

fn state_cohomology(graphs: &[(&'static str, Graph)]) -> Result<Option<String>> {
    first_failure(&small(graphs), |g| closed_form_failure(g, 5))
}

fn dichromatic_euler(graphs: &[(&'static str, Graph)]) -> Result<Option<String>> {
    first_failure(&small(graphs), |g| dichromatic_euler_failure(g, 5))
}

fn cube_koszul(graphs: &[(&'static str, Graph)]) -> Result<Option<String>> {
    first_failure(graphs, |g| cube_koszul_failure(g, 5, SignRule::Standard))
}

fn invariance(graphs: &[(&'static str, Graph)]) -> Result<Option<String>> {
    first_failure(graphs, |g| invariance_failure(g, 5, 0))
}

fn polynomial_oracles(graphs: &[(&'static str, Graph)]) -> Result<Option<String>> {
    first_failure(graphs, |g| {
        let chi = chromatic_classical(g);
        for lambda in 0..=4u64 {
            let value = chi.eval(&BigInt::from(lambda));
            let count = count_colorings(g, lambda)?;
            if value != count {
                return Ok(Some(format!(
                    "χ({}) = {} but {} colorings",
                    lambda, value, count
                )));
            }
        }
        let p = dichromatic_poly(g)?;
        for e in 0..g.m() {
            let (del, con) = (g.delete_edge(e)?, g.contract_edge(e)?);
            if chi != &chromatic_classical(&del) - &chromatic_classical(&con) {
                return Ok(Some(format!(
                    "deletion-contraction fails for χ at edge {}",
                    e
                )));
            }
            if p != &dichromatic_poly(&del)? - &dichromatic_poly(&con)?.shift_q(1) {
                return Ok(Some(format!(
                    "deletion-contraction fails for P at edge {}",
                    e
                )));
            }
        }
        if dichromatic_state_sum(g)? != dichromatic_recursive(g) {
            return Ok(Some("dichromatic state sum and recursion differ".into()));
        }
        if chromatic_state_sum(g, 6)? != chromatic_series(g, 6)? {
            return Ok(Some("chromatic state sum and recursion differ".into()));
        }
        Ok(None)
    })
}

fn convolve_q(table: &HomologyTable, factor: &BigradedSeries, i: usize, d: usize) -> BigInt {
    (0..=d)
        .map(|e| factor.coeff(0, e) * BigInt::from(table.get(i, 0, d - e)))
        .sum()
}

fn convolve_tq(
    table: &TriplyGradedTable,
    factor: &BigradedSeries,
    j: i64,
    a: usize,
    d: usize,
) -> BigInt {
    factor
        .terms()
        .filter(|&(b, e, _)| b <= a && e <= d)
        .map(|(b, e, c)| c * BigInt::from(table.get(j, a - b, d - e)))
        .sum()
}

fn structural(_: &[(&'static str, Graph)]) -> Result<Option<String>> {
    let max_q = 6;
    if !chromatic_homology(&graph("v 1\ne 1 1"), max_q)?.is_zero() {
        return Ok(Some("loop graph has nonzero chromatic homology".into()));
    }
    let p2 = graph("v 2\ne 1 2");
    let union = p2.disjoint_union(&Graph::empty(1))?;

    let base = chromatic_homology(&p2, max_q)?;
    let bigger = chromatic_homology(&union, max_q)?;
    let geom = geom_pow(1, max_q)?;
    for i in 0..=1 {
        for d in 0..=max_q {
            if BigInt::from(bigger.get(i, 0, d)) != convolve_q(&base, &geom, i, d) {
                return Ok(Some(format!(
                    "chromatic vertex rule fails at (i={}, a=0, d={})",
                    i, d
                )));
            }
        }
    }

    let max_q = 5;
    let base = dichromatic_homology(&p2, max_q)?;
    let bigger = dichromatic_homology(&union, max_q)?;
    let factor = tq_binom_pow(1, max_q)?.mul(&geom_pow(1, max_q)?)?;
    for j in -1..=0 {
        for a in 0..=union.m() + union.n() {
            for d in 0..=max_q {
                let want = convolve_tq(&base, &factor, j, a, d);
                if BigInt::from(bigger.get(j, a, d)) != want {
                    return Ok(Some(format!(
                        "dichromatic vertex rule fails at (j={}, a={}, d={})",
                        j, a, d
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn main() -> ExitCode {
    let graphs = corpus();
    let criteria: [(&str, Check); 8] = [
        ("chromatic euler characteristic, d <= 6", chromatic_euler),
        ("quotient ring dimensions, d <= 6", quotient_dimensions),
        ("state cohomology closed form, d <= 5", state_cohomology),
        (
            "dichromatic euler characteristic, d <= 5",
            dichromatic_euler,
        ),
        (
            "cube and koszul chromatic homology agree, d <= 5",
            cube_koszul,
        ),
        ("relabeling and edge reordering invariance", invariance),
        ("polynomial oracles", polynomial_oracles),
        ("loop vanishing and isolated vertex rule", structural),
    ];
    let mut all_passed = true;
    for (number, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&graphs);
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(None) => println!("PASS {} {} ({:.2}s)", number + 1, name, elapsed),
            Ok(Some(detail)) => {
                all_passed = false;
                println!("FAIL {} {}: {}", number + 1, name, detail);
            }
            Err(err) => {
                all_passed = false;
                println!("FAIL {} {}: error: {}", number + 1, name, err);
            }
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
