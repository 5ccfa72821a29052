use num_bigint::BigInt;
use proptest::prelude::*;

use khroma_core::arith::Rational;
use khroma_core::chromatic::{chromatic_euler_check, chromatic_homology, koszul_chromatic};
use khroma_core::dichromatic::{closed_form_check, dichromatic_euler_check};
use khroma_core::koszul::{state_factors, KoszulComplexSlice};
use khroma_core::linalg::{reduce_map, subquotient, RatMatrix};
use khroma_core::poly::{
    chromatic_classical, count_colorings, dichromatic_poly, dichromatic_recursive,
};
use khroma_core::Graph;

fn graphs(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((1..=n, 1..=n), 0..=max_m)
            .prop_map(move |edges| Graph::new(n, edges).unwrap())
    })
}

fn graph_and_state(max_n: usize, max_m: usize) -> impl Strategy<Value = (Graph, u64)> {
    graphs(max_n, max_m).prop_flat_map(|g| {
        let full = g.full_state();
        (Just(g), 0..=full)
    })
}

fn dense(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, cols), rows).prop_map(move |rows| {
        if rows.is_empty() {
            RatMatrix::zeros(0, cols)
        } else {
            RatMatrix::from_dense(&rows)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adding_an_edge_merges_at_most_once((g, s) in graph_and_state(5, 6), e in 0usize..6) {
        prop_assume!(e < g.m() && s >> e & 1 == 0);
        let before = g.state(s).k();
        let after = g.state(s | 1 << e).k();
        prop_assert!(after == before || after + 1 == before);
        prop_assert_eq!(after + 1 == before, !g.state(s).blocks().iter().any(|b| {
            let (i, j) = g.edge(e).unwrap();
            b.contains(&i) && b.contains(&j)
        }));
    }

    #[test]
    fn components_ignore_edge_order((g, s) in graph_and_state(5, 6), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..g.m()).collect();
        let rot = if order.is_empty() { 0 } else { (seed as usize) % order.len() };
        order.rotate_left(rot);
        let h = g.reorder_edges(&order).unwrap();
        let t = order.iter().enumerate().filter(|(_, &old)| s >> old & 1 == 1).fold(0u64, |acc, (new, _)| acc | 1 << new);
        prop_assert_eq!(g.state(s).blocks(), h.state(t).blocks());
    }

    #[test]
    fn reduce_maps_compose((g, s) in graph_and_state(4, 4), extra in any::<u64>(), more in any::<u64>(), d in 0usize..4) {
        let full = g.full_state();
        let mid = s | (extra & full);
        let top = mid | (more & full);
        let direct = reduce_map(&g, s, top, d).unwrap();
        let composed = reduce_map(&g, mid, top, d).unwrap().mul(&reduce_map(&g, s, mid, d).unwrap()).unwrap();
        prop_assert_eq!(direct, composed);
    }

    #[test]
    fn rank_nullity(m in (0usize..6, 0usize..6).prop_flat_map(|(r, c)| dense(r, c))) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.ncols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|(_, x)| *x == Rational::from(0)));
        }
    }

    #[test]
    fn subquotient_dimension(a in dense(3, 4), coeffs in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 4)) {
        // Columns of the incoming map are combinations of kernel vectors of `a`.
        let kernel = a.kernel_basis();
        let b = if kernel.is_empty() {
            RatMatrix::zeros(4, 3)
        } else {
            let k = RatMatrix::from_columns(4, kernel.clone());
            k.mul(&RatMatrix::from_dense(&coeffs[..kernel.len()])).unwrap()
        };
        let sq = subquotient(&b, &a).unwrap();
        prop_assert_eq!(sq.dim(), 4 - a.rank() - b.rank());
        prop_assert_eq!(sq.cycle_dim(), kernel.len());
    }

    #[test]
    fn deletion_contraction(g in graphs(5, 6), e in 0usize..6) {
        prop_assume!(e < g.m());
        let (del, con) = (g.delete_edge(e).unwrap(), g.contract_edge(e).unwrap());
        prop_assert_eq!(chromatic_classical(&g), &chromatic_classical(&del) - &chromatic_classical(&con));
        let p = dichromatic_poly(&g).unwrap();
        prop_assert_eq!(p, &dichromatic_poly(&del).unwrap() - &dichromatic_poly(&con).unwrap().shift_q(1));
    }

    #[test]
    fn chromatic_counts_colorings(g in graphs(5, 6), lambda in 0u64..5) {
        prop_assert_eq!(chromatic_classical(&g).eval(&BigInt::from(lambda)), count_colorings(&g, lambda).unwrap());
    }

    #[test]
    fn dichromatic_pipelines_agree(g in graphs(5, 7)) {
        prop_assert_eq!(dichromatic_poly(&g).unwrap(), dichromatic_recursive(&g));
    }

    #[test]
    fn polynomials_multiply_over_disjoint_union(g in graphs(3, 3), h in graphs(3, 3)) {
        let u = g.disjoint_union(&h).unwrap();
        prop_assert_eq!(chromatic_classical(&u), &chromatic_classical(&g) * &chromatic_classical(&h));
        prop_assert_eq!(dichromatic_poly(&u).unwrap(), &dichromatic_poly(&g).unwrap() * &dichromatic_poly(&h).unwrap());
    }

    #[test]
    fn koszul_square_vanishes((g, s) in graph_and_state(3, 4), d in 0usize..4) {
        let k = KoszulComplexSlice::new(g.n(), state_factors(&g, s, true), d);
        for p in 1..=k.top_position() {
            prop_assert!(k.differential(p).mul(&k.differential(p + 1)).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn chromatic_euler_holds(g in graphs(4, 5)) {
        prop_assert!(chromatic_euler_check(&g, 4).unwrap().passed());
    }

    #[test]
    fn cube_matches_koszul(g in graphs(3, 4)) {
        prop_assert!(chromatic_homology(&g, 3).unwrap().same_dimensions(&koszul_chromatic(&g, 3).unwrap()));
    }

    #[test]
    fn state_cohomology_closed_form((g, s) in graph_and_state(3, 4)) {
        prop_assert!(closed_form_check(&g, s, 3).unwrap().passed());
    }

    #[test]
    fn dichromatic_euler_holds(g in graphs(3, 4)) {
        let report = dichromatic_euler_check(&g, 3).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}
