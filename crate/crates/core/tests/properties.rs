//! Randomized invariants of the graph combinatorics, scalar arithmetic,
//! linear algebra, and both engines.

use std::sync::Arc;

use proptest::prelude::*;

use pclie_core::{
    build_structure, parse_expr, FieldTag, Gen, Graph, LiePoly, LieTerm, MetabelianEngine,
    MultiDegree, Scalar, Subspace,
};

fn graph_from_mask(n: Gen, mask: &[bool]) -> Graph {
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            pairs.push((i, j));
        }
    }
    let edges: Vec<(Gen, Gen)> = pairs
        .into_iter()
        .zip(mask)
        .filter(|(_, &keep)| keep)
        .map(|(e, _)| e)
        .collect();
    Graph::with_edges(n, edges).unwrap()
}

fn arb_graph(n: Gen) -> impl Strategy<Value = Graph> {
    let count = (n as usize) * (n as usize - 1) / 2;
    prop::collection::vec(any::<bool>(), count).prop_map(move |mask| graph_from_mask(n, &mask))
}

fn arb_word(n: Gen, max_len: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(1..=n, 1..=max_len)
}

prop_compose! {
    fn arb_expr(n: Gen)(
        parts in prop::collection::vec((-3i64..=3, arb_word(n, 4)), 1..5)
    ) -> pclie_core::LieExpr {
        let q = FieldTag::Rational;
        pclie_core::LieExpr {
            terms: parts
                .into_iter()
                .map(|(c, w)| (q.from_i64(c), LieTerm::left_normed(&w).unwrap()))
                .collect(),
        }
    }
}

proptest! {
    #[test]
    fn complement_is_involutive(n in 2u16..=6, mask in prop::collection::vec(any::<bool>(), 15)) {
        let g = graph_from_mask(n, &mask[..(n as usize) * (n as usize - 1) / 2]);
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn complement_components_partition_the_vertices(g in arb_graph(5)) {
        let comps = g.complement().connected_components();
        let mut seen = Vec::new();
        for c in &comps {
            prop_assert!(!c.is_empty());
            for v in c.iter() {
                prop_assert!(!seen.contains(&v));
                seen.push(v);
            }
        }
        prop_assert_eq!(seen.len(), 5);
    }

    #[test]
    fn prime_field_arithmetic_is_a_field(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
                                         a in 0i64..11, b in 0i64..11, c in 0i64..11) {
        let f = FieldTag::fp(p).unwrap();
        let (x, y, z) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x * &(&y * &z), &(&x * &y) * &z);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inverse().unwrap(), f.one());
        }
    }

    #[test]
    fn multidegree_is_additive_over_brackets(u in arb_word(4, 5), v in arb_word(4, 5)) {
        let l = LieTerm::left_normed(&u).unwrap();
        let r = LieTerm::left_normed(&v).unwrap();
        let sum = l.mdeg(4).unwrap().checked_add(&r.mdeg(4).unwrap()).unwrap();
        prop_assert_eq!(LieTerm::bracket(l, r).mdeg(4).unwrap(), sum);
    }

    #[test]
    fn metabelian_nf_is_linear(g in arb_graph(3), e1 in arb_expr(3), e2 in arb_expr(3)) {
        let engine = MetabelianEngine::new(Arc::new(g), FieldTag::Rational);
        let mut joint = e1.clone();
        joint.terms.extend(e2.terms.clone());
        let sum = engine
            .nf_expr(&e1)
            .unwrap()
            .checked_add(&engine.nf_expr(&e2).unwrap())
            .unwrap();
        prop_assert_eq!(engine.nf_expr(&joint).unwrap(), sum);
    }

    #[test]
    fn metabelian_nf_round_trips_through_printing(g in arb_graph(3), e in arb_expr(3)) {
        let engine = MetabelianEngine::new(Arc::new(g), FieldTag::Rational);
        let nf = engine.nf_expr(&e).unwrap();
        if !nf.is_zero() {
            let reparsed = parse_expr(&nf.to_string(), 3, FieldTag::Rational).unwrap();
            prop_assert_eq!(engine.nf_expr(&reparsed).unwrap(), nf);
        }
    }

    #[test]
    fn metabelian_identity_annihilates_double_brackets(
        g in arb_graph(3),
        u in arb_word(3, 3), v in arb_word(3, 3), w in arb_word(3, 3), x in arb_word(3, 3),
    ) {
        let engine = MetabelianEngine::new(Arc::new(g), FieldTag::Rational);
        let t = LieTerm::bracket(
            LieTerm::bracket(
                LieTerm::left_normed(&u).unwrap(),
                LieTerm::left_normed(&v).unwrap(),
            ),
            LieTerm::bracket(
                LieTerm::left_normed(&w).unwrap(),
                LieTerm::left_normed(&x).unwrap(),
            ),
        );
        prop_assert!(engine.nf_term(&t).unwrap().is_zero());
    }

    #[test]
    fn metabelian_nf_preserves_multidegree(g in arb_graph(3), w in arb_word(3, 4)) {
        let engine = MetabelianEngine::new(Arc::new(g), FieldTag::Rational);
        let t = LieTerm::left_normed(&w).unwrap();
        let d = t.mdeg(3).unwrap();
        let nf = engine.nf_term(&t).unwrap();
        for (key, _) in nf.iter() {
            prop_assert_eq!(&key.mdeg(3), &d);
        }
    }

    #[test]
    fn nilpotent_tables_pass_identity_audit(g in arb_graph(3), m in 2u32..=3) {
        let tbl = build_structure(Arc::new(g), m, FieldTag::Rational).unwrap();
        prop_assert!(tbl.verify_identities().is_ok());
    }

    #[test]
    fn nilpotent_nf_agrees_with_graded_parts(g in arb_graph(3), e in arb_expr(3)) {
        let tbl = build_structure(Arc::new(g), 3, FieldTag::Rational).unwrap();
        let nf = tbl.nf_expr(&e).unwrap();
        let mut rebuilt = LiePoly::zero(nf.context().clone());
        for d in 1..=3 {
            rebuilt = rebuilt.checked_add(&nf.graded_part(d)).unwrap();
        }
        prop_assert_eq!(rebuilt, nf);
    }

    #[test]
    fn nilpotent_nf_support_shrinks(g in arb_graph(3), w in arb_word(3, 3)) {
        let tbl = build_structure(Arc::new(g), 3, FieldTag::Rational).unwrap();
        let t = LieTerm::left_normed(&w).unwrap();
        let nf = tbl.nf_term(&t).unwrap();
        prop_assert!(nf.supp().is_subset(&t.supp()));
    }

    #[test]
    fn subspace_canonical_form_ignores_row_order(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..4),
        rotate in 0usize..3,
    ) {
        let q = FieldTag::Rational;
        let to_rows = |rs: &[Vec<i64>]| -> Vec<Vec<Scalar>> {
            rs.iter()
                .map(|r| r.iter().map(|&v| q.from_i64(v)).collect())
                .collect()
        };
        let a = Subspace::from_rows(q, 4, to_rows(&rows));
        let mut rotated = rows.clone();
        rotated.rotate_left(rotate % rows.len().max(1));
        let b = Subspace::from_rows(q, 4, to_rows(&rotated));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn subspace_dimension_formula(
        ra in prop::collection::vec(prop::collection::vec(0i64..5, 4), 1..4),
        rb in prop::collection::vec(prop::collection::vec(0i64..5, 4), 1..4),
    ) {
        let f = FieldTag::fp(5).unwrap();
        let lift = |rs: &[Vec<i64>]| -> Vec<Vec<Scalar>> {
            rs.iter()
                .map(|r| r.iter().map(|&v| f.from_i64(v)).collect())
                .collect()
        };
        let u = Subspace::from_rows(f, 4, lift(&ra));
        let w = Subspace::from_rows(f, 4, lift(&rb));
        prop_assert_eq!(
            u.dim() + w.dim(),
            u.sum(&w).dim() + u.intersection(&w).dim()
        );
    }

    #[test]
    fn multidegree_enumeration_is_complete(n in 1u16..=4, total in 1u32..=4) {
        let all = MultiDegree::all_of_total(n, total);
        for d in &all {
            prop_assert_eq!(d.total(), total);
            prop_assert_eq!(d.len(), n as usize);
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), all.len());
        let expected = (0..n as u32 - 1).fold(1u64, |acc, k| {
            acc * u64::from(total + k + 1) / u64::from(k + 1)
        });
        prop_assert_eq!(all.len() as u64, expected);
    }
}
