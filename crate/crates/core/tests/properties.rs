//! Randomised properties over small connected genus-weighted multigraphs.

use picard_strata::oracle::brute_classify;
use picard_strata::{
    class_group, classify, gcd_invariant, reflect_twist, same_class, semibalanced_representative,
    stratum_containment, twist, DualGraph, Multidegree, VertexSet,
};
use proptest::prelude::*;

/// Connected graphs: a random spanning tree plus extra edges and loops.
fn graph() -> impl Strategy<Value = DualGraph> {
    (1usize..=5)
        .prop_flat_map(|n| {
            let genera = proptest::collection::vec(0u32..=2, n);
            let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|i| (0..i).boxed()).collect();
            let extra = proptest::collection::vec((0..n, 0..n), 0..=5);
            (genera, parents, extra)
        })
        .prop_map(|(genera, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            edges.extend(extra);
            DualGraph::from_indexed(&genera, &edges).unwrap()
        })
}

fn graph_with_genus() -> impl Strategy<Value = DualGraph> {
    graph().prop_filter("genus at least 2", |g| g.arithmetic_genus() >= 2)
}

fn quasistable() -> impl Strategy<Value = DualGraph> {
    graph_with_genus().prop_filter("quasistable", |g| g.classify_stability().unwrap().is_quasistable())
}

fn multidegree(n: usize) -> impl Strategy<Value = Multidegree> {
    proptest::collection::vec(-6i64..=6, n).prop_map(Multidegree)
}

fn graph_and_md(graphs: impl Strategy<Value = DualGraph>) -> impl Strategy<Value = (DualGraph, Multidegree)> {
    graphs.prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), multidegree(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn json_round_trip(g in graph()) {
        let back = DualGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), g.to_json());
        prop_assert_eq!(back.arithmetic_genus(), g.arithmetic_genus());
    }

    #[test]
    fn complement_duality(g in graph()) {
        let n = g.vertex_count();
        for bits in 1..g.all_vertices().bits() {
            let z = VertexSet::from_bits(bits);
            let (a, b) = (g.invariants_of(z), g.invariants_of(z.complement(n)));
            prop_assert_eq!(a.k, b.k);
            prop_assert_eq!(a.w + b.w, 2 * g.arithmetic_genus() - 2);
        }
    }

    #[test]
    fn classify_matches_definition((g, md) in graph_and_md(graph_with_genus())) {
        if g.classify_stability().unwrap().is_semistable() {
            prop_assert_eq!(classify(&g, &md).unwrap(), brute_classify(&g, &md).unwrap());
        }
    }

    #[test]
    fn twist_round_trip((g, md) in graph_and_md(graph_with_genus()), n in -3i64..=3) {
        let there = twist(&g, &md, n).unwrap();
        prop_assert_eq!(there.total(), md.total() + n * (2 * g.arithmetic_genus() - 2));
        prop_assert_eq!(twist(&g, &there, -n).unwrap(), md.clone());
        prop_assert_eq!(reflect_twist(&g, &reflect_twist(&g, &md, n).unwrap(), n).unwrap(), md.clone());
        if g.classify_stability().unwrap().is_semistable() {
            prop_assert_eq!(classify(&g, &there).unwrap(), classify(&g, &md).unwrap());
        }
    }

    #[test]
    fn same_class_is_an_equivalence(
        (g, a) in graph_and_md(graph()),
        steps in proptest::collection::vec((0usize..5, -2i64..=2), 0..4),
        other in proptest::collection::vec(-3i64..=3, 5),
    ) {
        let group = class_group(&g);
        let n = g.vertex_count();
        // b is `a` moved along lattice rows; c is an arbitrary vector of the same degree
        let mut b = a.0.clone();
        for (i, t) in steps {
            for (x, r) in b.iter_mut().zip(group.lattice().row(i % n)) {
                *x += t * r;
            }
        }
        let b = Multidegree(b);
        let mut c: Vec<i64> = other[..n].to_vec();
        c[0] += a.total() - c.iter().sum::<i64>();
        let c = Multidegree(c);

        prop_assert!(same_class(&g, &a, &a).unwrap());
        prop_assert!(same_class(&g, &a, &b).unwrap());
        prop_assert!(same_class(&g, &b, &a).unwrap());
        prop_assert_eq!(same_class(&g, &a, &c).unwrap(), same_class(&g, &b, &c).unwrap());
        prop_assert_eq!(same_class(&g, &a, &c).unwrap(), group.label(&a) == group.label(&c));
    }

    #[test]
    fn representative_is_semibalanced_and_equivalent((g, md) in graph_and_md(quasistable())) {
        let rep = semibalanced_representative(&g, &md).unwrap();
        prop_assert!(brute_classify(&g, &rep).unwrap().is_semibalanced());
        prop_assert!(same_class(&g, &md, &rep).unwrap());
        // already semibalanced input comes back unchanged
        prop_assert_eq!(semibalanced_representative(&g, &rep).unwrap(), rep.clone());
    }

    #[test]
    fn gcd_is_periodic_and_containment_is_a_preorder(genus in 2i64..=12, d in -30i64..=30, d2 in -30i64..=30, d3 in -30i64..=30) {
        let p = 2 * genus - 2;
        prop_assert_eq!(gcd_invariant(genus, d).unwrap().value, gcd_invariant(genus, d + p).unwrap().value);
        prop_assert!(stratum_containment(genus, d, d).unwrap());
        if stratum_containment(genus, d, d2).unwrap() && stratum_containment(genus, d2, d3).unwrap() {
            prop_assert!(stratum_containment(genus, d, d3).unwrap());
        }
    }
}
