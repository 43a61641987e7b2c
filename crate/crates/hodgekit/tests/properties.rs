//! Property tests for the structural invariants: clique property, incidence
//! duality, parity bookkeeping, the ordered-sum form of the inner product,
//! the line-graph degree bound, and the chain/adjointness identities.

use hodgekit::cochain::{inner_product, sort_parity, Cochain, WeightedMetric};
use hodgekit::complex::{build_complex, WeightRule, WeightedComplex};
use hodgekit::graph::WeightedGraph;
use hodgekit::ops;
use hodgekit::Flavor;
use num_complex::Complex64;
use proptest::prelude::*;

fn arb_graph(max_vertices: usize) -> impl Strategy<Value = WeightedGraph> {
    (2..=max_vertices).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec(proptest::bool::weighted(0.6), pairs),
            proptest::collection::vec(0.5f64..2.0, pairs),
            proptest::collection::vec(0.5f64..2.0, n),
        )
            .prop_map(move |(mask, edge_w, vertex_w)| {
                let vertices: Vec<(u64, f64)> =
                    (0..n).map(|i| (i as u64, vertex_w[i])).collect();
                let mut edges = Vec::new();
                let mut p = 0;
                for u in 0..n as u64 {
                    for v in (u + 1)..n as u64 {
                        if mask[p] {
                            edges.push((u, v, edge_w[p]));
                        }
                        p += 1;
                    }
                }
                WeightedGraph::from_parts(vertices, edges).expect("generated graph is valid")
            })
    })
}

fn complex_of(graph: WeightedGraph, n: usize) -> WeightedComplex {
    build_complex(graph, n, &WeightRule::Constant(1.0)).expect("unit rule never fails")
}

proptest! {
    #[test]
    fn every_simplex_is_a_clique(graph in arb_graph(7)) {
        let c = complex_of(graph, 3);
        for k in 1..=c.dimension() {
            for s in &c.level(k).simplices {
                for i in 0..s.len() {
                    for j in (i + 1)..s.len() {
                        prop_assert!(c.graph().adjacent(s[i], s[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn faces_and_cofaces_are_dual(graph in arb_graph(7)) {
        let c = complex_of(graph, 3);
        for k in 1..=c.dimension() {
            for (s, facets) in c.level(k).faces.iter().enumerate() {
                prop_assert_eq!(facets.len(), k + 1);
                for &t in facets {
                    prop_assert!(c.level(k - 1).cofaces[t].iter().any(|&(_, up)| up == s));
                }
            }
        }
    }

    #[test]
    fn line_graph_degree_bound(graph in arb_graph(8)) {
        prop_assume!(graph.edge_count() > 0);
        let max_degree = graph.max_degree();
        prop_assert!(graph.line_graph_max_degree() <= 2 * (max_degree - 1));
    }

    #[test]
    fn unit_weight_face_degree_counts_extensions(graph in arb_graph(7)) {
        // the identity is the all-unit-weight special case
        let unit = WeightedGraph::from_parts(
            graph.ids().iter().map(|&id| (id, 1.0)).collect(),
            graph
                .edges()
                .iter()
                .map(|&(u, v)| (graph.id_of(u), graph.id_of(v), 1.0))
                .collect(),
        )
        .unwrap();
        let c = complex_of(unit, 3);
        for k in 1..=c.dimension() {
            for idx in 0..c.level(k - 1).len() {
                let expected = c.level(k - 1).cofaces[idx].len() as f64;
                prop_assert_eq!(c.face_degree_at(k - 1, idx), expected);
            }
        }
    }

    #[test]
    fn skew_evaluation_composes_with_parity(
        graph in arb_graph(6),
        perm_seed in 0u64..1000,
    ) {
        let c = complex_of(graph, 3);
        for k in 1..=c.dimension() {
            for idx in 0..c.level(k).len() {
                let ids = c.simplex_ids(k, idx);
                // a deterministic pseudo-random permutation of the tuple
                let mut perm = ids.clone();
                let mut state = perm_seed.wrapping_add(idx as u64);
                for i in (1..perm.len()).rev() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    perm.swap(i, (state >> 33) as usize % (i + 1));
                }
                let f = Cochain::indicator(&c, Flavor::Skew, &ids).unwrap();
                let direct = f.evaluate(&c, &perm).unwrap();
                let sign = if sort_parity(&perm) == 0 { 1.0 } else { -1.0 };
                prop_assert!((direct - Complex64::new(sign, 0.0)).norm() < 1e-15);
                let g = Cochain::indicator(&c, Flavor::Sym, &ids).unwrap();
                prop_assert!((g.evaluate(&c, &perm).unwrap() - Complex64::ONE).norm() < 1e-15);
            }
        }
    }

    /// The canonical-registry inner product equals the ordered-tuple sum
    /// normalized by 1/(k+1)! on every small complex.
    #[test]
    fn inner_product_matches_ordered_sum(graph in arb_graph(5), seed in 0u64..1000) {
        let c = complex_of(graph, 3);
        let mut rng = hodgekit::sample::SplitMix64::new(seed);
        for flavor in [Flavor::Skew, Flavor::Sym] {
            for k in 0..=c.dimension() {
                if c.level(k).is_empty() {
                    continue;
                }
                let f = hodgekit::sample::random_cochain(&c, k, flavor, &mut rng);
                let g = hodgekit::sample::random_cochain(&c, k, flavor, &mut rng);
                let metric = WeightedMetric::of(&c, k);
                let direct = inner_product(&f, &g, &metric).unwrap();
                let oracle = ordered_sum(&c, k, &f, &g);
                prop_assert!((direct - oracle).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn skew_coboundaries_chain(graph in arb_graph(7)) {
        let c = complex_of(graph, 3);
        for k in 1..c.dimension() {
            let dd = ops::d_squared(&c, k, Flavor::Skew).unwrap();
            prop_assert!(dd.max_abs < 1e-12);
        }
    }

    #[test]
    fn adjointness_in_the_weighted_inner_product(graph in arb_graph(6), seed in 0u64..1000) {
        let c = build_complex(graph, 3, &WeightRule::Constant(1.3)).unwrap();
        let mut rng = hodgekit::sample::SplitMix64::new(seed);
        for flavor in [Flavor::Skew, Flavor::Sym] {
            for k in 1..=c.dimension() {
                if c.level(k).is_empty() || c.level(k - 1).is_empty() {
                    continue;
                }
                let d = ops::coboundary(&c, k, flavor).unwrap();
                let delta = d.adjoint();
                let f = hodgekit::sample::random_cochain(&c, k - 1, flavor, &mut rng);
                let g = hodgekit::sample::random_cochain(&c, k, flavor, &mut rng);
                let df = Cochain::from_values(k, flavor, d.apply(&f.values));
                let dg = Cochain::from_values(k - 1, flavor, delta.apply(&g.values));
                let lhs = inner_product(&df, &g, &WeightedMetric::of(&c, k)).unwrap();
                let rhs = inner_product(&f, &dg, &WeightedMetric::of(&c, k - 1)).unwrap();
                prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
            }
        }
    }
}

fn ordered_sum(c: &WeightedComplex, k: usize, f: &Cochain, g: &Cochain) -> Complex64 {
    fn permutations(items: &[u64]) -> Vec<Vec<u64>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            for mut tail in permutations(&rest) {
                tail.insert(0, head);
                out.push(tail);
            }
        }
        out
    }
    let mut factorial = 1.0;
    for j in 2..=(k + 1) {
        factorial *= j as f64;
    }
    let mut total = Complex64::ZERO;
    for idx in 0..c.level(k).len() {
        let ids = c.simplex_ids(k, idx);
        let m = c.weight(k, idx);
        for p in permutations(&ids) {
            total += m * f.evaluate(c, &p).unwrap() * g.evaluate(c, &p).unwrap().conj();
        }
    }
    total / factorial
}
