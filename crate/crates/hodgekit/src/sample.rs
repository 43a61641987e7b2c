//! Deterministic instance generators: a tiny seeded PRNG, random bounded
//! complexes for the identity and certificate suites, colorable families,
//! and the worked tetrahedron fixtures.

use crate::cochain::{Cochain, Flavor};
use crate::color::Coloring;
use crate::complex::{build_complex, WeightRule, WeightedComplex};
use crate::graph::WeightedGraph;
use crate::rational::Ratio;
use num_complex::Complex64;
use std::collections::HashMap;

/// SplitMix64: tiny, deterministic, and good enough for test vectors.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range_f64(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform in `lo..=hi`.
    pub fn range_usize(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next_u64() as usize) % (hi - lo + 1)
    }

    pub fn next_complex(&mut self) -> Complex64 {
        Complex64::new(self.range_f64(-1.0, 1.0), self.range_f64(-1.0, 1.0))
    }
}

pub fn random_cochain(complex: &WeightedComplex, k: usize, flavor: Flavor, rng: &mut SplitMix64) -> Cochain {
    let dim = complex.level(k).len();
    Cochain::from_values(k, flavor, (0..dim).map(|_| rng.next_complex()).collect())
}

/// A random bounded-degree instance: 4..=12 vertices, dimension in 1..=3,
/// edge probability in [0.25, 0.9], weights either unit or in [0.5, 2].
/// Identical seeds reproduce identical complexes.
pub fn random_complex_instance(seed: u64) -> WeightedComplex {
    let mut rng = SplitMix64::new(seed ^ 0xC0FFEE);
    let nv = rng.range_usize(4, 12);
    let p = rng.range_f64(0.25, 0.9);
    let n = rng.range_usize(1, 3);
    let unit = rng.next_f64() < 0.3;
    let w = |rng: &mut SplitMix64| if unit { 1.0 } else { rng.range_f64(0.5, 2.0) };

    let vertices: Vec<(u64, f64)> = (0..nv as u64).map(|i| (i, w(&mut rng))).collect();
    let mut edges = Vec::new();
    for u in 0..nv as u64 {
        for v in (u + 1)..nv as u64 {
            if rng.next_f64() < p {
                edges.push((u, v, w(&mut rng)));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, 1, w(&mut rng)));
    }
    let graph = WeightedGraph::from_parts(vertices, edges).expect("generated graph is valid");
    let rule = if unit {
        WeightRule::Constant(1.0)
    } else {
        // explicit weights for every clique the expansion can visit
        let mut weights = HashMap::new();
        let all: Vec<u64> = (0..nv as u64).collect();
        collect_subsets(&all, 3, 4, &mut |s| {
            weights.insert(s.to_vec(), rng.range_f64(0.5, 2.0));
        });
        WeightRule::Explicit { weights, default: 1.0 }
    };
    build_complex(graph, n, &rule).expect("generated weights are positive")
}

fn collect_subsets(items: &[u64], min_len: usize, max_len: usize, f: &mut impl FnMut(&[u64])) {
    let mut stack = vec![Vec::new()];
    while let Some(cur) = stack.pop() {
        let start = cur.last().map(|&v| v + 1).unwrap_or(0) as usize;
        if cur.len() >= min_len && cur.len() <= max_len {
            f(&cur);
        }
        if cur.len() == max_len {
            continue;
        }
        for &it in &items[start.min(items.len())..] {
            let mut next = cur.clone();
            next.push(it);
            stack.push(next);
        }
    }
}

/// A random bipartite graph instance (dimension 1) with its 2-coloring.
pub fn bipartite_instance(seed: u64) -> (WeightedComplex, Coloring) {
    let mut rng = SplitMix64::new(seed ^ 0xB1AA7);
    let a = rng.range_usize(2, 6);
    let b = rng.range_usize(2, 6);
    let p = rng.range_f64(0.3, 0.9);
    let unit = rng.next_f64() < 0.5;
    let w = |rng: &mut SplitMix64| if unit { 1.0 } else { rng.range_f64(0.5, 2.0) };

    let vertices: Vec<(u64, f64)> = (0..(a + b) as u64).map(|i| (i, w(&mut rng))).collect();
    let mut edges = Vec::new();
    for u in 0..a as u64 {
        for v in a as u64..(a + b) as u64 {
            if rng.next_f64() < p {
                edges.push((u, v, w(&mut rng)));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, a as u64, w(&mut rng)));
    }
    let graph = WeightedGraph::from_parts(vertices, edges).expect("valid bipartite graph");
    let colors: HashMap<u64, usize> =
        (0..(a + b) as u64).map(|i| (i, if (i as usize) < a { 1 } else { 2 })).collect();
    let coloring = Coloring::from_map(&graph, &colors).expect("bipartition is proper");
    let complex = build_complex(graph, 1, &WeightRule::Constant(1.0)).expect("valid complex");
    (complex, coloring)
}

type GraphParts = (Vec<(u64, f64)>, Vec<(u64, u64, f64)>, HashMap<u64, usize>);

/// A 3-colorable triangulation (dimension 2) with its coloring: either an
/// even wheel (a hub inside a 2m-cycle) or a zigzag strip of triangles.
pub fn triangulation_instance(seed: u64) -> (WeightedComplex, Coloring) {
    let mut rng = SplitMix64::new(seed ^ 0x7121A);
    let unit = rng.next_f64() < 0.5;
    let wheel = rng.next_f64() < 0.5;
    let w = |rng: &mut SplitMix64| if unit { 1.0 } else { rng.range_f64(0.5, 2.0) };

    let (vertices, edges, colors): GraphParts = if wheel {
        let m = rng.range_usize(2, 5); // rim length 2m
        let rim = 2 * m;
        let hub = rim as u64;
        let vertices = (0..=hub).map(|i| (i, w(&mut rng))).collect();
        let mut edges = Vec::new();
        for i in 0..rim as u64 {
            edges.push((i, (i + 1) % rim as u64, w(&mut rng)));
            edges.push((i, hub, w(&mut rng)));
        }
        let mut colors: HashMap<u64, usize> =
            (0..rim as u64).map(|i| (i, 1 + (i % 2) as usize)).collect();
        colors.insert(hub, 3);
        (vertices, edges, colors)
    } else {
        let len = rng.range_usize(5, 12);
        let vertices = (0..len as u64).map(|i| (i, w(&mut rng))).collect();
        let mut edges = Vec::new();
        for i in 0..len as u64 {
            if i + 1 < len as u64 {
                edges.push((i, i + 1, w(&mut rng)));
            }
            if i + 2 < len as u64 {
                edges.push((i, i + 2, w(&mut rng)));
            }
        }
        let colors = (0..len as u64).map(|i| (i, 1 + (i % 3) as usize)).collect();
        (vertices, edges, colors)
    };

    let graph = WeightedGraph::from_parts(vertices, edges).expect("valid triangulation graph");
    let coloring = Coloring::from_map(&graph, &colors).expect("triangulation coloring is proper");
    let rule = if unit {
        WeightRule::Constant(1.0)
    } else {
        let all: Vec<u64> = graph.ids().to_vec();
        let mut weights = HashMap::new();
        collect_subsets(&all, 3, 3, &mut |s| {
            weights.insert(s.to_vec(), rng.range_f64(0.5, 2.0));
        });
        WeightRule::Explicit { weights, default: 1.0 }
    };
    let complex = build_complex(graph, 2, &rule).expect("valid complex");
    (complex, coloring)
}

/// The interior-tetrahedron fixture: a central 3-simplex `{0,1,2,3}` glued
/// to one further tetrahedron across each of its four faces. Returned with
/// the face and cell weights of the worked example, both as floats in the
/// complex and as exact rationals aligned with the canonical registries.
pub struct TetraFixture {
    pub complex: WeightedComplex,
    /// Exact `m_2` per canonical triangle index.
    pub m2: Vec<Ratio>,
    /// Exact `m_3` per canonical tetrahedron index.
    pub m3: Vec<Ratio>,
    /// Canonical index of the interior cell `{0,1,2,3}`.
    pub center: usize,
    /// Canonical indices of the neighbors across faces
    /// `{1,2,3}, {0,2,3}, {0,1,3}, {0,1,2}` in that order.
    pub neighbors: [usize; 4],
}

fn tetra_graph() -> WeightedGraph {
    let cliques: [[u64; 4]; 5] =
        [[0, 1, 2, 3], [1, 2, 3, 4], [0, 2, 3, 5], [0, 1, 3, 6], [0, 1, 2, 7]];
    let mut edges = Vec::new();
    for clique in &cliques {
        for i in 0..4 {
            for j in (i + 1)..4 {
                let e = (clique[i].min(clique[j]), clique[i].max(clique[j]));
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
    }
    WeightedGraph::unit(8, &edges).expect("fixture graph is valid")
}

/// Weighted variant: `m_3 = 2` on the center, `1` elsewhere;
/// `m_2 = (1, 2, 1, 2)` on the faces `{1,2,3}, {0,2,3}, {0,1,3}, {0,1,2}`.
pub fn weighted_tetra_fixture() -> TetraFixture {
    let mut weights: HashMap<Vec<u64>, f64> = HashMap::new();
    weights.insert(vec![0, 2, 3], 2.0);
    weights.insert(vec![0, 1, 2], 2.0);
    weights.insert(vec![0, 1, 2, 3], 2.0);
    let rule = WeightRule::Explicit { weights, default: 1.0 };
    let complex = build_complex(tetra_graph(), 3, &rule).expect("fixture builds");
    fixture_from(complex)
}

/// Unit-weight variant of the same mesh.
pub fn unit_tetra_fixture() -> TetraFixture {
    let complex = build_complex(tetra_graph(), 3, &WeightRule::Constant(1.0)).expect("fixture builds");
    fixture_from(complex)
}

fn fixture_from(complex: WeightedComplex) -> TetraFixture {
    let m2 = (0..complex.level(2).len())
        .map(|i| Ratio::integer(complex.weight(2, i).round() as i128))
        .collect();
    let m3 = (0..complex.level(3).len())
        .map(|i| Ratio::integer(complex.weight(3, i).round() as i128))
        .collect();
    let center = complex.find_simplex(&[0, 1, 2, 3]).expect("center registered").1;
    let neighbors = [
        complex.find_simplex(&[1, 2, 3, 4]).expect("neighbor registered").1,
        complex.find_simplex(&[0, 2, 3, 5]).expect("neighbor registered").1,
        complex.find_simplex(&[0, 1, 3, 6]).expect("neighbor registered").1,
        complex.find_simplex(&[0, 1, 2, 7]).expect("neighbor registered").1,
    ];
    TetraFixture { complex, m2, m3, center, neighbors }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn tetra_fixture_shape() {
        let fx = unit_tetra_fixture();
        assert_eq!(fx.complex.level_sizes(), vec![8, 18, 16, 5]);
        let lc = fx.complex.line_complex().unwrap();
        assert_eq!(lc.adjacency[fx.center].len(), 4);
        assert_eq!(lc.q[fx.center], 4.0);
        for nb in &fx.neighbors {
            assert_eq!(lc.adjacency[*nb].len(), 1);
        }
    }

    #[test]
    fn weighted_tetra_fixture_matches_worked_values() {
        let fx = weighted_tetra_fixture();
        let lc = fx.complex.line_complex().unwrap();
        assert_eq!(lc.q[fx.center], 6.0);
        let mut couplings: Vec<f64> =
            lc.adjacency[fx.center].iter().map(|nb| nb.a).collect();
        couplings.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert_eq!(couplings, vec![0.5, 0.5, 1.0, 1.0]);
    }

    #[test]
    fn random_instances_reproducible_and_nonempty() {
        for seed in 0..20 {
            let a = random_complex_instance(seed);
            let b = random_complex_instance(seed);
            assert_eq!(a.level_sizes(), b.level_sizes());
            assert!(a.level(1).len() >= 1);
            assert!(a.graph().vertex_count() <= 12);
        }
    }

    #[test]
    fn colorable_instances_are_proper() {
        for seed in 0..10 {
            let (c, col) = bipartite_instance(seed);
            col.validate(c.graph()).unwrap();
            assert_eq!(c.dimension(), 1);
            let (t, col3) = triangulation_instance(seed);
            col3.validate(t.graph()).unwrap();
            assert!(t.level(2).len() > 0, "triangulations carry triangles");
        }
    }
}
