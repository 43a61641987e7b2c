//! Clique expansion of a weighted graph into a weighted simplicial complex,
//! with face/coface incidence and the degree data every bound is built from.
//!
//! Each unordered simplex is stored once, as the ascending tuple of vertex
//! ids, and carries positive orientation; oriented evaluations derive their
//! sign from permutation parity. Enumeration is incremental: a `k`-simplex
//! is extended by every common neighbor larger than its maximum vertex, so
//! the registry order is lexicographic and deterministic.

use crate::error::{HodgeError, Result};
use crate::graph::WeightedGraph;
use crate::rational::Ratio;
use std::collections::HashMap;

/// Weight assignment for simplices of dimension `>= 2`.
#[derive(Debug, Clone)]
pub enum WeightRule {
    /// Every higher simplex gets the same weight.
    Constant(f64),
    /// Explicit per-simplex weights keyed on ascending external-id tuples;
    /// simplices not listed fall back to `default`.
    Explicit { weights: HashMap<Vec<u64>, f64>, default: f64 },
}

impl WeightRule {
    fn weight_of(&self, ids: &[u64]) -> f64 {
        match self {
            WeightRule::Constant(c) => *c,
            WeightRule::Explicit { weights, default } => {
                weights.get(ids).copied().unwrap_or(*default)
            }
        }
    }
}

/// One dimension level of a complex: the canonical simplex registry plus
/// weights and incidence into the neighboring levels.
#[derive(Debug, Clone)]
pub struct Level {
    /// Canonical simplices as ascending internal vertex indices.
    pub simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// Positive weight `m_k` per canonical simplex.
    pub weights: Vec<f64>,
    /// For `k >= 1`: the `k+1` facets of each simplex, in omission order
    /// (entry `i` is the simplex with its `i`-th vertex removed).
    pub faces: Vec<Vec<usize>>,
    /// Cofaces one level up as `(extension vertex, simplex index)` pairs.
    pub cofaces: Vec<Vec<(usize, usize)>>,
}

impl Level {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex).copied()
    }
}

/// A weighted simplicial complex generated by the cliques of a graph.
#[derive(Debug, Clone)]
pub struct WeightedComplex {
    graph: WeightedGraph,
    n: usize,
    levels: Vec<Level>,
}

/// Enumerates all `(k+1)`-cliques of `graph` for `k = 0..=n`, assigning
/// weights `m0`/`m1` from the graph and higher weights from `rule`.
pub fn build_complex(graph: WeightedGraph, n: usize, rule: &WeightRule) -> Result<WeightedComplex> {
    if n < 1 {
        return Err(HodgeError::InvalidDimension { n });
    }
    let mut levels: Vec<Level> = Vec::with_capacity(n + 1);

    let vertices: Vec<Vec<usize>> = (0..graph.vertex_count()).map(|v| vec![v]).collect();
    let weights = (0..graph.vertex_count()).map(|v| graph.vertex_weight(v)).collect();
    levels.push(Level {
        index: vertices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect(),
        simplices: vertices,
        weights,
        faces: Vec::new(),
        cofaces: Vec::new(),
    });

    for k in 1..=n {
        let mut simplices = Vec::new();
        let mut weights = Vec::new();
        let mut faces = Vec::new();

        for prev in &levels[k - 1].simplices {
            let max = *prev.last().expect("simplices are nonempty");
            for &z in &graph.common_neighbors(prev) {
                if z <= max {
                    continue;
                }
                let mut simplex = prev.clone();
                simplex.push(z);
                let ids: Vec<u64> = simplex.iter().map(|&v| graph.id_of(v)).collect();
                let w = if k == 1 {
                    graph.edge_weight(simplex[0], simplex[1]).expect("extension is a neighbor")
                } else {
                    rule.weight_of(&ids)
                };
                if w <= 0.0 || !w.is_finite() {
                    return Err(HodgeError::NonPositiveWeight {
                        context: format!("simplex {ids:?}"),
                        value: w,
                    });
                }
                simplices.push(simplex);
                weights.push(w);
            }
        }

        let index: HashMap<Vec<usize>, usize> =
            simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();

        // every incidence, not just the ones the incremental extension
        // visited: rebuild cofaces from the face lists
        let mut cofaces_of_prev = vec![Vec::new(); levels[k - 1].len()];
        for (idx, simplex) in simplices.iter().enumerate() {
            let mut facet_ids = Vec::with_capacity(simplex.len());
            for i in 0..simplex.len() {
                let mut facet = simplex.clone();
                let z = facet.remove(i);
                let t = levels[k - 1].index_of(&facet).expect("facet of a clique is a clique");
                facet_ids.push(t);
                cofaces_of_prev[t].push((z, idx));
            }
            faces.push(facet_ids);
        }
        for list in &mut cofaces_of_prev {
            list.sort_unstable();
        }

        levels[k - 1].cofaces = cofaces_of_prev;
        levels.push(Level { simplices, index, weights, faces, cofaces: Vec::new() });
    }

    Ok(WeightedComplex { graph, n, levels })
}

impl WeightedComplex {
    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k]
    }

    /// Number of simplices at each level, `0..=n`.
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Level::len).collect()
    }

    pub fn weight(&self, k: usize, idx: usize) -> f64 {
        self.levels[k].weights[idx]
    }

    /// External ids of a canonical simplex.
    pub fn simplex_ids(&self, k: usize, idx: usize) -> Vec<u64> {
        self.levels[k].simplices[idx].iter().map(|&v| self.graph.id_of(v)).collect()
    }

    /// Looks up the canonical simplex for a set of external ids.
    /// Fails on repeated vertices, unknown ids, or unregistered sets.
    pub fn find_simplex(&self, ids: &[u64]) -> Result<(usize, usize)> {
        let mut internal = Vec::with_capacity(ids.len());
        for &id in ids {
            internal.push(self.graph.index_of(id).ok_or(HodgeError::UnknownVertex { id })?);
        }
        internal.sort_unstable();
        if internal.windows(2).any(|w| w[0] == w[1]) {
            return Err(HodgeError::RepeatedVertex { tuple: ids.to_vec() });
        }
        let k = internal.len() - 1;
        if k > self.n {
            return Err(HodgeError::UnregisteredSimplex { tuple: ids.to_vec() });
        }
        self.levels[k]
            .index_of(&internal)
            .map(|idx| (k, idx))
            .ok_or(HodgeError::UnregisteredSimplex { tuple: ids.to_vec() })
    }

    /// Face degree of a registered `(k-1)`-simplex (a `k`-vertex face):
    /// `(1/m_{k-1}(face)) * sum over extensions z of m_k(face, z)`.
    /// With unit weights this is the number of extension vertices.
    pub fn face_degree(&self, k: usize, face_ids: &[u64]) -> Result<f64> {
        if face_ids.len() != k || k == 0 || k > self.n + 1 {
            return Err(HodgeError::UnregisteredSimplex { tuple: face_ids.to_vec() });
        }
        let (level, idx) = self.find_simplex(face_ids)?;
        debug_assert_eq!(level, k - 1);
        Ok(self.face_degree_at(level, idx))
    }

    /// Face degree by internal index; levels above `n` contribute nothing.
    pub fn face_degree_at(&self, k: usize, idx: usize) -> f64 {
        if k >= self.n {
            return 0.0;
        }
        let up: f64 = self.levels[k].cofaces[idx]
            .iter()
            .map(|&(_, ci)| self.levels[k + 1].weights[ci])
            .sum();
        up / self.levels[k].weights[idx]
    }

    /// Down/up degrees at level `k`: the maxima of the face degrees of
    /// `(k-1)`-simplices and of the coface sums of `k`-simplices. Empty
    /// levels yield 0; the top level has up-degree 0.
    pub fn up_down_degrees(&self, k: usize) -> (f64, f64) {
        let down = if k == 0 || k > self.n {
            0.0
        } else {
            (0..self.levels[k - 1].len())
                .map(|i| self.face_degree_at(k - 1, i))
                .fold(0.0, f64::max)
        };
        let up = if k >= self.n {
            0.0
        } else {
            (0..self.levels[k].len())
                .map(|i| self.face_degree_at(k, i))
                .fold(0.0, f64::max)
        };
        (down, up)
    }

    /// Builds the line complex of the top level; see [`LineComplex`].
    pub fn line_complex(&self) -> Result<LineComplex> {
        LineComplex::build(self)
    }
}

/// Adjacency structure of the top-dimensional simplices: two nodes are
/// adjacent when they share an `(n-1)`-face. Carries the symmetric kernel
/// `w(s, s') = sqrt(m_n(s) m_n(s')) / m_{n-1}(shared face)`, the diagonal
/// potential `q(s) = sum over faces t of m_n(s)/m_{n-1}(t)`, and the
/// one-sided coupling `a(s, s') = m_n(s') / m_{n-1}(shared face)`.
#[derive(Debug, Clone)]
pub struct LineComplex {
    /// Per node: `(neighbor node, shared facet index at level n-1, w, a)`.
    pub adjacency: Vec<Vec<LineNeighbor>>,
    /// Diagonal potential `q` per node.
    pub q: Vec<f64>,
    node_count: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct LineNeighbor {
    pub node: usize,
    pub shared_facet: usize,
    pub w: f64,
    pub a: f64,
}

impl LineComplex {
    fn build(complex: &WeightedComplex) -> Result<LineComplex> {
        let n = complex.dimension();
        let top = complex.level(n);
        if top.is_empty() {
            return Err(HodgeError::NoTopSimplices);
        }
        let below = complex.level(n - 1);
        let m_top = &top.weights;
        let m_below = &below.weights;

        let mut adjacency = vec![Vec::new(); top.len()];
        let mut q = vec![0.0; top.len()];

        for (s, facets) in top.faces.iter().enumerate() {
            for &t in facets {
                q[s] += m_top[s] / m_below[t];
                for &(_, s2) in &below.cofaces[t] {
                    if s2 != s {
                        adjacency[s].push(LineNeighbor {
                            node: s2,
                            shared_facet: t,
                            w: (m_top[s] * m_top[s2]).sqrt() / m_below[t],
                            a: m_top[s2] / m_below[t],
                        });
                    }
                }
            }
        }
        for list in &mut adjacency {
            list.sort_by_key(|nb| (nb.node, nb.shared_facet));
        }
        Ok(LineComplex { adjacency, q, node_count: top.len() })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Kernel row sum `D(s) = sum over neighbors of w(s, s')`.
    pub fn kernel_degree(&self, node: usize) -> f64 {
        self.adjacency[node].iter().map(|nb| nb.w).sum()
    }

    pub fn max_kernel_degree(&self) -> f64 {
        (0..self.node_count).map(|s| self.kernel_degree(s)).fold(0.0, f64::max)
    }

    pub fn max_potential(&self) -> f64 {
        self.q.iter().fold(0.0, |acc, &v| acc.max(v))
    }

    /// Local action `(q(s) u(s) - sum a(s, s') u(s'))` per node.
    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        (0..self.node_count)
            .map(|s| {
                self.q[s] * u[s] - self.adjacency[s].iter().map(|nb| nb.a * u[nb.node]).sum::<f64>()
            })
            .collect()
    }
}

/// Exact-rational mirror of [`LineComplex`] for complexes whose top two
/// weight levels are supplied as rationals.
#[derive(Debug, Clone)]
pub struct ExactLineComplex {
    pub adjacency: Vec<Vec<(usize, Ratio)>>,
    pub q: Vec<Ratio>,
}

impl ExactLineComplex {
    /// `m_top` and `m_below` give exact weights per canonical simplex index
    /// at levels `n` and `n-1`; they must match the float weights in intent.
    pub fn build(complex: &WeightedComplex, m_top: &[Ratio], m_below: &[Ratio]) -> Result<ExactLineComplex> {
        let n = complex.dimension();
        let top = complex.level(n);
        if top.is_empty() {
            return Err(HodgeError::NoTopSimplices);
        }
        let below = complex.level(n - 1);
        if m_top.len() != top.len() || m_below.len() != below.len() {
            return Err(HodgeError::InvalidGraph { reason: "exact weight table has wrong length".into() });
        }
        let mut adjacency = vec![Vec::new(); top.len()];
        let mut q = vec![Ratio::ZERO; top.len()];
        for (s, facets) in top.faces.iter().enumerate() {
            for &t in facets {
                q[s] = q[s] + m_top[s] / m_below[t];
                for &(_, s2) in &below.cofaces[t] {
                    if s2 != s {
                        adjacency[s].push((s2, m_top[s2] / m_below[t]));
                    }
                }
            }
        }
        Ok(ExactLineComplex { adjacency, q })
    }

    /// Exact local action `q(s) u(s) - sum a(s, s') u(s')`.
    pub fn apply(&self, u: &[Ratio]) -> Vec<Ratio> {
        (0..self.q.len())
            .map(|s| {
                let coupling = self.adjacency[s]
                    .iter()
                    .fold(Ratio::ZERO, |acc, &(s2, a)| acc + a * u[s2]);
                self.q[s] * u[s] - coupling
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_complex(graph: WeightedGraph, n: usize) -> WeightedComplex {
        build_complex(graph, n, &WeightRule::Constant(1.0)).unwrap()
    }

    #[test]
    fn triangle_counts() {
        let c = unit_complex(WeightedGraph::complete(3), 2);
        assert_eq!(c.level_sizes(), vec![3, 3, 1]);
    }

    #[test]
    fn k4_counts() {
        let c = unit_complex(WeightedGraph::complete(4), 3);
        assert_eq!(c.level_sizes(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn four_cycle_has_no_triangles() {
        let c = unit_complex(WeightedGraph::cycle(4), 2);
        assert_eq!(c.level_sizes(), vec![4, 4, 0]);
    }

    #[test]
    fn rejects_nonpositive_rule_weight() {
        let err = build_complex(WeightedGraph::complete(3), 2, &WeightRule::Constant(0.0));
        match err {
            Err(HodgeError::NonPositiveWeight { context, .. }) => {
                assert!(context.contains("[0, 1, 2]"), "offending simplex named: {context}");
            }
            other => panic!("expected weight rejection, got {other:?}"),
        }
    }

    #[test]
    fn rejects_dimension_zero() {
        assert!(matches!(
            build_complex(WeightedGraph::complete(3), 0, &WeightRule::Constant(1.0)),
            Err(HodgeError::InvalidDimension { n: 0 })
        ));
    }

    #[test]
    fn face_degree_unit_weights_counts_extensions() {
        let k3 = unit_complex(WeightedGraph::complete(3), 2);
        assert_eq!(k3.face_degree(2, &[0, 1]).unwrap(), 1.0);
        let k4 = unit_complex(WeightedGraph::complete(4), 3);
        assert_eq!(k4.face_degree(2, &[0, 1]).unwrap(), 2.0);
        assert!(matches!(
            k3.face_degree(2, &[0, 7]),
            Err(HodgeError::UnknownVertex { id: 7 })
        ));
    }

    #[test]
    fn weighted_tetra_face_degrees() {
        // the four faces of the central cell, with m2 = (1, 2, 1, 2) and
        // m3 = 2 on the center, 1 on each outer cell:
        // (2 + 1)/1, (2 + 1)/2, (2 + 1)/1, (2 + 1)/2
        let fx = crate::sample::weighted_tetra_fixture();
        let c = &fx.complex;
        assert_eq!(c.face_degree(3, &[1, 2, 3]).unwrap(), 3.0);
        assert_eq!(c.face_degree(3, &[0, 2, 3]).unwrap(), 1.5);
        assert_eq!(c.face_degree(3, &[0, 1, 3]).unwrap(), 3.0);
        assert_eq!(c.face_degree(3, &[0, 1, 2]).unwrap(), 1.5);
        // the potential decomposes over the faces as m3(center)/m2
        let lc = c.line_complex().unwrap();
        assert_eq!(lc.q[fx.center], 2.0 / 1.0 + 2.0 / 2.0 + 2.0 / 1.0 + 2.0 / 2.0);
    }

    #[test]
    fn isolated_vertices_are_allowed() {
        let g = WeightedGraph::unit(4, &[(0, 1)]).unwrap();
        let c = unit_complex(g, 2);
        assert_eq!(c.level_sizes(), vec![4, 1, 0]);
        assert_eq!(c.up_down_degrees(2), (0.0, 0.0));
    }

    #[test]
    fn up_down_degrees_examples() {
        let k3 = unit_complex(WeightedGraph::complete(3), 2);
        // oracle: enumerate by hand over the registries
        let down = (0..3)
            .map(|v| k3.face_degree(1, &[v]).unwrap())
            .fold(0.0, f64::max);
        let up = (0..3)
            .map(|i| {
                let ids = k3.simplex_ids(1, i);
                k3.face_degree(2, &ids).unwrap()
            })
            .fold(0.0, f64::max);
        assert_eq!(k3.up_down_degrees(1), (down, up));
        assert_eq!(k3.up_down_degrees(1), (2.0, 1.0));

        let k4 = unit_complex(WeightedGraph::complete(4), 3);
        assert_eq!(k4.up_down_degrees(2), (2.0, 1.0));
        // top level never has an up part
        assert_eq!(k4.up_down_degrees(3).1, 0.0);
        assert_eq!(k3.up_down_degrees(2).1, 0.0);
    }

    #[test]
    fn incidence_duality() {
        let c = unit_complex(WeightedGraph::complete(5), 3);
        for k in 1..=c.dimension() {
            for (s, facets) in c.level(k).faces.iter().enumerate() {
                for &t in facets {
                    assert!(
                        c.level(k - 1).cofaces[t].iter().any(|&(_, up)| up == s),
                        "face/coface tables disagree at level {k}"
                    );
                }
            }
            for (t, ups) in c.level(k - 1).cofaces.iter().enumerate() {
                for &(_, s) in ups {
                    assert!(c.level(k).faces[s].contains(&t));
                }
            }
        }
    }

    #[test]
    fn every_simplex_is_a_clique() {
        let g = WeightedGraph::unit(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 2), (1, 5)]).unwrap();
        let c = unit_complex(g, 3);
        for k in 1..=c.dimension() {
            for s in &c.level(k).simplices {
                for i in 0..s.len() {
                    for j in (i + 1)..s.len() {
                        assert!(c.graph().adjacent(s[i], s[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn two_triangles_sharing_an_edge() {
        let g = WeightedGraph::unit(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let c = unit_complex(g, 2);
        let lc = c.line_complex().unwrap();
        assert_eq!(lc.node_count(), 2);
        assert_eq!(lc.adjacency[0].len(), 1);
        assert_eq!(lc.adjacency[0][0].w, 1.0);
        assert_eq!(lc.adjacency[0][0].a, 1.0);
        assert_eq!(lc.q, vec![3.0, 3.0]);
    }

    #[test]
    fn line_complex_requires_top_simplices() {
        let c = unit_complex(WeightedGraph::cycle(4), 2);
        assert!(matches!(c.line_complex(), Err(HodgeError::NoTopSimplices)));
    }
}
