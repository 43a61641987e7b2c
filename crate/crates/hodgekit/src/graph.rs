//! Weighted graphs: the 1-skeleton every complex is grown from.

use crate::error::{HodgeError, Result};
use std::collections::HashMap;

/// A finite weighted graph with positive vertex weights `m0` and a symmetric
/// edge weight `m1` stored once per unordered pair. Pairs with `m1 > 0` are
/// the edges.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    ids: Vec<u64>,
    index: HashMap<u64, usize>,
    m0: Vec<f64>,
    adj: Vec<Vec<usize>>,
    m1: HashMap<(usize, usize), f64>,
}

impl WeightedGraph {
    /// Builds a graph from `(id, m0)` vertex entries and `(u, v, m1)` edges.
    /// Vertices are sorted by id internally so enumeration is deterministic.
    pub fn from_parts(vertices: Vec<(u64, f64)>, edges: Vec<(u64, u64, f64)>) -> Result<WeightedGraph> {
        let mut verts = vertices;
        verts.sort_by_key(|&(id, _)| id);
        let mut ids = Vec::with_capacity(verts.len());
        let mut m0 = Vec::with_capacity(verts.len());
        let mut index = HashMap::with_capacity(verts.len());
        for (id, w) in verts {
            if index.insert(id, ids.len()).is_some() {
                return Err(HodgeError::InvalidGraph { reason: format!("duplicate vertex id {id}") });
            }
            if w <= 0.0 || !w.is_finite() {
                return Err(HodgeError::NonPositiveWeight { context: format!("vertex {id}"), value: w });
            }
            ids.push(id);
            m0.push(w);
        }
        let mut adj = vec![Vec::new(); ids.len()];
        let mut m1 = HashMap::with_capacity(edges.len());
        for (u, v, w) in edges {
            let ui = *index.get(&u).ok_or(HodgeError::UnknownVertex { id: u })?;
            let vi = *index.get(&v).ok_or(HodgeError::UnknownVertex { id: v })?;
            if ui == vi {
                return Err(HodgeError::InvalidGraph { reason: format!("self-loop at vertex {u}") });
            }
            if w <= 0.0 || !w.is_finite() {
                return Err(HodgeError::NonPositiveWeight { context: format!("edge ({u}, {v})"), value: w });
            }
            let key = (ui.min(vi), ui.max(vi));
            if m1.insert(key, w).is_some() {
                return Err(HodgeError::InvalidGraph { reason: format!("duplicate edge ({u}, {v})") });
            }
            adj[ui].push(vi);
            adj[vi].push(ui);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(WeightedGraph { ids, index, m0, adj, m1 })
    }

    /// All-unit-weight graph on vertices `0..n` with the given edges.
    pub fn unit(n: usize, edges: &[(u64, u64)]) -> Result<WeightedGraph> {
        WeightedGraph::from_parts(
            (0..n as u64).map(|i| (i, 1.0)).collect(),
            edges.iter().map(|&(u, v)| (u, v, 1.0)).collect(),
        )
    }

    pub fn complete(n: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for u in 0..n as u64 {
            for v in (u + 1)..n as u64 {
                edges.push((u, v));
            }
        }
        WeightedGraph::unit(n, &edges).expect("complete graph is valid")
    }

    pub fn cycle(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n as u64).map(|i| (i, (i + 1) % n as u64)).collect();
        WeightedGraph::unit(n, &edges).expect("cycle is valid")
    }

    pub fn path(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n.saturating_sub(1) as u64).map(|i| (i, i + 1)).collect();
        WeightedGraph::unit(n, &edges).expect("path is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m1.len()
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn id_of(&self, idx: usize) -> u64 {
        self.ids[idx]
    }

    pub fn index_of(&self, id: u64) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn vertex_weight(&self, idx: usize) -> f64 {
        self.m0[idx]
    }

    /// Sorted internal indices of the neighbors of `idx`.
    pub fn neighbors(&self, idx: usize) -> &[usize] {
        &self.adj[idx]
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        self.m1.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_weight(u, v).is_some()
    }

    /// Weighted degree `(1/m0(x)) * sum_y m1(x, y)`.
    pub fn weighted_degree(&self, idx: usize) -> f64 {
        let s: f64 = self.adj[idx]
            .iter()
            .map(|&j| self.edge_weight(idx, j).unwrap_or(0.0))
            .sum();
        s / self.m0[idx]
    }

    /// Combinatorial maximum degree.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Maximum degree of the line graph: edges are adjacent when they share
    /// an endpoint, so an edge `{x, y}` has `deg x + deg y - 2` neighbors.
    pub fn line_graph_max_degree(&self) -> usize {
        self.m1
            .keys()
            .map(|&(u, v)| self.adj[u].len() + self.adj[v].len() - 2)
            .max()
            .unwrap_or(0)
    }

    /// Edges as internal index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.m1.keys().copied().collect();
        e.sort_unstable();
        e
    }

    /// Intersects the sorted neighbor lists of all of `verts`.
    pub fn common_neighbors(&self, verts: &[usize]) -> Vec<usize> {
        let Some((&first, rest)) = verts.split_first() else {
            return (0..self.vertex_count()).collect();
        };
        let mut acc: Vec<usize> = self.adj[first].clone();
        for &v in rest {
            let other = &self.adj[v];
            let mut out = Vec::with_capacity(acc.len().min(other.len()));
            let (mut i, mut j) = (0, 0);
            while i < acc.len() && j < other.len() {
                match acc[i].cmp(&other[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        out.push(acc[i]);
                        i += 1;
                        j += 1;
                    }
                }
            }
            acc = out;
            if acc.is_empty() {
                break;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            WeightedGraph::from_parts(vec![(0, 0.0)], vec![]),
            Err(HodgeError::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            WeightedGraph::from_parts(vec![(0, 1.0)], vec![(0, 1, 1.0)]),
            Err(HodgeError::UnknownVertex { id: 1 })
        ));
        assert!(matches!(
            WeightedGraph::from_parts(vec![(0, 1.0)], vec![(0, 0, 1.0)]),
            Err(HodgeError::InvalidGraph { .. })
        ));
        assert!(matches!(
            WeightedGraph::from_parts(vec![(0, 1.0), (1, 1.0)], vec![(0, 1, -2.0)]),
            Err(HodgeError::NonPositiveWeight { .. })
        ));
    }

    #[test]
    fn degrees_and_line_degree() {
        let g = WeightedGraph::path(3);
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.line_graph_max_degree(), 1);
        assert_eq!(g.weighted_degree(1), 2.0);

        let k4 = WeightedGraph::complete(4);
        assert_eq!(k4.max_degree(), 3);
        // each edge of K4 meets 2 + 2 other edges
        assert_eq!(k4.line_graph_max_degree(), 4);
    }

    #[test]
    fn line_degree_bounded_by_twice_degree_minus_one() {
        for g in [WeightedGraph::complete(6), WeightedGraph::cycle(7), WeightedGraph::path(9)] {
            assert!(g.line_graph_max_degree() <= 2 * (g.max_degree() - 1));
        }
    }

    #[test]
    fn common_neighbors_sorted_intersection() {
        let k4 = WeightedGraph::complete(4);
        assert_eq!(k4.common_neighbors(&[0, 1]), vec![2, 3]);
        let c4 = WeightedGraph::cycle(4);
        assert_eq!(c4.common_neighbors(&[0, 2]), vec![1, 3]);
        assert_eq!(c4.common_neighbors(&[0, 1]), Vec::<usize>::new());
    }
}
