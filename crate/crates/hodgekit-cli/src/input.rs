//! The JSON input document: vertices, edges, optional higher weights,
//! optional coloring. One self-describing format because weights attach to
//! simplices, not to matrix entries.

use hodgekit::bloch::{EdgeOrbit, PeriodicCell, TriangleOrbit};
use hodgekit::color::Coloring;
use hodgekit::complex::{build_complex, WeightRule, WeightedComplex};
use hodgekit::graph::WeightedGraph;
use serde::Deserialize;
use std::collections::HashMap;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexInput {
    #[serde(default)]
    pub dimension: Option<usize>,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
    #[serde(default)]
    pub higher_weights: Vec<HigherWeight>,
    /// Fallback weight for higher simplices not listed explicitly.
    #[serde(default = "one")]
    pub default_weight: f64,
    #[serde(default)]
    pub coloring: Option<HashMap<String, usize>>,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: u64,
    #[serde(default = "one")]
    pub m0: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub u: u64,
    pub v: u64,
    #[serde(default = "one")]
    pub m1: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HigherWeight {
    pub simplex: Vec<u64>,
    pub m: f64,
}

pub struct LoadedComplex {
    pub complex: WeightedComplex,
    pub coloring: Option<Coloring>,
}

impl ComplexInput {
    pub fn parse(text: &str) -> Result<ComplexInput, String> {
        serde_json::from_str(text).map_err(|e| {
            format!("input error at line {} column {}: {e}", e.line(), e.column())
        })
    }

    /// Builds the complex at `dim` (flag overrides the file's `dimension`,
    /// which itself defaults to 2).
    pub fn build(&self, dim_flag: Option<usize>, weights_flag: Option<f64>) -> Result<LoadedComplex, String> {
        let graph = WeightedGraph::from_parts(
            self.vertices.iter().map(|v| (v.id, v.m0)).collect(),
            self.edges.iter().map(|e| (e.u, e.v, e.m1)).collect(),
        )
        .map_err(|e| e.to_string())?;

        let coloring = match &self.coloring {
            None => None,
            Some(map) => {
                let mut by_id = HashMap::new();
                for (key, &color) in map {
                    let id: u64 = key
                        .parse()
                        .map_err(|_| format!("coloring key '{key}' is not a vertex id"))?;
                    by_id.insert(id, color);
                }
                Some(Coloring::from_map(&graph, &by_id).map_err(|e| e.to_string())?)
            }
        };

        let n = dim_flag.or(self.dimension).unwrap_or(2);
        let rule = match weights_flag {
            Some(c) => WeightRule::Constant(c),
            None if self.higher_weights.is_empty() && self.default_weight == 1.0 => {
                WeightRule::Constant(1.0)
            }
            None => {
                let mut weights = HashMap::new();
                for hw in &self.higher_weights {
                    let mut key = hw.simplex.clone();
                    key.sort_unstable();
                    weights.insert(key, hw.m);
                }
                WeightRule::Explicit { weights, default: self.default_weight }
            }
        };
        let complex = build_complex(graph, n, &rule).map_err(|e| e.to_string())?;
        Ok(LoadedComplex { complex, coloring })
    }
}

/// A custom periodic cell: combinatorial orbits with integer shifts.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellInput {
    pub dim: usize,
    pub vertex_weights: Vec<f64>,
    pub edges: Vec<CellEdge>,
    #[serde(default)]
    pub triangles: Vec<CellTriangle>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellEdge {
    pub tail: usize,
    pub head: usize,
    pub shift: Vec<i64>,
    #[serde(default = "one")]
    pub m1: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellTriangle {
    pub corners: [(usize, Vec<i64>); 3],
    #[serde(default = "one")]
    pub m2: f64,
}

impl CellInput {
    pub fn parse(text: &str) -> Result<CellInput, String> {
        serde_json::from_str(text).map_err(|e| {
            format!("cell input error at line {} column {}: {e}", e.line(), e.column())
        })
    }

    pub fn build(self) -> Result<PeriodicCell, String> {
        PeriodicCell::new(
            self.dim,
            self.vertex_weights,
            self.edges
                .into_iter()
                .map(|e| EdgeOrbit { tail: e.tail, head: e.head, shift: e.shift, weight: e.m1 })
                .collect(),
            self.triangles
                .into_iter()
                .map(|t| TriangleOrbit { corners: t.corners, weight: t.m2 })
                .collect(),
        )
        .map_err(|e| e.to_string())
    }
}
