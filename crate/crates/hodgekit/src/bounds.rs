//! Explicit operator-norm certificates and the reports that check them
//! against computed norms.
//!
//! Certificates come in two classes. *Guaranteed* ones are row-sum (Schur)
//! or Cauchy-Schwarz estimates that hold for every weighted complex; a PASS
//! verdict is decided on these alone. *Reference* ones are the nominal
//! degree-sum and line-degree values; they are informative on regular
//! lattices but a two-edge path already exceeds the plain degree sum
//! (`|block| = 3 > 2`), so their margins are reported without feeding the
//! verdict.

use crate::cochain::Flavor;
use crate::complex::{LineComplex, WeightedComplex};
use crate::error::{HodgeError, Result};
use crate::graph::WeightedGraph;
use crate::ops;
use crate::rational::Ratio;
use crate::spectral;

/// Schur test: for a symmetric nonnegative kernel supported on adjacency,
/// the operator norm is at most the maximal row sum. Rejects negative
/// entries and asymmetric kernels.
pub fn schur_bound(rows: &[Vec<(usize, f64)>]) -> Result<f64> {
    for (i, row) in rows.iter().enumerate() {
        for &(j, w) in row {
            if w < 0.0 {
                return Err(HodgeError::InvalidKernel {
                    reason: format!("negative entry {w} at ({i}, {j})"),
                });
            }
            let back: f64 = rows
                .get(j)
                .map(|r| r.iter().filter(|&&(c, _)| c == i).map(|&(_, w)| w).sum())
                .unwrap_or(0.0);
            let fwd: f64 = row.iter().filter(|&&(c, _)| c == j).map(|&(_, w)| w).sum();
            if (fwd - back).abs() > 1e-12 * (1.0 + fwd.abs()) {
                return Err(HodgeError::InvalidKernel {
                    reason: format!("kernel not symmetric at ({i}, {j})"),
                });
            }
        }
    }
    Ok(rows
        .iter()
        .map(|row| row.iter().map(|&(_, w)| w).sum())
        .fold(0.0, f64::max))
}

/// Row sums of the line-complex kernel, as a Schur bound input.
pub fn line_kernel_rows(lc: &LineComplex) -> Vec<Vec<(usize, f64)>> {
    lc.adjacency
        .iter()
        .map(|nbs| nbs.iter().map(|nb| (nb.node, nb.w)).collect())
        .collect()
}

/// Nominal degree-sum certificate `D_k(down) + D_k(up)`.
pub fn form_bound(complex: &WeightedComplex, k: usize) -> f64 {
    let (down, up) = complex.up_down_degrees(k);
    down + up
}

/// Degree-sum certificate with the Cauchy-Schwarz multiplicities
/// `(k+1) D_down + (k+2) D_up`; sound for every weighted complex.
pub fn scaled_form_bound(complex: &WeightedComplex, k: usize) -> f64 {
    let (down, up) = complex.up_down_degrees(k);
    (k as f64 + 1.0) * down + (k as f64 + 2.0) * up
}

/// Top-degree certificate: kernel row-sum maximum plus potential maximum.
pub fn top_bound(complex: &WeightedComplex) -> Result<f64> {
    let lc = complex.line_complex()?;
    Ok(lc.max_kernel_degree() + lc.max_potential())
}

/// Coarse top-degree certificate from neighbor count and weight bounds:
/// `L m+ / m- + (n+1) m+ / m-`.
pub fn coarse_top_bound(neighbors: usize, n: usize, m_plus: f64, m_minus: f64) -> f64 {
    (neighbors as f64) * m_plus / m_minus + (n as f64 + 1.0) * m_plus / m_minus
}

/// Line-graph certificates for the edge block of a graph.
#[derive(Debug, Clone, Copy)]
pub struct EdgeBlockBounds {
    /// Max line-graph degree of the input graph.
    pub line_degree: usize,
    /// `2 line_degree + 2`.
    pub unnormalized: f64,
    /// `2 line_degree`.
    pub normalized: f64,
    /// `4 (max_degree - 1) + 2`.
    pub degree_form_unnormalized: f64,
    /// `4 (max_degree - 1)`.
    pub degree_form_normalized: f64,
}

pub fn edge_block_bounds(graph: &WeightedGraph) -> EdgeBlockBounds {
    let dl = graph.line_graph_max_degree();
    let dg = graph.max_degree();
    EdgeBlockBounds {
        line_degree: dl,
        unnormalized: 2.0 * dl as f64 + 2.0,
        normalized: 2.0 * dl as f64,
        degree_form_unnormalized: 4.0 * (dg.saturating_sub(1)) as f64 + 2.0,
        degree_form_normalized: 4.0 * (dg.saturating_sub(1)) as f64,
    }
}

/// Uniform weight-comparability constants `0 < low <= high` for vertices
/// and edges.
#[derive(Debug, Clone, Copy)]
pub struct ComparabilityConstants {
    pub vertex_low: f64,
    pub vertex_high: f64,
    pub edge_low: f64,
    pub edge_high: f64,
}

impl ComparabilityConstants {
    pub fn new(vertex_low: f64, vertex_high: f64, edge_low: f64, edge_high: f64) -> Result<Self> {
        if !(vertex_low > 0.0 && edge_low > 0.0) {
            return Err(HodgeError::InvalidConstants { reason: "lower constants must be positive".into() });
        }
        if vertex_low > vertex_high || edge_low > edge_high {
            return Err(HodgeError::InvalidConstants { reason: "low exceeds high".into() });
        }
        Ok(ComparabilityConstants { vertex_low, vertex_high, edge_low, edge_high })
    }
}

/// The weighted comparability constant
/// `C_w = 2 (edge_high/edge_low) max(1, vertex_high/vertex_low)`.
pub fn weighted_constant(c: &ComparabilityConstants) -> f64 {
    2.0 * (c.edge_high / c.edge_low) * (c.vertex_high / c.vertex_low).max(1.0)
}

/// Exact rational `C_w` for rational constants.
pub fn weighted_constant_exact(
    vertex_low: Ratio,
    vertex_high: Ratio,
    edge_low: Ratio,
    edge_high: Ratio,
) -> Result<Ratio> {
    if !vertex_low.is_positive() || !edge_low.is_positive() {
        return Err(HodgeError::InvalidConstants { reason: "lower constants must be positive".into() });
    }
    if vertex_high < vertex_low || edge_high < edge_low {
        return Err(HodgeError::InvalidConstants { reason: "low exceeds high".into() });
    }
    let ratio1 = edge_high / edge_low;
    let ratio0 = (vertex_high / vertex_low).max(Ratio::ONE);
    Ok(Ratio::integer(2) * ratio1 * ratio0)
}

/// The adjacency prefactor `edge_high/edge_low` reported alongside `C_w`.
pub fn adjacency_prefactor(c: &ComparabilityConstants) -> f64 {
    c.edge_high / c.edge_low
}

/// `C_w * line_degree`.
pub fn weighted_edge_bound(cw: f64, line_degree: usize) -> f64 {
    cw * line_degree as f64
}

/// One certificate line of a report.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub name: String,
    pub value: f64,
    /// Whether the estimate is sound for arbitrary weighted complexes.
    pub guaranteed: bool,
    /// `value - computed_norm`.
    pub margin: f64,
}

/// Identifies the block a report is about.
#[derive(Debug, Clone, Copy)]
pub struct BlockId {
    pub degree: usize,
    pub flavor: Flavor,
    pub normalized: bool,
}

impl std::fmt::Display for BlockId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}degree-{} {} block",
            if self.normalized { "normalized " } else { "" },
            self.degree,
            self.flavor
        )
    }
}

/// Computed norm of one block next to every applicable certificate.
/// `passed` is decided on the guaranteed certificates alone; reference
/// values are reported with their margins.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub subject: BlockId,
    pub computed_norm: f64,
    pub certificates: Vec<Certificate>,
    pub tolerance: f64,
    pub seed: u64,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    /// Margin tolerance absorbing iterative-norm error.
    pub tolerance: f64,
    /// Seed recorded with the report (the norm estimator is deterministic).
    pub seed: u64,
    pub comparability: Option<ComparabilityConstants>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { tolerance: 1e-8, seed: 0, comparability: None }
    }
}

fn is_unit_weighted(complex: &WeightedComplex) -> bool {
    (0..=complex.dimension()).all(|k| {
        complex.level(k).weights.iter().all(|&w| w == 1.0)
    })
}

/// Computes the norm of the degree-`k` normalized block and checks it
/// against every certificate that applies to the block.
pub fn certify(
    complex: &WeightedComplex,
    k: usize,
    flavor: Flavor,
    options: &CertifyOptions,
) -> Result<BoundReport> {
    let n = complex.dimension();
    if k > n {
        return Err(HodgeError::DegreeOutOfRange { k, n });
    }
    let block = ops::normalized_block(complex, k, flavor)?;
    let computed_norm = spectral::operator_norm(&block, 1e-9)?;
    let unit = is_unit_weighted(complex);

    let mut certificates = Vec::new();
    let mut push = |name: &str, value: f64, guaranteed: bool| {
        certificates.push(Certificate {
            name: name.to_string(),
            value,
            guaranteed,
            margin: value - computed_norm,
        });
    };

    push("degree_sum", form_bound(complex, k), false);
    push("degree_sum_scaled", scaled_form_bound(complex, k), true);

    if k == n {
        if let Ok(lc) = complex.line_complex() {
            push("line_schur", lc.max_kernel_degree() + lc.max_potential(), true);
            let m_plus = complex.level(n).weights.iter().cloned().fold(f64::MIN, f64::max);
            let m_minus = complex.level(n - 1).weights.iter().cloned().fold(f64::MAX, f64::min);
            let max_neighbors = lc.adjacency.iter().map(Vec::len).max().unwrap_or(0);
            push("line_coarse", coarse_top_bound(max_neighbors, n, m_plus, m_minus), true);
        }
    }

    if k == 1 {
        let eb = edge_block_bounds(complex.graph());
        let pure_graph_block = n == 1;
        push("edge_line_unnormalized", eb.unnormalized, unit && pure_graph_block);
        push("edge_line_normalized", eb.normalized, false);
        push(
            "edge_degree_form",
            eb.degree_form_normalized,
            unit && pure_graph_block && complex.graph().max_degree() >= 2,
        );
        if let Some(c) = &options.comparability {
            push("weighted_line", weighted_edge_bound(weighted_constant(c), eb.line_degree), false);
        }
    }

    let passed = certificates
        .iter()
        .filter(|c| c.guaranteed)
        .all(|c| c.margin >= -options.tolerance);

    Ok(BoundReport {
        subject: BlockId { degree: k, flavor, normalized: true },
        computed_norm,
        certificates,
        tolerance: options.tolerance,
        seed: options.seed,
        passed,
    })
}
