//! Coboundary maps, weighted adjoints, and Hodge Laplacian blocks.
//!
//! Operators are explicit sparse matrices over the canonical simplex bases
//! and carry the diagonal metrics of their domain and codomain, so adjoints
//! come from `M_dom^{-1} A^H M_cod` directly. The closed-form local adjoint
//! is assembled independently in [`delta_local`] and the two routes are
//! cross-checked in tests; sign errors cannot hide in a single path.

use crate::cochain::{Cochain, Flavor, WeightedMetric};
use crate::complex::WeightedComplex;
use crate::error::{HodgeError, Result};
use crate::sample::SplitMix64;
use num_complex::Complex64;

/// A linear map between cochain spaces carrying the weighted inner products
/// needed to form adjoints. Rows index the codomain basis.
#[derive(Debug, Clone)]
pub struct MetricOperator {
    pub dom_degree: usize,
    pub cod_degree: usize,
    pub flavor: Flavor,
    dom_dim: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
    pub dom_metric: Vec<f64>,
    pub cod_metric: Vec<f64>,
}

impl MetricOperator {
    pub fn new(
        dom_degree: usize,
        cod_degree: usize,
        flavor: Flavor,
        dom_dim: usize,
        rows: Vec<Vec<(usize, Complex64)>>,
        dom_metric: Vec<f64>,
        cod_metric: Vec<f64>,
    ) -> MetricOperator {
        debug_assert_eq!(rows.len(), cod_metric.len());
        debug_assert_eq!(dom_dim, dom_metric.len());
        MetricOperator { dom_degree, cod_degree, flavor, dom_dim, rows, dom_metric, cod_metric }
    }

    pub fn zero(
        dom_degree: usize,
        cod_degree: usize,
        flavor: Flavor,
        dom_metric: Vec<f64>,
        cod_metric: Vec<f64>,
    ) -> MetricOperator {
        let rows = vec![Vec::new(); cod_metric.len()];
        MetricOperator {
            dom_degree,
            cod_degree,
            flavor,
            dom_dim: dom_metric.len(),
            rows,
            dom_metric,
            cod_metric,
        }
    }

    pub fn rows(&self) -> &[Vec<(usize, Complex64)>] {
        &self.rows
    }

    /// `(codomain dimension, domain dimension)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.dom_dim)
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.dom_dim
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(j, a)| a * v[j]).sum())
            .collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.rows[i]
            .iter()
            .find(|&&(c, _)| c == j)
            .map(|&(_, a)| a)
            .unwrap_or(Complex64::ZERO)
    }

    /// Metric adjoint: satisfies `<A f, g>_cod = <f, adj(A) g>_dom` exactly.
    pub fn adjoint(&self) -> MetricOperator {
        let mut rows = vec![Vec::new(); self.dom_dim];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, a) in row {
                rows[j].push((i, a.conj() * self.cod_metric[i] / self.dom_metric[j]));
            }
        }
        MetricOperator {
            dom_degree: self.cod_degree,
            cod_degree: self.dom_degree,
            flavor: self.flavor,
            dom_dim: self.rows.len(),
            rows,
            dom_metric: self.cod_metric.clone(),
            cod_metric: self.dom_metric.clone(),
        }
    }

    /// Plain conjugate transpose of the coordinate matrix.
    pub fn transpose_conj(&self) -> MetricOperator {
        let mut rows = vec![Vec::new(); self.dom_dim];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, a) in row {
                rows[j].push((i, a.conj()));
            }
        }
        MetricOperator {
            dom_degree: self.cod_degree,
            cod_degree: self.dom_degree,
            flavor: self.flavor,
            dom_dim: self.rows.len(),
            rows,
            dom_metric: self.cod_metric.clone(),
            cod_metric: self.dom_metric.clone(),
        }
    }

    /// `self . rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &MetricOperator) -> MetricOperator {
        debug_assert_eq!(self.dom_dim, rhs.rows.len());
        let mut rows = Vec::with_capacity(self.rows.len());
        let mut acc: Vec<Complex64> = vec![Complex64::ZERO; rhs.dom_dim];
        let mut touched: Vec<usize> = Vec::new();
        for row in &self.rows {
            for &(mid, a) in row {
                for &(j, b) in &rhs.rows[mid] {
                    if acc[j] == Complex64::ZERO && !touched.contains(&j) {
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                if acc[j] != Complex64::ZERO {
                    out.push((j, acc[j]));
                }
                acc[j] = Complex64::ZERO;
            }
            touched.clear();
            rows.push(out);
        }
        MetricOperator {
            dom_degree: rhs.dom_degree,
            cod_degree: self.cod_degree,
            flavor: self.flavor,
            dom_dim: rhs.dom_dim,
            rows,
            dom_metric: rhs.dom_metric.clone(),
            cod_metric: self.cod_metric.clone(),
        }
    }

    pub fn add(&self, rhs: &MetricOperator) -> MetricOperator {
        debug_assert_eq!(self.shape(), rhs.shape());
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| {
                let mut merged: Vec<(usize, Complex64)> = a.clone();
                for &(j, v) in b {
                    match merged.iter_mut().find(|(c, _)| *c == j) {
                        Some((_, acc)) => *acc += v,
                        None => merged.push((j, v)),
                    }
                }
                merged.sort_unstable_by_key(|&(j, _)| j);
                merged.retain(|&(_, v)| v != Complex64::ZERO);
                merged
            })
            .collect();
        MetricOperator { rows, ..self.clone() }
    }

    pub fn sub(&self, rhs: &MetricOperator) -> MetricOperator {
        self.add(&rhs.scaled(-Complex64::ONE))
    }

    pub fn scaled(&self, factor: Complex64) -> MetricOperator {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&(j, a)| (j, factor * a)).collect())
            .collect();
        MetricOperator { rows, ..self.clone() }
    }

    /// Left-multiplies by `diag(d)`.
    pub fn scale_rows(&self, d: &[f64]) -> MetricOperator {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|&(j, a)| (j, a * d[i])).collect())
            .collect();
        MetricOperator { rows, ..self.clone() }
    }

    /// Right-multiplies by `diag(d)`.
    pub fn scale_cols(&self, d: &[f64]) -> MetricOperator {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&(j, a)| (j, a * d[j])).collect())
            .collect();
        MetricOperator { rows, ..self.clone() }
    }

    pub fn with_unit_metrics(mut self) -> MetricOperator {
        self.dom_metric = vec![1.0; self.dom_dim];
        self.cod_metric = vec![1.0; self.rows.len()];
        self
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|row| row.iter().map(|&(_, a)| a.norm()))
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|row| row.iter().map(|&(_, a)| a.norm_sqr()))
            .sum::<f64>()
            .sqrt()
    }

    /// Max absolute row sum of the coordinate matrix.
    pub fn infinity_norm(&self) -> f64 {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(_, a)| a.norm()).sum())
            .fold(0.0, f64::max)
    }

    /// Rows of `M^{1/2} A M^{-1/2}`, the Hermitian coordinate form of a
    /// self-adjoint operator. Requires a square operator with equal metrics.
    pub fn hermitian_rows(&self) -> Result<Vec<Vec<(usize, Complex64)>>> {
        if !self.is_square() {
            return Err(HodgeError::DegreeMismatch { left: self.rows.len(), right: self.dom_dim });
        }
        Ok(self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .map(|&(j, a)| (j, a * (self.cod_metric[i].sqrt() / self.dom_metric[j].sqrt())))
                    .collect()
            })
            .collect())
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        let (r, c) = self.shape();
        let mut out = vec![Complex64::ZERO; r * c];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, a) in row {
                out[i * c + j] = a;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, rhs: &MetricOperator) -> f64 {
        self.sub(rhs).max_abs_entry()
    }
}

/// The coboundary `d^k : C^{k-1} -> C^k` on canonical coordinates:
/// `(d f)(s) = sum_i sign_i f(s minus its i-th vertex)` with `sign_i`
/// equal to `(-1)^i` for skew cochains and `1` for symmetric ones.
pub fn coboundary(complex: &WeightedComplex, k: usize, flavor: Flavor) -> Result<MetricOperator> {
    let n = complex.dimension();
    if k == 0 || k > n {
        return Err(HodgeError::DegreeOutOfRange { k, n });
    }
    let level = complex.level(k);
    let rows = level
        .faces
        .iter()
        .map(|facets| {
            facets
                .iter()
                .enumerate()
                .map(|(i, &t)| (t, Complex64::new(flavor.omission_sign(i), 0.0)))
                .collect()
        })
        .collect();
    Ok(MetricOperator::new(
        k - 1,
        k,
        flavor,
        complex.level(k - 1).len(),
        rows,
        complex.level(k - 1).weights.clone(),
        level.weights.clone(),
    ))
}

/// The adjoint of `d^k` assembled from its local closed form:
/// `(delta g)(t) = (1/m_{k-1}(t)) * sum_z m_k(t + z) * e_z * g(t + z)`,
/// where `e_z` is `(-1)^(position of z in the sorted simplex)` for skew
/// cochains and `1` for symmetric ones. Used to cross-check [`MetricOperator::adjoint`].
pub fn delta_local(complex: &WeightedComplex, k: usize, flavor: Flavor) -> Result<MetricOperator> {
    let n = complex.dimension();
    if k == 0 || k > n {
        return Err(HodgeError::DegreeOutOfRange { k, n });
    }
    let below = complex.level(k - 1);
    let above = complex.level(k);
    let rows = (0..below.len())
        .map(|t| {
            below.cofaces[t]
                .iter()
                .map(|&(z, s)| {
                    let pos = above.simplices[s].binary_search(&z).expect("extension vertex present");
                    let sign = flavor.omission_sign(pos);
                    (s, Complex64::new(sign * above.weights[s] / below.weights[t], 0.0))
                })
                .collect()
        })
        .collect();
    Ok(MetricOperator::new(
        k,
        k - 1,
        flavor,
        above.len(),
        rows,
        above.weights.clone(),
        below.weights.clone(),
    ))
}

/// The degree-`k` Hodge block `d^k delta^k + delta^{k+1} d^{k+1}`, with the
/// conventions `delta^0 = 0` and `d^{n+1} = 0`.
pub fn laplacian_block(complex: &WeightedComplex, k: usize, flavor: Flavor) -> Result<MetricOperator> {
    let n = complex.dimension();
    if k > n {
        return Err(HodgeError::DegreeOutOfRange { k, n });
    }
    let metric = complex.level(k).weights.clone();
    let mut block =
        MetricOperator::zero(k, k, flavor, metric.clone(), metric.clone());
    if k >= 1 {
        let d = coboundary(complex, k, flavor)?;
        block = block.add(&d.compose(&d.adjoint()));
    }
    if k < n {
        let d = coboundary(complex, k + 1, flavor)?;
        block = block.add(&d.adjoint().compose(&d));
    }
    Ok(block)
}

/// Down part `d^k delta^k` alone.
pub fn down_block(complex: &WeightedComplex, k: usize, flavor: Flavor) -> Result<MetricOperator> {
    let metric = complex.level(k).weights.clone();
    if k == 0 {
        return Ok(MetricOperator::zero(0, 0, flavor, metric.clone(), metric));
    }
    let d = coboundary(complex, k, flavor)?;
    Ok(d.compose(&d.adjoint()))
}

/// Up part `delta^{k+1} d^{k+1}` alone.
pub fn up_block(complex: &WeightedComplex, k: usize, flavor: Flavor) -> Result<MetricOperator> {
    let metric = complex.level(k).weights.clone();
    if k >= complex.dimension() {
        return Ok(MetricOperator::zero(k, k, flavor, metric.clone(), metric));
    }
    let d = coboundary(complex, k + 1, flavor)?;
    Ok(d.adjoint().compose(&d))
}

/// Degree-normalized block on unweighted coordinates, assembled as a sum of
/// Gram terms `B- B-^H + B+^H B+` with `B- = M_k^{1/2} d^k M_{k-1}^{-1/2}`
/// and `B+ = M_{k+1}^{1/2} d^{k+1} M_k^{-1/2}`; manifestly Hermitian and
/// positive semidefinite.
pub fn normalized_block(complex: &WeightedComplex, k: usize, flavor: Flavor) -> Result<MetricOperator> {
    let n = complex.dimension();
    if k > n {
        return Err(HodgeError::DegreeOutOfRange { k, n });
    }
    let dim = complex.level(k).len();
    let unit = vec![1.0; dim];
    let mut block = MetricOperator::zero(k, k, flavor, unit.clone(), unit);
    if k >= 1 {
        let b = half_gram_factor(complex, k, flavor)?;
        block = block.add(&b.compose(&b.transpose_conj()));
    }
    if k < n {
        let b = half_gram_factor(complex, k + 1, flavor)?;
        block = block.add(&b.transpose_conj().compose(&b));
    }
    Ok(block)
}

fn half_gram_factor(complex: &WeightedComplex, k: usize, flavor: Flavor) -> Result<MetricOperator> {
    let d = coboundary(complex, k, flavor)?;
    let row_scale: Vec<f64> = complex.level(k).weights.iter().map(|w| w.sqrt()).collect();
    let col_scale: Vec<f64> = complex.level(k - 1).weights.iter().map(|w| 1.0 / w.sqrt()).collect();
    Ok(d.scale_rows(&row_scale).scale_cols(&col_scale).with_unit_metrics())
}

/// The same normalized block obtained the other way, as the similarity
/// `M_k^{1/2} Delta_k M_k^{-1/2}`. Spectra agree with the weighted block by
/// construction; entries agree with [`normalized_block`] up to rounding.
pub fn normalized_block_similarity(
    complex: &WeightedComplex,
    k: usize,
    flavor: Flavor,
) -> Result<MetricOperator> {
    let block = laplacian_block(complex, k, flavor)?;
    let m = &complex.level(k).weights;
    let sqrt: Vec<f64> = m.iter().map(|w| w.sqrt()).collect();
    let inv_sqrt: Vec<f64> = m.iter().map(|w| 1.0 / w.sqrt()).collect();
    Ok(block.scale_rows(&sqrt).scale_cols(&inv_sqrt).with_unit_metrics())
}

/// Max residual of `<Delta u, u> = |delta^k u|^2 + |d^{k+1} u|^2` over
/// `trials` random unit-norm cochains with a fixed seed.
pub fn energy_identity_check(
    complex: &WeightedComplex,
    k: usize,
    flavor: Flavor,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    let n = complex.dimension();
    let block = laplacian_block(complex, k, flavor)?;
    let down = (k >= 1).then(|| coboundary(complex, k, flavor)).transpose()?;
    let up = (k < n).then(|| coboundary(complex, k + 1, flavor)).transpose()?;
    let metric = WeightedMetric::of(complex, k);
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let mut u = crate::sample::random_cochain(complex, k, flavor, &mut rng);
        let scale = u.norm(&metric)?;
        if scale > 0.0 {
            for v in &mut u.values {
                *v /= scale;
            }
        }
        let du = Cochain::from_values(k, flavor, block.apply(&u.values));
        let lhs = crate::cochain::inner_product(&du, &u, &metric)?.re;
        let mut rhs = 0.0;
        if let Some(d) = &down {
            let delta_u = d.adjoint().apply(&u.values);
            rhs += delta_u
                .iter()
                .zip(&complex.level(k - 1).weights)
                .map(|(v, m)| m * v.norm_sqr())
                .sum::<f64>();
        }
        if let Some(d) = &up {
            let d_u = d.apply(&u.values);
            rhs += d_u
                .iter()
                .zip(&complex.level(k + 1).weights)
                .map(|(v, m)| m * v.norm_sqr())
                .sum::<f64>();
        }
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

/// Operator norm of `d^{k+1} . d^k` in the Frobenius and max-entry senses,
/// for reporting how far a flavor is from a chain complex.
pub struct ComposeReport {
    pub max_abs: f64,
    pub frobenius: f64,
}

pub fn d_squared(complex: &WeightedComplex, k: usize, flavor: Flavor) -> Result<ComposeReport> {
    let n = complex.dimension();
    if k == 0 || k + 1 > n {
        return Err(HodgeError::DegreeOutOfRange { k, n });
    }
    let first = coboundary(complex, k, flavor)?;
    let second = coboundary(complex, k + 1, flavor)?;
    let prod = second.compose(&first);
    Ok(ComposeReport { max_abs: prod.max_abs_entry(), frobenius: prod.frobenius_norm() })
}

/// A diagonal sign vector under which every off-diagonal entry of the
/// reduced top block equals `target * s_i * s_j * w(i, j)`: `target = -1`
/// is the line-Laplacian form `Q - A`, `target = +1` the signless `Q + A`.
pub struct SignGauge {
    pub target: f64,
    pub signs: Vec<f64>,
}

/// Result of conjugating the top block by the diagonal scaling
/// `(U f)(s) = m_n(s)^{1/2} f(s)`: an adjacency part whose entry magnitudes
/// equal the line-complex kernel `w`, plus the diagonal potential `q`.
pub struct TopReduction {
    /// Dense `M^{1/2} Delta_n M^{-1/2}` in canonical coordinates.
    pub matrix: Vec<Complex64>,
    pub dim: usize,
    /// The potential `q(s)` (diagonal of the reduced block).
    pub potential: Vec<f64>,
    /// Expected off-diagonal magnitudes, rows of the line-complex kernel.
    pub kernel: Vec<Vec<(usize, f64)>>,
    /// The scaling diagonal `m_n^{1/2}`.
    pub scaling: Vec<f64>,
    /// Diagonal conjugation to a pure adjacency-plus-potential form, when
    /// one exists. The symmetric flavor always carries the `+1` form with
    /// trivial signs; a skew orientation pattern can frustrate both targets
    /// (the triangle-with-pendant graph already does).
    pub gauge: Option<SignGauge>,
}

impl TopReduction {
    /// Max deviation of the reduced diagonal from the potential.
    pub fn diag_residual(&self) -> f64 {
        (0..self.dim)
            .map(|i| (self.matrix[i * self.dim + i] - self.potential[i]).norm())
            .fold(0.0, f64::max)
    }

    /// Max deviation of off-diagonal magnitudes from the kernel `w`.
    pub fn offdiag_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            let mut expected = vec![0.0; self.dim];
            for &(j, w) in &self.kernel[i] {
                expected[j] += w;
            }
            for (j, want) in expected.iter().enumerate() {
                if i != j {
                    worst = worst.max((self.matrix[i * self.dim + j].norm() - want).abs());
                }
            }
        }
        worst
    }
}

pub fn top_reduction(complex: &WeightedComplex, flavor: Flavor) -> Result<TopReduction> {
    let n = complex.dimension();
    let top = complex.level(n);
    if top.is_empty() {
        return Err(HodgeError::NoTopSimplices);
    }
    let block = normalized_block_similarity(complex, n, flavor)?;
    let dim = top.len();
    let matrix = block.to_dense();
    let lc = complex.line_complex()?;
    let kernel: Vec<Vec<(usize, f64)>> = lc
        .adjacency
        .iter()
        .map(|nbs| nbs.iter().map(|nb| (nb.node, nb.w)).collect())
        .collect();
    let scaling = top.weights.iter().map(|w| w.sqrt()).collect();

    // parity BFS over the line-complex adjacency, for each target form
    let try_gauge = |target: f64| -> Option<Vec<f64>> {
        let mut signs = vec![0.0f64; dim];
        for start in 0..dim {
            if signs[start] != 0.0 {
                continue;
            }
            signs[start] = 1.0;
            let mut queue = vec![start];
            while let Some(i) = queue.pop() {
                for &(j, w) in &kernel[i] {
                    if w == 0.0 {
                        continue;
                    }
                    let e = matrix[i * dim + j].re;
                    if (e.abs() - w).abs() > 1e-9 * (1.0 + w) {
                        return None;
                    }
                    // want e = target * s_i * s_j * w
                    let needed = if e * target * signs[i] >= 0.0 { 1.0 } else { -1.0 };
                    if signs[j] == 0.0 {
                        signs[j] = needed;
                        queue.push(j);
                    } else if (signs[j] - needed).abs() > 0.5 {
                        return None;
                    }
                }
            }
        }
        Some(signs)
    };
    // try the flavor's natural form first
    let (first, second) = match flavor {
        Flavor::Skew => (-1.0, 1.0),
        Flavor::Sym => (1.0, -1.0),
    };
    let gauge = try_gauge(first)
        .map(|signs| SignGauge { target: first, signs })
        .or_else(|| try_gauge(second).map(|signs| SignGauge { target: second, signs }));

    Ok(TopReduction {
        matrix,
        dim,
        potential: lc.q.clone(),
        kernel,
        scaling,
        gauge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, WeightRule};
    use crate::graph::WeightedGraph;
    use crate::sample;

    fn unit(graph: WeightedGraph, n: usize) -> WeightedComplex {
        build_complex(graph, n, &WeightRule::Constant(1.0)).unwrap()
    }

    #[test]
    fn gradient_on_a_single_edge() {
        let c = unit(WeightedGraph::path(2), 1);
        let d = coboundary(&c, 1, Flavor::Skew).unwrap();
        let f = Cochain::indicator(&c, Flavor::Skew, &[0]).unwrap();
        // (d f)([0, 1]) = f([1]) - f([0]) = -1
        assert_eq!(d.apply(&f.values), vec![Complex64::new(-1.0, 0.0)]);
    }

    #[test]
    fn constants_die_under_skew_but_not_sym() {
        let c = unit(WeightedGraph::cycle(5), 1);
        let ones = vec![Complex64::new(2.5, 0.0); 5];
        let skew = coboundary(&c, 1, Flavor::Skew).unwrap().apply(&ones);
        assert!(skew.iter().all(|v| v.norm() < 1e-15));
        let sym = coboundary(&c, 1, Flavor::Sym).unwrap().apply(&ones);
        assert!(sym.iter().all(|v| (v - Complex64::new(5.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn coboundary_rejects_out_of_range() {
        let c = unit(WeightedGraph::complete(3), 2);
        assert!(matches!(coboundary(&c, 0, Flavor::Skew), Err(HodgeError::DegreeOutOfRange { .. })));
        assert!(matches!(coboundary(&c, 3, Flavor::Skew), Err(HodgeError::DegreeOutOfRange { .. })));
    }

    /// Oracle value: with unit weights the adjoint of the edge coboundary
    /// sends the indicator of [0,1] to -1 at vertex 0 (the edge leaves 0)
    /// and +1 at vertex 1.
    #[test]
    fn delta_of_edge_indicator_on_k3() {
        let c = unit(WeightedGraph::complete(3), 2);
        let delta = coboundary(&c, 1, Flavor::Skew).unwrap().adjoint();
        let g = Cochain::indicator(&c, Flavor::Skew, &[0, 1]).unwrap();
        let out = delta.apply(&g.values);
        assert_eq!(out[0], Complex64::new(-1.0, 0.0));
        assert_eq!(out[1], Complex64::new(1.0, 0.0));
        assert_eq!(out[2], Complex64::ZERO);
    }

    #[test]
    fn adjoint_is_an_involution() {
        let c = sample::random_complex_instance(7);
        for k in 1..=c.dimension() {
            let d = coboundary(&c, k, Flavor::Skew).unwrap();
            assert!(d.adjoint().adjoint().max_abs_diff(&d) < 1e-14);
        }
    }

    #[test]
    fn metric_adjoint_matches_local_closed_form() {
        for seed in [1, 2, 3, 11, 12] {
            let c = sample::random_complex_instance(seed);
            for flavor in [Flavor::Skew, Flavor::Sym] {
                for k in 1..=c.dimension() {
                    let via_metric = coboundary(&c, k, flavor).unwrap().adjoint();
                    let via_local = delta_local(&c, k, flavor).unwrap();
                    assert!(
                        via_metric.max_abs_diff(&via_local) < 1e-12,
                        "seed {seed} k {k} {flavor}"
                    );
                }
            }
        }
    }

    #[test]
    fn green_identity_on_k4() {
        let c = unit(WeightedGraph::complete(4), 3);
        let mut rng = SplitMix64::new(99);
        for flavor in [Flavor::Skew, Flavor::Sym] {
            for k in 1..=3usize {
                let d = coboundary(&c, k, flavor).unwrap();
                let delta = d.adjoint();
                let m_hi = WeightedMetric::of(&c, k);
                let m_lo = WeightedMetric::of(&c, k - 1);
                for _ in 0..100 {
                    let f = sample::random_cochain(&c, k - 1, flavor, &mut rng);
                    let g = sample::random_cochain(&c, k, flavor, &mut rng);
                    let df = Cochain::from_values(k, flavor, d.apply(&f.values));
                    let dg = Cochain::from_values(k - 1, flavor, delta.apply(&g.values));
                    let lhs = crate::cochain::inner_product(&df, &g, &m_hi).unwrap();
                    let rhs = crate::cochain::inner_product(&f, &dg, &m_lo).unwrap();
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn skew_chain_property_and_sym_failure() {
        let c = unit(WeightedGraph::complete(4), 3);
        for k in 1..=2usize {
            assert!(d_squared(&c, k, Flavor::Skew).unwrap().max_abs < 1e-12);
        }
        // the unsigned sums do not telescope: on a filled triangle the
        // composition is visibly nonzero
        let k3 = unit(WeightedGraph::complete(3), 2);
        assert!(d_squared(&k3, 1, Flavor::Sym).unwrap().max_abs > 1.0);
    }

    #[test]
    fn laplacian_spectra_on_small_complete_complexes() {
        let k3 = unit(WeightedGraph::complete(3), 2);
        let vertex = laplacian_block(&k3, 0, Flavor::Skew).unwrap();
        let spec = crate::spectral::eigenvalues_of(&vertex, 1e-11).unwrap();
        let expected = [0.0, 3.0, 3.0];
        for (a, b) in spec.iter().zip(expected) {
            assert!((a - b).abs() < 1e-9, "{spec:?}");
        }
        let edge = laplacian_block(&k3, 1, Flavor::Skew).unwrap();
        let spec = crate::spectral::eigenvalues_of(&edge, 1e-11).unwrap();
        for v in &spec {
            assert!((v - 3.0).abs() < 1e-9, "{spec:?}");
        }
    }

    #[test]
    fn top_block_is_pure_down() {
        let c = sample::random_complex_instance(21);
        let n = c.dimension();
        let full = laplacian_block(&c, n, Flavor::Skew).unwrap();
        let down = down_block(&c, n, Flavor::Skew).unwrap();
        assert!(full.max_abs_diff(&down) < 1e-14);
    }

    #[test]
    fn energy_identity_holds() {
        let k4 = unit(WeightedGraph::complete(4), 3);
        assert!(energy_identity_check(&k4, 1, Flavor::Skew, 100, 0).unwrap() < 1e-12);
        let k3 = unit(WeightedGraph::complete(3), 2);
        assert!(energy_identity_check(&k3, 1, Flavor::Sym, 50, 0).unwrap() < 1e-12);
        // the zero cochain gives a zero residual by inspection of the form
        let z = Cochain::zero(&k4, 1, Flavor::Skew);
        let block = laplacian_block(&k4, 1, Flavor::Skew).unwrap();
        assert!(block.apply(&z.values).iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn unit_weights_make_normalization_trivial() {
        let c = unit(WeightedGraph::complete(4), 2);
        for k in 0..=2usize {
            let plain = laplacian_block(&c, k, Flavor::Skew).unwrap();
            let norm = normalized_block(&c, k, Flavor::Skew).unwrap();
            assert!(plain.max_abs_diff(&norm) < 1e-12);
        }
    }

    #[test]
    fn two_normalized_routes_agree() {
        for seed in [5, 6, 7] {
            let c = sample::random_complex_instance(seed);
            for flavor in [Flavor::Skew, Flavor::Sym] {
                for k in 0..=c.dimension() {
                    let gram = normalized_block(&c, k, flavor).unwrap();
                    let sim = normalized_block_similarity(&c, k, flavor).unwrap();
                    assert!(gram.max_abs_diff(&sim) < 1e-12, "seed {seed} k {k} {flavor}");
                }
            }
        }
    }

    #[test]
    fn normalized_spectrum_matches_weighted_spectrum() {
        let mut weights = std::collections::HashMap::new();
        weights.insert(vec![0u64, 1, 2], 1.7);
        let g = WeightedGraph::from_parts(
            vec![(0, 0.8), (1, 1.9), (2, 1.3)],
            vec![(0, 1, 1.4), (0, 2, 0.6), (1, 2, 2.0)],
        )
        .unwrap();
        let c = build_complex(g, 2, &WeightRule::Explicit { weights, default: 1.0 }).unwrap();
        for k in 0..=2usize {
            let plain = crate::spectral::eigenvalues_of(&laplacian_block(&c, k, Flavor::Skew).unwrap(), 1e-11).unwrap();
            let norm = crate::spectral::eigenvalues_of(&normalized_block(&c, k, Flavor::Skew).unwrap(), 1e-11).unwrap();
            for (a, b) in plain.iter().zip(&norm) {
                assert!((a - b).abs() < 1e-9, "k={k}: {plain:?} vs {norm:?}");
            }
        }
    }

    #[test]
    fn top_reduction_on_the_weighted_tetra() {
        let fx = sample::weighted_tetra_fixture();
        for flavor in [Flavor::Skew, Flavor::Sym] {
            let red = top_reduction(&fx.complex, flavor).unwrap();
            assert!(red.diag_residual() < 1e-12, "diagonal is the potential");
            assert!(red.offdiag_residual() < 1e-12, "couplings have magnitude w");
            assert!((red.potential[fx.center] - 6.0).abs() < 1e-12);
        }
    }

    #[test]
    fn top_reduction_single_simplex_is_potential_only() {
        let c = unit(WeightedGraph::complete(3), 2);
        let red = top_reduction(&c, Flavor::Skew).unwrap();
        assert_eq!(red.dim, 1);
        assert!((red.matrix[0] - Complex64::new(3.0, 0.0)).norm() < 1e-12);
        assert!(red.kernel[0].is_empty());
        assert!(red.gauge.is_some());
    }

    #[test]
    fn top_reduction_gauge_forms() {
        // symmetric blocks are already in the signless form
        let k3 = unit(WeightedGraph::complete(3), 2);
        let red = top_reduction(&k3, Flavor::Sym).unwrap();
        let g = red.gauge.expect("sym gauge");
        assert_eq!(g.target, 1.0);

        // the skew edge block of a star couples all edges through one
        // vertex with equal signs: the signless form again
        let star = unit(WeightedGraph::unit(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(), 1);
        let red = top_reduction(&star, Flavor::Skew).unwrap();
        assert_eq!(red.gauge.expect("star gauge").target, 1.0);

        // a triangle with a pendant edge frustrates both target forms
        let paw = unit(WeightedGraph::unit(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap(), 1);
        assert!(top_reduction(&paw, Flavor::Skew).unwrap().gauge.is_none());
        assert!(top_reduction(&paw, Flavor::Sym).unwrap().gauge.is_some());

        // magnitudes still match the kernel even without a gauge
        let red = top_reduction(&paw, Flavor::Skew).unwrap();
        assert!(red.offdiag_residual() < 1e-12);
        assert!(red.diag_residual() < 1e-12);
    }

    /// Rank arithmetic of the decomposition at every degree: the kernel of
    /// the block is everything orthogonal to both image spaces, so its
    /// dimension is `N_k - rank(down) - rank(up)` for the skew flavor.
    #[test]
    fn kernel_dimension_by_rank_arithmetic() {
        for seed in [2, 9, 33, 47] {
            let c = sample::random_complex_instance(seed);
            for k in 0..=c.dimension() {
                let nk = c.level(k).len();
                if nk == 0 {
                    continue;
                }
                let count_above = |op: &MetricOperator| -> usize {
                    crate::spectral::eigenvalues_of(op, 1e-11)
                        .unwrap()
                        .iter()
                        .filter(|v| v.abs() > 1e-8)
                        .count()
                };
                let r_down = count_above(&down_block(&c, k, Flavor::Skew).unwrap());
                let r_up = count_above(&up_block(&c, k, Flavor::Skew).unwrap());
                let full = laplacian_block(&c, k, Flavor::Skew).unwrap();
                let kernel_dim = crate::spectral::eigenvalues_of(&full, 1e-11)
                    .unwrap()
                    .iter()
                    .filter(|v| v.abs() <= 1e-8)
                    .count();
                assert_eq!(kernel_dim, nk - r_down - r_up, "seed {seed} degree {k}");
            }
        }
    }

    #[test]
    fn tetra_mesh_interior_action_is_line_laplacian() {
        let fx = sample::unit_tetra_fixture();
        let lc = fx.complex.line_complex().unwrap();
        let mut u = vec![0.0; lc.node_count()];
        u[fx.center] = 3.0;
        for (j, &nb) in fx.neighbors.iter().enumerate() {
            u[nb] = [1.0, -2.0, 0.5, 4.0][j];
        }
        let out = lc.apply(&u);
        assert!((out[fx.center] - (4.0 * 3.0 - (1.0 - 2.0 + 0.5 + 4.0))).abs() < 1e-12);
    }
}
