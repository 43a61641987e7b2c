//! Periodic lattices, Bloch symbols of the normalized edge block, and
//! Brillouin-zone sup-norm scans.
//!
//! A cell is purely combinatorial: vertex orbits, edge orbits `(tail,
//! head, shift)`, and optional triangle orbits with integer shifts. The
//! fiber at quasimomentum `theta` is the Gram sum
//! `b0 b0^H + b1^H b1` where `b0` is the twisted vertex-to-edge incidence
//! of the normalized coboundary and `b1` the twisted edge-to-triangle
//! incidence; it is Hermitian and positive semidefinite by construction.
//!
//! Flavor matters on non-bipartite lattices: the skew edge block of the
//! triangular lattice tops out at 9 while the symmetric one reaches 12,
//! and only the latter reproduces the published lattice constants (which
//! are `2d` on every `d`-regular example). [`compare_table`] therefore
//! reports the symmetric graph-block value as the exact constant and lists
//! the other variants alongside.

use crate::complex::{build_complex, WeightRule, WeightedComplex};
use crate::error::{HodgeError, Result};
use crate::graph::WeightedGraph;
use crate::spectral::HermitianMatrix;
use crate::Flavor;
use num_complex::Complex64;
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct EdgeOrbit {
    pub tail: usize,
    pub head: usize,
    /// Translation from the tail's cell to the head's cell.
    pub shift: Vec<i64>,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct TriangleOrbit {
    /// Three `(vertex orbit, shift)` corners; the first shift is zero.
    pub corners: [(usize, Vec<i64>); 3],
    pub weight: f64,
}

#[derive(Debug, Clone, Copy)]
struct FaceRef {
    edge: usize,
    /// Which cell the matched edge instance lives in.
    shift_idx: usize, // 0, 1, or 2: index into the corner whose shift anchors the edge
    reversed: bool,
}

/// A fundamental-cell description of a periodic graph or 2-complex.
#[derive(Debug, Clone)]
pub struct PeriodicCell {
    pub dim: usize,
    pub vertex_weights: Vec<f64>,
    pub edges: Vec<EdgeOrbit>,
    pub triangles: Vec<TriangleOrbit>,
    faces: Vec<[FaceRef; 3]>,
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl PeriodicCell {
    pub fn new(
        dim: usize,
        vertex_weights: Vec<f64>,
        edges: Vec<EdgeOrbit>,
        triangles: Vec<TriangleOrbit>,
    ) -> Result<PeriodicCell> {
        if dim == 0 || vertex_weights.is_empty() {
            return Err(HodgeError::InvalidCell { reason: "need a positive dimension and at least one vertex orbit".into() });
        }
        for (i, w) in vertex_weights.iter().enumerate() {
            if *w <= 0.0 {
                return Err(HodgeError::NonPositiveWeight { context: format!("vertex orbit {i}"), value: *w });
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if e.tail >= vertex_weights.len() || e.head >= vertex_weights.len() {
                return Err(HodgeError::InvalidCell { reason: format!("edge orbit {i} references a missing vertex orbit") });
            }
            if e.shift.len() != dim {
                return Err(HodgeError::InvalidCell { reason: format!("edge orbit {i} has a shift of wrong rank") });
            }
            if e.weight <= 0.0 {
                return Err(HodgeError::NonPositiveWeight { context: format!("edge orbit {i}"), value: e.weight });
            }
            if e.tail == e.head && e.shift.iter().all(|&x| x == 0) {
                return Err(HodgeError::InvalidCell { reason: format!("edge orbit {i} is a loop") });
            }
        }
        let mut cell = PeriodicCell { dim, vertex_weights, edges, triangles, faces: Vec::new() };
        cell.faces = cell
            .triangles
            .iter()
            .enumerate()
            .map(|(t, tri)| cell.match_faces(t, tri))
            .collect::<Result<_>>()?;
        Ok(cell)
    }

    fn match_faces(&self, t: usize, tri: &TriangleOrbit) -> Result<[FaceRef; 3]> {
        if tri.weight <= 0.0 {
            return Err(HodgeError::NonPositiveWeight { context: format!("triangle orbit {t}"), value: tri.weight });
        }
        let mut out = [FaceRef { edge: 0, shift_idx: 0, reversed: false }; 3];
        for (i, slot) in out.iter_mut().enumerate() {
            let rest: Vec<usize> = (0..3).filter(|&j| j != i).collect();
            let (pj, dj) = (&tri.corners[rest[0]].0, &tri.corners[rest[0]].1);
            let (pk, dk) = (&tri.corners[rest[1]].0, &tri.corners[rest[1]].1);
            let mut found = None;
            for (ei, e) in self.edges.iter().enumerate() {
                if *pj == e.tail && *pk == e.head && sub(dk, dj) == e.shift {
                    found = Some(FaceRef { edge: ei, shift_idx: rest[0], reversed: false });
                    break;
                }
                if *pj == e.head && *pk == e.tail && sub(dj, dk) == e.shift {
                    found = Some(FaceRef { edge: ei, shift_idx: rest[1], reversed: true });
                    break;
                }
            }
            *slot = found.ok_or_else(|| HodgeError::InvalidCell {
                reason: format!("face {i} of triangle orbit {t} matches no edge orbit"),
            })?;
        }
        Ok(out)
    }

    /// Maximum vertex-orbit coordination number (the `d` of the tables).
    pub fn coordination(&self) -> usize {
        (0..self.vertex_weights.len())
            .map(|u| {
                self.edges
                    .iter()
                    .map(|e| (e.tail == u) as usize + (e.head == u) as usize)
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }

    pub fn edge_orbit_count(&self) -> usize {
        self.edges.len()
    }

    /// The 1-skeleton cell: same orbits, triangle data dropped.
    pub fn without_triangles(&self) -> PeriodicCell {
        PeriodicCell {
            dim: self.dim,
            vertex_weights: self.vertex_weights.clone(),
            edges: self.edges.clone(),
            triangles: Vec::new(),
            faces: Vec::new(),
        }
    }
}

/// Single-orbit (Bravais) cell from neighbor steps; triangles are
/// enumerated from the steps when requested.
fn bravais(dim: usize, steps: &[&[i64]], with_triangles: bool) -> Result<PeriodicCell> {
    let edges = steps
        .iter()
        .map(|s| EdgeOrbit { tail: 0, head: 0, shift: s.to_vec(), weight: 1.0 })
        .collect();
    let mut triangles = Vec::new();
    if with_triangles {
        let mut signed: Vec<Vec<i64>> = Vec::new();
        for s in steps {
            signed.push(s.to_vec());
            signed.push(s.iter().map(|x| -x).collect());
        }
        let mut seen = std::collections::HashSet::new();
        for i in 0..signed.len() {
            for j in (i + 1)..signed.len() {
                let diff = sub(&signed[i], &signed[j]);
                if signed.contains(&diff) {
                    let mut pts = vec![vec![0i64; dim], signed[i].clone(), signed[j].clone()];
                    let base = pts.iter().min().unwrap().clone();
                    for p in &mut pts {
                        *p = sub(p, &base);
                    }
                    pts.sort();
                    if seen.insert(pts.clone()) {
                        triangles.push(TriangleOrbit {
                            corners: [
                                (0, pts[0].clone()),
                                (0, pts[1].clone()),
                                (0, pts[2].clone()),
                            ],
                            weight: 1.0,
                        });
                    }
                }
            }
        }
    }
    PeriodicCell::new(dim, vec![1.0], edges, triangles)
}

/// The built-in lattice catalog. Cells for lattices whose graphs contain
/// 3-cliques (triangular, fcc, kagome) carry their triangle orbits; strip
/// them with [`PeriodicCell::without_triangles`] for the pure graph block.
pub fn catalog(name: &str) -> Result<PeriodicCell> {
    match name {
        "line" => bravais(1, &[&[1]], false),
        "square" => bravais(2, &[&[1, 0], &[0, 1]], false),
        "triangular" => bravais(2, &[&[1, 0], &[0, 1], &[1, 1]], true),
        "cubic" => bravais(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], false),
        "bcc" => bravais(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]], false),
        "fcc" => bravais(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 1, -1], &[1, 0, -1], &[1, -1, 0]],
            true,
        ),
        "hypercubic4" => {
            bravais(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]], false)
        }
        "diamond" => PeriodicCell::new(
            3,
            vec![1.0, 1.0],
            vec![
                EdgeOrbit { tail: 0, head: 1, shift: vec![0, 0, 0], weight: 1.0 },
                EdgeOrbit { tail: 0, head: 1, shift: vec![-1, 0, 0], weight: 1.0 },
                EdgeOrbit { tail: 0, head: 1, shift: vec![0, -1, 0], weight: 1.0 },
                EdgeOrbit { tail: 0, head: 1, shift: vec![0, 0, -1], weight: 1.0 },
            ],
            Vec::new(),
        ),
        "kagome" => PeriodicCell::new(
            2,
            vec![1.0, 1.0, 1.0],
            vec![
                EdgeOrbit { tail: 0, head: 1, shift: vec![0, 0], weight: 1.0 },
                EdgeOrbit { tail: 0, head: 2, shift: vec![0, 0], weight: 1.0 },
                EdgeOrbit { tail: 1, head: 2, shift: vec![0, 0], weight: 1.0 },
                EdgeOrbit { tail: 0, head: 1, shift: vec![1, -1], weight: 1.0 },
                EdgeOrbit { tail: 2, head: 0, shift: vec![0, 1], weight: 1.0 },
                EdgeOrbit { tail: 2, head: 1, shift: vec![1, 0], weight: 1.0 },
            ],
            vec![
                TriangleOrbit {
                    corners: [(0, vec![0, 0]), (1, vec![0, 0]), (2, vec![0, 0])],
                    weight: 1.0,
                },
                TriangleOrbit {
                    corners: [(2, vec![0, 0]), (0, vec![0, 1]), (1, vec![1, 0])],
                    weight: 1.0,
                },
            ],
        ),
        other => Err(HodgeError::UnknownLattice { name: other.to_string() }),
    }
}

pub const CATALOG_NAMES: [&str; 9] =
    ["line", "square", "triangular", "cubic", "bcc", "fcc", "kagome", "hypercubic4", "diamond"];

/// One Bloch fiber.
#[derive(Debug, Clone)]
pub struct BlochSymbol {
    pub theta: Vec<f64>,
    pub matrix: HermitianMatrix,
}

fn phase(theta: &[f64], shift: &[i64]) -> Complex64 {
    let arg: f64 = theta.iter().zip(shift).map(|(t, &s)| t * s as f64).sum();
    Complex64::new(0.0, arg).exp()
}

/// Assembles the fiber `sigma(theta) = b0 b0^H + b1^H b1` of the
/// normalized edge block. The up part is present exactly when the cell
/// carries triangle orbits.
pub fn symbol(cell: &PeriodicCell, theta: &[f64], flavor: Flavor) -> Result<BlochSymbol> {
    if theta.len() != cell.dim {
        return Err(HodgeError::InvalidCell { reason: "theta has the wrong rank".into() });
    }
    let n0 = cell.vertex_weights.len();
    let n1 = cell.edges.len();
    let n2 = cell.triangles.len();
    let tail_sign = match flavor {
        Flavor::Skew => -1.0,
        Flavor::Sym => 1.0,
    };

    let mut b0 = vec![Complex64::ZERO; n1 * n0];
    for (r, e) in cell.edges.iter().enumerate() {
        let scale = e.weight.sqrt();
        b0[r * n0 + e.tail] += Complex64::new(tail_sign * scale / cell.vertex_weights[e.tail].sqrt(), 0.0);
        b0[r * n0 + e.head] +=
            phase(theta, &e.shift) * (scale / cell.vertex_weights[e.head].sqrt());
    }

    let mut b1 = vec![Complex64::ZERO; n2 * n1];
    for (r, tri) in cell.triangles.iter().enumerate() {
        let scale = tri.weight.sqrt();
        for (i, face) in cell.faces[r].iter().enumerate() {
            let e = &cell.edges[face.edge];
            let orient = if face.reversed { tail_sign } else { 1.0 };
            let anchor = &tri.corners[face.shift_idx].1;
            b1[r * n1 + face.edge] += phase(theta, anchor)
                * (flavor.omission_sign(i) * orient * scale / e.weight.sqrt());
        }
    }

    let mut sigma = vec![Complex64::ZERO; n1 * n1];
    for i in 0..n1 {
        for j in 0..n1 {
            let mut acc = Complex64::ZERO;
            for v in 0..n0 {
                acc += b0[i * n0 + v] * b0[j * n0 + v].conj();
            }
            for t in 0..n2 {
                acc += b1[t * n1 + i].conj() * b1[t * n1 + j];
            }
            sigma[i * n1 + j] = acc;
        }
    }
    Ok(BlochSymbol { theta: theta.to_vec(), matrix: HermitianMatrix::new(n1, sigma)? })
}

fn top_eigenvalue(cell: &PeriodicCell, theta: &[f64], flavor: Flavor) -> Result<f64> {
    let s = symbol(cell, theta, flavor)?;
    let eig = s.matrix.eig(1e-10)?;
    Ok(eig.eigenvalues.last().copied().unwrap_or(0.0))
}

/// Result of a Brillouin-zone scan.
#[derive(Debug, Clone)]
pub struct SupNorm {
    pub value: f64,
    /// Value before local refinement (the plain grid maximum).
    pub coarse_value: f64,
    pub argmax: Vec<f64>,
    pub grid: usize,
    pub evaluations: usize,
}

/// Coarse grid scan of the top fiber eigenvalue followed by a shrinking
/// pattern search around the argmax. The scan partitions the grid across
/// `threads` workers (0 picks the machine default) and merges by value
/// then lowest index, so the result does not depend on the partitioning.
pub fn sup_norm(
    cell: &PeriodicCell,
    grid: usize,
    refine_tol: f64,
    flavor: Flavor,
    threads: usize,
) -> Result<SupNorm> {
    if grid < 8 {
        return Err(HodgeError::InvalidCell { reason: format!("grid {grid} is below the minimum of 8") });
    }
    let d = cell.dim;
    let total: usize = grid.pow(d as u32);
    let step = 2.0 * std::f64::consts::PI / grid as f64;
    let theta_of = |flat: usize| -> Vec<f64> {
        let mut idx = flat;
        (0..d)
            .map(|_| {
                let q = idx % grid;
                idx /= grid;
                q as f64 * step
            })
            .collect()
    };

    let workers = if threads == 0 {
        std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)
    } else {
        threads
    }
    .clamp(1, 64)
    .min(total);

    let chunk = total.div_ceil(workers);
    let mut best: (f64, usize) = (f64::MIN, 0);
    let results: Vec<Result<(f64, usize)>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(total);
            let theta_of = &theta_of;
            handles.push(scope.spawn(move || {
                let mut local: (f64, usize) = (f64::MIN, lo);
                for flat in lo..hi {
                    let v = top_eigenvalue(cell, &theta_of(flat), flavor)?;
                    if v > local.0 {
                        local = (v, flat);
                    }
                }
                Ok(local)
            }));
        }
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    for r in results {
        let (v, flat) = r?;
        if v > best.0 || (v == best.0 && flat < best.1) {
            best = (v, flat);
        }
    }
    let coarse_value = best.0;
    let mut evaluations = total;

    // pattern search around the grid argmax
    let mut center = theta_of(best.1);
    let mut value = coarse_value;
    let mut h = step;
    let offsets: Vec<Vec<f64>> = {
        let mut out = vec![vec![]];
        for _ in 0..d {
            let mut next = Vec::new();
            for base in &out {
                for o in [-1.0, 0.0, 1.0] {
                    let mut b = base.clone();
                    b.push(o);
                    next.push(b);
                }
            }
            out = next;
        }
        out
    };
    let mut last_cycle_value = value;
    while h > 1e-12 {
        let mut improved = false;
        for off in &offsets {
            let cand: Vec<f64> =
                center.iter().zip(off).map(|(c, o)| c + h * o).collect();
            let v = top_eigenvalue(cell, &cand, flavor)?;
            evaluations += 1;
            if v > value {
                value = v;
                center = cand;
                improved = true;
            }
        }
        if !improved {
            h *= 0.5;
            if (value - last_cycle_value).abs() < refine_tol && h < step / 1024.0 {
                break;
            }
            last_cycle_value = value;
        }
    }

    let argmax = center.iter().map(|t| t.rem_euclid(2.0 * std::f64::consts::PI)).collect();
    Ok(SupNorm { value, coarse_value, argmax, grid, evaluations })
}

/// A row of the lattice comparison table.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub lattice: String,
    /// Coordination number `d`.
    pub degree: usize,
    /// `2 (d - 1)`, the line-graph degree of a `d`-regular graph.
    pub line_degree: usize,
    /// `4 (d - 1)`.
    pub universal_bound: f64,
    /// Edge-block sup-norm of the symmetric graph block (this is the column
    /// that matches the published exact constants).
    pub bloch_sym: f64,
    /// Skew graph block, for comparison; equal on bipartite lattices.
    pub bloch_skew: f64,
    /// Symmetric block including the triangle up part, when the lattice has
    /// triangle orbits.
    pub bloch_sym_with_up: Option<f64>,
    pub ratio: f64,
    pub argmax: Vec<f64>,
}

/// Reproduces the lattice tables: universal `4(d-1)` bounds next to scanned
/// Bloch constants, with both flavors and both up-part variants reported.
pub fn compare_table(
    names: &[&str],
    grid_2d: usize,
    grid_high: usize,
    refine_tol: f64,
    threads: usize,
) -> Result<Vec<TableRow>> {
    names
        .iter()
        .map(|&name| {
            let cell = catalog(name)?;
            let grid = if cell.dim <= 2 { grid_2d } else { grid_high };
            let graph_cell = cell.without_triangles();
            let sym = sup_norm(&graph_cell, grid, refine_tol, Flavor::Sym, threads)?;
            let skew = sup_norm(&graph_cell, grid, refine_tol, Flavor::Skew, threads)?;
            let with_up = if cell.triangles.is_empty() {
                None
            } else {
                Some(sup_norm(&cell, grid, refine_tol, Flavor::Sym, threads)?.value)
            };
            let d = cell.coordination();
            let universal = 4.0 * d.saturating_sub(1) as f64;
            Ok(TableRow {
                lattice: name.to_string(),
                degree: d,
                line_degree: 2 * d.saturating_sub(1),
                universal_bound: universal,
                bloch_sym: sym.value,
                bloch_skew: skew.value,
                bloch_sym_with_up: with_up,
                ratio: universal / sym.value,
                argmax: sym.argmax,
            })
        })
        .collect()
}

/// Quotient of the lattice by `N Z^d`: the finite torus graph plus the
/// explicit triangle weights for clique expansion. Fails if distinct orbit
/// instances collide (the torus is too small for the cell's shifts).
pub fn torus_quotient(
    cell: &PeriodicCell,
    period: usize,
) -> Result<(WeightedGraph, HashMap<Vec<u64>, f64>)> {
    if period < 2 {
        return Err(HodgeError::QuotientCollision { reason: "period must be at least 2".into() });
    }
    let d = cell.dim;
    let n0 = cell.vertex_weights.len();
    let cells: usize = period.pow(d as u32);
    let flat = |r: &[i64]| -> usize {
        let mut acc = 0usize;
        for &x in r.iter().rev() {
            acc = acc * period + (x.rem_euclid(period as i64) as usize);
        }
        acc
    };
    let vid = |orbit: usize, r: &[i64]| -> u64 { (orbit * cells + flat(r)) as u64 };

    let mut vertices = Vec::with_capacity(n0 * cells);
    let mut coords = vec![vec![0i64; d]];
    for axis in 0..d {
        let mut next = Vec::new();
        for c in &coords {
            for x in 0..period as i64 {
                let mut cc = c.clone();
                cc[axis] = x;
                next.push(cc);
            }
        }
        coords = next;
    }
    for orbit in 0..n0 {
        for r in &coords {
            vertices.push((vid(orbit, r), cell.vertex_weights[orbit]));
        }
    }

    let mut edge_set: HashMap<(u64, u64), f64> = HashMap::new();
    for r in &coords {
        for e in &cell.edges {
            let a = vid(e.tail, r);
            let shifted: Vec<i64> = r.iter().zip(&e.shift).map(|(x, s)| x + s).collect();
            let b = vid(e.head, &shifted);
            if a == b {
                return Err(HodgeError::QuotientCollision {
                    reason: format!("edge orbit folds onto a loop at period {period}"),
                });
            }
            let key = (a.min(b), a.max(b));
            if edge_set.insert(key, e.weight).is_some() {
                return Err(HodgeError::QuotientCollision {
                    reason: format!("two edge instances coincide at period {period}"),
                });
            }
        }
    }
    let edges: Vec<(u64, u64, f64)> = {
        let mut v: Vec<_> = edge_set.into_iter().map(|((a, b), w)| (a, b, w)).collect();
        v.sort_by_key(|&(a, b, _)| (a, b));
        v
    };

    let mut triangle_weights = HashMap::new();
    for r in &coords {
        for tri in &cell.triangles {
            let mut ids: Vec<u64> = tri
                .corners
                .iter()
                .map(|(orbit, shift)| {
                    let pos: Vec<i64> = r.iter().zip(shift).map(|(x, s)| x + s).collect();
                    vid(*orbit, &pos)
                })
                .collect();
            ids.sort_unstable();
            if triangle_weights.insert(ids, tri.weight).is_some() {
                return Err(HodgeError::QuotientCollision {
                    reason: format!("two triangle instances coincide at period {period}"),
                });
            }
        }
    }

    Ok((WeightedGraph::from_parts(vertices, edges)?, triangle_weights))
}

/// Builds the quotient complex at dimension `n` and checks that clique
/// expansion found exactly the orbit triangles (no wrap-around artifacts).
pub fn torus_complex(cell: &PeriodicCell, period: usize, n: usize) -> Result<WeightedComplex> {
    let (graph, triangle_weights) = torus_quotient(cell, period)?;
    let expected_triangles = cell.triangles.len() * period.pow(cell.dim as u32);
    let rule = if triangle_weights.is_empty() {
        WeightRule::Constant(1.0)
    } else {
        WeightRule::Explicit { weights: triangle_weights, default: 1.0 }
    };
    let complex = build_complex(graph, n, &rule)?;
    if n >= 2 && complex.level(2).len() != expected_triangles {
        return Err(HodgeError::QuotientCollision {
            reason: format!(
                "quotient has {} triangles but the orbits project to {}",
                complex.level(2).len(),
                expected_triangles
            ),
        });
    }
    Ok(complex)
}

/// Eigenvalues of all fibers at the rational grid `theta = 2 pi k / N`,
/// sorted ascending: the exact spectrum of the edge block on the N-torus.
pub fn fiber_spectra(cell: &PeriodicCell, period: usize, flavor: Flavor) -> Result<Vec<f64>> {
    let d = cell.dim;
    let total = period.pow(d as u32);
    let step = 2.0 * std::f64::consts::PI / period as f64;
    let mut all = Vec::with_capacity(total * cell.edges.len());
    for flat in 0..total {
        let mut idx = flat;
        let theta: Vec<f64> = (0..d)
            .map(|_| {
                let q = idx % period;
                idx /= period;
                q as f64 * step
            })
            .collect();
        let s = symbol(cell, &theta, flavor)?;
        all.extend(s.matrix.eig(1e-10)?.eigenvalues);
    }
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops;
    use crate::spectral;
    use std::f64::consts::PI;

    #[test]
    fn catalog_orbit_counts() {
        let square = catalog("square").unwrap();
        assert_eq!((square.vertex_weights.len(), square.edges.len(), square.triangles.len()), (1, 2, 0));
        assert_eq!(square.coordination(), 4);

        let fcc = catalog("fcc").unwrap();
        assert_eq!(fcc.coordination(), 12);
        assert_eq!(fcc.edge_orbit_count(), 6);
        assert_eq!(fcc.triangles.len(), 8);

        let bcc = catalog("bcc").unwrap();
        assert_eq!(bcc.coordination(), 8);
        assert_eq!(bcc.edge_orbit_count(), 4);
        assert!(bcc.triangles.is_empty());

        let tri = catalog("triangular").unwrap();
        assert_eq!((tri.coordination(), tri.edges.len(), tri.triangles.len()), (6, 3, 2));

        let kagome = catalog("kagome").unwrap();
        assert_eq!((kagome.vertex_weights.len(), kagome.edges.len(), kagome.triangles.len()), (3, 6, 2));
        assert_eq!(kagome.coordination(), 4);

        let diamond = catalog("diamond").unwrap();
        assert_eq!((diamond.vertex_weights.len(), diamond.coordination()), (2, 4));

        assert!(matches!(catalog("nope"), Err(HodgeError::UnknownLattice { .. })));
    }

    #[test]
    fn square_symbol_at_the_corner() {
        let cell = catalog("square").unwrap();
        let s = symbol(&cell, &[PI, PI], Flavor::Skew).unwrap();
        let eig = s.matrix.eig(1e-11).unwrap().eigenvalues;
        assert!(eig[0].abs() < 1e-12);
        assert!((eig[1] - 8.0).abs() < 1e-12);
    }

    #[test]
    fn cubic_dispersion_at_the_corner() {
        let cell = catalog("cubic").unwrap();
        let s = symbol(&cell, &[PI, PI, PI], Flavor::Skew).unwrap();
        let eig = s.matrix.eig(1e-11).unwrap().eigenvalues;
        let lam = 2.0 * (3.0 - (PI.cos()) * 3.0);
        assert!((eig.last().unwrap() - lam).abs() < 1e-12);
        assert!((eig.last().unwrap() - 12.0).abs() < 1e-12);
    }

    #[test]
    fn skew_symbol_is_singular_at_zero() {
        for name in CATALOG_NAMES {
            let cell = catalog(name).unwrap();
            let s = symbol(&cell, &vec![0.0; cell.dim], Flavor::Skew).unwrap();
            let eig = s.matrix.eig(1e-10).unwrap().eigenvalues;
            assert!(eig[0].abs() < 1e-9, "{name}: {eig:?}");
        }
    }

    #[test]
    fn symbols_are_positive_semidefinite_on_a_grid() {
        for name in ["square", "triangular", "kagome"] {
            let cell = catalog(name).unwrap();
            for i in 0..8 {
                for j in 0..8 {
                    let theta = [2.0 * PI * i as f64 / 8.0, 2.0 * PI * j as f64 / 8.0];
                    for flavor in [Flavor::Skew, Flavor::Sym] {
                        let s = symbol(&cell, &theta, flavor).unwrap();
                        let eig = s.matrix.eig(1e-10).unwrap().eigenvalues;
                        assert!(eig[0] > -1e-10, "{name} {flavor} at {theta:?}: {eig:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn sup_norms_of_planar_lattices() {
        let square = catalog("square").unwrap();
        let s = sup_norm(&square, 16, 1e-9, Flavor::Skew, 1).unwrap();
        assert!((s.value - 8.0).abs() < 1e-8, "{s:?}");
        let s = sup_norm(&square, 16, 1e-9, Flavor::Sym, 1).unwrap();
        assert!((s.value - 8.0).abs() < 1e-8);

        let line = catalog("line").unwrap();
        let s = sup_norm(&line, 16, 1e-9, Flavor::Sym, 1).unwrap();
        assert!((s.value - 4.0).abs() < 1e-8);

        // the flavors genuinely differ on the non-bipartite triangular
        // lattice; only the symmetric block reaches 12
        let tri = catalog("triangular").unwrap().without_triangles();
        let sym = sup_norm(&tri, 24, 1e-9, Flavor::Sym, 2).unwrap();
        assert!((sym.value - 12.0).abs() < 1e-7, "{sym:?}");
        let skew = sup_norm(&tri, 24, 1e-9, Flavor::Skew, 2).unwrap();
        assert!((skew.value - 9.0).abs() < 1e-7, "{skew:?}");

        let kagome = catalog("kagome").unwrap().without_triangles();
        let sym = sup_norm(&kagome, 16, 1e-8, Flavor::Sym, 2).unwrap();
        assert!((sym.value - 8.0).abs() < 1e-6, "{sym:?}");
    }

    #[test]
    fn grid_maximum_is_monotone_under_refinement() {
        let cubic = catalog("cubic").unwrap();
        let coarse = sup_norm(&cubic, 8, 1e-9, Flavor::Skew, 2).unwrap();
        let fine = sup_norm(&cubic, 16, 1e-9, Flavor::Skew, 2).unwrap();
        assert!(fine.coarse_value >= coarse.coarse_value - 1e-12);
        assert!((fine.value - 12.0).abs() < 1e-8);
    }

    #[test]
    fn comparison_table_rows() {
        let rows = compare_table(&["square", "triangular"], 24, 16, 1e-8, 2).unwrap();
        assert_eq!(rows[0].degree, 4);
        assert_eq!(rows[0].universal_bound, 12.0);
        assert!((rows[0].bloch_sym - 8.0).abs() < 1e-7);
        assert!(rows[0].bloch_sym_with_up.is_none());
        assert!((rows[0].ratio - 1.5).abs() < 1e-6);

        assert_eq!(rows[1].degree, 6);
        assert_eq!(rows[1].universal_bound, 20.0);
        assert!((rows[1].bloch_sym - 12.0).abs() < 1e-7);
        assert!((rows[1].bloch_skew - 9.0).abs() < 1e-7);
        let with_up = rows[1].bloch_sym_with_up.unwrap();
        assert!(with_up <= 20.0 + 1e-9, "up-part variant stays under the bound: {with_up}");
    }

    #[test]
    fn quotient_rejects_tiny_periods() {
        let cell = catalog("square").unwrap();
        assert!(matches!(torus_quotient(&cell, 1), Err(HodgeError::QuotientCollision { .. })));
        // period 2 folds the two square-lattice edge orbits into doubled
        // edges? no: (r, r+e) distinct mod 2, but (0,0)-(1,0) appears from
        // r=0 and r=1 both: collision
        assert!(torus_quotient(&cell, 2).is_err());
        assert!(torus_quotient(&cell, 3).is_ok());
    }

    #[test]
    fn square_torus_matches_fibers() {
        let cell = catalog("square").unwrap();
        let complex = torus_complex(&cell, 4, 1).unwrap();
        for flavor in [Flavor::Skew, Flavor::Sym] {
            let block = ops::normalized_block(&complex, 1, flavor).unwrap();
            let assembled = spectral::eigenvalues_of(&block, 1e-11).unwrap();
            let fibers = fiber_spectra(&cell, 4, flavor).unwrap();
            assert_eq!(assembled.len(), fibers.len());
            for (a, b) in assembled.iter().zip(&fibers) {
                assert!((a - b).abs() < 1e-9, "{flavor}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn triangular_torus_matches_fibers_with_and_without_up_part() {
        let cell = catalog("triangular").unwrap();
        // with the triangle orbits, at dimension 2
        let complex = torus_complex(&cell, 4, 2).unwrap();
        assert_eq!(complex.level(2).len(), 2 * 16);
        for flavor in [Flavor::Skew, Flavor::Sym] {
            let block = ops::normalized_block(&complex, 1, flavor).unwrap();
            let assembled = spectral::eigenvalues_of(&block, 1e-11).unwrap();
            let fibers = fiber_spectra(&cell, 4, flavor).unwrap();
            for (a, b) in assembled.iter().zip(&fibers) {
                assert!((a - b).abs() < 1e-9, "{flavor} with up: {a} vs {b}");
            }
        }
        // pure graph block
        let skeleton = cell.without_triangles();
        let complex = torus_complex(&skeleton, 4, 1).unwrap();
        let block = ops::normalized_block(&complex, 1, Flavor::Sym).unwrap();
        let assembled = spectral::eigenvalues_of(&block, 1e-11).unwrap();
        let fibers = fiber_spectra(&skeleton, 4, Flavor::Sym).unwrap();
        for (a, b) in assembled.iter().zip(&fibers) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn weighted_orbit_torus_matches_fibers() {
        // non-unit weights on every orbit exercise the metric scalings in
        // both the symbol and the assembled quotient block
        let cell = PeriodicCell::new(
            2,
            vec![1.3],
            vec![
                EdgeOrbit { tail: 0, head: 0, shift: vec![1, 0], weight: 0.7 },
                EdgeOrbit { tail: 0, head: 0, shift: vec![0, 1], weight: 1.1 },
                EdgeOrbit { tail: 0, head: 0, shift: vec![1, 1], weight: 1.9 },
            ],
            vec![
                TriangleOrbit {
                    corners: [(0, vec![0, 0]), (0, vec![1, 0]), (0, vec![1, 1])],
                    weight: 0.9,
                },
                TriangleOrbit {
                    corners: [(0, vec![0, 0]), (0, vec![0, 1]), (0, vec![1, 1])],
                    weight: 1.6,
                },
            ],
        )
        .unwrap();
        let complex = torus_complex(&cell, 4, 2).unwrap();
        for flavor in [Flavor::Skew, Flavor::Sym] {
            let block = ops::normalized_block(&complex, 1, flavor).unwrap();
            let assembled = spectral::eigenvalues_of(&block, 1e-11).unwrap();
            let fibers = fiber_spectra(&cell, 4, flavor).unwrap();
            assert_eq!(assembled.len(), fibers.len());
            for (a, b) in assembled.iter().zip(&fibers) {
                assert!((a - b).abs() < 1e-9, "{flavor}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn torus_edge_norm_approaches_the_lattice_value() {
        let cell = catalog("square").unwrap();
        let complex = torus_complex(&cell, 20, 1).unwrap();
        let block = ops::normalized_block(&complex, 1, Flavor::Skew).unwrap();
        let norm = spectral::operator_norm(&block, 1e-8).unwrap();
        assert!(norm <= 8.0 + 1e-6, "{norm}");
        assert!((norm - 8.0).abs() < 1e-6, "even periods hit the corner exactly: {norm}");
    }

    #[test]
    fn kagome_torus_matches_fibers() {
        let cell = catalog("kagome").unwrap();
        let complex = torus_complex(&cell, 3, 2).unwrap();
        let block = ops::normalized_block(&complex, 1, Flavor::Sym).unwrap();
        let assembled = spectral::eigenvalues_of(&block, 1e-11).unwrap();
        let fibers = fiber_spectra(&cell, 3, Flavor::Sym).unwrap();
        for (a, b) in assembled.iter().zip(&fibers) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }
}
