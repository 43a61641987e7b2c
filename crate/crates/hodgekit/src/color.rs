//! Color signs, diagonal intertwiners between the skew and symmetric
//! conventions, and the residual reports that certify where the two models
//! are genuinely unitarily equivalent.
//!
//! Two sign systems appear here. The *color sign* `S` of an ordered simplex
//! is the parity of the permutation sorting its colors ascending; it is
//! what [`color_sign`] and [`unitary_apply`] compute. A diagonal sign that
//! actually intertwines the coboundaries must satisfy the face relation
//! `sign(face_i) = (-1)^i sign(simplex)` for every simplex and every
//! omitted position `i`; [`solve_sign_system`] searches for one by parity
//! propagation over the incidence graph. On bipartite 1-complexes a
//! solution always exists; the solver reports exactly where it does not
//! (an odd cycle already refuses at the edge level), and the residual
//! report states results for both systems instead of asserting equivalence
//! where none holds.

use crate::cochain::{sort_parity, Cochain, Flavor};
use crate::complex::WeightedComplex;
use crate::error::{HodgeError, Result};
use crate::graph::WeightedGraph;
use crate::ops::{self, MetricOperator};
use crate::spectral;
use std::collections::HashMap;

/// A proper vertex coloring of the 1-skeleton with colors `1..=p`.
#[derive(Debug, Clone)]
pub struct Coloring {
    colors: Vec<usize>,
    pub p: usize,
}

impl Coloring {
    /// Builds from an external-id map and verifies properness.
    pub fn from_map(graph: &WeightedGraph, map: &HashMap<u64, usize>) -> Result<Coloring> {
        let mut colors = vec![0usize; graph.vertex_count()];
        for (idx, &id) in graph.ids().iter().enumerate() {
            let &c = map
                .get(&id)
                .ok_or(HodgeError::UnknownVertex { id })?;
            if c == 0 {
                return Err(HodgeError::InvalidGraph {
                    reason: format!("color of vertex {id} must be at least 1"),
                });
            }
            colors[idx] = c;
        }
        let p = colors.iter().copied().max().unwrap_or(1);
        let coloring = Coloring { colors, p };
        coloring.validate(graph)?;
        Ok(coloring)
    }

    /// Greedy proper coloring in BFS order with the smallest available
    /// color; fails if more than `limit` colors would be needed. Success is
    /// verified; failure says nothing about colorability with `limit` colors.
    pub fn greedy(graph: &WeightedGraph, limit: usize) -> Result<Coloring> {
        let n = graph.vertex_count();
        let mut colors = vec![0usize; n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if colors[start] != 0 {
                continue;
            }
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                if colors[v] == 0 {
                    let used: Vec<usize> =
                        graph.neighbors(v).iter().map(|&u| colors[u]).filter(|&c| c != 0).collect();
                    let mut c = 1;
                    while used.contains(&c) {
                        c += 1;
                    }
                    if c > limit {
                        return Err(HodgeError::ColoringFailed { vertex: graph.id_of(v), limit });
                    }
                    colors[v] = c;
                    for &u in graph.neighbors(v) {
                        if colors[u] == 0 {
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
        let p = colors.iter().copied().max().unwrap_or(1);
        let coloring = Coloring { colors, p };
        coloring.validate(graph)?;
        Ok(coloring)
    }

    /// Checks properness on the 1-skeleton, naming an offending edge.
    pub fn validate(&self, graph: &WeightedGraph) -> Result<()> {
        for (u, v) in graph.edges() {
            if self.colors[u] == self.colors[v] {
                return Err(HodgeError::ImproperColoring {
                    u: graph.id_of(u),
                    v: graph.id_of(v),
                });
            }
        }
        Ok(())
    }

    pub fn color_of_index(&self, idx: usize) -> usize {
        self.colors[idx]
    }

    fn tuple_colors(&self, graph: &WeightedGraph, tuple: &[u64]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(tuple.len());
        for &id in tuple {
            let idx = graph.index_of(id).ok_or(HodgeError::UnknownVertex { id })?;
            out.push(self.colors[idx]);
        }
        for i in 0..out.len() {
            for j in (i + 1)..out.len() {
                if out[i] == out[j] {
                    return Err(HodgeError::ImproperColoring { u: tuple[i], v: tuple[j] });
                }
            }
        }
        Ok(out)
    }
}

/// Sign of the permutation sorting the tuple's colors ascending: `+1` for
/// even, `-1` for odd. Ties cannot occur inside a simplex of a properly
/// colored complex; a tie is reported as an improper coloring.
pub fn color_sign(graph: &WeightedGraph, coloring: &Coloring, tuple: &[u64]) -> Result<i32> {
    let colors = coloring.tuple_colors(graph, tuple)?;
    Ok(if sort_parity(&colors) == 0 { 1 } else { -1 })
}

/// Multiplies a cochain by the color sign of each canonical simplex and
/// toggles the flavor tag. Squares to the identity and preserves every
/// weighted norm.
pub fn unitary_apply(
    complex: &WeightedComplex,
    coloring: &Coloring,
    f: &Cochain,
) -> Result<Cochain> {
    let signs = level_color_signs(complex, coloring, f.degree)?;
    let values = f
        .values
        .iter()
        .zip(&signs)
        .map(|(v, &s)| v * s)
        .collect();
    Ok(Cochain::from_values(f.degree, f.flavor.toggled(), values))
}

fn level_color_signs(complex: &WeightedComplex, coloring: &Coloring, k: usize) -> Result<Vec<f64>> {
    let graph = complex.graph();
    let level = complex.level(k);
    let mut out = Vec::with_capacity(level.len());
    for simplex in &level.simplices {
        let colors: Vec<usize> = simplex.iter().map(|&v| coloring.colors[v]).collect();
        for i in 0..colors.len() {
            for j in (i + 1)..colors.len() {
                if colors[i] == colors[j] {
                    return Err(HodgeError::ImproperColoring {
                        u: graph.id_of(simplex[i]),
                        v: graph.id_of(simplex[j]),
                    });
                }
            }
        }
        out.push(if sort_parity(&colors) == 0 { 1.0 } else { -1.0 });
    }
    Ok(out)
}

/// Checks the face-parity relation for the `i`-th face of an ordered
/// simplex: the color-sorting parity of the face equals the simplex's
/// parity plus `i` plus the rank of the omitted color inside the simplex,
/// mod 2. Holds for every face of every properly colored simplex.
pub fn parity_check(
    graph: &WeightedGraph,
    coloring: &Coloring,
    tuple: &[u64],
    i: usize,
) -> Result<bool> {
    let colors = coloring.tuple_colors(graph, tuple)?;
    if i >= colors.len() {
        return Err(HodgeError::DegreeOutOfRange { k: i, n: colors.len().saturating_sub(1) });
    }
    let full_parity = sort_parity(&colors);
    let mut face = colors.clone();
    let omitted = face.remove(i);
    let face_parity = sort_parity(&face);
    let rank = colors.iter().filter(|&&c| c < omitted).count();
    Ok((face_parity + full_parity + i + rank).is_multiple_of(2))
}

/// A diagonal sign per simplex on a range of levels satisfying
/// `sign(face_i) = (-1)^i sign(simplex)` for every incidence inside the
/// range. `None` when the parity constraints are contradictory.
pub fn solve_sign_system(
    complex: &WeightedComplex,
    lo: usize,
    hi: usize,
) -> Option<Vec<Vec<f64>>> {
    let hi = hi.min(complex.dimension());
    let mut signs: Vec<Vec<f64>> =
        (lo..=hi).map(|k| vec![0.0; complex.level(k).len()]).collect();

    // Constraint graph nodes are (level k, simplex); propagate by BFS.
    for start_level in (lo..=hi).rev() {
        for start in 0..complex.level(start_level).len() {
            if signs[start_level - lo][start] != 0.0 {
                continue;
            }
            signs[start_level - lo][start] = 1.0;
            let mut queue = vec![(start_level, start)];
            while let Some((k, s)) = queue.pop() {
                let here = signs[k - lo][s];
                // downward constraints to faces
                if k > lo {
                    for (i, &t) in complex.level(k).faces[s].iter().enumerate() {
                        let want = if i.is_multiple_of(2) { here } else { -here };
                        let slot = &mut signs[k - 1 - lo][t];
                        if *slot == 0.0 {
                            *slot = want;
                            queue.push((k - 1, t));
                        } else if (*slot - want).abs() > 0.5 {
                            return None;
                        }
                    }
                }
                // upward constraints from cofaces
                if k < hi {
                    for &(_, up) in &complex.level(k).cofaces[s] {
                        let i = complex.level(k + 1).faces[up]
                            .iter()
                            .position(|&t| t == s)
                            .expect("face lists are consistent");
                        // sign(s) = (-1)^i sign(up)
                        let want_up = if i.is_multiple_of(2) { here } else { -here };
                        let slot = &mut signs[k + 1 - lo][up];
                        if *slot == 0.0 {
                            *slot = want_up;
                            queue.push((k + 1, up));
                        } else if (*slot - want_up).abs() > 0.5 {
                            return None;
                        }
                    }
                }
            }
        }
    }
    Some(signs)
}

/// Residuals of the skew/sym intertwining identities at one degree, for a
/// given diagonal sign assignment.
#[derive(Debug, Clone, Default)]
pub struct OperatorResiduals {
    /// Max entry of `U_k d_skew - d_sym U_{k-1}` (degrees `>= 1`).
    pub coboundary: Option<f64>,
    /// Max entry of `U_{k-1} adj(d_skew) - adj(d_sym) U_k`.
    pub adjoint: Option<f64>,
    /// Max entry of `U_k Delta_skew U_k^{-1} - Delta_sym`.
    pub block: f64,
    /// Same for the degree-normalized blocks.
    pub block_normalized: f64,
}

/// Per-degree intertwining report.
#[derive(Debug, Clone)]
pub struct DegreeIntertwine {
    pub degree: usize,
    /// Residuals for the literal color-sign diagonal.
    pub literal: OperatorResiduals,
    /// Residuals for a face-compatible sign system covering the block's
    /// incidence range, when one exists.
    pub compatible: Option<OperatorResiduals>,
    /// Max difference of the sorted skew and sym block spectra.
    pub spectral_distance: Option<f64>,
    pub skew_spectrum: Vec<f64>,
    pub sym_spectrum: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct IntertwineReport {
    /// Whether one sign system covers all levels `0..=n`.
    pub full_chain_compatible: bool,
    pub degrees: Vec<DegreeIntertwine>,
}

fn apply_signs(op: &MetricOperator, left: Option<&[f64]>, right: Option<&[f64]>) -> MetricOperator {
    let mut out = op.clone();
    if let Some(l) = left {
        out = out.scale_rows(l);
    }
    if let Some(r) = right {
        out = out.scale_cols(r);
    }
    out
}

fn residuals_for_signs(
    complex: &WeightedComplex,
    k: usize,
    signs: &dyn Fn(usize) -> Option<Vec<f64>>,
) -> Result<Option<OperatorResiduals>> {
    let n = complex.dimension();
    let Some(u_k) = signs(k) else { return Ok(None) };

    let mut res = OperatorResiduals::default();
    if k >= 1 {
        let Some(u_km1) = signs(k - 1) else { return Ok(None) };
        let d_skew = ops::coboundary(complex, k, Flavor::Skew)?;
        let d_sym = ops::coboundary(complex, k, Flavor::Sym)?;
        res.coboundary =
            Some(apply_signs(&d_skew, Some(&u_k), None).max_abs_diff(&apply_signs(&d_sym, None, Some(&u_km1))));
        res.adjoint = Some(
            apply_signs(&d_skew.adjoint(), Some(&u_km1), None)
                .max_abs_diff(&apply_signs(&d_sym.adjoint(), None, Some(&u_k))),
        );
    }
    if k < n && signs(k + 1).is_none() {
        return Ok(None);
    }
    let block_skew = ops::laplacian_block(complex, k, Flavor::Skew)?;
    let block_sym = ops::laplacian_block(complex, k, Flavor::Sym)?;
    res.block = apply_signs(&block_skew, Some(&u_k), Some(&u_k)).max_abs_diff(&block_sym);
    let nb_skew = ops::normalized_block(complex, k, Flavor::Skew)?;
    let nb_sym = ops::normalized_block(complex, k, Flavor::Sym)?;
    res.block_normalized = apply_signs(&nb_skew, Some(&u_k), Some(&u_k)).max_abs_diff(&nb_sym);
    Ok(Some(res))
}

/// Computes the intertwining residuals of every degree for the literal
/// color sign and, where solvable, for a face-compatible sign system, along
/// with both block spectra.
pub fn intertwine_residuals(
    complex: &WeightedComplex,
    coloring: &Coloring,
    with_spectra: bool,
) -> Result<IntertwineReport> {
    coloring.validate(complex.graph())?;
    let n = complex.dimension();
    let literal_signs: Vec<Vec<f64>> =
        (0..=n).map(|k| level_color_signs(complex, coloring, k)).collect::<Result<_>>()?;
    let full = solve_sign_system(complex, 0, n);

    let mut degrees = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let literal = residuals_for_signs(complex, k, &|j| Some(literal_signs[j].clone()))?
            .expect("literal signs exist at every level");

        // a compatible system only needs to cover the incidence range of
        // the degree-k block
        let lo = k.saturating_sub(1);
        let hi = (k + 1).min(n);
        let local = solve_sign_system(complex, lo, hi);
        let compatible = match &local {
            Some(sys) => residuals_for_signs(complex, k, &|j| {
                (j >= lo && j <= hi).then(|| sys[j - lo].clone())
            })?,
            None => None,
        };

        let (spectral_distance, skew_spectrum, sym_spectrum) = if with_spectra {
            let skew = spectral::eigenvalues_of(&ops::laplacian_block(complex, k, Flavor::Skew)?, 1e-11)?;
            let sym = spectral::eigenvalues_of(&ops::laplacian_block(complex, k, Flavor::Sym)?, 1e-11)?;
            let dist = skew
                .iter()
                .zip(&sym)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            (Some(dist), skew, sym)
        } else {
            (None, Vec::new(), Vec::new())
        };

        degrees.push(DegreeIntertwine {
            degree: k,
            literal,
            compatible,
            spectral_distance,
            skew_spectrum,
            sym_spectrum,
        });
    }
    Ok(IntertwineReport { full_chain_compatible: full.is_some(), degrees })
}
