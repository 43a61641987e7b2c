//! Cochains in the skew and symmetric conventions, and the weighted inner
//! products they live in.
//!
//! Values are stored on canonical (ascending-id) simplices only. Because
//! both arguments of the inner product pick up the same sign under
//! reordering, the `1/(k+1)!`-normalized sum over ordered tuples collapses
//! to one term per unordered simplex, which is exactly what is computed.

use crate::complex::WeightedComplex;
use crate::error::{HodgeError, Result};
use num_complex::Complex64;

/// Sign convention: skew cochains flip sign under odd reorderings,
/// symmetric cochains are reorder-invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Skew,
    Sym,
}

impl Flavor {
    /// Sign carried by the `i`-th term of a coboundary sum.
    pub(crate) fn omission_sign(self, i: usize) -> f64 {
        match self {
            Flavor::Skew => {
                if i.is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            }
            Flavor::Sym => 1.0,
        }
    }

    pub fn toggled(self) -> Flavor {
        match self {
            Flavor::Skew => Flavor::Sym,
            Flavor::Sym => Flavor::Skew,
        }
    }
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Flavor::Skew => write!(f, "skew"),
            Flavor::Sym => write!(f, "sym"),
        }
    }
}

/// Parity of the permutation sorting `tuple` ascending: `0` for even, `1`
/// for odd. Exact integer inversion count, no floating point.
pub fn sort_parity<T: PartialOrd>(tuple: &[T]) -> usize {
    let mut inversions = 0usize;
    for i in 0..tuple.len() {
        for j in (i + 1)..tuple.len() {
            if tuple[i] > tuple[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

/// A degree-`k` cochain: one complex scalar per canonical `k`-simplex.
#[derive(Debug, Clone)]
pub struct Cochain {
    pub degree: usize,
    pub flavor: Flavor,
    pub values: Vec<Complex64>,
}

impl Cochain {
    pub fn zero(complex: &WeightedComplex, degree: usize, flavor: Flavor) -> Cochain {
        Cochain { degree, flavor, values: vec![Complex64::ZERO; complex.level(degree).len()] }
    }

    /// Indicator of a single simplex, given by external ids in any order.
    pub fn indicator(complex: &WeightedComplex, flavor: Flavor, ids: &[u64]) -> Result<Cochain> {
        let (k, idx) = complex.find_simplex(ids)?;
        let mut c = Cochain::zero(complex, k, flavor);
        c.values[idx] = Complex64::ONE;
        Ok(c)
    }

    pub fn from_values(degree: usize, flavor: Flavor, values: Vec<Complex64>) -> Cochain {
        Cochain { degree, flavor, values }
    }

    /// Evaluates at an ordered tuple of external ids. Skew cochains pick up
    /// the parity sign of the reordering; symmetric cochains do not.
    pub fn evaluate(&self, complex: &WeightedComplex, tuple: &[u64]) -> Result<Complex64> {
        let (k, idx) = complex.find_simplex(tuple)?;
        if k != self.degree {
            return Err(HodgeError::DegreeMismatch { left: self.degree, right: k });
        }
        let value = self.values[idx];
        match self.flavor {
            Flavor::Sym => Ok(value),
            Flavor::Skew => {
                if sort_parity(tuple) == 0 {
                    Ok(value)
                } else {
                    Ok(-value)
                }
            }
        }
    }

    pub fn norm(&self, metric: &WeightedMetric) -> Result<f64> {
        Ok(inner_product(self, self, metric)?.re.sqrt())
    }
}

/// The diagonal weight `m_k` defining `<f, g>_k = sum m_k(s) f(s) conj(g(s))`
/// over canonical simplices.
#[derive(Debug, Clone)]
pub struct WeightedMetric {
    pub degree: usize,
    pub diag: Vec<f64>,
}

impl WeightedMetric {
    pub fn of(complex: &WeightedComplex, degree: usize) -> WeightedMetric {
        WeightedMetric { degree, diag: complex.level(degree).weights.clone() }
    }

    pub fn unit(dim: usize, degree: usize) -> WeightedMetric {
        WeightedMetric { degree, diag: vec![1.0; dim] }
    }
}

/// Weighted inner product of two cochains of the same degree.
pub fn inner_product(f: &Cochain, g: &Cochain, metric: &WeightedMetric) -> Result<Complex64> {
    if f.degree != g.degree || f.degree != metric.degree {
        return Err(HodgeError::DegreeMismatch { left: f.degree, right: g.degree.max(metric.degree) });
    }
    if f.values.len() != g.values.len() || f.values.len() != metric.diag.len() {
        return Err(HodgeError::DegreeMismatch { left: f.values.len(), right: g.values.len() });
    }
    Ok(f.values
        .iter()
        .zip(&g.values)
        .zip(&metric.diag)
        .map(|((a, b), &m)| m * a * b.conj())
        .sum())
}
