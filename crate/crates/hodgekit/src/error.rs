//! Crate-wide error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum HodgeError {
    /// A weight that must be positive was not.
    NonPositiveWeight { context: String, value: f64 },
    /// A vertex id referenced by an edge or simplex is not declared.
    UnknownVertex { id: u64 },
    /// Malformed graph data (self-loop, duplicate edge, duplicate id).
    InvalidGraph { reason: String },
    /// Requested complex dimension is out of range.
    InvalidDimension { n: usize },
    /// A tuple does not name a registered simplex.
    UnregisteredSimplex { tuple: Vec<u64> },
    /// A tuple contains a repeated vertex.
    RepeatedVertex { tuple: Vec<u64> },
    /// Degrees of two cochain-space objects do not match.
    DegreeMismatch { left: usize, right: usize },
    /// Degree index outside `0..=n` (or `1..=n` for coboundaries).
    DegreeOutOfRange { k: usize, n: usize },
    /// The complex has no top-dimensional simplex.
    NoTopSimplices,
    /// An iterative solver did not reach the requested tolerance.
    NonConvergence { achieved: f64, requested: f64 },
    /// A matrix expected to be Hermitian deviates too much from its adjoint.
    NotHermitian { deviation: f64 },
    /// A Schur kernel entry was negative or the kernel was asymmetric.
    InvalidKernel { reason: String },
    /// A coloring is not proper on the 1-skeleton.
    ImproperColoring { u: u64, v: u64 },
    /// Greedy coloring needed more colors than allowed.
    ColoringFailed { vertex: u64, limit: usize },
    /// Comparability constants violate `0 < c <= C`.
    InvalidConstants { reason: String },
    /// Unknown lattice name.
    UnknownLattice { name: String },
    /// Malformed periodic-cell data.
    InvalidCell { reason: String },
    /// Torus quotient too small: distinct orbit instances collide.
    QuotientCollision { reason: String },
    /// Arithmetic overflow in exact rational computation.
    RationalOverflow,
}

impl fmt::Display for HodgeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HodgeError::NonPositiveWeight { context, value } => {
                write!(f, "non-positive weight {value} for {context}")
            }
            HodgeError::UnknownVertex { id } => write!(f, "unknown vertex id {id}"),
            HodgeError::InvalidGraph { reason } => write!(f, "invalid graph: {reason}"),
            HodgeError::InvalidDimension { n } => {
                write!(f, "complex dimension must be at least 1, got {n}")
            }
            HodgeError::UnregisteredSimplex { tuple } => {
                write!(f, "tuple {tuple:?} is not a registered simplex")
            }
            HodgeError::RepeatedVertex { tuple } => {
                write!(f, "tuple {tuple:?} has a repeated vertex")
            }
            HodgeError::DegreeMismatch { left, right } => {
                write!(f, "degree mismatch: {left} vs {right}")
            }
            HodgeError::DegreeOutOfRange { k, n } => {
                write!(f, "degree {k} out of range for an {n}-complex")
            }
            HodgeError::NoTopSimplices => write!(f, "complex has no top-dimensional simplex"),
            HodgeError::NonConvergence { achieved, requested } => write!(
                f,
                "iteration cap reached: residual {achieved:.3e} > requested {requested:.3e}"
            ),
            HodgeError::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian: deviation {deviation:.3e}")
            }
            HodgeError::InvalidKernel { reason } => write!(f, "invalid kernel: {reason}"),
            HodgeError::ImproperColoring { u, v } => {
                write!(f, "coloring is not proper: edge ({u}, {v}) has equal colors")
            }
            HodgeError::ColoringFailed { vertex, limit } => {
                write!(f, "greedy coloring of vertex {vertex} exceeds {limit} colors")
            }
            HodgeError::InvalidConstants { reason } => {
                write!(f, "invalid comparability constants: {reason}")
            }
            HodgeError::UnknownLattice { name } => write!(f, "unknown lattice '{name}'"),
            HodgeError::InvalidCell { reason } => write!(f, "invalid periodic cell: {reason}"),
            HodgeError::QuotientCollision { reason } => {
                write!(f, "torus quotient too small: {reason}")
            }
            HodgeError::RationalOverflow => write!(f, "exact rational arithmetic overflowed"),
        }
    }
}

impl std::error::Error for HodgeError {}

pub type Result<T> = std::result::Result<T, HodgeError>;
