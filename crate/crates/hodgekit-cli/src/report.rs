//! Structured report files. The `results` section is a pure function of
//! the inputs and the seed; wall time lives in `meta` so that reruns remain
//! byte-identical where it matters.

use serde::Serialize;

#[derive(Serialize)]
pub struct ReportFile<T: Serialize> {
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub results: T,
    pub meta: Meta,
}

#[derive(Serialize)]
pub struct Tolerances {
    pub exact_identity: f64,
    pub iterative: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { exact_identity: 1e-12, iterative: 1e-8 }
    }
}

#[derive(Serialize)]
pub struct Meta {
    pub wall_ms: u128,
}

#[derive(Serialize)]
pub struct CertificateRow {
    pub name: String,
    pub value: f64,
    pub guaranteed: bool,
    pub margin: f64,
}

#[derive(Serialize)]
pub struct BoundsRow {
    pub degree: usize,
    pub flavor: String,
    pub computed_norm: f64,
    pub certificates: Vec<CertificateRow>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct BlochRow {
    pub lattice: String,
    pub degree: usize,
    pub universal_bound: f64,
    pub sup_norm: f64,
    pub argmax: Vec<f64>,
    pub grid: usize,
}

#[derive(Serialize)]
pub struct ColorCheckRow {
    pub degree: usize,
    pub literal_coboundary: Option<f64>,
    pub literal_block: f64,
    pub compatible_coboundary: Option<f64>,
    pub compatible_adjoint: Option<f64>,
    pub compatible_block: Option<f64>,
    pub compatible_block_normalized: Option<f64>,
    pub spectral_distance: Option<f64>,
}

/// Writes the JSON report when a path was requested; the human-readable
/// summary already went to stdout.
pub fn emit<T: Serialize>(
    command: &str,
    seed: u64,
    results: T,
    wall_ms: u128,
    path: Option<&str>,
) -> Result<(), String> {
    let Some(p) = path else { return Ok(()) };
    let report = ReportFile {
        version: env!("CARGO_PKG_VERSION"),
        command: command.to_string(),
        seed,
        tolerances: Tolerances::default(),
        results,
        meta: Meta { wall_ms },
    };
    let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    std::fs::write(p, text).map_err(|e| format!("cannot write {p}: {e}"))
}
