//! `hodgekit` command line: build complexes from JSON, list block spectra,
//! certify norms against explicit bounds, scan Bloch fibers of periodic
//! lattices, and check skew/sym intertwining residuals.
//!
//! Exit codes: 0 pass, 1 certificate or check failure, 2 input error,
//! 3 numerical non-convergence.

mod input;
mod report;

use clap::{Args, Parser, Subcommand};
use hodgekit::bloch;
use hodgekit::bounds::{self, CertifyOptions, ComparabilityConstants};
use hodgekit::color;
use hodgekit::error::HodgeError;
use hodgekit::ops;
use hodgekit::rational::Ratio;
use hodgekit::spectral;
use hodgekit::Flavor;
use input::ComplexInput;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "hodgekit", version, about = "Weighted complexes, Hodge blocks, and spectral certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum FlavorArg {
    Skew,
    Sym,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Skew => Flavor::Skew,
            FlavorArg::Sym => Flavor::Sym,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Path to a JSON complex description.
    input: String,
    /// Complex dimension (overrides the file's `dimension`).
    #[arg(long)]
    dim: Option<usize>,
    /// Constant weight for all higher simplices (overrides file weights).
    #[arg(long)]
    weights: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the clique complex and print level sizes and degree data.
    Build(InputArgs),
    /// Eigenvalues of one Laplacian block.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "skew")]
        flavor: FlavorArg,
        /// Use the degree-normalized block.
        #[arg(long)]
        normalized: bool,
        /// Dense eigensolver cap on the block dimension.
        #[arg(long, default_value_t = 2000)]
        cap: usize,
        /// Print only the operator norm (no cap).
        #[arg(long)]
        norm_only: bool,
    },
    /// Certify block norms against every applicable bound.
    Bounds {
        #[command(flatten)]
        input: InputArgs,
        /// Certify one degree (default: all).
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value = "skew")]
        flavor: FlavorArg,
        /// Comparability constants c0,C0,c1,C1 for the weighted bound.
        #[arg(long, value_delimiter = ',')]
        comparability: Option<Vec<f64>>,
        /// Seed recorded in the report.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here instead of stdout summary only.
        #[arg(long)]
        out: Option<String>,
    },
    /// Brillouin-zone sup-norm of the edge block of a periodic lattice.
    Bloch {
        /// A catalog lattice name.
        #[arg(long, conflicts_with = "all")]
        lattice: Option<String>,
        /// A custom cell description (JSON with orbits and shifts).
        #[arg(long, conflicts_with_all = ["lattice", "all"])]
        cell: Option<String>,
        /// Scan the whole catalog and print the comparison table.
        #[arg(long)]
        all: bool,
        /// Grid points per axis.
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Refinement tolerance on the sup-norm.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value = "sym")]
        flavor: FlavorArg,
        /// Keep the triangle up-part for lattices that carry 3-cliques.
        #[arg(long)]
        with_up: bool,
        #[arg(long)]
        out: Option<String>,
    },
    /// Skew/sym intertwining residuals under a coloring.
    ColorCheck {
        #[command(flatten)]
        input: InputArgs,
        /// Ignore the file's coloring and color greedily with at most this
        /// many colors.
        #[arg(long)]
        greedy: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Exact weighted comparability constant and derived bounds.
    Constants {
        /// c0 C0 c1 C1 as exact decimals or fractions (e.g. 0.9 or 9/10).
        #[arg(num_args = 4)]
        values: Vec<String>,
        /// Regular-lattice degrees to derive edge bounds for.
        #[arg(long, value_delimiter = ',', default_values_t = vec![4usize, 6])]
        degrees: Vec<usize>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}

type CliResult = Result<u8, (u8, String)>;

fn input_err<T: std::fmt::Display>(e: T) -> (u8, String) {
    (2, e.to_string())
}

fn numeric_err(e: HodgeError) -> (u8, String) {
    match e {
        HodgeError::NonConvergence { .. } => (3, e.to_string()),
        other => (2, other.to_string()),
    }
}

fn load(args: &InputArgs) -> Result<input::LoadedComplex, (u8, String)> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| (2u8, format!("cannot read {}: {e}", args.input)))?;
    let parsed = ComplexInput::parse(&text).map_err(input_err)?;
    parsed.build(args.dim, args.weights).map_err(input_err)
}

fn threads_from_env() -> usize {
    std::env::var("HODGE_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn run() -> CliResult {
    let cli = Cli::parse();
    match cli.command {
        Command::Build(args) => {
            let loaded = load(&args)?;
            let c = &loaded.complex;
            let sizes: Vec<String> = c.level_sizes().iter().map(|s| s.to_string()).collect();
            println!("levels: {}", sizes.join(" / "));
            for k in 0..=c.dimension() {
                let (down, up) = c.up_down_degrees(k);
                println!("degree {k}: D_down = {down:.6}, D_up = {up:.6}");
            }
            Ok(0)
        }
        Command::Spectrum { input, degree, flavor, normalized, cap, norm_only } => {
            let loaded = load(&input)?;
            let c = &loaded.complex;
            if degree > c.dimension() {
                return Err((2, format!("degree {degree} exceeds the complex dimension {}", c.dimension())));
            }
            let flavor: Flavor = flavor.into();
            let block = if normalized {
                ops::normalized_block(c, degree, flavor)
            } else {
                ops::laplacian_block(c, degree, flavor)
            }
            .map_err(numeric_err)?;
            let dim = block.shape().0;
            if norm_only {
                let norm = spectral::operator_norm(&block, 1e-9).map_err(numeric_err)?;
                println!("norm: {norm:.12}");
                return Ok(0);
            }
            if dim > cap {
                return Err((
                    2,
                    format!("block dimension {dim} exceeds the dense cap {cap}; rerun with --norm-only"),
                ));
            }
            let spectrum = spectral::HermitianMatrix::from_operator(&block)
                .and_then(|m| m.eig(1e-11))
                .map_err(numeric_err)?;
            for v in &spectrum.eigenvalues {
                println!("{v:.12}");
            }
            println!("residual: {:.3e}", spectrum.residual);
            Ok(0)
        }
        Command::Bounds { input, degree, flavor, comparability, seed, out } => {
            let start = Instant::now();
            let loaded = load(&input)?;
            let c = &loaded.complex;
            let flavor: Flavor = flavor.into();
            let comparability = match comparability {
                None => None,
                Some(v) if v.len() == 4 => Some(
                    ComparabilityConstants::new(v[0], v[1], v[2], v[3]).map_err(input_err)?,
                ),
                Some(_) => return Err((2, "expected four comparability constants".into())),
            };
            let options = CertifyOptions { tolerance: 1e-8, seed, comparability };
            let degrees: Vec<usize> = match degree {
                Some(k) if k <= c.dimension() => vec![k],
                Some(k) => {
                    return Err((2, format!("degree {k} exceeds the complex dimension {}", c.dimension())))
                }
                None => (0..=c.dimension()).collect(),
            };
            let mut rows = Vec::new();
            let mut all_passed = true;
            for k in degrees {
                let rep = bounds::certify(c, k, flavor, &options).map_err(numeric_err)?;
                all_passed &= rep.passed;
                println!(
                    "degree {k} ({flavor}): norm = {:.9}  ->  {}",
                    rep.computed_norm,
                    if rep.passed { "PASS" } else { "FAIL" }
                );
                for cert in &rep.certificates {
                    println!(
                        "  {:<26} {:>14.9}  margin {:>14.9}  [{}]",
                        cert.name,
                        cert.value,
                        cert.margin,
                        if cert.guaranteed { "guaranteed" } else { "reference" }
                    );
                }
                rows.push(report::BoundsRow {
                    degree: k,
                    flavor: flavor.to_string(),
                    computed_norm: rep.computed_norm,
                    certificates: rep
                        .certificates
                        .iter()
                        .map(|cert| report::CertificateRow {
                            name: cert.name.clone(),
                            value: cert.value,
                            guaranteed: cert.guaranteed,
                            margin: cert.margin,
                        })
                        .collect(),
                    passed: rep.passed,
                });
            }
            report::emit("bounds", seed, rows, start.elapsed().as_millis(), out.as_deref())
                .map_err(input_err)?;
            Ok(if all_passed { 0 } else { 1 })
        }
        Command::Bloch { lattice, cell, all, grid, tol, flavor, with_up, out } => {
            let start = Instant::now();
            let threads = threads_from_env();
            let flavor: Flavor = flavor.into();
            let mut rows = Vec::new();
            if all {
                let table =
                    bloch::compare_table(&bloch::CATALOG_NAMES, grid, grid.min(32), tol, threads)
                        .map_err(numeric_err)?;
                println!("lattice       d   4(d-1)   exact sup-norm   (skew, with-up)");
                for row in &table {
                    println!(
                        "{:<12} {:>2} {:>8} {:>16.9}   ({:.6}, {})",
                        row.lattice,
                        row.degree,
                        row.universal_bound,
                        row.bloch_sym,
                        row.bloch_skew,
                        row.bloch_sym_with_up
                            .map(|v| format!("{v:.6}"))
                            .unwrap_or_else(|| "-".into()),
                    );
                    rows.push(report::BlochRow {
                        lattice: row.lattice.clone(),
                        degree: row.degree,
                        universal_bound: row.universal_bound,
                        sup_norm: row.bloch_sym,
                        argmax: row.argmax.clone(),
                        grid,
                    });
                }
            } else {
                let (name, mut cell) = match (lattice, cell) {
                    (Some(name), None) => {
                        let cell = bloch::catalog(&name).map_err(input_err)?;
                        (name, cell)
                    }
                    (None, Some(path)) => {
                        let text = std::fs::read_to_string(&path)
                            .map_err(|e| (2u8, format!("cannot read {path}: {e}")))?;
                        let cell = input::CellInput::parse(&text)
                            .and_then(input::CellInput::build)
                            .map_err(input_err)?;
                        (path, cell)
                    }
                    _ => return Err((2, "pass --lattice NAME, --cell FILE, or --all".into())),
                };
                if !with_up {
                    cell = cell.without_triangles();
                }
                let grid = if cell.dim >= 4 { grid.min(12) } else if cell.dim == 3 { grid.min(32) } else { grid };
                let s = bloch::sup_norm(&cell, grid, tol, flavor, threads).map_err(numeric_err)?;
                let d = cell.coordination();
                println!(
                    "{name}: d = {d}, universal bound = {}, sup-norm = {:.9}, argmax = {:?}",
                    4 * d.saturating_sub(1),
                    s.value,
                    s.argmax
                );
                rows.push(report::BlochRow {
                    lattice: name,
                    degree: d,
                    universal_bound: (4 * d.saturating_sub(1)) as f64,
                    sup_norm: s.value,
                    argmax: s.argmax,
                    grid,
                });
            }
            report::emit("bloch", 0, rows, start.elapsed().as_millis(), out.as_deref())
                .map_err(input_err)?;
            Ok(0)
        }
        Command::ColorCheck { input, greedy, out } => {
            let start = Instant::now();
            let loaded = load(&input)?;
            let c = &loaded.complex;
            let coloring = match greedy {
                Some(p) => match color::Coloring::greedy(c.graph(), p) {
                    Ok(col) => col,
                    Err(e) => {
                        println!("FAIL: {e}");
                        return Ok(1);
                    }
                },
                None => match loaded.coloring {
                    Some(col) => col,
                    None => return Err((2, "input has no coloring; pass --greedy P".into())),
                },
            };
            let report = color::intertwine_residuals(c, &coloring, true).map_err(|e| match e {
                HodgeError::ImproperColoring { .. } => (1u8, format!("FAIL: {e}")),
                other => numeric_err(other),
            })?;
            let mut pass = true;
            let mut covered = 0usize;
            let mut rows = Vec::new();
            for deg in &report.degrees {
                let comp = deg.compatible.as_ref();
                let status = match comp {
                    Some(r) => {
                        let worst = r
                            .block
                            .max(r.block_normalized)
                            .max(r.coboundary.unwrap_or(0.0))
                            .max(r.adjoint.unwrap_or(0.0));
                        pass &= worst <= 1e-12;
                        covered += 1;
                        format!("compatible residual {worst:.3e}")
                    }
                    None => "no compatible sign system (spectra reported separately)".to_string(),
                };
                println!(
                    "degree {}: literal block residual {:.3e}; {status}",
                    deg.degree, deg.literal.block
                );
                rows.push(report::ColorCheckRow {
                    degree: deg.degree,
                    literal_coboundary: deg.literal.coboundary,
                    literal_block: deg.literal.block,
                    compatible_coboundary: comp.and_then(|r| r.coboundary),
                    compatible_adjoint: comp.and_then(|r| r.adjoint),
                    compatible_block: comp.map(|r| r.block),
                    compatible_block_normalized: comp.map(|r| r.block_normalized),
                    spectral_distance: deg.spectral_distance,
                });
            }
            let total = report.degrees.len();
            if !pass {
                println!("FAIL");
            } else if covered == total {
                println!("PASS ({covered}/{total} blocks intertwined)");
            } else {
                println!("PASS ({covered}/{total} blocks intertwined; the rest have no sign system)");
            }
            report::emit("color-check", 0, rows, start.elapsed().as_millis(), out.as_deref())
                .map_err(input_err)?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::Constants { values, degrees } => {
            if values.len() != 4 {
                return Err((2, "expected exactly four constants: c0 C0 c1 C1".into()));
            }
            let parsed: Vec<Ratio> = values
                .iter()
                .map(|s| Ratio::parse(s))
                .collect::<Result<_, _>>()
                .map_err(input_err)?;
            let cw = bounds::weighted_constant_exact(parsed[0], parsed[1], parsed[2], parsed[3])
                .map_err(input_err)?;
            println!("C_w = {} = {:.9}", cw, cw.to_f64());
            println!("adjacency prefactor C1/c1 = {}", parsed[3] / parsed[2]);
            for d in degrees {
                if d < 2 {
                    continue;
                }
                let line_degree = Ratio::integer(2 * (d as i128 - 1));
                let bound = cw * line_degree;
                println!(
                    "d = {d}: line degree {} -> weighted edge bound {} = {:.9}",
                    line_degree,
                    bound,
                    bound.to_f64()
                );
            }
            Ok(0)
        }
    }
}
