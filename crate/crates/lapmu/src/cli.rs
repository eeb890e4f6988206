//! `lapmu` command line.
//!
//! ```text
//! lapmu compute (--graph FILE | --gen SPEC) --p P [--vector]
//! lapmu sweep   (--graph FILE | --gen SPEC) [--grid 2,3,4,8,16,32]
//! lapmu exact   (--graph FILE | --gen SPEC) (--degree | --maxcut | --eigen | --biclique)
//! lapmu verify  (--graph FILE | --gen SPEC) [--json] [--json-file FILE]
//! lapmu gen     (--graph FILE | --gen SPEC)
//! ```
//!
//! Every subcommand takes `--format edge-list|dimacs` for `--graph` and
//! `--output FILE`; the solving subcommands take `--tol --max-iter
//! --restarts --seed --step`. Exit status: 0 success, 1 failed verification
//! or output failure, 2 usage or input error, 3 enumeration guard exceeded.
//! `LAPMU_MAXCUT_GUARD` overrides the max-cut vertex guard.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use lapmu_core::analysis::{sweep_with_guard, verify_theorems_with_guard};
use lapmu_core::kernels::basis;
use lapmu_core::{
    has_spanning_balanced_biclique, kkt_residual, max_cut_bruteforce_with_guard, mu_one, mu_two,
    multistart, Graph, Method, SolverConfig, MAXCUT_GUARD,
};
use thiserror::Error;

use crate::csv::emit_csv;
use crate::format::g17;
use crate::io::{parse_generator, parse_graph, write_edge_list, GraphFormat, ParseError};
use crate::report::{render_json, render_text};

pub const GUARD_ENV: &str = "LAPMU_MAXCUT_GUARD";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Input { path: String, source: ParseError },
    #[error(transparent)]
    Generator(ParseError),
    #[error(transparent)]
    Core(#[from] lapmu_core::Error),
    #[error("{context}: {source}")]
    Io {
        context: String,
        source: io::Error,
    },
    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } | CliError::Generator(_) => 2,
            CliError::Core(lapmu_core::Error::Guard { .. }) => 3,
            CliError::Core(_) => 2,
            CliError::Io { .. } | CliError::VerificationFailed => 1,
        }
    }

    fn hint(&self) -> Option<String> {
        match self {
            CliError::Core(lapmu_core::Error::Guard { .. }) => Some(format!(
                "raise the limit with {GUARD_ENV}=<n> if the exponential run time is acceptable"
            )),
            CliError::Core(lapmu_core::Error::NoEdges) => {
                Some("the graph has no edges; every value is 0".into())
            }
            _ => None,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lapmu",
    version,
    about = "Laplacian p-spectral radius of simple graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate mu_p for one p (exact at p = 1, 2, inf).
    Compute {
        #[command(flatten)]
        input: Input,
        /// Exponent: a real >= 1 or `inf`.
        #[arg(long)]
        p: String,
        /// Also print the maximizer, one entry per line.
        #[arg(long)]
        vector: bool,
        #[command(flatten)]
        solver: SolverFlags,
    },
    /// Sample mu_p over a p-grid and write CSV.
    Sweep {
        #[command(flatten)]
        input: Input,
        /// Strictly increasing reals in (1, inf), comma separated.
        #[arg(long, default_value = "2,3,4,8,16,32")]
        grid: String,
        #[command(flatten)]
        solver: SolverFlags,
    },
    /// Run one exact oracle.
    Exact {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        oracle: OracleChoice,
    },
    /// Check every claim on the graph; exit 1 if any asserted check fails.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Print JSON instead of CHECK lines.
        #[arg(long)]
        json: bool,
        /// Additionally write the JSON report here.
        #[arg(long)]
        json_file: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverFlags,
    },
    /// Write the graph as a 0-based edge list.
    Gen {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug, Args)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// Format of --graph files.
    #[arg(long, default_value = "edge-list")]
    format: GraphFormat,
    /// Write primary output here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Graph file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Generator spec such as complete:5, complete_bipartite:2,3,
    /// path:4, cycle:6, star:3, random:10,0.5,42.
    #[arg(long = "gen")]
    generator: Option<String>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct OracleChoice {
    /// mu_1 = maximum degree.
    #[arg(long)]
    degree: bool,
    /// Maximum cut by enumeration; mu_inf = 4 cut.
    #[arg(long)]
    maxcut: bool,
    /// mu_2 = top Laplacian eigenvalue.
    #[arg(long)]
    eigen: bool,
    /// Whether the graph contains a spanning K_{n/2,n/2}.
    #[arg(long)]
    biclique: bool,
}

#[derive(Debug, Args)]
struct SolverFlags {
    #[arg(long, default_value_t = SolverConfig::default().tol)]
    tol: f64,
    #[arg(long, default_value_t = SolverConfig::default().max_iter)]
    max_iter: usize,
    #[arg(long, default_value_t = SolverConfig::default().restarts)]
    restarts: usize,
    #[arg(long, default_value_t = SolverConfig::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = SolverConfig::default().step)]
    step: f64,
}

impl SolverFlags {
    fn config(&self) -> Result<SolverConfig, CliError> {
        let cfg = SolverConfig {
            tol: self.tol,
            max_iter: self.max_iter,
            restarts: self.restarts,
            seed: self.seed,
            step: self.step,
        };
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

/// Runs the CLI against the process environment and standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let guard = std::env::var(GUARD_ENV).ok();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, guard.as_deref(), &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with the guard override and both streams supplied by the caller.
pub fn run_with<I, T>(
    args: I,
    guard_override: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match execute(cli, guard_override, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Some(h) = e.hint() {
                let _ = writeln!(err, "hint: {h}");
            }
            e.exit_code()
        }
    }
}

fn parse_guard(raw: Option<&str>) -> Result<usize, CliError> {
    match raw {
        None => Ok(MAXCUT_GUARD),
        Some(s) => s.trim().parse().map_err(|_| {
            CliError::Usage(format!("{GUARD_ENV} must be a nonnegative integer, got {s:?}"))
        }),
    }
}

fn parse_p(raw: &str) -> Result<f64, CliError> {
    let p = match raw.trim() {
        "inf" | "infinity" => f64::INFINITY,
        s => s
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("--p expects a real >= 1 or `inf`, got {raw:?}")))?,
    };
    if !(p >= 1.0) {
        return Err(CliError::Usage(format!("--p must be >= 1, got {raw}")));
    }
    Ok(p)
}

fn parse_grid(raw: &str) -> Result<Vec<f64>, CliError> {
    raw.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("--grid entry {t:?} is not a real number")))
        })
        .collect()
}

fn load(input: &Input) -> Result<Graph, CliError> {
    if let Some(path) = &input.source.graph {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            context: format!("reading {}", path.display()),
            source,
        })?;
        return parse_graph(&text, input.format).map_err(|source| CliError::Input {
            path: path.display().to_string(),
            source,
        });
    }
    let spec = input
        .source
        .generator
        .as_deref()
        .expect("clap enforces one graph source");
    let kind = parse_generator(spec).map_err(CliError::Generator)?;
    Ok(Graph::generate(&kind)?)
}

fn emit(input: &Input, bytes: &[u8], out: &mut dyn Write) -> Result<(), CliError> {
    match &input.output {
        Some(path) => fs::write(path, bytes).map_err(|source| CliError::Io {
            context: format!("writing {}", path.display()),
            source,
        }),
        None => out.write_all(bytes).map_err(|source| CliError::Io {
            context: "writing standard output".into(),
            source,
        }),
    }
}

fn execute(
    cli: Cli,
    guard_raw: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    match cli.command {
        Command::Compute {
            input,
            p,
            vector,
            solver,
        } => {
            let p = parse_p(&p)?;
            let cfg = solver.config()?;
            let guard = parse_guard(guard_raw)?;
            let g = load(&input)?;
            let result = compute(&g, p, &cfg, guard, err)?;
            let mut text = format!(
                "p={} value={} method={} residual={} iterations={}\n",
                g17(p),
                g17(result.value),
                result.method,
                result.residual.map_or_else(|| "na".to_string(), g17),
                result
                    .iterations
                    .map_or_else(|| "na".to_string(), |i| i.to_string()),
            );
            if vector {
                for v in &result.x {
                    text.push_str(&g17(*v));
                    text.push('\n');
                }
            }
            emit(&input, text.as_bytes(), out)
        }
        Command::Sweep {
            input,
            grid,
            solver,
        } => {
            let grid = parse_grid(&grid)?;
            let cfg = solver.config()?;
            let guard = parse_guard(guard_raw)?;
            let g = load(&input)?;
            let s = sweep_with_guard(&g, &grid, &cfg, guard)?;
            for note in &s.notes {
                let _ = writeln!(err, "note: {note}");
            }
            if !s.checks_ok() {
                let _ = writeln!(err, "warning: a monotonicity or limit post-check failed");
            }
            let mut buf = Vec::new();
            emit_csv(&s.rows, &mut buf).map_err(|source| CliError::Io {
                context: "rendering CSV".into(),
                source,
            })?;
            emit(&input, &buf, out)
        }
        Command::Exact { input, oracle } => {
            let guard = parse_guard(guard_raw)?;
            let g = load(&input)?;
            let text = if oracle.degree {
                let d = mu_one(&g)?;
                format!("mu_1={} vertex={}\n", d.value, d.vertex)
            } else if oracle.maxcut {
                let cut = max_cut_bruteforce_with_guard(&g, guard)?;
                let join = |v: Vec<usize>| {
                    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                };
                format!(
                    "cut={} mu_inf={}\nS={}\nT={}\n",
                    cut.cut_size,
                    4 * cut.cut_size,
                    join(cut.s()),
                    join(cut.t())
                )
            } else if oracle.eigen {
                let e = mu_two(&g)?;
                format!(
                    "mu_2={} iterations={} converged={}\n",
                    g17(e.value),
                    e.iterations,
                    e.converged
                )
            } else {
                if g.n() % 2 == 1 {
                    let _ = writeln!(err, "note: n is odd; no spanning K_{{n/2,n/2}} exists");
                }
                format!("biclique={}\n", has_spanning_balanced_biclique(&g))
            };
            emit(&input, text.as_bytes(), out)
        }
        Command::Verify {
            input,
            json,
            json_file,
            solver,
        } => {
            let cfg = solver.config()?;
            let guard = parse_guard(guard_raw)?;
            let g = load(&input)?;
            let report = verify_theorems_with_guard(&g, &cfg, guard)?;
            let doc = render_json(&report);
            let pretty = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
            if let Some(path) = &json_file {
                fs::write(path, &pretty).map_err(|source| CliError::Io {
                    context: format!("writing {}", path.display()),
                    source,
                })?;
            }
            let text = if json { pretty } else { render_text(&report) };
            emit(&input, text.as_bytes(), out)?;
            if report.all_passed() {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            }
        }
        Command::Gen { input } => {
            let g = load(&input)?;
            emit(&input, write_edge_list(&g).as_bytes(), out)
        }
    }
}

struct Computed {
    value: f64,
    method: Method,
    residual: Option<f64>,
    iterations: Option<usize>,
    x: Vec<f64>,
}

/// Routes `p = 1`, `2` and `inf` to the exact oracles and everything else to
/// multistart.
fn compute(
    g: &Graph,
    p: f64,
    cfg: &SolverConfig,
    guard: usize,
    err: &mut dyn Write,
) -> Result<Computed, CliError> {
    if p == 1.0 {
        let _ = writeln!(
            err,
            "note: p=1 is the maximum degree, attained at a basis vector; no iterative solve"
        );
        let d = mu_one(g)?;
        return Ok(Computed {
            value: d.value as f64,
            method: Method::ExactDegree,
            residual: None,
            iterations: None,
            x: basis(g.n(), d.vertex),
        });
    }
    if p == 2.0 {
        let e = mu_two(g)?;
        let residual = if e.degenerate {
            None
        } else {
            Some(kkt_residual(g, 2.0, &e.vector)?)
        };
        return Ok(Computed {
            value: e.value,
            method: Method::ExactEigen,
            residual,
            iterations: Some(e.iterations),
            x: e.vector,
        });
    }
    if p == f64::INFINITY {
        let cut = max_cut_bruteforce_with_guard(g, guard)?;
        let x: Vec<f64> = cut
            .side_mask
            .iter()
            .map(|&s| if s { 1.0 } else { -1.0 })
            .collect();
        return Ok(Computed {
            value: 4.0 * cut.cut_size as f64,
            method: Method::ExactMaxcut,
            residual: None,
            iterations: None,
            x,
        });
    }
    let est = multistart(g, p, cfg)?;
    if est.failed_starts > 0 {
        let _ = writeln!(
            err,
            "warning: {} of {} starts failed",
            est.failed_starts, cfg.restarts
        );
    }
    Ok(Computed {
        value: est.value,
        method: est.method,
        residual: Some(est.residual),
        iterations: Some(est.iterations),
        x: est.x,
    })
}
