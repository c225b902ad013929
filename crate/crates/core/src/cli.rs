//! The `hypclust` command line. `run` returns the process exit code:
//! 0 success, 1 validation error, 2 numeric-gate failure, 3 I/O error.

use crate::experiment::{
    degrees, degrees_csv, fig_gamma, fig_gammak, gamma_csv, gammak_csv, plot_script, relative_path, ExperimentConfig,
    ExperimentError, Settings,
};
use crate::gengraph::{generate, GenError, GenOptions};
use crate::limits::{
    asymptotic_regime, degree_pmf, gamma_cc, gamma_cc_oracle, gamma_k, gamma_k_oracle, LimitContext, LimitError,
};
use crate::params::derive_params;
use crate::specfun::QuadSpec;
use clap::{Args, Parser, Subcommand};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_GATE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hypclust", version, about = "Clustering in hyperbolic random graphs: sampling, limits and oracles")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Exponent α > 1/2; `experiment fig-gamma` takes a comma-separated grid.
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    alpha: Option<Vec<f64>>,
    /// Density parameter ν > 0.
    #[arg(long, global = true, allow_negative_numbers = true)]
    nu: Option<f64>,
    /// Number of vertices (Poisson mean for the Poissonized model).
    #[arg(long, global = true, allow_negative_numbers = true)]
    n: Option<i64>,
    /// Monte-Carlo repetitions per cell.
    #[arg(long, global = true)]
    reps: Option<u64>,
    /// Largest degree k reported.
    #[arg(long, global = true)]
    kmax: Option<u64>,
    /// Master seed; every rep and vertex stream derives from it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// kpkvb, poissonized or box.
    #[arg(long, global = true)]
    model: Option<String>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Flat key=value file; command-line flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Gate for `oracle`: largest accepted |closed form - oracle|.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Sample a graph; writes edges.txt and coords.csv.
    Generate,
    /// Tabulate γ(k), π(k) and the asymptote for k = 2..=kmax; writes limits.csv.
    Limits,
    /// Compare closed forms with direct quadrature; writes oracle.csv.
    Oracle,
    /// Monte-Carlo experiments.
    Experiment {
        #[command(subcommand)]
        which: Which,
    },
    /// Emit a gnuplot script for a report.
    Plot { report: PathBuf },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Which {
    /// Mean c(G) per α against γ.
    FigGamma,
    /// Mean c(k; G) per k against γ(k).
    FigGammak,
    /// Mean N(k)/n per k against π(k).
    Degrees,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn validation(m: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: m.to_string(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }
}

fn limit_failure(e: LimitError) -> Failure {
    match e {
        LimitError::Special(_) => Failure {
            code: EXIT_GATE,
            message: e.to_string(),
        },
        _ => Failure::validation(e),
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Io { .. } => Failure {
                code: EXIT_IO,
                message: e.to_string(),
            },
            ExperimentError::Limit(l) => limit_failure(l),
            _ => Failure::validation(e),
        }
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        Failure::validation(e)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn settings(c: &Common) -> Result<Settings, Failure> {
    let flags = Settings {
        alpha: c.alpha.clone(),
        nu: c.nu,
        n: c.n,
        reps: c.reps,
        kmax: c.kmax,
        seed: c.seed,
        model: c.model.as_deref().map(str::parse).transpose().map_err(Failure::validation)?,
        out: c.out.clone(),
        threads: c.threads,
        tol: c.tol,
    };
    let file = match &c.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::io(p, e))?;
            Settings::parse(&text).map_err(|e| Failure::validation(format!("{}: {e}", p.display())))?
        }
        None => Settings::default(),
    };
    Ok(flags.over(file))
}

fn set_threads(threads: Option<usize>) -> Result<(), Failure> {
    match threads {
        Some(0) => Err(Failure::validation("threads must be at least 1")),
        #[cfg(feature = "parallel")]
        Some(t) => {
            // A second call in the same process keeps the first pool.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            Ok(())
        }
        _ => Ok(()),
    }
}

fn write_file(dir: &Path, name: &str, contents: &[u8]) -> Result<PathBuf, Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| Failure::io(&path, e))?;
    println!("wrote {}", path.display());
    Ok(path)
}

fn ensure_dir(dir: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let s = settings(&cli.common)?;
    set_threads(s.threads)?;
    match cli.cmd {
        Cmd::Plot { report } => cmd_plot(&report, s.out.as_deref()),
        Cmd::Generate => cmd_generate(&ExperimentConfig::from_settings(&s)?),
        Cmd::Limits => cmd_limits(&ExperimentConfig::from_settings(&s)?),
        Cmd::Oracle => cmd_oracle(&ExperimentConfig::from_settings(&s)?, s.tol.unwrap_or(1e-6)),
        Cmd::Experiment { which } => {
            let cfg = ExperimentConfig::from_settings(&s)?;
            ensure_dir(&cfg.output_dir)?;
            let (name, body) = match which {
                Which::FigGamma => ("fig-gamma.csv", gamma_csv(&cfg, &fig_gamma(&cfg, true)?)),
                Which::FigGammak => ("fig-gammak.csv", gammak_csv(&cfg, &fig_gammak(&cfg, true)?)),
                Which::Degrees => ("degrees.csv", degrees_csv(&cfg, &degrees(&cfg, true)?)),
            };
            write_file(&cfg.output_dir, name, body.as_bytes()).map(|_| ())
        }
    }
}

fn cmd_generate(cfg: &ExperimentConfig) -> Result<(), Failure> {
    let alpha = cfg.single_alpha()?;
    let params = derive_params(alpha, cfg.nu, cfg.n as i64).map_err(Failure::validation)?;
    let g = generate(&params, cfg.seed, cfg.model, &GenOptions::default())?;
    let mut edges = Vec::new();
    g.write_edge_list(&mut edges).expect("writing to memory");
    let mut coords = Vec::new();
    g.write_coords(&mut coords).expect("writing to memory");
    write_file(&cfg.output_dir, "edges.txt", &edges)?;
    write_file(&cfg.output_dir, "coords.csv", &coords)?;
    println!(
        "{} vertices, {} edges, mean degree {:.4}",
        g.vertex_count(),
        g.adjacency.edge_count(),
        g.mean_degree()
    );
    Ok(())
}

fn limit_header(cfg: &ExperimentConfig, command: &str, alpha: f64) -> String {
    format!("# command={command}\n# alpha={alpha}\n# nu={}\n# kmax={}\n", cfg.nu, cfg.k_max)
}

fn cmd_limits(cfg: &ExperimentConfig) -> Result<(), Failure> {
    let alpha = cfg.single_alpha()?;
    let ctx = LimitContext::new(alpha, cfg.nu).map_err(limit_failure)?;
    let gamma = gamma_cc(&ctx).map_err(limit_failure)?;
    let asym = asymptotic_regime(&ctx).map_err(limit_failure)?;
    let mut s = limit_header(cfg, "limits", alpha);
    let _ = writeln!(s, "# gamma={gamma}");
    let _ = writeln!(s, "# asymptote={} * {}", asym.c_alpha_nu, asym.scale.describe());
    s.push_str("k,gamma_k,pi_k,asymptote\n");
    for k in 2..=cfg.k_max {
        let g = gamma_k(&ctx, k).map_err(limit_failure)?;
        let p = degree_pmf(&ctx, k).map_err(limit_failure)?;
        let _ = writeln!(s, "{k},{g},{p},{}", asym.approx(k as f64));
    }
    println!("gamma = {gamma}");
    write_file(&cfg.output_dir, "limits.csv", s.as_bytes()).map(|_| ())
}

fn cmd_oracle(cfg: &ExperimentConfig, tol: f64) -> Result<(), Failure> {
    if !(tol >= 0.0) {
        return Err(Failure::validation(format!("tol must be non-negative, got {tol}")));
    }
    let alpha = cfg.single_alpha()?;
    let ctx = LimitContext::new(alpha, cfg.nu).map_err(limit_failure)?;
    let spec = QuadSpec::default();
    let mut worst = 0.0f64;
    let mut s = limit_header(cfg, "oracle", alpha);
    let _ = writeln!(s, "# tol={tol}");
    let g = gamma_cc(&ctx).map_err(limit_failure)?;
    let go = gamma_cc_oracle(&ctx, &spec).map_err(limit_failure)?;
    worst = worst.max((g - go).abs());
    let _ = writeln!(s, "# gamma={g} gamma_oracle={go} abs_diff={}", (g - go).abs());
    s.push_str("k,gamma_k,gamma_k_oracle,abs_diff\n");
    for k in 2..=cfg.k_max {
        let v = gamma_k(&ctx, k).map_err(limit_failure)?;
        let o = gamma_k_oracle(&ctx, k, &spec).map_err(limit_failure)?;
        let d = (v - o).abs();
        worst = worst.max(d);
        let _ = writeln!(s, "{k},{v},{o},{d}");
    }
    write_file(&cfg.output_dir, "oracle.csv", s.as_bytes())?;
    println!("largest |closed form - oracle| = {worst:e} (gate {tol:e})");
    if worst > tol {
        return Err(Failure {
            code: EXIT_GATE,
            message: format!("oracle gate failed: {worst:e} > {tol:e}"),
        });
    }
    Ok(())
}

fn cmd_plot(report: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let text = std::fs::read_to_string(report).map_err(|e| Failure::io(report, e))?;
    let dir = match out {
        Some(d) => d.to_path_buf(),
        None => report.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    let dir = if dir.as_os_str().is_empty() { PathBuf::from(".") } else { dir };
    ensure_dir(&dir)?;
    let stem = report.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
    let csv_ref = relative_path(report, &dir);
    let script = plot_script(&text, &csv_ref.to_string_lossy(), &format!("{stem}.png")).map_err(Failure::validation)?;
    write_file(&dir, &format!("{stem}.gp"), script.as_bytes()).map(|_| ())
}
