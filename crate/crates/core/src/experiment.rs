//! Replicated Monte-Carlo experiments: per-rep graphs from fixed
//! substreams, folded in rep order so results never depend on scheduling.

use crate::gengraph::{generate, GenError, GenOptions, ModelTag};
use crate::graphstats::{clustering_report, KahanSum};
use crate::limits::{asymptotic_regime, degree_pmf, gamma_cc, gamma_k, LimitContext, LimitError};
use crate::params::{derive_params, ParamError};
use crate::rng::replicate_seed;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error("I/O error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl ExperimentError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        ExperimentError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Settings as read from a config file or the command line; unset fields
/// fall through to the next layer.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub alpha: Option<Vec<f64>>,
    pub nu: Option<f64>,
    pub n: Option<i64>,
    pub reps: Option<u64>,
    pub kmax: Option<u64>,
    pub seed: Option<u64>,
    pub model: Option<ModelTag>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub tol: Option<f64>,
}

fn parse_list(v: &str) -> Result<Vec<f64>, String> {
    v.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad number '{t}': {e}")))
        .collect()
}

impl Settings {
    /// Parses flat `key=value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut s = Settings::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value, got '{line}'", lineno + 1))?;
            let (k, v) = (k.trim(), v.trim());
            let err = |e: String| format!("line {}: {k}: {e}", lineno + 1);
            match k {
                "alpha" => s.alpha = Some(parse_list(v).map_err(err)?),
                "nu" => s.nu = Some(v.parse().map_err(|e| err(format!("{e}")))?),
                "n" => s.n = Some(v.parse().map_err(|e| err(format!("{e}")))?),
                "reps" => s.reps = Some(v.parse().map_err(|e| err(format!("{e}")))?),
                "kmax" => s.kmax = Some(v.parse().map_err(|e| err(format!("{e}")))?),
                "seed" => s.seed = Some(v.parse().map_err(|e| err(format!("{e}")))?),
                "model" => s.model = Some(v.parse().map_err(err)?),
                "out" => s.out = Some(PathBuf::from(v)),
                "threads" => s.threads = Some(v.parse().map_err(|e| err(format!("{e}")))?),
                "tol" => s.tol = Some(v.parse().map_err(|e| err(format!("{e}")))?),
                _ => return Err(format!("line {}: unknown key '{k}'", lineno + 1)),
            }
        }
        Ok(s)
    }

    /// Fields of `self` win over those of `base`.
    pub fn over(self, base: Settings) -> Settings {
        Settings {
            alpha: self.alpha.or(base.alpha),
            nu: self.nu.or(base.nu),
            n: self.n.or(base.n),
            reps: self.reps.or(base.reps),
            kmax: self.kmax.or(base.kmax),
            seed: self.seed.or(base.seed),
            model: self.model.or(base.model),
            out: self.out.or(base.out),
            threads: self.threads.or(base.threads),
            tol: self.tol.or(base.tol),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// One α for most commands; the α-grid for `fig-gamma`.
    pub alphas: Vec<f64>,
    pub nu: f64,
    pub n: u64,
    pub reps: u64,
    pub k_max: u64,
    pub seed: u64,
    pub model: ModelTag,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    /// Applies defaults (α=0.8, ν=1, n=10000, 100 reps, kmax=25, seed 1,
    /// KPKVB model, output in the current directory) and validates.
    pub fn from_settings(s: &Settings) -> Result<Self, ExperimentError> {
        let alphas = s.alpha.clone().unwrap_or_else(|| vec![0.8]);
        if alphas.is_empty() {
            return Err(ExperimentError::Config("empty alpha list".into()));
        }
        let cfg = ExperimentConfig {
            alphas,
            nu: s.nu.unwrap_or(1.0),
            n: 0,
            reps: s.reps.unwrap_or(100),
            k_max: s.kmax.unwrap_or(25),
            seed: s.seed.unwrap_or(1),
            model: s.model.unwrap_or(ModelTag::Kpkvb),
            output_dir: s.out.clone().unwrap_or_else(|| PathBuf::from(".")),
        };
        let n = s.n.unwrap_or(10_000);
        for &a in &cfg.alphas {
            derive_params(a, cfg.nu, n)?;
        }
        if cfg.reps < 1 {
            return Err(ExperimentError::Config("reps must be at least 1".into()));
        }
        if cfg.k_max < 2 {
            return Err(ExperimentError::Config(format!("kmax must be at least 2, got {}", cfg.k_max)));
        }
        if cfg.model == ModelTag::Typical {
            return Err(ExperimentError::Config("experiments need kpkvb, poissonized or box".into()));
        }
        Ok(ExperimentConfig { n: n as u64, ..cfg })
    }

    pub fn single_alpha(&self) -> Result<f64, ExperimentError> {
        match self.alphas.as_slice() {
            [a] => Ok(*a),
            _ => Err(ExperimentError::Config(format!("expected one alpha, got {:?}", self.alphas))),
        }
    }

    /// `# key=value` lines echoing the configuration.
    pub fn header(&self, command: &str) -> String {
        let alphas: Vec<String> = self.alphas.iter().map(|a| a.to_string()).collect();
        format!(
            "# command={command}\n# alpha={}\n# nu={}\n# n={}\n# reps={}\n# kmax={}\n# seed={}\n# model={}\n",
            alphas.join(","),
            self.nu,
            self.n,
            self.reps,
            self.k_max,
            self.seed,
            self.model
        )
    }
}

/// Runs `f(rep, rep_seed)` for every rep, a batch at a time in parallel,
/// and hands the results to `sink` strictly in rep order as each batch
/// completes.
pub fn for_each_rep<T: Send>(
    reps: u64,
    seed: u64,
    f: impl Fn(u64, u64) -> Result<T, ExperimentError> + Sync + Send,
    mut sink: impl FnMut(u64, T) -> Result<(), ExperimentError>,
) -> Result<(), ExperimentError> {
    let batch = batch_size() as u64;
    let mut start = 0;
    while start < reps {
        let end = (start + batch).min(reps);
        let results = run_batch(start..end, |r| f(r, replicate_seed(seed, r)));
        for (r, res) in (start..end).zip(results) {
            sink(r, res?)?;
        }
        start = end;
    }
    Ok(())
}

#[cfg(feature = "parallel")]
fn batch_size() -> usize {
    rayon::current_num_threads().max(1)
}

#[cfg(not(feature = "parallel"))]
fn batch_size() -> usize {
    1
}

#[cfg(feature = "parallel")]
fn run_batch<T: Send>(range: std::ops::Range<u64>, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_batch<T>(range: std::ops::Range<u64>, f: impl Fn(u64) -> T) -> Vec<T> {
    range.map(f).collect()
}

/// Mean and standard error (sample s.d. over sqrt(reps)) of per-rep values.
#[derive(Debug, Clone, Copy, Default)]
pub struct MeanSe {
    count: u64,
    sum: KahanSum,
    sum_sq: KahanSum,
}

impl MeanSe {
    pub fn add(&mut self, x: f64) {
        self.count += 1;
        self.sum.add(x);
        self.sum_sq.add(x * x);
    }

    pub fn mean(&self) -> f64 {
        self.sum.value() / self.count as f64
    }

    /// NaN with fewer than two values.
    pub fn se(&self) -> f64 {
        if self.count < 2 {
            return f64::NAN;
        }
        let c = self.count as f64;
        let m = self.mean();
        let var = ((self.sum_sq.value() - c * m * m) / (c - 1.0)).max(0.0);
        (var / c).sqrt()
    }
}

/// Per-rep streaming log: one CSV line per rep, flushed immediately.
struct RepLog {
    path: PathBuf,
    file: Option<io::BufWriter<std::fs::File>>,
}

impl RepLog {
    fn open(cfg: &ExperimentConfig, name: &str, header: &str) -> Result<Self, ExperimentError> {
        let path = cfg.output_dir.join(format!("{name}.reps.csv"));
        let mut file = io::BufWriter::new(std::fs::File::create(&path).map_err(|e| ExperimentError::io(&path, e))?);
        file.write_all(header.as_bytes()).map_err(|e| ExperimentError::io(&path, e))?;
        Ok(RepLog { path, file: Some(file) })
    }

    fn line(&mut self, line: &str) -> Result<(), ExperimentError> {
        let path = &self.path;
        let f = self.file.as_mut().expect("open log");
        writeln!(f, "{line}").and_then(|_| f.flush()).map_err(|e| ExperimentError::io(path, e))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaKRow {
    pub k: u64,
    pub c_mean: f64,
    pub c_se: f64,
    pub gamma_k: f64,
    pub asymptote: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaRow {
    pub alpha: f64,
    pub c_mean: f64,
    pub c_se: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeRow {
    pub k: u64,
    pub frac_mean: f64,
    pub frac_se: f64,
    pub pi_k: f64,
}

fn opts() -> GenOptions {
    GenOptions::default()
}

/// Per-rep c(k; G) for k = 2..=kmax (zero where no vertex has degree k),
/// averaged over reps and set against γ(k) and its large-k asymptote.
/// With `log` set, each rep's row is flushed to `fig-gammak.reps.csv`.
pub fn fig_gammak(cfg: &ExperimentConfig, log: bool) -> Result<Vec<GammaKRow>, ExperimentError> {
    let alpha = cfg.single_alpha()?;
    let params = derive_params(alpha, cfg.nu, cfg.n as i64)?;
    let ks: Vec<u64> = (2..=cfg.k_max).collect();
    let mut acc = vec![MeanSe::default(); ks.len()];
    let mut logger = if log {
        let cols: Vec<String> = ks.iter().map(|k| format!("c{k}")).collect();
        Some(RepLog::open(cfg, "fig-gammak", &format!("{}rep,{}\n", cfg.header("fig-gammak"), cols.join(",")))?)
    } else {
        None
    };
    for_each_rep(
        cfg.reps,
        cfg.seed,
        |_, s| {
            let g = generate(&params, s, cfg.model, &opts())?;
            let rep = clustering_report(&g.adjacency);
            Ok(ks.iter().map(|&k| rep.c_k(k as usize)).collect::<Vec<f64>>())
        },
        |r, cs| {
            for (a, &c) in acc.iter_mut().zip(&cs) {
                a.add(c);
            }
            if let Some(l) = logger.as_mut() {
                let vals: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                l.line(&format!("{r},{}", vals.join(",")))?;
            }
            Ok(())
        },
    )?;
    let ctx = LimitContext::new(alpha, cfg.nu)?;
    let asym = asymptotic_regime(&ctx)?;
    ks.iter()
        .zip(&acc)
        .map(|(&k, a)| {
            Ok(GammaKRow {
                k,
                c_mean: a.mean(),
                c_se: a.se(),
                gamma_k: gamma_k(&ctx, k)?,
                asymptote: asym.approx(k as f64),
            })
        })
        .collect()
}

/// Per α in the grid: mean c(G) over reps against γ.
pub fn fig_gamma(cfg: &ExperimentConfig, log: bool) -> Result<Vec<GammaRow>, ExperimentError> {
    let mut logger = if log {
        Some(RepLog::open(cfg, "fig-gamma", &format!("{}alpha,rep,c_global\n", cfg.header("fig-gamma")))?)
    } else {
        None
    };
    let mut rows = Vec::new();
    for &alpha in &cfg.alphas {
        let params = derive_params(alpha, cfg.nu, cfg.n as i64)?;
        let mut acc = MeanSe::default();
        for_each_rep(
            cfg.reps,
            cfg.seed,
            |_, s| Ok(clustering_report(&generate(&params, s, cfg.model, &opts())?.adjacency).c_global),
            |r, c| {
                acc.add(c);
                match logger.as_mut() {
                    Some(l) => l.line(&format!("{alpha},{r},{c}")),
                    None => Ok(()),
                }
            },
        )?;
        rows.push(GammaRow {
            alpha,
            c_mean: acc.mean(),
            c_se: acc.se(),
            gamma: gamma_cc(&LimitContext::new(alpha, cfg.nu)?)?,
        });
    }
    Ok(rows)
}

/// Per k = 0..=kmax: mean of N(k)/n over reps against π(k).
pub fn degrees(cfg: &ExperimentConfig, log: bool) -> Result<Vec<DegreeRow>, ExperimentError> {
    let alpha = cfg.single_alpha()?;
    let params = derive_params(alpha, cfg.nu, cfg.n as i64)?;
    let ks: Vec<u64> = (0..=cfg.k_max).collect();
    let mut acc = vec![MeanSe::default(); ks.len()];
    let mut logger = if log {
        let cols: Vec<String> = ks.iter().map(|k| format!("N{k}")).collect();
        Some(RepLog::open(cfg, "degrees", &format!("{}rep,vertices,{}\n", cfg.header("degrees"), cols.join(",")))?)
    } else {
        None
    };
    let nf = cfg.n as f64;
    for_each_rep(
        cfg.reps,
        cfg.seed,
        |_, s| {
            let g = generate(&params, s, cfg.model, &opts())?;
            let rep = clustering_report(&g.adjacency);
            Ok((g.vertex_count(), ks.iter().map(|&k| rep.n_k(k as usize)).collect::<Vec<u64>>()))
        },
        |r, (vertices, counts)| {
            for (a, &c) in acc.iter_mut().zip(&counts) {
                a.add(c as f64 / nf);
            }
            if let Some(l) = logger.as_mut() {
                let vals: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                l.line(&format!("{r},{vertices},{}", vals.join(",")))?;
            }
            Ok(())
        },
    )?;
    let ctx = LimitContext::new(alpha, cfg.nu)?;
    ks.iter()
        .zip(&acc)
        .map(|(&k, a)| {
            Ok(DegreeRow {
                k,
                frac_mean: a.mean(),
                frac_se: a.se(),
                pi_k: degree_pmf(&ctx, k)?,
            })
        })
        .collect()
}

pub fn gammak_csv(cfg: &ExperimentConfig, rows: &[GammaKRow]) -> String {
    let mut s = cfg.header("fig-gammak");
    s.push_str("k,c_mean,c_se,gamma_k,asymptote\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{},{}", r.k, r.c_mean, r.c_se, r.gamma_k, r.asymptote);
    }
    s
}

pub fn gamma_csv(cfg: &ExperimentConfig, rows: &[GammaRow]) -> String {
    let mut s = cfg.header("fig-gamma");
    s.push_str("alpha,c_mean,c_se,gamma\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{}", r.alpha, r.c_mean, r.c_se, r.gamma);
    }
    s
}

pub fn degrees_csv(cfg: &ExperimentConfig, rows: &[DegreeRow]) -> String {
    let mut s = cfg.header("degrees");
    s.push_str("k,frac_mean,frac_se,pi_k\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{}", r.k, r.frac_mean, r.frac_se, r.pi_k);
    }
    s
}

/// Splits a report into its `#` metadata (as key → value) and its header row.
pub fn read_report_header(text: &str) -> Option<(BTreeMap<String, String>, Vec<String>)> {
    let mut meta = BTreeMap::new();
    for line in text.lines() {
        if let Some(m) = line.strip_prefix('#') {
            if let Some((k, v)) = m.trim().split_once('=') {
                meta.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        return Some((meta, line.split(',').map(|c| c.trim().to_string()).collect()));
    }
    None
}

/// Gnuplot script drawing the limit curve and the simulated means with
/// error bars. `csv_ref` is the report path relative to the script.
pub fn plot_script(report: &str, csv_ref: &str, image: &str) -> Result<String, String> {
    let (meta, cols) = read_report_header(report).ok_or("report has no header row")?;
    let has = |c: &str| cols.iter().any(|x| x == c);
    let (x, mean, se, curve, extra, xlabel, ylabel, logscale) = if has("gamma_k") {
        ("k", "c_mean", "c_se", "gamma_k", Some("asymptote"), "k", "c(k)", "set logscale xy")
    } else if has("gamma") {
        ("alpha", "c_mean", "c_se", "gamma", None, "alpha", "c(G)", "unset logscale")
    } else if has("pi_k") {
        ("k", "frac_mean", "frac_se", "pi_k", None, "k", "N(k)/n", "set logscale y")
    } else {
        return Err(format!("unrecognised report columns {cols:?}"));
    };
    for c in [x, mean, se, curve].into_iter().chain(extra) {
        if !has(c) {
            return Err(format!("report lacks column '{c}'"));
        }
    }
    let title: Vec<String> = ["command", "alpha", "nu", "n", "reps"]
        .iter()
        .filter_map(|k| meta.get(*k).map(|v| format!("{k}={v}")))
        .collect();
    let mut s = String::new();
    let _ = writeln!(s, "# gnuplot script");
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set datafile commentschars '#'");
    let _ = writeln!(s, "set datafile columnheaders");
    let _ = writeln!(s, "set terminal pngcairo size 900,600");
    let _ = writeln!(s, "set output '{image}'");
    let _ = writeln!(s, "set title '{}' noenhanced", title.join(" "));
    let _ = writeln!(s, "set xlabel '{xlabel}'");
    let _ = writeln!(s, "set ylabel '{ylabel}'");
    let _ = writeln!(s, "{logscale}");
    let _ = writeln!(s, "set key top right");
    let mut plot = format!(
        "plot '{csv_ref}' using '{x}':'{curve}' with lines lw 2 title '{curve}', \\\n     '{csv_ref}' using '{x}':'{mean}':'{se}' with yerrorbars pt 5 title 'simulation'"
    );
    if let Some(e) = extra {
        plot.push_str(&format!(", \\\n     '{csv_ref}' using '{x}':'{e}' with lines dt 2 title '{e}'"));
    }
    let _ = writeln!(s, "{plot}");
    Ok(s)
}

/// Path of `target` relative to directory `from`; both are canonicalised
/// when possible.
pub fn relative_path(target: &Path, from: &Path) -> PathBuf {
    let canon = |p: &Path| p.canonicalize().unwrap_or_else(|_| p.to_path_buf());
    let (t, f) = (canon(target), canon(from));
    let tc: Vec<_> = t.components().collect();
    let fc: Vec<_> = f.components().collect();
    let common = tc.iter().zip(&fc).take_while(|(a, b)| a == b).count();
    let mut out = PathBuf::new();
    for _ in common..fc.len() {
        out.push("..");
    }
    for c in &tc[common..] {
        out.push(c.as_os_str());
    }
    out
}
