//! Limiting quantities of the model in the n → ∞ limit: the degree law π(k),
//! the triangle probability of the typical point, P(y), the clustering
//! function γ(k) and coefficient γ, their large-k behaviour, finite-n
//! expected degrees, and quadrature oracles for the closed forms.
//!
//! Closed forms are evaluated with every large factor in log space so that
//! k up to [`K_MAX`] works without overflow.

mod alpha_one;
mod asymptotics;
mod closed;
mod finite;
mod oracle;

pub use asymptotics::{asymptotic_regime, AsymptoticRegime, Regime, Scale};
pub use finite::{mu_box, mu_po};
pub use oracle::{gamma_cc_oracle, gamma_k_oracle, gamma_k_oracle_with, p_y_oracle, OracleTruncation};

use crate::params::{check_alpha_nu, eta_of, xi_of, ParamError};
use crate::specfun::{ln_gamma, ln_upper_inc_gamma, QuadSpec, SpecError};

/// Largest k accepted by the closed forms.
pub const K_MAX: u64 = 1_000_000;

/// Half-width of the band around α = 1 that uses the dedicated α = 1 formulas.
pub const ALPHA_ONE_BAND: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LimitError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Special(#[from] SpecError),
    #[error("k = {0} is outside the supported range")]
    K(u64),
    #[error("height must be finite and nonnegative, got {0}")]
    Height(f64),
}

/// n-free parameters of the limit model plus the quadrature setting used
/// inside the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitContext {
    pub alpha: f64,
    pub nu: f64,
    pub xi: f64,
    pub eta: f64,
    pub quad: QuadSpec,
}

impl LimitContext {
    pub fn new(alpha: f64, nu: f64) -> Result<Self, LimitError> {
        check_alpha_nu(alpha, nu)?;
        Ok(LimitContext {
            alpha,
            nu,
            xi: xi_of(alpha, nu),
            eta: eta_of(nu),
            quad: QuadSpec::tight(),
        })
    }

    pub fn with_quad(mut self, quad: QuadSpec) -> Self {
        self.quad = quad;
        self
    }

    pub(crate) fn is_alpha_one(&self) -> bool {
        (self.alpha - 1.0).abs() < ALPHA_ONE_BAND
    }
}

fn check_height(y: f64) -> Result<(), LimitError> {
    if y >= 0.0 && y.is_finite() {
        Ok(())
    } else {
        Err(LimitError::Height(y))
    }
}

/// μ(y) = ξ e^{y/2}, the expected degree of the typical point at height y.
pub fn mu_ball(ctx: &LimitContext, y: f64) -> f64 {
    ctx.xi * (0.5 * y).exp()
}

pub fn ln_rho(ctx: &LimitContext, y: f64, k: u64) -> f64 {
    let ln_mu = ctx.xi.ln() + 0.5 * y;
    let kf = k as f64;
    let head = if k == 0 { 0.0 } else { kf * ln_mu };
    head - ln_mu.exp() - ln_gamma(kf + 1.0)
}

/// ρ(y, k) = P(Po(μ(y)) = k).
pub fn rho(ctx: &LimitContext, y: f64, k: u64) -> Result<f64, LimitError> {
    check_height(y)?;
    Ok(ln_rho(ctx, y, k).exp())
}

pub fn ln_degree_pmf(ctx: &LimitContext, k: u64) -> Result<f64, LimitError> {
    if k > K_MAX {
        return Err(LimitError::K(k));
    }
    let a = ctx.alpha;
    let kf = k as f64;
    Ok((2.0 * a).ln() + 2.0 * a * ctx.xi.ln() + ln_upper_inc_gamma(kf - 2.0 * a, ctx.xi)? - ln_gamma(kf + 1.0))
}

/// π(k) = 2α ξ^{2α} Γ⁺(k - 2α, ξ) / k!.
pub fn degree_pmf(ctx: &LimitContext, k: u64) -> Result<f64, LimitError> {
    Ok(ln_degree_pmf(ctx, k)?.exp())
}

/// Probability that two neighbours of a point at height y0, at heights y1
/// and y2 with independent uniform horizontal offsets, are adjacent.
pub fn triangle_prob(y0: f64, y1: f64, y2: f64) -> f64 {
    let (y1, y2) = if y1 <= y2 { (y1, y2) } else { (y2, y1) };
    let z0 = (-0.5 * y0).exp();
    let z1 = (-0.5 * y1).exp();
    let z2 = (-0.5 * y2).exp();
    let g = |a: f64, b: f64, c: f64| 0.25 * (c / b + b / c + a * a / (b * c) + 2.0 - 2.0 * a / b - 2.0 * a / c);
    let p = if z0 > z1 {
        if z0 >= z1 + z2 {
            1.0
        } else {
            1.0 - g(z0, z1, z2)
        }
    } else if z1 >= z0 + z2 {
        z0 / z1
    } else {
        z0 / z1 * (1.0 - g(z1, z0, z2))
    };
    p.clamp(0.0, 1.0)
}

/// P(y): probability that two uniformly chosen neighbours of the typical
/// point at height y are adjacent.
pub fn p_y(ctx: &LimitContext, y: f64) -> Result<f64, LimitError> {
    check_height(y)?;
    let v = if ctx.is_alpha_one() {
        alpha_one::p_y(y)?
    } else {
        closed::p_y(ctx.alpha, y)?
    };
    Ok(v)
}

/// γ(k), the limit of the clustering function at degree k >= 2.
pub fn gamma_k(ctx: &LimitContext, k: u64) -> Result<f64, LimitError> {
    if !(2..=K_MAX).contains(&k) {
        return Err(LimitError::K(k));
    }
    Ok(pieces(ctx, k)?.ratio)
}

/// γ, the limit of the clustering coefficient.
pub fn gamma_cc(ctx: &LimitContext) -> Result<f64, LimitError> {
    let j = if ctx.is_alpha_one() {
        alpha_one::j_integral()
    } else {
        closed::j_integral(ctx.alpha)?
    };
    let i0 = pieces(ctx, 0)?.i_k();
    let i1 = pieces(ctx, 1)?.i_k();
    Ok(j - i0 - i1)
}

/// I^(k) = ∫ P(y) ρ(y, k) α e^{-αy} dy (closed form), so that γ(k) = I^(k)/π(k).
pub fn i_k(ctx: &LimitContext, k: u64) -> Result<f64, LimitError> {
    if k > K_MAX {
        return Err(LimitError::K(k));
    }
    Ok(pieces(ctx, k)?.i_k())
}

/// I^(k) written as exp(ln_pmf) * ratio, where ratio is γ(k) for k >= 2.
pub(crate) struct Pieces {
    pub ln_pmf: f64,
    pub ratio: f64,
}

impl Pieces {
    fn i_k(&self) -> f64 {
        self.ln_pmf.exp() * self.ratio
    }
}

fn pieces(ctx: &LimitContext, k: u64) -> Result<Pieces, LimitError> {
    if ctx.is_alpha_one() {
        alpha_one::pieces(ctx.eta, k, &ctx.quad)
    } else {
        closed::pieces(ctx, k)
    }
}

/// CSV table `k,gamma_k,gamma_k_oracle,degree_pmf` for k in `ks`.
pub fn tabulate_csv(ctx: &LimitContext, ks: &[u64], oracle_spec: &QuadSpec) -> Result<String, LimitError> {
    let mut out = String::from("k,gamma_k,gamma_k_oracle,degree_pmf\n");
    for &k in ks {
        let g = gamma_k(ctx, k)?;
        let o = gamma_k_oracle(ctx, k, oracle_spec)?;
        let p = degree_pmf(ctx, k)?;
        out.push_str(&format!("{k},{g:.17e},{o:.17e},{p:.17e}\n"));
    }
    Ok(out)
}
