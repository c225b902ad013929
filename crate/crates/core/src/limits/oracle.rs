//! Direct quadrature of the integral definitions of P(y), γ(k) and γ.
//! They share only `triangle_prob`, `p_y` and `rho` with the closed forms and
//! none of the Γ⁺/U/Meijer reductions.

use super::{ln_rho, mu_ball, p_y, triangle_prob, LimitContext, LimitError, K_MAX};
use crate::specfun::{quad_points, QuadSpec};

/// P(y) = (α-1/2)² ∬ T(y, y₁, y₂) e^{-(α-1/2)(y₁+y₂)} dy₁ dy₂.
///
/// With t = e^{-(α-1/2)y'} each weighted half-line becomes the unit interval,
/// so the infinite tails are integrated exactly rather than cut. Breakpoints
/// sit on the kinks of the piecewise triangle formula.
pub fn p_y_oracle(ctx: &LimitContext, y: f64, spec: &QuadSpec) -> Result<f64, LimitError> {
    if !(y >= 0.0 && y.is_finite()) {
        return Err(LimitError::Height(y));
    }
    let h = ctx.alpha - 0.5;
    let z0 = (-0.5 * y).exp();
    // t = z^{2α-1} maps heights to the unit interval.
    let t_of_z = |z: f64| z.powf(2.0 * h);
    let y_of_t = |t: f64| -t.ln() / h;
    let sorted = |mut v: Vec<f64>| {
        v.retain(|&t| t > 0.0 && t < 1.0);
        v.push(0.0);
        v.push(1.0);
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    };
    let inner_spec = QuadSpec {
        abs_tol: spec.abs_tol * 1e-2,
        rel_tol: spec.rel_tol * 1e-2,
        max_subdivisions: spec.max_subdivisions,
    };
    let inner = |t1: f64| -> f64 {
        if t1 <= 0.0 {
            return 0.0;
        }
        let y1 = y_of_t(t1);
        let z1 = (-0.5 * y1).exp();
        let kinks: Vec<f64> = [z1, z0, z0 - z1, z1 - z0, z0 + z1].iter().map(|&z| t_of_z(z)).collect();
        let f = |t2: f64| if t2 <= 0.0 { triangle_prob(y, y1, f64::INFINITY) } else { triangle_prob(y, y1, y_of_t(t2)) };
        quad_points(f, &sorted(kinks), &inner_spec).unwrap_or(f64::NAN)
    };
    let outer_kinks: Vec<f64> = [z0, 0.5 * z0, 2.0 * z0, 1.0 - z0].iter().map(|&z| t_of_z(z)).collect();
    let v = quad_points(inner, &sorted(outer_kinks), spec)?;
    if v.is_nan() {
        return Err(crate::specfun::SpecError::NoConvergence("inner triangle quadrature").into());
    }
    Ok(v)
}

/// Height window for the Poisson weight ρ(y, k): starts from
/// y± = 2 ln((k ± C sqrt(k ln k))/ξ) and widens until the weight at the
/// window edges is below `mass_cut` relative to its peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleTruncation {
    pub c: f64,
    pub mass_cut: f64,
}

impl Default for OracleTruncation {
    fn default() -> Self {
        OracleTruncation { c: 10.0, mass_cut: 1e-14 }
    }
}

fn window(ctx: &LimitContext, k: u64, tr: &OracleTruncation) -> (f64, f64, f64) {
    let kf = k as f64;
    let spread = tr.c * (kf * kf.max(2.0).ln()).sqrt();
    let y_of_mu = |mu: f64| 2.0 * (mu / ctx.xi).ln();
    let weight = |y: f64| ln_rho(ctx, y, k) - ctx.alpha * y;
    let peak_y = y_of_mu(kf.max(1.0)).max(0.0);
    let peak = weight(peak_y);
    let cut = peak + tr.mass_cut.ln();
    let mut lo = if kf - spread > 0.0 { y_of_mu(kf - spread).max(0.0) } else { 0.0 };
    let mut hi = y_of_mu(kf + spread).max(peak_y + 1.0);
    while lo > 0.0 && weight(lo) > cut {
        lo = (lo - 1.0).max(0.0);
    }
    while weight(hi) > cut {
        hi += 1.0;
    }
    (lo, peak_y, hi)
}

/// γ(k) as (∫ P(y) ρ(y,k) α e^{-αy} dy) / (∫ ρ(y,k) α e^{-αy} dy).
pub fn gamma_k_oracle(ctx: &LimitContext, k: u64, spec: &QuadSpec) -> Result<f64, LimitError> {
    gamma_k_oracle_with(ctx, k, spec, &OracleTruncation::default())
}

pub fn gamma_k_oracle_with(
    ctx: &LimitContext,
    k: u64,
    spec: &QuadSpec,
    tr: &OracleTruncation,
) -> Result<f64, LimitError> {
    if !(2..=K_MAX).contains(&k) {
        return Err(LimitError::K(k));
    }
    let (lo, peak_y, hi) = window(ctx, k, tr);
    let shift = ln_rho(ctx, peak_y, k) - ctx.alpha * peak_y;
    let w = |y: f64| (ln_rho(ctx, y, k) - ctx.alpha * y - shift).exp();
    let width = 2.0 / (k as f64).sqrt();
    let mut pts = vec![lo];
    for j in [-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0] {
        let p = peak_y + j * width;
        if p > lo && p < hi {
            pts.push(p);
        }
    }
    pts.push(hi);
    pts.dedup();
    let num = quad_points(|y| p_y(ctx, y).unwrap_or(f64::NAN) * w(y), &pts, spec)?;
    let den = quad_points(w, &pts, spec)?;
    Ok(num / den)
}

/// γ = ∫ P(y) (1 - ρ(y,0) - ρ(y,1)) α e^{-αy} dy, integrated in t = e^{-αy}.
pub fn gamma_cc_oracle(ctx: &LimitContext, spec: &QuadSpec) -> Result<f64, LimitError> {
    let a = ctx.alpha;
    let f = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let y = -t.ln() / a;
        let mu = mu_ball(ctx, y);
        // 1 - e^{-μ}(1 + μ) without cancellation for small μ.
        let keep = if mu < 0.5 {
            let mut term = mu * mu / 2.0;
            let mut s = 0.0f64;
            let mut j = 2.0;
            while term > 1e-18 * s.max(1e-300) {
                s += term;
                j += 1.0;
                term *= mu / j;
            }
            s * (-mu).exp()
        } else {
            1.0 - (-mu).exp() * (1.0 + mu)
        };
        p_y(ctx, y).unwrap_or(f64::NAN) * keep
    };
    let mut pts: Vec<f64> = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0]
        .iter()
        .map(|&y: &f64| (-a * y).exp())
        .collect();
    let y_unit = 2.0 * (1.0 / ctx.xi).ln();
    if y_unit > 0.0 {
        pts.push((-a * y_unit).exp());
    }
    pts.push(0.0);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    Ok(quad_points(f, &pts, spec)?)
}
