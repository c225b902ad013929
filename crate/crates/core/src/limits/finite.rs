//! Expected degree of a point at height y in the finite box model and in
//! the Poissonized disk model (in box coordinates).

use super::{mu_ball, LimitContext, LimitError};
use crate::geom::phi;
use crate::params::ParamError;
use crate::specfun::{quad_points, QuadSpec};
use std::f64::consts::PI;

fn radius(ctx: &LimitContext, n: u64) -> Result<f64, LimitError> {
    if n < 1 {
        return Err(ParamError::N(n as i64).into());
    }
    Ok(2.0 * (n as f64 / ctx.nu).ln())
}

/// μ_box(y) = μ(y)(1 - φ_n(y)), exact for the box of height R = 2 ln(n/ν).
pub fn mu_box(ctx: &LimitContext, n: u64, y: f64) -> Result<f64, LimitError> {
    let r = radius(ctx, n)?;
    if !(0.0..=r).contains(&y) {
        return Err(LimitError::Height(y));
    }
    let a = ctx.alpha;
    let h = a - 0.5;
    let mu = mu_ball(ctx, y);
    if y <= 2.0 * (PI / 2.0).ln() {
        return Ok(mu * (1.0 - (-h * r).exp()));
    }
    let half_pi = PI / 2.0;
    let ratio = ctx.nu / ctx.xi;
    let phi_n = half_pi.powf(-(2.0 * a - 1.0)) * (-h * (r - y)).exp() + ratio * (-h * r - 0.5 * y).exp()
        - ratio * half_pi.powf(-2.0 * a) * (-h * (r - y)).exp();
    Ok(mu * (1.0 - phi_n))
}

/// μ_Po(y) = ∫_0^{R-y} 2Φ(y,y') (αν/π) e^{-αy'} dy' + n^{1-2α} ν^{2α} (e^{αy} - 1).
pub fn mu_po(ctx: &LimitContext, n: u64, y: f64, spec: &QuadSpec) -> Result<f64, LimitError> {
    let r = radius(ctx, n)?;
    if !(0.0..r).contains(&y) {
        return Err(LimitError::Height(y));
    }
    let a = ctx.alpha;
    let top = r - y;
    let f = |y2: f64| {
        if y2 >= top {
            // Limit of Φ at the threshold: the full half-circumference.
            return PI * (0.5 * r).exp() * a * ctx.nu / PI * (-a * y2).exp();
        }
        match phi(y, y2, r) {
            Ok(p) => 2.0 * p * a * ctx.nu / PI * (-a * y2).exp(),
            Err(_) => f64::NAN,
        }
    };
    let mut pts = vec![0.0];
    for frac in [0.25, 0.5, 0.75, 0.9, 0.97, 0.99] {
        pts.push(frac * top);
    }
    pts.push(top);
    let i1 = quad_points(f, &pts, spec)?;
    let nf = n as f64;
    let i2 = nf.powf(1.0 - 2.0 * a) * ctx.nu.powf(2.0 * a) * (a * y).exp_m1();
    Ok(i1 + i2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_degree_at_zero_height() {
        let c = LimitContext::new(0.8, 1.0).unwrap();
        let r = 2.0 * 1000f64.ln();
        let v = mu_box(&c, 1000, 0.0).unwrap();
        assert!((v - c.xi * (1.0 - (-0.3 * r).exp())).abs() < 1e-14);
    }

    #[test]
    fn ratios_tend_to_one() {
        let c = LimitContext::new(0.8, 1.0).unwrap();
        let n = 1_000_000;
        let y = (n as f64).ln();
        let b = mu_box(&c, n, y).unwrap() / mu_ball(&c, y);
        assert!((b - 1.0).abs() < 0.01, "{b}");
        let p = mu_po(&c, n, y, &QuadSpec::default()).unwrap() / mu_ball(&c, y);
        assert!((p - 1.0).abs() < 0.01, "{p}");
    }

    #[test]
    fn poissonized_finite_near_top() {
        let c = LimitContext::new(0.8, 1.0).unwrap();
        let r = 2.0 * 1000f64.ln();
        let v = mu_po(&c, 1000, r * (1.0 - 1e-9), &QuadSpec::default()).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }
}
