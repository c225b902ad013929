//! Tricomi's confluent hypergeometric U and the G^{3,0}_{2,3} Meijer family
//! (ξ | 1, 3-2α ; 3-4α, q, 0), both evaluated through one-dimensional
//! integral representations.

use super::beta::{lower_inc_beta, ln_lower_inc_beta};
use super::gamma::{ln_gamma, ln_upper_inc_gamma};
use super::quad::{quad_peaked, quad_points, QuadSpec};
use super::SpecError;

/// U(a, b, z) = Γ(a)^{-1} ∫_0^∞ e^{-zt} t^{a-1} (1+t)^{b-a-1} dt, for a, z > 0.
pub fn tricomi_u(a: f64, b: f64, z: f64, spec: &QuadSpec) -> Result<f64, SpecError> {
    Ok(ln_tricomi_u(a, b, z, spec)?.exp())
}

/// ln U(a, b, z); the integral is evaluated around its peak so that large
/// `b` neither overflows nor loses the peak.
pub fn ln_tricomi_u(a: f64, b: f64, z: f64, spec: &QuadSpec) -> Result<f64, SpecError> {
    if !(a > 0.0 && z > 0.0) || !b.is_finite() {
        return Err(SpecError::Domain(format!("tricomi_u needs a, z > 0, got a={a}, b={b}, z={z}")));
    }
    // t = e^u removes the t^{a-1} endpoint behaviour for every a > 0.
    let c = b - a - 1.0;
    let g = |u: f64| {
        let t = u.exp();
        -z * t + a * u + c * softplus(u)
    };
    let s = quad_peaked(|_| 1.0, g, -800.0, 800.0, spec)?;
    Ok(s.ln_abs() - ln_gamma(a))
}

fn softplus(u: f64) -> f64 {
    if u > 0.0 {
        u + (-u).exp().ln_1p()
    } else {
        u.exp().ln_1p()
    }
}

/// G^{3,0}_{2,3}(ξ | 1, 3-2α ; 3-4α, q, 0), via
/// ξ^{-(a+1)} Γ(2α)^{-1} ∫_0^1 z^a e^{-ξ/z} B⁻(1-z; 2α, 3-4α) dz with a = -q-1.
pub fn meijer_g_3023(alpha: f64, q: f64, xi: f64, spec: &QuadSpec) -> Result<f64, SpecError> {
    Ok(ln_meijer_g_3023(alpha, q, xi, spec)?.exp())
}

pub fn ln_meijer_g_3023(alpha: f64, q: f64, xi: f64, spec: &QuadSpec) -> Result<f64, SpecError> {
    let ln_int = ln_meijer_integral(alpha, -q - 1.0, xi, spec)?;
    Ok(q * xi.ln() - ln_gamma(2.0 * alpha) + ln_int)
}

/// ln ∫_0^1 z^a e^{-ξ/z} B⁻(1-z; 2α, 3-4α) dz.
pub fn ln_meijer_integral(alpha: f64, a: f64, xi: f64, spec: &QuadSpec) -> Result<f64, SpecError> {
    check_meijer(alpha, xi)?;
    let (ba, bb) = (2.0 * alpha, 3.0 - 4.0 * alpha);
    let g = |z: f64| {
        if z <= 0.0 || z >= 1.0 {
            return f64::NEG_INFINITY;
        }
        match ln_lower_inc_beta(1.0 - z, ba, bb) {
            Ok(lb) => a * z.ln() - xi / z + lb,
            Err(_) => f64::NAN,
        }
    };
    let s = quad_peaked(|_| 1.0, g, 0.0, 1.0, spec)?;
    Ok(s.ln_abs())
}

/// The same G value through the incomplete-gamma representation
/// Γ(2α)^{-1} ∫_0^1 Γ⁺(q, ξ/s) s^{2-4α} (1-s)^{2α-1} ds; kept as an
/// independent cross-check of [`meijer_g_3023`].
pub fn meijer_g_3023_gamma_route(alpha: f64, q: f64, xi: f64, spec: &QuadSpec) -> Result<f64, SpecError> {
    check_meijer(alpha, xi)?;
    let f = |s: f64| {
        if s <= 0.0 || s >= 1.0 {
            return 0.0;
        }
        match ln_upper_inc_gamma(q, xi / s) {
            Ok(lg) => (lg + (2.0 - 4.0 * alpha) * s.ln() + (2.0 * alpha - 1.0) * (-s).ln_1p()).exp(),
            Err(_) => f64::NAN,
        }
    };
    let v = quad_points(f, &[0.0, 0.05, 0.25, 0.5, 0.75, 1.0], spec)?;
    Ok(v / ln_gamma(2.0 * alpha).exp())
}

fn check_meijer(alpha: f64, xi: f64) -> Result<(), SpecError> {
    if !(alpha > 0.5) || !(xi > 0.0) {
        return Err(SpecError::Domain(format!("meijer_g_3023 needs alpha > 1/2 and xi > 0, got alpha={alpha}, xi={xi}")));
    }
    Ok(())
}

/// Convenience used by tests: B⁻(1-z; 2α, 3-4α).
pub fn beta_kernel(alpha: f64, z: f64) -> Result<f64, SpecError> {
    lower_inc_beta(1.0 - z, 2.0 * alpha, 3.0 - 4.0 * alpha)
}
