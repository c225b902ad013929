//! Dedicated formulas at α = 1, where the general expressions have
//! removable 1/(α-1) singularities. Here ξ = η = 4ν/π.

use super::{LimitError, Pieces};
use crate::specfun::{dilog, ln_gamma, ln_upper_inc_gamma, quad_peaked, QuadSpec};
use std::f64::consts::PI;

/// (1-z)(1-3z) ln(1-z), finite at z = 1.
fn log_part(z: f64) -> f64 {
    if z >= 1.0 {
        0.0
    } else {
        (1.0 - z) * (1.0 - 3.0 * z) * (-z).ln_1p()
    }
}

pub(crate) fn p_y(y: f64) -> Result<f64, LimitError> {
    let z = (-0.5 * y).exp();
    let log_term = if y == 0.0 {
        0.0
    } else {
        (1.0 - z) * (1.0 - 3.0 * z) * (-(-0.5 * y).exp_m1()).ln()
    };
    Ok(2.25 * z + 0.25 * log_term - (7.0 + PI * PI) / 8.0 * z * z + 0.5 * z * z * dilog(z)?)
}

pub(crate) fn j_integral() -> f64 {
    (575.0 - 12.0 * PI * PI) / 576.0
}

/// γ(k) = I^(k)/π(k) with
/// I^(k) = 9η³/(2k!) Γ⁺(k-3,η) - η⁴(7+π²)/(4k!) Γ⁺(k-4,η)
///       + η^k/(2k!) ∫_0^1 (1-4z+3z²) ln(1-z) z^{1-k} e^{-η/z} dz
///       + η^k/k! ∫_0^1 z^{3-k} Li₂(z) e^{-η/z} dz
/// and π(k) = 2η² Γ⁺(k-2,η)/k!.
pub(crate) fn pieces(eta: f64, k: u64, quad: &QuadSpec) -> Result<Pieces, LimitError> {
    let kf = k as f64;
    let le = eta.ln();
    let lg0 = ln_upper_inc_gamma(kf - 2.0, eta)?;
    let rel = |l: f64| (l - lg0).exp();

    let t1 = 2.25 * eta * rel(ln_upper_inc_gamma(kf - 3.0, eta)?);
    let t2 = -(7.0 + PI * PI) / 8.0 * eta * eta * rel(ln_upper_inc_gamma(kf - 4.0, eta)?);
    let weight = |p: f64| move |z: f64| if z <= 0.0 { f64::NEG_INFINITY } else { p * z.ln() - eta / z };
    let lint = quad_peaked(log_part, weight(1.0 - kf), 0.0, 1.0, quad)?;
    let t3 = 0.25 * lint.value * rel((kf - 2.0) * le + lint.log_scale);
    let dint = quad_peaked(|z| dilog(z.clamp(0.0, 1.0)).unwrap_or(f64::NAN), weight(3.0 - kf), 0.0, 1.0, quad)?;
    let t4 = 0.5 * dint.value * rel((kf - 2.0) * le + dint.log_scale);

    let ln_pmf = 2f64.ln() + 2.0 * le + lg0 - ln_gamma(kf + 1.0);
    Ok(Pieces {
        ln_pmf,
        ratio: t1 + t2 + t3 + t4,
    })
}
