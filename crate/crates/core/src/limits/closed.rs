//! Closed forms for α ≠ 1.

use super::{LimitContext, LimitError, Pieces};
use crate::specfun::{beta, ln_gamma, ln_meijer_integral, ln_tricomi_u, ln_upper_inc_gamma, lower_inc_beta};

/// B⁻(1/2; 1+2α, 2α-2), which appears in every α ≠ 1 formula.
pub(crate) fn half_beta(alpha: f64) -> Result<f64, LimitError> {
    Ok(lower_inc_beta(0.5, 1.0 + 2.0 * alpha, 2.0 * alpha - 2.0)?)
}

pub(crate) fn p_y(alpha: f64, y: f64) -> Result<f64, LimitError> {
    let a = alpha;
    let am1 = a - 1.0;
    let h = a - 0.5;
    let z = (-0.5 * y).exp();
    let one_minus_z = -(-0.5 * y).exp_m1();
    let z_pow = z.powf(4.0 * a - 2.0);
    let bracket = 2f64.powf(-4.0 * a - 1.0) * (3.0 * a - 1.0) / (a * am1 * am1) + h * half_beta(a)? / (2.0 * am1 * a);
    let tail = if one_minus_z == 0.0 {
        0.0
    } else {
        z_pow * lower_inc_beta(one_minus_z, 2.0 * a, 3.0 - 4.0 * a)? / (4.0 * am1)
    };
    let v = -1.0 / (8.0 * am1 * a) + h * z / am1 - h * h * z * z / (4.0 * am1 * am1)
        + z_pow * bracket
        + one_minus_z.powf(2.0 * a) / (8.0 * am1 * a)
        - tail;
    Ok(v)
}

/// J = ∫ P(y) α e^{-αy} dy.
pub(crate) fn j_integral(alpha: f64) -> Result<f64, LimitError> {
    let a = alpha;
    let am1 = a - 1.0;
    let poly = 2.0 + 4.0 * a + 13.0 * a.powi(2) - 34.0 * a.powi(3) - 12.0 * a.powi(4) + 24.0 * a.powi(5);
    let v = poly / (16.0 * am1 * am1 * a * (a + 1.0) * (2.0 * a + 1.0))
        + 2f64.powf(-1.0 - 4.0 * a) / (am1 * am1)
        + (a - 0.5) * (beta(2.0 * a, 2.0 * a + 1.0)? + half_beta(a)?) / (2.0 * am1 * (3.0 * a - 1.0));
    Ok(v)
}

/// The six-term bracket behind I^(k) and γ(k), each term divided by
/// Γ⁺(k - 2α, ξ) before summation.
pub(crate) fn pieces(ctx: &LimitContext, k: u64) -> Result<Pieces, LimitError> {
    let a = ctx.alpha;
    let xi = ctx.xi;
    let lxi = xi.ln();
    let kf = k as f64;
    let h = a - 0.5;
    let am1 = a - 1.0;
    let q = &ctx.quad;

    let lg0 = ln_upper_inc_gamma(kf - 2.0 * a, xi)?;
    let rel = |ln_term: f64| (ln_term - lg0).exp();

    let t2 = -2.0 * a * h * h * xi * xi / am1 * rel(ln_upper_inc_gamma(kf - 2.0 * a - 2.0, xi)?);
    let t3 = 8.0 * a * h * xi * rel(ln_upper_inc_gamma(kf - 2.0 * a - 1.0, xi)?);
    let c4 = 2f64.powf(-4.0 * a) * (3.0 * a - 1.0) / am1 + h * half_beta(a)?;
    let t4 = 4.0 * c4 * rel((4.0 * a - 2.0) * lxi + ln_upper_inc_gamma(kf - 6.0 * a + 2.0, xi)?);
    let ln_u = ln_tricomi_u(2.0 * a + 1.0, 1.0 + kf - 2.0 * a, xi, q)?;
    let t5 = rel((kf - 2.0 * a) * lxi + ln_gamma(2.0 * a + 1.0) - xi + ln_u);
    let ln_m = ln_meijer_integral(a, 6.0 * a - kf - 3.0, xi, q)?;
    let t6 = -rel((2.0 * a).ln() + (kf - 2.0 * a) * lxi + ln_m);

    // Sum smallest magnitudes first; the leading terms nearly cancel at large k.
    let mut terms = [-1.0, t2, t3, t4, t5, t6];
    terms.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
    let sum: f64 = terms.iter().sum();

    let ln_pmf = (2.0 * a).ln() + 2.0 * a * lxi + lg0 - ln_gamma(kf + 1.0);
    Ok(Pieces {
        ln_pmf,
        ratio: sum / (8.0 * a * am1),
    })
}
