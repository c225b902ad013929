//! Lower incomplete beta B⁻(x; a, b) = ∫_0^x u^{a-1}(1-u)^{b-1} du for a > 0
//! and any real b (x < 1 is required when b <= 0).

use super::SpecError;

const MAX_TERMS: usize = 5000;

pub fn lower_inc_beta(x: f64, a: f64, b: f64) -> Result<f64, SpecError> {
    check(x, a, b)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return super::gamma::beta(a, b);
    }
    if x <= 0.5 {
        Ok(head_series(x, a, b)?.exp())
    } else {
        Ok(head_series(0.5, a, b)?.exp() + tail_sum(x, a, b)?)
    }
}

/// ln B⁻(x; a, b); accurate near x = 0 where the value underflows.
pub fn ln_lower_inc_beta(x: f64, a: f64, b: f64) -> Result<f64, SpecError> {
    check(x, a, b)?;
    if x == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    if x <= 0.5 {
        head_series(x, a, b)
    } else {
        Ok(lower_inc_beta(x, a, b)?.ln())
    }
}

fn check(x: f64, a: f64, b: f64) -> Result<(), SpecError> {
    if !(a > 0.0) || !b.is_finite() {
        return Err(SpecError::Domain(format!("lower_inc_beta needs a > 0 and finite b, got a={a}, b={b}")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(SpecError::Domain(format!("lower_inc_beta needs x in [0, 1], got {x}")));
    }
    if x == 1.0 && b <= 0.0 {
        return Err(SpecError::Domain(format!("lower_inc_beta diverges at x = 1 for b = {b} <= 0")));
    }
    Ok(())
}

/// ln of x^a Σ_n (1-b)_n/n! · x^n/(a+n), valid for x <= 1/2.
fn head_series(x: f64, a: f64, b: f64) -> Result<f64, SpecError> {
    let mut coef = 1.0;
    let mut pow = 1.0;
    let mut sum = 1.0 / a;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        coef *= (nf + 1.0 - b) / (nf + 1.0);
        pow *= x;
        let term = coef * pow / (a + nf + 1.0);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && (nf + 1.0 - b) > 0.0 {
            return Ok(a * x.ln() + sum.ln());
        }
        if coef == 0.0 {
            return Ok(a * x.ln() + sum.ln());
        }
    }
    Err(SpecError::NoConvergence("incomplete beta series"))
}

/// ∫_{1/2}^{x} u^{a-1}(1-u)^{b-1} du for x > 1/2, expanding u^{a-1} around
/// u = 1: Σ_n (1-a)_n/n! ∫_{1-x}^{1/2} v^{b+n-1} dv.
fn tail_sum(x: f64, a: f64, b: f64) -> Result<f64, SpecError> {
    let lo = 1.0 - x;
    let hi = 0.5;
    let l = (hi / lo).ln();
    let mut coef = 1.0;
    let mut sum = 0.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let p = b + nf;
        // (hi^p - lo^p)/p without cancellation.
        let piece = if p == 0.0 {
            l
        } else if p > 0.0 {
            (p * hi.ln()).exp() * -(-p * l).exp_m1() / p
        } else {
            (p * lo.ln()).exp() * (p * l).exp_m1() / p
        };
        let term = coef * piece;
        sum += term;
        if coef == 0.0 || (term.abs() <= 1e-17 * sum.abs() && p > 0.0) {
            return Ok(sum);
        }
        coef *= (nf + 1.0 - a) / (nf + 1.0);
    }
    Err(SpecError::NoConvergence("incomplete beta tail series"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quad::{quad_singular, Endpoint, QuadSpec};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn unit_shapes() {
        for x in [0.0, 0.1, 0.5, 0.9, 0.999] {
            assert!((lower_inc_beta(x, 1.0, 1.0).unwrap() - x).abs() < 1e-15);
        }
    }

    #[test]
    fn complete_value_at_one() {
        assert!(rel(lower_inc_beta(1.0, 2.0, 3.0).unwrap(), 1.0 / 12.0) < 1e-14);
        assert!(rel(lower_inc_beta(0.999_999_9, 2.0, 3.0).unwrap(), 1.0 / 12.0) < 1e-10);
    }

    #[test]
    fn rejects_singular_endpoint() {
        assert!(lower_inc_beta(1.0, 1.6, -0.2).is_err());
        assert!(lower_inc_beta(0.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn matches_quadrature_for_negative_b() {
        let spec = QuadSpec::tight();
        for &(x, a, b) in &[(0.3, 1.6, -0.2), (0.8, 1.6, -0.2), (0.97, 2.4, -1.8), (0.7, 3.0, 0.0), (0.6, 5.0, -3.0)] {
            let q = quad_singular(
                |u: f64| u.powf(a - 1.0) * (1.0 - u).powf(b - 1.0),
                0.0,
                x,
                Endpoint::Power(a - 1.0),
                Endpoint::Regular,
                &spec,
            )
            .unwrap();
            let v = lower_inc_beta(x, a, b).unwrap();
            assert!(rel(v, q) < 1e-12, "x={x} a={a} b={b}: {v} vs {q}");
        }
    }

    #[test]
    fn log_form_near_zero() {
        let l = ln_lower_inc_beta(1e-200, 2.0, -1.0).unwrap();
        assert!(rel(l, 2.0 * (1e-200f64).ln() - 2f64.ln()) < 1e-14);
    }
}
