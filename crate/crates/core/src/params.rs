//! Validated model parameters and the constants derived from them.

use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParamError {
    #[error("alpha must exceed 1/2, got {0}")]
    Alpha(f64),
    #[error("nu must be positive, got {0}")]
    Nu(f64),
    #[error("n must be at least 1, got {0}")]
    N(i64),
}

/// Parameters (α, ν, n) of the hyperbolic random graph with the derived
/// disk radius `r_disk` = R = 2 ln(n/ν), ξ = 4αν/(π(2α-1)) and η = 4ν/π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub alpha: f64,
    pub nu: f64,
    pub n: u64,
    pub r_disk: f64,
    pub xi: f64,
    pub eta: f64,
}

pub fn xi_of(alpha: f64, nu: f64) -> f64 {
    4.0 * alpha * nu / (PI * (2.0 * alpha - 1.0))
}

pub fn eta_of(nu: f64) -> f64 {
    4.0 * nu / PI
}

pub fn check_alpha_nu(alpha: f64, nu: f64) -> Result<(), ParamError> {
    if !(alpha > 0.5) || !alpha.is_finite() {
        return Err(ParamError::Alpha(alpha));
    }
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(ParamError::Nu(nu));
    }
    Ok(())
}

pub fn derive_params(alpha: f64, nu: f64, n: i64) -> Result<ModelParams, ParamError> {
    check_alpha_nu(alpha, nu)?;
    if n < 1 {
        return Err(ParamError::N(n));
    }
    Ok(ModelParams {
        alpha,
        nu,
        n: n as u64,
        r_disk: 2.0 * (n as f64 / nu).ln(),
        xi: xi_of(alpha, nu),
        eta: eta_of(nu),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_constants() {
        // n = e·π/4 is not an integer; the check runs on the derived formula directly.
        let nu = PI / 4.0;
        assert!((xi_of(1.0, nu) - 1.0).abs() < 1e-15);
        assert!((eta_of(nu) - 1.0).abs() < 1e-15);
        assert!((2.0 * (std::f64::consts::E * nu / nu).ln() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn radius_zero_when_n_equals_nu() {
        let p = derive_params(1.0, 3.0, 3).unwrap();
        assert_eq!(p.r_disk, 0.0);
    }

    #[test]
    fn reference_point() {
        let p = derive_params(0.8, 1.0, 10_000).unwrap();
        assert!((p.xi - 3.2 / (0.6 * PI)).abs() < 1e-15);
        assert!((p.xi - 1.69765).abs() < 1e-5);
        assert!((p.r_disk - 18.420_680_743_952_367).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(derive_params(0.5, 1.0, 10), Err(ParamError::Alpha(0.5)));
        assert_eq!(derive_params(0.8, 0.0, 10), Err(ParamError::Nu(0.0)));
        assert_eq!(derive_params(0.8, 1.0, 0), Err(ParamError::N(0)));
        assert!(derive_params(f64::NAN, 1.0, 10).is_err());
    }

    #[test]
    fn xi_decreasing_in_alpha() {
        let mut prev = f64::INFINITY;
        for i in 1..=450 {
            let a = 0.5 + i as f64 * 0.01;
            let x = xi_of(a, 1.3);
            assert!(x < prev);
            prev = x;
        }
    }

    #[test]
    fn pure() {
        assert_eq!(derive_params(0.73, 1.1, 777), derive_params(0.73, 1.1, 777));
    }
}
