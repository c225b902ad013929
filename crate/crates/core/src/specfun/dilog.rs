//! Real dilogarithm on [0, 1].

use super::SpecError;
use std::f64::consts::PI;

/// Li₂(z) = Σ_{t≥1} z^t / t² for z in [0, 1].
pub fn dilog(z: f64) -> Result<f64, SpecError> {
    if !(0.0..=1.0).contains(&z) {
        return Err(SpecError::Domain(format!("dilog needs z in [0, 1], got {z}")));
    }
    if z == 1.0 {
        return Ok(PI * PI / 6.0);
    }
    if z <= 0.5 {
        return Ok(series(z));
    }
    // Euler reflection keeps the series argument below 1/2.
    let w = 1.0 - z;
    Ok(PI * PI / 6.0 - z.ln() * w.ln() - series(w))
}

fn series(z: f64) -> f64 {
    let mut pow = z;
    let mut sum = 0.0;
    let mut t = 1.0;
    while pow > 1e-18 * sum || t < 2.0 {
        sum += pow / (t * t);
        pow *= z;
        t += 1.0;
        if pow == 0.0 {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_values() {
        assert_eq!(dilog(0.0).unwrap(), 0.0);
        assert!((dilog(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        let half = PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2);
        assert!((dilog(0.5).unwrap() - half).abs() < 1e-15);
    }

    #[test]
    fn continuous_at_reflection_point() {
        let a = dilog(0.5 - 1e-12).unwrap();
        let b = dilog(0.5 + 1e-12).unwrap();
        assert!((a - b).abs() < 1e-11);
    }

    #[test]
    fn near_one() {
        // Li₂(1-w) ≈ π²/6 + w ln w - w for small w.
        let w: f64 = 1e-9;
        let want = PI * PI / 6.0 + w * w.ln() - w;
        assert!((dilog(1.0 - w).unwrap() - want).abs() < 1e-15);
    }
}
