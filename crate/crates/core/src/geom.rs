//! Native polar coordinates on the hyperbolic disk, the upper-half-plane
//! box chart, and the map between them.

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("u must lie in [0, 1], got {0}")]
    Quantile(f64),
    #[error("phi needs y + y' < R, got y={y}, y'={y2}, R={r}")]
    AlwaysConnected { y: f64, y2: f64, r: f64 },
}

/// Maps an angle into (-π, π].
pub fn normalize_angle(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

impl PolarPoint {
    pub fn new(r: f64, theta: f64) -> Self {
        PolarPoint {
            r,
            theta: normalize_angle(theta),
        }
    }
}

/// Inverse of the radial CDF (cosh αr - 1)/(cosh αR - 1).
pub fn sample_radius(alpha: f64, r_disk: f64, u: f64) -> Result<f64, GeomError> {
    if !(0.0..=1.0).contains(&u) {
        return Err(GeomError::Quantile(u));
    }
    let ar = alpha * r_disk;
    // cosh(αR) - 1 = 2 sinh²(αR/2); arccosh(1 + w) = ln1p(w + sqrt(w(w+2))).
    let w = u * 2.0 * (0.5 * ar).sinh().powi(2);
    let r = (w + (w * (w + 2.0)).sqrt()).ln_1p() / alpha;
    Ok(r.clamp(0.0, r_disk))
}

/// Angular distance |θ₁ - θ₂| on the circle, in [0, π].
pub fn angle_distance(t1: f64, t2: f64) -> f64 {
    let d = (t1 - t2).abs() % (2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Hyperbolic law of cosines test d(p₁, p₂) <= R without any arccosh.
pub fn is_connected_polar(p1: PolarPoint, p2: PolarPoint, r_disk: f64) -> bool {
    let dth = angle_distance(p1.theta, p2.theta);
    let lhs = p1.r.cosh() * p2.r.cosh() - p1.r.sinh() * p2.r.sinh() * dth.cos();
    lhs <= r_disk.cosh()
}

/// Hyperbolic distance, for audits; uses the clamped arccosh.
pub fn hyperbolic_distance(p1: PolarPoint, p2: PolarPoint) -> f64 {
    let dth = angle_distance(p1.theta, p2.theta);
    let v = p1.r.cosh() * p2.r.cosh() - p1.r.sinh() * p2.r.sinh() * dth.cos();
    v.max(1.0).acosh()
}

/// Ψ(r, θ) = (θ e^{R/2} / 2, R - r).
pub fn psi(p: PolarPoint, r_disk: f64) -> PlanePoint {
    PlanePoint {
        x: p.theta * (0.5 * r_disk).exp() / 2.0,
        y: r_disk - p.r,
    }
}

pub fn psi_inverse(p: PlanePoint, r_disk: f64) -> PolarPoint {
    PolarPoint {
        r: r_disk - p.y,
        theta: 2.0 * p.x * (-0.5 * r_disk).exp(),
    }
}

/// Half-width Φ(y, y') of the hyperbolic ball in box coordinates.
pub fn phi(y: f64, y2: f64, r_disk: f64) -> Result<f64, GeomError> {
    if y + y2 >= r_disk {
        return Err(GeomError::AlwaysConnected { y, y2, r: r_disk });
    }
    let (a, b) = (r_disk - y, r_disk - y2);
    // With q the arccos argument, 1 - q = (cosh R - cosh(a - b))/(sinh a sinh b)
    // and arccos q = 2 arcsin sqrt((1 - q)/2); this avoids subtracting
    // quantities of size e^{2R}.
    let half_gap = ((0.5 * (r_disk + a - b)).sinh() * (0.5 * (r_disk - a + b)).sinh() / (a.sinh() * b.sinh())).max(0.0);
    Ok((0.5 * r_disk).exp() * half_gap.sqrt().min(1.0).asin())
}

/// Distance on a circle of the given circumference.
pub fn torus_distance(x1: f64, x2: f64, circumference: f64) -> f64 {
    let d = (x1 - x2).abs() % circumference;
    d.min(circumference - d)
}
