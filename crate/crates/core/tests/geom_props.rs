use hypclust::geom::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[test]
fn cosine_test_matches_arccosh_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let r_disk = 12.0;
    let mut disagreements = 0;
    for _ in 0..100_000 {
        let p = PolarPoint::new(rng.random::<f64>() * r_disk, PI - 2.0 * PI * rng.random::<f64>());
        let q = PolarPoint::new(rng.random::<f64>() * r_disk, PI - 2.0 * PI * rng.random::<f64>());
        let d = hyperbolic_distance(p, q);
        if is_connected_polar(p, q, r_disk) != (d <= r_disk) {
            disagreements += 1;
            assert!((d - r_disk).abs() < 1e-9, "genuine disagreement at d={d}");
        }
    }
    assert!(disagreements <= 2, "{disagreements} near-tie disagreements");
}

#[test]
fn boundary_points_in_opposition_are_not_connected() {
    let r_disk = 5.0;
    assert!(!is_connected_polar(PolarPoint::new(r_disk, 0.0), PolarPoint::new(r_disk, PI), r_disk));
    assert!(is_connected_polar(PolarPoint::new(0.0, 0.3), PolarPoint::new(r_disk, -2.0), r_disk));
}

/// Fits the unnamed constant K of the box-coordinate ball width: the
/// two-sided bound |phi - e^{(y+y')/2}| <= K e^{3(y+y')/2 - R} for radii in
/// [R/10, R], and the smallest K with phi >= e^{(y+y')/2} once y, y' > K.
/// Points where the deviation scale is below double-precision resolution
/// are skipped.
#[test]
fn fitted_ball_width_constants() {
    let grid: Vec<f64> = (0..=160).map(|i| i as f64 * 0.25).collect();
    let (mut two_sided, mut one_sided) = (0.0f64, 0.0f64);
    for r_disk in [10.0, 20.0, 30.0] {
        for &y in &grid {
            for &y2 in &grid {
                if y + y2 >= r_disk || r_disk - y < 0.1 * r_disk || r_disk - y2 < 0.1 * r_disk {
                    continue;
                }
                let v = phi(y, y2, r_disk).unwrap();
                let e = (0.5 * (y + y2)).exp();
                let scale = (1.5 * (y + y2) - r_disk).exp();
                if scale > 1e-10 * e {
                    two_sided = two_sided.max((v - e).abs() / scale);
                }
                if v < e * (1.0 - 1e-12) {
                    one_sided = one_sided.max(y.min(y2));
                }
            }
        }
    }
    eprintln!("fitted two-sided K = {two_sided}, one-sided K = {one_sided}");
    assert!(two_sided < 1.0, "{two_sided}");
    assert!(one_sided < 1.0, "{one_sided}");
    assert!((phi(0.0, 0.0, 20.0).unwrap() - 1.0).abs() <= two_sided * (-20.0f64).exp() + 1e-15);
}

/// Heights R - r of quasi-uniform radii against their exact CDF
/// 1 - (cosh α(R-t) - 1)/(cosh αR - 1).
#[test]
fn pushed_forward_heights_pass_ks() {
    let (alpha, r_disk, n) = (0.8, 2.0 * (1e5f64).ln(), 100_000);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut h: Vec<f64> = (0..n)
        .map(|_| {
            let p = PolarPoint::new(sample_radius(alpha, r_disk, rng.random()).unwrap(), 0.0);
            psi(p, r_disk).y
        })
        .collect();
    h.sort_by(f64::total_cmp);
    let denom = (alpha * r_disk).cosh() - 1.0;
    let cdf = |t: f64| 1.0 - ((alpha * (r_disk - t)).cosh() - 1.0) / denom;
    let mut d = 0.0f64;
    for (i, &t) in h.iter().enumerate() {
        let f = cdf(t);
        d = d.max((f - i as f64 / n as f64).abs()).max(((i + 1) as f64 / n as f64 - f).abs());
    }
    // Critical value of the one-sample KS statistic at the 0.1% level.
    assert!(d * (n as f64).sqrt() < 1.95, "KS statistic {d}");
    // The exact law is close to the Exp(α) law of the limit.
    let lim = |t: f64| 1.0 - (-alpha * t).exp();
    assert!((cdf(3.0) - lim(3.0)).abs() < 1e-3);
}
