//! Statistical checks of the samplers against their defining laws.

use hypclust::gengraph::*;
use hypclust::geom::{is_connected_polar, PolarPoint};
use hypclust::limits::{mu_box, mu_po, LimitContext};
use hypclust::params::derive_params;
use hypclust::specfun::QuadSpec;

fn mean_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

#[test]
fn poissonized_count_has_mean_n() {
    let p = derive_params(0.8, 1.0, 100).unwrap();
    let counts: Vec<f64> = (0..10_000).map(|s| generate_poissonized(&p, s).unwrap().vertex_count() as f64).collect();
    let (m, se) = mean_se(&counts);
    assert!((m - 100.0).abs() < 3.0 * se, "{m} ± {se}");
}

#[test]
fn box_count_has_truncated_mass() {
    let p = derive_params(1.0, 1.0, 100).unwrap();
    let counts: Vec<f64> = (0..10_000).map(|s| generate_box(&p, s).unwrap().vertex_count() as f64).collect();
    let (m, se) = mean_se(&counts);
    let expect = 100.0 * (1.0 - (-p.r_disk).exp());
    assert!((box_mass(&p) - expect).abs() < 1e-12);
    assert!((m - expect).abs() < 3.0 * se, "{m} ± {se} vs {expect}");
}

#[test]
fn typical_point_has_poisson_neighbor_count() {
    let (alpha, nu) = (0.8, 1.0);
    let xi = hypclust::params::xi_of(alpha, nu);
    let y0 = 2.0 * (5.0 / xi).ln();
    let counts: Vec<f64> = (0..100_000)
        .map(|s| sample_typical_neighborhood(alpha, nu, y0, s).unwrap().neighbors.len() as f64)
        .collect();
    let (m, se) = mean_se(&counts);
    assert!((m - 5.0).abs() < 3.0 * se, "{m} ± {se}");
}

#[test]
fn poissonized_mean_degree_matches_fixed_n() {
    let p = derive_params(0.8, 1.0, 10_000).unwrap();
    let fixed: Vec<f64> = (0..20).map(|s| generate_kpkvb(&p, s).unwrap().mean_degree()).collect();
    let pois: Vec<f64> = (100..120).map(|s| generate_poissonized(&p, s).unwrap().mean_degree()).collect();
    let ((m1, s1), (m2, s2)) = (mean_se(&fixed), mean_se(&pois));
    let se = (s1 * s1 + s2 * s2).sqrt();
    assert!((m1 - m2).abs() < 3.0 * se, "{m1} ± {s1} vs {m2} ± {s2}");
}

#[test]
fn box_degree_given_height() {
    let p = derive_params(0.8, 1.0, 10_000).unwrap();
    let mut degrees = Vec::new();
    for s in 0..10 {
        let g = generate_box(&p, s).unwrap();
        let Coords::Plane(pts) = &g.coords else { panic!() };
        for (v, q) in pts.iter().enumerate() {
            if (1.9..=2.1).contains(&q.y) {
                degrees.push(g.adjacency.degree(v) as f64);
            }
        }
    }
    let (m, _) = mean_se(&degrees);
    let target = mu_box(&LimitContext::new(0.8, 1.0).unwrap(), p.n, 2.0).unwrap();
    assert!((m / target - 1.0).abs() < 0.05, "{m} vs {target} over {} vertices", degrees.len());
}

#[test]
fn planted_vertex_degree_in_poissonized_model() {
    let p = derive_params(0.8, 1.0, 10_000).unwrap();
    let y = 0.5 * p.r_disk;
    let planted = PolarPoint::new(p.r_disk - y, 0.0);
    let degrees: Vec<f64> = (0..300)
        .map(|s| {
            let g = generate_poissonized(&p, s).unwrap();
            let Coords::Polar(pts) = &g.coords else { panic!() };
            pts.iter().filter(|q| is_connected_polar(planted, **q, p.r_disk)).count() as f64
        })
        .collect();
    let (m, se) = mean_se(&degrees);
    let target = mu_po(&LimitContext::new(0.8, 1.0).unwrap(), p.n, y, &QuadSpec::default()).unwrap();
    assert!((m - target).abs() < 3.0 * se, "{m} ± {se} vs {target}");
}

#[test]
#[cfg(feature = "parallel")]
fn identical_across_thread_counts() {
    let p = derive_params(0.7, 1.5, 3000).unwrap();
    let build = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| (generate_kpkvb(&p, 42).unwrap(), generate_box(&p, 42).unwrap()))
    };
    assert_eq!(build(1), build(4));
}

#[test]
fn audit_passes_on_every_model() {
    for (a, nu) in [(0.55, 1.0), (0.8, 2.0), (3.0, 0.5)] {
        let p = derive_params(a, nu, 2000).unwrap();
        for model in [ModelTag::Kpkvb, ModelTag::Poissonized, ModelTag::Box] {
            assert!(generate(&p, 8, model, &GenOptions::default()).unwrap().audit(), "{model} alpha={a}");
        }
    }
}
