mod common;

use std::f64::consts::PI;

use common::{downlink, uplink};
use rand_chacha::ChaCha8Rng;
use uavsec_core::distributions::*;
use uavsec_core::geometry::*;
use uavsec_core::montecarlo::{draw_power_gain, ks_statistic};
use uavsec_core::stream::uniform01;
use uavsec_core::{ConstantMode, QuadratureConfig, RandomStream};

const N: usize = 100_000;

fn rng(stream: u64) -> ChaCha8Rng {
    RandomStream::new(20_240_601, stream).sequential()
}

fn assert_ks<F: Fn(f64) -> f64>(name: &str, samples: &[f64], cdf: F) {
    let ks = ks_statistic(samples, cdf).unwrap();
    assert!(ks.pass, "{name}: D = {} >= {}", ks.statistic, ks.critical);
}

#[test]
fn chord_sampler() {
    let g = ChordGeometry::new(15.0, 20.0).unwrap();
    let mut r = rng(1);
    let d: Vec<f64> = (0..N).map(|_| sample_chord_point(&g, &mut r)).collect();
    assert!(d.iter().all(|&y| y >= g.min_distance() && y <= g.b));
    assert_ks("chord", &d, |y| chord_distance_cdf(y, &g));

    let flat = ChordGeometry::new(5.0, 10.0).unwrap();
    let d: Vec<f64> = (0..N).map(|_| sample_chord_point(&flat, &mut r)).collect();
    assert_ks("chord with c = 0", &d, |y| (y / 5.0).clamp(0.0, 1.0));
}

#[test]
fn chord_density_from_histogram() {
    let g = ChordGeometry::new(15.0, 20.0).unwrap();
    let mut r = rng(2);
    let width = 0.2;
    let hits = (0..1_000_000)
        .filter(|_| sample_chord_point(&g, &mut r) >= 15.0 - width)
        .count();
    let density = hits as f64 / 1e6 / width;
    // The density is nearly flat near y = b; allow for the bin average.
    let exact = chord_distance_cdf(15.0, &g) - chord_distance_cdf(15.0 - width, &g);
    assert!((density - exact / width).abs() < 4.0 * (exact / 1e6).sqrt() / width);
    assert!((chord_distance_pdf(15.0, &g) - density).abs() < 0.005);
}

#[test]
fn hemisphere_sampler() {
    let radius = 15.0;
    let mut r = rng(3);
    let pts: Vec<Point3> = (0..N).map(|_| sample_uniform_hemisphere(radius, &mut r)).collect();
    assert!(pts.iter().all(|p| p.norm() <= radius + 1e-12 && p.z >= 0.0));
    let u: Vec<f64> = pts.iter().map(|p| (p.norm() / radius).powi(3)).collect();
    assert_ks("hemisphere", &u, |x| x.clamp(0.0, 1.0));
    let mean_z = pts.iter().map(|p| p.z).sum::<f64>() / N as f64;
    let se = (19.0 / 320.0f64).sqrt() * radius / (N as f64).sqrt();
    assert!((mean_z - 3.0 * radius / 8.0).abs() < 3.0 * se, "{mean_z}");
}

#[test]
fn ball_sampler() {
    let radius = 20.0;
    let mut r = rng(4);
    let pts: Vec<Point3> = (0..N).map(|_| sample_uniform_ball(radius, &mut r)).collect();
    assert!(pts.iter().all(|p| p.norm() <= radius + 1e-12));
    let u: Vec<f64> = pts.iter().map(|p| (p.norm() / radius).powi(3)).collect();
    assert_ks("ball", &u, |x| x.clamp(0.0, 1.0));
    let se = radius / 5f64.sqrt() / (N as f64).sqrt();
    for axis in [|p: &Point3| p.x, |p: &Point3| p.y, |p: &Point3| p.z] {
        let mean = pts.iter().map(axis).sum::<f64>() / N as f64;
        assert!(mean.abs() < 3.0 * se, "{mean}");
    }
}

#[test]
fn upper_cap_sampler() {
    let cap = CapGeometry::new(20.0, 10.0).unwrap();
    let mut r = rng(5);
    let d: Vec<f64> = (0..N)
        .map(|_| {
            let p = sample_uniform_upper_cap(&cap, &mut r);
            assert!(p.z >= 0.0);
            p.distance(&cap.center())
        })
        .collect();
    assert_ks("upper cap", &d, |x| upper_cap_distance_cdf(x, &cap));

    let proposals: u64 = (0..1_000_000 / 2)
        .map(|_| u64::from(sample_upper_cap_counted(&cap, &mut r).1))
        .sum();
    let v = cap.volumes();
    let p = v.upper_cap / v.sphere;
    let ratio = 500_000.0 / proposals as f64;
    let se = (p * (1.0 - p) / proposals as f64).sqrt();
    assert!((ratio - p).abs() < 3.0 * se, "{ratio} vs {p}");
}

#[test]
fn lower_cap_sampler() {
    let cap = CapGeometry::new(20.0, 10.0).unwrap();
    let mut r = rng(11);
    let d: Vec<f64> = (0..N)
        .map(|_| {
            let p = sample_uniform_lower_cap(&cap, &mut r).unwrap();
            let d = p.distance(&cap.center());
            assert!(p.z <= 0.0 && (10.0 - 1e-12..=20.0 + 1e-12).contains(&d));
            d
        })
        .collect();
    assert_ks("lower cap", &d, |x| cap_distance_cdf(x, &cap).unwrap());

    // Probability of landing below 15 m, three standard errors.
    let p = cap_distance_cdf(15.0, &cap).unwrap();
    let hits = (0..1_000_000)
        .filter(|_| sample_uniform_lower_cap(&cap, &mut r).unwrap().distance(&cap.center()) <= 15.0)
        .count() as f64
        / 1e6;
    assert!((hits - p).abs() < 3.0 * (p * (1.0 - p) / 1e6).sqrt());

    let flat = CapGeometry::new(20.0, 1e-9).unwrap();
    let d: Vec<f64> = (0..N)
        .map(|_| sample_uniform_lower_cap(&flat, &mut r).unwrap().distance(&flat.center()))
        .collect();
    assert_ks("lower hemisphere", &d, |x| (x / 20.0).powi(3).clamp(0.0, 1.0));
}

#[test]
fn disk_sampler() {
    let (r_c, h) = (300f64.sqrt(), 10.0);
    let center = Point3::new(0.0, 0.0, h);
    let mut r = rng(7);
    let pts: Vec<Point3> = (0..N).map(|_| sample_uniform_disk(r_c, &mut r)).collect();
    assert!(pts.iter().all(|p| p.z == 0.0 && p.norm() <= r_c + 1e-12));
    let u: Vec<f64> = pts.iter().map(|p| (p.norm() / r_c).powi(2)).collect();
    assert_ks("disk radius", &u, |x| x.clamp(0.0, 1.0));
    let d: Vec<f64> = pts.iter().map(|p| p.distance(&center)).collect();
    assert_ks("disk distance", &d, |x| ((x * x - h * h) / (r_c * r_c)).clamp(0.0, 1.0));
}

#[test]
fn region_volumes_by_rejection() {
    let cap = CapGeometry::new(20.0, 10.0).unwrap();
    let v = cap.volumes();
    let box_volume = 40f64.powi(3);
    let mut r = rng(8);
    let (mut below, mut above) = (0u64, 0u64);
    let total = 10_000_000u64;
    for _ in 0..total {
        let x = 40.0 * uniform01(&mut r) - 20.0;
        let y = 40.0 * uniform01(&mut r) - 20.0;
        let z = 40.0 * uniform01(&mut r) - 10.0;
        if x * x + y * y + (z - 10.0) * (z - 10.0) <= 400.0 {
            if z < 0.0 {
                below += 1;
            } else {
                above += 1;
            }
        }
    }
    let est_below = below as f64 / total as f64 * box_volume;
    let est_above = above as f64 / total as f64 * box_volume;
    assert!((est_below / v.lower_cap - 1.0).abs() < 0.005);
    assert!((est_above / v.upper_cap - 1.0).abs() < 0.005);
    assert!((v.lower_cap - PI * 5000.0 / 3.0).abs() < 1e-9);
    // The printed volumes happen to be exact at h = R_S/2 and nowhere else.
    assert!((v.upper_cap_paper / v.upper_cap - 1.0).abs() < 1e-12);
    let off = CapGeometry::new(20.0, 4.0).unwrap().volumes();
    assert!((off.upper_cap_paper / off.upper_cap - 1.0).abs() > 0.05);
}

#[test]
fn power_gain_draws() {
    let mut r = rng(9);
    let g = 1.1;
    let draws: Vec<f64> = (0..1_000_000).map(|_| draw_power_gain(g, &mut r).unwrap()).collect();
    assert!(draws.iter().all(|&x| x >= 0.0));
    let mean = draws.iter().sum::<f64>() / draws.len() as f64;
    assert!((mean - g).abs() < 3.0 * g / 1000.0);
    assert_ks("exponential", &draws[..N], |x| -(-x / g).exp_m1());
}

#[test]
fn snr_samples_follow_analytic_cdfs() {
    let up = uplink();
    let dn = downlink();
    let cfg = QuadratureConfig::default();
    let mut r = rng(10);

    let gamma_s: Vec<f64> = (0..N)
        .map(|_| {
            let d = sample_chord_point(&up.chord, &mut r);
            up.lambda_g * draw_power_gain(up.g_gs, &mut r).unwrap() / d.powf(up.n)
        })
        .collect();
    assert_ks("gamma_s", &gamma_s, |x| cdf_gamma_s(x, &up, ConstantMode::Corrected, &cfg).unwrap());

    let gamma_e: Vec<f64> = (0..N)
        .map(|_| {
            let d = sample_uniform_hemisphere(up.r_g, &mut r).norm();
            up.lambda_g * draw_power_gain(up.g_ge, &mut r).unwrap() / d.powf(up.n)
        })
        .collect();
    assert_ks("gamma_e hemisphere", &gamma_e, |x| cdf_gamma_e_hemisphere(x, &up).unwrap());

    let center = dn.cap.center();
    let ball: Vec<f64> = (0..N)
        .map(|_| {
            let d = sample_uniform_ball(dn.cap.r_s, &mut r).norm();
            dn.lambda_s * draw_power_gain(dn.g_se, &mut r).unwrap() / d.powf(dn.n)
        })
        .collect();
    assert_ks("gamma_e ball", &ball, |x| cdf_gamma_e_ball(x, &dn).unwrap());

    let cap: Vec<f64> = (0..N)
        .map(|_| {
            let d = sample_uniform_lower_cap(&dn.cap, &mut r).unwrap().distance(&center);
            dn.lambda_s * draw_power_gain(dn.g_se, &mut r).unwrap() / d.powf(dn.n)
        })
        .collect();
    assert_ks("gamma_e lower cap", &cap, |x| cdf_gamma_e_lower_cap(x, &dn).unwrap());

    let ground: Vec<f64> = (0..N)
        .map(|_| {
            let d = sample_uniform_disk(dn.cap.r_c(), &mut r).distance(&center);
            dn.lambda_s * draw_power_gain(dn.g_sg, &mut r).unwrap() / d.powf(dn.n)
        })
        .collect();
    assert_ks("gamma_g", &ground, |x| cdf_gamma_g(x, &dn).unwrap());
}

#[test]
fn identical_streams_give_identical_samples() {
    let cap = CapGeometry::new(20.0, 10.0).unwrap();
    let draw = || {
        let mut r = RandomStream::new(5, 9).trial_rng(3);
        (0..100)
            .map(|_| sample_uniform_lower_cap(&cap, &mut r).unwrap())
            .collect::<Vec<_>>()
    };
    assert_eq!(draw(), draw());
}
