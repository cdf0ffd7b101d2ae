#![allow(dead_code)]

use uavsec_core::quad::{integrate_breaks, integrate_semi_infinite};
use uavsec_core::{CapGeometry, ChordGeometry, DownlinkScenario, QuadratureConfig, UplinkScenario};

pub fn uplink() -> UplinkScenario {
    UplinkScenario {
        chord: ChordGeometry::new(15.0, 20.0).unwrap(),
        r_g: 15.0,
        n: 2.0,
        lambda_g: 10f64.powf(0.125),
        g_gs: 1.0,
        g_ge: 1.1,
        rs_bits: 0.1,
    }
}

pub fn downlink() -> DownlinkScenario {
    downlink_at(20.0, 10.0)
}

pub fn downlink_at(r_s: f64, h: f64) -> DownlinkScenario {
    DownlinkScenario {
        cap: CapGeometry::new(r_s, h).unwrap(),
        n: 2.0,
        lambda_s: 10f64.powf(0.5),
        g_sg: 1.0,
        g_se: 1.1,
        rs_bits: 0.1,
    }
}

pub fn tight() -> QuadratureConfig {
    QuadratureConfig {
        rel_tol: 1e-11,
        abs_tol: 1e-15,
        max_refinements: 20_000,
    }
}

/// ∫₀^∞ f with a log-spaced partition around `scale`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, scale: f64) -> f64 {
    let pts: Vec<f64> = std::iter::once(0.0)
        .chain((-6..=2).map(|k| scale * 10f64.powi(k)))
        .collect();
    integrate_semi_infinite(f, &pts, scale * 100.0, &tight()).unwrap().value
}

/// ∫₀^x f with a log-spaced partition down from x.
pub fn integrate_from_zero<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
    let mut pts: Vec<f64> = (0..12).rev().map(|k| x * 10f64.powi(-k)).collect();
    pts.insert(0, 0.0);
    integrate_breaks(f, &pts, &tight()).unwrap().value
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}
