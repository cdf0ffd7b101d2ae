//! Globally adaptive Gauss–Kronrod (G10/K21) quadrature.
//!
//! All integrals in the crate go through [`integrate_breaks`] or
//! [`integrate_semi_infinite`]. The latter maps the tail `[p, ∞)` onto
//! `t ∈ [0, 1)` with `x = p + s·t/(1−t)` and refines it together with the
//! finite pieces in one priority queue, so the error budget is shared globally.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

/// Tolerances for the adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on the number of bisections.
    pub max_refinements: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-14,
            max_refinements: 4000,
        }
    }
}

impl QuadratureConfig {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(domain(
                "QuadratureConfig",
                format!("tolerances must be positive (rel {}, abs {})", self.rel_tol, self.abs_tol),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_22,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

// 10-point Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// Whether [a, b] lives in the compactified tail variable.
    tail: bool,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tail: bool) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_kronrod = f_center * WGK[10];
    let mut res_gauss = 0.0;
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let h = half.abs();
    let value = res_kronrod * half;
    let error = rescale_error((res_kronrod - res_gauss) * half, res_abs * h, res_asc * h);
    Segment {
        a,
        b,
        value,
        error,
        tail,
    }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    integrate_breaks(f, &[a, b], cfg)
}

/// Integrates `f` over `[points[0], points[last]]`, with the interior points
/// used as the initial partition. `points` must be non-decreasing.
pub fn integrate_breaks<F: Fn(f64) -> f64>(f: F, points: &[f64], cfg: &QuadratureConfig) -> Result<QuadResult> {
    check_partition("integrate_breaks", points)?;
    adaptive(&f, &|_| f64::NAN, points, false, cfg)
}

/// Integrates `f` over `[points[0], ∞)`. The finite pieces are given by
/// `points`; the tail beyond the last point is compactified with the length
/// scale `tail_scale`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    tail_scale: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    if points.is_empty() {
        return Err(domain("integrate_semi_infinite", "need a lower limit"));
    }
    if !(tail_scale > 0.0 && tail_scale.is_finite()) {
        return Err(domain("integrate_semi_infinite", format!("tail scale {tail_scale}")));
    }
    check_partition("integrate_semi_infinite", points)?;
    let start = *points.last().unwrap();
    let mapped = |t: f64| {
        let one_minus = 1.0 - t;
        let x = start + tail_scale * t / one_minus;
        if !x.is_finite() {
            return 0.0;
        }
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v * tail_scale / (one_minus * one_minus)
        }
    };
    adaptive(&f, &mapped, points, true, cfg)
}

fn check_partition(function: &'static str, points: &[f64]) -> Result<()> {
    if points.is_empty() {
        return Err(domain(function, "need at least one point"));
    }
    if points.windows(2).any(|w| !(w[1] >= w[0])) || points.iter().any(|p| !p.is_finite()) {
        return Err(domain(function, format!("invalid partition {points:?}")));
    }
    Ok(())
}

fn adaptive<F, T>(f: &F, tail_fn: &T, points: &[f64], with_tail: bool, cfg: &QuadratureConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
    T: Fn(f64) -> f64,
{
    cfg.validate()?;
    if points.len() < 2 && !with_tail {
        return Err(domain("integrate_breaks", "need at least two points"));
    }
    let eval = |s: &Segment, a: f64, b: f64| {
        if s.tail {
            gk21(tail_fn, a, b, true)
        } else {
            gk21(f, a, b, false)
        }
    };

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        if w[1] > w[0] {
            heap.push(gk21(f, w[0], w[1], false));
            evaluations += 21;
        }
    }
    if with_tail {
        heap.push(gk21(tail_fn, 0.0, 0.5, true));
        heap.push(gk21(tail_fn, 0.5, 1.0, true));
        evaluations += 42;
    }
    if heap.is_empty() {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evaluations,
        });
    }

    // Segments too narrow to bisect any further are parked here.
    let mut frozen: Vec<Segment> = Vec::new();
    let mut refinements = 0;

    loop {
        let (value, error) = heap
            .iter()
            .chain(frozen.iter())
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if !value.is_finite() || !error.is_finite() {
            return Err(domain("integrate", "integrand produced a non-finite value"));
        }
        let tol = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if error <= tol {
            return Ok(QuadResult {
                value,
                abs_error: error,
                evaluations,
            });
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature (roundoff limit)",
                achieved: error,
            });
        };
        if refinements >= cfg.max_refinements {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                achieved: error,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b || (worst.b - worst.a) <= 4.0 * f64::EPSILON * mid.abs().max(1e-300) {
            frozen.push(worst);
            continue;
        }
        heap.push(eval(&worst, worst.a, mid));
        heap.push(eval(&worst, mid, worst.b));
        evaluations += 42;
        refinements += 1;
    }
}
