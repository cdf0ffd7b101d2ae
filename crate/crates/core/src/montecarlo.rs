//! Monte Carlo simulation of the secrecy outage events and a
//! Kolmogorov–Smirnov helper for checking samplers against analytic CDFs.
//!
//! Trial `i` draws everything it needs from `RandomStream::trial_rng(i)`, in a
//! fixed order (positions first, then fading gains), so outage counts do not
//! depend on how rayon splits the work.

use rand_core::RngCore;
use rayon::prelude::*;

use crate::distributions::{DownlinkScenario, UplinkScenario};
use crate::error::{domain, Error, Result};
use crate::geometry::{
    sample_chord_point, sample_uniform_ball, sample_uniform_disk, sample_uniform_hemisphere,
    sample_uniform_lower_cap, sample_uniform_upper_cap, Point3,
};
use crate::sop::{Bound, EveRegion, SopEstimate, SopMethod};
use crate::stream::{uniform01, RandomStream};

pub const MIN_TRIALS: u64 = 1000;

const Z_95: f64 = 1.959_963_984_540_054;
const WILSON_BELOW: u64 = 30;

/// Outcome of a Bernoulli Monte Carlo experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McResult {
    pub estimate: f64,
    pub half_width_95: f64,
    pub samples: u64,
    pub outage_count: u64,
}

impl McResult {
    /// Normal-approximation interval, or the Wilson score interval when fewer
    /// than 30 outages were observed.
    pub fn from_counts(outage_count: u64, samples: u64) -> Self {
        let (lo, hi) = interval(outage_count, samples);
        let estimate = outage_count as f64 / samples as f64;
        McResult {
            estimate,
            half_width_95: 0.5 * (hi - lo),
            samples,
            outage_count,
        }
    }

    pub fn interval_95(&self) -> (f64, f64) {
        interval(self.outage_count, self.samples)
    }

    /// Standard error implied by the reported 95% half-width.
    pub fn standard_error(&self) -> f64 {
        self.half_width_95 / Z_95
    }

    pub fn to_estimate(&self) -> SopEstimate {
        SopEstimate {
            value: self.estimate,
            method: SopMethod::MonteCarlo,
            error_bound: self.half_width_95,
            samples: self.samples,
        }
    }
}

fn interval(count: u64, n: u64) -> (f64, f64) {
    let nf = n as f64;
    let p = count as f64 / nf;
    if count >= WILSON_BELOW {
        let hw = Z_95 * (p * (1.0 - p) / nf).sqrt();
        return ((p - hw).max(0.0), (p + hw).min(1.0));
    }
    let z2 = Z_95 * Z_95;
    let centre = (p + z2 / (2.0 * nf)) / (1.0 + z2 / nf);
    let hw = Z_95 / (1.0 + z2 / nf) * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
    let lo = if count == 0 { 0.0 } else { (centre - hw).max(0.0) };
    let hi = if count == n { 1.0 } else { (centre + hw).min(1.0) };
    (lo, hi)
}

/// |h|² under Rayleigh fading: exponential with mean `g_mean`.
pub fn draw_power_gain<R: RngCore + ?Sized>(g_mean: f64, rng: &mut R) -> Result<f64> {
    if !(g_mean > 0.0 && g_mean.is_finite()) {
        return Err(domain("draw_power_gain", format!("mean gain must be positive, got {g_mean}")));
    }
    Ok(exp_gain(g_mean, rng))
}

#[inline]
fn exp_gain<R: RngCore + ?Sized>(g: f64, rng: &mut R) -> f64 {
    -g * (-uniform01(rng)).ln_1p()
}

fn check_trials(n: u64) -> Result<()> {
    if n < MIN_TRIALS {
        return Err(domain("monte carlo", format!("need at least {MIN_TRIALS} trials, got {n}")));
    }
    Ok(())
}

fn count_outages<F>(n: u64, rs: RandomStream, trial: F) -> u64
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> bool + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|i| u64::from(trial(&mut rs.trial_rng(i))))
        .sum()
}

fn outage(main: f64, eve: f64, theta: f64, bound: Bound) -> bool {
    match bound {
        Bound::Lower => main <= theta * eve,
        Bound::Exact => main <= theta * eve + theta - 1.0,
    }
}

/// Simulated uplink outage probability.
pub fn mc_sop_uplink(sc: &UplinkScenario, n: u64, bound: Bound, rs: RandomStream) -> Result<McResult> {
    sc.validate()?;
    check_trials(n)?;
    let theta = sc.theta();
    let count = count_outages(n, rs, |rng| {
        let d_s = sample_chord_point(&sc.chord, rng);
        let d_e = sample_uniform_hemisphere(sc.r_g, rng).norm();
        let h_s = exp_gain(sc.g_gs, rng);
        let h_e = exp_gain(sc.g_ge, rng);
        let gamma_s = sc.lambda_g * h_s / d_s.powf(sc.n);
        let gamma_e = sc.lambda_g * h_e / d_e.powf(sc.n);
        outage(gamma_s, gamma_e, theta, bound)
    });
    Ok(McResult::from_counts(count, n))
}

fn downlink_trial<R: RngCore + ?Sized>(
    sc: &DownlinkScenario,
    eve: Point3,
    bound: Bound,
    theta: f64,
    rng: &mut R,
) -> bool {
    let center = sc.cap.center();
    let g = sample_uniform_disk(sc.cap.r_c(), rng);
    let h_g = exp_gain(sc.g_sg, rng);
    let h_e = exp_gain(sc.g_se, rng);
    let gamma_g = sc.lambda_s * h_g / g.distance(&center).powf(sc.n);
    let gamma_e = sc.lambda_s * h_e / eve.distance(&center).powf(sc.n);
    outage(gamma_g, gamma_e, theta, bound)
}

/// Simulated downlink outage probability with E uniform in S1.
pub fn mc_sop_downlink(sc: &DownlinkScenario, n: u64, bound: Bound, rs: RandomStream) -> Result<McResult> {
    sc.validate()?;
    check_trials(n)?;
    let theta = sc.theta();
    let count = count_outages(n, rs, |rng| {
        let eve = sample_uniform_upper_cap(&sc.cap, rng);
        downlink_trial(sc, eve, bound, theta, rng)
    });
    Ok(McResult::from_counts(count, n))
}

/// Simulated lower-bound outage probability with E uniform in the whole ball
/// or in the lower cap, the Monte Carlo counterparts of I_Sp and I_S2.
pub fn mc_region_expectation(sc: &DownlinkScenario, region: EveRegion, n: u64, rs: RandomStream) -> Result<McResult> {
    sc.validate()?;
    check_trials(n)?;
    if region == EveRegion::LowerCap && !sc.cap.has_lower_cap() {
        return Err(Error::DegenerateRegion("lower cap is empty when h = R_S"));
    }
    let theta = sc.theta();
    let center = sc.cap.center();
    let count = count_outages(n, rs, |rng| {
        let eve = match region {
            EveRegion::Ball => {
                let p = sample_uniform_ball(sc.cap.r_s, rng);
                Point3::new(p.x, p.y, p.z + center.z)
            }
            EveRegion::LowerCap => match sample_uniform_lower_cap(&sc.cap, rng) {
                Ok(p) => p,
                Err(_) => unreachable!("lower cap checked non-empty"),
            },
        };
        downlink_trial(sc, eve, Bound::Lower, theta, rng)
    });
    Ok(McResult::from_counts(count, n))
}

/// Result of a one-sample Kolmogorov–Smirnov test at α = 0.01.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsOutcome {
    pub statistic: f64,
    pub critical: f64,
    pub pass: bool,
}

/// Sup-distance between the empirical CDF of `samples` and `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<KsOutcome> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let statistic = sorted.iter().enumerate().fold(0.0f64, |d, (i, &x)| {
        let f = cdf(x);
        d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n)
    });
    let critical = 1.63 / n.sqrt();
    Ok(KsOutcome {
        statistic,
        critical,
        pass: statistic < critical,
    })
}
