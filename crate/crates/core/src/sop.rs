//! Secrecy outage probability evaluators.
//!
//! With Θ = 2^{R_s}, outage occurs when γ_main ≤ Θγ_eve + Θ − 1. The lower
//! bound drops the Θ − 1 term. Both are evaluated as
//! ∫₀^∞ F_main(Θx + shift) f_eve(x) dx by adaptive quadrature.
//!
//! For the downlink the eavesdropper lives in the above-ground region S1,
//! whose SNR density is a signed mixture of the whole-ball and lower-cap
//! densities: V_S1 f_S1 = V_Sp f_ball − V_S2 f_S2. The two partial integrals
//! are exposed as [`integral_i_sp`] and [`integral_i_s2`].

use crate::distributions::{
    cdf_gamma_g, cdf_gamma_s, pdf_gamma_e_ball, pdf_gamma_e_hemisphere, pdf_gamma_e_lower_cap, ConstantMode,
    DownlinkScenario, UplinkScenario,
};
use crate::error::{domain, Error, Result};
use crate::quad::{integrate_semi_infinite, QuadResult, QuadratureConfig};
use crate::specfun::{lower_inc_gamma_scaled, meijer_g, MeijerParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SopMethod {
    Quadrature,
    ClosedForm,
    MonteCarlo,
}

impl SopMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SopMethod::Quadrature => "quadrature",
            SopMethod::ClosedForm => "closed_form",
            SopMethod::MonteCarlo => "monte_carlo",
        }
    }
}

/// A probability together with how it was obtained and how far it can be off:
/// the quadrature error estimate, or the 95% half-width for Monte Carlo.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SopEstimate {
    pub value: f64,
    pub method: SopMethod,
    pub error_bound: f64,
    /// Monte Carlo trials; 0 for deterministic methods.
    pub samples: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Bound {
    #[default]
    Lower,
    Exact,
}

impl Bound {
    pub fn as_str(&self) -> &'static str {
        match self {
            Bound::Lower => "lower",
            Bound::Exact => "exact",
        }
    }
}

/// How the ball and lower-cap integrals are combined for the downlink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Decomposition {
    /// (V_Sp I_Sp − V_S2 I_S2)/V_S1, the probability for E uniform in S1.
    #[default]
    Exact,
    /// I_Sp − h²(3R_S − h)/(4R_S³)·I_S2, as originally published.
    Paper,
}

impl Decomposition {
    pub fn as_str(&self) -> &'static str {
        match self {
            Decomposition::Exact => "exact",
            Decomposition::Paper => "paper",
        }
    }
}

/// Weight of I_S2 in the published combination.
pub fn paper_decomposition_weight(r_s: f64, h: f64) -> f64 {
    h * h * (3.0 * r_s - h) / (4.0 * r_s.powi(3))
}

// Partition of (0, ∞) adapted to the integrand's characteristic scales. All
// points are proportional to the scales, so rescaling every SNR by the same
// factor rescales the partition exactly.
fn scale_partition(scales: &[f64]) -> Vec<f64> {
    let mut pts = vec![0.0];
    for &s in scales.iter().filter(|s| s.is_finite() && **s > 0.0) {
        for m in [1e-2, 0.1, 1.0, 10.0] {
            pts.push(s * m);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(b.abs()));
    pts
}

fn integrate_positive<F: Fn(f64) -> Result<f64>>(f: F, scales: &[f64], cfg: &QuadratureConfig) -> Result<QuadResult> {
    let pts = scale_partition(scales);
    let tail = *pts.last().unwrap();
    if !(tail > 0.0) {
        return Err(domain("integrate_positive", "no positive scale"));
    }
    let failure = std::cell::Cell::new(None);
    let r = integrate_semi_infinite(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        },
        &pts,
        tail,
        cfg,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    r
}

fn shift(bound: Bound, theta: f64) -> f64 {
    match bound {
        Bound::Lower => 0.0,
        Bound::Exact => theta - 1.0,
    }
}

fn finish(r: QuadResult) -> SopEstimate {
    SopEstimate {
        value: r.value.clamp(0.0, 1.0),
        method: SopMethod::Quadrature,
        error_bound: r.abs_error,
        samples: 0,
    }
}

/// Uplink SOP (lower bound or exact) by quadrature.
pub fn sop_uplink(sc: &UplinkScenario, bound: Bound, cfg: &QuadratureConfig) -> Result<SopEstimate> {
    sc.validate()?;
    cfg.validate()?;
    let theta = sc.theta();
    let s = shift(bound, theta);
    let inner = QuadratureConfig {
        rel_tol: (cfg.rel_tol * 0.1).max(1e-13),
        ..*cfg
    };
    let lg = sc.lambda_g * sc.g_gs;
    let c = sc.chord.c();
    let scales = [
        sc.lambda_g * sc.g_ge / sc.r_g.powf(sc.n),
        lg / sc.chord.b.powf(sc.n) / theta,
        if c > 0.0 { lg / c.powf(sc.n / 2.0) / theta } else { f64::NAN },
    ];
    let r = integrate_positive(
        |x| Ok(cdf_gamma_s(theta * x + s, sc, ConstantMode::Corrected, &inner)? * pdf_gamma_e_hemisphere(x, sc)?),
        &scales,
        cfg,
    )?;
    Ok(finish(r))
}

pub fn sop_uplink_lower(sc: &UplinkScenario, cfg: &QuadratureConfig) -> Result<SopEstimate> {
    sop_uplink(sc, Bound::Lower, cfg)
}

pub fn sop_uplink_exact(sc: &UplinkScenario, cfg: &QuadratureConfig) -> Result<SopEstimate> {
    sop_uplink(sc, Bound::Exact, cfg)
}

/// Eavesdropper region of a partial downlink integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EveRegion {
    /// The whole coverage ball.
    Ball,
    /// The below-ground cap S2.
    LowerCap,
}

/// ∫₀^∞ F_γG(Θx + shift) f_γE(x) dx with E uniform in `region`.
pub fn downlink_region_integral(
    sc: &DownlinkScenario,
    region: EveRegion,
    bound: Bound,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    sc.validate()?;
    cfg.validate()?;
    if region == EveRegion::LowerCap && !sc.cap.has_lower_cap() {
        return Err(Error::DegenerateRegion("lower cap is empty when h = R_S"));
    }
    let d = sc.derived();
    let theta = d.theta;
    let s = shift(bound, theta);
    let scales = [1.0 / d.c_e, 1.0 / d.d_e, 1.0 / (d.a_g * theta), 1.0 / (d.b_g * theta)];
    match region {
        EveRegion::Ball => integrate_positive(|x| Ok(cdf_gamma_g(theta * x + s, sc)? * pdf_gamma_e_ball(x, sc)?), &scales, cfg),
        EveRegion::LowerCap => integrate_positive(
            |x| Ok(cdf_gamma_g(theta * x + s, sc)? * pdf_gamma_e_lower_cap(x, sc)?),
            &scales,
            cfg,
        ),
    }
}

/// I_Sp: the lower-bound integral with E uniform in the whole ball.
pub fn integral_i_sp(sc: &DownlinkScenario, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(downlink_region_integral(sc, EveRegion::Ball, Bound::Lower, cfg)?.value)
}

/// I_S2: the lower-bound integral with E uniform in the lower cap.
pub fn integral_i_s2(sc: &DownlinkScenario, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(downlink_region_integral(sc, EveRegion::LowerCap, Bound::Lower, cfg)?.value)
}

fn combine(sc: &DownlinkScenario, mode: Decomposition, sp: (f64, f64), s2: (f64, f64)) -> (f64, f64) {
    match mode {
        Decomposition::Exact => {
            let v = sc.cap.volumes();
            (
                (v.sphere * sp.0 - v.lower_cap * s2.0) / v.upper_cap,
                (v.sphere * sp.1 + v.lower_cap * s2.1) / v.upper_cap,
            )
        }
        Decomposition::Paper => {
            let w = paper_decomposition_weight(sc.cap.r_s, sc.cap.h);
            (sp.0 - w * s2.0, sp.1 + w * s2.1)
        }
    }
}

/// Downlink SOP by quadrature, combining the ball and lower-cap integrals
/// according to `mode`. When h = R_S the lower cap is empty and both modes
/// return the ball integral.
pub fn sop_downlink(
    sc: &DownlinkScenario,
    bound: Bound,
    mode: Decomposition,
    cfg: &QuadratureConfig,
) -> Result<SopEstimate> {
    let sp = downlink_region_integral(sc, EveRegion::Ball, bound, cfg)?;
    if !sc.cap.has_lower_cap() {
        return Ok(finish(sp));
    }
    let s2 = downlink_region_integral(sc, EveRegion::LowerCap, bound, cfg)?;
    let (value, err) = combine(sc, mode, (sp.value, sp.abs_error), (s2.value, s2.abs_error));
    Ok(SopEstimate {
        value: value.clamp(0.0, 1.0),
        method: SopMethod::Quadrature,
        error_bound: err,
        samples: 0,
    })
}

pub fn sop_downlink_lower(sc: &DownlinkScenario, cfg: &QuadratureConfig, mode: Decomposition) -> Result<SopEstimate> {
    sop_downlink(sc, Bound::Lower, mode, cfg)
}

pub fn sop_downlink_exact(sc: &DownlinkScenario, cfg: &QuadratureConfig) -> Result<SopEstimate> {
    sop_downlink(sc, Bound::Exact, Decomposition::Exact, cfg)
}

// Relative accuracy assumed for each Meijer G evaluation when reporting the
// error of the closed forms.
const MEIJER_REL_ERR: f64 = 1e-8;

fn check_closed_form(sc: &DownlinkScenario) -> Result<()> {
    sc.validate()?;
    if !sc.cap.has_lower_cap() {
        return Err(Error::DegenerateRegion("closed forms need a ground disk of positive radius (h < R_S)"));
    }
    Ok(())
}

/// I_Sp from its Meijer G closed form. Returns the value and the sum of the
/// magnitudes of the cancelling terms.
fn i_sp_terms(sc: &DownlinkScenario) -> Result<(f64, f64)> {
    check_closed_form(sc)?;
    let d = sc.derived();
    let n = sc.n;
    let (s3, s5) = (3.0 / n, 5.0 / n);
    let params = MeijerParams::new(3, 2, vec![1.0, s3, 1.0 + s5, 1.0 + s3], vec![1.0 + s3, s3, s5, 0.0])?;
    let term = |t: f64| -> Result<f64> {
        if t == 0.0 {
            return Ok(0.0);
        }
        let g = meijer_g(&params, d.c_e / (t * d.theta))?;
        Ok(d.c_g * d.b_e * d.theta.powf(s3) * t.powf(s5) * g)
    };
    let (ta, tb) = (term(d.a_g)?, term(d.b_g)?);
    Ok((ta - tb, ta.abs() + tb.abs()))
}

/// I_Sp evaluated through the Meijer G closed form.
pub fn integral_i_sp_closed_form(sc: &DownlinkScenario) -> Result<f64> {
    Ok(i_sp_terms(sc)?.0)
}

/// f₃(s, t, b) = ∫₀^∞ x^{−s−1−2/n} Υ(s+1, bx) G(tΘx) dx with
/// G = G^{1,2}_{2,3}[· | 1+2/n, 1; 1+2/n, 0, 2/n], in closed form:
/// b^{s+2/n} G^{2,3}_{4,4}[tΘ/b | 1+2/n, 1, 2/n, 1+s+2/n; 1+2/n, s+2/n, 0, 2/n].
pub fn f3_closed_form(s: f64, t: f64, b: f64, theta: f64, n: f64) -> Result<f64> {
    if t == 0.0 || b == 0.0 {
        return Ok(0.0);
    }
    let q = 2.0 / n;
    let params = MeijerParams::new(
        2,
        3,
        vec![1.0 + q, 1.0, q, 1.0 + s + q],
        vec![1.0 + q, s + q, 0.0, q],
    )?;
    Ok(b.powf(s + q) * meijer_g(&params, t * theta / b)?)
}

/// f₃ from its defining integral. The inner G-function is replaced by its
/// elementary equivalent G(z) = z^{2/n}(n/2 − γ*(2/n, z)).
pub fn f3_quadrature(s: f64, t: f64, b: f64, theta: f64, n: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if t == 0.0 || b == 0.0 {
        return Ok(0.0);
    }
    let q = 2.0 / n;
    let k = t * theta;
    let r = integrate_positive(
        |x| {
            let eve = b.powf(s + 1.0) * lower_inc_gamma_scaled(s + 1.0, b * x)?;
            let main = k.powf(q) * (1.0 / q - lower_inc_gamma_scaled(q, k * x)?);
            Ok(eve * main)
        },
        &[1.0 / b, 1.0 / k],
        cfg,
    )?;
    Ok(r.value)
}

fn f2_terms(sc: &DownlinkScenario, t: f64) -> Result<(f64, f64)> {
    let d = sc.derived();
    let n = sc.n;
    let g = sc.g_se;
    let (s1, s2) = (3.0 / n, 2.0 / n);
    let f3 = |s: f64, b: f64| f3_closed_form(s, t, b, d.theta, n);
    let parts = [
        d.e_1 * g.powf(s1 + 1.0) * f3(s1, d.c_e)?,
        -d.e_1 * g.powf(s1 + 1.0) * f3(s1, d.d_e)?,
        -d.e_2 * g.powf(s2 + 1.0) * f3(s2, d.c_e)?,
        d.e_2 * g.powf(s2 + 1.0) * f3(s2, d.d_e)?,
    ];
    Ok((parts.iter().sum(), parts.iter().map(|p| p.abs()).sum()))
}

fn i_s2_terms(sc: &DownlinkScenario) -> Result<(f64, f64)> {
    check_closed_form(sc)?;
    let d = sc.derived();
    let pre = d.c_g * d.theta.powf(-2.0 / sc.n);
    let (fa, ma) = f2_terms(sc, d.a_g)?;
    let (fb, mb) = f2_terms(sc, d.b_g)?;
    Ok((pre * (fa - fb), pre * (ma + mb)))
}

/// I_S2 evaluated through the f₃ closed forms.
pub fn integral_i_s2_closed_form(sc: &DownlinkScenario) -> Result<f64> {
    Ok(i_s2_terms(sc)?.0)
}

/// Downlink SOP lower bound from the Meijer G closed forms (h < R_S).
pub fn sop_downlink_lower_closed_form(sc: &DownlinkScenario, mode: Decomposition) -> Result<SopEstimate> {
    let sp = i_sp_terms(sc)?;
    let s2 = i_s2_terms(sc)?;
    let (value, magnitude) = combine(
        sc,
        mode,
        (sp.0, sp.1 * MEIJER_REL_ERR),
        (s2.0, s2.1 * MEIJER_REL_ERR),
    );
    Ok(SopEstimate {
        value: value.clamp(0.0, 1.0),
        method: SopMethod::ClosedForm,
        error_bound: magnitude,
        samples: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{CapGeometry, ChordGeometry};
    use approx::assert_relative_eq;

    fn uplink() -> UplinkScenario {
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

    fn downlink() -> DownlinkScenario {
        DownlinkScenario {
            cap: CapGeometry::new(20.0, 10.0).unwrap(),
            n: 2.0,
            lambda_s: 10f64.powf(0.5),
            g_sg: 1.0,
            g_se: 1.1,
            rs_bits: 0.1,
        }
    }

    #[test]
    fn uplink_exact_not_below_lower() {
        let cfg = QuadratureConfig::default();
        let lo = sop_uplink_lower(&uplink(), &cfg).unwrap().value;
        let ex = sop_uplink_exact(&uplink(), &cfg).unwrap().value;
        assert!(lo > 0.0 && lo < 1.0);
        assert!(ex >= lo);
        let sc = UplinkScenario { rs_bits: 0.0, ..uplink() };
        assert_eq!(sop_uplink_lower(&sc, &cfg).unwrap().value, sop_uplink_exact(&sc, &cfg).unwrap().value);
    }

    #[test]
    fn i_sp_reference_value() {
        // Independent high-precision evaluation of the same integral.
        let v = integral_i_sp(&downlink(), &QuadratureConfig::default()).unwrap();
        assert_relative_eq!(v, 0.559_490_874_906_177_3, max_relative = 1e-8);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let sc = downlink();
        let cfg = QuadratureConfig::default();
        assert_relative_eq!(
            integral_i_sp_closed_form(&sc).unwrap(),
            integral_i_sp(&sc, &cfg).unwrap(),
            max_relative = 1e-6
        );
        assert_relative_eq!(
            integral_i_s2_closed_form(&sc).unwrap(),
            integral_i_s2(&sc, &cfg).unwrap(),
            max_relative = 1e-6
        );
    }

    #[test]
    fn full_height_modes_coincide() {
        let sc = DownlinkScenario {
            cap: CapGeometry::new(20.0, 20.0).unwrap(),
            ..downlink()
        };
        let cfg = QuadratureConfig::default();
        let a = sop_downlink_lower(&sc, &cfg, Decomposition::Exact).unwrap().value;
        let b = sop_downlink_lower(&sc, &cfg, Decomposition::Paper).unwrap().value;
        assert_eq!(a, b);
        assert_eq!(a, integral_i_sp(&sc, &cfg).unwrap());
        assert!(matches!(integral_i_s2(&sc, &cfg), Err(Error::DegenerateRegion(_))));
    }

    #[test]
    fn partition_scales_exactly() {
        let a = scale_partition(&[0.3, 2.0]);
        let b = scale_partition(&[0.6, 4.0]);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(2.0 * x, *y);
        }
    }
}
