//! Distance and SNR distributions.
//!
//! Every SNR here has the form γ = |h|²/T with |h|² exponential of mean `g`
//! and T = dⁿ/λ the scaled distance power of a uniformly placed node, so
//!
//! ```text
//! F_γ(x) = E[1 − exp(−xT/g)],    f_γ(x) = E[(T/g) exp(−xT/g)].
//! ```
//!
//! Closed forms are used where the expectation reduces to incomplete gamma
//! functions (or to erf at n = 2 on the chord); otherwise the expectation is
//! integrated numerically over a smooth parameterisation of the distance.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::geometry::{CapGeometry, ChordGeometry};
use crate::quad::{integrate_breaks, QuadratureConfig};
use crate::specfun::{erf, lower_inc_gamma_scaled, meijer_g, upper_inc_gamma, MeijerParams};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Ground-to-UAV link: G on the ground, S on the segment AB, E uniform in the
/// hemisphere of radius `r_g` around G.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UplinkScenario {
    pub chord: ChordGeometry,
    pub r_g: f64,
    /// Path-loss exponent.
    pub n: f64,
    /// Linear transmit SNR P_G/N₀.
    pub lambda_g: f64,
    pub g_gs: f64,
    pub g_ge: f64,
    /// Secrecy rate threshold, bits/s/Hz.
    pub rs_bits: f64,
}

/// Constants of the uplink closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UplinkDerived {
    pub theta: f64,
    /// Prefactor of the n = 2 CDF of γ_S as printed (twice the correct value).
    pub a_s_paper: f64,
    pub a_s_corrected: f64,
    pub b_s: f64,
    pub c_s: f64,
    pub eta: f64,
}

/// UAV-to-ground link: S at altitude h, G uniform on the ground disk cut out
/// of the coverage ball, E uniform in the above-ground part S1 of the ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DownlinkScenario {
    pub cap: CapGeometry,
    pub n: f64,
    /// Linear transmit SNR P_S/N₀.
    pub lambda_s: f64,
    pub g_sg: f64,
    pub g_se: f64,
    pub rs_bits: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DownlinkDerived {
    pub theta: f64,
    pub a_g: f64,
    pub b_g: f64,
    /// Infinite when the ground disk degenerates to a point (h = R_S).
    pub c_g: f64,
    pub b_e: f64,
    pub c_e: f64,
    pub d_e: f64,
    /// Zero when the lower cap is empty (h = R_S).
    pub e_1: f64,
    pub e_2: f64,
}

/// Which prefactor to use in the n = 2 closed form of the γ_S CDF.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConstantMode {
    #[default]
    Corrected,
    /// The printed constant; its CDF tends to −1 as γ → 0.
    Paper,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidScenario(format!("{name} must be positive and finite, got {v}")))
    }
}

fn check_common(n: f64, rs_bits: f64) -> Result<()> {
    if !(n >= 2.0 && n.is_finite()) {
        return Err(Error::InvalidScenario(format!("path-loss exponent n must be >= 2, got {n}")));
    }
    if !(rs_bits >= 0.0 && rs_bits.is_finite()) {
        return Err(Error::InvalidScenario(format!("rs_bits must be >= 0, got {rs_bits}")));
    }
    Ok(())
}

impl UplinkScenario {
    pub fn validate(&self) -> Result<()> {
        ChordGeometry::new(self.chord.b, self.chord.l)?;
        positive("r_g", self.r_g)?;
        positive("lambda_g", self.lambda_g)?;
        positive("g_gs", self.g_gs)?;
        positive("g_ge", self.g_ge)?;
        check_common(self.n, self.rs_bits)?;
        if self.chord.l > 2.0 * self.r_g {
            return Err(Error::InvalidScenario(format!(
                "chord length l = {} exceeds 2 R_G = {}",
                self.chord.l,
                2.0 * self.r_g
            )));
        }
        if self.chord.b > self.r_g {
            return Err(Error::InvalidScenario(format!(
                "chord endpoints lie outside the hemisphere (b = {} > R_G = {})",
                self.chord.b, self.r_g
            )));
        }
        Ok(())
    }

    pub fn theta(&self) -> f64 {
        self.rs_bits.exp2()
    }

    pub fn derived(&self) -> UplinkDerived {
        let lg = self.g_gs * self.lambda_g;
        let l = self.chord.l;
        let a_s_corrected = (PI * lg).sqrt() / l;
        UplinkDerived {
            theta: self.theta(),
            a_s_paper: 2.0 * a_s_corrected,
            a_s_corrected,
            b_s: self.chord.c() / lg,
            c_s: l / (2.0 * lg.sqrt()),
            eta: 3.0 * (self.lambda_g * self.g_ge).powf(3.0 / self.n) / (self.n * self.r_g.powi(3)),
        }
    }

    pub fn scaled_distance(&self, region: Region) -> Result<ScaledDistance> {
        let law = match region {
            Region::Chord => DistanceLaw::Chord(self.chord),
            Region::Hemisphere => DistanceLaw::Hemisphere { radius: self.r_g },
            other => {
                return Err(Error::InvalidScenario(format!("region {other:?} is not part of the uplink model")))
            }
        };
        Ok(ScaledDistance::new(law, self.n, self.lambda_g))
    }
}

impl DownlinkScenario {
    pub fn validate(&self) -> Result<()> {
        CapGeometry::new(self.cap.r_s, self.cap.h)?;
        positive("lambda_s", self.lambda_s)?;
        positive("g_sg", self.g_sg)?;
        positive("g_se", self.g_se)?;
        check_common(self.n, self.rs_bits)
    }

    pub fn theta(&self) -> f64 {
        self.rs_bits.exp2()
    }

    pub fn derived(&self) -> DownlinkDerived {
        let n = self.n;
        let (r, h) = (self.cap.r_s, self.cap.h);
        let lg = self.lambda_s * self.g_sg;
        let le = self.lambda_s * self.g_se;
        let r_c2 = r * r - h * h;
        let v2 = self.cap.volumes().lower_cap;
        let (e_1, e_2) = if v2 > 0.0 {
            (
                2.0 * PI * self.lambda_s.powf(3.0 / n) / (n * v2 * self.g_se),
                2.0 * PI * h * self.lambda_s.powf(2.0 / n) / (n * v2 * self.g_se),
            )
        } else {
            (0.0, 0.0)
        };
        DownlinkDerived {
            theta: self.theta(),
            a_g: r.powf(n) / lg,
            b_g: h.powf(n) / lg,
            c_g: if r_c2 > 0.0 { 2.0 * lg.powf(2.0 / n) / (n * r_c2) } else { f64::INFINITY },
            b_e: 3.0 * le.powf(3.0 / n) / (n * r.powi(3)),
            c_e: r.powf(n) / le,
            d_e: h.powf(n) / le,
            e_1,
            e_2,
        }
    }

    pub fn scaled_distance(&self, region: Region) -> Result<ScaledDistance> {
        let law = match region {
            Region::Ball => DistanceLaw::Ball { radius: self.cap.r_s },
            Region::DiskAtHeight => DistanceLaw::Disk {
                r_c: self.cap.r_c(),
                h: self.cap.h,
            },
            Region::LowerCap => {
                if !self.cap.has_lower_cap() {
                    return Err(Error::DegenerateRegion("lower cap is empty when h = R_S"));
                }
                DistanceLaw::LowerCap(self.cap)
            }
            Region::UpperCap => DistanceLaw::UpperCap(self.cap),
            other => {
                return Err(Error::InvalidScenario(format!(
                    "region {other:?} is not part of the downlink model"
                )))
            }
        };
        Ok(ScaledDistance::new(law, self.n, self.lambda_s))
    }
}

/// Either link's scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    Uplink(UplinkScenario),
    Downlink(DownlinkScenario),
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        match self {
            Scenario::Uplink(s) => s.validate(),
            Scenario::Downlink(s) => s.validate(),
        }
    }

    pub fn scaled_distance(&self, region: Region) -> Result<ScaledDistance> {
        match self {
            Scenario::Uplink(s) => s.scaled_distance(region),
            Scenario::Downlink(s) => s.scaled_distance(region),
        }
    }
}

/// Placement regions. `Chord` and `Hemisphere` belong to the uplink, the rest
/// to the downlink; distances are measured from the link transmitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Chord,
    Hemisphere,
    Ball,
    DiskAtHeight,
    LowerCap,
    UpperCap,
}

/// Distribution of the transmitter-to-node distance d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistanceLaw {
    Chord(ChordGeometry),
    Hemisphere { radius: f64 },
    Ball { radius: f64 },
    /// Ground disk of radius `r_c` seen from height `h` above its centre.
    Disk { r_c: f64, h: f64 },
    LowerCap(CapGeometry),
    UpperCap(CapGeometry),
}

impl DistanceLaw {
    pub fn support(&self) -> (f64, f64) {
        match *self {
            DistanceLaw::Chord(g) => (g.min_distance(), g.b),
            DistanceLaw::Hemisphere { radius } | DistanceLaw::Ball { radius } => (0.0, radius),
            DistanceLaw::Disk { r_c, h } => (h, r_c.hypot(h)),
            DistanceLaw::LowerCap(cap) => (cap.h, cap.r_s),
            DistanceLaw::UpperCap(cap) => (0.0, cap.r_s),
        }
    }

    pub fn pdf(&self, d: f64) -> f64 {
        let (lo, hi) = self.support();
        if d < lo || d > hi {
            return 0.0;
        }
        match *self {
            DistanceLaw::Chord(g) => chord_distance_pdf(d, &g),
            DistanceLaw::Hemisphere { radius } | DistanceLaw::Ball { radius } => 3.0 * d * d / radius.powi(3),
            DistanceLaw::Disk { r_c, .. } => 2.0 * d / (r_c * r_c),
            DistanceLaw::LowerCap(cap) => 2.0 * PI * d * (d - cap.h) / cap.volumes().lower_cap,
            DistanceLaw::UpperCap(cap) => {
                let cut = if d > cap.h { 2.0 * PI * d * (d - cap.h) } else { 0.0 };
                (4.0 * PI * d * d - cut) / cap.volumes().upper_cap
            }
        }
    }

    pub fn cdf(&self, d: f64) -> f64 {
        let (lo, hi) = self.support();
        if d <= lo {
            return 0.0;
        }
        if d >= hi {
            return 1.0;
        }
        match *self {
            DistanceLaw::Chord(g) => chord_distance_cdf(d, &g),
            DistanceLaw::Hemisphere { radius } | DistanceLaw::Ball { radius } => (d / radius).powi(3),
            DistanceLaw::Disk { r_c, h } => (d * d - h * h) / (r_c * r_c),
            DistanceLaw::LowerCap(cap) => cap_distance_cdf_unchecked(d, &cap),
            DistanceLaw::UpperCap(cap) => upper_cap_distance_cdf(d, &cap),
        }
    }

    /// E[f(d)], integrated over a parameterisation without interior kinks.
    pub fn expectation<F: Fn(f64) -> f64>(&self, f: F, cfg: &QuadratureConfig) -> Result<f64> {
        let r = match *self {
            DistanceLaw::Chord(g) => {
                // Arclength from the midpoint: the point is uniform in w.
                let c = g.c();
                let half = 0.5 * g.l;
                integrate_breaks(|w| f((w * w + c).sqrt()) / half, &[0.0, 0.5 * half, half], cfg)?
            }
            DistanceLaw::Disk { r_c, h } => {
                // r² is uniform on [0, R_C²].
                integrate_breaks(|u| f((h * h + r_c * r_c * u).sqrt()), &[0.0, 0.5, 1.0], cfg)?
            }
            DistanceLaw::UpperCap(cap) if cap.h > 0.0 && cap.h < cap.r_s => {
                integrate_breaks(|d| f(d) * self.pdf(d), &[0.0, cap.h, cap.r_s], cfg)?
            }
            _ => {
                let (lo, hi) = self.support();
                let w = hi - lo;
                integrate_breaks(|d| f(d) * self.pdf(d), &[lo, lo + 0.25 * w, lo + 0.5 * w, hi], cfg)?
            }
        };
        Ok(r.value)
    }
}

/// Law of T = dⁿ/λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledDistance {
    pub law: DistanceLaw,
    pub n: f64,
    pub lambda: f64,
}

impl ScaledDistance {
    pub fn new(law: DistanceLaw, n: f64, lambda: f64) -> Self {
        Self { law, n, lambda }
    }

    fn distance_at(&self, t: f64) -> f64 {
        (self.lambda * t).powf(1.0 / self.n)
    }

    pub fn support(&self) -> (f64, f64) {
        let (lo, hi) = self.law.support();
        (lo.powf(self.n) / self.lambda, hi.powf(self.n) / self.lambda)
    }

    pub fn pdf(&self, t: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(t > 0.0) || t < lo || t > hi {
            return 0.0;
        }
        let d = self.distance_at(t);
        self.law.pdf(d) * d / (self.n * t)
    }

    pub fn cdf(&self, t: f64) -> f64 {
        if !(t > 0.0) {
            return 0.0;
        }
        self.law.cdf(self.distance_at(t))
    }

    /// CDF at `x` of γ = |h|²/T with E|h|² = `g`, by quadrature.
    pub fn snr_cdf(&self, x: f64, g: f64, cfg: &QuadratureConfig) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(domain("snr_cdf", format!("x = {x}")));
        }
        let k = x / (self.lambda * g);
        let n = self.n;
        self.law.expectation(|d| -(-k * d.powf(n)).exp_m1(), cfg)
    }

    /// Density at `x` of γ = |h|²/T, by quadrature.
    pub fn snr_pdf(&self, x: f64, g: f64, cfg: &QuadratureConfig) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(domain("snr_pdf", format!("x = {x}")));
        }
        let scale = self.lambda * g;
        let n = self.n;
        self.law.expectation(
            |d| {
                let u = d.powf(n) / scale;
                u * (-x * u).exp()
            },
            cfg,
        )
    }
}

/// Density of T = dⁿ/λ for `region` of the given scenario.
pub fn scaled_distance_power_pdf(region: Region, x: f64, sc: &Scenario) -> Result<f64> {
    Ok(sc.scaled_distance(region)?.pdf(x))
}

/// CDF of T = dⁿ/λ for `region` of the given scenario.
pub fn scaled_distance_power_cdf(region: Region, x: f64, sc: &Scenario) -> Result<f64> {
    Ok(sc.scaled_distance(region)?.cdf(x))
}

/// Density of the distance from G to a uniform point on the chord.
pub fn chord_distance_pdf(y: f64, g: &ChordGeometry) -> f64 {
    let c = g.c();
    if y < c.sqrt() || y > g.b || y <= 0.0 {
        return 0.0;
    }
    let s = (y * y - c).max(0.0).sqrt();
    if s == 0.0 {
        return if c == 0.0 { 2.0 / g.l } else { f64::INFINITY };
    }
    2.0 * y / (g.l * s)
}

pub fn chord_distance_cdf(y: f64, g: &ChordGeometry) -> f64 {
    let c = g.c();
    if y <= c.sqrt() {
        0.0
    } else if y >= g.b {
        1.0
    } else {
        (2.0 * (y * y - c).sqrt() / g.l).min(1.0)
    }
}

fn cap_distance_cdf_unchecked(x: f64, cap: &CapGeometry) -> f64 {
    let h = cap.h;
    if x <= h {
        return 0.0;
    }
    if x >= cap.r_s {
        return 1.0;
    }
    let v = PI / 3.0 * (2.0 * x.powi(3) - 3.0 * h * x * x + h.powi(3));
    (v / cap.volumes().lower_cap).clamp(0.0, 1.0)
}

/// CDF of the distance from S to a uniform point of the lower cap S2.
pub fn cap_distance_cdf(x: f64, cap: &CapGeometry) -> Result<f64> {
    if !cap.has_lower_cap() {
        return Err(Error::DegenerateRegion("lower cap is empty when h = R_S"));
    }
    Ok(cap_distance_cdf_unchecked(x, cap))
}

/// CDF of the distance from S to a uniform point of the upper region S1.
pub fn upper_cap_distance_cdf(x: f64, cap: &CapGeometry) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= cap.r_s {
        return 1.0;
    }
    let h = cap.h;
    let below = if x > h {
        PI / 3.0 * (2.0 * x.powi(3) - 3.0 * h * x * x + h.powi(3))
    } else {
        0.0
    };
    ((4.0 / 3.0 * PI * x.powi(3) - below) / cap.volumes().upper_cap).clamp(0.0, 1.0)
}

/// ∫_lo^hi u^{s−1} e^{−xu} du.
///
/// Once the window sits far in the tail of the gamma density the difference
/// is taken between upper incomplete gammas, which avoids cancelling two
/// values close to Γ(s).
fn gamma_window(s: f64, lo: f64, hi: f64, x: f64) -> Result<f64> {
    if hi <= lo {
        return Ok(0.0);
    }
    if lo * x >= s + 1.0 {
        let diff = upper_inc_gamma(s, lo * x)? - upper_inc_gamma(s, hi * x)?;
        return Ok(diff * x.powf(-s));
    }
    let head = |c: f64| -> Result<f64> {
        if c == 0.0 {
            Ok(0.0)
        } else {
            Ok(c.powf(s) * lower_inc_gamma_scaled(s, c * x)?)
        }
    };
    Ok(head(hi)? - head(lo)?)
}

fn inner_config(cfg: &QuadratureConfig) -> QuadratureConfig {
    QuadratureConfig {
        rel_tol: (cfg.rel_tol * 0.1).max(1e-13),
        ..*cfg
    }
}

fn check_pdf_arg(function: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(function, format!("x must be positive, got {x}")))
    }
}

fn check_cdf_arg(function: &'static str, x: f64) -> Result<()> {
    if x >= 0.0 && !x.is_nan() {
        Ok(())
    } else {
        Err(domain(function, format!("x must be non-negative, got {x}")))
    }
}

/// CDF of the legitimate uplink SNR γ_S.
///
/// At n = 2 this is the erf closed form, with the prefactor chosen by `mode`;
/// otherwise the expectation over the chord is integrated numerically and
/// `mode` has no effect.
pub fn cdf_gamma_s(gamma: f64, sc: &UplinkScenario, mode: ConstantMode, cfg: &QuadratureConfig) -> Result<f64> {
    check_cdf_arg("cdf_gamma_s", gamma)?;
    if sc.n != 2.0 {
        return cdf_gamma_s_quadrature(gamma, sc, cfg);
    }
    let d = sc.derived();
    let a = match mode {
        ConstantMode::Corrected => d.a_s_corrected,
        ConstantMode::Paper => d.a_s_paper,
    };
    if gamma == 0.0 {
        // Limit of erf(C√γ)/√γ is 2C/√π; the corrected constant makes it exactly 0.
        return Ok(match mode {
            ConstantMode::Corrected => 0.0,
            ConstantMode::Paper => 1.0 - a * 2.0 * d.c_s / SQRT_PI,
        });
    }
    if gamma.is_infinite() {
        return Ok(1.0);
    }
    let root = gamma.sqrt();
    Ok(1.0 - a / root * (-d.b_s * gamma).exp() * erf(d.c_s * root))
}

/// CDF of γ_S by quadrature over the chord, valid for every n.
pub fn cdf_gamma_s_quadrature(gamma: f64, sc: &UplinkScenario, cfg: &QuadratureConfig) -> Result<f64> {
    check_cdf_arg("cdf_gamma_s", gamma)?;
    if gamma.is_infinite() {
        return Ok(1.0);
    }
    sc.scaled_distance(Region::Chord)?.snr_cdf(gamma, sc.g_gs, cfg)
}

/// Density of γ_S, by quadrature over the chord.
pub fn pdf_gamma_s(gamma: f64, sc: &UplinkScenario, cfg: &QuadratureConfig) -> Result<f64> {
    check_pdf_arg("pdf_gamma_s", gamma)?;
    sc.scaled_distance(Region::Chord)?.snr_pdf(gamma, sc.g_gs, cfg)
}

// γ = |h|²/T with d uniform in a ball or hemisphere of radius R, k = Rⁿ/(λg).
fn ball_pdf(x: f64, k: f64, n: f64) -> Result<f64> {
    Ok(3.0 / n * k * lower_inc_gamma_scaled(1.0 + 3.0 / n, k * x)?)
}

fn ball_cdf(x: f64, k: f64, n: f64) -> Result<f64> {
    if x.is_infinite() {
        return Ok(1.0);
    }
    Ok(1.0 - 3.0 / n * lower_inc_gamma_scaled(3.0 / n, k * x)?)
}

/// Density of the uplink eavesdropper SNR γ_E, E uniform in the hemisphere.
///
/// Equals η·x^{−3/n−1}·Υ(1 + 3/n, R_Gⁿx/(λ_G g_GE)), evaluated in the scaled
/// form that stays finite as x → 0.
pub fn pdf_gamma_e_hemisphere(x: f64, sc: &UplinkScenario) -> Result<f64> {
    check_pdf_arg("pdf_gamma_e_hemisphere", x)?;
    ball_pdf(x, sc.r_g.powf(sc.n) / (sc.lambda_g * sc.g_ge), sc.n)
}

pub fn cdf_gamma_e_hemisphere(x: f64, sc: &UplinkScenario) -> Result<f64> {
    check_cdf_arg("cdf_gamma_e_hemisphere", x)?;
    ball_cdf(x, sc.r_g.powf(sc.n) / (sc.lambda_g * sc.g_ge), sc.n)
}

/// Density of the downlink eavesdropper SNR for E uniform in the whole ball.
pub fn pdf_gamma_e_ball(x: f64, sc: &DownlinkScenario) -> Result<f64> {
    check_pdf_arg("pdf_gamma_e_ball", x)?;
    ball_pdf(x, sc.derived().c_e, sc.n)
}

pub fn cdf_gamma_e_ball(x: f64, sc: &DownlinkScenario) -> Result<f64> {
    check_cdf_arg("cdf_gamma_e_ball", x)?;
    ball_cdf(x, sc.derived().c_e, sc.n)
}

/// Density of the downlink eavesdropper SNR for E uniform in the lower cap S2.
pub fn pdf_gamma_e_lower_cap(x: f64, sc: &DownlinkScenario) -> Result<f64> {
    check_pdf_arg("pdf_gamma_e_lower_cap", x)?;
    if !sc.cap.has_lower_cap() {
        return Err(Error::DegenerateRegion("lower cap is empty when h = R_S"));
    }
    let d = sc.derived();
    let g = sc.g_se;
    let (s1, s2) = (3.0 / sc.n, 2.0 / sc.n);
    let part = |s: f64| gamma_window(s + 1.0, d.d_e, d.c_e, x);
    let value = d.e_1 * g.powf(s1 + 1.0) * part(s1)? - d.e_2 * g.powf(s2 + 1.0) * part(s2)?;
    Ok(value.max(0.0))
}

pub fn cdf_gamma_e_lower_cap(x: f64, sc: &DownlinkScenario) -> Result<f64> {
    check_cdf_arg("cdf_gamma_e_lower_cap", x)?;
    if !sc.cap.has_lower_cap() {
        return Err(Error::DegenerateRegion("lower cap is empty when h = R_S"));
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let d = sc.derived();
    let le = sc.lambda_s * sc.g_se;
    let (s1, s2) = (3.0 / sc.n, 2.0 / sc.n);
    let part = |s: f64| gamma_window(s, d.d_e, d.c_e, x);
    let v2 = sc.cap.volumes().lower_cap;
    let tail = 2.0 * PI / (sc.n * v2) * (le.powf(s1) * part(s1)? - sc.cap.h * le.powf(s2) * part(s2)?);
    Ok((1.0 - tail).clamp(0.0, 1.0))
}

/// CDF of the legitimate downlink SNR γ_G, G uniform on the ground disk.
///
/// At n = 2 the elementary form 1 − e^{−B_G x}(1 − e^{−(A_G−B_G)x})/((A_G−B_G)x)
/// is used; otherwise the incomplete-gamma form
/// 1 − C_G[A_G^{2/n} γ*(2/n, A_G x) − B_G^{2/n} γ*(2/n, B_G x)].
pub fn cdf_gamma_g(x: f64, sc: &DownlinkScenario) -> Result<f64> {
    check_cdf_arg("cdf_gamma_g", x)?;
    if x.is_infinite() {
        return Ok(1.0);
    }
    let d = sc.derived();
    if !d.c_g.is_finite() {
        return Ok(-(-d.a_g * x).exp_m1());
    }
    if sc.n == 2.0 {
        let u = (d.a_g - d.b_g) * x;
        let phi = if u < 1e-8 { 1.0 - 0.5 * u } else { -(-u).exp_m1() / u };
        return Ok((1.0 - (-d.b_g * x).exp() * phi).clamp(0.0, 1.0));
    }
    let s = 2.0 / sc.n;
    let tail = d.c_g * gamma_window(s, d.b_g, d.a_g, x)?;
    Ok((1.0 - tail).clamp(0.0, 1.0))
}

/// CDF of γ_G by quadrature over the ground disk, valid for every n.
pub fn cdf_gamma_g_quadrature(x: f64, sc: &DownlinkScenario, cfg: &QuadratureConfig) -> Result<f64> {
    check_cdf_arg("cdf_gamma_g", x)?;
    if x.is_infinite() {
        return Ok(1.0);
    }
    sc.scaled_distance(Region::DiskAtHeight)?.snr_cdf(x, sc.g_sg, cfg)
}

/// CDF of γ_G through its Meijer G representation
/// C_G x^{−2/n}[G(A_G x) − G(B_G x)], G = G^{1,2}_{2,3}[· | 1+2/n, 1; 1+2/n, 0, 2/n].
pub fn cdf_gamma_g_meijer(x: f64, sc: &DownlinkScenario) -> Result<f64> {
    check_pdf_arg("cdf_gamma_g_meijer", x)?;
    let d = sc.derived();
    if !d.c_g.is_finite() {
        return Err(Error::DegenerateRegion("ground disk is a point when h = R_S"));
    }
    let s = 2.0 / sc.n;
    let params = MeijerParams::new(1, 2, vec![1.0 + s, 1.0], vec![1.0 + s, 0.0, s])?;
    let at = |t: f64| -> Result<f64> {
        if t == 0.0 {
            Ok(0.0)
        } else {
            meijer_g(&params, t * x)
        }
    };
    Ok(d.c_g * x.powf(-s) * (at(d.a_g)? - at(d.b_g)?))
}

/// Density of γ_G.
pub fn pdf_gamma_g(x: f64, sc: &DownlinkScenario) -> Result<f64> {
    check_pdf_arg("pdf_gamma_g", x)?;
    let d = sc.derived();
    if !d.c_g.is_finite() {
        return Ok(d.a_g * (-d.a_g * x).exp());
    }
    let a = 1.0 + 2.0 / sc.n;
    Ok((d.c_g * gamma_window(a, d.b_g, d.a_g, x)?).max(0.0))
}

/// Density of the downlink eavesdropper SNR for E uniform in S1, by
/// quadrature. Used as an oracle; the evaluators work with the ball and
/// lower-cap densities instead.
pub fn pdf_gamma_e_upper_cap(x: f64, sc: &DownlinkScenario, cfg: &QuadratureConfig) -> Result<f64> {
    check_pdf_arg("pdf_gamma_e_upper_cap", x)?;
    sc.scaled_distance(Region::UpperCap)?.snr_pdf(x, sc.g_se, &inner_config(cfg))
}
