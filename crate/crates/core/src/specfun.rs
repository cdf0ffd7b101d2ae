//! Special functions: error function, gamma family and a Mellin–Barnes
//! evaluator for the univariate Meijer G-function.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::quad::{integrate_breaks, QuadratureConfig};

const SQRT_PI: f64 = 1.772_453_850_905_516;
const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const ERF_SWITCH: f64 = 2.5;

/// Error function.
///
/// Below |x| = 2.5 a positive-term series (no cancellation) is summed; above,
/// `1 - erfc(x)` with erfc from its continued fraction.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax < ERF_SWITCH {
        erf_series(ax)
    } else {
        1.0 - erfc_continued_fraction(ax)
    };
    v.copysign(x)
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x >= ERF_SWITCH {
        erfc_continued_fraction(x)
    } else {
        1.0 - erf(x)
    }
}

// erf(x) = 2/√π e^{-x²} Σ 2^k x^{2k+1} / (1·3···(2k+1))
fn erf_series(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= 2.0 * x2 / (2.0 * k + 1.0);
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    FRAC_2_SQRT_PI * (-x2).exp() * sum
}

// Modified Lentz evaluation of erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
fn erfc_continued_fraction(x: f64) -> f64 {
    if x > 27.0 {
        return 0.0;
    }
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = 0.5 * k as f64;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (SQRT_PI * f)
}

/// Natural log of Γ(x) for real x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("ln_gamma", format!("x = {x} must be positive and finite")));
    }
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx)
        return Ok((PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)?);
    }
    let z = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok(LN_SQRT_2PI + (z + 0.5) * t.ln() - t + sum.ln())
}

/// Γ(x) for real x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    ln_gamma(x).map(f64::exp)
}

/// Log-gamma on the complex plane.
///
/// For Re z ≥ 1/2 this is the branch that is real on the positive axis and
/// continuous in the half-plane; the left half-plane is reached by reflection,
/// where the imaginary part is only defined modulo 2π.
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain("ln_gamma_complex", format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole(z.re));
    }
    if z.re < 0.5 {
        let reflected = ln_gamma_complex(Complex64::new(1.0, 0.0) - z)?;
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - reflected);
    }
    let zm1 = z - 1.0;
    let mut sum = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (zm1 + i as f64);
    }
    let t = zm1 + (LANCZOS_G + 0.5);
    Ok(LN_SQRT_2PI + (zm1 + 0.5) * t.ln() - t + sum.ln())
}

// ln sin(πz), written so that large |Im z| does not overflow.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 20.0 {
        return (z * PI).sin().ln();
    }
    let i = Complex64::i();
    let two_i = Complex64::new(0.0, 2.0);
    if z.im > 0.0 {
        // sin(πz) = e^{-iπz} (e^{2iπz} − 1) / (2i)
        -i * PI * z + ((two_i * PI * z).exp() - 1.0).ln() - two_i.ln()
    } else {
        // sin(πz) = e^{iπz} (1 − e^{−2iπz}) / (2i)
        i * PI * z + (1.0 - (-two_i * PI * z).exp()).ln() - two_i.ln()
    }
}

fn check_inc_gamma_args(function: &'static str, a: f64, x: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(function, format!("a = {a} must be positive")));
    }
    if !(x >= 0.0) {
        return Err(domain(function, format!("x = {x} must be non-negative")));
    }
    Ok(())
}

// Σ_k x^k / (a(a+1)···(a+k)); converges for all x, used for x < a + 1.
fn inc_gamma_series_sum(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..10_000 {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    sum
}

// Γ(a, x) by modified Lentz, valid for x ≥ a + 1.
fn upper_inc_gamma_cf(a: f64, x: f64) -> Result<f64> {
    let log_prefactor = a * x.ln() - x;
    if log_prefactor < -760.0 {
        return Ok(0.0);
    }
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() <= 2.0 * f64::EPSILON {
            return Ok(log_prefactor.exp() * h);
        }
    }
    Err(Error::NonConvergence {
        what: "upper incomplete gamma continued fraction",
        achieved: f64::NAN,
    })
}

// Υ(a, x) for a ∈ ½ℕ by upward recurrence Υ(a+1) = aΥ(a) − x^a e^{-x},
// started from Υ(½) = √π erf(√x) or Υ(1) = 1 − e^{-x}. Stable for x ≥ a.
fn lower_inc_gamma_elementary(a: f64, x: f64) -> f64 {
    let (mut s, mut val) = if (a - a.floor()).abs() > 0.25 {
        (0.5, SQRT_PI * erf(x.sqrt()))
    } else {
        (1.0, -(-x).exp_m1())
    };
    let ex = (-x).exp();
    while s < a - 0.25 {
        val = s * val - x.powf(s) * ex;
        s += 1.0;
    }
    val
}

fn is_small_half_integer(a: f64) -> bool {
    let twice = 2.0 * a;
    twice == twice.round() && twice <= 40.0
}

/// Lower incomplete gamma Υ(a, x) = ∫₀ˣ e^{-t} t^{a-1} dt.
///
/// Half-integer and integer orders (the n = 2 path-loss case) are expanded in
/// erf/exp terms once x ≥ a + 1.
pub fn lower_inc_gamma(a: f64, x: f64) -> Result<f64> {
    check_inc_gamma_args("lower_inc_gamma", a, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return gamma(a);
    }
    if x < a + 1.0 {
        return Ok((a * x.ln() - x).exp() * inc_gamma_series_sum(a, x));
    }
    if is_small_half_integer(a) {
        return Ok(lower_inc_gamma_elementary(a, x));
    }
    Ok(gamma(a)? - upper_inc_gamma_cf(a, x)?)
}

/// Upper incomplete gamma Γ(a, x) = ∫ₓ^∞ e^{-t} t^{a-1} dt.
pub fn upper_inc_gamma(a: f64, x: f64) -> Result<f64> {
    check_inc_gamma_args("upper_inc_gamma", a, x)?;
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x < a + 1.0 {
        return Ok(gamma(a)? - lower_inc_gamma(a, x)?);
    }
    upper_inc_gamma_cf(a, x)
}

/// x^{-a} Υ(a, x), finite at x = 0 where it equals 1/a.
pub fn lower_inc_gamma_scaled(a: f64, x: f64) -> Result<f64> {
    check_inc_gamma_args("lower_inc_gamma_scaled", a, x)?;
    if x < a + 1.0 {
        return Ok((-x).exp() * inc_gamma_series_sum(a, x));
    }
    Ok(lower_inc_gamma(a, x)? * (-a * x.ln()).exp())
}

/// Parameters of G^{m,n}_{p,q}[x | a; b].
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerParams {
    pub m: usize,
    pub n: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl MeijerParams {
    pub fn new(m: usize, n: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let p = MeijerParams { m, n, a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    fn validate(&self) -> Result<()> {
        let (p, q) = (self.p(), self.q());
        if self.m > q || self.n > p {
            return Err(Error::UnsupportedMeijer(format!(
                "need m <= q and n <= p (m={}, n={}, p={p}, q={q})",
                self.m, self.n
            )));
        }
        if p > 4 || q > 4 {
            return Err(Error::UnsupportedMeijer(format!("p={p}, q={q} exceeds 4")));
        }
        if self.a.iter().chain(&self.b).any(|v| !v.is_finite()) {
            return Err(Error::UnsupportedMeijer("non-finite parameter".into()));
        }
        // Exponential decay of the Mellin–Barnes integrand along a vertical line.
        let delta = (self.m + self.n) as f64 - 0.5 * (p + q) as f64;
        if delta <= 0.0 {
            return Err(Error::UnsupportedMeijer(format!(
                "m + n - (p + q)/2 = {delta} gives no exponential decay on a vertical contour"
            )));
        }
        self.contour_abscissa().map(|_| ())
    }

    /// Abscissa of the vertical contour: the midpoint of the gap between the
    /// poles of Γ(1 − a_i + s), i ≤ n (to the left) and of Γ(b_j − s), j ≤ m
    /// (to the right).
    pub fn contour_abscissa(&self) -> Result<f64> {
        let left = self.a[..self.n].iter().map(|a| a - 1.0).fold(f64::NEG_INFINITY, f64::max);
        let right = self.b[..self.m].iter().copied().fold(f64::INFINITY, f64::min);
        match (left.is_finite(), right.is_finite()) {
            (true, true) if left < right => Ok(0.5 * (left + right)),
            (true, true) => Err(Error::UnsupportedMeijer(format!(
                "pole families overlap: max(a_i - 1) = {left} >= min(b_j) = {right}"
            ))),
            (true, false) => Ok(left + 0.5),
            (false, true) => Ok(right - 0.5),
            (false, false) => Ok(0.0),
        }
    }

    // ln of the Mellin–Barnes kernel at s, or None where a reciprocal gamma vanishes.
    fn ln_kernel(&self, s: Complex64) -> Result<Option<Complex64>> {
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for &b in &self.b[..self.m] {
            acc += ln_gamma_complex(b - s)?;
        }
        for &a in &self.a[..self.n] {
            acc += ln_gamma_complex(one - a + s)?;
        }
        for &b in &self.b[self.m..] {
            match ln_gamma_complex(one - b + s) {
                Ok(v) => acc -= v,
                Err(Error::Pole(_)) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
        for &a in &self.a[self.n..] {
            match ln_gamma_complex(a - s) {
                Ok(v) => acc -= v,
                Err(Error::Pole(_)) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
        Ok(Some(acc))
    }
}

const MEIJER_TAIL_RATIO: f64 = 1e-16;
const MEIJER_MAX_T: f64 = 4000.0;

/// Meijer G-function G^{m,n}_{p,q}[x | a; b] for real x > 0, by quadrature
/// along a vertical Mellin–Barnes contour.
///
/// With s = c + it and real parameters the kernel is conjugate-symmetric, so
/// G = (1/π) ∫₀^∞ Re[Φ(s) x^s] dt. The tail is cut where the kernel falls
/// below 1e-16 of its running peak.
pub fn meijer_g(params: &MeijerParams, x: f64) -> Result<f64> {
    params.validate()?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("meijer_g", format!("x = {x} must be positive and finite")));
    }
    let c = params.contour_abscissa()?;
    let ln_x = x.ln();

    let log_integrand = |t: f64| -> Result<Option<Complex64>> {
        let s = Complex64::new(c, t);
        Ok(params.ln_kernel(s)?.map(|k| k + s * ln_x))
    };

    // Locate the truncation point.
    let step = 0.25;
    let mut peak_ln = f64::NEG_INFINITY;
    let mut t = 0.0;
    let cutoff = loop {
        if let Some(l) = log_integrand(t)? {
            peak_ln = peak_ln.max(l.re);
            if t >= 2.0 && l.re < peak_ln + MEIJER_TAIL_RATIO.ln() {
                break t;
            }
        }
        t += step;
        if t > MEIJER_MAX_T {
            return Err(Error::NonConvergence {
                what: "Meijer G contour truncation",
                achieved: f64::NAN,
            });
        }
    };

    // Roundoff in summing an oscillating integrand of size `peak` over
    // [0, cutoff] sets the absolute floor.
    let peak = peak_ln.exp();
    let cfg = QuadratureConfig {
        rel_tol: 1e-11,
        abs_tol: 32.0 * f64::EPSILON * peak * cutoff,
        max_refinements: 20_000,
    };
    let panels = cutoff.ceil() as usize;
    let breaks: Vec<f64> = (0..=panels).map(|k| k as f64 * cutoff / panels as f64).collect();
    let integrand = |t: f64| match log_integrand(t) {
        Ok(Some(l)) => l.exp().re,
        _ => 0.0,
    };
    let r = integrate_breaks(integrand, &breaks, &cfg)?;
    Ok(r.value / PI)
}
