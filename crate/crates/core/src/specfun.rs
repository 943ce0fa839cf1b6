//! Complex special functions: log-gamma, the functional-equation factor, the
//! Riemann-Siegel theta function, Hardy's Z and Euler-Maclaurin Hurwitz zeta.
//!
//! Everything is double precision. The Euler-Maclaurin evaluator returns a
//! remainder bound together with the value so callers can certify accuracy.

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::sum::ComplexNeumaier;
use num_complex::Complex64;
use std::f64::consts::PI;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2j} / (2j)!` for `j = 1..=50`.
const BERNOULLI_RATIO: [f64; 50] = [
    8.3333333333333333e-2,
    -1.3888888888888889e-3,
    3.3068783068783069e-5,
    -8.2671957671957672e-7,
    2.0876756987868099e-8,
    -5.2841901386874932e-10,
    1.3382536530684679e-11,
    -3.3896802963225829e-13,
    8.5860620562778446e-15,
    -2.1748686985580619e-16,
    5.5090028283602295e-18,
    -1.3954464685812523e-19,
    3.5347070396294675e-21,
    -8.9535174270375469e-23,
    2.2679524523376831e-24,
    -5.7447906688722024e-26,
    1.4551724756148649e-27,
    -3.6859949406653102e-29,
    9.3367342570950447e-31,
    -2.3650224157006299e-32,
    5.9906717624821343e-34,
    -1.5174548844682903e-35,
    3.8437581254541882e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
    -6.2470767418207437e-42,
    1.5824030244644914e-43,
    -4.008273685948936e-45,
    1.0153075855569556e-46,
    -2.5718041582418717e-48,
    6.5144560352338149e-50,
    -1.6501309906896525e-51,
    4.1798306285394759e-53,
    -1.0587634667702909e-54,
    2.6818791912607707e-56,
    -6.7932793511074212e-58,
    1.7207577616681405e-59,
    -4.3587303293488938e-61,
    1.1040792903684667e-62,
    -2.7966655133781345e-64,
    7.0840365016794702e-66,
    -1.7944074082892241e-67,
    4.5452870636110961e-69,
    -1.1513346631982052e-70,
    2.9163647710923614e-72,
    -7.3872382634973376e-74,
    1.8712093117637953e-75,
    -4.7398285577617994e-77,
    1.2006125993354507e-78,
    -3.0411872415142924e-80,
];

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// A point `sigma + i t` of the open critical strip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripPoint {
    pub sigma: f64,
    pub t: f64,
}

impl StripPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !t.is_finite() || !sigma.is_finite() {
            return Err(Error::OutOfStrip { sigma, t, reason: "non-finite coordinate" });
        }
        if !(sigma > 0.0 && sigma < 1.0) {
            return Err(Error::OutOfStrip { sigma, t, reason: "requires 0 < sigma < 1" });
        }
        Ok(Self { sigma, t })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// Principal branch of `ln Gamma(s)`.
///
/// Lanczos for `Re s >= 1/2`; otherwise the recurrence
/// `ln Gamma(s) = ln Gamma(s + n) - sum ln(s + k)`, which stays on the
/// principal branch because each logarithm does.
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        return Err(Error::PoleAtNonPositiveInteger(s.re));
    }
    if s.re >= 0.5 {
        return Ok(lanczos(s));
    }
    let n = (0.5 - s.re).ceil() as usize;
    let mut shift = ComplexNeumaier::new();
    for k in 0..n {
        shift.add((s + k as f64).ln());
    }
    Ok(lanczos(s + n as f64) - shift.value())
}

/// `X(s, chi) = eps(chi) (q/pi)^{1/2-s} Gamma((1-s+a)/2) / Gamma((s+a)/2)`, so that
/// `L(s, chi) = X(s, chi) L(1-s, conj chi)`.
///
/// `|X(sigma+it)|^2 ~ A (q/pi)^{1-2 sigma} t^{1-2 sigma}` with `A = 2^{2 sigma - 1}`
/// by Stirling: the gamma ratio has modulus `~ (t/2)^{1/2 - sigma}`.
pub fn x_factor(s: StripPoint, chi: &DirichletCharacter) -> Result<Complex64> {
    x_factor_at(s.to_complex(), chi)
}

pub(crate) fn x_factor_at(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    let a = chi.parity() as f64;
    let q = chi.modulus() as f64;
    let num = log_gamma((1.0 - s + a) / 2.0)?;
    let den = log_gamma((s + a) / 2.0)?;
    let power = (0.5 - s) * (q / PI).ln();
    Ok(chi.root_number() * (num - den + power).exp())
}

/// Stirling constant `A` of the mean-square asymptotic for `|X|^2`.
pub fn x_mean_square_constant(sigma: f64) -> f64 {
    2f64.powf(2.0 * sigma - 1.0)
}

/// Riemann-Siegel theta. Asymptotic series for `t >= 10`, exact log-gamma below.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    if !(t >= 1.0) {
        return Err(Error::DomainTooSmall { what: "riemann_siegel_theta", min: 1.0, t });
    }
    if t < 10.0 {
        let lg = log_gamma(Complex64::new(0.25, 0.5 * t))?;
        return Ok(lg.im - 0.5 * t * PI.ln());
    }
    let r = 1.0 / t;
    let r2 = r * r;
    let corr = r
        * (1.0 / 48.0
            + r2 * (7.0 / 5760.0
                + r2 * (31.0 / 80640.0 + r2 * (381.0 / 1_290_240.0 + r2 * 5461.0 / 68_812_800.0))));
    Ok(0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + corr)
}

/// A value together with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub bound: f64,
}

/// Number of explicit terms for the Euler-Maclaurin head at `s`.
fn em_terms(s: Complex64) -> usize {
    16 + (0.3 * s.norm()).ceil() as usize
}

/// Euler-Maclaurin evaluation of `sum_{k>=0} (k+a)^{-s}` for any `a > 0`.
///
/// The bound is the Backlund remainder estimate
/// `|s + 2m + 1| / (sigma + 2m + 1)` times the first omitted term, plus a
/// statistical estimate of rounding in the head.
pub fn hurwitz_zeta_bound(s: Complex64, a: f64) -> Result<Estimate> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAtOne);
    }
    hurwitz_core(s, a, false)
}

/// The entire function `zeta(s, a) - 1/(s - 1)`, finite at `s = 1`.
///
/// Combinations `sum_a c_a zeta(s, a)` with `sum_a c_a = 0` lose their poles, and
/// this form evaluates them without cancellation near `s = 1`.
pub fn hurwitz_zeta_regular_bound(s: Complex64, a: f64) -> Result<Estimate> {
    hurwitz_core(s, a, true)
}

fn hurwitz_core(s: Complex64, a: f64, regular: bool) -> Result<Estimate> {
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!("Hurwitz parameter a = {a} must be positive")));
    }
    let n = em_terms(s);
    let mut head = ComplexNeumaier::new();
    let mut abs_sum = 0.0;
    let mut sq_sum = 0.0;
    for k in 0..n {
        let term = (-s * (k as f64 + a).ln()).exp();
        head.add(term);
        let m = term.norm();
        abs_sum += m;
        sq_sum += m * m;
    }
    let x = n as f64 + a;
    let lnx = x.ln();
    let x_pow = (-s * lnx).exp(); // x^{-s}
    let mut acc = head;
    if regular {
        // (x^{1-s} - 1) / (s - 1) = -ln x * expm1(w) / w with w = (1 - s) ln x
        let w = (1.0 - s) * lnx;
        let ratio = if w.norm() < 1e-3 {
            1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w / 120.0)))
        } else {
            (w.exp() - 1.0) / w
        };
        acc.add(-lnx * ratio);
    } else {
        acc.add(x * x_pow / (s - 1.0));
    }
    acc.add(0.5 * x_pow);

    // T_j = b_j s(s+1)...(s+2j-2) x^{-s-2j+1}; the rising factorial and the power
    // of x are carried as one product so neither overflows at large |s|
    let inv_x2 = 1.0 / (x * x);
    let mut scaled = s * x_pow / x;
    let mut term = BERNOULLI_RATIO[0] * scaled;
    let mut remainder = f64::INFINITY;
    for j in 1..=BERNOULLI_RATIO.len() {
        acc.add(term);
        if j == BERNOULLI_RATIO.len() {
            remainder = term.norm();
            break;
        }
        let m = 2.0 * j as f64;
        scaled *= (s + m - 1.0) * (s + m) * inv_x2;
        let next = BERNOULLI_RATIO[j] * scaled;
        let denom = s.re + m + 1.0;
        let backlund = if denom > 0.0 { (s + m + 1.0).norm() / denom * next.norm() } else { f64::INFINITY };
        let done = backlund <= f64::EPSILON * 1e-2 * acc.value().norm() || backlund <= 1e-20;
        if done || next.norm() > term.norm() {
            remainder = backlund;
            break;
        }
        term = next;
    }
    let eps = f64::EPSILON;
    let rounding = 4.0 * eps * abs_sum + 4.0 * eps * (1.0 + s.im.abs() * lnx) * sq_sum.sqrt();
    Ok(Estimate { value: acc.value(), bound: remainder + rounding })
}

/// `zeta(s, a)` for `a` in `(0, 1]`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidArgument(format!("Hurwitz parameter a = {a} outside (0, 1]")));
    }
    Ok(hurwitz_zeta_bound(s, a)?.value)
}

pub fn zeta_em_bound(s: Complex64) -> Result<Estimate> {
    hurwitz_zeta_bound(s, 1.0)
}

pub fn zeta_em(s: Complex64) -> Result<Complex64> {
    Ok(zeta_em_bound(s)?.value)
}

/// Hardy's `Z(t) = exp(i theta(t)) zeta(1/2 + it)` together with its imaginary residue.
pub fn hardy_z_parts(t: f64) -> Result<(f64, f64)> {
    if !(t >= 10.0) {
        return Err(Error::DomainTooSmall { what: "hardy_z", min: 10.0, t });
    }
    let theta = riemann_siegel_theta(t)?;
    let zeta = zeta_em(Complex64::new(0.5, t))?;
    let z = Complex64::from_polar(1.0, theta) * zeta;
    Ok((z.re, z.im))
}

pub fn hardy_z(t: f64) -> Result<f64> {
    let (re, im) = hardy_z_parts(t)?;
    if im.abs() > 1e-6 {
        return Err(Error::AccuracyLoss(format!("Hardy Z at t = {t} has imaginary residue {im:e}")));
    }
    Ok(re)
}
