//! Dirichlet L-functions in the critical strip.
//!
//! [`l_afe`] is the fast two-window approximate functional equation with an
//! explicit remainder bound; [`l_oracle`] is the slow reference built from
//! Hurwitz zeta values, accurate to `1e-9`.

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::specfun::{hurwitz_zeta_bound, hurwitz_zeta_regular_bound, x_factor_at, StripPoint};
use crate::sum::ComplexNeumaier;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Constant in front of the AFE remainder `sqrt(q) (y^-sigma + x^(sigma-1) (qt)^(1/2-sigma)) log 2t`.
pub const C_IMPL: f64 = 10.0;

/// Largest `|Im s|` accepted by the oracle.
pub const ORACLE_MAX_HEIGHT: f64 = 1e4;

/// Absolute accuracy promised by the oracle.
pub const ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Afe,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LValue {
    pub value: Complex64,
    /// Absolute error bound.
    pub bound: f64,
    pub method: Method,
}

impl LValue {
    /// Do two evaluations of the same quantity agree within their combined bounds?
    pub fn consistent_with(&self, other: &LValue) -> bool {
        (self.value - other.value).norm() <= self.bound + other.bound
    }
}

/// Window lengths `(x, y)` of the approximate functional equation.
pub fn afe_lengths(q: u64, t: f64, delta: f64) -> (f64, f64) {
    let base = (q as f64 * t.abs() / (2.0 * PI)).sqrt();
    (delta * base, base / delta)
}

/// `sum_{n <= len} chi(n) n^{-s}`, boundary term included.
fn partial_sum(table: &[Complex64], s: Complex64, len: f64) -> Complex64 {
    let q = table.len();
    let mut acc = ComplexNeumaier::new();
    let mut n = 1usize;
    while n as f64 <= len {
        let c = table[n % q];
        if c.re != 0.0 || c.im != 0.0 {
            acc.add(c * (-s * (n as f64).ln()).exp());
        }
        n += 1;
    }
    acc.value()
}

/// `L(s, chi)` by the approximate functional equation with windows
/// `x = delta sqrt(qt/2pi)`, `y = sqrt(qt/2pi) / delta`.
pub fn l_afe(s: StripPoint, chi: &DirichletCharacter, delta: f64) -> Result<LValue> {
    if s.t.abs() < 10.0 {
        return Err(Error::OutOfStrip { sigma: s.sigma, t: s.t, reason: "the approximate functional equation needs |t| >= 10" });
    }
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    if !(delta >= 1.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!("window ratio delta = {delta} must be a finite real >= 1")));
    }
    let q = chi.modulus();
    let t = s.t.abs();
    let z = s.to_complex();
    let (x, y) = afe_lengths(q, t, delta);
    let head = partial_sum(&chi.table(), z, x);
    let dual = partial_sum(&chi.conj().table(), 1.0 - z, y);
    let value = head + x_factor_at(z, chi)? * dual;
    let sigma = s.sigma;
    let bound = C_IMPL
        * (q as f64).sqrt()
        * (y.powf(-sigma) + x.powf(sigma - 1.0) * (q as f64 * t).powf(0.5 - sigma))
        * (2.0 * t).ln();
    Ok(LValue { value, bound, method: Method::Afe })
}

/// `L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q)`.
///
/// For non-principal characters the poles of the Hurwitz terms cancel and the
/// regularised Hurwitz function is used, so `s = 1` is allowed.
pub fn l_oracle(s: Complex64, chi: &DirichletCharacter) -> Result<LValue> {
    if s.im.abs() > ORACLE_MAX_HEIGHT {
        return Err(Error::HeightExceeded(s.im.abs()));
    }
    let q = chi.modulus();
    let scale = (-s * (q as f64).ln()).exp();
    let mut acc = ComplexNeumaier::new();
    let mut bound = 0.0;
    for a in 1..q {
        let c = chi.eval(a as i64);
        let h = if chi.is_principal() {
            hurwitz_zeta_bound(s, a as f64 / q as f64)?
        } else {
            hurwitz_zeta_regular_bound(s, a as f64 / q as f64)?
        };
        acc.add(c * h.value);
        bound += h.bound;
    }
    let value = scale * acc.value();
    let bound = bound * scale.norm() + 4.0 * f64::EPSILON * value.norm();
    if bound > ORACLE_TOLERANCE {
        return Err(Error::AccuracyLoss(format!("oracle bound {bound:e} at s = {s} exceeds {ORACLE_TOLERANCE:e}")));
    }
    Ok(LValue { value, bound, method: Method::Oracle })
}

/// `sum_{n > offset} f(n) n^{-s}` for `f` periodic with period `M = f.len()`,
/// where `f[r]` holds `f(n)` for `n = r (mod M)` and `offset` is a multiple of `M`.
///
/// Uses `M^{-s} sum_a f(a) zeta(s, offset/M + a/M)`; when `f` sums to zero over a
/// period the regularised Hurwitz form is used so the pole cancels exactly.
pub fn periodic_series(s: Complex64, f: &[Complex64], offset: u64) -> Result<(Complex64, f64)> {
    let m = f.len() as u64;
    if m == 0 || offset % m != 0 {
        return Err(Error::InvalidArgument(format!("offset {offset} is not a multiple of the period {m}")));
    }
    let mean_zero = f.iter().sum::<Complex64>().norm() <= 1e-12 * f.iter().map(|c| c.norm()).sum::<f64>();
    let scale = (-s * (m as f64).ln()).exp();
    let mut acc = ComplexNeumaier::new();
    let mut bound = 0.0;
    for a in 1..=m {
        let c = f[(a % m) as usize];
        if c.norm() == 0.0 {
            continue;
        }
        let shift = (offset / m) as f64 + a as f64 / m as f64;
        let h = if mean_zero { hurwitz_zeta_regular_bound(s, shift)? } else { hurwitz_zeta_bound(s, shift)? };
        acc.add(c * h.value);
        bound += c.norm() * h.bound;
    }
    let value = scale * acc.value();
    Ok((value, bound * scale.norm() + 8.0 * f64::EPSILON * value.norm()))
}

/// How sample-point L-values are produced for the mean-value sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evaluator {
    /// Approximate functional equation; every `audit_every`-th sample (by index)
    /// is re-evaluated with the oracle, and a discrepancy beyond the combined
    /// bounds aborts with [`Error::BoundViolation`]. `audit_every = 0` disables it.
    Afe { audit_every: usize },
    Oracle,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::Afe { audit_every: 100 }
    }
}

impl Evaluator {
    /// AFE with an audit fraction in `[0, 1]` (0.01 audits every 100th sample).
    pub fn afe_with_audit_rate(rate: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&rate) {
            return Err(Error::InvalidArgument(format!("audit rate {rate} outside [0, 1]")));
        }
        let audit_every = if rate == 0.0 { 0 } else { (1.0 / rate).round().max(1.0) as usize };
        Ok(Evaluator::Afe { audit_every })
    }

    /// `L(s, chi)` for the sample with position `index` in its sweep.
    pub fn eval(&self, s: StripPoint, chi: &DirichletCharacter, delta: f64, index: usize) -> Result<Complex64> {
        match *self {
            Evaluator::Oracle => Ok(l_oracle(s.to_complex(), chi)?.value),
            Evaluator::Afe { audit_every } => {
                let afe = l_afe(s, chi, delta)?;
                if audit_every > 0 && index % audit_every == 0 {
                    let oracle = l_oracle(s.to_complex(), chi)?;
                    let diff = (afe.value - oracle.value).norm();
                    if diff > afe.bound + oracle.bound {
                        return Err(Error::BoundViolation {
                            context: format!("L({}+{}i, {chi}) with delta {delta}", s.sigma, s.t),
                            diff,
                            bound: afe.bound + oracle.bound,
                        });
                    }
                }
                Ok(afe.value)
            }
        }
    }
}

/// One point of the AFE certification grid.
#[derive(Debug, Clone)]
pub struct AfeCase {
    pub chi: DirichletCharacter,
    pub point: StripPoint,
    pub delta: f64,
}

/// Outcome of checking the AFE against the oracle at one grid point.
#[derive(Debug, Clone, Copy)]
pub struct AfeCheck {
    pub diff: f64,
    pub bound: f64,
}

impl AfeCheck {
    pub fn passed(&self) -> bool {
        self.diff <= self.bound
    }
}

/// The certification grid: `sigma` in `{0.55, 0.6, 0.75, 0.9}`, `t` in
/// `{100, 1000, 5000}`, every non-principal character mod 3, 5 and 7, and
/// `delta` in `{1, sqrt q, round(sqrt l)}` where `l` is the partner modulus
/// (5 for q = 3, 3 otherwise).
pub fn afe_grid() -> Result<Vec<AfeCase>> {
    let mut out = Vec::new();
    for (q, partner) in [(3u64, 5u64), (5, 3), (7, 3)] {
        for chi in crate::characters::all_characters(q)?.into_iter().skip(1) {
            for sigma in [0.55, 0.6, 0.75, 0.9] {
                for t in [100.0, 1000.0, 5000.0] {
                    for delta in [1.0, (q as f64).sqrt(), (partner as f64).sqrt().round()] {
                        out.push(AfeCase { chi: chi.clone(), point: StripPoint::new(sigma, t)?, delta });
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn check_afe(case: &AfeCase) -> Result<AfeCheck> {
    let afe = l_afe(case.point, &case.chi, case.delta)?;
    let oracle = l_oracle(case.point.to_complex(), &case.chi)?;
    Ok(AfeCheck { diff: (afe.value - oracle.value).norm(), bound: afe.bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{all_characters, character};
    use crate::specfun::x_factor;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn oracle_at_one_for_the_quadratic_character_mod_three() {
        let chi = character(3, 1).unwrap();
        let v = l_oracle(c(1.0, 0.0), &chi).unwrap();
        let expected = PI / (3.0 * 3f64.sqrt());
        assert!((v.value - expected).norm() < 1e-12, "{}", v.value);
        assert!(v.bound <= ORACLE_TOLERANCE);
    }

    #[test]
    fn oracle_at_two_matches_direct_summation() {
        let chi = character(3, 1).unwrap();
        let v = l_oracle(c(2.0, 0.0), &chi).unwrap().value;
        // alternating blocks: the tail after n is below 1/n^2
        let direct: f64 = (1..2_000_000i64).map(|n| chi.eval(n).re / (n as f64 * n as f64)).sum();
        assert!((v.re - direct).abs() < 1e-9);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn functional_equation_holds_for_the_oracle() {
        let s = StripPoint::new(0.6, 50.0).unwrap();
        for chi in all_characters(5).unwrap().into_iter().skip(1) {
            let lhs = l_oracle(s.to_complex(), &chi).unwrap().value;
            let rhs = x_factor(s, &chi).unwrap() * l_oracle(1.0 - s.to_complex(), &chi.conj()).unwrap().value;
            assert!((lhs - rhs).norm() < 1e-8, "{chi}");
        }
    }

    #[test]
    fn oracle_rejects_large_heights() {
        let chi = character(5, 1).unwrap();
        assert_eq!(l_oracle(c(0.5, 2e4), &chi), Err(Error::HeightExceeded(2e4)));
    }

    #[test]
    fn afe_examples() {
        let chi = character(3, 1).unwrap();
        let s = StripPoint::new(0.75, 100.0).unwrap();
        let one = l_afe(s, &chi, 1.0).unwrap();
        let two = l_afe(s, &chi, 2.0).unwrap();
        let oracle = l_oracle(s.to_complex(), &chi).unwrap();
        assert!((one.value - oracle.value).norm() <= one.bound);
        assert!(one.consistent_with(&two));
        assert_eq!(one.method, Method::Afe);

        let quad5 = character(5, 2).unwrap();
        let s = StripPoint::new(0.5, 14.134_725_141_734_694).unwrap();
        let afe = l_afe(s, &quad5, 1.0).unwrap();
        let oracle = l_oracle(s.to_complex(), &quad5).unwrap();
        assert!(afe.value.norm() > 0.0);
        assert!((afe.value - oracle.value).norm() <= afe.bound);
    }

    #[test]
    fn afe_preconditions() {
        let chi = character(3, 1).unwrap();
        let low = StripPoint::new(0.75, 5.0).unwrap();
        assert!(matches!(l_afe(low, &chi, 1.0), Err(Error::OutOfStrip { .. })));
        let s = StripPoint::new(0.75, 50.0).unwrap();
        assert_eq!(l_afe(s, &character(3, 0).unwrap(), 1.0), Err(Error::PrincipalCharacter));
        assert!(matches!(l_afe(s, &chi, 0.5), Err(Error::InvalidArgument(_))));
        assert!(StripPoint::new(1.0, 50.0).is_err());
    }

    #[test]
    fn conjugation_symmetry() {
        for chi in all_characters(7).unwrap().into_iter().skip(1) {
            for &(sigma, t) in &[(0.6, 30.0), (0.9, 700.0)] {
                let s = StripPoint::new(sigma, t).unwrap();
                let sbar = StripPoint::new(sigma, -t).unwrap();
                let a = l_oracle(s.to_complex(), &chi).unwrap().value;
                let b = l_oracle(sbar.to_complex(), &chi.conj()).unwrap().value;
                assert!((a - b.conj()).norm() < 1e-10);
                let a = l_afe(s, &chi, 1.0).unwrap().value;
                let b = l_afe(sbar, &chi.conj(), 1.0).unwrap().value;
                assert!((a - b.conj()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn periodic_series_reproduces_an_l_function() {
        let chi = character(5, 1).unwrap();
        let s = c(1.5, 3.0);
        let (v, bound) = periodic_series(s, &chi.table(), 0).unwrap();
        let oracle = l_oracle(s, &chi).unwrap().value;
        assert!((v - oracle).norm() < 1e-12 && bound < 1e-12);
        // tail past 100 = full series minus the first 100 terms
        let (tail, _) = periodic_series(s, &chi.table(), 100).unwrap();
        let head: Complex64 = (1..=100).map(|n| chi.eval(n) * (-s * (n as f64).ln()).exp()).sum();
        assert!((head + tail - oracle).norm() < 1e-12);
    }
}
