//! Mean values of `B(s,P) L(s,chi1) conj L(s,chi2)` over zeta zeros off the
//! critical line.
//!
//! `B(s,P) = prod_{p <= P} (1 - chi1(p) p^-s)(1 - chi2(p) p^-s)` is kept as an
//! exact map `n -> c_n` with values in `Z[zeta_M]`, `M = lcm(q-1, l-1)`. Writing
//! `B L(s,chi1) = sum d_n n^-s` and `B L(s,chi2) = sum e_n n^-s`, the statistic
//! `A(gamma) = B (L1 conj L2 - conj L1 L2)` at `s = sigma + i gamma` has mean
//! `C = D - E` per zero, with
//!
//! `D = sum d_n conj chi2(n) n^{-2 sigma}` and `E = sum e_n conj chi1(n) n^{-2 sigma}`.
//!
//! Both constants are evaluated twice: as a Dirichlet series (explicit head plus a
//! Hurwitz-zeta tail, since `d_n conj chi2(n)` is periodic with period `(P#)^2`) and
//! as an Euler product, where the primes above `P` assemble into `L(2 sigma, psi)`
//! for `psi = chi1 conj chi2`.

use crate::arith::{gcd, is_prime, primes_up_to};
use crate::characters::DirichletCharacter;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::lfunc::{periodic_series, Evaluator};
use crate::specfun::StripPoint;
use crate::sum::{chunked_sum, chunked_sum_real, ordered_map, Execution, Neumaier};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Exact coefficients of `B(s, P)`.
#[derive(Debug, Clone)]
pub struct BPolynomial {
    cutoff: u64,
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    order: u64,
    primes: Vec<u64>,
    coeffs: BTreeMap<u64, Cyclotomic>,
    complex: Vec<(u64, Complex64)>,
}

/// `max(q, l)`, the smallest admissible cutoff.
pub fn default_cutoff(chi1: &DirichletCharacter, chi2: &DirichletCharacter) -> u64 {
    chi1.modulus().max(chi2.modulus())
}

pub fn build_b_polynomial(cutoff: u64, chi1: &DirichletCharacter, chi2: &DirichletCharacter) -> Result<BPolynomial> {
    let required = default_cutoff(chi1, chi2);
    if cutoff < required {
        return Err(Error::CutoffTooSmall { cutoff, required });
    }
    if !is_prime(cutoff) {
        return Err(Error::InvalidArgument(format!("cutoff P = {cutoff} is not prime")));
    }
    if chi1.modulus() == chi2.modulus() {
        return Err(Error::Precondition("the two characters need distinct prime moduli".into()));
    }
    let (m1, m2) = (chi1.value_order(), chi2.value_order());
    let order = m1 / gcd(m1, m2) * m2;
    let primes = primes_up_to(cutoff);
    let mut coeffs = BTreeMap::from([(1u64, Cyclotomic::one(order))]);
    for &p in &primes {
        let a1 = chi1.eval_exact(p as i64, order);
        let a2 = chi2.eval_exact(p as i64, order);
        let mut linear = a1.clone();
        linear.add_assign(&a2);
        let linear = linear.scale(-1);
        let quadratic = a1.mul(&a2);
        let mut next: BTreeMap<u64, Cyclotomic> = BTreeMap::new();
        for (&n, c) in &coeffs {
            for (k, factor) in [(n, None), (n * p, Some(&linear)), (n * p * p, Some(&quadratic))] {
                let term = match factor {
                    None => c.clone(),
                    Some(f) => c.mul(f),
                };
                next.entry(k).or_insert_with(|| Cyclotomic::zero(order)).add_assign(&term);
            }
        }
        next.retain(|_, c| !c.is_zero());
        coeffs = next;
    }
    let complex = coeffs.iter().map(|(&n, c)| (n, c.to_complex())).collect();
    Ok(BPolynomial { cutoff, chi1: chi1.clone(), chi2: chi2.clone(), order, primes, coeffs, complex })
}

impl BPolynomial {
    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn chi1(&self) -> &DirichletCharacter {
        &self.chi1
    }

    pub fn chi2(&self) -> &DirichletCharacter {
        &self.chi2
    }

    /// Order `M` of the roots of unity the coefficients live in.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The primes `p <= P`.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `R = (prod_{p <= P} p)^2`.
    pub fn support_bound(&self) -> u64 {
        let primorial: u64 = self.primes.iter().product();
        primorial * primorial
    }

    pub fn coeff_exact(&self, n: u64) -> Cyclotomic {
        self.coeffs.get(&n).cloned().unwrap_or_else(|| Cyclotomic::zero(self.order))
    }

    pub fn coeff(&self, n: u64) -> Complex64 {
        self.complex.iter().find(|(k, _)| *k == n).map_or(Complex64::new(0.0, 0.0), |(_, c)| *c)
    }

    /// Nonzero coefficients in increasing `n`.
    pub fn terms(&self) -> &[(u64, Complex64)] {
        &self.complex
    }

    pub fn exact_terms(&self) -> impl Iterator<Item = (u64, &Cyclotomic)> {
        self.coeffs.iter().map(|(&n, c)| (n, c))
    }

    /// `B(s, P)` as a Dirichlet polynomial.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.complex.iter().map(|&(n, c)| c * (-s * (n as f64).ln()).exp()).sum()
    }

    /// `B(s, P)` from its Euler product, for cross-checks.
    pub fn eval_product(&self, s: Complex64) -> Complex64 {
        self.primes
            .iter()
            .map(|&p| {
                let ps = (-s * (p as f64).ln()).exp();
                (1.0 - self.chi1.eval(p as i64) * ps) * (1.0 - self.chi2.eval(p as i64) * ps)
            })
            .product()
    }
}

/// Which coefficient sequence a [`CoefficientSeries`] produces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesKind {
    /// `B L(s, chi1) = sum d_n n^-s`.
    D,
    /// `B L(s, chi2) = sum e_n n^-s`.
    E,
    /// `d'_n(t)`: the coefficients of `B(s,P) sum_{m <= sqrt(q l t / 2pi)} chi1(m) m^-s`.
    DPrime(f64),
}

#[derive(Debug, Clone)]
pub struct CoefficientSeries<'a> {
    kind: SeriesKind,
    b: &'a BPolynomial,
}

impl<'a> CoefficientSeries<'a> {
    pub fn new(kind: SeriesKind, b: &'a BPolynomial) -> Self {
        Self { kind, b }
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    /// The character continuing `B` beyond its support.
    fn base_character(&self) -> &DirichletCharacter {
        match self.kind {
            SeriesKind::D | SeriesKind::DPrime(_) => &self.b.chi1,
            SeriesKind::E => &self.b.chi2,
        }
    }

    /// Length of the window `m <= sqrt(q l t / 2pi)` for `d'`.
    pub fn window(&self) -> Option<f64> {
        match self.kind {
            SeriesKind::DPrime(t) => {
                let ql = (self.b.chi1.modulus() * self.b.chi2.modulus()) as f64;
                Some((ql * t / (2.0 * PI)).sqrt())
            }
            _ => None,
        }
    }

    /// Dirichlet convolution `sum_{n = k m} c_k chi(m)` in exact arithmetic.
    pub fn convolution(&self, n: u64) -> Cyclotomic {
        let chi = self.base_character();
        let window = self.window();
        let mut acc = Cyclotomic::zero(self.b.order);
        for (k, c) in self.b.exact_terms() {
            if k > n {
                break;
            }
            if n % k != 0 {
                continue;
            }
            let m = n / k;
            if window.is_some_and(|w| m as f64 > w) {
                continue;
            }
            acc.add_assign(&c.mul(&chi.eval_exact(m as i64, self.b.order)));
        }
        acc
    }

    /// Closed form: 0 if `p^2 | n` for some `p <= P`; otherwise, with `K` the
    /// product of the primes `p <= P` dividing `n`, `(-1)^w(K) chi(n/K) chi'(K)`
    /// where `chi'` is the other character.
    pub fn closed_form(&self, n: u64) -> Option<Cyclotomic> {
        let (chi, other) = match self.kind {
            SeriesKind::D => (&self.b.chi1, &self.b.chi2),
            SeriesKind::E => (&self.b.chi2, &self.b.chi1),
            SeriesKind::DPrime(_) => return None,
        };
        let mut k = 1u64;
        let mut sign = 1i64;
        for &p in &self.b.primes {
            if n % p == 0 {
                if n % (p * p) == 0 {
                    return Some(Cyclotomic::zero(self.b.order));
                }
                k *= p;
                sign = -sign;
            }
        }
        let order = self.b.order;
        Some(chi.eval_exact((n / k) as i64, order).mul(&other.eval_exact(k as i64, order)).scale(sign))
    }

    /// Exact coefficient; for `d` and `e` the convolution is checked against the
    /// closed form.
    pub fn coeff_exact(&self, n: u64) -> Result<Cyclotomic> {
        if n == 0 {
            return Err(Error::InvalidArgument("coefficients are indexed from 1".into()));
        }
        let conv = self.convolution(n);
        if let Some(closed) = self.closed_form(n) {
            if conv != closed {
                let kind = if self.kind == SeriesKind::D { "d" } else { "e" };
                return Err(Error::ClosedFormMismatch { kind, n });
            }
        }
        Ok(conv)
    }

    pub fn coeff(&self, n: u64) -> Result<Complex64> {
        Ok(self.coeff_exact(n)?.to_complex())
    }
}

/// Truncation parameters for `D` and `E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    /// Explicit terms of the Dirichlet series (rounded up to a whole period).
    pub series_terms: u64,
    /// Prime cutoff of the diagnostic truncated Euler product.
    pub product_primes: u64,
}

impl Default for Truncation {
    fn default() -> Self {
        Self { series_terms: 1_000_000, product_primes: 100_000 }
    }
}

/// A constant evaluated by two independent routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualValue {
    pub value: Complex64,
    pub bound: f64,
    pub series: Complex64,
    pub series_bound: f64,
    pub product: Complex64,
    pub product_bound: f64,
    /// `prod_{p <= Q}` with the crude tail bound `Q^{1-2 sigma} / (2 sigma - 1)`;
    /// reported, not used for acceptance.
    pub truncated_product: Complex64,
    pub truncated_product_bound: f64,
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.5 && sigma < 1.0) {
        return Err(Error::InvalidArgument(format!("sigma = {sigma} must lie in (1/2, 1)")));
    }
    Ok(())
}

/// `D(sigma) = sum d_n conj chi2(n) n^{-2 sigma}`.
pub fn series_d(b: &BPolynomial, sigma: f64, trunc: Truncation) -> Result<DualValue> {
    dual_constant(b, SeriesKind::D, sigma, trunc)
}

/// `E(sigma) = sum e_n conj chi1(n) n^{-2 sigma}`.
pub fn series_e(b: &BPolynomial, sigma: f64, trunc: Truncation) -> Result<DualValue> {
    dual_constant(b, SeriesKind::E, sigma, trunc)
}

/// `D - E`, the limiting mean of `A(gamma)`.
pub fn predicted_constant(b: &BPolynomial, sigma: f64, trunc: Truncation) -> Result<Complex64> {
    Ok(series_d(b, sigma, trunc)?.value - series_e(b, sigma, trunc)?.value)
}

fn dual_constant(b: &BPolynomial, kind: SeriesKind, sigma: f64, trunc: Truncation) -> Result<DualValue> {
    check_sigma(sigma)?;
    let name = if kind == SeriesKind::D { "D" } else { "E" };
    let (own, other) = match kind {
        SeriesKind::D => (&b.chi1, &b.chi2),
        _ => (&b.chi2, &b.chi1),
    };
    let s = 2.0 * sigma;

    // series: f(n) = coeff_n * conj other(n) has period R
    let series = CoefficientSeries::new(kind, b);
    let period = b.support_bound();
    let mut f = vec![Complex64::new(0.0, 0.0); period as usize];
    for n in 1..=period {
        let v = series.coeff(n)? * other.eval(n as i64).conj();
        f[(n % period) as usize] = v;
    }
    let n_head = trunc.series_terms.div_ceil(period).max(1) * period;
    let mut head_re = Neumaier::new();
    let mut head_im = Neumaier::new();
    let mut mass = 0.0;
    for n in 1..=n_head {
        let c = f[(n % period) as usize];
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        let w = (n as f64).powf(-s);
        head_re.add(c.re * w);
        head_im.add(c.im * w);
        mass += c.norm() * w * (1.0 + (n as f64).ln());
    }
    let (tail, tail_bound) = periodic_series(Complex64::new(s, 0.0), &f, n_head)?;
    let series_value = Complex64::new(head_re.value(), head_im.value()) + tail;
    let series_bound = tail_bound + 8.0 * f64::EPSILON * mass;

    // product: local factors at p <= P times L(2 sigma, psi) with its own p <= P factors removed
    let psi: Vec<Complex64> = {
        let m = own.modulus() * other.modulus();
        (0..m).map(|n| own.eval(n as i64) * other.eval(n as i64).conj()).collect()
    };
    let local: f64 = b.primes.iter().filter(|&&p| p != other.modulus()).map(|&p| 1.0 - (p as f64).powf(-s)).product();
    let (l_psi, l_bound) = periodic_series(Complex64::new(s, 0.0), &psi, 0)?;
    let removed: Complex64 = b
        .primes
        .iter()
        .map(|&p| 1.0 - psi[(p % psi.len() as u64) as usize] * (p as f64).powf(-s))
        .product();
    let product_value = l_psi * removed * local;
    let product_bound = l_bound * removed.norm() * local + 16.0 * f64::EPSILON * product_value.norm();

    // diagnostic: plain truncated Euler product
    let mut truncated = Complex64::new(local, 0.0);
    for p in primes_up_to(trunc.product_primes) {
        if p > b.cutoff {
            truncated /= 1.0 - psi[(p % psi.len() as u64) as usize] * (p as f64).powf(-s);
        }
    }
    let q = trunc.product_primes as f64;
    let log_tail = q.powf(1.0 - s) / (s - 1.0);
    let truncated_bound = truncated.norm() * (log_tail / (1.0 - q.powf(-s))).exp_m1();

    let diff = (series_value - product_value).norm();
    let combined = series_bound + product_bound;
    if diff > combined {
        return Err(Error::SeriesProductDisagreement { name, sigma, diff, bound: combined });
    }
    let (value, bound) = if series_bound <= product_bound {
        (series_value, series_bound)
    } else {
        (product_value, product_bound)
    };
    Ok(DualValue {
        value,
        bound,
        series: series_value,
        series_bound,
        product: product_value,
        product_bound,
        truncated_product: truncated,
        truncated_product_bound: truncated_bound,
    })
}

/// Window ratios `(sqrt l, sqrt q R)` used for `chi1` and `chi2` on this path.
pub fn afe_deltas(b: &BPolynomial) -> (f64, f64) {
    let q = b.chi1.modulus() as f64;
    let l = b.chi2.modulus() as f64;
    (l.sqrt(), q.sqrt() * b.support_bound() as f64)
}

fn a1_indexed(gamma: f64, sigma: f64, b: &BPolynomial, eval: &Evaluator, index: usize) -> Result<Complex64> {
    if !(gamma > 10.0) {
        return Err(Error::InvalidArgument(format!("ordinate {gamma} must exceed 10")));
    }
    check_sigma(sigma)?;
    let s = StripPoint::new(sigma, gamma)?;
    let (d1, d2) = afe_deltas(b);
    let l1 = eval.eval(s, &b.chi1, d1, index)?;
    let l2 = eval.eval(s, &b.chi2, d2, index)?;
    // z conj(w) - conj(z) w = 2i Im(z conj w)
    let inner = Complex64::new(0.0, 2.0 * (l1 * l2.conj()).im);
    Ok(b.eval(s.to_complex()) * inner)
}

/// `A(gamma) = B(s,P) (L(s,chi1) conj L(s,chi2) - conj L(s,chi1) L(s,chi2))`, `s = sigma + i gamma`.
pub fn a1_gamma(gamma: f64, sigma: f64, b: &BPolynomial, eval: &Evaluator) -> Result<Complex64> {
    a1_indexed(gamma, sigma, b, eval, 0)
}

/// Discrete mean values at one height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanValueReport {
    pub t: f64,
    pub n: usize,
    pub sigma: f64,
    pub sum_a: Complex64,
    pub sum_abs_a2: f64,
    pub predicted_c: Complex64,
    /// Cauchy-Schwarz lower bound `|sum A|^2 / sum |A|^2` for `#{A(gamma) != 0}`.
    pub lower_bound_count: f64,
}

impl MeanValueReport {
    /// `|sum A / N - C| / |C|`.
    pub fn relative_error(&self) -> f64 {
        (self.sum_a / self.n as f64 - self.predicted_c).norm() / self.predicted_c.norm()
    }
}

/// Build reports at several heights from per-zero values `a` (ascending ordinates).
pub(crate) fn prefix_reports(
    gammas: &[f64],
    a: &[Complex64],
    heights: &[f64],
    exec: Execution,
) -> Result<Vec<(f64, usize, Complex64, f64, f64)>> {
    heights
        .iter()
        .map(|&t| {
            let n = gammas.partition_point(|&g| g <= t);
            let sum = chunked_sum(&a[..n], exec);
            let sq: Vec<f64> = a[..n].iter().map(|z| z.norm_sqr()).collect();
            let sum_sq = chunked_sum_real(&sq, exec);
            if sum_sq == 0.0 {
                return Err(Error::DivisionByZero);
            }
            Ok((t, n, sum, sum_sq, sum.norm_sqr() / sum_sq))
        })
        .collect()
}

/// Per-zero `A(gamma)` for every ordinate up to `t_max`, in ascending order.
pub fn a1_values(gammas: &[f64], sigma: f64, b: &BPolynomial, eval: &Evaluator, exec: Execution) -> Result<Vec<Complex64>> {
    let indexed: Vec<(usize, f64)> = gammas.iter().copied().enumerate().collect();
    ordered_map(&indexed, exec, |&(i, g)| a1_indexed(g, sigma, b, eval, i)).into_iter().collect()
}

/// Reports at each height in `heights`, sharing one pass over the zeros.
pub fn thm1_reports(
    zeros: &crate::zeros::ZeroTable,
    heights: &[f64],
    sigma: f64,
    b: &BPolynomial,
    eval: &Evaluator,
    trunc: Truncation,
    exec: Execution,
) -> Result<Vec<MeanValueReport>> {
    check_sigma(sigma)?;
    let t_max = heights.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let gammas = zeros.up_to(t_max)?;
    let c = predicted_constant(b, sigma, trunc)?;
    let a = a1_values(gammas, sigma, b, eval, exec)?;
    Ok(prefix_reports(gammas, &a, heights, exec)?
        .into_iter()
        .map(|(t, n, sum_a, sum_abs_a2, lower)| MeanValueReport {
            t,
            n,
            sigma,
            sum_a,
            sum_abs_a2,
            predicted_c: c,
            lower_bound_count: lower,
        })
        .collect())
}

pub fn thm1_report(
    zeros: &crate::zeros::ZeroTable,
    t: f64,
    sigma: f64,
    b: &BPolynomial,
    eval: &Evaluator,
    exec: Execution,
) -> Result<MeanValueReport> {
    Ok(thm1_reports(zeros, &[t], sigma, b, eval, Truncation::default(), exec)?.remove(0))
}

pub const THM1_CSV_HEADER: &str = "T,N,re_sumA,im_sumA,sumAbsA2,re_C,im_C,lowerBound,lowerBound_over_N";

pub fn thm1_csv(reports: &[MeanValueReport]) -> String {
    let mut out = String::from(THM1_CSV_HEADER);
    out.push('\n');
    for r in reports {
        let ratio = if r.n == 0 { 0.0 } else { r.lower_bound_count / r.n as f64 };
        let _ = writeln!(
            out,
            "{:e},{},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            r.t, r.n, r.sum_a.re, r.sum_a.im, r.sum_abs_a2, r.predicted_c.re, r.predicted_c.im, r.lower_bound_count, ratio
        );
    }
    out
}
