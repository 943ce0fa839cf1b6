//! Value-distinctness on the critical line: `A(gamma) = p^rho (L(rho,chi1) - L(rho,chi2))`
//! at `rho = 1/2 + i gamma`.
//!
//! Per character, `sum_{gamma <= T} p^rho L(rho, chi) ~ conj(C_chi) (T/2pi) log(T/2pi)`
//! with `C_chi = G(1, conj chi) G(-p, chi) / q`, which the Gauss-sum identities
//! reduce to `conj chi(p)`. Choosing `p = 1 (mod q)` with `chi2(p) != 1` makes the
//! two constants differ.

use crate::arith::is_prime;
use crate::characters::{gauss_sum, DirichletCharacter};
use crate::error::{Error, Result};
use crate::lfunc::Evaluator;
use crate::meanvalues::prefix_reports;
use crate::specfun::StripPoint;
use crate::sum::{chunked_sum, ordered_map, Execution};
use crate::zeros::ZeroTable;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt::Write as _;

const SEARCH_LIMIT: u64 = 1_000_000;

/// Window ratio of the approximate functional equation on this path.
const DELTA: f64 = 1.0;

fn check_pair(chi1: &DirichletCharacter, chi2: &DirichletCharacter) -> Result<()> {
    if chi1.modulus() == chi2.modulus() {
        return Err(Error::Precondition(format!("moduli must differ, both are {}", chi1.modulus())));
    }
    if chi1.is_principal() || chi2.is_principal() {
        return Err(Error::Precondition("both characters must be non-principal".into()));
    }
    Ok(())
}

/// Smallest prime `p = 1 (mod q)` with `chi2(p) != 1` and `p` not in `{q, l}`.
pub fn choose_p(chi1: &DirichletCharacter, chi2: &DirichletCharacter) -> Result<u64> {
    check_pair(chi1, chi2)?;
    let q = chi1.modulus();
    let mut p = q + 1;
    while p <= SEARCH_LIMIT {
        if is_prime(p) && p != chi2.modulus() && chi2.exponent(p as i64).is_some_and(|e| e != 0) {
            return Ok(p);
        }
        p += q;
    }
    Err(Error::SearchExhausted(SEARCH_LIMIT))
}

/// `C_chi = G(1, conj chi) G(-p, chi) / q`.
pub fn c_constant(chi: &DirichletCharacter, p: u64) -> Result<Complex64> {
    if p % chi.modulus() == 0 {
        return Err(Error::Precondition(format!("p = {p} is not coprime to {}", chi.modulus())));
    }
    Ok(gauss_sum(1, &chi.conj()) * gauss_sum(-(p as i64), chi) / chi.modulus() as f64)
}

#[derive(Debug, Clone)]
pub struct CriticalLineConfig {
    pub chi1: DirichletCharacter,
    pub chi2: DirichletCharacter,
    pub p: u64,
    pub c1: Complex64,
    pub c2: Complex64,
}

impl CriticalLineConfig {
    /// With `p = None` the auxiliary prime comes from [`choose_p`]; an explicit `p`
    /// must satisfy the same conditions.
    pub fn new(chi1: DirichletCharacter, chi2: DirichletCharacter, p: Option<u64>) -> Result<Self> {
        check_pair(&chi1, &chi2)?;
        let p = match p {
            None => choose_p(&chi1, &chi2)?,
            Some(p) => {
                if !is_prime(p) || p == chi1.modulus() || p == chi2.modulus() {
                    return Err(Error::Precondition(format!("p = {p} must be a prime other than both moduli")));
                }
                if p % chi1.modulus() != 1 {
                    return Err(Error::Precondition(format!("p = {p} is not 1 mod {}", chi1.modulus())));
                }
                if chi2.exponent(p as i64) == Some(0) {
                    return Err(Error::Precondition(format!("chi2({p}) = 1, so the two constants coincide")));
                }
                p
            }
        };
        let c1 = c_constant(&chi1, p)?;
        let c2 = c_constant(&chi2, p)?;
        Ok(Self { chi1, chi2, p, c1, c2 })
    }

    /// `conj(C_chi) (T/2pi) log(T/2pi)` for each character.
    pub fn main_terms(&self, t: f64) -> (Complex64, Complex64) {
        let u = t / (2.0 * PI);
        let scale = u * u.ln();
        (self.c1.conj() * scale, self.c2.conj() * scale)
    }
}

/// `(p^rho L(rho, chi1), p^rho L(rho, chi2))` at `rho = 1/2 + i gamma`.
fn weighted_values(gamma: f64, cfg: &CriticalLineConfig, eval: &Evaluator, index: usize) -> Result<(Complex64, Complex64)> {
    if !(gamma > 10.0) {
        return Err(Error::InvalidArgument(format!("ordinate {gamma} must exceed 10")));
    }
    let rho = StripPoint::new(0.5, gamma)?;
    let p = cfg.p as f64;
    let weight = Complex64::from_polar(p.sqrt(), gamma * p.ln());
    let l1 = eval.eval(rho, &cfg.chi1, DELTA, index)?;
    let l2 = eval.eval(rho, &cfg.chi2, DELTA, index)?;
    Ok((weight * l1, weight * l2))
}

/// `A(gamma) = p^rho (L(rho, chi1) - L(rho, chi2))`.
pub fn a2_gamma(gamma: f64, cfg: &CriticalLineConfig, eval: &Evaluator) -> Result<Complex64> {
    let (a, b) = weighted_values(gamma, cfg, eval, 0)?;
    Ok(a - b)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalLineReport {
    pub t: f64,
    pub n: usize,
    pub sum_a: Complex64,
    pub sum_chi1: Complex64,
    pub sum_chi2: Complex64,
    pub main_chi1: Complex64,
    pub main_chi2: Complex64,
    pub sum_abs_a2: f64,
    pub lower_bound_count: f64,
}

impl CriticalLineReport {
    /// `M(T) = (conj C1 - conj C2) (T/2pi) log(T/2pi)`.
    pub fn main_term(&self) -> Complex64 {
        self.main_chi1 - self.main_chi2
    }

    pub fn relative_error(&self) -> f64 {
        (self.sum_a - self.main_term()).norm() / self.main_term().norm()
    }

    pub fn relative_error_chi1(&self) -> f64 {
        (self.sum_chi1 - self.main_chi1).norm() / self.main_chi1.norm()
    }

    pub fn relative_error_chi2(&self) -> f64 {
        (self.sum_chi2 - self.main_chi2).norm() / self.main_chi2.norm()
    }

    /// `sum |A|^2 / (T log^2 T)`.
    pub fn second_moment_ratio(&self) -> f64 {
        self.sum_abs_a2 / (self.t * self.t.ln().powi(2))
    }
}

pub fn thm2_reports(
    zeros: &ZeroTable,
    heights: &[f64],
    cfg: &CriticalLineConfig,
    eval: &Evaluator,
    exec: Execution,
) -> Result<Vec<CriticalLineReport>> {
    let t_max = heights.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let gammas = zeros.up_to(t_max)?;
    let indexed: Vec<(usize, f64)> = gammas.iter().copied().enumerate().collect();
    let pairs: Vec<(Complex64, Complex64)> = ordered_map(&indexed, exec, |&(i, g)| weighted_values(g, cfg, eval, i))
        .into_iter()
        .collect::<Result<_>>()?;
    let first: Vec<Complex64> = pairs.iter().map(|p| p.0).collect();
    let second: Vec<Complex64> = pairs.iter().map(|p| p.1).collect();
    let a: Vec<Complex64> = pairs.iter().map(|p| p.0 - p.1).collect();
    prefix_reports(gammas, &a, heights, exec)?
        .into_iter()
        .map(|(t, n, sum_a, sum_abs_a2, lower)| {
            let (main_chi1, main_chi2) = cfg.main_terms(t);
            Ok(CriticalLineReport {
                t,
                n,
                sum_a,
                sum_chi1: chunked_sum(&first[..n], exec),
                sum_chi2: chunked_sum(&second[..n], exec),
                main_chi1,
                main_chi2,
                sum_abs_a2,
                lower_bound_count: lower,
            })
        })
        .collect()
}

pub fn thm2_report(zeros: &ZeroTable, t: f64, cfg: &CriticalLineConfig, eval: &Evaluator, exec: Execution) -> Result<CriticalLineReport> {
    Ok(thm2_reports(zeros, &[t], cfg, eval, exec)?.remove(0))
}

pub const THM2_CSV_HEADER: &str = "T,N,re_sumA,im_sumA,re_sum_chi1,im_sum_chi1,re_sum_chi2,im_sum_chi2,re_M,im_M,sumAbsA2,sumAbsA2_over_Tlog2T,lowerBound,lowerBound_over_T";

pub fn thm2_csv(reports: &[CriticalLineReport]) -> String {
    let mut out = String::from(THM2_CSV_HEADER);
    out.push('\n');
    for r in reports {
        let m = r.main_term();
        let _ = writeln!(
            out,
            "{:e},{},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            r.t,
            r.n,
            r.sum_a.re,
            r.sum_a.im,
            r.sum_chi1.re,
            r.sum_chi1.im,
            r.sum_chi2.re,
            r.sum_chi2.im,
            m.re,
            m.im,
            r.sum_abs_a2,
            r.second_moment_ratio(),
            r.lower_bound_count,
            r.lower_bound_count / r.t
        );
    }
    out
}
