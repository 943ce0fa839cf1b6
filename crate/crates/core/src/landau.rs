//! Sums of `x^rho` over zeta zeros and the Landau explicit formula
//!
//! `sum_{0 < gamma <= T} x^rho = -(T/2pi) Lambda(x) + error`, where the error is
//! controlled by `x log(2xT) loglog(3x) + log x min(T, x/<x>) + log 2T min(T, 1/log x)`
//! and `<x>` is the distance from `x` to the nearest other prime power.
//! Every `O`-constant is taken to be 1.

use crate::arith::{gcd, is_prime_power, prime_power_base};
use crate::error::{Error, Result};
use crate::sum::{chunked_sum, ordered_map, Execution};
use crate::zeros::ZeroTable;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;

/// An exact rational `n/m > 1` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    num: u64,
    den: u64,
}

impl RationalPoint {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        if num <= den {
            return Err(Error::InvalidArgument(format!("{num}/{den} is not greater than 1")));
        }
        let g = gcd(num, den);
        Ok(Self { num: num / g, den: den / g })
    }

    pub fn integer(n: u64) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn ln(&self) -> f64 {
        (self.num as f64).ln() - (self.den as f64).ln()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl std::str::FromStr for RationalPoint {
    type Err = Error;

    /// Accepts `"n"` or `"n/m"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse `{s}` as a rational n/m"));
        let (n, m) = match s.split_once('/') {
            Some((n, m)) => (n.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        Self::new(n, m)
    }
}

/// `Lambda(x)`: `log p` when `x = p^k`, else 0 (including every non-integer).
pub fn von_mangoldt(x: RationalPoint) -> f64 {
    if x.den != 1 {
        return 0.0;
    }
    prime_power_base(x.num).map_or(0.0, |p| (p as f64).ln())
}

/// `<x>`: distance to the nearest prime power other than `x` itself.
///
/// The nearest prime power below `x` (if any, as 1 is not one) and the nearest
/// above are found by integer scans, so the minimum is exact; only the final
/// division by the denominator is rounded.
pub fn nearest_pp_distance(x: RationalPoint) -> f64 {
    let (n, m) = (x.num, x.den);
    let floor = n / m;
    let is_int = n % m == 0;
    let mut below = if is_int { floor - 1 } else { floor };
    while below >= 2 && !is_prime_power(below) {
        below -= 1;
    }
    let mut above = floor + 1;
    while !is_prime_power(above) {
        above += 1;
    }
    let up = above * m - n;
    let best = if below >= 2 { up.min(n - below * m) } else { up };
    best as f64 / m as f64
}

/// `sum_{0 < gamma <= T} x^{1/2 + i gamma}` in ascending order with fixed-chunk
/// compensated summation.
pub fn landau_zero_sum(x: RationalPoint, zeros: &ZeroTable, t: f64, exec: Execution) -> Result<Complex64> {
    let gammas = zeros.up_to(t)?;
    let lx = x.ln();
    let sqrt_x = x.value().sqrt();
    let terms = ordered_map(gammas, exec, |&g| Complex64::from_polar(sqrt_x, g * lx));
    Ok(chunked_sum(&terms, exec))
}

/// Sum of the three error expressions with unit constants.
pub fn landau_error_budget(x: RationalPoint, t: f64) -> f64 {
    let xv = x.value();
    let lx = x.ln();
    let first = xv * (2.0 * xv * t).ln() * (3.0 * xv).ln().ln();
    let second = lx * t.min(xv / nearest_pp_distance(x));
    let third = (2.0 * t).ln() * t.min(1.0 / lx);
    first + second + third
}

/// `-(T/2pi) Lambda(x)`.
pub fn landau_main_term(x: RationalPoint, t: f64) -> f64 {
    -t / (2.0 * PI) * von_mangoldt(x)
}

/// One row of a Landau report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauRow {
    pub x: RationalPoint,
    pub t: f64,
    pub zeros: usize,
    pub sum: Complex64,
    pub main_term: f64,
    pub budget: f64,
}

impl LandauRow {
    pub fn compute(x: RationalPoint, zeros: &ZeroTable, t: f64, exec: Execution) -> Result<Self> {
        Ok(Self {
            x,
            t,
            zeros: zeros.count(t)?,
            sum: landau_zero_sum(x, zeros, t, exec)?,
            main_term: landau_main_term(x, t),
            budget: landau_error_budget(x, t),
        })
    }

    /// `|Re sum - main term|`.
    pub fn deviation(&self) -> f64 {
        (self.sum.re - self.main_term).abs()
    }
}
