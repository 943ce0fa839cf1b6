//! Ordinates of the nontrivial zeros of zeta, from a text file or computed from
//! sign changes of Hardy's Z.
//!
//! Completeness is checked against the Riemann-von Mangoldt main term: for every
//! height `T` covered by a table, `|N(T) - (T/2pi) log(T/2pi) + T/2pi - 7/8|` must
//! stay within `2 + log(T)/2`.

use crate::error::{Error, Result};
use crate::specfun::hardy_z;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    File,
    Computed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    source: ZeroSource,
    precision: f64,
    coverage: f64,
}

/// Absolute accuracy of computed ordinates.
pub const COMPUTED_PRECISION: f64 = 1e-9;

const MAX_HEIGHT: f64 = 1e4;

pub fn rvm_main_term(t: f64) -> f64 {
    let u = t / (2.0 * PI);
    u * u.ln() - u + 0.875
}

pub fn rvm_slack(t: f64) -> f64 {
    2.0 + 0.5 * t.ln()
}

impl ZeroTable {
    /// Validate and wrap ascending ordinates known to be complete on `(0, coverage]`.
    pub fn new(ordinates: Vec<f64>, source: ZeroSource, precision: f64, coverage: f64) -> Result<Self> {
        for (i, w) in ordinates.windows(2).enumerate() {
            if !(w[1] - w[0] > precision) {
                return Err(Error::NonMonotonic { line: i + 2, prev: w[0], next: w[1] });
            }
        }
        if let Some(&first) = ordinates.first() {
            if !(first > 10.0) {
                return Err(Error::InvalidArgument(format!("ordinate {first} is not above 10")));
            }
        }
        if let Some(&last) = ordinates.last() {
            if coverage < last {
                return Err(Error::InvalidArgument(format!("coverage {coverage} is below the last ordinate {last}")));
            }
        }
        let table = Self { ordinates, source, precision, coverage };
        table.check_counts()?;
        Ok(table)
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    pub fn precision(&self) -> f64 {
        self.precision
    }

    /// Largest height up to which the table is complete.
    pub fn coverage(&self) -> f64 {
        self.coverage
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// `N(T)`: ordinates `<= T`.
    pub fn count(&self, t: f64) -> Result<usize> {
        Ok(self.up_to(t)?.len())
    }

    /// The ordinates in `(0, T]`.
    pub fn up_to(&self, t: f64) -> Result<&[f64]> {
        if !(t <= self.coverage) {
            return Err(Error::RangeExceeded { t, coverage: self.coverage });
        }
        let n = self.ordinates.partition_point(|&g| g <= t);
        Ok(&self.ordinates[..n])
    }

    /// Riemann-von Mangoldt consistency at every jump of `N` and at the coverage end.
    ///
    /// The smooth term is increasing, so the extreme deviations of the step
    /// function occur just before and at each ordinate.
    pub fn check_counts(&self) -> Result<()> {
        let check = |t: f64, count: usize| -> Result<()> {
            if t < 10.0 {
                return Ok(());
            }
            let expected = rvm_main_term(t);
            let slack = rvm_slack(t);
            if (count as f64 - expected).abs() > slack {
                return Err(Error::CountInconsistent { t, count, expected, slack });
            }
            Ok(())
        };
        for (k, &g) in self.ordinates.iter().enumerate() {
            check(g, k)?;
            check(g, k + 1)?;
        }
        if self.coverage.is_finite() {
            check(self.coverage, self.ordinates.len())?;
        }
        Ok(())
    }

    /// Text form accepted by [`parse_zeros`]; ordinates use shortest round-trip
    /// formatting so a reload is exact.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# coverage {}", self.coverage);
        let _ = writeln!(out, "# precision {}", self.precision);
        for g in &self.ordinates {
            let _ = writeln!(out, "{g}");
        }
        out
    }
}

/// Parse a zero file: whitespace-separated decimals, `#` comments.
///
/// A `# coverage T` comment declares the completeness height; without one the
/// table is taken as complete up to its last ordinate. The claimed precision is
/// half a unit in the last decimal place of the least precise entry unless a
/// `# precision e` comment says otherwise.
pub fn parse_zeros(text: &str) -> Result<ZeroTable> {
    let mut ordinates = Vec::new();
    let mut coverage = None;
    let mut precision = None;
    let mut min_decimals = usize::MAX;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            match (words.next(), words.next()) {
                (Some("coverage"), Some(v)) => coverage = v.parse::<f64>().ok(),
                (Some("precision"), Some(v)) => precision = v.parse::<f64>().ok(),
                _ => {}
            }
            continue;
        }
        for token in trimmed.split_whitespace() {
            let g: f64 = token.parse().map_err(|_| Error::ParseError { line: line_no, token: token.to_string() })?;
            if !g.is_finite() || g <= 0.0 {
                return Err(Error::ParseError { line: line_no, token: token.to_string() });
            }
            if let Some(&prev) = ordinates.last() {
                if g <= prev {
                    return Err(Error::NonMonotonic { line: line_no, prev, next: g });
                }
            }
            let decimals = token.split_once('.').map_or(0, |(_, frac)| frac.len());
            min_decimals = min_decimals.min(decimals);
            ordinates.push(g);
        }
    }
    let coverage = coverage.unwrap_or_else(|| ordinates.last().copied().unwrap_or(f64::INFINITY));
    let precision = precision.unwrap_or_else(|| {
        if ordinates.is_empty() {
            0.0
        } else {
            0.5 * 10f64.powi(-(min_decimals.min(300) as i32))
        }
    });
    ZeroTable::new(ordinates, ZeroSource::File, precision, coverage)
}

pub fn load_zeros(path: &Path) -> Result<ZeroTable> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_zeros(&text)
}

pub fn write_zeros(table: &ZeroTable, path: &Path) -> Result<()> {
    std::fs::write(path, table.to_text())
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Mean gap between consecutive zeros near height `t`.
fn mean_spacing(t: f64) -> f64 {
    2.0 * PI / (t / (2.0 * PI)).ln().max(1.0)
}

const BLOCK: f64 = 25.0;
const START: f64 = 10.0;

/// Sign-change brackets of Z on `[a, b]`, scanning with `steps_per_gap` points per
/// mean zero spacing.
///
/// A sample whose `|Z|` dips below both neighbours without a sign change may hide
/// a close pair of zeros; there the minimum of `sign * Z` is located by golden
/// section and, if it crosses zero, both brackets are recorded.
fn scan_block(a: f64, b: f64, steps_per_gap: f64) -> Result<Vec<(f64, f64, f64, f64)>> {
    let h = mean_spacing(b) / steps_per_gap;
    let n = ((b - a) / h).ceil().max(1.0) as usize;
    let mut samples = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = if i == n { b } else { a + (b - a) * i as f64 / n as f64 };
        samples.push((t, hardy_z(t)?));
    }
    let mut out = Vec::new();
    for i in 1..=n {
        let (t0, z0) = samples[i - 1];
        let (t1, z1) = samples[i];
        if (z0 < 0.0) != (z1 < 0.0) {
            out.push((t0, z0, t1, z1));
            continue;
        }
        if i < n {
            let (t2, z2) = samples[i + 1];
            let same = (z1 < 0.0) == (z2 < 0.0);
            if same && z1.abs() < z0.abs() && z1.abs() < z2.abs() {
                let sign = if z1 < 0.0 { -1.0 } else { 1.0 };
                let (tm, zm) = golden_min(t0, t2, |t| Ok(sign * hardy_z(t)?))?;
                if zm < 0.0 {
                    out.push((t0, z0, tm, sign * zm));
                    out.push((tm, sign * zm, t2, z2));
                }
            }
        }
    }
    Ok(out)
}

fn golden_min(mut a: f64, mut b: f64, f: impl Fn(f64) -> Result<f64>) -> Result<(f64, f64)> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > 1e-6 {
        if fc < 0.0 {
            return Ok((c, fc));
        }
        if fd < 0.0 {
            return Ok((d, fd));
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}

/// Illinois-modified regula falsi on a sign-change bracket of Z.
fn refine(mut a: f64, mut za: f64, mut b: f64, mut zb: f64) -> Result<f64> {
    let mut side = 0i8;
    for _ in 0..200 {
        if b - a <= 0.2 * COMPUTED_PRECISION {
            break;
        }
        let mut c = b - zb * (b - a) / (zb - za);
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let zc = hardy_z(c)?;
        if zc == 0.0 {
            return Ok(c);
        }
        if (zc < 0.0) == (zb < 0.0) {
            b = c;
            zb = zc;
            if side == 1 {
                za *= 0.5;
            }
            side = 1;
        } else {
            a = c;
            za = zc;
            if side == -1 {
                zb *= 0.5;
            }
            side = -1;
        }
    }
    Ok(0.5 * (a + b))
}

fn scan(t_max: f64, steps_per_gap: f64) -> Result<Vec<f64>> {
    let blocks = ((t_max - START) / BLOCK).ceil().max(1.0) as usize;
    let edges: Vec<(f64, f64)> = (0..blocks)
        .map(|k| {
            let a = START + BLOCK * k as f64;
            let b = if k + 1 == blocks { t_max } else { START + BLOCK * (k + 1) as f64 };
            (a, b)
        })
        .collect();
    let per_block: Vec<Result<Vec<f64>>> = edges
        .par_iter()
        .map(|&(a, b)| {
            scan_block(a, b, steps_per_gap)?
                .into_iter()
                .map(|(t0, z0, t1, z1)| refine(t0, z0, t1, z1))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for block in per_block {
        out.extend(block?);
    }
    Ok(out)
}

/// All zeros with ordinate in `(0, t_max]`, each to within [`COMPUTED_PRECISION`].
///
/// The scan density doubles until the count agrees with Riemann-von Mangoldt.
pub fn compute_zeros(t_max: f64) -> Result<ZeroTable> {
    if !(15.0..=MAX_HEIGHT).contains(&t_max) {
        return Err(Error::InvalidArgument(format!("compute_zeros needs 15 <= T_max <= 1e4, got {t_max}")));
    }
    let mut steps = 8.0;
    let mut last_err = None;
    for _ in 0..4 {
        let ordinates = scan(t_max, steps)?;
        match ZeroTable::new(ordinates, ZeroSource::Computed, COMPUTED_PRECISION, t_max) {
            Ok(table) => return Ok(table),
            Err(e @ (Error::CountInconsistent { .. } | Error::NonMonotonic { .. })) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        steps *= 2.0;
    }
    Err(Error::MissedZero { t_max, detail: last_err.map(|e| e.to_string()).unwrap_or_default() })
}
