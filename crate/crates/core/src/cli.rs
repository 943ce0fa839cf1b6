//! Command-line front end.
//!
//! Arguments are parsed by clap into [`Args`], validated into a [`RunConfig`]
//! (every module precondition is checked here, so bad input fails before any
//! long computation), and executed by [`run`]. Outputs are CSV or zero-table
//! text and depend only on the configuration and the zero table.

use crate::characters::{all_characters, gauss_sum, DirichletCharacter};
use crate::criticalline::{thm2_csv, thm2_reports, CriticalLineConfig};
use crate::error::{Error, Result};
use crate::landau::{LandauRow, RationalPoint};
use crate::lfunc::{afe_grid, check_afe, Evaluator};
use crate::meanvalues::{build_b_polynomial, default_cutoff, thm1_csv, thm1_reports, BPolynomial, CoefficientSeries, SeriesKind, Truncation};
use crate::sum::Execution;
use crate::zeros::{compute_zeros, load_zeros, ZeroSource, ZeroTable};
use clap::{Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;

pub const ZEROS_ENV: &str = "ZETA_ZEROS_PATH";

#[derive(Debug, Parser)]
#[command(name = "zerosample", about = "Dirichlet L-functions sampled at zeta zeros")]
pub struct Args {
    #[command(subcommand)]
    pub command: CommandKind,

    /// Zero table: a file of ordinates, or `compute`. Defaults to $ZETA_ZEROS_PATH, then `compute`.
    #[arg(long, global = true)]
    pub zeros: Option<String>,

    /// Height(s), comma separated.
    #[arg(long = "T", global = true, default_value = "1000")]
    pub t: String,

    #[arg(long, global = true, default_value_t = 0.75)]
    pub sigma: f64,

    #[arg(long, global = true, default_value = "3:1")]
    pub char1: String,

    #[arg(long, global = true, default_value = "5:2")]
    pub char2: String,

    /// Mollifier cutoff: a prime or `auto` (max of the moduli).
    #[arg(long = "P", global = true, default_value = "auto")]
    pub cutoff: String,

    /// Auxiliary prime: a prime or `auto`.
    #[arg(long = "p", global = true, default_value = "auto")]
    pub aux_prime: String,

    /// Points for `landau`, comma separated, each `n` or `n/m`.
    #[arg(long, global = true, default_value = "2")]
    pub x: String,

    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Fraction of AFE samples re-checked against the oracle.
    #[arg(long = "audit-rate", global = true, default_value_t = 0.01)]
    pub audit_rate: f64,

    #[arg(long, global = true, value_enum, default_value_t = EvaluatorKind::Afe)]
    pub evaluator: EvaluatorKind,

    /// Run the fast invariant suite first.
    #[arg(long = "seed-check", global = true)]
    pub seed_check: bool,

    /// Single-threaded execution (output is identical either way).
    #[arg(long, global = true)]
    pub serial: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    /// Emit a zero table up to the largest T.
    Zeros,
    /// Zero sums of x^rho against the explicit formula.
    Landau,
    /// Check the approximate functional equation on the certification grid.
    AfeVerify,
    /// Off-line mean values of A(gamma).
    Thm1,
    /// On-line mean values of p^rho (L(rho, chi1) - L(rho, chi2)).
    Thm2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvaluatorKind {
    Afe,
    Oracle,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ZeroSpec {
    Compute,
    File(PathBuf),
}

/// Validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub zeros: ZeroSpec,
    pub heights: Vec<f64>,
    pub sigma: f64,
    pub char1: DirichletCharacter,
    pub char2: DirichletCharacter,
    pub cutoff: u64,
    pub aux_prime: Option<u64>,
    pub points: Vec<RationalPoint>,
    pub output: Option<PathBuf>,
    pub evaluator: Evaluator,
    pub seed_check: bool,
    pub exec: Execution,
}

fn config(field: &str, message: impl ToString) -> Error {
    Error::Config { field: field.to_string(), message: message.to_string() }
}

fn parse_auto(field: &str, s: &str) -> Result<Option<u64>> {
    if s.trim() == "auto" {
        return Ok(None);
    }
    s.trim().parse().map(Some).map_err(|_| config(field, format!("`{s}` is neither a prime nor `auto`")))
}

impl RunConfig {
    pub fn from_args(args: Args) -> Result<Self> {
        Self::from_args_with_env(args, std::env::var(ZEROS_ENV).ok())
    }

    /// As [`RunConfig::from_args`] with the zero-path environment value supplied.
    pub fn from_args_with_env(args: Args, env_zeros: Option<String>) -> Result<Self> {
        let zeros = match args.zeros.or(env_zeros.filter(|s| !s.is_empty())) {
            None => ZeroSpec::Compute,
            Some(s) if s == "compute" => ZeroSpec::Compute,
            Some(s) => ZeroSpec::File(PathBuf::from(s)),
        };
        let heights = args
            .t
            .split(',')
            .map(|h| h.trim().parse::<f64>().map_err(|_| config("T", format!("`{h}` is not a number"))))
            .collect::<Result<Vec<_>>>()?;
        if let Some(&bad) = heights.iter().find(|h| !(h.is_finite() && **h > 0.0)) {
            return Err(config("T", format!("{bad} must be positive and finite")));
        }
        let char1: DirichletCharacter = args.char1.parse().map_err(|e: Error| config("char1", e))?;
        let char2: DirichletCharacter = args.char2.parse().map_err(|e: Error| config("char2", e))?;
        let points = args
            .x
            .split(',')
            .map(|s| s.parse::<RationalPoint>().map_err(|e| config("x", e)))
            .collect::<Result<Vec<_>>>()?;
        let evaluator = match args.evaluator {
            EvaluatorKind::Oracle => Evaluator::Oracle,
            EvaluatorKind::Afe => Evaluator::afe_with_audit_rate(args.audit_rate).map_err(|e| config("audit-rate", e))?,
        };
        let cutoff = parse_auto("P", &args.cutoff)?.unwrap_or_else(|| default_cutoff(&char1, &char2));
        let aux_prime = parse_auto("p", &args.aux_prime)?;
        let cfg = Self {
            command: args.command,
            zeros,
            heights,
            sigma: args.sigma,
            char1,
            char2,
            cutoff,
            aux_prime,
            points,
            output: args.output,
            evaluator,
            seed_check: args.seed_check,
            exec: if args.serial { Execution::Serial } else { Execution::Parallel },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn t_max(&self) -> f64 {
        self.heights.iter().cloned().fold(0.0, f64::max)
    }

    fn validate(&self) -> Result<()> {
        let t_max = self.t_max();
        if self.zeros == ZeroSpec::Compute && !(15.0..=1e4).contains(&t_max) {
            return Err(config("T", format!("computed zero tables need 15 <= T <= 1e4, got {t_max}")));
        }
        match self.command {
            CommandKind::Thm1 => {
                if !(self.sigma > 0.5 && self.sigma < 1.0) {
                    return Err(config("sigma", format!("{} must lie in (1/2, 1)", self.sigma)));
                }
                self.b_polynomial()?;
            }
            CommandKind::Thm2 => {
                self.critical_line()?;
            }
            CommandKind::Zeros | CommandKind::Landau | CommandKind::AfeVerify => {}
        }
        if matches!(self.command, CommandKind::Thm1 | CommandKind::Thm2) && self.heights.iter().any(|&h| h <= 10.0) {
            return Err(config("T", "heights must exceed 10"));
        }
        Ok(())
    }

    fn b_polynomial(&self) -> Result<BPolynomial> {
        build_b_polynomial(self.cutoff, &self.char1, &self.char2).map_err(|e| match e {
            Error::CutoffTooSmall { .. } | Error::InvalidArgument(_) => config("P", e),
            other => config("char2", other),
        })
    }

    fn critical_line(&self) -> Result<CriticalLineConfig> {
        CriticalLineConfig::new(self.char1.clone(), self.char2.clone(), self.aux_prime).map_err(|e| {
            let field = if self.aux_prime.is_some() && matches!(e, Error::Precondition(ref m) if m.starts_with("p =") || m.starts_with("chi2(")) {
                "p"
            } else {
                "char2"
            };
            config(field, e)
        })
    }

    fn zero_table(&self) -> Result<ZeroTable> {
        match &self.zeros {
            ZeroSpec::Compute => compute_zeros(self.t_max()),
            ZeroSpec::File(path) => {
                let table = load_zeros(path)?;
                if self.t_max() > table.coverage() {
                    return Err(config("T", format!("{} exceeds the coverage {} of {}", self.t_max(), table.coverage(), path.display())));
                }
                Ok(table)
            }
        }
    }
}

/// The outputs of one run, as they would be written.
pub fn execute(cfg: &RunConfig) -> Result<String> {
    if cfg.seed_check {
        seed_check()?;
    }
    match cfg.command {
        CommandKind::Zeros => {
            let table = cfg.zero_table()?;
            let t = cfg.t_max();
            let kept = table.up_to(t)?.to_vec();
            Ok(ZeroTable::new(kept, ZeroSource::Computed, table.precision(), t)?.to_text())
        }
        CommandKind::Landau => {
            let table = cfg.zero_table()?;
            let mut out = String::from(LANDAU_CSV_HEADER);
            out.push('\n');
            for &x in &cfg.points {
                for &t in &cfg.heights {
                    let row = LandauRow::compute(x, &table, t, cfg.exec)?;
                    let _ = writeln!(
                        out,
                        "{},{:e},{},{:e},{:e},{:e},{:e}",
                        row.x, row.t, row.zeros, row.sum.re, row.sum.im, row.main_term, row.budget
                    );
                }
            }
            Ok(out)
        }
        CommandKind::AfeVerify => {
            let mut out = String::from(AFE_CSV_HEADER);
            out.push('\n');
            let mut failures = Vec::new();
            for case in afe_grid()? {
                let check = check_afe(&case)?;
                let _ = writeln!(
                    out,
                    "{},{},{},{:e},{:e},{:e},{}",
                    case.chi,
                    case.point.sigma,
                    case.point.t,
                    case.delta,
                    check.diff,
                    check.bound,
                    check.passed()
                );
                if !check.passed() {
                    failures.push((case, check));
                }
            }
            match failures.first() {
                None => Ok(out),
                Some((case, check)) => Err(Error::BoundViolation {
                    context: format!("L({}+{}i, {}) with delta {}", case.point.sigma, case.point.t, case.chi, case.delta),
                    diff: check.diff,
                    bound: check.bound,
                }),
            }
        }
        CommandKind::Thm1 => {
            let b = cfg.b_polynomial()?;
            let table = cfg.zero_table()?;
            let reports = thm1_reports(&table, &cfg.heights, cfg.sigma, &b, &cfg.evaluator, Truncation::default(), cfg.exec)?;
            Ok(thm1_csv(&reports))
        }
        CommandKind::Thm2 => {
            let cl = cfg.critical_line()?;
            let table = cfg.zero_table()?;
            let reports = thm2_reports(&table, &cfg.heights, &cl, &cfg.evaluator, cfg.exec)?;
            Ok(thm2_csv(&reports))
        }
    }
}

pub const LANDAU_CSV_HEADER: &str = "x,T,N,re_sum,im_sum,main_term,budget";
pub const AFE_CSV_HEADER: &str = "chi,sigma,t,delta,diff,bound,passed";

/// Execute and write the output to the configured destination.
pub fn run(cfg: &RunConfig) -> Result<()> {
    let text = execute(cfg)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_io() {
        3
    } else if e.is_numerical_contract() {
        2
    } else {
        1
    }
}

/// Fast invariants: Gauss-sum identities for small moduli, a slice of the AFE
/// grid, the zero count below 100 and the coefficient closed forms.
pub fn seed_check() -> Result<()> {
    let fail = |what: String| Error::AccuracyLoss(format!("seed check: {what}"));
    for q in [3u64, 5, 7] {
        for chi in all_characters(q)?.into_iter().skip(1) {
            let g1 = gauss_sum(1, &chi);
            if (gauss_sum(1, &chi.conj()) * gauss_sum(-1, &chi) - q as f64).norm() > 1e-12 {
                return Err(fail(format!("G(1, conj {chi}) G(-1, {chi}) != {q}")));
            }
            for k in 1..q as i64 {
                if (gauss_sum(k, &chi) - chi.conj().eval(k) * g1).norm() > 1e-12 {
                    return Err(fail(format!("G({k}, {chi}) != conj chi({k}) G(1, {chi})")));
                }
            }
        }
    }
    for case in afe_grid()?.iter().step_by(27) {
        let check = check_afe(case)?;
        if !check.passed() {
            return Err(fail(format!("AFE at {}+{}i for {}", case.point.sigma, case.point.t, case.chi)));
        }
    }
    let n = compute_zeros(100.0)?.len();
    if n != 29 {
        return Err(fail(format!("{n} zeros below 100, expected 29")));
    }
    let b = build_b_polynomial(5, &crate::character(3, 1)?, &crate::character(5, 2)?)?;
    for kind in [SeriesKind::D, SeriesKind::E] {
        let series = CoefficientSeries::new(kind, &b);
        for n in 1..=500 {
            series.coeff_exact(n)?;
        }
    }
    Ok(())
}
