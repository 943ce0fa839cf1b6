use thiserror::Error;

/// Every failure the workbench can report.
///
/// Variants are grouped loosely by the module that raises them; callers that
/// need an exit status use [`Error::is_numerical_contract`] and
/// [`Error::is_io`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // characters
    #[error("modulus {0} is not a prime (only prime moduli >= 3 are supported)")]
    NonPrimeModulus(u64),
    #[error("character index {index} out of range [0, {max}] for modulus {modulus}")]
    IndexOutOfRange { modulus: u64, index: u64, max: u64 },
    #[error("cannot parse character `{0}`; expected \"q:j\"")]
    CharacterSyntax(String),

    // special functions
    #[error("log-gamma has a pole at the non-positive integer {0}")]
    PoleAtNonPositiveInteger(f64),
    #[error("zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("{what} requires t >= {min}, got {t}")]
    DomainTooSmall { what: &'static str, min: f64, t: f64 },
    #[error("accuracy loss: {0}")]
    AccuracyLoss(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    // zeros
    #[error("line {line}: cannot parse `{token}` as an ordinate")]
    ParseError { line: usize, token: String },
    #[error("ordinates not strictly ascending at line {line}: {prev} then {next}")]
    NonMonotonic { line: usize, prev: f64, next: f64 },
    #[error("zero count {count} at T = {t} is outside the Riemann-von Mangoldt band ({expected:.3} +/- {slack:.3})")]
    CountInconsistent { t: f64, count: usize, expected: f64, slack: f64 },
    #[error("zero search up to {t_max} could not be certified complete: {detail}")]
    MissedZero { t_max: f64, detail: String },
    #[error("height {t} is outside the covered range (0, {coverage}]")]
    RangeExceeded { t: f64, coverage: f64 },

    // lfunc
    #[error("point {sigma} + {t}i is outside the admissible strip region: {reason}")]
    OutOfStrip { sigma: f64, t: f64, reason: &'static str },
    #[error("the principal character is not admissible here")]
    PrincipalCharacter,
    #[error("|Im s| = {0} exceeds the oracle limit 1e4")]
    HeightExceeded(f64),
    #[error("AFE bound violated at {context}: |afe - oracle| = {diff:e} > bound {bound:e}")]
    BoundViolation { context: String, diff: f64, bound: f64 },

    // meanvalues
    #[error("cutoff P = {cutoff} must be a prime >= max(q, l) = {required}")]
    CutoffTooSmall { cutoff: u64, required: u64 },
    #[error("coefficient {kind}_{n}: convolution and closed form disagree")]
    ClosedFormMismatch { kind: &'static str, n: u64 },
    #[error("series and product evaluations of {name}({sigma}) disagree: |diff| = {diff:e} > {bound:e}")]
    SeriesProductDisagreement { name: &'static str, sigma: f64, diff: f64, bound: f64 },
    #[error("sum of |A(gamma)|^2 is zero; the proportion bound is undefined")]
    DivisionByZero,

    // criticalline
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no admissible prime below {0}")]
    SearchExhausted(u64),

    // cli / io
    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Errors that signal a broken numerical contract (exit status 2).
    pub fn is_numerical_contract(&self) -> bool {
        matches!(
            self,
            Error::AccuracyLoss(_)
                | Error::MissedZero { .. }
                | Error::BoundViolation { .. }
                | Error::ClosedFormMismatch { .. }
                | Error::SeriesProductDisagreement { .. }
                | Error::CountInconsistent { .. }
        )
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
