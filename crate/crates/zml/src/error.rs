//! Error type shared by every module in the crate.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong numerically or at the I/O boundary.
///
/// Evaluation errors are loud by design: near a pole or a zero of the
/// denominator the evaluators refuse instead of returning garbage.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument within the guard radius of the pole at s = 1.
    PoleAtOne {
        re: f64,
        im: f64,
    },
    /// |Im(s)| beyond the configured evaluation ceiling.
    RangeExceeded {
        t: f64,
        max_t: f64,
    },
    /// zeta'/zeta requested too close to a zero or the pole.
    NearSingularity {
        re: f64,
        im: f64,
        zeta_abs: f64,
    },
    /// Argument tracking could not resolve the zero count near this height.
    Unresolved {
        t: f64,
    },
    /// Bracket subdivision could not reconcile sign changes with the
    /// argument-principle count on (lo, hi].
    MissedZero {
        lo: f64,
        hi: f64,
        expected: usize,
        found: usize,
    },
    /// A shifted ordinate t + gamma left the evaluation range.
    ShiftOutOfRange {
        shifted: f64,
        max_t: f64,
    },
    /// Dirichlet cutoff (t_max + t)^delta exceeds the memory guard.
    CutoffTooLarge {
        cutoff: f64,
    },
    /// An operation's hypothesis on its parameters is violated.
    DomainViolation {
        detail: String,
    },
    /// Shift parameter outside |alpha| <= (1/4pi) log(T/2pi).
    AlphaOutOfRange {
        alpha: f64,
        limit: f64,
    },
    /// Bad evaluation or run configuration.
    InvalidConfig {
        detail: String,
    },
    /// Malformed zero-cache file.
    CacheFormat {
        line: usize,
        detail: String,
    },
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PoleAtOne { re, im } => {
                write!(f, "zeta pole: s = {re}+{im}i is within 1e-8 of s = 1")
            }
            Error::RangeExceeded { t, max_t } => {
                write!(f, "|Im(s)| = {t} exceeds configured max_t = {max_t}")
            }
            Error::NearSingularity { re, im, zeta_abs } => write!(
                f,
                "zeta'/zeta near singularity at s = {re}+{im}i (|zeta| = {zeta_abs:.3e})"
            ),
            Error::Unresolved { t } => {
                write!(f, "argument tracking unresolved near t = {t}")
            }
            Error::MissedZero {
                lo,
                hi,
                expected,
                found,
            } => write!(
                f,
                "cannot reconcile zero counts on ({lo}, {hi}]: expected {expected}, sign changes found {found}"
            ),
            Error::ShiftOutOfRange { shifted, max_t } => {
                write!(f, "shifted ordinate |t + gamma| = {shifted} exceeds max_t = {max_t}")
            }
            Error::CutoffTooLarge { cutoff } => {
                write!(f, "Dirichlet cutoff {cutoff:.3e} exceeds the 1e6 memory guard")
            }
            Error::DomainViolation { detail } => write!(f, "domain violation: {detail}"),
            Error::AlphaOutOfRange { alpha, limit } => {
                write!(f, "alpha = {alpha} outside admissible |alpha| <= {limit}")
            }
            Error::InvalidConfig { detail } => write!(f, "invalid configuration: {detail}"),
            Error::CacheFormat { line, detail } => {
                write!(f, "bad zero cache at line {line}: {detail}")
            }
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
