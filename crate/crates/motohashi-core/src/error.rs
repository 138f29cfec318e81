//! Error types shared across the crate.

use crate::singularity::SingularityClass;
use num_complex::Complex64;

/// Everything that can go wrong in an evaluation or table build.
///
/// Variants split into two broad groups that front ends map to distinct exit
/// statuses: precondition violations (bad inputs, guarded singular points,
/// coverage gaps) and numerical verdicts that could not be reached
/// ([`Error::Inconclusive`], [`Error::NonConvergence`]).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input within 10⁻¹² of the pole of ζ at s = 1.
    PoleAtOne,
    /// Non-finite component in a complex input or result.
    NotFinite,
    /// Evaluation point too close to a known singular point.
    NearSingularity {
        class: SingularityClass,
        location: Complex64,
    },
    /// A local Euler factor has a pole at this point; `(p, k)` identifies the
    /// offending grid point ν = i(πk/log p + (T₁−T₂)/2).
    LocalPole { p: u32, k: i64 },
    /// Sieve or table limit above the supported desk-scale bound.
    LimitTooLarge { requested: u64, max: u64 },
    /// A parameter failed its domain check (message names the field).
    InvalidParameter(&'static str),
    /// Coefficient table handed to an operation that expects `c₁ = 1`.
    Normalization,
    /// A table or zero list does not cover the requested range.
    Coverage { requested: f64, available: f64 },
    /// Tables built with different parameters were combined.
    ParameterMismatch(&'static str),
    /// No sign change of the Hardy function inside the search bracket.
    NoSignChange { bracket: (f64, f64) },
    /// A contour or cell boundary passes too close to a zero or pole.
    BoundaryTooClose(&'static str),
    /// An iteration failed to settle (winding refinement, Newton polish, …).
    NonConvergence(&'static str),
    /// Two independent numerical routes disagree; no verdict is reported.
    Inconclusive(&'static str),
    /// Candidate point is not on the closed-form pole grid of K.
    OffGridCandidate(Complex64),
    /// Kernel evaluation point coincides with the expansion point s.
    Coincidence { u: Complex64 },
}

impl Error {
    /// True for the "could not reach a verdict" group, false for plain
    /// precondition violations.
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive(_) | Error::NonConvergence(_))
    }
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::PoleAtOne => write!(f, "evaluation point coincides with the pole of zeta at s = 1"),
            Error::NotFinite => write!(f, "non-finite value encountered"),
            Error::NearSingularity { class, location } => write!(
                f,
                "point within guard distance of a {} singularity at {} + {}i",
                class.name(),
                location.re,
                location.im
            ),
            Error::LocalPole { p, k } => {
                write!(f, "local factor pole for p = {p}, k = {k}")
            }
            Error::LimitTooLarge { requested, max } => {
                write!(f, "limit {requested} exceeds supported maximum {max}")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::Normalization => write!(f, "coefficient table is not normalized (c_1 != 1)"),
            Error::Coverage {
                requested,
                available,
            } => write!(
                f,
                "requested range {requested} exceeds available coverage {available}"
            ),
            Error::ParameterMismatch(what) => write!(f, "parameter mismatch: {what}"),
            Error::NoSignChange { bracket } => write!(
                f,
                "no sign change of the Hardy function in [{}, {}]",
                bracket.0, bracket.1
            ),
            Error::BoundaryTooClose(what) => {
                write!(f, "boundary too close to a zero or pole: {what}")
            }
            Error::NonConvergence(what) => write!(f, "iteration did not converge: {what}"),
            Error::Inconclusive(what) => write!(f, "numerically inconclusive: {what}"),
            Error::OffGridCandidate(c) => write!(
                f,
                "candidate {} + {}i is not on the pole grid of K",
                c.re, c.im
            ),
            Error::Coincidence { u } => write!(
                f,
                "kernel point {} + {}i coincides with the evaluation point",
                u.re, u.im
            ),
        }
    }
}

impl core::error::Error for Error {}
