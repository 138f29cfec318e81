//! Numerical engine for the shifted-zeta product Z(s) = J(s)·K(s).
//!
//! `J` is the quotient of four shifted Riemann zeta factors by a fifth on the
//! doubled line, and `K` is a mollified sum of local Euler-type factors over
//! squarefree moduli below `z²`. This crate evaluates both factors and their
//! logarithmic derivatives, builds the Dirichlet coefficients of `Z` and of
//! `Z'/Z`, enumerates the singularities of `Z'/Z` (poles and zeros of `Z` in
//! eight closed-form or numerically located families), assembles the
//! Selberg-type explicit-formula residual for `Z'/Z`, and provides a zero
//! counter for `K` plus moment quadratures on and near the critical line.
//!
//! The crate is `no_std` + `alloc`; all floating-point work is binary64.
//! Every operation is pure and deterministic: fixed summation orders, fixed
//! candidate grids, no global state. Finished tables are immutable and safe
//! to share across threads.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod density;
pub mod error;
pub mod formula;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod params;
pub mod product;
pub mod singularity;
mod winding;
pub mod zeta;

pub use error::Error;
pub use num_complex::Complex64;
pub use params::SpectralParams;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Rejects non-finite complex inputs before they reach any evaluation path.
pub(crate) fn check_finite(s: Complex64) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NotFinite)
    }
}
