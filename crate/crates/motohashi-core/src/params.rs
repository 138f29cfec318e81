//! Shift and mollifier configuration shared by every evaluator.

// f64 math through the trait in no_std builds; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// The `(T₁, T₂, z)` triple defining the product `Z(s) = J(s)·K(s)`.
///
/// `T₁`, `T₂` are the imaginary shifts of the zeta factors inside `J`; `z`
/// is the mollifier length controlling which moduli `d < z²` contribute to
/// `K`. Immutable after construction; all evaluators copy it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    t1: f64,
    t2: f64,
    z: f64,
}

/// Desk-scale cap on `z²` (the mollifier support is `d < z²`).
pub const MAX_Z_SQUARED: f64 = 1e6;

impl SpectralParams {
    pub fn new(t1: f64, t2: f64, z: f64) -> Result<Self> {
        if !t1.is_finite() || !t2.is_finite() {
            return Err(Error::InvalidParameter("T1/T2 must be finite"));
        }
        if !(z > 1.0) || !z.is_finite() {
            return Err(Error::InvalidParameter("z must be finite and > 1"));
        }
        if z * z > MAX_Z_SQUARED {
            return Err(Error::LimitTooLarge {
                requested: (z * z) as u64,
                max: MAX_Z_SQUARED as u64,
            });
        }
        Ok(SpectralParams { t1, t2, z })
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// The shift difference δ = T₁ − T₂ entering the doubled-line factor.
    pub fn delta(&self) -> f64 {
        self.t1 - self.t2
    }

    /// Largest integer modulus `d` with `d < z²` (the mollifier support end).
    pub fn support_end(&self) -> usize {
        let z2 = self.z * self.z;
        let mut d = z2.floor() as usize;
        if (d as f64) >= z2 {
            d -= 1;
        }
        d
    }

    /// True when the mollifier degenerates to the single term `d = 1`, so
    /// `K ≡ 1`. Requires `z² ≤ 2`, i.e. `z ≤ √2` (for `√2 < z < 2` the
    /// modulus `d = 2` already lies in the tapered range `[z, z²)`).
    pub fn is_degenerate(&self) -> bool {
        self.support_end() < 2
    }
}
