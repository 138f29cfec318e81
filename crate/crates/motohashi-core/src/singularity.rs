//! Singularity classes of Z'/Z, truncation policies, and the inventory type.
//!
//! Eight families: four hold poles of Z (S₁ from the shifted zeta poles,
//! S̄_ρ and S̄_{−2q} from the doubled-line zeta zeros, S_ν from the poles of
//! K) and enter the explicit-formula kernel sum with sign +1; the other four
//! hold zeros of Z (S̄₁ from the doubled-line pole, S_ρ and S_{−2q} from the
//! shifted zeta zeros, S_r from the zeros of K) and enter with sign −1.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, Result, SpectralParams};

/// The eight singularity families, in the order the identity lists them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SingularityClass {
    S1,
    S1bar,
    Srho,
    Srhobar,
    Sm2q,
    Sm2qbar,
    Snu,
    Sr,
}

impl SingularityClass {
    pub const ALL: [SingularityClass; 8] = [
        SingularityClass::S1,
        SingularityClass::S1bar,
        SingularityClass::Srho,
        SingularityClass::Srhobar,
        SingularityClass::Sm2q,
        SingularityClass::Sm2qbar,
        SingularityClass::Snu,
        SingularityClass::Sr,
    ];

    /// Stable serialization name.
    pub fn name(&self) -> &'static str {
        match self {
            SingularityClass::S1 => "S1",
            SingularityClass::S1bar => "S1bar",
            SingularityClass::Srho => "Srho",
            SingularityClass::Srhobar => "Srhobar",
            SingularityClass::Sm2q => "Sm2q",
            SingularityClass::Sm2qbar => "Sm2qbar",
            SingularityClass::Snu => "Snu",
            SingularityClass::Sr => "Sr",
        }
    }

    /// Listing rank (sort key for emissions).
    pub fn rank(&self) -> usize {
        match self {
            SingularityClass::S1 => 0,
            SingularityClass::S1bar => 1,
            SingularityClass::Srho => 2,
            SingularityClass::Srhobar => 3,
            SingularityClass::Sm2q => 4,
            SingularityClass::Sm2qbar => 5,
            SingularityClass::Snu => 6,
            SingularityClass::Sr => 7,
        }
    }

    /// Kernel-sum membership: +1 for poles of Z, −1 for zeros of Z.
    pub fn sign(&self) -> i8 {
        match self {
            SingularityClass::S1
            | SingularityClass::Srhobar
            | SingularityClass::Sm2qbar
            | SingularityClass::Snu => 1,
            SingularityClass::S1bar
            | SingularityClass::Srho
            | SingularityClass::Sm2q
            | SingularityClass::Sr => -1,
        }
    }
}

/// One singularity of Z'/Z: location, family, and multiplicity. The sign is
/// a function of the family, so it is exposed rather than stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularityPoint {
    pub location: Complex64,
    pub class: SingularityClass,
    pub multiplicity: u32,
}

impl SingularityPoint {
    pub fn new(location: Complex64, class: SingularityClass, multiplicity: u32) -> Self {
        debug_assert!(multiplicity >= 1);
        SingularityPoint {
            location,
            class,
            multiplicity,
        }
    }

    pub fn sign(&self) -> i8 {
        self.class.sign()
    }
}

/// Axis-aligned search rectangle in the s-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl RectRegion {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let vals = [re_min, re_max, im_min, im_max];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::NotFinite);
        }
        if !(re_min < re_max) || !(im_min < im_max) {
            return Err(Error::InvalidParameter("rectangle must be nondegenerate"));
        }
        Ok(RectRegion {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re >= self.re_min && s.re <= self.re_max && s.im >= self.im_min && s.im <= self.im_max
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.re_min + self.re_max),
            0.5 * (self.im_min + self.im_max),
        )
    }
}

/// Truncation windows for the infinite families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Cap on |γ| for the S_ρ / S̄_ρ families.
    pub gamma_max: f64,
    /// Trivial zeros −2q with q ≤ q_max.
    pub q_max: u32,
    /// |k| cap on the S_ν candidate grid.
    pub k_max: u32,
    /// Search window for the zeros of K (the S_r family).
    pub rect: RectRegion,
}

impl TruncationPolicy {
    pub fn new(gamma_max: f64, q_max: u32, k_max: u32, rect: RectRegion) -> Result<Self> {
        if !(gamma_max > 0.0) || !gamma_max.is_finite() {
            return Err(Error::InvalidParameter("gamma_max must be positive"));
        }
        if q_max == 0 || k_max == 0 {
            return Err(Error::InvalidParameter("q_max and k_max must be positive"));
        }
        Ok(TruncationPolicy {
            gamma_max,
            q_max,
            k_max,
            rect,
        })
    }

    /// Library defaults around an evaluation point (the rectangle tracks the
    /// height of s so the K-zero window stays centered).
    pub fn default_for(s: Complex64) -> Self {
        TruncationPolicy {
            gamma_max: 200.0,
            q_max: 50,
            k_max: 200,
            rect: RectRegion {
                re_min: -1.0,
                re_max: 3.0,
                im_min: s.im - 50.0,
                im_max: s.im + 50.0,
            },
        }
    }
}

/// Two inventory entries of different families closer than the collision
/// guard (1e-8). Reported, never merged: coincident points with opposite
/// signs cancel in the kernel sums exactly as the identity requires.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionWarning {
    pub first: SingularityPoint,
    pub second: SingularityPoint,
    pub distance: f64,
}

/// Every singularity inside a truncation window, sorted by
/// (class rank, Im, Re), plus any cross-family collision warnings.
#[derive(Debug, Clone)]
pub struct SingularityInventory {
    pub points: Vec<SingularityPoint>,
    pub truncation: TruncationPolicy,
    pub params: SpectralParams,
    pub warnings: Vec<CollisionWarning>,
}

impl SingularityInventory {
    pub fn class_points(
        &self,
        class: SingularityClass,
    ) -> impl Iterator<Item = &SingularityPoint> + '_ {
        self.points.iter().filter(move |p| p.class == class)
    }

    /// Distance from `s` to the nearest inventory point.
    pub fn distance_to(&self, s: Complex64) -> f64 {
        self.points
            .iter()
            .map(|p| (p.location - s).norm())
            .fold(f64::INFINITY, f64::min)
    }
}
