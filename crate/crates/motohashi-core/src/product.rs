//! Evaluation of the product Z(s) = J(s)·K(s) and its logarithmic
//! derivative, plus the singularity machinery for K: the closed-form pole
//! grid, the residue filter deciding which grid points are genuine poles,
//! the argument-principle zero search, and the full inventory builder.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// f64 math through the trait in no_std builds; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::arith::{lambda_weights, MollifierWeights, Sieve};
use crate::singularity::{
    CollisionWarning, RectRegion, SingularityClass, SingularityInventory, SingularityPoint,
    TruncationPolicy,
};
use crate::winding::{circle_mean_residue, circle_path, rect_path, winding_number};
use crate::zeta::{zeta, zeta_log_deriv, ZeroTable};
use crate::{check_finite, Error, Result, SpectralParams};

/// Guard distance for local-factor poles (|1 − p^{−(2s−iδ)}| below this is
/// treated as sitting on the pole).
const LOCAL_POLE_GUARD: f64 = 1e-10;
/// Guard for J's poles and the doubled-line zeros.
const J_GUARD: f64 = 1e-8;
/// |K| below this is treated as "on a zero of K".
const K_ZERO_GUARD: f64 = 1e-10;
/// On-grid tolerance for the residue filter precondition.
const GRID_TOL: f64 = 1e-8;

/// Shared evaluator for J, K, Z and their derivatives at fixed parameters.
///
/// Construction sieves the mollifier support once; every evaluation is then
/// pure (`&self`) and safe to call from many threads.
#[derive(Debug, Clone)]
pub struct ProductEvaluator {
    params: SpectralParams,
    weights: MollifierWeights,
    sieve: Sieve,
    primes: Vec<u32>,
    prime_index: Vec<u32>,
}

impl ProductEvaluator {
    pub fn new(params: SpectralParams) -> Result<Self> {
        let weights = lambda_weights(&params)?;
        let end = params.support_end();
        let sieve = Sieve::new(end)?;
        let primes: Vec<u32> = sieve.primes().to_vec();
        let mut prime_index = vec![u32::MAX; end + 1];
        for (i, &p) in primes.iter().enumerate() {
            prime_index[p as usize] = i as u32;
        }
        Ok(ProductEvaluator {
            params,
            weights,
            sieve,
            primes,
            prime_index,
        })
    }

    pub fn params(&self) -> &SpectralParams {
        &self.params
    }

    pub fn weights(&self) -> &MollifierWeights {
        &self.weights
    }

    /// Primes that can divide a contributing modulus (p < z²).
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    // -----------------------------------------------------------------
    // Local factors and K
    // -----------------------------------------------------------------

    /// The single-prime factor of P_d and its s-derivative:
    /// 1 − (1−p^{−s})(1−p^{−(s−iT₁)})(1−p^{−(s+iT₂)})(1−p^{−(s−iδ)}) / (1−p^{−(2s−iδ)}).
    pub fn local_factor_with_deriv(&self, p: u32, s: Complex64) -> Result<(Complex64, Complex64)> {
        check_finite(s)?;
        let lp = (p as f64).ln();
        let delta = self.params.delta();
        let shifts = [0.0, self.params.t1(), -self.params.t2(), delta];
        let mut g = Complex64::new(1.0, 0.0);
        let mut dg = Complex64::new(0.0, 0.0);
        for a in shifts {
            let e = (-(s - Complex64::new(0.0, a)) * lp).exp();
            let gj = Complex64::new(1.0, 0.0) - e;
            let dgj = lp * e;
            dg = dg * gj + g * dgj;
            g *= gj;
        }
        let he = (-(2.0 * s - Complex64::new(0.0, delta)) * lp).exp();
        let h = Complex64::new(1.0, 0.0) - he;
        if h.norm() < LOCAL_POLE_GUARD {
            let k = ((2.0 * s - Complex64::new(0.0, delta)).im * lp / (2.0 * PI)).round() as i64;
            return Err(Error::LocalPole { p, k });
        }
        let dh = 2.0 * lp * he;
        let value = Complex64::new(1.0, 0.0) - g / h;
        let deriv = -(dg * h - g * dh) / (h * h);
        Ok((value, deriv))
    }

    /// The local factor alone.
    pub fn local_factor(&self, p: u32, s: Complex64) -> Result<Complex64> {
        Ok(self.local_factor_with_deriv(p, s)?.0)
    }

    /// K(s) and K′(s): the finite sum Σ_{d<z²} λ_d Π_{p|d} ℓ_p(s),
    /// accumulated in ascending d (fixed order, deterministic).
    pub fn k_with_deriv(&self, s: Complex64) -> Result<(Complex64, Complex64)> {
        check_finite(s)?;
        let mut cache: Vec<Option<(Complex64, Complex64)>> = vec![None; self.primes.len()];
        let mut k = Complex64::new(0.0, 0.0);
        let mut dk = Complex64::new(0.0, 0.0);
        for (d, lam) in self.weights.support() {
            if d == 1 {
                k += lam; // empty product: P_1 = 1
                continue;
            }
            let mut prod = Complex64::new(1.0, 0.0);
            let mut dprod = Complex64::new(0.0, 0.0);
            let mut m = d;
            while m > 1 {
                let p = self.sieve.smallest_prime_factor(m);
                let idx = self.prime_index[p as usize] as usize;
                let (lv, ldv) = match cache[idx] {
                    Some(pair) => pair,
                    None => {
                        let pair = self.local_factor_with_deriv(p, s)?;
                        cache[idx] = Some(pair);
                        pair
                    }
                };
                dprod = dprod * lv + prod * ldv;
                prod *= lv;
                m /= p as usize; // d squarefree: single power
            }
            k += lam * prod;
            dk += lam * dprod;
        }
        if !k.re.is_finite() || !k.im.is_finite() {
            return Err(Error::NotFinite);
        }
        Ok((k, dk))
    }

    pub fn k_eval(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.k_with_deriv(s)?.0)
    }

    /// K′/K with a guard against evaluating on a zero of K.
    pub fn k_log_deriv(&self, s: Complex64) -> Result<Complex64> {
        let (k, dk) = self.k_with_deriv(s)?;
        if self.params.is_degenerate() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if k.norm() < K_ZERO_GUARD {
            return Err(Error::NearSingularity {
                class: SingularityClass::Sr,
                location: s,
            });
        }
        Ok(dk / k)
    }

    // -----------------------------------------------------------------
    // J and the product
    // -----------------------------------------------------------------

    /// The four points of S₁ (poles of J).
    pub fn s1_points(&self) -> [Complex64; 4] {
        let t1 = self.params.t1();
        let t2 = self.params.t2();
        let delta = self.params.delta();
        [
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, t1),
            Complex64::new(1.0, -t2),
            Complex64::new(1.0, delta),
        ]
    }

    /// The single point of S̄₁ (zero of J from the doubled-line pole).
    pub fn s1bar_point(&self) -> Complex64 {
        Complex64::new(0.5, 0.5 * self.params.delta())
    }

    /// J(s) = ζ(s)ζ(s−iT₁)ζ(s+iT₂)ζ(s−iδ) / ζ(2s−iδ).
    pub fn j_eval(&self, s: Complex64) -> Result<Complex64> {
        check_finite(s)?;
        for u in self.s1_points() {
            if (s - u).norm() < J_GUARD {
                return Err(Error::NearSingularity {
                    class: SingularityClass::S1,
                    location: u,
                });
            }
        }
        let t1 = self.params.t1();
        let t2 = self.params.t2();
        let delta = self.params.delta();
        let num = zeta(s)?
            * zeta(s - Complex64::new(0.0, t1))?
            * zeta(s + Complex64::new(0.0, t2))?
            * zeta(s - Complex64::new(0.0, delta))?;
        let den_arg = 2.0 * s - Complex64::new(0.0, delta);
        let den = match zeta(den_arg) {
            // The doubled-line pole is a zero of J; the quotient limit is 0.
            Err(Error::PoleAtOne) => return Ok(Complex64::new(0.0, 0.0)),
            other => other?,
        };
        if den.norm() < J_GUARD {
            // A zero of the doubled-line factor: classify trivial vs critical.
            let q = (-den_arg.re / 2.0).round();
            let (class, loc) = if q >= 1.0 && (den_arg.re + 2.0 * q).abs() < 0.3 {
                (
                    SingularityClass::Sm2qbar,
                    Complex64::new(-q, 0.5 * delta),
                )
            } else {
                (SingularityClass::Srhobar, s)
            };
            return Err(Error::NearSingularity {
                class,
                location: loc,
            });
        }
        Ok(num / den)
    }

    /// Z(s) = J(s)·K(s).
    pub fn z_eval(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.j_eval(s)? * self.k_eval(s)?)
    }

    /// f_X(s) = J(s)·K(s) − 1 (the Dirichlet series of Z starting at n = X = z).
    pub fn f_x_eval(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.z_eval(s)? - Complex64::new(1.0, 0.0))
    }

    fn line_log_deriv(
        &self,
        s: Complex64,
        shift: f64,
        zeros: &ZeroTable,
        doubled: bool,
    ) -> Result<Complex64> {
        let delta = self.params.delta();
        let w = if doubled {
            2.0 * s - Complex64::new(0.0, delta)
        } else {
            s - Complex64::new(0.0, shift)
        };
        match zeta_log_deriv(w, zeros) {
            Ok(v) => Ok(if doubled { 2.0 * v } else { v }),
            Err(Error::NearSingularity { class, location }) => {
                // Translate the w-plane singularity back to the s-plane.
                let (class, location) = if doubled {
                    let loc = (location + Complex64::new(0.0, delta)) / 2.0;
                    let cls = match class {
                        SingularityClass::S1 => SingularityClass::S1bar,
                        SingularityClass::Sm2q => SingularityClass::Sm2qbar,
                        _ => SingularityClass::Srhobar,
                    };
                    (cls, loc)
                } else {
                    (class, location + Complex64::new(0.0, shift))
                };
                Err(Error::NearSingularity { class, location })
            }
            Err(e) => Err(e),
        }
    }

    /// Z′/Z(s) = J′/J(s) + K′/K(s), with J′/J as the five ζ′/ζ terms (chain
    /// factor 2 on the doubled line).
    pub fn z_log_deriv(&self, s: Complex64, zeros: &ZeroTable) -> Result<Complex64> {
        check_finite(s)?;
        let t1 = self.params.t1();
        let t2 = self.params.t2();
        let delta = self.params.delta();
        let mut total = self.line_log_deriv(s, 0.0, zeros, false)?;
        total += self.line_log_deriv(s, t1, zeros, false)?;
        total += self.line_log_deriv(s, -t2, zeros, false)?;
        total += self.line_log_deriv(s, delta, zeros, false)?;
        total -= self.line_log_deriv(s, 0.0, zeros, true)?;
        let kld = match self.k_log_deriv(s) {
            Ok(v) => v,
            Err(Error::LocalPole { p, k }) => {
                let lp = (p as f64).ln();
                return Err(Error::NearSingularity {
                    class: SingularityClass::Snu,
                    location: Complex64::new(0.0, PI * k as f64 / lp + 0.5 * delta),
                });
            }
            Err(e) => return Err(e),
        };
        Ok(total + kld)
    }

    // -----------------------------------------------------------------
    // Pole grid of K and the residue filter
    // -----------------------------------------------------------------

    /// Closed-form grid location ν = i(πk/log p + δ/2).
    pub fn nu_location(&self, p: u32, k: i64) -> Complex64 {
        Complex64::new(0.0, PI * k as f64 / (p as f64).ln() + 0.5 * self.params.delta())
    }

    /// Deduplicated candidate pole ordinates with |k| ≤ k_max over all
    /// primes p < z², ascending in Im.
    pub fn pole_candidates(&self, k_max: u32) -> Vec<Complex64> {
        let mut ims: Vec<f64> = Vec::new();
        for &p in &self.primes {
            for k in -(k_max as i64)..=(k_max as i64) {
                ims.push(self.nu_location(p, k).im);
            }
        }
        dedup_sorted(&mut ims);
        ims.into_iter().map(|y| Complex64::new(0.0, y)).collect()
    }

    /// Candidate pole ordinates with Im in [im_min, im_max], every k.
    fn pole_candidates_in(&self, im_min: f64, im_max: f64) -> Vec<Complex64> {
        let half_delta = 0.5 * self.params.delta();
        let mut ims: Vec<f64> = Vec::new();
        for &p in &self.primes {
            let lp = (p as f64).ln();
            let k_lo = ((im_min - half_delta) * lp / PI).floor() as i64;
            let k_hi = ((im_max - half_delta) * lp / PI).ceil() as i64;
            for k in k_lo..=k_hi {
                let y = PI * k as f64 / lp + half_delta;
                if y >= im_min && y <= im_max {
                    ims.push(y);
                }
            }
        }
        dedup_sorted(&mut ims);
        ims.into_iter().map(|y| Complex64::new(0.0, y)).collect()
    }

    /// Whether `candidate` lies on the closed-form pole grid (within 1e-8).
    pub fn is_on_pole_grid(&self, candidate: Complex64) -> bool {
        if candidate.re.abs() >= GRID_TOL {
            return false;
        }
        let y = candidate.im - 0.5 * self.params.delta();
        self.primes.iter().any(|&p| {
            let lp = (p as f64).ln();
            let k = (y * lp / PI).round();
            (y - PI * k / lp).abs() < GRID_TOL
        })
    }

    /// Pole multiplicity of K at a grid candidate, or 0 when the λ_d sum
    /// cancels the pole (the candidate is then outside the genuine pole set).
    ///
    /// Protocol: winding of 1/K on circles of radius 1e-3 and 1e-4 (the two
    /// must agree), plus the circle-mean residue as the smallness screen.
    /// When a zero of K sits between the two circles the orders disagree —
    /// that happens for real whenever a pole's residue is small against the
    /// local regular part, placing a zero at distance ~|res/K_reg| — so on
    /// disagreement the pair shrinks geometrically until the pole is
    /// isolated; only a persistent disagreement is reported inconclusive.
    pub fn residue_filter(&self, candidate: Complex64) -> Result<u32> {
        check_finite(candidate)?;
        if self.params.is_degenerate() {
            // K == 1 identically: no prime grid, no poles.
            if candidate.re.abs() >= GRID_TOL {
                return Err(Error::OffGridCandidate(candidate));
            }
            return Ok(0);
        }
        if !self.is_on_pole_grid(candidate) {
            return Err(Error::OffGridCandidate(candidate));
        }
        let inv_k = |s: Complex64| -> Result<(Complex64, Complex64)> {
            let (k, dk) = self.k_with_deriv(s)?;
            if k.norm_sqr() == 0.0 {
                return Err(Error::BoundaryTooClose("zero of K on filter circle"));
            }
            Ok((k.inv(), -dk / (k * k)))
        };
        let k_fn = |s: Complex64| self.k_eval(s);
        let mut outcome = None;
        let mut radius = 1e-3;
        while radius >= 1e-7 {
            let order_outer = winding_number(&inv_k, &circle_path(candidate, radius, 32))?;
            let order_inner = winding_number(&inv_k, &circle_path(candidate, radius / 10.0, 32))?;
            if order_outer == order_inner {
                outcome = Some((order_outer, radius));
                break;
            }
            radius /= 10.0;
        }
        let Some((order, radius)) = outcome else {
            return Err(Error::Inconclusive(
                "pole order differs between filter radii at every refinement",
            ));
        };
        let residue = circle_mean_residue(&k_fn, candidate, radius, 32)?;
        if residue.norm() < 1e-8 {
            if order <= 0 {
                return Ok(0);
            }
            if order >= 2 {
                return Ok(order as u32); // higher pole with cancelled residue
            }
            return Err(Error::Inconclusive(
                "simple pole indicated but residue vanishes",
            ));
        }
        if order >= 1 {
            Ok(order as u32)
        } else if order == 0 {
            // Nonzero circle mean can come from a regular part over a short
            // circle; trust the winding verdict.
            Ok(0)
        } else {
            Err(Error::Inconclusive(
                "nonzero residue but negative winding at the candidate",
            ))
        }
    }

    /// Genuine poles of K with Im inside [im_min, im_max] and Re = 0 (every
    /// pole of K sits on the grid line), with multiplicities.
    pub fn poles_in_band(&self, im_min: f64, im_max: f64) -> Result<Vec<(Complex64, u32)>> {
        let mut out = Vec::new();
        for cand in self.pole_candidates_in(im_min, im_max) {
            let mult = self.residue_filter(cand)?;
            if mult > 0 {
                out.push((cand, mult));
            }
        }
        Ok(out)
    }

    // -----------------------------------------------------------------
    // Zeros of K by the argument principle
    // -----------------------------------------------------------------

    /// Zeros of K inside `rect`, with multiplicities, by boundary winding
    /// plus recursive subdivision; known poles are subtracted from winding
    /// counts so each final cell isolates at most one zero.
    pub fn find_k_zeros(&self, rect: &RectRegion) -> Result<Vec<(Complex64, u32)>> {
        let (poles, grid) = if rect.re_min <= 0.0 && rect.re_max >= 0.0 {
            (
                self.poles_in_band(rect.im_min - 1e-3, rect.im_max + 1e-3)?,
                self.pole_candidates_in(rect.im_min - 1e-3, rect.im_max + 1e-3),
            )
        } else {
            (Vec::new(), Vec::new())
        };
        // Boundary safety: grid poles must keep their distance, and |K| must
        // not vanish on sampled boundary points.
        self.check_rect_boundary(rect, &poles)?;
        let mut zeros: Vec<(Complex64, u32)> = Vec::new();
        self.zeros_in_cell(rect, &poles, &grid, 0, &mut zeros)?;
        zeros.sort_by(|a, b| {
            (a.0.im, a.0.re)
                .partial_cmp(&(b.0.im, b.0.re))
                .expect("zero locations are finite")
        });
        Ok(zeros)
    }

    fn check_rect_boundary(&self, rect: &RectRegion, poles: &[(Complex64, u32)]) -> Result<()> {
        for (p, _) in poles {
            let d_re = (p.re - rect.re_min)
                .abs()
                .min((p.re - rect.re_max).abs());
            let d_im = (p.im - rect.im_min)
                .abs()
                .min((p.im - rect.im_max).abs());
            let inside_re = p.re > rect.re_min && p.re < rect.re_max;
            let inside_im = p.im > rect.im_min && p.im < rect.im_max;
            let dist = match (inside_re, inside_im) {
                (true, true) => d_re.min(d_im),
                (true, false) => d_im,
                (false, true) => d_re,
                (false, false) => (d_re * d_re + d_im * d_im).sqrt(),
            };
            if dist < 1e-4 {
                return Err(Error::BoundaryTooClose(
                    "a pole of K lies within 1e-4 of the rectangle boundary",
                ));
            }
        }
        let path = rect_path(rect.re_min, rect.re_max, rect.im_min, rect.im_max, 8.0, 16);
        for s in &path {
            let k = match self.k_eval(*s) {
                Ok(k) => k,
                Err(Error::LocalPole { .. }) => {
                    return Err(Error::BoundaryTooClose(
                        "rectangle boundary touches the local-factor grid",
                    ))
                }
                Err(e) => return Err(e),
            };
            if k.norm() < 1e-6 {
                return Err(Error::BoundaryTooClose(
                    "K nearly vanishes on the rectangle boundary",
                ));
            }
        }
        Ok(())
    }

    fn cell_winding(&self, rect: &RectRegion) -> Result<i64> {
        let k_fn = |s: Complex64| self.k_with_deriv(s);
        let path = rect_path(rect.re_min, rect.re_max, rect.im_min, rect.im_max, 8.0, 8);
        winding_number(&k_fn, &path)
    }

    /// Boundary winding number of K around `rect` (zeros minus poles inside,
    /// by the argument principle).
    pub fn k_boundary_winding(&self, rect: &RectRegion) -> Result<i64> {
        self.cell_winding(rect)
    }

    fn zeros_in_cell(
        &self,
        rect: &RectRegion,
        poles: &[(Complex64, u32)],
        grid: &[Complex64],
        depth: u32,
        out: &mut Vec<(Complex64, u32)>,
    ) -> Result<()> {
        if depth > 90 {
            return Err(Error::NonConvergence("cell subdivision depth exceeded"));
        }
        let pole_count: i64 = poles
            .iter()
            .filter(|(p, _)| rect.contains(*p))
            .map(|(_, m)| *m as i64)
            .sum();
        let w = self.cell_winding(rect)?;
        let zero_count = w + pole_count;
        if zero_count < 0 {
            return Err(Error::NonConvergence(
                "negative zero count: pole inventory inconsistent with winding",
            ));
        }
        if zero_count == 0 {
            return Ok(());
        }
        let diam = rect.width().max(rect.height());
        if zero_count == 1 {
            if let Some(z) = self.newton_polish(rect) {
                out.push((z, 1));
                return Ok(());
            }
        }
        if diam < 1e-9 {
            out.push((rect.center(), zero_count as u32));
            return Ok(());
        }
        // Split the longer axis, nudging the cut away from the candidate grid
        // (even an order-zero grid point is a 0/0 of its local factor and
        // cannot be evaluated on a path).
        const FRACTIONS: [f64; 7] = [0.5, 0.53, 0.47, 0.57, 0.43, 0.61, 0.39];
        let split_re = rect.width() >= rect.height();
        let mut last_err = Error::NonConvergence("no admissible cut found");
        'fractions: for f in FRACTIONS {
            let (a, b) = if split_re {
                let cut = rect.re_min + f * rect.width();
                if grid
                    .iter()
                    .any(|p| (p.re - cut).abs() < 1e-6 && p.im > rect.im_min && p.im < rect.im_max)
                {
                    continue 'fractions;
                }
                (
                    RectRegion {
                        re_max: cut,
                        ..*rect
                    },
                    RectRegion {
                        re_min: cut,
                        ..*rect
                    },
                )
            } else {
                let cut = rect.im_min + f * rect.height();
                if grid
                    .iter()
                    .any(|p| (p.im - cut).abs() < 1e-6 && p.re > rect.re_min && p.re < rect.re_max)
                {
                    continue 'fractions;
                }
                (
                    RectRegion {
                        im_max: cut,
                        ..*rect
                    },
                    RectRegion {
                        im_min: cut,
                        ..*rect
                    },
                )
            };
            let snapshot = out.len();
            match self
                .zeros_in_cell(&a, poles, grid, depth + 1, out)
                .and_then(|_| self.zeros_in_cell(&b, poles, grid, depth + 1, out))
            {
                Ok(()) => return Ok(()),
                Err(e @ Error::BoundaryTooClose(_))
                | Err(e @ Error::NonConvergence(_))
                | Err(e @ Error::LocalPole { .. }) => {
                    out.truncate(snapshot);
                    last_err = e;
                    continue 'fractions;
                }
                Err(e) => return Err(e),
            }
        }
        Err(last_err)
    }

    /// Newton iteration on K from the cell center; `None` when it fails to
    /// settle inside the (slightly inflated) cell.
    fn newton_polish(&self, rect: &RectRegion) -> Option<Complex64> {
        let mut s = rect.center();
        let margin_re = 0.2 * rect.width();
        let margin_im = 0.2 * rect.height();
        for _ in 0..60 {
            let (k, dk) = self.k_with_deriv(s).ok()?;
            if dk.norm_sqr() == 0.0 {
                return None;
            }
            let step = k / dk;
            s -= step;
            if s.re < rect.re_min - margin_re
                || s.re > rect.re_max + margin_re
                || s.im < rect.im_min - margin_im
                || s.im > rect.im_max + margin_im
            {
                return None;
            }
            if step.norm() < 1e-13 * (1.0 + s.norm()) {
                let k_final = self.k_eval(s).ok()?;
                if k_final.norm() < 1e-7 && rect.contains(s) {
                    return Some(s);
                }
                return None;
            }
        }
        None
    }

    // -----------------------------------------------------------------
    // Inventory
    // -----------------------------------------------------------------

    /// Every singularity of Z'/Z inside the truncation window: the closed
    /// forms (S₁, S̄₁, shifted ρ and trivial-zero families), the filtered
    /// pole grid of K, and the located zeros of K.
    pub fn enumerate_singularities(
        &self,
        policy: &TruncationPolicy,
        zeros: &ZeroTable,
    ) -> Result<SingularityInventory> {
        // First zero of zeta is above 14; smaller windows need no table.
        if policy.gamma_max >= 14.0 {
            let available = zeros.max_ordinate().unwrap_or(0.0);
            if available < policy.gamma_max {
                return Err(Error::Coverage {
                    requested: policy.gamma_max,
                    available,
                });
            }
        }
        let t1 = self.params.t1();
        let t2 = self.params.t2();
        let delta = self.params.delta();
        let mut points: Vec<SingularityPoint> = Vec::new();

        for u in self.s1_points() {
            points.push(SingularityPoint::new(u, SingularityClass::S1, 1));
        }
        points.push(SingularityPoint::new(
            self.s1bar_point(),
            SingularityClass::S1bar,
            1,
        ));

        let shifted = |rho: Complex64| {
            [
                rho,
                rho + Complex64::new(0.0, t1),
                rho - Complex64::new(0.0, t2),
                rho + Complex64::new(0.0, delta),
            ]
        };
        for g in zeros.ordinates() {
            if *g > policy.gamma_max {
                break;
            }
            for sign in [1.0, -1.0] {
                let rho = Complex64::new(0.5, sign * g);
                for u in shifted(rho) {
                    points.push(SingularityPoint::new(u, SingularityClass::Srho, 1));
                }
                points.push(SingularityPoint::new(
                    rho / 2.0 + Complex64::new(0.0, 0.5 * delta),
                    SingularityClass::Srhobar,
                    1,
                ));
            }
        }

        for q in 1..=policy.q_max {
            let base = Complex64::new(-2.0 * q as f64, 0.0);
            for u in shifted(base) {
                points.push(SingularityPoint::new(u, SingularityClass::Sm2q, 1));
            }
            points.push(SingularityPoint::new(
                Complex64::new(-(q as f64), 0.5 * delta),
                SingularityClass::Sm2qbar,
                1,
            ));
        }

        for cand in self.pole_candidates(policy.k_max) {
            let mult = self.residue_filter(cand)?;
            if mult > 0 {
                points.push(SingularityPoint::new(cand, SingularityClass::Snu, mult));
            }
        }

        for (zero, mult) in self.find_k_zeros(&policy.rect)? {
            points.push(SingularityPoint::new(zero, SingularityClass::Sr, mult));
        }

        points.sort_by(|a, b| {
            (a.class.rank(), a.location.im, a.location.re)
                .partial_cmp(&(b.class.rank(), b.location.im, b.location.re))
                .expect("locations are finite")
        });

        let warnings = collision_warnings(&points);
        Ok(SingularityInventory {
            points,
            truncation: *policy,
            params: self.params,
            warnings,
        })
    }

    // -----------------------------------------------------------------
    // Contour probe for K'/K
    // -----------------------------------------------------------------

    /// Deterministic ordinate in (m + 0.1, m + 0.9) keeping both horizontal
    /// contour legs away from the pole grid of K.
    pub fn select_k_t_m(&self, m: u32) -> f64 {
        let base = m as f64;
        let mut best = base + 0.1;
        let mut best_dist = -1.0;
        for i in 0..64 {
            let t = base + 0.1 + 0.8 * (i as f64) / 63.0;
            let d = self
                .grid_distance(t)
                .min(self.grid_distance(-t));
            if d > best_dist {
                best_dist = d;
                best = t;
            }
        }
        best
    }

    /// Distance from ordinate `y` to the closed-form pole grid.
    fn grid_distance(&self, y: f64) -> f64 {
        let yy = y - 0.5 * self.params.delta();
        let mut best = f64::INFINITY;
        for &p in &self.primes {
            let lp = (p as f64).ln();
            let k = (yy * lp / PI).round();
            best = best.min((yy - PI * k / lp).abs());
        }
        best
    }

    /// Empirical sup of |K′/K(s)|/m on the contour σ ∈ [−m, 3] at t = ±T_m
    /// plus σ = −m, |t| < T_m. Diagnostic; 0 for the degenerate mollifier.
    pub fn probe_k_contour_bound(&self, m: u32, samples: usize) -> Result<f64> {
        if m == 0 || m > 50 {
            return Err(Error::InvalidParameter("m must lie in 1..=50"));
        }
        if samples < 4 {
            return Err(Error::InvalidParameter("samples must be at least 4"));
        }
        if self.params.is_degenerate() {
            return Ok(0.0);
        }
        let t_m = self.select_k_t_m(m);
        let sigma_m = -(m as f64);
        let alpha = 3.0;
        let mut sup: f64 = 0.0;
        let mut eval = |s: Complex64| -> Result<()> {
            let (k, dk) = self.k_with_deriv(s)?;
            if k.norm() > 0.0 {
                let r = (dk / k).norm() / m as f64;
                if r > sup {
                    sup = r;
                }
            }
            Ok(())
        };
        for i in 0..samples {
            let sigma = sigma_m + (alpha - sigma_m) * (i as f64) / (samples - 1) as f64;
            eval(Complex64::new(sigma, t_m))?;
            eval(Complex64::new(sigma, -t_m))?;
        }
        for i in 1..samples {
            let t = -t_m + 2.0 * t_m * (i as f64) / samples as f64;
            eval(Complex64::new(sigma_m, t))?;
        }
        Ok(sup)
    }
}

/// Sorts and merges values within 1e-12 of each other.
fn dedup_sorted(vals: &mut Vec<f64>) {
    vals.sort_by(|a, b| a.partial_cmp(b).expect("finite ordinates"));
    vals.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
}

/// Cross-family near-coincidences within 1e-8 (reported, never merged).
fn collision_warnings(points: &[SingularityPoint]) -> Vec<CollisionWarning> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        (points[i].location.im, points[i].location.re)
            .partial_cmp(&(points[j].location.im, points[j].location.re))
            .expect("finite")
    });
    let mut warnings = Vec::new();
    for (a, &i) in order.iter().enumerate() {
        for &j in order.iter().skip(a + 1) {
            let d_im = points[j].location.im - points[i].location.im;
            if d_im > 1e-8 {
                break;
            }
            if points[i].class == points[j].class {
                continue;
            }
            let dist = (points[i].location - points[j].location).norm();
            if dist < 1e-8 {
                warnings.push(CollisionWarning {
                    first: points[i],
                    second: points[j],
                    distance: dist,
                });
            }
        }
    }
    warnings
}
