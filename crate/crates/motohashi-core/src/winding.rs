//! Argument-principle plumbing: winding numbers along closed paths and
//! circle-mean residue estimates. Shared by the pole filter, the K-zero
//! search, and the density counter.
//!
//! Winding numbers integrate f′/f with adaptive Simpson instead of tracking
//! sampled phases: a phase tracker silently loses ±2π when a zero/pole pair
//! straddles the path inside one step, while |f′/f| ≈ 1/distance spikes are
//! visible to the subdivision criterion at every sampling density.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// f64 math through the trait in no_std builds; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Maximum bisection depth per segment.
const MAX_DEPTH: u32 = 48;
/// Subdivide while |f'/f|·h exceeds this (proximity to a zero/pole).
const PROXIMITY: f64 = 0.2;
/// Simpson-vs-trapezoid refinement tolerance per segment.
const SEG_TOL: f64 = 5e-4;

fn log_deriv_at<F>(f: &F, s: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<(Complex64, Complex64)>,
{
    let (v, dv) = f(s)?;
    if !v.re.is_finite() || !v.im.is_finite() || !dv.re.is_finite() || !dv.im.is_finite() {
        return Err(Error::BoundaryTooClose("non-finite value on path"));
    }
    if v.norm_sqr() == 0.0 {
        return Err(Error::BoundaryTooClose("exact zero on path"));
    }
    Ok(dv / v)
}

fn segment_integral<F>(
    f: &F,
    a: Complex64,
    ga: Complex64,
    b: Complex64,
    gb: Complex64,
    depth: u32,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<(Complex64, Complex64)>,
{
    let m = 0.5 * (a + b);
    let gm = log_deriv_at(f, m)?;
    let h = (b - a).norm();
    let peak = ga.norm().max(gm.norm()).max(gb.norm());
    let simpson = (b - a) * (ga + 4.0 * gm + gb) / 6.0;
    let trapezoid = (b - a) * (ga + gb) / 2.0;
    let refine = peak * h > PROXIMITY || (simpson - trapezoid).norm() > SEG_TOL;
    if !refine {
        return Ok(simpson);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::NonConvergence(
            "winding quadrature depth exceeded (path grazes a zero or pole)",
        ));
    }
    Ok(segment_integral(f, a, ga, m, gm, depth + 1)?
        + segment_integral(f, m, gm, b, gb, depth + 1)?)
}

/// Winding number of `f` along the closed polyline `path`: the argument
/// principle integral (1/2πi)∮ f′/f ds, rounded with tolerance 0.1.
///
/// `f` returns the value together with its derivative.
pub(crate) fn winding_number<F>(f: &F, path: &[Complex64]) -> Result<i64>
where
    F: Fn(Complex64) -> Result<(Complex64, Complex64)>,
{
    if path.len() < 3 {
        return Err(Error::InvalidParameter("path needs at least 3 points"));
    }
    let mut values = Vec::with_capacity(path.len());
    for &s in path {
        values.push(log_deriv_at(f, s)?);
    }
    let mut integral = Complex64::new(0.0, 0.0);
    for i in 0..path.len() {
        let j = (i + 1) % path.len();
        integral += segment_integral(f, path[i], values[i], path[j], values[j], 0)?;
    }
    let turns = integral.im / (2.0 * PI);
    let rounded = turns.round();
    // The real part of the closed integral is log|f| drift: zero for a true
    // closed path, so treat a large value as a failed quadrature too.
    if (turns - rounded).abs() > 0.1 || integral.re.abs() / (2.0 * PI) > 0.1 {
        return Err(Error::NonConvergence(
            "winding integral did not settle to an integer",
        ));
    }
    Ok(rounded as i64)
}

/// Axis-aligned rectangle path, counterclockwise, sampled with at least
/// `min_per_edge` points per edge and roughly `per_unit` points per unit
/// length.
pub(crate) fn rect_path(
    re_min: f64,
    re_max: f64,
    im_min: f64,
    im_max: f64,
    per_unit: f64,
    min_per_edge: usize,
) -> Vec<Complex64> {
    let corners = [
        (re_min, im_min),
        (re_max, im_min),
        (re_max, im_max),
        (re_min, im_max),
    ];
    let mut path = Vec::new();
    for i in 0..4 {
        let (x0, y0) = corners[i];
        let (x1, y1) = corners[(i + 1) % 4];
        let len = ((x1 - x0).abs() + (y1 - y0).abs()).max(1e-12);
        let n = ((len * per_unit).ceil() as usize).max(min_per_edge);
        for k in 0..n {
            let t = k as f64 / n as f64;
            path.push(Complex64::new(x0 + (x1 - x0) * t, y0 + (y1 - y0) * t));
        }
    }
    path
}

/// Uniform circle path, counterclockwise.
pub(crate) fn circle_path(center: Complex64, radius: f64, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let th = 2.0 * PI * k as f64 / n as f64;
            center + radius * Complex64::new(th.cos(), th.sin())
        })
        .collect()
}

/// Trapezoid mean of (s − center)·f(s) over a circle: exactly the residue of
/// f at `center` when the circle encloses no other singularity (the trapezoid
/// rule converges geometrically on periodic analytic integrands).
pub(crate) fn circle_mean_residue<F>(
    f: &F,
    center: Complex64,
    radius: f64,
    n: usize,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for s in circle_path(center, radius, n) {
        let v = f(s)?;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::BoundaryTooClose("non-finite value on circle"));
        }
        acc += (s - center) * v;
    }
    Ok(acc / n as f64)
}
