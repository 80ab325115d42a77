//! Independent numerical checks.
//!
//! Nothing here uses the closed-form slope formulas. The slope field is rebuilt
//! from the inner products of the surface partials, its roots come from a
//! numerically stable quadratic solver, and `v(u)` is traced by fixed-step RK4.

use crate::error::{LoxError, Result};
use crate::loxodrome::{assemble, scan_interval, Formula, LoxodromeCase, LoxodromeProblem, SampledCurve};
use crate::minkowski::{causal_character, lorentzian_angle, AngleKind, CausalCharacter, MinkowskiVector};
use crate::profile::Sign;
use crate::surface::{HelicoidalSurface, MetricCoefficients};

/// Total RK4 steps across the whole interval (before rounding up per segment).
pub const RK4_STEPS: usize = 4096;
const LINEAR_TOL: f64 = 1e-12;

/// Slope quadratic from raw metric values:
/// `(E + F r)² + k |E| (E + 2F r + G r²) = 0`, with `k = sinh² φ0` when `x_u` is
/// spacelike and `k = cosh² φ0` when it is timelike.
pub fn quadratic_from_metric(m: &MetricCoefficients, phi0: f64) -> (f64, f64, f64) {
    let k = if m.e > 0.0 { phi0.sinh().powi(2) } else { phi0.cosh().powi(2) };
    let ke = k * m.e.abs();
    (m.f * m.f + ke * m.g, 2.0 * m.f * (m.e + ke), m.e * m.e + ke * m.e)
}

/// Roots of `a r² + b r + c` as `(larger, smaller)`; a single root is repeated.
pub fn stable_roots(a: f64, b: f64, c: f64, u: f64) -> Result<(f64, f64)> {
    if a.abs() <= LINEAR_TOL {
        if b.abs() <= LINEAR_TOL {
            return Err(LoxError::VanishingCoefficients { u });
        }
        let r = -c / b;
        return Ok((r, r));
    }
    let mut disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        if disc > -1e-12 * (b * b + (4.0 * a * c).abs()) {
            disc = 0.0;
        } else {
            return Err(LoxError::NegativeRadicand { u, value: disc });
        }
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / a, c / q) };
    Ok((r1.max(r2), r1.min(r2)))
}

fn field_slope(surface: &HelicoidalSurface, phi0: f64, branch: Sign, u: f64, v: f64) -> Result<(f64, f64)> {
    let m = surface.metric_from_partials(u, v)?;
    let (a, b, c) = quadratic_from_metric(&m, phi0);
    let (hi, lo) = stable_roots(a, b, c, u)?;
    let r = match branch {
        Sign::Plus => hi,
        Sign::Minus => lo,
    };
    if !r.is_finite() {
        return Err(LoxError::NonFiniteIntegrand { u });
    }
    Ok((r, b * b - 4.0 * a * c))
}

/// Traces the loxodrome slope field with classical RK4 and reports the same
/// per-sample diagnostics as the closed-form solver.
pub fn integrate_ode(problem: &LoxodromeProblem) -> Result<SampledCurve> {
    let surface = &problem.surface;
    scan_interval(surface, problem.u0, problem.u1, problem.samples)?;
    let (phi0, branch) = (problem.phi0, problem.branch);
    let slope = |u: f64, v: f64| field_slope(surface, phi0, branch, u, v).map(|(r, _)| r);

    let us = problem.grid();
    let substeps = if us.len() > 1 { RK4_STEPS.div_ceil(us.len() - 1) } else { 0 };
    let mut vs = Vec::with_capacity(us.len());
    let mut v = problem.v0;
    vs.push(v);
    for pair in us.windows(2) {
        let h = (pair[1] - pair[0]) / substeps as f64;
        for step in 0..substeps {
            let u = pair[0] + h * step as f64;
            let k1 = slope(u, v)?;
            let k2 = slope(u + 0.5 * h, v + 0.5 * h * k1)?;
            let k3 = slope(u + 0.5 * h, v + 0.5 * h * k2)?;
            let k4 = slope(u + h, v + h * k3)?;
            v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        vs.push(v);
    }

    let case = LoxodromeCase { family: surface.family(), meridian: surface.epsilon(), formula: Formula::SlopeField };
    let v_at = |u: f64| us.iter().position(|&x| x == u).map_or(problem.v0, |i| vs[i]);
    let slope_at = |u: f64| slope(u, v_at(u)).unwrap_or(f64::NAN);
    let radicand_at = |u: f64| field_slope(surface, phi0, branch, u, v_at(u)).map_or(f64::NAN, |(_, d)| d);
    assemble(problem, case, &us, &vs, slope_at, radicand_at)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleProfile {
    pub angles: Vec<f64>,
    pub kinds: Vec<AngleKind>,
    pub max_abs_deviation: f64,
    pub mean_abs_deviation: f64,
    /// Samples without a finite slope (singular interval ends).
    pub skipped: usize,
}

/// Angle between `x_u` and the curve tangent at every sample, measured from the
/// analytic partials at the sampled `(u, v)`.
pub fn angle_profile(surface: &HelicoidalSurface, curve: &SampledCurve) -> Result<AngleProfile> {
    let expected = match surface.epsilon() {
        Sign::Plus => AngleKind::SpacelikeTimelike,
        Sign::Minus => AngleKind::TimelikeTimelike,
    };
    let mut angles = Vec::with_capacity(curve.len());
    let mut kinds = Vec::with_capacity(curve.len());
    let mut skipped = 0;
    for s in &curve.samples {
        if !s.slope.is_finite() {
            skipped += 1;
            continue;
        }
        let (xu, xv) = surface.partials(s.u, s.v)?;
        let tangent = &xu + &(&xv * s.slope);
        if causal_character(&tangent) == CausalCharacter::Lightlike {
            return Err(LoxError::LightlikeOrZero);
        }
        let angle = lorentzian_angle(&xu, &tangent)?;
        if angle.kind != expected {
            return Err(LoxError::CausalPatternMismatch { u: s.u });
        }
        angles.push(angle.theta);
        kinds.push(angle.kind);
    }
    let deviations: Vec<f64> = angles.iter().map(|a| (a - curve.phi0).abs()).collect();
    let max_abs_deviation = deviations.iter().copied().fold(0.0, f64::max);
    let mean_abs_deviation =
        if deviations.is_empty() { 0.0 } else { deviations.iter().sum::<f64>() / deviations.len() as f64 };
    Ok(AngleProfile { angles, kinds, max_abs_deviation, mean_abs_deviation, skipped })
}

/// Composite Simpson on the sampled speed `√|E + 2F v' + G v'²|`, with the metric
/// taken from the analytic partials. Handles nonuniform spacing and an odd
/// number of intervals.
pub fn numeric_length(surface: &HelicoidalSurface, curve: &SampledCurve) -> Result<f64> {
    if curve.len() < 3 {
        return Err(LoxError::TooFewSamples { needed: 3, got: curve.len() });
    }
    let mut xs = Vec::with_capacity(curve.len());
    let mut ys = Vec::with_capacity(curve.len());
    for s in &curve.samples {
        let m = surface.metric_from_partials(s.u, s.v)?;
        let y = m.quadratic_form(s.slope).abs().sqrt();
        if !y.is_finite() {
            return Err(LoxError::NonFiniteIntegrand { u: s.u });
        }
        xs.push(s.u);
        ys.push(y);
    }
    Ok(simpson_nonuniform(&xs, &ys).abs())
}

pub fn simpson_nonuniform(xs: &[f64], ys: &[f64]) -> f64 {
    let intervals = xs.len() - 1;
    let mut total = 0.0;
    let mut i = 0;
    while i + 2 <= intervals {
        let (h0, h1) = (xs[i + 1] - xs[i], xs[i + 2] - xs[i + 1]);
        let sum = h0 + h1;
        total += sum / 6.0
            * ((2.0 - h1 / h0) * ys[i] + sum * sum / (h0 * h1) * ys[i + 1] + (2.0 - h0 / h1) * ys[i + 2]);
        i += 2;
    }
    if intervals % 2 == 1 {
        let n = intervals;
        let (h0, h1) = (xs[n - 1] - xs[n - 2], xs[n] - xs[n - 1]);
        let alpha = (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1));
        let beta = (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0);
        let eta = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
        total += alpha * ys[n] + beta * ys[n - 1] - eta * ys[n - 2];
    }
    total
}

/// Central differences of the embedding.
pub fn finite_difference_partials(
    surface: &HelicoidalSurface,
    u: f64,
    v: f64,
    h: f64,
) -> Result<(MinkowskiVector, MinkowskiVector)> {
    if !(h.is_finite() && h > 0.0) {
        return Err(LoxError::InvalidStep(h));
    }
    let scale = 0.5 / h;
    let xu = &(&surface.embed(u + h, v)? - &surface.embed(u - h, v)?) * scale;
    let xv = &(&surface.embed(u, v + h)? - &surface.embed(u, v - h)?) * scale;
    Ok((xu, xv))
}
