//! Randomized unit-speed profiles for every (family, ε) case.
//!
//! One coordinate is solved from the unit-speed condition. When its value enters
//! the metric it is kept in closed form and another coordinate absorbs the
//! balance; balancing coordinates whose values only enter the embedding are
//! integrated numerically from their derivatives.

#![allow(dead_code)]

use std::sync::Arc;

use loxhelix::quadrature::integrate;
use loxhelix::{ode_coefficients, Component, Domain, Family, FunctionSpec, HelicoidalSurface, ProfileCurve, Sign};
use rand::Rng;

pub const DOMAIN: (f64, f64) = (0.0, 1.0);

type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

pub fn domain() -> Domain {
    Domain::new(DOMAIN.0, DOMAIN.1).unwrap()
}

/// `a sin(w u + p) + b`
pub fn wave(a: f64, w: f64, p: f64, b: f64) -> Component {
    FunctionSpec::Sine { amplitude: a, frequency: w, phase: p, offset: b }.into()
}

pub fn linear(slope: f64, offset: f64) -> Component {
    FunctionSpec::Linear { slope, offset }.into()
}

pub fn constant(x: f64) -> Component {
    FunctionSpec::Constant(x).into()
}

/// Component with derivative `d` and value `∫_{start}^{u} d`.
pub fn integrated(d: Scalar) -> Component {
    let dv = d.clone();
    Component::custom(
        move |u| integrate(|t| dv(t), DOMAIN.0, u, 1e-13).unwrap_or(f64::NAN),
        move |u| d(u),
    )
}

/// `q u + b + a sin(w u)` with its derivative, both in closed form.
fn ramp(q: f64, b: f64, a: f64, w: f64) -> (Component, Scalar) {
    let d: Scalar = Arc::new(move |u: f64| q + a * w * (w * u).cos());
    let dc = d.clone();
    (Component::custom(move |u| q * u + b + a * (w * u).sin(), move |u| dc(u)), d)
}

fn sine_derivative(a: f64, w: f64, p: f64) -> Scalar {
    Arc::new(move |u: f64| a * w * (w * u + p).cos())
}

#[derive(Clone)]
pub struct RandomCase {
    pub surface: HelicoidalSurface,
    pub phi0: f64,
    pub branch: Sign,
    pub v0: f64,
}

fn candidate<R: Rng>(family: Family, eps: Sign, dim: usize, rng: &mut R) -> Option<(HelicoidalSurface, f64)> {
    let extra = dim - 4;
    let smalls: Vec<f64> = (0..extra).map(|_| rng.gen_range(-0.2..0.2)).collect();
    let small_sq: f64 = smalls.iter().map(|x| x * x).sum();
    let small_slots = || smalls.iter().map(|&l| linear(l, 0.0)).collect::<Vec<_>>();
    let (aw, ww, pw) = (rng.gen_range(0.05..0.3), rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU));
    let wave_d = sine_derivative(aw, ww, pw);
    let c: f64;
    let comps: Vec<Component> = match (family, eps) {
        (Family::I, Sign::Plus) => {
            // x1 wave, xn ramp, x3 balances
            c = rng.gen_range(1.5..3.0);
            let x1 = wave(aw, ww, pw, rng.gen_range(-0.5..0.5));
            let (xn, dn) = ramp(rng.gen_range(0.3..0.8), 0.0, rng.gen_range(0.0..0.2), rng.gen_range(0.5..1.5));
            let wd = wave_d.clone();
            let x3 = integrated(Arc::new(move |u| (1.0 + dn(u).powi(2) - wd(u).powi(2) - small_sq).sqrt()));
            [vec![x1, x3], small_slots(), vec![xn]].concat()
        }
        (Family::I, Sign::Minus) => {
            // x1 wave, x3 wave, xn balances
            c = rng.gen_range(0.5..2.0);
            let x1 = wave(aw, ww, pw, rng.gen_range(-2.0..2.0));
            let (a3, w3, p3) = (rng.gen_range(0.0..0.5), rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU));
            let x3 = wave(a3, w3, p3, 0.0);
            let d3 = sine_derivative(a3, w3, p3);
            let wd = wave_d.clone();
            let xn = integrated(Arc::new(move |u| (1.0 + wd(u).powi(2) + d3(u).powi(2) + small_sq).sqrt()));
            [vec![x1, x3], small_slots(), vec![xn]].concat()
        }
        (Family::II, Sign::Plus) => {
            // x1 steep line, xn ramp, x2 balances
            c = rng.gen_range(2.0..4.0);
            let s = rng.gen_range(1.15..1.3);
            let x1 = linear(s, rng.gen_range(-1.0..1.0));
            let q = rng.gen_range(1.05..1.25);
            let (xn, dn) = ramp(q, -0.5 * q, rng.gen_range(0.0..0.1), rng.gen_range(0.5..1.5));
            let x2 = integrated(Arc::new(move |u| (1.0 + dn(u).powi(2) - s * s - small_sq).sqrt()));
            [vec![x1, x2], small_slots(), vec![xn]].concat()
        }
        (Family::II, Sign::Minus) => {
            // x1 wave, xn ramp, x2 balances
            c = rng.gen_range(0.5..2.0);
            let x1 = wave(aw, ww, pw, rng.gen_range(-1.0..1.0));
            let (xn, dn) = ramp(rng.gen_range(1.5..2.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.0..0.1),
                rng.gen_range(0.5..1.5));
            let wd = wave_d.clone();
            let x2 = integrated(Arc::new(move |u| (dn(u).powi(2) - 1.0 - wd(u).powi(2) - small_sq).sqrt()));
            [vec![x1, x2], small_slots(), vec![xn]].concat()
        }
        (Family::III, _) => {
            // x1 wave, xn ramp, x_{n-1} balances
            let q = rng.gen_range(0.8..1.2);
            let (xn, dn) = match eps {
                Sign::Plus => {
                    c = rng.gen_range(2.0..3.0);
                    ramp(q, -0.5 * q, rng.gen_range(0.0..0.1), rng.gen_range(0.5..1.5))
                }
                Sign::Minus => {
                    c = rng.gen_range(0.5..2.0);
                    ramp(q, rng.gen_range(-1.0..1.0), rng.gen_range(0.0..0.1), rng.gen_range(0.5..1.5))
                }
            };
            let x1 = wave(aw, ww, pw, rng.gen_range(-1.0..1.0));
            let e = eps.value();
            let wd = wave_d.clone();
            let xm = integrated(Arc::new(move |u| (wd(u).powi(2) + small_sq - e) / (2.0 * dn(u))));
            // slots 1, 3..n-2 (small), n-1, n
            [vec![x1], small_slots(), vec![xm, xn]].concat()
        }
    };
    let profile = ProfileCurve::new(family, dim, comps, eps, domain()).ok()?;
    Some((HelicoidalSurface::new(profile, c).ok()?, c))
}

/// Strictly timelike on a dense grid with a leading coefficient of fixed sign,
/// bounded away from zero: the setting of the general closed form.
pub fn admissible(surface: &HelicoidalSurface, phi0: f64) -> bool {
    let mut sign = 0.0;
    for i in 0..=1000 {
        let u = DOMAIN.0 + (DOMAIN.1 - DOMAIN.0) * i as f64 / 1000.0;
        let d = surface.metric_coefficients(u).unwrap().discriminant();
        if d.is_nan() || d >= -1e-6 {
            return false;
        }
        let a = match ode_coefficients(surface, phi0, u) {
            Ok(q) => q.a,
            Err(_) => return false,
        };
        if a.abs() < 1e-6 || (sign != 0.0 && a.signum() != sign) {
            return false;
        }
        sign = a.signum();
    }
    true
}

pub fn random_case<R: Rng>(family: Family, eps: Sign, dim: usize, rng: &mut R) -> RandomCase {
    for _ in 0..10_000 {
        let phi0 = rng.gen_range(0.3..1.5);
        if let Some((surface, _)) = candidate(family, eps, dim, rng) {
            if admissible(&surface, phi0) {
                let branch = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                return RandomCase { surface, phi0, branch, v0: rng.gen_range(-1.0..1.0) };
            }
        }
    }
    panic!("no admissible profile for {family} {eps} n={dim}");
}

pub const CASES: [(Family, Sign); 6] = [
    (Family::I, Sign::Plus),
    (Family::I, Sign::Minus),
    (Family::II, Sign::Plus),
    (Family::II, Sign::Minus),
    (Family::III, Sign::Plus),
    (Family::III, Sign::Minus),
];
