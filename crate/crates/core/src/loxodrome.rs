//! Timelike loxodromes on timelike helicoidal surfaces.
//!
//! A curve `u ↦ (u, v(u))` meets every meridian `v = const` at the constant
//! Lorentzian angle φ0 exactly when its slope `r = dv/du` solves a quadratic
//! `A r² + B r + C = 0` whose coefficients depend on the family, the meridian
//! sign ε and the profile. `v(u)` is then the integral of the selected root.
//!
//! Branch convention: `Sign::Plus` selects the larger of the two slopes. For
//! `A > 0` this is the `+√` root; for `A < 0` it is the `-√` root, which keeps the
//! general formula and the right-helicoidal closed forms on the same branch.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LoxError, Result};
use crate::minkowski::{classify_value, lorentzian_angle, CausalCharacter, MinkowskiVector, DEFAULT_CAUSAL_TOL};
use crate::profile::{linspace, Family, Sign};
use crate::quadrature::{AdaptiveQuadrature, DEFAULT_TOL};
use crate::surface::HelicoidalSurface;

pub const DEFAULT_SAMPLES: usize = 257;
/// `|A|` below this is treated as an identically vanishing leading coefficient.
pub const DEGENERATE_TOL: f64 = 1e-12;
/// `|EG - F²|` below this at an interval end counts as an allowed endpoint zero.
pub const ENDPOINT_ZERO_TOL: f64 = 1e-12;
const SCAN_POINTS: usize = 1025;

/// The constant angle, given directly or through one of its hyperbolic functions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleInput {
    Phi0(f64),
    SinhPhi0(f64),
    CoshPhi0(f64),
    TanhPhi0(f64),
    CothPhi0(f64),
}

impl AngleInput {
    pub fn phi0(self) -> Result<f64> {
        let bad = |name, value| Err(LoxError::InvalidAngleFunction { name, value });
        let phi = match self {
            AngleInput::Phi0(p) => p,
            AngleInput::SinhPhi0(s) if s > 0.0 && s.is_finite() => s.asinh(),
            AngleInput::SinhPhi0(s) => return bad("sinh(phi0)", s),
            AngleInput::CoshPhi0(c) if c > 1.0 && c.is_finite() => c.acosh(),
            AngleInput::CoshPhi0(c) => return bad("cosh(phi0)", c),
            AngleInput::TanhPhi0(t) if t > 0.0 && t < 1.0 => t.atanh(),
            AngleInput::TanhPhi0(t) => return bad("tanh(phi0)", t),
            AngleInput::CothPhi0(c) if c > 1.0 && c.is_finite() => (1.0 / c).atanh(),
            AngleInput::CothPhi0(c) => return bad("coth(phi0)", c),
        };
        check_phi0(phi)?;
        Ok(phi)
    }
}

fn check_phi0(phi0: f64) -> Result<()> {
    if phi0.is_finite() && phi0 > 0.0 {
        Ok(())
    } else {
        Err(LoxError::InvalidAngle(phi0))
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Hyperbolic {
    pub sinh: f64,
    pub cosh: f64,
    pub sinh2: f64,
    pub cosh2: f64,
    /// sinh²(2φ0)
    pub sinh_double2: f64,
}

impl Hyperbolic {
    pub fn new(phi0: f64) -> Self {
        let (sinh, cosh) = (phi0.sinh(), phi0.cosh());
        let sd = (2.0 * phi0).sinh();
        Self { sinh, cosh, sinh2: sinh * sinh, cosh2: cosh * cosh, sinh_double2: sd * sd }
    }
}

#[derive(Clone, Debug)]
pub struct LoxodromeProblem {
    pub surface: HelicoidalSurface,
    pub phi0: f64,
    pub branch: Sign,
    pub u0: f64,
    pub v0: f64,
    pub u1: f64,
    pub tolerance: f64,
    pub samples: usize,
}

impl LoxodromeProblem {
    pub fn new(surface: HelicoidalSurface, phi0: f64, u0: f64, v0: f64, u1: f64) -> Result<Self> {
        check_phi0(phi0)?;
        let domain = surface.profile().domain();
        domain.check(u0)?;
        domain.check(u1)?;
        if !v0.is_finite() {
            return Err(LoxError::NonFinite("v0"));
        }
        Ok(Self { surface, phi0, branch: Sign::Plus, u0, v0, u1, tolerance: DEFAULT_TOL, samples: DEFAULT_SAMPLES })
    }

    pub fn with_branch(mut self, branch: Sign) -> Self {
        self.branch = branch;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(LoxError::InvalidTolerance(tolerance));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn with_samples(mut self, samples: usize) -> Result<Self> {
        if samples < 2 {
            return Err(LoxError::TooFewSamples { needed: 2, got: samples });
        }
        self.samples = samples;
        Ok(self)
    }

    /// Output grid from `u0` to `u1`; a single point when they coincide.
    pub fn grid(&self) -> Vec<f64> {
        if self.u0 == self.u1 {
            vec![self.u0]
        } else {
            linspace(self.u0, self.u1, self.samples)
        }
    }

    pub(crate) fn hyperbolic(&self) -> Hyperbolic {
        Hyperbolic::new(self.phi0)
    }
}

/// `A r² + B r + C` with `r = dv/du`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl QuadraticCoefficients {
    pub fn eval(&self, r: f64) -> f64 {
        (self.a * r + self.b) * r + self.c
    }
}

/// The slopes available at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SlopeRoots {
    /// Vanishing leading coefficient: one linear root.
    Single(f64),
    /// `plus` is the larger root.
    Pair { plus: f64, minus: f64 },
}

impl SlopeRoots {
    pub fn select(self, branch: Sign) -> f64 {
        match (self, branch) {
            (SlopeRoots::Single(r), _) => r,
            (SlopeRoots::Pair { plus, .. }, Sign::Plus) => plus,
            (SlopeRoots::Pair { minus, .. }, Sign::Minus) => minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    /// Root of the quadratic with nonvanishing leading coefficient.
    General,
    /// Leading coefficient vanishes identically (type I only).
    Degenerate,
    /// Right helicoidal closed form.
    RightHelicoidal,
    /// Raw slope field traced by the independent oracle.
    SlopeField,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LoxodromeCase {
    pub family: Family,
    pub meridian: Sign,
    pub formula: Formula,
}

impl fmt::Display for LoxodromeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let meridian = match self.meridian {
            Sign::Plus => "spacelike",
            Sign::Minus => "timelike",
        };
        let suffix = match self.formula {
            Formula::General => "",
            Formula::Degenerate => "-null-leading-coefficient",
            Formula::RightHelicoidal => "-right-helicoidal",
            Formula::SlopeField => "-slope-field",
        };
        write!(f, "type-{}-{}-meridian{}", self.family, meridian, suffix)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveSample {
    pub u: f64,
    pub v: f64,
    /// `dv/du` used by the solver at this sample.
    pub slope: f64,
    pub point: MinkowskiVector,
    pub radicand: f64,
    /// `<α', α'>` for `α' = x_u + (dv/du) x_v`.
    pub tangent_inner: f64,
    pub causal: CausalCharacter,
    /// Lorentzian angle between `x_u` and `α'`; NaN where undefined.
    pub angle: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampledCurve {
    pub case: LoxodromeCase,
    pub branch: Sign,
    pub phi0: f64,
    pub samples: Vec<CurveSample>,
}

impl SampledCurve {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn us(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.u).collect()
    }

    pub fn vs(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.v).collect()
    }

    pub fn last(&self) -> &CurveSample {
        self.samples.last().expect("curves have at least one sample")
    }

    pub fn all_timelike(&self) -> bool {
        self.samples.iter().all(|s| s.causal == CausalCharacter::Timelike)
    }
}

/// Leading, linear and constant coefficients of the slope quadratic at `u`.
pub fn ode_coefficients(surface: &HelicoidalSurface, phi0: f64, u: f64) -> Result<QuadraticCoefficients> {
    check_phi0(phi0)?;
    require_timelike(surface, u)?;
    Ok(coefficients_unchecked(surface, &Hyperbolic::new(phi0), u))
}

fn require_timelike(surface: &HelicoidalSurface, u: f64) -> Result<()> {
    let d = surface.metric_coefficients(u)?.discriminant();
    if d < 0.0 {
        Ok(())
    } else {
        Err(LoxError::NotTimelike { u, discriminant: d })
    }
}

pub(crate) fn coefficients_unchecked(surface: &HelicoidalSurface, h: &Hyperbolic, u: f64) -> QuadraticCoefficients {
    let p = surface.profile();
    let n = surface.dim();
    let c = surface.pitch();
    let c2 = c * c;
    // (ε = +1) and (ε = -1) rows share the shape with sinh² and cosh² swapped
    let (lead, cross, constant) = match surface.epsilon() {
        Sign::Plus => (h.sinh2, h.cosh2, h.cosh2),
        Sign::Minus => (h.cosh2, h.sinh2, -h.sinh2),
    };
    match surface.family() {
        Family::I => {
            let (x1, dxn) = (p.x(1, u), p.dx(n, u));
            QuadraticCoefficients {
                a: lead * (x1 * x1 - c2) + c2 * dxn * dxn,
                b: -2.0 * c * cross * dxn,
                c: constant,
            }
        }
        Family::II => {
            let (dx1, xn) = (p.dx(1, u), p.x(n, u));
            QuadraticCoefficients {
                a: lead * (xn * xn + c2) + c2 * dx1 * dx1,
                b: 2.0 * c * cross * dx1,
                c: constant,
            }
        }
        Family::III => {
            let (xn, dxn) = (p.x(n, u), p.dx(n, u));
            QuadraticCoefficients {
                a: 2.0 * lead * xn * xn + c2 * dxn * dxn,
                b: -2.0 * c * cross * dxn,
                c: constant,
            }
        }
    }
}

/// Closed-form slope pieces for `A ≠ 0`: `r = (linear ± √radicand) / denominator`,
/// where `denominator = 2A`.
struct GeneralTerms {
    linear: f64,
    radicand: f64,
    denominator: f64,
}

fn general_terms(surface: &HelicoidalSurface, h: &Hyperbolic, u: f64) -> GeneralTerms {
    let p = surface.profile();
    let n = surface.dim();
    let c = surface.pitch();
    let c2 = c * c;
    let s2 = h.sinh_double2;
    match (surface.family(), surface.epsilon()) {
        (Family::I, Sign::Plus) => {
            let (x1, dxn) = (p.x(1, u), p.dx(n, u));
            GeneralTerms {
                linear: 2.0 * c * h.cosh2 * dxn,
                radicand: s2 * (c2 * (dxn * dxn + 1.0) - x1 * x1),
                denominator: 2.0 * h.sinh2 * (x1 * x1 - c2) + 2.0 * c2 * dxn * dxn,
            }
        }
        (Family::I, Sign::Minus) => {
            let (x1, dxn) = (p.x(1, u), p.dx(n, u));
            GeneralTerms {
                linear: 2.0 * c * h.sinh2 * dxn,
                radicand: s2 * (c2 * (dxn * dxn - 1.0) + x1 * x1),
                denominator: 2.0 * h.cosh2 * (x1 * x1 - c2) + 2.0 * c2 * dxn * dxn,
            }
        }
        (Family::II, Sign::Plus) => {
            let (dx1, xn) = (p.dx(1, u), p.x(n, u));
            GeneralTerms {
                linear: -2.0 * c * h.cosh2 * dx1,
                radicand: s2 * (c2 * (dx1 * dx1 - 1.0) - xn * xn),
                denominator: 2.0 * h.sinh2 * (xn * xn + c2) + 2.0 * c2 * dx1 * dx1,
            }
        }
        (Family::II, Sign::Minus) => {
            let (dx1, xn) = (p.dx(1, u), p.x(n, u));
            GeneralTerms {
                linear: -2.0 * c * h.sinh2 * dx1,
                radicand: s2 * (xn * xn + c2 * (dx1 * dx1 + 1.0)),
                denominator: 2.0 * h.cosh2 * (xn * xn + c2) + 2.0 * c2 * dx1 * dx1,
            }
        }
        (Family::III, Sign::Plus) => {
            let (xn, dxn) = (p.x(n, u), p.dx(n, u));
            GeneralTerms {
                linear: 2.0 * c * h.cosh2 * dxn,
                radicand: s2 * (c2 * dxn * dxn - 2.0 * xn * xn),
                denominator: 4.0 * h.sinh2 * xn * xn + 2.0 * c2 * dxn * dxn,
            }
        }
        (Family::III, Sign::Minus) => {
            let (xn, dxn) = (p.x(n, u), p.dx(n, u));
            GeneralTerms {
                linear: 2.0 * c * h.sinh2 * dxn,
                radicand: s2 * (2.0 * xn * xn + c2 * dxn * dxn),
                denominator: 4.0 * h.cosh2 * xn * xn + 2.0 * c2 * dxn * dxn,
            }
        }
    }
}

fn general_slope(t: &GeneralTerms, branch: Sign) -> f64 {
    let sigma = branch.value() * t.denominator.signum();
    (t.linear + sigma * t.radicand.max(0.0).sqrt()) / t.denominator
}

/// Type I with a vanishing leading coefficient: `dv/du = 1/(2c x_n')` (ε = +1)
/// or `-1/(2c x_n')` (ε = -1), written through `√(c² - x_1²)`.
fn degenerate_slope(surface: &HelicoidalSurface, h: &Hyperbolic, u: f64) -> f64 {
    let p = surface.profile();
    let n = surface.dim();
    let c = surface.pitch();
    let x1 = p.x(1, u);
    let direction = p.dx(n, u).signum();
    let root = (c * c - x1 * x1).max(0.0).sqrt();
    match surface.epsilon() {
        Sign::Plus => direction / (2.0 * h.sinh * root),
        Sign::Minus => -direction / (2.0 * h.cosh * root),
    }
}

fn degenerate_radicand(surface: &HelicoidalSurface, u: f64) -> f64 {
    let c = surface.pitch();
    let x1 = surface.profile().x(1, u);
    c * c - x1 * x1
}

fn right_slope(surface: &HelicoidalSurface, h: &Hyperbolic, u: f64, branch: Sign) -> f64 {
    let p = surface.profile();
    let c2 = surface.pitch() * surface.pitch();
    match surface.family() {
        Family::I => {
            let x1 = p.x(1, u);
            branch.value() * (h.cosh / h.sinh) / (c2 - x1 * x1).max(0.0).sqrt()
        }
        _ => {
            let xn = p.x(surface.dim(), u);
            branch.value() * (h.sinh / h.cosh) / (xn * xn + c2).sqrt()
        }
    }
}

fn right_radicand(surface: &HelicoidalSurface, u: f64) -> f64 {
    let p = surface.profile();
    let c2 = surface.pitch() * surface.pitch();
    match surface.family() {
        Family::I => c2 - p.x(1, u).powi(2),
        _ => p.x(surface.dim(), u).powi(2) + c2,
    }
}

/// General closed-form slope `(linear ± √radicand) / 2A` at `u` for the given branch.
pub fn theorem_integrand(surface: &HelicoidalSurface, phi0: f64, branch: Sign, u: f64) -> Result<f64> {
    check_phi0(phi0)?;
    surface.profile().domain().check(u)?;
    let t = general_terms(surface, &Hyperbolic::new(phi0), u);
    if t.radicand < 0.0 {
        return Err(LoxError::NegativeRadicand { u, value: t.radicand });
    }
    Ok(general_slope(&t, branch))
}

/// Right helicoidal closed-form slope: `± coth φ0 / √(c² - x_1²)` for type I,
/// `± tanh φ0 / √(x_n² + c²)` for type II.
pub fn corollary_integrand(surface: &HelicoidalSurface, phi0: f64, branch: Sign, u: f64) -> Result<f64> {
    check_phi0(phi0)?;
    surface.profile().domain().check(u)?;
    match surface.family() {
        Family::III => return Err(LoxError::NoRightCorollary(Family::III)),
        Family::I => {
            let value = right_radicand(surface, u);
            if value <= 0.0 {
                return Err(LoxError::CorollaryDomain { u, value });
            }
        }
        Family::II => {}
    }
    Ok(right_slope(surface, &Hyperbolic::new(phi0), u, branch))
}

/// Radicand of the matching general case at `u` (scaled by sinh²(2φ0)).
pub fn theorem_radicand(surface: &HelicoidalSurface, phi0: f64, u: f64) -> Result<f64> {
    check_phi0(phi0)?;
    surface.profile().domain().check(u)?;
    Ok(general_terms(surface, &Hyperbolic::new(phi0), u).radicand)
}

/// Both slopes at `u`, or the single linear root when the leading coefficient vanishes.
pub fn slope_branches(surface: &HelicoidalSurface, phi0: f64, u: f64) -> Result<SlopeRoots> {
    let q = ode_coefficients(surface, phi0, u)?;
    let h = Hyperbolic::new(phi0);
    if q.a.abs() < DEGENERATE_TOL {
        if q.b.abs() < DEGENERATE_TOL {
            return Err(LoxError::VanishingCoefficients { u });
        }
        let root = match surface.family() {
            Family::I => degenerate_slope(surface, &h, u),
            _ => -q.c / q.b,
        };
        return Ok(SlopeRoots::Single(root));
    }
    let t = general_terms(surface, &h, u);
    if t.radicand < 0.0 {
        return Err(LoxError::NegativeRadicand { u, value: t.radicand });
    }
    Ok(SlopeRoots::Pair { plus: general_slope(&t, Sign::Plus), minus: general_slope(&t, Sign::Minus) })
}

/// Result of checking that the surface is timelike along `[u0, u1]`.
#[derive(Clone, Debug)]
pub(crate) struct IntervalScan {
    pub grid: Vec<f64>,
    pub start_zero: bool,
    pub end_zero: bool,
}

impl IntervalScan {
    /// Grid points that are not allowed endpoint zeros.
    pub fn interior(&self) -> impl Iterator<Item = f64> + '_ {
        let last = self.grid.len() - 1;
        self.grid
            .iter()
            .enumerate()
            .filter(move |&(i, _)| !((i == 0 && self.start_zero) || (i == last && self.end_zero)))
            .map(|(_, &u)| u)
    }
}

pub(crate) fn scan_interval(surface: &HelicoidalSurface, u0: f64, u1: f64, points: usize) -> Result<IntervalScan> {
    let disc = |u: f64| surface.metric_unchecked(u).discriminant();
    let grid = if u0 == u1 { vec![u0] } else { linspace(u0, u1, points.max(SCAN_POINTS)) };
    let last = grid.len() - 1;
    let mut start_zero = false;
    let mut end_zero = false;
    let mut prev_timelike = false;
    for (i, &u) in grid.iter().enumerate() {
        let d = disc(u);
        let endpoint = i == 0 || i == last;
        if d < 0.0 && d.abs() > ENDPOINT_ZERO_TOL {
            prev_timelike = true;
            continue;
        }
        if endpoint && d.abs() <= ENDPOINT_ZERO_TOL {
            if i == 0 {
                start_zero = true;
            } else {
                end_zero = true;
            }
            prev_timelike = false;
            continue;
        }
        if d.abs() <= ENDPOINT_ZERO_TOL {
            return Err(LoxError::DegenerateSurface { u });
        }
        if prev_timelike && i > 0 {
            return Err(LoxError::RadicandSignChange { u: bisect_crossing(disc, grid[i - 1], u) });
        }
        return Err(LoxError::NotTimelike { u, discriminant: d });
    }
    if grid.len() == 1 && start_zero {
        end_zero = true;
    }
    Ok(IntervalScan { grid, start_zero, end_zero })
}

/// Locates where `f` turns from negative to nonnegative between `a` and `b`.
fn bisect_crossing(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        if f(m) < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn classify(surface: &HelicoidalSurface, h: &Hyperbolic, scan: &IntervalScan) -> Result<Formula> {
    let mut tiny_at = None;
    let mut regular_at = None;
    let mut sign = 0.0f64;
    for u in scan.interior() {
        let a = coefficients_unchecked(surface, h, u).a;
        if a.abs() < DEGENERATE_TOL {
            tiny_at.get_or_insert(u);
        } else {
            regular_at.get_or_insert(u);
            if sign != 0.0 && a.signum() != sign {
                return Err(LoxError::MixedDegenerateInterval { u });
            }
            sign = a.signum();
        }
        if let (Some(t), Some(r)) = (tiny_at, regular_at) {
            return Err(LoxError::MixedDegenerateInterval { u: t.max(r) });
        }
    }
    if regular_at.is_some() || tiny_at.is_none() {
        return Ok(Formula::General);
    }
    if surface.family() != Family::I {
        return Err(LoxError::VanishingCoefficients { u: tiny_at.unwrap() });
    }
    let n = surface.dim();
    let mut direction = 0.0f64;
    for u in scan.interior() {
        let b = coefficients_unchecked(surface, h, u).b;
        if b.abs() < DEGENERATE_TOL {
            return Err(LoxError::VanishingCoefficients { u });
        }
        let s = surface.profile().dx(n, u).signum();
        if direction != 0.0 && s != direction {
            return Err(LoxError::MixedDegenerateInterval { u });
        }
        direction = s;
    }
    Ok(Formula::Degenerate)
}

/// The slope law for a solved case.
#[derive(Clone, Copy)]
pub(crate) struct SlopeModel<'a> {
    surface: &'a HelicoidalSurface,
    h: Hyperbolic,
    branch: Sign,
    formula: Formula,
}

impl<'a> SlopeModel<'a> {
    pub fn slope(&self, u: f64) -> f64 {
        match self.formula {
            Formula::General => general_slope(&general_terms(self.surface, &self.h, u), self.branch),
            Formula::Degenerate => degenerate_slope(self.surface, &self.h, u),
            Formula::RightHelicoidal => right_slope(self.surface, &self.h, u, self.branch),
            Formula::SlopeField => unreachable!("slope fields are traced by the oracle"),
        }
    }

    pub fn radicand(&self, u: f64) -> f64 {
        match self.formula {
            Formula::General => general_terms(self.surface, &self.h, u).radicand,
            Formula::Degenerate => degenerate_radicand(self.surface, u),
            Formula::RightHelicoidal => right_radicand(self.surface, u),
            Formula::SlopeField => unreachable!("slope fields are traced by the oracle"),
        }
    }
}

/// Integrates the closed-form slope by adaptive quadrature between consecutive grid points.
pub fn solve_loxodrome(problem: &LoxodromeProblem) -> Result<SampledCurve> {
    let model = general_model(problem)?;
    trace(problem, &model)
}

fn general_model(problem: &LoxodromeProblem) -> Result<SlopeModel<'_>> {
    let scan = scan_interval(&problem.surface, problem.u0, problem.u1, problem.samples)?;
    let h = problem.hyperbolic();
    let formula = classify(&problem.surface, &h, &scan)?;
    Ok(SlopeModel { surface: &problem.surface, h, branch: problem.branch, formula })
}

/// Right helicoidal closed forms (types I and II only).
pub fn right_helicoidal_solution(problem: &LoxodromeProblem) -> Result<SampledCurve> {
    let model = right_model(problem)?;
    trace(problem, &model)
}

fn right_model(problem: &LoxodromeProblem) -> Result<SlopeModel<'_>> {
    let surface = &problem.surface;
    if !surface.is_right() {
        return Err(LoxError::NotRightHelicoidal);
    }
    if surface.family() == Family::III {
        return Err(LoxError::NoRightCorollary(Family::III));
    }
    let scan = scan_interval(surface, problem.u0, problem.u1, problem.samples)?;
    if surface.family() == Family::I {
        for u in scan.interior() {
            let value = right_radicand(surface, u);
            if value <= 0.0 {
                return Err(LoxError::CorollaryDomain { u, value });
            }
        }
    }
    Ok(SlopeModel { surface, h: problem.hyperbolic(), branch: problem.branch, formula: Formula::RightHelicoidal })
}

fn trace(problem: &LoxodromeProblem, model: &SlopeModel<'_>) -> Result<SampledCurve> {
    let quad = AdaptiveQuadrature::with_tol(problem.tolerance);
    let us = problem.grid();
    let mut vs = Vec::with_capacity(us.len());
    let mut v = problem.v0;
    vs.push(v);
    for pair in us.windows(2) {
        v += quad.integrate(|u| model.slope(u), pair[0], pair[1])?;
        vs.push(v);
    }
    let case = LoxodromeCase {
        family: problem.surface.family(),
        meridian: problem.surface.epsilon(),
        formula: model.formula,
    };
    assemble(problem, case, &us, &vs, |u| model.slope(u), |u| model.radicand(u))
}

/// Builds a curve with per-sample diagnostics and checks that every tangent with
/// a finite slope is timelike.
pub(crate) fn assemble(
    problem: &LoxodromeProblem,
    case: LoxodromeCase,
    us: &[f64],
    vs: &[f64],
    slope: impl Fn(f64) -> f64,
    radicand: impl Fn(f64) -> f64,
) -> Result<SampledCurve> {
    let surface = &problem.surface;
    let mut samples = Vec::with_capacity(us.len());
    for (&u, &v) in us.iter().zip(vs) {
        let r = slope(u);
        let point = surface.embed(u, v)?;
        let (tangent_inner, causal, angle) = if r.is_finite() {
            let (xu, xv) = surface.partials(u, v)?;
            let tangent = &xu + &(&xv * r);
            let ti = tangent.inner(&tangent)?;
            let causal = classify_value(ti, DEFAULT_CAUSAL_TOL);
            let angle = lorentzian_angle(&xu, &tangent).map(|a| a.theta).unwrap_or(f64::NAN);
            (ti, causal, angle)
        } else {
            (f64::NAN, CausalCharacter::Lightlike, f64::NAN)
        };
        samples.push(CurveSample { u, v, slope: r, point, radicand: radicand(u), tangent_inner, causal, angle });
    }
    for s in &samples {
        let allowed_zero = surface.metric_unchecked(s.u).discriminant().abs() <= ENDPOINT_ZERO_TOL;
        if s.causal != CausalCharacter::Timelike && !allowed_zero {
            return Err(LoxError::NonTimelikeTangent { u: s.u });
        }
    }
    Ok(SampledCurve { case, branch: problem.branch, phi0: problem.phi0, samples })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LengthReport {
    /// Adaptive quadrature of `√|E + 2F v' + G v'²|` along the solved slope.
    pub numeric: f64,
    /// `|Δu|/sinh φ0` (type I right, spacelike meridian) or `|Δu|/cosh φ0`
    /// (type II right, timelike meridian).
    pub closed_form: Option<f64>,
}

impl LengthReport {
    pub fn value(&self) -> f64 {
        self.closed_form.unwrap_or(self.numeric)
    }
}

pub fn length_report(problem: &LoxodromeProblem, curve: &SampledCurve) -> Result<LengthReport> {
    let (a, b) = (curve.samples[0].u, curve.last().u);
    if a == b {
        return Ok(LengthReport { numeric: 0.0, closed_form: closed_form_applies(problem).then_some(0.0) });
    }
    let model = match curve.case.formula {
        Formula::RightHelicoidal => right_model(problem)?,
        _ => general_model(problem)?,
    };
    let surface = &problem.surface;
    let integrand = |u: f64| surface.metric_unchecked(u).quadratic_form(model.slope(u)).abs().sqrt();
    let numeric = AdaptiveQuadrature::with_tol(problem.tolerance).integrate(integrand, a, b)?.abs();
    let h = problem.hyperbolic();
    let closed_form = closed_form_applies(problem).then(|| match surface.family() {
        Family::I => (b - a).abs() / h.sinh,
        _ => (b - a).abs() / h.cosh,
    });
    Ok(LengthReport { numeric, closed_form })
}

fn closed_form_applies(problem: &LoxodromeProblem) -> bool {
    let s = &problem.surface;
    s.is_right() && matches!((s.family(), s.epsilon()), (Family::I, Sign::Plus) | (Family::II, Sign::Minus))
}

/// Length of the solved loxodrome; the closed form where one exists.
pub fn loxodrome_length(problem: &LoxodromeProblem, curve: &SampledCurve) -> Result<f64> {
    length_report(problem, curve).map(|r| r.value())
}
