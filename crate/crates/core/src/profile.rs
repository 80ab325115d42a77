//! Meridian-generating profile curves for the three helicoidal families.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{LoxError, Result};

pub const VALIDATION_POINTS: usize = 64;
pub const UNIT_SPEED_TOL: f64 = 1e-8;

/// Helicoidal surface family: elliptic (I), hyperbolic (II) or parabolic (III) rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    I,
    II,
    III,
}

impl Family {
    /// The 1-based slot that is identically zero in the profile.
    pub fn inactive_slot(self, dim: usize) -> usize {
        match self {
            Family::I | Family::III => 2,
            Family::II => dim - 1,
        }
    }

    pub fn min_dim(self) -> usize {
        match self {
            Family::I | Family::II => 3,
            // e_1, e_2 and the null pair must be distinct slots
            Family::III => 4,
        }
    }

    /// Active 1-based slots in ascending order.
    pub fn active_slots(self, dim: usize) -> Vec<usize> {
        let skip = self.inactive_slot(dim);
        (1..=dim).filter(|&i| i != skip).collect()
    }

    /// The slot that must be constant on a right helicoidal surface.
    pub fn right_slot(self, dim: usize) -> usize {
        match self {
            Family::I | Family::III => dim,
            Family::II => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Family::I),
            "II" | "2" => Ok(Family::II),
            "III" | "3" => Ok(Family::III),
            other => Err(format!("unknown family '{other}' (expected I, II or III)")),
        }
    }
}

/// A ±1 sign: the meridian causal sign ε or a loxodrome branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl TryFrom<i64> for Sign {
    type Error = LoxError;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(LoxError::InvalidSign(other)),
        }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Built-in coordinate functions with analytic derivatives.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    Constant(f64),
    /// `slope * u + offset`
    Linear { slope: f64, offset: f64 },
    /// `amplitude * sin(frequency * u + phase) + offset`
    Sine { amplitude: f64, frequency: f64, phase: f64, offset: f64 },
    Cosine { amplitude: f64, frequency: f64, phase: f64, offset: f64 },
    Sinh { amplitude: f64, frequency: f64, phase: f64, offset: f64 },
    Cosh { amplitude: f64, frequency: f64, phase: f64, offset: f64 },
    /// `c0 + c1 u + c2 u^2 + ...`
    Polynomial(Vec<f64>),
}

impl FunctionSpec {
    pub fn value(&self, u: f64) -> f64 {
        use FunctionSpec::*;
        match *self {
            Constant(c) => c,
            Linear { slope, offset } => slope * u + offset,
            Sine { amplitude, frequency, phase, offset } => amplitude * (frequency * u + phase).sin() + offset,
            Cosine { amplitude, frequency, phase, offset } => amplitude * (frequency * u + phase).cos() + offset,
            Sinh { amplitude, frequency, phase, offset } => amplitude * (frequency * u + phase).sinh() + offset,
            Cosh { amplitude, frequency, phase, offset } => amplitude * (frequency * u + phase).cosh() + offset,
            Polynomial(ref c) => c.iter().rev().fold(0.0, |acc, &ci| acc * u + ci),
        }
    }

    pub fn derivative(&self, u: f64) -> f64 {
        use FunctionSpec::*;
        match *self {
            Constant(_) => 0.0,
            Linear { slope, .. } => slope,
            Sine { amplitude, frequency, phase, .. } => amplitude * frequency * (frequency * u + phase).cos(),
            Cosine { amplitude, frequency, phase, .. } => -amplitude * frequency * (frequency * u + phase).sin(),
            Sinh { amplitude, frequency, phase, .. } => amplitude * frequency * (frequency * u + phase).cosh(),
            Cosh { amplitude, frequency, phase, .. } => amplitude * frequency * (frequency * u + phase).sinh(),
            Polynomial(ref c) => c
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (i, &ci)| acc * u + i as f64 * ci),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, FunctionSpec::Constant(_))
    }
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// One coordinate function of a profile: a built-in spec or a user function
/// supplied together with its derivative.
#[derive(Clone)]
pub enum Component {
    Spec(FunctionSpec),
    Custom { value: ScalarFn, derivative: ScalarFn },
}

impl Component {
    pub fn custom(
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Component::Custom { value: Arc::new(value), derivative: Arc::new(derivative) }
    }

    pub fn value(&self, u: f64) -> f64 {
        match self {
            Component::Spec(s) => s.value(u),
            Component::Custom { value, .. } => value(u),
        }
    }

    pub fn derivative(&self, u: f64) -> f64 {
        match self {
            Component::Spec(s) => s.derivative(u),
            Component::Custom { derivative, .. } => derivative(u),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Component::Spec(s) if s.is_constant())
    }
}

impl From<FunctionSpec> for Component {
    fn from(s: FunctionSpec) -> Self {
        Component::Spec(s)
    }
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Spec(s) => s.fmt(f),
            Component::Custom { .. } => f.write_str("Custom(..)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub start: f64,
    pub end: f64,
}

impl Domain {
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && start < end) {
            return Err(LoxError::EmptyDomain { start, end });
        }
        Ok(Self { start, end })
    }

    pub fn contains(&self, u: f64) -> bool {
        u >= self.start && u <= self.end
    }

    pub fn check(&self, u: f64) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(LoxError::OutsideDomain { u, start: self.start, end: self.end })
        }
    }

    /// `count` equally spaced points including both ends.
    pub fn grid(&self, count: usize) -> Vec<f64> {
        linspace(self.start, self.end, count)
    }
}

/// `count` points from `a` to `b` inclusive; the last point is exactly `b`.
pub fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![a],
        _ => {
            let step = (b - a) / (count - 1) as f64;
            let mut out: Vec<f64> = (0..count).map(|i| a + step * i as f64).collect();
            out[count - 1] = b;
            out
        }
    }
}

/// Meridian generator β, stored with all n slots (the inactive slot is zero).
#[derive(Clone, Debug)]
pub struct ProfileCurve {
    family: Family,
    slots: Vec<Component>,
    domain: Domain,
    epsilon: Sign,
}

impl ProfileCurve {
    /// Builds and validates a profile. `components` lists the active slots in
    /// ascending order (see [`Family::active_slots`]); for family III the last two
    /// are the coefficients of the null pair ξ_{n-1}, ξ_n.
    pub fn new(
        family: Family,
        dim: usize,
        components: Vec<Component>,
        epsilon: Sign,
        domain: Domain,
    ) -> Result<Self> {
        if dim < family.min_dim() {
            return Err(LoxError::InvalidDimension(dim));
        }
        if components.len() != dim - 1 {
            return Err(LoxError::WrongSlotCount { family, expected: dim - 1, got: components.len() });
        }
        let inactive = family.inactive_slot(dim);
        let mut given = components.into_iter();
        let slots = (1..=dim)
            .map(|i| {
                if i == inactive {
                    Component::Spec(FunctionSpec::Constant(0.0))
                } else {
                    given.next().expect("count checked above")
                }
            })
            .collect();
        let profile = Self { family, slots, domain, epsilon };
        profile.validate()?;
        Ok(profile)
    }

    fn validate(&self) -> Result<()> {
        for u in self.domain.grid(VALIDATION_POINTS) {
            let finite = self
                .slots
                .iter()
                .all(|s| s.value(u).is_finite() && s.derivative(u).is_finite());
            if !finite {
                return Err(LoxError::NonFiniteProfile { u });
            }
            let residual = self.speed_residual_unchecked(u);
            if residual.abs() > UNIT_SPEED_TOL {
                return Err(LoxError::NotUnitSpeed { u, residual });
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    /// Component in 1-based slot `i`.
    pub fn slot(&self, i: usize) -> &Component {
        &self.slots[i - 1]
    }

    /// `x_i(u)`, 1-based, without the domain check.
    pub(crate) fn x(&self, i: usize, u: f64) -> f64 {
        self.slots[i - 1].value(u)
    }

    /// `x_i'(u)`, 1-based, without the domain check.
    pub(crate) fn dx(&self, i: usize, u: f64) -> f64 {
        self.slots[i - 1].derivative(u)
    }

    pub fn values(&self, u: f64) -> Result<Vec<f64>> {
        self.domain.check(u)?;
        Ok(self.slots.iter().map(|s| s.value(u)).collect())
    }

    pub fn derivatives(&self, u: f64) -> Result<Vec<f64>> {
        self.domain.check(u)?;
        Ok(self.slots.iter().map(|s| s.derivative(u)).collect())
    }

    /// Speed form minus ε; zero for a unit-speed profile.
    pub fn unit_speed_residual(&self, u: f64) -> Result<f64> {
        self.domain.check(u)?;
        Ok(self.speed_residual_unchecked(u))
    }

    fn speed_residual_unchecked(&self, u: f64) -> f64 {
        let n = self.dim();
        let d: Vec<f64> = self.slots.iter().map(|s| s.derivative(u)).collect();
        let speed = match self.family {
            Family::I | Family::II => {
                d[..n - 1].iter().map(|x| x * x).sum::<f64>() - d[n - 1] * d[n - 1]
            }
            Family::III => d[..n - 2].iter().map(|x| x * x).sum::<f64>() - 2.0 * d[n - 2] * d[n - 1],
        };
        speed - self.epsilon.value()
    }

    /// Largest |residual| over `count` grid points of the domain.
    pub fn max_unit_speed_residual(&self, count: usize) -> f64 {
        self.domain
            .grid(count)
            .into_iter()
            .map(|u| self.speed_residual_unchecked(u).abs())
            .fold(0.0, f64::max)
    }

    /// ε: `Plus` for a spacelike meridian, `Minus` for a timelike one.
    pub fn meridian_character(&self) -> Sign {
        self.epsilon
    }
}
