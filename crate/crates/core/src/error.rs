use thiserror::Error;

use crate::profile::Family;

pub type Result<T> = std::result::Result<T, LoxError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LoxError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("ambient dimension {0} is too small for this construction")]
    InvalidDimension(usize),
    #[error("non-finite coordinate in {0}")]
    NonFinite(&'static str),

    #[error("angle undefined for a lightlike or zero vector")]
    LightlikeOrZero,
    #[error("both vectors are spacelike; no Lorentzian timelike angle is defined")]
    SpacelikePair,
    #[error("reverse Cauchy-Schwarz violated: |<x,y>|/(|x||y|) = {0} < 1")]
    ReverseCauchySchwarz(f64),

    #[error("family {family} expects {expected} profile components, got {got}")]
    WrongSlotCount { family: Family, expected: usize, got: usize },
    #[error("slot x{slot} is not an active slot of family {family} in dimension {dim}")]
    InactiveSlot { family: Family, slot: usize, dim: usize },
    #[error("profile is not unit speed: residual {residual:e} at u = {u}")]
    NotUnitSpeed { u: f64, residual: f64 },
    #[error("profile evaluates to NaN or infinity at u = {u}")]
    NonFiniteProfile { u: f64 },
    #[error("u = {u} lies outside the profile domain [{start}, {end}]")]
    OutsideDomain { u: f64, start: f64, end: f64 },
    #[error("profile domain [{start}, {end}] is empty or non-finite")]
    EmptyDomain { start: f64, end: f64 },
    #[error("sign must be +1 or -1, got {0}")]
    InvalidSign(i64),

    #[error("pitch c = {0} is invalid here")]
    InvalidPitch(f64),
    #[error("designated coordinate x{slot} of a right helicoidal surface of family {family} must be constant")]
    NotConstantCoordinate { family: Family, slot: usize },
    #[error("a right helicoidal surface of type II is timelike only with a timelike meridian (epsilon = -1)")]
    RightTypeIISpacelikeMeridian,
    #[error("a timelike right helicoidal surface of type III with a timelike meridian does not exist")]
    RightTypeIIITimelikeMeridian,

    #[error("surface is not timelike at u = {u} (EG - F^2 = {discriminant:e})")]
    NotTimelike { u: f64, discriminant: f64 },
    #[error("radicand changes sign inside the interval near u = {u}")]
    RadicandSignChange { u: f64 },
    #[error("surface degenerates (EG - F^2 = 0) inside the interval at u = {u}")]
    DegenerateSurface { u: f64 },
    #[error("negative radicand {value:e} at u = {u}: the loxodrome of this case does not exist there")]
    NegativeRadicand { u: f64, value: f64 },
    #[error("leading and linear slope coefficients both vanish at u = {u}")]
    VanishingCoefficients { u: f64 },
    #[error("leading slope coefficient vanishes on part of the interval only (near u = {u})")]
    MixedDegenerateInterval { u: f64 },
    #[error("tangent is not timelike at u = {u}")]
    NonTimelikeTangent { u: f64 },
    #[error("angle phi0 = {0} must be finite and positive")]
    InvalidAngle(f64),
    #[error("invalid {name} = {value} for a positive angle")]
    InvalidAngleFunction { name: &'static str, value: f64 },

    #[error("no right helicoidal closed form exists for family {0}")]
    NoRightCorollary(Family),
    #[error("surface is not a right helicoidal surface")]
    NotRightHelicoidal,
    #[error("c^2 - x_1^2 = {value:e} is not positive at u = {u}")]
    CorollaryDomain { u: f64, value: f64 },

    #[error("quadrature failed to converge on [{a}, {b}]")]
    NoConvergence { a: f64, b: f64 },
    #[error("integrand is not finite at u = {u}")]
    NonFiniteIntegrand { u: f64 },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("tolerance {0} must be finite and positive")]
    InvalidTolerance(f64),
    #[error("finite-difference step {0} must be positive")]
    InvalidStep(f64),
    #[error("measured angle kind does not match the meridian causal character at u = {u}")]
    CausalPatternMismatch { u: f64 },

    #[error("elliptic modulus k = {0} must satisfy 0 <= k < 1")]
    InvalidModulus(f64),

    #[error("malformed profile spec: {0}")]
    ProfileSpec(String),
}

impl LoxError {
    /// Stable, machine-parsable reason code.
    pub fn code(&self) -> &'static str {
        use LoxError::*;
        match self {
            DimensionMismatch { .. } => "dimension-mismatch",
            InvalidDimension(_) => "invalid-dimension",
            NonFinite(_) => "non-finite-coordinate",
            LightlikeOrZero => "lightlike-or-zero-vector",
            SpacelikePair => "spacelike-pair",
            ReverseCauchySchwarz(_) => "reverse-cauchy-schwarz-violated",
            WrongSlotCount { .. } => "wrong-slot-count",
            InactiveSlot { .. } => "inactive-slot",
            NotUnitSpeed { .. } => "profile-not-unit-speed",
            NonFiniteProfile { .. } => "profile-non-finite",
            OutsideDomain { .. } => "outside-domain",
            EmptyDomain { .. } => "empty-domain",
            InvalidSign(_) => "invalid-sign",
            InvalidPitch(_) => "invalid-pitch",
            NotConstantCoordinate { .. } => "right-helicoidal-coordinate-not-constant",
            RightTypeIISpacelikeMeridian => "right-helicoidal-type-II-spacelike-meridian-not-timelike",
            RightTypeIIITimelikeMeridian => {
                "right-helicoidal-type-III-timelike-meridian-nonexistent"
            }
            NotTimelike { .. } => "surface-not-timelike",
            RadicandSignChange { .. } => "radicand-sign-change",
            DegenerateSurface { .. } => "surface-degenerate",
            NegativeRadicand { .. } => "negative-radicand",
            VanishingCoefficients { .. } => "vanishing-slope-coefficients",
            MixedDegenerateInterval { .. } => "mixed-degenerate-interval",
            NonTimelikeTangent { .. } => "non-timelike-tangent",
            InvalidAngle(_) => "invalid-angle",
            InvalidAngleFunction { .. } => "invalid-angle",
            NoRightCorollary(_) => "no-right-helicoidal-closed-form",
            NotRightHelicoidal => "not-right-helicoidal",
            CorollaryDomain { .. } => "right-helicoidal-radicand-nonpositive",
            NoConvergence { .. } => "quadrature-no-convergence",
            NonFiniteIntegrand { .. } => "non-finite-integrand",
            TooFewSamples { .. } => "too-few-samples",
            InvalidTolerance(_) => "invalid-tolerance",
            InvalidStep(_) => "invalid-step",
            CausalPatternMismatch { .. } => "causal-pattern-mismatch",
            InvalidModulus(_) => "invalid-modulus",
            ProfileSpec(_) => "malformed-profile-spec",
        }
    }

    /// Errors caused by the inputs (as opposed to numerical failure).
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            LoxError::NoConvergence { .. }
                | LoxError::NonFiniteIntegrand { .. }
                | LoxError::CausalPatternMismatch { .. }
                | LoxError::ReverseCauchySchwarz(_)
        )
    }
}
