//! Timelike loxodromes on Lorentzian helicoidal surfaces in Minkowski n-space.
//!
//! A helicoidal surface of type I, II or III is generated by a unit-speed profile
//! curve and a pitch `c`. On a timelike surface, a loxodrome is a curve that cuts
//! the meridians `v = const` at a constant Lorentzian angle φ0. [`loxodrome`]
//! solves for such curves in closed form plus quadrature; [`oracle`] checks them
//! with an independent RK4 integration of the slope field.

pub mod cli;
pub mod error;
pub mod loxodrome;
pub mod minkowski;
pub mod oracle;
pub mod profile;
pub mod profile_spec;
pub mod quadrature;
pub mod special;
pub mod surface;

pub use error::{LoxError, Result};
pub use loxodrome::{
    corollary_integrand, length_report, loxodrome_length, ode_coefficients, right_helicoidal_solution,
    slope_branches, solve_loxodrome, theorem_integrand, theorem_radicand, AngleInput, CurveSample, Formula,
    LengthReport, LoxodromeCase, LoxodromeProblem, QuadraticCoefficients, SampledCurve, SlopeRoots,
};
pub use minkowski::{causal_character, inner, lorentzian_angle, AngleKind, CausalCharacter, LorentzianAngle, MinkowskiVector};
pub use oracle::{angle_profile, finite_difference_partials, integrate_ode, numeric_length, AngleProfile};
pub use profile::{Component, Domain, Family, FunctionSpec, ProfileCurve, Sign};
pub use profile_spec::parse_profile;
pub use special::{complete_k, elliptic_e, elliptic_f};
pub use surface::{check_right_helicoidal, make_right_helicoidal, HelicoidalSurface, MetricCoefficients};
