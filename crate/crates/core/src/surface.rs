//! Helicoidal surfaces of types I, II and III in E^n_1.
//!
//! All three are stored in standard coordinates. Type III is assembled in the
//! pseudo-orthonormal basis {e_1, ..., e_{n-2}, ξ_{n-1}, ξ_n} with
//! ξ_{n-1} = (e_n - e_{n-1})/√2 and ξ_n = (e_n + e_{n-1})/√2, then converted.

use std::f64::consts::SQRT_2;

use crate::error::{LoxError, Result};
use crate::minkowski::MinkowskiVector;
use crate::profile::{Component, Domain, Family, ProfileCurve, Sign};

/// First fundamental form `E du² + 2F du dv + G dv²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricCoefficients {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl MetricCoefficients {
    /// `EG - F²`; negative on a timelike surface.
    pub fn discriminant(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    /// `E + 2F r + G r²`, the squared speed of a curve with `dv/du = r`.
    pub fn quadratic_form(&self, slope: f64) -> f64 {
        self.e + 2.0 * self.f * slope + self.g * slope * slope
    }
}

#[derive(Clone, Debug)]
pub struct HelicoidalSurface {
    profile: ProfileCurve,
    c: f64,
    right: bool,
}

impl HelicoidalSurface {
    /// General helicoidal surface; `c = 0` gives the rotational surface.
    pub fn new(profile: ProfileCurve, c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(LoxError::InvalidPitch(c));
        }
        Ok(Self { profile, c, right: false })
    }

    /// Right helicoidal surface: the family's designated coordinate (x_n for
    /// I and III, x_1 for II) is constant and `c > 0`.
    pub fn new_right(profile: ProfileCurve, c: f64) -> Result<Self> {
        check_right_helicoidal(profile.family(), profile.epsilon(), c)?;
        let family = profile.family();
        let slot = family.right_slot(profile.dim());
        if !profile.slot(slot).is_constant() {
            return Err(LoxError::NotConstantCoordinate { family, slot });
        }
        Ok(Self { profile, c, right: true })
    }

    pub fn family(&self) -> Family {
        self.profile.family()
    }

    pub fn profile(&self) -> &ProfileCurve {
        &self.profile
    }

    pub fn pitch(&self) -> f64 {
        self.c
    }

    pub fn epsilon(&self) -> Sign {
        self.profile.epsilon()
    }

    pub fn dim(&self) -> usize {
        self.profile.dim()
    }

    pub fn is_right(&self) -> bool {
        self.right
    }

    pub fn embed(&self, u: f64, v: f64) -> Result<MinkowskiVector> {
        self.profile.domain().check(u)?;
        let p = &self.profile;
        let n = self.dim();
        let c = self.c;
        let mut x = vec![0.0; n];
        match self.family() {
            Family::I => {
                let x1 = p.x(1, u);
                x[0] = x1 * v.cos();
                x[1] = x1 * v.sin();
                for i in 3..n {
                    x[i - 1] = p.x(i, u);
                }
                x[n - 1] = p.x(n, u) + c * v;
            }
            Family::II => {
                x[0] = p.x(1, u) + c * v;
                for i in 2..=n - 2 {
                    x[i - 1] = p.x(i, u);
                }
                let xn = p.x(n, u);
                x[n - 2] = xn * v.sinh();
                x[n - 1] = xn * v.cosh();
            }
            Family::III => {
                let xn = p.x(n, u);
                x[0] = p.x(1, u);
                x[1] = SQRT_2 * v * xn;
                for i in 3..=n - 2 {
                    x[i - 1] = p.x(i, u);
                }
                let a = p.x(n - 1, u) + v * v * xn + c * v;
                put_null_pair(&mut x, a, xn);
            }
        }
        Ok(MinkowskiVector::from_vec(x))
    }

    /// Analytic `(x_u, x_v)`.
    pub fn partials(&self, u: f64, v: f64) -> Result<(MinkowskiVector, MinkowskiVector)> {
        self.profile.domain().check(u)?;
        let p = &self.profile;
        let n = self.dim();
        let c = self.c;
        let mut xu = vec![0.0; n];
        let mut xv = vec![0.0; n];
        match self.family() {
            Family::I => {
                let (x1, dx1) = (p.x(1, u), p.dx(1, u));
                let (s, co) = v.sin_cos();
                xu[0] = dx1 * co;
                xu[1] = dx1 * s;
                for i in 3..=n {
                    xu[i - 1] = p.dx(i, u);
                }
                xv[0] = -x1 * s;
                xv[1] = x1 * co;
                xv[n - 1] = c;
            }
            Family::II => {
                for i in 1..=n - 2 {
                    xu[i - 1] = p.dx(i, u);
                }
                let (xn, dxn) = (p.x(n, u), p.dx(n, u));
                let (sh, ch) = (v.sinh(), v.cosh());
                xu[n - 2] = dxn * sh;
                xu[n - 1] = dxn * ch;
                xv[0] = c;
                xv[n - 2] = xn * ch;
                xv[n - 1] = xn * sh;
            }
            Family::III => {
                let (xn, dxn) = (p.x(n, u), p.dx(n, u));
                xu[0] = p.dx(1, u);
                xu[1] = SQRT_2 * v * dxn;
                for i in 3..=n - 2 {
                    xu[i - 1] = p.dx(i, u);
                }
                put_null_pair(&mut xu, p.dx(n - 1, u) + v * v * dxn, dxn);
                xv[1] = SQRT_2 * xn;
                put_null_pair(&mut xv, 2.0 * v * xn + c, 0.0);
            }
        }
        Ok((MinkowskiVector::from_vec(xu), MinkowskiVector::from_vec(xv)))
    }

    /// Closed-form first fundamental form; independent of `v`.
    pub fn metric_coefficients(&self, u: f64) -> Result<MetricCoefficients> {
        self.profile.domain().check(u)?;
        Ok(self.metric_unchecked(u))
    }

    pub(crate) fn metric_unchecked(&self, u: f64) -> MetricCoefficients {
        let p = &self.profile;
        let n = self.dim();
        let c = self.c;
        let e = self.epsilon().value();
        match self.family() {
            Family::I => {
                let x1 = p.x(1, u);
                MetricCoefficients { e, f: -c * p.dx(n, u), g: x1 * x1 - c * c }
            }
            Family::II => {
                let xn = p.x(n, u);
                MetricCoefficients { e, f: c * p.dx(1, u), g: c * c + xn * xn }
            }
            Family::III => {
                let xn = p.x(n, u);
                MetricCoefficients { e, f: -c * p.dx(n, u), g: 2.0 * xn * xn }
            }
        }
    }

    /// First fundamental form from inner products of the analytic partials at (u, v).
    pub fn metric_from_partials(&self, u: f64, v: f64) -> Result<MetricCoefficients> {
        let (xu, xv) = self.partials(u, v)?;
        Ok(MetricCoefficients { e: xu.inner(&xu)?, f: xu.inner(&xv)?, g: xv.inner(&xv)? })
    }

    /// True iff `EG - F² < 0` at `u`.
    pub fn timelike_condition(&self, u: f64) -> Result<bool> {
        Ok(self.metric_coefficients(u)?.discriminant() < 0.0)
    }

    /// The family's closed-form timelike inequality, evaluated directly.
    pub fn timelike_inequality(&self, u: f64) -> Result<bool> {
        self.profile.domain().check(u)?;
        let p = &self.profile;
        let n = self.dim();
        let c2 = self.c * self.c;
        let eps = self.epsilon().value();
        let lhs = match self.family() {
            Family::I => {
                let (x1, dxn) = (p.x(1, u), p.dx(n, u));
                eps * x1 * x1 - c2 * (eps + dxn * dxn)
            }
            Family::II => {
                let (dx1, xn) = (p.dx(1, u), p.x(n, u));
                c2 * (eps - dx1 * dx1) + eps * xn * xn
            }
            Family::III => {
                let (xn, dxn) = (p.x(n, u), p.dx(n, u));
                2.0 * eps * xn * xn - c2 * dxn * dxn
            }
        };
        Ok(lhs < 0.0)
    }
}

/// Rules that hold before any profile is built: `c > 0`, type II needs a
/// timelike meridian (EG - F² = ε(c² + x_n²)), and type III admits no timelike
/// meridian (with x_n' = 0 the speed form is a sum of squares).
pub fn check_right_helicoidal(family: Family, epsilon: Sign, c: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(LoxError::InvalidPitch(c));
    }
    match (family, epsilon) {
        (Family::II, Sign::Plus) => Err(LoxError::RightTypeIISpacelikeMeridian),
        (Family::III, Sign::Minus) => Err(LoxError::RightTypeIIITimelikeMeridian),
        _ => Ok(()),
    }
}

/// Builds a right helicoidal surface from raw profile parts, checking the
/// existence rules first so that impossible combinations report the dedicated
/// error rather than a unit-speed failure.
pub fn make_right_helicoidal(
    family: Family,
    dim: usize,
    components: Vec<Component>,
    epsilon: Sign,
    domain: Domain,
    c: f64,
) -> Result<HelicoidalSurface> {
    check_right_helicoidal(family, epsilon, c)?;
    if components.len() == dim.saturating_sub(1) && dim >= family.min_dim() {
        let slot = family.right_slot(dim);
        let index = family.active_slots(dim).iter().position(|&s| s == slot).expect("designated slot is active");
        if !components[index].is_constant() {
            return Err(LoxError::NotConstantCoordinate { family, slot });
        }
    }
    let profile = ProfileCurve::new(family, dim, components, epsilon, domain)?;
    HelicoidalSurface::new_right(profile, c)
}

/// Writes `a ξ_{n-1} + b ξ_n` into the last two standard coordinates.
fn put_null_pair(x: &mut [f64], a: f64, b: f64) {
    let n = x.len();
    x[n - 2] = (b - a) / SQRT_2;
    x[n - 1] = (a + b) / SQRT_2;
}

/// The null pair (ξ_{n-1}, ξ_n) in standard coordinates.
pub fn null_pair(dim: usize) -> (MinkowskiVector, MinkowskiVector) {
    let mut a = vec![0.0; dim];
    let mut b = vec![0.0; dim];
    put_null_pair(&mut a, 1.0, 0.0);
    put_null_pair(&mut b, 0.0, 1.0);
    (MinkowskiVector::from_vec(a), MinkowskiVector::from_vec(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::inner;
    use crate::profile::FunctionSpec::*;

    fn c(x: f64) -> Component {
        Constant(x).into()
    }

    fn lin(a: f64, b: f64) -> Component {
        Linear { slope: a, offset: b }.into()
    }

    fn dom() -> Domain {
        Domain::new(0.0, 2.0).unwrap()
    }

    fn right_i(x1: f64, pitch: f64) -> HelicoidalSurface {
        make_right_helicoidal(Family::I, 4, vec![c(x1), lin(1.0, 0.0), c(0.0)], Sign::Plus, dom(), pitch).unwrap()
    }

    fn surface(family: Family, comps: Vec<Component>, eps: Sign, pitch: f64) -> HelicoidalSurface {
        let p = ProfileCurve::new(family, comps.len() + 1, comps, eps, dom()).unwrap();
        HelicoidalSurface::new(p, pitch).unwrap()
    }

    #[test]
    fn embeddings_at_zero_angle_reproduce_profile() {
        let s = right_i(0.6, 1.0);
        assert_eq!(s.embed(0.5, 0.0).unwrap().coords(), &[0.6, 0.0, 0.5, 0.0]);

        let s2 = surface(Family::II, vec![c(0.3), c(0.7), lin(1.0, 0.0)], Sign::Minus, 1.0);
        assert_eq!(s2.embed(1.5, 0.0).unwrap().coords(), &[0.3, 0.7, 0.0, 1.5]);

        let s3 = surface(Family::III, vec![lin(1.0, 0.0), lin(0.0, 0.3), c(0.5)], Sign::Plus, 1.0);
        let pt = s3.embed(1.0, 0.0).unwrap();
        let (xi1, xi2) = null_pair(4);
        let expected = &(&MinkowskiVector::basis(4, 1) + &(&xi1 * 0.3)) + &(&xi2 * 0.5);
        for (a, b) in pt.coords().iter().zip(expected.coords()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn null_pair_products() {
        for n in 4..7 {
            let (a, b) = null_pair(n);
            assert_eq!(inner(&a, &a).unwrap(), 0.0);
            assert_eq!(inner(&b, &b).unwrap(), 0.0);
            assert!((inner(&a, &b).unwrap() + 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn analytic_x_v_examples() {
        let (_, xv) = right_i(0.6, 1.0).partials(0.4, 0.0).unwrap();
        assert_eq!(xv.coords(), &[0.0, 0.6, 0.0, 1.0]);

        let s2 = surface(Family::II, vec![c(0.0), c(0.0), lin(1.0, 0.0)], Sign::Minus, 2.0);
        let v: f64 = 0.7;
        let (_, xv) = s2.partials(1.0, v).unwrap();
        assert_eq!(xv.coords(), &[2.0, 0.0, v.cosh(), v.sinh()]);

        // x_v = √2 x_n e_2 + (2 v x_n + c) ξ_{n-1}
        let s3 = surface(Family::III, vec![c(0.0), lin(-0.5, 0.0), lin(1.0, -0.5)], Sign::Plus, 2.0);
        let (_, xv) = s3.partials(1.0, 0.3).unwrap();
        let (xi1, _) = null_pair(4);
        let expected = &(&MinkowskiVector::basis(4, 2) * (SQRT_2 * 0.5)) + &(&xi1 * (2.0 * 0.3 * 0.5 + 2.0));
        for (a, b) in xv.coords().iter().zip(expected.coords()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn metric_examples() {
        let m = right_i(0.6, 1.0).metric_coefficients(0.3).unwrap();
        assert_eq!((m.e, m.f), (1.0, 0.0));
        assert!((m.g + 0.64).abs() < 1e-15);

        // x_n = u at u = 1
        let s2 = surface(Family::II, vec![c(0.0), c(0.0), lin(1.0, 0.0)], Sign::Minus, 1.0);
        let m = s2.metric_coefficients(1.0).unwrap();
        assert_eq!((m.e, m.f, m.g), (-1.0, 0.0, 2.0));

        // x_n = u - 0.5, x_{n-1} = -u/2 so that -2 x_{n-1}' x_n' = 1
        let s3 = surface(Family::III, vec![c(0.0), lin(-0.5, 0.0), lin(1.0, -0.5)], Sign::Plus, 2.0);
        let m = s3.metric_coefficients(1.0).unwrap();
        assert_eq!((m.e, m.f, m.g), (1.0, -2.0, 0.5));
    }

    #[test]
    fn timelike_examples() {
        assert!(right_i(0.6, 1.0).timelike_condition(0.5).unwrap());
        assert!(!right_i(2.0, 1.0).timelike_condition(0.5).unwrap());
        assert_eq!(right_i(2.0, 1.0).metric_coefficients(0.5).unwrap().discriminant(), 3.0);

        // right type II with timelike meridian is timelike everywhere
        let s = make_right_helicoidal(Family::II, 4, vec![c(0.4), c(0.0), lin(1.0, 0.0)], Sign::Minus, dom(), 1.0)
            .unwrap();
        for u in dom().grid(11) {
            assert!(s.timelike_condition(u).unwrap());
        }
    }

    #[test]
    fn right_constructor_rules() {
        assert_eq!(
            make_right_helicoidal(Family::I, 4, vec![c(0.6), c(0.0), lin(1.0, 0.0)], Sign::Minus, dom(), 1.0)
                .unwrap_err(),
            LoxError::NotConstantCoordinate { family: Family::I, slot: 4 }
        );
        assert_eq!(
            make_right_helicoidal(Family::II, 4, vec![c(1.0), lin(1.0, 0.0), c(0.5)], Sign::Plus, dom(), 1.0)
                .unwrap_err(),
            LoxError::RightTypeIISpacelikeMeridian
        );
        // no unit-speed profile exists here, yet the dedicated error wins
        assert_eq!(
            make_right_helicoidal(Family::III, 4, vec![c(0.0), lin(1.0, 0.0), c(1.0)], Sign::Minus, dom(), 1.0)
                .unwrap_err(),
            LoxError::RightTypeIIITimelikeMeridian
        );
        let p = ProfileCurve::new(Family::I, 4, vec![c(0.6), lin(1.0, 0.0), c(0.0)], Sign::Plus, dom()).unwrap();
        assert_eq!(HelicoidalSurface::new_right(p.clone(), 0.0).unwrap_err(), LoxError::InvalidPitch(0.0));
        assert!(HelicoidalSurface::new(p.clone(), 0.0).is_ok());
        assert!(HelicoidalSurface::new(p, -1.0).is_err());
    }

    #[test]
    fn right_type_iii_is_never_timelike() {
        let s = make_right_helicoidal(Family::III, 4, vec![c(0.0), lin(1.0, 0.0), c(0.7)], Sign::Plus, dom(), 1.0);
        // x1' = 0, x3' = 1, x4' = 0: speed 0, so the profile is rejected
        assert!(matches!(s, Err(LoxError::NotUnitSpeed { .. })));
        let s = make_right_helicoidal(Family::III, 4, vec![lin(1.0, 0.0), c(0.0), c(0.7)], Sign::Plus, dom(), 1.0)
            .unwrap();
        assert!(!s.timelike_condition(1.0).unwrap());
    }

    #[test]
    fn rotational_degeneration_at_zero_pitch() {
        let s = surface(Family::I, vec![c(1.5), lin(1.0, 0.0), c(0.25)], Sign::Plus, 0.0);
        for v in [0.0, 0.8, 2.5] {
            let x = s.embed(1.0, v).unwrap();
            assert_eq!(x[3], 0.25);
            assert!((x[0].hypot(x[1]) - 1.5).abs() < 1e-15);
        }
        let s2 = surface(Family::II, vec![c(0.3), c(0.0), lin(1.0, 0.0)], Sign::Minus, 0.0);
        for v in [-1.0, 0.0, 2.0] {
            assert_eq!(s2.embed(1.0, v).unwrap()[0], 0.3);
        }
    }

    #[test]
    fn outside_domain() {
        let s = right_i(0.6, 1.0);
        assert!(matches!(s.embed(3.0, 0.0), Err(LoxError::OutsideDomain { .. })));
        assert!(s.partials(-0.1, 0.0).is_err());
        assert!(s.metric_coefficients(2.5).is_err());
        assert!(s.timelike_condition(2.5).is_err());
    }
}
