//! Vector algebra of Minkowski n-space E^n_1 with signature (+, ..., +, -).

use std::ops::{Add, Index, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{LoxError, Result};

/// Absolute zero-test tolerance used when classifying numerically computed vectors.
pub const DEFAULT_CAUSAL_TOL: f64 = 1e-12;

/// A vector of E^n_1. The last coordinate is the timelike slot.
#[derive(Clone, Debug, PartialEq)]
pub struct MinkowskiVector {
    coords: Vec<f64>,
}

impl MinkowskiVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(LoxError::InvalidDimension(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(LoxError::NonFinite("vector"));
        }
        Ok(Self { coords })
    }

    /// Builds a vector without the finiteness check; used for assembled geometry
    /// whose inputs were already validated.
    pub(crate) fn from_vec(coords: Vec<f64>) -> Self {
        debug_assert!(coords.len() >= 3);
        Self { coords }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_vec(vec![0.0; n])
    }

    /// Standard basis vector `e_i`, 1-based.
    pub fn basis(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "basis index {i} out of range 1..={n}");
        let mut coords = vec![0.0; n];
        coords[i - 1] = 1.0;
        Self::from_vec(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    pub fn inner(&self, other: &Self) -> Result<f64> {
        inner(self, other)
    }
}

impl Index<usize> for MinkowskiVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.coords[index]
    }
}

impl Add for &MinkowskiVector {
    type Output = MinkowskiVector;

    fn add(self, rhs: Self) -> MinkowskiVector {
        assert_eq!(self.dim(), rhs.dim());
        MinkowskiVector::from_vec(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MinkowskiVector {
    type Output = MinkowskiVector;

    fn sub(self, rhs: Self) -> MinkowskiVector {
        assert_eq!(self.dim(), rhs.dim());
        MinkowskiVector::from_vec(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &MinkowskiVector {
    type Output = MinkowskiVector;

    fn mul(self, rhs: f64) -> MinkowskiVector {
        MinkowskiVector::from_vec(self.coords.iter().map(|a| a * rhs).collect())
    }
}

/// Index-1 inner product: sum of the first n-1 products minus the last.
pub fn inner(a: &MinkowskiVector, b: &MinkowskiVector) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(LoxError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(dot(&a.coords, &b.coords))
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    let space: f64 = a[..n - 1].iter().zip(&b[..n - 1]).map(|(x, y)| x * y).sum();
    space - a[n - 1] * b[n - 1]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

/// Classifies `v` with the default sampled-data tolerance.
pub fn causal_character(v: &MinkowskiVector) -> CausalCharacter {
    causal_character_with_tol(v, DEFAULT_CAUSAL_TOL)
}

/// Classifies `v`; `tol = 0.0` gives the exact test.
pub fn causal_character_with_tol(v: &MinkowskiVector, tol: f64) -> CausalCharacter {
    if v.is_zero() {
        return CausalCharacter::Spacelike;
    }
    classify_value(dot(&v.coords, &v.coords), tol)
}

pub(crate) fn classify_value(self_inner: f64, tol: f64) -> CausalCharacter {
    if self_inner.abs() <= tol {
        CausalCharacter::Lightlike
    } else if self_inner > 0.0 {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    }
}

pub fn norm(v: &MinkowskiVector) -> f64 {
    dot(&v.coords, &v.coords).abs().sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AngleKind {
    /// `<x,y> = ±|x||y| sinh θ`.
    SpacelikeTimelike,
    /// `|<x,y>| = |x||y| cosh θ`.
    TimelikeTimelike,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzianAngle {
    pub theta: f64,
    pub kind: AngleKind,
}

/// Lorentzian timelike angle between a spacelike/timelike or timelike/timelike pair.
///
/// Both formulas use `|<x,y>|`, so the angle does not depend on time orientation.
pub fn lorentzian_angle(x: &MinkowskiVector, y: &MinkowskiVector) -> Result<LorentzianAngle> {
    let xy = inner(x, y)?;
    if x.is_zero() || y.is_zero() {
        return Err(LoxError::LightlikeOrZero);
    }
    let cx = causal_character(x);
    let cy = causal_character(y);
    let kind = match (cx, cy) {
        (CausalCharacter::Lightlike, _) | (_, CausalCharacter::Lightlike) => {
            return Err(LoxError::LightlikeOrZero)
        }
        (CausalCharacter::Spacelike, CausalCharacter::Spacelike) => {
            return Err(LoxError::SpacelikePair)
        }
        (CausalCharacter::Timelike, CausalCharacter::Timelike) => AngleKind::TimelikeTimelike,
        _ => AngleKind::SpacelikeTimelike,
    };
    let ratio = xy.abs() / (norm(x) * norm(y));
    let theta = match kind {
        AngleKind::SpacelikeTimelike => ratio.asinh(),
        AngleKind::TimelikeTimelike => {
            if ratio < 1.0 - 1e-12 {
                return Err(LoxError::ReverseCauchySchwarz(ratio));
            }
            ratio.max(1.0).acosh()
        }
    };
    Ok(LorentzianAngle { theta, kind })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(c: &[f64]) -> MinkowskiVector {
        MinkowskiVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn basis_inner_products() {
        for n in 3..7 {
            let e1 = MinkowskiVector::basis(n, 1);
            let en = MinkowskiVector::basis(n, n);
            assert_eq!(inner(&e1, &e1).unwrap(), 1.0);
            assert_eq!(inner(&en, &en).unwrap(), -1.0);
            let null = &e1 + &en;
            assert_eq!(inner(&null, &null).unwrap(), 0.0);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = MinkowskiVector::zeros(3);
        let b = MinkowskiVector::zeros(4);
        assert_eq!(inner(&a, &b), Err(LoxError::DimensionMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn rejects_small_or_non_finite() {
        assert!(MinkowskiVector::new(vec![1.0, 2.0]).is_err());
        assert!(MinkowskiVector::new(vec![1.0, f64::NAN, 0.0]).is_err());
    }

    #[test]
    fn causal_examples() {
        assert_eq!(causal_character(&v(&[1.0, 0.0, 0.0, 0.0])), CausalCharacter::Spacelike);
        assert_eq!(causal_character(&v(&[0.0, 0.0, 0.0, 1.0])), CausalCharacter::Timelike);
        assert_eq!(causal_character(&v(&[0.0, 0.0, 0.0, 0.0])), CausalCharacter::Spacelike);
        assert_eq!(causal_character(&v(&[1.0, 0.0, 0.0, 1.0])), CausalCharacter::Lightlike);
        // exact test versus tolerance
        let almost = v(&[1.0 + 1e-14, 0.0, 0.0, 1.0]);
        assert_eq!(causal_character(&almost), CausalCharacter::Lightlike);
        assert_eq!(causal_character_with_tol(&almost, 0.0), CausalCharacter::Spacelike);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&v(&[0.0, 0.0, 0.0, 2.0])), 2.0);
        assert_eq!(norm(&v(&[3.0, 4.0, 0.0, 0.0])), 5.0);
        assert_eq!(norm(&v(&[1.0, 0.0, 0.0, 1.0])), 0.0);
    }

    #[test]
    fn angle_examples() {
        let x = v(&[1.0, 0.0, 0.0, 0.0]);
        let t = v(&[0.0, 0.0, 0.0, 1.0]);
        let boosted = v(&[1f64.sinh(), 0.0, 0.0, 1f64.cosh()]);

        let a = lorentzian_angle(&x, &t).unwrap();
        assert_eq!(a.theta, 0.0);
        assert_eq!(a.kind, AngleKind::SpacelikeTimelike);

        let b = lorentzian_angle(&t, &boosted).unwrap();
        assert_eq!(b.kind, AngleKind::TimelikeTimelike);
        assert!((b.theta - 1.0).abs() < 1e-12);

        let c = lorentzian_angle(&x, &boosted).unwrap();
        assert_eq!(c.kind, AngleKind::SpacelikeTimelike);
        assert!((c.theta - 1.0).abs() < 1e-12);

        // opposite time orientation gives the same angle
        let flipped = &boosted * -1.0;
        assert!((lorentzian_angle(&t, &flipped).unwrap().theta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn angle_errors() {
        let x = v(&[1.0, 0.0, 0.0, 0.0]);
        let y = v(&[0.0, 1.0, 0.0, 0.0]);
        let null = v(&[1.0, 0.0, 0.0, 1.0]);
        let zero = MinkowskiVector::zeros(4);
        assert_eq!(lorentzian_angle(&x, &y), Err(LoxError::SpacelikePair));
        assert_eq!(lorentzian_angle(&x, &null), Err(LoxError::LightlikeOrZero));
        assert_eq!(lorentzian_angle(&zero, &x), Err(LoxError::LightlikeOrZero));
    }

    fn vec_n(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-10.0..10.0f64, n)
    }

    fn timelike_unit(n: usize) -> impl Strategy<Value = MinkowskiVector> {
        prop::collection::vec(-3.0..3.0f64, n - 1).prop_map(move |mut s| {
            let sq: f64 = s.iter().map(|x| x * x).sum();
            s.push((1.0 + sq).sqrt());
            MinkowskiVector::from_vec(s)
        })
    }

    proptest! {
        #[test]
        fn inner_is_symmetric_and_bilinear(
            a in vec_n(5), b in vec_n(5), c in vec_n(5), la in -5.0..5.0f64, lb in -5.0..5.0f64
        ) {
            let (a, b, c) = (v(&a), v(&b), v(&c));
            let ab = inner(&a, &b).unwrap();
            prop_assert_eq!(ab, inner(&b, &a).unwrap());
            let lhs = inner(&(&(&a * la) + &(&b * lb)), &c).unwrap();
            let rhs = la * inner(&a, &c).unwrap() + lb * inner(&b, &c).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
        }

        #[test]
        fn causal_character_is_scale_invariant(a in vec_n(4), lambda in prop_oneof![-8.0..-0.1f64, 0.1..8.0f64]) {
            let a = v(&a);
            prop_assert_eq!(
                causal_character_with_tol(&a, 0.0),
                causal_character_with_tol(&(&a * lambda), 0.0)
            );
        }

        #[test]
        fn reverse_cauchy_schwarz(x in timelike_unit(4), y in timelike_unit(4)) {
            prop_assert!(inner(&x, &y).unwrap().abs() >= 1.0 - 1e-12);
        }

        #[test]
        fn angle_invariant_under_positive_rescaling(
            x in timelike_unit(5), y in timelike_unit(5), s in 0.1..10.0f64, t in 0.1..10.0f64
        ) {
            let a = lorentzian_angle(&x, &y).unwrap();
            let b = lorentzian_angle(&(&x * s), &(&y * t)).unwrap();
            prop_assert_eq!(a.kind, b.kind);
            prop_assert!((a.theta - b.theta).abs() <= 1e-9 * (1.0 + a.theta));
            prop_assert!(a.theta >= 0.0);
        }
    }
}
