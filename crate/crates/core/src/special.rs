//! Incomplete elliptic integral of the first kind.

use crate::error::{LoxError, Result};
use crate::quadrature::integrate;

const TOL: f64 = 1e-13;

/// `F(φ, k) = ∫_0^φ dθ / √(1 - k² sin² θ)` for `0 ≤ k < 1`.
pub fn elliptic_f(phi: f64, k: f64) -> Result<f64> {
    if !(k.is_finite() && (0.0..1.0).contains(&k)) {
        return Err(LoxError::InvalidModulus(k));
    }
    if !phi.is_finite() {
        return Err(LoxError::NonFinite("phi"));
    }
    let k2 = k * k;
    integrate(|t: f64| 1.0 / (1.0 - k2 * t.sin().powi(2)).sqrt(), 0.0, phi, TOL)
}

/// Complete integral `K(k) = F(π/2, k)`.
pub fn complete_k(k: f64) -> Result<f64> {
    elliptic_f(std::f64::consts::FRAC_PI_2, k)
}

/// `E(φ, k) = ∫_0^φ √(1 - k² sin² θ) dθ`, second kind.
pub fn elliptic_e(phi: f64, k: f64) -> Result<f64> {
    if !(k.is_finite() && (0.0..=1.0).contains(&k)) {
        return Err(LoxError::InvalidModulus(k));
    }
    if !phi.is_finite() {
        return Err(LoxError::NonFinite("phi"));
    }
    let k2 = k * k;
    integrate(|t: f64| (1.0 - k2 * t.sin().powi(2)).sqrt(), 0.0, phi, TOL)
}
