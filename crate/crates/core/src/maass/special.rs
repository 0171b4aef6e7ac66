//! `β(x) = ∫_x^∞ u^{-1/2} e^{-πu} du` (so `β(0) = 1`) and
//! `E(z) = sgn(z)(1 − β(z²))`.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::erf::{erf, erfc};

use crate::error::{Error, Result};

/// `β(x) = erfc(√(πx))`.
pub fn beta_incomplete(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument(format!("beta needs x >= 0, got {x}")));
    }
    Ok(erfc((PI * x).sqrt()))
}

/// `ln β(x)`, finite for all `x ≥ 0` (asymptotic series once erfc underflows).
pub fn ln_beta(x: f64) -> f64 {
    let z = (PI * x).sqrt();
    if z < 25.0 {
        return erfc(z).ln();
    }
    ln_erfc_asymptotic(z)
}

fn ln_erfc_asymptotic(z: f64) -> f64 {
    let z2 = z * z;
    let inv = 1.0 / (2.0 * z2);
    // erfc(z) = e^{-z²}/(z√π) (1 - 1/(2z²) + 3/(2z²)² - 15/(2z²)³ + 105/(2z²)⁴ ...)
    let series = 1.0 - inv + 3.0 * inv * inv - 15.0 * inv.powi(3) + 105.0 * inv.powi(4);
    -z2 - (z * PI.sqrt()).ln() + series.ln()
}

/// `E(z) = sgn(z)(1 − β(z²)) = erf(√π z)`, with `E(0) = 0`.
pub fn e_func(z: f64) -> f64 {
    erf(PI.sqrt() * z)
}

/// `e(x) = exp(2πix)`.
pub fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

/// `sgn` with `sgn(0) = 0`.
pub fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}
