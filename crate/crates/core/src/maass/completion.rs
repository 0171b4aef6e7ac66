//! The completion `Ĥ_{g,r} = H_{g,r} + H⁻_{g,r}`.
//!
//! The non-holomorphic part is computed from the shadow by quadrature and,
//! independently, as `χ̄_g Σ_s ±R_{s/60,0}(60τ)` over the family of `r`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quad::integrate_to_infinity;
use super::rfunc::r_ab;
use super::series::{h_value, numeric_terms};
use super::special::e;
use super::UpperHalfPoint;
use crate::characters::{support_sign, Family, GroupClass, FAMILY_ONE, FAMILY_SEVEN};
use crate::error::{Error, Result};
use crate::theta::shadow_vector;

/// `Ĥ_{g,r}(τ)` split into its parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletionValue {
    pub value: Complex64,
    pub holomorphic: Complex64,
    pub correction: Complex64,
    /// Series tail estimate plus quadrature or tail bound of the correction.
    pub error_estimate: f64,
}

/// Shadow truncation order so that omitted terms at height `y` are below `tol`.
fn shadow_order(y: f64, tol: f64) -> i64 {
    let mut n = 2i64;
    // coefficients are at most 8√(120n) in absolute value
    while 8.0 * (120.0 * n as f64).sqrt() * (-2.0 * PI * y * n as f64).exp() >= tol * 1e-3 {
        n += 1;
    }
    n
}

fn correction_by_quadrature(class: GroupClass, r: i64, tau: UpperHalfPoint, tol: f64) -> Result<(Complex64, f64)> {
    let y = tau.y();
    let order = shadow_order(y, tol);
    let shadow = shadow_vector(class, num_rational::Rational64::from_integer(order))?.component(r);
    let terms = numeric_terms(&shadow);
    if terms.is_empty() {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let base = Complex64::new(-tau.x(), y);
    let i = Complex64::new(0.0, 1.0);
    let f = |t: f64| {
        let z = UpperHalfPoint(base + i * t);
        let s: Complex64 = terms.iter().map(|&(x, c)| z.q_power(x) * c).sum();
        s * i / Complex64::new(0.0, 2.0 * y + t).sqrt()
    };
    let pref = 1.0 / 60f64.sqrt();
    let x_min = terms[0].0;
    let alpha = 2.0 * PI * x_min;
    let k: f64 = terms.iter().map(|&(x, c)| c.abs() * (-2.0 * PI * x * y).exp()).sum();
    let tail = |t: f64| k * (-alpha * t).exp() / (alpha * (2.0 * y + t).sqrt());
    let integral = integrate_to_infinity(f, 0.0, tol / pref, tail)?;
    Ok((integral.value * e(-1.0 / 8.0) * pref, integral.error * pref))
}

/// `Ĥ_{g,r}(τ)` with the non-holomorphic part from the shadow integral.
pub fn completion_eval(class: GroupClass, r: i64, tau: UpperHalfPoint, tol: f64) -> Result<CompletionValue> {
    support_sign(r).ok_or(Error::NotInSupport(r))?;
    let h = h_value(class, r, tau, tol / 2.0)?;
    let (correction, err) = correction_by_quadrature(class, r, tau, tol / 2.0)?;
    Ok(CompletionValue {
        value: h.value + correction,
        holomorphic: h.value,
        correction,
        error_estimate: h.tail_estimate + err,
    })
}

/// `Ĥ_{g,r}(τ)` with the non-holomorphic part `χ̄_g Σ_s ±R_{s/60,0}(60τ)`.
pub fn completion_via_r(class: GroupClass, r: i64, tau: UpperHalfPoint, tol: f64) -> Result<CompletionValue> {
    let (fam, sign) = support_sign(r).ok_or(Error::NotInSupport(r))?;
    let h = h_value(class, r, tau, tol / 2.0)?;
    let chi = class.perm_character();
    let reps = match fam {
        Family::One => FAMILY_ONE,
        Family::Seven => FAMILY_SEVEN,
    };
    let mut correction = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    if chi != 0 {
        for s in reps {
            let v = r_ab(s as f64 / 60.0, 0.0, tau.dilate(60.0), tol / 16.0)?;
            correction += v.value;
            bound += v.tail_bound;
        }
        correction *= (chi * sign) as f64;
        bound *= chi.abs() as f64;
    }
    Ok(CompletionValue {
        value: h.value + correction,
        holomorphic: h.value,
        correction,
        error_estimate: h.tail_estimate + bound,
    })
}
