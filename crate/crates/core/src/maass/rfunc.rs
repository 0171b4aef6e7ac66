//! `R_{a,b}`, the unary series `g_{a,b}` and the identity expressing a
//! signature-(1,1) theta quotient through `H_{2A}` and two `R` terms.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::indefinite::{vartheta_indef, IndefThetaData};
use super::quad::{integrate_to_infinity, Integral};
use super::series::h_value;
use super::special::{e, ln_beta, sgn};
use super::UpperHalfPoint;
use crate::characters::GroupClass;
use crate::error::{Error, Result};
use crate::qseries::rat;

const MAX_TERMS: i64 = 1_000_000;

/// A value with a rigorous bound on the omitted terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundedValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// Sums `term(ν)` over `ν ∈ a + Z` with `|ν| < m`, where `m` is the first
/// radius at which `bound(m) < tol`.
fn unary_sum(
    a: f64,
    tol: f64,
    what: &'static str,
    term: impl Fn(f64) -> Complex64,
    bound: impl Fn(f64) -> f64,
) -> Result<BoundedValue> {
    let mut m = 1.0f64;
    let mut last = bound(m);
    while !(last < tol) {
        m += 1.0;
        if m > MAX_TERMS as f64 {
            return Err(Error::TailCap { what, bound: last, cap: MAX_TERMS as usize });
        }
        last = bound(m);
    }
    let lo = (-m - a).ceil() as i64;
    let hi = (m - a).floor() as i64;
    let value = (lo..=hi)
        .map(|n| a + n as f64)
        .filter(|nu| nu.abs() < m)
        .map(&term)
        .sum();
    Ok(BoundedValue { value, tail_bound: last })
}

/// `R_{a,b}(τ) = Σ_{ν∈a+Z} sgn(ν) β(2ν²y) q^{−ν²/2} e(−νb)`.
pub fn r_ab(a: f64, b: f64, tau: UpperHalfPoint, tol: f64) -> Result<BoundedValue> {
    let (x, y) = (tau.x(), tau.y());
    let term = |nu: f64| {
        let size = (ln_beta(2.0 * nu * nu * y) + PI * nu * nu * y).exp();
        e(-nu * nu * x / 2.0 - nu * b) * (sgn(nu) * size)
    };
    // β(2ν²y) e^{πν²y} ≤ e^{−πν²y}/(π|ν|√(2y)), two values of ν per unit step
    let bound = |m: f64| {
        2.0 * (-PI * m * m * y).exp()
            / (PI * m * (2.0 * y).sqrt() * (1.0 - (-2.0 * PI * m * y).exp()))
    };
    unary_sum(a, tol, "R_{a,b} terms", term, bound)
}

/// `g_{a,b}(z) = Σ_{ν∈a+Z} ν e(ν²z/2 + νb)`.
pub fn g_ab(a: f64, b: f64, z: UpperHalfPoint, tol: f64) -> Result<BoundedValue> {
    let y = z.y();
    let term = |nu: f64| z.q_power(nu * nu / 2.0) * e(nu * b) * nu;
    let bound = |m: f64| {
        // (m+k)e^{−π(m+k)²y} ≤ m e^{−πm²y} r^k
        let r = (-(2.0 * PI * m * y - 1.0 / m)).exp();
        if r >= 1.0 {
            f64::INFINITY
        } else {
            2.0 * m * (-PI * m * m * y).exp() / (1.0 - r)
        }
    };
    unary_sum(a, tol, "g_{a,b} terms", term, bound)
}

/// `R_{a,b}(τ)` as the Eichler-type integral
/// `e(−1/8) ∫_0^∞ g_{a,−b}(−τ̄+it) · i/√(2iy+it) dt` (principal root).
pub fn eichler_r(a: f64, b: f64, tau: UpperHalfPoint, tol: f64) -> Result<Integral> {
    let y = tau.y();
    let base = Complex64::new(-tau.x(), y);
    let i = Complex64::new(0.0, 1.0);
    let inner_tol = tol * 1e-3;
    let f = |t: f64| {
        let z = UpperHalfPoint(base + i * t);
        let g = g_ab(a, -b, z, inner_tol).map(|v| v.value).unwrap_or(Complex64::new(f64::NAN, 0.0));
        g * i / (Complex64::new(0.0, 2.0 * y + t)).sqrt()
    };
    let frac = a - a.round();
    let nu_min = if frac.abs() < 1e-12 { 1.0 } else { frac.abs().min(1.0 - frac.abs()) };
    let alpha = PI * nu_min * nu_min;
    // Σ|ν|e^{−πν²y}, whose neglected part is below e^{−40}
    let reach = (40.0 / (PI * y)).sqrt().ceil() as i64 + 2;
    let sup = (-reach..=reach)
        .map(|n| {
            let nu = a + n as f64;
            nu.abs() * (-PI * nu * nu * y).exp()
        })
        .sum::<f64>()
        + (-40.0f64).exp();
    let tail = |t: f64| sup * (-alpha * t).exp() / (alpha * (2.0 * y + t).sqrt());
    let mut r = integrate_to_infinity(f, 0.0, tol, tail)?;
    r.value *= e(-1.0 / 8.0);
    Ok(r)
}

/// `η(τ)` by the product, to double precision.
pub fn eta_numeric(tau: UpperHalfPoint) -> Complex64 {
    let q = tau.q_power(1.0);
    let mut p = tau.q_power(1.0 / 24.0);
    let mut qn = q;
    while qn.norm() > 1e-18 {
        p *= Complex64::new(1.0, 0.0) - qn;
        qn *= q;
    }
    p
}

/// Both sides of the theta-quotient identity for `H_{2A,r}`, `r ∈ {1, 7}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tau1Report {
    pub r: i64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    /// Residual when the `R` terms are subtracted instead of added.
    pub minus_form_residual: f64,
}

struct IdentityShape {
    a: i64,
    r_terms: [i64; 2],
}

fn shape(r: i64) -> Result<IdentityShape> {
    match r {
        1 => Ok(IdentityShape { a: 1, r_terms: [1, 11] }),
        7 => Ok(IdentityShape { a: 3, r_terms: [13, 23] }),
        _ => Err(Error::InvalidArgument(format!("identity is stated for r = 1 or 7, got {r}"))),
    }
}

/// The theta data `A = [[6,4],[4,1]]`, `a = (k/10, k/10)`,
/// `b = (3/20, −1/10)`, `c1 = (−1,4)`, `c2 = (−2,3)`.
pub fn identity_theta_data(r: i64) -> Result<IndefThetaData> {
    let k = shape(r)?.a;
    IndefThetaData::new([[6, 4], [4, 1]], [rat(k, 10), rat(k, 10)], [rat(3, 20), rat(-1, 10)], [-1, 4], [-2, 3])
}

/// Checks
/// `−e(−k/10) ϑ(τ)/η(2τ) = H_{2A,r}(τ) + Σ_s e(−s/60) R_{s/30,−1/2}(15τ)`
/// with `(k, s) = (1, {1,11})` for `r = 1` and `(3, {13,23})` for `r = 7`.
pub fn tau1_identity_check(r: i64, tau: UpperHalfPoint, tol: f64) -> Result<Tau1Report> {
    let sh = shape(r)?;
    let eta2 = eta_numeric(tau.dilate(2.0));
    let theta = vartheta_indef(&identity_theta_data(r)?, tau, tol * eta2.norm() / 10.0)?;
    let lhs = -e(-(sh.a as f64) / 10.0) * theta.value / eta2;
    let h = h_value(GroupClass::A2, r, tau, tol / 10.0)?.value;
    let mut r_sum = Complex64::new(0.0, 0.0);
    for s in sh.r_terms {
        let v = r_ab(s as f64 / 30.0, -0.5, tau.dilate(15.0), tol / 10.0)?;
        r_sum += e(-(s as f64) / 60.0) * v.value;
    }
    let rhs = h + r_sum;
    Ok(Tau1Report {
        r,
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
        minus_form_residual: (lhs - (h - r_sum)).norm(),
    })
}
