//! Adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_EVALUATIONS: usize = 4_000_000;
const MAX_SEGMENTS: usize = 80;

/// Value of an integral with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

/// `∫_a^b f` to absolute tolerance `tol` by adaptive bisection.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<Integral> {
    integrate_ref(&f, a, b, tol)
}

fn integrate_ref<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!("bad quadrature request [{a}, {b}] tol {tol}")));
    }
    let width = b - a;
    if width == 0.0 {
        return Ok(Integral { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0 });
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut stack = vec![(a, b)];
    while let Some((lo, hi)) = stack.pop() {
        let (v, err) = gk15(f, lo, hi);
        evaluations += 15;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Quadrature(format!("non-finite integrand on [{lo}, {hi}]")));
        }
        let local = tol * ((hi - lo) / width).abs();
        let mid = 0.5 * (lo + hi);
        let tiny = (hi - lo).abs() <= 1e-13 * (1.0 + lo.abs().max(hi.abs()));
        if err <= local || tiny || mid == lo || mid == hi {
            value += v;
            error += err;
        } else {
            stack.push((lo, mid));
            stack.push((mid, hi));
        }
        if evaluations > MAX_EVALUATIONS {
            return Err(Error::Quadrature(format!(
                "evaluation budget exhausted on [{a}, {b}] at tol {tol:e}"
            )));
        }
    }
    Ok(Integral { value, error, evaluations })
}

/// `∫_a^∞ f` over segments of doubling width.  `tail_bound(T)` must bound
/// `|∫_T^∞ f|`; when it returns infinity, integration stops after two
/// consecutive negligible segments instead.
pub fn integrate_to_infinity<F, B>(f: F, a: f64, tol: f64, tail_bound: B) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
    B: Fn(f64) -> f64,
{
    let mut total = Integral { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0 };
    let mut lo = a;
    let mut h = 0.5;
    let mut quiet = 0;
    for k in 0..MAX_SEGMENTS {
        let seg = integrate_ref(&f, lo, lo + h, tol / 4.0 / (1u64 << k.min(60)) as f64)?;
        total.value += seg.value;
        total.error += seg.error;
        total.evaluations += seg.evaluations;
        lo += h;
        h *= 2.0;
        let bound = tail_bound(lo);
        if bound.is_finite() {
            if bound < tol / 4.0 {
                total.error += bound;
                return Ok(total);
            }
        } else {
            quiet = if seg.value.norm() < tol * 1e-3 { quiet + 1 } else { 0 };
            if quiet >= 2 {
                return Ok(total);
            }
        }
    }
    Err(Error::Quadrature(format!("no convergence on [{a}, ∞) at tol {tol:e}")))
}
