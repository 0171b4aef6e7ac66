//! Numeric evaluation of truncated exact series.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::ToPrimitive;

use super::UpperHalfPoint;
use crate::characters::{h_component, support_sign, Family, GroupClass};
use crate::error::{Error, Result};
use crate::qseries::QSeries;

/// Largest truncation order (in powers of `q`) the `H` evaluator will build.
pub const MAX_H_ORDER: i64 = 1200;

/// A series value with an estimate of the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_estimate: f64,
    /// Truncation order used, `None` for an exact finite series.
    pub order: Option<Rational64>,
}

/// `(exponent, coefficient)` pairs in double precision, increasing exponent.
pub fn numeric_terms(s: &QSeries) -> Vec<(f64, f64)> {
    let den = s.grading_denominator() as f64;
    s.terms()
        .map(|(e, c)| (e as f64 / den, c.to_f64().unwrap_or(f64::NAN)))
        .collect()
}

/// `Σ c_n e(nτ)` over the stored terms, with a tail estimate read off the
/// decay of the last few windows of coefficients.
pub fn evaluate_series(s: &QSeries, tau: UpperHalfPoint) -> SeriesValue {
    let terms = numeric_terms(s);
    let value = terms.iter().map(|&(x, c)| tau.q_power(x) * c).sum();
    let order = s.truncation_order();
    let tail_estimate = match order {
        None => 0.0,
        Some(o) => tail_from_terms(&terms, o.to_f64().unwrap_or(f64::INFINITY), tau.y()),
    };
    SeriesValue { value, tail_estimate, order }
}

fn tail_from_terms(terms: &[(f64, f64)], order: f64, y: f64) -> f64 {
    let decay = |x: f64| (-2.0 * std::f64::consts::PI * x * y).exp();
    let Some(&(first, _)) = terms.first() else {
        return 0.0;
    };
    let span = (order - first).max(1.0);
    let w = (span / 8.0).max(1.0);
    let mut windows = [0.0f64; 4];
    for &(x, c) in terms.iter().rev() {
        let j = ((order - x) / w).floor();
        if j >= 4.0 {
            break;
        }
        if j >= 0.0 {
            windows[j as usize] += c.abs() * decay(x);
        }
    }
    let ratio = windows
        .windows(2)
        .filter(|p| p[0] > 0.0 && p[1] > 0.0)
        .map(|p| p[0] / p[1])
        .fold(f64::NAN, f64::max);
    if windows[0] > 0.0 && ratio.is_finite() {
        return if ratio < 1.0 { windows[0] * ratio / (1.0 - ratio) } else { f64::INFINITY };
    }
    // sparse tail: the next term sits at or beyond the order
    let &(x_last, c_last) = terms.last().expect("nonempty");
    c_last.abs() * decay(x_last) * decay(order - x_last).max(decay(w))
}

/// Starting truncation order for target `tol` at height `y`.
pub fn initial_order(y: f64, tol: f64) -> i64 {
    let n = ((1.0 / tol).ln() + 8.0) / (2.0 * std::f64::consts::PI * y);
    (n.ceil() as i64 + 4).max(6)
}

type CacheKey = (GroupClass, i64);

fn cache() -> &'static Mutex<HashMap<CacheKey, QSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, QSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Positive-representative component `rep ∈ {1, 7}` to order `n`, reusing
/// any longer series built earlier.
fn cached_family(class: GroupClass, rep: i64, n: i64) -> Result<QSeries> {
    let order = Rational64::from_integer(n);
    if let Some(s) = cache().lock().expect("cache poisoned").get(&(class, rep)) {
        if s.truncation_order().is_some_and(|o| o >= order) {
            return Ok(s.truncate(order));
        }
    }
    let s = h_component(class, rep, order)?;
    cache().lock().expect("cache poisoned").insert((class, rep), s.clone());
    Ok(s)
}

/// `H_{g,r}(τ)` to absolute tolerance `tol`, raising the truncation order
/// until the estimated tail drops below `tol/10`.
pub fn h_value(class: GroupClass, r: i64, tau: UpperHalfPoint, tol: f64) -> Result<SeriesValue> {
    let (fam, sign) = support_sign(r).ok_or(Error::NotInSupport(r))?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let rep = match fam {
        Family::One => 1,
        Family::Seven => 7,
    };
    let mut n = initial_order(tau.y(), tol);
    let mut last = f64::INFINITY;
    while n <= MAX_H_ORDER {
        let s = cached_family(class, rep, n)?;
        let mut v = evaluate_series(&s, tau);
        if v.tail_estimate <= tol / 10.0 {
            v.value *= sign as f64;
            return Ok(v);
        }
        last = v.tail_estimate;
        n = n * 3 / 2 + 4;
    }
    Err(Error::TailCap { what: "H_g series", bound: last, cap: MAX_H_ORDER as usize })
}
