//! Exact truncated Puiseux series in `q^(1/Δ)`.
//!
//! A [`QSeries`] stores integer exponent numerators over a grading
//! denominator `Δ` together with exact rational coefficients and a truncation
//! order.  Coefficients above the truncation order are unknown, and asking for
//! one is an error rather than a silent zero.  A series with no truncation
//! order is exact (a Laurent polynomial in `q^(1/Δ)`).

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Grading denominator used for every E8³ series.
pub const DEFAULT_DENOMINATOR: i64 = 120;

/// Largest grading denominator produced by lcm rescaling.
pub const MAX_DENOMINATOR: i64 = 1 << 24;

/// Shorthand for a small rational.
pub fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

pub(crate) fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Numerator of `x` over `den`, if `x` lies in `(1/den)Z`.
fn numerator_in(x: Rational64, den: i64) -> Result<i64> {
    if den % x.denom() != 0 {
        return Err(Error::GradingTooCoarse { exponent: x, denominator: den });
    }
    x.numer().checked_mul(den / x.denom()).ok_or(Error::ExponentOverflow(den))
}

/// `floor(x * den)`.
fn floor_numerator(x: Rational64, den: i64) -> i64 {
    let n = *x.numer() as i128 * den as i128;
    Integer::div_floor(&n, &(*x.denom() as i128)) as i64
}

/// Length of a Pochhammer product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Length {
    Finite(u64),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    den: i64,
    coeffs: BTreeMap<i64, BigRational>,
    order: Option<i64>,
}

impl QSeries {
    /// Exact zero.
    pub fn zero() -> Self {
        Self::zero_in(DEFAULT_DENOMINATOR, None)
    }

    /// Zero with the given denominator and truncation numerator.
    pub fn zero_in(den: i64, order: Option<i64>) -> Self {
        assert!(den > 0, "grading denominator must be positive");
        QSeries { den, coeffs: BTreeMap::new(), order }
    }

    /// Zero known up to `order`.
    pub fn zero_to(order: Rational64) -> Self {
        Self::zero_in(DEFAULT_DENOMINATOR, Some(floor_numerator(order, DEFAULT_DENOMINATOR)))
    }

    /// Exact one.
    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::constant_in(DEFAULT_DENOMINATOR, c)
    }

    pub fn constant_in(den: i64, c: BigRational) -> Self {
        Self::from_map(den, BTreeMap::from([(0, c)]), None)
    }

    pub fn one_in(den: i64) -> Self {
        Self::constant_in(den, BigRational::one())
    }

    /// Exact monomial `c q^exp` with the default denominator.
    pub fn monomial(c: BigRational, exp: Rational64) -> Result<Self> {
        Self::monomial_in(DEFAULT_DENOMINATOR, c, exp)
    }

    pub fn monomial_in(den: i64, c: BigRational, exp: Rational64) -> Result<Self> {
        let e = numerator_in(exp, den)?;
        Ok(Self::from_map(den, BTreeMap::from([(e, c)]), None))
    }

    /// Builds a canonical series from `(numerator, coefficient)` pairs.
    /// Repeated numerators are summed; terms above `order` are dropped.
    pub fn from_terms<I>(den: i64, terms: I, order: Option<Rational64>) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let order = order.map(|o| floor_numerator(o, den));
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if order.is_some_and(|o| e > o) {
                continue;
            }
            accumulate(&mut map, e, c);
        }
        Self::from_map(den, map, order)
    }

    /// Like [`from_terms`](Self::from_terms) with integer coefficients.
    pub fn from_int_terms<I>(den: i64, terms: I, order: Option<Rational64>) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        Self::from_terms(den, terms.into_iter().map(|(e, c)| (e, big(c))), order)
    }

    fn from_map(den: i64, mut coeffs: BTreeMap<i64, BigRational>, order: Option<i64>) -> Self {
        assert!(den > 0, "grading denominator must be positive");
        coeffs.retain(|e, c| !c.is_zero() && order.map_or(true, |o| *e <= o));
        QSeries { den, coeffs, order }
    }

    pub fn grading_denominator(&self) -> i64 {
        self.den
    }

    /// Truncation order, or `None` for an exact series.
    pub fn truncation_order(&self) -> Option<Rational64> {
        self.order.map(|o| Rational64::new(o, self.den))
    }

    pub fn order_numerator(&self) -> Option<i64> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// True when no coefficient is stored (zero up to truncation).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent numerator with a nonzero coefficient.
    pub fn valuation_numerator(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn valuation(&self) -> Option<Rational64> {
        self.valuation_numerator().map(|e| Rational64::new(e, self.den))
    }

    /// Stored terms as `(numerator, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `q^exponent`.
    pub fn coefficient(&self, exponent: Rational64) -> Result<BigRational> {
        if let Some(o) = self.order {
            if exponent > Rational64::new(o, self.den) {
                return Err(Error::BeyondTruncation {
                    exponent,
                    order: Rational64::new(o, self.den),
                });
            }
        }
        Ok(match numerator_in(exponent, self.den) {
            Ok(e) => self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero),
            Err(_) => BigRational::zero(),
        })
    }

    /// Coefficient of `q^(e/Δ)`.
    pub fn coefficient_at(&self, e: i64) -> Result<BigRational> {
        self.coefficient(Rational64::new(e, self.den))
    }

    /// Same series over a finer denominator (`den` must be a multiple of Δ).
    pub fn rescaled(&self, den: i64) -> Result<Self> {
        if den == self.den {
            return Ok(self.clone());
        }
        if den <= 0 || den % self.den != 0 || den > MAX_DENOMINATOR {
            return Err(Error::ExponentOverflow(den));
        }
        let k = den / self.den;
        let scale = |e: i64| e.checked_mul(k).ok_or(Error::ExponentOverflow(den));
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            coeffs.insert(scale(*e)?, c.clone());
        }
        let order = self.order.map(scale).transpose()?;
        Ok(QSeries { den, coeffs, order })
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> Result<(Cow<'a, Self>, Cow<'a, Self>)> {
        if self.den == other.den {
            return Ok((Cow::Borrowed(self), Cow::Borrowed(other)));
        }
        let den = self.den.lcm(&other.den);
        if den > MAX_DENOMINATOR {
            return Err(Error::ExponentOverflow(den));
        }
        Ok((Cow::Owned(self.rescaled(den)?), Cow::Owned(other.rescaled(den)?)))
    }

    /// Lowers the truncation order to `order` (never raises it).
    pub fn truncate(&self, order: Rational64) -> Self {
        let o = floor_numerator(order, self.den);
        let o = self.order.map_or(o, |old| old.min(o));
        let coeffs = self.coeffs.range(..=o).map(|(e, c)| (*e, c.clone())).collect();
        QSeries { den: self.den, coeffs, order: Some(o) }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        let order = min_order(a.order, b.order);
        let mut map = a.coeffs.clone();
        for (e, c) in &b.coeffs {
            accumulate(&mut map, *e, c.clone());
        }
        Ok(Self::from_map(a.den, map, order))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        let den = a.den;
        if (a.is_exact() && a.is_zero()) || (b.is_exact() && b.is_zero()) {
            return Ok(Self::zero_in(den, None));
        }
        // Zero truncated series count with valuation equal to their order.
        let va = a.valuation_numerator().or(a.order).unwrap();
        let vb = b.valuation_numerator().or(b.order).unwrap();
        let order = min_order(a.order.map(|o| o + vb), b.order.map(|o| o + va));
        let mut map = BTreeMap::new();
        for (e1, c1) in &a.coeffs {
            if order.is_some_and(|o| e1 + vb > o) {
                break;
            }
            for (e2, c2) in &b.coeffs {
                let e = e1 + e2;
                if order.is_some_and(|o| e > o) {
                    break;
                }
                accumulate(&mut map, e, c1 * c2);
            }
        }
        Ok(Self::from_map(den, map, order))
    }

    /// Multiplies by a rational constant.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.den, self.order);
        }
        let coeffs = self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect();
        QSeries { den: self.den, coeffs, order: self.order }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&big(c))
    }

    /// Multiplies by `q^exp`.
    pub fn shift(&self, exp: Rational64) -> Result<Self> {
        let den = if self.den % exp.denom() == 0 {
            self.den
        } else {
            self.den.lcm(exp.denom())
        };
        let s = self.rescaled(den)?;
        let k = numerator_in(exp, den)?;
        Ok(s.shift_numerator(k))
    }

    /// Multiplies by `q^(k/Δ)`.
    pub fn shift_numerator(&self, k: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect();
        QSeries { den: self.den, coeffs, order: self.order.map(|o| o + k) }
    }

    /// Multiplies in place by the exact binomial `1 - c q^(e/Δ)` with `e > 0`.
    fn mul_binomial(&mut self, c: &BigRational, e: i64) {
        debug_assert!(e > 0);
        let adds: Vec<(i64, BigRational)> = self
            .coeffs
            .iter()
            .take_while(|(k, _)| self.order.map_or(true, |o| *k + e <= o))
            .map(|(k, x)| (k + e, -(x * c)))
            .collect();
        for (k, x) in adds {
            accumulate(&mut self.coeffs, k, x);
        }
    }

    /// Multiplicative inverse of a series with nonzero leading coefficient.
    pub fn invert_unit(&self) -> Result<Self> {
        let (v, c0) = match self.coeffs.iter().next() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(Error::NotUnit("zero series")),
        };
        let inv0 = c0.recip();
        let Some(order) = self.order else {
            if self.coeffs.len() == 1 {
                return Ok(Self::from_map(self.den, BTreeMap::from([(-v, inv0)]), None));
            }
            return Err(Error::Untruncated);
        };
        // Work with u = s / (c0 q^v) = 1 + sum u_d q^d in steps of g.
        let precision = order - v;
        let mut g = 0i64;
        for e in self.coeffs.keys() {
            g = g.gcd(&(e - v));
        }
        if g == 0 {
            g = 1;
        }
        let n = (precision / g) as usize;
        let u: Vec<(usize, BigRational)> = self
            .coeffs
            .iter()
            .skip(1)
            .map(|(e, c)| (((e - v) / g) as usize, c * &inv0))
            .filter(|(d, _)| *d <= n)
            .collect();
        let mut w: Vec<BigRational> = Vec::with_capacity(n + 1);
        w.push(BigRational::one());
        for d in 1..=n {
            let mut acc = BigRational::zero();
            for (j, uj) in &u {
                if *j > d {
                    break;
                }
                if !w[d - j].is_zero() {
                    acc -= uj * &w[d - j];
                }
            }
            w.push(acc);
        }
        let map = w
            .into_iter()
            .enumerate()
            .map(|(d, x)| (-v + d as i64 * g, x * &inv0))
            .collect();
        Ok(Self::from_map(self.den, map, Some(order - 2 * v)))
    }

    /// Integer power; negative powers go through [`invert_unit`](Self::invert_unit).
    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.invert_unit()? } else { self.clone() };
        let mut acc = Self::one_in(self.den);
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Substitutes `q -> -q`.  All exponents must be integers.
    pub fn substitute_neg_q(&self) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            if e % self.den != 0 {
                return Err(Error::InvalidArgument(format!(
                    "q -> -q needs integral exponents, found {}",
                    Rational64::new(*e, self.den)
                )));
            }
            let odd = (e / self.den) % 2 != 0;
            coeffs.insert(*e, if odd { -c.clone() } else { c.clone() });
        }
        Ok(QSeries { den: self.den, coeffs, order: self.order })
    }

    /// Substitutes `q -> q^k` for a positive integer `k`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k > 0, "dilation factor must be positive");
        let coeffs = self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect();
        QSeries { den: self.den, coeffs, order: self.order.map(|o| o * k) }
    }

    /// First exponent (up to the common truncation) where the two series differ,
    /// with both coefficients.
    pub fn first_difference(
        &self,
        other: &Self,
    ) -> Result<Option<(Rational64, BigRational, BigRational)>> {
        let diff = self.try_sub(other)?;
        Ok(diff.coeffs.iter().next().map(|(e, _)| {
            let x = Rational64::new(*e, diff.den);
            let lhs = self.coefficient(x).unwrap_or_else(|_| BigRational::zero());
            let rhs = other.coefficient(x).unwrap_or_else(|_| BigRational::zero());
            (x, lhs, rhs)
        }))
    }

    /// Largest absolute coefficient among exponents in `[lo, hi]` (as f64).
    pub fn max_abs_in(&self, lo: i64, hi: i64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .range(lo..=hi)
            .map(|(_, c)| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn accumulate(map: &mut BTreeMap<i64, BigRational>, e: i64, c: BigRational) {
    use std::collections::btree_map::Entry;
    match map.entry(e) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// `prod_{k<n} (1 - x_sign q^(x_exponent + k step))` truncated at `order`.
pub fn pochhammer(
    x_exponent: Rational64,
    x_sign: i64,
    step: Rational64,
    n: Length,
    order: Rational64,
) -> Result<QSeries> {
    pochhammer_in(DEFAULT_DENOMINATOR, x_exponent, x_sign, step, n, order)
}

pub fn pochhammer_in(
    den: i64,
    x_exponent: Rational64,
    x_sign: i64,
    step: Rational64,
    n: Length,
    order: Rational64,
) -> Result<QSeries> {
    if x_sign != 1 && x_sign != -1 {
        return Err(Error::InvalidArgument(format!("x_sign must be ±1, got {x_sign}")));
    }
    if step <= Rational64::zero() {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    let e0 = numerator_in(x_exponent, den)?;
    let ds = numerator_in(step, den)?;
    if n == Length::Infinite && e0 <= 0 {
        return Err(Error::Divergent(x_exponent));
    }
    let mut acc = QSeries::one_in(den).truncate(order);
    let c = big(x_sign);
    let mut k = 0u64;
    loop {
        if let Length::Finite(len) = n {
            if k >= len {
                break;
            }
        }
        let e = e0 + k as i64 * ds;
        if e > 0 {
            if acc.order.is_some_and(|o| e > o) {
                break;
            }
            acc.mul_binomial(&c, e);
        } else {
            let factor = QSeries::from_terms(den, [(0, BigRational::one()), (e, -c.clone())], None);
            acc = acc.try_mul(&factor)?;
        }
        k += 1;
    }
    Ok(acc)
}

/// `(q^s; q^s)_∞` truncated at `order`.
pub fn euler_product(s: i64, order: Rational64) -> Result<QSeries> {
    pochhammer(rat(s, 1), 1, rat(s, 1), Length::Infinite, order)
}

/// `η(sτ) = q^(s/24) (q^s; q^s)_∞` truncated at `order`.
pub fn dedekind_eta(s: i64, order: Rational64) -> Result<QSeries> {
    dedekind_eta_in(DEFAULT_DENOMINATOR, s, order)
}

pub fn dedekind_eta_in(den: i64, s: i64, order: Rational64) -> Result<QSeries> {
    if s <= 0 {
        return Err(Error::InvalidArgument(format!("eta scale must be positive, got {s}")));
    }
    let lead = rat(s, 24);
    numerator_in(lead, den)?;
    let prod = pochhammer_in(den, rat(s, 1), 1, rat(s, 1), Length::Infinite, order - lead)?;
    prod.shift(lead)
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&QSeries> for &QSeries {
            type Output = QSeries;
            /// # Panics
            /// When aligning the grading denominators exceeds [`MAX_DENOMINATOR`].
            fn $m(self, rhs: &QSeries) -> QSeries {
                self.$try(rhs).expect("grading denominators cannot be aligned")
            }
        }
        impl $tr<QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: &QSeries) -> QSeries {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect();
        QSeries { den: self.den, coeffs, order: self.order }
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            let x = Rational64::new(*e, self.den);
            if first {
                write!(f, "{c}")?;
            } else if c.is_negative() {
                write!(f, " - {}", -c)?;
            } else {
                write!(f, " + {c}")?;
            }
            if !x.is_zero() {
                write!(f, "*q^({x})")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(o) = self.truncation_order() {
            write!(f, " + O(q^({o})+)")?;
        }
        Ok(())
    }
}
