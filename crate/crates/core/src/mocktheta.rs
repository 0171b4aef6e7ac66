//! Ramanujan's fifth-order mock theta functions `χ₀, χ₁, F₀, F₁, φ₀, φ₁`,
//! their Zwegers triple sums and Hecke-type double sums, and an exact
//! identity suite tying them to the trace functions.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::{BigRational, Rational64};
use rayon::prelude::*;

use crate::characters::{trace_closed, GroupClass, TraceId};
use crate::error::Result;
use crate::qseries::{big, euler_product, pochhammer, rat, Length, QSeries, DEFAULT_DENOMINATOR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MockTheta {
    Chi0,
    Chi1,
    F0,
    F1,
    Phi0,
    Phi1,
}

/// Ramanujan's series, with `q -> -q` when `argument_sign` is `-1`.
///
/// Valuation of the `n`-th summand: `n` for `χ₀, χ₁`; `2n²` for `F₀`;
/// `2n(n+1)` for `F₁`; `n²` for `φ₀`; `(n+1)²` for `φ₁`.  Summation stops at
/// the first `n` whose valuation exceeds `order`; valuations are increasing.
pub fn ramanujan_series(name: MockTheta, argument_sign: i64, order: Rational64) -> Result<QSeries> {
    let mut acc = QSeries::zero_to(order);
    for n in 0i64.. {
        let v = match name {
            MockTheta::Chi0 | MockTheta::Chi1 => n,
            MockTheta::F0 => 2 * n * n,
            MockTheta::F1 => 2 * n * (n + 1),
            MockTheta::Phi0 => n * n,
            MockTheta::Phi1 => (n + 1) * (n + 1),
        };
        let rest = order - v;
        if rest < Rational64::from_integer(0) {
            break;
        }
        let len = |k: i64| Length::Finite(k as u64);
        let body = match name {
            MockTheta::Chi0 => pochhammer(rat(n + 1, 1), 1, rat(1, 1), len(n), rest)?.invert_unit()?,
            MockTheta::Chi1 => pochhammer(rat(n + 1, 1), 1, rat(1, 1), len(n + 1), rest)?.invert_unit()?,
            MockTheta::F0 => pochhammer(rat(1, 1), 1, rat(2, 1), len(n), rest)?.invert_unit()?,
            MockTheta::F1 => pochhammer(rat(1, 1), 1, rat(2, 1), len(n + 1), rest)?.invert_unit()?,
            MockTheta::Phi0 | MockTheta::Phi1 => pochhammer(rat(1, 1), -1, rat(2, 1), len(n), rest)?,
        };
        acc = acc.try_add(&body.shift(rat(v, 1))?)?;
    }
    if argument_sign < 0 {
        acc = acc.substitute_neg_q()?;
    }
    Ok(acc)
}

/// Sign pattern of a two-octant double sum.
#[derive(Clone, Copy)]
enum Octants {
    /// `Σ_{≥0} + Σ_{<0}`.
    Plus,
    /// `Σ_{≥0} − Σ_{<0}`.
    Minus,
}

/// Sums `sign(k) q^{f(k)}` over the non-negative and negative octants of
/// `Z^D`, with `f` in units of `1/120`, keeping exponents `≤ bound`.  The
/// negative octant is visited through `k -> -k - 1`.  `radius` must bound
/// every coordinate of a contributing point in both octants.
fn octant_sum<const D: usize>(
    radius: i64,
    bound: i64,
    octants: Octants,
    keep: impl Fn(&[i64; D]) -> bool,
    f: impl Fn(&[i64; D]) -> i64,
    sign: impl Fn(&[i64; D]) -> i64,
) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    let mut idx = [0i64; D];
    loop {
        for neg in [false, true] {
            let k: [i64; D] = if neg { idx.map(|x| -x - 1) } else { idx };
            if !keep(&k) {
                continue;
            }
            let e = f(&k);
            if e <= bound {
                let mut c = sign(&k);
                if neg && matches!(octants, Octants::Minus) {
                    c = -c;
                }
                *out.entry(e).or_insert(0) += c;
            }
        }
        // odometer over [0, radius]^D
        let mut i = 0;
        while i < D {
            idx[i] += 1;
            if idx[i] <= radius {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == D {
            break;
        }
    }
    out
}

fn parity(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Box radius for exponents `≥ |k|²/2 − O(|k|)` bounded by `order`.
fn box_radius(order: Rational64) -> i64 {
    let o = (*order.numer() as f64 / *order.denom() as f64).max(0.0);
    (2.0 * o).sqrt().floor() as i64 + 3
}

fn bound_numerator(order: Rational64) -> i64 {
    (order * DEFAULT_DENOMINATOR).floor().to_integer()
}

fn series(map: BTreeMap<i64, i64>, order: Rational64) -> QSeries {
    QSeries::from_int_terms(DEFAULT_DENOMINATOR, map, Some(order))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleSide {
    /// Right-hand side of `2 − χ₀ = …`.
    Chi0,
    /// Right-hand side of `χ₁ = …`.
    Chi1,
}

/// `(q;q)_∞^{-2} (Σ_{≥0} + Σ_{<0}) (−1)^{k+l+m} q^{Q(k,l,m) + s(k+l+m)/2}`
/// with `s = 1` or `3`.
pub fn zwegers_triple_sum(side: TripleSide, order: Rational64) -> Result<QSeries> {
    let s = match side {
        TripleSide::Chi0 => 1,
        TripleSide::Chi1 => 3,
    };
    let f = |k: &[i64; 3]| {
        let (a, b, c) = (k[0], k[1], k[2]);
        60 * (a * a + b * b + c * c) + 240 * (a * b + b * c + c * a) + 60 * s * (a + b + c)
    };
    let sum = octant_sum(
        box_radius(order),
        bound_numerator(order),
        Octants::Plus,
        |_| true,
        f,
        |k| parity(k[0] + k[1] + k[2]),
    );
    let pref = euler_product(1, order)?.powi(-2)?;
    Ok(pref.try_mul(&series(sum, order))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeckeVariant {
    /// `(q;q)/(q²;q²)²` times the `φ₀` Hecke sum; equals `φ₀(−q)`.
    Phi0,
    /// `(q;q)/(q²;q²)²` times the `φ₁` Hecke sum; equals `−q⁻¹φ₁(−q)`.
    Phi1,
    /// The bare `φ₀` Hecke sum (left side of the first product identity).
    ProductLhs1,
    /// The bare `φ₁` Hecke sum (left side of the second product identity).
    ProductLhs7,
    /// `∏(1+qⁿ)` times the transposition double sum at `a = 1`.
    ProductRhs1,
    /// `∏(1+qⁿ)` times the transposition double sum at `a = 3`.
    ProductRhs7,
}

/// `(Σ_{k,m≥0} − Σ_{k,m<0})_{k≡m (2)} (−1)^m q^{k²/2+m²/2+4km+αk/2+βm/2}`.
fn hecke_sum(alpha: i64, beta: i64, order: Rational64) -> QSeries {
    let f = |k: &[i64; 2]| 60 * (k[0] * k[0] + k[1] * k[1]) + 480 * k[0] * k[1] + 60 * (alpha * k[0] + beta * k[1]);
    let sum = octant_sum(
        box_radius(order),
        bound_numerator(order),
        Octants::Minus,
        |k| (k[0] - k[1]).rem_euclid(2) == 0,
        f,
        |k| parity(k[1]),
    );
    series(sum, order)
}

/// `(Σ_{k,m≥0} − Σ_{k,m<0}) (−1)^{k+m} q^{3k²+m²/2+4km+a(2k+m)/2}`.
fn transposition_sum(a: i64, order: Rational64) -> QSeries {
    let f = |k: &[i64; 2]| 360 * k[0] * k[0] + 60 * k[1] * k[1] + 480 * k[0] * k[1] + 60 * a * (2 * k[0] + k[1]);
    let sum = octant_sum(box_radius(order), bound_numerator(order), Octants::Minus, |_| true, f, |k| {
        parity(k[0] + k[1])
    });
    series(sum, order)
}

/// `∏_{n>0}(1+qⁿ) = (q²;q²)_∞ / (q;q)_∞`.
fn plus_product(order: Rational64) -> Result<QSeries> {
    pochhammer(rat(1, 1), -1, rat(1, 1), Length::Infinite, order)
}

pub fn hecke_double_sum(variant: HeckeVariant, order: Rational64) -> Result<QSeries> {
    let hecke_pref = || -> Result<QSeries> {
        euler_product(1, order)?.try_mul(&euler_product(2, order)?.powi(-2)?)
    };
    Ok(match variant {
        HeckeVariant::Phi0 => hecke_pref()?.try_mul(&hecke_sum(1, 3, order))?,
        HeckeVariant::Phi1 => hecke_pref()?.try_mul(&hecke_sum(3, 5, order))?,
        HeckeVariant::ProductLhs1 => hecke_sum(1, 3, order),
        HeckeVariant::ProductLhs7 => hecke_sum(3, 5, order),
        HeckeVariant::ProductRhs1 => plus_product(order)?.try_mul(&transposition_sum(1, order))?,
        HeckeVariant::ProductRhs7 => plus_product(order)?.try_mul(&transposition_sum(3, order))?,
    })
}

/// Outcome of comparing two series up to a common truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: String,
    pub order: Rational64,
    pub verified: bool,
    /// `(exponent, lhs coefficient, rhs coefficient)` of the first mismatch.
    pub first_discrepancy: Option<(Rational64, BigRational, BigRational)>,
}

impl IdentityReport {
    /// Compares `lhs` and `rhs` after truncating both at `order`.
    pub fn compare(name: impl Into<String>, lhs: &QSeries, rhs: &QSeries, order: Rational64) -> Result<Self> {
        let (l, r) = (lhs.truncate(order), rhs.truncate(order));
        let common = match (l.truncation_order(), r.truncation_order()) {
            (Some(a), Some(b)) => a.min(b),
            _ => order,
        };
        let first_discrepancy = l.truncate(common).first_difference(&r.truncate(common))?;
        Ok(IdentityReport {
            name: name.into(),
            order: common,
            verified: first_discrepancy.is_none(),
            first_discrepancy,
        })
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_discrepancy {
            None => write!(f, "verified  {} (to order {})", self.name, self.order),
            Some((e, l, r)) => write!(
                f,
                "FAILED    {} (to order {}): first discrepancy at q^({e}): {l} vs {r}",
                self.name, self.order
            ),
        }
    }
}

/// The exact identities checked by [`identity_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    ZwegersChi0,
    ZwegersChi1,
    ChiFPhi0,
    ChiFPhi1,
    HeckePhi0,
    HeckePhi1,
    HeckeProduct1,
    HeckeProduct7,
    ComponentsF3,
    ComponentsF4,
    H1AOne,
    H1ASeven,
    H2AOne,
    H2ASeven,
}

impl Identity {
    pub const ALL: [Identity; 14] = [
        Identity::ZwegersChi0,
        Identity::ZwegersChi1,
        Identity::ChiFPhi0,
        Identity::ChiFPhi1,
        Identity::HeckePhi0,
        Identity::HeckePhi1,
        Identity::HeckeProduct1,
        Identity::HeckeProduct7,
        Identity::ComponentsF3,
        Identity::ComponentsF4,
        Identity::H1AOne,
        Identity::H1ASeven,
        Identity::H2AOne,
        Identity::H2ASeven,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::ZwegersChi0 => "2 - chi0 = triple sum (s=1)",
            Identity::ZwegersChi1 => "chi1 = triple sum (s=3)",
            Identity::ChiFPhi0 => "chi0 = 2 F0 - phi0(-q)",
            Identity::ChiFPhi1 => "chi1 = 2 F1 + q^-1 phi1(-q)",
            Identity::HeckePhi0 => "phi0(-q) = Hecke double sum",
            Identity::HeckePhi1 => "-q^-1 phi1(-q) = Hecke double sum",
            Identity::HeckeProduct1 => "Hecke sum (phi0) = prod(1+q^n) x transposition sum (a=1)",
            Identity::HeckeProduct7 => "Hecke sum (phi1) = prod(1+q^n) x transposition sum (a=3)",
            Identity::ComponentsF3 => "2T-(1A,1) = 4 F513(2tau) - 2 F523(2tau)",
            Identity::ComponentsF4 => "2T-(1A,7) = 4 F514(2tau) - 2 F524(2tau)",
            Identity::H1AOne => "H(1A,1) = 2 q^(-1/120) (chi0 - 2)",
            Identity::H1ASeven => "H(1A,7) = 2 q^(71/120) chi1",
            Identity::H2AOne => "H(2A,1) = -2 q^(-1/120) phi0(-q)",
            Identity::H2ASeven => "H(2A,7) = 2 q^(-49/120) phi1(-q)",
        }
    }

    /// Both sides, each valid at least to `order`.
    pub fn sides(self, order: Rational64) -> Result<(QSeries, QSeries)> {
        use HeckeVariant as H;
        use MockTheta::*;
        let o = order;
        // Series in q multiplied by q^(-49/120) need one extra unit of order.
        let o1 = order + 1;
        let rs = ramanujan_series;
        let two = big(2);
        Ok(match self {
            Identity::ZwegersChi0 => {
                (QSeries::constant(two).try_sub(&rs(Chi0, 1, o)?)?, zwegers_triple_sum(TripleSide::Chi0, o)?)
            }
            Identity::ZwegersChi1 => (rs(Chi1, 1, o)?, zwegers_triple_sum(TripleSide::Chi1, o)?),
            Identity::ChiFPhi0 => (rs(Chi0, 1, o)?, rs(F0, 1, o)?.scale_int(2).try_sub(&rs(Phi0, -1, o)?)?),
            Identity::ChiFPhi1 => (
                rs(Chi1, 1, o)?,
                rs(F1, 1, o)?.scale_int(2).try_add(&rs(Phi1, -1, o1)?.shift(rat(-1, 1))?)?,
            ),
            Identity::HeckePhi0 => (rs(Phi0, -1, o)?, hecke_double_sum(H::Phi0, o)?),
            Identity::HeckePhi1 => (
                -rs(Phi1, -1, o1)?.shift(rat(-1, 1))?,
                hecke_double_sum(H::Phi1, o)?,
            ),
            Identity::HeckeProduct1 => (hecke_double_sum(H::ProductLhs1, o)?, hecke_double_sum(H::ProductRhs1, o)?),
            Identity::HeckeProduct7 => (hecke_double_sum(H::ProductLhs7, o)?, hecke_double_sum(H::ProductRhs7, o)?),
            Identity::ComponentsF3 => {
                let t = trace_closed(TraceId::new(GroupClass::A1, 1, -1), o)?.scale_int(2);
                let f513 = rs(F0, 1, o1)?.try_sub(&QSeries::one())?.shift(rat(-1, 120))?;
                let f523 = rs(Phi0, -1, o1)?.shift(rat(-1, 120))?;
                (t, f513.scale_int(4).try_sub(&f523.scale_int(2))?)
            }
            Identity::ComponentsF4 => {
                let t = trace_closed(TraceId::new(GroupClass::A1, 7, -1), o)?.scale_int(2);
                let f514 = rs(F1, 1, o)?.shift(rat(71, 120))?;
                let f524 = -rs(Phi1, -1, o1)?.shift(rat(-49, 120))?;
                (t, f514.scale_int(4).try_sub(&f524.scale_int(2))?)
            }
            Identity::H1AOne => {
                let h = crate::characters::h_component(GroupClass::A1, 1, o)?;
                let chi = rs(Chi0, 1, o1)?.try_sub(&QSeries::constant(two))?;
                (h, chi.shift(rat(-1, 120))?.scale_int(2))
            }
            Identity::H1ASeven => {
                let h = crate::characters::h_component(GroupClass::A1, 7, o)?;
                (h, rs(Chi1, 1, o)?.shift(rat(71, 120))?.scale_int(2))
            }
            Identity::H2AOne => {
                let h = crate::characters::h_component(GroupClass::A2, 1, o)?;
                (h, rs(Phi0, -1, o1)?.shift(rat(-1, 120))?.scale_int(-2))
            }
            Identity::H2ASeven => {
                let h = crate::characters::h_component(GroupClass::A2, 7, o)?;
                (h, rs(Phi1, -1, o1)?.shift(rat(-49, 120))?.scale_int(2))
            }
        })
    }

    pub fn check(self, order: Rational64) -> Result<IdentityReport> {
        let (lhs, rhs) = self.sides(order)?;
        IdentityReport::compare(self.name(), &lhs, &rhs, order)
    }
}

/// Runs every identity in [`Identity::ALL`] at `order`, in parallel, with
/// reports in the fixed order of `ALL`.
pub fn identity_suite(order: Rational64) -> Result<Vec<IdentityReport>> {
    Identity::ALL.par_iter().map(|id| id.check(order)).collect()
}
