//! Unary theta series, shadow vectors, the thetanullwerte exponent-class scan
//! and the `ηJ` series.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::{BigRational, Rational64};

use crate::characters::{support_sign, GroupClass, MockFormVector, FAMILY_ONE, FAMILY_SEVEN};
use crate::error::{Error, Result};
use crate::qseries::{big, dedekind_eta_in, rat, QSeries, DEFAULT_DENOMINATOR};

fn positive(x: Rational64) -> f64 {
    (*x.numer() as f64 / *x.denom() as f64).max(0.0)
}

/// `S_{m,r} = Σ_k (2km + r) q^{(2km+r)²/4m}`.
pub fn s_unary(m: i64, r: i64, order: Rational64) -> Result<QSeries> {
    if m <= 0 {
        return Err(Error::InvalidArgument(format!("S_(m,r) needs m > 0, got {m}")));
    }
    let den = DEFAULT_DENOMINATOR.lcm(&(4 * m));
    let scale = den / (4 * m);
    let nmax = (4.0 * m as f64 * positive(order)).sqrt().floor() as i64 + 1;
    let kmax = nmax / (2 * m) + 1;
    // the k-window is centred, so r must be reduced first
    let r = r.rem_euclid(2 * m);
    let terms = (-kmax..=kmax)
        .map(|k| 2 * k * m + r)
        .filter(|n| *n != 0 && n.abs() <= nmax + 2 * m)
        .map(|n| (n * n * scale, n));
    Ok(QSeries::from_int_terms(den, terms, Some(order)))
}

/// `g_{a,0}(sτ) = Σ_{ν∈a+Z} ν q^{sν²/2}`.
pub fn g_series(a: Rational64, s: i64, order: Rational64) -> Result<QSeries> {
    if s <= 0 {
        return Err(Error::InvalidArgument(format!("scale must be positive, got {s}")));
    }
    let d = *a.denom();
    let p = *a.numer();
    // exponent s(p + kd)²/(2d²)
    let q_den = 2 * d * d;
    let den = DEFAULT_DENOMINATOR.lcm(&(q_den / s.gcd(&q_den)));
    let numax = (2.0 * positive(order) / s as f64).sqrt() + 1.0;
    let kmax = (numax * d as f64).ceil() as i64 / d + 2;
    let mut terms = Vec::new();
    for k in -kmax..=kmax {
        let n = p + k * d;
        let e = Rational64::new(s * n * n, q_den);
        if n == 0 || e > order {
            continue;
        }
        let num = (e * den).to_integer();
        terms.push((num, BigRational::new(n.into(), d.into())));
    }
    Ok(QSeries::from_terms(den, terms, Some(order)))
}

/// Weight-3/2 shadow of `H_g`, indexed by `r mod 60`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShadowVector {
    pub class: GroupClass,
    pub vector: MockFormVector,
}

impl ShadowVector {
    pub fn component(&self, r: i64) -> QSeries {
        self.vector.component(r)
    }
}

/// `χ̄_g(S_{30,1}+S_{30,11}+S_{30,19}+S_{30,29})` on the first family and
/// `χ̄_g(S_{30,7}+S_{30,13}+S_{30,17}+S_{30,23})` on the second, extended oddly.
pub fn shadow_vector(class: GroupClass, order: Rational64) -> Result<ShadowVector> {
    let chi = class.perm_character();
    let family = |reps: [i64; 4]| -> Result<QSeries> {
        let mut acc = QSeries::zero_to(order);
        for r in reps {
            acc = acc.try_add(&s_unary(30, r, order)?)?;
        }
        Ok(acc.scale_int(chi))
    };
    let vector = MockFormVector::from_families(family(FAMILY_ONE)?, family(FAMILY_SEVEN)?);
    Ok(ShadowVector { class, vector })
}

/// Result of the thetanullwerte exponent-class scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullwerteReport {
    pub base: i64,
    pub pairs_scanned: usize,
    /// `(n, r, class)` for every `θ⁰_{n,r}` whose exponents fall in a target class.
    pub hits: Vec<(i64, i64, Rational64)>,
}

/// Exponent classes mod 1 of the polar parts that a nonzero component of a
/// holomorphic competitor would need.
pub fn target_classes() -> [Rational64; 2] {
    [rat(119, 120), rat(71, 120)]
}

/// Exponent classes `(2kn + r)²/4n mod 1` for `k` over a full period.
pub fn nullwert_classes(n: i64, r: i64) -> BTreeSet<Rational64> {
    (0..2 * n)
        .map(|k| {
            let x = Rational64::new((2 * k * n + r).pow(2), 4 * n);
            x - x.floor()
        })
        .collect()
}

/// Scans every `θ⁰_{n,r}` with `n | base` and `r mod 2n` for the target classes.
pub fn thetanullwerte_class_check(base: i64) -> Result<NullwerteReport> {
    if base <= 0 {
        return Err(Error::InvalidArgument(format!("base must be positive, got {base}")));
    }
    let targets = target_classes();
    let mut hits = Vec::new();
    let mut pairs = 0;
    for n in (1..=base).filter(|n| base % n == 0) {
        for r in 0..2 * n {
            pairs += 1;
            for c in nullwert_classes(n, r) {
                if targets.contains(&c) {
                    hits.push((n, r, c));
                }
            }
        }
    }
    Ok(NullwerteReport { base, pairs_scanned: pairs, hits })
}

fn sigma3(n: i64) -> i64 {
    (1..=n).filter(|d| n % d == 0).map(|d| d * d * d).sum()
}

/// `η(τ)J(τ)` with `J = E₄³/Δ − 744`, graded in `q^(1/24)`.
pub fn eta_j_coefficients(order: Rational64) -> Result<QSeries> {
    const DEN: i64 = 24;
    let inner = order + 2;
    let n = inner.floor().to_integer().max(0);
    let e4 = QSeries::from_terms(
        DEN,
        (0..=n).map(|k| (k * DEN, if k == 0 { big(1) } else { big(240 * sigma3(k)) })),
        Some(inner),
    );
    // Δ = η²⁴
    let disc = dedekind_eta_in(DEN, 1, inner)?.powi(24)?;
    let j = e4.powi(3)?.try_mul(&disc.invert_unit()?)?.try_sub(&QSeries::constant_in(DEN, big(744)))?;
    let eta = dedekind_eta_in(DEN, 1, inner)?;
    Ok(eta.try_mul(&j)?.truncate(order))
}

/// Whether `r` indexes a nonzero component.
pub fn in_support(r: i64) -> bool {
    support_sign(r).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_unary_leading_term() {
        let s = s_unary(30, 1, rat(30, 1)).unwrap();
        assert_eq!(s.valuation(), Some(rat(1, 120)));
        assert_eq!(s.coefficient(rat(1, 120)).unwrap(), big(1));
        // k = -1: n = -59
        assert_eq!(s.coefficient(rat(59 * 59, 120)).unwrap(), big(-59));
    }

    #[test]
    fn s_unary_symmetries() {
        let o = rat(20, 1);
        for (m, r) in [(30, 1), (30, 7), (5, 3), (7, 2)] {
            assert_eq!(s_unary(m, -r, o).unwrap(), -s_unary(m, r, o).unwrap());
            assert_eq!(s_unary(m, r + 2 * m, o).unwrap(), s_unary(m, r, o).unwrap());
        }
    }

    #[test]
    fn g_series_matches_unary_theta() {
        let o = rat(10, 1);
        for r in [1, 7, 11, 13, 17, 19, 23, 29] {
            let g = g_series(rat(r, 60), 60, o).unwrap();
            let s = s_unary(30, r, o).unwrap().scale(&BigRational::new(1.into(), 60.into()));
            assert_eq!(g, s, "r={r}");
        }
    }

    #[test]
    fn g_series_half_argument_is_different() {
        let o = rat(10, 1);
        let g = g_series(rat(1, 60), 30, o).unwrap();
        let s = s_unary(30, 1, o).unwrap().scale(&BigRational::new(1.into(), 60.into()));
        assert_ne!(g, s);
    }

    #[test]
    fn shadow_examples() {
        let o = rat(5, 1);
        let sh = shadow_vector(GroupClass::A1, o).unwrap();
        let mut want = QSeries::zero_to(o);
        for r in FAMILY_ONE {
            want = want + s_unary(30, r, o).unwrap();
        }
        assert_eq!(sh.component(1), want.scale_int(3));
        let sh3 = shadow_vector(GroupClass::A3, o).unwrap();
        assert!(sh3.vector.components().all(|(_, s)| s.is_empty()));
        let sh2 = shadow_vector(GroupClass::A2, o).unwrap();
        let mut seven = QSeries::zero_to(o);
        for r in FAMILY_SEVEN {
            seven = seven + s_unary(30, r, o).unwrap();
        }
        assert_eq!(sh2.component(53), -seven);
    }

    #[test]
    fn nullwerte_examples() {
        assert_eq!(nullwert_classes(1, 0), BTreeSet::from([rat(0, 1)]));
        let c = nullwert_classes(30, 1);
        assert!(c.contains(&rat(1, 120)));
        assert!(!c.contains(&rat(119, 120)) && !c.contains(&rat(71, 120)));
    }

    #[test]
    fn base_thirty_scan_is_empty() {
        let rep = thetanullwerte_class_check(30).unwrap();
        assert!(rep.hits.is_empty());
        // divisors 1,2,3,5,6,10,15,30 contribute 2n residues each
        assert_eq!(rep.pairs_scanned, 2 * 72);
    }

    #[test]
    fn base_ninety_scan_is_empty() {
        assert!(thetanullwerte_class_check(90).unwrap().hits.is_empty());
    }

    #[test]
    fn eta_j_monster_coefficients() {
        let s = eta_j_coefficients(rat(97, 24)).unwrap();
        let c = |n: i64| s.coefficient(rat(n, 24)).unwrap();
        assert_eq!(c(-23), big(1));
        assert_eq!(c(1), big(-1));
        assert_eq!(c(25), big(196883));
        assert_eq!(c(49), big(21296876));
        assert_eq!(c(73), big(842609326));
        assert_eq!(c(97), big(19360062527));
    }
}
