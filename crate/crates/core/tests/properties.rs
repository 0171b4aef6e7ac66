use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::One;
use proptest::prelude::*;

use umbral_core::maass::indefinite::{vartheta_indef, zwegers_prop_check, IndefThetaData};
use umbral_core::qseries::{euler_product, pochhammer};
use umbral_core::theta::{g_series, s_unary};
use umbral_core::{rat, Length, QSeries, UpperHalfPoint};

fn series_strategy() -> impl Strategy<Value = QSeries> {
    (
        prop::collection::vec((-240i64..1200, -9i64..10), 0..12),
        prop::option::of(600i64..1800),
    )
        .prop_map(|(terms, order)| {
            QSeries::from_int_terms(120, terms, order.map(|o| Rational64::new(o, 120)))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative_and_commutative(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a - &a, QSeries::zero_in(120, a.order_numerator()));
    }

    #[test]
    fn multiplication_laws(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &QSeries::one(), a.clone());
    }

    #[test]
    fn units_invert(tail in prop::collection::vec((1i64..40, -5i64..6), 0..8), order in 1i64..30) {
        let mut terms = vec![(0i64, 1i64)];
        terms.extend(tail.into_iter().map(|(e, c)| (e * 12, c)));
        let u = QSeries::from_int_terms(120, terms, Some(rat(order, 1)));
        let inv = u.invert_unit().unwrap();
        prop_assert_eq!(&u * &inv, QSeries::one().truncate(rat(order, 1)));
    }

    #[test]
    fn unary_theta_symmetries(m in 1i64..40, r in -80i64..80) {
        let o = rat(12, 1);
        let s = s_unary(m, r, o).unwrap();
        prop_assert_eq!(s_unary(m, -r, o).unwrap(), -&s);
        prop_assert_eq!(s_unary(m, r + 2 * m, o).unwrap(), s);
    }

    #[test]
    fn g_at_sixty_tau_is_unary_theta(r in -59i64..60) {
        prop_assume!(r != 0);
        let o = rat(8, 1);
        let g = g_series(rat(r, 60), 60, o).unwrap();
        let s = s_unary(30, r, o).unwrap().scale(&BigRational::new(BigInt::one(), BigInt::from(60)));
        prop_assert_eq!(g, s);
    }
}

#[test]
fn pentagonal_number_theorem() {
    let n = 200;
    let p = euler_product(1, rat(n, 1)).unwrap();
    let mut want = Vec::new();
    for k in -20i64..=20 {
        let e = k * (3 * k - 1) / 2;
        if e <= n {
            want.push((e * 120, if k % 2 == 0 { 1 } else { -1 }));
        }
    }
    assert_eq!(p, QSeries::from_int_terms(120, want, Some(rat(n, 1))));
}

#[test]
fn euler_identity_for_eta_of_two_tau() {
    // (q²;q²)∞ = (q;q)∞ (−q;q)∞
    let o = rat(150, 1);
    let lhs = euler_product(2, o).unwrap();
    let plus = pochhammer(rat(1, 1), -1, rat(1, 1), Length::Infinite, o).unwrap();
    assert_eq!(lhs, euler_product(1, o).unwrap() * plus);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn vartheta_antisymmetry(x in -0.5f64..0.5, y in 0.5f64..1.5, k in 1i64..10, bn in -10i64..10) {
        let d = IndefThetaData::new(
            [[6, 4], [4, 1]],
            [rat(k, 10), rat(k, 10)],
            [rat(bn, 20), rat(-1, 10)],
            [-1, 4],
            [-2, 3],
        )
        .unwrap();
        let tau = UpperHalfPoint::new(x, y).unwrap();
        let v = vartheta_indef(&d, tau, 1e-12).unwrap().value;
        let w = vartheta_indef(&d.swapped(), tau, 1e-12).unwrap().value;
        prop_assert!((v + w).norm() < 1e-11);
    }

    #[test]
    fn single_cone_reduction(
        p in -3i64..4, q in -4i64..5, s in -3i64..4,
        c0 in -3i64..4, c1 in -3i64..4,
        an in (0i64..7, 1i64..8), am in (0i64..7, 1i64..8),
        bn in (-6i64..7, 1i64..10), bm in (-6i64..7, 1i64..10),
        x in -0.5f64..0.5, y in 0.7f64..1.4,
    ) {
        let form = [[2 * p, q], [q, 2 * s]];
        prop_assume!(4 * p * s - q * q < 0);
        let two_qc = 2 * p * c0 * c0 + 2 * q * c0 * c1 + 2 * s * c1 * c1;
        prop_assume!(two_qc < 0 && num_integer::gcd(c0, c1) == 1);
        let a = [rat(an.0, an.1), rat(am.0, am.1)];
        let b = [rat(bn.0, bn.1), rat(bm.0, bm.1)];
        let tau = UpperHalfPoint::new(x, y).unwrap();
        let rep = zwegers_prop_check(form, a, b, [c0, c1], tau, 1e-12).unwrap();
        prop_assert!(rep.residual < 1e-9 * (1.0 + rep.lhs.norm()), "residual {} lhs {}", rep.residual, rep.lhs);
        prop_assert!(rep.ratios.iter().all(|r| *r >= rat(0, 1) && *r < rat(1, 1)));
    }
}
