//! The exact and numeric verification suites.

use std::fmt;

use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use umbral_core::characters::{trace_closed, trace_direct, GroupClass, TraceId};
use umbral_core::maass::indefinite::{vartheta_indef, zwegers_prop_check};
use umbral_core::maass::modular::cusp_profile;
use umbral_core::maass::rfunc::{eta_numeric, identity_theta_data};
use umbral_core::maass::{completion_eval, e, tau1_identity_check, transform_check, UpperHalfPoint};
use umbral_core::mocktheta::{Identity, IdentityReport};
use umbral_core::theta::{eta_j_coefficients, thetanullwerte_class_check};
use umbral_core::{rat, QSeries};

use crate::UsageError;

/// Largest truncation order accepted by the exact suite.
pub const MAX_ORDER: i64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Exact,
    Numeric,
    All,
}

/// One verdict line.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckLine { name: name.into(), passed, detail: detail.into() }
    }

    fn from_result(name: impl Into<String>, r: umbral_core::Result<(bool, String)>) -> Self {
        match r {
            Ok((ok, detail)) => CheckLine::new(name, ok, detail),
            Err(e) => CheckLine::new(name, false, format!("error: {e}")),
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict}  {}: {}", self.name, self.detail)
    }
}

fn report_line(rep: umbral_core::Result<IdentityReport>, name: &str) -> CheckLine {
    match rep {
        Ok(rep) => {
            let detail = match &rep.first_discrepancy {
                None => format!("coefficient-exact to order {}", rep.order),
                Some((x, l, r)) => format!("first discrepancy at q^({x}): {l} vs {r}"),
            };
            CheckLine::new(name, rep.verified, detail)
        }
        Err(e) => CheckLine::new(name, false, format!("error: {e}")),
    }
}

/// Identity suite, route equivalence, thetanullwerte scan and the `ηJ`
/// coefficients.  `inject_corruption` perturbs one coefficient of the first
/// identity as a negative control.
pub fn exact_checks(order: i64, inject_corruption: bool) -> Vec<CheckLine> {
    let o = Rational64::from_integer(order);
    let mut lines: Vec<CheckLine> = Identity::ALL
        .par_iter()
        .enumerate()
        .map(|(k, id)| {
            let rep = id.sides(o).and_then(|(lhs, rhs)| {
                let lhs = if inject_corruption && k == 0 {
                    lhs.try_add(&QSeries::monomial(BigRational::one(), rat(1, 1))?)?
                } else {
                    lhs
                };
                IdentityReport::compare(id.name(), &lhs, &rhs, o)
            });
            report_line(rep, id.name())
        })
        .collect();

    let ids = TraceId::all();
    let mismatched: Vec<String> = ids
        .par_iter()
        .filter_map(|&id| match (trace_closed(id, o), trace_direct(id, o)) {
            (Ok(a), Ok(b)) if a == b => None,
            (Ok(_), Ok(_)) => Some(id.to_string()),
            (Err(e), _) | (_, Err(e)) => Some(format!("{id} ({e})")),
        })
        .collect();
    lines.push(CheckLine::new(
        "closed = direct for all trace ids",
        mismatched.is_empty(),
        if mismatched.is_empty() {
            format!("{} ids agree to order {order}", ids.len())
        } else {
            format!("mismatch: {}", mismatched.join(", "))
        },
    ));

    lines.push(CheckLine::from_result(
        "thetanullwerte scan, base 30",
        thetanullwerte_class_check(30).map(|r| {
            (r.hits.is_empty(), format!("{} pairs scanned, {} hits", r.pairs_scanned, r.hits.len()))
        }),
    ));

    lines.push(CheckLine::from_result(
        "eta J coefficients",
        eta_j_coefficients(rat(97, 24)).and_then(|s| {
            let want = [(25, 196_883i64), (49, 21_296_876), (73, 842_609_326), (97, 19_360_062_527)];
            let mut ok = true;
            let mut got = Vec::new();
            for (n, c) in want {
                let v = s.coefficient(rat(n, 24))?;
                ok &= v.is_integer() && v.to_integer().to_i64() == Some(c);
                got.push(v.to_string());
            }
            Ok((ok, got.join(", ")))
        }),
    ));
    lines
}

/// Sample points with `Im τ ≥ 0.5` shared by the numeric checks.
pub const SAMPLE_POINTS: [(f64, f64); 5] = [(0.1, 0.8), (0.0, 0.5), (-0.3, 0.6), (0.25, 0.75), (0.4, 1.1)];

fn pt(p: (f64, f64)) -> UpperHalfPoint {
    UpperHalfPoint::new(p.0, p.1).expect("sample points lie in the upper half-plane")
}

/// Theta-quotient identity, transformation laws, single-cone reductions,
/// completion route equivalence and cusp behaviour, each against `tol`.
pub fn numeric_checks(tol: f64) -> Vec<CheckLine> {
    let mut jobs: Vec<Box<dyn Fn() -> CheckLine + Send + Sync>> = Vec::new();

    for r in [1, 7] {
        jobs.push(Box::new(move || {
            let res = SAMPLE_POINTS
                .iter()
                .map(|&p| tau1_identity_check(r, pt(p), tol / 10.0).map(|rep| rep.residual))
                .collect::<umbral_core::Result<Vec<f64>>>()
                .map(|v| {
                    let worst = v.iter().cloned().fold(0.0, f64::max);
                    (worst < tol, format!("max residual {worst:.3e} over {} points", v.len()))
                });
            CheckLine::from_result(format!("theta quotient identity r={r}"), res)
        }));
    }

    let transforms: [(GroupClass, [i64; 4]); 6] = [
        (GroupClass::A1, [1, 1, 0, 1]),
        (GroupClass::A1, [0, -1, 1, 0]),
        (GroupClass::A2, [1, 1, 0, 1]),
        (GroupClass::A2, [1, 0, 2, 1]),
        (GroupClass::A3, [1, 1, 0, 1]),
        (GroupClass::A3, [1, 0, 3, 1]),
    ];
    for (class, g) in transforms {
        jobs.push(Box::new(move || {
            let points = [(0.0, 1.0), (0.2, 0.9), (-0.15, 0.7)];
            let res = points
                .iter()
                .map(|&p| transform_check(class, g, pt(p), tol / 10.0).map(|rep| rep.residual))
                .collect::<umbral_core::Result<Vec<f64>>>()
                .map(|v| {
                    let worst = v.iter().cloned().fold(0.0, f64::max);
                    (worst < tol, format!("max residual {worst:.3e} over {} points", v.len()))
                });
            CheckLine::from_result(format!("transformation {class} {g:?}"), res)
        }));
    }

    jobs.push(Box::new(move || {
        let tau = pt((0.0, 1.0));
        let form = [[6, 4], [4, 1]];
        let mut worst = 0.0f64;
        let res = (|| {
            for k in [1, 3] {
                for c in [[-1, 4], [-2, 3]] {
                    let rep = zwegers_prop_check(form, [rat(k, 10), rat(k, 10)], [rat(3, 20), rat(-1, 10)], c, tau, tol / 10.0)?;
                    worst = worst.max(rep.residual);
                }
            }
            let rep = zwegers_prop_check([[2, 3], [3, 1]], [rat(1, 3), rat(1, 5)], [rat(1, 7), rat(2, 9)], [1, -1], tau, tol / 10.0)?;
            worst = worst.max(rep.residual);
            Ok((worst < tol, format!("max residual {worst:.3e} over 5 instances")))
        })();
        CheckLine::from_result("single-cone theta reduction", res)
    }));

    jobs.push(Box::new(move || {
        let res = (|| {
            let mut worst = 0.0f64;
            for &p in &SAMPLE_POINTS {
                for (r, k) in [(1, 1.0), (7, 3.0)] {
                    let tau = pt(p);
                    let th = vartheta_indef(&identity_theta_data(r)?, tau, tol * 1e-3)?.value;
                    let quotient = -e(-k / 10.0) * th / eta_numeric(tau.dilate(2.0));
                    let c = completion_eval(GroupClass::A2, r, tau, tol / 10.0)?;
                    worst = worst.max((c.value - quotient).norm());
                }
            }
            Ok((worst < tol, format!("max difference {worst:.3e} over 10 evaluations")))
        })();
        CheckLine::from_result("2A completion = theta quotient", res)
    }));

    jobs.push(Box::new(move || CheckLine::from_result("cusp at 0: 2A bounded, 1A growing", cusp_check(tol))));

    jobs.par_iter().map(|job| job()).collect()
}

/// Growth factors `|Ĥ_1(it)|` from `t = 0.5` down to `t = 0.05`.
pub const CUSP_SAMPLES: [f64; 4] = [0.5, 0.2, 0.1, 0.05];

fn cusp_check(tol: f64) -> umbral_core::Result<(bool, String)> {
    let growth = |class| -> umbral_core::Result<f64> {
        let prof = cusp_profile(class, &CUSP_SAMPLES, tol)?;
        let base = prof[0].completed[0];
        Ok(prof.iter().map(|s| s.completed[0] / base).fold(0.0, f64::max))
    };
    let (g1, g2) = (growth(GroupClass::A1)?, growth(GroupClass::A2)?);
    Ok((g2 < 10.0 && g1 > 10.0 * g2, format!("growth 1A {g1:.3e}, 2A {g2:.3e}")))
}

/// Runs the selected suite; `order` and `tol` are validated here.
pub fn run(suite: Suite, order: i64, tol: f64, inject_corruption: bool) -> Result<Vec<CheckLine>, UsageError> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(UsageError(format!("order must be in 1..={MAX_ORDER}, got {order}")));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(UsageError(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    let mut lines = Vec::new();
    if matches!(suite, Suite::Exact | Suite::All) {
        lines.extend(exact_checks(order, inject_corruption));
    }
    if matches!(suite, Suite::Numeric | Suite::All) {
        lines.extend(numeric_checks(tol));
    }
    Ok(lines)
}
