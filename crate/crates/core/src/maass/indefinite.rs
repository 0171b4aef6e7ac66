//! Indefinite theta functions of signature `(1,1)` and the reduction of a
//! single-cone theta sum to `R` times unary theta functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use super::rfunc::r_ab;
use super::special::{e, e_func, ln_beta, sgn};
use super::UpperHalfPoint;
use crate::error::{Error, Result};

/// Largest ring radius summed before giving up.
pub const MAX_RING: i64 = 4000;

pub type Mat2 = [[i64; 2]; 2];
pub type IVec2 = [i64; 2];
pub type RVec2 = [Rational64; 2];

fn mat_vec(a: &Mat2, v: IVec2) -> IVec2 {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

fn bf(a: &Mat2, x: [f64; 2], y: [f64; 2]) -> f64 {
    x[0] * (a[0][0] as f64 * y[0] + a[0][1] as f64 * y[1])
        + x[1] * (a[1][0] as f64 * y[0] + a[1][1] as f64 * y[1])
}

fn bq(a: &Mat2, x: RVec2, y: RVec2) -> Rational64 {
    let m = |i: usize, j: usize| Rational64::from_integer(a[i][j]);
    x[0] * (m(0, 0) * y[0] + m(0, 1) * y[1]) + x[1] * (m(1, 0) * y[0] + m(1, 1) * y[1])
}

fn to_f(x: RVec2) -> [f64; 2] {
    [x[0].to_f64().unwrap(), x[1].to_f64().unwrap()]
}

fn ivec(v: IVec2) -> RVec2 {
    [Rational64::from_integer(v[0]), Rational64::from_integer(v[1])]
}

/// `a` reduced to `(-1/2, 1/2]` componentwise, with the shift applied.
fn reduce(a: RVec2) -> RVec2 {
    a.map(|x| {
        let r = x - x.round();
        if r <= Rational64::new(-1, 2) {
            r + 1
        } else {
            r
        }
    })
}

/// Smallest eigenvalue of a symmetric 2×2 matrix.
fn min_eigen(p: [[f64; 2]; 2]) -> f64 {
    let tr = p[0][0] + p[1][1];
    let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    0.5 * (tr - (tr * tr - 4.0 * det).max(0.0).sqrt())
}

/// `A + w wᵀ/(−Q(c))` with `w = Ac`: the form bounding a one-sided term.
fn cone_form(a: &Mat2, c: IVec2) -> [[f64; 2]; 2] {
    let w = mat_vec(a, c);
    let qc = 0.5 * (c[0] * w[0] + c[1] * w[1]) as f64;
    let mut p = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            p[i][j] = a[i][j] as f64 - (w[i] * w[j]) as f64 / qc;
        }
    }
    p
}

/// Data of `ϑ_{a,b}^{c1,c2}` for an even form `A` of signature `(1,1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndefThetaData {
    pub form: Mat2,
    pub a: RVec2,
    pub b: RVec2,
    pub c1: IVec2,
    pub c2: IVec2,
}

/// A theta value with a bound on the omitted rings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub rings: i64,
}

impl IndefThetaData {
    /// Checks `det A < 0`, `A` symmetric, `Q(c_i) < 0`
    /// and `B(c1, c2) < 0`.
    pub fn new(form: Mat2, a: RVec2, b: RVec2, c1: IVec2, c2: IVec2) -> Result<Self> {
        check_form(&form)?;
        let d = IndefThetaData { form, a, b, c1, c2 };
        for c in [c1, c2] {
            if d.q_int(c) >= 0 {
                return Err(Error::InvalidArgument(format!("Q({c:?}) must be negative")));
            }
        }
        if d.b_int(c1, c2) >= 0 {
            return Err(Error::InvalidArgument("c1 and c2 must lie in the same negative cone".into()));
        }
        Ok(d)
    }

    fn b_int(&self, x: IVec2, y: IVec2) -> i64 {
        let w = mat_vec(&self.form, y);
        x[0] * w[0] + x[1] * w[1]
    }

    /// `2Q(c)`.
    fn q_int(&self, c: IVec2) -> i64 {
        self.b_int(c, c)
    }

    /// The same data with `c1` and `c2` exchanged.
    pub fn swapped(&self) -> Self {
        IndefThetaData { c1: self.c2, c2: self.c1, ..self.clone() }
    }

    /// Per-point bound at sup-norm `ρ` and a sum over rings beyond `m`.
    fn ring_tail(&self, m: i64, amax: f64, y: f64) -> f64 {
        let lambdas = [min_eigen(cone_form(&self.form, self.c1)), min_eigen(cone_form(&self.form, self.c2))];
        let kappa = [self.c1, self.c2]
            .iter()
            .map(|&c| {
                let w = mat_vec(&self.form, c);
                let jw = [w[1], -w[0]];
                0.5 * self.b_int(jw, jw) as f64 / (w[0] * w[0] + w[1] * w[1]) as f64
            })
            .fold(f64::INFINITY, f64::min);
        let point = |rho: f64| {
            2.0 * (-2.0 * PI * y * kappa * rho * rho).exp()
                + lambdas.iter().map(|l| (-PI * y * l * rho * rho).exp()).sum::<f64>()
        };
        sum_rings(m, amax, point)
    }
}

fn check_form(form: &Mat2) -> Result<()> {
    if form[0][1] != form[1][0] {
        return Err(Error::InvalidArgument(format!("{form:?} is not a symmetric form")));
    }
    if form[0][0] * form[1][1] - form[0][1] * form[1][0] >= 0 {
        return Err(Error::InvalidArgument(format!("{form:?} is not of signature (1,1)")));
    }
    Ok(())
}

/// `Σ_{M' > m} 8M' · point(M' − amax)`, summed until negligible.
fn sum_rings(m: i64, amax: f64, point: impl Fn(f64) -> f64) -> f64 {
    let mut total = 0.0;
    for k in m + 1..m + 100_000 {
        let rho = k as f64 - amax;
        if rho <= 0.0 {
            return f64::INFINITY;
        }
        let t = 8.0 * k as f64 * point(rho);
        total += t;
        if t <= 1e-30 * total || t == 0.0 {
            return total;
        }
    }
    f64::INFINITY
}

/// Visits the lattice points of sup-norm exactly `m`.
fn ring(m: i64, mut f: impl FnMut(i64, i64)) {
    if m == 0 {
        f(0, 0);
        return;
    }
    for j in -m..=m {
        f(m, j);
        f(-m, j);
    }
    for i in -m + 1..m {
        f(i, m);
        f(i, -m);
    }
}

/// Sums `term` over `a + Z²` ring by ring until `tail(M) < tol`.
fn ring_sum(
    a: RVec2,
    tol: f64,
    mut term: impl FnMut([f64; 2]) -> Complex64,
    tail: impl Fn(i64, f64) -> f64,
) -> Result<ThetaValue> {
    let a = to_f(reduce(a));
    let amax = a[0].abs().max(a[1].abs());
    let mut value = Complex64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    for m in 0..=MAX_RING {
        ring(m, |i, j| value += term([a[0] + i as f64, a[1] + j as f64]));
        if (m as f64) > amax {
            last = tail(m, amax);
            if last < tol {
                return Ok(ThetaValue { value, tail_bound: last, rings: m });
            }
        }
    }
    Err(Error::TailCap { what: "indefinite theta rings", bound: last, cap: MAX_RING as usize })
}

/// `ϑ(τ) = Σ_{ν∈a+Z²} (E(B(c1,ν)√y/√−Q(c1)) − E(B(c2,ν)√y/√−Q(c2))) e(Q(ν)τ + B(ν,b))`.
pub fn vartheta_indef(data: &IndefThetaData, tau: UpperHalfPoint, tol: f64) -> Result<ThetaValue> {
    let form = data.form;
    let (y, z) = (tau.y(), tau.z());
    let b = to_f(data.b);
    let c = [data.c1, data.c2].map(|c| [c[0] as f64, c[1] as f64]);
    let s = [data.c1, data.c2].map(|c| (y / (-0.5 * data.q_int(c) as f64)).sqrt());
    let term = |nu: [f64; 2]| {
        let x = [bf(&form, c[0], nu) * s[0], bf(&form, c[1], nu) * s[1]];
        let q = 0.5 * bf(&form, nu, nu);
        let phase = e(q * z.re + bf(&form, nu, b));
        let (s1, s2) = (sgn(x[0]), sgn(x[1]));
        if s1 != s2 || s1 == 0.0 {
            return phase * ((e_func(x[0]) - e_func(x[1])) * (-2.0 * PI * y * q).exp());
        }
        // same side: E(x1) − E(x2) = s(β(x2²) − β(x1²)), kept in log form
        let grow = -2.0 * PI * y * q;
        let w = (ln_beta(x[1] * x[1]) + grow).exp() - (ln_beta(x[0] * x[0]) + grow).exp();
        phase * (s1 * w)
    };
    ring_sum(data.a, tol, term, |m, amax| data.ring_tail(m, amax, y))
}

/// Both sides of the single-cone reduction and their difference.
#[derive(Debug, Clone, PartialEq)]
pub struct PropReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    /// Representatives `μ0` of the cosets entering the right side.
    pub cosets: Vec<RVec2>,
    /// `B(c,μ0)/2Q(c)` for each coset, in `[0, 1)`.
    pub ratios: Vec<Rational64>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Compares
/// `Σ_{ν∈a+Z²} sgn(B(c,ν)) β(−B(c,ν)²y/Q(c)) e(Q(ν)τ + B(ν,b))`
/// with
/// `−Σ_{μ0} R_{B(c,μ0)/2Q(c), −B(c,b)}(−2Q(c)τ) Σ_{ξ∈μ0⊥+Zξ0} e(Q(ξ)τ + B(ξ,b⊥))`.
pub fn zwegers_prop_check(
    form: Mat2,
    a: RVec2,
    b: RVec2,
    c: IVec2,
    tau: UpperHalfPoint,
    tol: f64,
) -> Result<PropReport> {
    check_form(&form)?;
    let w = mat_vec(&form, c);
    let two_qc = c[0] * w[0] + c[1] * w[1];
    if two_qc >= 0 {
        return Err(Error::InvalidArgument(format!("Q({c:?}) must be negative")));
    }
    if c[0].gcd(&c[1]) != 1 {
        return Err(Error::InvalidArgument(format!("{c:?} is not primitive")));
    }
    let (y, z) = (tau.y(), tau.z());
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);

    let bf64 = to_f(b);
    let cf = [c[0] as f64, c[1] as f64];
    let lambda = min_eigen(cone_form(&form, c));
    let lhs = ring_sum(
        a,
        tol / 4.0,
        |nu| {
            let bc = bf(&form, cf, nu);
            // B(c,ν) ranges over a discrete set of rationals
            if bc.abs() < 1e-9 {
                return Complex64::new(0.0, 0.0);
            }
            let q = 0.5 * bf(&form, nu, nu);
            let size = (ln_beta(-bc * bc * y / (0.5 * two_qc as f64)) - 2.0 * PI * y * q).exp();
            e(q * z.re + bf(&form, nu, bf64)) * (sgn(bc) * size)
        },
        |m, amax| sum_rings(m, amax, |rho| (-PI * y * lambda * rho * rho).exp()),
    )?
    .value;

    let (g, x0, y0) = ext_gcd(w[0], w[1]);
    let xi0 = [Rational64::from_integer(w[1] / g), Rational64::from_integer(-w[0] / g)];
    let wa = Rational64::from_integer(w[0]) * a[0] + Rational64::from_integer(w[1]) * a[1];
    let two_q = Rational64::from_integer(two_qc);
    let gr = Rational64::from_integer(g);
    let kmin = ((two_q - wa) / gr).ceil().to_integer();
    let kmax = ((-wa) / gr).floor().to_integer();
    let cq = ivec(c);
    let bcb = bq(&form, cq, b);
    let b_perp = [b[0] - bcb / two_q * cq[0], b[1] - bcb / two_q * cq[1]];
    let bp = to_f(b_perp);
    let xi0f = to_f(xi0);
    let q_xi0 = 0.5 * bf(&form, xi0f, xi0f);
    let r_tau = tau.dilate(-(two_qc as f64));

    let mut rhs = Complex64::new(0.0, 0.0);
    let mut cosets = Vec::new();
    let mut ratios = Vec::new();
    for k in kmin..=kmax {
        let v = wa + gr * k;
        if !(two_q < v && v <= Rational64::zero()) {
            continue;
        }
        let mu = [a[0] + x0 * k, a[1] + y0 * k];
        let ratio = bq(&form, cq, mu) / two_q;
        let mu_perp = to_f([mu[0] - ratio * cq[0], mu[1] - ratio * cq[1]]);
        // Q(μ⊥ + kξ0) = Q(ξ0)(t + k)² along the positive line
        let t = 0.5 * bf(&form, mu_perp, xi0f) / q_xi0;
        let centre = (-t).round() as i64;
        let mut th = Complex64::new(0.0, 0.0);
        let mut d = 0i64;
        loop {
            let mut ring_mag = 0.0f64;
            for k in if d == 0 { vec![centre] } else { vec![centre - d, centre + d] } {
                let xi = [mu_perp[0] + k as f64 * xi0f[0], mu_perp[1] + k as f64 * xi0f[1]];
                let term = (two_pi_i * (z * (0.5 * bf(&form, xi, xi)) + bf(&form, xi, bp))).exp();
                ring_mag = ring_mag.max(term.norm());
                th += term;
            }
            d += 1;
            if d > 1 && ring_mag < tol * 1e-6 {
                break;
            }
            if d > 1_000_000 {
                return Err(Error::TailCap { what: "unary theta", bound: ring_mag, cap: 1_000_000 });
            }
        }
        let r = r_ab(ratio.to_f64().unwrap(), -bcb.to_f64().unwrap(), r_tau, tol / 8.0)?;
        rhs -= r.value * th;
        cosets.push(mu);
        ratios.push(ratio);
    }
    Ok(PropReport { lhs, rhs, residual: (lhs - rhs).norm(), cosets, ratios })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::rat;

    fn identity_data(a: i64) -> IndefThetaData {
        IndefThetaData::new(
            [[6, 4], [4, 1]],
            [rat(a, 10), rat(a, 10)],
            [rat(3, 20), rat(-1, 10)],
            [-1, 4],
            [-2, 3],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(IndefThetaData::new([[2, 0], [0, 2]], [rat(0, 1); 2], [rat(0, 1); 2], [1, 0], [0, 1]).is_err());
        assert!(IndefThetaData::new([[6, 4], [4, 1]], [rat(0, 1); 2], [rat(0, 1); 2], [1, 0], [-2, 3]).is_err());
    }

    #[test]
    fn swapping_cones_negates() {
        let tau = UpperHalfPoint::new(0.1, 0.8).unwrap();
        for a in [1, 3] {
            let d = identity_data(a);
            let v = vartheta_indef(&d, tau, 1e-13).unwrap();
            let w = vartheta_indef(&d.swapped(), tau, 1e-13).unwrap();
            assert!((v.value + w.value).norm() < 1e-12);
            assert!(v.value.norm() > 1e-3);
        }
    }

    #[test]
    fn tail_bound_is_honest() {
        let tau = UpperHalfPoint::new(-0.3, 0.6).unwrap();
        let d = identity_data(1);
        let coarse = vartheta_indef(&d, tau, 1e-4).unwrap();
        let fine = vartheta_indef(&d, tau, 1e-14).unwrap();
        assert!((coarse.value - fine.value).norm() <= coarse.tail_bound + 1e-13);
    }

    #[test]
    fn prop_on_identity_data() {
        let tau = UpperHalfPoint::new(0.1, 0.8).unwrap();
        for a in [1, 3] {
            for c in [[-1, 4], [-2, 3]] {
                let rep =
                    zwegers_prop_check([[6, 4], [4, 1]], [rat(a, 10), rat(a, 10)], [rat(3, 20), rat(-1, 10)], c, tau, 1e-12)
                        .unwrap();
                assert!(rep.residual < 1e-9, "a={a} c={c:?}: {}", rep.residual);
                assert!(!rep.cosets.is_empty());
            }
        }
    }

    #[test]
    fn coset_decomposition_of_identity_data() {
        let tau = UpperHalfPoint::new(0.0, 1.0).unwrap();
        let form = [[6, 4], [4, 1]];
        let (a, b) = ([rat(1, 10), rat(1, 10)], [rat(3, 20), rat(-1, 10)]);
        let one = zwegers_prop_check(form, a, b, [-1, 4], tau, 1e-12).unwrap();
        assert_eq!(one.cosets, vec![[rat(-9, 10), rat(1, 10)]]);
        assert!(one.lhs.norm() < 1e-10 && one.rhs.norm() < 1e-10);
        let two = zwegers_prop_check(form, a, b, [-2, 3], tau, 1e-12).unwrap();
        let mut mus = two.cosets.clone();
        mus.sort();
        assert_eq!(
            mus,
            vec![[rat(1, 10), rat(1, 10)], [rat(1, 10), rat(11, 10)], [rat(1, 10), rat(21, 10)]]
        );
        let mut ratios = two.ratios.clone();
        ratios.sort();
        assert_eq!(ratios, vec![rat(1, 30), rat(11, 30), rat(7, 10)]);
        assert!(zwegers_prop_check(form, a, b, [-2, 6], tau, 1e-12).is_err());
    }

    #[test]
    fn prop_on_other_form() {
        let tau = UpperHalfPoint::new(0.2, 1.0).unwrap();
        let rep = zwegers_prop_check([[2, 3], [3, 1]], [rat(1, 3), rat(1, 5)], [rat(1, 7), rat(2, 9)], [1, -1], tau, 1e-12)
            .unwrap();
        assert!(rep.residual < 1e-9, "{}", rep.residual);
        assert!(rep.lhs.norm() > 1e-4);
    }
}
