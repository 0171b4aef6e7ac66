//! Trace functions `T^±_{g,a}` and the vector-valued McKay–Thompson series
//! `H_g = 2 T_g`.
//!
//! Two routes compute the same traces.  [`trace_closed`] transcribes the
//! closed lattice sums (triple, double and single sums with hard-coded eta
//! prefactors).  [`trace_direct`] sums over enumerated cone points with signs
//! obtained from lattice pairings and a prefactor built from the permutation's
//! cycle type.  Agreement of the two is a test, not an assumption.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::lattice::{enumerate_coset_cone, Branch, FixedBy, LatticeConfig, Vec3};
use crate::qseries::{dedekind_eta, euler_product, rat, QSeries, DEFAULT_DENOMINATOR};

/// Conjugacy classes of the group acting on the three copies of E8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupClass {
    /// Identity.
    A1,
    /// A transposition of two copies.
    A2,
    /// A 3-cycle.
    A3,
}

impl GroupClass {
    pub const ALL: [GroupClass; 3] = [GroupClass::A1, GroupClass::A2, GroupClass::A3];

    pub fn name(self) -> &'static str {
        match self {
            GroupClass::A1 => "1A",
            GroupClass::A2 => "2A",
            GroupClass::A3 => "3A",
        }
    }

    /// Image of basis index `i` under the underlying permutation.
    pub fn permutation(self) -> [usize; 3] {
        match self {
            GroupClass::A1 => [0, 1, 2],
            GroupClass::A2 => [1, 0, 2],
            GroupClass::A3 => [1, 2, 0],
        }
    }

    /// Lengths of the cycles of the permutation.
    pub fn cycle_type(self) -> Vec<i64> {
        let p = self.permutation();
        let mut seen = [false; 3];
        let mut out = Vec::new();
        for start in 0..3 {
            if seen[start] {
                continue;
            }
            let (mut i, mut len) = (start, 0);
            while !seen[i] {
                seen[i] = true;
                i = p[i];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Number of fixed basis vectors.
    pub fn perm_character(self) -> i64 {
        let p = self.permutation();
        (0..3).filter(|i| p[*i] == *i).count() as i64
    }

    pub fn order(self) -> i64 {
        match self {
            GroupClass::A1 => 1,
            GroupClass::A2 => 2,
            GroupClass::A3 => 3,
        }
    }

    pub fn fixed_filter(self) -> FixedBy {
        match self {
            GroupClass::A1 => FixedBy::None,
            GroupClass::A2 => FixedBy::Tau,
            GroupClass::A3 => FixedBy::Sigma,
        }
    }

    /// `T_{g,a+10} = s T_{g,a}`.  The pairing `⟨5ρ, ρ+ε₁′⟩ = 4` is even, so the
    /// transposition class does not change sign.
    pub fn shift_ten_sign(self) -> i64 {
        match self {
            GroupClass::A2 => 1,
            _ => -1,
        }
    }

    /// `T_{g,−a} = s T_{g,a}`.
    pub fn negation_sign(self) -> i64 {
        match self {
            GroupClass::A2 => -1,
            _ => 1,
        }
    }

    /// Sign relating the `r = 7` family of `H_g` to `T⁻_{g,3}`.
    pub fn seven_family_sign(self) -> i64 {
        match self {
            GroupClass::A2 => 1,
            _ => -1,
        }
    }
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "1A" => Ok(GroupClass::A1),
            "2A" => Ok(GroupClass::A2),
            "3A" => Ok(GroupClass::A3),
            other => Err(Error::InvalidArgument(format!("unknown class {other:?}"))),
        }
    }
}

/// Identifies one trace function `T^±_{g,a}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraceId {
    pub class: GroupClass,
    pub coset_a: i64,
    /// `+1` or `−1`.
    pub clifford_sign: i64,
}

impl TraceId {
    pub fn new(class: GroupClass, coset_a: i64, clifford_sign: i64) -> Self {
        TraceId { class, coset_a, clifford_sign }
    }

    /// All 30 ids with `a ∈ {1,3,5,7,9}`.
    pub fn all() -> Vec<TraceId> {
        let mut out = Vec::new();
        for class in GroupClass::ALL {
            for a in [1, 3, 5, 7, 9] {
                for s in [1, -1] {
                    out.push(TraceId::new(class, a, s));
                }
            }
        }
        out
    }

    /// Reduces `a` into `1..=9` and returns `(a0, shift, overall sign)`.
    fn normalized(&self) -> Result<(i64, i64, i64)> {
        if self.coset_a % 2 == 0 {
            return Err(Error::InvalidArgument(format!("coset label must be odd, got {}", self.coset_a)));
        }
        if self.clifford_sign != 1 && self.clifford_sign != -1 {
            return Err(Error::InvalidArgument(format!(
                "clifford sign must be ±1, got {}",
                self.clifford_sign
            )));
        }
        let a0 = self.coset_a.rem_euclid(10);
        let j = (self.coset_a - a0) / 10;
        let s = if j % 2 == 0 { 1 } else { self.class.shift_ten_sign() };
        Ok((a0, j, s * self.clifford_sign))
    }
}

impl fmt::Display for TraceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.clifford_sign > 0 { '+' } else { '-' };
        write!(f, "T{s}({},{})", self.class, self.coset_a)
    }
}

/// Slack added to intermediate truncation orders; every factor's valuation
/// lies in `[−1/8, 1)`.
fn slack(order: Rational64) -> Rational64 {
    order + 1
}

/// `±q^(1/24)(q;q)_∞`.
pub fn fermion_trace(sign: i64, order: Rational64) -> Result<QSeries> {
    Ok(dedekind_eta(1, order)?.scale_int(sign.signum()))
}

/// `q^(−1/8) ∏_n det(1 − qⁿ g)^(−1)` on the three-dimensional space, built
/// from the cycle type: a cycle of length `ℓ` contributes `(q^ℓ;q^ℓ)_∞^(−1)`.
pub fn heisenberg_trace(class: GroupClass, order: Rational64) -> Result<QSeries> {
    let inner = slack(order);
    let mut acc = QSeries::one().truncate(inner);
    for len in class.cycle_type() {
        acc = acc.try_mul(&euler_product(len, inner)?.invert_unit()?)?;
    }
    Ok(acc.shift(rat(-1, 8))?.truncate(order))
}

/// Closed-form prefactor including `±q^(−1/12)`.
fn closed_prefactor(class: GroupClass, order: Rational64) -> Result<QSeries> {
    let inner = slack(order);
    let p = match class {
        GroupClass::A1 => euler_product(1, inner)?.powi(-2)?,
        GroupClass::A2 => euler_product(2, inner)?.invert_unit()?,
        GroupClass::A3 => euler_product(1, inner)?.try_mul(&euler_product(3, inner)?.invert_unit()?)?,
    };
    Ok(p.shift(rat(-1, 12))?.truncate(order))
}

/// Largest coordinate to scan for a quadratic exponent bounded by `e120/120`.
fn radius(e120: i64, scale: f64) -> i64 {
    ((scale * e120.max(0) as f64 / 120.0).sqrt()).floor() as i64 + 2
}

/// The lattice sum of the closed formula for coset `a ∈ {1,…,9}`, with
/// exponents in units of 1/120, up to `bound` (also in units of 1/120).
fn closed_sum(class: GroupClass, a: i64, bound: i64) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    let mut add = |e: i64, c: i64| {
        if e <= bound {
            *out.entry(e).or_insert(0) += c;
        }
    };
    let parity = |n: i64| if n.rem_euclid(2) == 0 { 1 } else { -1 };
    match class {
        GroupClass::A1 => {
            // 120 Q = 60(k²+l²+m²) + 240(kl+lm+mk) + 60a(k+l+m) + 9a²
            let f = |k: i64, l: i64, m: i64| {
                60 * (k * k + l * l + m * m) + 240 * (k * l + l * m + m * k) + 60 * a * (k + l + m) + 9 * a * a
            };
            let r = radius(bound, 2.0);
            for i in 0..=r {
                for j in 0..=r {
                    for k in 0..=r {
                        add(f(i, j, k), parity(i + j + k));
                        let (x, y, z) = (-i - 1, -j - 1, -k - 1);
                        add(f(x, y, z), parity(x + y + z));
                    }
                }
            }
        }
        GroupClass::A2 => {
            // 120 Q = 360k² + 60m² + 480km + 60a(2k+m) + 9a²
            let f = |k: i64, m: i64| 360 * k * k + 60 * m * m + 480 * k * m + 60 * a * (2 * k + m) + 9 * a * a;
            let r = radius(bound, 2.0);
            for i in 0..=r {
                for j in 0..=r {
                    add(f(i, j), parity(i + j));
                    let (x, y) = (-i - 1, -j - 1);
                    add(f(x, y), -parity(x + y));
                }
            }
        }
        GroupClass::A3 => {
            // 120 Q = 900k² + 180ak + 9a²
            let r = radius(bound, 10.0 / 3.0) / 5 + 2;
            for k in -r..=r {
                add(900 * k * k + 180 * a * k + 9 * a * a, parity(k));
            }
        }
    }
    out
}

fn int_series(map: BTreeMap<i64, i64>, order: Rational64) -> QSeries {
    QSeries::from_int_terms(DEFAULT_DENOMINATOR, map, Some(order))
}

/// Exponent numerator bound (units of 1/120) for a lattice sum that is
/// multiplied by a prefactor of valuation `−1/12` and truncated at `order`.
fn sum_bound(order: Rational64) -> (Rational64, i64) {
    let o = order + rat(1, 12);
    let n = (o * DEFAULT_DENOMINATOR).floor().to_integer();
    (o, n)
}

/// `T^±_{g,a}` from the closed lattice sums.
pub fn trace_closed(id: TraceId, order: Rational64) -> Result<QSeries> {
    let (a0, _, sign) = id.normalized()?;
    let (o, n) = sum_bound(order);
    let sum = int_series(closed_sum(id.class, a0, n), o);
    let t = closed_prefactor(id.class, slack(order))?.try_mul(&sum)?;
    Ok(t.scale_int(sign).truncate(order))
}

/// `T^±_{g,a}` by summing over enumerated cone points.
///
/// Signs: `(−1)^⟨λ,ρ⟩` for the identity and the 3-cycle, and
/// `(−1)^⟨λ,ρ+ε₁′⟩` with `ε₁′ = 2ρ − ε₁` and an extra `−1` on branch `N`
/// for the transposition, where `λ = μ − aρ/2`.
pub fn trace_direct(id: TraceId, order: Rational64) -> Result<QSeries> {
    if id.coset_a % 2 == 0 {
        return Err(Error::InvalidArgument(format!("coset label must be odd, got {}", id.coset_a)));
    }
    if id.clifford_sign != 1 && id.clifford_sign != -1 {
        return Err(Error::InvalidArgument(format!("clifford sign must be ±1, got {}", id.clifford_sign)));
    }
    let lat = LatticeConfig::e8_cube();
    let a0 = id.coset_a.rem_euclid(10);
    let j = (id.coset_a - a0) / 10;
    let rho = lat.rho();
    let e1 = lat.epsilon(0);
    let sign_vec: Vec3 = match id.class {
        GroupClass::A2 => std::array::from_fn(|i| rho[i] * 3 - e1[i]),
        _ => rho,
    };
    let (o, n) = sum_bound(order);
    let mut map = BTreeMap::new();
    for p in enumerate_coset_cone(a0, id.class.fixed_filter(), o)? {
        // Same μ, written over the representative a = a0 + 10j.
        let lambda: Vec3 = p.lambda().map(|x| x - j);
        let pr = lat.pair(&lambda, &sign_vec);
        assert!(pr.is_integer(), "sign pairing must be integral");
        let mut c = if pr.to_integer().rem_euclid(2) == 0 { 1 } else { -1 };
        if id.class == GroupClass::A2 && p.branch == Branch::N {
            c = -c;
        }
        let e = (p.energy * DEFAULT_DENOMINATOR).to_integer();
        if e <= n {
            *map.entry(e).or_insert(0) += c;
        }
    }
    let sum = int_series(map, o);
    let inner = slack(order);
    let pref = heisenberg_trace(id.class, inner)?.try_mul(&fermion_trace(id.clifford_sign, inner)?)?;
    Ok(pref.try_mul(&sum)?.truncate(order))
}

/// Which trace family a component index belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    One,
    Seven,
}

/// Positive representatives of the two component families.
pub const FAMILY_ONE: [i64; 4] = [1, 11, 19, 29];
pub const FAMILY_SEVEN: [i64; 4] = [7, 13, 17, 23];

/// `(family, sign)` for `r mod 60`, or `None` off the support.
pub fn support_sign(r: i64) -> Option<(Family, i64)> {
    let r = r.rem_euclid(60);
    for (fam, reps) in [(Family::One, FAMILY_ONE), (Family::Seven, FAMILY_SEVEN)] {
        if reps.contains(&r) {
            return Some((fam, 1));
        }
        if reps.contains(&(60 - r)) {
            return Some((fam, -1));
        }
    }
    None
}

/// A vector of series indexed by `r mod 60`; absent components are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct MockFormVector {
    components: BTreeMap<i64, QSeries>,
}

impl MockFormVector {
    /// Builds the odd vector whose families are `one` and `seven` at the
    /// positive representatives.
    pub fn from_families(one: QSeries, seven: QSeries) -> Self {
        let mut components = BTreeMap::new();
        for r in 0..60 {
            if let Some((fam, s)) = support_sign(r) {
                let base = match fam {
                    Family::One => &one,
                    Family::Seven => &seven,
                };
                components.insert(r, base.scale_int(s));
            }
        }
        MockFormVector { components }
    }

    /// Component at `r mod 60` (zero off the support).
    pub fn component(&self, r: i64) -> QSeries {
        self.components.get(&r.rem_euclid(60)).cloned().unwrap_or_else(QSeries::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (i64, &QSeries)> + '_ {
        self.components.iter().map(|(r, s)| (*r, s))
    }
}

/// `H_g` with `H_{g,1} = 2T⁻_{g,1}` and `H_{g,7} = 2κ_g T⁻_{g,3}`, where `κ_g`
/// is [`GroupClass::seven_family_sign`].
pub fn assemble_h(class: GroupClass, order: Rational64) -> Result<MockFormVector> {
    let (one, seven) = rayon::join(
        || trace_closed(TraceId::new(class, 1, -1), order),
        || trace_closed(TraceId::new(class, 3, -1), order),
    );
    let one = one?.scale_int(2);
    let seven = seven?.scale_int(2 * class.seven_family_sign());
    Ok(MockFormVector::from_families(one, seven))
}

/// Component `r` of `H_g` without building the whole vector.
pub fn h_component(class: GroupClass, r: i64, order: Rational64) -> Result<QSeries> {
    let (fam, s) = support_sign(r).ok_or(Error::NotInSupport(r))?;
    let t = match fam {
        Family::One => trace_closed(TraceId::new(class, 1, -1), order)?.scale_int(2),
        Family::Seven => {
            trace_closed(TraceId::new(class, 3, -1), order)?.scale_int(2 * class.seven_family_sign())
        }
    };
    Ok(t.scale_int(s))
}
