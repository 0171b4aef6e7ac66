//! The rank-3 lattice `L = Zε₁ + Zε₂ + Zε₃` with `⟨εᵢ,εⱼ⟩ = 2 − δᵢⱼ`,
//! the vector `ρ = (ε₁+ε₂+ε₃)/5`, and enumeration of the cone points of a
//! coset `L + aρ/2` below an energy bound.

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A vector in `L ⊗ Q`, in basis coordinates.
pub type Vec3 = [Rational64; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeConfig {
    gram: [[i64; 3]; 3],
    rho_numerator: [i64; 3],
}

impl LatticeConfig {
    /// The E8³ cone lattice.
    pub fn e8_cube() -> Self {
        let mut gram = [[2; 3]; 3];
        for (i, row) in gram.iter_mut().enumerate() {
            row[i] = 1;
        }
        Self::new(gram, [1, 1, 1]).expect("built-in gram matrix has signature (1,2)")
    }

    /// Checks symmetry and signature `(1,2)`.
    pub fn new(gram: [[i64; 3]; 3], rho_numerator: [i64; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in 0..3 {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidArgument("gram matrix is not symmetric".into()));
                }
            }
        }
        if positive_eigenvalues(&gram) != 1 || det3(&gram) <= 0 {
            return Err(Error::InvalidArgument("gram matrix must have signature (1,2)".into()));
        }
        Ok(LatticeConfig { gram, rho_numerator })
    }

    pub fn gram(&self) -> &[[i64; 3]; 3] {
        &self.gram
    }

    /// `ρ` in basis coordinates.
    pub fn rho(&self) -> Vec3 {
        self.rho_numerator.map(|x| Rational64::new(x, 5))
    }

    /// Basis vector `εᵢ` (0-based).
    pub fn epsilon(&self, i: usize) -> Vec3 {
        let mut v = [Rational64::zero(); 3];
        v[i] = Rational64::from_integer(1);
        v
    }

    /// Bilinear form via the gram matrix.
    pub fn pair(&self, u: &Vec3, v: &Vec3) -> Rational64 {
        let mut acc = Rational64::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc += u[i] * v[j] * self.gram[i][j];
            }
        }
        acc
    }

    /// `⟨n, n⟩` for an integer vector.
    fn norm_int(&self, n: &[i64; 3]) -> i64 {
        let mut acc = 0;
        for i in 0..3 {
            for j in 0..3 {
                acc += self.gram[i][j] * n[i] * n[j];
            }
        }
        acc
    }
}

impl Default for LatticeConfig {
    fn default() -> Self {
        Self::e8_cube()
    }
}

/// `⟨u, v⟩` in the E8³ cone lattice.
pub fn pair(u: &Vec3, v: &Vec3) -> Rational64 {
    LatticeConfig::e8_cube().pair(u, v)
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Number of positive eigenvalues of a symmetric matrix.  Its characteristic
/// polynomial is real-rooted, so Descartes' rule of signs is exact.
fn positive_eigenvalues(m: &[[i64; 3]; 3]) -> usize {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let c2 = m[0][0] * m[1][1] + m[1][1] * m[2][2] + m[0][0] * m[2][2]
        - m[0][1] * m[1][0]
        - m[1][2] * m[2][1]
        - m[0][2] * m[2][0];
    // det(xI - M) = x³ - tr x² + c2 x - det
    let coeffs = [1, -tr, c2, -det3(m)];
    let signs: Vec<i64> = coeffs.iter().filter(|c| **c != 0).map(|c| c.signum()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    /// All coordinates of `μ` are non-negative.
    P,
    /// All coordinates of `μ` are negative.
    N,
}

/// Fixed-point filter for the permutation action on the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedBy {
    None,
    /// Swap of `ε₁, ε₂`: keeps points with `k = l`.
    Tau,
    /// Cyclic permutation: keeps points with `k = l = m`.
    Sigma,
}

/// A point `μ = kε₁ + lε₂ + mε₃ + aρ/2` of the cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConePoint {
    pub coords: [i64; 3],
    pub coset_a: i64,
    pub branch: Branch,
    /// `Q(μ) = ⟨μ,μ⟩/2`.
    pub energy: Rational64,
}

impl ConePoint {
    /// `μ` in basis coordinates (`k + a/10`, ...).
    pub fn mu(&self) -> Vec3 {
        self.coords.map(|k| Rational64::from_integer(k) + Rational64::new(self.coset_a, 10))
    }

    /// The lattice part `λ = μ − aρ/2`.
    pub fn lambda(&self) -> Vec3 {
        self.coords.map(Rational64::from_integer)
    }
}

/// All points of `D ∩ (L + aρ/2)` with `Q(μ) ≤ energy_bound`, sorted by
/// energy, then branch, then coordinates.
///
/// Only the branch `P` is scanned.  On `P` every cross term of `Q` is a
/// product of non-negative coordinates, so `Q(μ) ≥ |μ|²/2` and each
/// coordinate is at most `√(2E)`.  The branch `N` at coset `a` is the negation
/// of branch `P` at coset `10 − a`: `k ↦ −k − 1`.
pub fn enumerate_coset_cone(a: i64, fix: FixedBy, energy_bound: Rational64) -> Result<Vec<ConePoint>> {
    if !(1..10).contains(&a) || a % 2 == 0 {
        return Err(Error::InvalidArgument(format!("coset label must be odd in 1..9, got {a}")));
    }
    let lat = LatticeConfig::e8_cube();
    let mut out = Vec::new();
    for (branch, b) in [(Branch::P, a), (Branch::N, 10 - a)] {
        for p in scan_positive(&lat, b, fix, energy_bound) {
            let coords = match branch {
                Branch::P => p,
                Branch::N => p.map(|k| -k - 1),
            };
            let n = coords.map(|k| 10 * k + a);
            let energy = Rational64::new(lat.norm_int(&n), 200);
            out.push(ConePoint { coords, coset_a: a, branch, energy });
        }
    }
    out.sort_by(|x, y| (x.energy, x.branch, x.coords).cmp(&(y.energy, y.branch, y.coords)));
    Ok(out)
}

/// Non-negative `k` with `Q(k + b/10) ≤ bound`.
fn scan_positive(lat: &LatticeConfig, b: i64, fix: FixedBy, bound: Rational64) -> Vec<[i64; 3]> {
    if bound < Rational64::zero() {
        return Vec::new();
    }
    let two_e = 2.0 * (*bound.numer() as f64) / (*bound.denom() as f64);
    let r = two_e.sqrt().floor() as i64 + 1;
    let mut pts = Vec::new();
    let mut push = |k: [i64; 3]| {
        let n = k.map(|x| 10 * x + b);
        if Rational64::new(lat.norm_int(&n), 200) <= bound {
            pts.push(k);
        }
    };
    match fix {
        FixedBy::None => {
            for k in 0..=r {
                for l in 0..=r {
                    for m in 0..=r {
                        push([k, l, m]);
                    }
                }
            }
        }
        FixedBy::Tau => {
            for k in 0..=r {
                for m in 0..=r {
                    push([k, k, m]);
                }
            }
        }
        FixedBy::Sigma => {
            for k in 0..=r {
                push([k, k, k]);
            }
        }
    }
    pts
}
