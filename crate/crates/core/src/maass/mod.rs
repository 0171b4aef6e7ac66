//! Double-precision evaluation: error functions, indefinite theta functions,
//! the `R_{a,b}` functions, completions of `H_g` and their transformation
//! laws.

pub mod completion;
pub mod indefinite;
pub mod modular;
pub mod quad;
pub mod rfunc;
pub mod series;
pub mod special;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use completion::{completion_eval, completion_via_r, CompletionValue};
pub use indefinite::{vartheta_indef, zwegers_prop_check, IndefThetaData, PropReport};
pub use modular::{cusp_profile, transform_check, MultiplierData, TransformReport};
pub use rfunc::{eichler_r, g_ab, r_ab, tau1_identity_check, Tau1Report};
pub use series::{evaluate_series, h_value, SeriesValue};
pub use special::{beta_incomplete, e, e_func};

/// A point `τ = x + iy` with `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfPoint(Complex64);

impl UpperHalfPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        Self::from_complex(Complex64::new(x, y))
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidArgument(format!("{z} is not in the upper half-plane")));
        }
        Ok(UpperHalfPoint(z))
    }

    pub fn x(self) -> f64 {
        self.0.re
    }

    pub fn y(self) -> f64 {
        self.0.im
    }

    pub fn z(self) -> Complex64 {
        self.0
    }

    /// `e(sτ)`.
    pub fn q_power(self, s: f64) -> Complex64 {
        let two_pi = 2.0 * std::f64::consts::PI;
        Complex64::from_polar((-two_pi * s * self.0.im).exp(), two_pi * s * self.0.re)
    }

    /// `kτ` for `k > 0`.
    pub fn dilate(self, k: f64) -> Self {
        UpperHalfPoint(self.0 * k)
    }

    /// `(aτ + b)/(cτ + d)` for a matrix of determinant one.
    pub fn mobius(self, m: [i64; 4]) -> Result<Self> {
        let [a, b, c, d] = m;
        if a * d - b * c != 1 {
            return Err(Error::InvalidArgument(format!("{m:?} does not have determinant 1")));
        }
        let z = self.0;
        Self::from_complex((z * a as f64 + b as f64) / (z * c as f64 + d as f64))
    }
}

impl fmt::Display for UpperHalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.0.re, self.0.im)
    }
}

impl FromStr for UpperHalfPoint {
    type Err = Error;

    /// Accepts `x+yi`, `x-yi` (rejected as below the axis), `yi` and `i`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse {s:?} as x+yi"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = t.strip_suffix('i').ok_or_else(bad)?;
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let re: f64 = re.parse().map_err(|_| bad())?;
        let im: f64 = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse().map_err(|_| bad())?,
        };
        UpperHalfPoint::new(re, im)
    }
}
