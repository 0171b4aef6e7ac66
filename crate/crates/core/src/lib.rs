//! Exact q-series and numeric verification for the umbral moonshine module
//! attached to the Niemeier root system E8³.
//!
//! The exact half ([`qseries`], [`lattice`], [`characters`], [`mocktheta`],
//! [`theta`]) works with big-rational coefficients and never reads a
//! coefficient past a series' truncation order.  The numeric half
//! ([`maass`]) evaluates indefinite theta functions, completions and
//! transformation laws in double precision.

pub mod characters;
pub mod error;
pub mod lattice;
pub mod maass;
pub mod mocktheta;
pub mod qseries;
pub mod theta;

pub use error::{Error, Result};
pub use lattice::{Branch, ConePoint, FixedBy, LatticeConfig};
pub use maass::UpperHalfPoint;
pub use qseries::{rat, Length, QSeries};
