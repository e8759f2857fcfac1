//! Exact criteria for successive emptiness of adjoint linear systems
//! `|⌈K + B + iL⌉|` on curves of genus at most one, the matching base-point
//! criteria, and brute-force oracles that certify them on finite grids.

pub mod basept;
pub mod curve;
pub mod divcrit;
pub mod divisor;
pub mod error;
pub mod exactq;
pub mod extremal;
pub mod floorcrit;
pub mod oracle;
pub mod vanish;

pub use divisor::{pt, Divisor, PointId};
pub use error::{Error, Result};
pub use exactq::{q, Rational};
