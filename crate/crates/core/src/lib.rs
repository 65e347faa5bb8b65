//! Exact evaluation and verification of terminating basic hypergeometric
//! identities around the Askey-Wilson polynomials, with the symmetry-group
//! censuses that sort them into equivalence classes.

pub mod error;
pub mod field;
pub mod series;
pub mod transform;
pub mod catalog;
pub mod askey_wilson;
pub mod symmetry;

pub use error::{Error, Result};
pub use field::{Frame, ParamMonomial, PointEnv, Rational};
pub use series::{PhiSpec, PochLength, SeriesSpec, WSpec};
