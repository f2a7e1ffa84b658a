//! Exact certificates for diameter-Ramsey simplices.
//!
//! * [`exactgeom`]: squared-distance matrices, nondegeneracy, circumcenters,
//!   the circumradius obstruction and floating-point realization.
//! * [`deficits`]: deficit decompositions found by exact linear programming,
//!   and the product-of-regular-simplices embeddings they certify.
//! * [`family`]: the three-parameter family `A_d(s, t, u)` of simplices with a
//!   decomposition certificate and a circumcenter outside the hull.
//! * [`ramseytoy`]: exhaustive colorings of tiny configurations.
//! * [`report`]: JSON wire formats and reports; [`cli`] is the command line.

pub mod cli;
pub mod deficits;
pub mod error;
pub mod exactgeom;
pub mod family;
pub mod linalg;
pub mod lp;
pub mod ramseytoy;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use rational::Rational;
