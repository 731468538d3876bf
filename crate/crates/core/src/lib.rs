//! Homomorphisms between Weyl modules `Delta(lambda) -> Delta(mu)` for the
//! Schur algebra over a prime field, when `mu` has at most two parts.
//!
//! Everything is exact: coefficients live in `GF(p)` and the only integers
//! that can grow are the binomial gcds in [`modarith`].
//!
//! * [`modarith`]: binomials, `R(x, y)` and its p-divisibility test.
//! * [`tableaux`]: partitions, two-row shapes, standard tableaux.
//! * [`dpa`]: divided-power monomials, comultiplication splits, box maps.
//! * [`weyl2`]: `Delta(mu)` by generators and relations; straightening.
//! * [`linalg`]: Gauss-Jordan over `GF(p)`.
//! * [`homspace`]: constraint matrices and hom-space dimensions.
//! * [`carterpayne`]: the raising map and dimension-at-least-two checks.

pub mod carterpayne;
pub mod dpa;
pub mod error;
pub mod homspace;
pub mod linalg;
pub mod modarith;
pub mod tableaux;
pub mod weyl2;

pub use error::{ArithError, Error, Result};
pub use homspace::{hom_dimension, HomCandidate, HomSolver, HomSpaceResult};
pub use modarith::PrimeField;
pub use tableaux::{Partition, TwoRowShape, TwoRowTableau};
pub use weyl2::{Bideterminant, Straightener, WeylElement};
