//! Exact computational algebra for derivations of tensor products and their
//! fixed-point subalgebras.
//!
//! Everything here works over an exact field ([`Field`]): the rationals, a
//! cyclotomic extension `Q(zeta_m)`, or a prime field `F_p` with `m | p - 1`.
//! Algebras are given by structure constants; derivation algebras, centroids
//! and the various relative spaces are computed as kernels of explicitly
//! assembled linear systems, so every dimension reported is a rank computed
//! in exact arithmetic.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command line live in the `loopder` companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod catalog;
pub mod decomposition;
mod error;
pub mod gradings;
pub mod invariants;
pub mod laurent;
pub mod linalg;
pub mod scalar;

pub use algebra::{Algebra, MultOperators, Properties};
pub use decomposition::{Check, Setup, SetupSpec, UnitChoice, VerificationReport};
pub use error::{Error, Result};
pub use gradings::{Automorphism, GradedUnitData, Grading};
pub use invariants::{EndoSpace, EndoTag};
pub use laurent::{LaurentDerivation, LaurentElement, LoopElement};
pub use linalg::{Matrix, Subspace};
pub use scalar::{Field, FieldKind, Scalar};
