//! Verification of the decomposition theorems for derivations of `A ⊗ S`
//! and of its fixed-point subalgebra under `σ₁ ⊗ σ₂`, including the
//! explicit inverse φ of the restriction map π.

mod identities;
mod phi;
mod report;
mod setup;
mod verify;

pub use identities::check_surjectivity_identities;
pub use phi::{bm_formula_extend, extend_phi, extend_phi_n, restrict_pi, Branch};
pub use report::{Assertion, Check, VerificationReport};
pub use setup::{Setup, SetupSpec, UnitChoice};
pub use verify::{
    embed_tensor_derivations, split_derivation, verify_block_decomposition, verify_derivation_split,
    verify_graded_decomposition, verify_pi_isomorphism, verify_psi,
};
