use alloc::boxed::Box;
use alloc::string::String;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("characteristic {p} divides m = {m}")]
    CharDividesM { p: u64, m: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the field has no primitive {m}-th root of unity")]
    NoPrimitiveRoot { m: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not closed under the product")]
    NotClosed,
    #[error("element is not invertible")]
    SingularElement,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("algebra is not unital")]
    NotUnital,
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("algebra is not associative")]
    NotAssociative,
    #[error("algebra is not perfect")]
    NotPerfect,
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("automorphism does not satisfy sigma^{m} = id")]
    WrongPeriod { m: u64 },
    #[error("space is not invariant under conjugation by the automorphism")]
    NotInvariant,
    #[error("no invertible element found in the degree {residue} component")]
    NoUnitFound { residue: u64 },
    #[error("{q} is not a unit modulo {m}")]
    NotUnitResidue { q: u64, m: u64 },
    #[error("not in domain: {0}")]
    NotInDomain(String),
    #[error("hypothesis {item} fails: {reason}")]
    Hypothesis { item: &'static str, reason: Box<Error> },
    #[error("psi: C(A) (x) S -> C(A (x) S) is not an isomorphism")]
    PsiNotIso,
    #[error("identity check failed: {0}")]
    ReportFail(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;
