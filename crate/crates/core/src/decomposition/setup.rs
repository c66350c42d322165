use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use super::report::Check;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::gradings::{
    eps, find_graded_unit, fixed_point_algebra, grading_from_automorphism, induced_endo_grading, omega,
    tensor_automorphism, Automorphism, GradedUnitData, Grading,
};
use crate::invariants::{centroid, derivation_space, kron_vec, psi_map_with, EndoSpace, PsiReport};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{Field, FieldKind, Scalar};

/// How the homogeneous unit is chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum UnitChoice {
    /// Search the component of residue `q`.
    Search { q: u64 },
    /// Use this element of `S`; its residue is read off the grading.
    Explicit(Vec<Scalar>),
}

/// Raw input for a [`Setup`].
#[derive(Clone, Debug, PartialEq)]
pub struct SetupSpec {
    pub a: Algebra,
    pub s: Algebra,
    pub sigma1: Matrix,
    pub sigma2: Matrix,
    pub m: u64,
    pub unit: UnitChoice,
}

/// A validated instance of the restriction theorem: `A` perfect, `S`
/// commutative associative unital, `σ₁`, `σ₂` of period `m`, a homogeneous
/// unit, and ψ an isomorphism. Derived objects are computed once.
pub struct Setup {
    pub a: Algebra,
    pub s: Algebra,
    pub m: u64,
    pub sigma1: Automorphism,
    pub sigma2: Automorphism,
    pub tensor: Algebra,
    pub sigma: Automorphism,
    pub grading_a: Grading,
    pub grading_s: Grading,
    pub grading_tensor: Grading,
    /// `(A⊗S)_0̄` with its embedding (columns in tensor coordinates).
    pub fixed: Algebra,
    pub embedding: Matrix,
    pub fixed_space: Subspace,
    pub unit: GradedUnitData,
    pub s_one: Vec<Scalar>,
    pub der_a: EndoSpace,
    pub cent_a: EndoSpace,
    pub der_s: EndoSpace,
    pub grading_der_a: Grading,
    pub grading_cent_a: Grading,
    pub grading_der_s: Grading,
    pub psi: PsiReport,
    pub hypotheses: Vec<Check>,
    der_tensor: OnceBox<EndoSpace>,
    grading_der_tensor: OnceBox<Grading>,
    der_fixed: OnceBox<EndoSpace>,
}

fn hyp(item: &'static str) -> impl FnOnce(Error) -> Error {
    move |e| Error::Hypothesis { item, reason: Box::new(e) }
}

impl Setup {
    pub fn new(spec: SetupSpec) -> Result<Setup> {
        let SetupSpec { a, s, sigma1, sigma2, m, unit } = spec;
        let field = a.field().clone();
        if s.field() != &field {
            return Err(Error::FieldMismatch);
        }
        check_roots(&field, m).map_err(hyp("k"))?;
        if !a.is_perfect() {
            return Err(hyp("(i)")(Error::NotPerfect));
        }
        let s_one = s.require_commutative_associative_unital().map_err(hyp("(ii)"))?;
        let sigma1 = Automorphism::check(&a, sigma1, m).map_err(hyp("(iii)"))?;
        let sigma2 = Automorphism::check(&s, sigma2, m).map_err(hyp("(iii)"))?;
        let grading_a = grading_from_automorphism(&sigma1)?;
        let grading_s = grading_from_automorphism(&sigma2)?;
        let unit = match unit {
            UnitChoice::Search { q } => find_graded_unit(&s, &grading_s, q),
            UnitChoice::Explicit(u) => GradedUnitData::from_unit(&s, &grading_s, u),
        }
        .map_err(hyp("(iv)"))?;
        let tensor = a.tensor_product(&s)?;
        let psi = psi_map_with(&a, &s, &centroid(&a), &centroid(&tensor))?;
        if !psi.is_isomorphism() {
            return Err(hyp("(v)")(Error::PsiNotIso));
        }
        let sigma = tensor_automorphism(&sigma1, &sigma2)?;
        let grading_tensor = grading_from_automorphism(&sigma)?;
        let (fixed, embedding, fixed_space) = fixed_point_algebra(&tensor, &sigma)?;
        let der_a = derivation_space(&a);
        let cent_a = psi.centroid_a.clone();
        let der_s = derivation_space(&s);
        let grading_der_a = induced_endo_grading(&sigma1, &der_a)?;
        let grading_cent_a = induced_endo_grading(&sigma1, &cent_a)?;
        let grading_der_s = induced_endo_grading(&sigma2, &der_s)?;
        let hypotheses = [
            "k contains a primitive m-th root of unity and char k does not divide m",
            "(i) A is perfect",
            "(ii) S is commutative, associative and unital",
            "(iii) sigma1, sigma2 are automorphisms with sigma^m = id",
            "(iv) S has a homogeneous unit of unit residue",
            "(v) psi: C(A)(x)S -> C(A(x)S) is an isomorphism",
        ]
        .into_iter()
        .map(|name| Check { name: String::from(name), pass: true })
        .collect();
        Ok(Setup {
            a,
            s,
            m,
            sigma1,
            sigma2,
            tensor,
            sigma,
            grading_a,
            grading_s,
            grading_tensor,
            fixed,
            embedding,
            fixed_space,
            unit,
            s_one,
            der_a,
            cent_a,
            der_s,
            grading_der_a,
            grading_cent_a,
            grading_der_s,
            psi,
            hypotheses,
            der_tensor: OnceBox::new(),
            grading_der_tensor: OnceBox::new(),
            der_fixed: OnceBox::new(),
        })
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    /// D(A⊗S), by brute force.
    pub fn der_tensor(&self) -> &EndoSpace {
        self.der_tensor.get_or_init(|| Box::new(derivation_space(&self.tensor)))
    }

    /// The grading of D(A⊗S) induced by `σ*`.
    pub fn grading_der_tensor(&self) -> &Grading {
        self.grading_der_tensor.get_or_init(|| {
            Box::new(induced_endo_grading(&self.sigma, self.der_tensor()).expect("D(A⊗S) is σ*-invariant"))
        })
    }

    /// (D(A⊗S))_0̄.
    pub fn der_tensor_zero(&self) -> EndoSpace {
        crate::gradings::endo_component(self.grading_der_tensor(), self.der_tensor(), 0)
    }

    /// D((A⊗S)_0̄), by brute force on the fixed-point algebra.
    pub fn der_fixed(&self) -> &EndoSpace {
        self.der_fixed.get_or_init(|| Box::new(derivation_space(&self.fixed)))
    }

    /// `Σ_ī dim D(A)_ī · dim S_{-ī} + dim C(A)_ī · dim D(S)_{-ī}`.
    pub fn graded_dimension_formula(&self) -> usize {
        let m = self.m as i64;
        (0..m)
            .map(|i| {
                self.grading_der_a.component(i).dim() * self.grading_s.component(-i).dim()
                    + self.grading_cent_a.component(i).dim() * self.grading_der_s.component(-i).dim()
            })
            .sum()
    }

    /// `ε(i)` for the setup's period.
    pub fn eps(&self, i: i64) -> i64 {
        eps(i, self.m) as i64
    }

    /// Coordinates of `a ⊗ s`.
    pub fn pure(&self, a: &[Scalar], s: &[Scalar]) -> Vec<Scalar> {
        kron_vec(self.field(), a, s)
    }

    /// The S-module action `(a ⊗ s) · s' = a ⊗ ss'`.
    pub fn act(&self, x: &[Scalar], s: &[Scalar]) -> Vec<Scalar> {
        let ns = self.s.dim();
        x.chunks(ns).flat_map(|chunk| self.s.mul_unchecked(chunk, s)).collect()
    }

    /// `u'^k` for the degree-1̄ unit `u'`.
    pub fn u_pow(&self, k: i64) -> Vec<Scalar> {
        let base = if k < 0 { &self.unit.u_prime_inv } else { &self.unit.u_prime };
        self.s.power(base, k.unsigned_abs() as i64).expect("u' and its inverse live in S")
    }

    /// `u^k` for the unit `u` of residue `q`.
    pub fn u_orig_pow(&self, k: i64) -> Vec<Scalar> {
        let base = if k < 0 { &self.unit.u_inv } else { &self.unit.u };
        self.s.power(base, k.unsigned_abs() as i64).expect("u and its inverse live in S")
    }

    pub fn s_mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.s.mul_unchecked(x, y)
    }

    /// Applies a derivation `d` of the fixed-point algebra (matrix in its
    /// canonical basis) to a tensor vector lying in `(A⊗S)_0̄`.
    pub fn apply_fixed(&self, d: &Matrix, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let coords = self
            .fixed_space
            .coordinates(x)
            .ok_or_else(|| Error::NotInDomain(String::from("argument is not a fixed point")))?;
        self.embedding.mul_vec(&d.mul_vec(&coords)?)
    }

    /// Homogeneous bases of `A` and `S` and the matrix whose columns are the
    /// products `a ⊗ b` in the order `(a index) * dim S + (b index)`.
    pub fn graded_tensor_basis(&self) -> (Vec<(u64, Vec<Scalar>)>, Vec<(u64, Vec<Scalar>)>, Matrix) {
        let ha = self.grading_a.homogeneous_basis();
        let hs = self.grading_s.homogeneous_basis();
        let cols: Vec<Vec<Scalar>> =
            ha.iter().flat_map(|(_, a)| hs.iter().map(move |(_, b)| kron_vec(self.field(), a, b))).collect();
        let g = Matrix::from_columns(self.field(), self.tensor.dim(), &cols).expect("square");
        (ha, hs, g)
    }

    /// Whether `t` commutes with `σ`.
    pub fn is_degree_zero(&self, t: &Matrix) -> bool {
        match (self.sigma.matrix().mul(t), t.mul(self.sigma.matrix())) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        }
    }
}

/// The field must contain a primitive `m`-th root of unity and `m` must be
/// invertible.
fn check_roots(field: &Field, m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::WrongPeriod { m });
    }
    if field.kind() == FieldKind::Prime && m % field.characteristic() == 0 {
        return Err(Error::CharDividesM { p: field.characteristic(), m });
    }
    omega(field, m).map(|_| ())
}

impl core::fmt::Debug for Setup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Setup")
            .field("a", &self.a)
            .field("s", &self.s)
            .field("m", &self.m)
            .field("fixed_dim", &self.fixed.dim())
            .finish_non_exhaustive()
    }
}
