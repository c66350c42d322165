//! The restriction map π, its inverse φ, and the earlier extension formula
//! kept for counterexample reproduction.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::setup::Setup;
use crate::error::{Error, Result};
use crate::gradings::inverse_mod;
use crate::invariants::{is_derivation, leibniz_violation};
use crate::linalg::Matrix;
use crate::scalar::{FieldKind, Scalar};

/// Which closed form of φ to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Valid whenever `m` is invertible in the field.
    Char0,
    /// Prime fields only: uses `u^{p r}` with `r = ε(s̄ p̄⁻¹)`.
    CharP,
}

/// π(D): the restriction of `D ∈ (D(A⊗S))_0̄` to the fixed-point algebra,
/// as a matrix in the fixed algebra's canonical basis.
pub fn restrict_pi(setup: &Setup, d: &Matrix) -> Result<Matrix> {
    let n = setup.tensor.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: d.rows() });
    }
    if let Some((i, j)) = leibniz_violation(&setup.tensor, d) {
        return Err(Error::NotInDomain(format!("not a derivation of A(x)S (basis pair {i}, {j})")));
    }
    if !setup.is_degree_zero(d) {
        return Err(Error::NotInDomain(String::from("derivation does not commute with sigma")));
    }
    let image = d.mul(&setup.embedding)?;
    let cols = (0..image.cols())
        .map(|c| {
            setup
                .fixed_space
                .coordinates(&image.column(c))
                .ok_or_else(|| Error::Invariant(String::from("degree-zero derivation leaves the fixed points")))
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(setup.field(), setup.fixed.dim(), &cols)
}

fn check_fixed_derivation(setup: &Setup, d: &Matrix) -> Result<()> {
    let k = setup.fixed.dim();
    if d.rows() != k || d.cols() != k {
        return Err(Error::DimensionMismatch { expected: k, found: d.rows() });
    }
    if !is_derivation(&setup.fixed, d) {
        return Err(Error::NotInDomain(String::from("not a derivation of the fixed-point algebra")));
    }
    Ok(())
}

/// Assembles an endomorphism of `A⊗S` from its values on the graded basis
/// `a_ī ⊗ b_j̄`; `value(i, a, j, b)` returns the image of `a ⊗ b`.
fn from_graded_values(
    setup: &Setup,
    mut value: impl FnMut(i64, &[Scalar], i64, &[Scalar]) -> Result<Vec<Scalar>>,
) -> Result<Matrix> {
    let (ha, hs, g) = setup.graded_tensor_basis();
    let mut cols = Vec::with_capacity(g.cols());
    for (i, a) in &ha {
        for (j, b) in &hs {
            cols.push(value(*i as i64, a, *j as i64, b)?);
        }
    }
    let images = Matrix::from_columns(setup.field(), setup.tensor.dim(), &cols)?;
    images.mul(&g.inverse()?)
}

fn sub(setup: &Setup, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let f = setup.field();
    x.iter().zip(y).map(|(p, q)| f.sub(p, q)).collect()
}

fn add(setup: &Setup, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let f = setup.field();
    x.iter().zip(y).map(|(p, q)| f.add(p, q)).collect()
}

fn scale(setup: &Setup, c: &Scalar, x: &[Scalar]) -> Vec<Scalar> {
    let f = setup.field();
    x.iter().map(|p| f.mul(c, p)).collect()
}

/// `d(a ⊗ u^k b)` for `a ⊗ u^k b` in the fixed-point algebra.
fn d_shift(setup: &Setup, d: &Matrix, a: &[Scalar], k: i64, b: &[Scalar]) -> Result<Vec<Scalar>> {
    let y = setup.s_mul(&setup.u_pow(k), b);
    setup.apply_fixed(d, &setup.pure(a, &y))
}

/// φ(d) through the closed form with parameter `n` (`mn` must be
/// invertible):
///
/// `φ(d)(a_ī ⊗ b) = d(a ⊗ u^{-ε(s̄)} b) u^{ε(s̄)}
///   + ε(s̄) (mn)⁻¹ u^{ε(ī)} [u^{-mn} d(a ⊗ u^{-ε(ī)+mn}) − d(a ⊗ u^{-ε(ī)})] b`
///
/// with `b ∈ S_j̄` and `s̄ = ī + j̄`. No verification is performed.
pub fn extend_phi_n(setup: &Setup, d: &Matrix, n: i64) -> Result<Matrix> {
    check_fixed_derivation(setup, d)?;
    let f = setup.field().clone();
    let m = setup.m as i64;
    let mn = m * n;
    let mn_inv = f.inv(&f.from_int(mn)).map_err(|_| Error::NotInDomain(format!("{mn} is not invertible")))?;
    let one = setup.s_one.clone();
    from_graded_values(setup, |i, a, j, b| {
        let es = setup.eps(i + j);
        let ei = setup.eps(i);
        let first = setup.act(&d_shift(setup, d, a, -es, b)?, &setup.u_pow(es));
        if es == 0 {
            return Ok(first);
        }
        let shifted = setup.act(&d_shift(setup, d, a, -ei + mn, &one)?, &setup.u_pow(-mn));
        let bracket = sub(setup, &shifted, &d_shift(setup, d, a, -ei, &one)?);
        let coeff = f.mul(&f.from_int(es), &mn_inv);
        let second = scale(setup, &coeff, &setup.act(&bracket, &setup.s_mul(&setup.u_pow(ei), b)));
        Ok(add(setup, &first, &second))
    })
}

fn extend_phi_charp(setup: &Setup, d: &Matrix) -> Result<Matrix> {
    check_fixed_derivation(setup, d)?;
    let f = setup.field();
    if f.kind() != FieldKind::Prime {
        return Err(Error::NotInDomain(String::from("the char-p branch needs a prime field")));
    }
    let p = f.characteristic();
    let p_inv = inverse_mod(p % setup.m, setup.m).ok_or(Error::CharDividesM { p, m: setup.m })?;
    from_graded_values(setup, |i, a, j, b| {
        let r = setup.eps((i + j) * p_inv as i64);
        let pr = p as i64 * r;
        Ok(setup.act(&d_shift(setup, d, a, -pr, b)?, &setup.u_pow(pr)))
    })
}

/// φ(d) for a derivation `d` of the fixed-point algebra, verified to be a
/// degree-0̄ derivation of `A⊗S` restricting to `d`.
pub fn extend_phi(setup: &Setup, d: &Matrix, branch: Branch) -> Result<Matrix> {
    let big = match branch {
        Branch::Char0 => extend_phi_n(setup, d, 1)?,
        Branch::CharP => extend_phi_charp(setup, d)?,
    };
    if let Some((i, j)) = leibniz_violation(&setup.tensor, &big) {
        return Err(Error::Invariant(format!("phi(d) violates the Leibniz rule on basis pair ({i}, {j})")));
    }
    if !setup.is_degree_zero(&big) {
        return Err(Error::Invariant(String::from("phi(d) does not commute with sigma")));
    }
    if restrict_pi(setup, &big)? != *d {
        return Err(Error::Invariant(String::from("phi(d) does not restrict to d")));
    }
    Ok(big)
}

/// The earlier published extension `D(x_ī ⊗ b) = u^r d(x_ī ⊗ u^{-r} b)`
/// with `s̄ = q̄ r̄`, `0 ≤ r < m`, for the unit `u ∈ S_q̄`. The result is not
/// checked and in general is not a derivation.
pub fn bm_formula_extend(setup: &Setup, d: &Matrix) -> Result<Matrix> {
    check_fixed_derivation(setup, d)?;
    let q_inv = setup.unit.q_inv as i64;
    from_graded_values(setup, |i, a, j, b| {
        let r = setup.eps((i + j) * q_inv);
        let y = setup.s_mul(&setup.u_orig_pow(-r), b);
        let inner = setup.apply_fixed(d, &setup.pure(a, &y))?;
        Ok(setup.act(&inner, &setup.u_orig_pow(r)))
    })
}
