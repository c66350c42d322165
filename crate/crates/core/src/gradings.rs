//! ℤ_m-gradings induced by automorphisms of period `m`: eigenspace
//! decompositions of algebras and of endomorphism spaces under
//! `σ*(T) = σ T σ⁻¹`, tensor automorphisms, fixed-point subalgebras and the
//! search for homogeneous units.

use alloc::vec;
use alloc::vec::Vec;
use alloc::{format, string::String};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::invariants::{EndoSpace, EndoTag};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{Field, Scalar};

/// Number of coefficient combinations tried by [`find_graded_unit`] after
/// the basis vectors of the component.
pub const UNIT_SEARCH_BUDGET: usize = 64;

/// An invertible multiplicative map with `σ^m = id` for the declared `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Automorphism {
    matrix: Matrix,
    m: u64,
}

impl Automorphism {
    /// Validates `matrix` (column convention) as an automorphism of `a`
    /// of period `m`.
    pub fn check(a: &Algebra, matrix: Matrix, m: u64) -> Result<Self> {
        let n = a.dim();
        if matrix.field() != a.field() {
            return Err(Error::FieldMismatch);
        }
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: matrix.rows().max(matrix.cols()) });
        }
        if m == 0 {
            return Err(Error::WrongPeriod { m });
        }
        if matrix.rank() < n {
            return Err(Error::NotAutomorphism(String::from("matrix is singular")));
        }
        if !a.is_multiplicative(&matrix) {
            return Err(Error::NotAutomorphism(String::from("matrix does not preserve products")));
        }
        if !matrix.pow(m)?.is_identity() {
            return Err(Error::WrongPeriod { m });
        }
        Ok(Automorphism { matrix, m })
    }

    pub fn identity(a: &Algebra, m: u64) -> Self {
        Automorphism { matrix: Matrix::identity(a.field(), a.dim()), m: m.max(1) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn period(&self) -> u64 {
        self.m
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `σ⁻¹ = σ^{m-1}`.
    pub fn inverse_matrix(&self) -> Matrix {
        self.matrix.pow(self.m - 1).expect("square")
    }

    /// `σ T σ⁻¹`.
    pub fn conjugate(&self, t: &Matrix) -> Result<Matrix> {
        self.matrix.mul(t)?.mul(&self.inverse_matrix())
    }
}

/// `σ₁ ⊗ σ₂` on `A ⊗ S` in the shared tensor basis order.
pub fn tensor_automorphism(s1: &Automorphism, s2: &Automorphism) -> Result<Automorphism> {
    if s1.field() != s2.field() {
        return Err(Error::FieldMismatch);
    }
    if s1.m != s2.m {
        return Err(Error::WrongPeriod { m: s1.m });
    }
    let matrix = s1.matrix.kron(&s2.matrix);
    if !matrix.pow(s1.m)?.is_identity() {
        return Err(Error::WrongPeriod { m: s1.m });
    }
    Ok(Automorphism { matrix, m: s1.m })
}

/// The primitive `m`-th root of unity used for eigenspace gradings.
pub fn omega(field: &Field, m: u64) -> Result<Scalar> {
    field.primitive_root(m).ok_or(Error::NoPrimitiveRoot { m })
}

/// Canonical representative of `i mod m` in `{0, ..., m-1}`.
pub fn eps(i: i64, m: u64) -> u64 {
    i.rem_euclid(m as i64) as u64
}

/// Inverse of `q` in ℤ_m, if it is a unit.
pub fn inverse_mod(q: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    (1..m).find(|&x| (q % m) * x % m == 1)
}

/// A ℤ_m-grading: independent components indexed by residues whose sum is
/// the whole carrier space.
#[derive(Clone, Debug, PartialEq)]
pub struct Grading {
    m: u64,
    components: Vec<Subspace>,
}

impl Grading {
    pub fn new(components: Vec<Subspace>) -> Result<Self> {
        let m = components.len() as u64;
        let first = components.first().ok_or(Error::WrongPeriod { m: 0 })?;
        let full = Subspace::full(first.field(), first.ambient());
        if !Subspace::is_direct_sum(&components, &full)? {
            return Err(Error::Invariant(String::from("graded components do not form a direct sum decomposition")));
        }
        Ok(Grading { m, components })
    }

    /// A grading of a subspace `carrier` (components must sum directly to it).
    pub fn of_subspace(components: Vec<Subspace>, carrier: &Subspace) -> Result<Self> {
        if !Subspace::is_direct_sum(&components, carrier)? {
            return Err(Error::Invariant(String::from("graded components do not form a direct sum decomposition")));
        }
        Ok(Grading { m: components.len() as u64, components })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Component of residue `i mod m`.
    pub fn component(&self, i: i64) -> &Subspace {
        &self.components[eps(i, self.m) as usize]
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }

    pub fn ambient(&self) -> usize {
        self.components[0].ambient()
    }

    /// Residue of a nonzero homogeneous vector.
    pub fn degree_of(&self, v: &[Scalar]) -> Option<u64> {
        let f = self.components[0].field();
        if v.iter().all(|x| f.is_zero(x)) {
            return None;
        }
        self.components.iter().position(|c| c.contains(v)).map(|i| i as u64)
    }

    /// Splits `v` into its homogeneous parts, indexed by residue.
    pub fn decompose(&self, v: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
        let f = self.components[0].field().clone();
        let n = self.ambient();
        let columns: Vec<Vec<Scalar>> = self.components.iter().flat_map(|c| c.basis().iter().cloned()).collect();
        let basis = Matrix::from_columns(&f, n, &columns)?;
        let coords = basis.solve(v)?.ok_or_else(|| Error::NotInDomain(String::from("vector outside the graded space")))?;
        let mut out = Vec::with_capacity(self.components.len());
        let mut offset = 0;
        for c in &self.components {
            out.push(c.combine(&coords[offset..offset + c.dim()]));
            offset += c.dim();
        }
        Ok(out)
    }

    /// Homogeneous basis: the canonical bases of the components, each
    /// vector tagged with its residue.
    pub fn homogeneous_basis(&self) -> Vec<(u64, Vec<Scalar>)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.basis().iter().map(move |v| (i as u64, v.clone())))
            .collect()
    }

    /// `A_ī A_j̄ ⊆ A_{ī+j̄}` for every pair of components.
    pub fn is_multiplicative_for(&self, a: &Algebra) -> bool {
        let m = self.m as i64;
        (0..m).all(|i| {
            (0..m).all(|j| {
                let target = self.component(i + j);
                self.component(i).basis().iter().all(|x| {
                    self.component(j).basis().iter().all(|y| target.contains(&a.mul_unchecked(x, y)))
                })
            })
        })
    }

    /// `Σ ω^i P_i` where `P_i` projects onto component `i`.
    pub fn reconstruct(&self, omega: &Scalar) -> Result<Matrix> {
        let f = self.components[0].field().clone();
        let n = self.ambient();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![f.zero(); n];
            e[j] = f.one();
            let parts = self.decompose(&e)?;
            let mut col = vec![f.zero(); n];
            let mut w = f.one();
            for part in parts {
                for (slot, x) in col.iter_mut().zip(&part) {
                    *slot = f.mul_add(slot, &w, x);
                }
                w = f.mul(&w, omega);
            }
            cols.push(col);
        }
        Matrix::from_columns(&f, n, &cols)
    }
}

/// Eigenspaces `ker(σ − ω^i)` for `i = 0, ..., m-1`.
pub fn grading_from_automorphism(sigma: &Automorphism) -> Result<Grading> {
    let f = sigma.field().clone();
    let w = omega(&f, sigma.m)?;
    let n = sigma.dim();
    let mut comps = Vec::with_capacity(sigma.m as usize);
    let mut wi = f.one();
    for _ in 0..sigma.m {
        let shifted = sigma.matrix.sub(&Matrix::identity(&f, n).scale(&wi))?;
        comps.push(shifted.kernel());
        wi = f.mul(&wi, &w);
    }
    Grading::new(comps)
        .map_err(|_| Error::Invariant(String::from("eigenspaces of the automorphism do not span the space")))
}

/// The grading of an endomorphism space induced by `σ*`, as subspaces of
/// the flattened ambient space.
pub fn induced_endo_grading(sigma: &Automorphism, e: &EndoSpace) -> Result<Grading> {
    let f = sigma.field().clone();
    if e.rows() != sigma.dim() || e.cols() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: sigma.dim(), found: e.rows() });
    }
    let basis = e.basis_matrices();
    let inv = sigma.inverse_matrix();
    let k = basis.len();
    let mut columns = Vec::with_capacity(k);
    for t in &basis {
        let c = sigma.matrix.mul(t)?.mul(&inv)?;
        columns.push(e.coordinates(&c).ok_or(Error::NotInvariant)?);
    }
    let action = Matrix::from_columns(&f, k, &columns)?;
    let w = omega(&f, sigma.m)?;
    let mut comps = Vec::with_capacity(sigma.m as usize);
    let mut wi = f.one();
    for _ in 0..sigma.m {
        let shifted = action.sub(&Matrix::identity(&f, k).scale(&wi))?;
        let coeffs = shifted.kernel();
        let vectors = coeffs.basis().iter().map(|c| e.space().combine(c)).collect();
        comps.push(Subspace::from_spanning(&f, e.rows() * e.cols(), vectors)?);
        wi = f.mul(&wi, &w);
    }
    Grading::of_subspace(comps, e.space())
        .map_err(|_| Error::Invariant(String::from("eigenspaces of the conjugation action do not span the space")))
}

/// Component `i` of an induced endomorphism grading as an [`EndoSpace`].
pub fn endo_component(g: &Grading, e: &EndoSpace, i: i64) -> EndoSpace {
    EndoSpace::new(EndoTag::Component, e.rows(), e.cols(), g.component(i).clone()).expect("same ambient")
}

/// The fixed-point subalgebra `ker(σ − id)` with its embedding.
pub fn fixed_point_algebra(a: &Algebra, sigma: &Automorphism) -> Result<(Algebra, Matrix, Subspace)> {
    let f = a.field();
    let fixed = sigma.matrix.sub(&Matrix::identity(f, a.dim()))?.kernel();
    let (alg, emb) = a.subalgebra_on(&fixed)?;
    Ok((alg, emb, fixed))
}

/// A homogeneous unit of a graded commutative associative unital algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedUnitData {
    /// Residue of `u`, a unit of ℤ_m.
    pub q: u64,
    /// `q⁻¹` in ℤ_m.
    pub q_inv: u64,
    pub u: Vec<Scalar>,
    pub u_inv: Vec<Scalar>,
    /// `u^{ε(q⁻¹)}`, a unit in degree 1̄.
    pub u_prime: Vec<Scalar>,
    pub u_prime_inv: Vec<Scalar>,
}

impl GradedUnitData {
    /// Completes a known homogeneous unit `u` of residue `q`.
    pub fn from_unit(s: &Algebra, grading: &Grading, u: Vec<Scalar>) -> Result<Self> {
        s.require_commutative_associative_unital()?;
        let m = grading.m();
        let q = grading
            .degree_of(&u)
            .ok_or_else(|| Error::NotInDomain(String::from("u is not homogeneous for the grading")))?;
        let q_inv = inverse_mod(q, m).ok_or(Error::NotUnitResidue { q, m })?;
        let u_inv = s.invert_element(&u)?;
        let u_prime = s.power(&u, q_inv as i64)?;
        let u_prime_inv = s.invert_element(&u_prime)?;
        if m > 1 && grading.degree_of(&u_prime) != Some(1) {
            return Err(Error::Invariant(format!("u^{q_inv} does not lie in degree 1")));
        }
        Ok(GradedUnitData { q, q_inv, u, u_inv, u_prime, u_prime_inv })
    }
}

/// Searches `S_q̄` for an invertible element: basis vectors first, then up
/// to [`UNIT_SEARCH_BUDGET`] combinations with coefficients in
/// `{0, 1, -1, 2, -2}` in mixed-radix order.
pub fn find_graded_unit(s: &Algebra, grading: &Grading, q: u64) -> Result<GradedUnitData> {
    s.require_commutative_associative_unital()?;
    let m = grading.m();
    if inverse_mod(q, m).is_none() {
        return Err(Error::NotUnitResidue { q, m });
    }
    let comp = grading.component(q as i64);
    let f = s.field();
    let is_unit = |v: &[Scalar]| s.left_matrix(v).map(|l| l.rank() == s.dim()).unwrap_or(false);
    for b in comp.basis() {
        if is_unit(b) {
            return GradedUnitData::from_unit(s, grading, b.clone());
        }
    }
    let k = comp.dim();
    if k > 0 {
        let coeffs = [0i64, 1, -1, 2, -2];
        let mut tried = 0;
        let mut index: u64 = 1;
        let limit = 5u64.saturating_pow(k as u32);
        while tried < UNIT_SEARCH_BUDGET && index < limit {
            let mut digits = Vec::with_capacity(k);
            let mut t = index;
            for _ in 0..k {
                digits.push(coeffs[(t % 5) as usize]);
                t /= 5;
            }
            index += 1;
            let nonzero = digits.iter().filter(|&&d| d != 0).count();
            if nonzero <= 1 && digits.iter().all(|&d| d == 0 || d == 1) {
                continue;
            }
            tried += 1;
            let c: Vec<Scalar> = digits.iter().map(|&d| f.from_int(d)).collect();
            let v = comp.combine(&c);
            if is_unit(&v) {
                return GradedUnitData::from_unit(s, grading, v);
            }
        }
    }
    Err(Error::NoUnitFound { residue: q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::invariants::{centroid, derivation_space};
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rational()
    }

    #[test]
    fn sign_automorphism_of_sl2() {
        let f = q();
        let a = catalog::sl2(&f);
        let s = catalog::sl2_sign_automorphism(&a);
        let g = grading_from_automorphism(&s).unwrap();
        assert_eq!(g.dims(), vec![1, 2]);
        assert!(g.component(0).contains(&a.basis_vector(1)));
        assert!(g.is_multiplicative_for(&a));
        assert_eq!(g.reconstruct(&f.from_int(-1)).unwrap(), *s.matrix());
    }

    #[test]
    fn automorphism_errors() {
        let f = q();
        let a = catalog::sl2(&f);
        assert!(Automorphism::check(&a, Matrix::identity(&f, 3), 5).is_ok());
        let swap = Matrix::from_columns(&f, 3, &[a.basis_vector(1), a.basis_vector(0), a.basis_vector(2)]).unwrap();
        assert!(matches!(Automorphism::check(&a, swap, 2), Err(Error::NotAutomorphism(_))));
        let sign = catalog::sl2_sign_automorphism(&a).matrix().clone();
        assert_eq!(Automorphism::check(&a, sign, 3).unwrap_err(), Error::WrongPeriod { m: 3 });
    }

    #[test]
    fn identity_grading_is_trivial() {
        let f = q();
        let a = catalog::sl2(&f);
        let g = grading_from_automorphism(&Automorphism::identity(&a, 1)).unwrap();
        assert_eq!(g.dims(), vec![3]);
    }

    #[test]
    fn monomial_grading_over_cyclotomic_field() {
        let f = Field::cyclotomic(4).unwrap();
        let s = catalog::group_algebra(&f, 4);
        let sigma = catalog::scaling_automorphism(&s, &f.zeta(), 4).unwrap();
        let g = grading_from_automorphism(&sigma).unwrap();
        assert_eq!(g.dims(), vec![1, 1, 1, 1]);
        for i in 0..4 {
            assert!(g.component(i).contains(&s.basis_vector(i as usize)));
        }
        let unit = find_graded_unit(&s, &g, 3).unwrap();
        assert_eq!(unit.u, s.basis_vector(3));
        // 3 * 3 = 1 in Z_4, so u' = (z^3)^3 = z^9 = z.
        assert_eq!(unit.q_inv, 3);
        assert_eq!(unit.u_prime, s.basis_vector(1));
    }

    #[test]
    fn graded_units() {
        let f = q();
        let s = catalog::group_algebra(&f, 4);
        let g = grading_from_automorphism(&catalog::scaling_automorphism(&s, &f.from_int(-1), 2).unwrap()).unwrap();
        let u = find_graded_unit(&s, &g, 1).unwrap();
        assert_eq!(u.u, s.basis_vector(1));
        assert_eq!(s.multiply(&u.u, &s.basis_vector(3)).unwrap(), s.basis_vector(0));
        let trivial = grading_from_automorphism(&Automorphism::identity(&s, 2)).unwrap();
        assert_eq!(find_graded_unit(&s, &trivial, 1).unwrap_err(), Error::NoUnitFound { residue: 1 });
        let mut comps = vec![Subspace::full(&f, 4)];
        comps.extend((1..4).map(|_| Subspace::zero(&f, 4)));
        let g4 = Grading::new(comps).unwrap();
        assert_eq!(find_graded_unit(&s, &g4, 2).unwrap_err(), Error::NotUnitResidue { q: 2, m: 4 });
    }

    #[test]
    fn unit_search_uses_combinations() {
        // k x k on idempotents e1, e2: neither basis vector is a unit, e1 + e2 is.
        let f = q();
        let names = vec![String::from("e1"), String::from("e2")];
        let table = vec![vec![vec![(0, f.one())], vec![]], vec![vec![], vec![(1, f.one())]]];
        let s = Algebra::new(&f, names, table).unwrap();
        let g = Grading::new(vec![Subspace::full(&f, 2)]).unwrap();
        let unit = find_graded_unit(&s, &g, 0).unwrap();
        assert_eq!(unit.u, vec![f.one(), f.one()]);
    }

    #[test]
    fn induced_gradings_on_sl2() {
        let f = q();
        let a = catalog::sl2(&f);
        let s = catalog::sl2_sign_automorphism(&a);
        let der = derivation_space(&a);
        let g = induced_endo_grading(&s, &der).unwrap();
        assert_eq!(g.dims(), vec![1, 2]);
        // Oracle: ad h is fixed by conjugation, ad e and ad f change sign.
        let ad = |i: usize| a.left_matrix(&a.basis_vector(i)).unwrap();
        assert!(g.component(0).contains(ad(1).flat()));
        assert!(g.component(1).contains(ad(0).flat()));
        assert!(g.component(1).contains(ad(2).flat()));
        let c = centroid(&a);
        assert_eq!(induced_endo_grading(&s, &c).unwrap().dims(), vec![1, 0]);
        let id = Automorphism::identity(&a, 1);
        assert_eq!(induced_endo_grading(&id, &der).unwrap().dims(), vec![3]);
    }

    #[test]
    fn tensor_gradings_follow_the_convolution_formula() {
        let f = q();
        let a = catalog::sl2(&f);
        let s = catalog::group_algebra(&f, 4);
        let s1 = catalog::sl2_sign_automorphism(&a);
        let s2 = catalog::scaling_automorphism(&s, &f.from_int(-1), 2).unwrap();
        let t = tensor_automorphism(&s1, &s2).unwrap();
        assert!(t.matrix().pow(2).unwrap().is_identity());
        let (ga, gs) = (grading_from_automorphism(&s1).unwrap(), grading_from_automorphism(&s2).unwrap());
        let gt = grading_from_automorphism(&t).unwrap();
        for i in 0..2i64 {
            let conv: usize = (0..2i64).map(|j| ga.component(i - j).dim() * gs.component(j).dim()).sum();
            assert_eq!(gt.component(i).dim(), conv);
        }
        let prod = a.tensor_product(&s).unwrap();
        let (fixed, emb, space) = fixed_point_algebra(&prod, &t).unwrap();
        assert_eq!(fixed.dim(), 6);
        assert_eq!(&space, gt.component(0));
        assert_eq!(emb.cols(), 6);
        let ids = tensor_automorphism(&Automorphism::identity(&a, 2), &Automorphism::identity(&s, 2)).unwrap();
        assert!(ids.matrix().is_identity());
    }

    #[test]
    fn sigma_star_preserves_invariant_spaces() {
        let f = q();
        for (a, sigma) in catalog::graded_algebras(&f) {
            for space in [derivation_space(&a), centroid(&a)] {
                for t in space.basis_matrices() {
                    assert!(space.contains(&sigma.conjugate(&t).unwrap()));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn eps_addition_law(i in 0u64..12, j in 0u64..12, m in 1u64..12) {
            let (i, j) = (i % m, j % m);
            let sum = eps((i + j) as i64, m);
            if i + j < m {
                prop_assert_eq!(sum, i + j);
            } else {
                prop_assert_eq!(sum, i + j - m);
            }
            prop_assert!(eps(i as i64 - m as i64, m) == i);
        }

        #[test]
        fn grading_decomposition_round_trips(x in proptest::collection::vec(-5i64..=5, 12)) {
            let f = q();
            let a = catalog::sl2(&f);
            let s = catalog::group_algebra(&f, 4);
            let t = tensor_automorphism(
                &catalog::sl2_sign_automorphism(&a),
                &catalog::scaling_automorphism(&s, &f.from_int(-1), 2).unwrap(),
            ).unwrap();
            let g = grading_from_automorphism(&t).unwrap();
            let v: Vec<Scalar> = x.iter().map(|&c| f.from_int(c)).collect();
            let parts = g.decompose(&v).unwrap();
            let mut sum = vec![f.zero(); 12];
            for (i, p) in parts.iter().enumerate() {
                prop_assert!(g.components()[i].contains(p));
                for (s, y) in sum.iter_mut().zip(p) {
                    *s = f.add(s, y);
                }
            }
            prop_assert_eq!(sum, v);
        }
    }

    #[test]
    fn gradings_are_complete_multiplicative_and_reconstruct_sigma() {
        let f = q();
        for (a, sigma) in catalog::graded_algebras(&f) {
            let g = grading_from_automorphism(&sigma).unwrap();
            assert_eq!(g.dims().iter().sum::<usize>(), a.dim());
            assert!(g.is_multiplicative_for(&a));
            let w = omega(&f, sigma.period()).unwrap();
            assert_eq!(g.reconstruct(&w).unwrap(), *sigma.matrix());
        }
    }
}
