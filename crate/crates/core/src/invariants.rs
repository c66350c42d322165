//! Invariant spaces of endomorphisms: derivations, relative derivations,
//! centroid, differential centroid, the S-linear and A⊗1-vanishing
//! derivations of a tensor product, and the map ψ: C(A)⊗S → C(A⊗S).
//!
//! Every space is the kernel of an explicitly assembled linear system over
//! endomorphism coordinates. An endomorphism `T` with `rows x cols` matrix is
//! flattened row-major: entry `T[r][c]` is coordinate `r * cols + c`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{LinearSystem, Matrix, Subspace};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndoTag {
    Derivations,
    RelativeDerivations,
    Centroid,
    DifferentialCentroid,
    SModuleDerivations,
    VanishingOnA1,
    /// A space assembled from images of other spaces, such as D(A)⊗S.
    Image,
    /// A graded component of another space.
    Component,
}

/// A subspace of `Hom(k^cols, k^rows)` in flattened coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct EndoSpace {
    tag: EndoTag,
    rows: usize,
    cols: usize,
    space: Subspace,
}

impl EndoSpace {
    pub fn new(tag: EndoTag, rows: usize, cols: usize, space: Subspace) -> Result<Self> {
        if space.ambient() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: space.ambient() });
        }
        Ok(EndoSpace { tag, rows, cols, space })
    }

    /// Span of the given matrices.
    pub fn span(tag: EndoTag, field: &Field, rows: usize, cols: usize, mats: &[Matrix]) -> Result<Self> {
        let vectors = mats
            .iter()
            .map(|m| {
                if m.rows() != rows || m.cols() != cols {
                    Err(Error::DimensionMismatch { expected: rows * cols, found: m.rows() * m.cols() })
                } else {
                    Ok(m.flat().to_vec())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(tag, rows, cols, Subspace::from_spanning(field, rows * cols, vectors)?)
    }

    pub fn tag(&self) -> EndoTag {
        self.tag
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn with_tag(mut self, tag: EndoTag) -> Self {
        self.tag = tag;
        self
    }

    pub fn basis_matrix(&self, t: usize) -> Matrix {
        Matrix::from_flat(self.field(), self.rows, self.cols, self.space.basis()[t].clone())
            .expect("basis vectors have the flattened length")
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        (0..self.dim()).map(|t| self.basis_matrix(t)).collect()
    }

    /// The element with the given coordinates in the canonical basis.
    pub fn combine(&self, coords: &[Scalar]) -> Matrix {
        Matrix::from_flat(self.field(), self.rows, self.cols, self.space.combine(coords))
            .expect("combination has the flattened length")
    }

    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        if m.rows() != self.rows || m.cols() != self.cols {
            return None;
        }
        self.space.coordinates(m.flat())
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.coordinates(m).is_some()
    }

    /// Whether commutators of basis elements stay in the space.
    pub fn is_lie_closed(&self) -> bool {
        let mats = self.basis_matrices();
        mats.iter().enumerate().all(|(i, x)| {
            mats[i + 1..].iter().all(|y| x.commutator(y).map(|c| self.contains(&c)).unwrap_or(false))
        })
    }

    /// Whether products (compositions) of basis elements stay in the space.
    pub fn is_composition_closed(&self) -> bool {
        let mats = self.basis_matrices();
        mats.iter().all(|x| mats.iter().all(|y| x.mul(y).map(|c| self.contains(&c)).unwrap_or(false)))
    }

    /// Whether all basis elements pairwise commute.
    pub fn is_commutative(&self) -> bool {
        let mats = self.basis_matrices();
        mats.iter().enumerate().all(|(i, x)| {
            mats[i + 1..].iter().all(|y| x.commutator(y).map(|c| c.is_zero()).unwrap_or(false))
        })
    }

    /// The subspace of elements `T` with `condition(T) = 0`, where
    /// `condition` is linear.
    pub fn restrict(&self, tag: EndoTag, condition: impl Fn(&Matrix) -> Vec<Scalar>) -> Result<EndoSpace> {
        let f = self.field().clone();
        let images: Vec<Vec<Scalar>> = self.basis_matrices().iter().map(&condition).collect();
        let neq = images.first().map_or(0, Vec::len);
        let mut sys = LinearSystem::new(&f, self.dim());
        for row in 0..neq {
            sys.push(images.iter().enumerate().map(|(t, img)| (t, img[row].clone())));
        }
        let coeffs = sys.kernel();
        let vectors = coeffs.basis().iter().map(|c| self.space.combine(c)).collect();
        EndoSpace::new(tag, self.rows, self.cols, Subspace::from_spanning(&f, self.rows * self.cols, vectors)?)
    }

    pub fn intersect(&self, other: &EndoSpace, tag: EndoTag) -> Result<EndoSpace> {
        EndoSpace::new(tag, self.rows, self.cols, self.space.intersect(&other.space)?)
    }
}

/// Row-major flattening of a matrix.
pub fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.flat().to_vec()
}

/// The Leibniz system `d(b_i b_j) = d(b_i) b_j + b_i d(b_j)` over all ordered
/// pairs, in the `dim^2` unknowns `d[r][c]`.
pub fn derivation_system(a: &Algebra) -> LinearSystem {
    let n = a.dim();
    let f = a.field();
    let mut sys = LinearSystem::new(f, n * n);
    for i in 0..n {
        for j in 0..n {
            let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            for (l, c) in a.basis_product(i, j) {
                for (k, eq) in eqs.iter_mut().enumerate() {
                    eq.push((k * n + l, c.clone()));
                }
            }
            for r in 0..n {
                for (k, c) in a.basis_product(r, j) {
                    eqs[*k].push((r * n + i, f.neg(c)));
                }
                for (k, c) in a.basis_product(i, r) {
                    eqs[*k].push((r * n + j, f.neg(c)));
                }
            }
            for eq in eqs {
                if !eq.is_empty() {
                    sys.push(eq);
                }
            }
        }
    }
    sys
}

/// D(A).
pub fn derivation_space(a: &Algebra) -> EndoSpace {
    let n = a.dim();
    EndoSpace::new(EndoTag::Derivations, n, n, derivation_system(a).kernel()).expect("kernel has ambient n^2")
}

/// First basis pair on which `d` violates the Leibniz rule.
pub fn leibniz_violation(a: &Algebra, d: &Matrix) -> Option<(usize, usize)> {
    let n = a.dim();
    if d.rows() != n || d.cols() != n {
        return Some((0, 0));
    }
    let images: Vec<Vec<Scalar>> = (0..n).map(|j| d.column(j)).collect();
    let f = a.field();
    for i in 0..n {
        for j in 0..n {
            let prod = crate::algebra::densify(f, n, a.basis_product(i, j));
            let lhs = d.mul_vec(&prod).expect("square");
            let r1 = a.mul_unchecked(&images[i], &a.basis_vector(j));
            let r2 = a.mul_unchecked(&a.basis_vector(i), &images[j]);
            let rhs: Vec<Scalar> = r1.iter().zip(&r2).map(|(x, y)| f.add(x, y)).collect();
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_derivation(a: &Algebra, d: &Matrix) -> bool {
    leibniz_violation(a, d).is_none()
}

/// D(B, A) for a product-closed subspace `B` of `A`: linear maps `B → A`
/// (in the canonical basis of `B`) with `δ(xy) = δ(x)y + xδ(y)`.
pub fn relative_derivation_space(a: &Algebra, b: &Subspace) -> Result<EndoSpace> {
    let (sub, _) = a.subalgebra_on(b)?;
    let n = a.dim();
    let k = b.dim();
    let f = a.field();
    let basis = b.basis();
    let lefts: Vec<Matrix> = basis.iter().map(|v| a.left_matrix(v)).collect::<Result<_>>()?;
    let rights: Vec<Matrix> = basis.iter().map(|v| a.right_matrix(v)).collect::<Result<_>>()?;
    let mut sys = LinearSystem::new(f, n * k);
    for i in 0..k {
        for j in 0..k {
            for row in 0..n {
                let mut eq = Vec::new();
                // δ(v_i v_j) through the structure constants of B.
                for (l, c) in sub.basis_product(i, j) {
                    eq.push((row * k + l, c.clone()));
                }
                for r in 0..n {
                    let rv = rights[j].get(row, r);
                    if !f.is_zero(rv) {
                        eq.push((r * k + i, f.neg(rv)));
                    }
                    let lv = lefts[i].get(row, r);
                    if !f.is_zero(lv) {
                        eq.push((r * k + j, f.neg(lv)));
                    }
                }
                sys.push(eq);
            }
        }
    }
    EndoSpace::new(EndoTag::RelativeDerivations, n, k, sys.kernel())
}

/// Sparse entries `(row, col, value)` of a matrix.
fn sparse_entries(m: &Matrix) -> Vec<(usize, usize, Scalar)> {
    let f = m.field();
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if !f.is_zero(v) {
                out.push((r, c, v.clone()));
            }
        }
    }
    out
}

/// Adds the equations `γM − Mγ = 0` for a square `n x n` matrix `M`.
fn push_commutation(sys: &mut LinearSystem, n: usize, m: &Matrix) {
    let f = m.field().clone();
    let entries = sparse_entries(m);
    let mut by_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
    let mut by_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
    for (r, c, v) in entries {
        by_col[c].push((r, v.clone()));
        by_row[r].push((c, v));
    }
    for r in 0..n {
        for c in 0..n {
            let mut eq = Vec::with_capacity(by_col[c].len() + by_row[r].len());
            for (k, v) in &by_col[c] {
                eq.push((r * n + k, v.clone()));
            }
            for (k, v) in &by_row[r] {
                eq.push((k * n + c, f.neg(v)));
            }
            if !eq.is_empty() {
                sys.push(eq);
            }
        }
    }
}

/// Matrices commuting with every matrix in `mats`.
pub fn commutant(field: &Field, n: usize, mats: &[Matrix]) -> Subspace {
    let mut sys = LinearSystem::new(field, n * n);
    for m in mats {
        push_commutation(&mut sys, n, m);
    }
    sys.kernel()
}

/// C(A): `γ` commuting with all `L_{b_i}`, `R_{b_i}` and satisfying
/// `γ(b_i b_j) = γ(b_i) b_j`.
pub fn centroid(a: &Algebra) -> EndoSpace {
    let n = a.dim();
    let f = a.field();
    let ops = a.mult_operators();
    let mut sys = LinearSystem::new(f, n * n);
    for m in ops.left.iter().chain(&ops.right) {
        push_commutation(&mut sys, n, m);
    }
    for i in 0..n {
        for j in 0..n {
            let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            for (l, c) in a.basis_product(i, j) {
                for (k, eq) in eqs.iter_mut().enumerate() {
                    eq.push((k * n + l, c.clone()));
                }
            }
            for r in 0..n {
                for (k, c) in a.basis_product(r, j) {
                    eqs[*k].push((r * n + i, f.neg(c)));
                }
            }
            for eq in eqs {
                if !eq.is_empty() {
                    sys.push(eq);
                }
            }
        }
    }
    EndoSpace::new(EndoTag::Centroid, n, n, sys.kernel()).expect("kernel has ambient n^2")
}

/// dC(A) from already computed C(A) and D(A).
pub fn differential_centroid_of(cent: &EndoSpace, der: &EndoSpace) -> EndoSpace {
    let n = cent.rows();
    let comm = commutant(cent.field(), n, &der.basis_matrices());
    EndoSpace::new(EndoTag::DifferentialCentroid, n, n, cent.space().intersect(&comm).expect("same ambient"))
        .expect("same ambient")
}

/// dC(A) = {γ ∈ C(A) | [γ, D(A)] = 0}.
pub fn differential_centroid(a: &Algebra) -> EndoSpace {
    differential_centroid_of(&centroid(a), &derivation_space(a))
}

/// `1 ⊗ L_s` on `A ⊗ S`.
pub fn right_action_matrix(a: &Algebra, s: &Algebra, elem: &[Scalar]) -> Result<Matrix> {
    Ok(Matrix::identity(a.field(), a.dim()).kron(&s.left_matrix(elem)?))
}

/// D_S(A⊗S) inside a precomputed D(A⊗S).
pub fn s_module_derivations_in(der_tensor: &EndoSpace, a: &Algebra, s: &Algebra) -> Result<EndoSpace> {
    s.require_commutative_associative_unital()?;
    let actions: Vec<Matrix> =
        (0..s.dim()).map(|j| right_action_matrix(a, s, &s.basis_vector(j))).collect::<Result<_>>()?;
    der_tensor.restrict(EndoTag::SModuleDerivations, |d| {
        actions.iter().flat_map(|l| d.commutator(l).expect("same size").into_flat()).collect()
    })
}

/// D_{A⊗1}(A⊗S) inside a precomputed D(A⊗S).
pub fn vanishing_on_a1_in(der_tensor: &EndoSpace, a: &Algebra, s: &Algebra) -> Result<EndoSpace> {
    let one = s.require_commutative_associative_unital()?;
    let f = a.field();
    let inputs: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| kron_vec(f, &a.basis_vector(i), &one)).collect();
    der_tensor.restrict(EndoTag::VanishingOnA1, |d| {
        inputs.iter().flat_map(|x| d.mul_vec(x).expect("same size")).collect()
    })
}

/// D_S(A⊗S) = {d ∈ D(A⊗S) | d(x s) = d(x) s}.
pub fn s_module_derivations(a: &Algebra, s: &Algebra) -> Result<EndoSpace> {
    s.require_commutative_associative_unital()?;
    let t = a.tensor_product(s)?;
    s_module_derivations_in(&derivation_space(&t), a, s)
}

/// D_{A⊗1}(A⊗S) = {d ∈ D(A⊗S) | d(A⊗1) = 0}.
pub fn vanishing_on_a1_derivations(a: &Algebra, s: &Algebra) -> Result<EndoSpace> {
    s.require_commutative_associative_unital()?;
    let t = a.tensor_product(s)?;
    vanishing_on_a1_in(&derivation_space(&t), a, s)
}

/// Coordinates of `a ⊗ s` in the tensor basis.
pub fn kron_vec(field: &Field, a: &[Scalar], s: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() * s.len());
    for x in a {
        for y in s {
            out.push(if field.is_zero(x) || field.is_zero(y) { field.zero() } else { field.mul(x, y) });
        }
    }
    out
}

/// Result of checking ψ: C(A)⊗S → End(A⊗S), `γ ⊗ s ↦ γ ⊗ L_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiReport {
    /// Columns are the flattened images `ψ(γ_i ⊗ s_j)`, in the order
    /// `i * dim S + j`.
    pub matrix: Matrix,
    pub centroid_a: EndoSpace,
    pub centroid_tensor: EndoSpace,
    pub rank: usize,
    pub injective: bool,
    pub image_in_centroid: bool,
    pub surjective: bool,
    pub multiplicative: bool,
}

impl PsiReport {
    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.image_in_centroid && self.surjective && self.multiplicative
    }
}

/// Builds ψ and checks it is an isomorphism of associative algebras onto
/// C(A⊗S).
pub fn psi_map(a: &Algebra, s: &Algebra) -> Result<PsiReport> {
    if !a.is_perfect() {
        return Err(Error::NotPerfect);
    }
    s.require_commutative_associative_unital()?;
    let t = a.tensor_product(s)?;
    psi_map_with(a, s, &centroid(a), &centroid(&t))
}

/// ψ from precomputed centroids of `A` and `A⊗S`.
pub fn psi_map_with(a: &Algebra, s: &Algebra, cent_a: &EndoSpace, cent_t: &EndoSpace) -> Result<PsiReport> {
    let f = a.field();
    let n = a.dim() * s.dim();
    let gammas = cent_a.basis_matrices();
    let ls: Vec<Matrix> = (0..s.dim()).map(|j| s.left_matrix(&s.basis_vector(j))).collect::<Result<_>>()?;
    let mut images = Vec::with_capacity(gammas.len() * ls.len());
    for g in &gammas {
        for l in &ls {
            images.push(g.kron(l));
        }
    }
    let columns: Vec<Vec<Scalar>> = images.iter().map(flatten).collect();
    let matrix = Matrix::from_columns(f, n * n, &columns)?;
    let rank = matrix.rank();
    let image_in_centroid = images.iter().all(|m| cent_t.contains(m));
    let mut multiplicative = true;
    'outer: for (x, gx) in gammas.iter().enumerate() {
        for (y, gy) in gammas.iter().enumerate() {
            let comp = gx.mul(gy)?;
            for j in 0..s.dim() {
                for k in 0..s.dim() {
                    let lhs = images[x * s.dim() + j].mul(&images[y * s.dim() + k])?;
                    let prod = s.multiply(&s.basis_vector(j), &s.basis_vector(k))?;
                    let rhs = comp.kron(&s.left_matrix(&prod)?);
                    if lhs != rhs {
                        multiplicative = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(PsiReport {
        injective: rank == gammas.len() * s.dim(),
        surjective: rank == cent_t.dim(),
        matrix,
        centroid_a: cent_a.clone(),
        centroid_tensor: cent_t.clone(),
        rank,
        image_in_centroid,
        multiplicative,
    })
}

/// The associative algebra C(A)⊗S (composition in the first factor) on the
/// basis `γ_i ⊗ s_j`, together with its subalgebra 1⊗S.
pub fn centroid_tensor_algebra(cent: &EndoSpace, s: &Algebra) -> Result<(Algebra, Subspace)> {
    let f = cent.field().clone();
    let c = cent.dim();
    let ns = s.dim();
    let gammas = cent.basis_matrices();
    let mut comp = vec![vec![Vec::new(); c]; c];
    for (i, gi) in gammas.iter().enumerate() {
        for (k, gk) in gammas.iter().enumerate() {
            comp[i][k] = cent
                .coordinates(&gi.mul(gk)?)
                .ok_or_else(|| Error::Invariant(String::from("centroid not closed under composition")))?;
        }
    }
    let names: Vec<String> = (0..c * ns).map(|idx| format!("γ{}⊗{}", idx / ns, s.names()[idx % ns])).collect();
    let alg = Algebra::from_fn(&f, names, |x, y| {
        let (i, j) = (x / ns, x % ns);
        let (k, l) = (y / ns, y % ns);
        let sp = s.multiply(&s.basis_vector(j), &s.basis_vector(l)).expect("basis vectors");
        kron_vec(&f, &comp[i][k], &sp)
    })?;
    let id = Matrix::identity(&f, cent.rows());
    let id_coords = cent
        .coordinates(&id)
        .ok_or_else(|| Error::Invariant(String::from("identity is not in the centroid")))?;
    let one_s = (0..ns).map(|j| kron_vec(&f, &id_coords, &s.basis_vector(j))).collect();
    Ok((alg, Subspace::from_spanning(&f, c * ns, one_s)?))
}
