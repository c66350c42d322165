//! Finite-dimensional algebras given by structure constants.
//!
//! Elements are coordinate vectors (`Vec<Scalar>`) in the algebra's basis.
//! Linear maps use the column convention: column `j` of a matrix is the
//! image of basis vector `j`. The tensor product orders its basis with the
//! left factor major, `(i, j) -> i * dim S + j`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{Field, Scalar};

/// Sparse product `b_i * b_j` as `(k, c)` pairs with strictly increasing `k`
/// and nonzero `c`.
pub type Product = Vec<(usize, Scalar)>;

/// Structural predicates, computed once per algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Properties {
    pub perfect: bool,
    /// Coordinates of the two-sided identity, if there is one.
    pub unit: Option<Vec<Scalar>>,
    pub commutative: bool,
    pub associative: bool,
    /// Span of all products `b_i * b_j`.
    pub product_span: Subspace,
}

/// Generators of the multiplication algebra: `L_{b_i}`, `R_{b_i}` and the
/// identity.
#[derive(Clone, Debug, PartialEq)]
pub struct MultOperators {
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
    pub identity: Matrix,
}

pub struct Algebra {
    field: Field,
    names: Vec<String>,
    table: Vec<Vec<Product>>,
    props: OnceBox<Properties>,
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        let props = OnceBox::new();
        if let Some(p) = self.props.get() {
            let _ = props.set(Box::new(p.clone()));
        }
        Algebra { field: self.field.clone(), names: self.names.clone(), table: self.table.clone(), props }
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.names == other.names && self.table == other.table
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra").field("field", &self.field).field("basis", &self.names).finish_non_exhaustive()
    }
}

impl Algebra {
    /// Builds an algebra from sparse products; `table[i][j]` lists the
    /// components of `b_i * b_j`. Repeated indices are summed and zero
    /// coefficients dropped.
    pub fn new(field: &Field, names: Vec<String>, table: Vec<Vec<Vec<(usize, Scalar)>>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if table.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: table.len() });
        }
        let mut normalized = Vec::with_capacity(n);
        for row in table {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            let mut out_row = Vec::with_capacity(n);
            for entry in row {
                let mut dense = vec![field.zero(); n];
                for (k, c) in entry {
                    if k >= n {
                        return Err(Error::DimensionMismatch { expected: n, found: k + 1 });
                    }
                    if !field.contains(&c) {
                        return Err(Error::FieldMismatch);
                    }
                    dense[k] = field.add(&dense[k], &c);
                }
                out_row.push(sparse(field, &dense));
            }
            normalized.push(out_row);
        }
        Ok(Algebra { field: field.clone(), names, table: normalized, props: OnceBox::new() })
    }

    /// Builds an algebra from a function giving the coordinates of `b_i * b_j`.
    pub fn from_fn(
        field: &Field,
        names: Vec<String>,
        mut product: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Result<Self> {
        let n = names.len();
        let table = (0..n)
            .map(|i| (0..n).map(|j| product(i, j).into_iter().enumerate().collect()).collect())
            .collect();
        Self::new(field, names, table)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Sparse `b_i * b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        match self.table[i][j].binary_search_by_key(&k, |(x, _)| *x) {
            Ok(pos) => self.table[i][j][pos].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    fn check_element(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        if x.iter().any(|s| !self.field.contains(s)) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Bilinear extension of the table.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, t) in &self.table[i][j] {
                    out[*k] = f.mul_add(&out[*k], &c, t);
                }
            }
        }
        out
    }

    /// Matrix of `y -> x * y`.
    pub fn left_matrix(&self, x: &[Scalar]) -> Result<Matrix> {
        self.check_element(x)?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.mul_unchecked(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// Matrix of `y -> y * x`.
    pub fn right_matrix(&self, x: &[Scalar]) -> Result<Matrix> {
        self.check_element(x)?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.mul_unchecked(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    pub fn mult_operators(&self) -> MultOperators {
        let n = self.dim();
        let f = &self.field;
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for i in 0..n {
            let mut l = Matrix::zeros(f, n, n);
            let mut r = Matrix::zeros(f, n, n);
            for j in 0..n {
                for (k, c) in &self.table[i][j] {
                    l.set(*k, j, c.clone());
                }
                for (k, c) in &self.table[j][i] {
                    r.set(*k, j, c.clone());
                }
            }
            left.push(l);
            right.push(r);
        }
        MultOperators { left, right, identity: Matrix::identity(f, n) }
    }

    pub fn properties(&self) -> &Properties {
        self.props.get_or_init(|| Box::new(self.compute_properties()))
    }

    fn compute_properties(&self) -> Properties {
        let n = self.dim();
        let f = &self.field;
        let mut products = Vec::with_capacity(n * n);
        let mut commutative = true;
        for i in 0..n {
            for j in 0..n {
                products.push(densify(f, n, &self.table[i][j]));
                if self.table[i][j] != self.table[j][i] {
                    commutative = false;
                }
            }
        }
        let product_span = Subspace::from_spanning(f, n, products).expect("products have length dim");
        let associative = (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let bi = self.basis_vector(i);
                    let bk = self.basis_vector(k);
                    let ij = densify(f, n, &self.table[i][j]);
                    let jk = densify(f, n, &self.table[j][k]);
                    self.mul_unchecked(&ij, &bk) == self.mul_unchecked(&bi, &jk)
                })
            })
        });
        Properties {
            perfect: product_span.dim() == n,
            unit: self.solve_unit(),
            commutative,
            associative,
            product_span,
        }
    }

    /// Solves `L_u = R_u = id` as a linear system in the coordinates of `u`.
    fn solve_unit(&self) -> Option<Vec<Scalar>> {
        let n = self.dim();
        let f = &self.field;
        // Unknown u_t; equations (u b_j)_k = delta_jk and (b_j u)_k = delta_jk.
        let mut rows = Vec::with_capacity(2 * n * n);
        let mut rhs = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                let target = if j == k { f.one() } else { f.zero() };
                rows.push((0..n).map(|t| self.structure_constant(t, j, k)).collect());
                rhs.push(target.clone());
                rows.push((0..n).map(|t| self.structure_constant(j, t, k)).collect());
                rhs.push(target);
            }
        }
        let m = Matrix::from_rows(f, rows).ok()?;
        m.solve(&rhs).ok().flatten()
    }

    pub fn is_perfect(&self) -> bool {
        self.properties().perfect
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.properties().unit.as_deref()
    }

    pub fn is_commutative(&self) -> bool {
        self.properties().commutative
    }

    pub fn is_associative(&self) -> bool {
        self.properties().associative
    }

    /// Validates the standing hypotheses on a coefficient algebra and
    /// returns its unit.
    pub fn require_commutative_associative_unital(&self) -> Result<Vec<Scalar>> {
        if !self.is_commutative() {
            return Err(Error::NotCommutative);
        }
        if !self.is_associative() {
            return Err(Error::NotAssociative);
        }
        self.unit().map(<[Scalar]>::to_vec).ok_or(Error::NotUnital)
    }

    /// `A ⊗ S` with `(a ⊗ s)(a' ⊗ s') = aa' ⊗ ss'`.
    pub fn tensor_product(&self, s: &Algebra) -> Result<Algebra> {
        if self.field != s.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let (na, ns) = (self.dim(), s.dim());
        let names = (0..na * ns).map(|idx| format!("{}⊗{}", self.names[idx / ns], s.names[idx % ns])).collect();
        let mut table = Vec::with_capacity(na * ns);
        for i in 0..na {
            for j in 0..ns {
                let mut row = Vec::with_capacity(na * ns);
                for k in 0..na {
                    for l in 0..ns {
                        let mut entry = Vec::new();
                        for (p, c) in &self.table[i][k] {
                            for (q, d) in &s.table[j][l] {
                                entry.push((p * ns + q, f.mul(c, d)));
                            }
                        }
                        entry.sort_by_key(|(x, _)| *x);
                        row.push(entry);
                    }
                }
                table.push(row);
            }
        }
        Ok(Algebra { field: f.clone(), names, table, props: OnceBox::new() })
    }

    /// The algebra structure on a product-closed subspace, in the
    /// subspace's canonical basis, together with the embedding matrix
    /// (columns are the basis vectors in ambient coordinates).
    pub fn subalgebra_on(&self, u: &Subspace) -> Result<(Algebra, Matrix)> {
        if u.ambient() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.ambient() });
        }
        if u.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if u.dim() == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let basis = u.basis();
        let k = basis.len();
        let mut table = Vec::with_capacity(k);
        for x in basis {
            let mut row = Vec::with_capacity(k);
            for y in basis {
                let p = self.mul_unchecked(x, y);
                let coords = u.coordinates(&p).ok_or(Error::NotClosed)?;
                row.push(coords.into_iter().enumerate().collect());
            }
            table.push(row);
        }
        let names = basis.iter().enumerate().map(|(t, v)| self.vector_name(v, t)).collect();
        Ok((Algebra::new(&self.field, names, table)?, u.basis_columns()))
    }

    /// A basis name for a subspace vector: the ambient name when the vector
    /// is a basis vector, otherwise `v<index>`.
    fn vector_name(&self, v: &[Scalar], index: usize) -> String {
        let f = &self.field;
        let nonzero: Vec<usize> = (0..v.len()).filter(|&i| !f.is_zero(&v[i])).collect();
        match nonzero.as_slice() {
            [i] if f.is_one(&v[*i]) => self.names[*i].clone(),
            _ => format!("v{index}"),
        }
    }

    /// Renames the basis.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: names.len() });
        }
        self.names = names;
        Ok(self)
    }

    /// Two-sided inverse of `u`, found by solving `L_u x = 1`.
    pub fn invert_element(&self, u: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_element(u)?;
        let one = self.unit().ok_or(Error::NotUnital)?.to_vec();
        let l = self.left_matrix(u)?;
        if l.rank() < self.dim() {
            return Err(Error::SingularElement);
        }
        let x = l.solve(&one)?.ok_or(Error::SingularElement)?;
        if self.mul_unchecked(&x, u) != one {
            return Err(Error::SingularElement);
        }
        Ok(x)
    }

    /// `u^e` in a unital power-associative algebra; negative exponents go
    /// through [`Algebra::invert_element`].
    pub fn power(&self, u: &[Scalar], e: i64) -> Result<Vec<Scalar>> {
        self.check_element(u)?;
        let one = self.unit().ok_or(Error::NotUnital)?.to_vec();
        let base = if e < 0 { self.invert_element(u)? } else { u.to_vec() };
        let mut acc = one;
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_unchecked(&acc, &b);
            }
            b = self.mul_unchecked(&b, &b);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Applies a linear map given in the column convention to an element.
    pub fn apply(&self, map: &Matrix, x: &[Scalar]) -> Result<Vec<Scalar>> {
        map.mul_vec(x)
    }

    /// Whether `map` (from `self` to `self`) satisfies `T(xy) = T(x)T(y)` on
    /// all basis pairs.
    pub fn is_multiplicative(&self, map: &Matrix) -> bool {
        let n = self.dim();
        if map.rows() != n || map.cols() != n {
            return false;
        }
        let images: Vec<Vec<Scalar>> = (0..n).map(|j| map.column(j)).collect();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = map.mul_vec(&densify(&self.field, n, &self.table[i][j])).expect("square map");
                lhs == self.mul_unchecked(&images[i], &images[j])
            })
        })
    }
}

pub(crate) fn densify(f: &Field, n: usize, entries: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut v = vec![f.zero(); n];
    for (k, c) in entries {
        v[*k] = c.clone();
    }
    v
}

pub(crate) fn sparse(f: &Field, v: &[Scalar]) -> Product {
    v.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(k, c)| (k, c.clone())).collect()
}
