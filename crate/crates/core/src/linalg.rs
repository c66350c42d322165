//! Exact linear algebra: reduced row echelon form, kernels and a lattice of
//! subspaces with canonical representatives.
//!
//! Matrices are dense. Large homogeneous systems (the Leibniz and centroid
//! systems) are instead fed row by row into a [`LinearSystem`], which keeps
//! sparse echelon rows and only densifies the final kernel.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            if row.iter().any(|s| !field.contains(s)) {
                return Err(Error::FieldMismatch);
            }
            data.extend(row);
        }
        Ok(Matrix { field: field.clone(), rows: nrows, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, nrows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(field, nrows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != nrows {
                return Err(Error::DimensionMismatch { expected: nrows, found: col.len() });
            }
            for (r, v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v.clone();
            }
        }
        Ok(m)
    }

    /// Reshapes a row-major flattened vector.
    pub fn from_flat(field: &Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Row-major entries.
    pub fn flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<Scalar> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| self.field.is_zero(s))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(&self.field, self.rows)
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = &self.field;
        Matrix { data: self.data.iter().map(|a| f.mul(c, a)).collect(), ..self.clone() }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !f.is_zero(b) {
                        let idx = r * out.cols + c;
                        out.data[idx] = f.mul_add(&out.data[idx], a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.mul_add(&acc, a, b)
                    }
                })
            })
            .collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Kronecker product; index `(i, j)` maps to `i * other_dim + j`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Matrix::zeros(f, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(j, l);
                        if !f.is_zero(b) {
                            out.set(i * r2 + j, k * c2 + l, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, e: u64) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Reduced row echelon form with leftmost-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(r) = (prow..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else { continue };
            m.swap_rows(r, prow);
            let lead_inv = f.inv(m.get(prow, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(&lead_inv, m.get(prow, c));
                m.set(prow, c, v);
            }
            for r in 0..m.rows {
                if r == prow || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = f.neg(m.get(r, col));
                for c in col..m.cols {
                    let p = m.get(prow, c);
                    if !f.is_zero(p) {
                        let v = f.mul_add(m.get(r, c), &factor, p);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref { reduced: m, rank: prow, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Null space `{v : M v = 0}` as a canonical subspace.
    pub fn kernel(&self) -> Subspace {
        let Rref { reduced, rank, pivots } = self.rref();
        kernel_from_reduced(&self.field, self.cols, &pivots, |i, c| reduced.get(i, c).clone(), rank)
    }

    /// One solution of `M x = b` (free variables set to zero), if any.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, f.one());
        }
        let Rref { reduced, rank, pivots } = aug.rref();
        if rank < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut out = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, reduced.get(r, n + c).clone());
            }
        }
        Ok(out)
    }
}

fn kernel_from_reduced(
    field: &Field,
    ncols: usize,
    pivots: &[usize],
    entry: impl Fn(usize, usize) -> Scalar,
    rank: usize,
) -> Subspace {
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots[..rank] {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Scalar>> = (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); ncols];
            v[free] = field.one();
            for (i, &p) in pivots[..rank].iter().enumerate() {
                v[p] = field.neg(&entry(i, free));
            }
            v
        })
        .collect();
    Subspace::from_spanning(field, ncols, vectors).expect("kernel vectors have the ambient length")
}

type SparseRow = Vec<(usize, Scalar)>;

/// Homogeneous linear system accumulated row by row in sparse echelon form.
///
/// Each inserted row is reduced against the existing pivots immediately, so
/// redundant equations cost one reduction and are then discarded.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: Field,
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl LinearSystem {
    pub fn new(field: &Field, ncols: usize) -> Self {
        LinearSystem { field: field.clone(), ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds the equation `sum coeff * x[col] = 0`. Entries may repeat columns.
    /// Returns whether the equation was independent of the previous ones.
    pub fn push(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        let f = &self.field;
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in entries {
            debug_assert!(c < self.ncols);
            if f.is_zero(&v) {
                continue;
            }
            let slot = acc.entry(c).or_insert_with(|| f.zero());
            *slot = f.add(slot, &v);
        }
        let mut row: SparseRow = acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect();
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else { return false };
            match self.pivots.get(&lead) {
                Some(p) => row = sparse_axpy(f, &row, &f.neg(&lead_val), p),
                None => {
                    let inv = f.inv(&lead_val).expect("nonzero lead");
                    for (_, v) in row.iter_mut() {
                        *v = f.mul(&inv, v);
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Adds a dense equation.
    pub fn push_dense(&mut self, row: &[Scalar]) -> bool {
        self.push(row.iter().cloned().enumerate())
    }

    fn reduced(&self) -> BTreeMap<usize, SparseRow> {
        let f = &self.field;
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&lead, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let hits: Vec<(usize, Scalar)> =
                row.iter().skip(1).filter(|(c, _)| done.contains_key(c)).cloned().collect();
            for (c, v) in hits {
                r = sparse_axpy(f, &r, &f.neg(&v), &done[&c]);
            }
            done.insert(lead, r);
        }
        done
    }

    pub fn kernel(&self) -> Subspace {
        let reduced = self.reduced();
        let pivots: Vec<usize> = reduced.keys().copied().collect();
        let rows: Vec<&SparseRow> = reduced.values().collect();
        let f = &self.field;
        kernel_from_reduced(
            f,
            self.ncols,
            &pivots,
            |i, c| match rows[i].binary_search_by_key(&c, |(k, _)| *k) {
                Ok(pos) => rows[i][pos].1.clone(),
                Err(_) => f.zero(),
            },
            pivots.len(),
        )
    }
}

/// `a + c * b` on sparse rows.
fn sparse_axpy(f: &Field, a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = f.mul_add(&a[i].1, c, &b[j].1);
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A linear subspace of `k^n`, stored by its reduced echelon basis, so that
/// equal subspaces have equal representations.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        let id = Matrix::identity(field, ambient);
        Subspace {
            field: field.clone(),
            ambient,
            basis: (0..ambient).map(|r| id.row(r).to_vec()).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonical span of arbitrary vectors.
    pub fn from_spanning(field: &Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(field, ambient));
        }
        for v in &vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
        }
        let m = Matrix::from_rows(field, vectors)?;
        let Rref { reduced, rank, pivots } = m.rref();
        Ok(Subspace {
            field: field.clone(),
            ambient,
            basis: (0..rank).map(|r| reduced.row(r).to_vec()).collect(),
            pivots,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_columns(&self) -> Matrix {
        Matrix::from_columns(&self.field, self.ambient, &self.basis).expect("basis vectors have ambient length")
    }

    /// Coordinates with respect to the canonical basis, or `None` when `v`
    /// is not in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient {
            return None;
        }
        let f = &self.field;
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![f.zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            for (slot, x) in rebuilt.iter_mut().zip(b) {
                if !f.is_zero(x) {
                    *slot = f.mul_add(slot, c, x);
                }
            }
        }
        (rebuilt == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Linear combination of the basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            for (slot, x) in out.iter_mut().zip(b) {
                if !f.is_zero(x) {
                    *slot = f.mul_add(slot, c, x);
                }
            }
        }
        out
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::from_spanning(&self.field, self.ambient, vectors)
    }

    /// Zassenhaus: row reduce `[u | u]` stacked on `[v | 0]`; the rows whose
    /// left half vanishes span the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let f = &self.field;
        let n = self.ambient;
        if self.basis.is_empty() || other.basis.is_empty() {
            return Ok(Subspace::zero(f, n));
        }
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut r = u.clone();
            r.extend(u.iter().cloned());
            rows.push(r);
        }
        for v in &other.basis {
            let mut r = v.clone();
            r.extend(core::iter::repeat_n(f.zero(), n));
            rows.push(r);
        }
        let Rref { reduced, rank, pivots } = Matrix::from_rows(f, rows)?.rref();
        let vectors = (0..rank).filter(|&i| pivots[i] >= n).map(|i| reduced.row(i)[n..].to_vec()).collect();
        Subspace::from_spanning(f, n, vectors)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    /// True iff `dim U + dim V = dim (U + V) = n`.
    pub fn is_direct_sum_decomposition_of(&self, other: &Subspace, n: usize) -> Result<bool> {
        let s = self.sum(other)?;
        Ok(self.dim() + other.dim() == s.dim() && s.dim() == n)
    }

    /// Whether `parts` are independent and span exactly `target`.
    pub fn is_direct_sum(parts: &[Subspace], target: &Subspace) -> Result<bool> {
        let mut acc = Subspace::zero(&target.field, target.ambient);
        let mut total = 0;
        for p in parts {
            acc = acc.sum(p)?;
            total += p.dim();
        }
        Ok(total == acc.dim() && acc == *target)
    }
}
