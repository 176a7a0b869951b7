//! Dense linear algebra over [`Fq`]: row reduction, kernels, subspaces and quotients.
//!
//! Vectors are rows. A subspace is stored as a matrix in reduced row echelon form,
//! which makes membership tests and canonical reduction cheap.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Fq};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: Elem) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn diagonal(entries: &[Elem]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`Matrix::from_rows`] but fixes the column count, so an empty list is a 0 x cols matrix.
    pub fn from_rows_with_cols(rows: &[Vec<Elem>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "ragged rows: expected {cols} entries, found {}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Reduces signed integer entries into the prime field of `f`.
    pub fn from_ints(f: &Fq, rows: &[Vec<i64>]) -> Result<Self> {
        let converted: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
            .collect();
        Self::from_rows(&converted)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        self.rows_iter().map(<[Elem]>::to_vec).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn push_row(&mut self, row: &[Elem]) -> Result<()> {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        if row.len() != self.cols {
            return Err(Error::Dimension(format!(
                "row of length {} pushed onto {} columns",
                row.len(),
                self.cols
            )));
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Matrix, f: &Fq) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn sub(&self, other: &Matrix, f: &Fq) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn scale(&self, c: Elem, f: &Fq) -> Matrix {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { data, ..*self }
    }

    pub fn neg(&self, f: &Fq) -> Matrix {
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Matrix { data, ..*self }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix, f: &Fq) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Elem], f: &Fq) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v, f)).collect())
    }

    pub fn pow(&self, mut e: u64, f: &Fq) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f)?;
            }
            base = base.mul(&base, f)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `I + A + A^2 + ... + A^{n-1}` by doubling.
    pub fn geometric_sum(&self, n: u64, f: &Fq) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension(
                "geometric sum of a non-square matrix".into(),
            ));
        }
        let dim = self.rows;
        // invariant: sum = S_k, power = A^k for the processed prefix of bits
        let mut sum = Matrix::zeros(dim, dim);
        let mut power = Matrix::identity(dim);
        for bit in (0..64).rev() {
            let k_is_set = (n >> bit) & 1 == 1;
            // S_{2k} = S_k + A^k S_k
            sum = sum.add(&power.mul(&sum, f)?, f)?;
            power = power.mul(&power, f)?;
            if k_is_set {
                // S_{k+1} = I + A S_k
                sum = Matrix::identity(dim).add(&self.mul(&sum, f)?, f)?;
                power = power.mul(self, f)?;
            }
        }
        Ok(sum)
    }

    pub fn rank(&self, f: &Fq) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, f: &Fq) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            let pivot_row: Vec<Elem> = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor != 0 {
                    axpy(self.row_mut(i), f.neg(factor), &pivot_row, c, f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// RREF with zero rows removed.
    pub fn row_basis(&self, f: &Fq) -> Matrix {
        let mut m = self.clone();
        let rank = m.rref(f).len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        m
    }

    /// Basis (as rows) of `{x : self * x = 0}`.
    pub fn kernel(&self, f: &Fq) -> Matrix {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(m.get(i, fc)));
            }
        }
        out
    }

    /// Basis (as rows) of `{y : y * self = 0}`.
    pub fn left_kernel(&self, f: &Fq) -> Matrix {
        self.transpose().kernel(f)
    }

    pub fn inverse(&self, f: &Fq) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(n))?;
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(aug.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self, f: &Fq) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }

    /// One solution `x` of `self * x = b`, if any.
    pub fn solve(&self, b: &[Elem], f: &Fq) -> Result<Option<Vec<Elem>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let col = Matrix::from_flat(self.rows, 1, b.to_vec())?;
        let mut aug = self.hstack(&col)?;
        let pivots = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols);
        }
        Ok(Some(x))
    }
}

pub fn dot(a: &[Elem], b: &[Elem], f: &Fq) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| {
        if x == 0 || y == 0 {
            acc
        } else {
            f.add(acc, f.mul(x, y))
        }
    })
}

/// `row[start..] += c * src[start..]`
fn axpy(row: &mut [Elem], c: Elem, src: &[Elem], start: usize, f: &Fq) {
    for j in start..row.len() {
        if src[j] != 0 {
            row[j] = f.add(row[j], f.mul(c, src[j]));
        }
    }
}

pub fn vec_add(a: &[Elem], b: &[Elem], f: &Fq) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_sub(a: &[Elem], b: &[Elem], f: &Fq) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn vec_scale(a: &[Elem], c: Elem, f: &Fq) -> Vec<Elem> {
    a.iter().map(|&x| f.mul(x, c)).collect()
}

pub fn is_zero_vec(a: &[Elem]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// `sum_i coeffs[i] * rows[i]`.
pub fn combine(coeffs: &[Elem], rows: &Matrix, f: &Fq) -> Vec<Elem> {
    let mut out = vec![0; rows.ncols()];
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            axpy(&mut out, c, rows.row(i), 0, f);
        }
    }
    out
}

/// Subspace of `k^n` stored as an RREF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}) {:?}",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let mut pivots = indices.to_vec();
        pivots.sort_unstable();
        pivots.dedup();
        let mut basis = Matrix::zeros(pivots.len(), ambient);
        for (r, &c) in pivots.iter().enumerate() {
            basis.set(r, c, 1);
        }
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    /// Span of the rows of `m`.
    pub fn span(m: &Matrix, f: &Fq) -> Self {
        let mut basis = m.clone();
        let pivots = basis.rref(f);
        basis.data.truncate(pivots.len() * basis.cols);
        basis.rows = pivots.len();
        Subspace {
            ambient: m.ncols(),
            basis,
            pivots,
        }
    }

    pub fn span_vectors(ambient: usize, vectors: &[Vec<Elem>], f: &Fq) -> Result<Self> {
        Ok(Self::span(
            &Matrix::from_rows_with_cols(vectors, ambient)?,
            f,
        ))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v` modulo this subspace: pivot coordinates cleared.
    pub fn reduce(&self, v: &[Elem], f: &Fq) -> Vec<Elem> {
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c != 0 {
                axpy(&mut out, f.neg(c), self.basis.row(i), 0, f);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Elem], f: &Fq) -> bool {
        is_zero_vec(&self.reduce(v, f))
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Elem], f: &Fq) -> Option<Vec<Elem>> {
        let coeffs: Vec<Elem> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let recon = combine(&coeffs, &self.basis, f);
        (recon == v).then_some(coeffs)
    }

    pub fn is_subspace_of(&self, other: &Subspace, f: &Fq) -> bool {
        self.basis.rows_iter().all(|r| other.contains(r, f))
    }

    pub fn sum(&self, other: &Subspace, f: &Fq) -> Result<Subspace> {
        Ok(Subspace::span(&self.basis.vstack(&other.basis)?, f))
    }

    pub fn intersect(&self, other: &Subspace, f: &Fq) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(
                "intersection of different ambients".into(),
            ));
        }
        // x = a B1 = b B2  <=>  (a, -b) in left kernel of [B1; B2]
        let stacked = self.basis.vstack(&other.basis)?;
        let k = stacked.left_kernel(f);
        let d1 = self.dim();
        let mut vecs = Matrix::zeros(0, self.ambient);
        for row in k.rows_iter() {
            vecs.push_row(&combine(&row[..d1], &self.basis, f))?;
        }
        Ok(Subspace::span(&vecs, f))
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image_under(&self, map: &Matrix, f: &Fq) -> Result<Subspace> {
        let imgs = self.basis.mul(&map.transpose(), f)?;
        let mut m = imgs;
        if m.nrows() == 0 {
            m = Matrix::zeros(0, map.nrows());
        }
        Ok(Subspace::span(&m, f))
    }

    /// `{y : pairing(x, y) = 0 for all x in self}` for a Gram matrix with `G[i][j] = <e_i, e'_j>`.
    pub fn annihilator(&self, gram: &Matrix, f: &Fq) -> Result<Subspace> {
        if gram.nrows() != self.ambient {
            return Err(Error::Dimension(
                "Gram matrix does not match the ambient space".into(),
            ));
        }
        let constraints = if self.dim() == 0 {
            Matrix::zeros(0, gram.ncols())
        } else {
            self.basis.mul(gram, f)?
        };
        Ok(Subspace::span(&constraints.kernel(f), f))
    }

    /// Basis of a complement of `self` inside `within` (rows in RREF order of the quotient).
    pub fn complement_in(&self, within: &Subspace, f: &Fq) -> Matrix {
        let mut reduced = Matrix::zeros(0, self.ambient);
        for r in within.basis.rows_iter() {
            reduced
                .push_row(&self.reduce(r, f))
                .expect("rows share the ambient");
        }
        reduced.row_basis(f)
    }
}

/// The quotient `upper / lower` with canonical representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    lower: Subspace,
    reps: Subspace,
}

impl Quotient {
    pub fn new(upper: &Subspace, lower: &Subspace, f: &Fq) -> Result<Self> {
        if !lower.is_subspace_of(upper, f) {
            return Err(Error::Dimension("quotient by a non-subspace".into()));
        }
        let reps = Subspace::span(&lower.complement_in(upper, f), f);
        Ok(Quotient {
            lower: lower.clone(),
            reps,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    /// Representatives of a basis of the quotient, one per row.
    pub fn basis(&self) -> &Matrix {
        self.reps.basis()
    }

    pub fn lower(&self) -> &Subspace {
        &self.lower
    }

    pub fn canonical(&self, v: &[Elem], f: &Fq) -> Vec<Elem> {
        self.lower.reduce(v, f)
    }

    /// Coordinates of the class of `v`; `None` when `v` lies outside the upper space.
    pub fn coordinates(&self, v: &[Elem], f: &Fq) -> Option<Vec<Elem>> {
        self.reps.coordinates(&self.lower.reduce(v, f), f)
    }

    /// Canonical representative of the class with the given coordinates.
    pub fn lift(&self, coords: &[Elem], f: &Fq) -> Vec<Elem> {
        combine(coords, self.reps.basis(), f)
    }
}

/// Incremental row echelon basis, used where equations arrive as a stream.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    cols: usize,
    rows: Vec<Vec<Elem>>,
    pivot_of_row: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
}

impl EchelonBuilder {
    pub fn new(cols: usize) -> Self {
        EchelonBuilder {
            cols,
            rows: Vec::new(),
            pivot_of_row: Vec::new(),
            row_of_pivot: vec![None; cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts a row; returns true when the rank grew.
    pub fn insert(&mut self, mut v: Vec<Elem>, f: &Fq) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        for c in 0..self.cols {
            if v[c] == 0 {
                continue;
            }
            match self.row_of_pivot[c] {
                Some(r) => {
                    let factor = f.neg(v[c]);
                    axpy(&mut v, factor, &self.rows[r], c, f);
                }
                None => {
                    let inv = f.inv(v[c]).expect("nonzero");
                    for x in v[c..].iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                    self.row_of_pivot[c] = Some(self.rows.len());
                    self.pivot_of_row.push(c);
                    self.rows.push(v);
                    return true;
                }
            }
        }
        false
    }

    pub fn into_matrix(self) -> Matrix {
        let cols = self.cols;
        Matrix::from_rows_with_cols(&self.rows, cols).expect("rows have equal length")
    }
}
