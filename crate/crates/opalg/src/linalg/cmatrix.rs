//! Dense complex matrices.
//!
//! [`CMatrix`] stores entries in row-major order and implements the small set
//! of exact operations the rest of the crate needs: arithmetic, adjoints,
//! Kronecker products, block surgery, and column-stacking vectorization.
//! Anything that requires a numerical rank decision lives in
//! [`crate::linalg::backend`].

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix with row-major entry storage.
///
/// Shapes with zero rows or columns are allowed; they show up naturally as
/// bases of zero-dimensional intertwiner spaces and as representations of the
/// zero module.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl CMatrix {
    /// Builds a matrix from row-major entries, rejecting NaN and infinities.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for (idx, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite {
                    row: if cols == 0 { 0 } else { idx / cols },
                    col: if cols == 0 { 0 } else { idx % cols },
                });
            }
        }
        Ok(CMatrix { rows, cols, entries })
    }

    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, entries: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Matrix unit `E_{i,j}` of the given shape.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = CMatrix::zeros(rows, cols);
        m.set(i, j, Complex64::new(1.0, 0.0));
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        CMatrix { rows, cols, entries }
    }

    /// Builds a matrix from real row data, mostly a test and example helper.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch("ragged row data".into()));
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        CMatrix::new(r, c, entries)
    }

    /// Column vector from a slice of entries.
    pub fn column(entries: &[Complex64]) -> Self {
        CMatrix { rows: entries.len(), cols: 1, entries: entries.to_vec() }
    }

    /// Real column vector, a test and example helper.
    pub fn real_column(entries: &[f64]) -> Self {
        CMatrix::column(&entries.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = value;
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    /// Plain transpose without conjugation.
    pub fn transpose(&self) -> Self {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix addition shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix subtraction shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Kronecker product: `(A ⊗ B)[(i p + k), (j q + l)] = A[i,j] B[k,l]`
    /// where `B` is `p x q`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = other.shape();
        CMatrix::from_fn(self.rows * p, self.cols * q, |i, j| {
            self.at(i / p, j / q) * other.at(i % p, j % q)
        })
    }

    /// Ampliation: `k` diagonal copies of the matrix, i.e. the action of the
    /// operator on the `k`-fold direct sum of its space when the summands are
    /// ordered first-copy-first.  Equals `I_k ⊗ self` in Kronecker terms.
    pub fn ampliate(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroMultiple);
        }
        Ok(CMatrix::identity(k).kron(self))
    }

    /// Column-stacking vectorization.
    ///
    /// The order is fixed crate-wide: `vec(M)[j * rows + i] = M[i, j]`, i.e.
    /// column 0 first.  With this convention `vec(A X B) = (Bᵀ ⊗ A) vec(X)`,
    /// which every Sylvester-style kernel assembly in the crate relies on.
    pub fn vectorize(&self) -> Self {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.at(i, j));
            }
        }
        CMatrix { rows: self.rows * self.cols, cols: 1, entries }
    }

    /// Inverse of [`CMatrix::vectorize`] for the given target shape.
    pub fn from_vectorized(v: &Self, rows: usize, cols: usize) -> Result<Self> {
        if v.cols != 1 || v.rows != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot reshape a {}x{} vector into {rows}x{cols}",
                v.rows, v.cols
            )));
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| v.at(j * rows + i, 0)))
    }

    /// Frobenius inner product `tr(other* self)`; linear in `self`,
    /// conjugate-linear in `other`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.shape(), other.shape(), "inner product shape mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| b.conj() * a)
            .sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Sum of diagonal entries (square matrices only).
    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).map(|i| self.at(i, i)).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.at(i, j));
            }
        }
    }

    /// Extracts the `h x w` block with top-left corner at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        assert!(r0 + h <= self.rows && c0 + w <= self.cols);
        CMatrix::from_fn(h, w, |i, j| self.at(r0 + i, c0 + j))
    }

    /// Block-diagonal sum of the given matrices.
    pub fn direct_sum(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = CMatrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Horizontal concatenation `[A | B | ...]`.
    pub fn hcat(mats: &[&Self]) -> Result<Self> {
        let rows = mats.first().map_or(0, |m| m.rows);
        if mats.iter().any(|m| m.rows != rows) {
            return Err(Error::ShapeMismatch("horizontal concatenation row mismatch".into()));
        }
        let cols = mats.iter().map(|m| m.cols).sum();
        let mut out = CMatrix::zeros(rows, cols);
        let mut c = 0;
        for m in mats {
            out.set_block(0, c, m);
            c += m.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vcat(mats: &[&Self]) -> Result<Self> {
        let cols = mats.first().map_or(0, |m| m.cols);
        if mats.iter().any(|m| m.cols != cols) {
            return Err(Error::ShapeMismatch("vertical concatenation column mismatch".into()));
        }
        let rows = mats.iter().map(|m| m.rows).sum();
        let mut out = CMatrix::zeros(rows, cols);
        let mut r = 0;
        for m in mats {
            out.set_block(r, 0, m);
            r += m.rows;
        }
        Ok(out)
    }

    /// Entrywise closeness in the max norm.
    pub fn approx_eq(&self, other: &Self, tol_abs: f64) -> bool {
        self.shape() == other.shape() && self.sub(other).max_abs() <= tol_abs
    }
}

impl serde::Serialize for CMatrix {
    /// Serializes in the workspace-file shape: row-major entries as
    /// `[re, im]` pairs, so emitted matrices can be re-ingested verbatim.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("CMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let entries: Vec<[f64; 2]> = self.entries.iter().map(|z| [z.re, z.im]).collect();
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.at(i, j);
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
