//! Subspaces of B(C^q, C^p): spans of operators under the trace inner product.
//!
//! An [`OperatorSubspace`] keeps an orthonormal basis with respect to
//! `<X, Y> = tr(Y* X)`.  Since column-stacking vectorization is an isometry
//! from that inner product to the standard one on C^{pq}, orthonormalization
//! and projections are delegated to ordinary vector routines.

use super::backend;
use super::cmatrix::CMatrix;
use super::Tolerance;
use crate::error::{Error, Result};

/// A linear subspace of `rows x cols` complex matrices with a trace-orthonormal
/// basis.  May have dimension zero while still remembering its shape.
#[derive(Clone, Debug, serde::Serialize)]
pub struct OperatorSubspace {
    rows: usize,
    cols: usize,
    basis: Vec<CMatrix>,
}

impl OperatorSubspace {
    /// Orthonormal span of the given matrices.  All inputs must share one
    /// shape; numerically dependent directions are dropped under the rank
    /// policy.  The empty list is rejected because it has no shape; use
    /// [`OperatorSubspace::zero`] when the shape is known.
    pub fn span_of(mats: &[CMatrix], tol: Tolerance) -> Result<Self> {
        let first = mats.first().ok_or(Error::EmptyInput(
            "span_of needs at least one matrix; use OperatorSubspace::zero for the empty span",
        ))?;
        let (rows, cols) = first.shape();
        Self::span_with_shape(rows, cols, mats, tol)
    }

    /// Same as [`OperatorSubspace::span_of`] but accepts an empty list.
    pub fn span_with_shape(
        rows: usize,
        cols: usize,
        mats: &[CMatrix],
        tol: Tolerance,
    ) -> Result<Self> {
        for m in mats {
            if m.shape() != (rows, cols) {
                return Err(Error::ShapeMismatch(format!(
                    "span over {rows}x{cols} matrices got a {}x{} element",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if mats.is_empty() || rows * cols == 0 {
            return Ok(OperatorSubspace { rows, cols, basis: Vec::new() });
        }
        let vecs: Vec<CMatrix> = mats.iter().map(|m| m.vectorize()).collect();
        let stacked = CMatrix::hcat(&vecs.iter().collect::<Vec<_>>())?;
        let cols_basis = backend::column_space_basis(&stacked, tol);
        let basis = cols_basis
            .iter()
            .map(|v| CMatrix::from_vectorized(v, rows, cols).expect("consistent shape"))
            .collect();
        Ok(OperatorSubspace { rows, cols, basis })
    }

    /// The zero subspace of `rows x cols` matrices.
    pub fn zero(rows: usize, cols: usize) -> Self {
        OperatorSubspace { rows, cols, basis: Vec::new() }
    }

    /// Wraps a basis that is already trace-orthonormal (nullspace output,
    /// adjoints of an orthonormal basis, ...); debug-asserted.
    pub(crate) fn from_orthonormal(rows: usize, cols: usize, basis: Vec<CMatrix>) -> Self {
        debug_assert!(basis.iter().all(|m| m.shape() == (rows, cols)));
        debug_assert!({
            let mut ok = true;
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let g = a.inner(b);
                    let expect = if i == j { 1.0 } else { 0.0 };
                    ok &= (g - num_complex::Complex64::new(expect, 0.0)).norm() < 1e-7;
                }
            }
            ok
        });
        OperatorSubspace { rows, cols, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    /// Orthogonal projection of `m` onto the subspace.
    pub fn project(&self, m: &CMatrix) -> CMatrix {
        assert_eq!(m.shape(), (self.rows, self.cols), "projection shape mismatch");
        let mut out = CMatrix::zeros(self.rows, self.cols);
        for b in &self.basis {
            out = out.add(&b.scaled(m.inner(b)));
        }
        out
    }

    /// Distance from `m` to the subspace in the Frobenius norm.
    pub fn distance(&self, m: &CMatrix) -> f64 {
        m.sub(&self.project(m)).norm()
    }

    /// Membership within tolerance, scaled up for inputs of norm above one.
    pub fn contains(&self, m: &CMatrix, tol: Tolerance) -> bool {
        m.shape() == (self.rows, self.cols)
            && self.distance(m) <= tol.match_abs * m.norm().max(1.0)
    }

    /// True when every (unit) basis element of `self` is within `match_abs`
    /// of its projection onto `other`.
    pub fn leq(&self, other: &OperatorSubspace, tol: Tolerance) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return false;
        }
        self.basis.iter().all(|b| other.distance(b) <= tol.match_abs)
    }

    /// Mutual containment within tolerance.
    pub fn equal(&self, other: &OperatorSubspace, tol: Tolerance) -> bool {
        self.leq(other, tol) && other.leq(self, tol)
    }

    /// Largest distance from a basis element of `self` to `other`, maximized
    /// in both directions; a symmetric closeness measure for reports.
    pub fn mutual_residual(&self, other: &OperatorSubspace) -> f64 {
        let a = self.basis.iter().map(|b| other.distance(b)).fold(0.0, f64::max);
        let b = other.basis.iter().map(|b| self.distance(b)).fold(0.0, f64::max);
        a.max(b)
    }

    /// Elementwise adjoint of the basis; trace-orthonormality is preserved.
    pub fn adjoint_space(&self) -> OperatorSubspace {
        OperatorSubspace {
            rows: self.cols,
            cols: self.rows,
            basis: self.basis.iter().map(|b| b.adjoint()).collect(),
        }
    }

    /// Maps every basis element through its `k`-fold ampliation and
    /// re-orthonormalizes; the dimension is preserved.
    pub fn ampliate(&self, k: usize, tol: Tolerance) -> Result<OperatorSubspace> {
        if k == 0 {
            return Err(Error::ZeroMultiple);
        }
        let mapped: Vec<CMatrix> = self
            .basis
            .iter()
            .map(|b| b.ampliate(k))
            .collect::<Result<_>>()?;
        OperatorSubspace::span_with_shape(self.rows * k, self.cols * k, &mapped, tol)
    }

    /// Span of the union.
    pub fn union_span(&self, other: &OperatorSubspace, tol: Tolerance) -> Result<OperatorSubspace> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("union of differently shaped spans".into()));
        }
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        OperatorSubspace::span_with_shape(self.rows, self.cols, &all, tol)
    }

    /// Orthonormal basis of the orthogonal complement of `self` inside
    /// `larger`, assuming `self` is contained in `larger`.  Dimensions obey
    /// `self.dim() + result.dim() == larger.dim()` whenever the containment
    /// holds numerically.
    pub fn complement_within(
        &self,
        larger: &OperatorSubspace,
        tol: Tolerance,
    ) -> Result<OperatorSubspace> {
        if (self.rows, self.cols) != (larger.rows, larger.cols) {
            return Err(Error::ShapeMismatch("complement of differently shaped spans".into()));
        }
        let residuals: Vec<CMatrix> = larger
            .basis
            .iter()
            .map(|b| b.sub(&self.project(b)))
            .collect();
        OperatorSubspace::span_with_shape(self.rows, self.cols, &residuals, tol)
    }

    /// Stacks the vectorized basis into a `(rows*cols) x dim` matrix.
    pub fn stacked_vecs(&self) -> CMatrix {
        if self.basis.is_empty() {
            return CMatrix::zeros(self.rows * self.cols, 0);
        }
        let vecs: Vec<CMatrix> = self.basis.iter().map(|b| b.vectorize()).collect();
        CMatrix::hcat(&vecs.iter().collect::<Vec<_>>()).expect("uniform heights")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_collapses_near_duplicates() {
        // I and I + 1e-15 E12 span a single direction at the default policy.
        let tol = Tolerance::default();
        let i2 = CMatrix::identity(2);
        let mut nudged = i2.clone();
        nudged.set(0, 1, num_complex::Complex64::new(1e-15, 0.0));
        let s = OperatorSubspace::span_of(&[i2, nudged], tol).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn span_shape_mismatch_is_rejected() {
        let tol = Tolerance::default();
        let a = CMatrix::identity(2);
        let b = CMatrix::zeros(3, 3);
        assert!(matches!(
            OperatorSubspace::span_of(&[a, b], tol),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn projection_and_complement_dimensions() {
        let tol = Tolerance::default();
        let units: Vec<CMatrix> = (0..2)
            .flat_map(|i| (0..2).map(move |j| CMatrix::unit(2, 2, i, j)))
            .collect();
        let full = OperatorSubspace::span_of(&units, tol).unwrap();
        let diag = OperatorSubspace::span_of(&[units[0].clone(), units[3].clone()], tol).unwrap();
        assert_eq!(full.dim(), 4);
        assert_eq!(diag.dim(), 2);
        let comp = diag.complement_within(&full, tol).unwrap();
        assert_eq!(comp.dim(), 2);
        assert!(diag.leq(&full, tol));
        assert!(!full.leq(&diag, tol));
        // The complement is orthogonal to the original space.
        for c in comp.basis() {
            assert!(diag.distance(c) > 0.99);
        }
    }

    #[test]
    fn ampliation_preserves_dimension() {
        let tol = Tolerance::default();
        let s = OperatorSubspace::span_of(
            &[CMatrix::identity(2), CMatrix::unit(2, 2, 0, 1)],
            tol,
        )
        .unwrap();
        let amp = s.ampliate(3, tol).unwrap();
        assert_eq!(amp.dim(), s.dim());
        assert_eq!(amp.shape(), (6, 6));
    }

    #[test]
    fn adjoint_space_stays_orthonormal() {
        let tol = Tolerance::default();
        let s = OperatorSubspace::span_of(
            &[CMatrix::unit(2, 3, 0, 1), CMatrix::unit(2, 3, 1, 2)],
            tol,
        )
        .unwrap();
        let adj = s.adjoint_space();
        assert_eq!(adj.shape(), (3, 2));
        assert_eq!(adj.dim(), 2);
        for (i, a) in adj.basis().iter().enumerate() {
            for (j, b) in adj.basis().iter().enumerate() {
                let g = a.inner(b).norm();
                if i == j {
                    assert!((g - 1.0).abs() < 1e-12);
                } else {
                    assert!(g < 1e-12);
                }
            }
        }
    }
}
