//! Subspaces of C^n carried as orthonormal column bases.


use super::backend;
use super::cmatrix::CMatrix;
use super::Tolerance;
use crate::error::{Error, Result};

/// A subspace of C^n, stored as a matrix whose columns form an orthonormal
/// basis.  The zero subspace has a basis matrix with zero columns.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: CMatrix,
}

impl Subspace {
    /// Orthonormalizes the given spanning vectors (each `n x 1`).  Vectors that
    /// are numerically dependent are dropped under the rank policy.
    pub fn from_spanning(vectors: &[CMatrix], ambient_dim: usize, tol: Tolerance) -> Result<Self> {
        for v in vectors {
            if v.shape() != (ambient_dim, 1) {
                return Err(Error::ShapeMismatch(format!(
                    "expected {ambient_dim}x1 spanning vectors, got {}x{}",
                    v.rows(),
                    v.cols()
                )));
            }
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient_dim));
        }
        let stacked = CMatrix::hcat(&vectors.iter().collect::<Vec<_>>())?;
        Ok(Subspace::column_space(&stacked, tol))
    }

    /// Column space of a matrix.
    pub fn column_space(m: &CMatrix, tol: Tolerance) -> Self {
        let cols = backend::column_space_basis(m, tol);
        let basis = if cols.is_empty() {
            CMatrix::zeros(m.rows(), 0)
        } else {
            CMatrix::hcat(&cols.iter().collect::<Vec<_>>()).expect("uniform column heights")
        };
        Subspace { ambient_dim: m.rows(), basis }
    }


    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: CMatrix::zeros(ambient_dim, 0) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: CMatrix::identity(ambient_dim) }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Orthonormal basis, one column per basis vector.
    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<CMatrix> {
        (0..self.dim()).map(|j| self.basis.block(0, j, self.ambient_dim, 1)).collect()
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &CMatrix) -> CMatrix {
        assert_eq!(v.shape(), (self.ambient_dim, 1), "projection shape mismatch");
        if self.dim() == 0 {
            return CMatrix::zeros(self.ambient_dim, 1);
        }
        self.basis.matmul(&self.basis.adjoint().matmul(v))
    }

    /// Distance from `v` to the subspace.
    pub fn distance(&self, v: &CMatrix) -> f64 {
        v.sub(&self.project(v)).norm()
    }

    /// Membership within tolerance; the absolute threshold is scaled up for
    /// vectors of norm above one so that large inputs are not misjudged.
    pub fn contains(&self, v: &CMatrix, tol: Tolerance) -> bool {
        self.distance(v) <= tol.match_abs * v.norm().max(1.0)
    }

    /// True when every basis vector of `self` is within `match_abs` of its
    /// projection onto `other`.
    pub fn leq(&self, other: &Subspace, tol: Tolerance) -> bool {
        if self.ambient_dim != other.ambient_dim {
            return false;
        }
        self.basis_vectors().iter().all(|v| other.distance(v) <= tol.match_abs)
    }

    pub fn equal(&self, other: &Subspace, tol: Tolerance) -> bool {
        self.leq(other, tol) && other.leq(self, tol)
    }

    /// Orthogonal complement within the ambient space.
    pub fn orthocomplement(&self, tol: Tolerance) -> Subspace {
        let (_, null) = backend::rank_nullspace(&self.basis.adjoint(), tol);
        let basis = if null.is_empty() {
            CMatrix::zeros(self.ambient_dim, 0)
        } else {
            CMatrix::hcat(&null.iter().collect::<Vec<_>>()).expect("uniform heights")
        };
        Subspace { ambient_dim: self.ambient_dim, basis }
    }

    /// Span of the union of the two subspaces.
    pub fn sum(&self, other: &Subspace, tol: Tolerance) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::ShapeMismatch("subspace sum ambient mismatch".into()));
        }
        let stacked = CMatrix::hcat(&[&self.basis, &other.basis])?;
        Ok(Subspace::column_space(&stacked, tol))
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spanning_drops_dependent_directions() {
        let tol = Tolerance::default();
        let v1 = CMatrix::real_column(&[1.0, 0.0, 0.0]);
        let v2 = CMatrix::real_column(&[2.0, 0.0, 0.0]);
        let v3 = CMatrix::real_column(&[0.0, 3.0, 0.0]);
        let s = Subspace::from_spanning(&[v1, v2, v3], 3, tol).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn complement_and_containment() {
        let tol = Tolerance::default();
        let s = Subspace::from_spanning(&[CMatrix::real_column(&[1.0, 1.0])], 2, tol).unwrap();
        let c = s.orthocomplement(tol);
        assert_eq!(c.dim(), 1);
        let v = CMatrix::real_column(&[1.0, -1.0]);
        assert!(c.contains(&v, tol));
        assert!(!s.contains(&v, tol));
        assert!(s.sum(&c, tol).unwrap().equal(&Subspace::full(2), tol));
    }

    #[test]
    fn leq_is_a_partial_order_on_exact_inputs() {
        let tol = Tolerance::default();
        let e1 = Subspace::from_spanning(&[CMatrix::real_column(&[1.0, 0.0])], 2, tol).unwrap();
        let full = Subspace::full(2);
        assert!(e1.leq(&full, tol));
        assert!(!full.leq(&e1, tol));
        assert!(e1.equal(&e1, tol));
    }
}
