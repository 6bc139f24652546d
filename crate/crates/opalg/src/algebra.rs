//! Span-closed algebras of complex matrices.
//!
//! A [`MatrixAlgebra`] is a linear subspace of `M_n(C)` that is closed under
//! multiplication, stored as a trace-orthonormal basis together with the
//! structure constants of that basis.  Algebras are built from generating
//! sets ([`MatrixAlgebra::generate`]), optionally with adjoints adjoined
//! ([`MatrixAlgebra::star_closure`]), and may or may not contain a
//! (two-sided) identity element of their own — which need not be the ambient
//! identity matrix.  The identity element, when present, plays the role that
//! a contractive approximate identity plays for infinite-dimensional
//! operator algebras.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, OperatorSubspace, Tolerance};

/// Multiplicative closure of a space of square matrices.
///
/// Repeatedly adjoins pairwise products of basis elements and re-spans until
/// the dimension stabilizes.  The dimension strictly increases every round
/// until closure, so `n² + 1` rounds can never be exhausted; running past the
/// cap indicates numerical drift and is reported as an error.
pub(crate) fn close_under_products(
    space: &OperatorSubspace,
    tol: Tolerance,
) -> Result<OperatorSubspace> {
    let n = space.rows();
    if space.rows() != space.cols() {
        return Err(Error::NotSquare {
            rows: space.rows(),
            cols: space.cols(),
        });
    }
    let mut current = space.clone();
    let max_rounds = n * n + 1;
    for _ in 0..max_rounds {
        if current.dim() == 0 {
            return Ok(current);
        }
        let mut candidates: Vec<CMatrix> = current.basis().to_vec();
        for a in current.basis() {
            for b in current.basis() {
                candidates.push(a.matmul(b));
            }
        }
        let next = OperatorSubspace::span_with_shape(n, n, &candidates, tol)?;
        if next.dim() == current.dim() {
            return Ok(next);
        }
        current = next;
    }
    Err(Error::ClosureDiverged(max_rounds))
}

/// A multiplicatively closed subspace of `M_n(C)` with a trace-orthonormal
/// basis and cached structure constants.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    ambient_dim: usize,
    basis: OperatorSubspace,
    /// `structure[i][j]` holds the coordinates of `basis[i] * basis[j]` in
    /// the basis, so products never need to be re-derived downstream.
    structure: Vec<Vec<Vec<Complex64>>>,
    identity: Option<CMatrix>,
}

impl MatrixAlgebra {
    /// The smallest multiplicatively closed subspace containing `generators`.
    ///
    /// The generators must be square and of a common size.  The result does
    /// not automatically contain the ambient identity; use
    /// [`MatrixAlgebra::generate_unital`] for that.
    pub fn generate(generators: &[CMatrix], tol: Tolerance) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyInput("algebra generators"));
        }
        let n = generators[0].rows();
        for g in generators {
            if g.rows() != g.cols() {
                return Err(Error::NotSquare {
                    rows: g.rows(),
                    cols: g.cols(),
                });
            }
            if g.rows() != n {
                return Err(Error::ShapeMismatch(format!(
                    "generators act on different spaces: {}x{} vs {}x{}",
                    n,
                    n,
                    g.rows(),
                    g.cols()
                )));
            }
        }
        let seed_span = OperatorSubspace::span_with_shape(n, n, generators, tol)?;
        let closed = close_under_products(&seed_span, tol)?;
        Self::from_closed_span(closed, tol)
    }

    /// Like [`MatrixAlgebra::generate`] but with the ambient identity matrix
    /// adjoined to the generating set.
    pub fn generate_unital(generators: &[CMatrix], tol: Tolerance) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyInput("algebra generators"));
        }
        let n = generators[0].rows();
        let mut gens = generators.to_vec();
        gens.push(CMatrix::identity(n));
        Self::generate(&gens, tol)
    }

    /// The smallest adjoint-closed algebra containing `generators`.
    ///
    /// Adjoining the adjoints of the generators up front suffices: products
    /// of a *-closed spanning set span a *-closed algebra.
    pub fn star_closure(generators: &[CMatrix], tol: Tolerance) -> Result<Self> {
        let mut gens = generators.to_vec();
        for g in generators {
            gens.push(g.adjoint());
        }
        Self::generate(&gens, tol)
    }

    /// Wraps an already multiplicatively closed orthonormal basis.
    ///
    /// Closure is re-verified: every pairwise product must lie in the span
    /// within tolerance.  Used by closed-form constructions whose bases are
    /// known in advance.
    pub fn from_orthonormal_basis(basis: OperatorSubspace, tol: Tolerance) -> Result<Self> {
        if basis.rows() != basis.cols() {
            return Err(Error::NotSquare {
                rows: basis.rows(),
                cols: basis.cols(),
            });
        }
        Self::from_closed_span(basis, tol)
    }

    fn from_closed_span(basis: OperatorSubspace, tol: Tolerance) -> Result<Self> {
        let ambient_dim = basis.rows();
        let d = basis.dim();
        let mut structure = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let product = basis.basis()[i].matmul(&basis.basis()[j]);
                let (coords, residual) = coordinates_in(&basis, &product);
                if residual > tol.match_abs * product.norm().max(1.0) {
                    return Err(Error::Verification(format!(
                        "basis is not closed under multiplication: \
                         product of basis elements {i} and {j} leaves the span \
                         (residual {residual:.3e})"
                    )));
                }
                structure[i][j] = coords;
            }
        }
        let mut algebra = MatrixAlgebra {
            ambient_dim,
            basis,
            structure,
            identity: None,
        };
        algebra.identity = algebra.solve_identity(tol);
        Ok(algebra)
    }

    /// Dimension of the algebra as a linear space.
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Size `n` of the ambient matrix space `M_n(C)`.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The trace-orthonormal basis.
    pub fn basis(&self) -> &OperatorSubspace {
        &self.basis
    }

    /// Basis elements as matrices.
    pub fn basis_mats(&self) -> &[CMatrix] {
        self.basis.basis()
    }

    /// The identity element of the algebra, if one exists.  This is the
    /// algebra's own two-sided unit, which may differ from the ambient
    /// identity matrix (e.g. `E₁₁` for the algebra `C·E₁₁` inside `M₂`).
    pub fn identity(&self) -> Option<&CMatrix> {
        self.identity.as_ref()
    }

    /// Whether the algebra has an identity element.
    pub fn is_unital(&self) -> bool {
        self.identity.is_some()
    }

    /// Structure constants: `structure()[i][j][k]` is the coefficient of
    /// basis element `k` in the product of basis elements `i` and `j`.
    pub fn structure(&self) -> &[Vec<Vec<Complex64>>] {
        &self.structure
    }

    /// Coordinates of `m` in the orthonormal basis, together with the norm of
    /// the component of `m` outside the algebra.
    pub fn coordinates_of(&self, m: &CMatrix) -> Result<(Vec<Complex64>, f64)> {
        if m.rows() != self.ambient_dim || m.cols() != self.ambient_dim {
            return Err(Error::ShapeMismatch(format!(
                "expected a {0}x{0} matrix, got {1}x{2}",
                self.ambient_dim,
                m.rows(),
                m.cols()
            )));
        }
        Ok(coordinates_in(&self.basis, m))
    }

    /// Whether `m` lies in the algebra within tolerance.
    pub fn contains(&self, m: &CMatrix, tol: Tolerance) -> bool {
        self.basis.contains(m, tol)
    }

    /// Whether two algebras are the same subspace of the same ambient space.
    pub fn same_as(&self, other: &Self, tol: Tolerance) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.equal(&other.basis, tol)
    }

    /// Reconstructs the product of two algebra elements from coordinates via
    /// the structure constants.
    pub fn multiply_coords(&self, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        let mut out = vec![Complex64::ZERO; d];
        for i in 0..d {
            if a[i] == Complex64::ZERO {
                continue;
            }
            for j in 0..d {
                let factor = a[i] * b[j];
                if factor == Complex64::ZERO {
                    continue;
                }
                for k in 0..d {
                    out[k] += factor * self.structure[i][j][k];
                }
            }
        }
        out
    }

    /// Solves for a two-sided unit `e = Σ cⱼ bⱼ` with `e·bᵢ = bᵢ·e = bᵢ` for
    /// every basis element, via least squares on the stacked constraints.
    fn solve_identity(&self, tol: Tolerance) -> Option<CMatrix> {
        let d = self.dim();
        if d == 0 {
            return None;
        }
        let m2 = self.ambient_dim * self.ambient_dim;
        // Columns indexed by j: stack vec(bⱼbᵢ) and vec(bᵢbⱼ) over all i.
        let mut system = CMatrix::zeros(2 * d * m2, d);
        let mut rhs = CMatrix::zeros(2 * d * m2, 1);
        for i in 0..d {
            let bi = &self.basis.basis()[i];
            let vi = bi.vectorize();
            for r in 0..m2 {
                rhs.set(i * m2 + r, 0, vi.at(r, 0));
                rhs.set((d + i) * m2 + r, 0, vi.at(r, 0));
            }
            for j in 0..d {
                let left = self.basis.basis()[j].matmul(bi).vectorize();
                let right = bi.matmul(&self.basis.basis()[j]).vectorize();
                for r in 0..m2 {
                    system.set(i * m2 + r, j, left.at(r, 0));
                    system.set((d + i) * m2 + r, j, right.at(r, 0));
                }
            }
        }
        let (coords, _residual) = crate::linalg::backend::least_squares(&system, &rhs, tol);
        let mut e = CMatrix::zeros(self.ambient_dim, self.ambient_dim);
        for j in 0..d {
            e = e.add(&self.basis.basis()[j].scaled(coords.at(j, 0)));
        }
        // Verify the candidate directly on the basis: the least-squares
        // residual alone is unreliable when the system matrix is pure
        // floating-point noise (a nilpotent algebra yields an all-noise
        // system whose "solution" blows up).
        if !e.entries().iter().all(|z| z.norm() <= 2.0 * d as f64) {
            return None;
        }
        for bi in self.basis.basis() {
            if e.matmul(bi).sub(bi).norm() > tol.match_abs
                || bi.matmul(&e).sub(bi).norm() > tol.match_abs
            {
                return None;
            }
        }
        Some(e)
    }
}

/// Coordinates of `m` in an orthonormal operator basis plus the residual norm
/// of the component outside the span.
fn coordinates_in(basis: &OperatorSubspace, m: &CMatrix) -> (Vec<Complex64>, f64) {
    let coords: Vec<Complex64> = basis.basis().iter().map(|b| m.inner(b)).collect();
    let mut projected = CMatrix::zeros(m.rows(), m.cols());
    for (c, b) in coords.iter().zip(basis.basis()) {
        projected = projected.add(&b.scaled(*c));
    }
    let residual = m.sub(&projected).norm();
    (coords, residual)
}
