//! Numerical kernel: every rank decision in the crate funnels through here.
//!
//! The policy is uniform: a singular value counts toward the rank exactly when
//! it exceeds `max(rank_rel * sigma_max, noise_floor)`.  The absolute floor
//! matters for matrices that consist of nothing but rounding noise — e.g. the
//! commutation constraints of a set against its own span, which are exact
//! zeros in theory but carry ~1e-16 dust in practice; a purely relative
//! threshold would declare such a matrix full-rank.  The crate works with
//! unit-scaled data throughout (orthonormal bases, contractions, unit
//! vectors), so singular values at the floor are rounding artifacts by
//! construction.  A matrix that is identically zero has rank 0.  Orthonormal
//! bases come straight out of the singular vectors, so every subspace the
//! crate hands around is orthonormal by construction.
//!
//! Internally this delegates the factorization itself to `nalgebra`; nothing
//! outside this file touches that dependency.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::cmatrix::CMatrix;
use super::Tolerance;

/// Absolute scale below which a singular value of unit-scaled data is
/// indistinguishable from accumulated rounding error.
pub(crate) fn noise_floor(rows: usize, cols: usize) -> f64 {
    8.0 * f64::EPSILON * rows.max(cols).max(1) as f64
}

/// The crate-wide rank cutoff for a matrix with the given extreme singular
/// value and shape.
fn rank_threshold(sigma_max: f64, rows: usize, cols: usize, tol: Tolerance) -> f64 {
    (tol.rank_rel * sigma_max).max(noise_floor(rows, cols))
}

fn to_dmatrix(m: &CMatrix) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.entries())
}

fn from_dmatrix(d: &DMatrix<Complex64>) -> CMatrix {
    CMatrix::from_fn(d.nrows(), d.ncols(), |i, j| d[(i, j)])
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    let svd = to_dmatrix(m).svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Operator (spectral) norm; zero for empty shapes.
pub fn op_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Numerical rank under the crate-wide threshold policy.
pub fn rank(m: &CMatrix, tol: Tolerance) -> usize {
    let sv = singular_values(m);
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    if sigma_max == 0.0 {
        return 0;
    }
    let threshold = rank_threshold(sigma_max, m.rows(), m.cols(), tol);
    sv.iter().filter(|&&s| s > threshold).count()
}

/// Subtracts from `v` its components along the orthonormal `basis`, twice.
/// The second pass mops up the cancellation error of the first, so the
/// result is orthogonal to the basis to machine precision.
fn orthogonalize_against(v: &mut CMatrix, basis: &[CMatrix]) {
    for _ in 0..2 {
        for b in basis {
            let c = v.inner(b);
            *v = v.sub(&b.scaled(c));
        }
    }
}

/// Greedy pivoted modified Gram-Schmidt: extends `accepted` (orthonormal) by
/// `steps` unit vectors drawn from `pool`, always taking the candidate with
/// the largest remaining residual.  Every output vector is an exact linear
/// combination of pool vectors, and the pivoting keeps the combination
/// well conditioned.
fn pivoted_extension(
    accepted: &mut Vec<CMatrix>,
    mut pool: Vec<CMatrix>,
    steps: usize,
) -> Vec<CMatrix> {
    for v in pool.iter_mut() {
        orthogonalize_against(v, accepted);
    }
    let mut added = Vec::with_capacity(steps);
    for _ in 0..steps {
        let Some((best, _)) = pool
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.norm()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        else {
            break;
        };
        let mut v = pool.swap_remove(best);
        orthogonalize_against(&mut v, accepted);
        let norm = v.norm();
        if norm == 0.0 {
            break;
        }
        let v = v.scaled(Complex64::new(1.0 / norm, 0.0));
        for w in pool.iter_mut() {
            let c = w.inner(&v);
            *w = w.sub(&v.scaled(c));
        }
        added.push(v.clone());
        accepted.push(v);
    }
    added
}

/// Rank together with an orthonormal basis of the nullspace.
///
/// The rank comes from the singular values; the basis is the orthonormal
/// complement of the row space inside coordinate space, built by pivoted
/// Gram-Schmidt.  (The factorization's singular *vectors* are not used: on
/// nearly dependent stacks they can acquire components far outside the true
/// space, while the values themselves stay accurate.)  The invariant
/// `rank + basis.len() == cols` always holds.
pub fn rank_nullspace(m: &CMatrix, tol: Tolerance) -> (usize, Vec<CMatrix>) {
    let cols = m.cols();
    if cols == 0 {
        return (0, Vec::new());
    }
    if m.rows() == 0 || m.norm() == 0.0 {
        let basis = (0..cols).map(|j| CMatrix::unit(cols, 1, j, 0)).collect();
        return (0, basis);
    }
    let mut accepted = column_space_basis(&m.adjoint(), tol);
    let rank = accepted.len();
    let coords: Vec<CMatrix> = (0..cols).map(|j| CMatrix::unit(cols, 1, j, 0)).collect();
    let null = pivoted_extension(&mut accepted, coords, cols - rank);
    debug_assert_eq!(rank + null.len(), cols);
    (rank, null)
}

/// Orthonormal basis of the column space, as `rows x 1` columns.
///
/// The rank comes from the singular values; the basis itself is built by
/// pivoted Gram-Schmidt on the actual columns, so each basis vector is an
/// exact linear combination of inputs and cannot pick up components outside
/// the column space.
pub fn column_space_basis(m: &CMatrix, tol: Tolerance) -> Vec<CMatrix> {
    if m.rows() == 0 || m.cols() == 0 || m.norm() == 0.0 {
        return Vec::new();
    }
    let r = rank(m, tol);
    let columns: Vec<CMatrix> = (0..m.cols()).map(|j| m.block(0, j, m.rows(), 1)).collect();
    let mut accepted = Vec::with_capacity(r);
    pivoted_extension(&mut accepted, columns, r)
}

/// Minimum-norm least-squares solution of `A x = b` via the pseudoinverse,
/// with singular values below the rank threshold treated as zero.
/// Returns the solution together with the residual norm `|A x - b|`.
pub fn least_squares(a: &CMatrix, b: &CMatrix, tol: Tolerance) -> (CMatrix, f64) {
    assert_eq!(a.rows(), b.rows(), "least squares shape mismatch");
    if a.cols() == 0 {
        return (CMatrix::zeros(0, b.cols()), b.norm());
    }
    if a.rows() == 0 {
        return (CMatrix::zeros(a.cols(), b.cols()), 0.0);
    }
    let svd = to_dmatrix(a).svd(true, true);
    let u = svd.u.expect("u");
    let v_t = svd.v_t.expect("v_t");
    let sv = &svd.singular_values;
    let sigma_max = sv.iter().copied().fold(0.0, f64::max);
    let threshold = rank_threshold(sigma_max, a.rows(), a.cols(), tol);
    // x = V Σ⁺ U^H b
    let bd = to_dmatrix(b);
    let utb = u.adjoint() * &bd;
    let mut scaled = utb;
    for (i, &s) in sv.iter().enumerate() {
        let factor = if sigma_max > 0.0 && s > threshold { 1.0 / s } else { 0.0 };
        for j in 0..scaled.ncols() {
            scaled[(i, j)] *= Complex64::new(factor, 0.0);
        }
    }
    let x = v_t.adjoint() * scaled;
    let x = from_dmatrix(&x);
    let residual = a.matmul(&x).sub(b).norm();
    (x, residual)
}

/// Unitary Q factor of a QR decomposition; used to draw random unitaries.
pub fn qr_q(m: &CMatrix) -> CMatrix {
    let qr = to_dmatrix(m).qr();
    from_dmatrix(&qr.q())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_graded_diagonal() {
        // Singular values 1 and 1e-15: the second sits far below the relative
        // threshold 1e-9 * 1, so the rank is 1 and the nullspace is span e2.
        let m = CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 1e-15]]).unwrap();
        let tol = Tolerance::default();
        let (r, null) = rank_nullspace(&m, tol);
        assert_eq!(r, 1);
        assert_eq!(null.len(), 1);
        assert!((null[0].at(1, 0).norm() - 1.0).abs() < 1e-12);
        assert!(null[0].at(0, 0).norm() < 1e-12);
    }

    #[test]
    fn nullspace_of_wide_matrix_is_complete() {
        // A 1x3 row has a 2-dimensional kernel; the thin SVD alone would not
        // produce enough right singular vectors without padding.
        let m = CMatrix::from_real_rows(&[vec![1.0, 2.0, 3.0]]).unwrap();
        let tol = Tolerance::default();
        let (r, null) = rank_nullspace(&m, tol);
        assert_eq!(r, 1);
        assert_eq!(null.len(), 2);
        for v in &null {
            assert!(m.matmul(v).norm() < 1e-12);
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
        // Orthogonality of the pair.
        assert!(null[0].inner(&null[1]).norm() < 1e-12);
    }

    #[test]
    fn zero_and_empty_matrices() {
        let tol = Tolerance::default();
        let z = CMatrix::zeros(3, 2);
        let (r, null) = rank_nullspace(&z, tol);
        assert_eq!(r, 0);
        assert_eq!(null.len(), 2);
        assert_eq!(rank(&CMatrix::zeros(0, 4), tol), 0);
        assert!(column_space_basis(&z, tol).is_empty());
        assert_eq!(op_norm(&CMatrix::zeros(0, 0)), 0.0);
    }

    #[test]
    fn column_basis_stays_inside_the_column_span() {
        // Regression: stacks spanned by products drawn from a conjugated
        // projection once came back with basis vectors carrying ~1e-3 of
        // mass outside the true column space (inaccurate singular vectors).
        // The pivoted construction keeps every basis vector an exact
        // combination of input columns.
        use super::super::random;
        use rand::{Rng, SeedableRng};
        let tol = Tolerance::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..150 {
            let n = rng.random_range(2..=4);
            let u = random::unitary(n, &mut rng);
            let r = rng.random_range(1..n);
            let p = CMatrix::from_fn(n, n, |a, b| {
                if a == b && a < r {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            let p = u.matmul(&p).matmul(&u.adjoint());
            let seeds = [CMatrix::identity(n), p];
            let vecs: Vec<CMatrix> = seeds.iter().map(|m| m.vectorize()).collect();
            let stack = CMatrix::hcat(&vecs.iter().collect::<Vec<_>>()).unwrap();
            let first = column_space_basis(&stack, tol);
            assert_eq!(first.len(), 2);
            // One closure round: the orthonormalized elements and their
            // pairwise products, all inside span{I, P}.
            let mats: Vec<CMatrix> = first
                .iter()
                .map(|v| CMatrix::from_vectorized(v, n, n).unwrap())
                .collect();
            let mut cands = mats.clone();
            for a in &mats {
                for b in &mats {
                    cands.push(a.matmul(b));
                }
            }
            let cand_vecs: Vec<CMatrix> = cands.iter().map(|m| m.vectorize()).collect();
            let cand_stack = CMatrix::hcat(&cand_vecs.iter().collect::<Vec<_>>()).unwrap();
            let basis = column_space_basis(&cand_stack, tol);
            assert_eq!(basis.len(), 2);
            for v in &basis {
                let (_, residual) = least_squares(&stack, v, tol);
                assert!(
                    residual < 1e-10,
                    "basis vector left the true span by {residual:.3e}"
                );
            }
        }
    }

    #[test]
    fn least_squares_solves_consistent_systems() {
        let a = CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 2.0], vec![1.0, 1.0]]).unwrap();
        let x_true = CMatrix::real_column(&[3.0, -1.0]);
        let b = a.matmul(&x_true);
        let (x, res) = least_squares(&a, &b, Tolerance::default());
        assert!(res < 1e-12);
        assert!(x.approx_eq(&x_true, 1e-10));
    }

    #[test]
    fn least_squares_reports_inconsistency() {
        // x * (E12 E12) = E12 has no solution since E12 is nilpotent.
        let a = CMatrix::zeros(4, 1); // vec(E12 * E12) = 0
        let b = CMatrix::unit(2, 2, 0, 1).vectorize();
        let (_, res) = least_squares(&a, &b, Tolerance::default());
        assert!((res - 1.0).abs() < 1e-12);
    }
}
