//! Structured families with closed-form answers.
//!
//! Two families of two-block modules admit hand-computable classifications
//! that double as oracles for the generic engines:
//!
//! * [`t2`] — modules over the 2×2 upper-triangular algebra, determined by a
//!   single corner contraction `T`;
//! * [`ux`] — modules over the one-row corner algebra `U(X)`, determined by a
//!   tuple of corner operators spanning the operator space `X`.
//!
//! This module also hosts the machinery the two share: the *intertwining
//! pair space* `{(A, D) : A T = T D for every corner T}`, which is exactly
//! the commutant of a two-block action, and the induced [`refl_closure`] of
//! an operator space.  [`search`] runs a randomized counterexample hunt over
//! both families against a target sign pattern.

pub mod search;
pub mod t2;
pub mod ux;

use crate::error::{Error, Result};
use crate::linalg::{backend, CMatrix, OperatorSubspace, Tolerance};

/// The intertwining pair space of a corner tuple: all pairs `(A, D)` with
/// `A Tᵢ = Tᵢ D` for every corner, returned as the space of block-diagonal
/// operators `diag(A, D)` on the sum of the two blocks.
///
/// For the two-block action `[λI, t; 0, μI]` built from the corners this is
/// precisely the commutant, which is how the closed-form commutants of the
/// structured families are produced.
pub fn intertwining_pairs(corners: &[CMatrix], tol: Tolerance) -> Result<OperatorSubspace> {
    let first = corners.first().ok_or(Error::EmptyInput("corner list"))?;
    let (r, c) = first.shape();
    for t in corners {
        if t.shape() != (r, c) {
            return Err(Error::ShapeMismatch(
                "corners must share one shape".into(),
            ));
        }
    }
    let n = r + c;
    if r == 0 || c == 0 {
        // No constraints: every pair qualifies; the block-diagonal matrix
        // units are already an orthonormal basis.
        let mut basis = Vec::new();
        for i in 0..r {
            for j in 0..r {
                basis.push(CMatrix::unit(n, n, i, j));
            }
        }
        for i in 0..c {
            for j in 0..c {
                basis.push(CMatrix::unit(n, n, r + i, r + j));
            }
        }
        return Ok(OperatorSubspace::from_orthonormal(n, n, basis));
    }

    // Unknown vector (vec A ; vec D) of length r² + c²; each corner imposes
    // vec(A t) − vec(t D) = (tᵀ ⊗ I_r) vec A − (I_c ⊗ t) vec D = 0.
    let id_r = CMatrix::identity(r);
    let id_c = CMatrix::identity(c);
    let mut blocks = Vec::with_capacity(corners.len());
    for t in corners {
        let left = t.transpose().kron(&id_r);
        let right = id_c.kron(t).scaled((-1.0).into());
        blocks.push(CMatrix::hcat(&[&left, &right])?);
    }
    let stacked = CMatrix::vcat(&blocks.iter().collect::<Vec<_>>())?;
    let (_, null) = backend::rank_nullspace(&stacked, tol);
    let mut basis = Vec::with_capacity(null.len());
    for v in &null {
        let a = CMatrix::from_vectorized(&v.block(0, 0, r * r, 1), r, r)?;
        let d = CMatrix::from_vectorized(&v.block(r * r, 0, c * c, 1), c, c)?;
        basis.push(CMatrix::direct_sum(&[&a, &d]));
    }
    // The nullspace basis is orthonormal in (vec A ; vec D) coordinates, and
    // the block-diagonal embedding preserves the inner product.
    Ok(OperatorSubspace::from_orthonormal(n, n, basis))
}

/// Splits a block-diagonal pair-space basis element into its `(A, D)`
/// blocks.
pub fn split_pair(pair: &CMatrix, r: usize) -> (CMatrix, CMatrix) {
    let n = pair.rows();
    (pair.block(0, 0, r, r), pair.block(r, r, n - r, n - r))
}

/// The reflexive closure of an operator space `S ⊆ B(C^c, C^r)`: all `S'`
/// satisfying `A S' = S' D` for every intertwining pair `(A, D)` of `S`.
///
/// This is a closure operator — extensive, monotone, and idempotent — and
/// equals the corner of the bicommutant of the associated two-block action.
pub fn refl_closure(space: &OperatorSubspace, tol: Tolerance) -> Result<OperatorSubspace> {
    let (r, c) = space.shape();
    if space.dim() == 0 {
        return Err(Error::EmptyInput("reflexive closure of the zero space"));
    }
    let pairs = intertwining_pairs(space.basis(), tol)?;
    if r == 0 || c == 0 {
        return Ok(space.clone());
    }
    // Constraint on vec S': (I_c ⊗ A − Dᵀ ⊗ I_r) vec S' = 0 per pair.
    let id_r = CMatrix::identity(r);
    let id_c = CMatrix::identity(c);
    let mut blocks = Vec::with_capacity(pairs.dim());
    for p in pairs.basis() {
        let (a, d) = split_pair(p, r);
        blocks.push(id_c.kron(&a).sub(&d.transpose().kron(&id_r)));
    }
    if blocks.is_empty() {
        // No constraints at all: the closure is everything.
        let mut basis = Vec::new();
        for i in 0..r {
            for j in 0..c {
                basis.push(CMatrix::unit(r, c, i, j));
            }
        }
        return Ok(OperatorSubspace::from_orthonormal(r, c, basis));
    }
    let stacked = CMatrix::vcat(&blocks.iter().collect::<Vec<_>>())?;
    let (_, null) = backend::rank_nullspace(&stacked, tol);
    let basis = null
        .iter()
        .map(|v| CMatrix::from_vectorized(v, r, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorSubspace::from_orthonormal(r, c, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn pair_space_of_a_rank_one_projection() {
        // Corners {E₁₁} in M₂: constraints a₂₁ = 0, d₁₂ = 0, a₁₁ = d₁₁,
        // leaving 5 of the 8 parameters free.
        let e11 = CMatrix::unit(2, 2, 0, 0);
        let pairs = intertwining_pairs(&[e11], tol()).unwrap();
        assert_eq!(pairs.dim(), 5);
    }

    #[test]
    fn pair_space_of_an_invertible_corner_has_square_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=3 {
            let t = random::invertible_contraction(n, 0.3, &mut rng);
            let pairs = intertwining_pairs(&[t], tol()).unwrap();
            // D = A conjugated by T: one free block.
            assert_eq!(pairs.dim(), n * n);
        }
    }

    #[test]
    fn refl_closure_fixes_the_rank_one_projection_line() {
        let e11 = CMatrix::unit(2, 2, 0, 0);
        let space =
            OperatorSubspace::span_with_shape(2, 2, &[e11.clone()], tol()).unwrap();
        let closed = refl_closure(&space, tol()).unwrap();
        assert_eq!(closed.dim(), 1);
        assert!(closed.contains(&e11, tol()));
    }

    #[test]
    fn refl_closure_of_scalars_and_of_everything() {
        let id = CMatrix::identity(2);
        let scalars = OperatorSubspace::span_with_shape(2, 2, &[id.clone()], tol()).unwrap();
        let closed = refl_closure(&scalars, tol()).unwrap();
        assert_eq!(closed.dim(), 1);
        assert!(closed.contains(&id, tol()));

        let units: Vec<CMatrix> = (0..2)
            .flat_map(|i| (0..2).map(move |j| CMatrix::unit(2, 2, i, j)))
            .collect();
        let full = OperatorSubspace::span_with_shape(2, 2, &units, tol()).unwrap();
        let closed = refl_closure(&full, tol()).unwrap();
        assert_eq!(closed.dim(), 4);
    }

    #[test]
    fn refl_closure_is_extensive_monotone_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random::ginibre(3, 2, &mut rng);
        let b = random::ginibre(3, 2, &mut rng);
        let small = OperatorSubspace::span_with_shape(3, 2, &[a.clone()], tol()).unwrap();
        let large =
            OperatorSubspace::span_with_shape(3, 2, &[a.clone(), b.clone()], tol()).unwrap();
        let cs = refl_closure(&small, tol()).unwrap();
        let cl = refl_closure(&large, tol()).unwrap();
        assert!(small.leq(&cs, tol()), "extensive");
        assert!(cs.leq(&cl, tol()), "monotone");
        let ccs = refl_closure(&cs, tol()).unwrap();
        assert!(cs.equal(&ccs, tol()), "idempotent");
    }

    #[test]
    fn rectangular_pair_space_matches_a_direct_count() {
        // T = (1, 0)ᵀ: A(1,0)ᵀ = (1,0)ᵀ d: a₁₁ = d, a₂₁ = 0; A's second
        // column free: dim = (a₁₂, a₂₂, d=a₁₁) → 3.
        let mut t = CMatrix::zeros(2, 1);
        t.set(0, 0, num_complex::Complex64::ONE);
        let pairs = intertwining_pairs(&[t], tol()).unwrap();
        assert_eq!(pairs.dim(), 3);
    }
}
