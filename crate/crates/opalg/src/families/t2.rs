//! Modules over the 2×2 upper-triangular algebra.
//!
//! The reference algebra is `T₂ = span{E₁₁, E₁₂, E₂₂} ⊆ M₂`.  Its
//! contractive two-block modules come in four kinds:
//!
//! * **(a)** `H₁ ⊕ H₂` with the action `[a₁₁ I, a₁₂ T; 0, a₂₂ I]` for a
//!   corner contraction `T : H₂ → H₁`;
//! * **(b)** a left block alone (`H₂ = 0`);
//! * **(c)** a right block alone (`H₁ = 0`);
//! * **(d)** the zero module.
//!
//! Every classification question about a kind-(a) module has a closed-form
//! answer in terms of `T` ([`t2_closed_form`]), which this crate uses as an
//! oracle against the generic engines.  The closed-form commutant
//! ([`t2_commutant_closed_form`]) self-tests against the kernel-based
//! commutant on every call, and the bicommutant of an invertible corner
//! carries a canonical excess witness ([`t2_bicommutant_excess`]): the
//! inverse corner transposed into the lower-left block.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::algebra::MatrixAlgebra;
use crate::classify::ModuleFamily;
use crate::commutant;
use crate::error::{Error, Result};
use crate::hilbmod::Representation;
use crate::linalg::{backend, random, CMatrix, OperatorSubspace, Tolerance};

use super::intertwining_pairs;

/// The four kinds of contractive two-block module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum T2Kind {
    A,
    B,
    C,
    D,
}

/// The reference algebra `T₂ ⊆ M₂`, with the matrix units `E₁₁, E₁₂, E₂₂`
/// as its exact orthonormal basis (in that order).
pub fn t2_algebra(tol: Tolerance) -> Result<Arc<MatrixAlgebra>> {
    let basis = vec![
        CMatrix::unit(2, 2, 0, 0),
        CMatrix::unit(2, 2, 0, 1),
        CMatrix::unit(2, 2, 1, 1),
    ];
    let space = OperatorSubspace::from_orthonormal(2, 2, basis);
    Ok(Arc::new(MatrixAlgebra::from_orthonormal_basis(space, tol)?))
}

/// Builds the kind-(a) module of a corner contraction `T : C^c → C^r`
/// (`r = t.rows()`, `c = t.cols()`); kinds (b) and (c) are the degenerate
/// shapes `r×0` and `0×c`, and (d) is `0×0`.
///
/// The corner must be a contraction: `‖T‖ ≤ 1` up to tolerance.
pub fn build_t2(
    algebra: &Arc<MatrixAlgebra>,
    t: &CMatrix,
    tol: Tolerance,
) -> Result<Representation> {
    let norm = backend::op_norm(t);
    if norm > 1.0 + tol.match_abs {
        return Err(Error::NotContractive { norm });
    }
    let (h1, h2) = t.shape();
    let n = h1 + h2;
    let images = algebra
        .basis_mats()
        .iter()
        .map(|b| {
            let mut m = CMatrix::zeros(n, n);
            for i in 0..h1 {
                m.set(i, i, b.at(0, 0));
            }
            for i in 0..h2 {
                m.set(h1 + i, h1 + i, b.at(1, 1));
            }
            for i in 0..h1 {
                for j in 0..h2 {
                    m.set(i, h1 + j, b.at(0, 1) * t.at(i, j));
                }
            }
            m
        })
        .collect();
    Representation::new(algebra.clone(), images, tol)
}

/// Builds a module of the stated kind: kind (a) reads the corner as given,
/// kind (b) keeps `dim` rows, kind (c) keeps `dim` columns, kind (d) is the
/// zero module.
pub fn build_t2_kind(
    algebra: &Arc<MatrixAlgebra>,
    kind: T2Kind,
    t: Option<&CMatrix>,
    dim: Option<usize>,
    tol: Tolerance,
) -> Result<Representation> {
    match kind {
        T2Kind::A => {
            let t = t.ok_or_else(|| {
                Error::InvalidInput("kind (a) needs a corner matrix".into())
            })?;
            build_t2(algebra, t, tol)
        }
        T2Kind::B => {
            let j = dim.ok_or_else(|| {
                Error::InvalidInput("kind (b) needs a block dimension".into())
            })?;
            build_t2(algebra, &CMatrix::zeros(j, 0), tol)
        }
        T2Kind::C => {
            let j = dim.ok_or_else(|| {
                Error::InvalidInput("kind (c) needs a block dimension".into())
            })?;
            build_t2(algebra, &CMatrix::zeros(0, j), tol)
        }
        T2Kind::D => build_t2(algebra, &CMatrix::zeros(0, 0), tol),
    }
}

/// Closed-form classification of a kind-(a) module by its corner.
///
/// With `dense` meaning `ran T = H₁` and `one_one` meaning `ker T = 0`:
/// the bicommutant collapses to the span exactly when `T` is not
/// invertible; semigenerator ⟺ not dense; semicogenerator ⟺ not one-one;
/// generator ⟺ not dense and `T ≠ 0`; cogenerator ⟺ not one-one and
/// `T ≠ 0`; sub-tracing ⟺ not dense.  The formulas are stated for corners
/// with both blocks nonzero, which is what the samplers produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct T2ClosedForm {
    pub dcp: bool,
    pub semigenerator: bool,
    pub semicogenerator: bool,
    pub generator: bool,
    pub cogenerator: bool,
    pub subtracing: bool,
}

/// Evaluates the closed-form classification of the corner `t`.
pub fn t2_closed_form(t: &CMatrix, tol: Tolerance) -> T2ClosedForm {
    let (h1, h2) = t.shape();
    let rank = backend::rank(t, tol);
    let dense = rank == h1;
    let one_one = rank == h2;
    let nonzero = t.norm() > tol.match_abs;
    let invertible = h1 == h2 && dense && one_one;
    T2ClosedForm {
        dcp: !invertible,
        semigenerator: !dense,
        semicogenerator: !one_one,
        generator: !dense && nonzero,
        cogenerator: !one_one && nonzero,
        subtracing: !dense,
    }
}

/// Closed-form commutant of a kind-(a) module: the block-diagonal pairs
/// `{diag(A, D) : A T = T D}`.  Self-tested on every call against the
/// kernel-based commutant of the image span; a mismatch is reported as a
/// failed self-test.
pub fn t2_commutant_closed_form(
    algebra: &Arc<MatrixAlgebra>,
    t: &CMatrix,
    tol: Tolerance,
) -> Result<OperatorSubspace> {
    let pairs = intertwining_pairs(&[t.clone()], tol)?;
    let rep = build_t2(algebra, t, tol)?;
    let engine = commutant::commutant(rep.images(), tol)?;
    if !pairs.equal(&engine, tol) {
        return Err(Error::Verification(format!(
            "two-block commutant closed form (dim {}) disagrees with the \
             kernel engine (dim {})",
            pairs.dim(),
            engine.dim()
        )));
    }
    Ok(pairs)
}

/// For an invertible corner `T`, the canonical element of the bicommutant
/// outside the image span: `T⁻¹` placed in the lower-left block.
///
/// The bicommutant of the span `{[aI, bT; 0, cI]}` is the four-dimensional
/// space `{[aI, bT; cT⁻¹, dI]}`, so this element exhibits the failure of
/// the double-commutant property for invertible corners.  The returned
/// matrix is verified to lie in the kernel-computed bicommutant and to be
/// orthogonal to the span (it lives entirely in the lower-left block).
pub fn t2_bicommutant_excess(
    algebra: &Arc<MatrixAlgebra>,
    t: &CMatrix,
    tol: Tolerance,
) -> Result<CMatrix> {
    let n = t.rows();
    if t.cols() != n || backend::rank(t, tol) < n {
        return Err(Error::InvalidInput(
            "the excess witness needs an invertible square corner".into(),
        ));
    }
    let (t_inv, residual) = backend::least_squares(t, &CMatrix::identity(n), tol);
    if residual > tol.match_abs {
        return Err(Error::InvalidInput(format!(
            "corner is too close to singular to invert (residual {residual:.3e})"
        )));
    }
    let mut z = CMatrix::zeros(2 * n, 2 * n);
    z.set_block(n, 0, &t_inv);

    let rep = build_t2(algebra, t, tol)?;
    let bic = commutant::bicommutant(rep.images(), tol)?;
    let dist = bic.distance(&z);
    if dist > tol.match_abs * z.norm().max(1.0) {
        return Err(Error::Verification(format!(
            "claimed excess element is {dist:.3e} away from the bicommutant"
        )));
    }
    Ok(z)
}

/// Draws a corner for the randomized criteria: invertible, rank-deficient,
/// rectangular full-rank, or zero, with both blocks of size at least 1 and
/// total dimension at most `max_total`.  Nonzero singular values are kept
/// in `[0.3, 1]` so that rank decisions sit far from the tolerance floor.
pub fn sample_corner<R: Rng>(rng: &mut R, max_total: usize, kind: usize) -> CMatrix {
    let max_total = max_total.max(2);
    match kind % 4 {
        0 => {
            let n = rng.random_range(1..=(max_total / 2));
            random::invertible_contraction(n, 0.3, rng)
        }
        1 => {
            let h1 = rng.random_range(1..max_total);
            let h2 = rng.random_range(1..=(max_total - h1));
            let max_rank = h1.min(h2).saturating_sub(1);
            random::contraction_with_rank(h1, h2, max_rank, rng)
        }
        2 => {
            let h1 = rng.random_range(1..max_total);
            let h2 = rng.random_range(1..=(max_total - h1));
            random::contraction_with_rank(h1, h2, h1.min(h2), rng)
        }
        _ => {
            let h1 = rng.random_range(1..max_total);
            let h2 = rng.random_range(1..=(max_total - h1));
            CMatrix::zeros(h1, h2)
        }
    }
}

/// The canonical five-member comparison family: three kind-(a) members of
/// different shapes — an invertible square corner, a tall injective corner,
/// and a wide surjective corner — plus a kind-(b) and a kind-(c) member.
///
/// These five bind the closed-form classification: the kind-(b) member
/// detects dense range, the kind-(c) member detects trivial kernel, the
/// injective member forces `Tr` to miss a block when `T = 0`, and the
/// surjective member does the dual for the cogenerator.  Relative
/// classification over this family therefore agrees with [`t2_closed_form`]
/// for every kind-(a) module.
pub fn canonical_family<R: Rng>(
    algebra: &Arc<MatrixAlgebra>,
    rng: &mut R,
    tol: Tolerance,
) -> Result<ModuleFamily> {
    let n = rng.random_range(1..=3);
    let invertible = random::invertible_contraction(n, 0.3, rng);
    let tall = random::contraction_with_rank(3, 2, 2, rng);
    let wide = random::contraction_with_rank(2, 3, 2, rng);
    let jb = rng.random_range(1..=2);
    let jc = rng.random_range(1..=2);
    ModuleFamily::from_members(
        "canonical-two-block",
        vec![
            ("invertible".into(), build_t2(algebra, &invertible, tol)?),
            ("tall-injective".into(), build_t2(algebra, &tall, tol)?),
            ("wide-surjective".into(), build_t2(algebra, &wide, tol)?),
            (
                "left-block".into(),
                build_t2(algebra, &CMatrix::zeros(jb, 0), tol)?,
            ),
            (
                "right-block".into(),
                build_t2(algebra, &CMatrix::zeros(0, jc), tol)?,
            ),
        ],
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn reference_algebra_has_exact_unit_basis() {
        let alg = t2_algebra(tol()).unwrap();
        assert_eq!(alg.dim(), 3);
        assert!(alg.is_unital());
        assert_eq!(alg.basis_mats()[0].at(0, 0).re, 1.0);
        assert_eq!(alg.basis_mats()[1].at(0, 1).re, 1.0);
        assert_eq!(alg.basis_mats()[2].at(1, 1).re, 1.0);
    }

    #[test]
    fn contraction_bound_is_enforced() {
        let alg = t2_algebra(tol()).unwrap();
        let two = CMatrix::identity(1).scaled(2.0.into());
        assert!(matches!(
            build_t2(&alg, &two, tol()),
            Err(Error::NotContractive { .. })
        ));
    }

    #[test]
    fn closed_form_on_the_unit_and_partial_corners() {
        let unit = CMatrix::identity(1);
        let cf = t2_closed_form(&unit, tol());
        assert!(!cf.dcp && !cf.semigenerator && !cf.semicogenerator);
        assert!(!cf.generator && !cf.cogenerator && !cf.subtracing);

        let mut partial = CMatrix::zeros(2, 1);
        partial.set(0, 0, num_complex::Complex64::ONE);
        let cf = t2_closed_form(&partial, tol());
        assert!(cf.dcp && cf.semigenerator && cf.generator && cf.subtracing);
        assert!(!cf.semicogenerator && !cf.cogenerator);

        let zero = CMatrix::zeros(2, 2);
        let cf = t2_closed_form(&zero, tol());
        assert!(cf.dcp && cf.semigenerator && cf.semicogenerator);
        assert!(!cf.generator && !cf.cogenerator);
    }

    #[test]
    fn commutant_closed_form_survives_its_self_test() {
        let alg = t2_algebra(tol()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for kind in 0..8 {
            let t = sample_corner(&mut rng, 5, kind);
            let pairs = t2_commutant_closed_form(&alg, &t, tol()).unwrap();
            assert!(pairs.dim() >= 1);
        }
    }

    #[test]
    fn excess_witness_for_an_invertible_corner() {
        let alg = t2_algebra(tol()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let t = random::invertible_contraction(2, 0.3, &mut rng);
        let z = t2_bicommutant_excess(&alg, &t, tol()).unwrap();
        // Entirely in the lower-left block, hence orthogonal to the span.
        let rep = build_t2(&alg, &t, tol()).unwrap();
        let span = rep.image_space(tol()).unwrap();
        assert!(span.distance(&z) > 0.1);
    }

    #[test]
    fn excess_witness_rejects_singular_corners() {
        let alg = t2_algebra(tol()).unwrap();
        let t = CMatrix::zeros(2, 2);
        assert!(t2_bicommutant_excess(&alg, &t, tol()).is_err());
    }

    #[test]
    fn relative_classification_matches_the_closed_form() {
        let alg = t2_algebra(tol()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for kind in 0..8 {
            let t = sample_corner(&mut rng, 5, kind);
            let family = canonical_family(&alg, &mut rng, tol()).unwrap();
            let rep = build_t2(&alg, &t, tol()).unwrap();
            let cf = t2_closed_form(&t, tol());
            assert_eq!(
                classify::is_semigenerator_rel(&rep, &family, tol()).unwrap(),
                cf.semigenerator,
                "semigenerator at kind {kind}"
            );
            assert_eq!(
                classify::is_semicogenerator_rel(&rep, &family, tol()).unwrap(),
                cf.semicogenerator,
                "semicogenerator at kind {kind}"
            );
            assert_eq!(
                classify::is_generator_rel(&rep, &family, tol()).unwrap(),
                cf.generator,
                "generator at kind {kind}"
            );
            assert_eq!(
                classify::is_cogenerator_rel(&rep, &family, tol()).unwrap(),
                cf.cogenerator,
                "cogenerator at kind {kind}"
            );
            let verdict = rep.dcp_verdict(tol()).unwrap();
            assert_eq!(verdict.holds, cf.dcp, "double commutant at kind {kind}");
        }
    }
}
