//! Commutants, bicommutants, and the double-commutant diagnostic.
//!
//! The commutant of a set `S ⊆ M_n(C)` is `S′ = {X : XA = AX for all A ∈ S}`,
//! computed here as the kernel of the stacked linear maps
//! `X ↦ XA − AX` in vectorized form (`vec(XA − AX) = (Aᵀ⊗I − I⊗A)·vec X`).
//! The bicommutant `S″ = (S′)′` always contains the linear span of `S`; a
//! representation has the *double-commutant property* when the two coincide.
//! This module also provides a randomized necessary test for membership in
//! `alg lat S` (the operators preserving every `S`-invariant subspace) and a
//! self-test suite for the standard commutant identities.


use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{random, CMatrix, OperatorSubspace, Subspace, Tolerance};

/// Orthonormal basis of the commutant of a set of square matrices.
///
/// The input is spanned first so the kernel solve runs against an orthonormal
/// basis regardless of how redundant or badly scaled the generating set is.
pub fn commutant(mats: &[CMatrix], tol: Tolerance) -> Result<OperatorSubspace> {
    if mats.is_empty() {
        return Err(Error::EmptyInput("commutant of an empty set"));
    }
    let n = mats[0].rows();
    for m in mats {
        if m.rows() != m.cols() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
    }
    let span = OperatorSubspace::span_with_shape(n, n, mats, tol)?;
    commutant_of_space(&span, tol)
}

/// Commutant of an already-spanned operator subspace.
pub fn commutant_of_space(space: &OperatorSubspace, tol: Tolerance) -> Result<OperatorSubspace> {
    if space.rows() != space.cols() {
        return Err(Error::NotSquare {
            rows: space.rows(),
            cols: space.cols(),
        });
    }
    let n = space.rows();
    if space.dim() == 0 {
        // Everything commutes with nothing: the full matrix space, with the
        // matrix units as a ready-made trace-orthonormal basis.
        let mut units = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                units.push(CMatrix::unit(n, n, i, j));
            }
        }
        return Ok(OperatorSubspace::from_orthonormal(n, n, units));
    }
    let id = CMatrix::identity(n);
    let mut blocks = Vec::with_capacity(space.dim());
    for a in space.basis() {
        // vec(XA − AX) = (Aᵀ ⊗ I − I ⊗ A) vec X
        let block = a.transpose().kron(&id).sub(&id.kron(a));
        blocks.push(block);
    }
    let block_refs: Vec<&CMatrix> = blocks.iter().collect();
    let stacked = CMatrix::vcat(&block_refs)?;
    let (_, null) = crate::linalg::backend::rank_nullspace(&stacked, tol);
    let mut basis = Vec::with_capacity(null.len());
    for v in &null {
        basis.push(CMatrix::from_vectorized(v, n, n)?);
    }
    // vec is a trace-inner-product isometry, so an orthonormal kernel basis
    // reshapes to a trace-orthonormal operator basis.
    Ok(OperatorSubspace::from_orthonormal(n, n, basis))
}

/// The commutant of the commutant.
pub fn bicommutant(mats: &[CMatrix], tol: Tolerance) -> Result<OperatorSubspace> {
    let first = commutant(mats, tol)?;
    commutant_of_space(&first, tol)
}

/// Bicommutant of an already-spanned operator subspace.
pub fn bicommutant_of_space(
    space: &OperatorSubspace,
    tol: Tolerance,
) -> Result<OperatorSubspace> {
    let first = commutant_of_space(space, tol)?;
    commutant_of_space(&first, tol)
}

/// Outcome of comparing a span with its bicommutant.
#[derive(Clone, Debug, Serialize)]
pub struct DcpVerdict {
    /// Whether the span equals its own bicommutant.
    pub holds: bool,
    /// Dimension of the linear span of the input operators.
    pub span_dim: usize,
    /// Dimension of the bicommutant.
    pub bicommutant_dim: usize,
    /// Orthonormal basis of the orthogonal complement of the span inside the
    /// bicommutant (empty exactly when the property holds).
    pub excess: OperatorSubspace,
}

/// Compares the span of a set of operators with its bicommutant.
///
/// The set is expected to span an algebra (e.g. the images of a
/// representation basis); the verdict reports whether the span already equals
/// its bicommutant, and if not, exhibits an orthonormal basis of the excess.
pub fn dcp_check(mats: &[CMatrix], tol: Tolerance) -> Result<DcpVerdict> {
    if mats.is_empty() {
        return Err(Error::EmptyInput("double-commutant check on an empty set"));
    }
    let n = mats[0].rows();
    let span = OperatorSubspace::span_with_shape(n, n, mats, tol)?;
    dcp_check_space(&span, tol)
}

/// [`dcp_check`] for an already-spanned subspace.
pub fn dcp_check_space(span: &OperatorSubspace, tol: Tolerance) -> Result<DcpVerdict> {
    let bic = bicommutant_of_space(span, tol)?;
    if !span.leq(&bic, tol) {
        return Err(Error::Verification(format!(
            "span (dim {}) escapes its own bicommutant (dim {}); \
             the kernel solve lost precision",
            span.dim(),
            bic.dim()
        )));
    }
    let excess = span.complement_within(&bic, tol)?;
    if span.dim() + excess.dim() != bic.dim() {
        return Err(Error::Verification(format!(
            "dimension bookkeeping failed: span {} + excess {} != bicommutant {}",
            span.dim(),
            excess.dim(),
            bic.dim()
        )));
    }
    Ok(DcpVerdict {
        holds: span.dim() == bic.dim(),
        span_dim: span.dim(),
        bicommutant_dim: bic.dim(),
        excess,
    })
}

/// A vector witnessing failure of invariant-subspace preservation.
#[derive(Clone, Debug, Serialize)]
pub struct AlgLatWitness {
    /// The probe vector generating the violated cyclic subspace.
    pub vector: CMatrix,
    /// Distance from `X·vector` to the cyclic subspace.
    pub distance: f64,
}

/// Result of the randomized `alg lat` membership test.
#[derive(Clone, Debug, Serialize)]
pub struct AlgLatVerdict {
    /// True when no violation was found.  This is evidence, not proof.
    pub passes: bool,
    /// A violated cyclic subspace, if one was found (definitive).
    pub witness: Option<AlgLatWitness>,
    /// Number of probe vectors examined.
    pub vectors_checked: usize,
}

/// Tests whether `x` preserves every cyclic invariant subspace of the
/// operator set `s`, by sampling.
///
/// For each probe vector `v` the cyclic subspace `K_v = span({v} ∪ {Aᵢv})`
/// is formed (`strict` drops `v` itself, the convention for algebras with no
/// identity element) and the test checks `X·K_v ⊆ K_v`.  Probes are the
/// standard basis vectors first — so structured witnesses are found
/// deterministically — followed by `samples` seeded Gaussian unit vectors.
/// A reported violation is definitive; a pass is one-sided evidence.
pub fn alg_lat_member(
    x: &CMatrix,
    s: &[CMatrix],
    strict: bool,
    samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<AlgLatVerdict> {
    if s.is_empty() {
        return Err(Error::EmptyInput("alg-lat test against an empty set"));
    }
    let n = x.rows();
    if x.cols() != n {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    for a in s {
        if a.rows() != n || a.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "operator set acts on C^{}, candidate on C^{}",
                a.rows(),
                n
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;
    let mut probes: Vec<CMatrix> = (0..n).map(|i| CMatrix::unit(n, 1, i, 0)).collect();
    for _ in 0..samples {
        probes.push(random::unit_vector(n, &mut rng));
    }
    for v in &probes {
        checked += 1;
        let mut spanning: Vec<CMatrix> = s.iter().map(|a| a.matmul(v)).collect();
        if !strict {
            spanning.push(v.clone());
        }
        let k_v = Subspace::from_spanning(&spanning, n, tol)?;
        for b in k_v.basis_vectors() {
            let image = x.matmul(&b);
            if !k_v.contains(&image, tol) {
                return Ok(AlgLatVerdict {
                    passes: false,
                    witness: Some(AlgLatWitness {
                        vector: v.clone(),
                        distance: k_v.distance(&image),
                    }),
                    vectors_checked: checked,
                });
            }
        }
    }
    Ok(AlgLatVerdict {
        passes: true,
        witness: None,
        vectors_checked: checked,
    })
}

/// One named identity check with its residual.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub pass: bool,
    /// Worst distance between the two sides' bases.
    pub residual: f64,
}

/// Report of the commutant identity self-tests.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Verifies the four standard commutant identities on a concrete set:
/// ampliation commutes with both span and bicommutant, and the adjoint
/// commutes with both span and bicommutant.  Both sides of every identity are
/// computed along independent paths and compared as subspaces.
pub fn identity_suite(s: &[CMatrix], k: usize, tol: Tolerance) -> Result<IdentityReport> {
    if s.is_empty() {
        return Err(Error::EmptyInput("identity suite on an empty set"));
    }
    if k == 0 {
        return Err(Error::ZeroMultiple);
    }
    let n = s[0].rows();
    let span = OperatorSubspace::span_with_shape(n, n, s, tol)?;

    let mut checks = Vec::new();
    let mut push = |name: &'static str, lhs: &OperatorSubspace, rhs: &OperatorSubspace| {
        checks.push(IdentityCheck {
            name,
            pass: lhs.equal(rhs, tol),
            residual: lhs.mutual_residual(rhs),
        });
    };

    // span(S ⊗ I) = (span S) ⊗ I
    let ampliated_gens: Vec<CMatrix> = s
        .iter()
        .map(|a| a.ampliate(k))
        .collect::<Result<Vec<_>>>()?;
    let span_of_ampliates =
        OperatorSubspace::span_with_shape(n * k, n * k, &ampliated_gens, tol)?;
    let ampliate_of_span = span.ampliate(k, tol)?;
    push(
        "ampliation commutes with span",
        &span_of_ampliates,
        &ampliate_of_span,
    );

    // (S ⊗ I)″ = S″ ⊗ I
    let bic_of_ampliates = bicommutant_of_space(&span_of_ampliates, tol)?;
    let ampliate_of_bic = bicommutant_of_space(&span, tol)?.ampliate(k, tol)?;
    push(
        "ampliation commutes with bicommutant",
        &bic_of_ampliates,
        &ampliate_of_bic,
    );

    // span(S*) = (span S)*
    let adjoint_gens: Vec<CMatrix> = s.iter().map(|a| a.adjoint()).collect();
    let span_of_adjoints = OperatorSubspace::span_with_shape(n, n, &adjoint_gens, tol)?;
    let adjoint_of_span = span.adjoint_space();
    push(
        "adjoint commutes with span",
        &span_of_adjoints,
        &adjoint_of_span,
    );

    // (S*)″ = (S″)*
    let bic_of_adjoints = bicommutant_of_space(&span_of_adjoints, tol)?;
    let adjoint_of_bic = bicommutant_of_space(&span, tol)?.adjoint_space();
    push(
        "adjoint commutes with bicommutant",
        &bic_of_adjoints,
        &adjoint_of_bic,
    );

    Ok(IdentityReport { checks })
}

/// Whether a span of operators is closed under the adjoint.
pub fn is_selfadjoint_space(space: &OperatorSubspace, tol: Tolerance) -> bool {
    space.equal(&space.adjoint_space(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn e(i: usize, j: usize, n: usize) -> CMatrix {
        CMatrix::unit(n, n, i, j)
    }

    fn m2_units() -> Vec<CMatrix> {
        vec![e(0, 0, 2), e(0, 1, 2), e(1, 0, 2), e(1, 1, 2)]
    }

    fn upper_units() -> Vec<CMatrix> {
        vec![e(0, 0, 2), e(0, 1, 2), e(1, 1, 2)]
    }

    #[test]
    fn commutant_of_identity_is_everything() {
        let c = commutant(&[CMatrix::identity(2)], tol()).unwrap();
        assert_eq!(c.dim(), 4);
    }

    #[test]
    fn commutant_of_matrix_units_is_scalars() {
        let c = commutant(&m2_units(), tol()).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&CMatrix::identity(2), tol()));
    }

    #[test]
    fn commutant_of_triangular_units_is_scalars() {
        let c = commutant(&upper_units(), tol()).unwrap();
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn bicommutant_of_identity_is_scalars() {
        let b = bicommutant(&[CMatrix::identity(2)], tol()).unwrap();
        assert_eq!(b.dim(), 1);
    }

    #[test]
    fn triangular_span_fails_double_commutant() {
        let v = dcp_check(&upper_units(), tol()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.span_dim, 3);
        assert_eq!(v.bicommutant_dim, 4);
        assert_eq!(v.excess.dim(), 1);
        // The missing direction is the lower-left matrix unit.
        assert!(v.excess.contains(&e(1, 0, 2), tol()));
    }

    #[test]
    fn matrix_units_satisfy_double_commutant() {
        let v = dcp_check(&m2_units(), tol()).unwrap();
        assert!(v.holds);
        assert_eq!(v.excess.dim(), 0);
    }

    #[test]
    fn alg_lat_trivial_lattice_accepts_anything() {
        let x = CMatrix::from_real_rows(&[vec![0.3, -1.2], vec![2.0, 0.7]]).unwrap();
        let v = alg_lat_member(&x, &m2_units(), false, 20, 7, tol()).unwrap();
        assert!(v.passes);
    }

    #[test]
    fn alg_lat_rejects_lower_corner_against_triangulars() {
        let v = alg_lat_member(&e(1, 0, 2), &upper_units(), false, 20, 7, tol()).unwrap();
        assert!(!v.passes);
        let w = v.witness.unwrap();
        // The violated cyclic subspace is generated by the first basis vector.
        assert!((w.vector.at(0, 0).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn alg_lat_accepts_members_of_the_algebra() {
        let v = alg_lat_member(&e(0, 1, 2), &upper_units(), false, 20, 7, tol()).unwrap();
        assert!(v.passes);
    }

    #[test]
    fn identity_suite_passes_on_triangulars() {
        let report = identity_suite(&upper_units(), 3, tol()).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn identity_suite_passes_on_singleton_identity() {
        let report = identity_suite(&[CMatrix::identity(2)], 2, tol()).unwrap();
        assert!(report.all_pass());
    }

    #[test]
    fn selfadjointness_of_spans() {
        let units = OperatorSubspace::span_with_shape(2, 2, &m2_units(), tol()).unwrap();
        assert!(is_selfadjoint_space(&units, tol()));
        let upper = OperatorSubspace::span_with_shape(2, 2, &upper_units(), tol()).unwrap();
        assert!(!is_selfadjoint_space(&upper, tol()));
        // The commutant of any set is adjoint-closed when the set is.
        let c = commutant(&m2_units(), tol()).unwrap();
        assert!(is_selfadjoint_space(&c, tol()));
    }

    #[test]
    fn commutant_is_multiplicatively_closed_and_unital() {
        let c = commutant(&upper_units(), tol()).unwrap();
        assert!(c.contains(&CMatrix::identity(2), tol()));
        for a in c.basis() {
            for b in c.basis() {
                assert!(c.contains(&a.matmul(b), tol()));
            }
        }
    }

    #[test]
    fn bicommutant_is_idempotent() {
        let s = upper_units();
        let b1 = bicommutant(&s, tol()).unwrap();
        let b2 = bicommutant_of_space(&b1, tol()).unwrap();
        assert!(b1.equal(&b2, tol()));
    }
}
