//! Randomized structural laws.
//!
//! Each property here is an algebraic identity that must hold for *every*
//! input, so they are exercised over proptest-generated matrices rather than
//! hand-picked fixtures: span-closure of generated algebras, monotonicity
//! and idempotence of the commutant, the double-commutant identity for
//! unital self-adjoint sets, duality under adjoints, and additivity of
//! module maps and trace submodules over direct sums.

use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;

use opalg::algebra::MatrixAlgebra;
use opalg::commutant::{bicommutant, commutant};
use opalg::families::t2;
use opalg::hilbmod::Representation;
use opalg::linalg::{CMatrix, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn complex_entry() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(complex_entry(), rows * cols)
        .prop_map(move |e| CMatrix::new(rows, cols, e).expect("finite entries"))
}

/// One to three square matrices of one size, the size itself drawn 1..=3.
fn matrix_sets() -> impl Strategy<Value = Vec<CMatrix>> {
    (1usize..=3, 1usize..=3)
        .prop_flat_map(|(n, count)| prop::collection::vec(matrix(n, n), count))
}

/// A corner with at least one nonzero block dimension, scaled strictly
/// inside the contraction bound.
fn corner() -> impl Strategy<Value = CMatrix> {
    (0usize..=2, 0usize..=2)
        .prop_filter("at least one block", |(r, c)| r + c > 0)
        .prop_flat_map(|(r, c)| matrix(r, c))
        .prop_map(|t| {
            let bound = 1.0 + t.norm();
            t.scaled(Complex64::new(1.0 / bound, 0.0))
        })
}

/// A two-block module over a shared reference algebra.
fn two_block(algebra: &Arc<MatrixAlgebra>, t: &CMatrix) -> Representation {
    t2::build_t2(algebra, t, tol()).expect("contraction by construction")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    /// The span produced by `generate` really is closed under products:
    /// re-validating it as an already-closed span must succeed.
    #[test]
    fn generated_spans_are_closed_under_products(mats in matrix_sets()) {
        let alg = MatrixAlgebra::generate(&mats, tol()).expect("closure terminates");
        let revalidated = MatrixAlgebra::from_orthonormal_basis(alg.basis().clone(), tol());
        prop_assert!(revalidated.is_ok(), "closure left the span: {revalidated:?}");
        prop_assert_eq!(revalidated.unwrap().dim(), alg.dim());
    }

    /// Growing the generating set can only shrink the commutant.
    #[test]
    fn commutant_is_antitone(mats in matrix_sets(), extra_entries in prop::collection::vec(complex_entry(), 9)) {
        let n = mats[0].rows();
        let extra = CMatrix::new(n, n, extra_entries[..n * n].to_vec()).unwrap();
        let small = commutant(&mats, tol()).unwrap();
        let mut larger_set = mats.clone();
        larger_set.push(extra);
        let large = commutant(&larger_set, tol()).unwrap();
        prop_assert!(
            large.leq(&small, tol()),
            "commutant of a superset must sit inside the commutant of the subset \
             ({} vs {})",
            large.dim(),
            small.dim()
        );
    }

    /// `S''' = S'`: taking the commutant of the bicommutant gives nothing new.
    #[test]
    fn triple_commutant_equals_single(mats in matrix_sets()) {
        let first = commutant(&mats, tol()).unwrap();
        let second = bicommutant(&mats, tol()).unwrap();
        let third = commutant(second.basis(), tol()).unwrap();
        prop_assert!(third.equal(&first, tol()),
            "S''' (dim {}) must equal S' (dim {})", third.dim(), first.dim());
    }

    /// The bicommutant is idempotent: `(S'')'' = S''`.
    #[test]
    fn bicommutant_is_idempotent(mats in matrix_sets()) {
        let second = bicommutant(&mats, tol()).unwrap();
        let fourth = bicommutant(second.basis(), tol()).unwrap();
        prop_assert!(fourth.equal(&second, tol()));
    }

    /// Commutants respect adjoints: `(S*)' = (S')*`.
    #[test]
    fn commutant_commutes_with_adjoints(mats in matrix_sets()) {
        let adj_set: Vec<CMatrix> = mats.iter().map(|m| m.adjoint()).collect();
        let of_adjoints = commutant(&adj_set, tol()).unwrap();
        let adjoint_of = commutant(&mats, tol()).unwrap().adjoint_space();
        prop_assert!(of_adjoints.equal(&adjoint_of, tol()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    /// For a unital self-adjoint set, the bicommutant is exactly the
    /// generated star-algebra — the finite-dimensional double-commutant
    /// identity.
    #[test]
    fn double_commutant_identity_for_unital_star_sets(g in (1usize..=3).prop_flat_map(|n| matrix(n, n))) {
        let n = g.rows();
        let set = vec![CMatrix::identity(n), g.clone(), g.adjoint()];
        let generated = MatrixAlgebra::star_closure(&set, tol()).unwrap();
        let double = bicommutant(&set, tol()).unwrap();
        prop_assert!(generated.basis().equal(&double, tol()),
            "star algebra dim {} vs bicommutant dim {}",
            generated.dim(), double.dim());
    }

    /// The collapse verdict is invariant under taking module multiples.
    #[test]
    fn collapse_is_invariant_under_multiples(t in corner()) {
        let algebra = t2::t2_algebra(tol()).unwrap();
        let h = two_block(&algebra, &t);
        let doubled = h.multiple(2, tol()).unwrap();
        let single = h.dcp_verdict(tol()).unwrap();
        let multi = doubled.dcp_verdict(tol()).unwrap();
        prop_assert_eq!(single.holds, multi.holds,
            "module {} collapse and its double disagree", if single.holds { "" } else { "non-" });
    }

    /// Module maps out of a direct sum decompose blockwise:
    /// `dim Hom(H1 ⊕ H2, K) = dim Hom(H1, K) + dim Hom(H2, K)`.
    #[test]
    fn module_maps_add_over_direct_sums(t1 in corner(), t2c in corner(), tk in corner()) {
        let algebra = t2::t2_algebra(tol()).unwrap();
        let h1 = two_block(&algebra, &t1);
        let h2 = two_block(&algebra, &t2c);
        let k = two_block(&algebra, &tk);
        let sum = Representation::direct_sum(&[&h1, &h2], tol()).unwrap();
        let lhs = sum.intertwiners(&k, tol()).unwrap().dim();
        let rhs = h1.intertwiners(&k, tol()).unwrap().dim()
            + h2.intertwiners(&k, tol()).unwrap().dim();
        prop_assert_eq!(lhs, rhs);
    }

    /// Trace submodules are additive over direct sums of the source:
    /// `Tr_K(H1 ⊕ H2) = Tr_K(H1) + Tr_K(H2)` inside `K`.
    #[test]
    fn trace_submodules_add_over_direct_sums(t1 in corner(), t2c in corner(), tk in corner()) {
        let algebra = t2::t2_algebra(tol()).unwrap();
        let h1 = two_block(&algebra, &t1);
        let h2 = two_block(&algebra, &t2c);
        let k = two_block(&algebra, &tk);
        let sum = Representation::direct_sum(&[&h1, &h2], tol()).unwrap();
        let joint = k.trace_from(&sum, tol()).unwrap();
        let separate = k
            .trace_from(&h1, tol()).unwrap()
            .sum(&k.trace_from(&h2, tol()).unwrap(), tol())
            .unwrap();
        prop_assert!(joint.equal(&separate, tol()),
            "joint trace dim {} vs summed dim {}", joint.dim(), separate.dim());
    }
}
