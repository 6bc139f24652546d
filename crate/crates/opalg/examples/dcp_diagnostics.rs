//! The collapse check: when does the span of a set equal its bicommutant?
//!
//! For unital selfadjoint sets the answer is always (the finite-dimensional
//! double-commutant identity); for non-selfadjoint spans it can fail, and
//! the verdict then carries an orthonormal basis of the excess directions.
//!
//! Run with `cargo run --example dcp_diagnostics`.

use opalg::commutant::dcp_check;
use opalg::linalg::{random, CMatrix, Tolerance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> opalg::error::Result<()> {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    // A unital star-closed set: identity, a random G, and G*.  The span of
    // the algebra it generates always equals the bicommutant, so after one
    // closure the collapse verdict holds.
    let g = random::ginibre(3, 3, &mut rng);
    let alg = opalg::algebra::MatrixAlgebra::star_closure(
        &[CMatrix::identity(3), g.clone(), g.adjoint()],
        tol,
    )?;
    let verdict = dcp_check(alg.basis_mats(), tol)?;
    println!(
        "star-closed algebra from a random generator: span {} = bicommutant {} -> collapse {}",
        verdict.span_dim,
        verdict.bicommutant_dim,
        verdict.holds
    );

    // The smallest interesting failure: the span {[a, b/2; 0, c]} over C².
    let set = [
        CMatrix::unit(2, 2, 0, 0),
        CMatrix::unit(2, 2, 0, 1).scaled(num_complex::Complex64::new(0.5, 0.0)),
        CMatrix::unit(2, 2, 1, 1),
    ];
    let verdict = dcp_check(&set, tol)?;
    println!(
        "triangular span with invertible corner:      span {} < bicommutant {} -> collapse {}",
        verdict.span_dim,
        verdict.bicommutant_dim,
        verdict.holds
    );
    println!(
        "  excess dimension {}; distance of the first excess direction from the span: {:.3}",
        verdict.excess.dim(),
        {
            // By construction the excess basis is orthogonal to the span, so
            // each basis element has unit distance from it.
            let excess = &verdict.excess.basis()[0];
            let span = opalg::linalg::OperatorSubspace::span_of(&set, tol)?;
            span.distance(excess)
        }
    );

    // Replacing the invertible corner with a nilpotent one restores the
    // collapse: [a, b; 0, a] with b free is its own bicommutant.
    let set = [CMatrix::identity(2), CMatrix::unit(2, 2, 0, 1)];
    let verdict = dcp_check(&set, tol)?;
    println!(
        "span {{I, nilpotent}}:                          span {} = bicommutant {} -> collapse {}",
        verdict.span_dim,
        verdict.bicommutant_dim,
        verdict.holds
    );
    Ok(())
}
