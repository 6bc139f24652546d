//! Structural identities of the commutant calculus, verified numerically:
//! ampliations, adjoints, and the cyclic-invariant-subspace probe.
//!
//! * the commutant of `S ⊗ I_k` (`k` copies of every operator, block
//!   diagonal) is the ampliation of the commutant of `S` to `k x k` blocks;
//! * the commutant of the adjoint set is the adjoint of the commutant;
//! * elements of a collapsing bicommutant preserve every sampled cyclic
//!   invariant subspace of the generating set, and interlopers are caught
//!   with an explicit witness vector.
//!
//! Run with `cargo run --example operator_identities`.

use opalg::commutant::{alg_lat_member, identity_suite};
use opalg::families::t2;
use opalg::linalg::{random, CMatrix, Tolerance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> opalg::error::Result<()> {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    // Four identities at once on a random pair of 3x3 operators, ampliated
    // twofold.  Each check reports its worst residual.
    let set = vec![random::ginibre(3, 3, &mut rng), random::ginibre(3, 3, &mut rng)];
    let report = identity_suite(&set, 2, tol)?;
    println!("identity suite on a random 3x3 pair (k = 2):");
    for check in &report.checks {
        println!(
            "  {:44} {}  (residual {:.2e})",
            check.name,
            if check.pass { "ok" } else { "FAILED" },
            check.residual
        );
    }
    println!("  all pass: {}\n", report.all_pass());

    // The invariant-subspace probe.  Take the triangular span with a
    // non-invertible corner — its bicommutant equals its span, and every
    // bicommutant element preserves each sampled cyclic subspace.
    let algebra = t2::t2_algebra(tol)?;
    let t = CMatrix::from_real_rows(&[vec![0.5], vec![0.0]])?;
    let h = t2::build_t2(&algebra, &t, tol)?;
    let verdict = h.dcp_verdict(tol)?;
    println!(
        "collapsing module (tall corner): span {} = bicommutant {}",
        verdict.span_dim, verdict.bicommutant_dim
    );
    let bic = opalg::commutant::bicommutant(h.images(), tol)?;
    for (i, b) in bic.basis().iter().enumerate() {
        let lat = alg_lat_member(b, h.images(), false, 50, 17, tol)?;
        println!(
            "  bicommutant basis[{i}] preserves all {} sampled invariant subspaces: {}",
            lat.vectors_checked, lat.passes
        );
    }

    // Now an interloper: for an invertible corner, the excess element (the
    // inverse in the opposite block) maps an invariant line out of itself,
    // and the probe names the vector that escapes.
    let t = CMatrix::from_real_rows(&[vec![0.5]])?;
    let h = t2::build_t2(&algebra, &t, tol)?;
    let z = t2::t2_bicommutant_excess(&algebra, &t, tol)?;
    let lat = alg_lat_member(&z, h.images(), false, 50, 17, tol)?;
    println!(
        "\nexcess element of the invertible-corner module: preserves invariant \
         subspaces? {}",
        lat.passes
    );
    if let Some(w) = &lat.witness {
        println!(
            "  witness vector [{:.2}, {:.2}] escapes its own cyclic subspace by {:.3}",
            w.vector.at(0, 0).re,
            w.vector.at(1, 0).re,
            w.distance
        );
    }
    Ok(())
}
