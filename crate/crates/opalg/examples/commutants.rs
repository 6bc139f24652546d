//! Commutants of concrete operator sets, and how a non-selfadjoint span can
//! sit strictly inside its own bicommutant.
//!
//! Run with `cargo run --example commutants`.

use opalg::commutant::{bicommutant, commutant};
use opalg::linalg::{CMatrix, Tolerance};

fn main() -> opalg::error::Result<()> {
    let tol = Tolerance::default();

    // The commutant of the projection onto the first coordinate of C²
    // is the diagonal algebra.
    let p = CMatrix::unit(2, 2, 0, 0);
    let comm = commutant(&[p.clone()], tol)?;
    println!(
        "commutant of the coordinate projection:        dim {}  (the diagonals)",
        comm.dim()
    );

    // Adding the matrix unit E12 pins everything down to the scalars.
    let e12 = CMatrix::unit(2, 2, 0, 1);
    let comm = commutant(&[p.clone(), e12.clone()], tol)?;
    println!(
        "commutant of {{projection, corner unit}}:        dim {}  (scalars only)",
        comm.dim()
    );

    // For a selfadjoint set, span-of-the-generated-algebra = bicommutant.
    // The set {P, E12} is NOT selfadjoint, and its bicommutant (dim 4, all
    // of M2) is bigger than the span of the set itself (dim 2).
    let bic = bicommutant(&[p, e12], tol)?;
    println!(
        "bicommutant of {{projection, corner unit}}:      dim {}  (all of M2)",
        bic.dim()
    );

    // A three-dimensional non-selfadjoint span whose bicommutant is strictly
    // larger: matrices [a, b/2; 0, c].  Its commutant forces only the
    // relation between the diagonal blocks, and the bicommutant picks up the
    // lower-left corner scaled by the inverse of the upper-right one.
    let a1 = CMatrix::unit(2, 2, 0, 0);
    let a2 = CMatrix::unit(2, 2, 0, 1).scaled(num_complex::Complex64::new(0.5, 0.0));
    let a3 = CMatrix::unit(2, 2, 1, 1);
    let span_dim = 3;
    let bic = bicommutant(&[a1, a2, a3], tol)?;
    println!(
        "upper-triangular span with invertible corner:  span dim {span_dim}, bicommutant dim {}",
        bic.dim()
    );
    println!("  the extra bicommutant direction (lower-left corner):");
    for b in bic.basis() {
        if b.at(1, 0).norm() > 0.5 {
            println!(
            "    [{:.3} {:.3}; {:.3} {:.3}]",
                b.at(0, 0).re,
                b.at(0, 1).re,
                b.at(1, 0).re,
                b.at(1, 1).re
            );
        }
    }
    Ok(())
}
