//! Closed-form answers for two-block modules over the 2x2 upper-triangular
//! algebra, checked live against the generic kernel engines.
//!
//! A module here is determined by one corner contraction `T : H₂ → H₁`; the
//! whole classification reads off `T`'s rank data: the span collapses to
//! its bicommutant exactly when `T` is NOT invertible, semigenerator means
//! non-dense range, semicogenerator means nonzero kernel, and so on.
//!
//! Run with `cargo run --example triangular_closed_forms`.

use opalg::families::t2;
use opalg::linalg::{CMatrix, Tolerance};

fn main() -> opalg::error::Result<()> {
    let tol = Tolerance::default();
    let algebra = t2::t2_algebra(tol)?;

    let corners: Vec<(&str, CMatrix)> = vec![
        ("T = 1/2 (invertible) ", CMatrix::from_real_rows(&[vec![0.5]])?),
        (
            "T = diag(1/2, 0)     ",
            CMatrix::from_real_rows(&[vec![0.5, 0.0], vec![0.0, 0.0]])?,
        ),
        (
            "T = [1/2, 0] (wide)  ",
            CMatrix::from_real_rows(&[vec![0.5, 0.0]])?,
        ),
        (
            "T = [1/2; 0] (tall)  ",
            CMatrix::from_real_rows(&[vec![0.5], vec![0.0]])?,
        ),
        ("T = 0                ", CMatrix::from_real_rows(&[vec![0.0]])?),
    ];

    println!("corner                   collapse  commutant  span->bicommutant");
    for (label, t) in &corners {
        let closed = t2::t2_closed_form(t, tol);
        // Self-testing closed form: verified against the kernel engine on
        // every call.
        let comm = t2::t2_commutant_closed_form(&algebra, t, tol)?;
        let rep = t2::build_t2(&algebra, t, tol)?;
        let verdict = rep.dcp_verdict(tol)?;
        println!(
            "{label}      {}       {}          {} -> {}",
            if closed.dcp { "yes" } else { "no " },
            comm.dim(),
            verdict.span_dim,
            verdict.bicommutant_dim
        );
    }

    // For an invertible corner the failure is witnessed explicitly: the
    // inverse of the corner, placed in the opposite block, commutes with
    // everything the commutant contains but lies outside the span.
    let t = CMatrix::from_real_rows(&[vec![0.8, 0.0], vec![0.3, 0.5]])?;
    let z = t2::t2_bicommutant_excess(&algebra, &t, tol)?;
    println!("\nexcess witness for an invertible 2x2 corner (lower block = T^-1):");
    for i in 0..z.rows() {
        let row: Vec<String> = (0..z.cols()).map(|j| format!("{:6.3}", z.at(i, j).re)).collect();
        println!("  [{}]", row.join(" "));
    }
    Ok(())
}
