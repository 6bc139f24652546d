//! Building new modules from old: direct sums, multiples, restrictions to
//! invariant subspaces, quotients — and the trace / reject submodules that
//! measure how much of one module another can see.
//!
//! Run with `cargo run --example module_operations`.

use opalg::families::t2;
use opalg::hilbmod::Representation;
use opalg::linalg::{CMatrix, Subspace, Tolerance};

fn main() -> opalg::error::Result<()> {
    let tol = Tolerance::default();
    let algebra = t2::t2_algebra(tol)?;

    // The two-sided module with corner 1/2 on C² = C¹ ⊕ C¹.
    let h = t2::build_t2(&algebra, &CMatrix::from_real_rows(&[vec![0.5]])?, tol)?;
    println!("H: module of dimension {}", h.dim_h());

    // Direct sums and multiples just stack the action blockwise.
    let b2 = t2::build_t2_kind(&algebra, t2::T2Kind::B, None, Some(2), tol)?;
    let sum = Representation::direct_sum(&[&h, &b2], tol)?;
    let tripled = h.multiple(3, tol)?;
    println!(
        "H (+) B2 has dimension {}, H^(3) has dimension {}",
        sum.dim_h(),
        tripled.dim_h()
    );

    // The first coordinate of H is invariant (the action is upper
    // triangular), so H restricts and quotients along it.
    let e1 = CMatrix::unit(2, 1, 0, 0);
    let w = Subspace::from_spanning(&[e1], 2, tol)?;
    let restricted = h.restrict(&w, tol)?;
    let quotient = h.quotient(&w, tol)?;
    println!(
        "restricting H to its invariant line: dim {}; quotient: dim {}",
        restricted.dim_h(),
        quotient.dim_h()
    );

    // The trace of B2 inside H: the joint range of all module maps B2 -> H.
    // Maps out of the left-sided module land in the first block of H.
    let trace = h.trace_from(&b2, tol)?;
    println!(
        "trace of B2 inside H: dim {} of {} (the first block)",
        trace.dim(),
        trace.ambient_dim()
    );

    // The reject of H against C2: vectors of H killed by every module map
    // H -> C2.  Maps into the right-sided module only see the second block,
    // so the first block is rejected.
    let c2 = t2::build_t2_kind(&algebra, t2::T2Kind::C, None, Some(2), tol)?;
    let reject = h.reject_into(&c2, tol)?;
    println!(
        "reject of H against C2: dim {} of {} (again the first block)",
        reject.dim(),
        reject.ambient_dim()
    );

    // Cyclic submodules: the orbit of a vector under the action.  e2 is
    // cyclic for H (its orbit reaches the corner), e1 is not.
    let e1 = CMatrix::unit(2, 1, 0, 0);
    let e2 = CMatrix::unit(2, 1, 1, 0);
    println!(
        "cyclic submodule of e1: dim {}; of e2: dim {}",
        h.cyclic_submodule(&e1, false, tol)?.dim(),
        h.cyclic_submodule(&e2, false, tol)?.dim()
    );
    Ok(())
}
