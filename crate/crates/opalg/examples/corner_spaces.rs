//! Corner-space modules: a tuple of corner operators spanning an operator
//! space X, acting as the one-row algebra of matrices [scalar, row; 0, scalar].
//!
//! The highlight is a space that is NOT reflexive: the span of a shift and
//! its square.  Every pair (A, D) intertwining S and S² automatically
//! intertwines S³, so S³ belongs to the reflexive closure without belonging
//! to the span — and the collapse check fails for exactly that reason,
//! even though the tuple's joint range is proper.
//!
//! Run with `cargo run --example corner_spaces`.

use opalg::families::{refl_closure, t2, ux};
use opalg::linalg::{OperatorSubspace, Tolerance};

fn main() -> opalg::error::Result<()> {
    let tol = Tolerance::default();

    // The tuple {S, S²} for the shift S on C⁴.
    let alphas = ux::shift_power_alphas(2, 4);
    let space = OperatorSubspace::span_of(&alphas, tol)?;
    let closure = refl_closure(&space, tol)?;
    println!(
        "span{{S, S²}} on C⁴: dim {} — reflexive closure: dim {}",
        space.dim(),
        closure.dim()
    );
    let s3 = ux::shift_power_alphas(3, 4).pop().expect("third power");
    println!(
        "  S³ in the closure? {} (distance {:.2e}); in the span? {} (distance {:.2})",
        closure.contains(&s3, tol),
        closure.distance(&s3),
        space.contains(&s3, tol),
        space.distance(&s3)
    );

    // The same facts through the module: the span of the action's images
    // does not collapse onto its bicommutant (the closure directions are
    // missing), yet the joint range of the tuple is proper, so the module
    // still semigenerates.
    let algebra = ux::ux_algebra(2, tol)?;
    let h = ux::build_ux(&algebra, &alphas, tol)?;
    let verdict = h.dcp_verdict(tol)?;
    println!(
        "module over U(span{{S,S²}}): span dim {}, bicommutant dim {} -> collapse {}",
        verdict.span_dim,
        verdict.bicommutant_dim,
        verdict.holds
    );
    let semi = ux::ux_semi_criteria(&alphas, tol)?;
    println!(
        "closed-form semi flags: semigenerator {} (joint range proper), \
         semicogenerator {} (joint kernel nonzero)",
        semi.semigenerator, semi.semicogenerator
    );

    // Contrast with a two-block module: there, a proper joint range forces
    // the collapse, because a single invertible corner is the only way to
    // escape it.  Corner spaces genuinely enlarge the landscape.
    let t2_alg = t2::t2_algebra(tol)?;
    let dense = t2::build_t2(
        &t2_alg,
        &opalg::linalg::CMatrix::from_real_rows(&[vec![0.5]])?,
        tol,
    )?;
    println!(
        "two-block contrast: invertible corner -> collapse {}",
        dense.dcp_verdict(tol)?.holds
    );

    // The commutant of a corner-space module in closed form: intertwining
    // pairs diag(A, D) with A·alpha = alpha·D for every alpha, verified
    // against the kernel engine.
    let comm = ux::ux_commutant_closed_form(&algebra, &alphas, tol)?;
    println!("commutant dimension (closed form, engine-verified): {}", comm.dim());
    Ok(())
}
