//! Hunting for modules with a prescribed sign pattern of properties.
//!
//! The search alternates two lanes: two-block modules (where every found
//! candidate is fully classified by the engine and cross-checked against
//! the corner's closed form) and corner-space modules (where the soundly
//! decidable flags are scored).  A pattern that no candidate can satisfy
//! is reported as an honest exhaustion, not an error.
//!
//! Run with `cargo run --example search_patterns`.

use opalg::families::search::{counterexample_search, HitDetails, SearchOutcome, SearchTarget};
use opalg::linalg::Tolerance;

fn hunt(pattern: &str, seed: u64, budget: usize) -> opalg::error::Result<()> {
    let tol = Tolerance::default();
    let target = SearchTarget::parse(pattern)?;
    match counterexample_search(&target, seed, budget, tol)? {
        SearchOutcome::Found(hit) => match &hit.details {
            HitDetails::TwoBlock { corner, report } => println!(
                "{pattern:32} -> two-block hit after {} tries (corner {}x{}, \
                 span {} -> bicommutant {})",
                hit.attempts,
                corner.rows(),
                corner.cols(),
                report.dcp_verdict.span_dim,
                report.dcp_verdict.bicommutant_dim,
            ),
            HitDetails::CornerSpace { alphas, flags } => println!(
                "{pattern:32} -> corner-space hit after {} tries \
                 ({}-corner tuple, {}x{}, collapse {})",
                hit.attempts,
                alphas.len(),
                alphas[0].rows(),
                alphas[0].cols(),
                flags.dcp,
            ),
        },
        SearchOutcome::Exhausted { attempts } => {
            println!("{pattern:32} -> exhausted after {attempts} candidates (unsatisfiable here)")
        }
    }
    Ok(())
}

fn main() -> opalg::error::Result<()> {
    // Easy: a module whose span collapses but which fails to semigenerate.
    hunt("dcp=true,semigen=false", 1, 400)?;

    // A two-sided generator-and-cogenerator witness.
    hunt("gen=true,cogen=true", 2, 400)?;

    // Only corner spaces can do this: a proper joint range (so the module
    // semigenerates) together with a collapse failure.  For two-block
    // modules the combination is impossible — the invertible corner that
    // breaks the collapse forces a dense range.
    hunt("dcp=false,semigen=true", 3, 400)?;

    // Impossible everywhere: a generator that is not a semigenerator.  The
    // search owes an exhaustion, never a fabricated hit.
    hunt("gen=true,semigen=false", 4, 60)?;
    Ok(())
}
