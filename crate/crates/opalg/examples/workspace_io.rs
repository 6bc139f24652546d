//! Workspace files: named matrices, algebras, and module actions in JSON,
//! with `[re, im]` row-major entries that round-trip through the library's
//! own serialization.
//!
//! The same format drives the `opalg` command-line tool; this example loads
//! a workspace in-process, resolves every object, runs the engines, and
//! emits a result matrix that could be pasted straight back into another
//! workspace file.
//!
//! Run with `cargo run --example workspace_io`.

use opalg::commutant::dcp_check;
use opalg::workspace::Workspace;

fn main() -> opalg::error::Result<()> {
    let text = r#"{
        "tolerance": { "rank_rel": 1e-9, "match_abs": 1e-8 },
        "matrices": {
            "half":  { "rows": 1, "cols": 1, "entries": [[0.5, 0.0]] },
            "proj":  { "rows": 2, "cols": 2,
                       "entries": [[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]] },
            "cycle": { "rows": 2, "cols": 2,
                       "entries": [[0.0,0.0],[1.0,0.0],[1.0,0.0],[0.0,0.0]] }
        },
        "algebras": {
            "flip": { "generators": ["cycle"], "mode": "star" }
        },
        "representations": {
            "H":    { "t2": { "T": "half" } },
            "left": { "t2": { "kind": "b", "dim": 2 } },
            "act":  { "algebra": "flip" }
        }
    }"#;

    let ws = Workspace::from_json(text, None, None)?;
    println!(
        "workspace loaded (rank_rel {:.0e}, match_abs {:.0e})",
        ws.tolerance().rank_rel,
        ws.tolerance().match_abs
    );

    // Named algebras come back closed: the star closure of the 2-cycle
    // permutation is commutative of dimension 2.
    let flip = ws.algebra("flip")?;
    println!(
        "algebra 'flip': dim {}, unital: {}",
        flip.dim(),
        flip.is_unital()
    );

    // Named representations are fully built actions.
    let h = ws.representation("H")?;
    let verdict = h.dcp_verdict(ws.tolerance())?;
    println!(
        "representation 'H': dim {}, collapse {}",
        h.dim_h(),
        verdict.holds
    );

    // Matrices resolved from the file feed the raw engines directly.
    let proj = ws.matrix("proj")?;
    let verdict = dcp_check(std::slice::from_ref(proj), ws.tolerance())?;
    println!(
        "dcp of {{proj}}: span {} -> bicommutant {} (collapse {})",
        verdict.span_dim, verdict.bicommutant_dim, verdict.holds
    );

    // Output matrices serialize in exactly the workspace shape, so results
    // can be pasted back into the next file.
    let excess = &verdict.excess;
    println!(
        "\na result ready to paste into another workspace's \"matrices\" map:\n{}",
        serde_json::to_string_pretty(&serde_json::json!({
            "bicommutant_excess_0": excess.basis().first()
        }))
        .expect("serializable")
    );

    // Override tolerances without editing the file — flags beat the
    // tolerance block.
    let loose = Workspace::from_json(text, Some(1e-3), None)?;
    println!(
        "override: rank_rel {:.0e} (file said 1e-9)",
        loose.tolerance().rank_rel
    );
    Ok(())
}
