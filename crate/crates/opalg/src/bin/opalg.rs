//! Command-line front end.
//!
//! Named objects (matrices, algebras, representations) come from a JSON
//! workspace file; every subcommand prints either human-readable text or,
//! with `--json`, a machine-readable envelope
//! `{command, seed, tolerance, result}` whose matrices round-trip back into
//! workspace files.
//!
//! Exit codes: `0` — the command ran and produced a verdict (including
//! negative verdicts such as a failed double-commutant check or an
//! exhausted search); `1` — an internal cross-check failed (two independent
//! computations disagreed, or a report violated an implication that must
//! hold), or the verification suite reported a failing criterion; `2` — bad
//! input (unknown names, malformed files, invalid arguments).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use opalg::classify::{self, Flag, ModuleFamily, PropertyReport};
use opalg::commutant;
use opalg::error::{Error, Result};
use opalg::families::{self, search, t2};
use opalg::linalg::{CMatrix, OperatorSubspace, Tolerance};
use opalg::suite;
use opalg::workspace::Workspace;

#[derive(Parser)]
#[command(
    name = "opalg",
    version,
    about = "Commutants, bicommutants, and module diagnostics for \
             finite-dimensional operator algebras"
)]
struct Cli {
    /// Workspace JSON file declaring named matrices, algebras, and
    /// representations.
    #[arg(long, global = true, value_name = "FILE")]
    workspace: Option<PathBuf>,

    /// Relative singular-value cutoff for rank decisions (default 1e-9).
    #[arg(long, global = true, value_name = "REL")]
    tol_rank: Option<f64>,

    /// Absolute residual tolerance for matches and memberships
    /// (default 1e-8).
    #[arg(long, global = true, value_name = "ABS")]
    tol_match: Option<f64>,

    /// Seed for every randomized probe.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,

    /// Emit a machine-readable JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Use only the strict orbit convention in cyclic-vector probes.
    #[arg(long, global = true)]
    strict_cyclic: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Commutant of a set of operators.
    Commutant(SetArgs),
    /// Bicommutant (commutant of the commutant) of a set of operators.
    Bicommutant(SetArgs),
    /// Check whether the span of a set equals its bicommutant.
    Dcp(SetArgs),
    /// Module maps from one representation to another.
    Hom {
        /// Source representation name.
        #[arg(long, value_name = "REP")]
        from: String,
        /// Target representation name.
        #[arg(long, value_name = "REP")]
        to: String,
    },
    /// Trace submodule of the target: the joint range of all module maps
    /// out of the source.
    Trace {
        /// Source representation name.
        #[arg(long, value_name = "REP")]
        from: String,
        /// Target representation name (the trace lives inside it).
        #[arg(long, value_name = "REP")]
        to: String,
    },
    /// Reject submodule of the source: the joint kernel of all module maps
    /// into the target.
    Reject {
        /// Source representation name (the reject lives inside it).
        #[arg(long, value_name = "REP")]
        from: String,
        /// Target representation name.
        #[arg(long, value_name = "REP")]
        to: String,
    },
    /// Full property report for a module measured against a comparison
    /// family.
    Classify {
        /// The module to classify (representation name).
        #[arg(long, value_name = "REP")]
        module: String,
        /// Comparison family: comma-separated representation names.
        #[arg(long, value_delimiter = ',', required = true, value_name = "REPS")]
        family: Vec<String>,
        /// Sample count for the sub-tracing probe.
        #[arg(long, default_value_t = 4, value_name = "N")]
        samples: usize,
    },
    /// Closed-form analysis of a two-block module over the 2x2
    /// upper-triangular algebra, cross-checked against the generic engine.
    T2 {
        /// Corner contraction (matrix name); selects the two-sided kind.
        #[arg(long, value_name = "MATRIX", conflicts_with_all = ["kind", "dim"])]
        corner: Option<String>,
        /// One-sided kind: 'b' (first block only), 'c' (second block only),
        /// or 'd' (the zero module).
        #[arg(long, value_name = "B|C|D")]
        kind: Option<String>,
        /// Block dimension for kinds 'b' and 'c'.
        #[arg(long, value_name = "N")]
        dim: Option<usize>,
    },
    /// Reflexive closure of the operator space spanned by matrices.
    ReflClosure {
        /// Comma-separated matrix names spanning the space.
        #[arg(long, value_delimiter = ',', required = true, value_name = "NAMES")]
        mats: Vec<String>,
    },
    /// Randomized hunt for a module matching a property sign pattern.
    Search {
        /// Pattern like "dcp=true,semigen=false"; keys are dcp, semigen,
        /// semicogen, gen, cogen, subtracing.
        #[arg(long, value_name = "PATTERN")]
        target: String,
        /// Maximum number of candidates to try.
        #[arg(long, default_value_t = 500, value_name = "N")]
        budget: usize,
    },
    /// Run every cross-validation criterion and report pass/fail lines.
    Suite,
}

/// Exactly one source for a set of operators.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SetArgs {
    /// Comma-separated names of workspace matrices.
    #[arg(long, value_delimiter = ',', value_name = "NAMES")]
    mats: Option<Vec<String>>,
    /// Name of a workspace algebra; its basis is the operator set.
    #[arg(long, value_name = "NAME")]
    algebra: Option<String>,
    /// Name of a workspace representation; its basis images are the set.
    #[arg(long, value_name = "NAME")]
    rep: Option<String>,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

/// Prints a line, exiting quietly if the reader closed the pipe
/// (e.g. `opalg ... | head`).
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{text}").is_err() {
        std::process::exit(0);
    }
}

struct Ctx {
    ws: Workspace,
    tol: Tolerance,
    seed: u64,
    json: bool,
    strict_cyclic: bool,
}

fn run(cli: Cli) -> Result<i32> {
    let ws = match &cli.workspace {
        Some(path) => Workspace::load(path, cli.tol_rank, cli.tol_match)?,
        None => {
            let d = Tolerance::default();
            Workspace::empty(Tolerance::new(
                cli.tol_rank.unwrap_or(d.rank_rel),
                cli.tol_match.unwrap_or(d.match_abs),
            )?)
        }
    };
    let ctx = Ctx {
        tol: ws.tolerance(),
        ws,
        seed: cli.seed,
        json: cli.json,
        strict_cyclic: cli.strict_cyclic,
    };

    match cli.command {
        Command::Commutant(set) => cmd_commutant(&ctx, &set, false),
        Command::Bicommutant(set) => cmd_commutant(&ctx, &set, true),
        Command::Dcp(set) => cmd_dcp(&ctx, &set),
        Command::Hom { from, to } => cmd_hom(&ctx, &from, &to),
        Command::Trace { from, to } => cmd_trace(&ctx, &from, &to),
        Command::Reject { from, to } => cmd_reject(&ctx, &from, &to),
        Command::Classify {
            module,
            family,
            samples,
        } => cmd_classify(&ctx, &module, &family, samples),
        Command::T2 { corner, kind, dim } => {
            cmd_t2(&ctx, corner.as_deref(), kind.as_deref(), dim)
        }
        Command::ReflClosure { mats } => cmd_refl_closure(&ctx, &mats),
        Command::Search { target, budget } => cmd_search(&ctx, &target, budget),
        Command::Suite => cmd_suite(&ctx),
    }
}

/// Resolves a `SetArgs` into a label and the actual operator list.
fn resolve_set(ctx: &Ctx, set: &SetArgs) -> Result<(String, Vec<CMatrix>)> {
    if let Some(names) = &set.mats {
        let ops = ctx.ws.matrices(names)?;
        Ok((format!("matrices [{}]", names.join(", ")), ops))
    } else if let Some(name) = &set.algebra {
        let alg = ctx.ws.algebra(name)?;
        Ok((format!("algebra '{name}'"), alg.basis_mats().to_vec()))
    } else if let Some(name) = &set.rep {
        let rep = ctx.ws.representation(name)?;
        Ok((format!("representation '{name}'"), rep.images().to_vec()))
    } else {
        Err(Error::InvalidInput(
            "one of --mats, --algebra, --rep is required".into(),
        ))
    }
}

/// Prints the envelope (JSON mode) or the prepared text, returning exit 0.
fn finish(ctx: &Ctx, command: &str, result: serde_json::Value, human: String) -> Result<i32> {
    if ctx.json {
        let envelope = serde_json::json!({
            "command": command,
            "seed": ctx.seed,
            "tolerance": ctx.tol,
            "result": result,
        });
        emit(
            &serde_json::to_string_pretty(&envelope)
                .map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))?,
        );
    } else {
        emit(&human);
    }
    Ok(0)
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<serde_json::Value> {
    serde_json::to_value(v)
        .map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))
}

fn cmd_commutant(ctx: &Ctx, set: &SetArgs, double: bool) -> Result<i32> {
    let (label, ops) = resolve_set(ctx, set)?;
    let space = if double {
        commutant::bicommutant(&ops, ctx.tol)?
    } else {
        commutant::commutant(&ops, ctx.tol)?
    };
    let what = if double { "bicommutant" } else { "commutant" };
    let human = format!(
        "{what} of {label}: dimension {} (operators {}x{})\n{}",
        space.dim(),
        space.rows(),
        space.cols(),
        fmt_basis(space.basis(), "  ")
    );
    finish(ctx, what, to_value(&space)?, human)
}

fn cmd_dcp(ctx: &Ctx, set: &SetArgs) -> Result<i32> {
    let (label, ops) = resolve_set(ctx, set)?;
    let verdict = commutant::dcp_check(&ops, ctx.tol)?;
    let mut human = format!(
        "double-commutant property for {label}: {}\n  span dimension        {}\n  bicommutant dimension {}",
        if verdict.holds { "HOLDS" } else { "FAILS" },
        verdict.span_dim,
        verdict.bicommutant_dim,
    );
    if !verdict.holds {
        human.push_str(&format!(
            "\n  excess (bicommutant outside the span), dimension {}:\n{}",
            verdict.excess.dim(),
            fmt_basis(verdict.excess.basis(), "    ")
        ));
    }
    finish(ctx, "dcp", to_value(&verdict)?, human)
}

fn cmd_hom(ctx: &Ctx, from: &str, to: &str) -> Result<i32> {
    let source = ctx.ws.representation(from)?;
    let target = ctx.ws.representation(to)?;
    let homs = source.intertwiners(target, ctx.tol)?;
    let human = format!(
        "module maps '{from}' -> '{to}': dimension {} (maps are {}x{})\n{}",
        homs.dim(),
        homs.rows(),
        homs.cols(),
        fmt_basis(homs.basis(), "  ")
    );
    finish(ctx, "hom", to_value(&homs)?, human)
}

fn cmd_trace(ctx: &Ctx, from: &str, to: &str) -> Result<i32> {
    let source = ctx.ws.representation(from)?;
    let target = ctx.ws.representation(to)?;
    let trace = target.trace_from(source, ctx.tol)?;
    let human = format!(
        "trace submodule of '{to}' fed by '{from}': dimension {} inside a \
         {}-dimensional module\n{}",
        trace.dim(),
        trace.ambient_dim(),
        fmt_basis(&trace.basis_vectors(), "  ")
    );
    finish(ctx, "trace", to_value(&trace)?, human)
}

fn cmd_reject(ctx: &Ctx, from: &str, to: &str) -> Result<i32> {
    let source = ctx.ws.representation(from)?;
    let target = ctx.ws.representation(to)?;
    let reject = source.reject_into(target, ctx.tol)?;
    let human = format!(
        "reject submodule of '{from}' against '{to}': dimension {} inside a \
         {}-dimensional module\n{}",
        reject.dim(),
        reject.ambient_dim(),
        fmt_basis(&reject.basis_vectors(), "  ")
    );
    finish(ctx, "reject", to_value(&reject)?, human)
}

fn cmd_classify(ctx: &Ctx, module: &str, family: &[String], samples: usize) -> Result<i32> {
    let h = ctx.ws.representation(module)?;
    let mut members = Vec::with_capacity(family.len());
    for name in family {
        members.push((name.clone(), ctx.ws.representation(name)?.clone()));
    }
    let family_id = family.join(",");
    let family = ModuleFamily::from_members(family_id, members, ctx.tol)?;
    let report = classify::property_report(
        h,
        &family,
        samples,
        ctx.strict_cyclic,
        ctx.seed,
        ctx.tol,
    )?;
    let human = fmt_report(module, &report);
    finish(ctx, "classify", to_value(&report)?, human)
}

fn cmd_t2(
    ctx: &Ctx,
    corner: Option<&str>,
    kind: Option<&str>,
    dim: Option<usize>,
) -> Result<i32> {
    let algebra = t2::t2_algebra(ctx.tol)?;
    match (corner, kind) {
        (Some(name), None) => {
            let t = ctx.ws.matrix(name)?;
            let rep = t2::build_t2(&algebra, t, ctx.tol)?;
            let closed = t2::t2_closed_form(t, ctx.tol);
            // Self-tests internally against the kernel engine.
            let comm = t2::t2_commutant_closed_form(&algebra, t, ctx.tol)?;
            let verdict = rep.dcp_verdict(ctx.tol)?;
            if verdict.holds != closed.dcp {
                return Err(Error::Verification(format!(
                    "closed form says collapse={}, engine says collapse={}",
                    closed.dcp, verdict.holds
                )));
            }
            let excess = if verdict.holds {
                None
            } else {
                Some(t2::t2_bicommutant_excess(&algebra, t, ctx.tol)?)
            };

            let mut human = format!(
                "two-block module from corner '{name}' ({}x{}), module dimension {}\n\
                 closed form (verified against the engine):\n\
                 {}\n\
                 engine: span dimension {}, bicommutant dimension {} — collapse {}\n\
                 commutant dimension {}",
                t.rows(),
                t.cols(),
                rep.dim_h(),
                fmt_closed_form(&closed, "  "),
                verdict.span_dim,
                verdict.bicommutant_dim,
                if verdict.holds { "HOLDS" } else { "FAILS" },
                comm.dim(),
            );
            if let Some(z) = &excess {
                human.push_str(&format!(
                    "\nbicommutant element outside the span (inverse corner in \
                     the opposite block):\n{}",
                    fmt_matrix(z, "  ")
                ));
            }
            let result = serde_json::json!({
                "kind": "a",
                "module_dim": rep.dim_h(),
                "closed_form": to_value(&closed)?,
                "dcp": to_value(&verdict)?,
                "commutant": to_value(&comm)?,
                "excess_witness": excess.as_ref().map(to_value).transpose()?,
            });
            finish(ctx, "t2", result, human)
        }
        (None, Some(kind_str)) => {
            let kind = match kind_str.to_ascii_lowercase().as_str() {
                "b" => t2::T2Kind::B,
                "c" => t2::T2Kind::C,
                "d" => t2::T2Kind::D,
                "a" => {
                    return Err(Error::InvalidInput(
                        "kind 'a' is selected by passing --corner".into(),
                    ))
                }
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown kind '{other}' (expected b, c, or d)"
                    )))
                }
            };
            let rep = t2::build_t2_kind(&algebra, kind, None, dim, ctx.tol)?;
            let verdict = rep.dcp_verdict(ctx.tol)?;
            let comm = commutant::commutant(rep.images(), ctx.tol)?;
            let human = format!(
                "two-block module of kind '{}', module dimension {}\n\
                 engine: span dimension {}, bicommutant dimension {} — collapse {}\n\
                 commutant dimension {}",
                kind_str,
                rep.dim_h(),
                verdict.span_dim,
                verdict.bicommutant_dim,
                if verdict.holds { "HOLDS" } else { "FAILS" },
                comm.dim(),
            );
            let result = serde_json::json!({
                "kind": kind_str.to_ascii_lowercase(),
                "module_dim": rep.dim_h(),
                "closed_form": serde_json::Value::Null,
                "dcp": to_value(&verdict)?,
                "commutant": to_value(&comm)?,
                "excess_witness": serde_json::Value::Null,
            });
            finish(ctx, "t2", result, human)
        }
        _ => Err(Error::InvalidInput(
            "pass exactly one of --corner NAME or --kind b|c|d [--dim N]".into(),
        )),
    }
}

fn cmd_refl_closure(ctx: &Ctx, names: &[String]) -> Result<i32> {
    let mats = ctx.ws.matrices(names)?;
    let space = OperatorSubspace::span_of(&mats, ctx.tol)?;
    let closure = families::refl_closure(&space, ctx.tol)?;
    let reflexive = closure.dim() == space.dim();
    let human = format!(
        "reflexive closure of span[{}] ({}x{} operators):\n  input dimension   {}\n  closure dimension {}\n  {}\n{}",
        names.join(", "),
        space.rows(),
        space.cols(),
        space.dim(),
        closure.dim(),
        if reflexive {
            "the space is reflexive (closure adds nothing)"
        } else {
            "the space is NOT reflexive — the closure is strictly larger"
        },
        fmt_basis(closure.basis(), "  ")
    );
    let result = serde_json::json!({
        "input_dim": space.dim(),
        "closure": to_value(&closure)?,
        "reflexive": reflexive,
    });
    finish(ctx, "refl-closure", result, human)
}

fn cmd_search(ctx: &Ctx, target: &str, budget: usize) -> Result<i32> {
    let target = search::SearchTarget::parse(target)?;
    let outcome = search::counterexample_search(&target, ctx.seed, budget, ctx.tol)?;
    let human = match &outcome {
        search::SearchOutcome::Found(hit) => match &hit.details {
            search::HitDetails::TwoBlock { corner, report } => format!(
                "hit after {} candidates: two-block module with corner \
                 ({}x{}):\n{}\n{}",
                hit.attempts,
                corner.rows(),
                corner.cols(),
                fmt_matrix(corner, "  "),
                fmt_report("search hit", report),
            ),
            search::HitDetails::CornerSpace { alphas, flags } => format!(
                "hit after {} candidates: corner-space module with a \
                 {}-operator tuple ({}x{}):\n{}\n  collapse        {}\n  \
                 semigenerator   {}\n  semicogenerator {}\n  sub-tracing     {}",
                hit.attempts,
                alphas.len(),
                alphas[0].rows(),
                alphas[0].cols(),
                alphas
                    .iter()
                    .map(|a| fmt_matrix(a, "  "))
                    .collect::<Vec<_>>()
                    .join("\n  --\n"),
                yes_no(flags.dcp),
                yes_no(flags.semigenerator),
                yes_no(flags.semicogenerator),
                fmt_flag(flags.subtracing),
            ),
        },
        search::SearchOutcome::Exhausted { attempts } => format!(
            "no module matching the pattern in {attempts} candidates \
             (the pattern may be unsatisfiable, or a larger --budget may help)"
        ),
    };
    finish(ctx, "search", to_value(&outcome)?, human)
}

fn cmd_suite(ctx: &Ctx) -> Result<i32> {
    let report = suite::run_all(ctx.seed, ctx.tol)?;
    if ctx.json {
        let envelope = serde_json::json!({
            "command": "suite",
            "seed": ctx.seed,
            "tolerance": ctx.tol,
            "result": to_value(&report)?,
        });
        emit(
            &serde_json::to_string_pretty(&envelope)
                .map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))?,
        );
    } else {
        for c in &report.outcomes {
            emit(&format!(
                "{} criterion {:>2}: {} ({:.1}s) — {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.name,
                c.seconds,
                c.details,
            ));
        }
        emit(&format!(
            "{} — {} of {} criteria passed in {:.1}s (seed {})",
            if report.all_pass { "ALL PASS" } else { "FAILURES" },
            report.outcomes.iter().filter(|c| c.pass).count(),
            report.outcomes.len(),
            report.seconds,
            report.seed,
        ));
    }
    Ok(if report.all_pass { 0 } else { 1 })
}

// ---------------------------------------------------------------- formatting

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fmt_flag(f: Flag) -> &'static str {
    match f {
        Flag::True => "yes",
        Flag::False => "no",
        Flag::EvidenceTrue => "yes (sampled evidence)",
    }
}

fn fmt_report(module: &str, r: &PropertyReport) -> String {
    let mut out = format!(
        "report for '{module}' against family [{}] (seed {})\n  \
         module dimension  {}\n  algebra dimension {}\n  \
         faithful          {}\n  nondegenerate     {}\n  \
         collapse (span = bicommutant)  {}  [span {}, bicommutant {}]\n  \
         semigenerator     {}\n  semicogenerator   {}\n  \
         generator         {}\n  cogenerator       {}\n  \
         sub-tracing       {}",
        r.family_id,
        r.seed,
        r.dim_h,
        r.algebra_dim,
        yes_no(r.faithful),
        yes_no(r.nondegenerate),
        fmt_flag(r.dcp),
        r.dcp_verdict.span_dim,
        r.dcp_verdict.bicommutant_dim,
        fmt_flag(r.semigenerator),
        fmt_flag(r.semicogenerator),
        fmt_flag(r.generator),
        fmt_flag(r.cogenerator),
        fmt_flag(r.subtracing),
    );
    for note in &r.notes {
        out.push_str(&format!("\n  note: {note}"));
    }
    out
}

fn fmt_closed_form(c: &t2::T2ClosedForm, indent: &str) -> String {
    format!(
        "{indent}collapse {} | semigenerator {} | semicogenerator {} | \
         generator {} | cogenerator {} | sub-tracing {}",
        yes_no(c.dcp),
        yes_no(c.semigenerator),
        yes_no(c.semicogenerator),
        yes_no(c.generator),
        yes_no(c.cogenerator),
        yes_no(c.subtracing),
    )
}

fn fmt_complex(z: Complex64) -> String {
    if z.im.abs() < 5e-13 {
        format!("{:.4}", z.re)
    } else if z.re.abs() < 5e-13 {
        format!("{:.4}i", z.im)
    } else if z.im < 0.0 {
        format!("{:.4}-{:.4}i", z.re, -z.im)
    } else {
        format!("{:.4}+{:.4}i", z.re, z.im)
    }
}

fn fmt_matrix(m: &CMatrix, indent: &str) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("{indent}[ ] ({}x{})", m.rows(), m.cols());
    }
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| fmt_complex(m.at(i, j))).collect())
        .collect();
    let mut widths = vec![0usize; m.cols()];
    for row in &cells {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
    }
    cells
        .iter()
        .map(|row| {
            let line = row
                .iter()
                .enumerate()
                .map(|(j, cell)| format!("{cell:>width$}", width = widths[j]))
                .collect::<Vec<_>>()
                .join("  ");
            format!("{indent}[ {line} ]")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn fmt_basis(mats: &[CMatrix], indent: &str) -> String {
    if mats.is_empty() {
        return format!("{indent}(zero space)");
    }
    if mats.len() > 8 {
        return format!(
            "{indent}({} basis elements — rerun with --json for the full list)",
            mats.len()
        );
    }
    mats.iter()
        .enumerate()
        .map(|(i, m)| format!("{indent}basis[{i}]\n{}", fmt_matrix(m, &format!("{indent}  "))))
        .collect::<Vec<_>>()
        .join("\n")
}
