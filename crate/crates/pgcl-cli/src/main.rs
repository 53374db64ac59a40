//! `pgcl` — batch interface for the Cameron-Liebler line-class toolkit:
//! the modular gate, admissible patterns, the full feasibility pipeline,
//! the reconstruction searches, class verification and the catalog.
//!
//! Exit codes: 0 = completed (whatever the verdict), 2 = a budget ran out
//! (inconclusive), 1 = usage or internal error.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use pgcl::classes::equiv::{equivalent, EquivOutcome};
use pgcl::classes::io::{read_pgcl, write_pgcl, VerifyReport};
use pgcl::classes::{ab_set_parameters, catalog, pattern_census, verify_cl, weight_profile};
use pgcl::countsys::build_system;
use pgcl::feasibility::Budget;
use pgcl::patterns::{
    generate_patterns, modular_solutions, modular_solutions_all, weight_sets, Membership,
};
use pgcl::pipeline::{run_pipeline, RunReport, Verdict};
use pgcl::projgeom::build_geometry;
use pgcl::reconstruct::bset::{constraint_from_solution, search_quotient_bsets};
use pgcl::reconstruct::x12::search_x12;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pgcl", version, about)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Node budget for exhaustive solvers.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget_nodes: u64,
    /// Wall-clock budget in seconds for exhaustive solvers.
    #[arg(long, global = true)]
    budget_secs: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write the primary output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The modular existence gate: admissible parameters for an order, or
    /// the base weight solutions of one (q, x).
    Admissible(AdmissibleArgs),
    /// Generate the admissible patterns for (q, x).
    Patterns(ParamArgs),
    /// Run the full feasibility pipeline for (q, x).
    Pipeline(ParamArgs),
    /// The x=12 reconstruction search in PG(3,5).
    SearchX12,
    /// The quotient-plane point-set searches for the x=13 first group.
    SearchBset(BsetArgs),
    /// Verify a line-class file.
    Verify(FileArgs),
    /// Decide projective equivalence of two line-class files.
    Equiv(EquivArgs),
    /// Two-intersection set parameters in PG(n,q).
    Absets(AbsetArgs),
    /// Write the catalog of known classes as PGCL files and verify them.
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct AdmissibleArgs {
    #[arg(long)]
    q: u16,
    #[arg(long)]
    x: Option<u32>,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    q: u16,
    #[arg(long)]
    x: u32,
}

#[derive(Args)]
struct BsetArgs {
    /// Which pattern-count solution drives the constraint (1 or 2).
    #[arg(long, default_value_t = 1)]
    solution: usize,
}

#[derive(Args)]
struct FileArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Field order of the ambient geometry.
    #[arg(long, default_value_t = 5)]
    q: u16,
}

#[derive(Args)]
struct EquivArgs {
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    right: PathBuf,
    #[arg(long, default_value_t = 5)]
    q: u16,
}

#[derive(Args)]
struct AbsetArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u16,
}

#[derive(Args)]
struct CatalogArgs {
    /// Output directory for the class files.
    #[arg(long, default_value = "catalog")]
    dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own message; map usage problems to exit 1
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if cli.threads > 0 {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global()
        {
            eprintln!("failed to configure thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, text: String) -> Result<()> {
    match &cli.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path).context("creating output file")?);
            f.write_all(text.as_bytes())?;
            f.write_all(b"\n")?;
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn budget(cli: &Cli) -> Budget {
    Budget { max_nodes: cli.budget_nodes, max_secs: cli.budget_secs }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Admissible(a) => admissible(cli, a),
        Command::Patterns(a) => patterns_cmd(cli, a),
        Command::Pipeline(a) => pipeline_cmd(cli, a),
        Command::SearchX12 => search_x12_cmd(cli),
        Command::SearchBset(a) => bset_cmd(cli, a),
        Command::Verify(a) => verify_cmd(cli, a),
        Command::Equiv(a) => equiv_cmd(cli, a),
        Command::Absets(a) => absets_cmd(cli, a),
        Command::Catalog(a) => catalog_cmd(cli, a),
    }
}

fn admissible(cli: &Cli, a: &AdmissibleArgs) -> Result<ExitCode> {
    let q = a.q;
    let out = match a.x {
        Some(x) => {
            let base = modular_solutions(q, x);
            let all = modular_solutions_all(q, x);
            if cli.json {
                serde_json::json!({
                    "q": q, "x": x,
                    "solutions": all,
                    "base_solutions": base,
                    "admissible": !base.is_empty(),
                })
                .to_string()
            } else {
                format!(
                    "q={q} x={x}: solutions n = {all:?}, base solutions = {base:?} -> {}",
                    if base.is_empty() { "rejected" } else { "admissible" }
                )
            }
        }
        None => {
            let max_x = (q as u32 * q as u32 + 1) / 2;
            let admissible: Vec<u32> =
                (0..=max_x).filter(|&x| !modular_solutions(q, x).is_empty()).collect();
            if cli.json {
                serde_json::json!({"q": q, "max_x": max_x, "admissible": admissible})
                    .to_string()
            } else {
                format!("q={q}: admissible x in 0..={max_x}: {admissible:?}")
            }
        }
    };
    emit(cli, out)?;
    Ok(ExitCode::SUCCESS)
}

fn patterns_cmd(cli: &Cli, a: &ParamArgs) -> Result<ExitCode> {
    let (q, x) = (a.q, a.x);
    let mut text = String::new();
    let mut json_groups = Vec::new();
    for n in modular_solutions(q, x) {
        let sets = weight_sets(q, x, n).map_err(|e| anyhow!("{e}"))?;
        let pin = generate_patterns(q, x, Membership::In, &sets);
        let pout = generate_patterns(q, x, Membership::Out, &sets);
        if cli.json {
            json_groups.push(serde_json::json!({
                "n_base": n,
                "point_weights": sets.point_weights,
                "plane_weights": sets.plane_weights,
                "class_patterns": pin,
                "complement_patterns": pout,
            }));
        } else {
            text.push_str(&format!(
                "q={q} x={x} n={n}: N={:?} M={:?}\n{} class-line patterns, {} complement patterns\n",
                sets.point_weights,
                sets.plane_weights,
                pin.len(),
                pout.len()
            ));
            for (k, p) in pin.iter().chain(pout.iter()).enumerate() {
                text.push_str(&format!(
                    "T{} ({}):\n{}\n",
                    k + 1,
                    match p.membership {
                        Membership::In => "class line",
                        Membership::Out => "complement line",
                    },
                    p.render()
                ));
            }
        }
    }
    if cli.json {
        emit(cli, serde_json::json!({"q": q, "x": x, "groups": json_groups}).to_string())?;
    } else {
        emit(cli, text.trim_end().to_string())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn render_report(r: &RunReport) -> String {
    let mut s = format!(
        "pipeline q={} x={}: verdict {:?} ({} solutions) in {} ms\n",
        r.q, r.x, r.verdict, r.total_solutions, r.elapsed_ms
    );
    if r.modular_base_solutions.is_empty() {
        s.push_str("  modular equality has no solution\n");
    }
    for g in &r.groups {
        s.push_str(&format!(
            "  group n={}: N={:?} M={:?}\n    patterns {}/{}  equations {}  rank {}  zero constraints {} (reduced form {} rows)\n",
            g.n_base,
            g.point_weights,
            g.plane_weights,
            g.patterns_in,
            g.patterns_out,
            g.equations,
            g.rank,
            g.zero_constraints,
            g.reduced_equations,
        ));
        for note in &g.notes {
            s.push_str(&format!("    note: {note}\n"));
        }
        if !g.distributions.is_empty() {
            s.push_str(&format!(
                "    weight candidates: {}  solutions: {}\n",
                g.distributions.len(),
                g.solutions.len()
            ));
        }
        for (k, sol) in g.solutions.iter().enumerate() {
            let d = &g.distributions[sol.distribution_index];
            s.push_str(&format!(
                "    #{} n = {:?}\n       m = {:?}\n       z = {:?} (first {} class-line patterns)\n",
                k + 1,
                d.point_vector(),
                d.plane_vector(),
                sol.z,
                g.patterns_in,
            ));
        }
        if let Some(rep) = &g.inconclusive {
            s.push_str(&format!(
                "    INCONCLUSIVE: {} of {} nodes used, {:.1}s elapsed\n",
                rep.nodes_used, rep.max_nodes, rep.elapsed_secs
            ));
        }
    }
    s.trim_end().to_string()
}

fn pipeline_cmd(cli: &Cli, a: &ParamArgs) -> Result<ExitCode> {
    let max_x = (a.q as u32 * a.q as u32 + 1) / 2;
    if a.x > max_x {
        return Err(anyhow!(
            "x = {} out of range: complements cover x <= {max_x} for q = {}",
            a.x,
            a.q
        ));
    }
    let report = run_pipeline(a.q, a.x, &budget(cli));
    let text = if cli.json {
        serde_json::to_string_pretty(&report.to_json())?
    } else {
        render_report(&report)
    };
    emit(cli, text)?;
    Ok(if report.verdict == Verdict::Inconclusive {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn search_x12_cmd(cli: &Cli) -> Result<ExitCode> {
    let g3 = build_geometry(3, 5).map_err(|e| anyhow!("{e}"))?;
    let g2 = build_geometry(2, 5).map_err(|e| anyhow!("{e}"))?;
    let out = search_x12(&g3, &g2);
    let mut lines = Vec::new();
    for cl in &out.classes {
        let x = verify_cl(&g3, cl).map_err(|e| anyhow!("search returned a non-class: {e}"))?;
        let mut buf = Vec::new();
        write_pgcl(&mut buf, &g3, cl, x)?;
        lines.push(String::from_utf8(buf)?);
    }
    let text = if cli.json {
        serde_json::json!({
            "stage_counts": out.stage_counts,
            "completions": out.completions,
            "classes": lines,
        })
        .to_string()
    } else {
        format!(
            "stage candidates: {:?}\ncompleted: {} (distinct classes: {})\n{}",
            out.stage_counts,
            out.completions,
            out.classes.len(),
            lines.join("\n")
        )
    };
    emit(cli, text)?;
    Ok(ExitCode::SUCCESS)
}

fn bset_cmd(cli: &Cli, a: &BsetArgs) -> Result<ExitCode> {
    let g2 = build_geometry(2, 5).map_err(|e| anyhow!("{e}"))?;
    let sets = weight_sets(5, 13, 0).map_err(|e| anyhow!("{e}"))?;
    let bundle = build_system(&sets);
    let report = run_pipeline(5, 13, &budget(cli));
    // group 1 is the n=0 group; pick its pattern-count solutions that force
    // a distinguished pattern (count one on the class side)
    let group = report
        .groups
        .iter()
        .find(|g| g.n_base == 0)
        .ok_or_else(|| anyhow!("x=13 group 1 missing"))?;
    let candidates: Vec<&pgcl::pipeline::ZSolutionReport> = group
        .solutions
        .iter()
        .filter(|s| {
            constraint_from_solution(&bundle, &s.z).unique_row.is_some()
        })
        .collect();
    let idx = a.solution.checked_sub(1).ok_or_else(|| anyhow!("solutions number from 1"))?;
    let sol = candidates
        .get(idx)
        .ok_or_else(|| anyhow!("only {} searchable solutions", candidates.len()))?;
    let constraint = constraint_from_solution(&bundle, &sol.z);
    let found = search_quotient_bsets(&g2, &constraint);
    let text = if cli.json {
        serde_json::json!({
            "solution": a.solution,
            "target": constraint.target,
            "selected_rows": constraint.selected_rows,
            "unselected_rows": constraint.unselected_rows,
            "unique_row": constraint.unique_row,
            "sets_found": found,
        })
        .to_string()
    } else {
        format!(
            "solution #{}: {} admissible point sets found{}",
            a.solution,
            found.len(),
            if found.is_empty() { " (none exist)" } else { "" }
        )
    };
    emit(cli, text)?;
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(cli: &Cli, a: &FileArgs) -> Result<ExitCode> {
    let g = build_geometry(3, a.q).map_err(|e| anyhow!("{e}"))?;
    let f = BufReader::new(File::open(&a.input).context("opening class file")?);
    let (cl, declared_x) = read_pgcl(f, &g).map_err(|e| anyhow!("{e}"))?;
    let report = match verify_cl(&g, &cl) {
        Ok(x) => {
            if x != declared_x {
                return Err(anyhow!("file declares x={declared_x} but the class has x={x}"));
            }
            VerifyReport::CameronLiebler { q: a.q, x, size: cl.size() }
        }
        Err(e) => VerifyReport::NotCameronLiebler {
            q: a.q,
            size: cl.size(),
            reason: e.to_string(),
        },
    };
    let text = if cli.json {
        serde_json::to_string(&report)?
    } else {
        match &report {
            VerifyReport::CameronLiebler { x, size, .. } => {
                let (pts, pls) = weight_profile(&g, &cl);
                format!(
                    "Cameron-Liebler class: x = {x}, {size} lines\npoint weights {pts:?}\nplane weights {pls:?}"
                )
            }
            VerifyReport::NotCameronLiebler { reason, .. } => {
                format!("not a Cameron-Liebler class: {reason}")
            }
        }
    };
    emit(cli, text)?;
    Ok(ExitCode::SUCCESS)
}

fn equiv_cmd(cli: &Cli, a: &EquivArgs) -> Result<ExitCode> {
    let g = build_geometry(3, a.q).map_err(|e| anyhow!("{e}"))?;
    let (left, _) = read_pgcl(BufReader::new(File::open(&a.left)?), &g).map_err(|e| anyhow!("{e}"))?;
    let (right, _) =
        read_pgcl(BufReader::new(File::open(&a.right)?), &g).map_err(|e| anyhow!("{e}"))?;
    let outcome = equivalent(&g, &left, &right, &budget(cli));
    let (text, code) = match &outcome {
        EquivOutcome::Equivalent(c) => (
            if cli.json {
                serde_json::json!({
                    "equivalent": true,
                    "matrix": c.matrix,
                    "frobenius": c.frobenius,
                })
                .to_string()
            } else {
                format!(
                    "equivalent via matrix {:?} (frobenius power {})",
                    c.matrix, c.frobenius
                )
            },
            ExitCode::SUCCESS,
        ),
        EquivOutcome::NotEquivalent => (
            if cli.json {
                serde_json::json!({"equivalent": false}).to_string()
            } else {
                "not equivalent".to_string()
            },
            ExitCode::SUCCESS,
        ),
        EquivOutcome::Inconclusive(rep) => (
            if cli.json {
                serde_json::json!({"equivalent": null, "budget": {
                    "nodes_used": rep.nodes_used, "max_nodes": rep.max_nodes,
                }})
                .to_string()
            } else {
                format!("inconclusive: budget exhausted after {} nodes", rep.nodes_used)
            },
            ExitCode::from(2),
        ),
    };
    emit(cli, text)?;
    Ok(code)
}

fn absets_cmd(cli: &Cli, a: &AbsetArgs) -> Result<ExitCode> {
    let mut rows = Vec::new();
    for eps in [-1, 1] {
        for delta in [-1, 1] {
            let p = ab_set_parameters(a.n, a.q, eps, delta).map_err(|e| anyhow!("{e}"))?;
            rows.push(p);
        }
    }
    let text = if cli.json {
        serde_json::to_string(&rows)?
    } else {
        let mut s = format!("two-intersection sets in PG({},{}):\n", a.n, a.q);
        s.push_str("eps delta    a    b      size   b-secants  class parameter\n");
        for p in &rows {
            s.push_str(&format!(
                "{:>3} {:>5} {:>4} {:>4} {:>9} {:>11} {:>16}\n",
                p.epsilon,
                p.delta,
                p.a,
                p.b,
                p.size,
                p.b_secants,
                p.cl_parameter.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
            ));
        }
        s.trim_end().to_string()
    };
    emit(cli, text)?;
    Ok(ExitCode::SUCCESS)
}

fn catalog_cmd(cli: &Cli, a: &CatalogArgs) -> Result<ExitCode> {
    std::fs::create_dir_all(&a.dir).context("creating catalog directory")?;
    let mut entries = Vec::new();
    for k in catalog::KnownClass::all() {
        let g = build_geometry(3, k.q()).map_err(|e| anyhow!("{e}"))?;
        let cl = catalog::load_known(&g, k);
        let x = verify_cl(&g, &cl).map_err(|e| anyhow!("catalog entry {k:?} broken: {e}"))?;
        let name = format!("{k:?}").to_lowercase();
        let path = a.dir.join(format!("{name}.pgcl"));
        let f = BufWriter::new(File::create(&path)?);
        write_pgcl(f, &g, &cl, x)?;
        // census sanity against the counting system
        let sets = weight_sets(k.q(), x, {
            // base solution of the class's own weight residues
            let w = pgcl::classes::point_weights(&g, &cl);
            let n = w[0] % (k.q() as u32 + 1);
            let partner = (x as i64 - n as i64).rem_euclid(k.q() as i64 + 1) as u32;
            n.min(partner)
        })
        .map_err(|e| anyhow!("{e}"))?;
        let bundle = build_system(&sets);
        let census_ok = pattern_census(&g, &cl, &bundle).is_some();
        entries.push(serde_json::json!({
            "name": name,
            "q": k.q(),
            "x": x,
            "lines": cl.size(),
            "file": path.display().to_string(),
            "census_within_admissible_patterns": census_ok,
        }));
    }
    let text = if cli.json {
        serde_json::json!({"classes": entries}).to_string()
    } else {
        let mut s = String::from("catalog written:\n");
        for e in &entries {
            s.push_str(&format!(
                "  {} (q={}, x={}, {} lines) -> {}\n",
                e["name"].as_str().unwrap(),
                e["q"],
                e["x"],
                e["lines"],
                e["file"].as_str().unwrap()
            ));
        }
        s.trim_end().to_string()
    };
    emit(cli, text)?;
    Ok(ExitCode::SUCCESS)
}
