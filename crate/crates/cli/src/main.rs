mod explore;
mod input;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use specker600::catalog::{Catalog, CatalogDoc};
use specker600::coloring::{parity_certificate, ColoringError, ColoringProblem, Solver, Verdict, DEFAULT_NODE_LIMIT};
use specker600::critical::{
    complementary_pair_table, complementary_pairs, enumerate_critical_sets, highlighted_set_table, verify_records,
    ChainKind, VerifyMode,
};
use specker600::inequality::{branch_and_bound, gap_report, quantum_value, InequalityInstance};
use specker600::lines::LineGeometry;
use specker600::peres::PeresSystem;
use specker600::symmetry::{galois_map, verify_period5_generators, SymmetryGroup};
use specker600::{build_catalog, RaySet, RaySystem};

#[derive(Parser, Debug)]
#[command(name = "specker600", version, about = "Exact verification of Kochen-Specker sets in the 600-cell")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "SPECKER600_THREADS", default_value_t = 0)]
    threads: usize,
    /// Search nodes allowed per solver call before giving up as undecided.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_LIMIT)]
    node_limit: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write content output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemChoice {
    Cell600,
    Peres,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InstanceChoice {
    #[value(name = "30ray")]
    ThirtyRay,
    #[value(name = "peres18")]
    Peres18,
    #[value(name = "full60")]
    Full60,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Sweep,
    Bnb,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The 60 numbered rays and 75 bases.
    Catalog,
    /// The 10x10 grid of dual line pairs.
    Lines,
    /// The symmetry group and its action.
    Symmetry {
        /// Report the group order and closure check.
        #[arg(long)]
        order: bool,
        /// Check the row- and column-cycling generators.
        #[arg(long)]
        verify_generators: bool,
        /// Orbit of a ray set (comma list or file).
        #[arg(long)]
        orbit: Option<String>,
        /// Check the coordinate conjugation map against the group.
        #[arg(long)]
        galois: bool,
    },
    /// Decide whether a ray set admits a coloring.
    Solve {
        /// Ray ids as a comma list, ranges like 1-12, or a file.
        #[arg(long)]
        rays: String,
        /// `all` (every surviving orthogonal pair excluded), `intact`
        /// (constraints only from intact bases), or a file of bases.
        #[arg(long, default_value = "all")]
        bases: String,
        #[arg(long, value_enum, default_value_t = SystemChoice::Cell600)]
        system: SystemChoice,
        /// Also emit a proof tree when uncolorable.
        #[arg(long)]
        proof_tree: bool,
    },
    /// The 30- and 36-ray critical set families.
    Critical {
        #[arg(long, value_parser = ["30", "36"])]
        size: String,
        /// List the distinct sets with their chain provenance (default).
        #[arg(long)]
        enumerate: bool,
        /// Verify census, parity and criticality of every set.
        #[arg(long)]
        verify_all: bool,
        /// With --verify-all, delete one ray per stabilizer orbit only.
        #[arg(long)]
        fast: bool,
        /// Cell table of the first set with its bases or rays marked.
        #[arg(long)]
        facsimile: bool,
    },
    /// The 24-ray Peres system.
    Peres {
        #[arg(long, value_parser = ["18", "20"])]
        criticals: Option<String>,
    },
    /// Classical and quantum values of the parity inequality.
    Inequality {
        #[arg(long, value_enum)]
        instance: InstanceChoice,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Run every check and print a pass/fail checklist.
    VerifyAll {
        /// Sampled criticality: one deletion per stabilizer orbit.
        #[arg(long)]
        fast: bool,
        /// Load the ray catalog from a catalog JSON document.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Conjecture exploration: random search for critical sets outside the chain construction.
    Explore {
        /// Size of the random starting subsets.
        #[arg(long, default_value_t = 54)]
        start: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Run {
    format: Format,
    solver: Solver,
    text: String,
    code: u8,
}

impl Run {
    fn emit_json<T: Serialize>(&mut self, value: &T) -> Result<()> {
        self.text.push_str(&serde_json::to_string_pretty(value)?);
        self.text.push('\n');
        Ok(())
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut run = Run { format: cli.format, solver: Solver::new(cli.node_limit), text: String::new(), code: 0 };
    let result = pool.install(|| dispatch(&cli.command, &mut run));
    if let Err(e) = write_output(cli.output.as_ref(), &run.text) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match result {
        Ok(()) => ExitCode::from(run.code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if run.code == 0 { 2 } else { run.code })
        }
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn dispatch(cmd: &Command, run: &mut Run) -> Result<()> {
    match cmd {
        Command::Catalog => catalog_cmd(run),
        Command::Lines => lines_cmd(run),
        Command::Symmetry { order, verify_generators, orbit, galois } => {
            symmetry_cmd(run, *order, *verify_generators, orbit.as_deref(), *galois)
        }
        Command::Solve { rays, bases, system, proof_tree } => solve_cmd(run, rays, bases, *system, *proof_tree),
        Command::Critical { size, enumerate: _, verify_all, fast, facsimile } => {
            let kind = if size == "30" { ChainKind::Cycle5 } else { ChainKind::Bipartite23 };
            critical_cmd(run, kind, *verify_all, *fast, *facsimile)
        }
        Command::Peres { criticals } => peres_cmd(run, criticals.as_deref()),
        Command::Inequality { instance, method } => inequality_cmd(run, *instance, *method),
        Command::VerifyAll { fast, catalog } => verify_cmd(run, *fast, catalog.as_ref()),
        Command::Explore { start, samples, seed } => explore::run(run, *start, *samples, *seed),
    }
}

fn catalog_cmd(run: &mut Run) -> Result<()> {
    let cat = build_catalog()?;
    match run.format {
        Format::Json => run.emit_json(&cat.to_doc()),
        Format::Table => {
            let rays = cat.ray_table_text();
            let bases = cat.basis_table_text(&|_, id| id.to_string());
            run.line(rays);
            run.text.push_str(&bases);
            Ok(())
        }
    }
}

fn lines_cmd(run: &mut Run) -> Result<()> {
    let cat = build_catalog()?;
    let grid = LineGeometry::build(&cat)?;
    match run.format {
        Format::Json => run.emit_json(&grid.dual_pairs()),
        Format::Table => {
            run.text.push_str(&grid.grid_text());
            Ok(())
        }
    }
}

fn symmetry_cmd(run: &mut Run, order: bool, generators: bool, orbit: Option<&str>, galois: bool) -> Result<()> {
    let cat = build_catalog()?;
    let group = SymmetryGroup::generate(&cat)?;
    let order = order || !(generators || orbit.is_some() || galois);
    let mut report = serde_json::Map::new();
    if order {
        let closure = group.check_closure();
        report.insert(
            "order".into(),
            json!({
                "signedMaps": group.signed_map_count(),
                "permutations": group.len(),
                "closed": closure.is_closed(),
                "products": closure.products,
            }),
        );
    }
    if generators {
        report.insert("generators".into(), serde_json::to_value(verify_period5_generators(&cat, &group)?)?);
    }
    if let Some(spec) = orbit {
        let seed = input::parse_ray_set(spec, 60)?;
        let orbit = group.orbit_of(seed);
        let members: Vec<Vec<u8>> = orbit.members.iter().map(|s| s.to_vec()).collect();
        report.insert(
            "orbit".into(),
            json!({ "size": members.len(), "stabilizerOrder": orbit.stabilizer_order, "members": members }),
        );
    }
    if galois {
        let g = galois_map(&cat)?;
        let bases: Vec<RaySet> = cat.bases().iter().map(|b| b.mask()).collect();
        report.insert(
            "galois".into(),
            match g {
                Some(g) => json!({
                    "permutesRays": true,
                    "preservesBases": bases.iter().all(|b| bases.contains(&g.apply_set(*b))),
                    "inGroup": group.contains(&g),
                }),
                None => json!({ "permutesRays": false }),
            },
        );
    }
    match run.format {
        Format::Json => run.emit_json(&report),
        Format::Table => {
            for (k, v) in &report {
                match (k.as_str(), v) {
                    ("orbit", v) => {
                        run.line(format!("orbit: size {}, stabilizer order {}", v["size"], v["stabilizerOrder"]));
                        for m in v["members"].as_array().into_iter().flatten() {
                            let ids: Vec<String> =
                                m.as_array().into_iter().flatten().map(|x| x.to_string()).collect();
                            run.line(ids.join(","));
                        }
                    }
                    ("generators", serde_json::Value::Array(gens)) => {
                        for g in gens {
                            run.line(format!(
                                "generator {}: in group {}, order {}, {} cycles, shifts grid {} ({})",
                                g["name"].as_str().unwrap_or(""),
                                g["in_group"],
                                g["order"],
                                g["cycle_lengths"].as_array().map(|a| a.len()).unwrap_or(0),
                                g["cycles_grid"],
                                g["shift"].as_str().unwrap_or(""),
                            ));
                        }
                    }
                    (k, v) => run.line(format!("{k}: {v}")),
                }
            }
            Ok(())
        }
    }
}

fn solve_cmd(run: &mut Run, rays: &str, bases: &str, choice: SystemChoice, want_tree: bool) -> Result<()> {
    let peres;
    let cat;
    let system: &RaySystem = match choice {
        SystemChoice::Cell600 => {
            cat = build_catalog()?;
            cat.system()
        }
        SystemChoice::Peres => {
            peres = PeresSystem::build()?;
            peres.system()
        }
    };
    let subset = input::parse_ray_set(rays, system.len())?;
    let problem = match bases {
        "all" => ColoringProblem::standard(system, subset)?,
        "intact" => ColoringProblem::restricted(system, subset, &system.intact_bases(subset))?,
        file => ColoringProblem::restricted(system, subset, &input::parse_basis_file(file, system)?)?,
    };
    let verdict = match run.solver.solve(&problem) {
        Ok(v) => v,
        Err(ColoringError::Undecided(n)) => {
            run.code = 2;
            match run.format {
                Format::Json => run.emit_json(&json!({ "verdict": "undecided", "nodes": n }))?,
                Format::Table => run.line(format!("undecided after {n} nodes")),
            }
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let tree = if want_tree && !verdict.is_colorable() { Some(run.solver.proof_tree(&problem)?) } else { None };
    run.code = if verdict.is_colorable() { 0 } else { 1 };
    match run.format {
        Format::Json => run.emit_json(&json!({
            "rays": subset,
            "requiredBases": problem.required_bases().len(),
            "result": verdict,
            "proofTree": tree,
        })),
        Format::Table => {
            run.line(format!("rays: {} ({})", subset, subset.len()));
            run.line(format!("required bases: {}", problem.required_bases().len()));
            match &verdict {
                Verdict::Colorable { witness, .. } => run.line(format!("colorable; green: {}", witness.green)),
                Verdict::Uncolorable { certificates } => {
                    run.line("uncolorable");
                    if let Some(p) = parity_certificate(system, subset).filter(|_| bases == "all") {
                        run.line(format!(
                            "parity: {} intact bases, every ray an even number of times",
                            p.bases.len()
                        ));
                    }
                    for c in certificates {
                        if let specker600::coloring::Certificate::Exhaustion(s) = c {
                            run.line(format!("search: {} nodes, {} dead ends", s.nodes, s.dead_ends));
                        }
                    }
                }
            }
            if let Some(t) = tree {
                run.line(format!("proof tree ({} leaves):", t.leaves()));
                run.text.push_str(&t.render(system));
            }
            Ok(())
        }
    }
}

fn critical_cmd(run: &mut Run, kind: ChainKind, verify: bool, fast: bool, facsimile: bool) -> Result<()> {
    let cat = build_catalog()?;
    let grid = LineGeometry::build(&cat)?;
    let records = enumerate_critical_sets(&grid, kind);
    if facsimile {
        return facsimile_out(run, &cat, kind, records[0].rays);
    }
    if verify {
        let group;
        let mode = if fast {
            group = SymmetryGroup::generate(&cat)?;
            VerifyMode::Fast(&group)
        } else {
            VerifyMode::Full
        };
        let checks = verify_records(&run.solver, &cat, &records, mode)?;
        let all = checks.iter().all(|c| c.critical);
        if !all {
            run.code = 1;
        }
        return match run.format {
            Format::Json => run.emit_json(&json!({ "allCritical": all, "sets": checks })),
            Format::Table => {
                for (i, c) in checks.iter().enumerate() {
                    run.line(format!(
                        "{}\t{}\tcensus {:?}\tparity {}\tcritical {} ({} deletions)",
                        i + 1,
                        c.rays,
                        c.census,
                        c.parity,
                        c.critical,
                        c.deletions_checked
                    ));
                }
                run.line(format!("{} sets, all critical: {all}", checks.len()));
                Ok(())
            }
        };
    }
    match run.format {
        Format::Json => {
            let pairs = if kind == ChainKind::Cycle5 { complementary_pairs(&records) } else { Vec::new() };
            run.emit_json(&json!({ "sets": records, "complementaryPairs": pairs }))
        }
        Format::Table => {
            for (i, r) in records.iter().enumerate() {
                let prov: Vec<String> = r.provenance.iter().map(|p| p.to_string()).collect();
                run.line(format!("{}\t{}\t{}", i + 1, r.rays, prov.join("; ")));
            }
            Ok(())
        }
    }
}

fn facsimile_out(run: &mut Run, cat: &Catalog, kind: ChainKind, set: RaySet) -> Result<()> {
    let complement = RaySet::full(60) - set;
    match run.format {
        Format::Table => {
            let text = match kind {
                ChainKind::Cycle5 => complementary_pair_table(cat, set, complement),
                ChainKind::Bipartite23 => highlighted_set_table(cat, set),
            };
            run.text.push_str(&text);
            Ok(())
        }
        Format::Json => {
            let cells: Vec<_> = cat
                .cells()
                .iter()
                .map(|c| {
                    let bases: Vec<_> = c
                        .bases
                        .iter()
                        .map(|&i| {
                            let b = cat.bases()[i];
                            json!({
                                "rays": b.ids(),
                                "members": b.ids().map(|id| set.contains(id)),
                                "inSet": b.mask().is_subset(set),
                                "inComplement": b.mask().is_subset(complement),
                            })
                        })
                        .collect();
                    json!({ "cell": c.label, "bases": bases })
                })
                .collect();
            run.emit_json(&json!({ "set": set, "cells": cells }))
        }
    }
}

fn peres_cmd(run: &mut Run, which: Option<&str>) -> Result<()> {
    let p = PeresSystem::build()?;
    let sys = p.system();
    let (c18, c20) = match which {
        Some("18") => (Some(p.criticals_18(&run.solver)?), None),
        Some(_) => (None, Some(p.criticals_20(&run.solver)?)),
        None => (Some(p.criticals_18(&run.solver)?), Some(p.criticals_20(&run.solver)?)),
    };
    match run.format {
        Format::Json => run.emit_json(&json!({
            "rays": sys.len(),
            "bases": sys.bases().len(),
            "dualPairs": p.dual_pairs().len(),
            "criticals18": c18,
            "criticals20": c20,
        })),
        Format::Table => {
            run.line(format!("rays {}, bases {}, dual line pairs {}", sys.len(), sys.bases().len(), p.dual_pairs().len()));
            for (size, list) in [(18, &c18), (20, &c20)] {
                if let Some(list) = list {
                    run.line(format!("{size}-ray critical sets: {}", list.len()));
                    for c in list {
                        run.line(format!("  {}\tintact bases {}\tparity {}", c.rays, c.intact_bases, c.parity));
                    }
                }
            }
            Ok(())
        }
    }
}

fn inequality_cmd(run: &mut Run, which: InstanceChoice, method: Option<Method>) -> Result<()> {
    let cat = build_catalog()?;
    let peres = PeresSystem::build()?;
    let grid = LineGeometry::build(&cat)?;
    let thirty = enumerate_critical_sets(&grid, ChainKind::Cycle5);
    let instance = match which {
        InstanceChoice::ThirtyRay => InequalityInstance::intact(cat.system(), thirty[0].rays)?,
        InstanceChoice::Peres18 => InequalityInstance::intact(peres.system(), peres.dual_pair_complements()[0])?,
        InstanceChoice::Full60 => {
            let all: Vec<usize> = (0..cat.bases().len()).collect();
            InequalityInstance::new(cat.system(), RaySet::full(60), &all)?
        }
    };
    let method = method.unwrap_or(if which == InstanceChoice::Full60 { Method::Bnb } else { Method::Sweep });
    let report = match method {
        Method::Sweep => {
            let (gap, cmax) = gap_report(&instance)?;
            json!({
                "instance": format!("{which:?}"),
                "rays": instance.rays().len(),
                "bases": instance.bases().len(),
                "method": "sweep",
                "classical": gap.classical,
                "quantum": gap.quantum,
                "gap": gap.gap,
                "witness": cmax.witness,
                "assignments": cmax.assignments,
                "complete": true,
            })
        }
        Method::Bnb => {
            let quantum = quantum_value(&instance)?;
            let families: Vec<Vec<usize>> = match which {
                InstanceChoice::Peres18 => vec![instance.bases().to_vec()],
                _ => thirty
                    .iter()
                    .map(|r| cat.system().intact_bases(r.rays))
                    .filter(|f| f.iter().all(|k| instance.bases().contains(k)))
                    .collect(),
            };
            let bb = branch_and_bound(&instance, &families, run.solver.node_limit)?;
            if !bb.complete {
                run.code = 2;
            }
            json!({
                "instance": format!("{which:?}"),
                "rays": instance.rays().len(),
                "bases": instance.bases().len(),
                "method": "bnb",
                "classical": bb.best,
                "upperBound": bb.upper_bound,
                "quantum": quantum,
                "gap": quantum - bb.best,
                "witness": bb.witness,
                "nodes": bb.nodes,
                "complete": bb.complete,
            })
        }
    };
    match run.format {
        Format::Json => run.emit_json(&report),
        Format::Table => {
            for (k, v) in report.as_object().into_iter().flatten() {
                run.line(format!("{k}: {v}"));
            }
            Ok(())
        }
    }
}

fn verify_cmd(run: &mut Run, fast: bool, catalog: Option<&PathBuf>) -> Result<()> {
    let loaded = match catalog {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let doc: CatalogDoc = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            match Catalog::from_doc(&doc) {
                Ok(c) => Some(c),
                Err(e) => {
                    run.code = 1;
                    run.line("criterion 2: FAIL bases, 24-cells and decompositions");
                    run.line(format!("  [FAIL] 75 bases: {e}"));
                    bail!("catalog: 75 bases: {e}");
                }
            }
        }
        None => None,
    };
    let format = run.format;
    let mut lines = String::new();
    let started = Instant::now();
    let mut progress = |r: &verify::CriterionReport| {
        eprintln!("criterion {} {} in {:.1}s", r.criterion, if r.passed { "passed" } else { "FAILED" }, r.seconds);
        if format == Format::Table {
            lines.push_str(&r.render());
        }
    };
    let opts = verify::Options { fast, catalog: loaded, solver: run.solver, progress: &mut progress };
    let result = verify::verify_all(opts);
    run.text.push_str(&lines);
    eprintln!("total {:.1}s", started.elapsed().as_secs_f64());
    let summary = match result {
        Ok(s) => s,
        Err(e) => {
            run.code = 1;
            return Err(e);
        }
    };
    run.code = if summary.passed { 0 } else { 1 };
    match format {
        Format::Json => run.emit_json(&summary),
        Format::Table => {
            let failed: Vec<String> =
                summary.criteria.iter().filter(|c| !c.passed).map(|c| c.criterion.to_string()).collect();
            if failed.is_empty() {
                run.line(format!("all {} criteria passed", summary.criteria.len()));
            } else {
                run.line(format!("failed criteria: {}", failed.join(", ")));
            }
            Ok(())
        }
    }
}
