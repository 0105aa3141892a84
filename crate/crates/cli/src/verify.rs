//! The full verification pipeline behind `specker600 verify-all`.

use std::collections::BTreeSet;
use std::time::Instant;

use anyhow::{anyhow, Result};
use serde::Serialize;
use specker600::catalog::{generate_vertices, Catalog};
use specker600::coloring::{
    audit_bases, check_coloring, classify_bases, count_with_overloads, is_critical, parity_certificate,
    ColoringProblem, Solver,
};
use specker600::critical::{
    apply_chain, complementary_pairs, enumerate_critical_sets, verify_records, Chain, ChainKind, CriticalSetRecord,
    GridLine, VerifyMode,
};
use specker600::inequality::{classical_max, quantum_value, InequalityInstance};
use specker600::lines::{lines_of_cell, LetterPair, LineGeometry};
use specker600::peres::PeresSystem;
use specker600::symmetry::{verify_period5_generators, GroupElement, SymmetryGroup};
use specker600::tables::basis_grid;
use specker600::{GoldenInt, RaySet};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub claim: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub criterion: usize,
    pub title: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionReport {
    fn new(criterion: usize, title: &'static str) -> Self {
        CriterionReport { criterion, title, passed: true, checks: Vec::new(), notes: Vec::new(), seconds: 0.0 }
    }

    fn check(&mut self, claim: impl Into<String>, ok: bool) {
        self.passed &= ok;
        self.checks.push(Check { claim: claim.into(), passed: ok });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        let ok = got == want;
        let claim = if ok { format!("{what} = {got:?}") } else { format!("{what} = {got:?}, expected {want:?}") };
        self.check(claim, ok);
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "criterion {}: {} {}\n",
            self.criterion,
            if self.passed { "PASS" } else { "FAIL" },
            self.title
        );
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}\n", if c.passed { "ok" } else { "FAIL" }, c.claim));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub mode: &'static str,
    pub criteria: Vec<CriterionReport>,
    pub passed: bool,
}

pub struct Options<'a> {
    pub fast: bool,
    pub catalog: Option<Catalog>,
    pub solver: Solver,
    /// Called after each criterion, for progress output.
    pub progress: &'a mut dyn FnMut(&CriterionReport),
}

struct World {
    catalog: Catalog,
    grid: LineGeometry,
    group: SymmetryGroup,
    thirty: Vec<CriticalSetRecord>,
    thirty_six: Vec<CriticalSetRecord>,
}

fn row(s: &str) -> GridLine {
    GridLine::Row(LetterPair::parse(s).expect("row label"))
}

fn fatal(stage: &str, claim: &str, err: impl std::fmt::Display) -> anyhow::Error {
    anyhow!("{stage}: {claim}: {err}")
}

pub fn verify_all(opts: Options) -> Result<Summary> {
    let Options { fast, catalog, solver, progress } = opts;
    let mut criteria = Vec::new();
    let mut finish = |mut r: CriterionReport, started: Instant, progress: &mut dyn FnMut(&CriterionReport)| {
        r.seconds = started.elapsed().as_secs_f64();
        progress(&r);
        let ok = r.passed;
        criteria.push(r);
        ok
    };

    let t = Instant::now();
    let catalog = match catalog {
        Some(c) => c,
        None => specker600::build_catalog().map_err(|e| fatal("catalog", "75 bases", e))?,
    };
    let r = catalog_criterion(&catalog);
    if !finish(r, t, &mut *progress) {
        return Err(anyhow!("catalog: aborting after failed catalog checks"));
    }

    let t = Instant::now();
    let r = bases_criterion(&catalog);
    if !finish(r, t, &mut *progress) {
        return Err(anyhow!("bases: aborting after failed basis checks"));
    }

    let t = Instant::now();
    let grid = LineGeometry::build(&catalog).map_err(|e| fatal("lines", "200 lines", e))?;
    let r = lines_criterion(&catalog, &grid);
    if !finish(r, t, &mut *progress) {
        return Err(anyhow!("lines: aborting after failed line checks"));
    }

    let t = Instant::now();
    let group = SymmetryGroup::generate(&catalog).map_err(|e| fatal("symmetry", "7200 permutations", e))?;
    let r = symmetry_criterion(&catalog, &grid, &group)?;
    finish(r, t, &mut *progress);

    let t = Instant::now();
    let thirty = enumerate_critical_sets(&grid, ChainKind::Cycle5);
    let thirty_six = enumerate_critical_sets(&grid, ChainKind::Bipartite23);
    let world = World { catalog, grid, group, thirty, thirty_six };
    finish(families_criterion(&world), t, &mut *progress);

    let mode = if fast { VerifyMode::Fast(&world.group) } else { VerifyMode::Full };
    let t = Instant::now();
    let r = thirty_criterion(&world, &solver, mode)?;
    finish(r, t, &mut *progress);

    let t = Instant::now();
    let r = thirty_six_criterion(&world, &solver, mode)?;
    finish(r, t, &mut *progress);

    let t = Instant::now();
    let r = count_criterion(&world, &solver)?;
    finish(r, t, &mut *progress);

    let t = Instant::now();
    let r = peres_criterion(&solver)?;
    finish(r, t, &mut *progress);

    let t = Instant::now();
    let r = inequality_criterion(&world)?;
    finish(r, t, &mut *progress);

    let passed = criteria.iter().all(|c| c.passed);
    Ok(Summary { mode: if fast { "fast" } else { "full" }, criteria, passed })
}

fn catalog_criterion(catalog: &Catalog) -> CriterionReport {
    let mut r = CriterionReport::new(1, "catalog");
    let sys = catalog.system();
    r.eq("600-cell vertices", generate_vertices().len(), 120);
    r.eq("projective rays", sys.len(), 60);
    let four = GoldenInt::from(4);
    r.check("every ray has norm^2 = 4", sys.vectors().iter().all(|v| v.norm_sq() == Ok(four)));
    r.check("orthogonality graph is 15-regular", sys.adjacency().iter().all(|n| n.len() == 15));
    r
}

fn bases_criterion(catalog: &Catalog) -> CriterionReport {
    let mut r = CriterionReport::new(2, "bases, 24-cells and decompositions");
    r.eq("bases", catalog.bases().len(), 75);
    r.eq("24-cells", catalog.cells().len(), 25);
    r.eq("decompositions", catalog.decompositions().len(), 10);
    let printed_ok = basis_grid().iter().flatten().flatten().all(|q| {
        (0..4).all(|i| (i + 1..4).all(|j| catalog.vector(q[i]).is_orthogonal(catalog.vector(q[j])) == Ok(true)))
    });
    r.check("every printed basis quadruple is orthogonal", printed_ok);
    let mut sizes = BTreeSet::new();
    for (i, a) in catalog.cells().iter().enumerate() {
        for b in &catalog.cells()[i + 1..] {
            sizes.insert((a.rays & b.rays).len());
        }
    }
    r.eq("pairwise 24-cell intersection sizes", sizes.into_iter().collect::<Vec<_>>(), vec![0, 3]);
    let per_ray: BTreeSet<usize> =
        (1..=60u8).map(|id| catalog.bases().iter().filter(|b| b.contains(id)).count()).collect();
    r.eq("bases through each ray", per_ray.into_iter().collect::<Vec<_>>(), vec![5]);
    r.eq("75 x 4 = 60 x 5", catalog.bases().len() * 4, catalog.system().len() * 5);
    r
}

fn lines_criterion(catalog: &Catalog, grid: &LineGeometry) -> CriterionReport {
    let mut r = CriterionReport::new(3, "Reye lines and dual pairs");
    let per_cell: BTreeSet<usize> = catalog
        .cells()
        .iter()
        .map(|c| lines_of_cell(catalog, c).map(|l| l.len()).unwrap_or(0))
        .collect();
    r.eq("lines per 24-cell", per_cell.into_iter().collect::<Vec<_>>(), vec![16]);
    r.eq("lines before merging", grid.naive_total, 400);
    r.eq("unique lines", grid.lines().len(), 200);
    r.check("every line lies in exactly two 24-cells", grid.lines().iter().all(|l| l.cells[0] != l.cells[1]));
    r.eq("dual pairs", grid.dual_pairs().len(), 100);
    let involution = grid
        .dual_pairs()
        .iter()
        .all(|d| d.left != d.right && grid.dual_of(d.right.points).map(|x| x.points) == Some(d.left.points));
    r.check("duality is a fixed-point-free involution", involution);
    let sys = catalog.system();
    let orth = grid
        .dual_pairs()
        .iter()
        .all(|d| d.left.points.iter().all(|&a| d.right.points.iter().all(|&b| sys.is_orthogonal(a, b))));
    r.check("all nine cross products of each dual pair vanish", orth);
    r.eq("dual of {3,8,10}", grid.dual_of([3, 8, 10]).map(|l| l.points), Some([16, 17, 24]));
    let mut partitions = true;
    for i in 0..10 {
        let (mut by_row, mut by_col) = (RaySet::EMPTY, RaySet::EMPTY);
        for j in 0..10 {
            let a = grid.dual_pairs()[i * 10 + j].rays();
            let b = grid.dual_pairs()[j * 10 + i].rays();
            partitions &= by_row.is_disjoint(a) && by_col.is_disjoint(b);
            by_row = by_row | a;
            by_col = by_col | b;
        }
        partitions &= by_row == RaySet::full(60) && by_col == RaySet::full(60);
    }
    r.check("every grid row and column partitions rays 1..60", partitions);
    r
}

fn symmetry_criterion(catalog: &Catalog, grid: &LineGeometry, group: &SymmetryGroup) -> Result<CriterionReport> {
    let mut r = CriterionReport::new(4, "symmetry group");
    r.eq("signed maps", group.signed_map_count(), 14400);
    r.eq("ray permutations", group.len(), 7200);
    let closure = group.check_closure();
    r.check(format!("closed under composition ({} products)", closure.products), closure.is_closed());
    let add12 = GroupElement::add12();
    r.check("add-12 map is in the group", group.contains(&add12));
    let lens: Vec<usize> = add12.cycles().iter().map(Vec::len).collect();
    r.check("add-12 map is twelve disjoint 5-cycles", lens.len() == 12 && lens.iter().all(|&l| l == 5));
    let gens = verify_period5_generators(catalog, group).map_err(|e| fatal("symmetry", "period-5 generators", e))?;
    for g in &gens {
        r.check(format!("generator {} has order 5 and cycles the grid", g.name), g.passed());
    }
    let rays: Vec<RaySet> = (1..=60).map(RaySet::single).collect();
    let bases: Vec<RaySet> = catalog.bases().iter().map(|b| b.mask()).collect();
    let lines: Vec<RaySet> = grid.lines().iter().map(|l| l.mask()).collect();
    for (name, fam, n) in [("rays", &rays, 60), ("bases", &bases, 75), ("lines", &lines, 200)] {
        let orbit = group.orbit_of(fam[0]).len();
        r.check(format!("transitive on {n} {name}"), orbit == n && group.is_transitive(fam));
    }
    Ok(r)
}

fn count_orbits(group: &SymmetryGroup, sets: &[RaySet]) -> usize {
    let mut left: BTreeSet<RaySet> = sets.iter().copied().collect();
    let mut n = 0;
    while let Some(&s) = left.iter().next() {
        for m in group.orbit_of(s).members {
            left.remove(&m);
        }
        n += 1;
    }
    n
}

fn families_criterion(w: &World) -> CriterionReport {
    let mut r = CriterionReport::new(5, "critical families");
    r.eq("distinct 30-ray sets", w.thirty.len(), 240);
    r.eq("distinct 36-ray sets", w.thirty_six.len(), 200);
    for (name, fam, stab) in [("30-ray", &w.thirty, 30), ("36-ray", &w.thirty_six, 36)] {
        let sets: Vec<RaySet> = fam.iter().map(|x| x.rays).collect();
        let orbit = w.group.orbit_of(sets[0]);
        r.eq(&format!("{name} orbits under the group"), count_orbits(&w.group, &sets), 1);
        r.eq(&format!("{name} stabilizer order"), orbit.stabilizer_order, stab);
    }
    r.eq("complementary 30-ray pairs", complementary_pairs(&w.thirty).len(), 120);
    r
}

fn verify_family(
    r: &mut CriterionReport,
    w: &World,
    solver: &Solver,
    mode: VerifyMode,
    records: &[CriticalSetRecord],
) -> Result<()> {
    let size = records[0].rays.len();
    let checks = verify_records(solver, &w.catalog, records, mode).map_err(|e| fatal("critical", "criticality", e))?;
    let deletions: usize = checks.iter().map(|c| c.deletions_checked).sum();
    let all = checks.iter().all(|c| c.critical && (matches!(mode, VerifyMode::Fast(_)) || c.deletions_checked == size));
    let how = match mode {
        VerifyMode::Full => "every deletion",
        VerifyMode::Fast(_) => "one deletion per stabilizer orbit",
    };
    r.check(format!("all {} sets uncolorable and critical ({how}, {deletions} deletions)", records.len()), all);
    Ok(())
}

fn thirty_criterion(w: &World, solver: &Solver, mode: VerifyMode) -> Result<CriterionReport> {
    let mut r = CriterionReport::new(6, "30-ray critical sets");
    let sys = w.catalog.system();
    let parity = w.thirty.iter().all(|rec| {
        parity_certificate(sys, rec.rays).is_some_and(|p| {
            p.bases.len() == 15 && p.occurrences.len() == 30 && p.occurrences.values().all(|&k| k == 2)
        })
    });
    r.check("every set has 15 intact bases, each ray twice (parity certificate)", parity);
    let solver_agrees = w.thirty.iter().all(|rec| {
        ColoringProblem::standard(sys, rec.rays)
            .ok()
            .and_then(|p| solver.solve(&p).ok())
            .is_some_and(|v| !v.is_colorable())
    });
    r.check("search independently finds every set uncolorable", solver_agrees);
    verify_family(&mut r, w, solver, mode, &w.thirty)?;
    let s = apply_chain(&w.grid, &Chain::parse("AB-BC-CD-DE-EA")?, row("A'B'"))?;
    let prob = ColoringProblem::standard(sys, s.without(3))?;
    let green: RaySet = [25u8, 45, 55, 16, 4, 32, 49].iter().collect();
    r.check("deleting ray 3 admits greens {25,45,55,16,4,32,49}", check_coloring(&prob, green).is_ok());
    Ok(r)
}

fn thirty_six_criterion(w: &World, solver: &Solver, mode: VerifyMode) -> Result<CriterionReport> {
    let mut r = CriterionReport::new(7, "36-ray critical sets");
    let sys = w.catalog.system();
    let census: BTreeSet<_> = w.thirty_six.iter().map(|rec| classify_bases(sys, rec.rays).counts()).collect();
    r.eq("census of every set", census.into_iter().collect::<Vec<_>>(), vec![(18, 12, 36, 0, 9)]);
    let mut restricted = true;
    for rec in &w.thirty_six {
        let cen = classify_bases(sys, rec.rays);
        let bases: Vec<usize> = cen.intact.iter().chain(&cen.almost_intact).copied().collect();
        let p = ColoringProblem::restricted(sys, rec.rays, &bases)?;
        restricted &= !solver.solve(&p)?.is_colorable();
    }
    r.check("uncolorable using only the 30 intact and almost-intact bases", restricted);
    r.check("no set has a parity certificate", w.thirty_six.iter().all(|rec| parity_certificate(sys, rec.rays).is_none()));
    verify_family(&mut r, w, solver, mode, &w.thirty_six)?;
    let s = apply_chain(&w.grid, &Chain::parse("AC-AD-AE-BC-BD-BE")?, row("A'B'"))?;
    let green: RaySet = [11u8, 4, 22, 54, 18, 5, 35, 25].iter().collect();
    let prob = ColoringProblem::standard(sys, s.without(1))?;
    r.check("deleting ray 1 admits greens {11,4,22,54,18,5,35,25}", check_coloring(&prob, green).is_ok());
    let audit = audit_bases(sys, s.without(1), green);
    r.eq("bases meeting the 35 survivors, properly colored", (audit.involved, audit.proper), (66, 66));
    Ok(r)
}

fn count_criterion(w: &World, solver: &Solver) -> Result<CriterionReport> {
    let mut r = CriterionReport::new(8, "colorings of the 36-ray set");
    let sys = w.catalog.system();
    let s = apply_chain(&w.grid, &Chain::parse("AC-AD-AE-BC-BD-BE")?, row("A'B'"))?;
    let cen = classify_bases(sys, s);
    let thirty: Vec<usize> = cen.intact.iter().chain(&cen.almost_intact).copied().collect();
    let watched: [&[usize]; 2] = [&cen.half_intact, &cen.almost_intact];
    let all30 = count_with_overloads(solver, &ColoringProblem::restricted(sys, s, &thirty)?, &watched)?;
    let intact = count_with_overloads(solver, &ColoringProblem::restricted(sys, s, &cen.intact)?, &watched)?;
    r.note(format!("orthogonality from all 30 intact and almost-intact bases: {} colorings", all30.count));
    r.note(format!("orthogonality from the 18 intact bases only: {} colorings", intact.count));
    let (pinned, report) = if all30.count == 448 {
        ("30 intact and almost-intact bases", &all30)
    } else if intact.count == 448 {
        ("18 intact bases", &intact)
    } else {
        ("30 intact and almost-intact bases", &all30)
    };
    r.eq("count under the pinned regime", report.count, 448);
    r.note(format!("pinned regime: {pinned}"));
    r.note(format!("of these, overloading some half-intact basis: {}", report.overloading[0]));
    r.note(format!("of these, overloading some almost-intact basis: {}", report.overloading[1]));
    r.eq("colorings that overload a half-intact basis", report.overloading[0], report.count);
    Ok(r)
}

fn peres_criterion(solver: &Solver) -> Result<CriterionReport> {
    let mut r = CriterionReport::new(9, "Peres 24-ray system");
    let p = PeresSystem::build()?;
    r.eq("rays", p.system().len(), 24);
    r.eq("bases", p.system().bases().len(), 24);
    let c18 = p.criticals_18(solver)?;
    r.eq("18-ray critical sets", c18.len(), 16);
    r.check("each has a 9-basis parity certificate", c18.iter().all(|c| c.parity && c.intact_bases == 9));
    let c20 = p.criticals_20(solver)?;
    r.eq("20-ray critical sets from all 4-ray deletions", c20.len(), 96);
    r.check(
        "no 20-ray critical set contains an 18-ray one",
        c20.iter().all(|a| c18.iter().all(|b| !b.rays.is_subset(a.rays))),
    );
    let full = p.system().all_rays();
    let redundant = !p.full_set_colorable(solver)? && !is_critical(solver, p.system(), full)?.is_critical();
    r.check("full 24-ray set is uncolorable but not critical", redundant);
    Ok(r)
}

fn inequality_criterion(w: &World) -> Result<CriterionReport> {
    let mut r = CriterionReport::new(10, "noncontextuality inequality");
    let sys = w.catalog.system();
    let s = apply_chain(&w.grid, &Chain::parse("AB-BC-CD-DE-EA")?, row("A'B'"))?;
    let inst = InequalityInstance::intact(sys, s)?;
    let cm = classical_max(&inst)?;
    r.eq("30-ray quantum value", quantum_value(&inst)?, 15);
    r.eq("30-ray classical maximum", cm.value, 13);
    r.check("30-ray witness attains the maximum", inst.score(cm.witness) == cm.value);
    let p = PeresSystem::build()?;
    let pi = InequalityInstance::intact(p.system(), p.dual_pair_complements()[0])?;
    r.eq("Peres 18-ray quantum value", quantum_value(&pi)?, 9);
    r.eq("Peres 18-ray classical maximum", classical_max(&pi)?.value, 7);
    Ok(r)
}
