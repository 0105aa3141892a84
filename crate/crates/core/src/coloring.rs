//! Red/green colorings of ray subsets.
//!
//! A coloring picks a set of green rays. It is valid when no two greens are
//! excluded from each other and every required basis holds a green. In the
//! standard regime the required bases are the bases lying inside the subset
//! and every orthogonal pair of surviving rays is excluded. The restricted
//! regime takes a caller-supplied basis list: the intact ones among them are
//! required and only pairs sharing a listed basis are excluded.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rayset::{RayId, RaySet};
use crate::system::RaySystem;

pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("search undecided after {0} nodes")]
    Undecided(u64),
    #[error("basis index {0} out of range")]
    UnknownBasis(usize),
    #[error("ray set {0} is not part of the system")]
    UnknownRays(RaySet),
    #[error("subset is colorable, so there is nothing to refute")]
    NotUncolorable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Regime {
    Standard,
    Restricted,
}

#[derive(Debug, Clone)]
pub struct ColoringProblem<'a> {
    system: &'a RaySystem,
    rays: RaySet,
    regime: Regime,
    /// Listed bases (all bases meeting the subset in the standard regime).
    constraint_bases: Vec<usize>,
    /// Constraint bases lying inside the subset, ascending.
    required: Vec<usize>,
    /// Excluded partners per ray, indexed by `id - 1`, always within `rays`.
    exclusion: Vec<RaySet>,
}

impl<'a> ColoringProblem<'a> {
    pub fn standard(system: &'a RaySystem, rays: RaySet) -> Result<Self, ColoringError> {
        check_rays(system, rays)?;
        let constraint_bases: Vec<usize> =
            (0..system.bases().len()).filter(|&i| !system.bases()[i].mask().is_disjoint(rays)).collect();
        let required = system.intact_bases(rays);
        let exclusion = system.adjacency().iter().map(|&n| n & rays).collect();
        Ok(ColoringProblem { system, rays, regime: Regime::Standard, constraint_bases, required, exclusion })
    }

    pub fn restricted(system: &'a RaySystem, rays: RaySet, bases: &[usize]) -> Result<Self, ColoringError> {
        check_rays(system, rays)?;
        let mut constraint_bases = bases.to_vec();
        constraint_bases.sort_unstable();
        constraint_bases.dedup();
        if let Some(&bad) = constraint_bases.iter().find(|&&i| i >= system.bases().len()) {
            return Err(ColoringError::UnknownBasis(bad));
        }
        let mut exclusion = vec![RaySet::EMPTY; system.len()];
        let mut required = Vec::new();
        for &i in &constraint_bases {
            let m = system.bases()[i].mask() & rays;
            for id in m {
                exclusion[id as usize - 1] = exclusion[id as usize - 1] | m.without(id);
            }
            if system.bases()[i].mask().is_subset(rays) {
                required.push(i);
            }
        }
        Ok(ColoringProblem { system, rays, regime: Regime::Restricted, constraint_bases, required, exclusion })
    }

    pub fn system(&self) -> &RaySystem {
        self.system
    }

    pub fn rays(&self) -> RaySet {
        self.rays
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn constraint_bases(&self) -> &[usize] {
        &self.constraint_bases
    }

    pub fn required_bases(&self) -> &[usize] {
        &self.required
    }

    fn excluded(&self, id: RayId) -> RaySet {
        self.exclusion[id as usize - 1]
    }

    fn required_mask(&self, k: usize) -> RaySet {
        self.system.bases()[self.required[k]].mask()
    }

    /// The same problem on `rays \ {id}`, keeping the regime and basis list.
    pub fn without(&self, id: RayId) -> Self {
        let rays = self.rays.without(id);
        match self.regime {
            Regime::Standard => ColoringProblem::standard(self.system, rays),
            Regime::Restricted => ColoringProblem::restricted(self.system, rays, &self.constraint_bases),
        }
        .expect("subset of a valid problem")
    }
}

fn check_rays(system: &RaySystem, rays: RaySet) -> Result<(), ColoringError> {
    if rays.is_subset(system.all_rays()) {
        Ok(())
    } else {
        Err(ColoringError::UnknownRays(rays - system.all_rays()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub green: RaySet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Violation {
    /// Two greens that may not both be green.
    Clash(RayId, RayId),
    /// A required basis without a green.
    AllRed(usize),
    /// A green outside the problem's rays.
    Stray(RayId),
}

/// Checks a coloring directly against the definitions, without the solver.
pub fn check_coloring(problem: &ColoringProblem, green: RaySet) -> Result<(), Violation> {
    if let Some(id) = (green - problem.rays).first() {
        return Err(Violation::Stray(id));
    }
    let sys = problem.system;
    let greens = green.to_vec();
    for (i, &a) in greens.iter().enumerate() {
        for &b in &greens[i + 1..] {
            let clash = match problem.regime {
                Regime::Standard => sys.vector(a).is_orthogonal(sys.vector(b)).unwrap_or(true),
                Regime::Restricted => problem.constraint_bases.iter().any(|&k| {
                    let m = sys.bases()[k].mask();
                    m.contains(a) && m.contains(b)
                }),
            };
            if clash {
                return Err(Violation::Clash(a, b));
            }
        }
    }
    for &k in &problem.constraint_bases {
        let m = sys.bases()[k].mask();
        if m.is_subset(problem.rays) && m.is_disjoint(green) {
            return Err(Violation::AllRed(k));
        }
    }
    Ok(())
}

/// How many bases of the whole system are involved with `subset` and whether
/// each is properly colored: at most one green, exactly one if intact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisAudit {
    pub involved: usize,
    pub proper: usize,
}

pub fn audit_bases(system: &RaySystem, subset: RaySet, green: RaySet) -> BasisAudit {
    let mut audit = BasisAudit { involved: 0, proper: 0 };
    for b in system.bases() {
        let m = b.mask();
        if m.is_disjoint(subset) {
            continue;
        }
        audit.involved += 1;
        let g = (m & green).len();
        if g <= 1 && (g == 1 || !m.is_subset(subset)) {
            audit.proper += 1;
        }
    }
    audit
}

/// Bases split by how many of their rays survive in a subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Census {
    pub intact: Vec<usize>,
    pub almost_intact: Vec<usize>,
    pub half_intact: Vec<usize>,
    pub quarter_intact: Vec<usize>,
    pub empty: Vec<usize>,
}

impl Census {
    /// `(intact, almost, half, quarter, empty)`.
    pub fn counts(&self) -> (usize, usize, usize, usize, usize) {
        (
            self.intact.len(),
            self.almost_intact.len(),
            self.half_intact.len(),
            self.quarter_intact.len(),
            self.empty.len(),
        )
    }
}

pub fn classify_bases(system: &RaySystem, subset: RaySet) -> Census {
    let by = |k| system.bases_meeting(subset, k);
    Census { intact: by(4), almost_intact: by(3), half_intact: by(2), quarter_intact: by(1), empty: by(0) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ParityCertificate {
    /// The intact bases; odd in number.
    pub bases: Vec<usize>,
    /// Occurrences of each covered ray among them; all even.
    pub occurrences: BTreeMap<RayId, usize>,
}

/// A parity refutation: an odd number of intact bases covering every ray an
/// even number of times. Exactly one green per basis would need an odd total,
/// while counting per ray gives an even one.
pub fn parity_certificate(system: &RaySystem, subset: RaySet) -> Option<ParityCertificate> {
    let bases = system.intact_bases(subset);
    if bases.len() % 2 == 0 {
        return None;
    }
    let mut occurrences = BTreeMap::new();
    for &k in &bases {
        for id in system.bases()[k].ids() {
            *occurrences.entry(id).or_insert(0) += 1;
        }
    }
    occurrences.values().all(|c| c % 2 == 0).then_some(ParityCertificate { bases, occurrences })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchStats {
    pub nodes: u64,
    pub dead_ends: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Certificate {
    Witness { green: RaySet },
    Parity(ParityCertificate),
    Exhaustion(SearchStats),
    ProofTree { tree: ProofNode },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "camelCase")]
pub enum Verdict {
    Colorable { witness: Coloring, certificate: Certificate },
    Uncolorable { certificates: Vec<Certificate> },
}

impl Verdict {
    pub fn is_colorable(&self) -> bool {
        matches!(self, Verdict::Colorable { .. })
    }

    pub fn witness(&self) -> Option<RaySet> {
        match self {
            Verdict::Colorable { witness, .. } => Some(witness.green),
            Verdict::Uncolorable { .. } => None,
        }
    }
}

/// Partial assignment during search.
#[derive(Debug, Clone, Copy)]
struct State {
    green: RaySet,
    red: RaySet,
}

/// Result of examining the required bases under a partial assignment.
enum Step {
    Conflict(usize),
    Done,
    /// Position in `required` of the unsatisfied basis with fewest candidates.
    Branch(usize, RaySet),
}

/// Deterministic backtracking solver with a node budget.
#[derive(Debug, Clone, Copy)]
pub struct Solver {
    pub node_limit: u64,
}

impl Default for Solver {
    fn default() -> Self {
        Solver { node_limit: DEFAULT_NODE_LIMIT }
    }
}

struct Search<'p, 'a> {
    problem: &'p ColoringProblem<'a>,
    limit: u64,
    stats: SearchStats,
}

impl<'p, 'a> Search<'p, 'a> {
    fn new(problem: &'p ColoringProblem<'a>, limit: u64) -> Self {
        Search { problem, limit, stats: SearchStats { nodes: 0, dead_ends: 0 } }
    }

    fn tick(&mut self) -> Result<(), ColoringError> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.limit {
            Err(ColoringError::Undecided(self.limit))
        } else {
            Ok(())
        }
    }

    fn set_green(&self, s: &mut State, id: RayId) -> bool {
        if s.red.contains(id) || !self.problem.excluded(id).is_disjoint(s.green) {
            return false;
        }
        s.green.insert(id);
        s.red = s.red | self.problem.excluded(id);
        true
    }

    /// Unit propagation, appending forced greens; fails with the all-red basis.
    fn propagate(&self, s: &mut State, forced: &mut Vec<RayId>) -> Result<(), usize> {
        loop {
            let mut changed = false;
            for k in 0..self.problem.required.len() {
                let m = self.problem.required_mask(k);
                if !m.is_disjoint(s.green) {
                    continue;
                }
                let cand = m - s.red;
                match cand.len() {
                    0 => return Err(k),
                    1 => {
                        let id = cand.first().expect("one candidate");
                        if !self.set_green(s, id) {
                            return Err(k);
                        }
                        forced.push(id);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn step(&self, s: &State) -> Step {
        let mut best: Option<(usize, RaySet)> = None;
        for k in 0..self.problem.required.len() {
            let m = self.problem.required_mask(k);
            if !m.is_disjoint(s.green) {
                continue;
            }
            let cand = m - s.red;
            if cand.is_empty() {
                return Step::Conflict(k);
            }
            if best.map_or(true, |(_, c)| cand.len() < c.len()) {
                best = Some((k, cand));
            }
        }
        match best {
            None => Step::Done,
            Some((k, c)) => Step::Branch(k, c),
        }
    }

    /// Children of a branching node: candidate `c_i` green with `c_0..c_{i-1}` red.
    fn children(&self, s: &State, cand: RaySet) -> Vec<(RayId, State)> {
        let mut out = Vec::new();
        let mut prior = RaySet::EMPTY;
        for id in cand {
            let mut child = State { green: s.green, red: s.red | prior };
            if self.set_green(&mut child, id) {
                out.push((id, child));
            }
            prior.insert(id);
        }
        out
    }

    fn find(&mut self, mut s: State) -> Result<Option<RaySet>, ColoringError> {
        self.tick()?;
        if self.propagate(&mut s, &mut Vec::new()).is_err() {
            self.stats.dead_ends += 1;
            return Ok(None);
        }
        match self.step(&s) {
            Step::Conflict(_) => {
                self.stats.dead_ends += 1;
                Ok(None)
            }
            Step::Done => Ok(Some(s.green)),
            Step::Branch(_, cand) => {
                for (_, child) in self.children(&s, cand) {
                    if let Some(g) = self.find(child)? {
                        return Ok(Some(g));
                    }
                }
                self.stats.dead_ends += 1;
                Ok(None)
            }
        }
    }

    fn count(&mut self, mut s: State, visit: &mut dyn FnMut(RaySet)) -> Result<u64, ColoringError> {
        self.tick()?;
        if self.propagate(&mut s, &mut Vec::new()).is_err() {
            return Ok(0);
        }
        match self.step(&s) {
            Step::Conflict(_) => Ok(0),
            Step::Done => {
                let free = self.problem.rays - s.green - s.red;
                self.count_free(s.green, free, visit)
            }
            Step::Branch(_, cand) => {
                let mut total = 0;
                for (_, child) in self.children(&s, cand) {
                    total += self.count(child, visit)?;
                }
                Ok(total)
            }
        }
    }

    /// Rays in no unsatisfied required basis: any independent subset may be green.
    fn count_free(&mut self, green: RaySet, free: RaySet, visit: &mut dyn FnMut(RaySet)) -> Result<u64, ColoringError> {
        let Some(id) = free.first() else {
            visit(green);
            return Ok(1);
        };
        self.tick()?;
        let rest = free.without(id);
        let mut total = self.count_free(green, rest, visit)?;
        if self.problem.excluded(id).is_disjoint(green) {
            total += self.count_free(green.with(id), rest - self.problem.excluded(id), visit)?;
        }
        Ok(total)
    }

    fn tree(&mut self, mut s: State) -> Result<ProofNode, ColoringError> {
        self.tick()?;
        let mut forced = Vec::new();
        if let Err(k) = self.propagate(&mut s, &mut forced) {
            return Ok(ProofNode::Leaf { forced, all_red: self.problem.required[k] });
        }
        match self.step(&s) {
            Step::Conflict(k) => Ok(ProofNode::Leaf { forced, all_red: self.problem.required[k] }),
            Step::Done => Err(ColoringError::NotUncolorable),
            Step::Branch(k, cand) => {
                let mut children = Vec::new();
                let mut prior = RaySet::EMPTY;
                for id in cand {
                    let mut child = State { green: s.green, red: s.red | prior };
                    prior.insert(id);
                    if !self.set_green(&mut child, id) {
                        continue;
                    }
                    children.push(ProofBranch { green: id, node: self.tree(child)? });
                }
                Ok(ProofNode::Branch { forced, basis: self.problem.required[k], children })
            }
        }
    }
}

impl Solver {
    pub fn new(node_limit: u64) -> Self {
        Solver { node_limit }
    }

    fn initial(problem: &ColoringProblem) -> State {
        State { green: RaySet::EMPTY, red: RaySet::EMPTY }.restrict(problem)
    }

    /// Some valid coloring extending the given partial assignment.
    pub fn find_with(
        &self,
        problem: &ColoringProblem,
        green: RaySet,
        red: RaySet,
    ) -> Result<(Option<RaySet>, SearchStats), ColoringError> {
        let mut search = Search::new(problem, self.node_limit);
        let mut s = Solver::initial(problem);
        s.red = s.red | red;
        for id in green {
            if !search.set_green(&mut s, id) {
                return Ok((None, search.stats));
            }
        }
        let found = search.find(s)?;
        Ok((found, search.stats))
    }

    /// Decides colorability. A colorable problem yields its lexicographically
    /// least witness (green ids compared as ascending sequences).
    pub fn solve(&self, problem: &ColoringProblem) -> Result<Verdict, ColoringError> {
        let (found, stats) = self.find_with(problem, RaySet::EMPTY, RaySet::EMPTY)?;
        if found.is_some() {
            let green = self.least_witness(problem)?;
            return Ok(Verdict::Colorable { witness: Coloring { green }, certificate: Certificate::Witness { green } });
        }
        let mut certificates = Vec::new();
        if problem.regime == Regime::Standard {
            if let Some(p) = parity_certificate(problem.system, problem.rays) {
                certificates.push(Certificate::Parity(p));
            }
        }
        certificates.push(Certificate::Exhaustion(stats));
        Ok(Verdict::Uncolorable { certificates })
    }

    /// Least green sequence: extend a prefix by the smallest id that still
    /// admits a completion whose greens below it are exactly the prefix.
    fn least_witness(&self, problem: &ColoringProblem) -> Result<RaySet, ColoringError> {
        let mut prefix = RaySet::EMPTY;
        let mut below = RaySet::EMPTY;
        loop {
            if check_coloring(problem, prefix).is_ok() {
                return Ok(prefix);
            }
            let mut next = None;
            for id in problem.rays - below {
                let red = below - prefix;
                if let (Some(_), _) = self.find_with(problem, prefix.with(id), red)? {
                    next = Some(id);
                    break;
                }
                below.insert(id);
            }
            let id = next.expect("a completion exists for every feasible prefix");
            prefix.insert(id);
            below.insert(id);
        }
    }

    /// Counts full valid colorings, calling `visit` on each green set.
    pub fn count_colorings(&self, problem: &ColoringProblem, visit: &mut dyn FnMut(RaySet)) -> Result<u64, ColoringError> {
        let mut search = Search::new(problem, self.node_limit);
        search.count(Solver::initial(problem), visit)
    }

    /// Branching refutation: each node picks the required basis with fewest
    /// undecided rays (lowest index on ties); each leaf ends at an all-red basis.
    pub fn proof_tree(&self, problem: &ColoringProblem) -> Result<ProofNode, ColoringError> {
        let mut search = Search::new(problem, self.node_limit);
        search.tree(Solver::initial(problem))
    }
}

impl State {
    fn restrict(mut self, problem: &ColoringProblem) -> Self {
        self.red = self.red | !problem.rays;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "camelCase")]
pub enum ProofNode {
    Branch { forced: Vec<RayId>, basis: usize, children: Vec<ProofBranch> },
    Leaf { forced: Vec<RayId>, all_red: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofBranch {
    pub green: RayId,
    pub node: ProofNode,
}

impl ProofNode {
    pub fn leaves(&self) -> usize {
        match self {
            ProofNode::Leaf { .. } => 1,
            ProofNode::Branch { children, .. } => children.iter().map(|c| c.node.leaves()).sum(),
        }
    }

    /// All-red basis indices at the leaves, left to right.
    pub fn leaf_bases(&self) -> Vec<usize> {
        match self {
            ProofNode::Leaf { all_red, .. } => vec![*all_red],
            ProofNode::Branch { children, .. } => children.iter().flat_map(|c| c.node.leaf_bases()).collect(),
        }
    }

    /// One line per leaf: chosen greens plain, forced greens as `_id_`, and
    /// the all-red basis as `*a b c d*`.
    pub fn render(&self, system: &RaySystem) -> String {
        let mut out = String::new();
        self.render_into(system, &mut Vec::new(), &mut out);
        out
    }

    fn render_into(&self, system: &RaySystem, path: &mut Vec<String>, out: &mut String) {
        let forced = match self {
            ProofNode::Branch { forced, .. } | ProofNode::Leaf { forced, .. } => forced,
        };
        let mark = path.len();
        path.extend(forced.iter().map(|id| format!("_{id}_")));
        match self {
            ProofNode::Leaf { all_red, .. } => {
                let _ = writeln!(out, "{} *{}*", path.join(" "), system.bases()[*all_red]);
            }
            ProofNode::Branch { children, .. } => {
                for c in children {
                    path.push(c.green.to_string());
                    c.node.render_into(system, path, out);
                    path.pop();
                }
            }
        }
        path.truncate(mark);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum Criticality {
    /// Uncolorable, and each listed deletion has a witness.
    Critical { witnesses: Vec<(RayId, RaySet)> },
    NotUncolorable { witness: RaySet },
    /// Deleting this ray leaves an uncolorable set.
    Redundant { ray: RayId },
}

impl Criticality {
    pub fn is_critical(&self) -> bool {
        matches!(self, Criticality::Critical { .. })
    }
}

/// Criticality in the standard regime, deleting every ray in turn.
pub fn is_critical(solver: &Solver, system: &RaySystem, subset: RaySet) -> Result<Criticality, ColoringError> {
    is_critical_at(solver, system, subset, &subset.to_vec())
}

/// Criticality checking only the given deletions, e.g. one per orbit of the
/// subset's stabilizer.
pub fn is_critical_at(
    solver: &Solver,
    system: &RaySystem,
    subset: RaySet,
    deletions: &[RayId],
) -> Result<Criticality, ColoringError> {
    let problem = ColoringProblem::standard(system, subset)?;
    let (found, _) = solver.find_with(&problem, RaySet::EMPTY, RaySet::EMPTY)?;
    if let Some(witness) = found {
        return Ok(Criticality::NotUncolorable { witness });
    }
    let results: Vec<(RayId, Option<RaySet>)> = deletions
        .par_iter()
        .map(|&id| {
            let p = problem.without(id);
            solver.find_with(&p, RaySet::EMPTY, RaySet::EMPTY).map(|(g, _)| (id, g))
        })
        .collect::<Result<_, _>>()?;
    let mut witnesses = Vec::with_capacity(results.len());
    for (id, g) in results {
        match g {
            Some(g) => witnesses.push((id, g)),
            None => return Ok(Criticality::Redundant { ray: id }),
        }
    }
    Ok(Criticality::Critical { witnesses })
}

/// Colorings counted under a basis list, with how many of them put two or
/// more greens into some basis of each watched list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CountReport {
    pub count: u64,
    pub overloading: Vec<u64>,
}

pub fn count_with_overloads(
    solver: &Solver,
    problem: &ColoringProblem,
    watched: &[&[usize]],
) -> Result<CountReport, ColoringError> {
    let masks: Vec<Vec<RaySet>> =
        watched.iter().map(|w| w.iter().map(|&k| problem.system.bases()[k].mask()).collect()).collect();
    let mut overloading = vec![0u64; watched.len()];
    let count = solver.count_colorings(problem, &mut |g| {
        for (slot, ms) in overloading.iter_mut().zip(&masks) {
            if ms.iter().any(|m| (*m & g).len() >= 2) {
                *slot += 1;
            }
        }
    })?;
    Ok(CountReport { count, overloading })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::GoldenVec4;

    fn set(ids: &[RayId]) -> RaySet {
        ids.iter().collect()
    }

    /// Axes, and the four rays `(1,±1,0,0)`, `(0,0,1,±1)`.
    fn small() -> RaySystem {
        let v = |a: [i64; 4]| GoldenVec4::from_ints(a);
        RaySystem::from_vectors(vec![
            v([1, 0, 0, 0]),
            v([0, 1, 0, 0]),
            v([0, 0, 1, 0]),
            v([0, 0, 0, 1]),
            v([1, 1, 0, 0]),
            v([1, -1, 0, 0]),
            v([0, 0, 1, 1]),
            v([0, 0, 1, -1]),
        ])
        .unwrap()
    }

    #[test]
    fn single_basis() {
        let sys = small();
        let p = ColoringProblem::standard(&sys, set(&[1, 2, 3, 4])).unwrap();
        let v = Solver::default().solve(&p).unwrap();
        assert_eq!(v.witness(), Some(set(&[1])));
        let r = ColoringProblem::restricted(&sys, set(&[1, 2, 3, 4]), &[0]).unwrap();
        assert_eq!(Solver::default().count_colorings(&r, &mut |_| {}).unwrap(), 4);
    }

    #[test]
    fn least_witness_is_least() {
        let sys = small();
        let p = ColoringProblem::standard(&sys, sys.all_rays()).unwrap();
        let w = Solver::default().solve(&p).unwrap().witness().unwrap();
        // Brute force over all 2^8 green sets.
        let mut best: Option<Vec<RayId>> = None;
        for bits in 0u64..256 {
            let g = RaySet::from_bits(bits);
            if check_coloring(&p, g).is_ok() {
                let v = g.to_vec();
                if best.as_ref().map_or(true, |b| v < *b) {
                    best = Some(v);
                }
            }
        }
        assert_eq!(w.to_vec(), best.unwrap());
    }

    #[test]
    fn count_matches_brute_force() {
        let sys = small();
        let p = ColoringProblem::standard(&sys, sys.all_rays()).unwrap();
        let n = Solver::default().count_colorings(&p, &mut |g| assert!(check_coloring(&p, g).is_ok())).unwrap();
        let brute = (0u64..256).filter(|&b| check_coloring(&p, RaySet::from_bits(b)).is_ok()).count() as u64;
        assert_eq!(n, brute);
    }

    #[test]
    fn node_limit_is_reported() {
        let sys = small();
        let p = ColoringProblem::standard(&sys, sys.all_rays()).unwrap();
        assert_eq!(Solver::new(0).solve(&p), Err(ColoringError::Undecided(0)));
    }

    #[test]
    fn audit_counts() {
        let sys = small();
        let a = audit_bases(&sys, set(&[1, 2, 3, 4]), set(&[1]));
        assert_eq!(a, BasisAudit { involved: 3, proper: 3 });
        let b = audit_bases(&sys, set(&[1, 2, 3, 4]), set(&[1, 3]));
        assert_eq!(b.proper, 2);
    }
}
