//! Critical sets built from chains of dual-pair boxes.
//!
//! A chain is a set of letter pairs: a Hamiltonian 5-cycle on `A..E` (30-ray
//! sets) or the complete bipartite graph between a 2-subset and its 3-subset
//! complement (36-ray sets). Applied to a grid row `U'V'` it keeps the six
//! rays of each box `(U'V', XY)` with `XY` in the chain; applied with primed
//! letters to a grid column it keeps the boxes of that column instead.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::catalog::{Catalog, Letter};
use crate::coloring::{classify_bases, is_critical_at, parity_certificate, ColoringError, Criticality, Solver};
use crate::lines::{LetterPair, LineGeometry};
use crate::rayset::{RayId, RaySet};
use crate::symmetry::SymmetryGroup;
use crate::tables;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriticalError {
    #[error("cannot parse chain {0:?}")]
    BadChain(String),
    #[error("chain {chain} does not match {line}: primed chains go on columns, unprimed on rows")]
    Orientation { chain: String, line: GridLine },
    #[error("{provenance}: {reason}")]
    Verification { provenance: String, reason: String },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ChainKind {
    Cycle5,
    Bipartite23,
}

impl ChainKind {
    pub fn set_size(self) -> usize {
        match self {
            ChainKind::Cycle5 => 30,
            ChainKind::Bipartite23 => 36,
        }
    }
}

/// A chain of letter pairs, kept in its printed order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    kind: ChainKind,
    steps: Vec<(Letter, Letter)>,
    primed: bool,
}

impl Chain {
    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    pub fn primed(&self) -> bool {
        self.primed
    }

    pub fn with_primes(&self, primed: bool) -> Chain {
        Chain { primed, ..self.clone() }
    }

    pub fn edges(&self) -> Vec<LetterPair> {
        let mut e: Vec<LetterPair> = self.steps.iter().filter_map(|&(a, b)| LetterPair::new(a, b)).collect();
        e.sort();
        e
    }

    /// Bit `k` set for the `k`-th letter pair in grid order.
    pub fn edge_mask(&self) -> u16 {
        self.edges().iter().fold(0, |m, p| m | 1 << p.index())
    }

    /// Parses `AB-BC-CD-DE-EA` or its primed form.
    pub fn parse(s: &str) -> Result<Chain, CriticalError> {
        let bad = || CriticalError::BadChain(s.to_string());
        let primed = s.contains('\'');
        let mut steps = Vec::new();
        for part in s.trim().split('-') {
            let letters: Vec<Letter> =
                part.chars().filter(|c| *c != '\'').map(Letter::parse).collect::<Option<_>>().ok_or_else(bad)?;
            match letters[..] {
                [a, b] if a != b => steps.push((a, b)),
                _ => return Err(bad()),
            }
        }
        let chain = Chain { kind: ChainKind::Cycle5, steps, primed };
        let mask = chain.edge_mask();
        if mask.count_ones() as usize != chain.steps.len() {
            return Err(bad());
        }
        let kind = if cycle_chains().iter().any(|c| c.edge_mask() == mask) {
            ChainKind::Cycle5
        } else if bipartite_chains().iter().any(|c| c.edge_mask() == mask) {
            ChainKind::Bipartite23
        } else {
            return Err(bad());
        };
        Ok(Chain { kind, ..chain })
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = if self.primed { "'" } else { "" };
        for (i, (a, b)) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, "-")?;
            }
            write!(f, "{a}{p}{b}{p}")?;
        }
        Ok(())
    }
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The 12 Hamiltonian cycles on `A..E`, walked from `A` with the second
/// letter smaller than the last.
fn cycle_chains() -> Vec<Chain> {
    let mut out = Vec::new();
    for p in crate::catalog::permutations4() {
        let walk: Vec<Letter> = std::iter::once(Letter::A).chain(p.iter().map(|&k| Letter::from_index(k + 1))).collect();
        if walk[1] > walk[4] {
            continue;
        }
        let steps = (0..5).map(|i| (walk[i], walk[(i + 1) % 5])).collect();
        out.push(Chain { kind: ChainKind::Cycle5, steps, primed: false });
    }
    out
}

/// The 10 bipartite chains, one per 2-subset in grid order.
fn bipartite_chains() -> Vec<Chain> {
    LetterPair::all()
        .into_iter()
        .map(|pair| {
            let rest: Vec<Letter> = Letter::ALL.into_iter().filter(|l| !pair.contains(*l)).collect();
            let steps = [pair.0, pair.1].iter().flat_map(|&x| rest.iter().map(move |&z| (x, z))).collect();
            Chain { kind: ChainKind::Bipartite23, steps, primed: false }
        })
        .collect()
}

pub fn enumerate_chains(kind: ChainKind) -> Vec<Chain> {
    match kind {
        ChainKind::Cycle5 => cycle_chains(),
        ChainKind::Bipartite23 => bipartite_chains(),
    }
}

/// The cycle chain on the five letter pairs not used by `chain`.
pub fn complementary_chain(chain: &Chain) -> Option<Chain> {
    let mask = !chain.edge_mask() & 0x3ff;
    cycle_chains().into_iter().find(|c| c.edge_mask() == mask).map(|c| c.with_primes(chain.primed))
}

/// A row (primed pair) or column (unprimed pair) of the dual-pair grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GridLine {
    Row(LetterPair),
    Column(LetterPair),
}

impl GridLine {
    /// Rows `A'B'..D'E'`, then columns `AB..DE`.
    pub fn all() -> Vec<GridLine> {
        let rows = LetterPair::all().into_iter().map(GridLine::Row);
        rows.chain(LetterPair::all().into_iter().map(GridLine::Column)).collect()
    }
}

impl fmt::Display for GridLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridLine::Row(p) => write!(f, "row {}'{}'", p.0, p.1),
            GridLine::Column(p) => write!(f, "column {p}"),
        }
    }
}

impl Serialize for GridLine {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Rays of the boxes the chain selects along a grid line.
pub fn apply_chain(grid: &LineGeometry, chain: &Chain, line: GridLine) -> Result<RaySet, CriticalError> {
    let boxes: Vec<RaySet> = match (line, chain.primed) {
        (GridLine::Row(r), false) => chain.edges().into_iter().map(|e| grid.grid_box(r, e).rays()).collect(),
        (GridLine::Column(c), true) => chain.edges().into_iter().map(|e| grid.grid_box(e, c).rays()).collect(),
        _ => return Err(CriticalError::Orientation { chain: chain.to_string(), line }),
    };
    Ok(boxes.into_iter().fold(RaySet::EMPTY, |a, b| a | b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub chain: Chain,
    pub line: GridLine,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.chain, self.line)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalSetRecord {
    pub rays: RaySet,
    pub kind: ChainKind,
    /// Every (chain, grid line) application producing this set, in enumeration order.
    pub provenance: Vec<Provenance>,
}

/// Every chain of `kind` applied to every grid line, rows first.
pub fn chain_applications(grid: &LineGeometry, kind: ChainKind) -> Vec<(Provenance, RaySet)> {
    let mut out = Vec::new();
    for line in GridLine::all() {
        let primed = matches!(line, GridLine::Column(_));
        for chain in enumerate_chains(kind) {
            let chain = chain.with_primes(primed);
            let rays = apply_chain(grid, &chain, line).expect("orientation matches");
            out.push((Provenance { chain, line }, rays));
        }
    }
    out
}

/// Distinct ray sets from all chain applications, in order of first appearance.
pub fn enumerate_critical_sets(grid: &LineGeometry, kind: ChainKind) -> Vec<CriticalSetRecord> {
    let mut index: BTreeMap<RaySet, usize> = BTreeMap::new();
    let mut out: Vec<CriticalSetRecord> = Vec::new();
    for (prov, rays) in chain_applications(grid, kind) {
        match index.get(&rays) {
            Some(&i) => out[i].provenance.push(prov),
            None => {
                index.insert(rays, out.len());
                out.push(CriticalSetRecord { rays, kind, provenance: vec![prov] });
            }
        }
    }
    out
}

/// Index pairs `(i, j)`, `i < j`, of sets that are disjoint and cover all 60 rays.
pub fn complementary_pairs(records: &[CriticalSetRecord]) -> Vec<(usize, usize)> {
    let full = RaySet::full(60);
    let mut out = Vec::new();
    for i in 0..records.len() {
        for j in i + 1..records.len() {
            if records[i].rays.is_disjoint(records[j].rays) && (records[i].rays | records[j].rays) == full {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub enum VerifyMode<'g> {
    /// Delete every ray of every set.
    Full,
    /// Delete one ray per orbit of each set's stabilizer.
    Fast(&'g SymmetryGroup),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RecordCheck {
    pub rays: RaySet,
    pub census: (usize, usize, usize, usize, usize),
    pub parity: bool,
    pub critical: bool,
    pub deletions_checked: usize,
}

/// Representatives of the orbits of `seed`'s stabilizer on its own rays.
pub fn stabilizer_orbit_representatives(group: &SymmetryGroup, seed: RaySet) -> Vec<RayId> {
    let stab = group.stabilizer(seed);
    let mut left = seed;
    let mut reps = Vec::new();
    while let Some(r) = left.first() {
        reps.push(r);
        for g in &stab {
            left.remove(g.apply(r));
        }
    }
    reps
}

/// Census, parity and criticality of each record.
pub fn verify_records(
    solver: &Solver,
    catalog: &Catalog,
    records: &[CriticalSetRecord],
    mode: VerifyMode,
) -> Result<Vec<RecordCheck>, CriticalError> {
    let system = catalog.system();
    records
        .par_iter()
        .map(|rec| {
            let deletions = match mode {
                VerifyMode::Full => rec.rays.to_vec(),
                VerifyMode::Fast(group) => stabilizer_orbit_representatives(group, rec.rays),
            };
            let crit = is_critical_at(solver, system, rec.rays, &deletions)?;
            Ok(RecordCheck {
                rays: rec.rays,
                census: classify_bases(system, rec.rays).counts(),
                parity: parity_certificate(system, rec.rays).is_some(),
                critical: crit.is_critical(),
                deletions_checked: match crit {
                    Criticality::Critical { witnesses } => witnesses.len(),
                    _ => 0,
                },
            })
        })
        .collect()
}

/// Cell grid with the bases lying in `bold` marked `*id*` and those in
/// `italic` marked `_id_`.
pub fn complementary_pair_table(catalog: &Catalog, bold: RaySet, italic: RaySet) -> String {
    let mask_of = |i: usize| catalog.bases()[i].mask();
    catalog.cell_table_text(&|i, id| {
        if mask_of(i).is_subset(bold) {
            format!("*{id}*")
        } else if mask_of(i).is_subset(italic) {
            format!("_{id}_")
        } else {
            id.to_string()
        }
    })
}

/// Cell grid with every ray of `set` marked `*id*`.
pub fn highlighted_set_table(catalog: &Catalog, set: RaySet) -> String {
    catalog.cell_table_text(&|_, id| if set.contains(id) { format!("*{id}*") } else { id.to_string() })
}

/// Parses the printed chain tables into chains (complementary pairs side by side).
pub fn printed_chains(kind: ChainKind) -> Result<Vec<Vec<Chain>>, CriticalError> {
    let text = match kind {
        ChainKind::Cycle5 => tables::CYCLE_CHAIN_TABLE,
        ChainKind::Bipartite23 => tables::BIPARTITE_CHAIN_TABLE,
    };
    text.lines().map(|l| l.split_whitespace().map(Chain::parse).collect()).collect()
}
