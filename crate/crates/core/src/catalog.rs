//! The 60 rays of the 600-cell with their standard numbering, the 75 bases,
//! the 25 labeled 24-cells and the 10 decompositions into disjoint 24-cells.
//!
//! The catalog is not transcribed: the 120 vertices are generated from their
//! standard orbit description, reduced to 60 projective rays, and then matched
//! against the printed ray table. Printed entries that are unique and name an
//! actual ray are taken literally; the others (lost signs) are resolved by
//! backtracking so that every printed basis quadruple is orthogonal. The
//! resolution must be unique.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::golden::{GoldenError, GoldenInt, GoldenVec4};
use crate::rayset::{RayId, RaySet};
use crate::system::{Basis, RaySystem, SystemError};
use crate::tables;

pub const RAY_COUNT: usize = 60;
pub const BASIS_COUNT: usize = 75;
pub const CELL_COUNT: usize = 25;

/// Grid letter; unprimed letters label columns, primed letters label rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
}

impl Letter {
    pub const ALL: [Letter; 5] = [Letter::A, Letter::B, Letter::C, Letter::D, Letter::E];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Letter {
        Letter::ALL[i]
    }

    pub fn as_char(self) -> char {
        (b'A' + self as u8) as char
    }

    pub fn parse(c: char) -> Option<Letter> {
        match c.to_ascii_uppercase() {
            'A' => Some(Letter::A),
            'B' => Some(Letter::B),
            'C' => Some(Letter::C),
            'D' => Some(Letter::D),
            'E' => Some(Letter::E),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Label of a 24-cell: grid column (unprimed) and grid row (primed), shown as `XU'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellLabel {
    pub column: Letter,
    pub row: Letter,
}

impl CellLabel {
    pub fn new(column: Letter, row: Letter) -> Self {
        CellLabel { column, row }
    }

    /// Position in row-major grid order (`AA', BA', ..., EE'`).
    pub fn grid_index(self) -> usize {
        self.row.index() * 5 + self.column.index()
    }

    pub fn parse(s: &str) -> Option<CellLabel> {
        let mut chars = s.chars();
        let column = Letter::parse(chars.next()?)?;
        let row = Letter::parse(chars.next()?)?;
        match (chars.next(), chars.next()) {
            (Some('\''), None) => Some(CellLabel { column, row }),
            _ => None,
        }
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}'", self.column, self.row)
    }
}

impl Serialize for CellLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CellLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CellLabel::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad cell label {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub id: RayId,
    pub vec: GoldenVec4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell24 {
    pub label: CellLabel,
    pub rays: RaySet,
    /// Indices into [`Catalog::bases`], in printed row order.
    pub bases: [usize; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecompositionKind {
    /// All cells of one grid row (primed letter).
    Row(Letter),
    /// All cells of one grid column (unprimed letter).
    Column(Letter),
}

impl fmt::Display for DecompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionKind::Row(l) => write!(f, "row {l}'"),
            DecompositionKind::Column(l) => write!(f, "column {l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub cells: [CellLabel; 5],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("expected {expected} vertices, generated {found}")]
    VertexCount { expected: usize, found: usize },
    #[error("expected 60 rays, found {0}")]
    RayCount(usize),
    #[error("ray table line {0:?} could not be parsed")]
    BadRayTable(String),
    #[error("printed ray {0} matches no generated ray")]
    NoCandidate(RayId),
    #[error("ray numbering constraints have {0} solutions, expected exactly one")]
    AmbiguousNumbering(usize),
    #[error("expected 75 bases, found {0}")]
    BasisCount(usize),
    #[error("printed basis {0:?} is not an orthogonal basis of the catalog")]
    TableBasisMissing([RayId; 4]),
    #[error("expected 25 24-cells, found {0}")]
    CellCount(usize),
    #[error("24-cell with rays {0} matches no block of the basis table")]
    UnlabeledCell(RaySet),
    #[error("expected 10 decompositions, found {0}")]
    DecompositionCount(usize),
    #[error("decomposition {0:?} is neither a grid row nor a grid column")]
    IrregularDecomposition(Vec<CellLabel>),
    #[error("catalog document ids are not exactly 1..=60")]
    BadIds,
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Arithmetic(#[from] GoldenError),
}

/// The 120 vertices of the 600-cell on the radius-2 sphere, sorted.
///
/// `(±2,0,0,0)` and permutations, `(±1,±1,±1,±1)`, and the even permutations
/// of `(±τ,±1,±κ,0)`.
pub fn generate_vertices() -> Vec<GoldenVec4> {
    let mut out = Vec::with_capacity(120);
    for i in 0..4 {
        for s in [2, -2] {
            let mut v = [0i64; 4];
            v[i] = s;
            out.push(GoldenVec4::from_ints(v));
        }
    }
    for signs in 0..16u32 {
        let v = [0, 1, 2, 3].map(|i| if signs >> i & 1 == 1 { -1 } else { 1 });
        out.push(GoldenVec4::from_ints(v));
    }
    let base = [GoldenInt::TAU, GoldenInt::ONE, GoldenInt::KAPPA, GoldenInt::ZERO];
    for perm in permutations4().into_iter().filter(|p| permutation_parity(p) == 0) {
        for signs in 0..8u32 {
            let mut v = [GoldenInt::ZERO; 4];
            for k in 0..4 {
                let x = if k < 3 && signs >> k & 1 == 1 { -base[k] } else { base[k] };
                v[perm[k]] = x;
            }
            out.push(GoldenVec4(v));
        }
    }
    out.sort();
    out
}

/// All 24 permutations of `0..4` in lexicographic order.
pub fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// 0 for even, 1 for odd.
pub fn permutation_parity(p: &[usize; 4]) -> u8 {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

/// Canonical representatives of the projective classes, sorted.
pub fn projective_rays(vertices: &[GoldenVec4]) -> Result<Vec<GoldenVec4>, GoldenError> {
    let mut rays = vertices.iter().map(GoldenVec4::canonical).collect::<Result<Vec<_>, _>>()?;
    rays.sort();
    rays.dedup();
    Ok(rays)
}

/// Outcome of reconciling generated rays with the printed ray table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    /// `vectors[id - 1]` is the canonical vector of ray `id`.
    pub vectors: Vec<GoldenVec4>,
    /// Ids whose printed rendering was not usable literally.
    pub ambiguous: Vec<RayId>,
    /// Number of candidate vectors each ambiguous id started with.
    pub candidate_counts: Vec<usize>,
}

fn parse_token(t: &str) -> Option<GoldenInt> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let x = match body {
        "τ" => GoldenInt::TAU,
        "κ" => GoldenInt::KAPPA,
        n => GoldenInt::from(n.parse::<i64>().ok()?),
    };
    Some(if neg { -x } else { x })
}

/// Printed ray table as `(id, rendering, vector)`.
pub fn printed_rays() -> Result<Vec<(RayId, String, GoldenVec4)>, CatalogError> {
    let mut out = Vec::with_capacity(RAY_COUNT);
    for line in tables::RAY_TABLE.lines() {
        let bad = || CatalogError::BadRayTable(line.to_string());
        let (id, rest) = line.split_once('=').ok_or_else(bad)?;
        let id: RayId = id.trim().parse().map_err(|_| bad())?;
        let coords: Vec<GoldenInt> = rest.split_whitespace().map(parse_token).collect::<Option<_>>().ok_or_else(bad)?;
        let coords: [GoldenInt; 4] = coords.try_into().map_err(|_| bad())?;
        out.push((id, rest.trim().to_string(), GoldenVec4(coords)));
    }
    Ok(out)
}

fn abs_pattern(v: &GoldenVec4) -> [GoldenInt; 4] {
    v.0.map(|x| if x.real_sign() < 0 { -x } else { x })
}

/// Assigns the printed numbering to the generated projective rays.
pub fn resolve_numbering(rays: &[GoldenVec4]) -> Result<Resolution, CatalogError> {
    if rays.len() != RAY_COUNT {
        return Err(CatalogError::RayCount(rays.len()));
    }
    let printed = printed_rays()?;
    let mut rendering_count: HashMap<&str, usize> = HashMap::new();
    for (_, s, _) in &printed {
        *rendering_count.entry(s.as_str()).or_default() += 1;
    }

    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); RAY_COUNT];
    let mut ambiguous = Vec::new();
    for (id, rendering, v) in &printed {
        let literal = rays.iter().position(|r| r == v);
        let slot = &mut candidates[*id as usize - 1];
        match literal {
            Some(i) if rendering_count[rendering.as_str()] == 1 => slot.push(i),
            _ => {
                let pattern = abs_pattern(v);
                slot.extend((0..rays.len()).filter(|&i| abs_pattern(&rays[i]) == pattern));
                ambiguous.push(*id);
            }
        }
        if slot.is_empty() {
            return Err(CatalogError::NoCandidate(*id));
        }
    }

    let quads: Vec<[RayId; 4]> = tables::basis_grid().iter().flatten().flatten().copied().collect();
    let mut assigned: Vec<Option<usize>> = vec![None; RAY_COUNT];
    let mut used = vec![false; rays.len()];
    for id in 1..=RAY_COUNT as RayId {
        if !ambiguous.contains(&id) {
            let i = candidates[id as usize - 1][0];
            if std::mem::replace(&mut used[i], true) {
                return Err(CatalogError::AmbiguousNumbering(0));
            }
            assigned[id as usize - 1] = Some(i);
        }
    }
    if !consistent(rays, &assigned, &quads)? {
        return Err(CatalogError::AmbiguousNumbering(0));
    }

    let mut solutions = Vec::new();
    search(rays, &candidates, &ambiguous, 0, &mut assigned, &mut used, &quads, &mut solutions)?;
    if solutions.len() != 1 {
        return Err(CatalogError::AmbiguousNumbering(solutions.len()));
    }
    let candidate_counts = ambiguous.iter().map(|&id| candidates[id as usize - 1].len()).collect();
    Ok(Resolution {
        vectors: solutions.pop().unwrap(),
        ambiguous,
        candidate_counts,
    })
}

/// Every fully assigned printed quadruple must be pairwise orthogonal.
fn consistent(rays: &[GoldenVec4], assigned: &[Option<usize>], quads: &[[RayId; 4]]) -> Result<bool, GoldenError> {
    for q in quads {
        let vs: Option<Vec<&GoldenVec4>> = q.iter().map(|&id| assigned[id as usize - 1].map(|i| &rays[i])).collect();
        if let Some(vs) = vs {
            for i in 0..4 {
                for j in i + 1..4 {
                    if !vs[i].is_orthogonal(vs[j])? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn search(
    rays: &[GoldenVec4],
    candidates: &[Vec<usize>],
    ambiguous: &[RayId],
    depth: usize,
    assigned: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    quads: &[[RayId; 4]],
    solutions: &mut Vec<Vec<GoldenVec4>>,
) -> Result<(), GoldenError> {
    let Some(&id) = ambiguous.get(depth) else {
        solutions.push(assigned.iter().map(|a| rays[a.expect("all ids assigned")]).collect());
        return Ok(());
    };
    let slot = id as usize - 1;
    for &c in &candidates[slot] {
        if used[c] {
            continue;
        }
        used[c] = true;
        assigned[slot] = Some(c);
        let relevant: Vec<[RayId; 4]> = quads.iter().filter(|q| q.contains(&id)).copied().collect();
        if consistent(rays, assigned, &relevant)? {
            search(rays, candidates, ambiguous, depth + 1, assigned, used, quads, solutions)?;
        }
        assigned[slot] = None;
        used[c] = false;
    }
    Ok(())
}

/// Histogram of inner products of one ray against the other vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborProfile {
    /// Over the 119 other signed vertices, by decreasing inner product.
    pub signed: Vec<(GoldenInt, usize)>,
    /// Over the 59 other rays, by decreasing `|⟨u,v⟩|`.
    pub unsigned: Vec<(GoldenInt, usize)>,
}

impl NeighborProfile {
    pub fn unsigned_count(&self, dot: GoldenInt) -> usize {
        self.unsigned.iter().find(|(d, _)| *d == dot).map_or(0, |&(_, n)| n)
    }
}

fn histogram(values: impl Iterator<Item = GoldenInt>) -> Vec<(GoldenInt, usize)> {
    let mut map: HashMap<GoldenInt, usize> = HashMap::new();
    for v in values {
        *map.entry(v).or_default() += 1;
    }
    let mut out: Vec<_> = map.into_iter().collect();
    out.sort_by(|x, y| y.0.to_f64().total_cmp(&x.0.to_f64()));
    out
}

#[derive(Debug, Clone)]
pub struct Catalog {
    system: RaySystem,
    cells: Vec<Cell24>,
    decompositions: Vec<Decomposition>,
}

/// Generates the 600-cell and builds the numbered catalog.
pub fn build_catalog() -> Result<Catalog, CatalogError> {
    let vertices = generate_vertices();
    if vertices.len() != 120 {
        return Err(CatalogError::VertexCount { expected: 120, found: vertices.len() });
    }
    let rays = projective_rays(&vertices)?;
    let resolution = resolve_numbering(&rays)?;
    Catalog::from_vectors(resolution.vectors)
}

impl Catalog {
    /// Derives bases, cells and decompositions from numbered vectors and
    /// labels them against the printed basis table.
    pub fn from_vectors(vectors: Vec<GoldenVec4>) -> Result<Self, CatalogError> {
        if vectors.len() != RAY_COUNT {
            return Err(CatalogError::RayCount(vectors.len()));
        }
        let mut system = RaySystem::from_vectors(vectors)?;
        if system.bases().len() != BASIS_COUNT {
            return Err(CatalogError::BasisCount(system.bases().len()));
        }

        // Bases in printed order: cell by cell (row-major), three rows each.
        let grid = tables::basis_grid();
        let mut ordered = Vec::with_capacity(BASIS_COUNT);
        for row in 0..5 {
            for col in 0..5 {
                for quad in grid[row][col] {
                    let b = Basis::new(quad)?;
                    if system.basis_index(&b).is_none() {
                        return Err(CatalogError::TableBasisMissing(quad));
                    }
                    ordered.push(b);
                }
            }
        }
        system.reorder_bases(ordered);

        let triples = unbiased_triples(&system)?;
        if triples.len() != CELL_COUNT {
            return Err(CatalogError::CellCount(triples.len()));
        }
        let mut cells: Vec<Option<Cell24>> = vec![None; CELL_COUNT];
        for t in triples {
            let rays = t.iter().fold(RaySet::EMPTY, |acc, &i| acc | system.bases()[i].mask());
            // Printed bases of a cell occupy consecutive indices 3g..3g+3.
            let g = t[0] / 3;
            if t != [3 * g, 3 * g + 1, 3 * g + 2] {
                return Err(CatalogError::UnlabeledCell(rays));
            }
            let label = CellLabel::new(Letter::from_index(g % 5), Letter::from_index(g / 5));
            cells[g] = Some(Cell24 { label, rays, bases: t });
        }
        let cells: Vec<Cell24> = cells.into_iter().map(|c| c.expect("25 distinct cells")).collect();

        let decompositions = find_decompositions(&cells)?;
        if decompositions.len() != 10 {
            return Err(CatalogError::DecompositionCount(decompositions.len()));
        }
        Ok(Catalog { system, cells, decompositions })
    }

    pub fn system(&self) -> &RaySystem {
        &self.system
    }

    pub fn rays(&self) -> impl Iterator<Item = Ray> + '_ {
        self.system.vectors().iter().enumerate().map(|(i, v)| Ray { id: i as RayId + 1, vec: *v })
    }

    pub fn vector(&self, id: RayId) -> &GoldenVec4 {
        self.system.vector(id)
    }

    pub fn bases(&self) -> &[Basis] {
        self.system.bases()
    }

    /// Cells in row-major grid order.
    pub fn cells(&self) -> &[Cell24] {
        &self.cells
    }

    pub fn cell(&self, label: CellLabel) -> &Cell24 {
        &self.cells[label.grid_index()]
    }

    pub fn decompositions(&self) -> &[Decomposition] {
        &self.decompositions
    }

    /// Id of the ray parallel to `v`, if any.
    pub fn find(&self, v: &GoldenVec4) -> Option<RayId> {
        let c = v.canonical().ok()?;
        self.system.vectors().iter().position(|r| *r == c).map(|i| i as RayId + 1)
    }

    pub fn neighbor_profile(&self, id: RayId) -> Result<NeighborProfile, GoldenError> {
        let me = self.vector(id);
        let mut signed = Vec::with_capacity(119);
        let mut unsigned = Vec::with_capacity(59);
        for r in self.rays() {
            let d = me.dot(&r.vec)?;
            if r.id == id {
                signed.push(-d);
                continue;
            }
            signed.push(d);
            signed.push(-d);
            unsigned.push(if d.real_sign() < 0 { -d } else { d });
        }
        Ok(NeighborProfile {
            signed: histogram(signed.into_iter()),
            unsigned: histogram(unsigned.into_iter()),
        })
    }

    pub fn to_doc(&self) -> CatalogDoc {
        CatalogDoc {
            rays: self.rays().collect(),
            bases: self.bases().to_vec(),
            cells: self
                .cells
                .iter()
                .map(|c| CellDoc {
                    label: c.label,
                    rays: c.rays,
                    bases: c.bases.iter().map(|&i| self.bases()[i]).collect(),
                })
                .collect(),
            decompositions: self
                .decompositions
                .iter()
                .map(|d| DecompositionDoc { name: d.kind.to_string(), cells: d.cells.to_vec() })
                .collect(),
        }
    }

    /// Rebuilds a catalog from the ray vectors of a document; derived tables are recomputed.
    pub fn from_doc(doc: &CatalogDoc) -> Result<Self, CatalogError> {
        let mut rays = doc.rays.clone();
        rays.sort_by_key(|r| r.id);
        if rays.len() != RAY_COUNT || rays.iter().enumerate().any(|(i, r)| r.id as usize != i + 1) {
            return Err(CatalogError::BadIds);
        }
        Catalog::from_vectors(rays.into_iter().map(|r| r.vec).collect())
    }

    /// Ray table facsimile: four rays per line, `id = c c c c`.
    pub fn ray_table_text(&self) -> String {
        let mut out = String::new();
        for chunk in self.rays().collect::<Vec<_>>().chunks(4) {
            let line: Vec<String> = chunk
                .iter()
                .map(|r| format!("{} = {}", r.id, r.vec.0.iter().map(|x| x.token()).collect::<Vec<_>>().join(" ")))
                .collect();
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        out
    }

    /// Basis table facsimile in grid layout, three text lines per grid row.
    /// `mark(basis_index, id)` renders each entry.
    pub fn basis_table_text(&self, mark: &dyn Fn(usize, RayId) -> String) -> String {
        let mut out = String::from("\tA\tB\tC\tD\tE\n");
        for row in Letter::ALL {
            for k in 0..3 {
                if k == 0 {
                    out.push_str(&format!("{row}'"));
                }
                for col in Letter::ALL {
                    out.push('\t');
                    out.push_str(&self.render_basis(col, row, k, mark));
                }
                out.push('\n');
            }
        }
        out
    }

    /// Grid with one text line per grid row, each cell listing its three bases in sequence.
    pub fn cell_table_text(&self, mark: &dyn Fn(usize, RayId) -> String) -> String {
        let mut out = String::from("\tA\tB\tC\tD\tE\n");
        for row in Letter::ALL {
            out.push_str(&format!("{row}'"));
            for col in Letter::ALL {
                let parts: Vec<String> = (0..3).map(|k| self.render_basis(col, row, k, mark)).collect();
                out.push('\t');
                out.push_str(&parts.join(" "));
            }
            out.push('\n');
        }
        out
    }

    fn render_basis(&self, col: Letter, row: Letter, k: usize, mark: &dyn Fn(usize, RayId) -> String) -> String {
        let index = self.cell(CellLabel::new(col, row)).bases[k];
        let ids: Vec<String> =
            printed_order(&self.bases()[index], row, col, k).iter().map(|&id| mark(index, id)).collect();
        ids.join(" ")
    }
}

/// Order of a basis's ids as printed in the basis table (falls back to sorted).
pub fn printed_order(basis: &Basis, row: Letter, col: Letter, k: usize) -> [RayId; 4] {
    let printed = tables::basis_grid()[row.index()][col.index()][k];
    if Basis::new(printed).ok().as_ref() == Some(basis) {
        printed
    } else {
        basis.ids()
    }
}

/// Index triples of pairwise mutually unbiased bases (`|⟨u,v⟩|² = 4` across bases).
fn unbiased_triples(system: &RaySystem) -> Result<Vec<[usize; 3]>, GoldenError> {
    let n = system.bases().len();
    let four = GoldenInt::from(4);
    let mut unbiased = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let mut ok = true;
            'pairs: for a in system.bases()[i].ids() {
                for b in system.bases()[j].ids() {
                    let d = system.vector(a).dot(system.vector(b))?;
                    if d.checked_mul(d)? != four {
                        ok = false;
                        break 'pairs;
                    }
                }
            }
            unbiased[i][j] = ok;
            unbiased[j][i] = ok;
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !unbiased[i][j] {
                continue;
            }
            for k in j + 1..n {
                if unbiased[i][k] && unbiased[j][k] {
                    out.push([i, j, k]);
                }
            }
        }
    }
    Ok(out)
}

/// Every way of partitioning the 60 rays into 5 disjoint cells.
fn find_decompositions(cells: &[Cell24]) -> Result<Vec<Decomposition>, CatalogError> {
    fn go(cells: &[Cell24], covered: RaySet, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let uncovered = RaySet::full(RAY_COUNT) - covered;
        let Some(first) = uncovered.first() else {
            out.push(chosen.clone());
            return;
        };
        for (i, c) in cells.iter().enumerate() {
            if c.rays.contains(first) && c.rays.is_disjoint(covered) {
                chosen.push(i);
                go(cells, covered | c.rays, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut raw = Vec::new();
    go(cells, RaySet::EMPTY, &mut Vec::new(), &mut raw);
    let mut out = Vec::new();
    for mut idx in raw {
        idx.sort_unstable();
        let labels: Vec<CellLabel> = idx.iter().map(|&i| cells[i].label).collect();
        let kind = if labels.iter().all(|l| l.row == labels[0].row) {
            DecompositionKind::Row(labels[0].row)
        } else if labels.iter().all(|l| l.column == labels[0].column) {
            DecompositionKind::Column(labels[0].column)
        } else {
            return Err(CatalogError::IrregularDecomposition(labels));
        };
        out.push(Decomposition { kind, cells: labels.try_into().expect("five cells") });
    }
    out.sort_by_key(|d| d.kind);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub label: CellLabel,
    pub rays: RaySet,
    pub bases: Vec<Basis>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub name: String,
    pub cells: Vec<CellLabel>,
}

/// `catalog.json` layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogDoc {
    pub rays: Vec<Ray>,
    pub bases: Vec<Basis>,
    pub cells: Vec<CellDoc>,
    pub decompositions: Vec<DecompositionDoc>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn catalog() -> &'static Catalog {
        static CAT: OnceLock<Catalog> = OnceLock::new();
        CAT.get_or_init(|| build_catalog().unwrap())
    }

    #[test]
    fn vertex_orbit_sizes() {
        let v = generate_vertices();
        assert_eq!(v.len(), 120);
        let two = GoldenInt::from(2);
        assert_eq!(v.iter().filter(|x| x.0.iter().any(|c| *c == two || *c == -two)).count(), 8);
        assert_eq!(v.iter().filter(|x| x.0.iter().all(|c| c.b == 0 && c.a.abs() == 1)).count(), 16);
        assert!(v.iter().all(|x| x.norm_sq().unwrap() == GoldenInt::from(4)));
        assert_eq!(projective_rays(&v).unwrap().len(), 60);
    }

    #[test]
    fn resolution_touches_only_the_duplicated_entries() {
        let rays = projective_rays(&generate_vertices()).unwrap();
        let r = resolve_numbering(&rays).unwrap();
        assert_eq!(r.ambiguous, vec![6, 7, 8, 9, 11, 23, 26]);
        assert_eq!(r.candidate_counts, vec![8, 8, 8, 8, 8, 4, 4]);
    }

    #[test]
    fn numbering_matches_printed_values() {
        let c = catalog();
        let t = GoldenInt::TAU;
        let k = GoldenInt::KAPPA;
        let z = GoldenInt::ZERO;
        let one = GoldenInt::ONE;
        assert_eq!(*c.vector(1), GoldenVec4::from_ints([2, 0, 0, 0]));
        assert_eq!(*c.vector(16), GoldenVec4([one, t, z, k]));
        let expect = [
            [1, 1, 1, 1],
            [1, 1, -1, -1],
            [1, -1, 1, -1],
            [1, -1, -1, 1],
            [1, -1, -1, -1],
            [1, -1, 1, 1],
            [1, 1, -1, 1],
            [1, 1, 1, -1],
        ];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(*c.vector(5 + i as RayId), GoldenVec4::from_ints(*e), "ray {}", 5 + i);
        }
        // The two lost-sign entries in the τ block.
        assert_eq!(*c.vector(23), GoldenVec4([z, t, -k, -one]));
        assert_eq!(*c.vector(26), GoldenVec4([z, t, -k, one]));
    }

    #[test]
    fn catalog_invariants() {
        let c = catalog();
        let four = GoldenInt::from(4);
        for r in c.rays() {
            assert_eq!(r.vec.norm_sq().unwrap(), four);
            assert_eq!(c.system().neighbors(r.id).len(), 15, "ray {}", r.id);
        }
        for a in 1..=60u8 {
            for b in a + 1..=60 {
                assert!(!c.vector(a).is_parallel(c.vector(b)).unwrap());
            }
        }
        // Every orthogonal pair lies in some basis.
        for a in 1..=60u8 {
            let covered = c.bases().iter().filter(|b| b.contains(a)).fold(RaySet::EMPTY, |acc, b| acc | b.mask());
            assert_eq!(covered.without(a), c.system().neighbors(a));
            assert_eq!(c.bases().iter().filter(|b| b.contains(a)).count(), 5);
        }
        assert_eq!(c.bases().len() * 4, 60 * 5);
    }

    #[test]
    fn bases_and_cells() {
        let c = catalog();
        assert_eq!(c.bases().len(), 75);
        assert!(c.bases().contains(&Basis::new([1, 2, 3, 4]).unwrap()));
        assert!(c.bases().contains(&Basis::new([31, 42, 51, 16]).unwrap()));
        assert_eq!(c.cells().len(), 25);
        let aa = c.cell(CellLabel::new(Letter::A, Letter::A));
        assert_eq!(aa.rays, RaySet::full(12));
        for id in 1..=60u8 {
            assert_eq!(c.cells().iter().filter(|cell| cell.rays.contains(id)).count(), 5);
        }
        for x in c.cells() {
            for y in c.cells() {
                if x.label != y.label {
                    let n = (x.rays & y.rays).len();
                    assert!(n == 0 || n == 3, "{} {} share {n}", x.label, y.label);
                }
            }
        }
        let ab = c.cell(CellLabel::parse("AB'").unwrap());
        let db = c.cell(CellLabel::parse("DB'").unwrap());
        assert!((aa.rays & ab.rays).is_empty());
        assert_eq!((aa.rays & db.rays).len(), 3);
    }

    #[test]
    fn decompositions() {
        let c = catalog();
        assert_eq!(c.decompositions().len(), 10);
        for d in c.decompositions() {
            let mut union = RaySet::EMPTY;
            for l in d.cells {
                assert!(union.is_disjoint(c.cell(l).rays));
                union = union | c.cell(l).rays;
            }
            assert_eq!(union, RaySet::full(60));
        }
        let row_a = c.decompositions().iter().find(|d| d.kind == DecompositionKind::Row(Letter::A)).unwrap();
        assert!(row_a.cells.iter().all(|l| l.row == Letter::A));
    }

    #[test]
    fn add_twelve_preserves_bases() {
        let c = catalog();
        for b in c.bases() {
            let shifted = Basis::new(b.ids().map(|id| (id + 11) % 60 + 1)).unwrap();
            assert!(c.bases().contains(&shifted));
        }
    }

    #[test]
    fn neighbor_shells() {
        let c = catalog();
        let two = GoldenInt::from(2);
        let p1 = c.neighbor_profile(1).unwrap();
        assert_eq!(p1.unsigned_count(two * GoldenInt::TAU), 12);
        assert_eq!(p1.unsigned_count(two), 20);
        assert_eq!(p1.unsigned_count(two * GoldenInt::KAPPA), 12);
        assert_eq!(p1.unsigned_count(GoldenInt::ZERO), 15);
        assert_eq!(p1.signed.iter().map(|x| x.1).sum::<usize>(), 119);
        for id in 2..=60 {
            assert_eq!(c.neighbor_profile(id).unwrap(), p1);
        }
    }

    #[test]
    fn doc_round_trip_and_corruption() {
        let c = catalog();
        let doc = c.to_doc();
        let json = serde_json::to_string(&doc).unwrap();
        let back: CatalogDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(Catalog::from_doc(&back).unwrap().to_doc(), doc);

        let mut bad = doc.clone();
        let v = bad.rays[0].vec;
        bad.rays[0].vec = bad.rays[12].vec;
        bad.rays[12].vec = v;
        assert!(matches!(Catalog::from_doc(&bad), Err(CatalogError::TableBasisMissing(_))));
    }

    #[test]
    fn labels_parse() {
        assert_eq!(CellLabel::parse("DB'").unwrap(), CellLabel::new(Letter::D, Letter::B));
        assert!(CellLabel::parse("DB").is_none());
        assert!(CellLabel::parse("FB'").is_none());
        assert_eq!(CellLabel::new(Letter::A, Letter::C).to_string(), "AC'");
    }
}
