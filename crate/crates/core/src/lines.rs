//! Reye lines of the 24-cells, the 200 distinct lines of the 600-cell and
//! their arrangement into 100 dual pairs on a 10×10 grid.
//!
//! A line is a rank-2 triple of rays inside one 24-cell. Every line lies in
//! exactly two cells, which differ in both grid letters, so the pair of cells
//! fixes a grid box: row `U'V'` (primed letters) and column `XY` (unprimed).
//! The left line of a box originates in `XU'` and `YV'`, the right (dual) line
//! in `XV'` and `YU'`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, Cell24, CellLabel, Letter};
use crate::golden::{triple_rank, GoldenError};
use crate::rayset::{RayId, RaySet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("cell {label} has {found} lines, expected 16")]
    LineCount { label: CellLabel, found: usize },
    #[error("line {0:?} lies in {1} cells, expected 2")]
    Multiplicity([RayId; 3], usize),
    #[error("line {0:?} has {1} duals, expected exactly one")]
    DualCount([RayId; 3], usize),
    #[error("line {0:?} originates in cells {1} and {2} which share a grid letter")]
    Degenerate([RayId; 3], CellLabel, CellLabel),
    #[error("grid box {0} is incomplete")]
    IncompleteBox(String),
    #[error(transparent)]
    Arithmetic(#[from] GoldenError),
}

/// Unordered pair of distinct grid letters, stored with `first < second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LetterPair(pub Letter, pub Letter);

impl LetterPair {
    /// The 10 pairs in grid order `AB, AC, AD, AE, BC, BD, BE, CD, CE, DE`.
    pub fn all() -> [LetterPair; 10] {
        let mut out = [LetterPair(Letter::A, Letter::B); 10];
        let mut k = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                out[k] = LetterPair(Letter::from_index(i), Letter::from_index(j));
                k += 1;
            }
        }
        out
    }

    pub fn new(a: Letter, b: Letter) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(LetterPair(a, b)),
            std::cmp::Ordering::Greater => Some(LetterPair(b, a)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn index(self) -> usize {
        LetterPair::all().iter().position(|p| *p == self).expect("normalized pair")
    }

    pub fn parse(s: &str) -> Option<Self> {
        let letters: Vec<Letter> = s.chars().filter(|c| *c != '\'' && *c != '-').map(Letter::parse).collect::<Option<_>>()?;
        match letters[..] {
            [a, b] => LetterPair::new(a, b),
            _ => None,
        }
    }

    pub fn contains(self, l: Letter) -> bool {
        self.0 == l || self.1 == l
    }
}

impl fmt::Display for LetterPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Line {
    pub points: [RayId; 3],
    /// The two cells containing the line, sorted.
    pub cells: [CellLabel; 2],
}

impl Line {
    pub fn mask(&self) -> RaySet {
        self.points.iter().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualPair {
    pub left: Line,
    pub right: Line,
    /// Primed-letter pair of the grid row.
    pub row: LetterPair,
    /// Unprimed-letter pair of the grid column.
    pub column: LetterPair,
}

impl DualPair {
    pub fn rays(&self) -> RaySet {
        self.left.mask() | self.right.mask()
    }
}

/// The rank-2 triples among a cell's 12 rays, sorted.
pub fn lines_of_cell(catalog: &Catalog, cell: &Cell24) -> Result<Vec<[RayId; 3]>, GoldenError> {
    let ids = cell.rays.to_vec();
    let mut out = Vec::new();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            for k in j + 1..ids.len() {
                let (a, b, c) = (ids[i], ids[j], ids[k]);
                if triple_rank(catalog.vector(a), catalog.vector(b), catalog.vector(c))? == 2 {
                    out.push([a, b, c]);
                }
            }
        }
    }
    Ok(out)
}

/// Lines predicted by the Reye template from a cell's three basis rows
/// `[a b c d], [e f g h], [i j k l]`: `{row0[p], row1[q], row2[p ^ q]}`.
pub fn template_lines(rows: [[RayId; 4]; 3]) -> Vec<[RayId; 3]> {
    let mut out = Vec::with_capacity(16);
    for p in 0..4 {
        for q in 0..4 {
            let mut t = [rows[0][p], rows[1][q], rows[2][p ^ q]];
            t.sort_unstable();
            out.push(t);
        }
    }
    out.sort_unstable();
    out
}

/// All 200 lines of the 600-cell, each with the two cells it lies in.
#[derive(Debug, Clone)]
pub struct LineGeometry {
    lines: Vec<Line>,
    grid: Vec<DualPair>,
    /// Total number of (cell, line) incidences before deduplication.
    pub naive_total: usize,
}

impl LineGeometry {
    pub fn build(catalog: &Catalog) -> Result<Self, LineError> {
        let mut origin: BTreeMap<[RayId; 3], Vec<CellLabel>> = BTreeMap::new();
        let mut naive_total = 0;
        for cell in catalog.cells() {
            let lines = lines_of_cell(catalog, cell)?;
            if lines.len() != 16 {
                return Err(LineError::LineCount { label: cell.label, found: lines.len() });
            }
            naive_total += lines.len();
            for l in lines {
                origin.entry(l).or_default().push(cell.label);
            }
        }
        let mut lines = Vec::with_capacity(origin.len());
        for (points, cells) in origin {
            if cells.len() != 2 {
                return Err(LineError::Multiplicity(points, cells.len()));
            }
            let mut cells = [cells[0], cells[1]];
            cells.sort();
            lines.push(Line { points, cells });
        }
        let grid = arrange_grid(catalog, &lines)?;
        Ok(LineGeometry { lines, grid, naive_total })
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    /// Dual pairs in row-major grid order (row pairs `A'B'..D'E'`, column pairs `AB..DE`).
    pub fn dual_pairs(&self) -> &[DualPair] {
        &self.grid
    }

    pub fn grid_box(&self, row: LetterPair, column: LetterPair) -> &DualPair {
        &self.grid[row.index() * 10 + column.index()]
    }

    pub fn line(&self, points: [RayId; 3]) -> Option<&Line> {
        let mut p = points;
        p.sort_unstable();
        self.lines.iter().find(|l| l.points == p)
    }

    pub fn dual_of(&self, points: [RayId; 3]) -> Option<&Line> {
        let mut p = points;
        p.sort_unstable();
        self.grid.iter().find_map(|d| {
            if d.left.points == p {
                Some(&d.right)
            } else if d.right.points == p {
                Some(&d.left)
            } else {
                None
            }
        })
    }

    /// Grid facsimile: one text row per primed pair, each box printing the two
    /// lines interleaved (left and right entries alternate, as when the pair is
    /// displayed vertically).
    pub fn grid_text(&self) -> String {
        let mut out = String::from("\t");
        let header: Vec<String> = LetterPair::all().iter().map(|p| format!("{} {}", p.0, p.1)).collect();
        out.push('\t');
        out.push_str(&header.join("\t"));
        out.push('\n');
        for row in LetterPair::all() {
            out.push_str(&format!("{}'\t{}'", row.0, row.1));
            for col in LetterPair::all() {
                let b = self.grid_box(row, col);
                let cells: Vec<String> = (0..3)
                    .flat_map(|k| [b.left.points[k], b.right.points[k]])
                    .map(|id| id.to_string())
                    .collect();
                out.push('\t');
                out.push_str(&cells.join(" "));
            }
            out.push('\n');
        }
        out
    }
}

fn arrange_grid(catalog: &Catalog, lines: &[Line]) -> Result<Vec<DualPair>, LineError> {
    // Duals by brute force: all 9 cross products vanish.
    let mut dual = vec![usize::MAX; lines.len()];
    for (i, l) in lines.iter().enumerate() {
        let mut found = Vec::new();
        for (j, m) in lines.iter().enumerate() {
            let mut all = true;
            'cross: for a in l.points {
                for b in m.points {
                    if !catalog.vector(a).is_orthogonal(catalog.vector(b))? {
                        all = false;
                        break 'cross;
                    }
                }
            }
            if all {
                found.push(j);
            }
        }
        if found.len() != 1 {
            return Err(LineError::DualCount(l.points, found.len()));
        }
        dual[i] = found[0];
    }

    let mut slots: Vec<[Option<Line>; 2]> = vec![[None, None]; 100];
    for l in lines {
        let [c1, c2] = l.cells;
        let (Some(cols), Some(rows)) = (LetterPair::new(c1.column, c2.column), LetterPair::new(c1.row, c2.row)) else {
            return Err(LineError::Degenerate(l.points, c1, c2));
        };
        // Left iff the smaller column letter sits with the smaller row letter.
        let x_cell = if c1.column == cols.0 { c1 } else { c2 };
        let side = usize::from(x_cell.row != rows.0);
        slots[rows.index() * 10 + cols.index()][side] = Some(*l);
    }
    let pairs = LetterPair::all();
    let mut grid = Vec::with_capacity(100);
    for (k, slot) in slots.into_iter().enumerate() {
        let (row, column) = (pairs[k / 10], pairs[k % 10]);
        let name = || format!("{}'{}' {}", row.0, row.1, column);
        let (Some(left), Some(right)) = (slot[0], slot[1]) else {
            return Err(LineError::IncompleteBox(name()));
        };
        let li = lines.iter().position(|x| *x == left).expect("line present");
        if lines[dual[li]] != right {
            return Err(LineError::IncompleteBox(name()));
        }
        grid.push(DualPair { left, right, row, column });
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_catalog;
    use crate::tables::basis_grid;
    use std::sync::OnceLock;

    fn fixture() -> &'static (Catalog, LineGeometry) {
        static F: OnceLock<(Catalog, LineGeometry)> = OnceLock::new();
        F.get_or_init(|| {
            let c = build_catalog().unwrap();
            let g = LineGeometry::build(&c).unwrap();
            (c, g)
        })
    }

    #[test]
    fn first_cell_lines() {
        let (c, _) = fixture();
        let lines = lines_of_cell(c, &c.cells()[0]).unwrap();
        assert_eq!(lines.len(), 16);
        assert!(lines.contains(&[1, 5, 9]));
        assert!(lines.contains(&[4, 8, 9]));
        for id in 1..=12u8 {
            assert_eq!(lines.iter().filter(|l| l.contains(&id)).count(), 4);
        }
    }

    #[test]
    fn template_matches_every_cell() {
        let (c, _) = fixture();
        let grid = basis_grid();
        for cell in c.cells() {
            let rows = grid[cell.label.row.index()][cell.label.column.index()];
            assert_eq!(template_lines(rows), lines_of_cell(c, cell).unwrap(), "cell {}", cell.label);
        }
    }

    #[test]
    fn counts_and_duals() {
        let (c, g) = fixture();
        assert_eq!(g.naive_total, 400);
        assert_eq!(g.lines().len(), 200);
        assert_eq!(g.dual_pairs().len(), 100);
        assert_eq!(g.dual_of([3, 8, 10]).unwrap().points, [16, 17, 24]);
        let first = g.grid_box(LetterPair::parse("A'B'").unwrap(), LetterPair::parse("AB").unwrap());
        assert_eq!(first.rays(), [3u8, 16, 8, 17, 10, 24].iter().collect());
        assert_eq!(first.left.points, [3, 8, 10]);
        for d in g.dual_pairs() {
            // Involution without fixed points.
            assert_ne!(d.left, d.right);
            assert_eq!(g.dual_of(d.right.points).unwrap(), &d.left);
            let vs: Vec<_> = d.rays().iter().map(|id| *c.vector(id)).collect();
            assert_eq!(rank4(&vs), 4);
        }
    }

    #[test]
    fn rows_and_columns_partition_the_rays() {
        let (_, g) = fixture();
        for i in 0..10 {
            let row = (0..10).fold(RaySet::EMPTY, |acc, j| {
                let b = g.dual_pairs()[i * 10 + j].rays();
                assert!(acc.is_disjoint(b));
                acc | b
            });
            let col = (0..10).fold(RaySet::EMPTY, |acc, j| {
                let b = g.dual_pairs()[j * 10 + i].rays();
                assert!(acc.is_disjoint(b));
                acc | b
            });
            assert_eq!(row, RaySet::full(60));
            assert_eq!(col, RaySet::full(60));
        }
    }

    #[test]
    fn box_origins_follow_the_label_rule() {
        let (_, g) = fixture();
        for d in g.dual_pairs() {
            let (x, y, u, v) = (d.column.0, d.column.1, d.row.0, d.row.1);
            let mut left = [CellLabel::new(x, u), CellLabel::new(y, v)];
            let mut right = [CellLabel::new(x, v), CellLabel::new(y, u)];
            left.sort();
            right.sort();
            assert_eq!(d.left.cells, left);
            assert_eq!(d.right.cells, right);
        }
    }

    #[test]
    fn grid_facsimile_matches_printed_table() {
        let (_, g) = fixture();
        assert_eq!(g.grid_text(), crate::tables::LINE_TABLE);
    }

    #[test]
    fn third_row_ab_box() {
        let (_, g) = fixture();
        let b = g.grid_box(LetterPair::parse("A'D'").unwrap(), LetterPair::parse("AB").unwrap());
        assert_eq!(b.rays(), [1u8, 7, 11, 38, 42, 45].iter().collect());
    }

    /// Rank over the reals by float Gaussian elimination; entries are small.
    fn rank4(vs: &[crate::GoldenVec4]) -> usize {
        let mut m: Vec<[f64; 4]> = vs.iter().map(|v| v.to_f64()).collect();
        let mut rank = 0;
        for col in 0..4 {
            let Some(p) = (rank..m.len()).find(|&r| m[r][col].abs() > 1e-9) else { continue };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank {
                    let f = m[r][col] / m[rank][col];
                    for k in 0..4 {
                        m[r][k] -= f * m[rank][k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
