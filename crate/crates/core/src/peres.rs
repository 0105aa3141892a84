//! The 24-ray Peres system: a pair of mutually dual 24-cells with integer
//! coordinates.
//!
//! Rays 1–12 form the 24-cell `(2,0,0,0)`, `(1,±1,±1,±1)` and coincide with
//! rays 1–12 of the 600-cell catalog; rays 13–24 are `(1,±1,0,0)` and its
//! coordinate permutations. Every line of one cell is dual to exactly one
//! line of the other.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{Catalog, CellLabel};
use crate::coloring::{is_critical, parity_certificate, ColoringError, ColoringProblem, Solver};
use crate::golden::{triple_rank, GoldenError, GoldenVec4};
use crate::rayset::{RayId, RaySet};
use crate::system::{RaySystem, SystemError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeresError {
    #[error("cell {0} has {1} lines, expected 16")]
    LineCount(usize, usize),
    #[error("line {0:?} has {1} duals in the other cell")]
    DualCount([RayId; 3], usize),
    #[error("set {0} is not critical")]
    NotCritical(RaySet),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Arithmetic(#[from] GoldenError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone)]
pub struct PeresSystem {
    system: RaySystem,
    cells: [RaySet; 2],
    lines: [Vec<[RayId; 3]>; 2],
    /// `(line of cell 0, its dual in cell 1)`, ordered by the first line.
    dual_pairs: Vec<([RayId; 3], [RayId; 3])>,
}

fn peres_vectors() -> Vec<GoldenVec4> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        let mut v = [0; 4];
        v[i] = 2;
        out.push(GoldenVec4::from_ints(v));
    }
    // Sign patterns in the catalog's order for rays 5–12.
    for s in [
        [1, 1, 1, 1],
        [1, 1, -1, -1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
        [1, -1, -1, -1],
        [1, -1, 1, 1],
        [1, 1, -1, 1],
        [1, 1, 1, -1],
    ] {
        out.push(GoldenVec4::from_ints(s));
    }
    for i in 0..4 {
        for j in i + 1..4 {
            for sign in [1, -1] {
                let mut v = [0; 4];
                v[i] = 1;
                v[j] = sign;
                out.push(GoldenVec4::from_ints(v));
            }
        }
    }
    out
}

fn cell_lines(system: &RaySystem, cell: RaySet) -> Result<Vec<[RayId; 3]>, GoldenError> {
    let ids = cell.to_vec();
    let mut out = Vec::new();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            for k in j + 1..ids.len() {
                let t = [ids[i], ids[j], ids[k]];
                if triple_rank(system.vector(t[0]), system.vector(t[1]), system.vector(t[2]))? == 2 {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

fn mutually_orthogonal(system: &RaySystem, a: RaySet, b: RaySet) -> bool {
    a.iter().all(|x| b.is_subset(system.neighbors(x)))
}

impl PeresSystem {
    pub fn build() -> Result<Self, PeresError> {
        let system = RaySystem::from_vectors(peres_vectors())?;
        let cells = [RaySet::full(12), RaySet::full(24) - RaySet::full(12)];
        let lines = [cell_lines(&system, cells[0])?, cell_lines(&system, cells[1])?];
        for (c, l) in lines.iter().enumerate() {
            if l.len() != 16 {
                return Err(PeresError::LineCount(c, l.len()));
            }
        }
        let mut dual_pairs = Vec::with_capacity(16);
        for l in &lines[0] {
            let lm: RaySet = l.iter().collect();
            let duals: Vec<&[RayId; 3]> =
                lines[1].iter().filter(|m| mutually_orthogonal(&system, lm, m.iter().collect())).collect();
            if duals.len() != 1 {
                return Err(PeresError::DualCount(*l, duals.len()));
            }
            dual_pairs.push((*l, *duals[0]));
        }
        for m in &lines[1] {
            let n = dual_pairs.iter().filter(|(_, d)| d == m).count();
            if n != 1 {
                return Err(PeresError::DualCount(*m, n));
            }
        }
        Ok(PeresSystem { system, cells, lines, dual_pairs })
    }

    pub fn system(&self) -> &RaySystem {
        &self.system
    }

    pub fn cells(&self) -> [RaySet; 2] {
        self.cells
    }

    pub fn lines(&self, cell: usize) -> &[[RayId; 3]] {
        &self.lines[cell]
    }

    pub fn dual_pairs(&self) -> &[([RayId; 3], [RayId; 3])] {
        &self.dual_pairs
    }

    /// The 18-ray sets left after deleting the six rays of one dual pair.
    pub fn dual_pair_complements(&self) -> Vec<RaySet> {
        self.dual_pairs
            .iter()
            .map(|(a, b)| {
                let pair: RaySet = a.iter().chain(b.iter()).collect();
                self.system.all_rays() - pair
            })
            .collect()
    }

    /// Dual-pair complements, each required to be critical with a 9-basis parity certificate.
    pub fn criticals_18(&self, solver: &Solver) -> Result<Vec<PeresCritical>, PeresError> {
        self.dual_pair_complements()
            .into_par_iter()
            .map(|s| {
                if !is_critical(solver, &self.system, s)?.is_critical() {
                    return Err(PeresError::NotCritical(s));
                }
                let parity = parity_certificate(&self.system, s);
                Ok(PeresCritical { rays: s, intact_bases: self.system.intact_bases(s).len(), parity: parity.is_some() })
            })
            .collect()
    }

    /// Scan of all four-ray deletions for critical 20-ray sets, in
    /// lexicographic order of the deleted rays.
    pub fn criticals_20(&self, solver: &Solver) -> Result<Vec<PeresCritical>, PeresError> {
        let mut deletions = Vec::with_capacity(10626);
        for a in 1..=24u8 {
            for b in a + 1..=24 {
                for c in b + 1..=24 {
                    for d in c + 1..=24 {
                        deletions.push(RaySet::from_iter([a, b, c, d]));
                    }
                }
            }
        }
        let found: Vec<Option<PeresCritical>> = deletions
            .into_par_iter()
            .map(|del| {
                let s = self.system.all_rays() - del;
                let crit = is_critical(solver, &self.system, s)?;
                Ok(crit.is_critical().then(|| PeresCritical {
                    rays: s,
                    intact_bases: self.system.intact_bases(s).len(),
                    parity: parity_certificate(&self.system, s).is_some(),
                }))
            })
            .collect::<Result<_, PeresError>>()?;
        Ok(found.into_iter().flatten().collect())
    }

    pub fn full_set_colorable(&self, solver: &Solver) -> Result<bool, PeresError> {
        let p = ColoringProblem::standard(&self.system, self.system.all_rays())?;
        Ok(solver.solve(&p)?.is_colorable())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PeresCritical {
    pub rays: RaySet,
    pub intact_bases: usize,
    pub parity: bool,
}

/// Pairs of 600-cell 24-cells whose rays are all mutually orthogonal.
pub fn mutually_dual_cells(catalog: &Catalog) -> Vec<(CellLabel, CellLabel)> {
    let sys = catalog.system();
    let cells = catalog.cells();
    let mut out = Vec::new();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if mutually_orthogonal(sys, cells[i].rays, cells[j].rays) {
                out.push((cells[i].label, cells[j].label));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_catalog;

    #[test]
    fn structure() {
        let p = PeresSystem::build().unwrap();
        let sys = p.system();
        assert_eq!(sys.len(), 24);
        assert_eq!(sys.bases().len(), 24);
        assert!(sys.adjacency().iter().all(|n| n.len() == 9));
        assert_eq!(p.lines(0).len(), 16);
        assert_eq!(p.lines(1).len(), 16);
        assert_eq!(p.dual_pairs().len(), 16);
        for v in sys.vectors() {
            assert!(v.0.iter().all(|x| x.b == 0 && (-1..=2).contains(&x.a)));
        }
    }

    #[test]
    fn first_cell_matches_catalog() {
        let p = PeresSystem::build().unwrap();
        let c = build_catalog().unwrap();
        for id in 1..=12u8 {
            assert_eq!(p.system().vector(id), c.vector(id));
        }
        assert!(mutually_dual_cells(&c).is_empty());
    }

    #[test]
    fn eighteen_ray_criticals() {
        let p = PeresSystem::build().unwrap();
        let solver = Solver::default();
        let crit = p.criticals_18(&solver).unwrap();
        assert_eq!(crit.len(), 16);
        for c in &crit {
            assert_eq!(c.rays.len(), 18);
            assert_eq!(c.intact_bases, 9);
            assert!(c.parity);
            let cert = parity_certificate(p.system(), c.rays).unwrap();
            assert!(cert.occurrences.values().all(|&k| k == 2));
        }
        assert!(!p.full_set_colorable(&solver).unwrap());
        assert!(!is_critical(&solver, p.system(), p.system().all_rays()).unwrap().is_critical());
    }
}
