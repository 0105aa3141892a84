//! A finite system of rays with its orthogonality graph and complete bases.
//!
//! Both the 600-cell catalog and the Peres system are presented through
//! [`RaySystem`], so the coloring, criticality and inequality code only ever
//! sees ids, neighbor masks and bases.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::golden::{GoldenError, GoldenVec4};
use crate::rayset::{RayId, RaySet, MAX_RAYS};

/// Four mutually orthogonal rays, ids sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[RayId; 4]", into = "[RayId; 4]")]
pub struct Basis([RayId; 4]);

impl Basis {
    /// Sorts the ids; rejects repeated ids.
    pub fn new(mut ids: [RayId; 4]) -> Result<Self, SystemError> {
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) || ids[0] == 0 || ids[3] as usize > MAX_RAYS {
            return Err(SystemError::MalformedBasis(ids));
        }
        Ok(Basis(ids))
    }

    pub fn ids(&self) -> [RayId; 4] {
        self.0
    }

    pub fn mask(&self) -> RaySet {
        self.0.iter().collect()
    }

    pub fn contains(&self, id: RayId) -> bool {
        self.0.contains(&id)
    }
}

impl TryFrom<[RayId; 4]> for Basis {
    type Error = SystemError;
    fn try_from(ids: [RayId; 4]) -> Result<Self, SystemError> {
        Basis::new(ids)
    }
}

impl From<Basis> for [RayId; 4] {
    fn from(b: Basis) -> Self {
        b.0
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a} {b} {c} {d}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("too many rays: {0} (at most 64 supported)")]
    TooManyRays(usize),
    #[error("malformed basis {0:?}")]
    MalformedBasis([RayId; 4]),
    #[error("basis {0} is not pairwise orthogonal")]
    NotOrthogonal(Basis),
    #[error("ray {0} is not part of the system")]
    UnknownRay(RayId),
    #[error(transparent)]
    Arithmetic(#[from] GoldenError),
}

/// Rays (by 1-based id), their orthogonality masks and the list of bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaySystem {
    vectors: Vec<GoldenVec4>,
    adjacency: Vec<RaySet>,
    bases: Vec<Basis>,
}

impl RaySystem {
    /// Builds the system with every 4-clique of the orthogonality graph as a basis,
    /// in lexicographic order of sorted ids.
    pub fn from_vectors(vectors: Vec<GoldenVec4>) -> Result<Self, SystemError> {
        let adjacency = orthogonality_masks(&vectors)?;
        let bases = four_cliques(&adjacency);
        Ok(RaySystem { vectors, adjacency, bases })
    }

    /// Builds the system with an explicit basis list, each checked for orthogonality.
    pub fn with_bases(vectors: Vec<GoldenVec4>, bases: Vec<Basis>) -> Result<Self, SystemError> {
        let adjacency = orthogonality_masks(&vectors)?;
        for b in &bases {
            for id in b.ids() {
                if id as usize > vectors.len() {
                    return Err(SystemError::UnknownRay(id));
                }
            }
            let ids = b.ids();
            for i in 0..4 {
                for j in i + 1..4 {
                    if !adjacency[ids[i] as usize - 1].contains(ids[j]) {
                        return Err(SystemError::NotOrthogonal(*b));
                    }
                }
            }
        }
        Ok(RaySystem { vectors, adjacency, bases })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn all_rays(&self) -> RaySet {
        RaySet::full(self.vectors.len())
    }

    pub fn vector(&self, id: RayId) -> &GoldenVec4 {
        &self.vectors[id as usize - 1]
    }

    pub fn vectors(&self) -> &[GoldenVec4] {
        &self.vectors
    }

    /// Rays orthogonal to `id`.
    pub fn neighbors(&self, id: RayId) -> RaySet {
        self.adjacency[id as usize - 1]
    }

    pub fn adjacency(&self) -> &[RaySet] {
        &self.adjacency
    }

    pub fn is_orthogonal(&self, a: RayId, b: RayId) -> bool {
        self.neighbors(a).contains(b)
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn basis_index(&self, basis: &Basis) -> Option<usize> {
        self.bases.iter().position(|b| b == basis)
    }

    /// Indices of bases lying entirely inside `subset`.
    pub fn intact_bases(&self, subset: RaySet) -> Vec<usize> {
        (0..self.bases.len()).filter(|&i| self.bases[i].mask().is_subset(subset)).collect()
    }

    /// Indices of bases meeting `subset` in exactly `k` rays.
    pub fn bases_meeting(&self, subset: RaySet, k: usize) -> Vec<usize> {
        (0..self.bases.len()).filter(|&i| (self.bases[i].mask() & subset).len() == k).collect()
    }

    /// Same rays and bases, reordered bases.
    pub(crate) fn reorder_bases(&mut self, bases: Vec<Basis>) {
        debug_assert_eq!(
            {
                let mut a = bases.clone();
                a.sort();
                a
            },
            {
                let mut b = self.bases.clone();
                b.sort();
                b
            }
        );
        self.bases = bases;
    }
}

fn orthogonality_masks(vectors: &[GoldenVec4]) -> Result<Vec<RaySet>, SystemError> {
    if vectors.len() > MAX_RAYS {
        return Err(SystemError::TooManyRays(vectors.len()));
    }
    let mut adj = vec![RaySet::EMPTY; vectors.len()];
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            if vectors[i].is_orthogonal(&vectors[j])? {
                adj[i].insert(j as RayId + 1);
                adj[j].insert(i as RayId + 1);
            }
        }
    }
    Ok(adj)
}

/// All 4-cliques of the graph given by neighbor masks, lexicographic order.
pub fn four_cliques(adjacency: &[RaySet]) -> Vec<Basis> {
    let mut out = Vec::new();
    for a in 1..=adjacency.len() as RayId {
        let na = adjacency[a as usize - 1];
        for b in na.iter().filter(|&b| b > a) {
            let nab = na & adjacency[b as usize - 1];
            for c in nab.iter().filter(|&c| c > b) {
                let nabc = nab & adjacency[c as usize - 1];
                for d in nabc.iter().filter(|&d| d > c) {
                    out.push(Basis([a, b, c, d]));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axes() -> Vec<GoldenVec4> {
        vec![
            GoldenVec4::from_ints([2, 0, 0, 0]),
            GoldenVec4::from_ints([0, 2, 0, 0]),
            GoldenVec4::from_ints([0, 0, 2, 0]),
            GoldenVec4::from_ints([0, 0, 0, 2]),
            GoldenVec4::from_ints([1, 1, 1, 1]),
        ]
    }

    #[test]
    fn cliques_of_axes() {
        let sys = RaySystem::from_vectors(axes()).unwrap();
        assert_eq!(sys.bases(), &[Basis::new([1, 2, 3, 4]).unwrap()]);
        assert!(sys.neighbors(5).is_empty());
        assert_eq!(sys.neighbors(1).to_vec(), vec![2, 3, 4]);
    }

    #[test]
    fn basis_validation() {
        assert!(Basis::new([1, 1, 2, 3]).is_err());
        assert!(Basis::new([0, 1, 2, 3]).is_err());
        assert_eq!(Basis::new([4, 2, 3, 1]).unwrap().ids(), [1, 2, 3, 4]);
        let bad = Basis::new([1, 2, 3, 5]).unwrap();
        assert_eq!(RaySystem::with_bases(axes(), vec![bad]), Err(SystemError::NotOrthogonal(bad)));
        let unknown = Basis::new([1, 2, 3, 9]).unwrap();
        assert_eq!(RaySystem::with_bases(axes(), vec![unknown]), Err(SystemError::UnknownRay(9)));
    }
}
