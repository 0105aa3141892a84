//! The basis-parity noncontextuality inequality.
//!
//! For a 0/1 assignment `v` each basis contributes `s_b = −∏(1 − 2v_r)`,
//! i.e. `+1` when it holds an odd number of ones and `−1` otherwise. Quantum
//! mechanically every basis contributes `+1` because the product of its four
//! reflections `I − 2|v⟩⟨v|/⟨v,v⟩` is `−I`; classically the maximum is
//! found by exhaustive Gray-code sweep or by branch and bound.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::golden::{GoldenError, GoldenInt};
use crate::rayset::{RayId, RaySet};
use crate::system::RaySystem;

/// Largest ray count the exhaustive sweep accepts.
pub const SWEEP_LIMIT: usize = 36;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InequalityError {
    #[error("basis {0} is not contained in the instance's rays")]
    BasisOutsideRays(usize),
    #[error("at most 128 bases supported, got {0}")]
    TooManyBases(usize),
    #[error("ray {0} has norm {1}, not a power of two")]
    NonDyadicNorm(RayId, String),
    #[error("reflection product of basis {0} is not -I")]
    IdentityFails(usize),
    #[error("{0} rays exceed the sweep budget of {SWEEP_LIMIT}; use branch and bound")]
    OverBudget(usize),
    #[error("family {0} is not a parity family")]
    NotParityFamily(usize),
    #[error(transparent)]
    Arithmetic(#[from] GoldenError),
}

#[derive(Debug, Clone)]
pub struct InequalityInstance<'a> {
    system: &'a RaySystem,
    rays: Vec<RayId>,
    bases: Vec<usize>,
    /// Per instance ray (by position in `rays`), the bases containing it as a bit mask over `bases`.
    incidence: Vec<u128>,
}

impl<'a> InequalityInstance<'a> {
    pub fn new(system: &'a RaySystem, rays: RaySet, bases: &[usize]) -> Result<Self, InequalityError> {
        if bases.len() > 128 {
            return Err(InequalityError::TooManyBases(bases.len()));
        }
        for &k in bases {
            if !system.bases()[k].mask().is_subset(rays) {
                return Err(InequalityError::BasisOutsideRays(k));
            }
        }
        let ids = rays.to_vec();
        let incidence = ids
            .iter()
            .map(|&r| {
                bases.iter().enumerate().filter(|(_, &k)| system.bases()[k].contains(r)).fold(0u128, |m, (i, _)| m | 1 << i)
            })
            .collect();
        Ok(InequalityInstance { system, rays: ids, bases: bases.to_vec(), incidence })
    }

    /// The rays of `subset` with its intact bases.
    pub fn intact(system: &'a RaySystem, subset: RaySet) -> Result<Self, InequalityError> {
        InequalityInstance::new(system, subset, &system.intact_bases(subset))
    }

    pub fn rays(&self) -> &[RayId] {
        &self.rays
    }

    pub fn bases(&self) -> &[usize] {
        &self.bases
    }

    /// `S(v)` for the assignment whose ones are `ones`.
    pub fn score(&self, ones: RaySet) -> i64 {
        self.bases
            .iter()
            .map(|&k| if (self.system.bases()[k].mask() & ones).len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    fn score_of_mask(&self, odd: u128) -> i64 {
        2 * odd.count_ones() as i64 - self.bases.len() as i64
    }

    fn ones_of(&self, bits: u64) -> RaySet {
        self.rays.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &r)| r).collect()
    }

    /// Analytic cap from parity: an odd number of bases covering each ray an
    /// even number of times always has an even-count basis.
    pub fn parity_cap(&self) -> Option<i64> {
        let nb = self.bases.len();
        let even = self.incidence.iter().all(|m| m.count_ones() % 2 == 0);
        (nb % 2 == 1 && even).then_some(nb as i64 - 2)
    }
}

/// `num / 2^exp` with a 4×4 numerator over `Z[τ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct DyadicMatrix {
    num: [[GoldenInt; 4]; 4],
    exp: u32,
}

impl DyadicMatrix {
    fn identity() -> Self {
        let mut num = [[GoldenInt::ZERO; 4]; 4];
        for (i, row) in num.iter_mut().enumerate() {
            row[i] = GoldenInt::ONE;
        }
        DyadicMatrix { num, exp: 0 }
    }

    /// `I − 2vvᵀ/⟨v,v⟩` for `⟨v,v⟩ = 2^k`.
    fn reflection(v: &[GoldenInt; 4], k: u32) -> Result<Self, GoldenError> {
        let n = GoldenInt::from(1i64 << k);
        let mut num = [[GoldenInt::ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let diag = if i == j { n } else { GoldenInt::ZERO };
                num[i][j] = diag.checked_sub(v[i].checked_mul(v[j])?.checked_scale(2)?)?;
            }
        }
        Ok(DyadicMatrix { num, exp: k }.reduced())
    }

    fn mul(&self, other: &Self) -> Result<Self, GoldenError> {
        let mut num = [[GoldenInt::ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = GoldenInt::ZERO;
                for k in 0..4 {
                    acc = acc.checked_add(self.num[i][k].checked_mul(other.num[k][j])?)?;
                }
                num[i][j] = acc;
            }
        }
        Ok(DyadicMatrix { num, exp: self.exp + other.exp }.reduced())
    }

    fn reduced(mut self) -> Self {
        while self.exp > 0 && self.num.iter().flatten().all(|x| x.exact_div(2).is_some()) {
            for x in self.num.iter_mut().flatten() {
                *x = x.exact_div(2).expect("checked even");
            }
            self.exp -= 1;
        }
        self
    }

    fn is_minus_identity(&self) -> bool {
        let minus = GoldenInt::from(-1);
        self.exp == 0
            && (0..4).all(|i| (0..4).all(|j| self.num[i][j] == if i == j { minus } else { GoldenInt::ZERO }))
    }
}

/// Verifies `∏ (I − 2vvᵀ/⟨v,v⟩) = −I` exactly for every basis and returns the
/// number of bases, the state-independent quantum value.
pub fn quantum_value(instance: &InequalityInstance) -> Result<i64, InequalityError> {
    let sys = instance.system;
    for &k in &instance.bases {
        let mut prod = DyadicMatrix::identity();
        for id in sys.bases()[k].ids() {
            let v = sys.vector(id);
            let n = v.norm_sq()?;
            if n.b != 0 || n.a <= 0 || (n.a & (n.a - 1)) != 0 {
                return Err(InequalityError::NonDyadicNorm(id, n.to_string()));
            }
            prod = prod.mul(&DyadicMatrix::reflection(&v.0, n.a.trailing_zeros())?)?;
        }
        if !prod.is_minus_identity() {
            return Err(InequalityError::IdentityFails(k));
        }
    }
    Ok(instance.bases.len() as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalMax {
    pub value: i64,
    /// Rays assigned 1 in the lexicographically least maximizer (by bit pattern over ascending ids).
    pub witness: RaySet,
    pub assignments: u64,
}

/// Exhaustive Gray-code sweep over all `2^n` assignments, split by the values
/// of the highest-numbered rays across workers.
pub fn classical_max(instance: &InequalityInstance) -> Result<ClassicalMax, InequalityError> {
    let n = instance.rays.len();
    if n > SWEEP_LIMIT {
        return Err(InequalityError::OverBudget(n));
    }
    let high = n.min(8);
    let low = n - high;
    let inc = &instance.incidence;
    let best = (0u64..1 << high)
        .into_par_iter()
        .map(|prefix| {
            let mut odd = 0u128;
            for (j, m) in inc[low..].iter().enumerate() {
                if prefix >> j & 1 == 1 {
                    odd ^= m;
                }
            }
            let base = prefix << low;
            let mut best = (instance.score_of_mask(odd), base);
            for i in 1u64..1 << low {
                let bit = i.trailing_zeros() as usize;
                odd ^= inc[bit];
                let score = instance.score_of_mask(odd);
                if score >= best.0 {
                    let assignment = base | (i ^ (i >> 1));
                    if score > best.0 || assignment < best.1 {
                        best = (score, assignment);
                    }
                }
            }
            best
        })
        .reduce(|| (i64::MIN, u64::MAX), |a, b| if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) { a } else { b });
    Ok(ClassicalMax { value: best.0, witness: instance.ones_of(best.1), assignments: 1u64 << n })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub quantum: i64,
    pub classical: i64,
    pub gap: i64,
}

pub fn gap_report(instance: &InequalityInstance) -> Result<(GapReport, ClassicalMax), InequalityError> {
    let quantum = quantum_value(instance)?;
    let cmax = classical_max(instance)?;
    Ok((GapReport { quantum, classical: cmax.value, gap: quantum - cmax.value }, cmax))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BranchAndBound {
    /// Best score found.
    pub best: i64,
    pub witness: RaySet,
    /// Proven upper bound on the maximum; equals `best` when the search completed.
    pub upper_bound: i64,
    pub nodes: u64,
    pub complete: bool,
}

/// Depth-first branch and bound over ray values. Each parity family (an odd
/// number of the instance's bases covering every ray an even number of times)
/// must contain an even-count basis, so a packing of families disjoint from
/// each other and from bases already lost bounds the remaining loss.
pub fn branch_and_bound(
    instance: &InequalityInstance,
    families: &[Vec<usize>],
    node_limit: u64,
) -> Result<BranchAndBound, InequalityError> {
    let nb = instance.bases.len();
    let mut fam_masks = Vec::with_capacity(families.len());
    for (fi, f) in families.iter().enumerate() {
        let mut mask = 0u128;
        for k in f {
            let pos = instance.bases.iter().position(|b| b == k).ok_or(InequalityError::NotParityFamily(fi))?;
            mask |= 1 << pos;
        }
        let even = instance.incidence.iter().all(|m| (m & mask).count_ones() % 2 == 0);
        if mask.count_ones() % 2 == 0 || !even {
            return Err(InequalityError::NotParityFamily(fi));
        }
        fam_masks.push(mask);
    }

    // Rays ordered so bases close early: repeatedly take the ray finishing the most bases.
    let n = instance.rays.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut remaining: Vec<u32> = (0..nb).map(|b| instance.incidence.iter().filter(|m| *m >> b & 1 == 1).count() as u32).collect();
    for _ in 0..n {
        let pick = (0..n)
            .filter(|&i| !placed[i])
            .max_by_key(|&i| {
                let closes = (0..nb).filter(|&b| instance.incidence[i] >> b & 1 == 1 && remaining[b] == 1).count();
                let touches = instance.incidence[i].count_ones();
                (closes, touches, std::cmp::Reverse(i))
            })
            .expect("ray left");
        placed[pick] = true;
        for (b, r) in remaining.iter_mut().enumerate() {
            if instance.incidence[pick] >> b & 1 == 1 {
                *r -= 1;
            }
        }
        order.push(pick);
    }
    // Bases completed after assigning order[..=d].
    let mut closing = vec![0u128; n];
    let mut seen = 0u128;
    for d in 0..n {
        let mut done = 0u128;
        for b in 0..nb {
            let members: Vec<usize> = (0..n).filter(|&r| instance.incidence[r] >> b & 1 == 1).collect();
            if members.iter().all(|r| order[..=d].contains(r)) && seen >> b & 1 == 0 {
                done |= 1 << b;
            }
        }
        seen |= done;
        closing[d] = done;
    }

    struct Ctx<'c> {
        inc: &'c [u128],
        order: &'c [usize],
        closing: &'c [u128],
        fams: &'c [u128],
        nb: i64,
        best_loss: i64,
        best_bits: u64,
        nodes: u64,
        limit: u64,
        aborted: bool,
    }

    fn packing(fams: &[u128], lost: u128) -> i64 {
        let mut used = lost;
        let mut k = 0;
        for &f in fams {
            if f & used == 0 {
                used |= f;
                k += 1;
            }
        }
        k
    }

    fn dfs(c: &mut Ctx, depth: usize, odd: u128, lost: u128, bits: u64) {
        if c.aborted {
            return;
        }
        c.nodes += 1;
        if c.nodes > c.limit {
            c.aborted = true;
            return;
        }
        let loss = lost.count_ones() as i64;
        if loss + packing(c.fams, lost) >= c.best_loss {
            return;
        }
        if depth == c.order.len() {
            c.best_loss = loss;
            c.best_bits = bits;
            return;
        }
        let r = c.order[depth];
        for value in [0u64, 1] {
            let odd2 = if value == 1 { odd ^ c.inc[r] } else { odd };
            let lost2 = lost | (c.closing[depth] & !odd2);
            dfs(c, depth + 1, odd2, lost2, bits | value << r);
        }
    }

    let mut ctx = Ctx {
        inc: &instance.incidence,
        order: &order,
        closing: &closing,
        fams: &fam_masks,
        nb: nb as i64,
        // The all-zero assignment loses every basis.
        best_loss: nb as i64,
        best_bits: 0,
        nodes: 0,
        limit: node_limit,
        aborted: false,
    };
    let root_bound = packing(&fam_masks, 0);
    dfs(&mut ctx, 0, 0, 0, 0);
    let best = ctx.nb - 2 * ctx.best_loss;
    let upper_bound = if ctx.aborted { ctx.nb - 2 * root_bound } else { best };
    Ok(BranchAndBound {
        best,
        witness: instance.ones_of(ctx.best_bits),
        upper_bound,
        nodes: ctx.nodes,
        complete: !ctx.aborted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::GoldenVec4;

    fn axes() -> RaySystem {
        RaySystem::from_vectors((0..4).map(|i| GoldenVec4::from_ints(std::array::from_fn(|j| if i == j { 2 } else { 0 }))).collect()).unwrap()
    }

    #[test]
    fn single_basis() {
        let sys = axes();
        let inst = InequalityInstance::new(&sys, sys.all_rays(), &[0]).unwrap();
        assert_eq!(quantum_value(&inst).unwrap(), 1);
        let c = classical_max(&inst).unwrap();
        assert_eq!(c.value, 1);
        assert_eq!(c.witness.len() % 2, 1);
        assert_eq!(inst.score(c.witness), 1);
        assert_eq!(inst.parity_cap(), None);
    }

    #[test]
    fn reflection_algebra() {
        let v = GoldenVec4::from_ints([1, 1, 0, 0]);
        let r = DyadicMatrix::reflection(&v.0, 1).unwrap();
        assert!(r.mul(&r).unwrap() == DyadicMatrix::identity());
        assert!(!r.is_minus_identity());
    }
}
