//! Conjecture exploration. Random uncolorable subsets are shrunk greedily to
//! critical sets, to look for critical sets smaller than 30 rays. Results are
//! samples, not proofs, and play no part in verification.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use specker600::coloring::{ColoringProblem, Solver};
use specker600::{build_catalog, RayId, RaySet, RaySystem};

use crate::{Format, Run};

fn colorable(solver: &Solver, system: &RaySystem, set: RaySet) -> Result<bool> {
    Ok(solver.solve(&ColoringProblem::standard(system, set)?)?.is_colorable())
}

/// Deletes rays in random order while the set stays uncolorable.
fn shrink(solver: &Solver, system: &RaySystem, mut set: RaySet, rng: &mut ChaCha8Rng) -> Result<RaySet> {
    let mut order: Vec<RayId> = set.to_vec();
    order.shuffle(rng);
    for id in order {
        if !colorable(solver, system, set.without(id))? {
            set.remove(id);
        }
    }
    Ok(set)
}

pub fn run(run: &mut Run, start: usize, samples: usize, seed: u64) -> Result<()> {
    if !(1..=60).contains(&start) {
        bail!("--start must be between 1 and 60");
    }
    let cat = build_catalog()?;
    let sys = cat.system();
    let solver = run.solver;
    let found: Vec<Option<RaySet>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
            let mut ids: Vec<RayId> = (1..=60).collect();
            ids.shuffle(&mut rng);
            let set: RaySet = ids[..start].iter().collect();
            if colorable(&solver, sys, set)? {
                return Ok(None);
            }
            shrink(&solver, sys, set, &mut rng).map(Some)
        })
        .collect::<Result<_>>()?;
    let critical: Vec<RaySet> = found.into_iter().flatten().collect();
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for s in &critical {
        *sizes.entry(s.len()).or_default() += 1;
    }
    let smallest = critical.iter().min_by_key(|s| (s.len(), **s)).copied();
    match run.format {
        Format::Json => run.emit_json(&json!({
            "label": "conjecture exploration",
            "start": start,
            "samples": samples,
            "seed": seed,
            "uncolorableStarts": critical.len(),
            "criticalSizes": sizes,
            "smallest": smallest,
        })),
        Format::Table => {
            run.line("conjecture exploration (sampled, not a proof)");
            run.line(format!("{samples} random {start}-ray subsets, seed {seed}"));
            run.line(format!("uncolorable starts: {}", critical.len()));
            for (size, n) in &sizes {
                run.line(format!("  critical size {size}: {n}"));
            }
            if let Some(s) = smallest {
                run.line(format!("smallest: {s}"));
            }
            Ok(())
        }
    }
}
