use std::path::Path;

use anyhow::{bail, Context, Result};
use specker600::{Basis, RayId, RaySet, RaySystem};

/// Ray ids from a comma list (`1,2,3`), a range list (`1-12,20`) or a file
/// with ids separated by whitespace or commas.
pub fn parse_ray_set(spec: &str, max: usize) -> Result<RaySet> {
    let text = if Path::new(spec).is_file() {
        std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?
    } else {
        spec.to_string()
    };
    let mut set = RaySet::EMPTY;
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (lo, hi) = match tok.split_once('-') {
            Some((a, b)) => (parse_id(a, max)?, parse_id(b, max)?),
            None => {
                let id = parse_id(tok, max)?;
                (id, id)
            }
        };
        if lo > hi {
            bail!("empty range {tok:?}");
        }
        for id in lo..=hi {
            set.insert(id);
        }
    }
    if set.is_empty() {
        bail!("no ray ids in {spec:?}");
    }
    Ok(set)
}

fn parse_id(tok: &str, max: usize) -> Result<RayId> {
    let id: usize = tok.trim().parse().with_context(|| format!("bad ray id {tok:?}"))?;
    if id == 0 || id > max {
        bail!("ray id {id} outside 1..={max}");
    }
    Ok(id as RayId)
}

/// Basis indices from a file listing one basis per line as four ray ids.
pub fn parse_basis_file(path: &str, system: &RaySystem) -> Result<Vec<usize>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let ids: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
        if ids.is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        if ids.len() != 4 {
            bail!("{path}:{}: expected four ray ids", n + 1);
        }
        let mut quad = [0; 4];
        for (slot, tok) in quad.iter_mut().zip(&ids) {
            *slot = parse_id(tok, system.len())?;
        }
        let basis = Basis::new(quad).with_context(|| format!("{path}:{}", n + 1))?;
        match system.basis_index(&basis) {
            Some(i) => out.push(i),
            None => bail!("{path}:{}: {basis} is not a basis of the system", n + 1),
        }
    }
    Ok(out)
}
