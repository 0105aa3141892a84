//! The symmetry group of the 600-cell acting on the 60 ray ids.
//!
//! Every symmetry sends the coordinate frame (rays 1–4) to some basis. For a
//! target basis `v₀..v₃`, signs `sᵢ` and an ordering of the basis, the linear
//! map `eᵢ ↦ sᵢ v_{π(i)} / 2` sends a ray `w` to `Σ wᵢ sᵢ v_{π(i)} / 2`. The
//! numerator is computed in `Z[τ]`, divided by 2 exactly and looked up in the
//! catalog. Only even orderings of a suitably oriented basis give symmetries:
//! `75 × 12 × 16 = 14400` signed maps, collapsing to 7200 permutations since
//! `M` and `−M` act identically on rays.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::catalog::{permutation_parity, permutations4, Catalog, CellLabel, RAY_COUNT};
use crate::golden::{GoldenError, GoldenInt, GoldenVec4};
use crate::rayset::{RayId, RaySet};
use crate::system::Basis;

pub const GROUP_ORDER: usize = 7200;
pub const SIGNED_MAP_COUNT: usize = 14400;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("rays 1-4 are not the coordinate frame")]
    NoFrame,
    #[error("no orientation of basis {0} gives a symmetry")]
    NoOrientation(Basis),
    #[error("frame map to {targets:?} with signs {signs:?} is not a symmetry")]
    NotASymmetry { targets: [RayId; 4], signs: [i8; 4] },
    #[error("signed map multiplicity: {0} permutations do not arise from exactly two signed maps")]
    Collapse(usize),
    #[error(transparent)]
    Arithmetic(#[from] GoldenError),
}

/// A permutation of the ray ids `1..=60`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement([RayId; RAY_COUNT]);

impl GroupElement {
    pub fn identity() -> Self {
        let mut p = [0; RAY_COUNT];
        for (i, x) in p.iter_mut().enumerate() {
            *x = i as RayId + 1;
        }
        GroupElement(p)
    }

    /// `images[i]` is the image of ray `i + 1`; `None` unless a bijection on `1..=60`.
    pub fn from_images(images: &[RayId]) -> Option<Self> {
        let p: [RayId; RAY_COUNT] = images.try_into().ok()?;
        let mut seen = RaySet::EMPTY;
        for &x in &p {
            if x == 0 || x as usize > RAY_COUNT || seen.contains(x) {
                return None;
            }
            seen.insert(x);
        }
        Some(GroupElement(p))
    }

    /// Ray id → id + 12 (mod 60, ids taken in 1..=60).
    pub fn add12() -> Self {
        let mut p = [0; RAY_COUNT];
        for (i, x) in p.iter_mut().enumerate() {
            *x = ((i + 12) % RAY_COUNT) as RayId + 1;
        }
        GroupElement(p)
    }

    pub fn images(&self) -> &[RayId; RAY_COUNT] {
        &self.0
    }

    pub fn apply(&self, id: RayId) -> RayId {
        self.0[id as usize - 1]
    }

    pub fn apply_set(&self, set: RaySet) -> RaySet {
        set.iter().map(|id| self.apply(id)).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let mut p = [0; RAY_COUNT];
        for (i, x) in p.iter_mut().enumerate() {
            *x = self.apply(other.0[i]);
        }
        GroupElement(p)
    }

    pub fn inverse(&self) -> GroupElement {
        let mut p = [0; RAY_COUNT];
        for (i, &x) in self.0.iter().enumerate() {
            p[x as usize - 1] = i as RayId + 1;
        }
        GroupElement(p)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// Disjoint cycles including fixed points, each starting at its least id.
    pub fn cycles(&self) -> Vec<Vec<RayId>> {
        let mut seen = RaySet::EMPTY;
        let mut out = Vec::new();
        for start in 1..=RAY_COUNT as RayId {
            if seen.contains(start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut x = self.apply(start);
            while x != start {
                cycle.push(x);
                seen.insert(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, lcm)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement(")?;
        for (i, c) in self.cycles().iter().filter(|c| c.len() > 1).enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        write!(f, ")")
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<RayId>::deserialize(d)?;
        GroupElement::from_images(&v).ok_or_else(|| serde::de::Error::custom("not a permutation of 1..60"))
    }
}

/// Catalog vectors indexed for exact lookup.
struct RayIndex {
    vectors: Vec<GoldenVec4>,
    ids: HashMap<GoldenVec4, RayId>,
}

impl RayIndex {
    fn new(catalog: &Catalog) -> Self {
        let vectors: Vec<GoldenVec4> = catalog.rays().map(|r| r.vec).collect();
        let ids = vectors.iter().enumerate().map(|(i, v)| (*v, i as RayId + 1)).collect();
        RayIndex { vectors, ids }
    }

    fn lookup(&self, v: &GoldenVec4) -> Result<Option<RayId>, GoldenError> {
        if v.is_zero() {
            return Ok(None);
        }
        Ok(self.ids.get(&v.canonical()?).copied())
    }
}

/// The permutation induced by `eᵢ ↦ signs[i]·v(targets[i])/2`, or `None` if
/// some ray has no image in the catalog.
pub fn frame_map(catalog: &Catalog, targets: [RayId; 4], signs: [i8; 4]) -> Result<Option<GroupElement>, SymmetryError> {
    check_frame(catalog)?;
    frame_map_indexed(&RayIndex::new(catalog), targets, signs)
}

fn check_frame(catalog: &Catalog) -> Result<(), SymmetryError> {
    for i in 0..4 {
        let mut e = [0; 4];
        e[i] = 2;
        if *catalog.vector(i as RayId + 1) != GoldenVec4::from_ints(e) {
            return Err(SymmetryError::NoFrame);
        }
    }
    Ok(())
}

fn frame_map_indexed(index: &RayIndex, targets: [RayId; 4], signs: [i8; 4]) -> Result<Option<GroupElement>, SymmetryError> {
    let columns: Vec<GoldenVec4> = (0..4)
        .map(|i| index.vectors[targets[i] as usize - 1].checked_scale(GoldenInt::from(signs[i] as i64)))
        .collect::<Result<_, _>>()?;
    let mut images = [0; RAY_COUNT];
    for (slot, w) in images.iter_mut().zip(&index.vectors) {
        let mut num = GoldenVec4::ZERO;
        for (c, col) in w.0.iter().zip(&columns) {
            num = num.checked_add(&col.checked_scale(*c)?)?;
        }
        let Some(img) = num.exact_div(2) else { return Ok(None) };
        match index.lookup(&img)? {
            Some(id) => *slot = id,
            None => return Ok(None),
        }
    }
    Ok(GroupElement::from_images(&images))
}

fn sign_choices() -> impl Iterator<Item = [i8; 4]> {
    (0..16u8).map(|m| std::array::from_fn(|i| if m >> i & 1 == 1 { -1 } else { 1 }))
}

fn even_permutations() -> Vec<[usize; 4]> {
    permutations4().into_iter().filter(|p| permutation_parity(p) == 0).collect()
}

/// The projective symmetry group, stored as its sorted list of permutations.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    elements: Vec<GroupElement>,
    lookup: HashMap<GroupElement, usize>,
    signed_maps: usize,
}

impl SymmetryGroup {
    /// Builds all signed frame maps onto every basis and collects the distinct
    /// permutations they induce.
    pub fn generate(catalog: &Catalog) -> Result<Self, SymmetryError> {
        check_frame(catalog)?;
        let index = RayIndex::new(catalog);
        let evens = even_permutations();
        let per_basis: Vec<Vec<GroupElement>> = catalog
            .bases()
            .par_iter()
            .map(|b| {
                let [a, b0, c, d] = b.ids();
                let orientation = [[a, b0, c, d], [b0, a, c, d]]
                    .into_iter()
                    .find(|o| matches!(frame_map_indexed(&index, *o, [1; 4]), Ok(Some(_))))
                    .ok_or(SymmetryError::NoOrientation(*b))?;
                let mut out = Vec::with_capacity(192);
                for p in &evens {
                    let targets = p.map(|k| orientation[k]);
                    for signs in sign_choices() {
                        match frame_map_indexed(&index, targets, signs)? {
                            Some(g) => out.push(g),
                            None => return Err(SymmetryError::NotASymmetry { targets, signs }),
                        }
                    }
                }
                Ok(out)
            })
            .collect::<Result<_, SymmetryError>>()?;

        let signed_maps = per_basis.iter().map(Vec::len).sum();
        let mut multiplicity: HashMap<GroupElement, usize> = HashMap::new();
        for g in per_basis.into_iter().flatten() {
            *multiplicity.entry(g).or_default() += 1;
        }
        let bad = multiplicity.values().filter(|&&m| m != 2).count();
        if bad > 0 {
            return Err(SymmetryError::Collapse(bad));
        }
        let mut group = SymmetryGroup::from_elements(multiplicity.into_keys().collect());
        group.signed_maps = signed_maps;
        Ok(group)
    }

    /// Closure of `generators` under composition.
    pub fn from_generators(generators: &[GroupElement]) -> Self {
        let mut seen: HashSet<GroupElement> = HashSet::from([GroupElement::identity()]);
        let mut queue = VecDeque::from([GroupElement::identity()]);
        while let Some(g) = queue.pop_front() {
            for s in generators {
                let h = s.compose(&g);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        SymmetryGroup::from_elements(seen.into_iter().collect())
    }

    fn from_elements(mut elements: Vec<GroupElement>) -> Self {
        elements.sort();
        let lookup = elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        SymmetryGroup { elements, lookup, signed_maps: 0 }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of signed linear maps generation went through (0 for groups built from generators).
    pub fn signed_map_count(&self) -> usize {
        self.signed_maps
    }

    /// Elements in lexicographic order of their image lists; the identity is first.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.lookup.contains_key(g)
    }

    /// Composes every ordered pair and checks membership; also checks inverses.
    pub fn check_closure(&self) -> ClosureReport {
        let failures: u64 = self
            .elements
            .par_iter()
            .map(|g| self.elements.iter().filter(|h| !self.contains(&g.compose(h))).count() as u64)
            .sum();
        let inverses = self.elements.iter().all(|g| self.contains(&g.inverse()));
        ClosureReport { products: (self.len() as u64).pow(2), failures, inverses_present: inverses }
    }

    /// Images of `seed` under the group, sorted, with the order of its stabilizer.
    pub fn orbit_of(&self, seed: RaySet) -> Orbit {
        let mut members = BTreeSet::new();
        let mut stabilizer_order = 0;
        for g in &self.elements {
            let img = g.apply_set(seed);
            if img == seed {
                stabilizer_order += 1;
            }
            members.insert(img);
        }
        Orbit { members: members.into_iter().collect(), stabilizer_order }
    }

    pub fn stabilizer(&self, seed: RaySet) -> Vec<&GroupElement> {
        self.elements.iter().filter(|g| g.apply_set(seed) == seed).collect()
    }

    /// True iff `family` is exactly one orbit.
    pub fn is_transitive(&self, family: &[RaySet]) -> bool {
        let Some(&first) = family.first() else { return false };
        let target: BTreeSet<RaySet> = family.iter().copied().collect();
        let orbit: BTreeSet<RaySet> = self.orbit_of(first).members.into_iter().collect();
        orbit == target
    }

    /// True iff every element maps every member of `family` into `family`.
    pub fn preserves(&self, family: &[RaySet]) -> bool {
        let set: HashSet<RaySet> = family.iter().copied().collect();
        self.elements.par_iter().all(|g| family.iter().all(|m| set.contains(&g.apply_set(*m))))
    }

    /// True iff the stabilizer of `seed` moves any of its rays to any other.
    pub fn stabilizer_transitive_on(&self, seed: RaySet) -> bool {
        let Some(first) = seed.first() else { return true };
        let reached: RaySet = self.stabilizer(seed).iter().map(|g| g.apply(first)).collect();
        reached == seed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub products: u64,
    pub failures: u64,
    pub inverses_present: bool,
}

impl ClosureReport {
    pub fn is_closed(&self) -> bool {
        self.failures == 0 && self.inverses_present
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub members: Vec<RaySet>,
    pub stabilizer_order: usize,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Which grid letter a generator is expected to cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GridShift {
    Rows,
    Columns,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub name: String,
    pub in_group: bool,
    pub order: usize,
    pub cycle_lengths: Vec<usize>,
    /// Image of each cell label, in grid order; `None` if a cell is not mapped to a cell.
    pub cell_images: Vec<Option<CellLabel>>,
    pub shift: GridShift,
    /// The letter being shifted moves as one 5-cycle; the other letter is fixed.
    pub cycles_grid: bool,
}

impl GeneratorCheck {
    pub fn twelve_five_cycles(&self) -> bool {
        self.cycle_lengths.len() == 12 && self.cycle_lengths.iter().all(|&l| l == 5)
    }

    pub fn passed(&self) -> bool {
        self.in_group && self.order == 5 && self.twelve_five_cycles() && self.cycles_grid
    }
}

/// The column-cycling generator `1→31, 2→42, 3→−51, 4→16`.
pub fn column_generator(catalog: &Catalog) -> Result<Option<GroupElement>, SymmetryError> {
    frame_map(catalog, [31, 42, 51, 16], [1, 1, -1, 1])
}

/// Checks the add-12 map (row cycling) and the column generator.
pub fn verify_period5_generators(catalog: &Catalog, group: &SymmetryGroup) -> Result<Vec<GeneratorCheck>, SymmetryError> {
    let mut out = vec![check_generator(catalog, group, "add 12 mod 60", &GroupElement::add12(), GridShift::Rows)];
    match column_generator(catalog)? {
        Some(g) => out.push(check_generator(catalog, group, "1→31 2→42 3→51 4→16", &g, GridShift::Columns)),
        None => out.push(GeneratorCheck {
            name: "1→31 2→42 3→51 4→16".into(),
            in_group: false,
            order: 0,
            cycle_lengths: Vec::new(),
            cell_images: Vec::new(),
            shift: GridShift::Columns,
            cycles_grid: false,
        }),
    }
    Ok(out)
}

fn check_generator(catalog: &Catalog, group: &SymmetryGroup, name: &str, g: &GroupElement, shift: GridShift) -> GeneratorCheck {
    let cell_images: Vec<Option<CellLabel>> = catalog
        .cells()
        .iter()
        .map(|c| {
            let img = g.apply_set(c.rays);
            catalog.cells().iter().find(|d| d.rays == img).map(|d| d.label)
        })
        .collect();
    let cycles_grid = letter_shift(catalog, &cell_images, shift);
    GeneratorCheck {
        name: name.to_string(),
        in_group: group.contains(g),
        order: g.order(),
        cycle_lengths: g.cycles().iter().map(Vec::len).collect(),
        cell_images,
        shift,
        cycles_grid,
    }
}

fn letter_shift(catalog: &Catalog, images: &[Option<CellLabel>], shift: GridShift) -> bool {
    // One letter map σ shared by all cells, a 5-cycle; the other letter fixed.
    let mut sigma = [None; 5];
    for (cell, img) in catalog.cells().iter().zip(images) {
        let Some(img) = img else { return false };
        let (moved_from, moved_to, fixed_from, fixed_to) = match shift {
            GridShift::Rows => (cell.label.row, img.row, cell.label.column, img.column),
            GridShift::Columns => (cell.label.column, img.column, cell.label.row, img.row),
        };
        if fixed_from != fixed_to {
            return false;
        }
        match sigma[moved_from.index()] {
            None => sigma[moved_from.index()] = Some(moved_to),
            Some(prev) if prev != moved_to => return false,
            Some(_) => {}
        }
    }
    let Some(sigma) = sigma.iter().copied().collect::<Option<Vec<_>>>() else { return false };
    let mut x = 0;
    for step in 1..=5 {
        x = sigma[x].index();
        if (x == 0) != (step == 5) {
            return false;
        }
    }
    true
}

/// Coordinate-wise `τ ↦ 1 − τ` followed by swapping the first two coordinates.
/// It preserves the bases but is not induced by an isometry.
pub fn galois_map(catalog: &Catalog) -> Result<Option<GroupElement>, SymmetryError> {
    let index = RayIndex::new(catalog);
    let mut images = [0; RAY_COUNT];
    for (slot, v) in images.iter_mut().zip(&index.vectors) {
        let mut w = v.conjugate();
        w.0.swap(0, 1);
        match index.lookup(&w)? {
            Some(id) => *slot = id,
            None => return Ok(None),
        }
    }
    Ok(GroupElement::from_images(&images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_catalog;
    use crate::lines::LineGeometry;
    use std::sync::OnceLock;

    fn fixture() -> &'static (Catalog, SymmetryGroup) {
        static F: OnceLock<(Catalog, SymmetryGroup)> = OnceLock::new();
        F.get_or_init(|| {
            let c = build_catalog().unwrap();
            let g = SymmetryGroup::generate(&c).unwrap();
            (c, g)
        })
    }

    #[test]
    fn order_and_identity() {
        let (c, g) = fixture();
        assert_eq!(g.signed_map_count(), SIGNED_MAP_COUNT);
        assert_eq!(g.len(), GROUP_ORDER);
        assert!(g.elements()[0].is_identity());
        let id = frame_map(c, [1, 2, 3, 4], [1; 4]).unwrap().unwrap();
        assert!(id.is_identity());
        assert!(g.contains(&GroupElement::add12()));
    }

    #[test]
    fn odd_orderings_fail() {
        let (c, _) = fixture();
        for p in permutations4().into_iter().filter(|p| permutation_parity(p) == 1) {
            let targets = p.map(|k| k as RayId + 1);
            for signs in sign_choices() {
                assert!(frame_map(c, targets, signs).unwrap().is_none(), "{targets:?} {signs:?}");
            }
        }
    }

    #[test]
    fn elements_preserve_bases_by_independent_check() {
        let (c, g) = fixture();
        let bases: HashSet<RaySet> = c.bases().iter().map(|b| b.mask()).collect();
        for e in g.elements().iter().step_by(97) {
            for b in c.bases() {
                assert!(bases.contains(&e.apply_set(b.mask())));
            }
            // Orthogonality preserved pairwise.
            for a in 1..=60u8 {
                for b in a + 1..=60u8 {
                    assert_eq!(c.system().is_orthogonal(a, b), c.system().is_orthogonal(e.apply(a), e.apply(b)));
                }
            }
        }
    }

    #[test]
    fn element_algebra() {
        let (_, g) = fixture();
        let a = &g.elements()[1234];
        let b = &g.elements()[4321];
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.compose(b).inverse(), b.inverse().compose(&a.inverse()));
        let json = serde_json::to_string(a).unwrap();
        assert_eq!(&serde_json::from_str::<GroupElement>(&json).unwrap(), a);
        assert!(GroupElement::from_images(&[1; 60]).is_none());
    }

    #[test]
    fn generators() {
        let (c, g) = fixture();
        let checks = verify_period5_generators(c, g).unwrap();
        for check in &checks {
            assert!(check.passed(), "{check:?}");
        }
        let col = column_generator(c).unwrap().unwrap();
        assert_eq!([col.apply(1), col.apply(2), col.apply(3), col.apply(4)], [31, 42, 51, 16]);
        let aa = CellLabel::parse("AA'").unwrap();
        let ba = CellLabel::parse("BA'").unwrap();
        assert_eq!(checks[1].cell_images[aa.grid_index()], Some(ba));
        assert_eq!(checks[0].cell_images[aa.grid_index()], CellLabel::parse("AB'"));
    }

    #[test]
    fn transitivity() {
        let (c, g) = fixture();
        let rays: Vec<RaySet> = (1..=60).map(RaySet::single).collect();
        let bases: Vec<RaySet> = c.bases().iter().map(|b| b.mask()).collect();
        let cells: Vec<RaySet> = c.cells().iter().map(|x| x.rays).collect();
        let lines: Vec<RaySet> = LineGeometry::build(c).unwrap().lines().iter().map(|l| l.mask()).collect();
        for (family, n) in [(&rays, 60), (&bases, 75), (&cells, 25), (&lines, 200)] {
            assert!(g.is_transitive(family));
            assert!(g.preserves(family));
            let orbit = g.orbit_of(family[0]);
            assert_eq!(orbit.len(), n);
            assert_eq!(orbit.len() * orbit.stabilizer_order, GROUP_ORDER);
        }
        assert_eq!(g.orbit_of(RaySet::full(60)).len(), 1);
    }

    #[test]
    fn galois_map_is_combinatorial_only() {
        let (c, g) = fixture();
        let sigma = galois_map(c).unwrap().unwrap();
        assert!(!g.contains(&sigma));
        let bases: HashSet<RaySet> = c.bases().iter().map(|b| b.mask()).collect();
        assert!(c.bases().iter().all(|b| bases.contains(&sigma.apply_set(b.mask()))));
    }

    #[test]
    fn lcm_order() {
        assert_eq!(GroupElement::add12().order(), 5);
        assert_eq!(GroupElement::identity().order(), 1);
    }
}
