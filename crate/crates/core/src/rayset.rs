//! Sets of ray ids packed into a single `u64`.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A ray id in the 1-based numbering of its system (at most 64 rays).
pub type RayId = u8;

pub const MAX_RAYS: usize = 64;

/// Bit `i` set means ray id `i + 1` is present.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct RaySet(u64);

impl RaySet {
    pub const EMPTY: RaySet = RaySet(0);

    pub const fn from_bits(bits: u64) -> Self {
        RaySet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Ids `1..=n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_RAYS);
        if n == MAX_RAYS {
            RaySet(u64::MAX)
        } else {
            RaySet((1u64 << n) - 1)
        }
    }

    pub fn single(id: RayId) -> Self {
        RaySet(bit(id))
    }

    pub fn contains(self, id: RayId) -> bool {
        id >= 1 && (id as usize) <= MAX_RAYS && self.0 & bit(id) != 0
    }

    pub fn insert(&mut self, id: RayId) {
        self.0 |= bit(id);
    }

    pub fn remove(&mut self, id: RayId) {
        self.0 &= !bit(id);
    }

    pub fn with(self, id: RayId) -> Self {
        RaySet(self.0 | bit(id))
    }

    pub fn without(self, id: RayId) -> Self {
        RaySet(self.0 & !bit(id))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: RaySet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: RaySet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest id in the set.
    pub fn first(self) -> Option<RayId> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as RayId + 1)
    }

    pub fn last(self) -> Option<RayId> {
        (self.0 != 0).then(|| (64 - self.0.leading_zeros()) as RayId)
    }

    /// Ids in increasing order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<RayId> {
        self.iter().collect()
    }
}

fn bit(id: RayId) -> u64 {
    debug_assert!(id >= 1 && (id as usize) <= MAX_RAYS, "ray id {id} out of range");
    1u64 << (id - 1)
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = RayId;

    fn next(&mut self) -> Option<RayId> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz as RayId + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for RaySet {
    type Item = RayId;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<RayId> for RaySet {
    fn from_iter<I: IntoIterator<Item = RayId>>(iter: I) -> Self {
        let mut s = RaySet::EMPTY;
        for id in iter {
            s.insert(id);
        }
        s
    }
}

impl<'a> FromIterator<&'a RayId> for RaySet {
    fn from_iter<I: IntoIterator<Item = &'a RayId>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl BitOr for RaySet {
    type Output = RaySet;
    fn bitor(self, rhs: Self) -> Self {
        RaySet(self.0 | rhs.0)
    }
}

impl BitAnd for RaySet {
    type Output = RaySet;
    fn bitand(self, rhs: Self) -> Self {
        RaySet(self.0 & rhs.0)
    }
}

impl BitXor for RaySet {
    type Output = RaySet;
    fn bitxor(self, rhs: Self) -> Self {
        RaySet(self.0 ^ rhs.0)
    }
}

impl Sub for RaySet {
    type Output = RaySet;
    fn sub(self, rhs: Self) -> Self {
        RaySet(self.0 & !rhs.0)
    }
}

impl Not for RaySet {
    type Output = RaySet;
    fn not(self) -> Self {
        RaySet(!self.0)
    }
}

impl fmt::Debug for RaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for RaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, id) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for RaySet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for RaySet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let ids = Vec::<RayId>::deserialize(d)?;
        if let Some(bad) = ids.iter().find(|&&id| id == 0 || id as usize > MAX_RAYS) {
            return Err(serde::de::Error::custom(format!("ray id {bad} out of range")));
        }
        Ok(ids.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basics() {
        let s: RaySet = [3u8, 1, 60].into_iter().collect();
        assert_eq!(s.to_vec(), vec![1, 3, 60]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.first(), Some(1));
        assert_eq!(s.last(), Some(60));
        assert!(s.contains(60) && !s.contains(2) && !s.contains(0));
        assert_eq!(RaySet::full(60).len(), 60);
        assert_eq!(RaySet::full(64).len(), 64);
        assert_eq!(s.to_string(), "{1,3,60}");
    }

    #[test]
    fn json_rejects_out_of_range() {
        assert!(serde_json::from_str::<RaySet>("[0]").is_err());
        assert!(serde_json::from_str::<RaySet>("[65]").is_err());
        assert_eq!(serde_json::from_str::<RaySet>("[2,1]").unwrap().to_vec(), vec![1, 2]);
    }

    proptest! {
        #[test]
        fn json_round_trip(bits in any::<u64>()) {
            let s = RaySet::from_bits(bits);
            let back: RaySet = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
            prop_assert_eq!(back, s);
            prop_assert_eq!(s.iter().count(), s.len());
        }
    }
}
