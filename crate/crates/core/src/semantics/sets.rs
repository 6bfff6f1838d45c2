use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A set of worlds, bit `i` standing for world `i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet(pub u32);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn full(worlds: usize) -> Self {
        WorldSet(((1u64 << worlds) - 1) as u32)
    }

    pub fn singleton(w: usize) -> Self {
        WorldSet(1 << w)
    }

    pub fn from_worlds<I: IntoIterator<Item = usize>>(worlds: I) -> Self {
        WorldSet(worlds.into_iter().fold(0, |acc, w| acc | (1 << w)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, w: usize) -> bool {
        self.0 & (1 << w) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 | other.0)
    }

    pub fn inter(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & other.0)
    }

    pub fn minus(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & !other.0)
    }

    pub fn complement(self, worlds: usize) -> WorldSet {
        WorldSet::full(worlds).minus(self)
    }

    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: WorldSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn worlds(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |w| self.contains(*w))
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = WorldSet> {
        let full = self.0;
        // Standard submask enumeration, reversed into increasing order.
        let mut subs = Vec::with_capacity(1 << self.len());
        let mut s = full;
        loop {
            subs.push(WorldSet(s));
            if s == 0 {
                break;
            }
            s = (s - 1) & full;
        }
        subs.reverse();
        subs.into_iter()
    }
}

/// All subsets of `0..worlds` in reflected-binary (Gray code) order.
///
/// This is the iteration order of every exhaustive check in this module, so
/// "first witness" is well defined.
pub fn subsets_in_order(worlds: usize) -> impl Iterator<Item = WorldSet> + Clone {
    (0u32..(1u32 << worlds)).map(|i| WorldSet(i ^ (i >> 1)))
}

impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.worlds().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for WorldSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.worlds())
    }
}

impl<'de> Deserialize<'de> for WorldSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let worlds = Vec::<usize>::deserialize(d)?;
        if let Some(w) = worlds.iter().find(|w| **w >= 32) {
            return Err(serde::de::Error::custom(format!("world {w} out of range")));
        }
        Ok(WorldSet::from_worlds(worlds))
    }
}
