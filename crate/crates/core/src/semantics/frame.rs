use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{WorldSet, MAX_FRAME_WORLDS};
use crate::error::{Error, Result};

/// Name of the built-in four-world frame on which Vn holds and CA fails.
pub const LEWIS_G: &str = "lewis-g";

/// A finite world set with a total selection function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SelectionFrame {
    worlds: usize,
    table: Vec<WorldSet>,
}

impl SelectionFrame {
    /// Build a frame from `g(w, X)`. Outputs must be subsets of the worlds.
    pub fn from_fn<F>(worlds: usize, mut g: F) -> Result<Self>
    where
        F: FnMut(usize, WorldSet) -> WorldSet,
    {
        check_size(worlds)?;
        let subsets = 1usize << worlds;
        let full = WorldSet::full(worlds);
        let mut table = Vec::with_capacity(worlds * subsets);
        for w in 0..worlds {
            for x in 0..subsets {
                let out = g(w, WorldSet(x as u32));
                if !out.is_subset(full) {
                    return Err(Error::Frame(format!(
                        "g({w}, {}) = {out} is not a set of worlds",
                        WorldSet(x as u32)
                    )));
                }
                table.push(out);
            }
        }
        Ok(SelectionFrame { worlds, table })
    }

    /// Build from a raw row-major table (`worlds * 2^worlds` entries).
    pub fn from_table(worlds: usize, table: Vec<WorldSet>) -> Result<Self> {
        check_size(worlds)?;
        if table.len() != worlds << worlds {
            return Err(Error::Frame(format!(
                "selection table has {} entries, expected {}",
                table.len(),
                worlds << worlds
            )));
        }
        let mut it = table.into_iter();
        SelectionFrame::from_fn(worlds, |_, _| it.next().expect("length checked"))
    }

    /// The frame from the CA separation argument: worlds `{0,1,2,3}`,
    /// `A = {1,2}`, and
    /// `g(i,X) = {1}` if `X = A` and `i = 0`; `{i}` if `i ∈ X`; `X` otherwise.
    pub fn lewis_g() -> Self {
        let a = WorldSet::from_worlds([1, 2]);
        SelectionFrame::from_fn(4, |i, x| {
            if x == a && i == 0 {
                WorldSet::singleton(1)
            } else if x.contains(i) {
                WorldSet::singleton(i)
            } else {
                x
            }
        })
        .expect("lewis-g is well formed")
    }

    /// `g(i, X) = {i} ∩ X`: the conditional collapses to material implication.
    pub fn material(worlds: usize) -> Result<Self> {
        SelectionFrame::from_fn(worlds, |i, x| x.inter(WorldSet::singleton(i)))
    }

    /// `g(i, X) = X`: the conditional becomes strict implication.
    pub fn identity(worlds: usize) -> Result<Self> {
        SelectionFrame::from_fn(worlds, |_, x| x)
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            LEWIS_G => Some(SelectionFrame::lewis_g()),
            _ => {
                let (kind, n) = name.split_once('-')?;
                let n: usize = n.parse().ok()?;
                match kind {
                    "material" => SelectionFrame::material(n).ok(),
                    "identity" => SelectionFrame::identity(n).ok(),
                    _ => None,
                }
            }
        }
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.worlds)
    }

    pub fn subset_count(&self) -> usize {
        1 << self.worlds
    }

    #[inline]
    pub fn select(&self, w: usize, x: WorldSet) -> WorldSet {
        self.table[(w << self.worlds) | x.index()]
    }

    pub fn set(&mut self, w: usize, x: WorldSet, value: WorldSet) {
        debug_assert!(value.is_subset(self.all_worlds()));
        let idx = (w << self.worlds) | x.index();
        self.table[idx] = value;
    }

    pub fn table(&self) -> &[WorldSet] {
        &self.table
    }

    pub fn to_file(&self, name: Option<&str>) -> FrameFile {
        let names = |x: WorldSet| x.worlds().map(|w| w.to_string()).collect();
        let mut selection = Vec::with_capacity(self.table.len());
        for w in 0..self.worlds {
            for x in 0..self.subset_count() {
                let x = WorldSet(x as u32);
                selection.push(FrameEntry { w: w.to_string(), set: names(x), out: names(self.select(w, x)) });
            }
        }
        FrameFile { name: name.map(str::to_string), worlds: (0..self.worlds).map(|w| w.to_string()).collect(), selection }
    }

    /// Load a frame from a JSON file, or a built-in via `builtin:NAME`.
    pub fn load(spec: &str) -> Result<Self> {
        if let Some(name) = spec.strip_prefix("builtin:") {
            return SelectionFrame::builtin(name)
                .ok_or_else(|| Error::Frame(format!("unknown built-in frame `{name}`")));
        }
        let path = Path::new(spec);
        let text = std::fs::read_to_string(path)?;
        let file: FrameFile = serde_json::from_str(&text)
            .map_err(|e| Error::File { file: path.to_path_buf(), msg: e.to_string() })?;
        file.into_frame()
            .map_err(|e| Error::File { file: path.to_path_buf(), msg: e.to_string() })
    }
}

fn check_size(worlds: usize) -> Result<()> {
    if worlds == 0 || worlds > MAX_FRAME_WORLDS {
        return Err(Error::Frame(format!(
            "frames need 1..={MAX_FRAME_WORLDS} worlds, got {worlds}"
        )));
    }
    Ok(())
}

impl fmt::Display for SelectionFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "worlds: {}", self.all_worlds())?;
        for w in 0..self.worlds {
            for x in 0..self.subset_count() {
                let x = WorldSet(x as u32);
                writeln!(f, "  g({w}, {x}) = {}", self.select(w, x))?;
            }
        }
        Ok(())
    }
}

/// On-disk frame format.
///
/// `worlds` names the worlds in order; `selection` holds one entry
/// `{"w", "set", "out"}` per world and subset, `out` being `g(w, set)`.
/// Entries may come in any order; missing or duplicate ones are errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub worlds: Vec<String>,
    pub selection: Vec<FrameEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameEntry {
    pub w: String,
    pub set: Vec<String>,
    pub out: Vec<String>,
}

impl FrameFile {
    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn into_frame(self) -> Result<SelectionFrame> {
        let n = self.worlds.len();
        check_size(n)?;
        let mut index = std::collections::HashMap::new();
        for (i, name) in self.worlds.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(Error::Frame(format!("world `{name}` is declared twice")));
            }
        }
        let world = |name: &str| {
            index.get(name).copied().ok_or_else(|| Error::Frame(format!("unknown world `{name}`")))
        };
        let set = |names: &[String]| -> Result<WorldSet> {
            let mut out = WorldSet::EMPTY;
            for name in names {
                out = out.union(WorldSet::singleton(world(name)?));
            }
            Ok(out)
        };
        let subsets = 1usize << n;
        let mut table: Vec<Option<WorldSet>> = vec![None; n * subsets];
        for e in &self.selection {
            let w = world(&e.w)?;
            let x = set(&e.set)?;
            let slot = &mut table[(w << n) | x.index()];
            if slot.is_some() {
                return Err(Error::Frame(format!("duplicate entry for g({}, {x})", e.w)));
            }
            *slot = Some(set(&e.out)?);
        }
        let mut full = Vec::with_capacity(table.len());
        for (i, v) in table.into_iter().enumerate() {
            match v {
                Some(v) => full.push(v),
                None => {
                    let x = WorldSet((i & (subsets - 1)) as u32);
                    return Err(Error::Frame(format!(
                        "missing entry for g({}, {x}); the selection must be total",
                        self.worlds[i >> n]
                    )));
                }
            }
        }
        SelectionFrame::from_table(n, full)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lewis_g_values() {
        let g = SelectionFrame::lewis_g();
        let s = |w: &[usize]| WorldSet::from_worlds(w.iter().copied());
        assert_eq!(g.select(0, s(&[1, 2])), s(&[1]));
        assert_eq!(g.select(0, s(&[1, 2, 3])), s(&[1, 2, 3]));
        assert_eq!(g.select(0, s(&[1, 3])), s(&[1, 3]));
        assert_eq!(g.select(2, s(&[1, 2, 3])), s(&[2]));
        assert_eq!(g.select(3, s(&[1, 2])), s(&[1, 2]));
        assert_eq!(g.select(1, WorldSet::EMPTY), WorldSet::EMPTY);
    }

    #[test]
    fn file_round_trip_and_totality() {
        let g = SelectionFrame::lewis_g();
        let file = g.to_file(Some(LEWIS_G));
        let json = serde_json::to_string(&file).unwrap();
        let back: FrameFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_frame().unwrap(), g);

        let mut partial = g.to_file(None);
        partial.selection.pop();
        assert!(partial.into_frame().unwrap_err().to_string().contains("missing entry for g(3, {0,1,2,3})"));

        let mut duplicate = g.to_file(None);
        duplicate.selection[1] = duplicate.selection[0].clone();
        assert!(duplicate.into_frame().unwrap_err().to_string().contains("duplicate"));

        let mut escaping = g.to_file(None);
        escaping.selection[0].out = vec!["7".into()];
        assert!(escaping.into_frame().is_err());
    }

    #[test]
    fn named_worlds_in_any_order() {
        let text = r#"{"worlds":["a","b"],"selection":[
            {"w":"b","set":["a","b"],"out":["b"]},{"w":"a","set":["b","a"],"out":["a"]},
            {"w":"a","set":[],"out":[]},{"w":"b","set":[],"out":[]},
            {"w":"a","set":["a"],"out":["a"]},{"w":"b","set":["a"],"out":["a"]},
            {"w":"a","set":["b"],"out":["b"]},{"w":"b","set":["b"],"out":["b"]}]}"#;
        let file: FrameFile = serde_json::from_str(text).unwrap();
        let centered = SelectionFrame::from_fn(2, |i, x| if x.contains(i) { WorldSet::singleton(i) } else { x }).unwrap();
        assert_eq!(file.into_frame().unwrap(), centered);
    }

    #[test]
    fn builtins() {
        assert!(SelectionFrame::builtin("lewis-g").is_some());
        assert_eq!(SelectionFrame::builtin("material-3").unwrap().worlds(), 3);
        assert!(SelectionFrame::builtin("nope").is_none());
        assert!(SelectionFrame::load("builtin:nope").is_err());
    }
}
