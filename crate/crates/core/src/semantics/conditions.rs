use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{subsets_in_order, SelectionFrame, Verdict, Witness, WorldSet};
use crate::error::Error;

/// Frame conditions on selection functions. All quantify over a world `i`
/// and one or two subsets `X`, `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionName {
    /// `g(i,X) ⊆ X`
    Id,
    /// `g(i,X) = ∅ ⇒ g(i,Y) ∩ X = ∅`
    Mod,
    /// `g(i,W−X) = ∅ ⇒ g(i,Y) ∩ (W−X) = ∅`
    ModPrime,
    /// `g(i,X) ∩ Y ≠ ∅ ⇒ g(i,X∩Y) ⊆ g(i,X)`
    Cv,
    /// `g(i,X) ⊆ Y ∧ g(i,Y) ⊆ X ⇒ g(i,X) = g(i,Y)`
    Cso,
    /// `i ∈ X ⇒ g(i,X) = {i}`
    Cent,
    /// `g(i,X∪Y) ⊆ g(i,X) ∪ g(i,Y)`
    Ca,
    /// `g(i,X) ∪ g(i,Y) ⊆ g(i,X∪Y)`
    Sda,
}

impl ConditionName {
    pub const ALL: [ConditionName; 8] = [
        ConditionName::Id,
        ConditionName::Mod,
        ConditionName::ModPrime,
        ConditionName::Cv,
        ConditionName::Cso,
        ConditionName::Cent,
        ConditionName::Ca,
        ConditionName::Sda,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConditionName::Id => "id",
            ConditionName::Mod => "mod",
            ConditionName::ModPrime => "mod_prime",
            ConditionName::Cv => "cv",
            ConditionName::Cso => "cso",
            ConditionName::Cent => "cent",
            ConditionName::Ca => "ca",
            ConditionName::Sda => "sda",
        }
    }

    /// Conditions that mention a second subset `Y`.
    pub fn is_binary(self) -> bool {
        !matches!(self, ConditionName::Id | ConditionName::Cent)
    }

    /// Parse a comma-separated list such as `id,mod,cv`.
    pub fn parse_list(text: &str) -> Result<Vec<ConditionName>, Error> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect()
    }

    /// Does the instance `(i, X, Y)` satisfy the condition? `Y` is ignored
    /// by unary conditions.
    pub fn instance_holds(self, frame: &SelectionFrame, i: usize, x: WorldSet, y: WorldSet) -> bool {
        let g = |s: WorldSet| frame.select(i, s);
        match self {
            ConditionName::Id => g(x).is_subset(x),
            ConditionName::Mod => !g(x).is_empty() || !g(y).intersects(x),
            ConditionName::ModPrime => {
                let nx = x.complement(frame.worlds());
                !g(nx).is_empty() || !g(y).intersects(nx)
            }
            ConditionName::Cv => !g(x).intersects(y) || g(x.inter(y)).is_subset(g(x)),
            ConditionName::Cso => !(g(x).is_subset(y) && g(y).is_subset(x)) || g(x) == g(y),
            ConditionName::Cent => !x.contains(i) || g(x) == WorldSet::singleton(i),
            ConditionName::Ca => g(x.union(y)).is_subset(g(x).union(g(y))),
            ConditionName::Sda => g(x).union(g(y)).is_subset(g(x.union(y))),
        }
    }

    /// Re-evaluate at a witness; `true` means the condition holds there.
    pub fn holds_at(self, frame: &SelectionFrame, w: &Witness) -> bool {
        let x = w.get("X").unwrap_or_default();
        let y = w.get("Y").unwrap_or_default();
        self.instance_holds(frame, w.world, x, y)
    }
}

impl fmt::Display for ConditionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConditionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "id" => ConditionName::Id,
            "mod" => ConditionName::Mod,
            "mod_prime" | "mod'" => ConditionName::ModPrime,
            "cv" => ConditionName::Cv,
            "cso" => ConditionName::Cso,
            "cent" => ConditionName::Cent,
            "ca" => ConditionName::Ca,
            "sda" => ConditionName::Sda,
            _ => return Err(Error::UnknownCondition(s.to_string())),
        })
    }
}

/// Exhaustively check a condition; the first failing instance in
/// (world, X, Y) order is returned as the witness.
pub fn check_condition(frame: &SelectionFrame, c: ConditionName) -> Verdict {
    let n = frame.worlds();
    for i in 0..n {
        for x in subsets_in_order(n) {
            if c.is_binary() {
                for y in subsets_in_order(n) {
                    if !c.instance_holds(frame, i, x, y) {
                        return fail(i, &[("X", x), ("Y", y)]);
                    }
                }
            } else if !c.instance_holds(frame, i, x, WorldSet::EMPTY) {
                return fail(i, &[("X", x)]);
            }
        }
    }
    Verdict::Holds
}

fn fail(world: usize, sets: &[(&str, WorldSet)]) -> Verdict {
    let assignment: BTreeMap<String, WorldSet> = sets.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    Verdict::Fails(Witness { world, assignment })
}
