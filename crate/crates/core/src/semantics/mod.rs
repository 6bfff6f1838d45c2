//! Finite selection-function semantics.
//!
//! A frame has worlds `0..n` and a total selection function `g(w, X)` for
//! every world `w` and every subset `X` of worlds (the empty set included).
//! Sets of worlds are bitmasks ([`WorldSet`]), so frames are limited to
//! [`MAX_FRAME_WORLDS`] worlds.
//!
//! Truth sets follow the usual clauses; the conditional is
//! `[A>B] = { w | g(w, [A]) ⊆ [B] }`.

mod conditions;
mod correspondence;
mod eval;
mod frame;
mod sets;
mod validity;

pub use conditions::{check_condition, ConditionName};
pub use correspondence::{
    correspondence_check, correspondence_check_filtered, for_each_frame, sample_frame,
    CorrespondenceMode, CorrespondenceReport, Discrepancy, MAX_EXHAUSTIVE_WORLDS,
};
pub use eval::{truth_set, truth_set_with, CompiledFormula, Model};
pub use frame::{FrameEntry, FrameFile, SelectionFrame, LEWIS_G};
pub use sets::{subsets_in_order, WorldSet};
pub use validity::{
    formula_valid_on_frame, rule_preserved_on_frame, schema_valid_on_frame, valid_on_frame,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Frames larger than this are rejected; subsets are `u32` bitmasks and the
/// selection table has `n * 2^n` entries.
pub const MAX_FRAME_WORLDS: usize = 8;

/// A world plus the sets that falsify a condition or a schema there.
///
/// For frame conditions the keys are `X` and `Y`; for schemas they are the
/// metavariable names; for formulas the propositional variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub world: usize,
    pub assignment: BTreeMap<String, WorldSet>,
}

impl Witness {
    pub fn get(&self, key: &str) -> Option<WorldSet> {
        self.assignment.get(key).copied()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "world {}", self.world)?;
        for (k, v) in &self.assignment {
            write!(f, ", {k}={v}")?;
        }
        Ok(())
    }
}

/// Outcome of an exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}
