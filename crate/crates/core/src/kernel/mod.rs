//! Hilbert-style proof checking.
//!
//! A [`Proof`] is a list of lines, each with exactly one [`Justification`]:
//! an axiom instance, an assumption, a PC step decided by [`pc_entails`], or
//! an application of a primitive or derived rule. Formulas may contain
//! metavariables; they are opaque atoms, so a checked schematic proof is a
//! proof of every instance.
//!
//! Derived rules and theorems enter a [`RuleRegistry`] once their proofs are
//! accepted, and are visible to later proofs in the same system and in the
//! systems that extend it.

mod check;
mod pc;
mod proof;
mod registry;
mod replacement;
mod rules;

pub use check::{check_and_register, check_proof, CheckReport, Failure, LineVerdict};
pub use pc::{pc_entails, pc_entails_with_limit, PcOutcome, DEFAULT_ATOM_LIMIT};
pub use proof::{Concludes, Justification, Line, Proof, ProofKind};
pub use registry::{Provenance, RegisteredRule, RegisteredTheorem, RuleRegistry};
pub use replacement::{derive_replacement, replacement_proof, Fragment};
pub use rules::{check_rule_application, rck_instance_schemas, RuleDef, RuleExtras, PRIMITIVE_RULES};

use serde::{Deserialize, Serialize};

/// `⟨PC, axioms; rules⟩`. PC is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomSystem {
    pub name: String,
    pub axioms: Vec<String>,
    pub rules: Vec<String>,
    /// Systems whose derived rules and theorems this one inherits.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extends: Vec<String>,
}

impl AxiomSystem {
    pub fn has_axiom(&self, name: &str) -> bool {
        self.axioms.iter().any(|a| a == name)
    }

    pub fn has_rule(&self, name: &str) -> bool {
        self.rules.iter().any(|r| r == name)
    }
}

impl std::fmt::Display for AxiomSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut axioms = vec!["PC".to_string()];
        axioms.extend(self.axioms.iter().cloned());
        write!(f, "{} = <{};{}>", self.name, axioms.join(","), self.rules.join(","))
    }
}
