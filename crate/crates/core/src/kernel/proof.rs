use std::collections::BTreeMap;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use super::rules::RuleExtras;
use crate::error::{Error, Result};
use crate::formula::{Formula, Path};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofKind {
    Theorem,
    Rule,
}

/// The justification of one line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum Justification {
    /// An instance of an axiom schema or of a registered theorem.
    Axiom {
        schema: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        subst: Option<BTreeMap<char, Formula>>,
    },
    Assumption,
    Pc { refs: Vec<u32> },
    /// A primitive rule of the system, or a registered derived rule.
    Rule {
        rule: String,
        refs: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        conjuncts: Option<Vec<Formula>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        paths: Option<Vec<Path>>,
    },
    /// A registered derived rule only.
    Derived { rule: String, refs: Vec<u32> },
}

impl Justification {
    pub fn refs(&self) -> &[u32] {
        match self {
            Justification::Pc { refs } | Justification::Rule { refs, .. } | Justification::Derived { refs, .. } => refs,
            Justification::Axiom { .. } | Justification::Assumption => &[],
        }
    }

    pub fn extras(&self) -> RuleExtras {
        match self {
            Justification::Rule { conjuncts, paths, .. } => {
                RuleExtras { conjuncts: conjuncts.clone(), paths: paths.clone() }
            }
            _ => RuleExtras::default(),
        }
    }

    /// Short label used in reports, e.g. `RCEA (3)` or `PC (1, 2)`.
    pub fn label(&self) -> String {
        let refs = |r: &[u32]| {
            if r.is_empty() {
                String::new()
            } else {
                let s: Vec<String> = r.iter().map(u32::to_string).collect();
                format!(" ({})", s.join(", "))
            }
        };
        match self {
            Justification::Axiom { schema, .. } => schema.clone(),
            Justification::Assumption => "Assumption".into(),
            Justification::Pc { refs: r } => format!("PC{}", refs(r)),
            Justification::Rule { rule, refs: r, .. } | Justification::Derived { rule, refs: r } => {
                format!("{rule}{}", refs(r))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Line {
    pub id: u32,
    pub formula: Formula,
    pub just: Justification,
    /// Line number in the printed derivation this line belongs to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Concludes {
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Proof {
    pub name: String,
    pub system: String,
    pub kind: ProofKind,
    /// Name under which the result is registered (a derived rule or theorem).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub registers: Option<String>,
    /// `"rck"`: the proof is the n=2 case of RCK, registered for every n.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub template: Option<String>,
    #[serde(default)]
    pub premises: Vec<Formula>,
    pub lines: Vec<Line>,
    pub concludes: Concludes,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Proof {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &FsPath) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::File { file: path.to_path_buf(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("proofs serialize")
    }

    pub fn line(&self, id: u32) -> Option<&Line> {
        self.lines.iter().find(|l| l.id == id)
    }

    pub fn next_id(&self) -> u32 {
        self.lines.iter().map(|l| l.id).max().unwrap_or(0) + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "name": "rcm", "system": "Vc", "kind": "rule", "registers": "RCM",
            "premises": ["A->B"],
            "lines": [
                {"id": 1, "formula": "A->B", "just": {"type": "assumption"}, "printed": "1"},
                {"id": 2, "formula": "A&C->B", "just": {"type": "pc", "refs": [1]}},
                {"id": 3, "formula": "(C>A)->(C>B)", "just": {"type": "rule", "rule": "RCK", "refs": [2], "conjuncts": ["A"]}},
                {"id": 4, "formula": "(A>B)<->(A>B)", "just": {"type": "rule", "rule": "RE", "refs": [2], "paths": [["left", "only"]]}},
                {"id": 5, "formula": "A>A", "just": {"type": "axiom", "schema": "ID", "subst": {"A": "p|q"}}}
            ],
            "concludes": {"formula": "(C>A)->(C>B)"}
        }"#;
        let p = Proof::from_json(text).unwrap();
        assert_eq!(p.lines.len(), 5);
        assert_eq!(p.next_id(), 6);
        let back = Proof::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
        assert_eq!(p.lines[2].just.label(), "RCK (2)");
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"name":"x","system":"Vc","kind":"theorem","lines":[],"concludes":{"formula":"p"},"bogus":1}"#;
        assert!(Proof::from_json(text).is_err());
    }
}
