use std::collections::BTreeMap;

use serde::Serialize;

use super::check::CheckReport;
use super::proof::{Proof, ProofKind};
use super::rules::{rck_instance_schemas, RuleDef};
use crate::corpus::Catalog;
use crate::error::{Error, Result};
use crate::formula::{Formula, Schema, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Primitive,
    Derived { proof: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct RegisteredRule {
    pub name: String,
    pub system: String,
    pub def: RuleDef,
    pub provenance: Provenance,
    /// Set when the rule was generalized from a fixed instance.
    pub meta_step: Option<String>,
}

#[derive(Debug, Clone)]
pub struct RegisteredTheorem {
    pub system: String,
    pub schema: Schema,
    pub proof: String,
}

/// Derived rules and theorems, keyed by the system they were proved in.
#[derive(Debug, Clone, Default)]
pub struct RuleRegistry {
    rules: BTreeMap<(String, String), RegisteredRule>,
    theorems: BTreeMap<(String, String), RegisteredTheorem>,
}

/// Jointly match `patterns` against `targets`; the result must rename
/// metavariables one-to-one.
fn same_shape_up_to_renaming(patterns: &[&Formula], targets: &[&Formula]) -> bool {
    if patterns.len() != targets.len() {
        return false;
    }
    let mut subst = Substitution::default();
    if !patterns.iter().zip(targets).all(|(p, t)| p.match_into(t, &mut subst)) {
        return false;
    }
    let target_metas: std::collections::BTreeSet<char> = targets.iter().flat_map(|t| t.metavars()).collect();
    subst.is_renaming() && subst.len() == target_metas.len()
}

impl RuleRegistry {
    pub fn new() -> Self {
        RuleRegistry::default()
    }

    /// A derived rule visible from `system`.
    pub fn derived_rule(&self, catalog: &Catalog, system: &str, name: &str) -> Option<&RegisteredRule> {
        catalog
            .lineage(system)
            .into_iter()
            .find_map(|s| self.rules.get(&(s.to_string(), name.to_string())))
    }

    /// A derived theorem visible from `system`.
    pub fn theorem(&self, catalog: &Catalog, system: &str, name: &str) -> Option<&RegisteredTheorem> {
        catalog
            .lineage(system)
            .into_iter()
            .find_map(|s| self.theorems.get(&(s.to_string(), name.to_string())))
    }

    pub fn rules(&self) -> impl Iterator<Item = &RegisteredRule> {
        self.rules.values()
    }

    pub fn theorems(&self) -> impl Iterator<Item = &RegisteredTheorem> {
        self.theorems.values()
    }

    pub fn len(&self) -> usize {
        self.rules.len() + self.theorems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Register the rule or theorem established by an accepted proof under
    /// `proof.registers`.
    pub fn register(&mut self, catalog: &Catalog, proof: &Proof, report: &CheckReport) -> Result<()> {
        let Some(name) = proof.registers.as_deref() else {
            return Err(Error::Registry(format!("proof `{}` does not name what it registers", proof.name)));
        };
        if !report.accepted || report.proof != proof.name {
            return Err(Error::Registry(format!(
                "cannot register `{name}`: proof `{}` was not accepted",
                proof.name
            )));
        }
        let key = (proof.system.clone(), name.to_string());
        let conclusion = &proof.concludes.formula;
        match proof.kind {
            ProofKind::Theorem => {
                if self.theorems.contains_key(&key) {
                    return Err(Error::Registry(format!("theorem `{name}` already registered in {}", proof.system)));
                }
                if let Some(known) = catalog.schema(name) {
                    if !same_shape_up_to_renaming(&[known.body()], &[conclusion]) {
                        return Err(Error::Registry(format!(
                            "proof `{}` concludes `{conclusion}`, which is not {name} `{}`",
                            proof.name,
                            known.body()
                        )));
                    }
                }
                self.theorems.insert(
                    key,
                    RegisteredTheorem {
                        system: proof.system.clone(),
                        schema: Schema::new(name, conclusion.clone()),
                        proof: proof.name.clone(),
                    },
                );
            }
            ProofKind::Rule => {
                if self.rules.contains_key(&key) {
                    return Err(Error::Registry(format!("rule `{name}` already registered in {}", proof.system)));
                }
                let premises: Vec<&Formula> = proof.premises.iter().collect();
                let (def, meta_step) = match proof.template.as_deref() {
                    Some("rck") => {
                        let (p, c) = rck_instance_schemas(2);
                        let mut targets = premises.clone();
                        targets.push(conclusion);
                        if !same_shape_up_to_renaming(&[&p, &c], &targets) {
                            return Err(Error::Registry(format!(
                                "proof `{}` is not the n=2 case of RCK (`{p} / {c}`)",
                                proof.name
                            )));
                        }
                        (RuleDef::Rck, Some(format!("RCK generalized from n=2 template (proof `{}`)", proof.name)))
                    }
                    Some(other) => return Err(Error::Registry(format!("unknown template `{other}`"))),
                    None => {
                        if let Some(prim) = catalog.rule(name) {
                            let RuleDef::Schematic { premises: pp, conclusion: pc } = prim else {
                                return Err(Error::Registry(format!("`{name}` can only be registered through a template")));
                            };
                            let mut patterns: Vec<&Formula> = pp.iter().collect();
                            patterns.push(pc);
                            let mut targets = premises.clone();
                            targets.push(conclusion);
                            if !same_shape_up_to_renaming(&patterns, &targets) {
                                return Err(Error::Registry(format!(
                                    "proof `{}` does not establish {name} `{prim}`",
                                    proof.name
                                )));
                            }
                        }
                        (
                            RuleDef::Schematic { premises: proof.premises.clone(), conclusion: conclusion.clone() },
                            None,
                        )
                    }
                };
                self.rules.insert(
                    key,
                    RegisteredRule {
                        name: name.to_string(),
                        system: proof.system.clone(),
                        def,
                        provenance: Provenance::Derived { proof: proof.name.clone() },
                        meta_step,
                    },
                );
            }
        }
        Ok(())
    }
}
