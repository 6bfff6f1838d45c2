use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::pc::{pc_entails, PcOutcome};
use super::proof::{Justification, Proof, ProofKind};
use super::registry::RuleRegistry;
use super::rules::{check_rule_application, RuleDef};
use crate::corpus::Catalog;
use crate::error::Result;
use crate::formula::{Formula, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineVerdict {
    pub id: u32,
    pub formula: String,
    pub justification: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed: Option<String>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// `None` for failures not tied to a line (unknown system, wrong conclusion).
    pub line: Option<u32>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub proof: String,
    pub system: String,
    pub accepted: bool,
    pub lines: Vec<LineVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Failure>,
    /// Non-object-level steps the acceptance relies on.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub meta_steps: Vec<String>,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "proof {} in {}", self.proof, self.system)?;
        for l in &self.lines {
            let mark = if l.ok { "ok  " } else { "FAIL" };
            write!(f, "  {mark} {:>3}. {}    [{}]", l.id, l.formula, l.justification)?;
            if let Some(p) = &l.printed {
                write!(f, " (printed line {p})")?;
            }
            writeln!(f)?;
            if let Some(r) = &l.reason {
                writeln!(f, "         {r}")?;
            }
        }
        for m in &self.meta_steps {
            writeln!(f, "  meta: {m}")?;
        }
        match &self.first_failure {
            None => write!(f, "accepted"),
            Some(Failure { line: Some(id), reason }) => write!(f, "rejected at line {id}: {reason}"),
            Some(Failure { line: None, reason }) => write!(f, "rejected: {reason}"),
        }
    }
}

fn show_assignment(assignment: &[(Formula, bool)]) -> String {
    let parts: Vec<String> = assignment
        .iter()
        .map(|(a, v)| format!("{a} = {}", if *v { "T" } else { "F" }))
        .collect();
    parts.join(", ")
}

struct LineContext<'a> {
    proof: &'a Proof,
    catalog: &'a Catalog,
    registry: &'a RuleRegistry,
    earlier: &'a BTreeMap<u32, &'a Formula>,
    meta_steps: &'a mut Vec<String>,
}

impl<'a> LineContext<'a> {
    fn refs(&self, ids: &[u32]) -> Result<Vec<&'a Formula>, String> {
        ids.iter()
            .map(|id| self.earlier.get(id).copied().ok_or_else(|| format!("line {id} is not an earlier line")))
            .collect()
    }

    fn check(&mut self, id: u32, formula: &Formula, just: &Justification) -> Result<(), String> {
        let system = self.catalog.system(&self.proof.system).expect("system checked");
        match just {
            Justification::Assumption => {
                if self.proof.premises.contains(formula) {
                    Ok(())
                } else {
                    Err("assumption is not among the premises".into())
                }
            }
            Justification::Axiom { schema, subst } => {
                let body = if system.has_axiom(schema) {
                    self.catalog
                        .schema(schema)
                        .ok_or_else(|| format!("schema {schema} is not in the catalog"))?
                        .body()
                } else if let Some(t) = self.registry.theorem(self.catalog, &system.name, schema) {
                    t.schema.body()
                } else {
                    return Err(format!("{schema} is neither an axiom of {} nor a registered theorem", system.name));
                };
                match subst {
                    Some(map) => {
                        let inst = body
                            .instantiate(&Substitution(map.clone()))
                            .map_err(|e| format!("schema mismatch: {e}"))?;
                        if &inst == formula {
                            Ok(())
                        } else {
                            Err(format!("schema mismatch: the substitution gives `{inst}`"))
                        }
                    }
                    None => match body.match_formula(formula) {
                        Some(_) => Ok(()),
                        None => Err(format!("schema mismatch: not an instance of {schema} `{body}`")),
                    },
                }
            }
            Justification::Pc { refs } => {
                let premises = self.refs(refs)?;
                match pc_entails(&premises, formula).map_err(|e| e.to_string())? {
                    PcOutcome::Entailed => Ok(()),
                    PcOutcome::Countermodel { assignment } => Err(format!(
                        "bad PC step; countervaluation over modal atoms: {}",
                        show_assignment(&assignment)
                    )),
                }
            }
            Justification::Rule { rule, refs, .. } | Justification::Derived { rule, refs } => {
                let premises = self.refs(refs)?;
                let primitive = matches!(just, Justification::Rule { .. }) && system.has_rule(rule);
                let def: &RuleDef = if primitive {
                    self.catalog.rule(rule).ok_or_else(|| format!("rule {rule} is not in the catalog"))?
                } else if let Some(r) = self.registry.derived_rule(self.catalog, &system.name, rule) {
                    if let Some(m) = &r.meta_step {
                        let n = just.extras().conjuncts.map(|c| c.len());
                        if n != Some(2) {
                            let n = n.map_or("?".to_string(), |n| n.to_string());
                            self.meta_steps.push(format!("line {id}: {rule} with n={n} relies on: {m}"));
                        }
                    }
                    &r.def
                } else {
                    return Err(format!("rule {rule} is neither primitive in {} nor derived", system.name));
                };
                check_rule_application(def, &premises, formula, &just.extras())
                    .map_err(|r| format!("bad rule application ({rule}): {r}"))
            }
        }
    }
}

/// Check every line of `proof`. Lines after a failure are still checked.
pub fn check_proof(proof: &Proof, catalog: &Catalog, registry: &RuleRegistry) -> CheckReport {
    let mut report = CheckReport {
        proof: proof.name.clone(),
        system: proof.system.clone(),
        accepted: false,
        lines: Vec::with_capacity(proof.lines.len()),
        first_failure: None,
        meta_steps: Vec::new(),
    };
    let fail = |report: &mut CheckReport, line: Option<u32>, reason: String| {
        if report.first_failure.is_none() {
            report.first_failure = Some(Failure { line, reason });
        }
    };
    if catalog.system(&proof.system).is_none() {
        fail(&mut report, None, format!("unknown system `{}`", proof.system));
        return report;
    }
    if proof.kind == ProofKind::Theorem && !proof.premises.is_empty() {
        fail(&mut report, None, "a theorem proof has no premises".into());
    }
    if let Some(t) = proof.template.as_deref() {
        if proof.kind != ProofKind::Rule || t != "rck" {
            fail(&mut report, None, format!("template `{t}` is not applicable"));
        }
    }

    let mut earlier: BTreeMap<u32, &Formula> = BTreeMap::new();
    let mut meta_steps = Vec::new();
    for line in &proof.lines {
        let outcome = if earlier.contains_key(&line.id) {
            Err(format!("duplicate line id {}", line.id))
        } else {
            let mut ctx = LineContext {
                proof,
                catalog,
                registry,
                earlier: &earlier,
                meta_steps: &mut meta_steps,
            };
            ctx.check(line.id, &line.formula, &line.just)
        };
        if let Err(reason) = &outcome {
            fail(&mut report, Some(line.id), reason.clone());
        }
        report.lines.push(LineVerdict {
            id: line.id,
            formula: line.formula.to_string(),
            justification: line.just.label(),
            printed: line.printed.clone(),
            ok: outcome.is_ok(),
            reason: outcome.err(),
        });
        earlier.entry(line.id).or_insert(&line.formula);
    }
    report.meta_steps = meta_steps;

    match proof.lines.last() {
        None => fail(&mut report, None, "proof has no lines".into()),
        Some(last) if last.formula != proof.concludes.formula => fail(
            &mut report,
            None,
            format!("last line is `{}`, but the proof concludes `{}`", last.formula, proof.concludes.formula),
        ),
        Some(_) => {}
    }
    if proof.kind == ProofKind::Rule && proof.template.as_deref() == Some("rck") {
        report.meta_steps.push("RCK generalized from n=2 template".into());
    }
    report.accepted = report.first_failure.is_none() && report.lines.iter().all(|l| l.ok);
    report
}

/// Check `proof` and, when it is accepted and names a result, register it.
pub fn check_and_register(proof: &Proof, catalog: &Catalog, registry: &mut RuleRegistry) -> Result<CheckReport> {
    let report = check_proof(proof, catalog, registry);
    if report.accepted && proof.registers.is_some() {
        registry.register(catalog, proof, &report)?;
    }
    Ok(report)
}
