//! Check a Hilbert derivation written as JSON, then register it as a rule.

use condlogic::corpus::Catalog;
use condlogic::kernel::{check_and_register, check_proof, Proof, RuleRegistry};

const STRENGTHENING: &str = r#"{
  "name": "strengthening", "system": "SDA+RCEA", "kind": "theorem",
  "lines": [
    {"id": 1, "formula": "p<->(p|(p&q))", "just": {"type": "pc", "refs": []}},
    {"id": 2, "formula": "((p|(p&q))>r)->((p>r)&((p&q)>r))",
     "just": {"type": "axiom", "schema": "SDA", "subst": {"A": "p", "B": "p&q", "C": "r"}}},
    {"id": 3, "formula": "((p|(p&q))>r)->((p&q)>r)", "just": {"type": "pc", "refs": [2]}},
    {"id": 4, "formula": "(p>r)<->((p|(p&q))>r)", "just": {"type": "rule", "rule": "RCEA", "refs": [1]}},
    {"id": 5, "formula": "(p>r)->((p&q)>r)", "just": {"type": "pc", "refs": [3, 4]}}
  ],
  "concludes": {"formula": "(p>r)->((p&q)>r)"}
}"#;

const RCM: &str = r#"{
  "name": "rcm", "system": "Vc", "kind": "rule", "registers": "RCM",
  "premises": ["A->B"],
  "lines": [
    {"id": 1, "formula": "A->B", "just": {"type": "assumption"}},
    {"id": 2, "formula": "A&B<->A", "just": {"type": "pc", "refs": [1]}},
    {"id": 3, "formula": "(C>A&B)<->(C>A)", "just": {"type": "rule", "rule": "RCEC", "refs": [2]}},
    {"id": 4, "formula": "(C>A&B)->(C>A)&(C>B)", "just": {"type": "axiom", "schema": "CM"}},
    {"id": 5, "formula": "(C>A)->(C>B)", "just": {"type": "pc", "refs": [3, 4]}}
  ],
  "concludes": {"formula": "(C>A)->(C>B)"}
}"#;

fn main() -> condlogic::Result<()> {
    let catalog = Catalog::bundled();
    let mut registry = RuleRegistry::new();

    let report = check_proof(&Proof::from_json(STRENGTHENING)?, &catalog, &registry);
    println!("{report}\n");

    let report = check_and_register(&Proof::from_json(RCM)?, &catalog, &mut registry)?;
    println!("{report}");
    for rule in registry.rules() {
        println!("registered {} in {}: {}", rule.name, rule.system, rule.def);
    }

    // A line that does not match its cited schema is rejected.
    let broken = RCM.replace("(C>A&B)->(C>A)&(C>B)", "(C>A&B)->(C>A)|(C>B)");
    let report = check_proof(&Proof::from_json(&broken)?, &catalog, &registry);
    println!("\nbroken copy accepted: {}; {:?}", report.accepted, report.first_failure);
    Ok(())
}
