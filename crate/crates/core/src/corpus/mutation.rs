use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Catalog, Corpus};
use crate::formula::Formula;
use crate::kernel::{check_proof, Justification, Proof, PRIMITIVE_RULES};

/// A single-line change to a proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mutation {
    NegateFormula { line: u32 },
    ToAssumption { line: u32 },
    OtherSchema { line: u32, from: String, to: String },
    OtherRule { line: u32, from: String, to: String },
}

/// Apply a random single-line mutation; the result always differs from `proof`.
pub fn mutate(proof: &Proof, catalog: &Catalog, rng: &mut ChaCha8Rng) -> (Proof, Mutation) {
    let mut out = proof.clone();
    let idx = rng.gen_range(0..out.lines.len());
    let line = &mut out.lines[idx];
    let id = line.id;
    let mut options = vec![0u8];
    match &line.just {
        Justification::Assumption => {}
        Justification::Axiom { .. } => options.extend([1, 2]),
        Justification::Rule { .. } | Justification::Derived { .. } => options.extend([1, 3]),
        Justification::Pc { .. } => options.push(1),
    }
    let mutation = match *options.choose(rng).expect("non-empty") {
        1 => {
            line.just = Justification::Assumption;
            Mutation::ToAssumption { line: id }
        }
        2 => {
            let Justification::Axiom { schema, .. } = &line.just else { unreachable!() };
            let from = schema.clone();
            let names: Vec<&str> = catalog.schemas().map(|s| s.name()).filter(|n| *n != from).collect();
            let to = names.choose(rng).expect("several schemas").to_string();
            line.just = Justification::Axiom { schema: to.clone(), subst: None };
            Mutation::OtherSchema { line: id, from, to }
        }
        3 => {
            let (from, refs) = match &line.just {
                Justification::Rule { rule, refs, .. } | Justification::Derived { rule, refs } => (rule.clone(), refs.clone()),
                _ => unreachable!(),
            };
            let names: Vec<&str> = PRIMITIVE_RULES.iter().copied().filter(|n| *n != from).collect();
            let to = names.choose(rng).expect("several rules").to_string();
            line.just = Justification::Rule { rule: to.clone(), refs, conjuncts: None, paths: None };
            Mutation::OtherRule { line: id, from, to }
        }
        _ => {
            line.formula = Formula::not(line.formula.clone());
            Mutation::NegateFormula { line: id }
        }
    };
    (out, mutation)
}

#[derive(Debug, Clone, Serialize)]
pub struct MutationTrial {
    pub proof: String,
    pub mutation: Mutation,
    pub detected: bool,
}

/// Mutate `count` randomly chosen corpus proofs once each and re-check them
/// against the registry as it stood when the original was checked.
pub fn mutation_suite(corpus: &Corpus, count: usize, seed: u64) -> Vec<MutationTrial> {
    let snapshots = corpus.registry_snapshots();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let i = rng.gen_range(0..corpus.proofs.len());
            let (mutant, mutation) = mutate(&corpus.proofs[i], &corpus.catalog, &mut rng);
            let report = check_proof(&mutant, &corpus.catalog, &snapshots[i]);
            MutationTrial { proof: corpus.proofs[i].name.clone(), mutation, detected: !report.accepted }
        })
        .collect()
}
