//! The bundled catalog of schemas, rules and systems, the encoded
//! derivations, and a manifest-ordered verifier.
//!
//! A corpus directory holds `schemas.json`, `systems.json`,
//! `frames/lewis-g.json`, `proofs/*.json` and `manifest.json`. The catalog
//! files are also compiled into the crate ([`load_catalog`]).

mod catalog;
mod mutation;
mod verify;

pub use catalog::{load_catalog, Catalog};
pub use mutation::{mutate, mutation_suite, Mutation, MutationTrial};
pub use verify::{
    cited_derivations, default_dir, lewis_g_file, recheck_frozen, verify_corpus, Corpus, Expect, Manifest,
    ManifestEntry, ProofOutcome, StageReport, VerifyReport, VCN_AXIOMS,
};
