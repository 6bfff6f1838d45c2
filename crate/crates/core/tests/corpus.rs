use condlogic::corpus::{mutation_suite, recheck_frozen, verify_corpus, Corpus};
use condlogic::kernel::Justification;
use condlogic::Formula;

fn bundled() -> Corpus {
    Corpus::bundled().unwrap()
}

#[test]
fn pristine_corpus_verifies() {
    let corpus = bundled();
    let report = verify_corpus(&corpus);
    assert!(report.ok, "{}", report.summary());
    let n = corpus.proofs.len();
    assert_eq!(report.summary(), format!("frames ok, {n}/{n} proofs ok"));
}

#[test]
fn corrupting_a_pc_step_in_cso_d_is_caught() {
    let mut corpus = bundled();
    let idx = corpus.proofs.iter().position(|p| p.name == "vb_cso_d").unwrap();
    let proof = &mut corpus.proofs[idx];
    let line = proof.lines.iter_mut().rev().find(|l| matches!(l.just, Justification::Pc { .. })).unwrap();
    line.formula = Formula::not(line.formula.clone());
    let report = verify_corpus(&corpus);
    assert!(!report.ok);
    assert!(!report.proofs[idx].ok);
    assert!(!report.summary().starts_with(&format!("frames ok, {0}/{0}", corpus.proofs.len())));
}

#[test]
fn removing_ca_from_vc() {
    let mut corpus = bundled();
    corpus.catalog.system_mut("Vc").unwrap().axioms.retain(|a| a != "CA");
    let report = verify_corpus(&corpus);
    assert!(!report.ok);
    let outcome = |file: &str| report.proofs.iter().find(|p| p.file.ends_with(file)).unwrap();
    assert!(outcome("dae_weak_sda.json").ok);
    let mut citing = 0;
    for (proof, out) in corpus.proofs.iter().zip(&report.proofs) {
        let cites_ca = proof.lines.iter().any(|l| matches!(&l.just, Justification::Axiom { schema, .. } if schema == "CA"));
        if proof.system == "Vc" && cites_ca {
            citing += 1;
            assert!(!out.ok, "{} still passes", proof.name);
        }
    }
    assert!(citing > 0);
}

#[test]
fn every_line_carries_its_printed_number() {
    for proof in bundled().proofs {
        for line in &proof.lines {
            assert!(line.printed.is_some(), "{} line {}", proof.name, line.id);
        }
    }
}

#[test]
fn frozen_parallel_recheck_agrees() {
    let corpus = bundled();
    let snapshots = corpus.registry_snapshots();
    let reports = recheck_frozen(&corpus, snapshots.last().unwrap(), 4);
    assert_eq!(reports.len(), corpus.proofs.len());
    assert!(reports.iter().all(|r| r.accepted));
}

#[test]
fn mutations_are_detected() {
    let trials = mutation_suite(&bundled(), 60, 11);
    assert_eq!(trials.len(), 60);
    let missed: Vec<_> = trials.iter().filter(|t| !t.detected).map(|t| format!("{} {:?}", t.proof, t.mutation)).collect();
    assert!(missed.is_empty(), "{missed:?}");
}

#[test]
fn manifest_dependencies_must_be_earlier() {
    let dir = std::env::temp_dir().join(format!("condlogic-corpus-{}", std::process::id()));
    let src = condlogic::corpus::default_dir();
    copy_dir(&src, &dir);
    let manifest = dir.join("manifest.json");
    let mut m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    let proofs = m["proofs"].as_array_mut().unwrap();
    let first = proofs.remove(0);
    proofs.push(first);
    std::fs::write(&manifest, m.to_string()).unwrap();
    let report = verify_corpus(&Corpus::load(&dir).unwrap());
    assert!(!report.ok);
    assert!(report.proofs.iter().any(|p| !p.manifest_errors.is_empty()));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn missing_directory_is_an_error() {
    assert!(Corpus::load(std::path::Path::new("/nonexistent/corpus")).is_err());
}

fn copy_dir(from: &std::path::Path, to: &std::path::Path) {
    std::fs::create_dir_all(to).unwrap();
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            std::fs::copy(entry.path(), target).unwrap();
        }
    }
}
