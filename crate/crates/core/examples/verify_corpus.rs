//! Verify the bundled corpus: frame checks, axiom checks, then every proof.
//!
//! Pass a directory to verify another corpus.

use condlogic::corpus::{default_dir, verify_corpus, Corpus};

fn main() -> condlogic::Result<()> {
    let dir = std::env::args().nth(1).map(Into::into).unwrap_or_else(default_dir);
    let corpus = Corpus::load(&dir)?;
    let report = verify_corpus(&corpus);
    for (check, ok) in &report.frames.checks {
        println!("{} {check}", if *ok { "ok  " } else { "FAIL" });
    }
    for p in &report.proofs {
        let meta = if p.report.meta_steps.is_empty() { String::new() } else { format!("  [{}]", p.report.meta_steps.join("; ")) };
        println!("{} {:<32} {:>3} lines{meta}", if p.ok { "ok  " } else { "FAIL" }, p.file, p.report.lines.len());
    }
    println!("{}", report.summary());

    let registry = corpus.registry_snapshots().pop().unwrap();
    println!("registry: {} rules, {} theorems", registry.rules().count(), registry.theorems().count());
    Ok(())
}
