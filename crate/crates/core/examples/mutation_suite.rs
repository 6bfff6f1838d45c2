//! Mutate single proof lines at random and confirm the kernel rejects each.

use condlogic::corpus::{mutation_suite, Corpus};

fn main() -> condlogic::Result<()> {
    let corpus = Corpus::bundled()?;
    let trials = mutation_suite(&corpus, 200, 42);
    for t in trials.iter().take(8) {
        println!("{:<22} {:<40} detected={}", t.proof, format!("{:?}", t.mutation), t.detected);
    }
    let detected = trials.iter().filter(|t| t.detected).count();
    println!("...\n{detected}/{} mutations detected", trials.len());
    Ok(())
}
