//! Search for the smallest frame meeting the conditions on which CA fails.

use condlogic::corpus::Catalog;
use condlogic::search::{brute_force, search, SearchOutcome, SearchSpec};
use condlogic::semantics::ConditionName;

fn main() -> condlogic::Result<()> {
    let conditions = ConditionName::parse_list("id,mod,cv,cso,cent")?;
    let ca = Catalog::bundled().schema("CA").unwrap().clone();

    for n in 1..=3 {
        let none = brute_force(&conditions, &ca, n)?.is_none();
        println!("brute force, {n} worlds: {}", if none { "no countermodel" } else { "countermodel" });
    }

    let mut spec = SearchSpec::new(conditions, ca, 5);
    spec.seed = Some(7);
    let run = search(&spec)?;
    println!("exhausted sizes {:?} after {} nodes", run.exhausted_sizes, run.nodes);
    if let SearchOutcome::Found(cm) = &run.outcome {
        println!("countermodel with {} worlds, CA fails at {}", cm.frame.world_count(), cm.witness);
        print!("{}", cm.selection_frame());
    }

    spec.budget = 1_000;
    println!("\nwith a budget of 1000: {:?}", search(&spec)?.outcome);
    Ok(())
}
