//! Compare frame conditions with their schemas over every small frame.

use condlogic::corpus::Catalog;
use condlogic::semantics::{
    check_condition, correspondence_check, correspondence_check_filtered, ConditionName, CorrespondenceMode,
};

fn main() -> condlogic::Result<()> {
    let catalog = Catalog::bundled();
    let pairs = [
        (ConditionName::Id, "ID"),
        (ConditionName::Cv, "CV"),
        (ConditionName::Cso, "CSO"),
        (ConditionName::Ca, "CA"),
        (ConditionName::Sda, "SDA"),
        (ConditionName::Mod, "MOD"),
    ];
    for (c, name) in pairs {
        let s = catalog.schema(name).unwrap();
        let full = correspondence_check(2, c, s, CorrespondenceMode::Exhaustive)?;
        let sampled = correspondence_check(3, c, s, CorrespondenceMode::Sampled { count: 300, seed: 1 })?;
        println!(
            "{c:>4} ~ {name:<4} size 2: {:>5} of {} disagree; size 3 sample: {} of {}",
            full.discrepancy_count, full.frames_checked, sampled.discrepancy_count, sampled.frames_checked
        );
    }

    // (mod) and MOD come apart on frames that select worlds outside the antecedent.
    let s = catalog.schema("MOD").unwrap();
    let r = correspondence_check_filtered(2, ConditionName::Mod, s, CorrespondenceMode::Exhaustive, |fr| {
        check_condition(fr, ConditionName::Id).holds()
    })?;
    println!("\nmod ~ MOD on id frames: {} of {} disagree", r.discrepancy_count, r.frames_checked);
    if let Some(d) = correspondence_check(2, ConditionName::Mod, s, CorrespondenceMode::Exhaustive)?.discrepancies.first() {
        println!("first disagreement: {}", serde_json::to_string(&d.frame)?);
    }
    Ok(())
}
