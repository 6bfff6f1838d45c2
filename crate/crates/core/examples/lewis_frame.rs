//! Build the four-world frame, check frame conditions, and save it.

use condlogic::semantics::{check_condition, ConditionName, SelectionFrame, Verdict, WorldSet};

fn main() {
    let g = SelectionFrame::lewis_g();
    let a = WorldSet::from_worlds([1, 2]);
    let b = WorldSet::from_worlds([1, 3]);
    println!("g(0, {a}) = {}", g.select(0, a));
    println!("g(0, {}) = {}", a.union(b), g.select(0, a.union(b)));

    for c in ConditionName::ALL {
        match check_condition(&g, c) {
            Verdict::Holds => println!("{c:>9}: holds"),
            Verdict::Fails(w) => println!("{c:>9}: fails at {w}"),
        }
    }

    // Frames can also be written from a closure.
    let strict = SelectionFrame::from_fn(3, |_, x| x).unwrap();
    if let Verdict::Fails(w) = check_condition(&strict, ConditionName::Cent) {
        println!("\nidentity frame violates cent at {w}");
    }

    let file = g.to_file(Some("lewis-g"));
    println!("\n{} selection entries; entry 3: {}", file.selection.len(), serde_json::to_string(&file.selection[3]).unwrap());
}
