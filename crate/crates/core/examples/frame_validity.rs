//! Truth sets in a model, and validity of formulas and schemas on frames.

use condlogic::corpus::Catalog;
use condlogic::semantics::{
    formula_valid_on_frame, rule_preserved_on_frame, schema_valid_on_frame, truth_set, Model, SelectionFrame,
    WorldSet,
};
use condlogic::parse;

fn main() -> condlogic::Result<()> {
    let g = SelectionFrame::lewis_g();
    let model = Model::new(g.clone())
        .with("p", WorldSet::from_worlds([1, 2]))?
        .with("q", WorldSet::from_worlds([1, 3]))?
        .with("r", WorldSet::from_worlds([1, 3]))?;
    for text in ["~p", "(p|q)>q", "(p>r)&(q>r)->((p|q)>r)"] {
        println!("[{text}] = {}", truth_set(&model, &parse(text)?)?);
    }

    let catalog = Catalog::bundled();
    println!();
    for s in catalog.schemas() {
        let verdict = schema_valid_on_frame(&g, s);
        match verdict.witness() {
            None => println!("{:>5} valid", s.name()),
            Some(w) => println!("{:>5} invalid: {w}", s.name()),
        }
    }

    println!("\np>p on lewis-g: {:?}", formula_valid_on_frame(&g, &parse("p>p")?)?);
    let rcec = rule_preserved_on_frame(&g, &[parse("A<->B")?], &parse("(C>A)<->(C>B)")?);
    println!("RCEC preserved: {}", rcec.holds());
    Ok(())
}
