//! Parse formulas and schemas, print them back, and look inside.

use condlogic::formula::Formula;
use condlogic::{parse, Path, Schema, Step, Substitution};

fn main() -> condlogic::Result<()> {
    for text in ["p & q > r", "((p|q)>r)", "~(s>(p&q))", "A>B -> (A>B|C)", "(p>q)>r"] {
        let f = parse(text)?;
        println!("{text:<18} => {f:<16} {}", f.to_unicode());
    }

    let cv = Schema::parse("CV", "(A>C)&~(A>~B)->(A&B>C)")?;
    println!("\n{} declares {:?}", cv.name(), cv.metavars());

    let subst = Substitution::from_texts([("A", "p|q"), ("B", "r"), ("C", "s>t")])?;
    let inst = cv.instantiate(&subst)?;
    println!("instance: {inst}");
    println!("matches back: {}", cv.matches(&inst).is_some());
    println!("modal atoms: {:?}", inst.modal_atoms().iter().map(Formula::to_string).collect::<Vec<_>>());

    let host = parse("~(s>(p&q))")?;
    let at = Path(vec![Step::Only, Step::Right]);
    println!("\n{host} at {at}: {}", host.sub_at(&at)?);
    println!("replaced: {}", host.replace_at(&at, parse("q&p")?)?);

    match parse("p > (q") {
        Ok(_) => unreachable!(),
        Err(e) => println!("\nbad input: {e}"),
    }
    Ok(())
}
