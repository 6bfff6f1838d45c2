//! Propositional consequence with conditionals treated as atoms.

use condlogic::kernel::{pc_entails, PcOutcome};
use condlogic::{parse, Formula};

fn show(premises: &[&str], conclusion: &str) -> condlogic::Result<()> {
    let ps: Vec<Formula> = premises.iter().map(|p| parse(p)).collect::<Result<_, _>>()?;
    let refs: Vec<&Formula> = ps.iter().collect();
    let c = parse(conclusion)?;
    match pc_entails(&refs, &c)? {
        PcOutcome::Entailed => println!("{premises:?} |- {c}"),
        PcOutcome::Countermodel { assignment } => {
            let shown: Vec<String> = assignment.iter().map(|(a, v)| format!("{a}={}", *v as u8)).collect();
            println!("{premises:?} |/- {c}   ({})", shown.join(", "));
        }
    }
    Ok(())
}

fn main() -> condlogic::Result<()> {
    show(&[], "(p&q)->p")?;
    show(&["p>q", "(p>q)->(r>s)"], "r>s")?;
    show(&["p>q"], "q>p")?;
    show(&["(A|B>A)|(A|B>B)|((A|B>C)<->(A>C)&(B>C))"], "~(A|B>A)&~(A|B>B)->((A|B>C)->(A>C)&(B>C))")?;
    Ok(())
}
