use std::collections::BTreeMap;

use super::{subsets_in_order, CompiledFormula, SelectionFrame, Verdict, Witness, WorldSet};
use crate::error::{Error, Result};
use crate::formula::{Formula, Schema};

/// Leaves in enumeration order: propositional variables, then metavariables.
fn leaves_of<'a, I: IntoIterator<Item = &'a Formula>>(formulas: I) -> Vec<Formula> {
    let mut vars = std::collections::BTreeSet::new();
    let mut metas = std::collections::BTreeSet::new();
    for f in formulas {
        vars.extend(f.vars());
        metas.extend(f.metavars());
    }
    vars.into_iter()
        .map(Formula::Var)
        .chain(metas.into_iter().map(Formula::Meta))
        .collect()
}

fn leaf_key(leaf: &Formula) -> String {
    match leaf {
        Formula::Var(v) => v.clone(),
        Formula::Meta(c) => c.to_string(),
        _ => unreachable!("leaf"),
    }
}

/// Calls `visit` with every assignment of subsets to `k` leaves; the first
/// leaf varies slowest. Stops early when `visit` returns `Some`.
fn for_each_assignment<T, F>(worlds: usize, k: usize, mut visit: F) -> Option<T>
where
    F: FnMut(&[WorldSet]) -> Option<T>,
{
    let order: Vec<WorldSet> = subsets_in_order(worlds).collect();
    let mut digits = vec![0usize; k];
    let mut values = vec![order[0]; k];
    loop {
        if let Some(t) = visit(&values) {
            return Some(t);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < order.len() {
                values[pos] = order[digits[pos]];
                break;
            }
            digits[pos] = 0;
            values[pos] = order[0];
        }
    }
}

fn witness(world: usize, leaves: &[Formula], values: &[WorldSet]) -> Witness {
    let assignment: BTreeMap<String, WorldSet> =
        leaves.iter().zip(values).map(|(l, v)| (leaf_key(l), *v)).collect();
    Witness { world, assignment }
}

fn first_missing(all: WorldSet, t: WorldSet) -> Option<usize> {
    all.minus(t).worlds().next()
}

/// Truth at every world under every subset assignment to every leaf
/// (variables and metavariables alike).
pub fn valid_on_frame(frame: &SelectionFrame, f: &Formula) -> Verdict {
    let leaves = leaves_of([f]);
    let compiled = CompiledFormula::new(f, &leaves).expect("leaves collected from f");
    let all = frame.all_worlds();
    match for_each_assignment(frame.worlds(), leaves.len(), |values| {
        let t = compiled.eval(frame, values);
        first_missing(all, t).map(|w| witness(w, &leaves, values))
    }) {
        Some(w) => Verdict::Fails(w),
        None => Verdict::Holds,
    }
}

/// Validity of a ground formula: true under every valuation of its variables.
pub fn formula_valid_on_frame(frame: &SelectionFrame, f: &Formula) -> Result<Verdict> {
    if let Some(c) = f.metavars().into_iter().next() {
        return Err(Error::UnexpectedMetavar(c));
    }
    Ok(valid_on_frame(frame, f))
}

/// Validity of a schema: metavariables range over all subsets of worlds.
pub fn schema_valid_on_frame(frame: &SelectionFrame, s: &Schema) -> Verdict {
    valid_on_frame(frame, s.body())
}

/// Subset-level preservation: whenever the premises are true everywhere
/// under an assignment, so is the conclusion.
pub fn rule_preserved_on_frame(frame: &SelectionFrame, premises: &[Formula], conclusion: &Formula) -> Verdict {
    let leaves = leaves_of(premises.iter().chain([conclusion]));
    let compiled_premises: Vec<CompiledFormula> = premises
        .iter()
        .map(|p| CompiledFormula::new(p, &leaves).expect("leaves collected"))
        .collect();
    let compiled_conclusion = CompiledFormula::new(conclusion, &leaves).expect("leaves collected");
    let all = frame.all_worlds();
    match for_each_assignment(frame.worlds(), leaves.len(), |values| {
        if compiled_premises.iter().any(|p| p.eval(frame, values) != all) {
            return None;
        }
        first_missing(all, compiled_conclusion.eval(frame, values)).map(|w| witness(w, &leaves, values))
    }) {
        Some(w) => Verdict::Fails(w),
        None => Verdict::Holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::semantics::{check_condition, truth_set_with, ConditionName};

    fn schema(text: &str) -> Schema {
        Schema::parse("S", text).unwrap()
    }

    fn s(ws: &[usize]) -> WorldSet {
        WorldSet::from_worlds(ws.iter().copied())
    }

    #[test]
    fn id_valid_on_id_frames() {
        let g = SelectionFrame::lewis_g();
        assert!(formula_valid_on_frame(&g, &parse("p>p").unwrap()).unwrap().holds());
        assert!(schema_valid_on_frame(&g, &schema("A>A")).holds());
    }

    #[test]
    fn ca_witness_on_lewis_g() {
        let g = SelectionFrame::lewis_g();
        let v = schema_valid_on_frame(&g, &schema("(A>C)&(B>C)->(A|B>C)"));
        let w = v.witness().unwrap();
        assert_eq!(w.world, 0);
        assert_eq!(w.get("A"), Some(s(&[1, 2])));
        assert_eq!(w.get("B"), Some(s(&[1, 3])));
        assert_eq!(w.get("C"), Some(s(&[1, 3])));

        let f = parse("(p>r)&(q>r)->((p|q)>r)").unwrap();
        let v = formula_valid_on_frame(&g, &f).unwrap();
        let w = v.witness().unwrap();
        assert_eq!((w.world, w.get("p"), w.get("q"), w.get("r")), (0, Some(s(&[1, 2])), Some(s(&[1, 3])), Some(s(&[1, 3]))));
    }

    #[test]
    fn cs_valid_on_lewis_g() {
        let g = SelectionFrame::lewis_g();
        assert!(schema_valid_on_frame(&g, &schema("A&B->(A>B)")).holds());
    }

    #[test]
    fn single_world_material_frame_validates_vcn_axioms() {
        let f = SelectionFrame::material(1).unwrap();
        for text in [
            "A>A",
            "(A>B&C)->(A>B)&(A>C)",
            "(A>B)&(A>C)->(A>B&C)",
            "(A>C)&~(A>~B)->(A&B>C)",
            "(~A>A)->(B>A)",
            "(A>B)&(B>A)->((A>C)<->(B>C))",
            "(A>B)->(A->B)",
            "A&B->(A>B)",
        ] {
            let inst = parse(text).unwrap().instantiate(&[('A', parse("p").unwrap()), ('B', parse("q").unwrap()), ('C', parse("r|p").unwrap())].into()).unwrap();
            assert!(formula_valid_on_frame(&f, &inst).unwrap().holds(), "{text}");
        }
    }

    #[test]
    fn witnesses_reproduce() {
        let g = SelectionFrame::lewis_g();
        let body = parse("(A>C)&(B>C)->(A|B>C)").unwrap();
        let w = valid_on_frame(&g, &body).witness().cloned().unwrap();
        let t = truth_set_with(&g, &body, &mut |leaf| match leaf {
            Formula::Meta(c) => Ok(w.get(&c.to_string()).unwrap()),
            _ => unreachable!(),
        })
        .unwrap();
        assert!(!t.contains(w.world));
    }

    #[test]
    fn formula_validity_rejects_metavars() {
        let g = SelectionFrame::lewis_g();
        assert!(formula_valid_on_frame(&g, &parse("A>A").unwrap()).is_err());
    }

    #[test]
    fn rcec_and_rck_preserved_on_lewis_g() {
        let g = SelectionFrame::lewis_g();
        let rcec = rule_preserved_on_frame(&g, &[parse("A<->B").unwrap()], &parse("(C>A)<->(C>B)").unwrap());
        assert!(rcec.holds());
        let rck2 = rule_preserved_on_frame(&g, &[parse("A&B->C").unwrap()], &parse("(D>A)&(D>B)->(D>C)").unwrap());
        assert!(rck2.holds());
    }

    #[test]
    fn rce_preserved_on_id_frames_only() {
        let prem = [parse("A->B").unwrap()];
        let concl = parse("A>B").unwrap();
        assert!(rule_preserved_on_frame(&SelectionFrame::lewis_g(), &prem, &concl).holds());
        let frame = SelectionFrame::from_fn(2, |_, _| WorldSet::full(2)).unwrap();
        assert!(!check_condition(&frame, ConditionName::Id).holds());
        assert!(!rule_preserved_on_frame(&frame, &prem, &concl).holds());
    }
}
