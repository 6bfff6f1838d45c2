//! Classical consequence over the modal-atom abstraction.
//!
//! Variables, metavariables and whole conditionals are opaque atoms; the
//! Boolean structure above them is decided by an exhaustive truth table,
//! evaluated 64 rows at a time.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::Formula;

pub const DEFAULT_ATOM_LIMIT: usize = 24;

/// Result of a PC check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum PcOutcome {
    Entailed,
    /// An atom assignment making every premise true and the conclusion false.
    Countermodel { assignment: Vec<(Formula, bool)> },
}

impl PcOutcome {
    pub fn is_entailed(&self) -> bool {
        matches!(self, PcOutcome::Entailed)
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Atom(usize),
    Not,
    And,
    Or,
    Imp,
    Iff,
}

fn compile(f: &Formula, atoms: &[Formula], ops: &mut Vec<Op>) {
    match f {
        Formula::Var(_) | Formula::Meta(_) | Formula::Cond(..) => {
            let idx = atoms.binary_search(f).expect("atom collected");
            ops.push(Op::Atom(idx));
        }
        Formula::Not(a) => {
            compile(a, atoms, ops);
            ops.push(Op::Not);
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            compile(a, atoms, ops);
            compile(b, atoms, ops);
            ops.push(match f {
                Formula::And(..) => Op::And,
                Formula::Or(..) => Op::Or,
                Formula::Imp(..) => Op::Imp,
                _ => Op::Iff,
            });
        }
    }
}

const LANE_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

fn eval_block(ops: &[Op], block: u64, stack: &mut Vec<u64>) -> u64 {
    stack.clear();
    for op in ops {
        let v = match op {
            Op::Atom(i) => {
                if *i < 6 {
                    LANE_MASKS[*i]
                } else if (block >> (i - 6)) & 1 == 1 {
                    !0
                } else {
                    0
                }
            }
            Op::Not => !stack.pop().unwrap(),
            _ => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                match op {
                    Op::And => a & b,
                    Op::Or => a | b,
                    Op::Imp => !a | b,
                    Op::Iff => !(a ^ b),
                    Op::Atom(_) | Op::Not => unreachable!(),
                }
            }
        };
        stack.push(v);
    }
    stack.pop().unwrap()
}

/// Does the conjunction of `premises` tautologically imply `conclusion`?
pub fn pc_entails(premises: &[&Formula], conclusion: &Formula) -> Result<PcOutcome> {
    pc_entails_with_limit(premises, conclusion, DEFAULT_ATOM_LIMIT)
}

pub fn pc_entails_with_limit(premises: &[&Formula], conclusion: &Formula, limit: usize) -> Result<PcOutcome> {
    let mut atom_set = BTreeSet::new();
    for f in premises.iter().copied().chain([conclusion]) {
        f.collect_atoms(&mut atom_set);
    }
    let atoms: Vec<Formula> = atom_set.into_iter().collect();
    if atoms.len() > limit {
        return Err(Error::AtomLimit { atoms: atoms.len(), limit });
    }
    let programs: Vec<Vec<Op>> = premises
        .iter()
        .map(|p| {
            let mut ops = Vec::new();
            compile(p, &atoms, &mut ops);
            ops
        })
        .collect();
    let mut goal = Vec::new();
    compile(conclusion, &atoms, &mut goal);

    let k = atoms.len();
    let lanes = if k >= 6 { !0u64 } else { (1u64 << (1 << k)) - 1 };
    let blocks = if k > 6 { 1u64 << (k - 6) } else { 1 };
    let mut stack = Vec::with_capacity(16);
    for block in 0..blocks {
        let mut live = lanes;
        for p in &programs {
            live &= eval_block(p, block, &mut stack);
            if live == 0 {
                break;
            }
        }
        if live == 0 {
            continue;
        }
        let bad = live & !eval_block(&goal, block, &mut stack);
        if bad != 0 {
            let row = block * 64 + u64::from(bad.trailing_zeros());
            let assignment = atoms
                .iter()
                .enumerate()
                .map(|(i, a)| (a.clone(), (row >> i) & 1 == 1))
                .collect();
            return Ok(PcOutcome::Countermodel { assignment });
        }
    }
    Ok(PcOutcome::Entailed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Substitution};

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    // Independent oracle: recursive evaluation over every row.
    fn brute(premises: &[Formula], conclusion: &Formula) -> bool {
        let mut atoms = BTreeSet::new();
        for p in premises.iter().chain([conclusion]) {
            atoms.extend(p.modal_atoms());
        }
        let atoms: Vec<Formula> = atoms.into_iter().collect();
        fn ev(f: &Formula, atoms: &[Formula], row: u64) -> bool {
            match f {
                Formula::Not(a) => !ev(a, atoms, row),
                Formula::And(a, b) => ev(a, atoms, row) && ev(b, atoms, row),
                Formula::Or(a, b) => ev(a, atoms, row) || ev(b, atoms, row),
                Formula::Imp(a, b) => !ev(a, atoms, row) || ev(b, atoms, row),
                Formula::Iff(a, b) => ev(a, atoms, row) == ev(b, atoms, row),
                atom => (row >> atoms.iter().position(|x| x == atom).unwrap()) & 1 == 1,
            }
        }
        (0..1u64 << atoms.len()).all(|row| {
            !premises.iter().all(|p| ev(p, &atoms, row)) || ev(conclusion, &atoms, row)
        })
    }

    #[test]
    fn tautology_instance() {
        let schema = f("(A&B)->A");
        let s = Substitution::from([('A', f("p>q")), ('B', f("~(r>s)|t"))]);
        assert!(pc_entails(&[], &schema.instantiate(&s).unwrap()).unwrap().is_entailed());
    }

    #[test]
    fn modus_ponens_over_conditionals() {
        let p1 = f("p>q");
        let p2 = f("(p>q)->(r>s)");
        assert!(pc_entails(&[&p1, &p2], &f("r>s")).unwrap().is_entailed());
    }

    #[test]
    fn distinct_conditionals_are_distinct_atoms() {
        let out = pc_entails(&[&f("p>q")], &f("q>p")).unwrap();
        match out {
            PcOutcome::Countermodel { assignment } => {
                let get = |a: &str| assignment.iter().find(|(x, _)| *x == f(a)).unwrap().1;
                assert!(get("p>q"));
                assert!(!get("q>p"));
            }
            PcOutcome::Entailed => panic!("q>p does not follow"),
        }
    }

    #[test]
    fn atom_limit() {
        let big = (0..30).map(|i| format!("x{i}")).collect::<Vec<_>>().join("|");
        let g = f(&big);
        assert!(matches!(pc_entails(&[], &g), Err(Error::AtomLimit { atoms: 30, limit: 24 })));
        assert!(pc_entails_with_limit(&[], &f("p|~p"), 1).unwrap().is_entailed());
    }

    #[test]
    fn many_atoms_agree_with_oracle() {
        // 8 atoms: crosses the 64-row block boundary.
        let prem = f("(a->b)&(b->c)&(c->d)&(d->e)&(e->g)&(g->h)&(h->k)");
        let goal = f("a->k");
        assert!(pc_entails(&[&prem], &goal).unwrap().is_entailed());
        assert!(brute(std::slice::from_ref(&prem), &goal));
        let wrong = f("k->a");
        assert!(!pc_entails(&[&prem], &wrong).unwrap().is_entailed());
        assert!(!brute(&[prem], &wrong));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb(depth: u32) -> impl Strategy<Value = Formula> {
            let leaf = prop_oneof![
                (0..10u8).prop_map(|i| Formula::var(&format!("v{i}"))),
                (0..3u8).prop_map(|i| Formula::cond(Formula::var(&format!("v{i}")), Formula::var("w"))),
            ];
            leaf.prop_recursive(depth, 24, 2, |inner| {
                prop_oneof![
                    inner.clone().prop_map(Formula::not),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
                    (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
                ]
            })
        }

        proptest! {
            #[test]
            fn agrees_with_recursive_oracle(ps in prop::collection::vec(arb(3), 0..3), c in arb(3)) {
                let refs: Vec<&Formula> = ps.iter().collect();
                prop_assert_eq!(pc_entails(&refs, &c).unwrap().is_entailed(), brute(&ps, &c));
            }
        }
    }
}
