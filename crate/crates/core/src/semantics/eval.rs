use std::collections::BTreeMap;

use super::{SelectionFrame, WorldSet};
use crate::error::{Error, Result};
use crate::formula::Formula;

/// A frame plus a valuation of propositional variables.
#[derive(Debug, Clone)]
pub struct Model {
    pub frame: SelectionFrame,
    pub valuation: BTreeMap<String, WorldSet>,
}

impl Model {
    pub fn new(frame: SelectionFrame) -> Self {
        Model { frame, valuation: BTreeMap::new() }
    }

    pub fn with(mut self, var: &str, set: WorldSet) -> Result<Self> {
        if !set.is_subset(self.frame.all_worlds()) {
            return Err(Error::Frame(format!("valuation of `{var}` ({set}) is not a set of worlds")));
        }
        self.valuation.insert(var.to_string(), set);
        Ok(self)
    }
}

/// Truth set of a ground formula in a model.
pub fn truth_set(model: &Model, f: &Formula) -> Result<WorldSet> {
    if let Some(c) = f.metavars().into_iter().next() {
        return Err(Error::UnexpectedMetavar(c));
    }
    truth_set_with(&model.frame, f, &mut |leaf| match leaf {
        Formula::Var(v) => {
            model.valuation.get(v).copied().ok_or_else(|| Error::UnboundVariable(v.clone()))
        }
        _ => unreachable!("leaf"),
    })
}

/// Truth set where leaves (variables or metavariables) are valued by `leaf`.
pub fn truth_set_with<F>(frame: &SelectionFrame, f: &Formula, leaf: &mut F) -> Result<WorldSet>
where
    F: FnMut(&Formula) -> Result<WorldSet>,
{
    let all = frame.all_worlds();
    Ok(match f {
        Formula::Var(_) | Formula::Meta(_) => leaf(f)?,
        Formula::Not(a) => truth_set_with(frame, a, leaf)?.complement(frame.worlds()),
        Formula::And(a, b) => truth_set_with(frame, a, leaf)?.inter(truth_set_with(frame, b, leaf)?),
        Formula::Or(a, b) => truth_set_with(frame, a, leaf)?.union(truth_set_with(frame, b, leaf)?),
        Formula::Imp(a, b) => {
            let a = truth_set_with(frame, a, leaf)?;
            let b = truth_set_with(frame, b, leaf)?;
            a.complement(frame.worlds()).union(b)
        }
        Formula::Iff(a, b) => {
            let a = truth_set_with(frame, a, leaf)?;
            let b = truth_set_with(frame, b, leaf)?;
            WorldSet(!(a.0 ^ b.0)).inter(all)
        }
        Formula::Cond(a, b) => {
            let a = truth_set_with(frame, a, leaf)?;
            let b = truth_set_with(frame, b, leaf)?;
            cond_set(frame, a, b)
        }
    })
}

#[inline]
fn cond_set(frame: &SelectionFrame, a: WorldSet, b: WorldSet) -> WorldSet {
    WorldSet::from_worlds((0..frame.worlds()).filter(|w| frame.select(*w, a).is_subset(b)))
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Leaf(usize),
    Not,
    And,
    Or,
    Imp,
    Iff,
    Cond,
}

/// A formula flattened to postfix with numbered leaves, for the inner loops
/// of exhaustive validity checks.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    ops: Vec<Op>,
    leaves: Vec<Formula>,
}

impl CompiledFormula {
    /// Leaves are numbered in the given order; every leaf of `f` must be listed.
    pub fn new(f: &Formula, leaves: &[Formula]) -> Result<Self> {
        let mut ops = Vec::with_capacity(f.size());
        compile(f, leaves, &mut ops)?;
        Ok(CompiledFormula { ops, leaves: leaves.to_vec() })
    }

    pub fn leaves(&self) -> &[Formula] {
        &self.leaves
    }

    pub fn eval(&self, frame: &SelectionFrame, values: &[WorldSet]) -> WorldSet {
        let n = frame.worlds();
        let all = frame.all_worlds();
        let mut stack: Vec<WorldSet> = Vec::with_capacity(8);
        for op in &self.ops {
            let v = match op {
                Op::Leaf(i) => values[*i],
                Op::Not => stack.pop().unwrap().complement(n),
                _ => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    match op {
                        Op::And => a.inter(b),
                        Op::Or => a.union(b),
                        Op::Imp => a.complement(n).union(b),
                        Op::Iff => WorldSet(!(a.0 ^ b.0)).inter(all),
                        Op::Cond => cond_set(frame, a, b),
                        Op::Leaf(_) | Op::Not => unreachable!(),
                    }
                }
            };
            stack.push(v);
        }
        stack.pop().expect("non-empty formula")
    }
}

fn compile(f: &Formula, leaves: &[Formula], ops: &mut Vec<Op>) -> Result<()> {
    match f {
        Formula::Var(v) => {
            let idx = leaves.iter().position(|l| l == f).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            ops.push(Op::Leaf(idx));
        }
        Formula::Meta(c) => {
            let idx = leaves.iter().position(|l| l == f).ok_or(Error::MissingBinding(*c))?;
            ops.push(Op::Leaf(idx));
        }
        Formula::Not(a) => {
            compile(a, leaves, ops)?;
            ops.push(Op::Not);
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) | Formula::Cond(a, b) => {
            compile(a, leaves, ops)?;
            compile(b, leaves, ops)?;
            ops.push(match f {
                Formula::And(..) => Op::And,
                Formula::Or(..) => Op::Or,
                Formula::Imp(..) => Op::Imp,
                Formula::Iff(..) => Op::Iff,
                _ => Op::Cond,
            });
        }
    }
    Ok(())
}
