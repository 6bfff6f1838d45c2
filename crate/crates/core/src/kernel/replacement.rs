use super::proof::{Concludes, Justification, Line, Proof, ProofKind};
use crate::error::{Error, Result};
use crate::formula::{Formula, Path, Step};

/// Lines deriving `host ↔ host'` from a premise line `lhs ↔ rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub lines: Vec<Line>,
    /// Id of the line holding `host ↔ host'` (the premise id at the root).
    pub result: u32,
    pub formula: Formula,
}

struct Builder<'a> {
    rhs: &'a Formula,
    premise: u32,
    next_id: u32,
    lines: Vec<Line>,
}

impl Builder<'_> {
    fn emit(&mut self, formula: Formula, just: Justification) -> u32 {
        let id = self.next_id;
        self.next_id += 1;
        self.lines.push(Line { id, formula, just, printed: None });
        id
    }

    fn rule(&mut self, rule: &str, refs: Vec<u32>, formula: Formula) -> u32 {
        self.emit(formula, Justification::Rule { rule: rule.into(), refs, conjuncts: None, paths: None })
    }

    /// Returns the line proving `node ↔ node'` and `node'`, or `None` when no
    /// path enters `node`.
    fn walk(&mut self, node: &Formula, paths: &[Vec<Step>]) -> Option<(u32, Formula)> {
        if paths.is_empty() {
            return None;
        }
        if paths.iter().any(Vec::is_empty) {
            return Some((self.premise, self.rhs.clone()));
        }
        let below = |step: Step| -> Vec<Vec<Step>> {
            paths.iter().filter(|p| p[0] == step).map(|p| p[1..].to_vec()).collect()
        };
        match node {
            Formula::Not(a) => {
                let (id, a2) = self.walk(a, &below(Step::Only))?;
                let new = Formula::not(a2);
                let line = self.emit(Formula::iff(node.clone(), new.clone()), Justification::Pc { refs: vec![id] });
                Some((line, new))
            }
            Formula::Cond(a, b) => {
                let left = self.walk(a, &below(Step::Left));
                let a2 = left.as_ref().map_or_else(|| a.as_ref().clone(), |(_, f)| f.clone());
                let mut steps = Vec::new();
                if let Some((id, _)) = &left {
                    let f = Formula::iff(node.clone(), Formula::cond(a2.clone(), b.as_ref().clone()));
                    steps.push(self.rule("RCEA", vec![*id], f));
                }
                let right = self.walk(b, &below(Step::Right));
                let b2 = right.as_ref().map_or_else(|| b.as_ref().clone(), |(_, f)| f.clone());
                if let Some((id, _)) = &right {
                    let f = Formula::iff(
                        Formula::cond(a2.clone(), b.as_ref().clone()),
                        Formula::cond(a2.clone(), b2.clone()),
                    );
                    steps.push(self.rule("RCEC", vec![*id], f));
                }
                let new = Formula::cond(a2, b2);
                let line = if steps.len() == 1 {
                    steps[0]
                } else {
                    self.emit(Formula::iff(node.clone(), new.clone()), Justification::Pc { refs: steps })
                };
                Some((line, new))
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                let left = self.walk(a, &below(Step::Left));
                let right = self.walk(b, &below(Step::Right));
                let a2 = left.as_ref().map_or_else(|| a.as_ref().clone(), |(_, f)| f.clone());
                let b2 = right.as_ref().map_or_else(|| b.as_ref().clone(), |(_, f)| f.clone());
                let new = match node {
                    Formula::And(..) => Formula::and(a2, b2),
                    Formula::Or(..) => Formula::or(a2, b2),
                    Formula::Imp(..) => Formula::imp(a2, b2),
                    _ => Formula::iff(a2, b2),
                };
                let refs: Vec<u32> = left.iter().chain(&right).map(|(id, _)| *id).collect();
                let line = self.emit(Formula::iff(node.clone(), new.clone()), Justification::Pc { refs });
                Some((line, new))
            }
            Formula::Var(_) | Formula::Meta(_) => unreachable!("paths validated"),
        }
    }
}

/// Compile one RE step into RCEA, RCEC and PC lines.
///
/// `premise` is the id of the line `lhs ↔ rhs`; new lines are numbered from
/// `first_id`. `available` reports whether a rule can be cited.
pub fn derive_replacement(
    host: &Formula,
    paths: &[Path],
    lhs: &Formula,
    rhs: &Formula,
    premise: u32,
    first_id: u32,
    available: impl Fn(&str) -> bool,
) -> Result<Fragment> {
    if paths.is_empty() {
        return Err(Error::Kernel("replacement needs at least one path".into()));
    }
    for (i, p) in paths.iter().enumerate() {
        let sub = host.sub_at(p)?;
        if sub != lhs {
            return Err(Error::Kernel(format!("path {p} addresses `{sub}`, not `{lhs}`")));
        }
        if paths[i + 1..].iter().any(|q| p.is_prefix_of(q) || q.is_prefix_of(p)) {
            return Err(Error::Kernel(format!("path {p} overlaps another path")));
        }
        let mut node = host;
        for step in p.steps() {
            if let Formula::Cond(a, b) = node {
                let rule = if *step == Step::Left { "RCEA" } else { "RCEC" };
                if !available(rule) {
                    return Err(Error::Kernel(format!("replacement at {p} needs {rule}, which is unavailable")));
                }
                node = if *step == Step::Left { a } else { b };
            } else {
                node = node.sub_at(&Path(vec![*step]))?;
            }
        }
    }
    let mut b = Builder { rhs, premise, next_id: first_id, lines: Vec::new() };
    let rel: Vec<Vec<Step>> = paths.iter().map(|p| p.steps().to_vec()).collect();
    let (result, replaced) = b.walk(host, &rel).expect("at least one path");
    Ok(Fragment { lines: b.lines, result, formula: Formula::iff(host.clone(), replaced) })
}

/// A complete rule proof `lhs ↔ rhs / host ↔ host'` in `system`.
pub fn replacement_proof(
    name: &str,
    system: &str,
    host: &Formula,
    paths: &[Path],
    lhs: &Formula,
    rhs: &Formula,
    available: impl Fn(&str) -> bool,
) -> Result<Proof> {
    let premise = Formula::iff(lhs.clone(), rhs.clone());
    let mut lines = vec![Line { id: 1, formula: premise.clone(), just: Justification::Assumption, printed: None }];
    let frag = derive_replacement(host, paths, lhs, rhs, 1, 2, available)?;
    lines.extend(frag.lines);
    Ok(Proof {
        name: name.into(),
        system: system.into(),
        kind: ProofKind::Rule,
        registers: None,
        template: None,
        premises: vec![premise],
        lines,
        concludes: Concludes { formula: frag.formula },
        provenance: Some("generated".into()),
        notes: Vec::new(),
    })
}
