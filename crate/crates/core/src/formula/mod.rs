//! Formulas and axiom schemas of conditional logic.
//!
//! One AST serves both roles: a [`Formula`] may contain metavariable leaves
//! ([`Formula::Meta`]). A *ground* formula has none. A [`Schema`] wraps a
//! formula together with its declared metavariable list.
//!
//! Equality is syntactic identity. `A&B` and `B&A` are different formulas.

mod parser;
mod printer;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parser::parse;

/// A conditional-logic sentence, possibly with metavariable leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Meta(char),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// The conditional `antecedent > consequent`.
    Cond(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Self {
        Formula::Var(name.to_string())
    }

    pub fn meta(name: char) -> Self {
        Formula::Meta(name)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn cond(a: Formula, b: Formula) -> Self {
        Formula::Cond(Box::new(a), Box::new(b))
    }

    /// Left-associated conjunction `((f1 & f2) & ...) & fn`. `None` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
        items.into_iter().reduce(Formula::and)
    }

    pub fn is_ground(&self) -> bool {
        self.metavars().is_empty()
    }

    /// Metavariables occurring in the formula, in sorted order.
    pub fn metavars(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.visit_leaves(&mut |leaf| {
            if let Formula::Meta(c) = leaf {
                out.insert(*c);
            }
        });
        out
    }

    /// Propositional variables occurring in the formula, in sorted order.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_leaves(&mut |leaf| {
            if let Formula::Var(v) = leaf {
                out.insert(v.clone());
            }
        });
        out
    }

    fn visit_leaves<F: FnMut(&Formula)>(&self, f: &mut F) {
        match self {
            Formula::Var(_) | Formula::Meta(_) => f(self),
            Formula::Not(a) => a.visit_leaves(f),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Iff(a, b)
            | Formula::Cond(a, b) => {
                a.visit_leaves(f);
                b.visit_leaves(f);
            }
        }
    }

    /// Binary Boolean connectives and negation. Leaves and conditionals are not.
    pub fn is_boolean(&self) -> bool {
        !matches!(self, Formula::Var(_) | Formula::Meta(_) | Formula::Cond(..))
    }

    /// Maximal subformulas that are not Boolean compounds: propositional
    /// variables, metavariables and whole conditional formulas.
    pub fn modal_atoms(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Formula>) {
        match self {
            Formula::Var(_) | Formula::Meta(_) | Formula::Cond(..) => {
                out.insert(self.clone());
            }
            Formula::Not(a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// The subformula addressed by `path`.
    pub fn sub_at(&self, path: &Path) -> Result<&Formula> {
        let mut cur = self;
        for (depth, step) in path.steps().iter().enumerate() {
            cur = cur
                .child(*step)
                .ok_or_else(|| Error::InvalidPath { path: path.clone(), depth })?;
        }
        Ok(cur)
    }

    fn child(&self, step: Step) -> Option<&Formula> {
        match (self, step) {
            (Formula::Not(a), Step::Only) => Some(a),
            (
                Formula::And(a, b)
                | Formula::Or(a, b)
                | Formula::Imp(a, b)
                | Formula::Iff(a, b)
                | Formula::Cond(a, b),
                s,
            ) => match s {
                Step::Left => Some(a),
                Step::Right => Some(b),
                Step::Only => None,
            },
            _ => None,
        }
    }

    fn child_mut(&mut self, step: Step) -> Option<&mut Formula> {
        match (self, step) {
            (Formula::Not(a), Step::Only) => Some(a),
            (
                Formula::And(a, b)
                | Formula::Or(a, b)
                | Formula::Imp(a, b)
                | Formula::Iff(a, b)
                | Formula::Cond(a, b),
                s,
            ) => match s {
                Step::Left => Some(a),
                Step::Right => Some(b),
                Step::Only => None,
            },
            _ => None,
        }
    }

    /// Replace exactly the occurrence addressed by `path`.
    pub fn replace_at(&self, path: &Path, replacement: Formula) -> Result<Formula> {
        let mut out = self.clone();
        let mut cur = &mut out;
        for (depth, step) in path.steps().iter().enumerate() {
            cur = cur
                .child_mut(*step)
                .ok_or_else(|| Error::InvalidPath { path: path.clone(), depth })?;
        }
        *cur = replacement;
        Ok(out)
    }

    /// Leafwise replacement of metavariables.
    pub fn instantiate(&self, subst: &Substitution) -> Result<Formula> {
        Ok(match self {
            Formula::Var(_) => self.clone(),
            Formula::Meta(c) => subst.get(*c).cloned().ok_or(Error::MissingBinding(*c))?,
            Formula::Not(a) => Formula::not(a.instantiate(subst)?),
            Formula::And(a, b) => Formula::and(a.instantiate(subst)?, b.instantiate(subst)?),
            Formula::Or(a, b) => Formula::or(a.instantiate(subst)?, b.instantiate(subst)?),
            Formula::Imp(a, b) => Formula::imp(a.instantiate(subst)?, b.instantiate(subst)?),
            Formula::Iff(a, b) => Formula::iff(a.instantiate(subst)?, b.instantiate(subst)?),
            Formula::Cond(a, b) => Formula::cond(a.instantiate(subst)?, b.instantiate(subst)?),
        })
    }

    /// Rename metavariables (used to build symmetric variants of proofs).
    pub fn rename_metas(&self, map: &BTreeMap<char, char>) -> Formula {
        let subst = Substitution(
            self.metavars()
                .into_iter()
                .map(|c| (c, Formula::Meta(*map.get(&c).unwrap_or(&c))))
                .collect(),
        );
        self.instantiate(&subst).expect("total by construction")
    }

    /// One-sided matching: extend `subst` so that `self` instantiates to `target`.
    ///
    /// Metavariables of `self` are pattern variables. Metavariables inside
    /// `target` are treated as opaque constants.
    pub fn match_into(&self, target: &Formula, subst: &mut Substitution) -> bool {
        match (self, target) {
            (Formula::Meta(c), _) => match subst.get(*c) {
                Some(bound) => bound == target,
                None => {
                    subst.insert(*c, target.clone());
                    true
                }
            },
            (Formula::Var(a), Formula::Var(b)) => a == b,
            (Formula::Not(a), Formula::Not(b)) => a.match_into(b, subst),
            (Formula::And(a1, a2), Formula::And(b1, b2))
            | (Formula::Or(a1, a2), Formula::Or(b1, b2))
            | (Formula::Imp(a1, a2), Formula::Imp(b1, b2))
            | (Formula::Iff(a1, a2), Formula::Iff(b1, b2))
            | (Formula::Cond(a1, a2), Formula::Cond(b1, b2)) => {
                a1.match_into(b1, subst) && a2.match_into(b2, subst)
            }
            _ => false,
        }
    }

    /// Unique substitution σ with `instantiate(self, σ) == target`, if any.
    pub fn match_formula(&self, target: &Formula) -> Option<Substitution> {
        let mut subst = Substitution::default();
        self.match_into(target, &mut subst).then_some(subst)
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Meta(_) => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Iff(a, b)
            | Formula::Cond(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Render with Unicode connectives (`¬ ∧ ∨ → ↔ >`). Output only.
    pub fn to_unicode(&self) -> String {
        printer::render(self, printer::Style::Unicode)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&printer::render(self, printer::Style::Ascii))
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

/// A named formula template whose metavariables are all declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    name: String,
    body: Formula,
    metavars: Vec<char>,
}

impl Schema {
    /// Declares the metavariables of `body` in sorted order.
    pub fn new(name: impl Into<String>, body: Formula) -> Self {
        let metavars = body.metavars().into_iter().collect();
        Schema { name: name.into(), body, metavars }
    }

    pub fn with_metavars(name: impl Into<String>, body: Formula, metavars: Vec<char>) -> Result<Self> {
        if let Some(c) = body.metavars().into_iter().find(|c| !metavars.contains(c)) {
            return Err(Error::UndeclaredMetavar(c));
        }
        Ok(Schema { name: name.into(), body, metavars })
    }

    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        Ok(Schema::new(name, parse(text)?))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    pub fn metavars(&self) -> &[char] {
        &self.metavars
    }

    pub fn matches(&self, target: &Formula) -> Option<Substitution> {
        self.body.match_formula(target)
    }

    pub fn instantiate(&self, subst: &Substitution) -> Result<Formula> {
        if let Some(c) = self.metavars.iter().find(|c| subst.get(**c).is_none()) {
            return Err(Error::MissingBinding(*c));
        }
        self.body.instantiate(subst)
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.body.fmt(f)
    }
}

/// Finite map from metavariable names to formulas.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution(pub BTreeMap<char, Formula>);

impl Substitution {
    pub fn get(&self, c: char) -> Option<&Formula> {
        self.0.get(&c)
    }

    pub fn insert(&mut self, c: char, f: Formula) {
        self.0.insert(c, f);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parse a textual map such as `{"A": "p|q"}`.
    pub fn from_texts<'a, I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut out = Substitution::default();
        for (k, v) in pairs {
            let mut chars = k.chars();
            let c = match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_uppercase() => c,
                _ => return Err(Error::BadMetavarName(k.to_string())),
            };
            out.insert(c, parse(v)?);
        }
        Ok(out)
    }

    /// True when every binding is a distinct bare metavariable.
    pub fn is_renaming(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.0.values().all(|f| matches!(f, Formula::Meta(c) if seen.insert(*c)))
    }
}

impl<const N: usize> From<[(char, Formula); N]> for Substitution {
    fn from(items: [(char, Formula); N]) -> Self {
        Substitution(items.into_iter().collect())
    }
}

/// Child selector on a path into a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    Left,
    Right,
    Only,
}

/// Address of a subformula occurrence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(pub Vec<Step>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn child(&self, step: Step) -> Path {
        let mut steps = self.0.clone();
        steps.push(step);
        Path(steps)
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl<const N: usize> From<[Step; N]> for Path {
    fn from(steps: [Step; N]) -> Self {
        Path(steps.to_vec())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|s| match s {
                Step::Left => "left",
                Step::Right => "right",
                Step::Only => "only",
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn match_id_single_metavar() {
        let id = f("A>A");
        let s = id.match_formula(&f("(p&q)>(p&q)")).unwrap();
        assert_eq!(s.get('A'), Some(&f("p&q")));
        assert!(id.match_formula(&f("p>q")).is_none());
    }

    #[test]
    fn match_ca_instance() {
        let ca = f("(A>C)&(B>C)->(A|B>C)");
        let target = f("(p>r)&(q>r)->((p|q)>r)");
        let s = ca.match_formula(&target).unwrap();
        assert_eq!(s.get('A'), Some(&f("p")));
        assert_eq!(s.get('B'), Some(&f("q")));
        assert_eq!(s.get('C'), Some(&f("r")));
        assert_eq!(ca.instantiate(&s).unwrap(), target);
    }

    #[test]
    fn target_metavars_are_constants() {
        // Pattern metavariable may bind a target metavariable, but a
        // target metavariable never matches a compound pattern.
        assert!(f("A>A").match_formula(&f("B>B")).is_some());
        assert!(f("~A").match_formula(&f("B")).is_none());
    }

    #[test]
    fn instantiate_examples() {
        let id = Schema::parse("ID", "A>A").unwrap();
        let s = Substitution::from([('A', f("p&q"))]);
        assert_eq!(id.instantiate(&s).unwrap(), f("(p&q)>(p&q)"));

        let cso = Schema::parse("CSO", "(A>B)&(B>A)->((A>C)<->(B>C))").unwrap();
        let s = Substitution::from([('A', f("p")), ('B', f("q")), ('C', f("r"))]);
        assert_eq!(cso.instantiate(&s).unwrap(), f("(p>q)&(q>p)->((p>r)<->(q>r))"));

        let m = Schema::parse("MOD", "(A>~A)->(B>~A)").unwrap();
        let s = Substitution::from([('A', f("p")), ('B', f("q"))]);
        assert_eq!(m.instantiate(&s).unwrap(), f("(p>~p)->(q>~p)"));
    }

    #[test]
    fn instantiate_missing_binding() {
        let id = Schema::parse("ID", "A>A").unwrap();
        assert!(matches!(
            id.instantiate(&Substitution::default()),
            Err(Error::MissingBinding('A'))
        ));
    }

    #[test]
    fn undeclared_metavar_rejected() {
        assert!(Schema::with_metavars("X", f("A>B"), vec!['A']).is_err());
    }

    #[test]
    fn replace_at_examples() {
        use Step::*;
        assert_eq!(f("p>q").replace_at(&[Left].into(), f("q&p")).unwrap(), f("(q&p)>q"));
        assert_eq!(
            f("~(s>(p&q))").replace_at(&[Only, Right].into(), f("q&p")).unwrap(),
            f("~(s>(q&p))")
        );
        assert_eq!(f("p").replace_at(&Path::root(), f("q|r")).unwrap(), f("q|r"));
        assert!(matches!(
            f("p").replace_at(&[Left].into(), f("q")),
            Err(Error::InvalidPath { depth: 0, .. })
        ));
        assert!(f("~p").sub_at(&[Left].into()).is_err());
    }

    #[test]
    fn modal_atoms_examples() {
        let atoms: Vec<String> = f("(p>q)&(q>p)->((p>r)<->(q>r))")
            .modal_atoms()
            .into_iter()
            .map(|a| a.to_string())
            .collect();
        let mut expected = vec!["p>q", "q>p", "p>r", "q>r"];
        expected.sort_by_key(|s| f(s));
        assert_eq!(atoms, expected);
        assert_eq!(f("p>q").modal_atoms().len(), 1);
        let vars: Vec<Formula> = f("~p|q").modal_atoms().into_iter().collect();
        assert_eq!(vars, vec![f("p"), f("q")]);
    }

    #[test]
    fn renaming_detection() {
        let s = Substitution::from([('A', f("B")), ('B', f("A"))]);
        assert!(s.is_renaming());
        let s = Substitution::from([('A', f("B")), ('B', f("B"))]);
        assert!(!s.is_renaming());
        let s = Substitution::from([('A', f("p"))]);
        assert!(!s.is_renaming());
    }
}
