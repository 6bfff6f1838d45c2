//! Backtracking search for countermodels.
//!
//! The search looks for a frame satisfying a set of frame conditions on
//! which a target schema is invalid. By symmetry of world names, the
//! falsifying world is fixed to 0; the metavariable values at world 0
//! (the *anchor*) are drawn from a schedule. For each anchor, selection
//! entries `g(w, X)` are decided depth-first, smallest `X` first, with
//! conflict-directed backjumping: every frame condition constrains a single
//! world, so a dead end at one world never forces re-enumeration of others.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{Formula, Schema};
use crate::semantics::{
    check_condition, for_each_frame, schema_valid_on_frame, subsets_in_order, ConditionName, FrameFile,
    SelectionFrame, Verdict, Witness, WorldSet,
};

/// Hard cap on frame size for the search.
pub const MAX_SEARCH_WORLDS: usize = 5;
pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub conditions: Vec<ConditionName>,
    pub target: Schema,
    pub max_worlds: usize,
    /// Maximum number of value assignments tried, over all sizes and anchors.
    pub budget: u64,
    /// Shuffles each entry's value order.
    pub seed: Option<u64>,
}

impl SearchSpec {
    pub fn new(conditions: Vec<ConditionName>, target: Schema, max_worlds: usize) -> Self {
        SearchSpec { conditions, target, max_worlds, budget: DEFAULT_BUDGET, seed: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::Search("budget must be positive".into()));
        }
        if self.max_worlds == 0 || self.max_worlds > MAX_SEARCH_WORLDS {
            return Err(Error::Search(format!("max_worlds must be in 1..={MAX_SEARCH_WORLDS}")));
        }
        if self.target.body().vars().into_iter().next().is_some() {
            return Err(Error::Search("the target must be a schema without propositional variables".into()));
        }
        Ok(())
    }

    fn has(&self, c: ConditionName) -> bool {
        self.conditions.contains(&c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Countermodel {
    pub frame: FrameFile,
    pub witness: Witness,
}

impl Countermodel {
    pub fn selection_frame(&self) -> SelectionFrame {
        self.frame.clone().into_frame().expect("search frames are well formed")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found(Countermodel),
    Exhausted,
    BudgetExceeded { nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchRun {
    #[serde(flatten)]
    pub outcome: SearchOutcome,
    /// Value assignments tried.
    pub nodes: u64,
    /// Sizes fully refuted before the outcome.
    pub exhausted_sizes: Vec<usize>,
}

/// `Ok` when `frame` satisfies every condition and falsifies `target`;
/// otherwise the reasons.
pub fn verify_countermodel(
    frame: &SelectionFrame,
    conditions: &[ConditionName],
    target: &Schema,
) -> Result<Witness, Vec<String>> {
    let mut reasons = Vec::new();
    for c in conditions {
        if let Verdict::Fails(w) = check_condition(frame, *c) {
            reasons.push(format!("condition {c} fails at {w}"));
        }
    }
    let verdict = schema_valid_on_frame(frame, target);
    if verdict.holds() {
        reasons.push(format!("target {} is valid on the frame", target.name()));
    }
    match verdict {
        Verdict::Fails(w) if reasons.is_empty() => Ok(w),
        _ => Err(reasons),
    }
}

pub fn find_countermodel(spec: &SearchSpec) -> Result<SearchOutcome> {
    Ok(search(spec)?.outcome)
}

/// Search sizes `1..=max_worlds` in turn.
pub fn search(spec: &SearchSpec) -> Result<SearchRun> {
    spec.validate()?;
    let mut nodes = 0u64;
    let mut exhausted_sizes = Vec::new();
    for n in 1..=spec.max_worlds {
        let mut size = SizeSearch::new(spec, n);
        match size.run(&mut nodes)? {
            Some(cm) => return Ok(SearchRun { outcome: SearchOutcome::Found(cm), nodes, exhausted_sizes }),
            None if nodes >= spec.budget && size.interrupted => {
                return Ok(SearchRun { outcome: SearchOutcome::BudgetExceeded { nodes }, nodes, exhausted_sizes })
            }
            None => exhausted_sizes.push(n),
        }
    }
    Ok(SearchRun { outcome: SearchOutcome::Exhausted, nodes, exhausted_sizes })
}

/// Entries that `c`'s instance at `(x, y)` reads.
fn refs(c: ConditionName, n: usize, x: WorldSet, y: WorldSet) -> ([WorldSet; 3], usize) {
    match c {
        ConditionName::Id | ConditionName::Cent => ([x, x, x], 1),
        ConditionName::Mod | ConditionName::Cso => ([x, y, y], 2),
        ConditionName::ModPrime => ([x.complement(n), y, y], 2),
        ConditionName::Cv => ([x, x.inter(y), x], 2),
        ConditionName::Ca | ConditionName::Sda => ([x, y, x.union(y)], 3),
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq)]
struct Bits([u64; 3]);

impl Bits {
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn or(&mut self, o: Bits) {
        for k in 0..3 {
            self.0[k] |= o.0[k];
        }
    }
    fn max(&self) -> Option<usize> {
        (0..3).rev().find(|k| self.0[*k] != 0).map(|k| k * 64 + 63 - self.0[k].leading_zeros() as usize)
    }
}

struct SizeSearch<'a> {
    spec: &'a SearchSpec,
    n: usize,
    frame: SelectionFrame,
    decided: Vec<bool>,
    /// Variable index of each table entry; `None` for forced entries.
    var_of: Vec<Option<usize>>,
    /// Table entry of each variable, in search order.
    entries: Vec<usize>,
    domains: Vec<Vec<WorldSet>>,
    metas: Vec<char>,
    interrupted: bool,
}

impl<'a> SizeSearch<'a> {
    fn new(spec: &'a SearchSpec, n: usize) -> Self {
        let s = 1usize << n;
        let full = WorldSet::full(n);
        let mut frame = SelectionFrame::from_fn(n, |_, _| WorldSet::EMPTY).expect("size checked");
        let mut decided = vec![false; n * s];
        let mut var_of = vec![None; n * s];
        let id = spec.has(ConditionName::Id);
        let cent = spec.has(ConditionName::Cent);
        let mut keyed = Vec::new();
        for w in 0..n {
            for x in 0..s {
                let xs = WorldSet(x as u32);
                if cent && xs.contains(w) {
                    frame.set(w, xs, WorldSet::singleton(w));
                    decided[(w << n) | x] = true;
                } else {
                    keyed.push(((xs.len(), x, w), (w << n) | x));
                }
            }
        }
        keyed.sort();
        let mut rng = spec.seed.map(ChaCha8Rng::seed_from_u64);
        let mut entries = Vec::with_capacity(keyed.len());
        let mut domains = Vec::with_capacity(keyed.len());
        for (v, (_, e)) in keyed.into_iter().enumerate() {
            var_of[e] = Some(v);
            entries.push(e);
            let bound = if id { WorldSet((e & (s - 1)) as u32) } else { full };
            let mut dom: Vec<WorldSet> = (0..=bound.0).filter(|v| v & !bound.0 == 0).map(WorldSet).collect();
            if let Some(r) = rng.as_mut() {
                dom.shuffle(r);
            }
            domains.push(dom);
        }
        let metas = spec.target.metavars().to_vec();
        SizeSearch { spec, n, frame, decided, var_of, entries, domains, metas, interrupted: false }
    }

    fn entry_set(&self, e: usize) -> (usize, WorldSet) {
        (e >> self.n, WorldSet((e & ((1 << self.n) - 1)) as u32))
    }

    fn reason_of(&self, w: usize, sets: &[WorldSet]) -> Bits {
        let mut b = Bits::default();
        for x in sets {
            if let Some(v) = self.var_of[(w << self.n) | x.index()] {
                b.set(v);
            }
        }
        b
    }

    /// A violated condition instance involving the just-decided entry.
    fn condition_conflict(&self, e: usize) -> Option<Bits> {
        let (w, x0) = self.entry_set(e);
        let s = 1u32 << self.n;
        for &c in &self.spec.conditions {
            let ys = if c.is_binary() { s } else { 1 };
            for x in 0..s {
                for y in 0..ys {
                    let (r, k) = refs(c, self.n, WorldSet(x), WorldSet(y));
                    let r = &r[..k];
                    if !r.contains(&x0) || !r.iter().all(|z| self.decided[(w << self.n) | z.index()]) {
                        continue;
                    }
                    if !c.instance_holds(&self.frame, w, WorldSet(x), WorldSet(y)) {
                        return Some(self.reason_of(w, r));
                    }
                }
            }
        }
        None
    }

    /// Lower and upper bounds on the truth set of `f`, recording decided
    /// entries read into `reason`.
    fn bounds(&self, f: &Formula, anchor: &BTreeMap<char, WorldSet>, reason: &mut Bits) -> (WorldSet, WorldSet) {
        let n = self.n;
        match f {
            Formula::Meta(c) => {
                let v = anchor[c];
                (v, v)
            }
            Formula::Var(_) => unreachable!("validated"),
            Formula::Not(a) => {
                let (lo, hi) = self.bounds(a, anchor, reason);
                (hi.complement(n), lo.complement(n))
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                let (alo, ahi) = self.bounds(a, anchor, reason);
                let (blo, bhi) = self.bounds(b, anchor, reason);
                match f {
                    Formula::And(..) => (alo.inter(blo), ahi.inter(bhi)),
                    Formula::Or(..) => (alo.union(blo), ahi.union(bhi)),
                    Formula::Imp(..) => (ahi.complement(n).union(blo), alo.complement(n).union(bhi)),
                    _ => {
                        let both = |x: WorldSet, y: WorldSet| x.inter(y);
                        let lo = both(alo, blo).union(both(ahi.complement(n), bhi.complement(n)));
                        let hi = both(ahi, bhi).union(both(alo.complement(n), blo.complement(n)));
                        (lo, hi)
                    }
                }
            }
            Formula::Cond(a, b) => {
                let (alo, ahi) = self.bounds(a, anchor, reason);
                let (blo, bhi) = self.bounds(b, anchor, reason);
                if alo != ahi {
                    return (WorldSet::EMPTY, WorldSet::full(n));
                }
                let mut lo = WorldSet::EMPTY;
                let mut hi = WorldSet::EMPTY;
                for u in 0..n {
                    let e = (u << n) | alo.index();
                    if self.decided[e] {
                        if let Some(v) = self.var_of[e] {
                            reason.set(v);
                        }
                        let g = self.frame.select(u, alo);
                        if g.is_subset(blo) {
                            lo = lo.union(WorldSet::singleton(u));
                        }
                        if g.is_subset(bhi) {
                            hi = hi.union(WorldSet::singleton(u));
                        }
                    } else {
                        let v = self.var_of[e].expect("undecided entries are variables");
                        let most = self.domains[v].iter().fold(WorldSet::EMPTY, |m, d| m.union(*d));
                        if most.is_subset(blo) {
                            lo = lo.union(WorldSet::singleton(u));
                        }
                        if self.domains[v].iter().any(|d| d.is_subset(bhi)) {
                            hi = hi.union(WorldSet::singleton(u));
                        }
                    }
                }
                (lo, hi)
            }
        }
    }

    /// `Some(reason)` when the target can no longer fail at world 0.
    fn target_conflict(&self, anchor: &BTreeMap<char, WorldSet>) -> Option<Bits> {
        let mut reason = Bits::default();
        let (lo, _) = self.bounds(self.spec.target.body(), anchor, &mut reason);
        lo.contains(0).then_some(reason)
    }

    fn schedule(&self) -> Vec<BTreeMap<char, WorldSet>> {
        let order: Vec<WorldSet> = subsets_in_order(self.n).collect();
        let k = self.metas.len();
        let total = order.len().pow(k as u32);
        let mut out: Vec<(usize, usize, BTreeMap<char, WorldSet>)> = Vec::new();
        for idx in 0..total {
            let mut rest = idx;
            let mut vals = vec![WorldSet::EMPTY; k];
            for slot in (0..k).rev() {
                vals[slot] = order[rest % order.len()];
                rest /= order.len();
            }
            let anchor: BTreeMap<char, WorldSet> = self.metas.iter().copied().zip(vals.iter().copied()).collect();
            if self.target_conflict(&anchor).is_none() {
                let support = vals.iter().map(|v| v.len()).sum();
                out.push((support, idx, anchor));
            }
        }
        out.sort_by_key(|(support, idx, _)| (*support, *idx));
        out.into_iter().map(|(_, _, a)| a).collect()
    }

    fn run(&mut self, nodes: &mut u64) -> Result<Option<Countermodel>> {
        for anchor in self.schedule() {
            if let Some(cm) = self.run_anchor(&anchor, nodes)? {
                return Ok(Some(cm));
            }
            if self.interrupted {
                return Ok(None);
            }
        }
        Ok(None)
    }

    fn assign(&mut self, v: usize, value: Option<WorldSet>) {
        let e = self.entries[v];
        let (w, x) = self.entry_set(e);
        self.frame.set(w, x, value.unwrap_or(WorldSet::EMPTY));
        self.decided[e] = value.is_some();
    }

    fn run_anchor(&mut self, anchor: &BTreeMap<char, WorldSet>, nodes: &mut u64) -> Result<Option<Countermodel>> {
        let m = self.entries.len();
        let mut pos = vec![0usize; m];
        let mut conflicts = vec![Bits::default(); m];
        let mut k = 0usize;
        loop {
            if k == m {
                return self.finish(anchor).map(Some);
            }
            if pos[k] < self.domains[k].len() {
                if *nodes >= self.spec.budget {
                    self.interrupted = true;
                    for v in 0..k {
                        self.assign(v, None);
                    }
                    return Ok(None);
                }
                *nodes += 1;
                let value = self.domains[k][pos[k]];
                pos[k] += 1;
                self.assign(k, Some(value));
                let e = self.entries[k];
                let clash = self.condition_conflict(e).or_else(|| self.target_conflict(anchor));
                match clash {
                    Some(mut reason) => {
                        reason.clear(k);
                        conflicts[k].or(reason);
                        self.assign(k, None);
                    }
                    None => {
                        k += 1;
                        if k < m {
                            pos[k] = 0;
                            conflicts[k] = Bits::default();
                        }
                    }
                }
            } else {
                let conflict = conflicts[k];
                let Some(j) = conflict.max() else {
                    for v in 0..k {
                        self.assign(v, None);
                    }
                    return Ok(None);
                };
                let mut rest = conflict;
                rest.clear(j);
                conflicts[j].or(rest);
                for v in j..=k {
                    self.assign(v, None);
                }
                k = j;
            }
        }
    }

    fn finish(&mut self, anchor: &BTreeMap<char, WorldSet>) -> Result<Countermodel> {
        let frame = self.frame.clone();
        for v in 0..self.entries.len() {
            self.assign(v, None);
        }
        let witness = Witness {
            world: 0,
            assignment: anchor.iter().map(|(c, v)| (c.to_string(), *v)).collect(),
        };
        let body = self.spec.target.body();
        let truth = crate::semantics::truth_set_with(&frame, body, &mut |leaf| match leaf {
            Formula::Meta(c) => Ok(anchor[c]),
            _ => Err(Error::Search("unexpected leaf".into())),
        })?;
        if truth.contains(0) {
            return Err(Error::Search("internal error: anchor is not falsified".into()));
        }
        verify_countermodel(&frame, &self.spec.conditions, &self.spec.target)
            .map_err(|r| Error::Search(format!("internal error: unverified countermodel: {}", r.join("; "))))?;
        Ok(Countermodel { frame: frame.to_file(None), witness })
    }
}

/// Unpruned oracle: every frame of size `n` (restricted by id and cent when
/// those conditions are requested), first countermodel in enumeration order.
/// Refuses spaces of more than 2^26 frames.
pub fn brute_force(conditions: &[ConditionName], target: &Schema, n: usize) -> Result<Option<SelectionFrame>> {
    let id = conditions.contains(&ConditionName::Id);
    let cent = conditions.contains(&ConditionName::Cent);
    let s = 1usize << n;
    let mut free: Vec<(usize, Vec<WorldSet>)> = Vec::new();
    let mut base = SelectionFrame::from_fn(n, |_, _| WorldSet::EMPTY)?;
    let mut log_space = 0u32;
    for w in 0..n {
        for x in 0..s {
            let xs = WorldSet(x as u32);
            if cent && xs.contains(w) {
                base.set(w, xs, WorldSet::singleton(w));
                continue;
            }
            let bound = if id { xs } else { WorldSet::full(n) };
            log_space += bound.len() as u32;
            free.push(((w << n) | x, (0..=bound.0).filter(|v| v & !bound.0 == 0).map(WorldSet).collect()));
        }
    }
    if log_space > 26 {
        if !id && !cent && n <= 2 {
            let mut found = None;
            for_each_frame(n, |fr| {
                if found.is_none() && verify_countermodel(fr, conditions, target).is_ok() {
                    found = Some(fr.clone());
                }
            });
            return Ok(found);
        }
        return Err(Error::Search(format!("search space of 2^{log_space} frames is too large for brute force")));
    }
    let mut digits = vec![0usize; free.len()];
    let mut frame = base;
    for (e, dom) in &free {
        frame.set(e >> n, WorldSet((e & (s - 1)) as u32), dom[0]);
    }
    loop {
        if verify_countermodel(&frame, conditions, target).is_ok() {
            return Ok(Some(frame));
        }
        let mut i = 0;
        loop {
            if i == free.len() {
                return Ok(None);
            }
            let (e, dom) = &free[i];
            digits[i] += 1;
            let (w, x) = (e >> n, WorldSet((e & (s - 1)) as u32));
            if digits[i] < dom.len() {
                frame.set(w, x, dom[digits[i]]);
                break;
            }
            digits[i] = 0;
            frame.set(w, x, dom[0]);
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ca() -> Schema {
        Schema::parse("CA", "(A>C)&(B>C)->(A|B>C)").unwrap()
    }

    fn prop1() -> Vec<ConditionName> {
        ConditionName::parse_list("id,mod,cv,cso,cent").unwrap()
    }

    #[test]
    fn one_world_is_exhausted() {
        let spec = SearchSpec::new(prop1(), ca(), 1);
        assert_eq!(find_countermodel(&spec).unwrap(), SearchOutcome::Exhausted);
    }

    #[test]
    fn verify_lewis_g() {
        let g = SelectionFrame::lewis_g();
        assert!(verify_countermodel(&g, &prop1(), &ca()).is_ok());
        let mut with_ca = prop1();
        with_ca.push(ConditionName::Ca);
        let reasons = verify_countermodel(&g, &with_ca, &ca()).unwrap_err();
        assert!(reasons[0].starts_with("condition ca fails"), "{reasons:?}");
        let m = SelectionFrame::material(2).unwrap();
        let reasons = verify_countermodel(&m, &ConditionName::parse_list("id,cent").unwrap(), &ca()).unwrap_err();
        assert_eq!(reasons, ["target CA is valid on the frame"]);
    }

    #[test]
    fn spec_validation() {
        let mut spec = SearchSpec::new(prop1(), ca(), 6);
        assert!(spec.validate().is_err());
        spec.max_worlds = 2;
        spec.budget = 0;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn size_four_countermodel() {
        let mut spec = SearchSpec::new(prop1(), ca(), 4);
        spec.seed = Some(7);
        let run = search(&spec).unwrap();
        let SearchOutcome::Found(cm) = &run.outcome else { panic!("{run:?}") };
        assert_eq!(run.exhausted_sizes, [1, 2, 3]);
        assert_eq!(cm.frame.world_count(), 4);
        assert!(verify_countermodel(&cm.selection_frame(), &prop1(), &ca()).is_ok());
    }

    #[test]
    fn budget_of_one() {
        let mut spec = SearchSpec::new(prop1(), ca(), 4);
        spec.budget = 1;
        assert_eq!(find_countermodel(&spec).unwrap(), SearchOutcome::BudgetExceeded { nodes: 1 });
    }

    #[test]
    fn bits() {
        let mut b = Bits::default();
        assert_eq!(b.max(), None);
        b.set(3);
        b.set(130);
        assert_eq!(b.max(), Some(130));
        b.clear(130);
        assert_eq!(b.max(), Some(3));
    }
}
