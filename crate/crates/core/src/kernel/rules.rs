use std::fmt;

use serde::Serialize;

use crate::formula::{parse, Formula, Path, Substitution};

/// Names of the primitive rules the kernel knows how to check.
pub const PRIMITIVE_RULES: [&str; 7] = ["RCM", "RCE", "RCN", "RCK", "RCEA", "RCEC", "RE"];

/// How a rule's applications are checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum RuleDef {
    /// Fixed premise and conclusion schemas; an application is a joint
    /// instance under one substitution.
    Schematic { premises: Vec<Formula>, conclusion: Formula },
    /// `ψ1∧…∧ψn→ψ / (φ>ψ1)∧…∧(φ>ψn)→(φ>ψ)` for any `n ≥ 0`, with the conjunct
    /// list supplied by the line.
    Rck,
    /// `ψ↔ψ' / φ↔φ[ψ/ψ']`, with the replaced occurrences supplied as paths.
    Re,
}

impl RuleDef {
    fn schematic(premises: &[&str], conclusion: &str) -> Self {
        RuleDef::Schematic {
            premises: premises.iter().map(|p| parse(p).expect("builtin rule")).collect(),
            conclusion: parse(conclusion).expect("builtin rule"),
        }
    }

    /// The built-in definition of a primitive rule.
    pub fn primitive(name: &str) -> Option<Self> {
        Some(match name {
            "RCM" => RuleDef::schematic(&["A->B"], "(C>A)->(C>B)"),
            "RCE" => RuleDef::schematic(&["A->B"], "A>B"),
            "RCN" => RuleDef::schematic(&["B"], "A>B"),
            "RCEA" => RuleDef::schematic(&["A<->B"], "(A>C)<->(B>C)"),
            "RCEC" => RuleDef::schematic(&["A<->B"], "(C>A)<->(C>B)"),
            "RCK" => RuleDef::Rck,
            "RE" => RuleDef::Re,
            _ => return None,
        })
    }

    pub fn arity(&self) -> usize {
        match self {
            RuleDef::Schematic { premises, .. } => premises.len(),
            RuleDef::Rck | RuleDef::Re => 1,
        }
    }
}

impl fmt::Display for RuleDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleDef::Schematic { premises, conclusion } => {
                let ps: Vec<String> = premises.iter().map(|p| p.to_string()).collect();
                write!(f, "{} / {}", ps.join(", "), conclusion)
            }
            RuleDef::Rck => f.write_str("B1&...&Bn->B / (A>B1)&...&(A>Bn)->(A>B)"),
            RuleDef::Re => f.write_str("B<->B' / A<->A[B/B']"),
        }
    }
}

/// The instance of RCK for conjuncts `B1..Bn` (`n` fixed) with antecedent `A`
/// and consequent `C`, as premise and conclusion schemas. Needs `n ≤ 23`.
pub fn rck_instance_schemas(n: usize) -> (Formula, Formula) {
    let letters: Vec<char> = ('D'..='Z').take(n).collect();
    assert_eq!(letters.len(), n, "too many conjuncts");
    let conjuncts: Vec<Formula> = letters.iter().map(|c| Formula::meta(*c)).collect();
    let a = Formula::meta('A');
    let c = Formula::meta('C');
    rck_shape(&a, &conjuncts, &c)
}

fn rck_shape(antecedent: &Formula, conjuncts: &[Formula], consequent: &Formula) -> (Formula, Formula) {
    let head = Formula::cond(antecedent.clone(), consequent.clone());
    match Formula::conjunction(conjuncts.iter().cloned()) {
        None => (consequent.clone(), head),
        Some(fold) => {
            let conds = Formula::conjunction(conjuncts.iter().map(|c| Formula::cond(antecedent.clone(), c.clone())))
                .expect("non-empty");
            (Formula::imp(fold, consequent.clone()), Formula::imp(conds, head))
        }
    }
}

/// Extra data a rule line may carry.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleExtras {
    pub conjuncts: Option<Vec<Formula>>,
    pub paths: Option<Vec<Path>>,
}

/// Check one application of `rule`. Returns the reason on failure.
pub fn check_rule_application(
    rule: &RuleDef,
    premises: &[&Formula],
    conclusion: &Formula,
    extras: &RuleExtras,
) -> Result<(), String> {
    if premises.len() != rule.arity() {
        return Err(format!("expected {} premise(s), got {}", rule.arity(), premises.len()));
    }
    match rule {
        RuleDef::Schematic { premises: pats, conclusion: concl } => {
            if extras.conjuncts.is_some() || extras.paths.is_some() {
                return Err("malformed extras: this rule takes no conjuncts or paths".into());
            }
            let mut subst = Substitution::default();
            for (i, (pat, line)) in pats.iter().zip(premises).enumerate() {
                if !pat.match_into(line, &mut subst) {
                    return Err(format!("premise {} does not match `{pat}`", i + 1));
                }
            }
            if !concl.match_into(conclusion, &mut subst) {
                return Err(format!("conclusion does not match `{concl}` under the premise bindings"));
            }
            Ok(())
        }
        RuleDef::Rck => {
            if extras.paths.is_some() {
                return Err("malformed extras: RCK takes conjuncts, not paths".into());
            }
            let conjuncts = extras
                .conjuncts
                .as_ref()
                .ok_or("malformed extras: RCK needs an explicit conjunct list")?;
            check_rck(conjuncts, premises[0], conclusion)
        }
        RuleDef::Re => {
            if extras.conjuncts.is_some() {
                return Err("malformed extras: RE takes paths, not conjuncts".into());
            }
            let paths = extras.paths.as_ref().ok_or("malformed extras: RE needs a path list")?;
            check_re(paths, premises[0], conclusion)
        }
    }
}

fn check_rck(conjuncts: &[Formula], premise: &Formula, conclusion: &Formula) -> Result<(), String> {
    let consequent = if conjuncts.is_empty() {
        premise
    } else {
        match premise {
            Formula::Imp(fold, psi) if Some(fold.as_ref()) == Formula::conjunction(conjuncts.iter().cloned()).as_ref() => psi,
            Formula::Imp(..) => return Err("fold mismatch: antecedent is not the left fold of the conjuncts".into()),
            _ => return Err("premise is not an implication".into()),
        }
    };
    let head = match conclusion {
        Formula::Cond(..) if conjuncts.is_empty() => conclusion,
        Formula::Imp(_, head) if !conjuncts.is_empty() => head,
        _ => return Err("conclusion has the wrong shape".into()),
    };
    let Formula::Cond(phi, _) = head else {
        return Err("conclusion does not end in a conditional".into());
    };
    let (_, expected) = rck_shape(phi, conjuncts, consequent);
    if &expected != conclusion {
        return Err(format!("conclusion should be `{expected}`"));
    }
    Ok(())
}

fn check_re(paths: &[Path], premise: &Formula, conclusion: &Formula) -> Result<(), String> {
    let Formula::Iff(lhs, rhs) = premise else {
        return Err("premise is not a biconditional".into());
    };
    let Formula::Iff(host, result) = conclusion else {
        return Err("conclusion is not a biconditional".into());
    };
    if paths.is_empty() {
        return Err("malformed extras: empty path list".into());
    }
    for (i, p) in paths.iter().enumerate() {
        for q in &paths[i + 1..] {
            if p.is_prefix_of(q) || q.is_prefix_of(p) {
                return Err(format!("paths {p} and {q} overlap"));
            }
        }
        match host.sub_at(p) {
            Ok(sub) if sub == lhs.as_ref() => {}
            Ok(sub) => return Err(format!("path {p} addresses `{sub}`, not `{lhs}`")),
            Err(e) => return Err(e.to_string()),
        }
    }
    let mut replaced = host.as_ref().clone();
    for p in paths {
        replaced = replaced.replace_at(p, rhs.as_ref().clone()).map_err(|e| e.to_string())?;
    }
    if &replaced != result.as_ref() {
        return Err(format!("replacement gives `{replaced}`"));
    }
    Ok(())
}
