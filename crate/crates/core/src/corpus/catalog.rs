use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::formula::{parse, Formula, Schema};
use crate::kernel::{AxiomSystem, RuleDef};

const SCHEMAS_JSON: &str = include_str!("../../corpus/schemas.json");
const SYSTEMS_JSON: &str = include_str!("../../corpus/systems.json");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemaEntry {
    name: String,
    formula: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleEntry {
    name: String,
    #[serde(default)]
    premises: Vec<String>,
    #[serde(default)]
    conclusion: Option<String>,
    #[serde(default)]
    shape: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemasFile {
    schemas: Vec<SchemaEntry>,
    rules: Vec<RuleEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemsFile {
    systems: Vec<AxiomSystem>,
}

/// Named schemas, primitive rules and axiom systems.
#[derive(Debug, Clone)]
pub struct Catalog {
    schemas: BTreeMap<String, Schema>,
    rules: BTreeMap<String, RuleDef>,
    systems: BTreeMap<String, AxiomSystem>,
}

fn line_of(text: &str, needle: &str) -> usize {
    text.find(needle).map_or(0, |at| text[..at].lines().count().max(1))
}

fn located(file: &str, text: &str, needle: &str, msg: String) -> Error {
    Error::File { file: format!("{file}:{}", line_of(text, needle)).into(), msg }
}

fn parse_at(file: &str, text: &str, formula: &str) -> Result<Formula> {
    parse(formula).map_err(|e| located(file, text, formula, e.to_string()))
}

impl Catalog {
    /// The catalog bundled with the crate.
    pub fn bundled() -> Self {
        Catalog::from_json(SCHEMAS_JSON, SYSTEMS_JSON).expect("bundled catalog is well formed")
    }

    /// Load `schemas.json` and `systems.json` from a corpus directory.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| {
            let p = dir.join(name);
            std::fs::read_to_string(&p).map_err(|e| Error::File { file: p, msg: e.to_string() })
        };
        Catalog::from_json(&read("schemas.json")?, &read("systems.json")?)
    }

    pub fn from_json(schemas_text: &str, systems_text: &str) -> Result<Self> {
        let sf: SchemasFile = serde_json::from_str(schemas_text)
            .map_err(|e| Error::File { file: format!("schemas.json:{}", e.line()).into(), msg: e.to_string() })?;
        let yf: SystemsFile = serde_json::from_str(systems_text)
            .map_err(|e| Error::File { file: format!("systems.json:{}", e.line()).into(), msg: e.to_string() })?;

        let mut schemas = BTreeMap::new();
        for s in sf.schemas {
            let body = parse_at("schemas.json", schemas_text, &s.formula)?;
            let reprinted = body.to_string();
            if parse(&reprinted).ok().as_ref() != Some(&body) {
                return Err(located("schemas.json", schemas_text, &s.formula, format!("{} does not re-print stably", s.name)));
            }
            if schemas.insert(s.name.clone(), Schema::new(s.name.clone(), body)).is_some() {
                return Err(located("schemas.json", schemas_text, &s.name, format!("duplicate schema {}", s.name)));
            }
        }

        let mut rules = BTreeMap::new();
        for r in sf.rules {
            let builtin = RuleDef::primitive(&r.name).ok_or_else(|| {
                located("schemas.json", schemas_text, &r.name, format!("the kernel has no rule {}", r.name))
            })?;
            let declared = match (r.shape.as_deref(), &r.conclusion) {
                (Some("rck"), None) if r.premises.is_empty() => RuleDef::Rck,
                (Some("re"), None) if r.premises.is_empty() => RuleDef::Re,
                (None, Some(c)) => RuleDef::Schematic {
                    premises: r
                        .premises
                        .iter()
                        .map(|p| parse_at("schemas.json", schemas_text, p))
                        .collect::<Result<_>>()?,
                    conclusion: parse_at("schemas.json", schemas_text, c)?,
                },
                _ => return Err(located("schemas.json", schemas_text, &r.name, format!("malformed rule {}", r.name))),
            };
            if declared != builtin {
                return Err(located(
                    "schemas.json",
                    schemas_text,
                    &r.name,
                    format!("rule {} is declared as `{declared}`, the kernel checks `{builtin}`", r.name),
                ));
            }
            rules.insert(r.name, builtin);
        }

        let mut systems = BTreeMap::new();
        for s in yf.systems {
            let at = |msg: String| located("systems.json", systems_text, &format!("\"{}\"", s.name), msg);
            if let Some(a) = s.axioms.iter().find(|a| !schemas.contains_key(*a)) {
                return Err(at(format!("system {} cites unknown schema {a}", s.name)));
            }
            if let Some(r) = s.rules.iter().find(|r| !rules.contains_key(*r)) {
                return Err(at(format!("system {} cites unknown rule {r}", s.name)));
            }
            if systems.contains_key(&s.name) {
                return Err(at(format!("duplicate system {}", s.name)));
            }
            systems.insert(s.name.clone(), s);
        }
        for s in systems.values() {
            if let Some(e) = s.extends.iter().find(|e| !systems.contains_key(*e)) {
                return Err(located(
                    "systems.json",
                    systems_text,
                    &format!("\"{}\"", s.name),
                    format!("system {} extends unknown system {e}", s.name),
                ));
            }
        }
        Ok(Catalog { schemas, rules, systems })
    }

    pub fn schema(&self, name: &str) -> Option<&Schema> {
        self.schemas.get(name)
    }

    pub fn rule(&self, name: &str) -> Option<&RuleDef> {
        self.rules.get(name)
    }

    pub fn system(&self, name: &str) -> Option<&AxiomSystem> {
        self.systems.get(name)
    }

    pub fn system_mut(&mut self, name: &str) -> Option<&mut AxiomSystem> {
        self.systems.get_mut(name)
    }

    pub fn schemas(&self) -> impl Iterator<Item = &Schema> {
        self.schemas.values()
    }

    pub fn rules(&self) -> impl Iterator<Item = (&str, &RuleDef)> {
        self.rules.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn systems(&self) -> impl Iterator<Item = &AxiomSystem> {
        self.systems.values()
    }

    /// `system` followed by every system it transitively extends.
    pub fn lineage<'a>(&'a self, system: &'a str) -> Vec<&'a str> {
        let mut out: Vec<&str> = vec![system];
        let mut i = 0;
        while i < out.len() {
            if let Some(s) = self.systems.get(out[i]) {
                for e in &s.extends {
                    if !out.contains(&e.as_str()) {
                        out.push(e);
                    }
                }
            }
            i += 1;
        }
        out
    }
}

/// The bundled catalog.
pub fn load_catalog() -> Catalog {
    Catalog::bundled()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_catalog() {
        let c = load_catalog();
        assert_eq!(c.schemas().count(), 15);
        assert_eq!(c.rules().count(), 7);
        assert_eq!(c.schema("PIE").unwrap().body().to_string(), "(A>~B)|((A&B>C)<->(A>(B->C)))");
        let vc = c.system("Vc").unwrap();
        assert_eq!(vc.axioms, ["ID", "CM", "CC", "CV", "CA", "CSO"]);
        assert_eq!(vc.rules, ["RCEC"]);
        assert_eq!(c.lineage("VCc"), ["VCc", "Vc"]);
    }

    #[test]
    fn errors_carry_location() {
        let bad = SCHEMAS_JSON.replace("\"A>A\"", "\"A>>A\"");
        let err = Catalog::from_json(&bad, SYSTEMS_JSON).unwrap_err().to_string();
        assert!(err.starts_with("schemas.json:3"), "{err}");
        let bad = SYSTEMS_JSON.replace("\"CM\", \"CC\", \"CV\", \"CA\"", "\"CM\", \"XX\", \"CV\", \"CA\"");
        let err = Catalog::from_json(SCHEMAS_JSON, &bad).unwrap_err().to_string();
        assert!(err.contains("unknown schema XX"), "{err}");
    }
}
