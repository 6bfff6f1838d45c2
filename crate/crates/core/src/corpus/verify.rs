use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::Catalog;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kernel::{check_and_register, check_proof, CheckReport, Justification, Proof, RuleRegistry};
use crate::semantics::{
    check_condition, rule_preserved_on_frame, schema_valid_on_frame, ConditionName, FrameFile, SelectionFrame,
    LEWIS_G,
};

/// Directory of the corpus shipped with the crate sources.
pub fn default_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Accepted,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub file: String,
    pub system: String,
    /// Derived rules and theorems the proof cites.
    #[serde(default)]
    pub uses: Vec<String>,
    pub expect: Expect,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub proofs: Vec<ManifestEntry>,
}

/// A loaded corpus directory.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub dir: PathBuf,
    pub catalog: Catalog,
    pub frame: SelectionFrame,
    pub manifest: Manifest,
    /// In manifest order.
    pub proofs: Vec<Proof>,
}

impl Corpus {
    pub fn load(dir: &Path) -> Result<Self> {
        let catalog = Catalog::load_dir(dir)?;
        let frame_path = dir.join("frames").join(format!("{LEWIS_G}.json"));
        let frame = SelectionFrame::load(frame_path.to_str().unwrap_or_default())?;
        let manifest_path = dir.join("manifest.json");
        let text = std::fs::read_to_string(&manifest_path)
            .map_err(|e| Error::File { file: manifest_path.clone(), msg: e.to_string() })?;
        let manifest: Manifest = serde_json::from_str(&text)
            .map_err(|e| Error::File { file: format!("{}:{}", manifest_path.display(), e.line()).into(), msg: e.to_string() })?;
        let mut proofs = Vec::with_capacity(manifest.proofs.len());
        for entry in &manifest.proofs {
            let proof = Proof::load(&dir.join(&entry.file))?;
            if proof.system != entry.system {
                return Err(Error::File {
                    file: dir.join(&entry.file),
                    msg: format!("proof is in {}, manifest says {}", proof.system, entry.system),
                });
            }
            proofs.push(proof);
        }
        Ok(Corpus { dir: dir.to_path_buf(), catalog, frame, manifest, proofs })
    }

    /// The corpus shipped with the crate sources.
    pub fn bundled() -> Result<Self> {
        Corpus::load(&default_dir())
    }

    /// Registries as they stand before each proof, in manifest order, plus
    /// the final one.
    pub fn registry_snapshots(&self) -> Vec<RuleRegistry> {
        let mut registry = RuleRegistry::new();
        let mut out = Vec::with_capacity(self.proofs.len() + 1);
        for p in &self.proofs {
            out.push(registry.clone());
            let _ = check_and_register(p, &self.catalog, &mut registry);
        }
        out.push(registry);
        out
    }
}

/// Derived rules and theorems a proof cites, by name.
pub fn cited_derivations(proof: &Proof, catalog: &Catalog) -> BTreeSet<String> {
    let Some(system) = catalog.system(&proof.system) else {
        return BTreeSet::new();
    };
    proof
        .lines
        .iter()
        .filter_map(|l| match &l.just {
            Justification::Axiom { schema, .. } if !system.has_axiom(schema) => Some(schema.clone()),
            Justification::Rule { rule, .. } if !system.has_rule(rule) => Some(rule.clone()),
            Justification::Derived { rule, .. } => Some(rule.clone()),
            _ => None,
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct StageReport {
    pub ok: bool,
    pub checks: Vec<(String, bool)>,
}

impl StageReport {
    fn new() -> Self {
        StageReport { ok: true, checks: Vec::new() }
    }

    fn record(&mut self, what: impl Into<String>, ok: bool) {
        self.ok &= ok;
        self.checks.push((what.into(), ok));
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofOutcome {
    pub file: String,
    pub expect: Expect,
    pub ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub manifest_errors: Vec<String>,
    pub report: CheckReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub frames: StageReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<StageReport>,
    pub proofs: Vec<ProofOutcome>,
    pub ok: bool,
}

impl VerifyReport {
    pub fn proofs_ok(&self) -> usize {
        self.proofs.iter().filter(|p| p.ok).count()
    }

    pub fn summary(&self) -> String {
        let frames = if self.frames.ok { "frames ok" } else { "frames FAILED" };
        let axioms = match &self.axioms {
            Some(a) if !a.ok => ", VCn axioms FAILED",
            None => ", VCn axioms not checked",
            _ => "",
        };
        format!("{frames}{axioms}, {}/{} proofs ok", self.proofs_ok(), self.proofs.len())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok  " } else { "FAIL" };
        writeln!(f, "(a) frame {LEWIS_G}")?;
        for (what, ok) in &self.frames.checks {
            writeln!(f, "  {} {what}", mark(*ok))?;
        }
        if let Some(a) = &self.axioms {
            writeln!(f, "(b) VCn on {LEWIS_G}")?;
            for (what, ok) in &a.checks {
                writeln!(f, "  {} {what}", mark(*ok))?;
            }
        }
        if !self.proofs.is_empty() {
            writeln!(f, "(c) proofs in manifest order")?;
        }
        for p in &self.proofs {
            writeln!(f, "  {} {} ({})", mark(p.ok), p.report.proof, p.report.system)?;
            for e in &p.manifest_errors {
                writeln!(f, "       manifest: {e}")?;
            }
            if let Some(fail) = &p.report.first_failure {
                let at = fail.line.map_or(String::new(), |l| format!("line {l}: "));
                writeln!(f, "       {at}{}", fail.reason)?;
            }
        }
        write!(f, "{}", self.summary())
    }
}

const PROP1_CONDITIONS: [ConditionName; 5] =
    [ConditionName::Id, ConditionName::Mod, ConditionName::Cv, ConditionName::Cso, ConditionName::Cent];

/// Axioms of VCn checked on the frame.
pub const VCN_AXIOMS: [&str; 8] = ["ID", "CM", "CC", "CV", "MOD'", "CSO", "CMP", "CS"];

fn frame_stage(corpus: &Corpus) -> StageReport {
    let mut stage = StageReport::new();
    stage.record(format!("frames/{LEWIS_G}.json equals the built-in frame"), corpus.frame == SelectionFrame::lewis_g());
    for c in PROP1_CONDITIONS {
        stage.record(format!("condition {c}"), check_condition(&corpus.frame, c).holds());
    }
    match corpus.catalog.schema("CA") {
        Some(ca) => stage.record("CA is falsified", !schema_valid_on_frame(&corpus.frame, ca).holds()),
        None => stage.record("CA is in the catalog", false),
    }
    stage
}

fn axiom_stage(corpus: &Corpus) -> StageReport {
    let mut stage = StageReport::new();
    for name in VCN_AXIOMS {
        let ok = corpus.catalog.schema(name).is_some_and(|s| schema_valid_on_frame(&corpus.frame, s).holds());
        stage.record(format!("{name} is valid"), ok);
    }
    let prem = [Formula::iff(Formula::meta('A'), Formula::meta('B'))];
    let concl = Formula::iff(
        Formula::cond(Formula::meta('C'), Formula::meta('A')),
        Formula::cond(Formula::meta('C'), Formula::meta('B')),
    );
    stage.record("RCEC preserves validity", rule_preserved_on_frame(&corpus.frame, &prem, &concl).holds());
    stage
}

/// Check the manifest's `uses` list against the registry and the proof.
fn manifest_errors(entry: &ManifestEntry, proof: &Proof, catalog: &Catalog, registry: &RuleRegistry) -> Vec<String> {
    let mut errs = Vec::new();
    for u in &entry.uses {
        let known = registry.derived_rule(catalog, &proof.system, u).is_some()
            || registry.theorem(catalog, &proof.system, u).is_some();
        if !known {
            errs.push(format!("`{u}` is not registered before this proof"));
        }
    }
    for c in cited_derivations(proof, catalog) {
        if !entry.uses.contains(&c) {
            errs.push(format!("`{c}` is cited but not listed in uses"));
        }
    }
    errs
}

/// Stages (a) frame, (b) VCn soundness on the frame, (c) every proof from an
/// empty registry in manifest order. A failing stage stops the run.
pub fn verify_corpus(corpus: &Corpus) -> VerifyReport {
    let frames = frame_stage(corpus);
    let mut report = VerifyReport { frames, axioms: None, proofs: Vec::new(), ok: false };
    if !report.frames.ok {
        return report;
    }
    let axioms = axiom_stage(corpus);
    let axioms_ok = axioms.ok;
    report.axioms = Some(axioms);
    if !axioms_ok {
        return report;
    }
    let mut registry = RuleRegistry::new();
    for (entry, proof) in corpus.manifest.proofs.iter().zip(&corpus.proofs) {
        let mut errs = manifest_errors(entry, proof, &corpus.catalog, &registry);
        let rep = match check_and_register(proof, &corpus.catalog, &mut registry) {
            Ok(r) => r,
            Err(e) => {
                errs.push(e.to_string());
                check_proof(proof, &corpus.catalog, &registry)
            }
        };
        let matches = match entry.expect {
            Expect::Accepted => rep.accepted,
            Expect::Rejected => !rep.accepted,
        };
        report.proofs.push(ProofOutcome {
            file: entry.file.clone(),
            expect: entry.expect,
            ok: matches && errs.is_empty(),
            manifest_errors: errs,
            report: rep,
        });
    }
    report.ok = report.proofs.iter().all(|p| p.ok);
    report
}

/// Re-check every proof against a frozen registry, in parallel.
pub fn recheck_frozen(corpus: &Corpus, registry: &RuleRegistry, threads: usize) -> Vec<CheckReport> {
    let threads = threads.max(1);
    let chunk = corpus.proofs.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = corpus
            .proofs
            .chunks(chunk)
            .map(|ps| s.spawn(move || ps.iter().map(|p| check_proof(p, &corpus.catalog, registry)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("checker thread")).collect()
    })
}

/// Serialize the built-in frame in the on-disk format.
pub fn lewis_g_file() -> FrameFile {
    SelectionFrame::lewis_g().to_file(Some(LEWIS_G))
}
