//! Command-line front end.
//!
//! Exit status: 0 when every check passes, 1 when a check fails (the report
//! says which), 2 on bad input or usage.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::corpus::{verify_corpus, Catalog, Corpus};
use crate::error::{Error, Result};
use crate::formula::{parse, Formula, Schema};
use crate::kernel::{check_proof, Proof, RuleRegistry};
use crate::search::{search, SearchOutcome, SearchSpec, DEFAULT_BUDGET};
use crate::semantics::{
    check_condition, correspondence_check, formula_valid_on_frame, schema_valid_on_frame, ConditionName,
    CorrespondenceMode, FrameFile, SelectionFrame, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "condlogic", version, about = "Conditional logic workbench")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing; report through the exit status only.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a formula and print its canonical form.
    Parse {
        formula: String,
        #[arg(long)]
        unicode: bool,
    },
    /// Check frame conditions on a frame file or `builtin:NAME`.
    CheckFrame {
        frame: String,
        #[arg(long)]
        conditions: String,
    },
    /// Frame validity of a catalog schema or a formula.
    Validate(ValidateArgs),
    /// Check a proof file against the catalog and the corpus registry.
    CheckProof {
        file: PathBuf,
        #[command(flatten)]
        corpus: CorpusArg,
    },
    /// Corpus operations.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// Search for a frame satisfying the conditions on which the target is invalid.
    FindCountermodel {
        #[arg(long)]
        conditions: String,
        /// Catalog schema name or schema text.
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 4)]
        max_worlds: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the frame of a found countermodel to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a frame condition with a schema over all frames of a size, or sampled frames.
    Correspondence {
        #[arg(long)]
        condition: String,
        /// Catalog schema names joined by `+` (conjoined).
        #[arg(long)]
        schema: String,
        #[arg(long)]
        worlds: usize,
        /// Sample this many frames instead of enumerating.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "what")]
struct ValidateTarget {
    #[arg(long)]
    schema: Option<String>,
    #[arg(long)]
    formula: Option<String>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    frame: String,
    #[command(flatten)]
    target: ValidateTarget,
}

#[derive(Debug, Args)]
struct CorpusArg {
    /// Corpus directory (defaults to the bundled corpus).
    #[arg(long)]
    corpus: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum CorpusCommand {
    /// Run frame checks, axiom checks and every proof in manifest order.
    Verify { dir: Option<PathBuf> },
}

struct Output<'a> {
    json: bool,
    quiet: bool,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn emit<T: Serialize>(&mut self, value: &T, human: impl FnOnce() -> String) -> Result<()> {
        if self.quiet {
            return Ok(());
        }
        if self.json {
            writeln!(self.out, "{}", serde_json::to_string_pretty(value)?)?;
        } else {
            write!(self.out, "{}", human())?;
        }
        Ok(())
    }
}

/// Run with `args[0]` as the program name.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut o = Output { json: cli.json, quiet: cli.quiet, out };
    match dispatch(cli.command, &mut o) {
        Ok(passed) => {
            if passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, o: &mut Output) -> Result<bool> {
    match command {
        Command::Parse { formula, unicode } => cmd_parse(&formula, unicode, o),
        Command::CheckFrame { frame, conditions } => cmd_check_frame(&frame, &conditions, o),
        Command::Validate(args) => cmd_validate(args, o),
        Command::CheckProof { file, corpus } => cmd_check_proof(&file, corpus.corpus, o),
        Command::Corpus { command: CorpusCommand::Verify { dir } } => cmd_corpus_verify(dir, o),
        Command::FindCountermodel { conditions, target, max_worlds, budget, seed, out } => {
            let spec = SearchSpec {
                conditions: ConditionName::parse_list(&conditions)?,
                target: resolve_schema(&Catalog::bundled(), &target)?,
                max_worlds,
                budget,
                seed,
            };
            cmd_find_countermodel(&spec, out, o)
        }
        Command::Correspondence { condition, schema, worlds, samples, seed } => {
            let mode = match samples {
                Some(count) => CorrespondenceMode::Sampled { count, seed },
                None => CorrespondenceMode::Exhaustive,
            };
            cmd_correspondence(&condition, &schema, worlds, mode, o)
        }
    }
}

#[derive(Serialize)]
struct ParseReport {
    formula: Formula,
    unicode: String,
    ground: bool,
    metavars: Vec<String>,
}

fn cmd_parse(text: &str, unicode: bool, o: &mut Output) -> Result<bool> {
    let f = parse(text)?;
    let report = ParseReport {
        unicode: f.to_unicode(),
        ground: f.is_ground(),
        metavars: f.metavars().into_iter().map(String::from).collect(),
        formula: f,
    };
    o.emit(&report, || if unicode { format!("{}\n", report.unicode) } else { format!("{}\n", report.formula) })?;
    Ok(true)
}

#[derive(Serialize)]
struct ConditionResult {
    condition: ConditionName,
    #[serde(flatten)]
    verdict: Verdict,
}

#[derive(Serialize)]
struct FrameReport {
    frame: String,
    worlds: usize,
    results: Vec<ConditionResult>,
}

fn cmd_check_frame(frame_spec: &str, conditions: &str, o: &mut Output) -> Result<bool> {
    let conditions = ConditionName::parse_list(conditions)?;
    let frame = SelectionFrame::load(frame_spec)?;
    let results: Vec<ConditionResult> = conditions
        .into_iter()
        .map(|c| ConditionResult { condition: c, verdict: check_condition(&frame, c) })
        .collect();
    let passed = results.iter().all(|r| r.verdict.holds());
    let report = FrameReport { frame: frame_spec.to_string(), worlds: frame.worlds(), results };
    o.emit(&report, || {
        let mut s = String::new();
        for r in &report.results {
            match &r.verdict {
                Verdict::Holds => s.push_str(&format!("{}: holds\n", r.condition)),
                Verdict::Fails(w) => s.push_str(&format!("{}: fails at {w}\n", r.condition)),
            }
        }
        s
    })?;
    Ok(passed)
}

fn resolve_schema(catalog: &Catalog, name: &str) -> Result<Schema> {
    let parts: Vec<&str> = name.split('+').map(str::trim).collect();
    if parts.iter().all(|p| catalog.schema(p).is_some()) {
        let bodies = parts.iter().map(|p| catalog.schema(p).expect("checked").body().clone());
        let body = Formula::conjunction(bodies).ok_or_else(|| Error::Catalog("empty schema name".into()))?;
        return Ok(Schema::new(name, body));
    }
    match parse(name) {
        Ok(f) if !f.is_ground() => Ok(Schema::new(name, f)),
        _ => Err(Error::Catalog(format!("unknown schema `{name}`"))),
    }
}

#[derive(Serialize)]
struct ValidityReport {
    frame: String,
    target: String,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<crate::semantics::Witness>,
}

fn cmd_validate(args: ValidateArgs, o: &mut Output) -> Result<bool> {
    let frame = SelectionFrame::load(&args.frame)?;
    let (target, verdict) = match (args.target.schema, args.target.formula) {
        (Some(name), _) => {
            let s = resolve_schema(&Catalog::bundled(), &name)?;
            (format!("{} = {}", s.name(), s.body()), schema_valid_on_frame(&frame, &s))
        }
        (None, Some(text)) => {
            let f = parse(&text)?;
            let v = formula_valid_on_frame(&frame, &f)?;
            (f.to_string(), v)
        }
        (None, None) => unreachable!("clap requires one"),
    };
    let report = ValidityReport {
        frame: args.frame,
        target,
        valid: verdict.holds(),
        witness: verdict.witness().cloned(),
    };
    o.emit(&report, || match &report.witness {
        None => format!("{}: valid on {}\n", report.target, report.frame),
        Some(w) => format!("{}: invalid on {}; fails at {w}\n", report.target, report.frame),
    })?;
    Ok(report.valid)
}

/// Registry for checking `proof`: the corpus registry as it stood before
/// the proof if the manifest lists it, else the full corpus registry.
fn registry_for(corpus: &Corpus, proof: &Proof) -> RuleRegistry {
    let mut snapshots = corpus.registry_snapshots();
    match corpus.proofs.iter().position(|p| p.name == proof.name && p.system == proof.system) {
        Some(i) => snapshots.swap_remove(i),
        None => snapshots.pop().expect("at least one snapshot"),
    }
}

fn cmd_check_proof(file: &std::path::Path, dir: Option<PathBuf>, o: &mut Output) -> Result<bool> {
    let corpus = match dir {
        Some(d) => Corpus::load(&d)?,
        None => Corpus::bundled()?,
    };
    let path = if file.exists() { file.to_path_buf() } else { corpus.dir.join(file) };
    let proof = Proof::load(&path)?;
    let registry = registry_for(&corpus, &proof);
    let report = check_proof(&proof, &corpus.catalog, &registry);
    o.emit(&report, || format!("{report}\n"))?;
    Ok(report.accepted)
}

fn cmd_corpus_verify(dir: Option<PathBuf>, o: &mut Output) -> Result<bool> {
    let corpus = match dir {
        Some(d) => Corpus::load(&d)?,
        None => Corpus::bundled()?,
    };
    let report = verify_corpus(&corpus);
    o.emit(&report, || {
        let mut s = String::new();
        for (what, ok) in report.frames.checks.iter().chain(report.axioms.iter().flat_map(|a| a.checks.iter())) {
            s.push_str(&format!("{} {what}\n", if *ok { "ok  " } else { "FAIL" }));
        }
        for p in &report.proofs {
            s.push_str(&format!("{} {}\n", if p.ok { "ok  " } else { "FAIL" }, p.file));
            for e in &p.manifest_errors {
                s.push_str(&format!("       {e}\n"));
            }
            if !p.ok {
                if let Some(f) = &p.report.first_failure {
                    let at = f.line.map(|l| format!("line {l}: ")).unwrap_or_default();
                    s.push_str(&format!("       {at}{}\n", f.reason));
                }
            }
        }
        s.push_str(&report.summary());
        s.push('\n');
        s
    })?;
    Ok(report.ok)
}

fn cmd_find_countermodel(spec: &SearchSpec, file: Option<PathBuf>, o: &mut Output) -> Result<bool> {
    let run = search(spec)?;
    if let (SearchOutcome::Found(cm), Some(path)) = (&run.outcome, &file) {
        let mut frame: FrameFile = cm.frame.clone();
        frame.name = Some(format!("countermodel-{}", spec.target.name()));
        std::fs::write(path, serde_json::to_string_pretty(&frame)? + "\n")?;
    }
    o.emit(&run, || {
        let mut s = String::new();
        for n in &run.exhausted_sizes {
            s.push_str(&format!("size {n}: exhausted\n"));
        }
        match &run.outcome {
            SearchOutcome::Found(cm) => {
                s.push_str(&format!("found a {}-world countermodel to {}; fails at {}\n", cm.frame.world_count(), spec.target.name(), cm.witness));
                s.push_str(&cm.selection_frame().to_string());
            }
            SearchOutcome::Exhausted => s.push_str(&format!("no countermodel with at most {} worlds\n", spec.max_worlds)),
            SearchOutcome::BudgetExceeded { nodes } => s.push_str(&format!("budget exceeded after {nodes} nodes\n")),
        }
        s.push_str(&format!("nodes: {}\n", run.nodes));
        s
    })?;
    Ok(matches!(run.outcome, SearchOutcome::Found(_)))
}

fn cmd_correspondence(condition: &str, schema: &str, worlds: usize, mode: CorrespondenceMode, o: &mut Output) -> Result<bool> {
    let c: ConditionName = condition.parse()?;
    let s = resolve_schema(&Catalog::bundled(), schema)?;
    let report = correspondence_check(worlds, c, &s, mode)?;
    o.emit(&report, || {
        let mut s = format!(
            "{} vs {}: {} frames of size {}, condition holds on {}, {} discrepancies\n",
            report.condition, report.schema, report.frames_checked, report.worlds, report.condition_frames, report.discrepancy_count
        );
        for d in &report.discrepancies {
            s.push_str(&format!(
                "  condition {}, schema {}: {}\n",
                if d.condition_holds { "holds" } else { "fails" },
                if d.schema_valid { "valid" } else { "invalid" },
                serde_json::to_string(&d.frame).unwrap_or_default()
            ));
        }
        s
    })?;
    Ok(report.is_clean())
}
