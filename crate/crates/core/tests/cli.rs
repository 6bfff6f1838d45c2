use condlogic::cli::run;
use condlogic::semantics::{FrameFile, SelectionFrame};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["condlogic".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn corpus_dir() -> String {
    condlogic::corpus::default_dir().display().to_string()
}

#[test]
fn check_frame_statuses() {
    let (code, out, _) = cli(&["check-frame", "builtin:lewis-g", "--conditions", "id,mod,cv,cso,cent"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = cli(&["check-frame", "builtin:lewis-g", "--conditions", "ca"]);
    assert_eq!(code, 1);
    assert!(out.contains("fails at world 0"), "{out}");
    let (code, _, err) = cli(&["check-frame", "builtin:lewis-g", "--conditions", "bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("bogus"));
}

#[test]
fn validate_statuses() {
    assert_eq!(cli(&["validate", "builtin:lewis-g", "--schema", "CS"]).0, 0);
    let (code, out, _) = cli(&["validate", "builtin:lewis-g", "--schema", "CA"]);
    assert_eq!(code, 1);
    assert!(out.contains("A={1,2}, B={1,3}, C={1,3}"), "{out}");
    assert_eq!(cli(&["validate", "builtin:lewis-g", "--formula", "p>p"]).0, 0);
    assert_eq!(cli(&["validate", "builtin:lewis-g", "--formula", "p>(q"]).0, 2);
    assert_eq!(cli(&["validate", "builtin:lewis-g"]).0, 2);
    assert_eq!(cli(&["validate", "builtin:lewis-g", "--schema", "NOPE"]).0, 2);
}

#[test]
fn json_validity_report() {
    let (code, out, _) = cli(&["--json", "validate", "builtin:lewis-g", "--schema", "CA"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["witness"]["world"], 0);
    assert_eq!(v["witness"]["assignment"]["A"], serde_json::json!([1, 2]));
}

#[test]
fn corpus_verify_summary() {
    let dir = corpus_dir();
    let (code, out, _) = cli(&["corpus", "verify", &dir]);
    assert_eq!(code, 0);
    let n = condlogic::corpus::Corpus::bundled().unwrap().proofs.len();
    assert!(out.trim_end().ends_with(&format!("frames ok, {n}/{n} proofs ok")), "{out}");
    assert_eq!(cli(&["corpus", "verify", "/nonexistent"]).0, 2);
}

#[test]
fn check_proof_statuses() {
    let (code, out, _) = cli(&["check-proof", "proofs/sda_strengthening.json"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.trim_end().ends_with("accepted"));
    let file = format!("{}/proofs/vb_cso_d.json", corpus_dir());
    let (code, out, _) = cli(&["--json", "check-proof", &file]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["accepted"], true);
    assert_eq!(cli(&["check-proof", "missing.json"]).0, 2);
}

#[test]
fn find_countermodel_round_trips() {
    let args = [
        "--json", "find-countermodel", "--conditions", "id,mod,cv,cso,cent", "--target", "CA",
        "--max-worlds", "4", "--budget", "5000000", "--seed", "7",
    ];
    let (code, out, _) = cli(&args);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outcome"], "found");
    let frame: FrameFile = serde_json::from_value(v["frame"].clone()).unwrap();
    let frame: SelectionFrame = frame.into_frame().unwrap();
    assert_eq!(frame.worlds(), 4);

    let path = std::env::temp_dir().join(format!("condlogic-cm-{}.json", std::process::id()));
    let p = path.display().to_string();
    let mut with_out = args[1..].to_vec();
    with_out.extend(["--out", &p]);
    assert_eq!(cli(&with_out).0, 0);
    let (code, out, _) = cli(&["check-frame", &p, "--conditions", "id,mod,cv,cso,cent"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(cli(&["validate", &p, "--schema", "CA"]).0, 1);
    std::fs::remove_file(path).unwrap();

    let (code, out, _) = cli(&["find-countermodel", "--conditions", "id,mod,cv,cso,cent", "--target", "CA", "--max-worlds", "1"]);
    assert_eq!(code, 1);
    assert!(out.contains("no countermodel"));
    let (code, out, _) = cli(&["find-countermodel", "--conditions", "id,mod,cv,cso,cent", "--target", "CA", "--budget", "1"]);
    assert_eq!(code, 1);
    assert!(out.contains("budget exceeded after 1 nodes"), "{out}");
    assert_eq!(cli(&["find-countermodel", "--conditions", "id", "--target", "CA", "--max-worlds", "9"]).0, 2);
}

#[test]
fn correspondence_and_parse() {
    let (code, out, _) = cli(&["correspondence", "--condition", "ca", "--schema", "CA", "--worlds", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 discrepancies"));
    assert_eq!(cli(&["correspondence", "--condition", "cent", "--schema", "CS+CMP", "--worlds", "3", "--samples", "50"]).0, 0);
    assert_eq!(cli(&["correspondence", "--condition", "mod", "--schema", "MOD", "--worlds", "2"]).0, 1);
    let (code, out, _) = cli(&["parse", "((p|q) > r)"]);
    assert_eq!((code, out.as_str()), (0, "p|q>r\n"));
    let (_, out, _) = cli(&["parse", "--unicode", "~p->q"]);
    assert_eq!(out, "¬p → q\n");
}

#[test]
fn quiet_and_usage() {
    let (code, out, _) = cli(&["--quiet", "validate", "builtin:lewis-g", "--schema", "CA"]);
    assert_eq!((code, out.as_str()), (1, ""));
    assert_eq!(cli(&[]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["--help"]).0, 0);
}
