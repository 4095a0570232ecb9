//! Golden-file cases shared by the `golden` and `acceptance` test targets.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_fuzzcrypt")
}

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Case {
    pub golden: String,
    pub args: Vec<String>,
    /// Envelope produced by an earlier case; the decrypt input.
    pub input_from_golden: bool,
}

pub const DOCUMENTS: &[(&str, bool)] = &[
    ("plain.txt", false),
    ("punctuation.txt", false),
    ("unicode.txt", false),
    ("page.html", true),
    ("empty.txt", false),
];

fn stem(doc: &str) -> &str {
    doc.split('.').next().unwrap()
}

fn case(golden: String, sub: &str, config: &str, input: &str, html: bool, extra: &[&str]) -> Case {
    let mut args = vec![sub.to_string(), "--config".into(), config.into(), "--input".into(), input.into()];
    if html {
        args.push("--html".into());
    }
    args.extend(extra.iter().map(|s| s.to_string()));
    Case {
        golden,
        args,
        input_from_golden: false,
    }
}

/// Every golden case, in dependency order (encrypt before decrypt).
pub fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for &(doc, html) in DOCUMENTS {
        let s = stem(doc);
        out.push(case(format!("{s}.fuzzify.csv"), "fuzzify", "config_topk.json", doc, html, &[]));
        out.push(case(format!("{s}.rank.csv"), "rank", "config_topk.json", doc, html, &[]));
        out.push(case(format!("{s}.encrypt.json"), "encrypt", "config_topk.json", doc, html, &[]));
        let mut dec = case(format!("{s}.decrypt.txt"), "decrypt", "config_topk.json", &format!("{s}.encrypt.json"), false, &[]);
        dec.input_from_golden = true;
        out.push(dec);
        out.push(case(format!("{s}.roundtrip.csv"), "roundtrip", "config_topk.json", doc, html, &[]));
    }
    out.push(case("plain.fuzzify.json".into(), "fuzzify", "config_topk.json", "plain.txt", false, &["--format", "json"]));
    out.push(case("plain.rank.threshold.json".into(), "rank", "config_threshold.json", "plain.txt", false, &["--format", "json"]));
    out.push(case("plain.encrypt.all.json".into(), "encrypt", "config_all.json", "plain.txt", false, &[]));
    out.push(case("unicode.encrypt.threshold.json".into(), "encrypt", "config_threshold.json", "unicode.txt", false, &[]));
    out.push(case("page.roundtrip.threshold.json".into(), "roundtrip", "config_threshold.json", "page.html", true, &["--format", "json"]));
    out
}

pub fn run(args: &[String], cwd_inputs: &Path, input_dir: &Path, output: &Path) -> Output {
    // resolve --config against fixtures and --input against input_dir
    let mut full = Vec::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        full.push(a.clone());
        match a.as_str() {
            "--config" => full.push(cwd_inputs.join(it.next().unwrap()).display().to_string()),
            "--input" => full.push(input_dir.join(it.next().unwrap()).display().to_string()),
            _ => {}
        }
    }
    full.push("--output".into());
    full.push(output.display().to_string());
    Command::new(bin()).args(&full).output().expect("spawn fuzzcrypt")
}

/// Runs one case into `out_dir`, returning the produced bytes.
pub fn produce(case: &Case, out_dir: &Path) -> Result<Vec<u8>, String> {
    let input_dir = if case.input_from_golden { golden_dir() } else { fixtures() };
    let out = out_dir.join(&case.golden);
    let o = run(&case.args, &fixtures(), &input_dir, &out);
    if !o.status.success() {
        return Err(format!("{}: exit {:?}: {}", case.golden, o.status.code(), String::from_utf8_lossy(&o.stderr)));
    }
    std::fs::read(&out).map_err(|e| format!("{}: {e}", case.golden))
}

/// Compares (or with `UPDATE_GOLDEN=1`, rewrites) every golden file.
/// Each case runs twice to check run-to-run determinism.
pub fn check_all() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let mut failures = Vec::new();
    for case in cases() {
        let first = match produce(&case, a.path()) {
            Ok(v) => v,
            Err(e) => {
                failures.push(e);
                continue;
            }
        };
        let second = produce(&case, b.path()).unwrap_or_default();
        if first != second {
            failures.push(format!("{}: output differs between runs", case.golden));
        }
        let path = golden_dir().join(&case.golden);
        if update {
            std::fs::write(&path, &first).unwrap();
        } else {
            match std::fs::read(&path) {
                Ok(expected) if expected == first => {}
                Ok(_) => failures.push(format!("{}: differs from golden file", case.golden)),
                Err(e) => failures.push(format!("{}: missing golden file ({e})", case.golden)),
            }
        }
    }
    failures
}
