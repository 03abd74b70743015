use std::process::{Command, Output};

use hirzebruch_core::cli::FactorizationDocument;
use hirzebruch_core::factorization::Factorization;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hirzebruch"));
    c.env_remove("HIRZEBRUCH_OUTPUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn chern_reports_zero_signature() {
    let o = run(&["chern", "0", "7", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tau = 0"));
    let o = run(&["chern", "--format", "json", "0", "7", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["signature"]["coeff"]["num"], "0");
}

#[test]
fn degenerate_factorization_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .env("HIRZEBRUCH_OUTPUT_DIR", dir.path())
        .args(["factorize", "--format", "json", "--output", "f.json", "1", "1", "2"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let path = dir.path().join("f.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let doc: FactorizationDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.factorization.strand_count, 8);
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", text);

    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("product is the full twist: yes"));
}

#[test]
fn verify_rejects_broken_factorizations() {
    let o = run(&["factorize", "--format", "json", "1", "1", "2"]);
    let mut doc: FactorizationDocument = serde_json::from_slice(&o.stdout).unwrap();
    let dir = tempfile::tempdir().unwrap();

    // Deleting a factor leaves a degree deficit.
    let mut short = doc.factorization.clone();
    short.factors.pop();
    let p = dir.path().join("short.json");
    std::fs::write(&p, serde_json::to_string(&short).unwrap()).unwrap();
    assert_eq!(run(&["verify", p.to_str().unwrap()]).status.code(), Some(2));

    // Reversing the order keeps the degree but not the product.
    doc.factorization.factors.reverse();
    let p = dir.path().join("rev.json");
    std::fs::write(&p, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = run(&["verify", "--format", "json", p.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["audit"]["residual"], 0);
    assert_eq!(v["product_is_full_twist"], false);
    assert_eq!(o.status.code(), Some(2));

    let p = dir.path().join("junk.json");
    std::fs::write(&p, "{").unwrap();
    assert_eq!(run(&["verify", p.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["verify", "/nonexistent/f.json"]).status.code(), Some(1));
}

#[test]
fn regenerated_audit_reports_both_modes() {
    let o = run(&["factorize", "--level", "regenerated", "--format", "json", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: FactorizationDocument = serde_json::from_slice(&o.stdout).unwrap();
    let r = doc.regeneration.unwrap();
    assert_eq!(r.report.residual, 0);
    assert_eq!(r.other_residual, 6);

    let o = run(&["factorize", "--level", "regenerated", "--three-point-mode", "literal", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("residual 6"));
}

#[test]
fn regenerated_json_round_trips() {
    let o = run(&["factorize", "--level", "regenerated", "--format", "json", "1", "2", "2"]);
    let doc: FactorizationDocument = serde_json::from_slice(&o.stdout).unwrap();
    let back = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    assert_eq!(back, stdout(&o));
    let f: Factorization = doc.factorization;
    assert!(f.factors.iter().any(|x| x.is_placeholder()));
}

#[test]
fn scan_finds_positive_examples() {
    let o = run(&["scan", "--k", "1", "--a", "3", "--b", "5..8", "--where", "tau>0,gt", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for b in 5..=8 {
        assert!(text.contains(&format!("\n1,3,{b},")), "{text}");
    }
    assert_eq!(run(&["scan", "--k", "1", "--a", "3", "--b", "8..5"]).status.code(), Some(1));
    assert_eq!(run(&["scan", "--k", "1", "--a", "3", "--b", "5", "--where", "nice"]).status.code(), Some(1));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["degenerate", "--format", "json", "1", "3", "2"][..],
        &["factorize", "--format", "json", "1", "2", "2"],
        &["factorize", "--level", "regenerated", "--format", "csv", "1", "2", "2"],
        &["table", "cor5.7", "--format", "json"],
        &["pair", "3", "5", "--format", "json"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn degenerate_text_and_csv() {
    let o = run(&["degenerate", "1", "1", "1"]);
    let text = stdout(&o);
    assert!(text.contains("planes 3, lines 2, vertices 5"), "{text}");
    assert!(text.contains("special vertices: a1 a3 a4 a5"));
    let o = run(&["degenerate", "--format", "csv", "1", "1", "1"]);
    assert_eq!(stdout(&o).lines().count(), 6);
    assert_eq!(run(&["degenerate", "1", "1", "0"]).status.code(), Some(1));
}

#[test]
fn six_point_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.json");
    std::fs::write(&p, "not json").unwrap();
    let o = run(&["factorize", "--level", "regenerated", "--six-point-table", p.to_str().unwrap(), "1", "1", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tables() {
    let o = run(&["table", "thm5.8", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 9);
    let o = run(&["table", "lemma6.1", "--k", "1", "--a", "0", "--b", "3"]);
    assert_eq!(stdout(&o), "(1, 0, 3)  n=9 m=18 mu=12 phi=42 d=84\n");
    let o = run(&["table", "cor5.7", "--k", "0", "--a", "5", "--b", "6"]);
    assert!(stdout(&o).contains("1 differ"));
}
