//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when input or parameters are rejected, 2 when
//! a factorization fails its degree audit or its product is not the full
//! twist.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arrangement;
use crate::degeneration::{self, DegenerationComplex, VertexKind, DEFAULT_SEED};
use crate::error::Error;
use crate::factorization::{AuditReport, Factorization, Source};
use crate::invariants::{self, ParamRange, Predicate, SurfaceParams, DEFAULT_EXPANSION_CAP};
use crate::regeneration::{self, RegenerationAudit, RegenerationOptions, SixPointTable, ThreePointMode};

/// Relative `--output` paths are resolved against this directory when set.
pub const OUTPUT_DIR_ENV: &str = "HIRZEBRUCH_OUTPUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hirzebruch", version, about = "Braid monodromy and Galois-cover invariants of Hirzebruch surfaces")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Level {
    /// Monodromy of the degenerate line arrangement.
    Degenerate,
    /// Regenerated factorization of the branch curve.
    Regenerated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Literal,
    Cubed,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    /// Positive-signature conditions compared with the computed sign.
    #[value(alias = "cor5.7")]
    Positivity,
    /// Zero-signature and positive-signature examples.
    #[value(alias = "thm5.8")]
    Examples,
    /// Degree, dual degree, cusps and nodes of the branch curve.
    #[value(alias = "lemma6.1")]
    Branch,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the degeneration complex.
    Degenerate { k: u32, a: u32, b: u32 },
    /// Emit a braid monodromy factorization.
    Factorize {
        #[arg(long, value_enum, default_value_t = Level::Degenerate)]
        level: Level,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        three_point_mode: ModeArg,
        /// JSON table of word-level 6-point factors.
        #[arg(long)]
        six_point_table: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        k: u32,
        a: u32,
        b: u32,
    },
    /// Audit a factorization file and check its product against the full twist.
    Verify { file: PathBuf },
    /// Chern numbers, signature and fundamental group.
    Chern {
        k: u32,
        a: u32,
        b: u32,
        /// Largest n for which n!-multiples are written out.
        #[arg(long, default_value_t = DEFAULT_EXPANSION_CAP)]
        cap: u64,
    },
    /// General type, spin, simple connectivity and signature sign.
    Classify { k: u32, a: u32, b: u32 },
    /// Compare Y_1(s, 2t) with Y_0(s+t, 2t).
    Pair { s: u32, t: u32 },
    /// List parameters in the given ranges satisfying every predicate.
    Scan {
        #[arg(long, value_parser = parse_range)]
        k: ParamRange,
        #[arg(long, value_parser = parse_range)]
        a: ParamRange,
        #[arg(long, value_parser = parse_range)]
        b: ParamRange,
        /// sc, gt, spin (negate with !), tau>0, tau=0, tau<0.
        #[arg(long = "where", value_delimiter = ',')]
        predicates: Vec<String>,
    },
    /// Reproduce a reference table.
    Table {
        #[arg(value_enum)]
        which: TableKind,
        #[arg(long, value_parser = parse_range)]
        k: Option<ParamRange>,
        #[arg(long, value_parser = parse_range)]
        a: Option<ParamRange>,
        #[arg(long, value_parser = parse_range)]
        b: Option<ParamRange>,
    },
}

/// `lo..hi` (inclusive) or a single value.
pub fn parse_range(s: &str) -> std::result::Result<ParamRange, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad bound {t:?}: {e}"));
    let r = match s.split_once("..") {
        Some((lo, hi)) => ParamRange::new(num(lo)?, num(hi.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            ParamRange::new(v, v)
        }
    };
    if r.is_empty() {
        return Err(format!("empty range {s:?}"));
    }
    Ok(r)
}

/// Runs with the process's standard streams.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_INVALID, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, message: message.into() }
}

/// Result of a subcommand: the rendered document plus the exit code.
struct Output {
    body: String,
    code: i32,
    /// Diagnostics for standard error.
    note: Option<String>,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, code: EXIT_OK, note: None }
    }
}

/// `argv[0]` is the program name.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_INVALID
                }
            };
        }
    };
    let result = dispatch(&cli).and_then(|o| {
        emit(&cli, &o.body, out)?;
        Ok(o)
    });
    match result {
        Ok(o) => {
            if let Some(note) = o.note {
                let _ = writeln!(err, "{note}");
            }
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(cli: &Cli, body: &str, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    match &cli.output {
        Some(path) => {
            let path = resolve_output(path);
            std::fs::write(&path, body).map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))
        }
        None => out.write_all(body.as_bytes()).map_err(|e| invalid(format!("cannot write output: {e}"))),
    }
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn dispatch(cli: &Cli) -> std::result::Result<Output, Failure> {
    let f = cli.format;
    match &cli.command {
        Command::Degenerate { k, a, b } => degenerate(f, *k, *a, *b),
        Command::Factorize { level, three_point_mode, six_point_table, seed, k, a, b } => {
            let complex = degeneration::build_complex(*k, *a, *b)?;
            match level {
                Level::Degenerate => factorize_degenerate(f, &complex, *seed),
                Level::Regenerated => {
                    let table = six_point_table.as_deref().map(read_table).transpose()?;
                    let mode = match three_point_mode {
                        ModeArg::Literal => Some(ThreePointMode::Literal),
                        ModeArg::Cubed => Some(ThreePointMode::Cubed),
                        ModeArg::Auto => None,
                    };
                    factorize_regenerated(f, &complex, mode, table.as_ref())
                }
            }
        }
        Command::Verify { file } => verify(f, file),
        Command::Chern { k, a, b, cap } => chern(f, SurfaceParams::new(*k, *a, *b)?, *cap),
        Command::Classify { k, a, b } => classify(f, SurfaceParams::new(*k, *a, *b)?),
        Command::Pair { s, t } => pair(f, *s, *t),
        Command::Scan { k, a, b, predicates } => {
            let preds = predicates.iter().map(|s| Predicate::parse(s)).collect::<Result<Vec<_>, _>>()?;
            scan(f, *k, *a, *b, &preds)
        }
        Command::Table { which, k, a, b } => table(f, *which, *k, *a, *b),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

fn csv_doc(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn kind_name(kind: &VertexKind) -> String {
    match kind {
        VertexKind::NonsingularOffS => "nonsingular".into(),
        VertexKind::NonsingularOnS => "on-branch".into(),
        VertexKind::ThreePoint { .. } => "3-point".into(),
        VertexKind::SixPoint { six_type, .. } => format!("6-point/{six_type}"),
        VertexKind::Other { planes, lines } => format!("other({planes}p,{lines}l)"),
    }
}

fn degenerate(f: Format, k: u32, a: u32, b: u32) -> std::result::Result<Output, Failure> {
    let c = degeneration::build_complex(k, a, b)?;
    let classes = c.classify_vertices();
    let body = match f {
        Format::Json => json(&c.to_json()),
        Format::Csv => csv_doc(
            &["vertex", "x", "y", "kind", "lines", "planes"],
            c.vertices()
                .iter()
                .zip(&classes)
                .map(|(v, cl)| {
                    let lines: Vec<String> = cl.incident_lines.iter().map(|l| l.to_string()).collect();
                    vec![
                        v.id.to_string(),
                        v.coord.0.to_string(),
                        v.coord.1.to_string(),
                        kind_name(&cl.kind),
                        lines.join(" "),
                        cl.planes.to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let n = c.counts();
            let mut s = String::new();
            let _ = writeln!(s, "k = {k}, a = {a}, b = {b}");
            let _ = writeln!(s, "planes {}, lines {}, vertices {}", n.planes, n.lines, n.vertices);
            let special: Vec<String> = c.special_vertices().iter().map(|v| format!("a{v}")).collect();
            let _ = writeln!(s, "special vertices: {}", special.join(" "));
            s.push('\n');
            s.push_str(&c.render_ascii());
            s.push('\n');
            for (v, cl) in c.vertices().iter().zip(&classes) {
                let lines: Vec<String> = cl.incident_lines.iter().map(|l| format!("L{l}")).collect();
                let _ = writeln!(
                    s,
                    "a{:<4} ({}, {})  {:<14} {}",
                    v.id,
                    v.coord.0,
                    v.coord.1,
                    kind_name(&cl.kind),
                    lines.join(" ")
                );
            }
            s
        }
    };
    Ok(Output::ok(body))
}

/// The JSON document written by `factorize` and read by `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDocument {
    pub params: degeneration::Params,
    pub level: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub factorization: Factorization,
    pub audit: AuditReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regeneration: Option<RegenerationAudit>,
}

fn source_name(s: &Source) -> String {
    match s {
        Source::Vertex(v) => format!("a{v}"),
        Source::Pair(i, j) => format!("L{i}|L{j}"),
        Source::Crossing(lines) => {
            let l: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
            format!("x{{{}}}", l.join(","))
        }
    }
}

fn nu_name(f: &crate::factorization::Factor) -> String {
    match f.meta.nu.exponent() {
        Some(e) => e.to_string(),
        None => "twist".into(),
    }
}

fn render_factorization(f: Format, doc: &FactorizationDocument) -> String {
    match f {
        Format::Json => json(doc),
        Format::Csv => csv_doc(
            &["index", "source", "nu", "degree", "label", "word"],
            doc.factorization
                .factors
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    vec![
                        (i + 1).to_string(),
                        source_name(&x.meta.source),
                        nu_name(x),
                        x.meta.claimed_degree.to_string(),
                        x.meta.label.clone(),
                        x.word.as_ref().map(|w| w.to_string()).unwrap_or_default(),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let mut s = String::new();
            let p = doc.params;
            let _ = writeln!(s, "{} factorization, k = {}, a = {}, b = {}", doc.level, p.k, p.a, p.b);
            let _ =
                writeln!(s, "strands {}, factors {}", doc.factorization.strand_count, doc.factorization.factors.len());
            for (i, x) in doc.factorization.factors.iter().enumerate() {
                let word = x.word.as_ref().map(|w| w.to_string()).unwrap_or_else(|| "(placeholder)".into());
                let _ = writeln!(
                    s,
                    "{:>4}  {:<10} nu={:<5} deg={:<4} {}",
                    i + 1,
                    source_name(&x.meta.source),
                    nu_name(x),
                    x.meta.claimed_degree,
                    word
                );
            }
            s.push_str(&render_audit(&doc.audit));
            if let Some(r) = &doc.regeneration {
                let _ = writeln!(
                    s,
                    "3-point mode: {} (3-points {}, 6-points {})",
                    r.selected_mode, r.three_points, r.six_points
                );
                let _ = writeln!(s, "residual with {} 3-points: {}", r.other_mode, r.other_residual);
                let _ = writeln!(s, "every disjoint pair covered once: {}", yes(r.pairs_covered_once));
            }
            s
        }
    }
}

fn render_audit(a: &AuditReport) -> String {
    format!(
        "degree: expected {}, total {}, residual {}, placeholders {}, mismatched {}\n",
        a.expected,
        a.total,
        a.residual,
        a.placeholders,
        a.mismatched_factors.len()
    )
}

fn factorize_degenerate(f: Format, c: &DegenerationComplex, seed: u64) -> std::result::Result<Output, Failure> {
    let induced = degeneration::induced_arrangement(c, seed)?;
    let fac = arrangement::arrangement_monodromy_factorization(&induced.arrangement)?;
    let audit = fac.audit();
    let doc = FactorizationDocument {
        params: c.params(),
        level: "degenerate".into(),
        seed: Some(induced.seed),
        factorization: fac,
        audit,
        regeneration: None,
    };
    let code = if doc.audit.passed { EXIT_OK } else { EXIT_VERIFY };
    Ok(Output { body: render_factorization(f, &doc), code, note: None })
}

fn factorize_regenerated(
    f: Format,
    c: &DegenerationComplex,
    mode: Option<ThreePointMode>,
    table: Option<&SixPointTable>,
) -> std::result::Result<Output, Failure> {
    let (fac, audit) = regeneration::regenerate(c, &RegenerationOptions { mode, six_point_table: table })?;
    let doc = FactorizationDocument {
        params: c.params(),
        level: "regenerated".into(),
        seed: None,
        audit: audit.report.clone(),
        factorization: fac,
        regeneration: Some(audit),
    };
    let residual = doc.audit.residual;
    let (code, note) = if doc.audit.passed {
        (EXIT_OK, None)
    } else {
        (EXIT_VERIFY, Some(format!("degree audit residual {residual}")))
    };
    Ok(Output { body: render_factorization(f, &doc), code, note })
}

fn read_table(path: &Path) -> std::result::Result<SixPointTable, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    Ok(SixPointTable::from_json(&text)?)
}

#[derive(Serialize)]
struct VerifyReport {
    audit: AuditReport,
    complete: bool,
    product_is_full_twist: bool,
    passed: bool,
}

fn verify(f: Format, path: &Path) -> std::result::Result<Output, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    let fac = match serde_json::from_str::<FactorizationDocument>(&text) {
        Ok(doc) => doc.factorization,
        Err(_) => serde_json::from_str::<Factorization>(&text)
            .map_err(|e| invalid(format!("{} is not a factorization: {e}", path.display())))?,
    };
    fac.validate()?;
    let audit = fac.audit();
    let product = audit.passed && fac.verify_product_is_full_twist();
    let report = VerifyReport { complete: fac.complete, product_is_full_twist: product, passed: product, audit };
    let body = match f {
        Format::Json => json(&report),
        Format::Csv => csv_doc(
            &["strands", "factors", "expected", "total", "residual", "product_is_full_twist"],
            vec![vec![
                fac.strand_count.to_string(),
                fac.factors.len().to_string(),
                report.audit.expected.to_string(),
                report.audit.total.to_string(),
                report.audit.residual.to_string(),
                product.to_string(),
            ]],
        ),
        Format::Text => {
            let mut s = render_audit(&report.audit);
            let _ = writeln!(s, "complete: {}", yes(report.complete));
            let _ = writeln!(s, "product is the full twist: {}", yes(product));
            s
        }
    };
    let (code, note) = if report.passed {
        (EXIT_OK, None)
    } else if report.audit.residual != 0 {
        (EXIT_VERIFY, Some(format!("degree audit residual {}", report.audit.residual)))
    } else {
        (EXIT_VERIFY, Some("product differs from the full twist".into()))
    };
    Ok(Output { body, code, note })
}

#[derive(Serialize)]
struct ChernReport {
    params: SurfaceParams,
    chern: invariants::ChernPair,
    signature: invariants::ExactValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    signature_value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pi1: Option<invariants::GroupDescriptor>,
}

fn scaled(coeff: &num_rational::BigRational, n: u64, value: Option<&num_bigint::BigInt>) -> String {
    match value {
        Some(v) => v.to_string(),
        None if num_traits::Zero::is_zero(coeff) => "0".into(),
        None => format!("{coeff} * {n}!"),
    }
}

fn chern(f: Format, p: SurfaceParams, cap: u64) -> std::result::Result<Output, Failure> {
    let c = invariants::chern_y(p)?.expand(cap);
    let tau = invariants::signature(p)?;
    let tau_value = tau.value(cap);
    let pi1 = if p.a >= 1 { Some(invariants::pi1(p)?) } else { None };
    let n = c.factorial_index;
    let body = match f {
        Format::Json => json(&ChernReport {
            params: p,
            signature_value: tau_value.as_ref().map(|v| v.to_string()),
            chern: c,
            signature: tau,
            pi1,
        }),
        Format::Csv => csv_doc(
            &["k", "a", "b", "n", "c1sq_coeff", "c2_coeff", "c1sq", "c2", "tau_coeff", "tau", "pi1"],
            vec![vec![
                p.k.to_string(),
                p.a.to_string(),
                p.b.to_string(),
                n.to_string(),
                c.c1sq_coeff.to_string(),
                c.c2_coeff.to_string(),
                c.c1sq.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                c.c2.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                tau.coeff.to_string(),
                tau_value.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                pi1.map(|g| g.to_string()).unwrap_or_default(),
            ]],
        ),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "k = {}, a = {}, b = {}, n = {n}", p.k, p.a, p.b);
            let _ = writeln!(s, "c1^2 = {}", scaled(&c.c1sq_coeff, n, c.c1sq.as_ref()));
            let _ = writeln!(s, "c2 = {}", scaled(&c.c2_coeff, n, c.c2.as_ref()));
            let _ = writeln!(s, "tau = {}", scaled(&tau.coeff, n, tau_value.as_ref()));
            if let Some(r) = c.ratio() {
                let _ = writeln!(s, "c1^2/c2 = {r:.6}");
            }
            if let Some(g) = pi1 {
                let _ = writeln!(s, "pi1 = {g}");
            }
            s
        }
    };
    Ok(Output::ok(body))
}

fn classification_row(c: &invariants::Classification) -> Vec<String> {
    vec![
        c.params.k.to_string(),
        c.params.a.to_string(),
        c.params.b.to_string(),
        c.general_type.to_string(),
        c.spin.to_string(),
        c.simply_connected.to_string(),
        c.signature_sign.to_string(),
        c.checks.branch_degree.to_string(),
        c.is_consistent().to_string(),
    ]
}

const CLASSIFICATION_HEADER: [&str; 9] =
    ["k", "a", "b", "general_type", "spin", "simply_connected", "signature_sign", "m", "consistent"];

fn sign_word(s: i8) -> &'static str {
    match s {
        1 => "positive",
        0 => "zero",
        _ => "negative",
    }
}

fn classification_line(c: &invariants::Classification) -> String {
    let p = c.params;
    format!(
        "({}, {}, {})  gt={} spin={} sc={} tau {}{}\n",
        p.k,
        p.a,
        p.b,
        yes(c.general_type),
        yes(c.spin),
        yes(c.simply_connected),
        sign_word(c.signature_sign),
        if c.is_consistent() { "" } else { "  [cross-check differs]" }
    )
}

fn classify(f: Format, p: SurfaceParams) -> std::result::Result<Output, Failure> {
    let c = invariants::classify(p)?;
    let body = match f {
        Format::Json => json(&c),
        Format::Csv => csv_doc(&CLASSIFICATION_HEADER, vec![classification_row(&c)]),
        Format::Text => {
            let mut s = String::new();
            let ch = &c.checks;
            let _ = writeln!(s, "k = {}, a = {}, b = {}, m = {}", p.k, p.a, p.b, ch.branch_degree);
            let _ = writeln!(s, "general type: {} (m > 6: {})", yes(c.general_type), yes(ch.general_type_by_degree));
            let _ = writeln!(s, "spin: {} (m mod 4 != 0: {})", yes(c.spin), yes(ch.spin_by_degree));
            let _ = writeln!(s, "simply connected: {}", yes(c.simply_connected));
            let _ = writeln!(
                s,
                "signature: {} (positivity table: {})",
                sign_word(c.signature_sign),
                yes(ch.positive_by_table)
            );
            let _ = writeln!(s, "consistent: {}", yes(c.is_consistent()));
            s
        }
    };
    Ok(Output::ok(body))
}

fn pair(f: Format, s: u32, t: u32) -> std::result::Result<Output, Failure> {
    let r = invariants::equal_chern_pair(s, t)?;
    let body = match f {
        Format::Json => json(&r),
        Format::Csv => csv_doc(
            &["s", "t", "n", "c1sq_equal", "c2_equal", "first_pi1", "second_pi1", "expected_rank"],
            vec![vec![
                s.to_string(),
                t.to_string(),
                r.first_chern.factorial_index.to_string(),
                r.c1sq_equal.to_string(),
                r.c2_equal.to_string(),
                r.first_pi1.to_string(),
                r.second_pi1.to_string(),
                r.expected_rank.to_string(),
            ]],
        ),
        Format::Text => {
            let mut out = String::new();
            let n = r.first_chern.factorial_index;
            let _ = writeln!(out, "{} vs {}, n = {n}", r.first, r.second);
            let _ = writeln!(out, "c1^2: {} * {n}! vs {} * {n}!", r.first_chern.c1sq_coeff, r.second_chern.c1sq_coeff);
            let _ = writeln!(out, "c2: {} * {n}! vs {} * {n}!", r.first_chern.c2_coeff, r.second_chern.c2_coeff);
            let _ = writeln!(out, "equal: c1^2 {}, c2 {}", yes(r.c1sq_equal), yes(r.c2_equal));
            let _ = writeln!(out, "pi1: {} vs {}", r.first_pi1, r.second_pi1);
            let _ = writeln!(
                out,
                "closed forms in s, t: c1^2 {}, c2 {}",
                if r.closed_form_c1sq_agrees { "agrees" } else { "differs" },
                if r.closed_form_c2_agrees { "agrees" } else { "differs" }
            );
            out
        }
    };
    Ok(Output::ok(body))
}

fn classifications(f: Format, rows: &[invariants::Classification]) -> String {
    match f {
        Format::Json => json(&rows),
        Format::Csv => csv_doc(&CLASSIFICATION_HEADER, rows.iter().map(classification_row).collect()),
        Format::Text => rows.iter().map(classification_line).collect(),
    }
}

fn scan(
    f: Format,
    k: ParamRange,
    a: ParamRange,
    b: ParamRange,
    preds: &[Predicate],
) -> std::result::Result<Output, Failure> {
    let rows = invariants::scan(k, a, b, preds)?;
    Ok(Output::ok(classifications(f, &rows)))
}

#[derive(Serialize)]
struct PositivityComparison {
    params: SurfaceParams,
    signature_sign: i8,
    in_table: bool,
    agrees: bool,
}

#[derive(Serialize)]
struct BranchRow {
    params: SurfaceParams,
    #[serde(flatten)]
    invariants: invariants::BranchInvariants,
}

fn table(
    f: Format,
    which: TableKind,
    k: Option<ParamRange>,
    a: Option<ParamRange>,
    b: Option<ParamRange>,
) -> std::result::Result<Output, Failure> {
    match which {
        TableKind::Positivity => {
            let (k, a, b) = (
                k.unwrap_or(ParamRange::new(0, 4)),
                a.unwrap_or(ParamRange::new(1, 10)),
                b.unwrap_or(ParamRange::new(4, 8)),
            );
            let mut rows = Vec::new();
            for k in k.iter() {
                for a in a.iter().filter(|&a| a >= 1) {
                    for b in b.iter().filter(|&b| b >= 1) {
                        let p = SurfaceParams::new(k, a, b)?;
                        let sign = invariants::classify(p)?.signature_sign;
                        let in_table = invariants::positive_signature_table(p);
                        rows.push(PositivityComparison {
                            params: p,
                            signature_sign: sign,
                            in_table,
                            agrees: in_table == (sign > 0),
                        });
                    }
                }
            }
            let body = match f {
                Format::Json => json(&serde_json::json!({
                    "conditions": invariants::POSITIVITY_TABLE.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    "comparison": rows,
                })),
                Format::Csv => csv_doc(
                    &["k", "a", "b", "signature_sign", "in_table", "agrees"],
                    rows.iter()
                        .map(|r| {
                            vec![
                                r.params.k.to_string(),
                                r.params.a.to_string(),
                                r.params.b.to_string(),
                                r.signature_sign.to_string(),
                                r.in_table.to_string(),
                                r.agrees.to_string(),
                            ]
                        })
                        .collect(),
                ),
                Format::Text => {
                    let mut s = String::from("tau > 0 when a >= 1 and one of:\n");
                    for r in &invariants::POSITIVITY_TABLE {
                        let _ = writeln!(s, "  {r}");
                    }
                    let differ: Vec<&PositivityComparison> = rows.iter().filter(|r| !r.agrees).collect();
                    let _ = writeln!(s, "checked {} parameter sets, {} differ", rows.len(), differ.len());
                    for r in differ {
                        let p = r.params;
                        let _ = writeln!(
                            s,
                            "  ({}, {}, {}) tau {}, in table: {}",
                            p.k,
                            p.a,
                            p.b,
                            sign_word(r.signature_sign),
                            yes(r.in_table)
                        );
                    }
                    s
                }
            };
            Ok(Output::ok(body))
        }
        TableKind::Examples => {
            let mut rows = Vec::new();
            for (k, a, b) in [(0, 7, 4), (1, 5, 4), (2, 3, 4), (3, 1, 4), (1, 3, 5), (1, 3, 6), (1, 3, 7), (1, 3, 8)] {
                rows.push(invariants::classify(SurfaceParams::new(k, a, b)?)?);
            }
            Ok(Output::ok(classifications(f, &rows)))
        }
        TableKind::Branch => {
            let (k, a, b) = (
                k.unwrap_or(ParamRange::new(1, 1)),
                a.unwrap_or(ParamRange::new(0, 3)),
                b.unwrap_or(ParamRange::new(1, 4)),
            );
            let mut rows = Vec::new();
            for k in k.iter() {
                for a in a.iter().filter(|&a| a >= 1 || k == 1) {
                    for b in b.iter().filter(|&b| b >= 1) {
                        let p = SurfaceParams::new(k, a, b)?;
                        rows.push(BranchRow { params: p, invariants: invariants::branch_invariants(p)? });
                    }
                }
            }
            let body = match f {
                Format::Json => json(&rows),
                Format::Csv => csv_doc(
                    &["k", "a", "b", "n", "m", "mu", "phi", "d"],
                    rows.iter()
                        .map(|r| {
                            let v = &r.invariants;
                            vec![
                                r.params.k.to_string(),
                                r.params.a.to_string(),
                                r.params.b.to_string(),
                                v.n.to_string(),
                                v.m.to_string(),
                                v.mu.to_string(),
                                v.phi.to_string(),
                                v.d.map(|d| d.to_string()).unwrap_or_default(),
                            ]
                        })
                        .collect(),
                ),
                Format::Text => rows
                    .iter()
                    .map(|r| {
                        let (p, v) = (r.params, &r.invariants);
                        let d = v.d.map(|d| format!(" d={d}")).unwrap_or_default();
                        format!("({}, {}, {})  n={} m={} mu={} phi={}{}\n", p.k, p.a, p.b, v.n, v.m, v.mu, v.phi, d)
                    })
                    .collect(),
            };
            Ok(Output::ok(body))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("hirzebruch").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").unwrap(), ParamRange::new(3, 3));
        assert_eq!(parse_range("1..8").unwrap(), ParamRange::new(1, 8));
        assert_eq!(parse_range("1..=8").unwrap(), ParamRange::new(1, 8));
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn zero_signature_in_text() {
        let (code, out, _) = call(&["chern", "0", "7", "4"]);
        assert_eq!(code, 0);
        assert!(out.contains("tau = 0\n"), "{out}");
    }

    #[test]
    fn bad_input_exit_codes() {
        assert_eq!(call(&["chern", "2", "0", "3"]).0, EXIT_INVALID);
        assert_eq!(call(&["frobnicate"]).0, EXIT_INVALID);
        assert_eq!(call(&["chern", "1", "1", "1", "--bogus"]).0, EXIT_INVALID);
        assert_eq!(call(&["pair", "2", "1"]).0, EXIT_INVALID);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn table_aliases() {
        let (code, out, _) = call(&["table", "thm5.8"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 8);
        assert_eq!(call(&["table", "lemma6.1", "--format", "csv"]).0, 0);
    }
}
