//! The CLI driver: runs the selected checks over a scenario's sweep and
//! renders one document per invocation.
//!
//! Exit codes: 0 when every executed check is verified, 1 on a mismatch
//! or a missing right-hand side, 2 on parse or configuration errors, 3
//! when two independent computations of the same class disagree.

use std::path::PathBuf;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Error;
use crate::local::{
    brunella_index, colength, jacobian_residue, milnor_number, LocalIdeal, LocalPoly, VectorFieldGerm,
    DEFAULT_MAX_DEGREE,
};
use crate::report::{render_text, Format, ReportDoc};
use crate::residue::{run_check, Check, Scenario, Verdict, VerificationReport};
use crate::scenario::{LocalBlock, ParseError, ScenarioFile, Sweep};

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CROSS_CHECK: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckSelector {
    Theorem,
    Tangency,
    Izawa,
    Ampleness,
    All,
}

impl CheckSelector {
    fn single(self) -> Option<Check> {
        match self {
            CheckSelector::Theorem => Some(Check::Theorem),
            CheckSelector::Tangency => Some(Check::Tangency),
            CheckSelector::Izawa => Some(Check::Izawa),
            CheckSelector::Ampleness => Some(Check::Ampleness),
            CheckSelector::All => None,
        }
    }

    fn name(self) -> &'static str {
        self.single().map_or("all", Check::name)
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: PathBuf,
    pub check: CheckSelector,
    pub sweep: Option<Sweep>,
    pub format: Format,
    pub max_degree: u32,
}

impl RunConfig {
    pub fn new(scenario: impl Into<PathBuf>) -> Self {
        Self {
            scenario: scenario.into(),
            check: CheckSelector::All,
            sweep: None,
            format: Format::Text,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub output: String,
}

/// Cross-check of the local blocks certifying one tangency entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalCheck {
    pub parameter: Option<i64>,
    pub entry: String,
    pub multiplicity: String,
    pub count: String,
    pub values: Vec<LocalValue>,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalValue {
    pub label: String,
    pub kind: String,
    pub points: u64,
    pub value: Option<u64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct Certification {
    degree_bound: Option<u32>,
    values: u64,
    certified: bool,
    line: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct ErrorDoc {
    kind: &'static str,
    line: Option<usize>,
    col: Option<usize>,
    message: String,
}

#[derive(Debug, Clone, Serialize)]
struct RunDoc {
    tool: &'static str,
    version: &'static str,
    scenario: String,
    check: &'static str,
    sweep: Option<[i64; 2]>,
    reports: Vec<ReportDoc>,
    local: Vec<LocalCheck>,
    summary: Vec<String>,
    certification: Option<Certification>,
    error: Option<ErrorDoc>,
    exit_code: i32,
}

struct Run {
    doc: RunDoc,
    text: String,
}

impl Run {
    fn new(name: &str, config: &RunConfig) -> Self {
        Run {
            doc: RunDoc {
                tool: "foliares",
                version: env!("CARGO_PKG_VERSION"),
                scenario: name.to_string(),
                check: config.check.name(),
                sweep: None,
                reports: Vec::new(),
                local: Vec::new(),
                summary: Vec::new(),
                certification: None,
                error: None,
                exit_code: EXIT_VERIFIED,
            },
            text: String::new(),
        }
    }

    fn fail(mut self, code: i32, err: ErrorDoc, format: Format) -> RunOutcome {
        let prefix = match (err.line, err.col) {
            (Some(l), Some(c)) => format!("{}:{l}:{c}: ", self.doc.scenario),
            _ => format!("{}: ", self.doc.scenario),
        };
        self.text.push_str(&format!("error: {prefix}{}\n", err.message));
        self.doc.error = Some(err);
        self.doc.exit_code = code;
        self.finish(format)
    }

    fn finish(self, format: Format) -> RunOutcome {
        let output = match format {
            Format::Text => self.text,
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(&self.doc).expect("run document serializes");
                s.push('\n');
                s
            }
        };
        RunOutcome { exit_code: self.doc.exit_code, output }
    }
}

fn parse_error(e: ParseError) -> ErrorDoc {
    ErrorDoc { kind: "parse", line: Some(e.line), col: Some(e.col), message: e.message }
}

fn compute_error(e: Error) -> (i32, ErrorDoc) {
    match e {
        Error::CrossCheck(m) => (EXIT_CROSS_CHECK, ErrorDoc { kind: "cross_check", line: None, col: None, message: m }),
        other => (EXIT_PARSE, ErrorDoc { kind: "invalid", line: None, col: None, message: other.to_string() }),
    }
}

/// Reads the scenario file and runs it.
pub fn run(config: &RunConfig) -> RunOutcome {
    let name = config.scenario.display().to_string();
    match std::fs::read_to_string(&config.scenario) {
        Ok(src) => run_source(&src, &name, config),
        Err(e) => Run::new(&name, config).fail(
            EXIT_PARSE,
            ErrorDoc { kind: "io", line: None, col: None, message: format!("cannot read scenario: {e}") },
            config.format,
        ),
    }
}

fn checks_for(selector: CheckSelector, sc: &Scenario) -> Result<Vec<Check>, String> {
    match selector.single() {
        Some(c) if c.applies_to(sc) => Ok(vec![c]),
        Some(c) => Err(format!("check '{c}' does not apply to this scenario: {}", requirement(c))),
        None => {
            let all: Vec<Check> = Check::ALL.into_iter().filter(|c| c.applies_to(sc)).collect();
            if all.is_empty() {
                Err("no check applies to this scenario".into())
            } else {
                Ok(all)
            }
        }
    }
}

fn requirement(c: Check) -> &'static str {
    match c {
        Check::Theorem => "needs a complete intersection X (no splitting-only data)",
        Check::Tangency => "needs a complete intersection with dim X = k",
        Check::Izawa => "needs a complete intersection with k = 1",
        Check::Ampleness => "needs dim X = k",
    }
}

fn evaluate_blocks(blocks: &[LocalBlock], max_degree: u32) -> Vec<LocalValue> {
    blocks
        .iter()
        .map(|b| {
            let (value, error) = match b.kind.evaluate(b.max_degree.unwrap_or(max_degree)) {
                Ok(v) => (Some(v), None),
                Err(e) => (None, Some(e.to_string())),
            };
            LocalValue { label: b.label.clone(), kind: b.kind.name().to_string(), points: b.points, value, error }
        })
        .collect()
}

/// Each certifying germ must have index equal to the entry's multiplicity,
/// the germs must account for every point of the entry, and any `expect`
/// value must match.
fn local_checks(file: &ScenarioFile, values: &[LocalValue], l: Option<i64>) -> Vec<LocalCheck> {
    let mut out = Vec::new();
    for label in file.tangency_labels() {
        let members: Vec<(&LocalBlock, &LocalValue)> = file
            .local_blocks()
            .iter()
            .zip(values)
            .filter(|(b, _)| b.certifies.as_deref() == Some(label.as_str()))
            .collect();
        if members.is_empty() {
            continue;
        }
        let (mult, count) = file.tangency_entry(&label, l).expect("validated entry");
        let mut problems = Vec::new();
        let mut points = 0u64;
        for (b, v) in &members {
            points += b.points;
            match (&v.value, &v.error) {
                (Some(x), _) if BigInt::from(*x) != mult => {
                    problems.push(format!("germ {} has index {x}, entry multiplicity is {mult}", b.label))
                }
                (None, Some(e)) => problems.push(format!("germ {}: {e}", b.label)),
                _ => {}
            }
        }
        if BigInt::from(points) != count {
            problems.push(format!("germs cover {points} point(s), entry count is {count}"));
        }
        let sum: u64 = members.iter().filter_map(|(b, v)| v.value.map(|x| x * b.points)).sum();
        let verdict = if problems.is_empty() { Verdict::Verified } else { Verdict::Mismatch };
        let detail = if problems.is_empty() {
            format!(
                "{} germ(s) covering {points} point(s), local indices sum to {sum} = count * multiplicity",
                members.len()
            )
        } else {
            problems.join("; ")
        };
        out.push(LocalCheck {
            parameter: l,
            entry: label,
            multiplicity: mult.to_string(),
            count: count.to_string(),
            values: members.iter().map(|(_, v)| (*v).clone()).collect(),
            verdict,
            detail,
        });
    }
    out
}

fn expect_checks(file: &ScenarioFile, values: &[LocalValue]) -> Vec<LocalCheck> {
    file.local_blocks()
        .iter()
        .zip(values)
        .filter_map(|(b, v)| {
            let want = b.expect?;
            let ok = v.value == Some(want);
            Some(LocalCheck {
                parameter: None,
                entry: format!("{} (expect)", b.label),
                multiplicity: want.to_string(),
                count: b.points.to_string(),
                values: vec![v.clone()],
                verdict: if ok { Verdict::Verified } else { Verdict::Mismatch },
                detail: match (&v.value, &v.error) {
                    (Some(x), _) => format!("computed {x}, expected {want}"),
                    (None, Some(e)) => e.clone(),
                    _ => String::new(),
                },
            })
        })
        .collect()
}

fn render_local_check(c: &LocalCheck) -> String {
    let mut s = String::new();
    let param = c.parameter.map(|l| format!(" [L = {l}]")).unwrap_or_default();
    s.push_str(&format!("== local check{param}: {} ==\n", c.entry));
    for v in &c.values {
        match (&v.value, &v.error) {
            (Some(x), _) => s.push_str(&format!("{} ({}, {} point(s)) = {x}\n", v.label, v.kind, v.points)),
            (None, Some(e)) => s.push_str(&format!("{} ({}) failed: {e}\n", v.label, v.kind)),
            _ => {}
        }
    }
    s.push_str(&format!("note: {}\n", c.detail));
    s.push_str(&format!("verdict: {}\n", c.verdict));
    s
}

fn summary_line(l: Option<i64>, what: &str, verdict: Verdict) -> String {
    match l {
        Some(l) => format!("L = {l} {what}: {verdict}"),
        None => format!("{what}: {verdict}"),
    }
}

/// Runs already-loaded scenario text; `name` labels diagnostics.
pub fn run_source(src: &str, name: &str, config: &RunConfig) -> RunOutcome {
    let mut run = Run::new(name, config);
    let file = match ScenarioFile::parse_with_sweep(src, config.sweep) {
        Ok(f) => f,
        Err(e) => return run.fail(EXIT_PARSE, parse_error(e), config.format),
    };
    run.doc.sweep = file.sweep().map(|s| [s.start, s.end]);
    let params = file.parameter_values();
    let first = match file.instantiate(params[0]) {
        Ok(sc) => sc,
        Err(e) => return run.fail(EXIT_PARSE, parse_error(e), config.format),
    };
    let checks = match checks_for(config.check, &first) {
        Ok(c) => c,
        Err(m) => {
            return run.fail(EXIT_PARSE, ErrorDoc { kind: "config", line: None, col: None, message: m }, config.format)
        }
    };
    let with_local = config.check != CheckSelector::Ampleness && !file.local_blocks().is_empty();
    let local_values = if with_local { evaluate_blocks(file.local_blocks(), config.max_degree) } else { Vec::new() };

    let mut all_verified = true;
    let mut reports: Vec<VerificationReport> = Vec::new();
    for &l in &params {
        let sc = match file.instantiate(l) {
            Ok(sc) => sc,
            Err(e) => return run.fail(EXIT_PARSE, parse_error(e), config.format),
        };
        for &check in &checks {
            let mut report = match run_check(&sc, check) {
                Ok(r) => r,
                Err(e) => {
                    let (code, doc) = compute_error(e);
                    return run.fail(code, doc, config.format);
                }
            };
            report.parameter = l;
            all_verified &= report.verdict == Verdict::Verified;
            run.text.push_str(&render_text(&report));
            run.text.push('\n');
            run.doc.summary.push(summary_line(l, check.name(), report.verdict));
            run.doc.reports.push(ReportDoc::from(&report));
            reports.push(report);
        }
        if with_local {
            for c in local_checks(&file, &local_values, l) {
                all_verified &= c.verdict == Verdict::Verified;
                run.text.push_str(&render_local_check(&c));
                run.text.push('\n');
                run.doc.summary.push(summary_line(l, &format!("local {}", c.entry), c.verdict));
                run.doc.local.push(c);
            }
        }
    }
    if with_local {
        for c in expect_checks(&file, &local_values) {
            all_verified &= c.verdict == Verdict::Verified;
            run.text.push_str(&render_local_check(&c));
            run.text.push('\n');
            run.doc.summary.push(summary_line(None, &format!("local {}", c.entry), c.verdict));
            run.doc.local.push(c);
        }
    }

    if let (Some(sweep), true) = (file.sweep(), file.uses_parameter()) {
        let bound = file.parameter_degree_bound();
        let certified = all_verified && bound.is_some_and(|b| sweep.len() > u64::from(b));
        let line = match bound {
            Some(b) => format!(
                "identity in L: every coefficient of LHS - sign*RHS has degree <= {b} in L; {} value(s) swept, {}",
                sweep.len(),
                if certified {
                    "so the identity holds for every L"
                } else if all_verified {
                    "too few values to certify the identity in L"
                } else {
                    "not certified"
                }
            ),
            None => format!("identity in L: no polynomial degree bound (L-dependent repeat counts); {} value(s) checked individually", sweep.len()),
        };
        run.doc.certification = Some(Certification { degree_bound: bound, values: sweep.len(), certified, line });
    }

    run.text.push_str("== summary ==\n");
    for s in &run.doc.summary {
        run.text.push_str(s);
        run.text.push('\n');
    }
    if let Some(c) = &run.doc.certification {
        run.text.push_str(&c.line);
        run.text.push('\n');
    }
    run.doc.exit_code = if all_verified { EXIT_VERIFIED } else { EXIT_MISMATCH };
    run.text.push_str(&format!("exit: {}\n", run.doc.exit_code));
    run.finish(config.format)
}

/// A one-shot local computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalRequest {
    /// Colength of `;`-separated generators.
    Ideal(String),
    /// Milnor number of a polynomial.
    Milnor(String),
    /// Tangency index of a curve `f` with the vector field `a1; a2`.
    Brunella { curve: String, field: String },
    /// Intersection multiplicity of a square `;`-separated system.
    Residue(String),
}

fn local_value(req: &LocalRequest, max_degree: u32) -> crate::Result<u64> {
    match req {
        LocalRequest::Ideal(src) => colength(&LocalIdeal::parse(src, None)?, max_degree),
        LocalRequest::Milnor(src) => {
            let n = LocalPoly::max_var_index(src)?.max(1);
            milnor_number(&LocalPoly::parse(src, n)?, max_degree)
        }
        LocalRequest::Brunella { curve, field } => {
            let v = VectorFieldGerm::parse(field)?;
            brunella_index(&LocalPoly::parse(curve, v.nvars())?, &v, max_degree)
        }
        LocalRequest::Residue(src) => {
            let ideal = LocalIdeal::parse(src, None)?;
            jacobian_residue(ideal.generators(), max_degree)
        }
    }
}

/// Prints the integer on success. Malformed input exits 2; a germ whose
/// zero is not isolated within the degree budget exits 1.
pub fn run_local(req: &LocalRequest, max_degree: u32) -> RunOutcome {
    match local_value(req, max_degree) {
        Ok(v) => RunOutcome { exit_code: EXIT_VERIFIED, output: format!("{v}\n") },
        Err(e @ (Error::NotIsolated { .. } | Error::InvariantCurve)) => {
            RunOutcome { exit_code: EXIT_MISMATCH, output: format!("error: {e}\n") }
        }
        Err(e) => RunOutcome { exit_code: EXIT_PARSE, output: format!("error: {e}\n") },
    }
}
