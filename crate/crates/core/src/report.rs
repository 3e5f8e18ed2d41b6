//! Text and structured (JSON) renderings of verification reports.
//!
//! Both renderings are deterministic. The structured form stores classes
//! as canonical strings and parses back into an equal report.

use serde::{Deserialize, Serialize};

use crate::chow::{ChowElement, MultiProjectiveSpace};
use crate::error::{Error, Result};
use crate::residue::{Check, TraceEntry, Verdict, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub name: String,
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub check: Check,
    pub parameter: Option<i64>,
    pub ambient: Vec<u32>,
    pub dim_x: u32,
    pub codim_k: u32,
    pub sign: i32,
    pub lhs_theorem: String,
    pub lhs_proof_form: String,
    pub rhs: Option<String>,
    pub verdict: Verdict,
    pub trace: Vec<TraceDoc>,
    pub notes: Vec<String>,
}

impl From<&VerificationReport> for ReportDoc {
    fn from(r: &VerificationReport) -> Self {
        ReportDoc {
            check: r.check,
            parameter: r.parameter,
            ambient: r.ambient.factor_dims().to_vec(),
            dim_x: r.dim_x,
            codim_k: r.codim_k,
            sign: r.sign,
            lhs_theorem: r.lhs_theorem.to_string(),
            lhs_proof_form: r.lhs_proof_form.to_string(),
            rhs: r.rhs.as_ref().map(|c| c.to_string()),
            verdict: r.verdict,
            trace: r.trace.iter().map(|t| TraceDoc { name: t.name.clone(), class: t.class.to_string() }).collect(),
            notes: r.notes.clone(),
        }
    }
}

impl ReportDoc {
    pub fn into_report(self) -> Result<VerificationReport> {
        let y = MultiProjectiveSpace::new(self.ambient)?;
        let cls = |s: &str| ChowElement::parse(&y, s);
        Ok(VerificationReport {
            check: self.check,
            parameter: self.parameter,
            dim_x: self.dim_x,
            codim_k: self.codim_k,
            sign: self.sign,
            lhs_theorem: cls(&self.lhs_theorem)?,
            lhs_proof_form: cls(&self.lhs_proof_form)?,
            rhs: self.rhs.as_deref().map(cls).transpose()?,
            verdict: self.verdict,
            trace: self
                .trace
                .iter()
                .map(|t| Ok(TraceEntry { name: t.name.clone(), class: cls(&t.class)? }))
                .collect::<Result<_>>()?,
            notes: self.notes,
            ambient: y,
        })
    }
}

/// Human-readable block for one report.
pub fn render_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let param = r.parameter.map(|l| format!(" [L = {l}]")).unwrap_or_default();
    out.push_str(&format!("== {} check{param} on {}: n = {}, k = {} ==\n", r.check, r.ambient, r.dim_x, r.codim_k));
    for t in &r.trace {
        out.push_str(&format!("{} = {}\n", t.name, t.class));
    }
    out.push_str(&format!("LHS = {}\n", r.lhs_theorem));
    out.push_str(&format!("LHS (proof form) = {}\n", r.lhs_proof_form));
    match &r.rhs {
        Some(rhs) => out.push_str(&format!("RHS = {rhs}\n")),
        None => out.push_str("RHS: (not provided)\n"),
    }
    if r.check != Check::Ampleness {
        let sign = if r.sign == 1 { "+" } else { "-" };
        out.push_str(&format!("identity: LHS = {sign}RHS\n"));
    }
    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out.push_str(&format!("verdict: {}\n", r.verdict));
    out
}

pub fn render_structured(r: &VerificationReport) -> String {
    serde_json::to_string_pretty(&ReportDoc::from(r)).expect("report serializes")
}

pub fn render_report(r: &VerificationReport, fmt: Format) -> String {
    match fmt {
        Format::Text => render_text(r),
        Format::Structured => render_structured(r),
    }
}

pub fn parse_structured(src: &str) -> Result<VerificationReport> {
    let doc: ReportDoc = serde_json::from_str(src).map_err(|e| Error::Invalid(format!("structured report: {e}")))?;
    doc.into_report()
}
