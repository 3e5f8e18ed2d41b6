//! Scenario files: a line-oriented, sectioned text format.
//!
//! ```text
//! [ambient]
//! 3 1 1
//! [sweep]
//! 2..12
//! [x_defining]
//! (L, 0, 0)
//! (1, 1, 0)
//! [conormal]
//! (0, -2, 0)
//! (0, 0, -2)
//! [tangency S]
//! multiplicity = (L-1)^2
//! count = L
//! class = h1^3*h2
//! [local p]
//! kind = brunella
//! certifies = S
//! f = x2 - x1^2
//! v = 1; x1
//! ```
//!
//! Integer fields are arithmetic expressions in the parameter `L`
//! (`+ - * ^` and parentheses); classes use the `h1..hs` syntax of
//! [`ChowElement`]. A multidegree line may end in `^ count` to repeat it.
//! A `[tangency]` section without entries declares an empty tangency
//! locus. `[tangent_dist]` and `[normal_bundle]` give splitting types
//! directly for the ampleness check. `#` starts a comment.

mod parse;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub use parse::ParseError;
use parse::{degree_line, fields, key_value, sections, DegreeLine, Section, Span};

use crate::chow::{ChowElement, ClassContext, MultiDegree, MultiProjectiveSpace};
use crate::classes::SplitBundle;
use crate::expr::{Expr, IntContext};
use crate::local::{brunella_index, colength, jacobian_residue, milnor_number, LocalIdeal, LocalPoly, VectorFieldGerm};
use crate::residue::{Residue, Scenario, SplittingData, TangencyComponent};
use crate::Result;

/// Largest number of parameter values a sweep may cover.
pub const MAX_SWEEP_LEN: u64 = 10_000;

/// Inclusive integer range of values for `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sweep {
    pub start: i64,
    pub end: i64,
}

impl Sweep {
    pub fn new(start: i64, end: i64) -> std::result::Result<Self, String> {
        if start > end {
            return Err(format!("empty sweep {start}..{end}: the start exceeds the end"));
        }
        if (end as i128 - start as i128 + 1) as u128 > MAX_SWEEP_LEN as u128 {
            return Err(format!("sweep {start}..{end} covers more than {MAX_SWEEP_LEN} values"));
        }
        Ok(Self { start, end })
    }

    /// `A..B` or a single integer.
    pub fn parse(src: &str) -> std::result::Result<Self, String> {
        let int = |s: &str| s.trim().parse::<i64>().map_err(|_| format!("expected an integer, found '{}'", s.trim()));
        match src.split_once("..") {
            Some((a, b)) => Self::new(int(a)?, int(b)?),
            None => {
                let v = int(src)?;
                Self::new(v, v)
            }
        }
    }

    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.start..=self.end
    }

    pub fn len(&self) -> u64 {
        (self.end - self.start) as u64 + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ExprField {
    span: Span,
    expr: Expr,
}

impl ExprField {
    fn new(span: Span) -> std::result::Result<Self, ParseError> {
        let expr = span.expr()?;
        Ok(Self { span, expr })
    }

    fn int(&self, l: Option<i64>) -> std::result::Result<BigInt, ParseError> {
        self.expr.eval(&IntContext { param: l }).map_err(|e| self.span.map_error(e))
    }

    fn small(&self, l: Option<i64>, what: &str) -> std::result::Result<i64, ParseError> {
        self.int(l)?.to_i64().ok_or_else(|| self.span.error(format!("{what} does not fit in 64 bits")))
    }

    fn class(&self, y: &MultiProjectiveSpace, l: Option<i64>) -> std::result::Result<ChowElement, ParseError> {
        self.expr.eval(&ClassContext { space: y, param: l }).map_err(|e| self.span.map_error(e))
    }

    fn degree_in_param(&self) -> Option<u32> {
        self.expr.degree_in("L")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct DegreeSpec {
    line: Span,
    entries: Vec<ExprField>,
    repeat: Option<ExprField>,
}

impl DegreeSpec {
    fn from_line(d: DegreeLine) -> std::result::Result<Self, ParseError> {
        Ok(Self {
            line: d.line,
            entries: d.entries.into_iter().map(ExprField::new).collect::<std::result::Result<_, _>>()?,
            repeat: d.repeat.map(ExprField::new).transpose()?,
        })
    }

    fn fields(&self) -> impl Iterator<Item = &ExprField> {
        self.entries.iter().chain(self.repeat.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct TangencySpec {
    label: String,
    header: Span,
    multiplicity: ExprField,
    count: Option<ExprField>,
    class: ExprField,
}

/// What a `[local]` block computes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalKind {
    /// Colength of an arbitrary ideal.
    Colength(LocalIdeal),
    /// Milnor number of `f`; counts as a point residue.
    Milnor(LocalPoly),
    /// Tangency index of `{f = 0}` with the foliation of `v`.
    Brunella(LocalPoly, VectorFieldGerm),
    /// Intersection multiplicity of a square system; counts as a point
    /// residue.
    Residue(Vec<LocalPoly>),
}

impl LocalKind {
    pub fn name(&self) -> &'static str {
        match self {
            LocalKind::Colength(_) => "colength",
            LocalKind::Milnor(_) => "milnor",
            LocalKind::Brunella(..) => "brunella",
            LocalKind::Residue(_) => "residue",
        }
    }

    /// Whether the value enters the sum of point residues.
    pub fn is_point_residue(&self) -> bool {
        matches!(self, LocalKind::Milnor(_) | LocalKind::Residue(_))
    }

    pub fn evaluate(&self, max_degree: u32) -> Result<u64> {
        match self {
            LocalKind::Colength(i) => colength(i, max_degree),
            LocalKind::Milnor(f) => milnor_number(f, max_degree),
            LocalKind::Brunella(f, v) => brunella_index(f, v, max_degree),
            LocalKind::Residue(g) => jacobian_residue(g, max_degree),
        }
    }

    fn residue(&self, max_degree: u32) -> Option<Residue> {
        let generators = match self {
            LocalKind::Milnor(f) => f.gradient(),
            LocalKind::Residue(g) => g.clone(),
            _ => return None,
        };
        // A generator that is a unit at the origin makes the residue zero.
        Some(match LocalIdeal::new(generators) {
            Ok(ideal) => Residue::Germ { ideal, max_degree },
            Err(_) => Residue::Value(BigInt::zero()),
        })
    }
}

/// A germ at the origin, optionally certifying a tangency entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalBlock {
    pub label: String,
    pub line: usize,
    pub kind: LocalKind,
    pub certifies: Option<String>,
    /// Number of points with this germ.
    pub points: u64,
    pub expect: Option<u64>,
    pub max_degree: Option<u32>,
}

/// A validated scenario file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioFile {
    ambient: MultiProjectiveSpace,
    sweep: Option<Sweep>,
    x_defining: Vec<DegreeSpec>,
    conormal: Vec<DegreeSpec>,
    tangency: Option<Vec<TangencySpec>>,
    local: Vec<LocalBlock>,
    tangent_dist: Option<Vec<DegreeSpec>>,
    normal_bundle: Option<Vec<DegreeSpec>>,
}

/// Parses and validates a scenario, instantiating it at every swept value.
pub fn parse_scenario(src: &str) -> std::result::Result<ScenarioFile, ParseError> {
    ScenarioFile::parse_with_sweep(src, None)
}

const SECTIONS: [&str; 8] =
    ["ambient", "sweep", "x_defining", "conormal", "tangency", "local", "tangent_dist", "normal_bundle"];

fn degree_section(sec: &Section) -> std::result::Result<Vec<DegreeSpec>, ParseError> {
    sec.lines.iter().map(|l| DegreeSpec::from_line(degree_line(l)?)).collect()
}

fn unsigned_field(span: &Span, what: &str) -> std::result::Result<u64, ParseError> {
    span.text.parse::<u64>().map_err(|_| span.error(format!("expected a non-negative integer for {what}")))
}

fn parse_parts(value: &Span, nvars: usize) -> std::result::Result<Vec<LocalPoly>, ParseError> {
    let mut out = Vec::new();
    let mut start = 0;
    let text = &value.text;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), ';'))) {
        if c != ';' {
            continue;
        }
        let raw = &text[start..i];
        let lead = raw.len() - raw.trim_start().len();
        let part = Span {
            text: raw.trim().to_string(),
            line: value.line,
            col: value.col + text[..start + lead].chars().count(),
        };
        if part.text.is_empty() {
            return Err(part.error("expected a polynomial in x1..xn"));
        }
        out.push(LocalPoly::parse(&part.text, nvars).map_err(|e| part.map_error(e))?);
        start = i + 1;
    }
    Ok(out)
}

fn infer_nvars(value: &Span) -> std::result::Result<usize, ParseError> {
    let mut n = 1;
    for part in value.text.split(';') {
        n = n.max(LocalPoly::max_var_index(part).map_err(|e| value.map_error(e))?);
    }
    Ok(n)
}

fn local_block(sec: &Section) -> std::result::Result<LocalBlock, ParseError> {
    let label = sec.label.clone().ok_or_else(|| sec.header.error("a [local NAME] block needs a name"))?;
    let mut kv: Vec<(Span, Span)> = Vec::new();
    for line in &sec.lines {
        let (k, v) = key_value(line)?;
        if !["kind", "certifies", "points", "expect", "max_degree", "ideal", "f", "v", "nvars"]
            .contains(&k.text.as_str())
        {
            return Err(k.error(format!(
                "unknown key '{}' in a local block (expected kind, certifies, points, expect, max_degree, ideal, f, v, nvars)",
                k.text
            )));
        }
        if kv.iter().any(|(p, _)| p.text == k.text) {
            return Err(k.error(format!("duplicate key '{}'", k.text)));
        }
        kv.push((k, v));
    }
    let get = |key: &str| kv.iter().find(|(k, _)| k.text == key).map(|(_, v)| v);
    let require = |key: &str| get(key).ok_or_else(|| sec.header.error(format!("local block '{label}' needs '{key}'")));
    let reject_unused = |allowed: &[&str]| -> std::result::Result<(), ParseError> {
        for (k, _) in &kv {
            if ["ideal", "f", "v", "nvars"].contains(&k.text.as_str()) && !allowed.contains(&k.text.as_str()) {
                return Err(k.error(format!("key '{}' does not apply to this kind", k.text)));
            }
        }
        Ok(())
    };
    let kind_span = require("kind")?;
    let kind = match kind_span.text.as_str() {
        "colength" | "residue" => {
            reject_unused(&["ideal", "nvars"])?;
            let ideal = require("ideal")?;
            let nvars = match get("nvars") {
                Some(n) => {
                    let n = unsigned_field(n, "nvars")? as usize;
                    if n == 0 {
                        return Err(get("nvars").unwrap().error("nvars must be positive"));
                    }
                    n
                }
                None => infer_nvars(ideal)?,
            };
            let gens = parse_parts(ideal, nvars)?;
            if kind_span.text == "colength" {
                LocalKind::Colength(LocalIdeal::new(gens).map_err(|e| ideal.map_error(e))?)
            } else {
                if gens.len() != nvars {
                    return Err(ideal.error(format!(
                        "a residue needs a square system: {} functions in {nvars} variables",
                        gens.len()
                    )));
                }
                LocalIdeal::new(gens.clone()).map_err(|e| ideal.map_error(e))?;
                LocalKind::Residue(gens)
            }
        }
        "milnor" => {
            reject_unused(&["f", "nvars"])?;
            let f = require("f")?;
            let nvars = match get("nvars") {
                Some(n) => unsigned_field(n, "nvars")?.max(1) as usize,
                None => infer_nvars(f)?,
            };
            let p = LocalPoly::parse(&f.text, nvars).map_err(|e| f.map_error(e))?;
            if !p.vanishes_at_origin() {
                return Err(f.error("f must vanish at the origin"));
            }
            LocalKind::Milnor(p)
        }
        "brunella" => {
            reject_unused(&["f", "v"])?;
            let f = require("f")?;
            let v = require("v")?;
            let comps = parse_parts(v, 2)?;
            if comps.len() != 2 {
                return Err(v.error(format!("expected two components 'a; b', found {}", comps.len())));
            }
            let p = LocalPoly::parse(&f.text, 2).map_err(|e| f.map_error(e))?;
            if !p.vanishes_at_origin() {
                return Err(f.error("the curve must pass through the origin"));
            }
            LocalKind::Brunella(p, VectorFieldGerm::new(comps).map_err(|e| v.map_error(e))?)
        }
        other => {
            return Err(kind_span
                .error(format!("unknown local kind '{other}' (expected colength, milnor, brunella or residue)")))
        }
    };
    let points = match get("points") {
        Some(p) => unsigned_field(p, "points")?,
        None => 1,
    };
    let max_degree = match get("max_degree") {
        Some(d) => {
            Some(u32::try_from(unsigned_field(d, "max_degree")?).map_err(|_| d.error("max_degree is too large"))?)
        }
        None => None,
    };
    Ok(LocalBlock {
        label,
        line: sec.header.line,
        kind,
        certifies: get("certifies").map(|s| s.text.clone()),
        points,
        expect: get("expect").map(|e| unsigned_field(e, "expect")).transpose()?,
        max_degree,
    })
}

fn tangency_entry(sec: &Section, index: usize) -> std::result::Result<Option<TangencySpec>, ParseError> {
    if sec.lines.is_empty() {
        if sec.label.is_some() {
            return Err(sec.header.error("a named tangency entry needs 'multiplicity' and 'class'"));
        }
        return Ok(None);
    }
    let mut multiplicity = None;
    let mut count = None;
    let mut class = None;
    for line in &sec.lines {
        let (k, v) = key_value(line)?;
        let slot = match k.text.as_str() {
            "multiplicity" => &mut multiplicity,
            "count" => &mut count,
            "class" => &mut class,
            other => {
                return Err(
                    k.error(format!("unknown key '{other}' in a tangency entry (expected multiplicity, count, class)"))
                )
            }
        };
        if slot.is_some() {
            return Err(k.error(format!("duplicate key '{}'", k.text)));
        }
        *slot = Some(ExprField::new(v)?);
    }
    let missing = |key: &str| sec.header.error(format!("tangency entry needs '{key}'"));
    Ok(Some(TangencySpec {
        label: sec.label.clone().unwrap_or_else(|| format!("R{index}")),
        header: sec.header.clone(),
        multiplicity: multiplicity.ok_or_else(|| missing("multiplicity"))?,
        count,
        class: class.ok_or_else(|| missing("class"))?,
    }))
}

impl ScenarioFile {
    /// Parses `src`; a given `sweep` replaces the file's `[sweep]`.
    pub fn parse_with_sweep(src: &str, sweep: Option<Sweep>) -> std::result::Result<Self, ParseError> {
        if src.trim().is_empty() {
            return Err(ParseError::new(
                1,
                1,
                "syntax error: empty scenario, expected a section header such as [ambient]",
            ));
        }
        let secs = sections(src)?;
        if secs.is_empty() {
            return Err(ParseError::new(
                1,
                1,
                "syntax error: no sections, expected a section header such as [ambient]",
            ));
        }
        let mut seen: Vec<&str> = Vec::new();
        let mut ambient = None;
        let mut file_sweep = None;
        let mut x_defining = None;
        let mut conormal = None;
        let mut tangency: Option<Vec<TangencySpec>> = None;
        let mut local = Vec::new();
        let mut tangent_dist = None;
        let mut normal_bundle = None;
        for sec in &secs {
            let name = sec.name.as_str();
            if !SECTIONS.contains(&name) {
                return Err(sec
                    .header
                    .error(format!("unknown section '[{name}]' (expected one of {})", SECTIONS.join(", "))));
            }
            let repeatable = name == "tangency" || name == "local";
            if !repeatable {
                if seen.contains(&name) {
                    return Err(sec.header.error(format!("duplicate section '[{name}]'")));
                }
                if let Some(label) = &sec.label {
                    return Err(sec.header.error(format!("section '[{name}]' takes no name, found '{label}'")));
                }
            }
            seen.push(name);
            match name {
                "ambient" => {
                    let mut dims = Vec::new();
                    for line in &sec.lines {
                        for f in fields(line) {
                            let d = f.text.parse::<u32>().ok().filter(|d| *d > 0);
                            dims.push(d.ok_or_else(|| f.error("expected a positive factor dimension"))?);
                        }
                    }
                    if dims.is_empty() {
                        return Err(sec.header.error("[ambient] needs at least one factor dimension"));
                    }
                    ambient = Some(MultiProjectiveSpace::new(dims).map_err(|e| sec.header.map_error(e))?);
                }
                "sweep" => {
                    let [line] = sec.lines.as_slice() else {
                        return Err(sec.header.error("[sweep] takes exactly one line 'A..B'"));
                    };
                    file_sweep = Some(Sweep::parse(&line.text).map_err(|m| line.error(m))?);
                }
                "x_defining" => x_defining = Some(degree_section(sec)?),
                "conormal" => conormal = Some(degree_section(sec)?),
                "tangent_dist" => tangent_dist = Some(degree_section(sec)?),
                "normal_bundle" => normal_bundle = Some(degree_section(sec)?),
                "tangency" => {
                    let list = tangency.get_or_insert_with(Vec::new);
                    if let Some(entry) = tangency_entry(sec, list.len() + 1)? {
                        if list.iter().any(|t| t.label == entry.label) {
                            return Err(sec.header.error(format!("duplicate tangency entry '{}'", entry.label)));
                        }
                        list.push(entry);
                    }
                }
                "local" => {
                    let block = local_block(sec)?;
                    if local.iter().any(|b: &LocalBlock| b.label == block.label) {
                        return Err(sec.header.error(format!("duplicate local block '{}'", block.label)));
                    }
                    local.push(block);
                }
                _ => unreachable!(),
            }
        }
        let end = ParseError::new(src.lines().count().max(1), 1, "");
        let ambient =
            ambient.ok_or_else(|| ParseError { message: "missing section [ambient]".into(), ..end.clone() })?;
        let conormal =
            conormal.ok_or_else(|| ParseError { message: "missing section [conormal]".into(), ..end.clone() })?;
        if tangent_dist.is_some() != normal_bundle.is_some() {
            return Err(ParseError {
                message: "[tangent_dist] and [normal_bundle] must be given together".into(),
                ..end
            });
        }
        let file = ScenarioFile {
            ambient,
            sweep: sweep.or(file_sweep),
            x_defining: x_defining.unwrap_or_default(),
            conormal,
            tangency,
            local,
            tangent_dist,
            normal_bundle,
        };
        file.validate_local_refs()?;
        for l in file.parameter_values() {
            file.instantiate(l)?;
        }
        Ok(file)
    }

    fn validate_local_refs(&self) -> std::result::Result<(), ParseError> {
        for b in &self.local {
            if let Some(target) = &b.certifies {
                let known = self.tangency.iter().flatten().any(|t| &t.label == target);
                if !known {
                    return Err(ParseError::new(
                        b.line,
                        1,
                        format!("local block '{}' certifies unknown tangency entry '{target}'", b.label),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn ambient(&self) -> &MultiProjectiveSpace {
        &self.ambient
    }

    pub fn sweep(&self) -> Option<Sweep> {
        self.sweep
    }

    pub fn local_blocks(&self) -> &[LocalBlock] {
        &self.local
    }

    /// Labels of the tangency entries in file order.
    pub fn tangency_labels(&self) -> Vec<String> {
        self.tangency.iter().flatten().map(|t| t.label.clone()).collect()
    }

    /// `[Some(a), ..., Some(b)]` for a sweep, `[None]` otherwise.
    pub fn parameter_values(&self) -> Vec<Option<i64>> {
        match self.sweep {
            Some(s) => s.values().map(Some).collect(),
            None => vec![None],
        }
    }

    fn all_fields(&self) -> impl Iterator<Item = &ExprField> {
        let degrees = self
            .x_defining
            .iter()
            .chain(&self.conormal)
            .chain(self.tangent_dist.iter().flatten())
            .chain(self.normal_bundle.iter().flatten())
            .flat_map(DegreeSpec::fields);
        let tangency = self
            .tangency
            .iter()
            .flatten()
            .flat_map(|t| std::iter::once(&t.multiplicity).chain(t.count.iter()).chain(std::iter::once(&t.class)));
        degrees.chain(tangency)
    }

    pub fn uses_parameter(&self) -> bool {
        self.all_fields().any(|f| f.expr.mentions("L"))
    }

    /// Upper bound on the degree in `L` of every coefficient of
    /// `LHS - sign·RHS`, when that difference is a polynomial in `L`.
    ///
    /// Every left-hand class is a polynomial of degree at most `dim Y` in
    /// first Chern classes, each linear in the multidegree entries; the
    /// right-hand side is `count · multiplicity · class`. Repeat counts
    /// depending on `L` change the shape of the scenario, so no bound
    /// exists then.
    pub fn parameter_degree_bound(&self) -> Option<u32> {
        let specs = self
            .x_defining
            .iter()
            .chain(&self.conormal)
            .chain(self.tangent_dist.iter().flatten())
            .chain(self.normal_bundle.iter().flatten());
        let mut entry_deg = 0;
        for s in specs {
            if s.repeat.as_ref().is_some_and(|r| r.expr.mentions("L")) {
                return None;
            }
            for e in &s.entries {
                entry_deg = entry_deg.max(e.degree_in_param()?);
            }
        }
        let mut bound = self.ambient.dim() * entry_deg;
        for t in self.tangency.iter().flatten() {
            let count = match &t.count {
                Some(c) => c.degree_in_param()?,
                None => 0,
            };
            bound = bound.max(t.multiplicity.degree_in_param()? + count + t.class.degree_in_param()?);
        }
        Some(bound)
    }

    fn bundle(&self, specs: &[DegreeSpec], l: Option<i64>) -> std::result::Result<SplitBundle, ParseError> {
        let s = self.ambient.num_factors();
        let mut summands = Vec::new();
        for spec in specs {
            if spec.entries.len() != s {
                return Err(spec.line.error(format!(
                    "dimension mismatch: multidegree has {} entries but the ambient space has {s} factors",
                    spec.entries.len()
                )));
            }
            let degrees = spec
                .entries
                .iter()
                .map(|e| e.small(l, "multidegree entry"))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let times = match &spec.repeat {
                Some(r) => {
                    let n = r.int(l)?;
                    if n.is_negative() {
                        return Err(r.span.error(format!("repeat count evaluates to {n}, expected >= 0")));
                    }
                    n.to_u64().filter(|n| *n <= 4096).ok_or_else(|| r.span.error("repeat count is too large"))?
                }
                None => 1,
            };
            for _ in 0..times {
                summands.push(MultiDegree::new(degrees.clone()));
            }
        }
        SplitBundle::new(&self.ambient, summands).map_err(|e| ParseError::new(1, 1, e.to_string()))
    }

    fn anchor(&self) -> Span {
        self.conormal.first().map(|d| d.line.clone()).unwrap_or(Span { text: String::new(), line: 1, col: 1 })
    }

    /// The scenario at parameter value `l` (`None` without a sweep).
    /// Point residues come from `milnor`/`residue` local blocks, each
    /// repeated `points` times.
    pub fn instantiate(&self, l: Option<i64>) -> std::result::Result<Scenario, ParseError> {
        let x = self.bundle(&self.x_defining, l)?;
        let conormal = self.bundle(&self.conormal, l)?;
        let anchor = self.anchor();
        let mut sc = Scenario::new(self.ambient.clone(), x, conormal).map_err(|e| anchor.map_error(e))?;
        if let Some(specs) = &self.tangency {
            let mut comps = Vec::new();
            for t in specs {
                let mult = t.multiplicity.int(l)?;
                if mult.is_negative() {
                    return Err(t.multiplicity.span.error(format!(
                        "multiplicity evaluates to {mult}: tangency multiplicities are lengths of local rings and must be non-negative (effectivity)"
                    )));
                }
                let count = match &t.count {
                    Some(c) => {
                        let v = c.int(l)?;
                        if v.is_negative() {
                            return Err(c.span.error(format!("count evaluates to {v}, expected >= 0")));
                        }
                        v
                    }
                    None => BigInt::from(1),
                };
                let class = t.class.class(&self.ambient, l)?;
                if !class.is_zero() && !class.is_effective() {
                    return Err(t.class.span.error(format!("class {class} is not effective")));
                }
                comps.push(
                    TangencyComponent::new(t.label.clone(), mult, count, class).map_err(|e| t.header.map_error(e))?,
                );
            }
            sc = sc.with_tangency(comps).map_err(|e| anchor.map_error(e))?;
        }
        let residue_blocks: Vec<&LocalBlock> = self.local.iter().filter(|b| b.kind.is_point_residue()).collect();
        if !residue_blocks.is_empty() {
            let mut residues = Vec::new();
            for b in residue_blocks {
                let r =
                    b.kind.residue(b.max_degree.unwrap_or(crate::local::DEFAULT_MAX_DEGREE)).expect("point residue");
                for _ in 0..b.points {
                    residues.push(r.clone());
                }
            }
            sc = sc.with_residues(residues);
        }
        if let (Some(td), Some(nb)) = (&self.tangent_dist, &self.normal_bundle) {
            let splitting = SplittingData { tangent_dist: self.bundle(td, l)?, normal_bundle: self.bundle(nb, l)? };
            sc = sc.with_splitting(splitting).map_err(|e| anchor.map_error(e))?;
        }
        Ok(sc)
    }

    /// Multiplicity and count of the tangency entry `label` at `l`.
    pub fn tangency_entry(&self, label: &str, l: Option<i64>) -> Option<(BigInt, BigInt)> {
        let t = self.tangency.iter().flatten().find(|t| t.label == label)?;
        let mult = t.multiplicity.int(l).ok()?;
        let count = match &t.count {
            Some(c) => c.int(l).ok()?,
            None => BigInt::from(1),
        };
        Some((mult, count))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::{lhs_theorem_main, rhs_from_tangency_data};

    const SEC4: &str = "\
[ambient]
3 1 1
[sweep]
2..12
[x_defining]
(L, 0, 0)
(1, 1, 0)
[conormal]
(0, -2, 0)
(0, 0, -2)
[tangency S]
multiplicity = (L-1)^2
count = L
class = h1^3*h2
";

    #[test]
    fn parses_the_worked_example() {
        let f = parse_scenario(SEC4).unwrap();
        assert_eq!(f.ambient().factor_dims(), &[3, 1, 1]);
        assert_eq!(f.sweep(), Some(Sweep { start: 2, end: 12 }));
        assert_eq!(f.parameter_degree_bound(), Some(5));
        let sc = f.instantiate(Some(3)).unwrap();
        assert_eq!(lhs_theorem_main(&sc).unwrap().to_string(), "12*h1^3*h2");
        assert_eq!(rhs_from_tangency_data(&sc).unwrap().to_string(), "12*h1^3*h2");
    }

    #[test]
    fn empty_input_is_an_error_at_origin() {
        let e = parse_scenario("").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        let e = parse_scenario("  \n# only a comment\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
    }

    #[test]
    fn negative_multiplicity_cites_effectivity() {
        let src = SEC4.replace("(L-1)^2", "-1");
        let e = parse_scenario(&src).unwrap_err();
        assert_eq!((e.line, e.col), (12, 16));
        assert!(e.message.contains("effectivity"), "{e}");
    }

    #[test]
    fn unbound_parameter_without_sweep() {
        let src = SEC4.replace("[sweep]\n2..12\n", "");
        let e = parse_scenario(&src).unwrap_err();
        assert_eq!((e.line, e.col), (4, 2));
        assert!(e.message.contains("unbound"), "{e}");
        assert!(ScenarioFile::parse_with_sweep(&src, Some(Sweep::new(2, 3).unwrap())).is_ok());
    }

    #[test]
    fn dimension_mismatch_and_unknown_keys() {
        let e = parse_scenario(&SEC4.replace("(1, 1, 0)", "(1, 1)")).unwrap_err();
        assert_eq!(e.line, 7);
        assert!(e.message.contains("dimension mismatch"));
        let e = parse_scenario(&SEC4.replace("count = L", "cnt = L")).unwrap_err();
        assert_eq!((e.line, e.col), (13, 1));
        let e = parse_scenario(&format!("{SEC4}[extra]\n")).unwrap_err();
        assert_eq!(e.line, 15);
        let e = parse_scenario(&SEC4.replace("h1^3*h2", "h1^3*h4")).unwrap_err();
        assert_eq!((e.line, e.col), (14, 14));
    }

    #[test]
    fn local_blocks_and_references() {
        let src = "[ambient]\n2\n[x_defining]\n(2)\n[conormal]\n(-2)\n[tangency T]\nmultiplicity = 1\ncount = 2\nclass = h1^2\n\
                   [local p]\nkind = brunella\ncertifies = T\nf = x2 - 2*x1 - x1^2\nv = x1 + 1; x2 + 2\n";
        let f = parse_scenario(src).unwrap();
        let b = &f.local_blocks()[0];
        assert_eq!(b.kind.evaluate(24).unwrap(), 1);
        assert_eq!(f.tangency_entry("T", None), Some((BigInt::from(1), BigInt::from(2))));
        let bad = src.replace("certifies = T", "certifies = U");
        assert!(parse_scenario(&bad).unwrap_err().message.contains("unknown tangency entry"));
        let bad = src.replace("v = x1 + 1; x2 + 2", "v = x1 + 1; x2 +");
        let e = parse_scenario(&bad).unwrap_err();
        assert_eq!(e.line, 15);
    }

    #[test]
    fn sweep_syntax() {
        assert_eq!(Sweep::parse("2..5").unwrap().len(), 4);
        assert_eq!(Sweep::parse(" 7 ").unwrap(), Sweep { start: 7, end: 7 });
        assert!(Sweep::parse("5..2").is_err());
        assert!(Sweep::parse("a..2").is_err());
        assert!(Sweep::parse("0..100000").is_err());
    }
}
