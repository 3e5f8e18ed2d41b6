//! Both sides of the residue formula for a closed immersion `f: X → Y` of a
//! complete intersection into a multiprojective space carrying a regular
//! distribution `F` of codimension `k` with split conormal bundle `N*_F`.
//!
//! Pushforward along `f` is multiplication by `[X]` (projection formula),
//! so every class below lives in `A(Y)`. With `n = dim X`:
//!
//! ```text
//! Σ_{i=0}^{n-k+1} (-1)^i c_{n-k+1-i}(T_X) s_i(N*_F) [X] = (-1)^{n-k+1} Σ_j μ_j [R_j]
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chow::{ChowElement, MultiDegree, MultiProjectiveSpace};
use crate::classes::{
    ambient_anticanonical_degree, chern_of_split, chi_of_ci, class_of_ci, det_of_split, dual_class, segre_of_split,
    tangent_of_ambient, tangent_of_ci, SplitBundle, TotalClass,
};
use crate::error::{Error, Result};
use crate::local::{colength, LocalIdeal};

/// `count` components `R_j`, each of class `class` and multiplicity
/// `multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangencyComponent {
    pub label: String,
    pub multiplicity: BigInt,
    pub count: BigInt,
    pub class: ChowElement,
}

impl TangencyComponent {
    pub fn new(label: impl Into<String>, multiplicity: BigInt, count: BigInt, class: ChowElement) -> Result<Self> {
        let label = label.into();
        if multiplicity < BigInt::zero() {
            return Err(Error::Invalid(format!(
                "tangency component '{label}' has negative multiplicity {multiplicity}; multiplicities are non-negative"
            )));
        }
        if count < BigInt::zero() {
            return Err(Error::Invalid(format!("tangency component '{label}' has negative count {count}")));
        }
        Ok(Self { label, multiplicity, count, class })
    }

    /// `count · μ · [R]`.
    pub fn cycle(&self) -> ChowElement {
        self.class.scale(&(&self.count * &self.multiplicity))
    }
}

/// A point residue: either a known integer or a germ ideal whose colength
/// is the residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residue {
    Value(BigInt),
    Germ { ideal: LocalIdeal, max_degree: u32 },
}

impl Residue {
    pub fn evaluate(&self) -> Result<BigInt> {
        match self {
            Residue::Value(v) => Ok(v.clone()),
            Residue::Germ { ideal, max_degree } => Ok(BigInt::from(colength(ideal, *max_degree)?)),
        }
    }
}

/// Splitting types supplied directly (for curves in non-multiprojective
/// manifolds), used only by the ampleness obstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingData {
    pub tangent_dist: SplitBundle,
    pub normal_bundle: SplitBundle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    ambient: MultiProjectiveSpace,
    x_defining: SplitBundle,
    conormal: SplitBundle,
    tangency: Option<Vec<TangencyComponent>>,
    residues: Option<Vec<Residue>>,
    splitting: Option<SplittingData>,
}

impl Scenario {
    pub fn new(ambient: MultiProjectiveSpace, x_defining: SplitBundle, conormal: SplitBundle) -> Result<Self> {
        for b in [&x_defining, &conormal] {
            if b.space() != &ambient {
                return Err(Error::IncompatibleOperands { left: ambient.to_string(), right: b.space().to_string() });
            }
        }
        let dim_y = ambient.dim();
        let rank = x_defining.rank() as u32;
        if rank >= dim_y {
            return Err(Error::DegenerateScenario(format!(
                "dim X = {dim_y} - {rank} < 1: the complete intersection must have positive dimension"
            )));
        }
        let n = dim_y - rank;
        let k = conormal.rank() as u32;
        if k == 0 {
            return Err(Error::DegenerateScenario("the distribution needs codimension k >= 1".into()));
        }
        if k > n {
            return Err(Error::DegenerateScenario(format!(
                "n - k + 1 = {} < 1 (n = {n}, k = {k})",
                n as i64 - k as i64 + 1
            )));
        }
        Ok(Self { ambient, x_defining, conormal, tangency: None, residues: None, splitting: None })
    }

    pub fn with_tangency(mut self, components: Vec<TangencyComponent>) -> Result<Self> {
        if let Some(c) = components.iter().find(|c| c.class.space() != &self.ambient) {
            return Err(Error::IncompatibleOperands {
                left: self.ambient.to_string(),
                right: c.class.space().to_string(),
            });
        }
        self.tangency = Some(components);
        Ok(self)
    }

    pub fn with_residues(mut self, residues: Vec<Residue>) -> Self {
        self.residues = Some(residues);
        self
    }

    pub fn with_splitting(mut self, splitting: SplittingData) -> Result<Self> {
        for b in [&splitting.tangent_dist, &splitting.normal_bundle] {
            if b.space() != &self.ambient {
                return Err(Error::IncompatibleOperands {
                    left: self.ambient.to_string(),
                    right: b.space().to_string(),
                });
            }
        }
        self.splitting = Some(splitting);
        Ok(self)
    }

    pub fn ambient(&self) -> &MultiProjectiveSpace {
        &self.ambient
    }

    pub fn x_defining(&self) -> &SplitBundle {
        &self.x_defining
    }

    pub fn conormal(&self) -> &SplitBundle {
        &self.conormal
    }

    pub fn tangency(&self) -> Option<&[TangencyComponent]> {
        self.tangency.as_deref()
    }

    pub fn residues(&self) -> Option<&[Residue]> {
        self.residues.as_deref()
    }

    pub fn splitting(&self) -> Option<&SplittingData> {
        self.splitting.as_ref()
    }

    /// `n = dim X`.
    pub fn dim_x(&self) -> u32 {
        self.ambient.dim() - self.x_defining.rank() as u32
    }

    pub fn codim_k(&self) -> u32 {
        self.conormal.rank() as u32
    }

    /// `n - k + 1`, the codimension of the ramification locus.
    pub fn ramification_codim(&self) -> u32 {
        self.dim_x() + 1 - self.codim_k()
    }

    /// `(-1)^{n-k+1}`.
    pub fn sign(&self) -> i32 {
        if self.ramification_codim().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    fn require_ci(&self, what: &str) -> Result<()> {
        if self.splitting.is_some() {
            return Err(Error::CorollaryInapplicable(format!(
                "{what} needs a complete-intersection scenario; this one only carries splitting types"
            )));
        }
        Ok(())
    }

    /// `c(T_X)`.
    pub fn tangent_class(&self) -> Result<TotalClass> {
        tangent_of_ci(&self.x_defining)
    }

    /// `s(N*_F)`.
    pub fn conormal_segre(&self) -> TotalClass {
        segre_of_split(&self.conormal)
    }

    /// `[X]`.
    pub fn fundamental_class(&self) -> Result<ChowElement> {
        class_of_ci(&self.x_defining)
    }
}

/// Theorem form: `Σ_{i=0}^{n-k+1} (-1)^i c_{n-k+1-i}(T_X) s_i(N*_F) [X]`.
pub fn lhs_theorem_main(sc: &Scenario) -> Result<ChowElement> {
    sc.require_ci("the residue theorem")?;
    let top = sc.ramification_codim();
    let ctx = sc.tangent_class()?;
    let seg = sc.conormal_segre();
    let mut sum = ChowElement::zero(sc.ambient());
    for i in 0..=top {
        let term = &ctx.part(top - i) * &seg.part(i);
        sum = if i % 2 == 0 { &sum + &term } else { &sum - &term };
    }
    Ok(&sum * &sc.fundamental_class()?)
}

/// Thom–Porteous class `c_{n-k+1}(Ω¹_X - N*_F) ∩ [X]`, computed as the
/// graded piece of `c(Ω¹_X) · s(N*_F)`. Equals `Σ_j μ_j [S_j]`.
pub fn thom_porteous_class(sc: &Scenario) -> Result<ChowElement> {
    sc.require_ci("the residue theorem")?;
    let omega = dual_class(&sc.tangent_class()?);
    let virt = omega.mul(&sc.conormal_segre())?;
    Ok(&virt.part(sc.ramification_codim()) * &sc.fundamental_class()?)
}

/// The theorem's left-hand side reached through the Thom–Porteous class:
/// `(-1)^{n-k+1} c_{n-k+1}(Ω¹_X - N*_F) ∩ [X]`.
pub fn lhs_proof_form(sc: &Scenario) -> Result<ChowElement> {
    let tp = thom_porteous_class(sc)?;
    Ok(if sc.sign() == 1 { tp } else { -&tp })
}

/// `Σ_j μ_j [R_j]`, or `None` without tangency data.
pub fn rhs_from_tangency_data(sc: &Scenario) -> Option<ChowElement> {
    let comps = sc.tangency()?;
    let mut sum = ChowElement::zero(sc.ambient());
    for c in comps {
        sum = &sum + &c.cycle();
    }
    Some(sum)
}

fn require_curve_case(sc: &Scenario, what: &str) -> Result<()> {
    if sc.dim_x() != sc.codim_k() {
        return Err(Error::CorollaryInapplicable(format!(
            "{what} needs dim X = k, found dim X = {} and k = {}",
            sc.dim_x(),
            sc.codim_k()
        )));
    }
    Ok(())
}

/// `c_1(N_F)` from the conormal bundle.
fn c1_normal_dist(sc: &Scenario) -> Result<ChowElement> {
    Ok(-&det_of_split(sc.conormal()).c1(sc.ambient())?)
}

/// `[c_1(N_{X|Y}) - c_1(T_F)] ∩ [X]` with `c_1(T_F) = c_1(T_Y) - c_1(N_F)`.
pub fn tangency_corollary(sc: &Scenario) -> Result<ChowElement> {
    sc.require_ci("the tangency formula")?;
    require_curve_case(sc, "the tangency formula")?;
    let y = sc.ambient();
    let c1_normal_x = det_of_split(sc.x_defining()).c1(y)?;
    let c1_tf = &tangent_of_ambient(y).part(1) - &c1_normal_dist(sc)?;
    Ok(&(&c1_normal_x - &c1_tf) * &sc.fundamental_class()?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmplenessOutcome {
    /// `det(T_F)|_X - det(N_{X|Y})`.
    pub difference: MultiDegree,
    pub ample: bool,
    /// Ample difference together with a non-empty effective tangency cycle.
    pub contradiction: bool,
    pub line: String,
}

/// Positivity of `det(T_F)|_X - det(N_{X|Y})`. Strict positivity of every
/// component is only a sufficient certificate of ampleness.
pub fn ampleness_obstruction(sc: &Scenario) -> Result<AmplenessOutcome> {
    require_curve_case(sc, "the ampleness obstruction")?;
    let (det_tf, det_n) = match sc.splitting() {
        Some(s) => (det_of_split(&s.tangent_dist), det_of_split(&s.normal_bundle)),
        None => {
            // det T_F = det T_Y - det N_F = det T_Y + det N*_F
            let det_tf = ambient_anticanonical_degree(sc.ambient()).checked_add(&det_of_split(sc.conormal()))?;
            (det_tf, det_of_split(sc.x_defining()))
        }
    };
    let difference = det_tf.checked_sub(&det_n)?;
    let ample = difference.is_strictly_positive();
    let positive_tangency = rhs_from_tangency_data(sc).is_some_and(|z| !z.is_zero() && z.is_effective());
    let contradiction = ample && positive_tangency;
    let mut line = format!(
        "det(T_F)|_X - det(N_X|Y) = {difference}: {}",
        if ample { "ample (every component > 0), so X is tangent to F" } else { "no ampleness certificate" }
    );
    if contradiction {
        line.push_str("; contradicts the supplied finite tangency cycle");
    }
    Ok(AmplenessOutcome { difference, ample, contradiction, line })
}

/// Left side of the codimension-one formula,
/// `χ(X) + Σ_{i≥1} c_{n-i}(T_X) [X] c_1(N*_F)^i`, as an integer.
pub fn izawa_lhs(sc: &Scenario) -> Result<BigInt> {
    sc.require_ci("the codimension-one formula")?;
    if sc.codim_k() != 1 {
        return Err(Error::CorollaryInapplicable(format!(
            "the codimension-one formula needs k = 1, found k = {}",
            sc.codim_k()
        )));
    }
    let n = sc.dim_x();
    let chi = chi_of_ci(sc.ambient(), sc.x_defining())?;
    let ctx = sc.tangent_class()?;
    let x = sc.fundamental_class()?;
    let c1_conormal = det_of_split(sc.conormal()).c1(sc.ambient())?;
    let mut total = chi;
    for i in 1..=n {
        let term = &(&ctx.part(n - i) * &x) * &c1_conormal.pow(i);
        total += term.integrate();
    }
    Ok(total)
}

/// Sum of point residues: the supplied residues when present, otherwise
/// the degrees of the tangency components.
pub fn residue_sum(sc: &Scenario) -> Result<Option<BigInt>> {
    if let Some(res) = sc.residues() {
        let mut sum = BigInt::zero();
        for r in res {
            sum += r.evaluate()?;
        }
        return Ok(Some(sum));
    }
    Ok(rhs_from_tangency_data(sc).map(|z| z.integrate()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Theorem,
    Tangency,
    Izawa,
    Ampleness,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Theorem, Check::Tangency, Check::Izawa, Check::Ampleness];

    pub fn name(self) -> &'static str {
        match self {
            Check::Theorem => "theorem",
            Check::Tangency => "tangency",
            Check::Izawa => "izawa",
            Check::Ampleness => "ampleness",
        }
    }

    /// Whether the check can run on this scenario's shape.
    pub fn applies_to(self, sc: &Scenario) -> bool {
        let ci = sc.splitting().is_none();
        match self {
            Check::Theorem => ci,
            Check::Tangency => ci && sc.dim_x() == sc.codim_k(),
            Check::Izawa => ci && sc.codim_k() == 1,
            Check::Ampleness => sc.dim_x() == sc.codim_k(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Mismatch,
    RhsAbsent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Mismatch => "mismatch",
            Verdict::RhsAbsent => "rhs_absent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub name: String,
    pub class: ChowElement,
}

/// Outcome of one check on one scenario. `lhs_theorem` and
/// `lhs_proof_form` are computed along independent routes and always agree;
/// the check is verified when `lhs_theorem = sign · rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: Check,
    pub parameter: Option<i64>,
    pub ambient: MultiProjectiveSpace,
    pub dim_x: u32,
    pub codim_k: u32,
    pub sign: i32,
    pub lhs_theorem: ChowElement,
    pub lhs_proof_form: ChowElement,
    pub rhs: Option<ChowElement>,
    pub verdict: Verdict,
    pub trace: Vec<TraceEntry>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn assemble(
        sc: &Scenario,
        check: Check,
        sign: i32,
        lhs: ChowElement,
        proof: ChowElement,
        rhs: Option<ChowElement>,
        trace: Vec<TraceEntry>,
    ) -> Result<Self> {
        if lhs != proof {
            return Err(Error::CrossCheck(format!("{check}: theorem form {lhs} differs from proof form {proof}")));
        }
        let verdict = match &rhs {
            None => Verdict::RhsAbsent,
            Some(r) if lhs == signed(r, sign) => Verdict::Verified,
            Some(_) => Verdict::Mismatch,
        };
        Ok(Self {
            check,
            parameter: None,
            ambient: sc.ambient().clone(),
            dim_x: sc.dim_x(),
            codim_k: sc.codim_k(),
            sign,
            lhs_theorem: lhs,
            lhs_proof_form: proof,
            rhs,
            verdict,
            trace,
            notes: Vec::new(),
        })
    }

    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }
}

fn signed(c: &ChowElement, sign: i32) -> ChowElement {
    if sign == 1 {
        c.clone()
    } else {
        -c
    }
}

fn entry(name: &str, class: ChowElement) -> TraceEntry {
    TraceEntry { name: name.to_string(), class }
}

/// Named intermediate classes: `c_i(T_X)`, `s_i(N*_F)`, `[X]`, summands.
fn base_trace(sc: &Scenario) -> Result<Vec<TraceEntry>> {
    let mut trace = Vec::new();
    let ctx = sc.tangent_class()?;
    let n = sc.dim_x();
    for i in 1..=n {
        trace.push(entry(&format!("c{i}(T_X)"), ctx.part(i)));
    }
    let seg = sc.conormal_segre();
    for i in 1..=sc.ramification_codim() {
        trace.push(entry(&format!("s{i}(N*_F)"), seg.part(i)));
    }
    trace.push(entry("[X]", sc.fundamental_class()?));
    for (j, d) in sc.x_defining().summands().iter().enumerate() {
        trace.push(entry(&format!("c1(N_X|Y summand {} = {d})", j + 1), d.c1(sc.ambient())?));
    }
    for (j, d) in sc.conormal().summands().iter().enumerate() {
        trace.push(entry(&format!("c1(N*_F summand {} = {d})", j + 1), d.c1(sc.ambient())?));
    }
    trace.push(entry("c(N*_F)", chern_of_split(sc.conormal()).into_value()));
    Ok(trace)
}

/// Theorem check: `LHS = (-1)^{n-k+1} Σ μ_j [R_j]`.
pub fn verify_theorem(sc: &Scenario) -> Result<VerificationReport> {
    let lhs = lhs_theorem_main(sc)?;
    let proof = lhs_proof_form(sc)?;
    let mut trace = base_trace(sc)?;
    trace.push(entry("c_{n-k+1}(Omega_X - N*_F)[X]", thom_porteous_class(sc)?));
    let mut report =
        VerificationReport::assemble(sc, Check::Theorem, sc.sign(), lhs, proof, rhs_from_tangency_data(sc), trace)?;
    report.notes.push(format!(
        "n = {}, k = {}, n-k+1 = {}; identity LHS = (-1)^(n-k+1) RHS with sign {}",
        sc.dim_x(),
        sc.codim_k(),
        sc.ramification_codim(),
        sc.sign()
    ));
    Ok(report)
}

/// Tangency formula: `[c_1(N_{X|Y}) - c_1(T_F)] ∩ [X] = Σ μ_j [R_j]`,
/// cross-checked against `-LHS` of the theorem.
pub fn verify_tangency(sc: &Scenario) -> Result<VerificationReport> {
    let lhs = tangency_corollary(sc)?;
    let via_theorem = -&lhs_theorem_main(sc)?;
    let mut trace = base_trace(sc)?;
    let y = sc.ambient();
    trace.push(entry("c1(N_X|Y)", det_of_split(sc.x_defining()).c1(y)?));
    trace.push(entry("c1(N_F)", c1_normal_dist(sc)?));
    trace.push(entry("c1(T_F)", &tangent_of_ambient(y).part(1) - &c1_normal_dist(sc)?));
    VerificationReport::assemble(sc, Check::Tangency, 1, lhs, via_theorem, rhs_from_tangency_data(sc), trace)
}

/// Codimension-one formula: `LHS = (-1)^n Σ Res_p`. The proof-form column
/// holds the degree of the theorem's left side, which must agree.
pub fn izawa_check(sc: &Scenario) -> Result<VerificationReport> {
    let value = izawa_lhs(sc)?;
    let point = ChowElement::point_class(sc.ambient());
    let lhs = point.scale(&value);
    let via_theorem = point.scale(&lhs_theorem_main(sc)?.integrate());
    let n = sc.dim_x();
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let rhs = residue_sum(sc)?.map(|s| point.scale(&s));
    let mut trace = base_trace(sc)?;
    let chi = chi_of_ci(sc.ambient(), sc.x_defining())?;
    trace.push(entry("chi(X)", point.scale(&chi)));
    let c1n = c1_normal_dist(sc)?;
    trace.push(entry("c1(N_F)", c1n));
    let mut report = VerificationReport::assemble(sc, Check::Izawa, sign, lhs, via_theorem, rhs, trace)?;
    report.notes.push(format!("chi(X) = {chi}; identity LHS = (-1)^n sum of residues with n = {n}"));
    Ok(report)
}

pub fn verify_ampleness(sc: &Scenario) -> Result<VerificationReport> {
    let out = ampleness_obstruction(sc)?;
    let class = out.difference.c1(sc.ambient())?;
    let mut report = VerificationReport {
        check: Check::Ampleness,
        parameter: None,
        ambient: sc.ambient().clone(),
        dim_x: sc.dim_x(),
        codim_k: sc.codim_k(),
        sign: 1,
        lhs_theorem: class.clone(),
        lhs_proof_form: class,
        rhs: None,
        verdict: if out.contradiction { Verdict::Mismatch } else { Verdict::Verified },
        trace: Vec::new(),
        notes: vec![out.line],
    };
    if let Some(s) = sc.splitting() {
        report.trace.push(entry(
            &format!("c1(det T_F|_X) [{}]", s.tangent_dist),
            det_of_split(&s.tangent_dist).c1(sc.ambient())?,
        ));
        report.trace.push(entry(
            &format!("c1(det N_X|Y) [{}]", s.normal_bundle),
            det_of_split(&s.normal_bundle).c1(sc.ambient())?,
        ));
    }
    Ok(report)
}

pub fn run_check(sc: &Scenario, check: Check) -> Result<VerificationReport> {
    match check {
        Check::Theorem => verify_theorem(sc),
        Check::Tangency => verify_tangency(sc),
        Check::Izawa => izawa_check(sc),
        Check::Ampleness => verify_ampleness(sc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    use num_traits::One;

    fn md(v: &[i64]) -> MultiDegree {
        MultiDegree::new(v.to_vec())
    }

    fn sec4(l: i64) -> Scenario {
        let y = MultiProjectiveSpace::new(vec![3, 1, 1]).unwrap();
        let x = SplitBundle::new(&y, vec![md(&[l, 0, 0]), md(&[1, 1, 0])]).unwrap();
        let nf = SplitBundle::new(&y, vec![md(&[0, -2, 0]), md(&[0, 0, -2])]).unwrap();
        let s = ChowElement::parse(&y, "h1^3*h2").unwrap();
        let comp = TangencyComponent::new("S", BigInt::from((l - 1) * (l - 1)), BigInt::from(l), s).unwrap();
        Scenario::new(y, x, nf).unwrap().with_tangency(vec![comp]).unwrap()
    }

    fn conic() -> Scenario {
        let p2 = MultiProjectiveSpace::projective(2).unwrap();
        let x = SplitBundle::new(&p2, vec![md(&[2])]).unwrap();
        let nf = SplitBundle::new(&p2, vec![md(&[-2])]).unwrap();
        let pt = ChowElement::parse(&p2, "h1^2").unwrap();
        let comp = TangencyComponent::new("T", BigInt::one(), BigInt::from(2), pt).unwrap();
        Scenario::new(p2, x, nf).unwrap().with_tangency(vec![comp]).unwrap()
    }

    #[test]
    fn integrable_example_both_sides() {
        for (l, expected) in [(2i64, 2i64), (3, 12), (4, 36), (5, 80)] {
            let sc = sec4(l);
            let target = ChowElement::parse(sc.ambient(), &format!("{expected}*h1^3*h2")).unwrap();
            assert_eq!(lhs_theorem_main(&sc).unwrap(), target);
            assert_eq!(lhs_proof_form(&sc).unwrap(), target);
            assert_eq!(rhs_from_tangency_data(&sc).unwrap(), target);
            assert!(verify_theorem(&sc).unwrap().is_verified());
        }
    }

    #[test]
    fn scenario_validation() {
        let p1 = MultiProjectiveSpace::projective(1).unwrap();
        let x = SplitBundle::new(&p1, vec![md(&[1])]).unwrap();
        let nf = SplitBundle::new(&p1, vec![md(&[-2])]).unwrap();
        assert!(matches!(Scenario::new(p1.clone(), x, nf.clone()), Err(Error::DegenerateScenario(_))));
        let none = SplitBundle::new(&p1, vec![]).unwrap();
        let two = SplitBundle::new(&p1, vec![md(&[-2]), md(&[-2])]).unwrap();
        assert!(matches!(Scenario::new(p1.clone(), none.clone(), two), Err(Error::DegenerateScenario(_))));
        assert!(matches!(Scenario::new(p1.clone(), none.clone(), none), Err(Error::DegenerateScenario(_))));
        assert!(TangencyComponent::new("bad", BigInt::from(-1), BigInt::one(), ChowElement::one(&p1)).is_err());
    }

    #[test]
    fn transversal_line_has_zero_lhs() {
        // {pt} x P1 inside P1 x P1, leaves P1 x {t}
        let y = MultiProjectiveSpace::new(vec![1, 1]).unwrap();
        let x = SplitBundle::new(&y, vec![md(&[1, 0])]).unwrap();
        let nf = SplitBundle::new(&y, vec![md(&[0, -2])]).unwrap();
        let sc = Scenario::new(y, x, nf).unwrap().with_tangency(vec![]).unwrap();
        assert!(lhs_theorem_main(&sc).unwrap().is_zero());
        assert!(lhs_proof_form(&sc).unwrap().is_zero());
        assert!(tangency_corollary(&sc).unwrap().is_zero());
        assert!(verify_theorem(&sc).unwrap().is_verified());
    }

    #[test]
    fn rhs_linearity() {
        let y = MultiProjectiveSpace::new(vec![3, 1, 1]).unwrap();
        let c = ChowElement::parse(&y, "h1^3*h3").unwrap();
        let comps = vec![
            TangencyComponent::new("a", BigInt::one(), BigInt::one(), c.clone()).unwrap(),
            TangencyComponent::new("b", BigInt::from(2), BigInt::one(), c.clone()).unwrap(),
        ];
        let sc = sec4(3).with_tangency(comps).unwrap();
        assert_eq!(rhs_from_tangency_data(&sc).unwrap(), c.scale(&BigInt::from(3)));
        let sc = sec4(3).with_tangency(vec![]).unwrap();
        assert!(rhs_from_tangency_data(&sc).unwrap().is_zero());
    }

    #[test]
    fn conic_and_pencil() {
        let sc = conic();
        let two_points = ChowElement::parse(sc.ambient(), "2*h1^2").unwrap();
        assert_eq!(tangency_corollary(&sc).unwrap(), two_points);
        // n - k + 1 = 1: the theorem side carries the sign
        assert_eq!(lhs_theorem_main(&sc).unwrap(), -&two_points);
        assert_eq!(thom_porteous_class(&sc).unwrap(), two_points);
        assert!(verify_theorem(&sc).unwrap().is_verified());
        assert!(verify_tangency(&sc).unwrap().is_verified());
        let amp = ampleness_obstruction(&sc).unwrap();
        assert_eq!(amp.difference, md(&[-1]));
        assert!(!amp.ample);
    }

    #[test]
    fn brunella_self_check() {
        // on a surface, [C] = c1(O(C)) and the formula reads c1(O(C))^2 - c1(T_F) c1(O(C))
        let sc = conic();
        let y = sc.ambient();
        let c = ChowElement::parse(y, "2*h1").unwrap();
        let c1_tf = ChowElement::parse(y, "h1").unwrap();
        let brunella = &(&c * &c) - &(&c1_tf * &c);
        assert_eq!(tangency_corollary(&sc).unwrap(), brunella);
    }

    #[test]
    fn corollaries_check_their_hypotheses() {
        assert!(matches!(tangency_corollary(&sec4(3)), Err(Error::CorollaryInapplicable(_))));
        assert!(matches!(izawa_check(&sec4(3)), Err(Error::CorollaryInapplicable(_))));
        assert!(matches!(ampleness_obstruction(&sec4(3)), Err(Error::CorollaryInapplicable(_))));
    }

    #[test]
    fn ampleness_cases() {
        let c = MultiProjectiveSpace::projective(1).unwrap();
        let none = SplitBundle::new(&c, vec![]).unwrap();
        let nf = SplitBundle::new(&c, vec![md(&[-1])]).unwrap();
        let base = Scenario::new(c.clone(), none, nf).unwrap();
        let split = |tf: &[i64], nb: &[i64]| SplittingData {
            tangent_dist: SplitBundle::new(&c, tf.iter().map(|&a| md(&[a])).collect()).unwrap(),
            normal_bundle: SplitBundle::new(&c, nb.iter().map(|&a| md(&[a])).collect()).unwrap(),
        };
        // n = 2 contact splitting types
        let sc = base.clone().with_splitting(split(&[2, 1, 0, -1], &[1, 0, 0, 0])).unwrap();
        let out = ampleness_obstruction(&sc).unwrap();
        assert_eq!(out.difference, md(&[1]));
        assert!(out.ample && !out.contradiction);
        let sc = base.clone().with_splitting(split(&[1], &[1])).unwrap();
        assert!(!ampleness_obstruction(&sc).unwrap().ample);
        assert!(lhs_theorem_main(&sc).is_err());
        assert!(!md(&[-1, 2]).is_strictly_positive());
        // ample with a claimed tangency cycle is contradictory
        let pt = ChowElement::point_class(&c);
        let comp = TangencyComponent::new("p", BigInt::one(), BigInt::one(), pt).unwrap();
        let sc = base.with_splitting(split(&[2, 1, 0, -1], &[1, 0, 0, 0])).unwrap().with_tangency(vec![comp]).unwrap();
        let out = ampleness_obstruction(&sc).unwrap();
        assert!(out.contradiction);
        assert_eq!(verify_ampleness(&sc).unwrap().verdict, Verdict::Mismatch);
    }

    #[test]
    fn elliptic_fibration() {
        // bidegree (3,1) hypersurface in P2 x P1: pencil of cubics, 12 nodal fibers
        let y = MultiProjectiveSpace::new(vec![2, 1]).unwrap();
        let x = SplitBundle::new(&y, vec![md(&[3, 1])]).unwrap();
        let nf = SplitBundle::new(&y, vec![md(&[0, -2])]).unwrap();
        let sc = Scenario::new(y.clone(), x.clone(), nf).unwrap();
        assert_eq!(chi_of_ci(&y, &x).unwrap(), BigInt::from(12));
        assert_eq!(izawa_lhs(&sc).unwrap(), BigInt::from(12));
        let node = LocalIdeal::parse("2*x1; 2*x2", None).unwrap();
        let sc = sc.with_residues(vec![Residue::Germ { ideal: node, max_degree: 24 }; 12]);
        let report = izawa_check(&sc).unwrap();
        assert!(report.is_verified(), "{report:?}");
    }
}
