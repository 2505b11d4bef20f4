use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::reducing::{
    search_reducing_sequence, verify_reducing_sequence, ReducingCertificate, ReducingSequence, SearchOptions,
};
use super::{
    depth_complex, depth_module, finite_pd, generator_annihilator, is_cohen_macaulay, is_complete_intersection,
    ring_depth, tor_complex, Depth, VanishingBound,
};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::homology::good_truncation_below;
use crate::resolve::{minimal_presentation, PresentedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaKind {
    DepthFormula,
    DerivedDepthFormula,
    AuslanderTorQ,
    DependencyBounds,
    OneDimEquivalence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaMode {
    Classic,
    Derived,
}

impl FromStr for FormulaMode {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classic" => Ok(FormulaMode::Classic),
            "derived" => Ok(FormulaMode::Derived),
            other => Err(AlgebraError::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Consistent,
    /// A violation that no larger bound can repair.
    Violated,
    /// A hypothesis gate failed.
    Refused,
    /// Vanishing of Tor is not certified within the bound.
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Holds | Verdict::Consistent => 0,
            Verdict::Violated => 1,
            Verdict::Refused | Verdict::Inconclusive => 3,
        }
    }

    pub fn is_success(self) -> bool {
        self.exit_code() == 0
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Holds => "holds",
            Verdict::Consistent => "consistent",
            Verdict::Violated => "violated",
            Verdict::Refused => "refused",
            Verdict::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GateStatus {
    Passed,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gate {
    pub name: String,
    pub status: GateStatus,
    pub detail: String,
}

impl Gate {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Gate {
            name: name.to_string(),
            status: if passed { GateStatus::Passed } else { GateStatus::Failed },
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == GateStatus::Passed
    }
}

/// The three conditions of the one-dimensional equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TruthTable {
    pub tor_independent: bool,
    pub torsion_free: bool,
    pub depth_formula: bool,
}

impl TruthTable {
    pub fn agrees(&self) -> bool {
        self.tor_independent == self.torsion_free && self.torsion_free == self.depth_formula
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaReport {
    pub formula: FormulaKind,
    pub lhs: Option<Depth>,
    pub rhs: Option<Depth>,
    pub hypotheses: Vec<Gate>,
    pub verdict: Verdict,
    #[serde(rename = "bound_B")]
    pub bound: usize,
    pub q: Option<usize>,
    pub q_exact: bool,
    pub facts: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<ReducingCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truth_table: Option<TruthTable>,
}

impl FormulaReport {
    fn new(formula: FormulaKind, bound: usize) -> Self {
        FormulaReport {
            formula,
            lhs: None,
            rhs: None,
            hypotheses: Vec::new(),
            verdict: Verdict::Inconclusive,
            bound,
            q: None,
            q_exact: false,
            facts: BTreeMap::new(),
            certificate: None,
            truth_table: None,
        }
    }

    fn fact(&mut self, key: &str, value: impl fmt::Display) {
        self.facts.insert(key.to_string(), value.to_string());
    }

    pub fn gate(&self, name: &str) -> Option<&Gate> {
        self.hypotheses.iter().find(|g| g.name == name)
    }

    fn gates_pass(&self) -> bool {
        self.hypotheses.iter().all(Gate::passed)
    }

    /// With finite reducing dimension a finite `q` is at most `depth R`, so a
    /// nonzero `Tor_i` with `i > depth R` means `q = ∞` or bad evidence.
    fn bound_q_by_depth(&mut self, qb: &VanishingBound, depth_r: u32) {
        let top = qb.nonzero.iter().rposition(|&b| b).unwrap_or(0);
        let ok = top <= depth_r as usize || qb.exact;
        self.hypotheses.push(Gate::new(
            "q-at-most-depth-r",
            ok,
            if ok {
                format!("q = {} <= depth R = {depth_r}", qb.value)
            } else {
                format!("Tor_{top} != 0 beyond depth R = {depth_r}: q is infinite or the evidence is wrong")
            },
        ));
    }

    fn record_q(&mut self, qb: &VanishingBound) {
        self.q = Some(qb.value);
        self.q_exact = qb.exact;
        self.hypotheses.push(Gate::new(
            "q-certified",
            qb.certified_below_bound(),
            if qb.exact {
                format!("q = {} with vanishing proven beyond the bound", qb.value)
            } else {
                format!("q = {} up to B = {}", qb.value, qb.bound)
            },
        ));
    }
}

/// How the finiteness of the reducing invariant of `M` is to be established.
#[derive(Clone, Debug)]
pub enum ReducingEvidence<F: Field> {
    None,
    /// Finite projective dimension, or a complete intersection ring.
    Auto,
    /// A sequence to verify, with the pd bound for its last module.
    Sequence(ReducingSequence<F>, usize),
    /// `Auto`, then a bounded search.
    Search(SearchOptions),
}

/// Evaluate `evidence` for `M` as a hypothesis gate.
pub fn reducing_evidence<F: Field>(
    m: &PresentedModule<F>,
    evidence: &ReducingEvidence<F>,
) -> Result<(Gate, Option<ReducingCertificate>)> {
    const NAME: &str = "reducing-certificate";
    let auto = || -> Option<(Gate, Option<ReducingCertificate>)> {
        if let Some(p) = finite_pd(m) {
            let cert = ReducingCertificate {
                length: 0,
                steps: Vec::new(),
                tail_pd: p,
            };
            return Some((Gate::new(NAME, true, format!("pd(M) = {p}")), Some(cert)));
        }
        if is_complete_intersection(m.ring()) {
            return Some((Gate::new(NAME, true, "complete intersection ring"), None));
        }
        None
    };
    Ok(match evidence {
        ReducingEvidence::None => (Gate::new(NAME, false, "no certificate supplied"), None),
        ReducingEvidence::Auto => auto().unwrap_or_else(|| {
            (
                Gate::new(NAME, false, "pd(M) infinite, ring not a complete intersection"),
                None,
            )
        }),
        ReducingEvidence::Sequence(seq, pd_bound) => {
            if !same_module(&seq.start, m) {
                (Gate::new(NAME, false, "certificate starts at a different module"), None)
            } else {
                match verify_reducing_sequence(seq, *pd_bound) {
                    Ok(cert) => (
                        Gate::new(NAME, true, format!("verified sequence of length {}", cert.length)),
                        Some(cert),
                    ),
                    Err(e) => (Gate::new(NAME, false, e.to_string()), None),
                }
            }
        }
        ReducingEvidence::Search(opts) => match auto() {
            Some(found) => found,
            None => match search_reducing_sequence(m, opts)? {
                Some(seq) => {
                    let cert = verify_reducing_sequence(&seq, opts.pd_bound)
                        .map_err(|e| AlgebraError::Invalid(format!("search returned an unverified sequence: {e}")))?;
                    (
                        Gate::new(NAME, true, format!("found sequence of length {}", cert.length)),
                        Some(cert),
                    )
                }
                None => (Gate::new(NAME, false, "no certificate within budgets"), None),
            },
        },
    })
}

fn same_module<F: Field>(a: &PresentedModule<F>, b: &PresentedModule<F>) -> bool {
    let eq = |x: &PresentedModule<F>, y: &PresentedModule<F>| {
        x.ring().same_as(y.ring()) && x.gens() == y.gens() && x.relations() == y.relations()
    };
    eq(a, b) || eq(&minimal_presentation(a), &minimal_presentation(b))
}

fn add(a: Depth, b: Depth) -> Depth {
    match (a, b) {
        (Depth::Finite(x), Depth::Finite(y)) => Depth::Finite(x + y),
        _ => Depth::Infinite,
    }
}

fn nonzero_pair<F: Field>(m: &PresentedModule<F>, n: &PresentedModule<F>) -> Result<()> {
    if !m.ring().same_as(n.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    if m.is_zero() || n.is_zero() {
        return Err(AlgebraError::Invalid("formula checks need nonzero modules".into()));
    }
    Ok(())
}

/// Gate for the ring hypothesis; finite pd of either module makes it unnecessary.
fn cm_gate<F: Field>(m: &PresentedModule<F>, n: &PresentedModule<F>) -> Gate {
    let ring = m.ring();
    if is_cohen_macaulay(ring) {
        return Gate::new("cohen-macaulay", true, format!("dim R = depth R = {}", ring.dim()));
    }
    if finite_pd(m).is_some() || finite_pd(n).is_some() {
        return Gate::new("cohen-macaulay", true, "not needed: a module of finite pd");
    }
    Gate::new(
        "cohen-macaulay",
        false,
        format!("dim R = {} but depth R = {}", ring.dim(), ring_depth(ring)),
    )
}

fn finish(report: &mut FormulaReport, equal: bool, success: Verdict) {
    report.verdict = if report.gate("q-at-most-depth-r").is_some_and(|g| !g.passed()) {
        Verdict::Refused
    } else if !report.gate("q-certified").is_some_and(Gate::passed) {
        Verdict::Inconclusive
    } else if !report.gates_pass() {
        Verdict::Refused
    } else if equal {
        success
    } else if report.q_exact {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    };
}

/// `depth M + depth N = depth R + depth(M ⊗ N)` (classic, requires
/// `q = 0`) or with `M ⊗^L N` in place of the tensor product (derived).
pub fn depth_formula_check<F: Field>(
    m: &PresentedModule<F>,
    n: &PresentedModule<F>,
    bound: usize,
    mode: FormulaMode,
    evidence: &ReducingEvidence<F>,
) -> Result<FormulaReport> {
    nonzero_pair(m, n)?;
    let kind = match mode {
        FormulaMode::Classic => FormulaKind::DepthFormula,
        FormulaMode::Derived => FormulaKind::DerivedDepthFormula,
    };
    let mut report = FormulaReport::new(kind, bound);
    let (x, qb) = tor_complex(m, n, bound)?;
    report.record_q(&qb);
    if mode == FormulaMode::Classic {
        report
            .hypotheses
            .push(Gate::new("tor-independent", qb.value == 0, format!("q = {}", qb.value)));
    }
    report.hypotheses.push(cm_gate(m, n));
    let (gate, cert) = reducing_evidence(m, evidence)?;
    report.hypotheses.push(gate);
    report.certificate = cert;
    report.bound_q_by_depth(&qb, ring_depth(m.ring()));

    let dr = Depth::Finite(ring_depth(m.ring()) as i64);
    let dm = depth_module(m).value;
    let dn = depth_module(n).value;
    report.fact("depth_R", dr);
    report.fact("depth_M", dm);
    report.fact("depth_N", dn);
    report.lhs = Some(add(dm, dn));
    let right = match mode {
        FormulaMode::Classic => {
            let t = x.homology_at(0)?;
            let d = depth_module(&t);
            report.fact("depth_tensor", d.value);
            d.value
        }
        FormulaMode::Derived => {
            let truncated = good_truncation_below(&x, qb.value as i64)?;
            let d = depth_complex(&truncated)?;
            report.fact("depth_derived_tensor", d.value);
            report.fact("depth_method", d.method.name());
            d.value
        }
    };
    report.rhs = Some(add(dr, right));
    let equal = report.lhs == report.rhs;
    finish(&mut report, equal, Verdict::Holds);
    Ok(report)
}

/// `depth M + depth N = depth R + depth(Tor_q(M, N)) - q`, for
/// `depth Tor_q(M, N) ≤ 1`.
pub fn auslander_formula_check<F: Field>(
    m: &PresentedModule<F>,
    n: &PresentedModule<F>,
    bound: usize,
    evidence: &ReducingEvidence<F>,
) -> Result<FormulaReport> {
    nonzero_pair(m, n)?;
    let mut report = FormulaReport::new(FormulaKind::AuslanderTorQ, bound);
    let (x, qb) = tor_complex(m, n, bound)?;
    report.record_q(&qb);
    let q = qb.value;
    let top = x.homology_at(q as i64)?;
    let dt = depth_module(&top).value;
    report.hypotheses.push(Gate::new(
        "top-tor-depth-at-most-1",
        dt.finite().is_some_and(|d| d <= 1),
        format!("depth Tor_{q} = {dt}"),
    ));
    report.hypotheses.push(cm_gate(m, n));
    let (gate, cert) = reducing_evidence(m, evidence)?;
    report.hypotheses.push(gate);
    report.certificate = cert;
    report.bound_q_by_depth(&qb, ring_depth(m.ring()));

    let dr = ring_depth(m.ring()) as i64;
    let dm = depth_module(m).value;
    let dn = depth_module(n).value;
    report.fact("depth_R", dr);
    report.fact("depth_M", dm);
    report.fact("depth_N", dn);
    report.fact("depth_tor_q", dt);
    report.lhs = Some(add(dm, dn));
    report.rhs = Some(add(Depth::Finite(dr - q as i64), dt));
    let equal = report.lhs == report.rhs;
    finish(&mut report, equal, Verdict::Holds);
    Ok(report)
}

/// `q ≤ depth R`, and when `depth M ≤ depth R`
/// `depth R - depth M - depth N ≤ q ≤ depth R - depth M`, with the equality
/// cases at `depth M = depth R` and `depth N = 0`. Only the contribution of
/// the graded maximal ideal is checked.
pub fn dependency_bounds_check<F: Field>(
    m: &PresentedModule<F>,
    n: &PresentedModule<F>,
    bound: usize,
    evidence: &ReducingEvidence<F>,
) -> Result<FormulaReport> {
    nonzero_pair(m, n)?;
    let mut report = FormulaReport::new(FormulaKind::DependencyBounds, bound);
    let (_, qb) = tor_complex(m, n, bound)?;
    report.record_q(&qb);
    let (gate, cert) = reducing_evidence(m, evidence)?;
    report.hypotheses.push(gate);
    report.certificate = cert;
    report.fact("scope", "maximal ideal only");
    report.bound_q_by_depth(&qb, ring_depth(m.ring()));

    let q = qb.value as i64;
    let dr = ring_depth(m.ring()) as i64;
    let dm = depth_module(m).value.finite().expect("nonzero module");
    let dn = depth_module(n).value.finite().expect("nonzero module");
    report.fact("depth_R", dr);
    report.fact("depth_M", dm);
    report.fact("depth_N", dn);
    report.lhs = Some(Depth::Finite(q));
    report.rhs = Some(Depth::Finite(dr));

    // a failure only contradicts the bounds once q is known to be finite
    let mut checks: Vec<(&str, bool)> = vec![("q <= depth R", q <= dr)];
    if dm <= dr {
        report.rhs = Some(Depth::Finite(dr - dm));
        checks.push(("q <= depth R - depth M", q <= dr - dm));
        checks.push(("depth R - depth M - depth N <= q", dr - dm - dn <= q));
        if dm == dr {
            checks.push(("q = 0 when depth M = depth R", q == 0));
        }
        if dn == 0 {
            checks.push(("q = depth R - depth M when depth N = 0", q == dr - dm));
        }
    }
    for (name, ok) in &checks {
        report.fact(name, ok);
    }
    let all = checks.iter().all(|(_, ok)| *ok);
    let hard_failure = !all && qb.exact;
    report.verdict = if !report.gate("q-at-most-depth-r").is_some_and(Gate::passed) {
        Verdict::Refused
    } else if !report.gate("q-certified").is_some_and(Gate::passed) {
        Verdict::Inconclusive
    } else if hard_failure && report.gate("reducing-certificate").is_some_and(Gate::passed) {
        Verdict::Violated
    } else if !report.gate("reducing-certificate").is_some_and(Gate::passed) {
        Verdict::Refused
    } else if all && report.gates_pass() {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    };
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TorsionVerdict {
    Torsion,
    NotTorsion,
    Unsupported,
}

/// Over a domain (asserted by the caller) `T` is torsion iff `ann(T) ≠ 0`,
/// iff every generator has a nonzero annihilator.
pub fn torsion_check<F: Field>(t: &PresentedModule<F>, domain_asserted: bool) -> Result<TorsionVerdict> {
    if !domain_asserted {
        return Ok(TorsionVerdict::Unsupported);
    }
    for i in 0..t.ngens() {
        if generator_annihilator(t, i)?.is_empty() {
            return Ok(TorsionVerdict::NotTorsion);
        }
    }
    Ok(TorsionVerdict::Torsion)
}

/// Over a one-dimensional Cohen–Macaulay ring: `q = 0`, `M` or `N` torsion-free
/// (depth at least 1), and the depth formula are evaluated separately and
/// must agree.
pub fn one_dim_equivalence_check<F: Field>(
    m: &PresentedModule<F>,
    n: &PresentedModule<F>,
    bound: usize,
    evidence: &ReducingEvidence<F>,
) -> Result<FormulaReport> {
    nonzero_pair(m, n)?;
    let ring = m.ring();
    let mut report = FormulaReport::new(FormulaKind::OneDimEquivalence, bound);
    let one_dim = ring.dim() == 1 && is_cohen_macaulay(ring);
    report.hypotheses.push(Gate::new(
        "one-dimensional-cohen-macaulay",
        one_dim,
        format!("dim R = {}, depth R = {}", ring.dim(), ring_depth(ring)),
    ));
    let (gate, cert) = reducing_evidence(m, evidence)?;
    report.hypotheses.push(gate);
    report.certificate = cert;
    if !one_dim {
        report.verdict = Verdict::Refused;
        return Ok(report);
    }
    let (x, qb) = tor_complex(m, n, bound)?;
    report.record_q(&qb);
    report.bound_q_by_depth(&qb, ring_depth(ring));
    let dr = ring_depth(ring) as i64;
    let dm = depth_module(m).value;
    let dn = depth_module(n).value;
    let dt = depth_module(&x.homology_at(0)?).value;
    report.fact("depth_R", dr);
    report.fact("depth_M", dm);
    report.fact("depth_N", dn);
    report.fact("depth_tensor", dt);
    report.lhs = Some(add(dm, dn));
    report.rhs = Some(add(Depth::Finite(dr), dt));
    let table = TruthTable {
        tor_independent: qb.value == 0,
        torsion_free: dm >= Depth::Finite(1) || dn >= Depth::Finite(1),
        depth_formula: report.lhs == report.rhs,
    };
    report.truth_table = Some(table);
    finish(&mut report, table.agrees(), Verdict::Consistent);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groebner::GradedRing;
    use crate::poly::{PolyRing, Polynomial};
    use std::sync::Arc;

    type R = Arc<GradedRing<PrimeField>>;

    fn ring(vars: &[&str], gens: &[&str]) -> R {
        let s = PolyRing::standard(PrimeField::default(), vars);
        let gens = gens.iter().map(|g| Polynomial::parse(&s, g).unwrap()).collect();
        GradedRing::new(s, gens).unwrap()
    }

    fn cyc(r: &R, e: &[&str]) -> PresentedModule<PrimeField> {
        let e: Vec<_> = e.iter().map(|s| r.parse(s).unwrap()).collect();
        PresentedModule::cyclic(r, &e).unwrap()
    }

    #[test]
    fn classic_formula_on_the_hypersurface_pair() {
        let r = ring(&["x", "y"], &["x*y"]);
        let m = cyc(&r, &["x"]);
        let n = cyc(&r, &["x - y"]);
        let rep = depth_formula_check(&m, &n, 8, FormulaMode::Classic, &ReducingEvidence::Auto).unwrap();
        assert_eq!(rep.q, Some(0));
        assert_eq!(rep.lhs, Some(Depth::Finite(1)));
        assert_eq!(rep.rhs, Some(Depth::Finite(1)));
        assert_eq!(rep.verdict, Verdict::Holds);
    }

    #[test]
    fn derived_formula_with_depth_zero_partner() {
        let r = ring(&["x", "y"], &["x*y"]);
        let k = PresentedModule::residue_field(&r);
        let m = cyc(&r, &["x - y"]);
        let rep = depth_formula_check(&k, &m, 6, FormulaMode::Derived, &ReducingEvidence::Auto).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");
        let aus = auslander_formula_check(&k, &m, 6, &ReducingEvidence::Auto).unwrap();
        assert_eq!(aus.verdict, Verdict::Holds, "{aus:?}");
        assert_eq!(aus.rhs, rep.rhs);
    }

    #[test]
    fn classic_mode_refuses_tor_dependent_pairs() {
        let r = ring(&["x", "y"], &["x*y"]);
        let k = PresentedModule::residue_field(&r);
        let rep = depth_formula_check(&k, &k, 4, FormulaMode::Classic, &ReducingEvidence::Auto).unwrap();
        assert_ne!(rep.verdict, Verdict::Holds);
        assert_eq!(rep.verdict.exit_code(), 3);
    }

    #[test]
    fn non_cm_ring_is_refused() {
        // k[x,y]/(x^2, xy): dimension 1, depth 0
        let r = ring(&["x", "y"], &["x^2", "x*y"]);
        let k = PresentedModule::residue_field(&r);
        let m = cyc(&r, &["y"]);
        let rep = depth_formula_check(&k, &m, 3, FormulaMode::Derived, &ReducingEvidence::Auto).unwrap();
        assert!(rep.gate("cohen-macaulay").is_some_and(|g| !g.passed()));
        assert_eq!(rep.verdict.exit_code(), 3);
    }

    #[test]
    fn dependency_bounds_on_hypersurface() {
        let r = ring(&["x", "y"], &["x*y"]);
        let k = PresentedModule::residue_field(&r);
        let m = cyc(&r, &["x"]);
        let n = cyc(&r, &["x - y"]);
        let rep = dependency_bounds_check(&m, &n, 6, &ReducingEvidence::Auto).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");
        let rep = dependency_bounds_check(&k, &n, 6, &ReducingEvidence::Auto).unwrap();
        assert_eq!((rep.q, rep.verdict), (Some(1), Verdict::Holds));
        // Tor(R/(x), k) never vanishes, so q is not finite
        let rep = dependency_bounds_check(&m, &k, 6, &ReducingEvidence::Auto).unwrap();
        assert_eq!(rep.verdict, Verdict::Refused);
        let rep = dependency_bounds_check(&m, &n, 6, &ReducingEvidence::None).unwrap();
        assert_eq!(rep.verdict, Verdict::Refused);
    }

    #[test]
    fn torsion_over_a_domain() {
        let r = ring(&["x", "y"], &[]);
        let k = PresentedModule::residue_field(&r);
        let free = PresentedModule::free(&r, vec![0]);
        assert_eq!(torsion_check(&k, true).unwrap(), TorsionVerdict::Torsion);
        assert_eq!(torsion_check(&free, true).unwrap(), TorsionVerdict::NotTorsion);
        assert_eq!(torsion_check(&k, false).unwrap(), TorsionVerdict::Unsupported);
    }

    #[test]
    fn one_dim_truth_tables() {
        let r = ring(&["x", "y"], &["x*y"]);
        let m = cyc(&r, &["x"]);
        let n = cyc(&r, &["x - y"]);
        let rep = one_dim_equivalence_check(&m, &n, 6, &ReducingEvidence::Auto).unwrap();
        assert_eq!(rep.verdict, Verdict::Consistent);
        let t = rep.truth_table.unwrap();
        assert!(t.tor_independent && t.torsion_free && t.depth_formula);

        let k = PresentedModule::residue_field(&r);
        let rep = one_dim_equivalence_check(&k, &n, 6, &ReducingEvidence::Auto).unwrap();
        assert_eq!(rep.verdict, Verdict::Consistent);
        let t = rep.truth_table.unwrap();
        assert!(!t.tor_independent && !t.torsion_free && !t.depth_formula);

        let art = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let k = PresentedModule::residue_field(&art);
        let rep = one_dim_equivalence_check(&k, &k, 2, &ReducingEvidence::Auto).unwrap();
        assert_eq!(rep.verdict, Verdict::Refused);
    }

    #[test]
    fn periodic_tor_is_not_mistaken_for_finite_q() {
        let r = ring(&["x", "y"], &["x*y"]);
        let m = cyc(&r, &["x"]);
        let rep = one_dim_equivalence_check(&m, &m, 6, &ReducingEvidence::Auto).unwrap();
        assert_eq!(rep.q, Some(5));
        assert!(!rep.gate("q-at-most-depth-r").unwrap().passed());
        assert_eq!(rep.verdict, Verdict::Refused);
        let rep = dependency_bounds_check(&m, &m, 2, &ReducingEvidence::Auto).unwrap();
        assert_eq!(rep.q, Some(1));
        assert_ne!(rep.verdict, Verdict::Violated);
    }
}
