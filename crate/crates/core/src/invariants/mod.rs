//! Depth of modules and complexes, vanishing bounds for Tor and Ext,
//! complexity estimates, reducing sequences and the depth-formula checkers.

mod formulas;
mod reducing;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{relative_syzygies, Column, GradedRing};
use crate::homology::{ext, koszul, tensor_resolution, ChainComplex};
use crate::poly::Polynomial;
use crate::resolve::{minimal_free_resolution, minimal_presentation, BettiTable, PresentedModule};

pub use formulas::{
    auslander_formula_check, dependency_bounds_check, depth_formula_check, one_dim_equivalence_check,
    reducing_evidence, torsion_check, FormulaKind, FormulaMode, FormulaReport, Gate, GateStatus, ReducingEvidence,
    TorsionVerdict, TruthTable, Verdict,
};
pub use reducing::{
    search_reducing_sequence, verify_reducing_sequence, ReducingCertificate, ReducingFailure, ReducingSequence,
    ReducingStep, SearchOptions, StepCheck,
};

/// A depth value; the zero module and exact complexes have infinite depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Depth {
    Finite(i64),
    Infinite,
}

impl Depth {
    pub fn finite(self) -> Option<i64> {
        match self {
            Depth::Finite(d) => Some(d),
            Depth::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Depth::Infinite
    }
}

impl PartialOrd for Depth {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Depth {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Depth::Finite(a), Depth::Finite(b)) => a.cmp(b),
            (Depth::Finite(_), Depth::Infinite) => Ordering::Less,
            (Depth::Infinite, Depth::Finite(_)) => Ordering::Greater,
            (Depth::Infinite, Depth::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for Depth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Depth::Finite(d) => s.serialize_i64(*d),
            Depth::Infinite => s.serialize_str("infinity"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DepthMethod {
    AuslanderBuchsbaumOverAmbient,
    RhomKoszul,
    TopHomologyShortcut,
}

impl DepthMethod {
    pub fn name(self) -> &'static str {
        match self {
            DepthMethod::AuslanderBuchsbaumOverAmbient => "auslander-buchsbaum-over-ambient",
            DepthMethod::RhomKoszul => "rhom-koszul",
            DepthMethod::TopHomologyShortcut => "top-homology-shortcut",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub value: Depth,
    pub method: DepthMethod,
    /// Whether the value rests on a truncation bound.
    pub bound_dependent: bool,
}

/// `depth(M)` as `n - pd_S(M)` over the ambient polynomial ring `S`.
pub fn depth_module<F: Field>(m: &PresentedModule<F>) -> DepthReport {
    let value = match pd_over_ambient(m) {
        None => Depth::Infinite,
        Some(pd) => Depth::Finite(m.ring().nvars() as i64 - pd as i64),
    };
    DepthReport {
        value,
        method: DepthMethod::AuslanderBuchsbaumOverAmbient,
        bound_dependent: false,
    }
}

/// `pd_S(M)`, `None` for the zero module.
pub fn pd_over_ambient<F: Field>(m: &PresentedModule<F>) -> Option<usize> {
    let ms = minimal_presentation(&m.over_ambient());
    if ms.ngens() == 0 {
        return None;
    }
    let res = minimal_free_resolution(&ms, ms.ring().nvars() + 1);
    Some(res.pd().expect("resolutions over a polynomial ring are finite"))
}

/// `depth(R)`, cached on the ring.
pub fn ring_depth<F: Field>(ring: &Arc<GradedRing<F>>) -> u32 {
    *ring.depth_cell().get_or_init(|| {
        let r = PresentedModule::free(ring, vec![0]);
        depth_module(&r).value.finite().expect("the ring is nonzero") as u32
    })
}

pub fn is_cohen_macaulay<F: Field>(ring: &Arc<GradedRing<F>>) -> bool {
    ring_depth(ring) as usize == ring.dim()
}

/// Whether the defining ideal is generated by `codim` elements.
pub fn is_complete_intersection<F: Field>(ring: &Arc<GradedRing<F>>) -> bool {
    if ring.is_polynomial_ring() {
        return true;
    }
    let s = ring.ambient();
    let ideal = PresentedModule::cyclic(&s, ring.generators()).expect("homogeneous generators");
    let res = minimal_free_resolution(&ideal, 1);
    res.beta(1) == ring.nvars() - ring.dim()
}

/// Projective dimension when finite. By Auslander–Buchsbaum a finite `pd`
/// is at most `depth(R)`, so resolving one step further decides it.
pub fn finite_pd<F: Field>(m: &PresentedModule<F>) -> Option<usize> {
    let bound = ring_depth(m.ring()) as usize + 1;
    minimal_free_resolution(m, bound).pd()
}

/// `depth(X)`, with the top-homology shortcut when `depth H_s(X) ≤ 1`.
pub fn depth_complex<F: Field>(x: &ChainComplex<F>) -> Result<DepthReport> {
    if x.truncated_top {
        return Err(AlgebraError::Uncertified(
            "top of the complex is a truncation artifact; truncate at a certified sup first".into(),
        ));
    }
    let Some(s) = x.sup()? else {
        return Ok(DepthReport {
            value: Depth::Infinite,
            method: DepthMethod::RhomKoszul,
            bound_dependent: false,
        });
    };
    let top = x.homology_at(s)?;
    if let Depth::Finite(d) = depth_module(&top).value {
        if d <= 1 {
            return Ok(DepthReport {
                value: Depth::Finite(d - s),
                method: DepthMethod::TopHomologyShortcut,
                bound_dependent: false,
            });
        }
    }
    depth_complex_koszul(x)
}

/// `depth(X) = n - sup(K ⊗ X)` over the ambient ring, `K` the Koszul complex
/// on the variables.
pub fn depth_complex_koszul<F: Field>(x: &ChainComplex<F>) -> Result<DepthReport> {
    if x.truncated_top {
        return Err(AlgebraError::Uncertified(
            "top of the complex is a truncation artifact".into(),
        ));
    }
    let xs = x.over_ambient();
    let s = xs.ring().clone();
    let vars: Vec<Polynomial<F>> = (0..s.nvars()).map(|i| s.var(i)).collect();
    let k = koszul(&s, &vars)?.complex;
    let t = ChainComplex::tensor_free(&k, &xs)?;
    let value = match t.sup()? {
        None => Depth::Infinite,
        Some(top) => Depth::Finite(s.nvars() as i64 - top),
    };
    Ok(DepthReport {
        value,
        method: DepthMethod::RhomKoszul,
        bound_dependent: false,
    })
}

/// Lower certificate for the top nonvanishing index of Tor or Ext.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingBound {
    /// Largest `i ≤ bound` with a nonzero module (0 if none in `1..=bound`).
    pub value: usize,
    pub bound: usize,
    /// Vanishing beyond `bound` is proven (a finite projective dimension).
    pub exact: bool,
    /// Nonvanishing pattern for `i = 0..=bound`.
    pub nonzero: Vec<bool>,
}

impl VanishingBound {
    /// Vanishing holds on `value+1..=bound`, so the sup is certified up to the bound.
    pub fn certified_below_bound(&self) -> bool {
        self.value < self.bound || self.exact
    }
}

/// `q(M, N) = sup{i : Tor_i(M, N) ≠ 0}`, certified up to `bound`.
pub fn q_bound<F: Field>(m: &PresentedModule<F>, n: &PresentedModule<F>, bound: usize) -> Result<VanishingBound> {
    Ok(tor_complex(m, n, bound)?.1)
}

/// `F_M ⊗ N` with `F_M` resolved to `bound + 1`, and the Tor pattern.
pub(crate) fn tor_complex<F: Field>(
    m: &PresentedModule<F>,
    n: &PresentedModule<F>,
    bound: usize,
) -> Result<(ChainComplex<F>, VanishingBound)> {
    if !m.ring().same_as(n.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    let res = minimal_free_resolution(m, bound + 1);
    let x = tensor_resolution(&res, n)?;
    let mut nonzero = Vec::new();
    for i in 0..=bound as i64 {
        let h = if x.is_empty() || i > x.hi() {
            false
        } else {
            x.homology_at(i)?.ngens() > 0
        };
        nonzero.push(h);
    }
    let value = (1..=bound).rev().find(|&i| nonzero[i]).unwrap_or(0);
    let exact = pd_le(&res, bound) || finite_pd(n).is_some_and(|p| p <= bound);
    Ok((
        x,
        VanishingBound {
            value,
            bound,
            exact,
            nonzero,
        },
    ))
}

fn pd_le<F: Field>(res: &crate::resolve::Resolution<F>, bound: usize) -> bool {
    res.pd().is_some_and(|p| p <= bound)
}

/// `p(M, N) = sup{i : Ext^i(M, N) ≠ 0}`, certified up to `bound`.
pub fn p_bound<F: Field>(m: &PresentedModule<F>, n: &PresentedModule<F>, bound: usize) -> Result<VanishingBound> {
    let e = ext(m, n, bound)?;
    let nonzero: Vec<bool> = e.iter().map(|h| h.ngens() > 0).collect();
    let value = (1..=bound).rev().find(|&i| nonzero[i]).unwrap_or(0);
    let exact = finite_pd(m).is_some_and(|p| p <= bound);
    Ok(VanishingBound {
        value,
        bound,
        exact,
        nonzero,
    })
}

/// Growth verdict for a window of Betti numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ComplexityVerdict {
    PdFinite,
    BoundedBetti,
    Polynomial { degree: u32 },
    AtLeastExponential,
}

impl ComplexityVerdict {
    pub fn name(self) -> &'static str {
        match self {
            ComplexityVerdict::PdFinite => "pd-finite",
            ComplexityVerdict::BoundedBetti => "bounded-betti",
            ComplexityVerdict::Polynomial { .. } => "polynomial",
            ComplexityVerdict::AtLeastExponential => "at-least-exponential",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexityEstimate {
    pub window: (usize, usize),
    /// Fitted polynomial growth degree plus one (the complexity), 0 when
    /// `pd` is finite.
    pub fitted_degree: u32,
    pub verdict: ComplexityVerdict,
    pub ratios: Vec<f64>,
}

/// Ratio threshold `1 + δ` for the exponential verdict.
pub const EXPONENTIAL_RATIO: f64 = 1.5;

/// Estimate complexity from `betti[w0..=w1]`. The verdict only describes
/// the window.
pub fn complexity_estimate(betti: &[usize], window: (usize, usize)) -> Result<ComplexityEstimate> {
    let (w0, w1) = window;
    if w1 < w0 || w1 - w0 + 1 < 4 {
        return Err(AlgebraError::Invalid(
            "complexity window needs at least 4 entries".into(),
        ));
    }
    if w1 >= betti.len() {
        return Err(AlgebraError::Invalid(format!(
            "window end {w1} beyond computed range {}",
            betti.len()
        )));
    }
    let w = &betti[w0..=w1];
    let ratios: Vec<f64> = w.windows(2).map(|p| p[1] as f64 / p[0].max(1) as f64).collect();
    let (verdict, fitted_degree) = if w.contains(&0) {
        (ComplexityVerdict::PdFinite, 0)
    } else if ratios.iter().all(|&r| r >= EXPONENTIAL_RATIO) {
        (ComplexityVerdict::AtLeastExponential, u32::MAX)
    } else if w.iter().all(|&b| b == w[0]) {
        (ComplexityVerdict::BoundedBetti, 1)
    } else {
        // slope of log β_i against log i over the window, indices from 1
        let pts: Vec<(f64, f64)> = w
            .iter()
            .enumerate()
            .map(|(k, _)| (((w0 + k).max(1)) as f64).ln())
            .zip(w.iter().map(|&b| (b as f64).ln()))
            .collect();
        let nf = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        let degree = slope.round().max(0.0) as u32 + 1;
        (ComplexityVerdict::Polynomial { degree }, degree)
    };
    Ok(ComplexityEstimate {
        window,
        fitted_degree,
        verdict,
        ratios,
    })
}

/// [`complexity_estimate`] on the totals of a Betti table.
pub fn complexity_of_table(table: &BettiTable, window: (usize, usize)) -> Result<ComplexityEstimate> {
    complexity_estimate(&table.totals(), window)
}

/// Whether multiplication by `x` is injective on `M`.
pub fn is_nonzerodivisor<F: Field>(x: &Polynomial<F>, m: &PresentedModule<F>) -> Result<bool> {
    let ring = m.ring();
    let d = match x.homogeneous_degree()? {
        Some(d) => d as i32,
        None => return Err(AlgebraError::Inhomogeneous { index: 0 }),
    };
    let g = m.ngens();
    let cols: Vec<Column<F>> = (0..g)
        .map(|i| {
            let mut c = vec![ring.zero(); g];
            c[i] = x.clone();
            c
        })
        .collect();
    let degs: Vec<i32> = m.gens().iter().map(|a| a + d).collect();
    let kernel = relative_syzygies(ring, m.gens(), &degs, &cols, m.relation_degrees(), m.relations())?;
    if kernel.is_empty() {
        return Ok(true);
    }
    let rels = m.relation_submodule();
    // a kernel element c with x·c ∈ U must itself lie in U; kernel columns
    // are in the coordinates of x·e_i, i.e. of e_i
    Ok(kernel.iter().all(|(_, c)| rels.contains(c)))
}

/// Annihilator of the `i`-th generator of `M`.
pub fn generator_annihilator<F: Field>(m: &PresentedModule<F>, i: usize) -> Result<Vec<Polynomial<F>>> {
    let ring = m.ring();
    let g = m.ngens();
    let mut c = vec![ring.zero(); g];
    c[i] = ring.one();
    let k = relative_syzygies(
        ring,
        m.gens(),
        &[m.gens()[i]],
        &[c],
        m.relation_degrees(),
        m.relations(),
    )?;
    Ok(k.into_iter()
        .map(|(_, c)| c[0].clone())
        .filter(|p| !ring.is_zero(p))
        .collect())
}
