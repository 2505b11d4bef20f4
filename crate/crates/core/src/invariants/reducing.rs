use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::field::Field;
use crate::groebner::{relative_syzygies, Column, Submodule};
use crate::homology::hom_complex;
use crate::resolve::{minimal_free_resolution, presentation_resolution, syzygy_module, ModuleMap, PresentedModule};

/// One short exact sequence
/// `0 → ⊕_j K(a_j) → K' → ⊕_l Ω^n K(b_l) → 0`, where `K` is the previous
/// module and `K'` the `middle` one. Twists make the maps homogeneous of
/// degree zero.
#[derive(Clone, Debug)]
pub struct ReducingStep<F: Field> {
    pub n: usize,
    pub a_twists: Vec<i32>,
    pub b_twists: Vec<i32>,
    pub middle: PresentedModule<F>,
    /// Images of the generators of `⊕ K(a_j)` in the generators of `K'`.
    pub left: Vec<Column<F>>,
    /// Images of the generators of `K'` in the generators of `⊕ Ω^n K(b_l)`,
    /// with `Ω^n K` as computed by [`syzygy_module`].
    pub right: Vec<Column<F>>,
}

impl<F: Field> ReducingStep<F> {
    pub fn a(&self) -> usize {
        self.a_twists.len()
    }

    pub fn b(&self) -> usize {
        self.b_twists.len()
    }
}

/// `K_0 = start, K_1, …, K_r` with the connecting sequences.
#[derive(Clone, Debug)]
pub struct ReducingSequence<F: Field> {
    pub start: PresentedModule<F>,
    pub steps: Vec<ReducingStep<F>>,
}

impl<F: Field> ReducingSequence<F> {
    pub fn trivial(m: &PresentedModule<F>) -> Self {
        ReducingSequence {
            start: m.clone(),
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `K_i`.
    pub fn module(&self, i: usize) -> &PresentedModule<F> {
        if i == 0 {
            &self.start
        } else {
            &self.steps[i - 1].middle
        }
    }

    pub fn last(&self) -> &PresentedModule<F> {
        self.module(self.steps.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepCheck {
    Shape,
    WellDefined,
    Composition,
    Injectivity,
    Surjectivity,
    MiddleExactness,
    Tail,
}

impl fmt::Display for StepCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StepCheck::Shape => "shape",
            StepCheck::WellDefined => "well-defined",
            StepCheck::Composition => "composition",
            StepCheck::Injectivity => "injectivity",
            StepCheck::Surjectivity => "surjectivity",
            StepCheck::MiddleExactness => "middle-exactness",
            StepCheck::Tail => "tail",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducingFailure {
    /// 1-based step index; the tail check reports `r + 1`.
    pub step: usize,
    pub check: StepCheck,
    pub detail: String,
}

impl fmt::Display for ReducingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {} failed ({})", self.step, self.check, self.detail)
    }
}

/// A verified reducing pd-sequence: `red-pd(K_0) ≤ length`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducingCertificate {
    pub length: usize,
    /// `(n, a, b)` per step.
    pub steps: Vec<(usize, usize, usize)>,
    pub tail_pd: usize,
}

fn fail(step: usize, check: StepCheck, detail: impl Into<String>) -> ReducingFailure {
    ReducingFailure {
        step,
        check,
        detail: detail.into(),
    }
}

fn twisted_sum<F: Field>(m: &PresentedModule<F>, twists: &[i32]) -> PresentedModule<F> {
    let mut out = PresentedModule::zero(m.ring());
    for &t in twists {
        out = out.direct_sum(&m.twist(t));
    }
    out
}

/// Check every sequence of `seq` and that `pd(K_r) ≤ pd_bound`.
pub fn verify_reducing_sequence<F: Field>(
    seq: &ReducingSequence<F>,
    pd_bound: usize,
) -> std::result::Result<ReducingCertificate, ReducingFailure> {
    for (idx, step) in seq.steps.iter().enumerate() {
        let prev = seq.module(idx);
        verify_step(prev, step).map_err(|(check, detail)| fail(idx + 1, check, detail))?;
    }
    let last = seq.last();
    let res = minimal_free_resolution(last, pd_bound + 1);
    match res.pd() {
        Some(p) if p <= pd_bound => Ok(ReducingCertificate {
            length: seq.steps.len(),
            steps: seq.steps.iter().map(|s| (s.n, s.a(), s.b())).collect(),
            tail_pd: p,
        }),
        Some(p) => Err(fail(
            seq.steps.len() + 1,
            StepCheck::Tail,
            format!("pd(K_r) = {p} exceeds {pd_bound}"),
        )),
        None => Err(fail(
            seq.steps.len() + 1,
            StepCheck::Tail,
            format!("no finite pd certificate within {pd_bound}"),
        )),
    }
}

type StepError = (StepCheck, String);

fn verify_step<F: Field>(prev: &PresentedModule<F>, step: &ReducingStep<F>) -> std::result::Result<(), StepError> {
    let ring = prev.ring();
    if !ring.same_as(step.middle.ring()) {
        return Err((StepCheck::Shape, "modules over different rings".into()));
    }
    if step.a_twists.is_empty() || step.b_twists.is_empty() {
        return Err((StepCheck::Shape, "a and b must be at least 1".into()));
    }
    let a_mod = twisted_sum(prev, &step.a_twists);
    let omega = syzygy_module(prev, step.n);
    let c_mod = twisted_sum(&omega, &step.b_twists);
    let k = &step.middle;
    let shape = |e: crate::error::AlgebraError| (StepCheck::Shape, e.to_string());
    let left =
        ModuleMap::new(ring, a_mod.generator_module(), k.generator_module(), step.left.clone()).map_err(shape)?;
    let right =
        ModuleMap::new(ring, k.generator_module(), c_mod.generator_module(), step.right.clone()).map_err(shape)?;

    let k_rels = k.relation_submodule();
    let c_rels = c_mod.relation_submodule();
    if !a_mod.relations().iter().all(|r| k_rels.contains(&left.apply(ring, r))) {
        return Err((StepCheck::WellDefined, "left map does not respect relations".into()));
    }
    if !k.relations().iter().all(|r| c_rels.contains(&right.apply(ring, r))) {
        return Err((StepCheck::WellDefined, "right map does not respect relations".into()));
    }
    let comp = right.compose(ring, &left);
    if !comp.columns.iter().all(|c| c_rels.contains(c)) {
        return Err((StepCheck::Composition, "right ∘ left is not zero".into()));
    }
    let err = |e: crate::error::AlgebraError| (StepCheck::Shape, e.to_string());

    // surjectivity: every generator of the target lies in im(right) + relations
    let mut cols = right.columns.clone();
    let mut src = right.source.twists.clone();
    cols.extend(c_mod.relations().iter().cloned());
    src.extend_from_slice(c_mod.relation_degrees());
    let image = Submodule::new(ring, c_mod.gens(), &src, &cols).map_err(err)?;
    for t in 0..c_mod.ngens() {
        let mut e = vec![ring.zero(); c_mod.ngens()];
        e[t] = ring.one();
        if !image.contains(&e) {
            return Err((
                StepCheck::Surjectivity,
                format!("target generator {t} not in the image"),
            ));
        }
    }

    // injectivity: the preimage of the relations of K' lies in the relations of the source
    let kernel = relative_syzygies(
        ring,
        k.gens(),
        a_mod.gens(),
        &left.columns,
        k.relation_degrees(),
        k.relations(),
    )
    .map_err(err)?;
    let a_rels = a_mod.relation_submodule();
    if !kernel.iter().all(|(_, c)| a_rels.contains(c)) {
        return Err((StepCheck::Injectivity, "left map has a kernel".into()));
    }

    // exactness in the middle: ker(right) ⊆ im(left) + relations of K'
    let kernel = relative_syzygies(
        ring,
        c_mod.gens(),
        k.gens(),
        &right.columns,
        c_mod.relation_degrees(),
        c_mod.relations(),
    )
    .map_err(err)?;
    let mut cols = left.columns.clone();
    let mut src = left.source.twists.clone();
    cols.extend(k.relations().iter().cloned());
    src.extend_from_slice(k.relation_degrees());
    let image = Submodule::new(ring, k.gens(), &src, &cols).map_err(err)?;
    if !kernel.iter().all(|(_, c)| image.contains(c)) {
        return Err((StepCheck::MiddleExactness, "ker(right) is larger than im(left)".into()));
    }
    Ok(())
}

/// Budgets for [`search_reducing_sequence`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOptions {
    pub max_r: usize,
    pub max_n: usize,
    pub max_ab: usize,
    pub pd_bound: usize,
    /// Extension classes tried per `(n, a, b)`, the zero class included.
    pub class_budget: usize,
    /// Smallest syzygy index tried.
    pub min_n: usize,
}

impl SearchOptions {
    pub fn new(max_r: usize, max_n: usize, max_ab: usize, pd_bound: usize) -> Self {
        SearchOptions {
            max_r,
            max_n,
            max_ab,
            pd_bound,
            class_budget: 256,
            min_n: 0,
        }
    }
}

/// Search for a reducing pd-sequence within the budgets. Candidates are
/// tried by increasing length, then `n`, then `a + b` (smaller `a` first),
/// then extension class. `Ok(None)` means no certificate within the budgets.
pub fn search_reducing_sequence<F: Field>(
    m: &PresentedModule<F>,
    opts: &SearchOptions,
) -> Result<Option<ReducingSequence<F>>> {
    let start = crate::resolve::minimal_presentation(m);
    let trivial = ReducingSequence::trivial(&start);
    if verify_reducing_sequence(&trivial, opts.pd_bound).is_ok() {
        return Ok(Some(trivial));
    }
    for r in 1..=opts.max_r {
        let mut steps = Vec::new();
        if let Some(seq) = extend(&start, &start, r, opts, &mut steps)? {
            if verify_reducing_sequence(&seq, opts.pd_bound).is_ok() {
                return Ok(Some(seq));
            }
        }
    }
    Ok(None)
}

fn extend<F: Field>(
    start: &PresentedModule<F>,
    prev: &PresentedModule<F>,
    remaining: usize,
    opts: &SearchOptions,
    steps: &mut Vec<ReducingStep<F>>,
) -> Result<Option<ReducingSequence<F>>> {
    for n in opts.min_n..=opts.max_n {
        let omega = syzygy_module(prev, n);
        if omega.ngens() == 0 {
            continue;
        }
        for total in 2..=2 * opts.max_ab {
            for a in 1..=opts.max_ab.min(total - 1) {
                let b = total - a;
                if b > opts.max_ab {
                    continue;
                }
                let c = omega.power(b);
                let classes = ExtensionClasses::new(prev, &c)?;
                for choice in classes.enumerate(a, opts.class_budget) {
                    let step = classes.pushout(prev, n, b, &choice)?;
                    steps.push(step);
                    let found = if remaining == 1 {
                        let k = &steps.last().unwrap().middle;
                        let res = minimal_free_resolution(k, opts.pd_bound + 1);
                        if res.pd().is_some_and(|p| p <= opts.pd_bound) {
                            Some(ReducingSequence {
                                start: start.clone(),
                                steps: steps.clone(),
                            })
                        } else {
                            None
                        }
                    } else {
                        let k = steps.last().unwrap().middle.clone();
                        extend(start, &k, remaining - 1, opts, steps)?
                    };
                    if found.is_some() {
                        return Ok(found);
                    }
                    steps.pop();
                }
            }
        }
    }
    Ok(None)
}

/// Homogeneous classes in `Ext^1(C, M)`, represented by cocycles on the
/// relations of `C`'s own presentation.
struct ExtensionClasses<F: Field> {
    c: PresentedModule<F>,
    /// `(degree, cocycle)` for the atoms: minimal generators of `Ext^1` and
    /// 0/1 sums of same-degree generators.
    atoms: Vec<(i32, Column<F>)>,
    m_gens: usize,
}

impl<F: Field> ExtensionClasses<F> {
    fn new(m: &PresentedModule<F>, c: &PresentedModule<F>) -> Result<Self> {
        let res = presentation_resolution(c, 2);
        let mut atoms = Vec::new();
        if res.modules.len() >= 2 {
            let hom = hom_complex(&res, m)?;
            let (h, cycles) = hom.homology_with_cycles(-1)?;
            let gens: Vec<(i32, Column<F>)> = h.gens().iter().copied().zip(cycles).collect();
            atoms.extend(gens.iter().cloned());
            // 0/1 combinations of generators sharing a degree, by size
            let limit = gens.len().min(12);
            for size in 2..=limit {
                for subset in subsets(limit, size) {
                    let d = gens[subset[0]].0;
                    if subset.iter().any(|&i| gens[i].0 != d) {
                        continue;
                    }
                    let mut sum = gens[subset[0]].1.clone();
                    for &i in &subset[1..] {
                        for (s, t) in sum.iter_mut().zip(&gens[i].1) {
                            *s = s.add(t).expect("same ring");
                        }
                    }
                    atoms.push((d, sum));
                }
            }
        }
        Ok(ExtensionClasses {
            c: c.clone(),
            atoms,
            m_gens: m.ngens(),
        })
    }

    /// The zero class, then `a`-subsets of atoms in lexicographic order.
    fn enumerate(&self, a: usize, budget: usize) -> Vec<Vec<Option<usize>>> {
        let mut out = vec![vec![None; a]];
        if a <= self.atoms.len() {
            for s in subsets(self.atoms.len(), a) {
                if out.len() >= budget {
                    break;
                }
                out.push(s.into_iter().map(Some).collect());
            }
        }
        out.truncate(budget.max(1));
        out
    }

    /// The extension `0 → ⊕ M(e_j) → K → C → 0` of the chosen classes, as
    /// the pushout of `Ω^1 C → F_0` along the cocycles.
    fn pushout(&self, m: &PresentedModule<F>, n: usize, b: usize, choice: &[Option<usize>]) -> Result<ReducingStep<F>> {
        let ring = m.ring();
        let ng = self.m_gens;
        // a zero class sits in degree 0
        let a_twists: Vec<i32> = choice.iter().map(|c| c.map(|i| self.atoms[i].0).unwrap_or(0)).collect();
        let a_mod = twisted_sum(m, &a_twists);
        let na = a_mod.ngens();
        let nc = self.c.ngens();
        let mut gens = a_mod.gens().to_vec();
        gens.extend_from_slice(self.c.gens());
        let mut rels = Vec::new();
        let mut degs = Vec::new();
        for (r, &d) in a_mod.relations().iter().zip(a_mod.relation_degrees()) {
            let mut col = r.clone();
            col.extend(std::iter::repeat_n(ring.zero(), nc));
            rels.push(col);
            degs.push(d);
        }
        for (g, (z, &d)) in self.c.relations().iter().zip(self.c.relation_degrees()).enumerate() {
            let mut col = vec![ring.zero(); na + nc];
            for (j, c) in choice.iter().enumerate() {
                if let Some(i) = c {
                    let cocycle = &self.atoms[*i].1;
                    for k in 0..ng {
                        col[j * ng + k] = cocycle[g * ng + k].clone();
                    }
                }
            }
            for (t, p) in z.iter().enumerate() {
                col[na + t] = p.neg();
            }
            rels.push(col);
            degs.push(d);
        }
        let middle = PresentedModule::with_degrees(ring, gens, rels, degs)?;
        let left = (0..na)
            .map(|i| {
                let mut c = vec![ring.zero(); na + nc];
                c[i] = ring.one();
                c
            })
            .collect();
        let right = (0..na + nc)
            .map(|i| {
                let mut c = vec![ring.zero(); nc];
                if i >= na {
                    c[i - na] = ring.one();
                }
                c
            })
            .collect();
        Ok(ReducingStep {
            n,
            a_twists,
            b_twists: vec![0; b],
            middle,
            left,
            right,
        })
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = {
            let mut c = out.clone();
            let mut i = k;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < n - k + i {
                    c[i] += 1;
                    for j in i + 1..k {
                        c[j] = c[j - 1] + 1;
                    }
                    break Some(c);
                }
            }
        };
        cur = next;
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groebner::GradedRing;
    use crate::poly::{PolyRing, Polynomial};
    use std::sync::Arc;

    fn ring(vars: &[&str], gens: &[&str]) -> Arc<GradedRing<PrimeField>> {
        let s = PolyRing::standard(PrimeField::default(), vars);
        let gens = gens.iter().map(|g| Polynomial::parse(&s, g).unwrap()).collect();
        GradedRing::new(s, gens).unwrap()
    }

    fn col(r: &GradedRing<PrimeField>, entries: &[&str]) -> Column<PrimeField> {
        entries.iter().map(|e| r.parse(e).unwrap()).collect()
    }

    fn socle_certificate(r: &Arc<GradedRing<PrimeField>>) -> ReducingSequence<PrimeField> {
        let k = PresentedModule::residue_field(r);
        ReducingSequence {
            start: k,
            steps: vec![ReducingStep {
                n: 1,
                a_twists: vec![-2; 4],
                b_twists: vec![0],
                middle: PresentedModule::free(r, vec![1, 1]),
                left: vec![
                    col(r, &["x", "0"]),
                    col(r, &["y", "0"]),
                    col(r, &["0", "x"]),
                    col(r, &["0", "y"]),
                ],
                right: vec![col(r, &["1", "0"]), col(r, &["0", "1"])],
            }],
        }
    }

    #[test]
    fn subsets_in_order() {
        let s: Vec<Vec<usize>> = subsets(4, 2).collect();
        assert_eq!(s.len(), 6);
        assert_eq!(s[0], vec![0, 1]);
        assert_eq!(s[5], vec![2, 3]);
        assert_eq!(subsets(2, 3).count(), 0);
    }

    #[test]
    fn shipped_certificate_verifies() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let cert = verify_reducing_sequence(&socle_certificate(&r), 0).unwrap();
        assert_eq!(cert.length, 1);
        assert_eq!(cert.steps, vec![(1, 4, 1)]);
    }

    #[test]
    fn broken_certificates_pinpoint_the_check() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let mut seq = socle_certificate(&r);
        seq.steps[0].right = vec![col(&r, &["1", "0"]), col(&r, &["0", "0"])];
        let e = verify_reducing_sequence(&seq, 0).unwrap_err();
        assert_eq!((e.step, e.check), (1, StepCheck::Surjectivity));

        let mut seq = socle_certificate(&r);
        seq.steps[0].left[3] = col(&r, &["0", "0"]);
        let e = verify_reducing_sequence(&seq, 0).unwrap_err();
        assert_eq!(e.check, StepCheck::Injectivity);

        let k = PresentedModule::residue_field(&r);
        let e = verify_reducing_sequence(&ReducingSequence::trivial(&k), 3).unwrap_err();
        assert_eq!(e.check, StepCheck::Tail);
    }

    #[test]
    fn search_finds_certificates() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let k = PresentedModule::residue_field(&r);
        let seq = search_reducing_sequence(&k, &SearchOptions::new(1, 1, 4, 0))
            .unwrap()
            .unwrap();
        assert_eq!(seq.len(), 1);
        assert!(seq.last().relations().is_empty() || minimal_free_resolution(seq.last(), 1).pd() == Some(0));
        let mut opts = SearchOptions::new(1, 1, 4, 0);
        opts.min_n = 1;
        let seq = search_reducing_sequence(&k, &opts).unwrap().unwrap();
        let step = &seq.steps[0];
        assert_eq!((step.n, step.a(), step.b()), (1, 4, 1));
        let mp = crate::resolve::minimal_presentation(&step.middle);
        assert_eq!(mp.ngens(), 2);
        assert!(mp.is_free());

        let s = ring(&["x", "y"], &[]);
        let ks = PresentedModule::residue_field(&s);
        let seq = search_reducing_sequence(&ks, &SearchOptions::new(1, 1, 1, 2))
            .unwrap()
            .unwrap();
        assert!(seq.is_empty());
    }
}
