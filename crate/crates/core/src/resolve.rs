//! Presented graded modules, minimal presentations and minimal graded free
//! resolutions with their Betti tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{check_column, column_degree, Column, GbState, GradedRing, ModuleOrder, ModuleVector, Submodule};
use crate::poly::Polynomial;

/// A graded free module `⊕ R(-twists[i])`; generator `i` has degree `twists[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FreeModule {
    pub twists: Vec<i32>,
}

impl FreeModule {
    pub fn new(twists: Vec<i32>) -> Self {
        FreeModule { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        FreeModule { twists }
    }

    /// `F(-s)`: every generator moves up by `s`.
    pub fn shifted(&self, s: i32) -> FreeModule {
        FreeModule {
            twists: self.twists.iter().map(|t| t + s).collect(),
        }
    }
}

/// A homogeneous map of graded free modules, stored by columns: column `j`
/// is the image of the `j`-th source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap<F: Field> {
    pub source: FreeModule,
    pub target: FreeModule,
    pub columns: Vec<Column<F>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(ring: &GradedRing<F>, source: FreeModule, target: FreeModule, columns: Vec<Column<F>>) -> Result<Self> {
        if columns.len() != source.rank() {
            return Err(AlgebraError::RankMismatch {
                expected: source.rank(),
                found: columns.len(),
            });
        }
        let columns: Vec<Column<F>> = columns
            .into_iter()
            .map(|c| c.iter().map(|p| ring.reduce(p)).collect())
            .collect();
        for (j, c) in columns.iter().enumerate() {
            check_column(c, &target.twists, source.twists[j], j)?;
        }
        Ok(ModuleMap {
            source,
            target,
            columns,
        })
    }

    pub fn zero(ring: &GradedRing<F>, source: FreeModule, target: FreeModule) -> Self {
        let columns = vec![vec![ring.zero(); target.rank()]; source.rank()];
        ModuleMap {
            source,
            target,
            columns,
        }
    }

    pub fn identity(ring: &GradedRing<F>, f: &FreeModule) -> Self {
        let columns = (0..f.rank())
            .map(|j| {
                (0..f.rank())
                    .map(|i| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        ModuleMap {
            source: f.clone(),
            target: f.clone(),
            columns,
        }
    }

    /// Entry in row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.columns[j][i]
    }

    /// Image of a source vector.
    pub fn apply(&self, ring: &GradedRing<F>, v: &[Polynomial<F>]) -> Column<F> {
        apply_columns(ring, &self.columns, self.target.rank(), v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &GradedRing<F>, other: &ModuleMap<F>) -> ModuleMap<F> {
        let columns = other.columns.iter().map(|c| self.apply(ring, c)).collect();
        ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            columns,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|p| p.is_zero()))
    }

    /// Every entry lies in the homogeneous maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.columns
            .iter()
            .all(|c| c.iter().all(|p| p.terms().iter().all(|t| !t.mono.is_one())))
    }

    pub fn transpose_columns(&self, ring: &GradedRing<F>) -> Vec<Column<F>> {
        (0..self.target.rank())
            .map(|i| (0..self.source.rank()).map(|j| self.entry(i, j).clone()).collect())
            .collect::<Vec<_>>()
            .into_iter()
            .map(|c: Column<F>| c.iter().map(|p| ring.reduce(p)).collect())
            .collect()
    }

    /// Entries in the `c*x^a*y^b` syntax, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.target.rank())
            .map(|i| (0..self.source.rank()).map(|j| self.entry(i, j).to_string()).collect())
            .collect()
    }
}

/// `Σ v_k columns[k]`, reduced.
pub fn apply_columns<F: Field>(
    ring: &GradedRing<F>,
    columns: &[Column<F>],
    rank: usize,
    v: &[Polynomial<F>],
) -> Column<F> {
    let mut out = vec![ring.zero(); rank];
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (i, e) in columns[k].iter().enumerate() {
            if !e.is_zero() {
                out[i] = out[i].add(&c.mul(e).expect("same ring")).expect("same ring");
            }
        }
    }
    out.iter().map(|p| ring.reduce(p)).collect()
}

/// A finitely presented graded module `coker(⊕R(-rel_degrees) → ⊕R(-gens))`.
#[derive(Clone, Debug)]
pub struct PresentedModule<F: Field> {
    ring: Arc<GradedRing<F>>,
    gens: Vec<i32>,
    rels: Vec<Column<F>>,
    rel_degrees: Vec<i32>,
}

impl<F: Field> PresentedModule<F> {
    /// Relations with explicit degrees; zero relations are dropped.
    pub fn with_degrees(
        ring: &Arc<GradedRing<F>>,
        gens: Vec<i32>,
        rels: Vec<Column<F>>,
        rel_degrees: Vec<i32>,
    ) -> Result<Self> {
        if rels.len() != rel_degrees.len() {
            return Err(AlgebraError::RankMismatch {
                expected: rels.len(),
                found: rel_degrees.len(),
            });
        }
        let mut keep_r = Vec::new();
        let mut keep_d = Vec::new();
        for (j, (c, d)) in rels.into_iter().zip(rel_degrees).enumerate() {
            check_column(&c, &gens, d, j)?;
            let c: Column<F> = c.iter().map(|p| ring.reduce(p)).collect();
            if c.iter().any(|p| !p.is_zero()) {
                keep_r.push(c);
                keep_d.push(d);
            }
        }
        Ok(PresentedModule {
            ring: ring.clone(),
            gens,
            rels: keep_r,
            rel_degrees: keep_d,
        })
    }

    /// Relations whose degrees are read off their entries.
    pub fn new(ring: &Arc<GradedRing<F>>, gens: Vec<i32>, rels: Vec<Column<F>>) -> Result<Self> {
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for (j, c) in rels.into_iter().enumerate() {
            if c.len() != gens.len() {
                return Err(AlgebraError::RankMismatch {
                    expected: gens.len(),
                    found: c.len(),
                });
            }
            let c: Column<F> = c.iter().map(|p| ring.reduce(p)).collect();
            match column_degree(&c, &gens) {
                Some(d) => {
                    check_column(&c, &gens, d, j)?;
                    cols.push(c);
                    degs.push(d);
                }
                None => continue,
            }
        }
        Self::with_degrees(ring, gens, cols, degs)
    }

    pub fn free(ring: &Arc<GradedRing<F>>, twists: Vec<i32>) -> Self {
        PresentedModule {
            ring: ring.clone(),
            gens: twists,
            rels: Vec::new(),
            rel_degrees: Vec::new(),
        }
    }

    pub fn zero(ring: &Arc<GradedRing<F>>) -> Self {
        Self::free(ring, Vec::new())
    }

    /// `R/J` for homogeneous `J = (elements)`, generated in degree 0.
    pub fn cyclic(ring: &Arc<GradedRing<F>>, elements: &[Polynomial<F>]) -> Result<Self> {
        Self::new(ring, vec![0], elements.iter().map(|e| vec![e.clone()]).collect())
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: &Arc<GradedRing<F>>) -> Self {
        let vars: Vec<Polynomial<F>> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        Self::cyclic(ring, &vars).expect("variables are homogeneous")
    }

    /// The ideal `J = (elements)` as a module, presented by its syzygies.
    pub fn ideal(ring: &Arc<GradedRing<F>>, elements: &[Polynomial<F>]) -> Result<Self> {
        let degs: Vec<i32> = elements
            .iter()
            .map(|e| e.homogeneous_degree().ok().flatten().map(|d| d as i32))
            .collect::<Option<_>>()
            .ok_or(AlgebraError::Invalid(
                "ideal generators must be nonzero and homogeneous".into(),
            ))?;
        let cols: Vec<Column<F>> = elements.iter().map(|e| vec![e.clone()]).collect();
        let sub = Submodule::new(ring, &[0], &degs, &cols)?;
        let syz = sub.syzygies();
        let (d, c): (Vec<i32>, Vec<Column<F>>) = syz.into_iter().unzip();
        Self::with_degrees(ring, degs, c, d)
    }

    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[i32] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn relations(&self) -> &[Column<F>] {
        &self.rels
    }

    pub fn relation_degrees(&self) -> &[i32] {
        &self.rel_degrees
    }

    pub fn generator_module(&self) -> FreeModule {
        FreeModule::new(self.gens.clone())
    }

    pub fn presentation(&self) -> ModuleMap<F> {
        ModuleMap {
            source: FreeModule::new(self.rel_degrees.clone()),
            target: FreeModule::new(self.gens.clone()),
            columns: self.rels.clone(),
        }
    }

    pub fn is_free(&self) -> bool {
        self.rels.is_empty()
    }

    /// Zero module test (after minimization).
    pub fn is_zero(&self) -> bool {
        minimal_presentation(self).ngens() == 0
    }

    /// The same module with the ring's ideal made explicit: a module over
    /// the ambient polynomial ring.
    pub fn over_ambient(&self) -> Self {
        let s = self.ring.ambient();
        let mut rels = self.rels.clone();
        let mut degs = self.rel_degrees.clone();
        for f in self.ring.ideal_gb() {
            let d = f.leading().unwrap().mono.degree() as i32;
            for (i, &g) in self.gens.iter().enumerate() {
                let mut c = vec![s.zero(); self.gens.len()];
                c[i] = f.clone();
                rels.push(c);
                degs.push(g + d);
            }
        }
        PresentedModule {
            ring: s,
            gens: self.gens.clone(),
            rels,
            rel_degrees: degs,
        }
    }

    /// The same presentation read over another quotient of the same ambient
    /// ring (for instance `M/xM` over `R/xR`).
    pub fn change_ring(&self, ring: &Arc<GradedRing<F>>) -> Result<Self> {
        Self::with_degrees(ring, self.gens.clone(), self.rels.clone(), self.rel_degrees.clone())
    }

    /// `M/(elements)M`.
    pub fn mod_elements(&self, elements: &[Polynomial<F>]) -> Result<Self> {
        let mut rels = self.rels.clone();
        let mut degs = self.rel_degrees.clone();
        for x in elements {
            let d = x
                .homogeneous_degree()?
                .ok_or(AlgebraError::Invalid("inhomogeneous element".into()))? as i32;
            for (i, &g) in self.gens.iter().enumerate() {
                let mut c = vec![self.ring.zero(); self.gens.len()];
                c[i] = x.clone();
                rels.push(c);
                degs.push(g + d);
            }
        }
        Self::with_degrees(&self.ring, self.gens.clone(), rels, degs)
    }

    /// `M(s)` in the usual notation: degrees drop by `s`.
    pub fn twist(&self, s: i32) -> Self {
        PresentedModule {
            ring: self.ring.clone(),
            gens: self.gens.iter().map(|g| g - s).collect(),
            rels: self.rels.clone(),
            rel_degrees: self.rel_degrees.iter().map(|d| d - s).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.gens.len(), other.gens.len());
        let z = self.ring.zero();
        let mut rels = Vec::new();
        for c in &self.rels {
            let mut col = c.clone();
            col.extend(std::iter::repeat_n(z.clone(), b));
            rels.push(col);
        }
        for c in &other.rels {
            let mut col = vec![z.clone(); a];
            col.extend(c.iter().cloned());
            rels.push(col);
        }
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        let mut degs = self.rel_degrees.clone();
        degs.extend_from_slice(&other.rel_degrees);
        PresentedModule {
            ring: self.ring.clone(),
            gens,
            rels,
            rel_degrees: degs,
        }
    }

    /// `M^{⊕a}`.
    pub fn power(&self, a: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for _ in 0..a {
            out = out.direct_sum(self);
        }
        out
    }

    /// Elimination data for the relations; normal forms are normal forms in `M`.
    pub fn relation_submodule(&self) -> Submodule<F> {
        Submodule::new(&self.ring, &self.gens, &self.rel_degrees, &self.rels).expect("validated presentation")
    }

    /// Whether `m·M = 0`.
    pub fn is_annihilated_by_max_ideal(&self) -> bool {
        let sub = self.relation_submodule();
        (0..self.gens.len()).all(|i| {
            (0..self.ring.nvars()).all(|v| {
                let mut c = vec![self.ring.zero(); self.gens.len()];
                c[i] = self.ring.var(v);
                sub.contains(&c)
            })
        })
    }

    /// Dimension of the degree-`d` piece, by a fresh minimal presentation
    /// and the graded-piece linear algebra of [`crate::oracle`].
    pub fn graded_dim(&self, d: i32) -> usize {
        crate::oracle::GradedPieces::new(&self.ring).module_dim(self, d)
    }
}

/// Minimal generating subset of homogeneous columns, chosen greedily in
/// degree order (input order breaks ties).
pub fn minimal_generators<F: Field>(
    ring: &Arc<GradedRing<F>>,
    twists: &[i32],
    mut candidates: Vec<(i32, Column<F>)>,
) -> Vec<(i32, Column<F>)> {
    candidates.sort_by_key(|(d, _)| *d);
    let order = ModuleOrder::new(ring.poly_ring().order.clone(), twists);
    let mut state = GbState::new(ring.field().clone(), ring.weights(), order);
    if !ring.is_polynomial_ring() {
        let ideal = ring.ideal_gb_terms();
        for pos in 0..twists.len() as u32 {
            state.insert_ideal_block(pos, &ideal);
        }
    }
    let mut out = Vec::new();
    for (d, c) in candidates {
        state.complete_to(d as i64);
        let v = ModuleVector::from_components(state.order(), &c);
        let r = state.reduce(v);
        if !r.is_zero() {
            state.add_generator(r);
            state.complete_to(d as i64);
            out.push((d, c));
        }
    }
    out
}

/// Presentation with no unit entries and a minimal set of relations.
pub fn minimal_presentation<F: Field>(m: &PresentedModule<F>) -> PresentedModule<F> {
    minimal_presentation_tracked(m).0
}

/// [`minimal_presentation`], together with the indices of the original
/// generators that survive (the new generators are exactly those).
pub fn minimal_presentation_tracked<F: Field>(m: &PresentedModule<F>) -> (PresentedModule<F>, Vec<usize>) {
    let ring = &m.ring;
    let field = ring.field();
    let mut gens = m.gens.clone();
    let mut kept_idx: Vec<usize> = (0..gens.len()).collect();
    let mut rels = m.rels.clone();
    let mut degs = m.rel_degrees.clone();
    loop {
        let pivot = rels
            .iter()
            .enumerate()
            .find_map(|(j, c)| c.iter().position(|p| p.is_unit()).map(|i| (i, j)));
        let Some((i, j)) = pivot else { break };
        let col = rels.remove(j);
        degs.remove(j);
        let inv = field.inv(&col[i].terms()[0].coeff).expect("unit");
        for c in rels.iter_mut() {
            if c[i].is_zero() {
                continue;
            }
            let factor = c[i].scale(&inv);
            for (k, e) in c.iter_mut().enumerate() {
                if !col[k].is_zero() {
                    *e = ring.reduce(&e.sub(&factor.mul(&col[k]).expect("same ring")).expect("same ring"));
                }
            }
            debug_assert!(c[i].is_zero());
        }
        for c in rels.iter_mut() {
            c.remove(i);
        }
        gens.remove(i);
        kept_idx.remove(i);
    }
    let cands: Vec<(i32, Column<F>)> = degs
        .into_iter()
        .zip(rels)
        .filter(|(_, c)| c.iter().any(|p| !p.is_zero()))
        .collect();
    let kept = minimal_generators(ring, &gens, cands);
    let (degs, rels): (Vec<i32>, Vec<Column<F>>) = kept.into_iter().unzip();
    let out = PresentedModule {
        ring: ring.clone(),
        gens,
        rels,
        rel_degrees: degs,
    };
    (out, kept_idx)
}

/// Graded Betti numbers `β_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    /// `rows[i]` lists `(j, β_{i,j})` with `β_{i,j} > 0`, ascending in `j`.
    pub rows: Vec<Vec<(i32, usize)>>,
}

impl BettiTable {
    pub fn from_modules(modules: &[FreeModule]) -> Self {
        let rows = modules
            .iter()
            .map(|f| {
                let mut counts: BTreeMap<i32, usize> = BTreeMap::new();
                for &t in &f.twists {
                    *counts.entry(t).or_default() += 1;
                }
                counts.into_iter().collect()
            })
            .collect();
        BettiTable { rows }
    }

    /// Total Betti numbers `β_i`.
    pub fn totals(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().map(|(_, n)| n).sum()).collect()
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.rows
            .get(i)
            .and_then(|r| r.iter().find(|(d, _)| *d == j).map(|(_, n)| *n))
            .unwrap_or(0)
    }
}

/// A minimal graded free resolution `F_B → … → F_1 → F_0`, possibly
/// truncated.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub ring: Arc<GradedRing<F>>,
    /// `modules[i] = F_i`
    pub modules: Vec<FreeModule>,
    /// `maps[i-1] = ∂_i : F_i → F_{i-1}`
    pub maps: Vec<ModuleMap<F>>,
    pub bound: usize,
    /// Set when a zero syzygy module was reached at or before the bound.
    pub finite: bool,
    pub minimal: bool,
}

impl<F: Field> Resolution<F> {
    pub fn betti(&self) -> BettiTable {
        BettiTable::from_modules(&self.modules)
    }

    pub fn totals(&self) -> Vec<usize> {
        self.betti().totals()
    }

    /// `β_i`, zero past a finite end.
    pub fn beta(&self, i: usize) -> usize {
        self.modules.get(i).map(|f| f.rank()).unwrap_or(0)
    }

    /// Projective dimension when the resolution terminated.
    pub fn pd(&self) -> Option<usize> {
        if !self.finite {
            return None;
        }
        Some(self.modules.iter().rposition(|f| f.rank() > 0).unwrap_or(0))
    }

    /// `∂_i`, or a zero map outside the computed range.
    pub fn differential(&self, i: usize) -> ModuleMap<F> {
        if i >= 1 && i <= self.maps.len() {
            return self.maps[i - 1].clone();
        }
        let src = self.modules.get(i).cloned().unwrap_or_default();
        let tgt = if i == 0 {
            FreeModule::default()
        } else {
            self.modules.get(i - 1).cloned().unwrap_or_default()
        };
        ModuleMap::zero(&self.ring, src, tgt)
    }

    /// `∂_{i} ∘ ∂_{i+1} = 0` for every consecutive pair.
    pub fn composes_to_zero(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].compose(&self.ring, &w[1]).is_zero())
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.is_minimal())
    }

    /// Recompute `ker ∂_i` independently and check it lies in `im ∂_{i+1}`
    /// for `1 ≤ i < maps.len()` (and at the end when the resolution is finite).
    pub fn certify_exactness(&self) -> bool {
        let last = if self.finite {
            self.maps.len() + 1
        } else {
            self.maps.len()
        };
        for i in 1..last {
            let d = &self.maps[i - 1];
            let kernel = match Submodule::new(&self.ring, &d.target.twists, &d.source.twists, &d.columns) {
                Ok(s) => s.syzygies(),
                Err(_) => return false,
            };
            if i == self.maps.len() {
                if !kernel.is_empty() {
                    return false;
                }
                continue;
            }
            let next = &self.maps[i];
            let image = Submodule::new(&self.ring, &next.target.twists, &next.source.twists, &next.columns)
                .expect("validated map");
            if !kernel.iter().all(|(_, k)| image.contains(k)) {
                return false;
            }
        }
        true
    }

    pub fn to_json(&self) -> ResolutionJson {
        ResolutionJson {
            schema: 1,
            ring: self.ring.field().name(),
            bound: self.bound,
            finite: self.finite,
            pd: self.pd(),
            betti: self.betti().rows,
            totals: self.totals(),
            differentials: self.maps.iter().map(|m| m.to_strings()).collect(),
        }
    }
}

/// Serialized resolution: homological degree → `(twist, rank)` pairs, plus
/// differential matrices as polynomial strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionJson {
    pub schema: u32,
    pub ring: String,
    pub bound: usize,
    pub finite: bool,
    pub pd: Option<usize>,
    pub betti: Vec<Vec<(i32, usize)>>,
    pub totals: Vec<usize>,
    pub differentials: Vec<Vec<Vec<String>>>,
}

/// Minimal resolution through homological degree `bound` (over a polynomial
/// ring the computation always runs to the end).
pub fn minimal_free_resolution<F: Field>(m: &PresentedModule<F>, bound: usize) -> Resolution<F> {
    let ring = m.ring.clone();
    let bound = if ring.is_polynomial_ring() {
        bound.max(ring.nvars() + 1)
    } else {
        bound
    };
    let mp = minimal_presentation(m);
    let f0 = FreeModule::new(mp.gens.clone());
    let mut modules = vec![f0.clone()];
    let mut maps: Vec<ModuleMap<F>> = Vec::new();
    let mut finite = false;
    if mp.gens.is_empty() {
        finite = true;
    } else if bound >= 1 {
        let f1 = FreeModule::new(mp.rel_degrees.clone());
        if f1.rank() == 0 {
            finite = true;
        } else {
            maps.push(ModuleMap {
                source: f1.clone(),
                target: f0,
                columns: mp.rels.clone(),
            });
            modules.push(f1);
            for _ in 2..=bound {
                let d = maps.last().unwrap();
                let sub = Submodule::new(&ring, &d.target.twists, &d.source.twists, &d.columns).expect("validated map");
                let kept = minimal_generators(&ring, &d.source.twists, sub.syzygies());
                if kept.is_empty() {
                    finite = true;
                    break;
                }
                let (degs, cols): (Vec<i32>, Vec<Column<F>>) = kept.into_iter().unzip();
                let f = FreeModule::new(degs);
                maps.push(ModuleMap {
                    source: f.clone(),
                    target: d.source.clone(),
                    columns: cols,
                });
                modules.push(f);
            }
        }
    }
    if !finite && maps.len() == bound && bound > 0 {
        // the next syzygy module decides whether the resolution already ended
        let d = maps.last().unwrap();
        let sub = Submodule::new(&ring, &d.target.twists, &d.source.twists, &d.columns).expect("validated map");
        if sub.syzygies().is_empty() {
            finite = true;
        }
    }
    let minimal = maps.iter().all(|m| m.is_minimal());
    Resolution {
        ring,
        modules,
        maps,
        bound,
        finite,
        minimal,
    }
}

/// A free resolution whose first map is the given presentation of `M`
/// (possibly non-minimal); later maps are minimal generators of the kernels.
pub fn presentation_resolution<F: Field>(m: &PresentedModule<F>, bound: usize) -> Resolution<F> {
    let ring = m.ring.clone();
    let mut modules = vec![FreeModule::new(m.gens.clone())];
    let mut maps: Vec<ModuleMap<F>> = Vec::new();
    let mut finite = m.rels.is_empty();
    if !finite && bound >= 1 {
        let f1 = FreeModule::new(m.rel_degrees.clone());
        maps.push(ModuleMap {
            source: f1.clone(),
            target: modules[0].clone(),
            columns: m.rels.clone(),
        });
        modules.push(f1);
        for _ in 2..=bound {
            let d = maps.last().unwrap();
            let sub = Submodule::new(&ring, &d.target.twists, &d.source.twists, &d.columns).expect("validated map");
            let kept = minimal_generators(&ring, &d.source.twists, sub.syzygies());
            if kept.is_empty() {
                finite = true;
                break;
            }
            let (degs, cols): (Vec<i32>, Vec<Column<F>>) = kept.into_iter().unzip();
            let f = FreeModule::new(degs);
            maps.push(ModuleMap {
                source: f.clone(),
                target: d.source.clone(),
                columns: cols,
            });
            modules.push(f);
        }
    }
    let minimal = maps.iter().all(|m| m.is_minimal());
    Resolution {
        ring,
        modules,
        maps,
        bound,
        finite,
        minimal,
    }
}

/// `Ω^n M`, presented by the `n`-th and `(n+1)`-st terms of the minimal
/// resolution. `Ω^0 M = M`.
pub fn syzygy_module<F: Field>(m: &PresentedModule<F>, n: usize) -> PresentedModule<F> {
    if n == 0 {
        return m.clone();
    }
    let res = minimal_free_resolution(m, n + 1);
    let gens = res.modules.get(n).cloned().unwrap_or_default();
    if gens.rank() == 0 {
        return PresentedModule::zero(&m.ring);
    }
    let d = res.differential(n + 1);
    PresentedModule {
        ring: m.ring.clone(),
        gens: gens.twists,
        rels: d.columns,
        rel_degrees: d.source.twists,
    }
}

/// Outcome of a projective dimension computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PdCertificate {
    Finite(usize),
    UnknownBeyond(usize),
}

pub fn pd_certificate<F: Field>(m: &PresentedModule<F>, bound: usize) -> PdCertificate {
    let res = minimal_free_resolution(m, bound);
    match res.pd() {
        Some(p) => PdCertificate::Finite(p),
        None => PdCertificate::UnknownBeyond(bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::PolyRing;

    fn ring(vars: &[&str], gens: &[&str]) -> Arc<GradedRing<PrimeField>> {
        let s = PolyRing::standard(PrimeField::default(), vars);
        let gens = gens.iter().map(|g| Polynomial::parse(&s, g).unwrap()).collect();
        GradedRing::new(s, gens).unwrap()
    }

    fn col(r: &GradedRing<PrimeField>, entries: &[&str]) -> Column<PrimeField> {
        entries.iter().map(|e| r.parse(e).unwrap()).collect()
    }

    #[test]
    fn identity_relation_gives_zero_module() {
        let s = ring(&["x", "y"], &[]);
        let m = PresentedModule::new(&s, vec![0], vec![col(&s, &["1"])]).unwrap();
        assert_eq!(minimal_presentation(&m).ngens(), 0);
        assert!(m.is_zero());
    }

    #[test]
    fn unit_entry_is_eliminated() {
        let s = ring(&["x", "y"], &[]);
        // columns (x, 0) and (1, y): generator degrees 1 and 0
        let m = PresentedModule::new(&s, vec![1, 0], vec![col(&s, &["x", "0"]), col(&s, &["1", "y"])]).unwrap();
        let mp = minimal_presentation(&m);
        assert_eq!(mp.ngens(), 1);
        assert_eq!(mp.relations().len(), 1);
        for d in 0..5 {
            assert_eq!(mp.graded_dim(d), m.graded_dim(d));
        }
    }

    #[test]
    fn residue_field_over_artinian_ring() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let k = PresentedModule::residue_field(&r);
        let mp = minimal_presentation(&k);
        assert_eq!(mp.relations().len(), 2);
        let res = minimal_free_resolution(&k, 4);
        assert_eq!(res.totals(), vec![1, 2, 4, 8, 16]);
        assert!(res.composes_to_zero());
        assert!(res.is_minimal());
        assert!(res.certify_exactness());
        assert_eq!(pd_certificate(&k, 5), PdCertificate::UnknownBeyond(5));
    }

    #[test]
    fn koszul_resolution() {
        let s = ring(&["x", "y"], &[]);
        let k = PresentedModule::residue_field(&s);
        let res = minimal_free_resolution(&k, 2);
        assert_eq!(res.totals(), vec![1, 2, 1]);
        assert_eq!(res.pd(), Some(2));
        assert!(res.certify_exactness());
        let omega = syzygy_module(&k, 1);
        assert_eq!(omega.ngens(), 2);
        assert_eq!(omega.relations().len(), 1);
    }

    #[test]
    fn artinian_quotient_over_polynomial_ring() {
        let s = ring(&["x", "y"], &[]);
        let m = PresentedModule::cyclic(
            &s,
            &[
                s.parse("x^2").unwrap(),
                s.parse("x*y").unwrap(),
                s.parse("y^2").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(pd_certificate(&m, 0), PdCertificate::Finite(2));
        let free = PresentedModule::free(&s, vec![0, 3]);
        assert_eq!(pd_certificate(&free, 0), PdCertificate::Finite(0));
    }
}
