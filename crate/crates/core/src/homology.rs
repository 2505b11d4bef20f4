//! Bounded chain complexes of presented modules, their homology, tensor
//! products with free complexes, Tor, Ext, Koszul complexes and good
//! truncation.

use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{relative_syzygies, Column, GradedRing};
use crate::poly::Polynomial;
use crate::resolve::{
    minimal_free_resolution, minimal_generators, minimal_presentation_tracked, FreeModule, ModuleMap, PresentedModule,
    Resolution,
};

/// A complex `X_hi → … → X_lo` indexed homologically.
///
/// Terms are presented modules; the differential `∂_i : X_i → X_{i-1}` is a
/// matrix on generators, well defined modulo the relations.
#[derive(Clone, Debug)]
pub struct ChainComplex<F: Field> {
    ring: Arc<GradedRing<F>>,
    lo: i64,
    terms: Vec<PresentedModule<F>>,
    /// `maps[k] = ∂_{lo+k+1}`
    maps: Vec<ModuleMap<F>>,
    /// Homology at the top index is an artifact of cutting off a longer complex.
    pub truncated_top: bool,
}

impl<F: Field> ChainComplex<F> {
    /// Build and validate: shapes, homogeneity, well-definedness and `∂² = 0`.
    pub fn new(
        ring: &Arc<GradedRing<F>>,
        lo: i64,
        terms: Vec<PresentedModule<F>>,
        maps: Vec<ModuleMap<F>>,
    ) -> Result<Self> {
        let x = Self::unchecked(ring, lo, terms, maps);
        x.validate()?;
        Ok(x)
    }

    pub(crate) fn unchecked(
        ring: &Arc<GradedRing<F>>,
        lo: i64,
        terms: Vec<PresentedModule<F>>,
        maps: Vec<ModuleMap<F>>,
    ) -> Self {
        ChainComplex {
            ring: ring.clone(),
            lo,
            terms,
            maps,
            truncated_top: false,
        }
    }

    /// The module `M` placed in homological degree `at`.
    pub fn single(m: &PresentedModule<F>, at: i64) -> Self {
        Self::unchecked(m.ring(), at, vec![m.clone()], Vec::new())
    }

    /// The free complex of a resolution, with the top flagged as truncated
    /// unless the resolution ended.
    pub fn from_resolution(res: &Resolution<F>) -> Self {
        let terms = res
            .modules
            .iter()
            .map(|f| PresentedModule::free(&res.ring, f.twists.clone()))
            .collect();
        let mut x = Self::unchecked(&res.ring, 0, terms, res.maps.clone());
        x.truncated_top = !res.finite;
        x
    }

    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `X_i`, or the zero module outside the window.
    pub fn term(&self, i: i64) -> PresentedModule<F> {
        if i < self.lo || i > self.hi() {
            return PresentedModule::zero(&self.ring);
        }
        self.terms[(i - self.lo) as usize].clone()
    }

    fn term_ref(&self, i: i64) -> Option<&PresentedModule<F>> {
        if i < self.lo || i > self.hi() {
            None
        } else {
            Some(&self.terms[(i - self.lo) as usize])
        }
    }

    /// `∂_i`, a zero map at the boundary.
    pub fn differential(&self, i: i64) -> ModuleMap<F> {
        if i > self.lo && i <= self.hi() {
            return self.maps[(i - self.lo - 1) as usize].clone();
        }
        let src = self.term(i).generator_module();
        let tgt = self.term(i - 1).generator_module();
        ModuleMap::zero(&self.ring, src, tgt)
    }

    pub fn validate(&self) -> Result<()> {
        if self.terms.len() != self.maps.len() + 1 && !(self.terms.is_empty() && self.maps.is_empty()) {
            return Err(AlgebraError::Invalid(
                "complex needs one map between consecutive terms".into(),
            ));
        }
        for i in self.lo + 1..=self.hi() {
            let d = self.differential(i);
            let (src, tgt) = (self.term(i), self.term(i - 1));
            if d.source.twists != src.gens() || d.target.twists != tgt.gens() {
                return Err(AlgebraError::RankMismatch {
                    expected: src.ngens(),
                    found: d.source.rank(),
                });
            }
            ModuleMap::new(&self.ring, d.source.clone(), d.target.clone(), d.columns.clone())?;
            let target_rels = tgt.relation_submodule();
            for r in src.relations() {
                if !target_rels.contains(&d.apply(&self.ring, r)) {
                    return Err(AlgebraError::Invalid(format!(
                        "differential at {i} is not well defined"
                    )));
                }
            }
        }
        if !self.squares_to_zero() {
            return Err(AlgebraError::Invalid("differential does not square to zero".into()));
        }
        Ok(())
    }

    /// `∂_{i-1} ∘ ∂_i ≡ 0` modulo the relations of `X_{i-2}`.
    pub fn squares_to_zero(&self) -> bool {
        for i in self.lo + 2..=self.hi() {
            let comp = self.differential(i - 1).compose(&self.ring, &self.differential(i));
            let rels = self.term(i - 2).relation_submodule();
            if !comp.columns.iter().all(|c| rels.contains(c)) {
                return false;
            }
        }
        true
    }

    /// `X[s]`: `X[s]_n = X_{n-s}`, differentials multiplied by `(-1)^s`.
    pub fn shift(&self, s: i64) -> Self {
        let sign = s.rem_euclid(2) == 1;
        let maps = self
            .maps
            .iter()
            .map(|m| {
                if !sign {
                    return m.clone();
                }
                ModuleMap {
                    source: m.source.clone(),
                    target: m.target.clone(),
                    columns: m.columns.iter().map(|c| c.iter().map(|p| p.neg()).collect()).collect(),
                }
            })
            .collect();
        ChainComplex {
            ring: self.ring.clone(),
            lo: self.lo + s,
            terms: self.terms.clone(),
            maps,
            truncated_top: self.truncated_top,
        }
    }

    /// `H_i(X)`, minimally presented. Indices outside `[lo, hi]` are refused.
    pub fn homology_at(&self, i: i64) -> Result<PresentedModule<F>> {
        Ok(self.homology_with_cycles(i)?.0)
    }

    /// `H_i(X)` together with cycles in `X_i` representing its generators.
    pub fn homology_with_cycles(&self, i: i64) -> Result<(PresentedModule<F>, Vec<Column<F>>)> {
        if self.terms.is_empty() {
            return Ok((PresentedModule::zero(&self.ring), Vec::new()));
        }
        if i < self.lo || i > self.hi() {
            return Err(AlgebraError::Window {
                index: i,
                lo: self.lo,
                hi: self.hi(),
            });
        }
        homology_of(
            &self.ring,
            self.term_ref(i).unwrap(),
            &self.differential(i),
            self.term_ref(i - 1),
            &self.differential(i + 1),
        )
    }

    /// Largest `i` with `H_i ≠ 0`, `None` for an exact complex.
    pub fn sup(&self) -> Result<Option<i64>> {
        for i in (self.lo..=self.hi()).rev() {
            if self.homology_at(i)?.ngens() > 0 {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Smallest `i` with `H_i ≠ 0`.
    pub fn inf(&self) -> Result<Option<i64>> {
        for i in self.lo..=self.hi() {
            if self.homology_at(i)?.ngens() > 0 {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// The same complex read over the ambient polynomial ring.
    pub fn over_ambient(&self) -> Self {
        let s = self.ring.ambient();
        ChainComplex {
            ring: s,
            lo: self.lo,
            terms: self.terms.iter().map(|t| t.over_ambient()).collect(),
            maps: self.maps.clone(),
            truncated_top: self.truncated_top,
        }
    }

    /// Total complex of `K ⊗ X` for a complex `K` of free modules, with the
    /// sign `(-1)^a` on `K_a ⊗ ∂^X`.
    pub fn tensor_free(k: &ChainComplex<F>, x: &ChainComplex<F>) -> Result<Self> {
        if k.terms.iter().any(|t| !t.is_free()) {
            return Err(AlgebraError::Invalid(
                "left factor must be a complex of free modules".into(),
            ));
        }
        let ring = x.ring.clone();
        if k.is_empty() || x.is_empty() {
            return Ok(Self::unchecked(&ring, 0, Vec::new(), Vec::new()));
        }
        let lo = k.lo + x.lo;
        let hi = k.hi() + x.hi();
        // index layout of each total degree: blocks (a, b) with a ascending
        let blocks = |n: i64| -> Vec<(i64, i64)> {
            (k.lo..=k.hi())
                .filter_map(|a| {
                    let b = n - a;
                    (b >= x.lo && b <= x.hi()).then_some((a, b))
                })
                .collect()
        };
        let block_gens = |a: i64, b: i64| -> Vec<i32> {
            let mut g = Vec::new();
            for &t in k.term(a).gens() {
                g.extend(x.term(b).gens().iter().map(|d| d + t));
            }
            g
        };
        let mut terms = Vec::new();
        for n in lo..=hi {
            let mut gens = Vec::new();
            let mut rels = Vec::new();
            let mut degs = Vec::new();
            let mut offset = 0;
            let total: usize = blocks(n).iter().map(|&(a, b)| block_gens(a, b).len()).sum();
            for (a, b) in blocks(n) {
                let xt = x.term(b);
                let g = xt.ngens();
                for (r, &t) in k.term(a).gens().iter().enumerate() {
                    for (c, &dr) in xt.relations().iter().zip(xt.relation_degrees()) {
                        let mut col = vec![ring.zero(); total];
                        for (i, p) in c.iter().enumerate() {
                            col[offset + r * g + i] = p.clone();
                        }
                        rels.push(col);
                        degs.push(dr + t);
                    }
                }
                let bg = block_gens(a, b);
                offset += bg.len();
                gens.extend(bg);
            }
            terms.push(PresentedModule::with_degrees(&ring, gens, rels, degs)?);
        }
        let mut maps = Vec::new();
        for n in lo + 1..=hi {
            let src_blocks = blocks(n);
            let dst_blocks = blocks(n - 1);
            let dst_offset = |a: i64| -> Option<usize> {
                let mut off = 0;
                for &(a2, b2) in &dst_blocks {
                    if a2 == a {
                        return Some(off);
                    }
                    off += block_gens(a2, b2).len();
                }
                None
            };
            let dst_total: usize = dst_blocks.iter().map(|&(a, b)| block_gens(a, b).len()).sum();
            let mut columns = Vec::new();
            let mut src_twists = Vec::new();
            for (a, b) in src_blocks {
                let dk = k.differential(a);
                let dx = x.differential(b);
                let kg = k.term(a).ngens();
                let xg = x.term(b).ngens();
                let sign_neg = a.rem_euclid(2) == 1;
                for r in 0..kg {
                    for i in 0..xg {
                        let mut col = vec![ring.zero(); dst_total];
                        // ∂K ⊗ 1
                        if let Some(off) = dst_offset(a - 1) {
                            for (r2, e) in dk.columns[r].iter().enumerate() {
                                if !e.is_zero() {
                                    col[off + r2 * xg + i] = e.clone();
                                }
                            }
                        }
                        // (-1)^a 1 ⊗ ∂X
                        if b > x.lo {
                            if let Some(off) = dst_offset(a) {
                                let xg2 = x.term(b - 1).ngens();
                                for (i2, e) in dx.columns[i].iter().enumerate() {
                                    if !e.is_zero() {
                                        let v = if sign_neg { e.neg() } else { e.clone() };
                                        col[off + r * xg2 + i2] = v;
                                    }
                                }
                            }
                        }
                        columns.push(col);
                        src_twists.push(k.term(a).gens()[r] + x.term(b).gens()[i]);
                    }
                }
            }
            let tgt = terms[(n - 1 - lo) as usize].generator_module();
            maps.push(ModuleMap::new(&ring, FreeModule::new(src_twists), tgt, columns)?);
        }
        let mut out = Self::unchecked(&ring, lo, terms, maps);
        out.truncated_top = x.truncated_top || k.truncated_top;
        Ok(out)
    }

    /// `X ⊗ N` for a complex of free modules `X`.
    pub fn tensor_module(&self, n: &PresentedModule<F>) -> Result<Self> {
        if !self.ring.same_as(n.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
        let single = ChainComplex::single(n, 0);
        Self::tensor_free(self, &single)
    }
}

/// `ker(∂_i) / (im ∂_{i+1} + relations)` on `X_i = P_i / R_i`, minimally
/// presented, with a cycle representing each generator.
fn homology_of<F: Field>(
    ring: &Arc<GradedRing<F>>,
    xi: &PresentedModule<F>,
    d_out: &ModuleMap<F>,
    below: Option<&PresentedModule<F>>,
    d_in: &ModuleMap<F>,
) -> Result<(PresentedModule<F>, Vec<Column<F>>)> {
    let gens = xi.gens().to_vec();
    if gens.is_empty() {
        return Ok((PresentedModule::zero(ring), Vec::new()));
    }
    let cycles: Vec<(i32, Column<F>)> = match below {
        Some(b) if b.ngens() > 0 && !d_out.is_zero() => {
            let z = relative_syzygies(
                ring,
                b.gens(),
                &gens,
                &d_out.columns,
                b.relation_degrees(),
                b.relations(),
            )?;
            minimal_generators(ring, &gens, z)
        }
        _ => identity_columns(ring, &gens),
    };
    if cycles.is_empty() {
        return Ok((PresentedModule::zero(ring), Vec::new()));
    }
    let (zdeg, zcols): (Vec<i32>, Vec<Column<F>>) = cycles.into_iter().unzip();
    let mut bdeg = d_in.source.twists.clone();
    let mut bcols = d_in.columns.clone();
    bdeg.extend_from_slice(xi.relation_degrees());
    bcols.extend(xi.relations().iter().cloned());
    let (rdeg, rels): (Vec<i32>, Vec<Column<F>>) = relative_syzygies(ring, &gens, &zdeg, &zcols, &bdeg, &bcols)?
        .into_iter()
        .unzip();
    let h = PresentedModule::with_degrees(ring, zdeg, rels, rdeg)?;
    let (h, kept) = minimal_presentation_tracked(&h);
    let reps = kept.into_iter().map(|i| zcols[i].clone()).collect();
    Ok((h, reps))
}

fn identity_columns<F: Field>(ring: &GradedRing<F>, gens: &[i32]) -> Vec<(i32, Column<F>)> {
    (0..gens.len())
        .map(|j| {
            let c = (0..gens.len())
                .map(|i| if i == j { ring.one() } else { ring.zero() })
                .collect();
            (gens[j], c)
        })
        .collect()
}

/// `F_M ⊗ N` for a resolution `F_M` of `M`.
pub fn tensor_resolution<F: Field>(res: &Resolution<F>, n: &PresentedModule<F>) -> Result<ChainComplex<F>> {
    ChainComplex::from_resolution(res).tensor_module(n)
}

/// `Tor_i(M, N)` for `i = 0..=bound`, from the minimal resolution of `M`.
pub fn tor<F: Field>(m: &PresentedModule<F>, n: &PresentedModule<F>, bound: usize) -> Result<Vec<PresentedModule<F>>> {
    if !m.ring().same_as(n.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    let res = minimal_free_resolution(m, bound + 1);
    let x = tensor_resolution(&res, n)?;
    (0..=bound as i64)
        .map(|i| {
            if x.is_empty() || i > x.hi() {
                Ok(PresentedModule::zero(m.ring()))
            } else {
                x.homology_at(i)
            }
        })
        .collect()
}

/// The cochain complex `Hom(F, N)` re-indexed homologically: `Hom(F_i, N)`
/// sits in degree `-i`.
pub fn hom_complex<F: Field>(res: &Resolution<F>, n: &PresentedModule<F>) -> Result<ChainComplex<F>> {
    let ring = res.ring.clone();
    let len = res.modules.len();
    if len == 0 {
        return Ok(ChainComplex::unchecked(&ring, 0, Vec::new(), Vec::new()));
    }
    let ng = n.ngens();
    let term = |i: usize| -> Result<PresentedModule<F>> {
        let f = &res.modules[i];
        let mut gens = Vec::new();
        let mut rels = Vec::new();
        let mut degs = Vec::new();
        let total = f.rank() * ng;
        for (g, &a) in f.twists.iter().enumerate() {
            gens.extend(n.gens().iter().map(|c| c - a));
            for (c, &d) in n.relations().iter().zip(n.relation_degrees()) {
                let mut col = vec![ring.zero(); total];
                for (k, p) in c.iter().enumerate() {
                    col[g * ng + k] = p.clone();
                }
                rels.push(col);
                degs.push(d - a);
            }
        }
        PresentedModule::with_degrees(&ring, gens, rels, degs)
    };
    // terms in homological order: index -(len-1) .. 0
    let mut terms = Vec::new();
    for i in (0..len).rev() {
        terms.push(term(i)?);
    }
    let mut maps = Vec::new();
    // map from homological index -i (Hom(F_i)) to -(i+1) (Hom(F_{i+1}))
    for i in (0..len - 1).rev() {
        let d = &res.maps[i];
        let src = &terms[len - 1 - i];
        let tgt = &terms[len - 2 - i];
        let fi = &res.modules[i];
        let fj = &res.modules[i + 1];
        let mut columns = Vec::new();
        for g in 0..fi.rank() {
            for k in 0..ng {
                let mut col = vec![ring.zero(); fj.rank() * ng];
                for h in 0..fj.rank() {
                    let e = &d.columns[h][g];
                    if !e.is_zero() {
                        col[h * ng + k] = e.clone();
                    }
                }
                columns.push(col);
            }
        }
        maps.push(ModuleMap::new(
            &ring,
            src.generator_module(),
            tgt.generator_module(),
            columns,
        )?);
    }
    Ok(ChainComplex::unchecked(&ring, -(len as i64 - 1), terms, maps))
}

/// `Ext^i(M, N)` for `i = 0..=bound`.
pub fn ext<F: Field>(m: &PresentedModule<F>, n: &PresentedModule<F>, bound: usize) -> Result<Vec<PresentedModule<F>>> {
    if !m.ring().same_as(n.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    let res = minimal_free_resolution(m, bound + 1);
    let x = hom_complex(&res, n)?;
    (0..=bound as i64)
        .map(|i| {
            if x.is_empty() || -i < x.lo() {
                Ok(PresentedModule::zero(m.ring()))
            } else {
                x.homology_at(-i)
            }
        })
        .collect()
}

/// The Koszul complex on homogeneous elements of the maximal ideal.
#[derive(Clone, Debug)]
pub struct KoszulComplex<F: Field> {
    pub elements: Vec<Polynomial<F>>,
    pub complex: ChainComplex<F>,
}

pub fn koszul<F: Field>(ring: &Arc<GradedRing<F>>, elements: &[Polynomial<F>]) -> Result<KoszulComplex<F>> {
    let mut degs = Vec::new();
    for (index, x) in elements.iter().enumerate() {
        match x.homogeneous_degree() {
            Ok(Some(d)) if d > 0 => degs.push(d as i32),
            Ok(Some(_)) => return Err(AlgebraError::NotInMaximalIdeal { index }),
            Ok(None) => return Err(AlgebraError::Inhomogeneous { index }),
            Err(_) => degs.push(-1),
        }
    }
    // the zero element has no degree; treat it as degree 1
    let degs: Vec<i32> = degs.into_iter().map(|d| if d < 0 { 1 } else { d }).collect();
    let c = elements.len();
    let subsets = |j: usize| -> Vec<u32> { (0u32..1 << c).filter(|s| s.count_ones() as usize == j).collect() };
    let twist = |s: u32| -> i32 { (0..c).filter(|i| s >> i & 1 == 1).map(|i| degs[i]).sum() };
    let mut terms = Vec::new();
    for j in 0..=c {
        terms.push(PresentedModule::free(ring, subsets(j).into_iter().map(twist).collect()));
    }
    let mut maps = Vec::new();
    for j in 1..=c {
        let src = subsets(j);
        let tgt = subsets(j - 1);
        let columns = src
            .iter()
            .map(|&s| {
                let mut col = vec![ring.zero(); tgt.len()];
                let mut sign = false;
                for (i, x) in elements.iter().enumerate() {
                    if s >> i & 1 == 1 {
                        let t = s & !(1 << i);
                        let row = tgt.iter().position(|&x| x == t).unwrap();
                        col[row] = if sign { x.neg() } else { x.clone() };
                        sign = !sign;
                    }
                }
                col
            })
            .collect();
        maps.push(ModuleMap::new(
            ring,
            FreeModule::new(src.into_iter().map(twist).collect()),
            FreeModule::new(tgt.into_iter().map(twist).collect()),
            columns,
        )?);
    }
    Ok(KoszulComplex {
        elements: elements.to_vec(),
        complex: ChainComplex::new(ring, 0, terms, maps)?,
    })
}

/// Good truncation `τ≤q X`: terms below `q` unchanged, `X_q` replaced by
/// `X_q / im ∂_{q+1}`, everything above dropped.
pub fn good_truncation_below<F: Field>(x: &ChainComplex<F>, q: i64) -> Result<ChainComplex<F>> {
    if q > x.hi() {
        return Err(AlgebraError::Window {
            index: q,
            lo: x.lo(),
            hi: x.hi(),
        });
    }
    if q < x.lo() {
        return Ok(ChainComplex::unchecked(x.ring(), x.lo(), Vec::new(), Vec::new()));
    }
    let ring = x.ring().clone();
    let mut terms = Vec::new();
    for i in x.lo()..q {
        terms.push(x.term(i));
    }
    let xq = x.term(q);
    let d = x.differential(q + 1);
    let mut rels = xq.relations().to_vec();
    let mut degs = xq.relation_degrees().to_vec();
    rels.extend(d.columns.iter().cloned());
    degs.extend_from_slice(&d.source.twists);
    terms.push(PresentedModule::with_degrees(&ring, xq.gens().to_vec(), rels, degs)?);
    let maps = (x.lo() + 1..=q).map(|i| x.differential(i)).collect();
    Ok(ChainComplex::unchecked(&ring, x.lo(), terms, maps))
}
