//! Elements of graded free modules, stored as sorted term lists.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial, Term};

/// Position-over-term order on a graded free module.
///
/// Positions are ranked by twist, then index (lower twist ranks higher), and
/// every term in a higher-ranked position beats every term in a lower one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    twists: Vec<i32>,
    rank: Vec<u32>,
}

impl ModuleOrder {
    pub fn new(mono: MonomialOrder, twists: &[i32]) -> Self {
        let rank = rank_by_twist(twists, 0);
        ModuleOrder {
            mono,
            twists: twists.to_vec(),
            rank,
        }
    }

    /// Order on `A ⊕ B` in which every position of `A` outranks every
    /// position of `B`; restricted to either block it agrees with
    /// [`ModuleOrder::new`].
    pub fn stacked(mono: MonomialOrder, upper: &[i32], lower: &[i32]) -> Self {
        let mut rank = rank_by_twist(upper, lower.len() as u32);
        rank.extend(rank_by_twist(lower, 0));
        let mut twists = upper.to_vec();
        twists.extend_from_slice(lower);
        ModuleOrder { mono, twists, rank }
    }

    #[inline]
    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    #[inline]
    pub fn twist(&self, pos: u32) -> i32 {
        self.twists[pos as usize]
    }

    #[inline]
    pub fn cmp_terms(&self, pa: u32, ma: &Monomial, pb: u32, mb: &Monomial) -> Ordering {
        match self.rank[pa as usize].cmp(&self.rank[pb as usize]) {
            Ordering::Equal => self.mono.cmp(ma, mb),
            o => o,
        }
    }

    #[inline]
    pub fn term_degree(&self, pos: u32, m: &Monomial) -> i64 {
        m.degree() as i64 + self.twists[pos as usize] as i64
    }
}

fn rank_by_twist(twists: &[i32], base: u32) -> Vec<u32> {
    let mut idx: Vec<usize> = (0..twists.len()).collect();
    // lowest twist, then lowest index, gets the highest rank
    idx.sort_by(|&a, &b| twists[b].cmp(&twists[a]).then(b.cmp(&a)));
    let mut rank = vec![0; twists.len()];
    for (r, i) in idx.into_iter().enumerate() {
        rank[i] = base + r as u32;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModTerm<F: Field> {
    pub coeff: F::Elem,
    pub mono: Monomial,
    pub pos: u32,
}

/// An element of a graded free module `⊕ R(-twist_i)`.
///
/// Terms are kept strictly descending in the module order the vector was
/// built with; all functions that combine vectors take that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleVector<F: Field> {
    pub(crate) terms: Vec<ModTerm<F>>,
}

impl<F: Field> Default for ModuleVector<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> ModuleVector<F> {
    pub fn zero() -> Self {
        ModuleVector { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[ModTerm<F>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&ModTerm<F>> {
        self.terms.first()
    }

    /// Basis vector `e_pos`.
    pub fn basis(field: &F, nvars: usize, pos: u32) -> Self {
        ModuleVector {
            terms: vec![ModTerm {
                coeff: field.one(),
                mono: Monomial::one(nvars),
                pos,
            }],
        }
    }

    /// Sort and combine arbitrary terms.
    pub fn from_raw(field: &F, order: &ModuleOrder, mut raw: Vec<ModTerm<F>>) -> Self {
        raw.sort_by(|a, b| order.cmp_terms(b.pos, &b.mono, a.pos, &a.mono));
        let mut out: Vec<ModTerm<F>> = Vec::with_capacity(raw.len());
        for t in raw {
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.mono == t.mono => {
                    last.coeff = field.add(&last.coeff, &t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !field.is_zero(&t.coeff));
        ModuleVector { terms: out }
    }

    /// Vector whose `i`-th component is `comps[i]`.
    pub fn from_components(order: &ModuleOrder, comps: &[Polynomial<F>]) -> Self {
        let field = match comps.first() {
            Some(p) => p.ring().field.clone(),
            None => return Self::zero(),
        };
        let raw = comps
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.terms().iter().map(move |t| ModTerm {
                    coeff: t.coeff.clone(),
                    mono: t.mono.clone(),
                    pos: i as u32,
                })
            })
            .collect();
        Self::from_raw(&field, order, raw)
    }

    /// Single-component vector `p * e_pos`.
    pub fn from_poly(p: &Polynomial<F>, pos: u32) -> Self {
        ModuleVector {
            terms: p
                .terms()
                .iter()
                .map(|t| ModTerm {
                    coeff: t.coeff.clone(),
                    mono: t.mono.clone(),
                    pos,
                })
                .collect(),
        }
    }

    pub fn component(&self, ring: &Arc<PolyRing<F>>, pos: u32) -> Polynomial<F> {
        let mut terms: Vec<Term<F>> = self
            .terms
            .iter()
            .filter(|t| t.pos == pos)
            .map(|t| Term {
                coeff: t.coeff.clone(),
                mono: t.mono.clone(),
            })
            .collect();
        terms.sort_by(|a, b| ring.order.cmp(&b.mono, &a.mono));
        Polynomial::from_sorted(ring, terms)
    }

    pub fn components(&self, ring: &Arc<PolyRing<F>>, rank: usize) -> Vec<Polynomial<F>> {
        (0..rank as u32).map(|i| self.component(ring, i)).collect()
    }

    /// Degree of a homogeneous vector (degree of its lead term).
    pub fn degree(&self, order: &ModuleOrder) -> Option<i64> {
        self.terms.first().map(|t| order.term_degree(t.pos, &t.mono))
    }

    pub fn is_homogeneous(&self, order: &ModuleOrder) -> bool {
        match self.degree(order) {
            None => true,
            Some(d) => self.terms.iter().all(|t| order.term_degree(t.pos, &t.mono) == d),
        }
    }

    pub fn is_sorted(&self, field: &F, order: &ModuleOrder) -> bool {
        self.terms.iter().all(|t| !field.is_zero(&t.coeff))
            && self
                .terms
                .windows(2)
                .all(|w| order.cmp_terms(w[0].pos, &w[0].mono, w[1].pos, &w[1].mono) == Ordering::Greater)
    }

    pub fn max_pos(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.pos).max()
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    coeff: field.mul(&t.coeff, c),
                    mono: t.mono.clone(),
                    pos: t.pos,
                })
                .collect(),
        }
    }

    pub fn neg(&self, field: &F) -> Self {
        self.scale(field, &field.neg(&field.one()))
    }

    /// `c * m * self`; monomial multiplication preserves term order.
    pub fn mul_term(&self, field: &F, c: &F::Elem, m: &Monomial) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    coeff: field.mul(&t.coeff, c),
                    mono: t.mono.mul(m),
                    pos: t.pos,
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, field: &F, order: &ModuleOrder, p: &Polynomial<F>) -> Self {
        let mut acc = Self::zero();
        for t in p.terms() {
            acc = acc.add_scaled(field, order, &self.mul_term(field, &t.coeff, &t.mono), &field.one());
        }
        acc
    }

    pub fn add(&self, field: &F, order: &ModuleOrder, other: &Self) -> Self {
        self.add_scaled(field, order, other, &field.one())
    }

    pub fn sub(&self, field: &F, order: &ModuleOrder, other: &Self) -> Self {
        self.add_scaled(field, order, other, &field.neg(&field.one()))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, field: &F, order: &ModuleOrder, other: &Self, c: &F::Elem) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        merge_into(field, order, &self.terms, &other.terms, c, None, &mut out);
        ModuleVector { terms: out }
    }

    /// Re-sort under another order, renumbering positions through `map`.
    pub fn remap(&self, field: &F, order: &ModuleOrder, map: impl Fn(u32) -> u32) -> Self {
        let raw = self
            .terms
            .iter()
            .map(|t| ModTerm {
                coeff: t.coeff.clone(),
                mono: t.mono.clone(),
                pos: map(t.pos),
            })
            .collect();
        Self::from_raw(field, order, raw)
    }

    /// Keep only positions in `range`, shifted down to start at zero.
    pub fn restrict(&self, range: std::ops::Range<u32>) -> Self {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .filter(|t| range.contains(&t.pos))
                .map(|t| ModTerm {
                    coeff: t.coeff.clone(),
                    mono: t.mono.clone(),
                    pos: t.pos - range.start,
                })
                .collect(),
        }
    }

    /// Make the lead coefficient one.
    pub fn make_monic(&mut self, field: &F) {
        if let Some(l) = self.terms.first() {
            if !field.is_one(&l.coeff) {
                let inv = field.inv(&l.coeff).expect("nonzero lead");
                for t in &mut self.terms {
                    t.coeff = field.mul(&t.coeff, &inv);
                }
            }
        }
    }
}

/// Merge `a + c * m * b` into `out`, where `m` is an optional monomial factor.
pub(crate) fn merge_into<F: Field>(
    field: &F,
    order: &ModuleOrder,
    a: &[ModTerm<F>],
    b: &[ModTerm<F>],
    c: &F::Elem,
    m: Option<&Monomial>,
    out: &mut Vec<ModTerm<F>>,
) {
    let scaled = |t: &ModTerm<F>| ModTerm {
        coeff: field.mul(c, &t.coeff),
        mono: match m {
            Some(m) => t.mono.mul(m),
            None => t.mono.clone(),
        },
        pos: t.pos,
    };
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<ModTerm<F>> = b.first().map(scaled);
    while i < a.len() {
        let Some(bt) = pending.as_ref() else { break };
        match order.cmp_terms(a[i].pos, &a[i].mono, bt.pos, &bt.mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(pending.take().unwrap());
                j += 1;
                pending = b.get(j).map(scaled);
            }
            Ordering::Equal => {
                let s = field.add(&a[i].coeff, &bt.coeff);
                if !field.is_zero(&s) {
                    out.push(ModTerm {
                        coeff: s,
                        mono: a[i].mono.clone(),
                        pos: a[i].pos,
                    });
                }
                i += 1;
                j += 1;
                pending = b.get(j).map(scaled);
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    if let Some(t) = pending {
        out.push(t);
        for t in &b[j + 1..] {
            out.push(scaled(t));
        }
    }
}
