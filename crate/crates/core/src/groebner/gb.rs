//! Incremental homogeneous Buchberger algorithm for submodules of graded
//! free modules.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::monomial::Monomial;

use super::vector::{merge_into, ModTerm, ModuleOrder, ModuleVector};

#[derive(Clone, Debug)]
enum Work<F: Field> {
    Input(ModuleVector<F>),
    Pair { i: usize, j: usize, lcm: Monomial },
}

#[derive(Clone, Debug)]
struct Elem<F: Field> {
    v: ModuleVector<F>,
    lead_pos: u32,
    lead: Monomial,
    /// every term sits in the lead position
    pure: bool,
    /// belongs to a block of ideal generators inserted without mutual pairs
    ideal_block: Option<u32>,
}

/// Gröbner basis under construction, completed degree by degree.
///
/// Work items (input generators and S-pairs) are processed in increasing
/// degree, ties broken by creation order, so the resulting basis is a
/// deterministic function of the insertion sequence.
#[derive(Clone, Debug)]
pub struct GbState<F: Field> {
    field: F,
    nvars: usize,
    weights: Vec<u32>,
    order: ModuleOrder,
    elems: Vec<Elem<F>>,
    by_pos: Vec<Vec<usize>>,
    queue: BTreeMap<(i64, u64), Work<F>>,
    seq: u64,
    reductions: u64,
}

impl<F: Field> GbState<F> {
    pub fn new(field: F, weights: &[u32], order: ModuleOrder) -> Self {
        let rank = order.rank();
        GbState {
            field,
            nvars: weights.len(),
            weights: weights.to_vec(),
            order,
            elems: Vec::new(),
            by_pos: vec![Vec::new(); rank],
            queue: BTreeMap::new(),
            seq: 0,
            reductions: 0,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of S-vector and input reductions performed so far.
    pub fn reductions(&self) -> u64 {
        self.reductions
    }

    /// Insert `f * e_pos` for every `f` of an ideal Gröbner basis.
    ///
    /// Must be called before any generators are added. Pairs inside the
    /// block are skipped since they reduce to zero within the block.
    pub fn insert_ideal_block(&mut self, pos: u32, ideal_gb: &[Vec<ModTerm<F>>]) {
        for g in ideal_gb {
            let v = ModuleVector {
                terms: g.iter().map(|t| ModTerm { pos, ..t.clone() }).collect(),
            };
            self.insert(v, Some(pos));
        }
    }

    /// Queue a homogeneous generator. Zero vectors are ignored.
    pub fn add_generator(&mut self, v: ModuleVector<F>) {
        if let Some(d) = v.degree(&self.order) {
            debug_assert!(v.is_homogeneous(&self.order));
            let s = self.next_seq();
            self.queue.insert((d, s), Work::Input(v));
        }
    }

    fn next_seq(&mut self) -> u64 {
        self.seq += 1;
        self.seq
    }

    /// Lowest degree of pending work, if any.
    pub fn next_degree(&self) -> Option<i64> {
        self.queue.keys().next().map(|k| k.0)
    }

    pub fn is_complete(&self) -> bool {
        self.queue.is_empty()
    }

    /// Process all work of degree at most `d`; the basis is then a Gröbner
    /// basis in every degree up to `d`.
    pub fn complete_to(&mut self, d: i64) {
        while let Some(entry) = self.queue.first_entry() {
            if entry.key().0 > d {
                break;
            }
            let work = entry.remove();
            let v = match work {
                Work::Input(v) => v,
                Work::Pair { i, j, lcm } => self.s_vector(i, j, &lcm),
            };
            self.reductions += 1;
            let r = self.reduce(v);
            if !r.is_zero() {
                self.insert(r, None);
            }
        }
    }

    pub fn complete(&mut self) {
        self.complete_to(i64::MAX);
    }

    fn s_vector(&self, i: usize, j: usize, lcm: &Monomial) -> ModuleVector<F> {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let ma = a.lead.quotient_of(lcm);
        let mb = b.lead.quotient_of(lcm);
        let mut out = Vec::with_capacity(a.v.len() + b.v.len());
        let one = self.field.one();
        let minus = self.field.neg(&one);
        let left = a.v.mul_term(&self.field, &one, &ma);
        merge_into(
            &self.field,
            &self.order,
            &left.terms[1..],
            &b.v.terms[1..],
            &minus,
            Some(&mb),
            &mut out,
        );
        ModuleVector { terms: out }
    }

    fn find_reducer(&self, pos: u32, m: &Monomial) -> Option<usize> {
        self.by_pos[pos as usize]
            .iter()
            .copied()
            .find(|&k| self.elems[k].lead.divides(m))
    }

    /// Full reduction (all terms) against the current basis.
    pub fn reduce(&self, mut v: ModuleVector<F>) -> ModuleVector<F> {
        let mut i = 0;
        let mut buf = Vec::new();
        while i < v.terms.len() {
            let t = &v.terms[i];
            match self.find_reducer(t.pos, &t.mono) {
                Some(k) => {
                    let g = &self.elems[k];
                    let q = g.lead.quotient_of(&t.mono);
                    let c = self.field.neg(&t.coeff);
                    buf.clear();
                    buf.extend_from_slice(&v.terms[..i]);
                    merge_into(
                        &self.field,
                        &self.order,
                        &v.terms[i + 1..],
                        &g.v.terms[1..],
                        &c,
                        Some(&q),
                        &mut buf,
                    );
                    std::mem::swap(&mut v.terms, &mut buf);
                }
                None => i += 1,
            }
        }
        v
    }

    /// Whether `v` reduces to zero. Exact once the basis is complete up to
    /// the degree of `v`.
    pub fn contains(&self, v: &ModuleVector<F>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    fn insert(&mut self, mut v: ModuleVector<F>, ideal_block: Option<u32>) {
        v.make_monic(&self.field);
        let lead = v.lead().expect("nonzero").clone();
        let pure = v.terms.iter().all(|t| t.pos == lead.pos);
        let t = self.elems.len();
        let elem = Elem {
            v,
            lead_pos: lead.pos,
            lead: lead.mono.clone(),
            pure,
            ideal_block,
        };
        self.update_pairs(t, &elem);
        self.elems.push(elem);
        self.by_pos[lead.pos as usize].push(t);
    }

    /// Gebauer–Möller update for a new element with index `t`.
    fn update_pairs(&mut self, t: usize, new: &Elem<F>) {
        let pos = new.lead_pos;
        let twist = self.order.twist(pos) as i64;
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for &i in &self.by_pos[pos as usize] {
            let old = &self.elems[i];
            if new.ideal_block.is_some() && old.ideal_block == new.ideal_block {
                continue;
            }
            let lcm = old.lead.lcm(&new.lead, &self.weights);
            let coprime = old.pure && new.pure && old.lead.is_coprime(&new.lead);
            cands.push((i, lcm, coprime));
        }
        // chain criterion among the new pairs
        let n = cands.len();
        let mut keep = vec![true; n];
        for a in 0..n {
            for b in 0..n {
                if a != b && keep[b] && cands[b].1 != cands[a].1 && cands[b].1.divides(&cands[a].1) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // equal lcm: keep one, dropping the whole class if any member is coprime
        let mut chosen: Vec<(usize, Monomial)> = Vec::new();
        let mut seen: Vec<(Monomial, bool)> = Vec::new();
        for a in 0..n {
            if !keep[a] {
                continue;
            }
            let (i, ref lcm, coprime) = cands[a];
            match seen.iter_mut().find(|(m, _)| m == lcm) {
                Some(entry) => {
                    if coprime {
                        entry.1 = true;
                    }
                }
                None => {
                    seen.push((lcm.clone(), coprime));
                    chosen.push((i, lcm.clone()));
                }
            }
        }
        // old pairs made redundant by the new lead
        let weights = &self.weights;
        let elems = &self.elems;
        self.queue.retain(|_, w| match w {
            Work::Input(_) => true,
            Work::Pair { i, j, lcm } => {
                if elems[*i].lead_pos != pos || !new.lead.divides(lcm) {
                    return true;
                }
                let li = elems[*i].lead.lcm(&new.lead, weights);
                let lj = elems[*j].lead.lcm(&new.lead, weights);
                li == *lcm || lj == *lcm
            }
        });
        for (i, lcm) in chosen {
            if seen.iter().any(|(m, cop)| *cop && *m == lcm) {
                continue;
            }
            let d = lcm.degree() as i64 + twist;
            let s = self.next_seq();
            self.queue.insert((d, s), Work::Pair { i, j: t, lcm });
        }
    }

    /// All basis elements in insertion order (not necessarily reduced).
    pub fn elements(&self) -> impl Iterator<Item = &ModuleVector<F>> {
        self.elems.iter().map(|e| &e.v)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Reduced Gröbner basis: minimal leads, tails fully reduced, monic,
    /// sorted ascending by lead term.
    pub fn reduced_basis(&self) -> Vec<ModuleVector<F>> {
        let mut minimal: Vec<usize> = Vec::new();
        for (k, e) in self.elems.iter().enumerate() {
            let redundant = self.by_pos[e.lead_pos as usize]
                .iter()
                .any(|&o| o != k && self.elems[o].lead.divides(&e.lead) && (self.elems[o].lead != e.lead || o < k));
            if !redundant {
                minimal.push(k);
            }
        }
        let mut reducer = GbState::new(self.field.clone(), &self.weights, self.order.clone());
        for &k in &minimal {
            let e = &self.elems[k];
            reducer.elems.push(e.clone());
            reducer.by_pos[e.lead_pos as usize].push(reducer.elems.len() - 1);
        }
        let mut out: Vec<ModuleVector<F>> = minimal
            .iter()
            .map(|&k| {
                let v = &self.elems[k].v;
                let tail = ModuleVector {
                    terms: v.terms[1..].to_vec(),
                };
                let mut terms = vec![v.terms[0].clone()];
                terms.extend(reducer.reduce(tail).terms);
                ModuleVector { terms }
            })
            .collect();
        out.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            self.order.cmp_terms(x.pos, &x.mono, y.pos, &y.mono)
        });
        out
    }

    /// Check that every S-vector of the current basis reduces to zero.
    pub fn is_groebner(&self) -> bool {
        for j in 0..self.elems.len() {
            for i in 0..j {
                let (a, b) = (&self.elems[i], &self.elems[j]);
                if a.lead_pos != b.lead_pos {
                    continue;
                }
                let lcm = a.lead.lcm(&b.lead, &self.weights);
                if !self.reduce(self.s_vector(i, j, &lcm)).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}
