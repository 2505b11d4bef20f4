use std::sync::{Arc, OnceLock};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::{PolyRing, Polynomial};

use super::gb::GbState;
use super::vector::{ModTerm, ModuleOrder, ModuleVector};

/// A graded quotient `R = S/I` of a weighted polynomial ring `S` by a
/// homogeneous ideal `I`.
///
/// Elements of `R` are represented by polynomials of `S`; [`GradedRing::reduce`]
/// maps them to their normal forms modulo the reduced Gröbner basis of `I`.
#[derive(Debug)]
pub struct GradedRing<F: Field> {
    poly: Arc<PolyRing<F>>,
    generators: Vec<Polynomial<F>>,
    gb: Vec<Polynomial<F>>,
    ideal_state: GbState<F>,
    dim: usize,
    depth: OnceLock<u32>,
}

impl<F: Field> GradedRing<F> {
    /// `S/I` for the ideal generated by `generators` (zero entries dropped).
    pub fn new(poly: Arc<PolyRing<F>>, generators: Vec<Polynomial<F>>) -> Result<Arc<Self>> {
        let mut gens = Vec::new();
        for (index, g) in generators.into_iter().enumerate() {
            if g.ring().nvars() != poly.nvars() {
                return Err(AlgebraError::ArityMismatch {
                    left: poly.nvars(),
                    right: g.ring().nvars(),
                });
            }
            if g.is_zero() {
                continue;
            }
            match g.homogeneous_degree()? {
                None => return Err(AlgebraError::Inhomogeneous { index }),
                Some(0) => return Err(AlgebraError::NotInMaximalIdeal { index }),
                Some(_) => {}
            }
            gens.push(g);
        }
        let order = ModuleOrder::new(poly.order.clone(), &[0]);
        let mut state = GbState::new(poly.field.clone(), poly.weights(), order.clone());
        for g in &gens {
            state.add_generator(ModuleVector::from_poly(g, 0));
        }
        state.complete();
        let gb: Vec<Polynomial<F>> = state
            .reduced_basis()
            .into_iter()
            .map(|v| v.component(&poly, 0))
            .collect();
        let mut ideal_state = GbState::new(poly.field.clone(), poly.weights(), order);
        ideal_state.insert_ideal_block(0, &gb.iter().map(poly_terms).collect::<Vec<_>>());
        let dim = krull_dimension(poly.nvars(), &gb);
        Ok(Arc::new(GradedRing {
            poly,
            generators: gens,
            gb,
            ideal_state,
            dim,
            depth: OnceLock::new(),
        }))
    }

    /// The polynomial ring itself, with the zero ideal.
    pub fn polynomial(poly: Arc<PolyRing<F>>) -> Arc<Self> {
        Self::new(poly, Vec::new()).expect("zero ideal")
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing<F>> {
        &self.poly
    }

    pub fn field(&self) -> &F {
        &self.poly.field
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn weights(&self) -> &[u32] {
        self.poly.weights()
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    /// Reduced Gröbner basis of the defining ideal, ascending.
    pub fn ideal_gb(&self) -> &[Polynomial<F>] {
        &self.gb
    }

    pub(crate) fn ideal_gb_terms(&self) -> Vec<Vec<ModTerm<F>>> {
        self.gb.iter().map(poly_terms).collect()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.gb.is_empty()
    }

    /// Krull dimension, read off the initial ideal.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Cached `depth(R)`; filled in by the depth computation.
    pub fn depth_cell(&self) -> &OnceLock<u32> {
        &self.depth
    }

    /// The ambient polynomial ring `S` as a graded ring.
    pub fn ambient(&self) -> Arc<Self> {
        Self::polynomial(self.poly.clone())
    }

    /// `R/(extra)`.
    pub fn quotient_by(&self, extra: &[Polynomial<F>]) -> Result<Arc<Self>> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        Self::new(self.poly.clone(), gens)
    }

    /// Normal form modulo the ideal.
    pub fn reduce(&self, p: &Polynomial<F>) -> Polynomial<F> {
        if self.gb.is_empty() || p.is_zero() {
            return p.clone();
        }
        let v = self.ideal_state.reduce(ModuleVector::from_poly(p, 0));
        v.component(&self.poly, 0)
    }

    pub fn is_zero(&self, p: &Polynomial<F>) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn mul(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        self.reduce(&a.mul(b).expect("same ring"))
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<F>> {
        Polynomial::parse(&self.poly, text)
    }

    pub fn var(&self, i: usize) -> Polynomial<F> {
        Polynomial::var(&self.poly, i)
    }

    pub fn zero(&self) -> Polynomial<F> {
        Polynomial::zero(&self.poly)
    }

    pub fn one(&self) -> Polynomial<F> {
        Polynomial::one(&self.poly)
    }

    /// Same ambient ring and same ideal.
    pub fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (*self.poly == *other.poly && self.gb == other.gb)
    }
}

pub(crate) fn poly_terms<F: Field>(p: &Polynomial<F>) -> Vec<ModTerm<F>> {
    p.terms()
        .iter()
        .map(|t| ModTerm {
            coeff: t.coeff.clone(),
            mono: t.mono.clone(),
            pos: 0,
        })
        .collect()
}

/// Largest set of variables independent modulo the initial ideal.
fn krull_dimension<F: Field>(n: usize, gb: &[Polynomial<F>]) -> usize {
    let leads: Vec<u64> = gb
        .iter()
        .map(|g| {
            g.leading()
                .expect("nonzero")
                .mono
                .support()
                .fold(0u64, |acc, i| acc | 1 << i)
        })
        .collect();
    let mut best = 0;
    for subset in 0u64..(1u64 << n) {
        let size = subset.count_ones() as usize;
        if size > best && leads.iter().all(|&l| l & !subset != 0) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring(vars: &[&str], gens: &[&str]) -> Arc<GradedRing<PrimeField>> {
        let s = PolyRing::standard(PrimeField::default(), vars);
        let gens = gens.iter().map(|g| Polynomial::parse(&s, g).unwrap()).collect();
        GradedRing::new(s, gens).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(r.ideal_gb().len(), 3);
        assert_eq!(r.dim(), 0);
    }

    #[test]
    fn dimensions() {
        assert_eq!(ring(&["x", "y"], &["x*y"]).dim(), 1);
        assert_eq!(ring(&["x", "y"], &[]).dim(), 2);
        assert_eq!(ring(&["a", "b", "c", "d"], &["a*c-b^2", "b*d-c^2", "a*d-b*c"]).dim(), 2);
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let p = r.parse("x*y + y").unwrap();
        assert_eq!(r.reduce(&p), r.parse("y").unwrap());
        assert!(r.is_zero(&r.parse("x^3").unwrap()));
    }

    #[test]
    fn rejects_bad_generators() {
        let s = PolyRing::standard(PrimeField::default(), &["x", "y"]);
        let bad = Polynomial::parse(&s, "x + x^2").unwrap();
        assert_eq!(
            GradedRing::new(s.clone(), vec![bad]).unwrap_err(),
            AlgebraError::Inhomogeneous { index: 0 }
        );
        let unit = Polynomial::parse(&s, "3").unwrap();
        assert!(GradedRing::new(s, vec![unit]).is_err());
    }
}
