//! Sparse multivariate polynomials over a [`Field`] with a fixed monomial order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder, OrderKind};

/// The ambient ring `k[x_1..x_n]` with positive integer weights and an order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    pub field: F,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: Vec<String>, weights: Vec<u32>, kind: OrderKind) -> Result<Arc<Self>> {
        if vars.len() != weights.len() {
            return Err(AlgebraError::ArityMismatch {
                left: vars.len(),
                right: weights.len(),
            });
        }
        if weights.contains(&0) {
            return Err(AlgebraError::Invalid("variable weights must be positive".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) || vars[..i].contains(v) {
                return Err(AlgebraError::Invalid(format!("bad or duplicate variable name `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing {
            field,
            vars,
            order: MonomialOrder::new(kind, weights),
        }))
    }

    /// Standard-graded grevlex ring on the given variable names.
    pub fn standard(field: F, vars: &[&str]) -> Arc<Self> {
        Self::new(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            vec![1; vars.len()],
            OrderKind::Grevlex,
        )
        .expect("valid standard ring")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.order.weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One term `coeff * mono`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<F: Field> {
    pub coeff: F::Elem,
    pub mono: Monomial,
}

/// A polynomial in canonical form: nonzero coefficients, terms strictly
/// descending in the ring's monomial order.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<Term<F>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Self {
        let n = ring.nvars();
        Self::from_terms(ring, vec![(c, Monomial::one(n))])
    }

    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Arc<PolyRing<F>>, i: usize) -> Self {
        let m = Monomial::var(i, ring.weights());
        Self::from_terms(ring, vec![(ring.field.one(), m)])
    }

    /// Build from arbitrary (coefficient, monomial) pairs; sorts and combines.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, raw: Vec<(F::Elem, Monomial)>) -> Self {
        let terms = canonicalize(
            &ring.field,
            &ring.order,
            raw.into_iter().map(|(coeff, mono)| Term { coeff, mono }).collect(),
        );
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wrap terms already in canonical form.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing<F>>, terms: Vec<Term<F>>) -> Self {
        let p = Polynomial {
            ring: ring.clone(),
            terms,
        };
        debug_assert!(p.is_canonical());
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F>> {
        self.terms
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

    pub fn leading(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    /// True iff this is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn is_canonical(&self) -> bool {
        let f = &self.ring.field;
        let n = self.ring.nvars();
        self.terms.iter().all(|t| !f.is_zero(&t.coeff) && t.mono.nvars() == n)
            && self
                .terms
                .windows(2)
                .all(|w| self.ring.order.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            return Ok(());
        }
        if self.ring.nvars() != other.ring.nvars() {
            return Err(AlgebraError::ArityMismatch {
                left: self.ring.nvars(),
                right: other.ring.nvars(),
            });
        }
        if *self.ring != *other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.ring.field;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge(f, &self.ring.order, &self.terms, &other.terms, &f.one()),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.ring.field;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge(f, &self.ring.order, &self.terms, &other.terms, &f.neg(&f.one())),
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ring.field.neg(&self.ring.field.one()))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: f.mul(&t.coeff, c),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: f.mul(&t.coeff, c),
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        let f = &self.ring.field;
        for a in &self.terms {
            for b in &other.terms {
                raw.push(Term {
                    coeff: f.mul(&a.coeff, &b.coeff),
                    mono: a.mono.mul(&b.mono),
                });
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: canonicalize(f, &self.ring.order, raw),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Weighted degree if all terms share one, `None` if inhomogeneous.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let first = self.terms.first().ok_or(AlgebraError::ZeroDegree)?;
        let d = first.mono.degree();
        Ok(self.terms.iter().all(|t| t.mono.degree() == d).then_some(d))
    }

    /// Substitute a field element for every variable.
    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.ring.field;
        let mut acc = f.zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, &e) in t.mono.exps().iter().enumerate() {
                for _ in 0..e {
                    v = f.mul(&v, &point[i]);
                }
            }
            acc = f.add(&acc, &v);
        }
        acc
    }

    /// Parse `3*x^2*y - (x+y)^2 + 5*z`.
    pub fn parse(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Self> {
        let mut p = Parser {
            ring,
            src: text.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(out)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            format_terms(&self.ring, self.terms.iter().map(|t| (&t.coeff, &t.mono)))
        )
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Format terms in the `c*x^a*y^b + ...` syntax.
pub fn format_terms<'a, F: Field>(
    ring: &PolyRing<F>,
    terms: impl Iterator<Item = (&'a F::Elem, &'a Monomial)>,
) -> String {
    let field = &ring.field;
    let mut out = String::new();
    for (k, (c, m)) in terms.enumerate() {
        let mut cs = field.format_elem(c);
        let negative = cs.starts_with('-');
        if negative {
            cs.remove(0);
        }
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if cs != "1" || m.is_one() {
            factors.push(cs);
        }
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(ring.vars[i].clone()),
                _ => factors.push(format!("{}^{}", ring.vars[i], e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Sort descending and combine like terms, dropping zeros.
pub(crate) fn canonicalize<F: Field>(field: &F, order: &MonomialOrder, mut raw: Vec<Term<F>>) -> Vec<Term<F>> {
    raw.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
    let mut out: Vec<Term<F>> = Vec::with_capacity(raw.len());
    for t in raw {
        match out.last_mut() {
            Some(last) if last.mono == t.mono => {
                last.coeff = field.add(&last.coeff, &t.coeff);
            }
            _ => out.push(t),
        }
    }
    out.retain(|t| !field.is_zero(&t.coeff));
    out
}

/// `a + c*b` for canonical term lists.
pub(crate) fn merge<F: Field>(
    field: &F,
    order: &MonomialOrder,
    a: &[Term<F>],
    b: &[Term<F>],
    c: &F::Elem,
) -> Vec<Term<F>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    coeff: field.mul(c, &b[j].coeff),
                    mono: b[j].mono.clone(),
                });
                j += 1;
            }
            Ordering::Equal => {
                let s = field.add(&a[i].coeff, &field.mul(c, &b[j].coeff));
                if !field.is_zero(&s) {
                    out.push(Term {
                        coeff: s,
                        mono: a[i].mono.clone(),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push(Term {
            coeff: field.mul(c, &t.coeff),
            mono: t.mono.clone(),
        });
    }
    out
}

struct Parser<'a, F: Field> {
    ring: &'a Arc<PolyRing<F>>,
    src: &'a [u8],
    pos: usize,
}

impl<F: Field> Parser<'_, F> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at column {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = Polynomial::zero(self.ring);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            acc = if sign < 0 { acc.sub(&t)? } else { acc.add(&t)? };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.power()?;
            acc = acc.mul(&rhs)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/') {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let c = self.ring.field.parse_elem(s).map_err(|_| self.err("bad number"))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self
                    .ring
                    .var_index(name)
                    .ok_or_else(|| AlgebraError::Parse(format!("unknown variable `{name}` at column {}", start + 1)))?;
                Ok(Polynomial::var(self.ring, i))
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn r2() -> Arc<PolyRing<PrimeField>> {
        PolyRing::standard(PrimeField::default(), &["x", "y"])
    }

    fn p(r: &Arc<PolyRing<PrimeField>>, s: &str) -> Polynomial<PrimeField> {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn add_identity_and_cancellation() {
        let r = r2();
        let f = p(&r, "x^2 + y");
        assert_eq!(f.add(&Polynomial::zero(&r)).unwrap(), f);
        assert_eq!(f.add(&p(&r, "100*x^2")).unwrap(), p(&r, "y"));
        assert_eq!(p(&r, "x+y").add(&p(&r, "x+y")).unwrap(), p(&r, "2*x + 2*y"));
    }

    #[test]
    fn multiplication() {
        let r = r2();
        let f = p(&r, "x^2 + 3*y");
        assert_eq!(f.mul(&Polynomial::one(&r)).unwrap(), f);
        assert_eq!(p(&r, "x+y").mul(&p(&r, "x-y")).unwrap(), p(&r, "x^2 - y^2"));
    }

    #[test]
    fn weighted_products() {
        let r = PolyRing::new(
            PrimeField::default(),
            vec!["a".into(), "b".into(), "c".into()],
            vec![3, 4, 5],
            OrderKind::Grevlex,
        )
        .unwrap();
        let ac = p(&r, "a").mul(&p(&r, "c")).unwrap();
        let b2 = p(&r, "b").mul(&p(&r, "b")).unwrap();
        assert_eq!(ac.homogeneous_degree().unwrap(), Some(8));
        assert_eq!(b2.homogeneous_degree().unwrap(), Some(8));
        assert_eq!(p(&r, "a*c - b^2").homogeneous_degree().unwrap(), Some(8));
    }

    #[test]
    fn homogeneity_queries() {
        let r = r2();
        assert_eq!(p(&r, "x^2 + x*y").homogeneous_degree().unwrap(), Some(2));
        assert_eq!(p(&r, "x + x^2").homogeneous_degree().unwrap(), None);
        assert_eq!(Polynomial::zero(&r).homogeneous_degree(), Err(AlgebraError::ZeroDegree));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let r = r2();
        let s = PolyRing::standard(PrimeField::default(), &["x", "y", "z"]);
        let t = PolyRing::standard(PrimeField::new(7).unwrap(), &["x", "y"]);
        assert!(matches!(
            p(&r, "x").add(&p(&s, "x")),
            Err(AlgebraError::ArityMismatch { .. })
        ));
        assert_eq!(p(&r, "x").mul(&p(&t, "x")), Err(AlgebraError::RingMismatch));
    }

    #[test]
    fn printing_round_trips() {
        let r = r2();
        let f = p(&r, "-x^2*y + 3*x*y^2 - 1");
        assert_eq!(f.to_string(), "-x^2*y + 3*x*y^2 - 1");
        assert_eq!(p(&r, &f.to_string()), f);
        assert!(Polynomial::parse(&r, "x + q").is_err());
        assert!(Polynomial::parse(&r, "x +").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(u32, u16, u16)>> {
        proptest::collection::vec((0u32..101, 0u16..4, 0u16..4), 0..6)
    }

    fn build(r: &Arc<PolyRing<PrimeField>>, raw: Vec<(u32, u16, u16)>) -> Polynomial<PrimeField> {
        Polynomial::from_terms(
            r,
            raw.into_iter()
                .map(|(c, a, b)| (c, Monomial::new(&[a, b], r.weights())))
                .collect(),
        )
    }

    proptest! {
        #[test]
        fn outputs_are_canonical(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let r = r2();
            let (a, b, c) = (build(&r, a), build(&r, b), build(&r, c));
            let ab = a.mul(&b).unwrap();
            prop_assert!(ab.is_canonical());
            prop_assert!(a.add(&b).unwrap().is_canonical());
            // distributivity
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = ab.add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert!(a.sub(&a).unwrap().is_zero());
        }
    }
}
