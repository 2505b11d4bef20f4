//! Monomials in a weighted polynomial ring and the orders on them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 8]>;

/// A monomial `x^e` together with its cached weighted degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn new(exps: &[u16], weights: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), weights.len());
        let deg = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial {
            exps: SmallVec::from_slice(exps),
            deg,
        }
    }

    /// The variable `x_i` of weight `weights[i]`.
    pub fn var(i: usize, weights: &[u32]) -> Self {
        let mut exps: Exponents = SmallVec::from_elem(0, weights.len());
        exps[i] = 1;
        Monomial { exps, deg: weights[i] }
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            deg: self.deg + other.deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect();
        let deg = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Support: indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// All monomials of weighted degree `deg`, in increasing lexicographic
    /// order of exponent vectors.
    pub fn all_of_degree(deg: u32, weights: &[u32]) -> Vec<Monomial> {
        fn rec(i: usize, left: u32, weights: &[u32], cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
            if i + 1 == weights.len() {
                if left.is_multiple_of(weights[i]) {
                    cur.push((left / weights[i]) as u16);
                    out.push(cur.clone());
                    cur.pop();
                }
                return;
            }
            let mut e = 0u32;
            while e * weights[i] <= left {
                cur.push(e as u16);
                rec(i + 1, left - e * weights[i], weights, cur, out);
                cur.pop();
                e += 1;
            }
        }
        if weights.is_empty() {
            return if deg == 0 { vec![Monomial::one(0)] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(0, deg, weights, &mut Vec::new(), &mut out);
        out.into_iter().map(|e| Monomial::new(&e, weights)).collect()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    /// weighted degree, ties broken reverse-lexicographically
    Grevlex,
    /// weighted degree, ties broken lexicographically
    Glex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Grevlex => "grevlex",
            OrderKind::Glex => "glex",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "grevlex" | "wgrevlex" => Some(OrderKind::Grevlex),
            "glex" | "wglex" | "deglex" => Some(OrderKind::Glex),
            _ => None,
        }
    }
}

/// A monomial order refining the weighted degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, weights: Vec<u32>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        MonomialOrder { kind, weights }
    }

    pub fn standard(nvars: usize) -> Self {
        MonomialOrder::new(OrderKind::Grevlex, vec![1; nvars])
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.deg.cmp(&b.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.kind {
            OrderKind::Grevlex => {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
            OrderKind::Glex => a.exps.as_slice().cmp(b.exps.as_slice()),
        }
    }
}
