//! Coefficient fields.
//!
//! Every algebraic structure in this crate is generic over a [`Field`]
//! context value. The context owns whatever the elements need to know about
//! their arithmetic (for prime fields, the modulus), so elements stay small
//! plain values and a single process can work over several fields at once.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;

/// Arithmetic context for a commutative field.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Canonical textual form, parseable by [`Field::parse_elem`].
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, AlgebraError>;
    /// Short human-readable name, e.g. `F_101` or `QQ`.
    fn name(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Enumerate up to `limit` nonzero elements, in a fixed order.
    fn sample_nonzero(&self, limit: usize) -> Vec<Self::Elem> {
        (1..=limit as i64)
            .map(|v| self.from_i64(v))
            .filter(|e| !self.is_zero(e))
            .collect()
    }
}

/// The prime field `F_p` for an odd prime `p < 2^31`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const DEFAULT_MODULUS: u32 = 101;

    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if p < 3 || p.is_multiple_of(2) || p >= 1 << 31 || !is_prime(p) {
            return Err(AlgebraError::BadModulus(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField {
            p: Self::DEFAULT_MODULUS,
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let g = (*a as i64).extended_gcd(&(self.p as i64));
        debug_assert_eq!(g.gcd, 1);
        Some(self.reduce_i64(g.x))
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i64(v)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn format_elem(&self, a: &u32) -> String {
        // symmetric representative keeps printed relations short: 100 -> -1 in F_101
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn parse_elem(&self, s: &str) -> Result<u32, AlgebraError> {
        let t = s.trim();
        let (neg, digits) = match t.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, t),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(AlgebraError::Parse(format!("bad coefficient `{s}`")));
        }
        let big: BigInt = digits
            .parse()
            .map_err(|_| AlgebraError::Parse(format!("bad coefficient `{s}`")))?;
        let r = (big % BigInt::from(self.p)).to_u32().unwrap_or(0);
        Ok(if neg { self.neg(&r) } else { r })
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// The rational numbers, backed by `num_rational::BigRational`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational, AlgebraError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || AlgebraError::Parse(format!("bad coefficient `{s}`"));
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
        }
    }
    fn name(&self) -> String {
        "QQ".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(100).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(101).is_ok());
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn symmetric_printing_round_trips() {
        let f = PrimeField::default();
        for v in 0..101u32 {
            assert_eq!(f.parse_elem(&f.format_elem(&v)).unwrap(), v);
        }
        assert_eq!(f.format_elem(&100), "-1");
        assert_eq!(f.parse_elem("-1").unwrap(), 100);
        assert_eq!(f.parse_elem("202").unwrap(), 0);
    }

    #[test]
    fn large_modulus_has_no_overflow() {
        let f = PrimeField::new(2147483647).unwrap();
        let a = 2147483646u32;
        assert_eq!(f.mul(&a, &a), 1);
        assert_eq!(f.add(&a, &a), 2147483645);
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
    }

    #[test]
    fn rationals_parse_and_print() {
        let q = Rationals;
        let a = q.parse_elem("-3/6").unwrap();
        assert_eq!(q.format_elem(&a), "-1/2");
        assert_eq!(q.mul(&a, &q.inv(&a).unwrap()), q.one());
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(a in 1u32..101) {
            let f = PrimeField::default();
            let i = f.inv(&a).unwrap();
            prop_assert_eq!(f.mul(&a, &i), 1);
            prop_assert_eq!(f.mul(&i, &a), 1);
        }

        #[test]
        fn distributive(a in 0u32..101, b in 0u32..101, c in 0u32..101) {
            let f = PrimeField::default();
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
        }
    }
}
