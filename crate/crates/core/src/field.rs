//! Exact coefficient fields: the rationals and prime fields of odd characteristic.
//!
//! A field is a small runtime value (the prime `p`, or nothing for ℚ) that
//! performs arithmetic on its element type. Everything above this layer is
//! generic over [`Field`], so the exhaustive deciders run on plain residues
//! while the rational path keeps arbitrary precision.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

/// Serializable description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDesc {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    PrimeField { p: u32 },
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::PrimeField { p } => write!(f, "F_{p}"),
        }
    }
}

/// Arithmetic over an exact field of characteristic other than two.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Hash + PartialOrd + Ord + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + PartialOrd + Ord + Send + Sync;

    fn desc(&self) -> FieldDesc;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, Error>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// The `i`-th element in the canonical enumeration order (finite fields only).
    fn nth(&self, i: u64) -> Self::Elem;
    /// Position of `a` in the canonical enumeration order (finite fields only).
    fn position(&self, a: &Self::Elem) -> u64;

    /// Sign of `a` for ordered fields; `None` when the field carries no order.
    fn sign(&self, _a: &Self::Elem) -> Option<Ordering> {
        None
    }

    fn parse(&self, s: &str) -> Result<Self::Elem, Error>;
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Error> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// The inverse of two; every field here has characteristic other than two.
    fn half(&self) -> Self::Elem {
        self.inv(&self.from_i64(2)).expect("characteristic is not 2")
    }

    /// Small nonzero elements used by bounded searches, in a fixed order.
    fn sample_nonzero(&self) -> Vec<Self::Elem> {
        match self.order() {
            Some(q) => (1..q).map(|i| self.nth(i)).collect(),
            None => [1, -1, 2, -2]
                .iter()
                .map(|&n| self.from_i64(n))
                .chain([2, -2].iter().map(|&n| self.inv(&self.from_i64(n)).unwrap()))
                .collect(),
        }
    }
}

/// The field ℚ with unbounded numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn desc(&self) -> FieldDesc {
        FieldDesc::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, Error> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn nth(&self, _i: u64) -> BigRational {
        panic!("the rationals cannot be enumerated")
    }

    fn position(&self, _a: &BigRational) -> u64 {
        panic!("the rationals cannot be enumerated")
    }

    fn sign(&self, a: &BigRational) -> Option<Ordering> {
        Some(if a.is_positive() {
            Ordering::Greater
        } else if a.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        })
    }

    fn parse(&self, s: &str) -> Result<BigRational, Error> {
        let bad = || Error::BadCoefficient(s.to_string());
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt, Error> {
            let t = t.trim();
            let digits = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(parse_int(s)?)),
        }
    }

    fn format(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Residue class modulo the field's prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue(pub u32);

/// The prime field F_p for an odd prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, Error> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "p = {p} must be an odd prime"
            )));
        }
        // Products are formed in u64, so p must fit comfortably.
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("p = {p} is too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn residue(&self, n: i64) -> Residue {
        Residue(n.rem_euclid(self.p as i64) as u32)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = Residue;

    fn desc(&self) -> FieldDesc {
        FieldDesc::PrimeField { p: self.p }
    }

    fn zero(&self) -> Residue {
        Residue(0)
    }

    fn one(&self) -> Residue {
        Residue(1)
    }

    fn from_i64(&self, n: i64) -> Residue {
        self.residue(n)
    }

    #[inline]
    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        let s = a.0 + b.0;
        Residue(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    fn neg(&self, a: &Residue) -> Residue {
        Residue(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        Residue(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        Residue(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    fn inv(&self, a: &Residue) -> Result<Residue, Error> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(p-2).
        let (mut base, mut exp, mut acc) = (a.0 as u64, self.p as u64 - 2, 1u64);
        let m = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Ok(Residue(acc as u32))
    }

    #[inline]
    fn is_zero(&self, a: &Residue) -> bool {
        a.0 == 0
    }

    fn order(&self) -> Option<u64> {
        Some(self.p as u64)
    }

    fn nth(&self, i: u64) -> Residue {
        Residue(i as u32)
    }

    fn position(&self, a: &Residue) -> u64 {
        a.0 as u64
    }

    fn parse(&self, s: &str) -> Result<Residue, Error> {
        let t = s.trim();
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::BadCoefficient(s.to_string()));
        }
        let n: BigInt = t.parse().map_err(|_| Error::BadCoefficient(s.to_string()))?;
        let r = n.mod_floor_u32(self.p);
        Ok(Residue(r))
    }

    fn format(&self, a: &Residue) -> String {
        a.0.to_string()
    }
}

trait ModFloor {
    fn mod_floor_u32(&self, p: u32) -> u32;
}

impl ModFloor for BigInt {
    fn mod_floor_u32(&self, p: u32) -> u32 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        self.mod_floor(&BigInt::from(p)).to_u32().expect("residue fits in u32")
    }
}

/// Builds a scalar in `field` from a small signed fraction.
pub fn scalar<F: Field>(field: &F, num: i64, den: i64) -> F::Elem {
    field
        .div(&field.from_i64(num), &field.from_i64(den))
        .expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn scalar_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.inv(&Residue(2)).unwrap(), Residue(3));
        assert_eq!(Rationals.add(&q(1, 2), &q(1, 3)), q(5, 6));
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(f3.mul(&Residue(2), &Residue(2)), Residue(1));
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(Rationals.inv(&q(0, 1)), Err(Error::DivisionByZero)));
        let f7 = PrimeField::new(7).unwrap();
        assert!(matches!(f7.inv(&Residue(0)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rejects_even_and_composite() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(3).is_ok());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(Rationals.parse("6/-4").unwrap(), q(-3, 2));
        assert_eq!(Rationals.format(&q(-3, 2)), "-3/2");
        assert_eq!(Rationals.format(&q(4, 1)), "4/1");
        assert!(Rationals.parse("1/0").is_err());
        assert!(Rationals.parse("x").is_err());
        assert!(Rationals.parse("1/ ").is_err());
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.parse("7").unwrap(), Residue(2));
        assert_eq!(f5.parse("-1").unwrap(), Residue(4));
        assert_eq!(f5.parse("123456789012345678901234567890").unwrap(), Residue(0));
        assert!(f5.parse("1/2").is_err());
    }

    fn rational() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
            let f = Rationals;
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
            if !f.is_zero(&a) {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }

        #[test]
        fn prime_field_axioms(p in prop::sample::select(vec![3u32, 5, 7, 11, 101]), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
            let f = PrimeField::new(p).unwrap();
            let (a, b, c) = (Residue(a % p), Residue(b % p), Residue(c % p));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
            if a.0 != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
            prop_assert!(f.add(&a, &b).0 < p);
        }
    }
}
