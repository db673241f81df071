//! Exact coefficient fields: prime fields GF(p) with p < 2^31 and the rationals.

use std::fmt::{self, Debug};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// A field whose elements are manipulated through the field object.
///
/// Element types carry no context of their own (a GF(p) residue is a bare
/// `u32`), so every operation goes through `&self`.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// The image of `num / den`; `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;
    /// A uniformly chosen element (for GF(p)) or a small integer (for QQ).
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn write_elem(&self, a: &Self::Elem, out: &mut dyn fmt::Write) -> fmt::Result;
    /// True when the printed form of `a` starts with a minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;
    /// Human-readable name, `QQ` or `GF(p)`.
    fn name(&self) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn elem_to_string(&self, a: &Self::Elem) -> String {
        let mut s = String::new();
        self.write_elem(a, &mut s).expect("writing to a String cannot fail");
        s
    }
}

/// GF(p) for a prime `p < 2^31`, residues stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Returns `None` unless `p` is a prime below 2^31.
    pub fn new(p: u32) -> Option<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return None;
        }
        Some(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce_u64(&self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }
}

fn is_prime(n: u32) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 2;
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
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
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
        self.reduce_u64(*a as u64 * *b as u64)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on i64
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(s0.rem_euclid(self.p as i64) as u32)
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u32> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u32()?;
        let d = den.mod_floor(&p).to_u32()?;
        self.div(&n, &d)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn write_elem(&self, a: &u32, out: &mut dyn fmt::Write) -> fmt::Result {
        write!(out, "{a}")
    }
    fn is_negative(&self, _a: &u32) -> bool {
        false
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
}

/// The rational numbers with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalField;

impl Field for RationalField {
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
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
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
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-50..=50))
    }
    fn write_elem(&self, a: &BigRational, out: &mut dyn fmt::Write) -> fmt::Result {
        if a.denom().is_one() {
            write!(out, "{}", a.numer())
        } else {
            write!(out, "{}/{}", a.numer(), a.denom())
        }
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
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
    fn gf5_scalar_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mul(&3, &4), 2);
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.from_i64(-1), 4);
        assert!(f.inv(&0).is_none());
    }

    #[test]
    fn rejects_composite_or_large_moduli() {
        assert!(PrimeField::new(1).is_none());
        assert!(PrimeField::new(91).is_none());
        assert!(PrimeField::new(101).is_some());
        assert!(PrimeField::new(2147483647).is_some());
        assert!(PrimeField::new(4294967291).is_none());
        assert!(PrimeField::new(2147483629).is_some());
    }

    #[test]
    fn rational_ratio_is_reduced() {
        let q = RationalField;
        let r = q.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(q.elem_to_string(&r), "-3/2");
        assert!(q.from_ratio(&BigInt::from(1), &BigInt::from(0)).is_none());
    }

    #[test]
    fn gf_ratio_with_vanishing_denominator() {
        let f = PrimeField::new(7).unwrap();
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(14)).is_none());
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(2)), Some(4));
    }

    proptest! {
        #[test]
        fn gf_field_axioms(a in 0u32..2147483629, b in 0u32..2147483629, c in 0u32..2147483629) {
            let f = PrimeField::new(2147483629).unwrap();
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }
    }
}
