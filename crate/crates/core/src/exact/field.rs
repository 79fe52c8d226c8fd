use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{One, Zero};

use super::{NfElem, PrimeField, Rational};

/// A field given as a context object, so that runtime-parametrised fields
/// such as F_p fit the same interface as Q and the number fields.
pub trait Field {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    // the prime field needs its modulus, hence `&self`
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(n.into())
    }
}

/// The tower field L (elements of Q and K embed coefficient-preservingly).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NumberField;

impl Field for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem::zero()
    }
    fn one(&self) -> NfElem {
        NfElem::one()
    }
    fn is_zero(&self, a: &NfElem) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &NfElem) -> bool {
        a.is_one()
    }
    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        a + b
    }
    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        a - b
    }
    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        a * b
    }
    fn neg(&self, a: &NfElem) -> NfElem {
        -a
    }
    fn inv(&self, a: &NfElem) -> Option<NfElem> {
        a.inverse().ok()
    }
    fn from_i64(&self, n: i64) -> NfElem {
        NfElem::from_int(n)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        PrimeField::inv(self, *a)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}
