//! Reduction of the tower modulo primes that split completely in L.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{NfElem, Rational};
use crate::error::{Error, Result};

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// True iff `p` splits completely in Q(√-3, ∛2): p ≡ 1 (mod 3) and 2 is a cube mod p.
pub fn is_split(p: u64) -> Result<bool> {
    if p == 2 || p == 3 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(p % 3 == 1 && pow_mod(2, (p - 1) / 3, p) == 1)
}

/// A ring homomorphism L → F_p, fixed by the images of ζ and c.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueMap {
    pub p: u64,
    pub zeta_image: u64,
    pub c_image: u64,
}

impl ResidueMap {
    /// The map with the smallest images of ζ and c.
    pub fn new(p: u64) -> Result<Self> {
        Self::all(p)?.into_iter().next().ok_or(Error::NotSplit(p))
    }

    /// Every valid pair of images, in lexicographic order.
    pub fn all(p: u64) -> Result<Vec<Self>> {
        if !is_split(p)? {
            return Err(Error::NotSplit(p));
        }
        let zetas: Vec<u64> = (0..p).filter(|x| (x * x + x + 1) % p == 0).collect();
        let cs: Vec<u64> = (0..p).filter(|x| pow_mod(*x, 3, p) == 2 % p).collect();
        Ok(zetas
            .iter()
            .flat_map(|&z| cs.iter().map(move |&c| ResidueMap { p, zeta_image: z, c_image: c }))
            .collect())
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn reduce_rational(&self, q: &Rational) -> Result<u64> {
        let p = BigInt::from(self.p);
        let d = q.denom().mod_floor(&p);
        if d.is_zero() {
            return Err(Error::NonIntegral(self.p));
        }
        let n = q.numer().mod_floor(&p).to_u64().expect("residue fits");
        let d = d.to_u64().expect("residue fits");
        Ok(n * pow_mod(d, self.p - 2, self.p) % self.p)
    }

    pub fn apply(&self, x: &NfElem) -> Result<u64> {
        let p = self.p;
        let mut acc = 0u64;
        let mut cpow = 1u64;
        let coords = x.coords();
        for k in 0..3 {
            let mut zpow = cpow;
            for j in 0..2 {
                if let Some(q) = coords.get(2 * k + j) {
                    if !q.is_zero() {
                        acc = (acc + self.reduce_rational(q)? * zpow) % p;
                    }
                }
                zpow = zpow * self.zeta_image % p;
            }
            cpow = cpow * self.c_image % p;
        }
        Ok(acc)
    }
}

/// The prime field F_p with elements stored as residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn inv(&self, a: u64) -> Option<u64> {
        (!a.is_multiple_of(self.p)).then(|| pow_mod(a, self.p - 2, self.p))
    }
}
