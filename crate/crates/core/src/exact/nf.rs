//! Elements of the tower Q ⊂ K = Q(ζ) ⊂ L = K(c), with ζ² + ζ + 1 = 0 and c³ = 2.
//!
//! Every element carries six rational coordinates on the power basis
//! `1, ζ, c, ζc, c², ζc²` (index `2k + j` holds the coefficient of `ζ^j c^k`).
//! The declared [`Level`] only controls how many of them are serialized;
//! coordinates above the level are always zero.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Q,
    K,
    L,
}

impl Level {
    pub fn dim(self) -> usize {
        match self {
            Level::Q => 1,
            Level::K => 2,
            Level::L => 6,
        }
    }

    fn from_dim(n: usize) -> Option<Level> {
        match n {
            1 => Some(Level::Q),
            2 => Some(Level::K),
            6 => Some(Level::L),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NfElem {
    level: Level,
    coords: [Rational; 6],
}

fn rzero() -> Rational {
    Rational::zero()
}

fn zero_coords() -> [Rational; 6] {
    [rzero(), rzero(), rzero(), rzero(), rzero(), rzero()]
}

// (a0 + a1ζ)(b0 + b1ζ) = (a0b0 - a1b1) + (a0b1 + a1b0 - a1b1)ζ
fn k_mul(a: (&Rational, &Rational), b: (&Rational, &Rational)) -> (Rational, Rational) {
    let (a0, a1) = a;
    let (b0, b1) = b;
    if a1.is_zero() && b1.is_zero() {
        return (a0 * b0, rzero());
    }
    let a1b1 = a1 * b1;
    (a0 * b0 - &a1b1, a0 * b1 + a1 * b0 - a1b1)
}

impl NfElem {
    pub fn zero() -> Self {
        NfElem { level: Level::Q, coords: zero_coords() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut coords = zero_coords();
        coords[0] = q;
        NfElem { level: Level::Q, coords }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `a + bζ`.
    pub fn k(a: Rational, b: Rational) -> Self {
        let mut coords = zero_coords();
        coords[0] = a;
        coords[1] = b;
        NfElem { level: Level::K, coords }
    }

    pub fn zeta() -> Self {
        Self::k(rzero(), Rational::one())
    }

    /// `z = 2ζ + 1`, a square root of -3.
    pub fn z() -> Self {
        Self::k(Rational::one(), Rational::from_integer(2.into()))
    }

    /// The real cube root of 2.
    pub fn c() -> Self {
        let mut coords = zero_coords();
        coords[2] = Rational::one();
        NfElem { level: Level::L, coords }
    }

    pub fn from_coords(level: Level, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != level.dim() {
            return Err(Error::Dimension(format!(
                "level {:?} needs {} coordinates, got {}",
                level,
                level.dim(),
                coords.len()
            )));
        }
        let mut c = zero_coords();
        for (slot, q) in c.iter_mut().zip(coords) {
            *slot = q;
        }
        Ok(NfElem { level, coords: c })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Coordinates on the power basis of the declared level.
    pub fn coords(&self) -> &[Rational] {
        &self.coords[..self.level.dim()]
    }

    /// Smallest level actually containing the value.
    pub fn min_level(&self) -> Level {
        if self.coords[2..].iter().any(|q| !q.is_zero()) {
            Level::L
        } else if !self.coords[1].is_zero() {
            Level::K
        } else {
            Level::Q
        }
    }

    pub fn with_level(mut self, level: Level) -> Result<Self> {
        if level < self.min_level() {
            return Err(Error::Dimension(format!("value does not lie in {:?}", level)));
        }
        self.level = level;
        Ok(self)
    }

    pub fn demoted(self) -> Self {
        let level = self.min_level();
        NfElem { level, ..self }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.min_level() == Level::Q).then(|| &self.coords[0])
    }

    fn c_part(&self, k: usize) -> (&Rational, &Rational) {
        (&self.coords[2 * k], &self.coords[2 * k + 1])
    }

    fn c_part_is_zero(&self, k: usize) -> bool {
        self.coords[2 * k].is_zero() && self.coords[2 * k + 1].is_zero()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = self.clone();
        for c in out.coords.iter_mut() {
            if !c.is_zero() {
                *c = &*c * q;
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let level = self.level;
        // x = x0 + x1 c + x2 c² with xi ∈ K; y = adj(x) satisfies x·y = N(x) ∈ K.
        let x0 = self.k_component(0);
        let x1 = self.k_component(1);
        let x2 = self.k_component(2);
        let two = NfElem::from_int(2);
        let y0 = &(&x0 * &x0) - &(&two * &(&x1 * &x2));
        let y1 = &(&two * &(&x2 * &x2)) - &(&x0 * &x1);
        let y2 = &(&x1 * &x1) - &(&x0 * &x2);
        let c = NfElem::c();
        let y = &(&y0 + &(&y1 * &c)) + &(&y2 * &(&c * &c));
        let norm = self * &y;
        debug_assert!(norm.min_level() <= Level::K);
        let inv_norm = k_inverse(&norm.coords[0], &norm.coords[1]);
        let mut out = &y * &inv_norm;
        // the inverse lies in the same subfield
        out.level = level;
        Ok(out)
    }

    fn k_component(&self, k: usize) -> NfElem {
        NfElem::k(self.coords[2 * k].clone(), self.coords[2 * k + 1].clone())
    }

    /// Galois action fixing K and sending c to ζc.
    pub fn sigma(&self) -> Self {
        let zeta = NfElem::zeta();
        let mut out = self.k_component(0);
        out.level = self.level;
        for k in 1..3 {
            if self.c_part_is_zero(k) {
                continue;
            }
            let mut part = self.k_component(k);
            for _ in 0..k {
                part = &part * &zeta;
            }
            let (a, b) = (part.coords[0].clone(), part.coords[1].clone());
            out.coords[2 * k] = a;
            out.coords[2 * k + 1] = b;
        }
        out
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = NfElem::one();
        acc.level = self.level;
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact serialization: rationals as `n/d`, coordinates in brackets.
    pub fn to_serial(&self) -> String {
        let parts: Vec<String> = self
            .coords()
            .iter()
            .map(|q| format!("{}/{}", q.numer(), q.denom()))
            .collect();
        format!("[{}]", parts.join(", "))
    }

    pub fn parse_serial(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected bracketed coordinates: {s:?}")))?;
        let coords = inner
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        let level = Level::from_dim(coords.len())
            .ok_or_else(|| Error::Parse(format!("bad coordinate count {}", coords.len())))?;
        NfElem::from_coords(level, coords)
    }

    /// Human readable form in terms of z = √-3 and c = ∛2.
    pub fn to_expr(&self) -> String {
        let mut terms: Vec<(bool, String)> = Vec::new();
        for k in 0..3 {
            let (a, b) = self.c_part(k);
            // a + bζ = (a - b/2) + (b/2) z
            let half = Rational::new(1.into(), 2.into());
            let zc = b * &half;
            let rc = a - &zc;
            let cpow = match k {
                0 => String::new(),
                1 => "c".to_string(),
                _ => "c^2".to_string(),
            };
            match (rc.is_zero(), zc.is_zero()) {
                (true, true) => {}
                (false, true) | (true, false) => {
                    let (q, sym) = if zc.is_zero() {
                        (rc, cpow.clone())
                    } else if cpow.is_empty() {
                        (zc, "z".to_string())
                    } else {
                        (zc, format!("z*{cpow}"))
                    };
                    terms.push((q.is_negative(), scaled_symbol(&q.abs(), &sym)));
                }
                (false, false) => {
                    let inner = join_terms(vec![
                        (rc.is_negative(), scaled_symbol(&rc.abs(), "")),
                        (zc.is_negative(), scaled_symbol(&zc.abs(), "z")),
                    ]);
                    let body = if cpow.is_empty() { inner } else { format!("({inner})*{cpow}") };
                    terms.push((false, body));
                }
            }
        }
        if terms.is_empty() {
            return "0".to_string();
        }
        join_terms(terms)
    }
}

fn scaled_symbol(q: &Rational, sym: &str) -> String {
    if sym.is_empty() {
        return q.to_string();
    }
    if q.is_one() {
        sym.to_string()
    } else {
        format!("{q}*{sym}")
    }
}

fn join_terms(terms: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, t)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push_str(&format!("-{t}")),
            (0, false) => out.push_str(&t),
            (_, true) => out.push_str(&format!(" - {t}")),
            (_, false) => out.push_str(&format!(" + {t}")),
        }
    }
    out
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn k_inverse(a: &Rational, b: &Rational) -> NfElem {
    // N(a + bζ) = a² - ab + b², conjugate (a - b) - bζ
    let norm = a * a - a * b + b * b;
    NfElem::k((a - b) / &norm, -b / &norm)
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for NfElem {}

impl Hash for NfElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl<'a> Add<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn add(self, rhs: &NfElem) -> NfElem {
        let mut out = self.clone();
        out.level = self.level.max(rhs.level);
        for (o, r) in out.coords.iter_mut().zip(rhs.coords.iter()) {
            if !r.is_zero() {
                *o = &*o + r;
            }
        }
        out
    }
}

impl<'a> Sub<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn sub(self, rhs: &NfElem) -> NfElem {
        let mut out = self.clone();
        out.level = self.level.max(rhs.level);
        for (o, r) in out.coords.iter_mut().zip(rhs.coords.iter()) {
            if !r.is_zero() {
                *o = &*o - r;
            }
        }
        out
    }
}

impl<'a> Mul<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn mul(self, rhs: &NfElem) -> NfElem {
        let mut acc: [(Rational, Rational); 5] = Default::default();
        for i in 0..3 {
            if self.c_part_is_zero(i) {
                continue;
            }
            for j in 0..3 {
                if rhs.c_part_is_zero(j) {
                    continue;
                }
                let (r0, r1) = k_mul(self.c_part(i), rhs.c_part(j));
                let slot = &mut acc[i + j];
                slot.0 += r0;
                slot.1 += r1;
            }
        }
        let [p0, p1, p2, p3, p4] = acc;
        // c³ = 2
        let two = Rational::from_integer(2.into());
        let coords = [
            p0.0 + &p3.0 * &two,
            p0.1 + &p3.1 * &two,
            p1.0 + &p4.0 * &two,
            p1.1 + &p4.1 * &two,
            p2.0,
            p2.1,
        ];
        NfElem { level: self.level.max(rhs.level), coords }
    }
}

impl Neg for &NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        let mut out = self.clone();
        for c in out.coords.iter_mut() {
            if !c.is_zero() {
                *c = -&*c;
            }
        }
        out
    }
}

impl Neg for NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<NfElem> for NfElem {
            type Output = NfElem;
            fn $m(self, rhs: NfElem) -> NfElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a NfElem> for NfElem {
            type Output = NfElem;
            fn $m(self, rhs: &NfElem) -> NfElem {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta2() -> NfElem {
        &NfElem::zeta() * &NfElem::zeta()
    }

    #[test]
    fn cube_roots_of_unity() {
        assert!((&NfElem::zeta() * &zeta2()).is_one());
        assert_eq!(NfElem::zeta().inverse().unwrap(), zeta2());
    }

    #[test]
    fn z_squared_is_minus_three() {
        assert_eq!(&NfElem::z() * &NfElem::z(), NfElem::from_int(-3));
    }

    #[test]
    fn sum_of_cubes_factorization() {
        let c = NfElem::c();
        let lhs = &NfElem::one() + &c;
        let rhs = &(&NfElem::one() - &c) + &(&c * &c);
        assert_eq!(&lhs * &rhs, NfElem::from_int(3));
    }

    #[test]
    fn inverse_of_c() {
        let c = NfElem::c();
        let expected = (&c * &c).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(c.inverse().unwrap(), expected);
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(NfElem::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn sigma_moves_c() {
        let c = NfElem::c();
        assert_eq!(c.sigma(), &NfElem::zeta() * &c);
        assert_eq!(NfElem::zeta().sigma(), NfElem::zeta());
        assert_eq!(c.sigma().sigma().sigma(), c);
    }

    #[test]
    fn serial_form_of_c() {
        assert_eq!(NfElem::c().to_serial(), "[0/1, 0/1, 1/1, 0/1, 0/1, 0/1]");
        let back = NfElem::parse_serial("[0/1, 0/1, 1/1, 0/1, 0/1, 0/1]").unwrap();
        assert_eq!(back, NfElem::c());
        assert_eq!(back.level(), Level::L);
        assert!(NfElem::parse_serial("[1/2, 3]").is_ok());
        assert!(NfElem::parse_serial("[1/2, 3, 4]").is_err());
        assert!(NfElem::parse_serial("1/2").is_err());
    }

    #[test]
    fn expression_form() {
        assert_eq!(NfElem::z().to_expr(), "z");
        assert_eq!((-NfElem::z()).to_expr(), "-z");
        assert_eq!(NfElem::from_frac(1, 2).to_expr(), "1/2");
        let a = (&NfElem::c() * &NfElem::c()).scale(&Rational::new((-1).into(), 2.into()));
        assert_eq!(a.to_expr(), "-1/2*c^2");
        assert_eq!(NfElem::zeta().to_expr(), "-1/2 + 1/2*z");
    }

    #[test]
    fn levels_promote() {
        let x = &NfElem::from_int(3) * &NfElem::zeta();
        assert_eq!(x.level(), Level::K);
        let y = &x + &NfElem::c();
        assert_eq!(y.level(), Level::L);
        let w = &y - &NfElem::c();
        assert_eq!(w.level(), Level::L);
        assert_eq!(w.min_level(), Level::K);
        assert_eq!(w, x);
    }
}
