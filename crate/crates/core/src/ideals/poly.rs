//! Polynomials and Laurent monomials in the two indeterminates a, b over K.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::exact::NfElem;

/// Exponent pair `(deg_a, deg_b)`.
pub type Mono = (u32, u32);

/// Lexicographic orders on monomials in a and b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LexOrder {
    /// a > b
    AB,
    /// b > a
    BA,
}

impl LexOrder {
    pub fn cmp(self, x: Mono, y: Mono) -> Ordering {
        match self {
            LexOrder::AB => x.cmp(&y),
            LexOrder::BA => (x.1, x.0).cmp(&(y.1, y.0)),
        }
    }
}

pub fn divides(x: Mono, y: Mono) -> bool {
    x.0 <= y.0 && x.1 <= y.1
}

pub fn lcm(x: Mono, y: Mono) -> Mono {
    (x.0.max(y.0), x.1.max(y.1))
}

/// Polynomial in a, b. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyAB {
    terms: BTreeMap<Mono, NfElem>,
}

impl PolyAB {
    pub fn zero() -> Self {
        PolyAB::default()
    }

    pub fn constant(c: NfElem) -> Self {
        PolyAB::monomial(c, (0, 0))
    }

    pub fn monomial(c: NfElem, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PolyAB { terms }
    }

    pub fn a() -> Self {
        PolyAB::monomial(NfElem::one(), (1, 0))
    }

    pub fn b() -> Self {
        PolyAB::monomial(NfElem::one(), (0, 1))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, NfElem)>) -> Self {
        let mut p = PolyAB::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Mono, NfElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> NfElem {
        self.terms.get(&m).cloned().unwrap_or_else(NfElem::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: &NfElem) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        out
    }

    pub fn scale(&self, c: &NfElem) -> Self {
        if c.is_zero() {
            return PolyAB::zero();
        }
        PolyAB { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_term(&self, c: &NfElem, m: Mono) -> Self {
        if c.is_zero() {
            return PolyAB::zero();
        }
        PolyAB { terms: self.terms.iter().map(|(k, x)| ((k.0 + m.0, k.1 + m.1), x * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = PolyAB::zero();
        for (m, c) in &other.terms {
            out = out.add(&self.mul_term(c, *m));
        }
        out
    }

    pub fn leading(&self, order: LexOrder) -> Option<(Mono, &NfElem)> {
        self.terms.iter().max_by(|x, y| order.cmp(*x.0, *y.0)).map(|(m, c)| (*m, c))
    }

    /// Scaled to leading coefficient 1.
    pub fn monic(&self, order: LexOrder) -> Self {
        match self.leading(order) {
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero")),
            None => PolyAB::zero(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.0 + m.1).max().unwrap_or(0)
    }

    pub fn eval(&self, a: &NfElem, b: &NfElem) -> NfElem {
        let mut acc = NfElem::zero();
        for (m, c) in &self.terms {
            let t = c * &(&a.pow(m.0 as i64).expect("nonnegative") * &b.pow(m.1 as i64).expect("nonnegative"));
            acc = &acc + &t;
        }
        acc
    }

    /// Terms from largest to smallest in `order`.
    pub fn sorted_terms(&self, order: LexOrder) -> Vec<(Mono, &NfElem)> {
        let mut v: Vec<(Mono, &NfElem)> = self.terms.iter().map(|(m, c)| (*m, c)).collect();
        v.sort_by(|x, y| order.cmp(y.0, x.0));
        v
    }

    pub fn to_string_in(&self, order: LexOrder) -> String {
        let terms = self.sorted_terms(order);
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let mono = mono_string(m);
            let expr = c.to_expr();
            let compound = expr[1..].contains(" + ") || expr[1..].contains(" - ");
            let (neg, body) = if compound {
                let body = if mono.is_empty() { expr } else { format!("({expr})*{mono}") };
                (false, body)
            } else {
                let (neg, mag) = match expr.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, expr),
                };
                let body = match (mag.as_str(), mono.is_empty()) {
                    (_, true) => mag,
                    ("1", false) => mono,
                    (_, false) => format!("{mag}*{mono}"),
                };
                (neg, body)
            };
            match (i, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

fn mono_string(m: Mono) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let pa = part("a", m.0);
    let pb = part("b", m.1);
    match (pa.is_empty(), pb.is_empty()) {
        (true, _) => pb,
        (_, true) => pa,
        _ => format!("{pa}*{pb}"),
    }
}

impl fmt::Display for PolyAB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in(LexOrder::BA))
    }
}

/// `coeff · a^deg_a · b^deg_b` with possibly negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentMono {
    pub coeff: NfElem,
    pub deg_a: i32,
    pub deg_b: i32,
}

impl LaurentMono {
    pub fn new(coeff: NfElem, deg_a: i32, deg_b: i32) -> Self {
        assert!(!coeff.is_zero(), "Laurent monomials have nonzero coefficients");
        LaurentMono { coeff, deg_a, deg_b }
    }

    pub fn constant(coeff: NfElem) -> Self {
        LaurentMono::new(coeff, 0, 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        LaurentMono::new(&self.coeff * &other.coeff, self.deg_a + other.deg_a, self.deg_b + other.deg_b)
    }

    pub fn eval(&self, a: &NfElem, b: &NfElem) -> crate::Result<NfElem> {
        Ok(&self.coeff * &(&a.pow(self.deg_a as i64)? * &b.pow(self.deg_b as i64)?))
    }
}

/// Laurent polynomial in a, b, used for transformed quadrics before clearing denominators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    pub terms: BTreeMap<(i32, i32), NfElem>,
}

impl LaurentPoly {
    pub fn add_mono(&mut self, m: &LaurentMono) {
        let key = (m.deg_a, m.deg_b);
        let sum = match self.terms.get(&key) {
            Some(old) => old + &m.coeff,
            None => m.coeff.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn min_degrees(&self) -> Option<(i32, i32)> {
        let da = self.terms.keys().map(|k| k.0).min()?;
        let db = self.terms.keys().map(|k| k.1).min()?;
        Some((da, db))
    }

    /// Multiply by `a^-shift.0 b^-shift.1`; every resulting exponent must be nonnegative.
    pub fn shifted(&self, shift: (i32, i32)) -> PolyAB {
        PolyAB::from_terms(self.terms.iter().map(|(k, c)| {
            let (x, y) = (k.0 - shift.0, k.1 - shift.1);
            assert!(x >= 0 && y >= 0, "shift leaves a negative exponent");
            ((x as u32, y as u32), c.clone())
        }))
    }
}
