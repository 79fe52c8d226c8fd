//! The canonical model in P⁹: quadric relations among the weight 4 products
//! `e_i e_j`, the degree 3 rank check, and points on the curve.
//!
//! Quadrics are 55-vectors indexed by monomials `x_i x_j` with `i ≤ j` in
//! lexicographic order.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Field, NfElem, Rational, Rationals};
use crate::linalg::{self, lll_reduce, saturated_left_kernel, rank_rational, Matrix, SpanTester};
use crate::qexp::{CuspFormBasis, QSeries, PRECISION_FLOOR};

pub const GENUS: usize = 10;
pub const QUADRIC_MONOMIALS: usize = 55;
pub const CUBIC_MONOMIALS: usize = 220;
pub const RELATION_COUNT: usize = 28;
/// Relation count for a hyperelliptic curve of genus 10: 55 - (2g - 1).
pub const HYPERELLIPTIC_RELATION_COUNT: usize = 36;
/// `h⁰(kK) = (2k - 1)(g - 1)` for k ≥ 2.
pub fn pluricanonical_dim(k: usize) -> usize {
    (2 * k - 1) * (GENUS - 1)
}

const REFERENCE_QUADRICS: &str = include_str!("../data/quadrics.txt");

/// Monomials `(i, j)`, `0 ≤ i ≤ j < 10`, in quadric coefficient order.
pub fn quadric_monomials() -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(QUADRIC_MONOMIALS);
    for i in 0..GENUS {
        for j in i..GENUS {
            out.push((i, j));
        }
    }
    out
}

pub fn monomial_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * GENUS - i * (i.saturating_sub(1)) / 2 + (j - i)
}

fn cubic_monomials() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(CUBIC_MONOMIALS);
    for i in 0..GENUS {
        for j in i..GENUS {
            for k in j..GENUS {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// A quadratic form in `x1..x10` as a coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadric<E> {
    pub coeffs: Vec<E>,
}

impl Quadric<BigInt> {
    pub fn parse(s: &str) -> Result<Self> {
        parse_quadric(s).map(|coeffs| Quadric { coeffs })
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }

    pub fn negated(&self) -> Self {
        Quadric { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::fmt::Display for Quadric<BigInt> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_quadric(&self.coeffs))
    }
}

fn format_quadric(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for ((i, j), c) in quadric_monomials().into_iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let mono = if i == j {
            format!("x{}^2", i + 1)
        } else {
            format!("x{}*x{}", i + 1, j + 1)
        };
        let mag = c.abs();
        let term = if mag.is_one() { mono } else { format!("{mag}*{mono}") };
        match (out.is_empty(), c.is_negative()) {
            (true, false) => out.push_str(&term),
            (true, true) => out.push_str(&format!("-{term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
            (false, true) => out.push_str(&format!(" - {term}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn parse_quadric(s: &str) -> Result<Vec<BigInt>> {
    let bad = |m: &str| Error::Parse(format!("{m} in quadric {s:?}"));
    let mut coeffs = vec![BigInt::zero(); QUADRIC_MONOMIALS];
    let normalized = s.replace(" - ", " + -").replace(' ', "");
    for term in normalized.split('+').filter(|t| !t.is_empty()) {
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term),
        };
        let mut coeff = BigInt::one();
        let mut vars = Vec::new();
        for factor in body.split('*') {
            if let Some(v) = factor.strip_prefix('x') {
                let (idx, pow) = match v.split_once('^') {
                    Some((i, p)) => (i, p.parse::<usize>().map_err(|_| bad("bad exponent"))?),
                    None => (v, 1),
                };
                let idx: usize = idx.parse().map_err(|_| bad("bad variable"))?;
                if idx == 0 || idx > GENUS {
                    return Err(bad("variable out of range"));
                }
                vars.extend(std::iter::repeat_n(idx - 1, pow));
            } else {
                coeff *= factor.parse::<BigInt>().map_err(|_| bad("bad coefficient"))?;
            }
        }
        if vars.len() != 2 {
            return Err(bad("term is not of degree 2"));
        }
        if neg {
            coeff = -coeff;
        }
        coeffs[monomial_index(vars[0], vars[1])] += coeff;
    }
    Ok(coeffs)
}

/// The 28 reference quadrics, stored as data.
pub fn reference_quadrics() -> Vec<Quadric<BigInt>> {
    REFERENCE_QUADRICS
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| Quadric::parse(l).expect("fixture parses"))
        .collect()
}

pub fn reference_quadrics_text() -> &'static str {
    REFERENCE_QUADRICS
}

/// The 55 products `e_i e_j` in quadric monomial order.
pub fn weight4_products(basis: &CuspFormBasis) -> Vec<QSeries> {
    quadric_monomials().into_iter().map(|(i, j)| basis.e[i].mul(&basis.e[j])).collect()
}

/// Rows: the 55 products; columns: the coefficients of `q^2 … q^prec`.
pub fn product_matrix(basis: &CuspFormBasis) -> Matrix<Rational> {
    let products = weight4_products(basis);
    let cols = basis.prec - 1;
    let mut data = Vec::with_capacity(QUADRIC_MONOMIALS * cols);
    for s in &products {
        debug_assert!(s.coeff(0).is_zero() && s.coeff(1).is_zero());
        data.extend(s.coeffs()[2..=basis.prec].iter().cloned());
    }
    Matrix::from_vec(QUADRIC_MONOMIALS, cols, data)
}

#[derive(Clone, Debug)]
pub struct CanonicalModel {
    pub quadrics: Vec<Quadric<BigInt>>,
    pub basis: CuspFormBasis,
    pub prec: usize,
}

impl CanonicalModel {
    pub fn rational_rows(&self) -> Vec<Vec<Rational>> {
        self.quadrics.iter().map(Quadric::to_rational).collect()
    }

    /// Quadrics with coefficients mapped into another field.
    pub fn quadrics_in<F: Field>(&self, f: &F) -> Vec<Vec<F::Elem>> {
        self.quadrics
            .iter()
            .map(|q| q.coeffs.iter().map(|c| embed_int(f, c)).collect())
            .collect()
    }

    pub fn nf_rows(&self) -> Vec<Vec<NfElem>> {
        self.quadrics
            .iter()
            .map(|q| q.coeffs.iter().map(|c| NfElem::from_rational(Rational::from_integer(c.clone()))).collect())
            .collect()
    }

    /// Basis of linear functionals on quadrics vanishing on the model span.
    pub fn complement_functionals(&self) -> Vec<Vec<Rational>> {
        let m = Matrix::from_rows(&self.rational_rows());
        linalg::right_kernel(&Rationals, &m)
    }

    /// Do the product series satisfy every relation through `q^prec`?
    pub fn relations_vanish(&self) -> bool {
        let products = weight4_products(&self.basis);
        self.quadrics.iter().all(|q| {
            let mut acc = QSeries::zero(self.basis.prec);
            for (c, s) in q.coeffs.iter().zip(&products) {
                if !c.is_zero() {
                    acc = acc.add(&s.scale(&Rational::from_integer(c.clone())));
                }
            }
            acc.is_zero()
        })
    }

    /// Same quadrics as the reference list, up to order and sign.
    pub fn matches_reference_list(&self) -> bool {
        let reference = reference_quadrics();
        self.quadrics.len() == reference.len()
            && self.quadrics.iter().all(|q| reference.contains(q) || reference.contains(&q.negated()))
    }
}

fn embed_int<F: Field>(f: &F, c: &BigInt) -> F::Elem {
    let small: i64 = c.try_into().expect("quadric coefficients are small");
    f.from_i64(small)
}

/// Kernel of the product coefficient matrix, LLL-reduced to a short integer basis.
pub fn canonical_relations(basis: &CuspFormBasis) -> Result<CanonicalModel> {
    if basis.prec < PRECISION_FLOOR {
        return Err(Error::InsufficientPrecision { got: basis.prec, min: PRECISION_FLOOR });
    }
    let m = product_matrix(basis);
    let kernel = saturated_left_kernel(&m);
    if kernel.len() != RELATION_COUNT {
        return Err(Error::ModelMismatch(format!(
            "expected {RELATION_COUNT} quadric relations, found {}",
            kernel.len()
        )));
    }
    let reduced = lll_reduce(&kernel)?;
    let quadrics = reduced.into_iter().map(|coeffs| Quadric { coeffs: normalize_sign(coeffs) }).collect();
    Ok(CanonicalModel { quadrics, basis: basis.clone(), prec: basis.prec })
}

fn normalize_sign(v: Vec<BigInt>) -> Vec<BigInt> {
    let neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if neg {
        v.into_iter().map(|x| -x).collect()
    } else {
        v
    }
}

pub fn reference_model(basis: &CuspFormBasis) -> CanonicalModel {
    CanonicalModel { quadrics: reference_quadrics(), basis: basis.clone(), prec: basis.prec }
}

/// Rank of the span of `{x_k Q}` inside the 220 cubic monomials.
pub fn degree3_rank(quadrics: &[Quadric<BigInt>]) -> usize {
    let index: HashMap<(usize, usize, usize), usize> =
        cubic_monomials().into_iter().enumerate().map(|(n, m)| (m, n)).collect();
    let monos = quadric_monomials();
    let mut rows = Vec::with_capacity(GENUS * quadrics.len());
    for k in 0..GENUS {
        for q in quadrics {
            let mut row = vec![Rational::zero(); CUBIC_MONOMIALS];
            for (&(i, j), c) in monos.iter().zip(&q.coeffs) {
                if c.is_zero() {
                    continue;
                }
                let mut t = [i, j, k];
                t.sort();
                row[index[&(t[0], t[1], t[2])]] += Rational::from_integer(c.clone());
            }
            rows.push(row);
        }
    }
    rank_rational(&Matrix::from_rows(&rows))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigonalCheck {
    pub cubic_rank: usize,
    pub expected_rank: usize,
    pub quadric_quotient_dim: usize,
    pub not_trigonal: bool,
}

/// The ideal has no new generators in degree 3 iff the cubic multiples of the
/// quadrics fill a space of codimension `h⁰(3K)` = 45 among the 220 cubics.
pub fn not_trigonal_check(model: &CanonicalModel) -> TrigonalCheck {
    let cubic_rank = degree3_rank(&model.quadrics);
    let expected_rank = CUBIC_MONOMIALS - pluricanonical_dim(3);
    let quadric_rank = rank_rational(&Matrix::from_rows(&model.rational_rows()));
    TrigonalCheck {
        cubic_rank,
        expected_rank,
        quadric_quotient_dim: QUADRIC_MONOMIALS - quadric_rank,
        not_trigonal: cubic_rank == expected_rank && quadric_rank == RELATION_COUNT,
    }
}

/// False exactly when the relation count is the hyperelliptic one.
pub fn hyperelliptic_guard(relation_count: usize) -> Result<bool> {
    match relation_count {
        RELATION_COUNT => Ok(true),
        HYPERELLIPTIC_RELATION_COUNT => Ok(false),
        n => Err(Error::ModelMismatch(format!("unexpected relation count {n}"))),
    }
}

/// A point of P⁹, normalized so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint<E> {
    coords: Vec<E>,
}

impl<E: Clone> ProjPoint<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, coords: Vec<E>) -> Result<Self> {
        let lead = coords.iter().find(|x| !f.is_zero(x)).ok_or(Error::ZeroPoint)?;
        let inv = f.inv(lead).expect("nonzero");
        let coords = coords.iter().map(|x| f.mul(x, &inv)).collect();
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    /// Image under the point action `x ↦ gᵀ x` of a pullback matrix `g`.
    pub fn apply<F: Field<Elem = E>>(&self, f: &F, g: &Matrix<E>) -> Self {
        let image = linalg::vec_mat(f, &self.coords, g);
        ProjPoint::new(f, image).expect("invertible matrix")
    }
}

pub fn eval_quadric<F: Field>(f: &F, q: &[F::Elem], x: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (&(i, j), c) in quadric_monomials().iter().zip(q) {
        if f.is_zero(c) || f.is_zero(&x[i]) || f.is_zero(&x[j]) {
            continue;
        }
        acc = f.add(&acc, &f.mul(c, &f.mul(&x[i], &x[j])));
    }
    acc
}

pub fn on_curve<F: Field>(f: &F, p: &ProjPoint<F::Elem>, quadrics: &[Vec<F::Elem>]) -> bool {
    quadrics.iter().all(|q| f.is_zero(&eval_quadric(f, q, p.coords())))
}

/// Pull a quadric back along `x_i ↦ Σ_j g_{ji} x_j`.
pub fn transform_quadric<F: Field>(f: &F, q: &[F::Elem], g: &Matrix<F::Elem>) -> Vec<F::Elem> {
    let n = g.rows();
    let columns: Vec<Vec<(usize, F::Elem)>> = (0..n)
        .map(|i| (0..n).filter(|&k| !f.is_zero(g.get(k, i))).map(|k| (k, g.get(k, i).clone())).collect())
        .collect();
    let mut out = vec![f.zero(); QUADRIC_MONOMIALS];
    for (&(i, j), c) in quadric_monomials().iter().zip(q) {
        if f.is_zero(c) {
            continue;
        }
        for (k, gk) in &columns[i] {
            let ck = f.mul(c, gk);
            for (l, gl) in &columns[j] {
                let idx = monomial_index(*k, *l);
                out[idx] = f.add(&out[idx], &f.mul(&ck, gl));
            }
        }
    }
    out
}

/// Does `g` map the span of `quadrics` into itself?
pub fn preserves_span<F: Field>(
    f: &F,
    tester: &SpanTester<F>,
    quadrics: &[Vec<F::Elem>],
    g: &Matrix<F::Elem>,
) -> bool {
    quadrics.iter().all(|q| tester.contains(f, &transform_quadric(f, q, g)))
}
