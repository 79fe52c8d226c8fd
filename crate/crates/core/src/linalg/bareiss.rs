//! Fraction-free (Bareiss) elimination for matrices over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Matrix;
use crate::exact::Rational;

/// Scale every row to integers by its denominator lcm.
pub(super) fn integer_rows(m: &Matrix<Rational>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

/// Integer row echelon form; returns the pivot columns.
fn bareiss_echelon(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[col].clone();
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let v = &pivot * &row[j] - &lead * &pivot_row[j];
                if v.is_zero() {
                    row[j] = v;
                    continue;
                }
                let (quot, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = quot;
            }
        }
        prev = pivot;
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank_rational(m: &Matrix<Rational>) -> usize {
    let mut a = integer_rows(m);
    bareiss_echelon(&mut a, m.cols()).len()
}

/// Left kernel of a rational matrix as primitive integer vectors.
pub fn integer_left_kernel(m: &Matrix<Rational>) -> Vec<Vec<BigInt>> {
    let t = m.transpose();
    let n = t.cols();
    let mut a = integer_rows(&t);
    let pivots = bareiss_echelon(&mut a, n);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut x = vec![Rational::zero(); n];
        x[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate().rev() {
            let mut s = Rational::zero();
            for j in p + 1..n {
                if !a[r][j].is_zero() && !x[j].is_zero() {
                    s += Rational::from_integer(a[r][j].clone()) * &x[j];
                }
            }
            x[p] = -s / Rational::from_integer(a[r][p].clone());
        }
        out.push(primitive(&x));
    }
    out
}

/// Clear denominators and divide by the content, first nonzero entry positive.
pub(crate) fn primitive(x: &[Rational]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    let sign = if ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|v| v / &g * &sign).collect()
}
