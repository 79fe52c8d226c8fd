//! Saturated integer kernels by unimodular row reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bareiss::integer_rows;
use super::Matrix;
use crate::exact::Rational;

/// Basis of `{v ∈ Z^n : vᵀ A = 0}` (the full lattice, not a finite-index sublattice).
///
/// Rows of `A` are scaled to integers first, which does not change the kernel.
pub fn saturated_left_kernel(m: &Matrix<Rational>) -> Vec<Vec<BigInt>> {
    let n = m.rows();
    let cols = m.cols();
    let mut a = integer_rows(&m.transpose());
    // a is cols × n; we reduce the columns of a, i.e. rows of A, tracking U.
    let mut at: Vec<Vec<BigInt>> = (0..n).map(|i| a.iter_mut().map(|r| std::mem::take(&mut r[i])).collect()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut r = 0;
    for col in 0..cols {
        if r == n {
            break;
        }
        while let Some(p) = (r..n)
            .filter(|&i| !at[i][col].is_zero())
            .min_by(|&i, &j| at[i][col].abs().cmp(&at[j][col].abs()))
        {
            at.swap(p, r);
            u.swap(p, r);
            let mut done = true;
            for i in r + 1..n {
                if at[i][col].is_zero() {
                    continue;
                }
                let q = at[i][col].div_floor(&at[r][col]);
                let (top, bottom) = at.split_at_mut(i);
                sub_multiple(&mut bottom[0], &top[r], &q);
                let (top, bottom) = u.split_at_mut(i);
                sub_multiple(&mut bottom[0], &top[r], &q);
                if !at[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                r += 1;
                break;
            }
        }
    }
    u.split_off(r)
}

fn sub_multiple(row: &mut [BigInt], pivot: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (x, y) in row.iter_mut().zip(pivot) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}
