//! Exact LLL reduction of integer lattice bases (rows are basis vectors).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

pub const LLL_DELTA: (i64, i64) = (3, 4);

fn to_q(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

struct GramSchmidt {
    mu: Vec<Vec<Rational>>,
    norms: Vec<Rational>,
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> Result<GramSchmidt> {
    let n = b.len();
    let bq: Vec<Vec<Rational>> = b.iter().map(|v| to_q(v)).collect();
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = bq[i].clone();
        for j in 0..i {
            let m: Rational = dot(&bq[i], &star[j]) / &norms[j];
            if !m.is_zero() {
                for (x, y) in v.iter_mut().zip(&star[j]) {
                    if !y.is_zero() {
                        *x -= &m * y;
                    }
                }
            }
            mu[i][j] = m;
        }
        let nrm = dot(&v, &v);
        if nrm.is_zero() {
            return Err(Error::NotABasis);
        }
        norms.push(nrm);
        star.push(v);
    }
    Ok(GramSchmidt { mu, norms })
}

/// Update μ and the squared norms after exchanging rows `k - 1` and `k`.
fn swap_update(gs: &mut GramSchmidt, k: usize) {
    let m = gs.mu[k][k - 1].clone();
    let big = &gs.norms[k] + &m * &m * &gs.norms[k - 1];
    let new_m = &m * &gs.norms[k - 1] / &big;
    gs.norms[k] = &gs.norms[k - 1] * &gs.norms[k] / &big;
    gs.norms[k - 1] = big;
    gs.mu[k][k - 1] = new_m.clone();
    for j in 0..k - 1 {
        let t = std::mem::take(&mut gs.mu[k][j]);
        gs.mu[k][j] = std::mem::replace(&mut gs.mu[k - 1][j], t);
    }
    for i in k + 1..gs.mu.len() {
        let t = gs.mu[i][k].clone();
        gs.mu[i][k] = &gs.mu[i][k - 1] - &m * &t;
        gs.mu[i][k - 1] = t + &new_m * &gs.mu[i][k];
    }
}

fn round_half_up(q: &Rational) -> BigInt {
    let two = BigInt::from(2);
    (q.numer() * &two + q.denom()).div_floor(&(q.denom() * two))
}

/// LLL with δ = 3/4. Fails with `NotABasis` on linearly dependent input.
pub fn lll_reduce(basis: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let mut b = basis.to_vec();
    let n = b.len();
    if n == 0 {
        return Ok(b);
    }
    let delta = Rational::new(LLL_DELTA.0.into(), LLL_DELTA.1.into());
    let mut gs = gram_schmidt(&b)?;
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let m = &gs.mu[k][j];
            if m.abs() * Rational::from_integer(2.into()) > Rational::one() {
                let r = round_half_up(m);
                let (head, tail) = b.split_at_mut(k);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= &r * y;
                }
                let rq = Rational::from_integer(r);
                for l in 0..j {
                    let t = &rq * &gs.mu[j][l];
                    gs.mu[k][l] -= t;
                }
                gs.mu[k][j] -= &rq;
            }
        }
        let lhs = &gs.norms[k];
        let m = &gs.mu[k][k - 1];
        let rhs = (&delta - m * m) * &gs.norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            swap_update(&mut gs, k);
            k = (k - 1).max(1);
        }
    }
    Ok(b)
}

/// Size condition |μ| ≤ 1/2 and the Lovász condition with δ = 3/4.
pub fn is_lll_reduced(basis: &[Vec<BigInt>]) -> Result<bool> {
    let gs = gram_schmidt(basis)?;
    let half = Rational::new(1.into(), 2.into());
    let delta = Rational::new(LLL_DELTA.0.into(), LLL_DELTA.1.into());
    for k in 0..basis.len() {
        for j in 0..k {
            if gs.mu[k][j].abs() > half {
                return Ok(false);
            }
        }
        if k > 0 {
            let m = &gs.mu[k][k - 1];
            if gs.norms[k] < (&delta - m * m) * &gs.norms[k - 1] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn reduces_small_example() {
        let out = lll_reduce(&v(&[&[1, 0], &[4, 1]])).unwrap();
        assert_eq!(out, v(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn orthogonal_basis_unchanged() {
        let b = v(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(lll_reduce(&b).unwrap(), b);
    }

    #[test]
    fn dependent_input_rejected() {
        assert_eq!(lll_reduce(&v(&[&[1, 2], &[2, 4]])), Err(Error::NotABasis));
    }

    #[test]
    fn output_is_reduced() {
        let b = v(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        let out = lll_reduce(&b).unwrap();
        assert!(is_lll_reduced(&out).unwrap());
        assert!(!is_lll_reduced(&b).unwrap());
    }

    #[test]
    fn incremental_update_matches_recomputation() {
        let b = v(&[&[3, 1, 4, 1], &[5, 9, 2, 6], &[5, 3, 5, 8], &[9, 7, 9, 3]]);
        let out = lll_reduce(&b).unwrap();
        assert!(is_lll_reduced(&out).unwrap());
        let det = |m: &[Vec<BigInt>]| {
            let gs = gram_schmidt(m).unwrap();
            gs.norms.iter().fold(Rational::one(), |acc, x| acc * x)
        };
        assert_eq!(det(&out), det(&b));
    }

    #[test]
    fn rounding() {
        assert_eq!(round_half_up(&Rational::new(5.into(), 2.into())), BigInt::from(3));
        assert_eq!(round_half_up(&Rational::new((-5).into(), 2.into())), BigInt::from(-2));
        assert_eq!(round_half_up(&Rational::new(7.into(), 3.into())), BigInt::from(2));
    }
}
