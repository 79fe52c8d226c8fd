//! Buchberger's algorithm for ideals of K[a, b] under a lex order.

use std::collections::BTreeSet;

use super::poly::{divides, lcm, LexOrder, Mono, PolyAB};
use crate::exact::NfElem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub polys: Vec<PolyAB>,
    pub order: LexOrder,
}

/// Quotients and remainder of multivariate division.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<PolyAB>,
    pub remainder: PolyAB,
}

pub fn divide(f: &PolyAB, divisors: &[PolyAB], order: LexOrder) -> Division {
    let leads: Vec<(Mono, NfElem)> = divisors
        .iter()
        .map(|g| {
            let (m, c) = g.leading(order).expect("nonzero divisor");
            (m, c.inverse().expect("nonzero"))
        })
        .collect();
    let mut quotients = vec![PolyAB::zero(); divisors.len()];
    let mut remainder = PolyAB::zero();
    let mut p = f.clone();
    while let Some((m, c)) = p.leading(order) {
        let c = c.clone();
        match leads.iter().position(|(lm, _)| divides(*lm, m)) {
            Some(i) => {
                let (lm, inv) = &leads[i];
                let t = (m.0 - lm.0, m.1 - lm.1);
                let k = &c * inv;
                quotients[i].add_term(t, &k);
                p = p.sub(&divisors[i].mul_term(&k, t));
            }
            None => {
                remainder.add_term(m, &c);
                p = p.sub(&PolyAB::monomial(c, m));
            }
        }
    }
    Division { quotients, remainder }
}

pub fn reduce(f: &PolyAB, divisors: &[PolyAB], order: LexOrder) -> PolyAB {
    divide(f, divisors, order).remainder
}

fn s_poly(f: &PolyAB, g: &PolyAB, order: LexOrder) -> PolyAB {
    let (mf, cf) = f.leading(order).expect("nonzero");
    let (mg, cg) = g.leading(order).expect("nonzero");
    let l = lcm(mf, mg);
    let a = f.mul_term(&cf.inverse().expect("nonzero"), (l.0 - mf.0, l.1 - mf.1));
    let b = g.mul_term(&cg.inverse().expect("nonzero"), (l.0 - mg.0, l.1 - mg.1));
    a.sub(&b)
}

/// Reduced Gröbner basis, monic and sorted by decreasing leading monomial.
pub fn buchberger(gens: &[PolyAB], order: LexOrder) -> GroebnerBasis {
    let mut g: Vec<PolyAB> = Vec::new();
    for f in gens {
        let r = reduce(f, &g, order);
        if !r.is_zero() {
            g.push(r.monic(order));
        }
    }
    let lm = |p: &PolyAB| p.leading(order).expect("nonzero").0;
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while let Some(&(i, j)) = pending.iter().next() {
        pending.remove(&(i, j));
        let (li, lj) = (lm(&g[i]), lm(&g[j]));
        let l = lcm(li, lj);
        // product criterion
        if l == (li.0 + lj.0, li.1 + lj.1) {
            continue;
        }
        // chain criterion
        let pair = |x: usize, y: usize| (x.min(y), x.max(y));
        if (0..g.len()).any(|k| {
            k != i && k != j && divides(lm(&g[k]), l) && !pending.contains(&pair(i, k)) && !pending.contains(&pair(j, k))
        }) {
            continue;
        }
        let r = reduce(&s_poly(&g[i], &g[j], order), &g, order);
        if !r.is_zero() {
            g.push(r.monic(order));
            let n = g.len() - 1;
            for k in 0..n {
                pending.insert((k, n));
            }
        }
    }
    GroebnerBasis { polys: reduce_basis(g, order), order }
}

fn reduce_basis(g: Vec<PolyAB>, order: LexOrder) -> Vec<PolyAB> {
    let lm = |p: &PolyAB| p.leading(order).expect("nonzero").0;
    // minimal: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<PolyAB> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let m = lm(p);
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let n = lm(q);
            j != i && divides(n, m) && (n != m || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<PolyAB> = (0..minimal.len())
        .map(|i| {
            let others: Vec<PolyAB> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
            let (m, c) = minimal[i].leading(order).expect("nonzero");
            let tail = minimal[i].sub(&PolyAB::monomial(c.clone(), m));
            PolyAB::monomial(c.clone(), m).add(&reduce(&tail, &others, order)).monic(order)
        })
        .collect();
    out.sort_by(|x, y| order.cmp(lm(y), lm(x)));
    out
}

impl GroebnerBasis {
    pub fn contains(&self, f: &PolyAB) -> bool {
        reduce(f, &self.polys, self.order).is_zero()
    }

    pub fn is_reduced(&self) -> bool {
        let order = self.order;
        self.polys.iter().enumerate().all(|(i, p)| {
            let (_, c) = p.leading(order).expect("nonzero");
            c.is_one()
                && p.terms().keys().all(|m| {
                    self.polys
                        .iter()
                        .enumerate()
                        .all(|(j, q)| j == i || !divides(q.leading(order).expect("nonzero").0, *m))
                })
        })
    }

    /// Every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let n = self.polys.len();
        (0..n).all(|j| (0..j).all(|i| self.contains(&s_poly(&self.polys[i], &self.polys[j], self.order))))
    }
}
