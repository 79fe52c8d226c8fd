//! Permutation groups: the regular representation of a closed matrix group,
//! the abstract reference model, and structural fingerprints.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::closure_by;
use crate::error::Result;

/// A permutation of `0..n`, composed left to right: `p.then(q)` applies `p` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(!std::mem::replace(&mut seen[i as usize], true), "not a permutation");
        }
        Perm(images)
    }

    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Self {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                images[x as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn then(&self, q: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| q.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.then(self);
            k += 1;
        }
        k
    }

    pub fn commutes_with(&self, q: &Perm) -> bool {
        self.then(q) == q.then(self)
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    pub generators: Vec<Perm>,
    pub elements: Vec<Perm>,
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Perm>, bound: usize) -> Result<Self> {
        let closed = closure_by(Perm::identity(degree), &generators, |a, b| a.then(b), bound)?;
        Ok(PermGroup { generators, elements: closed.elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn center(&self) -> Vec<&Perm> {
        self.elements.iter().filter(|x| self.generators.iter().all(|g| x.commutes_with(g))).collect()
    }

    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let mut comms: HashSet<Perm> = HashSet::new();
        for x in &self.elements {
            let xi = x.inverse();
            for y in &self.elements {
                comms.insert(xi.then(&y.inverse()).then(x).then(y));
            }
        }
        let mut gens: Vec<Perm> = comms.into_iter().filter(|p| !p.is_identity()).collect();
        gens.sort();
        let degree = self.elements[0].degree();
        PermGroup::generate(degree, gens, self.order())
    }

    pub fn fingerprint(&self) -> Result<GroupFingerprint> {
        let mut order_histogram = BTreeMap::new();
        for x in &self.elements {
            *order_histogram.entry(x.order()).or_insert(0) += 1;
        }
        let derived = self.derived_subgroup()?;
        let members: HashSet<&Perm> = derived.elements.iter().collect();
        // orders in G/G': smallest k with x^k in G'
        let mut quotient_orders: BTreeMap<usize, usize> = BTreeMap::new();
        for x in &self.elements {
            let mut p = x.clone();
            let mut k = 1;
            while !members.contains(&p) {
                p = p.then(x);
                k += 1;
            }
            *quotient_orders.entry(k).or_insert(0) += 1;
        }
        for count in quotient_orders.values_mut() {
            *count /= derived.order();
        }
        Ok(GroupFingerprint {
            order: self.order(),
            order_histogram,
            center_order: self.center().len(),
            derived_subgroup_order: derived.order(),
            abelianization_invariants: abelian_invariants(&quotient_orders),
        })
    }
}

/// Invariants that a finite group's structure is compared on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub order_histogram: BTreeMap<usize, usize>,
    pub center_order: usize,
    pub derived_subgroup_order: usize,
    pub abelianization_invariants: Vec<usize>,
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors `d_1 | d_2 | …` of a finite abelian group from its element-order counts.
pub fn abelian_invariants(order_counts: &BTreeMap<usize, usize>) -> Vec<usize> {
    let m: usize = order_counts.values().sum();
    let mut factors: Vec<usize> = Vec::new();
    for p in prime_factors(m) {
        // s_k = log_p #{x : x^(p^k) = 1}
        let mut s = vec![0usize];
        let mut pk = 1;
        loop {
            pk *= p;
            let count: usize = order_counts.iter().filter(|(o, _)| pk % **o == 0).map(|(_, c)| c).sum();
            let mut log = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                log += 1;
            }
            s.push(log);
            if log == s[s.len() - 2] {
                break;
            }
        }
        // d_k = #{cyclic factors of exponent >= k}
        let d: Vec<usize> = s.windows(2).map(|w| w[1] - w[0]).collect();
        let mut powers = Vec::new();
        for (k, &dk) in d.iter().enumerate() {
            let next = d.get(k + 1).copied().unwrap_or(0);
            for _ in 0..dk - next {
                powers.push(p.pow(k as u32 + 1));
            }
        }
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in powers.into_iter().enumerate() {
            if i < factors.len() {
                factors[i] *= q;
            } else {
                factors.push(q);
            }
        }
    }
    factors.reverse();
    factors
}

/// D₆ × (C₃ ≀ C₂) acting on nine points: S₃ on {0,1,2}, the wreath product on {3,…,8}.
pub fn reference_group() -> PermGroup {
    let n = 9;
    let gens = vec![
        Perm::from_cycles(n, &[&[0, 1, 2]]),
        Perm::from_cycles(n, &[&[0, 1]]),
        Perm::from_cycles(n, &[&[3, 4, 5]]),
        Perm::from_cycles(n, &[&[3, 6], &[4, 7], &[5, 8]]),
    ];
    PermGroup::generate(n, gens, 1000).expect("order 108")
}

pub fn reference_fingerprint() -> GroupFingerprint {
    reference_group().fingerprint().expect("small group")
}
