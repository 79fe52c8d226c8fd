//! Reduction of the automorphism group and the model modulo split primes.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{preserves_span, quadric_monomials, CanonicalModel};
use crate::error::{Error, Result};
use crate::exact::{Field, NfElem, PrimeField, ResidueMap};
use crate::group::{MatrixGroup, ProjMatrix};
use crate::linalg::{self, Matrix, SpanTester};

/// Projective points searched per census above which it is skipped.
pub const CENSUS_LIMIT: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub p: u64,
    pub plus_dim: usize,
    pub minus_dim: usize,
    pub points_searched: u64,
    /// Fixed points of u on the reduced curve, in eigenspace coordinates.
    pub plus_points: Vec<Vec<u64>>,
    pub minus_points: Vec<Vec<u64>>,
}

impl Census {
    pub fn fixed_points(&self) -> usize {
        self.plus_points.len() + self.minus_points.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModPResult {
    pub p: u64,
    pub zeta_image: u64,
    pub c_image: u64,
    pub total: usize,
    pub distinct: usize,
    pub preserved: usize,
    pub census: Option<Census>,
}

/// `MODCURVE_THREADS`, if set to a positive integer.
pub fn census_threads() -> Option<usize> {
    std::env::var("MODCURVE_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

fn reduced_quadrics(model: &CanonicalModel, f: &PrimeField) -> Vec<Vec<u64>> {
    model.quadrics_in(f)
}

pub fn mod_p_suite(
    p: u64,
    group: &MatrixGroup<NfElem>,
    model: &CanonicalModel,
    u_raw: &Matrix<NfElem>,
    with_census: bool,
) -> Result<ModPResult> {
    if !crate::exact::is_split(p)? {
        return Err(Error::NotSplit(p));
    }
    let r = ResidueMap::new(p)?;
    let f = r.field();
    let reduced: Vec<ProjMatrix<u64>> = group.elements.iter().map(|g| g.reduce(&r)).collect::<Result<_>>()?;
    let distinct = reduced.iter().collect::<HashSet<_>>().len();
    let rows = reduced_quadrics(model, &f);
    let tester = SpanTester::new(&f, &rows);
    let preserved = reduced.iter().filter(|g| preserves_span(&f, &tester, &rows, g.matrix())).count();
    let census = if with_census { fixed_point_census(&r, u_raw, model)? } else { None };
    Ok(ModPResult {
        p,
        zeta_image: r.zeta_image,
        c_image: r.c_image,
        total: reduced.len(),
        distinct,
        preserved,
        census,
    })
}

/// Quadrics restricted to the span of `basis`, as coefficient lists over `t_k t_l`, `k ≤ l`.
fn restrict(f: &PrimeField, quadrics: &[Vec<u64>], basis: &[Vec<u64>]) -> Vec<Vec<(usize, usize, u64)>> {
    let d = basis.len();
    let monos = quadric_monomials();
    quadrics
        .iter()
        .map(|q| {
            let mut out = Vec::new();
            for k in 0..d {
                for l in k..d {
                    let mut acc = 0;
                    for (&(i, j), c) in monos.iter().zip(q) {
                        if *c == 0 {
                            continue;
                        }
                        let mut t = f.mul(&basis[k][i], &basis[l][j]);
                        if k != l {
                            t = f.add(&t, &f.mul(&basis[l][i], &basis[k][j]));
                        }
                        acc = f.add(&acc, &f.mul(c, &t));
                    }
                    if acc != 0 {
                        out.push((k, l, acc));
                    }
                }
            }
            out
        })
        .collect()
}

/// Points of P^(d-1)(F_p) on which every restricted quadric vanishes.
fn enumerate(p: u64, d: usize, quads: &[Vec<(usize, usize, u64)>]) -> (u64, Vec<Vec<u64>>) {
    let mut found = Vec::new();
    let mut searched = 0;
    for lead in 0..d {
        let free = d - 1 - lead;
        let count = p.pow(free as u32);
        searched += count;
        let mut hits: Vec<Vec<u64>> = (0..count)
            .into_par_iter()
            .filter_map(|idx| {
                let mut t = vec![0u64; d];
                t[lead] = 1;
                let mut x = idx;
                for slot in t[lead + 1..].iter_mut() {
                    *slot = x % p;
                    x /= p;
                }
                let on = quads.iter().all(|q| q.iter().map(|&(k, l, c)| c * (t[k] * t[l] % p)).sum::<u64>() % p == 0);
                on.then_some(t)
            })
            .collect();
        hits.sort();
        found.extend(hits);
    }
    (searched, found)
}

/// Fixed points of u on the reduced curve: points of the projectivized ±1
/// eigenspaces of the point action lying on every quadric.
pub fn fixed_point_census(r: &ResidueMap, u_raw: &Matrix<NfElem>, model: &CanonicalModel) -> Result<Option<Census>> {
    let f = r.field();
    let p = r.p;
    let mt = u_raw.transpose().try_map(|x| r.apply(x))?;
    let eigenspace = |s: i64| {
        let mut m = mt.clone();
        for i in 0..m.rows() {
            let v = f.sub(m.get(i, i), &f.from_i64(s));
            m.set(i, i, v);
        }
        linalg::right_kernel(&f, &m)
    };
    let plus = eigenspace(1);
    let minus = eigenspace(-1);
    let size = |d: usize| (0..d as u32).map(|k| p.pow(k)).sum::<u64>();
    if size(plus.len()) + size(minus.len()) > CENSUS_LIMIT {
        return Ok(None);
    }
    let rows = reduced_quadrics(model, &f);
    let run = || {
        let (n1, plus_points) = enumerate(p, plus.len(), &restrict(&f, &rows, &plus));
        let (n2, minus_points) = enumerate(p, minus.len(), &restrict(&f, &rows, &minus));
        Census { p, plus_dim: plus.len(), minus_dim: minus.len(), points_searched: n1 + n2, plus_points, minus_points }
    };
    let census = match census_threads() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?
            .install(run),
        None => run(),
    };
    Ok(Some(census))
}
