//! Reduce the 216 automorphisms mod a split prime and count fixed points of u over F_p.
//!
//! MODCURVE_THREADS=4 cargo run --release --example modp_census -- 31

use std::time::Instant;

use modcurve::canon::reference_model;
use modcurve::exact::{is_split, ResidueMap};
use modcurve::ideals::solve;
use modcurve::qexp::standard_basis;
use modcurve::verify::{fixed_point_census, full_group, mod_p_suite, specialize_u};

fn main() -> modcurve::Result<()> {
    let p: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(31);
    let split: Vec<u64> = (5..200).filter(|&q| is_split(q).unwrap_or(false)).collect();
    println!("split primes below 200: {split:?}");
    let model = reference_model(&standard_basis(60)?);
    let (a, _) = solve(&model)?.solutions.into_iter().next().expect("three solutions");
    let u = specialize_u(&a, &model)?;
    let (group, _) = full_group(&u.proj, &model)?;
    let res = mod_p_suite(p, &group, &model, &u.raw, false)?;
    println!("p = {p}: zeta -> {}, c -> {}", res.zeta_image, res.c_image);
    println!("{} reduced matrices, {} distinct, {} preserve the span", res.total, res.distinct, res.preserved);
    let start = Instant::now();
    match fixed_point_census(&ResidueMap::new(p)?, &u.raw, &model)? {
        Some(c) => println!(
            "eigenspaces P^{} and P^{}: {} points searched, {} fixed points ({:.1?})",
            c.plus_dim - 1,
            c.minus_dim - 1,
            c.points_searched,
            c.fixed_points(),
            start.elapsed()
        ),
        None => println!("census too large at p = {p}"),
    }
    Ok(())
}
