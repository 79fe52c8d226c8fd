//! Conditions for M(a, b) to preserve the ideal, their Groebner basis, and the three solutions.
//!
//! cargo run --release --example solve_involution

use modcurve::canon::reference_model;
use modcurve::ideals::{gb_string, solve};
use modcurve::qexp::standard_basis;
use modcurve::verify::{check_branches, specialize_u};

fn main() -> modcurve::Result<()> {
    let model = reference_model(&standard_basis(60)?);
    let s = solve(&model)?;
    println!("{} generators", s.generators.len());
    for g in s.generators.iter().take(5) {
        println!("  {g}");
    }
    println!("reduced basis {}", gb_string(&s.basis));
    let branches = s.solutions.iter().map(|(a, _)| specialize_u(a, &model)).collect::<modcurve::Result<Vec<_>>>()?;
    for b in &branches {
        println!("a = {}, b = {}", b.a.to_expr(), b.b.to_expr());
    }
    print!("{}", check_branches(&branches).to_text());
    Ok(())
}
