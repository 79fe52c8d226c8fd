//! Relations, the order 216 group, cusps and the eigenvalue count for one branch of u.
//!
//! cargo run --release --example verify_involution -- 1

use modcurve::canon::reference_model;
use modcurve::ideals::solve;
use modcurve::qexp::standard_basis;
use modcurve::verify::{check_cusps, check_differentials, check_relations, full_group, specialize_u};

fn main() -> modcurve::Result<()> {
    let branch: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let model = reference_model(&standard_basis(60)?);
    let (a, _) = solve(&model)?.solutions.into_iter().nth(branch).expect("branch 0, 1 or 2");
    let u = specialize_u(&a, &model)?;
    let mut report = check_relations(&u.proj);
    report.extend(full_group(&u.proj, &model)?.1);
    report.extend(check_cusps(&model, &u.proj)?);
    report.extend(check_differentials(&u));
    print!("{}", report.to_text());
    Ok(())
}
