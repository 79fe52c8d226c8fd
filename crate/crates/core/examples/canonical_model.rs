//! Quadric relations among the ten cusp forms, reduced with LLL and compared to the stored list.
//!
//! cargo run --release --example canonical_model -- 150

use modcurve::canon::{canonical_relations, not_trigonal_check, reference_model};
use modcurve::exact::Rationals;
use modcurve::linalg::span_equal;
use modcurve::qexp::standard_basis;

fn main() -> modcurve::Result<()> {
    let prec: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(150);
    let basis = standard_basis(prec)?;
    let model = canonical_relations(&basis)?;
    for q in &model.quadrics {
        println!("{q}");
    }
    let fixture = reference_model(&basis);
    println!("relations: {}", model.quadrics.len());
    println!("same span as stored list: {}", span_equal(&Rationals, &model.rational_rows(), &fixture.rational_rows()));
    println!("identical list: {}", model.matches_reference_list());
    let t = not_trigonal_check(&fixture);
    println!("cubic rank {} (expect {}), quadrics mod ideal {}", t.cubic_rank, t.expected_rank, t.quadric_quotient_dim);
    Ok(())
}
