//! The five newforms from point counts, checked against eta products and reference coefficients.
//!
//! cargo run --example q_expansions -- 40

use modcurve::qexp::{ec_ap, f27_eta, f36_eta, reference_expansions, EllipticCurve, Newforms};

fn main() {
    let prec: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let forms = Newforms::compute(prec);
    for name in ["f27", "f36", "f108", "f54_1", "f54_2"] {
        let s = forms.by_name(name).expect("known name");
        println!("{name:6} {}", s.truncate(prec.min(25)));
    }
    println!("f27 = eta(3z)^2 eta(9z)^2: {}", f27_eta(prec) == forms.f27);
    println!("f36 = eta(6z)^4:           {}", f36_eta(prec) == forms.f36);
    for e in reference_expansions() {
        println!("{} agrees through q^{}: {}", e.name, e.known_through, e.agrees_with(forms.by_name(&e.name).unwrap()));
    }
    let e = EllipticCurve::e27();
    let aps: Vec<(u64, i64)> = [5u64, 7, 11, 13].iter().map(|&p| (p, ec_ap(&e, p))).collect();
    println!("a_p for the conductor 27 curve: {aps:?}");
}
