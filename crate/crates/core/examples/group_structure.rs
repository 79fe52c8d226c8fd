//! Closure of w4, w27, S2, S3 and its structural fingerprint.
//!
//! cargo run --release --example group_structure

use modcurve::exact::NumberField;
use modcurve::group::{b0_group, reference_fingerprint, tau3};

fn main() -> modcurve::Result<()> {
    let g = b0_group()?;
    println!("order {}", g.order());
    let fp = g.fingerprint()?;
    println!("{}", serde_json::to_string_pretty(&fp).expect("serializes"));
    println!("matches D6 x (C3 wr C2): {}", fp == reference_fingerprint());
    let t = tau3();
    let diag: Vec<String> = (0..10).map(|i| t.matrix().get(i, i).to_expr()).collect();
    println!("tau3 diagonal: {}", diag.join(", "));
    println!("tau3 has order 3: {}", t.pow(&NumberField, 3).is_identity(&NumberField));
    println!("centre size {}", g.center().len());
    Ok(())
}
