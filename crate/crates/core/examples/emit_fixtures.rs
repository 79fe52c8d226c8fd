//! Write the stored quadrics, generator matrices and explicit map to a directory and read them back.
//!
//! cargo run --example emit_fixtures -- /tmp/fixtures

use std::path::PathBuf;

use modcurve::fixtures::{emit_fixtures, read_projective, GENERATORS_FILE};

fn main() -> modcurve::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    for path in emit_fixtures(&dir)? {
        println!("wrote {}", path.display());
    }
    let text = std::fs::read_to_string(dir.join(GENERATORS_FILE)).map_err(|e| modcurve::Error::Io(e.to_string()))?;
    for (name, m) in read_projective(&text)? {
        println!("{name}: {}x{}", m.dim(), m.dim());
    }
    Ok(())
}
