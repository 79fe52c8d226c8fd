//! Reference data written to disk for external diffing, and read back.

use std::fs;
use std::path::{Path, PathBuf};

use crate::canon::reference_quadrics_text;
use crate::error::{Error, Result};
use crate::exact::{NfElem, NumberField};
use crate::group::{b0_generators, Generators, ProjMatrix};
use crate::linalg::Matrix;
use crate::verify::explicit_map;

pub const QUADRICS_FILE: &str = "quadrics.txt";
pub const GENERATORS_FILE: &str = "generators.txt";
pub const EXPLICIT_MAP_FILE: &str = "explicit_map.txt";

/// Named matrices, one `# name` header then one row per line with
/// whitespace-separated serialized entries.
pub fn format_matrices(named: &[(&str, &Matrix<NfElem>)]) -> String {
    let mut out = String::new();
    for (name, m) in named {
        out.push_str(&format!("# {name}\n"));
        for i in 0..m.rows() {
            let row: Vec<String> = m.row(i).iter().map(NfElem::to_serial).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn parse_matrices(text: &str) -> Result<Vec<(String, Matrix<NfElem>)>> {
    let mut out: Vec<(String, Vec<Vec<NfElem>>)> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(name) = line.strip_prefix('#') {
            out.push((name.trim().to_string(), Vec::new()));
            continue;
        }
        let (_, rows) = out.last_mut().ok_or_else(|| Error::Parse("matrix row before a header".into()))?;
        let row = line
            .split("] [")
            .map(|t| {
                let t = t.trim_start_matches('[').trim_end_matches(']');
                NfElem::parse_serial(&format!("[{t}]"))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    out.into_iter()
        .map(|(name, rows)| {
            let n = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::Parse(format!("ragged matrix {name}")));
            }
            Ok((name, Matrix::from_rows(&rows)))
        })
        .collect()
}

pub fn generators_text() -> String {
    let g = b0_generators();
    let names = Generators::<()>::names();
    let mats: Vec<&ProjMatrix<NfElem>> = vec![&g.w4, &g.w27, &g.s2, &g.s3];
    let named: Vec<(&str, &Matrix<NfElem>)> = names.iter().copied().zip(mats.iter().map(|m| m.matrix())).collect();
    format_matrices(&named)
}

pub fn explicit_map_text() -> String {
    format_matrices(&[("u", explicit_map().matrix())])
}

/// Write the three fixture files into `dir`, returning their paths.
pub fn emit_fixtures(dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let files = [
        (QUADRICS_FILE, reference_quadrics_text().to_string()),
        (GENERATORS_FILE, generators_text()),
        (EXPLICIT_MAP_FILE, explicit_map_text()),
    ];
    let mut paths = Vec::new();
    for (name, body) in files {
        let path = dir.join(name);
        fs::write(&path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        paths.push(path);
    }
    Ok(paths)
}

/// Matrices read back from a generators file, as projective classes.
pub fn read_projective(text: &str) -> Result<Vec<(String, ProjMatrix<NfElem>)>> {
    parse_matrices(text)?
        .into_iter()
        .map(|(n, m)| Ok((n, ProjMatrix::new(&NumberField, m)?)))
        .collect()
}
