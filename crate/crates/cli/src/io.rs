//! Matrix file format: a JSON object with `dim`, an optional `kind`, and a
//! dim×dim `data` array of `[re, im]` pairs. The writer emits 17
//! significant digits so a round trip reproduces every f64 bit-exactly.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use quditfid_core::linalg::ComplexMatrix;
use quditfid_core::states::{DensityMatrix, Hamiltonian};

use crate::CliError;

/// Declared role of a matrix file; drives which validation gate it must
/// pass on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Density,
    Hamiltonian,
    Unitary,
    Raw,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Density => "density",
            Kind::Hamiltonian => "hamiltonian",
            Kind::Unitary => "unitary",
            Kind::Raw => "raw",
        }
    }

    fn parse(s: &str) -> Option<Kind> {
        match s {
            "density" => Some(Kind::Density),
            "hamiltonian" => Some(Kind::Hamiltonian),
            "unitary" => Some(Kind::Unitary),
            "raw" => Some(Kind::Raw),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MatrixFile {
    pub kind: Kind,
    pub matrix: ComplexMatrix,
}

#[derive(Deserialize)]
struct RawFile {
    dim: usize,
    #[serde(default)]
    kind: Option<String>,
    data: Vec<Vec<[f64; 2]>>,
}

fn parse(source: &str, origin: &str) -> Result<MatrixFile, CliError> {
    let raw: RawFile = serde_json::from_str(source).map_err(|e| CliError::Parse {
        path: origin.to_string(),
        message: e.to_string(),
    })?;

    let kind = match raw.kind.as_deref() {
        None => Kind::Raw,
        Some(k) => Kind::parse(k).ok_or_else(|| CliError::Parse {
            path: origin.to_string(),
            message: format!("unknown kind '{k}'"),
        })?,
    };

    if raw.data.len() != raw.dim || raw.data.iter().any(|row| row.len() != raw.dim) {
        return Err(CliError::Parse {
            path: origin.to_string(),
            message: format!("data must be a {0}x{0} array", raw.dim),
        });
    }

    let entries: Vec<Complex64> = raw
        .data
        .iter()
        .flatten()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    let matrix = ComplexMatrix::from_entries(raw.dim, entries).map_err(|e| CliError::Invalid {
        path: origin.to_string(),
        source: e,
    })?;

    let file = MatrixFile { kind, matrix };
    file.validate_declared_kind(origin)?;
    Ok(file)
}

impl MatrixFile {
    pub fn read(path: &Path) -> Result<MatrixFile, CliError> {
        let origin = path.display().to_string();
        let source = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: origin.clone(),
            message: e.to_string(),
        })?;
        parse(&source, &origin)
    }

    /// Parses an in-memory fixture; `origin` labels diagnostics.
    pub fn from_str(source: &str, origin: &str) -> Result<MatrixFile, CliError> {
        parse(source, origin)
    }

    fn validate_declared_kind(&self, origin: &str) -> Result<(), CliError> {
        let check = |r: Result<(), quditfid_core::Error>| {
            r.map_err(|e| CliError::Invalid {
                path: origin.to_string(),
                source: e,
            })
        };
        match self.kind {
            Kind::Raw => Ok(()),
            Kind::Density => check(DensityMatrix::from_matrix(self.matrix.clone()).map(|_| ())),
            Kind::Hamiltonian => check(Hamiltonian::from_matrix(self.matrix.clone()).map(|_| ())),
            Kind::Unitary => check(self.matrix.require_unitary(1e-8)),
        }
    }

    pub fn to_density(&self, origin: &str) -> Result<DensityMatrix, CliError> {
        DensityMatrix::from_matrix(self.matrix.clone()).map_err(|e| CliError::Invalid {
            path: origin.to_string(),
            source: e,
        })
    }

    pub fn to_hamiltonian(&self, origin: &str) -> Result<Hamiltonian, CliError> {
        Hamiltonian::from_matrix(self.matrix.clone()).map_err(|e| CliError::Invalid {
            path: origin.to_string(),
            source: e,
        })
    }

    pub fn to_unitary(&self, origin: &str) -> Result<ComplexMatrix, CliError> {
        self.matrix
            .require_unitary(1e-8)
            .map_err(|e| CliError::Invalid {
                path: origin.to_string(),
                source: e,
            })?;
        Ok(self.matrix.clone())
    }
}

/// Serializes with 17 significant digits per component; field order is
/// fixed but insignificant to the reader.
pub fn format_matrix_file(matrix: &ComplexMatrix, kind: Kind) -> String {
    let d = matrix.dim();
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"dim\": {d},");
    let _ = writeln!(out, "  \"kind\": \"{}\",", kind.name());
    let _ = writeln!(out, "  \"data\": [");
    for i in 0..d {
        let row: Vec<String> = matrix
            .row(i)
            .iter()
            .map(|z| format!("[{:.16e}, {:.16e}]", z.re, z.im))
            .collect();
        let comma = if i + 1 < d { "," } else { "" };
        let _ = writeln!(out, "    [{}]{comma}", row.join(", "));
    }
    let _ = writeln!(out, "  ]");
    let _ = write!(out, "}}");
    out
}

pub fn write_matrix_file(path: &Path, matrix: &ComplexMatrix, kind: Kind) -> Result<(), CliError> {
    std::fs::write(path, format_matrix_file(matrix, kind)).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use quditfid_core::states::{random_density, RandomSource};

    #[test]
    fn round_trip_is_bit_exact() {
        let mut rng = RandomSource::new(77);
        for _ in 0..20 {
            let rho = random_density(3, 3, &mut rng).unwrap();
            let text = format_matrix_file(rho.matrix(), Kind::Density);
            let parsed = MatrixFile::from_str(&text, "mem").unwrap();
            assert_eq!(parsed.kind, Kind::Density);
            assert_eq!(parsed.matrix, *rho.matrix());
        }
    }

    #[test]
    fn write_read_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("state.json");
        let mut rng = RandomSource::new(78);
        let rho = random_density(4, 2, &mut rng).unwrap();
        write_matrix_file(&path, rho.matrix(), Kind::Density).unwrap();
        let parsed = MatrixFile::read(&path).unwrap();
        assert_eq!(parsed.matrix, *rho.matrix());
    }

    #[test]
    fn declared_density_kind_is_validated() {
        let bad = r#"{"dim": 2, "kind": "density", "data": [[[0.6,0],[0,0]],[[0,0],[0.5,0]]]}"#;
        let err = MatrixFile::from_str(bad, "mem").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("mem"), "{msg}");
        assert!(msg.contains("trace"), "{msg}");
    }

    #[test]
    fn missing_kind_defaults_to_raw() {
        let text = r#"{"dim": 1, "data": [[[2.5, -1.0]]]}"#;
        let parsed = MatrixFile::from_str(text, "mem").unwrap();
        assert_eq!(parsed.kind, Kind::Raw);
        assert_eq!(parsed.matrix.get(0, 0), Complex64::new(2.5, -1.0));
    }

    #[test]
    fn shape_mismatch_is_a_parse_error() {
        let text = r#"{"dim": 2, "data": [[[0.0, 0.0]]]}"#;
        assert!(MatrixFile::from_str(text, "mem").is_err());
    }

    #[test]
    fn field_order_is_insignificant() {
        let text = r#"{"data": [[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.0]]], "dim": 2, "kind": "raw"}"#;
        assert!(MatrixFile::from_str(text, "mem").is_ok());
    }
}
