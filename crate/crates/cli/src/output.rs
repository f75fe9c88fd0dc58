//! Output plumbing: `--format human` prints aligned text, `--format
//! records` prints one JSON object per line. Results go to stdout or to
//! `--out <path>`; diagnostics stay on stderr.

use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

use quditfid_core::fidelity::FidelityReport;
use quditfid_core::properties::{ConcavityRecord, PropertyReport};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Records,
}

pub struct Sink {
    format: Format,
    writer: Box<dyn Write>,
}

impl Sink {
    pub fn new(format: Format, out: Option<&PathBuf>) -> Result<Sink, CliError> {
        let writer: Box<dyn Write> = match out {
            None => Box::new(std::io::stdout()),
            Some(path) => Box::new(std::fs::File::create(path).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?),
        };
        Ok(Sink { format, writer })
    }

    pub fn format(&self) -> Format {
        self.format
    }

    fn line(&mut self, text: &str) -> Result<(), CliError> {
        writeln!(self.writer, "{text}").map_err(|e| CliError::Io {
            path: "<output>".to_string(),
            message: e.to_string(),
        })
    }

    /// Emits a record: the human rendering or its JSON form.
    pub fn emit<T: Serialize>(&mut self, human: &str, record: &T) -> Result<(), CliError> {
        match self.format {
            Format::Human => self.line(human),
            Format::Records => {
                let json = serde_json::to_string(record).expect("serializable record");
                self.line(&json)
            }
        }
    }

    /// Human-only annotation, dropped in records mode.
    pub fn note(&mut self, text: &str) -> Result<(), CliError> {
        match self.format {
            Format::Human => self.line(text),
            Format::Records => Ok(()),
        }
    }
}

pub fn fidelity_human(report: &FidelityReport) -> String {
    format!(
        "{:<8} value={:<22.17} dim={} inner=[{:.6e}, {:.6e}] purity0={:.12} purity1={:.12}",
        report.measure,
        report.value,
        report.dim,
        report.inner_product.re,
        report.inner_product.im,
        report.purity0,
        report.purity1
    )
}

pub fn property_human(report: &PropertyReport) -> String {
    let verdict = if report.effective_pass() { "PASS" } else { "FAIL" };
    let mode = if report.expect_violation {
        " (expected violation)"
    } else {
        ""
    };
    let mut line = format!(
        "[{verdict}] {:<26} measure={:<8} samples={:<6} max_violation={:.3e} tol={:.1e}{mode}",
        report.property_name, report.measure, report.samples, report.max_violation,
        report.tolerance
    );
    if let Some(fraction) = report.satisfied_fraction {
        line.push_str(&format!(" satisfied_fraction={fraction:.6}"));
    }
    if let Some(min_gap) = report.min_gap {
        line.push_str(&format!(" min_gap={min_gap:.6e}"));
    }
    line
}

pub fn concavity_human(record: &ConcavityRecord) -> String {
    format!(
        "p={:<8.6} lhs={:<12.9} rhs={:<12.9} gap={:+.9e}",
        record.p, record.lhs, record.rhs, record.gap
    )
}
