use serde::Serialize;

use quditfid_core::properties::{
    concavity_gap, counterexample_closed_form_lhs, counterexample_closed_form_rhs,
    paper_orthogonal_example,
};
use quditfid_core::fidelity::StateMeasure;
use quditfid_core::states::DensityMatrix;

use crate::io::MatrixFile;
use crate::output::{fidelity_human, Sink};
use crate::{CliError, DemoArgs, DemoName, Outcome};

// The demo states ship as fixture files; the binary embeds the same bytes.
const ORTHOGONAL_RHO0: &str = include_str!("../../fixtures/orthogonal_rho0.json");
const ORTHOGONAL_RHO1: &str = include_str!("../../fixtures/orthogonal_rho1.json");
const CONCAVITY_RHO1: &str = include_str!("../../fixtures/concavity_rho1.json");
const CONCAVITY_RHO2: &str = include_str!("../../fixtures/concavity_rho2.json");
const CONCAVITY_SIGMA: &str = include_str!("../../fixtures/concavity_sigma.json");

pub fn run(args: DemoArgs) -> Result<Outcome, CliError> {
    let mut sink = Sink::new(args.format, args.out.as_ref())?;
    match args.name {
        DemoName::Orthogonal => orthogonal(&mut sink),
        DemoName::Concavity => concavity(&mut sink, args.p, args.grid.as_deref()),
    }
}

fn fixture_density(source: &str, name: &str) -> Result<DensityMatrix, CliError> {
    MatrixFile::from_str(source, name)?.to_density(name)
}

/// Expected values for the orthogonal pair per measure, with the tolerance
/// each is held to.
const ORTHOGONAL_EXPECTED: [(&str, f64, f64); 4] = [
    ("uhlmann", 0.0, 1e-7),
    ("super", 0.5, 1e-12),
    ("f2", 2.0 / 3.0, 1e-12),
    ("alt", 0.0, 1e-12),
];

fn orthogonal(sink: &mut Sink) -> Result<Outcome, CliError> {
    // The fixture files and the in-code construction must agree.
    let rho0 = fixture_density(ORTHOGONAL_RHO0, "orthogonal_rho0.json")?;
    let rho1 = fixture_density(ORTHOGONAL_RHO1, "orthogonal_rho1.json")?;

    let reports = paper_orthogonal_example()?;
    let mut all_match = true;
    sink.note("orthogonal rank-2 pair on d = 4: expected (0, 1/2, 2/3, 0)")?;
    for report in &reports {
        let (_, expected, tol) = ORTHOGONAL_EXPECTED
            .iter()
            .find(|(name, _, _)| *name == report.measure)
            .expect("known measure");
        if (report.value - expected).abs() > *tol {
            all_match = false;
        }
        sink.emit(&fidelity_human(report), report)?;
    }

    // Cross-check the fixtures against the reference values directly.
    for (measure, expected, tol) in ORTHOGONAL_EXPECTED {
        let value = measure
            .parse::<StateMeasure>()
            .expect("known measure")
            .compute(&rho0, &rho1)?;
        if (value - expected).abs() > tol {
            all_match = false;
        }
    }

    Ok(if all_match { Outcome::Pass } else { Outcome::Fail })
}

#[derive(Serialize)]
struct ConcavityRow {
    p: f64,
    lhs: f64,
    rhs: f64,
    gap: f64,
    closed_lhs: f64,
    closed_rhs: f64,
    lhs_residual: f64,
    rhs_residual: f64,
}

fn concavity(sink: &mut Sink, p: Option<f64>, grid: Option<&str>) -> Result<Outcome, CliError> {
    let rho1 = fixture_density(CONCAVITY_RHO1, "concavity_rho1.json")?;
    let rho2 = fixture_density(CONCAVITY_RHO2, "concavity_rho2.json")?;
    let sigma = fixture_density(CONCAVITY_SIGMA, "concavity_sigma.json")?;

    let ps: Vec<f64> = match (p, grid) {
        (Some(single), None) => vec![single],
        (None, spec) => parse_p_grid(spec.unwrap_or("101"))?,
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "--p and --grid are mutually exclusive".to_string(),
            ))
        }
    };

    sink.note("concavity counterexample: rho1 = I/2, rho2 = |0><0|, sigma = |1><1|")?;
    let mut all_match = true;
    for &p in &ps {
        let record = concavity_gap(StateMeasure::Alt, &rho1, &rho2, &sigma, p)?;
        let closed_lhs = counterexample_closed_form_lhs(p);
        let closed_rhs = counterexample_closed_form_rhs(p);
        let row = ConcavityRow {
            p: record.p,
            lhs: record.lhs,
            rhs: record.rhs,
            gap: record.gap,
            closed_lhs,
            closed_rhs,
            lhs_residual: (record.lhs - closed_lhs).abs(),
            rhs_residual: (record.rhs - closed_rhs).abs(),
        };
        if row.lhs_residual > 1e-12 || row.rhs_residual > 1e-12 {
            all_match = false;
        }
        let human = format!(
            "p={:<8.6} lhs={:<12.9} rhs={:<12.9} gap={:+.9e} lhs_residual={:.3e} rhs_residual={:.3e}",
            row.p, row.lhs, row.rhs, row.gap, row.lhs_residual, row.rhs_residual
        );
        sink.emit(&human, &row)?;
    }

    Ok(if all_match { Outcome::Pass } else { Outcome::Fail })
}

/// "N" (no dot, no comma) = N uniform points on [0,1]; otherwise a
/// comma-separated list of explicit weights.
fn parse_p_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let trimmed = spec.trim();
    if !trimmed.contains(',') && !trimmed.contains('.') {
        let count: usize = trimmed.parse().map_err(|_| {
            CliError::Usage(format!("invalid grid spec '{spec}': expected a count or a list"))
        })?;
        if count < 2 {
            return Err(CliError::Usage("grid needs at least 2 points".to_string()));
        }
        return Ok((0..count)
            .map(|k| k as f64 / (count - 1) as f64)
            .collect());
    }
    let values = super::parse_float_list(trimmed, "grid")?;
    if values.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
        return Err(CliError::Usage(
            "grid weights must lie in [0, 1]".to_string(),
        ));
    }
    Ok(values)
}
