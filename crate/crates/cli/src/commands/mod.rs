pub mod bench;
pub mod check;
pub mod compute;
pub mod demo;
pub mod sweep;

use crate::CliError;

/// Parses a comma-separated list of finite floats.
pub fn parse_float_list(spec: &str, what: &str) -> Result<Vec<f64>, CliError> {
    let values: Result<Vec<f64>, _> = spec.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match values {
        Ok(v) if !v.is_empty() && v.iter().all(|x| x.is_finite()) => Ok(v),
        _ => Err(CliError::Usage(format!(
            "invalid {what} list '{spec}': expected comma-separated finite numbers"
        ))),
    }
}

/// Parses a comma-separated list of dimensions.
pub fn parse_dim_list(spec: &str) -> Result<Vec<usize>, CliError> {
    let values: Result<Vec<usize>, _> = spec.split(',').map(|s| s.trim().parse::<usize>()).collect();
    match values {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(CliError::Usage(format!(
            "invalid dimension list '{spec}': expected comma-separated integers"
        ))),
    }
}
