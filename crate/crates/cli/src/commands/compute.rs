use quditfid_core::fidelity::{
    operator_report, state_report, thermal_fidelity, unitary_fidelity, wick_unitary_fidelity,
    FidelityReport, StateMeasure,
};
use quditfid_core::states::thermal_state;

use crate::io::MatrixFile;
use crate::output::{fidelity_human, Sink};
use crate::{CliError, ComputeArgs, MeasureArg, Outcome};

pub fn run(args: ComputeArgs) -> Result<Outcome, CliError> {
    let mut sink = Sink::new(args.format, args.out.as_ref())?;

    let file_a = MatrixFile::read(&args.a)?;
    let file_b = MatrixFile::read(&args.b)?;
    let origin_a = args.a.display().to_string();
    let origin_b = args.b.display().to_string();

    let report = match args.measure {
        MeasureArg::Uhlmann | MeasureArg::Super | MeasureArg::F2 | MeasureArg::Alt => {
            let measure = match args.measure {
                MeasureArg::Uhlmann => StateMeasure::Uhlmann,
                MeasureArg::Super => StateMeasure::Super,
                MeasureArg::F2 => StateMeasure::F2,
                MeasureArg::Alt => StateMeasure::Alt,
                _ => unreachable!(),
            };
            let rho0 = file_a.to_density(&origin_a)?;
            let rho1 = file_b.to_density(&origin_b)?;
            state_report(measure, &rho0, &rho1)?
        }
        MeasureArg::Operator => operator_report(&file_a.matrix, &file_b.matrix)?,
        MeasureArg::Unitary => {
            let u0 = file_a.to_unitary(&origin_a)?;
            let u1 = file_b.to_unitary(&origin_b)?;
            FidelityReport {
                measure: "unitary".to_string(),
                value: unitary_fidelity(&u0, &u1)?,
                inner_product: u0.hilbert_schmidt_inner(&u1)?,
                purity0: u0.hilbert_schmidt_inner(&u0)?.re,
                purity1: u1.hilbert_schmidt_inner(&u1)?.re,
                dim: u0.dim(),
            }
        }
        MeasureArg::Thermal => {
            let beta = args.beta.ok_or_else(|| {
                CliError::Usage("--beta is required for the thermal measure".to_string())
            })?;
            let h0 = file_a.to_hamiltonian(&origin_a)?;
            let h1 = file_b.to_hamiltonian(&origin_b)?;
            let value = thermal_fidelity(&h0, &h1, beta)?;
            let rho0 = thermal_state(&h0, beta)?;
            let rho1 = thermal_state(&h1, beta)?;
            FidelityReport {
                measure: "thermal".to_string(),
                value,
                inner_product: rho0.matrix().trace_product(rho1.matrix())?,
                purity0: rho0.purity(),
                purity1: rho1.purity(),
                dim: h0.dim(),
            }
        }
        MeasureArg::Wick => {
            let t = args.t.ok_or_else(|| {
                CliError::Usage("--t is required for the wick measure".to_string())
            })?;
            let h0 = file_a.to_hamiltonian(&origin_a)?;
            let h1 = file_b.to_hamiltonian(&origin_b)?;
            let value = wick_unitary_fidelity(&h0, &h1, t)?;
            let d = h0.dim();
            FidelityReport {
                measure: "wick".to_string(),
                value,
                // Tr(U0†U1) for the generated evolutions; |inner|/d = value.
                inner_product: {
                    use num_complex::Complex64;
                    use quditfid_core::linalg::hermitian_apply_complex;
                    let u0 = hermitian_apply_complex(h0.matrix(), |l| {
                        Complex64::from_polar(1.0, -t * l)
                    })?;
                    let u1 = hermitian_apply_complex(h1.matrix(), |l| {
                        Complex64::from_polar(1.0, -t * l)
                    })?;
                    u0.hilbert_schmidt_inner(&u1)?
                },
                purity0: d as f64,
                purity1: d as f64,
                dim: d,
            }
        }
    };

    sink.emit(&fidelity_human(&report), &report)?;
    Ok(Outcome::Pass)
}
