//! Seeded randomness: a portable PRNG with Box-Muller Gaussians, plus the
//! Ginibre-based state and Haar unitary samplers.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::density::DensityMatrix;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic random stream: ChaCha8 keyed by a 64-bit seed, uniforms
/// from the top 53 bits, Gaussians via Box-Muller.
///
/// A source is single-owner mutable state. Concurrent sweeps must give each
/// task its own source via [`RandomSource::derive`], a pure function of
/// (seed, index), so results never depend on scheduling.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
    spare_gaussian: Option<f64>,
}

/// PRNG identifier recorded in reproducibility-sensitive output.
pub const RNG_ALGORITHM: &str = "chacha8+box-muller";

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare_gaussian: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent child stream for sample `index`; splitmix64 of the
    /// (seed, index) pair.
    pub fn derive(&self, index: u64) -> RandomSource {
        let child = splitmix64(
            self.seed
                .wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)),
        );
        RandomSource::new(child)
    }

    /// Uniform on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / ((1u64 << 53) as f64);
        (self.rng.next_u64() >> 11) as f64 * SCALE
    }

    /// Standard normal via Box-Muller on the uniform stream.
    pub fn gaussian(&mut self) -> f64 {
        if let Some(g) = self.spare_gaussian.take() {
            return g;
        }
        let u1 = 1.0 - self.uniform(); // (0, 1]; keeps ln finite
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let (sin, cos) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare_gaussian = Some(radius * sin);
        radius * cos
    }

    /// Complex Gaussian with independent standard-normal components.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        Complex64::new(self.gaussian(), self.gaussian())
    }
}

/// Random density matrix ρ = GG†/Tr(GG†) with G a d×rank complex Ginibre
/// matrix; rank = d samples the Hilbert-Schmidt measure.
pub fn random_density(d: usize, rank: usize, rng: &mut RandomSource) -> Result<DensityMatrix> {
    if rank < 1 || rank > d {
        return Err(Error::invalid(format!(
            "rank must lie in 1..={d}, got {rank}"
        )));
    }
    // Row-major draw order is part of the determinism contract.
    let mut g = vec![Complex64::new(0.0, 0.0); d * rank];
    for entry in g.iter_mut() {
        *entry = rng.complex_gaussian();
    }

    let mut w = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in i..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..rank {
                acc += g[i * rank + k] * g[j * rank + k].conj();
            }
            w[i * d + j] = acc;
            w[j * d + i] = acc.conj();
        }
        w[i * d + i].im = 0.0;
    }
    let trace: f64 = (0..d).map(|i| w[i * d + i].re).sum();
    let inv = 1.0 / trace;
    for entry in w.iter_mut() {
        *entry = entry.scale(inv);
    }
    DensityMatrix::trusted(ComplexMatrix::from_entries(d, w)?)
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix via modified
/// Gram-Schmidt with re-orthogonalization. MGS leaves the diagonal of R
/// real and positive, which is exactly the phase normalization that makes
/// the distribution Haar.
pub fn random_unitary(d: usize, rng: &mut RandomSource) -> Result<ComplexMatrix> {
    if d == 0 {
        return Err(Error::invalid("unitary dimension must be at least 1"));
    }
    // Row-major draw order, as everywhere else; work on the columns.
    let mut flat = vec![Complex64::new(0.0, 0.0); d * d];
    for entry in flat.iter_mut() {
        *entry = rng.complex_gaussian();
    }
    let mut cols: Vec<Vec<Complex64>> = (0..d)
        .map(|j| (0..d).map(|i| flat[i * d + j]).collect())
        .collect();

    for k in 0..d {
        // Two orthogonalization passes keep U†U − I at machine precision.
        for _ in 0..2 {
            for j in 0..k {
                let proj: Complex64 = cols[j]
                    .iter()
                    .zip(cols[k].iter())
                    .map(|(q, v)| q.conj() * v)
                    .sum();
                let qj = cols[j].clone();
                for (v, q) in cols[k].iter_mut().zip(qj.iter()) {
                    *v -= proj * q;
                }
            }
        }
        let norm: f64 = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-150 {
            return Err(Error::NonFinite {
                context: "degenerate Ginibre draw in QR",
            });
        }
        let inv = 1.0 / norm;
        for v in cols[k].iter_mut() {
            *v = v.scale(inv);
        }
    }

    ComplexMatrix::from_fn(d, |i, j| cols[j][i])
}
