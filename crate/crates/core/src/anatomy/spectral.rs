use crate::graph::Adjacency;
use crate::random::splitmix64;
use crate::{Error, Real, Result};
use serde::Serialize;

const TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralEstimate<F> {
    /// Estimate of the largest |λ| over eigenvectors orthogonal to the all-ones vector.
    pub value: F,
    pub iterations: usize,
    /// Whether successive estimates agreed to a relative 1e-8 before the cap.
    pub converged: bool,
}

/// Power iteration on the adjacency operator with the constant direction
/// projected out after every step. The norm ratio approaches `|λ₂|` from
/// below, with error of order `(|λ₃|/|λ₂|)^iterations`.
pub fn second_eigenvalue<F: Real, G: Adjacency>(g: &G, iterations: usize) -> Result<SpectralEstimate<F>> {
    g.regular_degree().ok_or(Error::NotRegular)?;
    let n = g.order();
    // deterministic pseudo-random start, so no eigenvector is missed by symmetry
    let mut x: Vec<F> = (0..n as u64)
        .map(|i| F::c((splitmix64(i) >> 11) as f64 / (1u64 << 53) as f64 - 0.5))
        .collect();
    let mut y = vec![F::zero(); n];
    deflate(&mut x);
    if normalize(&mut x) == F::zero() {
        return Ok(SpectralEstimate { value: F::zero(), iterations: 0, converged: true });
    }
    let mut value = F::zero();
    for it in 1..=iterations {
        for (v, out) in y.iter_mut().enumerate() {
            *out = g.neighbors(v).fold(F::zero(), |s, w| s + x[w]);
        }
        deflate(&mut y);
        let next = normalize(&mut y);
        std::mem::swap(&mut x, &mut y);
        let done = (next - value).abs() <= F::c(TOLERANCE) * next;
        value = next;
        if done || next == F::zero() {
            return Ok(SpectralEstimate { value, iterations: it, converged: true });
        }
    }
    Ok(SpectralEstimate { value, iterations, converged: false })
}

fn deflate<F: Real>(x: &mut [F]) {
    let mean = x.iter().fold(F::zero(), |s, &v| s + v) / F::from_count(x.len());
    x.iter_mut().for_each(|v| *v = *v - mean);
}

fn normalize<F: Real>(x: &mut [F]) -> F {
    let norm = x.iter().fold(F::zero(), |s, &v| s + v * v).sqrt();
    if norm > F::zero() {
        x.iter_mut().for_each(|v| *v = *v / norm);
    }
    norm
}
