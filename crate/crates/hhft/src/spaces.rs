//! Weighted sequence-space functionals on the dual: `ℓ^β` norms in both the
//! class-I and the group weighting, spectral tail sums, and Sobolev
//! weighting by `⟨ξ⟩^σ`.
//!
//! Sums run in descending-weight order (smallest terms first once the data
//! decays) with Neumaier compensation; tail sums feed exponent fits, so
//! cancellation control matters more than speed here.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::transform::Spectrum;

/// Which `ℓ^β` weighting to use: the class-I form
/// `Σ d_ξ k_ξ (‖σ(ξ)‖_HS/√k_ξ)^β` or the group form
/// `Σ d_ξ^{β(2/β - 1/2)} ‖σ(ξ)‖_HS^β`. They coincide when `k_ξ = d_ξ`.
#[derive(Debug, Clone, Copy)]
pub struct DualNormRequest {
    pub beta: f64,
    pub use_class_i_weighting: bool,
}

impl DualNormRequest {
    pub fn class_i(beta: f64) -> Self {
        DualNormRequest {
            beta,
            use_class_i_weighting: true,
        }
    }

    pub fn group(beta: f64) -> Self {
        DualNormRequest {
            beta,
            use_class_i_weighting: false,
        }
    }
}

/// Neumaier-compensated sum in the order given.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Per-entry contribution to `‖·‖_{ℓ^β}^β`, paired with the entry weight,
/// in ascending-weight (canonical) order.
pub fn lp_terms(s: &Spectrum, req: &DualNormRequest) -> Result<Vec<(f64, f64)>> {
    if !(req.beta > 0.0) {
        return Err(Error::argument(format!(
            "beta must be positive, got {}",
            req.beta
        )));
    }
    let beta = req.beta;
    Ok(s
        .entries()
        .iter()
        .map(|e| {
            let d = e.point.dim as f64;
            let hs = e.matrix.hs_norm();
            let term = if req.use_class_i_weighting {
                let k = e.point.k as f64;
                d * k * (hs / k.sqrt()).powf(beta)
            } else {
                d * d * (hs / d.sqrt()).powf(beta)
            };
            (e.point.weight, term)
        })
        .collect())
}

/// `‖f̂‖_{ℓ^β}`: the β-th root of the weighted sum. β < 1 is accepted as a
/// quasi-norm.
pub fn lp_dual_norm(s: &Spectrum, req: &DualNormRequest) -> Result<f64> {
    let terms = lp_terms(s, req)?;
    let total = compensated_sum(terms.iter().rev().map(|&(_, t)| t));
    Ok(total.powf(1.0 / req.beta))
}

/// `Σ_{⟨ξ⟩ ≥ N} d_ξ ‖f̂(ξ)‖²_HS` over the enumerated entries.
pub fn tail_sum(s: &Spectrum, n: f64) -> f64 {
    compensated_sum(
        s.entries()
            .iter()
            .rev()
            .filter(|e| e.point.weight >= n)
            .map(|e| e.point.dim as f64 * e.matrix.hs_norm_sqr()),
    )
}

/// `f̂ ↦ ⟨ξ⟩^σ f̂`, the spectral action of `(I - 𝓛)^{σ/2}`.
pub fn sobolev_weight(s: &Spectrum, sigma: f64) -> Spectrum {
    s.map_matrices(|point, m| m.scale(Complex64::new(point.weight.powf(sigma), 0.0)))
}
