//! Wigner little-d matrices by the stable increasing-spin recurrence.
//!
//! `d^{j}(β)` is built from `d^{j-1/2}(β)` by coupling with the spin-1/2
//! block, seeded from the closed forms at twice-spin 0 and 1. Coefficient
//! magnitudes never exceed one, so the sweep stays orthogonal to roundoff
//! through twice-spin ≈ 128 without explicit renormalization.
//!
//! Index convention: row/column `i ∈ 0..=m` carries the weight
//! `μ_i = (m - 2i)/2`, i.e. weights descend from `+j` to `-j`.

use crate::error::{Error, Result};

/// Real `(m+1) × (m+1)` little-d matrix at twice-spin `m` and angle `beta`.
#[derive(Debug, Clone)]
pub struct WignerBlock {
    pub m: i64,
    pub beta: f64,
    dim: usize,
    data: Vec<f64>,
}

impl WignerBlock {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    /// Largest `|dᵀd − I|` entry, the orthogonality defect.
    pub fn orthogonality_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0.0;
                for k in 0..d {
                    acc += self.get(k, i) * self.get(k, j);
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - target).abs());
            }
        }
        worst
    }
}

/// All blocks `d^{(m)}(β)` for `m = 0..=m_max` in one recurrence sweep.
pub fn wigner_stack(m_max: i64, beta: f64) -> Vec<WignerBlock> {
    assert!(m_max >= 0);
    let c = (0.5 * beta).cos();
    let s = (0.5 * beta).sin();
    let mut out = Vec::with_capacity(m_max as usize + 1);
    out.push(WignerBlock {
        m: 0,
        beta,
        dim: 1,
        data: vec![1.0],
    });
    for m in 1..=m_max {
        let big = m as usize + 1;
        let small = m as usize;
        let prev = &out[m as usize - 1];
        let mf = m as f64;
        let mut data = vec![0.0; big * big];
        for ip in 0..big {
            for i in 0..big {
                let mut acc = 0.0;
                // bra +1/2, ket +1/2 : cos
                if ip < small && i < small {
                    acc += ((mf - ip as f64) * (mf - i as f64)).sqrt() * c * prev.data[ip * small + i];
                }
                // bra +1/2, ket -1/2 : -sin
                if ip < small && i >= 1 {
                    acc -= ((mf - ip as f64) * i as f64).sqrt() * s * prev.data[ip * small + (i - 1)];
                }
                // bra -1/2, ket +1/2 : sin
                if ip >= 1 && i < small {
                    acc += (ip as f64 * (mf - i as f64)).sqrt() * s * prev.data[(ip - 1) * small + i];
                }
                // bra -1/2, ket -1/2 : cos
                if ip >= 1 && i >= 1 {
                    acc += (ip as f64 * i as f64).sqrt() * c * prev.data[(ip - 1) * small + (i - 1)];
                }
                data[ip * big + i] = acc / mf;
            }
        }
        out.push(WignerBlock {
            m,
            beta,
            dim: big,
            data,
        });
    }
    out
}

/// Single block `d^{(m)}(β)`, `β ∈ [0, π]`.
pub fn wigner_d(m: i64, beta: f64) -> Result<WignerBlock> {
    if m < 0 {
        return Err(Error::argument("twice-spin must be nonnegative"));
    }
    if !(0.0..=std::f64::consts::PI).contains(&beta) {
        return Err(Error::argument(format!(
            "beta must lie in [0, pi], got {beta}"
        )));
    }
    Ok(wigner_stack(m, beta).pop().expect("stack is nonempty"))
}
