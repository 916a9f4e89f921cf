//! Quadrature grids exact for band-limited functions, with the oversampling
//! needed so products of two band-Λ functions are still integrated exactly
//! (L² moduli and Plancherel checks live on such products).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::groups::{
    sphere_degree_max, su2_twice_spin_max, GroupDescriptor, GroupElement, GroupKind, Quaternion,
};
use crate::harmonics::gauss::gauss_legendre;

/// Grids refuse to materialize more nodes than this by default.
pub const DEFAULT_NODE_CAP: usize = 1 << 24;

#[derive(Debug, Clone)]
pub enum GridLayout {
    /// Uniform tensor grid, `points` per axis, axis 0 slowest.
    Torus { points: usize },
    /// ZYZ Euler angles: uniform α ∈ [0,2π) and γ ∈ [0,4π) (twice the α
    /// count, resolving half-integer spins), Gauss-Legendre in cos β.
    /// Node index is `(b · n_alpha + a) · n_gamma + c`.
    Euler {
        n_alpha: usize,
        n_beta: usize,
        n_gamma: usize,
        beta_nodes: Vec<f64>,
        beta_weights: Vec<f64>,
    },
    /// Uniform longitude × Gauss-Legendre colatitude; index `t · n_phi + p`.
    Sphere {
        n_phi: usize,
        n_theta: usize,
        theta_nodes: Vec<f64>,
        theta_weights: Vec<f64>,
    },
}

/// Sample nodes with Haar-normalized weights (`Σ w = 1`), exact for every
/// matrix coefficient with `⟨ξ⟩ ≤ band` and for products of two of them.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    pub group: GroupDescriptor,
    pub band: f64,
    pub nodes: Vec<GroupElement>,
    pub weights: Vec<f64>,
    pub layout: GridLayout,
}

impl QuadratureGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

pub fn build_grid(group: &GroupDescriptor, band: f64) -> Result<QuadratureGrid> {
    build_grid_with_cap(group, band, DEFAULT_NODE_CAP)
}

pub fn build_grid_with_cap(
    group: &GroupDescriptor,
    band: f64,
    cap_nodes: usize,
) -> Result<QuadratureGrid> {
    if !(band >= 1.0) {
        return Err(Error::argument(format!("band must be >= 1, got {band}")));
    }
    match group.kind {
        GroupKind::Torus(n) => {
            let points = 2 * band.ceil() as usize + 1;
            let total = points.checked_pow(n as u32).unwrap_or(usize::MAX);
            check_cap(total, cap_nodes)?;
            let step = 2.0 * PI / points as f64;
            let w = 1.0 / total as f64;
            let mut nodes = Vec::with_capacity(total);
            let mut idx = vec![0usize; n];
            loop {
                nodes.push(GroupElement::Torus(
                    idx.iter().map(|&k| k as f64 * step).collect(),
                ));
                let mut axis = n;
                loop {
                    if axis == 0 {
                        break;
                    }
                    axis -= 1;
                    idx[axis] += 1;
                    if idx[axis] < points {
                        break;
                    }
                    idx[axis] = 0;
                    if axis == 0 {
                        return Ok(QuadratureGrid {
                            group: *group,
                            band,
                            weights: vec![w; nodes.len()],
                            nodes,
                            layout: GridLayout::Torus { points },
                        });
                    }
                }
            }
        }
        GroupKind::Su2 => {
            let m_max = su2_twice_spin_max(band) as usize;
            let n_alpha = (m_max + 1).next_power_of_two().max(4);
            let n_gamma = 2 * n_alpha;
            let n_beta = m_max / 2 + 1;
            let total = n_alpha * n_beta * n_gamma;
            check_cap(total, cap_nodes)?;
            let (t_nodes, t_weights) = gauss_legendre(n_beta);
            let beta_nodes: Vec<f64> = t_nodes.iter().map(|&t| t.clamp(-1.0, 1.0).acos()).collect();
            let mut nodes = Vec::with_capacity(total);
            let mut weights = Vec::with_capacity(total);
            for b in 0..n_beta {
                let wb = t_weights[b] / 2.0;
                for a in 0..n_alpha {
                    let alpha = 2.0 * PI * a as f64 / n_alpha as f64;
                    for c in 0..n_gamma {
                        let gamma = 4.0 * PI * c as f64 / n_gamma as f64;
                        nodes.push(GroupElement::Su2(Quaternion::from_euler_zyz(
                            alpha,
                            beta_nodes[b],
                            gamma,
                        )));
                        weights.push(wb / (n_alpha * n_gamma) as f64);
                    }
                }
            }
            Ok(QuadratureGrid {
                group: *group,
                band,
                nodes,
                weights,
                layout: GridLayout::Euler {
                    n_alpha,
                    n_beta,
                    n_gamma,
                    beta_nodes,
                    beta_weights: t_weights,
                },
            })
        }
        GroupKind::Sphere2 => {
            let l_max = sphere_degree_max(band) as usize;
            let n_phi = (2 * l_max + 1).next_power_of_two().max(4);
            let n_theta = l_max + 1;
            let total = n_phi * n_theta;
            check_cap(total, cap_nodes)?;
            let (t_nodes, t_weights) = gauss_legendre(n_theta);
            let theta_nodes: Vec<f64> =
                t_nodes.iter().map(|&t| t.clamp(-1.0, 1.0).acos()).collect();
            let mut nodes = Vec::with_capacity(total);
            let mut weights = Vec::with_capacity(total);
            for t in 0..n_theta {
                let wt = t_weights[t] / 2.0;
                let (st, ct) = theta_nodes[t].sin_cos();
                for p in 0..n_phi {
                    let phi = 2.0 * PI * p as f64 / n_phi as f64;
                    nodes.push(GroupElement::SpherePoint([
                        st * phi.cos(),
                        st * phi.sin(),
                        ct,
                    ]));
                    weights.push(wt / n_phi as f64);
                }
            }
            Ok(QuadratureGrid {
                group: *group,
                band,
                nodes,
                weights,
                layout: GridLayout::Sphere {
                    n_phi,
                    n_theta,
                    theta_nodes,
                    theta_weights: t_weights,
                },
            })
        }
    }
}

fn check_cap(total: usize, cap: usize) -> Result<()> {
    if total > cap {
        Err(Error::Resource {
            required_nodes: total,
            cap_nodes: cap,
        })
    } else {
        Ok(())
    }
}
