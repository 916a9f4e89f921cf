//! Global Fourier transforms, the translation identity on spectra, and the
//! canonical lifting between the sphere and its rotation group.
//!
//! Convention lock: the forward transform is `f̂(ξ) = Σ_k w_k f(x_k) ξ(x_k)^*`,
//! so left translation `f(h·)` multiplies spectra on the right by `ξ(h)` and
//! right translation `f(·h)` multiplies on the left.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{
    enumerate_dual, sphere_degree_max, su2_twice_spin_max, DualPoint, GroupDescriptor,
    GroupElement, GroupKind,
};
use crate::harmonics::fft::dft_any;
use crate::harmonics::{
    build_grid, sphere_m_order, su2_matrix_from_block, wigner_stack, GridLayout, QuadratureGrid,
};
use crate::linalg::CMatrix;

// ---------------------------------------------------------------------------
// Spectra and grid functions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    pub point: DualPoint,
    pub matrix: CMatrix,
}

/// Band-limited matrix-valued Fourier data, entries in canonical dual order.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub group: GroupDescriptor,
    pub band: f64,
    entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn new(group: GroupDescriptor, band: f64) -> Spectrum {
        Spectrum {
            group,
            band,
            entries: Vec::new(),
        }
    }

    pub fn from_entries(
        group: GroupDescriptor,
        band: f64,
        mut entries: Vec<SpectrumEntry>,
    ) -> Result<Spectrum> {
        for e in &entries {
            if e.point.weight > band * (1.0 + 1e-12) + 1e-12 {
                return Err(Error::argument(format!(
                    "entry {:?} has weight {} beyond band {band}",
                    e.point.label, e.point.weight
                )));
            }
            if e.matrix.dim() != e.point.dim {
                return Err(Error::argument("matrix dimension mismatch"));
            }
        }
        entries.sort_by(|a, b| {
            a.point
                .lambda_sq
                .total_cmp(&b.point.lambda_sq)
                .then_with(|| a.point.label.cmp(&b.point.label))
        });
        Ok(Spectrum {
            group,
            band,
            entries,
        })
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn get(&self, label: &[i64]) -> Option<&SpectrumEntry> {
        self.entries.iter().find(|e| e.point.label == label)
    }

    /// `(Σ_ξ d_ξ ‖f̂(ξ)‖²_HS)^{1/2}`, the dual side of the Parseval identity.
    pub fn plancherel_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.point.dim as f64 * e.matrix.hs_norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn map_matrices(&self, mut f: impl FnMut(&DualPoint, &CMatrix) -> CMatrix) -> Spectrum {
        Spectrum {
            group: self.group,
            band: self.band,
            entries: self
                .entries
                .iter()
                .map(|e| SpectrumEntry {
                    point: e.point.clone(),
                    matrix: f(&e.point, &e.matrix),
                })
                .collect(),
        }
    }

    pub fn relative_distance(&self, other: &Spectrum) -> f64 {
        let mut diff = 0.0;
        let mut norm = 0.0;
        for e in &self.entries {
            let d = e.point.dim as f64;
            norm += d * e.matrix.hs_norm_sqr();
            match other.get(&e.point.label) {
                Some(o) => diff += d * e.matrix.sub(&o.matrix).hs_norm_sqr(),
                None => diff += d * e.matrix.hs_norm_sqr(),
            }
        }
        for o in &other.entries {
            if self.get(&o.point.label).is_none() {
                let d = o.point.dim as f64;
                diff += d * o.matrix.hs_norm_sqr();
                norm += d * o.matrix.hs_norm_sqr();
            }
        }
        if norm == 0.0 {
            diff.sqrt()
        } else {
            (diff / norm).sqrt()
        }
    }
}

/// Function samples aligned with a quadrature grid.
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub grid: Arc<QuadratureGrid>,
    pub samples: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: Arc<QuadratureGrid>, samples: Vec<Complex64>) -> Result<GridFunction> {
        if samples.len() != grid.nodes.len() {
            return Err(Error::argument("sample count must match grid nodes"));
        }
        Ok(GridFunction { grid, samples })
    }

    pub fn constant(grid: Arc<QuadratureGrid>, value: Complex64) -> GridFunction {
        let n = grid.nodes.len();
        GridFunction {
            grid,
            samples: vec![value; n],
        }
    }

    /// `L^p` norm by quadrature; `p = ∞` takes the max over nodes.
    pub fn lp_norm(&self, p: f64) -> f64 {
        if p.is_infinite() {
            return self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
        }
        let s: f64 = self
            .samples
            .iter()
            .zip(&self.grid.weights)
            .map(|(z, &w)| w * z.norm().powf(p))
            .sum();
        s.powf(1.0 / p)
    }

    pub fn l2_norm(&self) -> f64 {
        self.samples
            .iter()
            .zip(&self.grid.weights)
            .map(|(z, &w)| w * z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn sub(&self, other: &GridFunction) -> GridFunction {
        GridFunction {
            grid: Arc::clone(&self.grid),
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Forward / inverse
// ---------------------------------------------------------------------------

/// `f̂(ξ) = Σ_k w_k f(x_k) ξ(x_k)^*` for every `⟨ξ⟩ ≤ band`.
pub fn forward(f: &GridFunction, band: f64) -> Result<Spectrum> {
    let grid = &f.grid;
    if grid.band < band - 1e-9 {
        return Err(Error::argument(format!(
            "grid band {} is smaller than requested band {band}",
            grid.band
        )));
    }
    match grid.layout {
        GridLayout::Torus { .. } => torus_forward(f, band),
        GridLayout::Euler { .. } => su2_forward(f, band),
        GridLayout::Sphere { .. } => sphere_forward(f, band),
    }
}

/// `f(x) = Σ_ξ d_ξ Tr(ξ(x) f̂(ξ))` sampled on the grid.
pub fn inverse(s: &Spectrum, grid: &Arc<QuadratureGrid>) -> Result<GridFunction> {
    if grid.band < s.band - 1e-9 {
        return Err(Error::argument(format!(
            "grid band {} is smaller than spectrum band {}",
            grid.band, s.band
        )));
    }
    if grid.group != s.group {
        return Err(Error::argument("grid and spectrum group mismatch"));
    }
    match grid.layout {
        GridLayout::Torus { .. } => torus_inverse(s, grid),
        GridLayout::Euler { .. } => su2_inverse(s, grid),
        GridLayout::Sphere { .. } => sphere_inverse(s, grid),
    }
}

// ---- torus ----------------------------------------------------------------

fn torus_axes(g: &GroupDescriptor) -> usize {
    match g.kind {
        GroupKind::Torus(n) => n,
        _ => unreachable!(),
    }
}

fn axis_transform(data: &mut [Complex64], shape: &[usize], axis: usize, sign: f64) {
    let len = shape[axis];
    let stride: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let mut line = vec![Complex64::new(0.0, 0.0); len];
    for o in 0..outer {
        for i in 0..stride {
            let base = o * len * stride + i;
            for k in 0..len {
                line[k] = data[base + k * stride];
            }
            let out = dft_any(&line, sign);
            for k in 0..len {
                data[base + k * stride] = out[k];
            }
        }
    }
}

fn torus_forward(f: &GridFunction, band: f64) -> Result<Spectrum> {
    let g = f.grid.group;
    let n = torus_axes(&g);
    let points = match f.grid.layout {
        GridLayout::Torus { points } => points,
        _ => unreachable!(),
    };
    let shape = vec![points; n];
    let mut data = f.samples.clone();
    for axis in 0..n {
        axis_transform(&mut data, &shape, axis, -1.0);
    }
    let scale = 1.0 / (points as f64).powi(n as i32);
    let dual = enumerate_dual(&g, band)?;
    let entries = dual
        .into_iter()
        .map(|point| {
            let mut idx = 0usize;
            for &j in &point.label {
                let bin = j.rem_euclid(points as i64) as usize;
                idx = idx * points + bin;
            }
            let value = data[idx] * scale;
            SpectrumEntry {
                point,
                matrix: CMatrix::from_fn(1, |_, _| value),
            }
        })
        .collect();
    Spectrum::from_entries(g, band, entries)
}

fn torus_inverse(s: &Spectrum, grid: &Arc<QuadratureGrid>) -> Result<GridFunction> {
    let n = torus_axes(&s.group);
    let points = match grid.layout {
        GridLayout::Torus { points } => points,
        _ => unreachable!(),
    };
    let shape = vec![points; n];
    let mut data = vec![Complex64::new(0.0, 0.0); points.pow(n as u32)];
    for e in &s.entries {
        let mut idx = 0usize;
        for &j in &e.point.label {
            let bin = j.rem_euclid(points as i64) as usize;
            idx = idx * points + bin;
        }
        data[idx] += e.matrix[(0, 0)];
    }
    for axis in 0..n {
        axis_transform(&mut data, &shape, axis, 1.0);
    }
    GridFunction::new(Arc::clone(grid), data)
}

// ---- SU(2) ----------------------------------------------------------------

struct EulerDims {
    n_alpha: usize,
    n_beta: usize,
    n_gamma: usize,
    beta_nodes: Vec<f64>,
    beta_weights: Vec<f64>,
}

fn euler_dims(grid: &QuadratureGrid) -> EulerDims {
    match &grid.layout {
        GridLayout::Euler {
            n_alpha,
            n_beta,
            n_gamma,
            beta_nodes,
            beta_weights,
        } => EulerDims {
            n_alpha: *n_alpha,
            n_beta: *n_beta,
            n_gamma: *n_gamma,
            beta_nodes: beta_nodes.clone(),
            beta_weights: beta_weights.clone(),
        },
        _ => unreachable!(),
    }
}

fn su2_forward(f: &GridFunction, band: f64) -> Result<Spectrum> {
    let g = f.grid.group;
    let dims = euler_dims(&f.grid);
    let m_band = su2_twice_spin_max(band);
    let t2max = m_band;
    let width = (2 * t2max + 1) as usize;
    let dual = enumerate_dual(&g, band)?;
    let mut acc: Vec<CMatrix> = dual.iter().map(|p| CMatrix::zeros(p.dim)).collect();

    let off = |t2: i64| (t2 + t2max) as usize;
    for b in 0..dims.n_beta {
        // gamma frequencies per alpha row
        let mut g_of = vec![vec![Complex64::new(0.0, 0.0); width]; dims.n_alpha];
        for a in 0..dims.n_alpha {
            let base = (b * dims.n_alpha + a) * dims.n_gamma;
            let row = &f.samples[base..base + dims.n_gamma];
            let fr = dft_any(row, 1.0);
            for t2 in -t2max..=t2max {
                let bin = t2.rem_euclid(dims.n_gamma as i64) as usize;
                g_of[a][off(t2)] = fr[bin] / dims.n_gamma as f64;
            }
        }
        // alpha frequencies, parity-matched half-integer modulation
        let mut smat = vec![vec![Complex64::new(0.0, 0.0); width]; width];
        for nu_idx in 0..width {
            let t2nu = nu_idx as i64 - t2max;
            let parity = t2nu.rem_euclid(2);
            let mut col: Vec<Complex64> = (0..dims.n_alpha).map(|a| g_of[a][nu_idx]).collect();
            if parity == 1 {
                for (a, z) in col.iter_mut().enumerate() {
                    *z *= Complex64::from_polar(1.0, PI * a as f64 / dims.n_alpha as f64);
                }
            }
            let fc = dft_any(&col, 1.0);
            let mut t2mu = -t2max + (t2max + parity).rem_euclid(2);
            while t2mu <= t2max {
                let p = (t2mu - parity).div_euclid(2);
                let bin = p.rem_euclid(dims.n_alpha as i64) as usize;
                smat[off(t2mu)][nu_idx] = fc[bin] / dims.n_alpha as f64;
                t2mu += 2;
            }
        }
        // contract against the Wigner stack
        let stack = wigner_stack(m_band, dims.beta_nodes[b]);
        let wb = dims.beta_weights[b] / 2.0;
        for (ri, xi) in dual.iter().enumerate() {
            let m = xi.label[0];
            let d = xi.dim;
            let block = &stack[m as usize];
            let out = &mut acc[ri];
            for i in 0..d {
                let t2mu_i = m - 2 * i as i64;
                for k in 0..d {
                    let t2mu_k = m - 2 * k as i64;
                    out[(i, k)] +=
                        smat[off(t2mu_k)][off(t2mu_i)] * (wb * block.get(k, i));
                }
            }
        }
    }
    let entries = dual
        .into_iter()
        .zip(acc)
        .map(|(point, matrix)| SpectrumEntry { point, matrix })
        .collect();
    Spectrum::from_entries(g, band, entries)
}

fn su2_inverse(s: &Spectrum, grid: &Arc<QuadratureGrid>) -> Result<GridFunction> {
    let dims = euler_dims(grid);
    let m_top = s
        .entries
        .iter()
        .map(|e| e.point.label[0])
        .max()
        .unwrap_or(0);
    let t2max = m_top;
    let width = (2 * t2max + 1) as usize;
    let off = |t2: i64| (t2 + t2max) as usize;
    let mut samples = vec![Complex64::new(0.0, 0.0); grid.nodes.len()];
    for b in 0..dims.n_beta {
        let stack = wigner_stack(m_top, dims.beta_nodes[b]);
        // H(mu, nu) = sum_m d_m sum_{i,k} d^m_{ik} fhat_{ki}
        let mut hmat = vec![vec![Complex64::new(0.0, 0.0); width]; width];
        for e in &s.entries {
            let m = e.point.label[0];
            let d = e.point.dim;
            let dm = d as f64;
            let block = &stack[m as usize];
            for i in 0..d {
                let row_h = &mut hmat[off(m - 2 * i as i64)];
                for k in 0..d {
                    row_h[off(m - 2 * k as i64)] +=
                        e.matrix[(k, i)] * (dm * block.get(i, k));
                }
            }
        }
        // alpha synthesis per nu column, both parity channels
        let mut u = vec![vec![Complex64::new(0.0, 0.0); width]; dims.n_alpha];
        for nu_idx in 0..width {
            let t2nu = nu_idx as i64 - t2max;
            let parity = t2nu.rem_euclid(2);
            let mut bins = vec![Complex64::new(0.0, 0.0); dims.n_alpha];
            let mut any = false;
            let mut t2mu = -t2max + (t2max + parity).rem_euclid(2);
            while t2mu <= t2max {
                let h = hmat[off(t2mu)][nu_idx];
                if h != Complex64::new(0.0, 0.0) {
                    let p = (t2mu - parity).div_euclid(2);
                    bins[p.rem_euclid(dims.n_alpha as i64) as usize] += h;
                    any = true;
                }
                t2mu += 2;
            }
            if !any {
                continue;
            }
            let vals = dft_any(&bins, -1.0);
            if parity == 1 {
                for a in 0..dims.n_alpha {
                    u[a][nu_idx] +=
                        vals[a] * Complex64::from_polar(1.0, -PI * a as f64 / dims.n_alpha as f64);
                }
            } else {
                for a in 0..dims.n_alpha {
                    u[a][nu_idx] += vals[a];
                }
            }
        }
        // gamma synthesis per alpha row
        for a in 0..dims.n_alpha {
            let mut bins = vec![Complex64::new(0.0, 0.0); dims.n_gamma];
            for nu_idx in 0..width {
                let z = u[a][nu_idx];
                if z != Complex64::new(0.0, 0.0) {
                    let t2nu = nu_idx as i64 - t2max;
                    bins[t2nu.rem_euclid(dims.n_gamma as i64) as usize] += z;
                }
            }
            let vals = dft_any(&bins, -1.0);
            let base = (b * dims.n_alpha + a) * dims.n_gamma;
            samples[base..base + dims.n_gamma].copy_from_slice(&vals);
        }
    }
    GridFunction::new(Arc::clone(grid), samples)
}

// ---- sphere ---------------------------------------------------------------

struct SphereDims {
    n_phi: usize,
    n_theta: usize,
    theta_nodes: Vec<f64>,
    theta_weights: Vec<f64>,
}

fn sphere_dims(grid: &QuadratureGrid) -> SphereDims {
    match &grid.layout {
        GridLayout::Sphere {
            n_phi,
            n_theta,
            theta_nodes,
            theta_weights,
        } => SphereDims {
            n_phi: *n_phi,
            n_theta: *n_theta,
            theta_nodes: theta_nodes.clone(),
            theta_weights: theta_weights.clone(),
        },
        _ => unreachable!(),
    }
}

fn sphere_forward(f: &GridFunction, band: f64) -> Result<Spectrum> {
    let g = f.grid.group;
    let dims = sphere_dims(&f.grid);
    let l_band = sphere_degree_max(band);
    let dual = enumerate_dual(&g, band)?;
    let mut acc: Vec<CMatrix> = dual.iter().map(|p| CMatrix::zeros(p.dim)).collect();
    for t in 0..dims.n_theta {
        let base = t * dims.n_phi;
        let row = &f.samples[base..base + dims.n_phi];
        let fr = dft_any(row, 1.0);
        let stack = wigner_stack(2 * l_band, dims.theta_nodes[t]);
        let wt = dims.theta_weights[t] / 2.0;
        for (ri, xi) in dual.iter().enumerate() {
            let l = xi.label[0];
            let block = &stack[(2 * l) as usize];
            let order = sphere_m_order(l);
            for (j, &mj) in order.iter().enumerate() {
                let d_m0 = block.get((l - mj) as usize, l as usize);
                let bin = mj.rem_euclid(dims.n_phi as i64) as usize;
                acc[ri][(0, j)] += fr[bin] * (wt * d_m0 / dims.n_phi as f64);
            }
        }
    }
    let entries = dual
        .into_iter()
        .zip(acc)
        .map(|(point, matrix)| SpectrumEntry { point, matrix })
        .collect();
    Spectrum::from_entries(g, band, entries)
}

fn sphere_inverse(s: &Spectrum, grid: &Arc<QuadratureGrid>) -> Result<GridFunction> {
    let dims = sphere_dims(grid);
    let l_top = s
        .entries
        .iter()
        .map(|e| e.point.label[0])
        .max()
        .unwrap_or(0);
    let mut samples = vec![Complex64::new(0.0, 0.0); grid.nodes.len()];
    for t in 0..dims.n_theta {
        let stack = wigner_stack(2 * l_top, dims.theta_nodes[t]);
        let mut bins = vec![Complex64::new(0.0, 0.0); dims.n_phi];
        for e in &s.entries {
            let l = e.point.label[0];
            let d = e.point.dim as f64;
            let block = &stack[(2 * l) as usize];
            let order = sphere_m_order(l);
            for (j, &mj) in order.iter().enumerate() {
                let d_m0 = block.get((l - mj) as usize, l as usize);
                bins[mj.rem_euclid(dims.n_phi as i64) as usize] +=
                    e.matrix[(0, j)] * (d * d_m0);
            }
        }
        let vals = dft_any(&bins, -1.0);
        let base = t * dims.n_phi;
        samples[base..base + dims.n_phi].copy_from_slice(&vals);
    }
    GridFunction::new(Arc::clone(grid), samples)
}

// ---------------------------------------------------------------------------
// Translation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Representation blocks `ξ(h)` for every entry of `s`, sharing one Wigner
/// sweep per distinct angle.
pub fn rep_blocks(s: &Spectrum, h: &GroupElement) -> Result<Vec<CMatrix>> {
    match (s.group.kind, h) {
        (GroupKind::Torus(n), GroupElement::Torus(theta)) => {
            if theta.len() != n {
                return Err(Error::argument("torus element has wrong arity"));
            }
            Ok(s
                .entries
                .iter()
                .map(|e| {
                    let phase: f64 = e
                        .point
                        .label
                        .iter()
                        .zip(theta)
                        .map(|(&j, &t)| j as f64 * t)
                        .sum();
                    CMatrix::from_fn(1, |_, _| Complex64::from_polar(1.0, phase))
                })
                .collect())
        }
        (GroupKind::Su2, GroupElement::Su2(q)) => {
            let m_top = s.entries.iter().map(|e| e.point.label[0]).max().unwrap_or(0);
            let (alpha, beta, gamma) = q.euler_zyz();
            let stack = wigner_stack(m_top, beta);
            Ok(s
                .entries
                .iter()
                .map(|e| su2_matrix_from_block(&stack[e.point.label[0] as usize], alpha, gamma))
                .collect())
        }
        (GroupKind::Sphere2, GroupElement::SphereRotation(q)) => {
            let l_top = s.entries.iter().map(|e| e.point.label[0]).max().unwrap_or(0);
            let (alpha, beta, gamma) = q.euler_zyz();
            let stack = wigner_stack(2 * l_top, beta);
            Ok(s
                .entries
                .iter()
                .map(|e| {
                    let l = e.point.label[0];
                    let full = su2_matrix_from_block(&stack[(2 * l) as usize], alpha, gamma);
                    let order = sphere_m_order(l);
                    CMatrix::from_fn(e.point.dim, |r, c| {
                        full[((l - order[r]) as usize, (l - order[c]) as usize)]
                    })
                })
                .collect())
        }
        _ => Err(Error::argument("element does not belong to this group")),
    }
}

/// Left: `f̂(ξ) ↦ f̂(ξ)·ξ(h)` (spectrum of `f(h·)`); right: `ξ(h)·f̂(ξ)`.
pub fn translate_spectrum(s: &Spectrum, h: &GroupElement, side: Side) -> Result<Spectrum> {
    if s.group.is_homogeneous() && side == Side::Right {
        return Err(Error::argument(
            "no right translation on a quotient space G/K",
        ));
    }
    let blocks = rep_blocks(s, h)?;
    let entries = s
        .entries
        .iter()
        .zip(blocks)
        .map(|(e, b)| SpectrumEntry {
            point: e.point.clone(),
            matrix: match side {
                Side::Left => e.matrix.mul(&b),
                Side::Right => b.mul(&e.matrix),
            },
        })
        .collect();
    Spectrum::from_entries(s.group, s.band, entries)
}

// ---------------------------------------------------------------------------
// Canonical lifting S² -> SO(3)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct LiftedFunction {
    /// Samples of `f̃(g) = f(g·north)` on the Euler grid of the group.
    pub function: GridFunction,
    /// Spectrum over the group dual (twice-spin labels, odd spins ≈ 0).
    pub group_spectrum: Spectrum,
    /// The same data relabelled to the sphere's class-I dual.
    pub sphere_spectrum: Spectrum,
}

/// Canonical lifting `f̃(yk) = f(y·north)`, its transform over the group,
/// and the class-I relabelling.
pub fn lift_to_group(f_sphere: &GridFunction) -> Result<LiftedFunction> {
    if f_sphere.grid.group.kind != GroupKind::Sphere2 {
        return Err(Error::argument("lift_to_group expects a sphere function"));
    }
    let band = f_sphere.grid.band;
    let s = forward(f_sphere, band)?;
    let su2 = GroupDescriptor::su2();
    let group_grid = Arc::new(build_grid(&su2, band)?);
    let dims = euler_dims(&group_grid);
    let l_top = s
        .entries
        .iter()
        .map(|e| e.point.label[0])
        .max()
        .unwrap_or(0);

    // f~(alpha, beta, gamma) = f(theta=beta, phi=alpha): evaluate the sphere
    // synthesis on the Euler (alpha, beta) axes and broadcast over gamma.
    let mut samples = vec![Complex64::new(0.0, 0.0); group_grid.nodes.len()];
    for b in 0..dims.n_beta {
        let stack = wigner_stack(2 * l_top, dims.beta_nodes[b]);
        let mut bins = vec![Complex64::new(0.0, 0.0); dims.n_alpha];
        for e in &s.entries {
            let l = e.point.label[0];
            let d = e.point.dim as f64;
            let block = &stack[(2 * l) as usize];
            let order = sphere_m_order(l);
            for (j, &mj) in order.iter().enumerate() {
                bins[mj.rem_euclid(dims.n_alpha as i64) as usize] +=
                    e.matrix[(0, j)] * (d * block.get((l - mj) as usize, l as usize));
            }
        }
        let vals = dft_any(&bins, -1.0);
        for a in 0..dims.n_alpha {
            let base = (b * dims.n_alpha + a) * dims.n_gamma;
            samples[base..base + dims.n_gamma].fill(vals[a]);
        }
    }
    let function = GridFunction::new(Arc::clone(&group_grid), samples)?;
    let group_spectrum = forward(&function, band)?;

    // relabel even twice-spins to sphere degrees, invariant-first basis
    let mut sphere_entries = Vec::new();
    for e in group_spectrum.entries() {
        let m = e.point.label[0];
        if m % 2 != 0 {
            continue;
        }
        let l = m / 2;
        let order = sphere_m_order(l);
        let matrix = CMatrix::from_fn(e.point.dim, |r, c| {
            e.matrix[((l - order[r]) as usize, (l - order[c]) as usize)]
        });
        sphere_entries.push(SpectrumEntry {
            point: DualPoint::sphere(l),
            matrix,
        });
    }
    let sphere_spectrum =
        Spectrum::from_entries(GroupDescriptor::sphere2(), band, sphere_entries)?;
    Ok(LiftedFunction {
        function,
        group_spectrum,
        sphere_spectrum,
    })
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct EntryJson {
    label: Vec<i64>,
    dim: usize,
    k: usize,
    lambda_sq: f64,
    matrix_re: Vec<Vec<f64>>,
    matrix_im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct SpectrumJson {
    group: String,
    band: f64,
    entries: Vec<EntryJson>,
}

impl Spectrum {
    pub fn to_json_string(&self) -> Result<String> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let d = e.point.dim;
                let matrix_re = (0..d)
                    .map(|i| (0..d).map(|j| e.matrix[(i, j)].re).collect())
                    .collect();
                let matrix_im = (0..d)
                    .map(|i| (0..d).map(|j| e.matrix[(i, j)].im).collect())
                    .collect();
                EntryJson {
                    label: e.point.label.clone(),
                    dim: d,
                    k: e.point.k,
                    lambda_sq: e.point.lambda_sq,
                    matrix_re,
                    matrix_im,
                }
            })
            .collect();
        Ok(serde_json::to_string_pretty(&SpectrumJson {
            group: self.group.code().to_string(),
            band: self.band,
            entries,
        })?)
    }

    /// Parse the published schema; entries whose `dim` disagrees with the
    /// label's dimension rule are rejected.
    pub fn from_json_str(text: &str) -> Result<Spectrum> {
        let raw: SpectrumJson = serde_json::from_str(text)?;
        let group = GroupDescriptor::parse(&raw.group)?;
        let mut entries = Vec::with_capacity(raw.entries.len());
        for e in raw.entries {
            let point = DualPoint::for_label(&group, &e.label)?;
            if point.dim != e.dim {
                return Err(Error::argument(format!(
                    "entry {:?} declares dim {} but the label rule gives {}",
                    e.label, e.dim, point.dim
                )));
            }
            if e.matrix_re.len() != e.dim || e.matrix_im.len() != e.dim {
                return Err(Error::argument("matrix rows do not match dim"));
            }
            let matrix = CMatrix::from_fn(e.dim, |i, j| {
                Complex64::new(e.matrix_re[i][j], e.matrix_im[i][j])
            });
            entries.push(SpectrumEntry { point, matrix });
        }
        Spectrum::from_entries(group, raw.band, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{random_element, Quaternion};
    use crate::harmonics::rep_matrix;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_spectrum(g: &GroupDescriptor, band: f64, seed: u64) -> Spectrum {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries = enumerate_dual(g, band)
            .unwrap()
            .into_iter()
            .map(|point| {
                let rows = if g.is_homogeneous() { 1 } else { point.dim };
                let matrix = CMatrix::from_fn(point.dim, |i, _| {
                    if i < rows {
                        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                SpectrumEntry { point, matrix }
            })
            .collect();
        Spectrum::from_entries(*g, band, entries).unwrap()
    }

    fn grid_for(g: &GroupDescriptor, band: f64) -> Arc<QuadratureGrid> {
        Arc::new(build_grid(g, band).unwrap())
    }

    #[test]
    fn constant_function_has_trivial_spectrum() {
        for (g, band) in [
            (GroupDescriptor::torus(1).unwrap(), 6.0),
            (GroupDescriptor::su2(), 5.0),
            (GroupDescriptor::sphere2(), 5.0),
        ] {
            let grid = grid_for(&g, band);
            let f = GridFunction::constant(Arc::clone(&grid), Complex64::new(1.0, 0.0));
            let s = forward(&f, band).unwrap();
            for e in s.entries() {
                if e.point.lambda_sq == 0.0 {
                    assert!((e.matrix[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
                } else {
                    assert!(e.matrix.hs_norm() < 1e-12, "{}: {:?}", g.code(), e.point.label);
                }
            }
        }
    }

    #[test]
    fn torus_sine_coefficients() {
        let g = GroupDescriptor::torus(1).unwrap();
        let grid = grid_for(&g, 4.0);
        let samples: Vec<Complex64> = grid
            .nodes
            .iter()
            .map(|n| match n {
                GroupElement::Torus(t) => Complex64::new(t[0].sin(), 0.0),
                _ => unreachable!(),
            })
            .collect();
        let f = GridFunction::new(Arc::clone(&grid), samples).unwrap();
        let s = forward(&f, 4.0).unwrap();
        let half_over_i = Complex64::new(0.0, -0.5); // 1/(2i)
        assert!((s.get(&[1]).unwrap().matrix[(0, 0)] - half_over_i).norm() < 1e-14);
        assert!((s.get(&[-1]).unwrap().matrix[(0, 0)] + half_over_i).norm() < 1e-14);
        assert!(s.get(&[2]).unwrap().matrix.hs_norm() < 1e-14);
    }

    #[test]
    fn single_torus_mode_inverse() {
        let g = GroupDescriptor::torus(1).unwrap();
        let grid = grid_for(&g, 5.0);
        let c = Complex64::new(0.3, -0.8);
        let s = Spectrum::from_entries(
            g,
            5.0,
            vec![SpectrumEntry {
                point: DualPoint::torus(&[2]),
                matrix: CMatrix::from_fn(1, |_, _| c),
            }],
        )
        .unwrap();
        let f = inverse(&s, &grid).unwrap();
        for (node, z) in grid.nodes.iter().zip(&f.samples) {
            let theta = match node {
                GroupElement::Torus(t) => t[0],
                _ => unreachable!(),
            };
            assert!((z - c * Complex64::from_polar(1.0, 2.0 * theta)).norm() < 1e-12);
        }
    }

    #[test]
    fn trace_function_projects_to_its_matrix() {
        // f(x) = d Tr(xi(x) A) has forward coefficients exactly A at xi.
        let g = GroupDescriptor::su2();
        let band = 4.0;
        let grid = grid_for(&g, band);
        let xi = DualPoint::su2(2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = CMatrix::from_fn(3, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let samples: Vec<Complex64> = grid
            .nodes
            .iter()
            .map(|x| {
                let m = rep_matrix(&g, &xi, x).unwrap();
                let prod = m.mul(&a);
                let mut tr = Complex64::new(0.0, 0.0);
                for i in 0..3 {
                    tr += prod[(i, i)];
                }
                tr * 3.0
            })
            .collect();
        let f = GridFunction::new(Arc::clone(&grid), samples).unwrap();
        let s = forward(&f, band).unwrap();
        assert!(s.get(&[2]).unwrap().matrix.sub(&a).hs_norm() < 1e-9);
        for e in s.entries() {
            if e.point.label != vec![2] {
                assert!(e.matrix.hs_norm() < 1e-10, "m={:?}", e.point.label);
            }
        }
    }

    #[test]
    fn roundtrip_all_groups() {
        for (g, band) in [
            (GroupDescriptor::torus(1).unwrap(), 9.0),
            (GroupDescriptor::torus(2).unwrap(), 4.0),
            (GroupDescriptor::su2(), 8.3),
            (GroupDescriptor::sphere2(), 8.3),
        ] {
            let s = random_spectrum(&g, band, 42);
            let grid = grid_for(&g, band);
            let f = inverse(&s, &grid).unwrap();
            let back = forward(&f, band).unwrap();
            let rel = back.relative_distance(&s);
            assert!(rel < 1e-9, "{}: roundtrip {rel}", g.code());
        }
    }

    #[test]
    fn plancherel_all_groups() {
        for (g, band) in [
            (GroupDescriptor::torus(1).unwrap(), 9.0),
            (GroupDescriptor::torus(2).unwrap(), 4.0),
            (GroupDescriptor::su2(), 8.3),
            (GroupDescriptor::sphere2(), 8.3),
        ] {
            let s = random_spectrum(&g, band, 7);
            let grid = grid_for(&g, band);
            let f = inverse(&s, &grid).unwrap();
            let lhs = f.l2_norm();
            let rhs = s.plancherel_norm();
            assert!(
                (lhs - rhs).abs() / rhs < 1e-9,
                "{}: grid {lhs} vs dual {rhs}",
                g.code()
            );
        }
    }

    #[test]
    fn forward_linear() {
        let g = GroupDescriptor::su2();
        let band = 4.0;
        let grid = grid_for(&g, band);
        let f1 = inverse(&random_spectrum(&g, band, 1), &grid).unwrap();
        let f2 = inverse(&random_spectrum(&g, band, 2), &grid).unwrap();
        let a = Complex64::new(1.3, -0.4);
        let combo = GridFunction::new(
            Arc::clone(&grid),
            f1.samples
                .iter()
                .zip(&f2.samples)
                .map(|(x, y)| a * x + y)
                .collect(),
        )
        .unwrap();
        let s_combo = forward(&combo, band).unwrap();
        let s1 = forward(&f1, band).unwrap();
        let s2 = forward(&f2, band).unwrap();
        for (e, (e1, e2)) in s_combo
            .entries()
            .iter()
            .zip(s1.entries().iter().zip(s2.entries()))
        {
            let expect = e1.matrix.scale(a).add(&e2.matrix);
            assert!(e.matrix.sub(&expect).hs_norm() < 1e-10);
        }
    }

    #[test]
    fn translation_identity_and_hs_preservation() {
        let g = GroupDescriptor::su2();
        let band = 6.0;
        let grid = grid_for(&g, band);
        let s = random_spectrum(&g, band, 11);
        let h = random_element(&g, 5, None).unwrap();
        // composition oracle: sample f(h x) by direct evaluation
        let f_h_samples: Vec<Complex64> = grid
            .nodes
            .iter()
            .map(|x| {
                let hx = h.compose(x);
                s.entries()
                    .iter()
                    .map(|e| {
                        let m = rep_matrix(&g, &e.point, &hx).unwrap();
                        let prod = m.mul(&e.matrix);
                        let mut tr = Complex64::new(0.0, 0.0);
                        for i in 0..e.point.dim {
                            tr += prod[(i, i)];
                        }
                        tr * e.point.dim as f64
                    })
                    .sum()
            })
            .collect();
        let f_h = GridFunction::new(Arc::clone(&grid), f_h_samples).unwrap();
        let via_grid = forward(&f_h, band).unwrap();
        let via_spec = translate_spectrum(&s, &h, Side::Left).unwrap();
        assert!(via_grid.relative_distance(&via_spec) < 1e-9);
        // HS norms preserved entrywise
        for (a, b) in s.entries().iter().zip(via_spec.entries()) {
            assert!((a.matrix.hs_norm() - b.matrix.hs_norm()).abs() < 1e-12);
        }
        // identity shift: no-op
        let same = translate_spectrum(&s, &g.identity_shift(), Side::Left).unwrap();
        assert!(same.relative_distance(&s) < 1e-12);
        // undo with the inverse shift
        let back = translate_spectrum(&via_spec, &h.inverse(), Side::Left).unwrap();
        assert!(back.relative_distance(&s) < 1e-10);
    }

    #[test]
    fn right_translation_convention_grid_oracle() {
        let g = GroupDescriptor::su2();
        let band = 4.0;
        let grid = grid_for(&g, band);
        let s = random_spectrum(&g, band, 13);
        let h = random_element(&g, 29, None).unwrap();
        let f_xh_samples: Vec<Complex64> = grid
            .nodes
            .iter()
            .map(|x| {
                let xh = x.compose(&h);
                s.entries()
                    .iter()
                    .map(|e| {
                        let m = rep_matrix(&g, &e.point, &xh).unwrap();
                        let prod = m.mul(&e.matrix);
                        let mut tr = Complex64::new(0.0, 0.0);
                        for i in 0..e.point.dim {
                            tr += prod[(i, i)];
                        }
                        tr * e.point.dim as f64
                    })
                    .sum()
            })
            .collect();
        let f_xh = GridFunction::new(Arc::clone(&grid), f_xh_samples).unwrap();
        let via_grid = forward(&f_xh, band).unwrap();
        let via_spec = translate_spectrum(&s, &h, Side::Right).unwrap();
        assert!(via_grid.relative_distance(&via_spec) < 1e-9);
    }

    #[test]
    fn sphere_rejects_right_translation() {
        let g = GroupDescriptor::sphere2();
        let s = random_spectrum(&g, 4.0, 3);
        let h = random_element(&g, 1, None).unwrap();
        assert!(translate_spectrum(&s, &h, Side::Right).is_err());
        assert!(translate_spectrum(&s, &h, Side::Left).is_ok());
    }

    #[test]
    fn lift_zonal_mode_supported_on_invariant_row() {
        // f = zonal degree-1 basis function; its lift lives in the single
        // invariant row of l = 1 and nowhere else.
        let g = GroupDescriptor::sphere2();
        let band = 4.0;
        let grid = grid_for(&g, band);
        let mut entries = vec![SpectrumEntry {
            point: DualPoint::sphere(1),
            matrix: {
                let mut m = CMatrix::zeros(3);
                m[(0, 0)] = Complex64::new(1.0, 0.0);
                m
            },
        }];
        entries.push(SpectrumEntry {
            point: DualPoint::sphere(0),
            matrix: CMatrix::zeros(1),
        });
        let s = Spectrum::from_entries(g, band, entries).unwrap();
        let f = inverse(&s, &grid).unwrap();
        let lifted = lift_to_group(&f).unwrap();
        // group side: only m=2 (l=1) carries mass, and it matches the
        // sphere-side Hilbert-Schmidt mass (the lift is an isometry)
        for e in lifted.group_spectrum.entries() {
            let mass = e.matrix.hs_norm();
            if e.point.label[0] == 2 {
                assert!((mass - 1.0).abs() < 1e-9, "lifted l=1 mass {mass}");
            } else {
                assert!(mass < 1e-10, "m={} mass {mass}", e.point.label[0]);
            }
        }
        // relabelled side matches the native sphere spectrum entrywise
        for (a, b) in lifted
            .sphere_spectrum
            .entries()
            .iter()
            .zip(forward(&f, band).unwrap().entries())
        {
            assert_eq!(a.point.label, b.point.label);
            assert!(a.matrix.sub(&b.matrix).hs_norm() < 1e-9);
        }
    }

    #[test]
    fn lift_preserves_constant_and_class_i_pattern() {
        let g = GroupDescriptor::sphere2();
        let band = 6.0;
        let grid = grid_for(&g, band);
        let f = inverse(&random_spectrum(&g, band, 77), &grid).unwrap();
        let lifted = lift_to_group(&f).unwrap();
        let total: f64 = lifted
            .group_spectrum
            .entries()
            .iter()
            .map(|e| e.point.dim as f64 * e.matrix.hs_norm_sqr())
            .sum();
        let mut outside = 0.0;
        for e in lifted.group_spectrum.entries() {
            let m = e.point.label[0];
            let d = e.point.dim;
            if m % 2 == 1 {
                outside += d as f64 * e.matrix.hs_norm_sqr();
            } else {
                let center = (m / 2) as usize;
                for i in 0..d {
                    if i != center {
                        let row_mass: f64 =
                            (0..d).map(|j| e.matrix[(i, j)].norm_sqr()).sum();
                        outside += d as f64 * row_mass;
                    }
                }
            }
        }
        assert!(outside / total < 1e-20, "class-I leakage {}", outside / total);
        // sphere-relabelled spectrum: rows beyond k=1 vanish
        for e in lifted.sphere_spectrum.entries() {
            for i in 1..e.point.dim {
                for j in 0..e.point.dim {
                    assert!(e.matrix[(i, j)].norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn lift_modulus_equality_lemma() {
        // || f~(h.) - f~ ||_{L2(G)} equals || f(h.) - f ||_{L2(G/K)}, both
        // sides by quadrature on their own grids.
        let g = GroupDescriptor::sphere2();
        let band = 5.0;
        let grid = grid_for(&g, band);
        let f = inverse(&random_spectrum(&g, band, 5), &grid).unwrap();
        let lifted = lift_to_group(&f).unwrap();
        let s_sphere = forward(&f, band).unwrap();
        for seed in 0..4 {
            let h = random_element(&g, seed, Some(0.4)).unwrap();
            let q = match &h {
                GroupElement::SphereRotation(q) => *q,
                _ => unreachable!(),
            };
            // sphere side
            let f_h = inverse(
                &translate_spectrum(&s_sphere, &h, Side::Left).unwrap(),
                &grid,
            )
            .unwrap();
            let lhs = f_h.sub(&f).l2_norm();
            // group side
            let hq = GroupElement::Su2(q);
            let g_spec = &lifted.group_spectrum;
            let g_h = inverse(
                &translate_spectrum(g_spec, &hq, Side::Left).unwrap(),
                &lifted.function.grid,
            )
            .unwrap();
            let rhs = g_h.sub(&lifted.function).l2_norm();
            assert!(
                (lhs - rhs).abs() <= 1e-9 * lhs.max(1e-30),
                "seed {seed}: sphere {lhs} vs group {rhs}"
            );
        }
    }

    #[test]
    fn json_roundtrip_and_dim_validation() {
        let g = GroupDescriptor::su2();
        let s = random_spectrum(&g, 3.0, 2);
        let text = s.to_json_string().unwrap();
        let back = Spectrum::from_json_str(&text).unwrap();
        assert!(back.relative_distance(&s) < 1e-15);
        // corrupt the declared dimension
        let bad = text.replacen("\"dim\": 2", "\"dim\": 3", 1);
        assert!(bad != text);
        assert!(Spectrum::from_json_str(&bad).is_err());
    }

    #[test]
    fn forward_band_mismatch_rejected() {
        let g = GroupDescriptor::torus(1).unwrap();
        let grid = grid_for(&g, 4.0);
        let f = GridFunction::constant(grid, Complex64::new(1.0, 0.0));
        assert!(forward(&f, 9.0).is_err());
    }

    #[test]
    fn su2_quaternion_euler_grid_consistency() {
        // nodes stored on the Euler grid must reproduce their own angles
        let g = GroupDescriptor::su2();
        let grid = build_grid(&g, 3.0).unwrap();
        if let GridLayout::Euler { n_alpha, n_gamma, beta_nodes, .. } = &grid.layout {
            let node = &grid.nodes[(1 * n_alpha + 2) * n_gamma + 3];
            if let GroupElement::Su2(q) = node {
                let expect = Quaternion::from_euler_zyz(
                    2.0 * PI * 2.0 / *n_alpha as f64,
                    beta_nodes[1],
                    4.0 * PI * 3.0 / *n_gamma as f64,
                );
                assert!((q.w - expect.w).abs() < 1e-12);
            } else {
                panic!("expected su2 node");
            }
        } else {
            panic!("expected euler layout");
        }
    }
}
