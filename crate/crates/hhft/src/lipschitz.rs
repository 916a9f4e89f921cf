//! Moduli of continuity in `L^p` under group translation, Lipschitz and
//! Dini-Lipschitz seminorms, and power-log decay fitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{random_element_with, GroupDescriptor, GroupElement, GroupKind, Quaternion};
use crate::harmonics::sphere_m_order;
use crate::transform::{forward, inverse, rep_blocks, GridFunction, Side, Spectrum};

// ---------------------------------------------------------------------------
// Modulus of continuity
// ---------------------------------------------------------------------------

pub enum ModulusInput<'a> {
    Grid(&'a GridFunction),
    Spectrum(&'a Spectrum),
}

/// `ω_p(f; r)` per radius: the max over sampled directions of
/// `‖f(h·) − f‖_{L^p}` at `|h| = r`.
#[derive(Debug, Clone, Serialize)]
pub struct ModulusCurve {
    /// Radii, descending.
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub p: f64,
    pub side: Side,
    pub directions_per_radius: usize,
}

impl ModulusCurve {
    /// Points `(h, ω)` with `h` ascending, for fitting.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let mut pts: Vec<(f64, f64)> = self
            .radii
            .iter()
            .cloned()
            .zip(self.values.iter().cloned())
            .collect();
        pts.reverse();
        pts
    }

    /// Count of 5%-tolerance violations of "ω nondecreasing in r".
    /// Direction sampling takes a max, not a sup, so this is a flag,
    /// never a failure.
    pub fn monotonicity_violations(&self, tol: f64) -> usize {
        let mut count = 0;
        for i in 0..self.values.len().saturating_sub(1) {
            // radii descending: values[i] belongs to the larger radius
            if self.values[i] < self.values[i + 1] * (1.0 - tol) {
                count += 1;
            }
        }
        count
    }
}

fn direction_axes(
    g: &GroupDescriptor,
    directions: usize,
    seed: u64,
) -> Result<Vec<GroupElement>> {
    // unit-radius template shifts; scaled per radius
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = match g.kind {
        GroupKind::Torus(1) => 2.min(directions.max(1)),
        _ => directions.max(1),
    };
    if let GroupKind::Torus(1) = g.kind {
        return Ok(vec![
            GroupElement::Torus(vec![1.0]),
            GroupElement::Torus(vec![-1.0]),
        ][..d]
            .to_vec());
    }
    (0..d)
        .map(|_| random_element_with(g, &mut rng, Some(1.0)))
        .collect()
}

fn scale_shift(g: &GroupDescriptor, template: &GroupElement, r: f64) -> GroupElement {
    match (g.kind, template) {
        (GroupKind::Torus(_), GroupElement::Torus(u)) => {
            GroupElement::Torus(u.iter().map(|&c| (c * r).rem_euclid(2.0 * std::f64::consts::PI)).collect())
        }
        (GroupKind::Su2, GroupElement::Su2(q)) => {
            GroupElement::Su2(rescale_rotation(q, r))
        }
        (GroupKind::Sphere2, GroupElement::SphereRotation(q)) => {
            GroupElement::SphereRotation(rescale_rotation(q, r))
        }
        _ => unreachable!(),
    }
}

fn rescale_rotation(q: &Quaternion, r: f64) -> Quaternion {
    let axis_norm = (q.x * q.x + q.y * q.y + q.z * q.z).sqrt();
    if axis_norm < 1e-300 {
        return Quaternion::IDENTITY;
    }
    Quaternion::from_axis_angle([q.x / axis_norm, q.y / axis_norm, q.z / axis_norm], r)
}

/// Rotation mapping the north pole onto the axis of `q`.
fn axis_conjugator(q: &Quaternion) -> Quaternion {
    let n = (q.x * q.x + q.y * q.y + q.z * q.z).sqrt();
    if n < 1e-300 {
        return Quaternion::IDENTITY;
    }
    let u = [q.x / n, q.y / n, q.z / n];
    let c = u[2]; // z . u
    if c > 1.0 - 1e-14 {
        return Quaternion::IDENTITY;
    }
    if c < -1.0 + 1e-14 {
        return Quaternion::from_axis_angle([1.0, 0.0, 0.0], std::f64::consts::PI);
    }
    let axis = [-u[1], u[0], 0.0]; // z x u
    Quaternion::from_axis_angle(axis, c.clamp(-1.0, 1.0).acos())
}

pub fn modulus(
    input: &ModulusInput,
    p: f64,
    radii: &[f64],
    side: Side,
    directions: usize,
    seed: u64,
) -> Result<ModulusCurve> {
    if !(p >= 1.0) {
        return Err(Error::argument(format!("p must lie in [1, inf], got {p}")));
    }
    let group = match input {
        ModulusInput::Grid(f) => f.grid.group,
        ModulusInput::Spectrum(s) => s.group,
    };
    if group.is_homogeneous() && side == Side::Right {
        return Err(Error::argument("no right modulus on a quotient space"));
    }
    let mut rs: Vec<f64> = radii.to_vec();
    rs.sort_by(|a, b| b.total_cmp(a));
    for &r in &rs {
        if !(r > 0.0 && r <= std::f64::consts::PI) {
            return Err(Error::argument(format!("radius {r} out of (0, pi]")));
        }
    }
    let axes = direction_axes(&group, directions, seed)?;
    let values = match input {
        ModulusInput::Grid(f) => grid_modulus(f, p, &rs, side, &axes)?,
        ModulusInput::Spectrum(s) => {
            if (p - 2.0).abs() > 1e-12 {
                return Err(Error::argument(
                    "the spectral modulus path requires p = 2",
                ));
            }
            spectral_modulus(s, &rs, side, &axes)?
        }
    };
    Ok(ModulusCurve {
        radii: rs,
        values,
        p,
        side,
        directions_per_radius: axes.len(),
    })
}

fn grid_modulus(
    f: &GridFunction,
    p: f64,
    radii: &[f64],
    side: Side,
    axes: &[GroupElement],
) -> Result<Vec<f64>> {
    let g = f.grid.group;
    let s = forward(f, f.grid.band)?;
    let jobs: Vec<(usize, GroupElement)> = radii
        .iter()
        .enumerate()
        .flat_map(|(ri, &r)| {
            axes.iter()
                .map(move |axis| (ri, scale_shift(&g, axis, r)))
                .collect::<Vec<_>>()
        })
        .collect();
    let per_job: Vec<(usize, f64)> = jobs
        .par_iter()
        .map(|(ri, h)| {
            let translated = crate::transform::translate_spectrum(&s, h, side)?;
            let fh = inverse(&translated, &f.grid)?;
            Ok((*ri, fh.sub(f).lp_norm(p)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut values = vec![0.0f64; radii.len()];
    for (ri, v) in per_job {
        values[ri] = values[ri].max(v);
    }
    Ok(values)
}

/// `p = 2` fast path from the Plancherel identity:
/// `ω₂(h)² = Σ d_ξ ‖f̂(ξ)(ξ(h) − I)‖²_HS`.
///
/// All radii along one axis share the eigenbasis of the one-parameter
/// subgroup, so the matrix products happen once per (entry, axis).
fn spectral_modulus(
    s: &Spectrum,
    radii: &[f64],
    side: Side,
    axes: &[GroupElement],
) -> Result<Vec<f64>> {
    let g = s.group;
    match g.kind {
        GroupKind::Torus(_) => {
            let mut values = vec![0.0f64; radii.len()];
            for axis in axes {
                let u = match axis {
                    GroupElement::Torus(u) => u,
                    _ => unreachable!(),
                };
                for (ri, &r) in radii.iter().enumerate() {
                    let mut acc = 0.0;
                    for e in s.entries() {
                        let ju: f64 = e
                            .point
                            .label
                            .iter()
                            .zip(u)
                            .map(|(&j, &c)| j as f64 * c)
                            .sum();
                        acc += e.matrix.hs_norm_sqr() * 4.0 * (0.5 * ju * r).sin().powi(2);
                    }
                    values[ri] = values[ri].max(acc.sqrt());
                }
            }
            Ok(values)
        }
        GroupKind::Su2 | GroupKind::Sphere2 => {
            let per_axis: Vec<Vec<f64>> = axes
                .par_iter()
                .map(|axis| {
                    let q = match axis {
                        GroupElement::Su2(q) | GroupElement::SphereRotation(q) => q,
                        _ => unreachable!(),
                    };
                    let gu = axis_conjugator(q);
                    let shift = match g.kind {
                        GroupKind::Su2 => GroupElement::Su2(gu),
                        _ => GroupElement::SphereRotation(gu),
                    };
                    let blocks = rep_blocks(s, &shift)?;
                    // per entry: weight-resolved column (or row) energies
                    let mut vals = vec![0.0; radii.len()];
                    let mut contrib: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
                    for (e, v) in s.entries().iter().zip(&blocks) {
                        let d = e.point.dim;
                        let mus: Vec<f64> = match g.kind {
                            GroupKind::Su2 => {
                                let m = e.point.label[0];
                                (0..d).map(|i| (m - 2 * i as i64) as f64 / 2.0).collect()
                            }
                            _ => sphere_m_order(e.point.label[0])
                                .iter()
                                .map(|&m| m as f64)
                                .collect(),
                        };
                        let energies: Vec<f64> = match side {
                            Side::Left => {
                                let gmat = e.matrix.mul(v);
                                (0..d)
                                    .map(|k| {
                                        (0..d).map(|i| gmat[(i, k)].norm_sqr()).sum::<f64>()
                                            * e.point.dim as f64
                                    })
                                    .collect()
                            }
                            Side::Right => {
                                let gmat = v.adjoint().mul(&e.matrix);
                                (0..d)
                                    .map(|i| {
                                        (0..d).map(|k| gmat[(i, k)].norm_sqr()).sum::<f64>()
                                            * e.point.dim as f64
                                    })
                                    .collect()
                            }
                        };
                        contrib.push((mus, energies));
                    }
                    for (ri, &r) in radii.iter().enumerate() {
                        let mut acc = 0.0;
                        for (mus, energies) in &contrib {
                            for (mu, en) in mus.iter().zip(energies) {
                                acc += en * 4.0 * (0.5 * mu * r).sin().powi(2);
                            }
                        }
                        vals[ri] = acc.sqrt();
                    }
                    Ok(vals)
                })
                .collect::<Result<Vec<_>>>()?;
            let mut values = vec![0.0f64; radii.len()];
            for vals in per_axis {
                for (ri, v) in vals.into_iter().enumerate() {
                    values[ri] = values[ri].max(v);
                }
            }
            Ok(values)
        }
    }
}

/// Sampled lower bound of `sup_r r^{-α} ω(r)`.
pub fn lip_seminorm(curve: &ModulusCurve, alpha: f64) -> f64 {
    curve
        .radii
        .iter()
        .zip(&curve.values)
        .map(|(&r, &w)| w / r.powf(alpha))
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// Decay fitting
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitModel {
    Power,
    PowerLog,
}

/// Fitted power-log law `y ≈ C x^b (log x)^d` with its goodness of fit.
#[derive(Debug, Clone, Serialize)]
pub struct DecayReport {
    pub exponent_b: f64,
    pub log_exponent_d: f64,
    pub constant_c: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub points_used: usize,
    pub unreliable: bool,
}

fn solve_normal(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let (pivot, max) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if max < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// Least squares of `log y` against `{1, log x}` (power) or
/// `{1, log x, log log x}` (power_log; requires `x > 1`).
pub fn fit_decay(points: &[(f64, f64)], model: FitModel) -> Result<DecayReport> {
    if points.len() < 4 {
        return Err(Error::argument(format!(
            "need at least 4 points to fit, got {}",
            points.len()
        )));
    }
    let ascending = points.windows(2).all(|w| w[0].0 < w[1].0);
    let descending = points.windows(2).all(|w| w[0].0 > w[1].0);
    if !ascending && !descending {
        return Err(Error::argument("abscissa must be strictly monotone"));
    }
    for &(x, y) in points {
        if !(x > 0.0) || !(y > 0.0) {
            return Err(Error::argument(format!(
                "fit points must be positive, got ({x}, {y})"
            )));
        }
        if model == FitModel::PowerLog && x <= 1.0 {
            return Err(Error::argument(
                "power_log fits need x > 1 (log log x must exist)",
            ));
        }
    }
    let cols = match model {
        FitModel::Power => 2,
        FitModel::PowerLog => 3,
    };
    let rows: Vec<Vec<f64>> = points
        .iter()
        .map(|&(x, _)| {
            let u = x.ln();
            match model {
                FitModel::Power => vec![1.0, u],
                FitModel::PowerLog => vec![1.0, u, u.ln()],
            }
        })
        .collect();
    let ys: Vec<f64> = points.iter().map(|&(_, y)| y.ln()).collect();
    // normal equations
    let mut ata = vec![vec![0.0; cols]; cols];
    let mut aty = vec![0.0; cols];
    for (row, &y) in rows.iter().zip(&ys) {
        for i in 0..cols {
            aty[i] += row[i] * y;
            for j in 0..cols {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    let window = (
        points.iter().map(|p| p.0).fold(f64::MAX, f64::min),
        points.iter().map(|p| p.0).fold(f64::MIN, f64::max),
    );
    let coef = match solve_normal(&mut ata, &mut aty) {
        Some(c) => c,
        None => {
            return Ok(DecayReport {
                exponent_b: 0.0,
                log_exponent_d: 0.0,
                constant_c: 0.0,
                r_squared: 0.0,
                window,
                points_used: points.len(),
                unreliable: true,
            })
        }
    };
    let mean_y: f64 = ys.iter().sum::<f64>() / ys.len() as f64;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (row, &y) in rows.iter().zip(&ys) {
        let yhat: f64 = row.iter().zip(&coef).map(|(r, c)| r * c).sum();
        ss_res += (y - yhat) * (y - yhat);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Ok(DecayReport {
        exponent_b: coef[1],
        log_exponent_d: if cols == 3 { coef[2] } else { 0.0 },
        constant_c: coef[0].exp(),
        r_squared,
        window,
        points_used: points.len(),
        unreliable: false,
    })
}

// ---------------------------------------------------------------------------
// Schedules and windows
// ---------------------------------------------------------------------------

/// Geometric radii, descending from `hi` to `lo`.
pub fn geometric_radii(hi: f64, lo: f64, count: usize) -> Vec<f64> {
    assert!(hi > lo && lo > 0.0 && count >= 2);
    let ratio = (lo / hi).powf(1.0 / (count as f64 - 1.0));
    (0..count).map(|i| hi * ratio.powi(i as i32)).collect()
}

/// Default radius schedule: 24 radii from 0.5 down to 1e-3.
pub fn default_radius_schedule() -> Vec<f64> {
    geometric_radii(0.5, 1e-3, 24)
}

/// Band-aware schedule used by the theorem checkers: floor `2/Λ_w` (the
/// band cut forces slope 1 below that), ceiling `max(0.1, 10/Λ_w)` (the
/// crossover to saturation contaminates larger radii).
pub fn band_aware_schedule(weight_max: f64) -> Vec<f64> {
    let floor = (2.0 / weight_max).clamp(1e-3, 0.25);
    let mut ceil = (10.0 / weight_max).max(0.1).min(0.5);
    if ceil <= floor * 1.5 {
        ceil = (floor * 20.0).min(0.5);
    }
    geometric_radii(ceil, floor, 24)
}

/// Drop the 3 largest and 3 smallest radii (pre-asymptotic and noise-floor
/// guards) when enough points remain.
pub fn default_fit_window(points: &[(f64, f64)]) -> &[(f64, f64)] {
    if points.len() > 10 {
        &points[3..points.len() - 3]
    } else {
        points
    }
}

/// Modulus CSV artifact: `h,omega,ratio_alpha`, radii descending.
pub fn modulus_csv(curve: &ModulusCurve, alpha: Option<f64>) -> String {
    let mut out = String::from("h,omega,ratio_alpha\n");
    for (&h, &w) in curve.radii.iter().zip(&curve.values) {
        match alpha {
            Some(a) => out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e}\n",
                h,
                w,
                w / h.powf(a)
            )),
            None => out.push_str(&format!("{:.16e},{:.16e},\n", h, w)),
        }
    }
    out
}
