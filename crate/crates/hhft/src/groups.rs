//! Group and manifold descriptors, elements, geodesic distance, and the
//! class-I unitary dual with Laplacian weights.
//!
//! Conventions (fixed once, used everywhere):
//! * `Torus(n)` carries the flat product metric with circle circumference 2π;
//!   `λ²_j = |j|²` for the character `e^{i j·θ}`.
//! * `SU(2)` elements are unit quaternions; `|h| = 2·arccos|w|` is the
//!   rotation angle folded to `[0, π]` (quaternion sign quotiented), and the
//!   Casimir eigenvalue is `λ²_ξ = ℓ(ℓ+1)` for twice-spin `m = 2ℓ`. With the
//!   matching metric the one-parameter subgroups `t ↦ exp(tX)` generated by
//!   unit rotations are unit speed, which ties `|h|`, `λ²` and the modulus
//!   estimates together consistently.
//! * `Sphere2` is `SO(3)` acting on `S²` with `K = SO(2)` the stabilizer of
//!   the north pole; its class-I dual is labelled by integer `ℓ` with
//!   `k_ξ = 1` and `λ²_ξ = ℓ(ℓ+1)`. Shifts are rotations (unit quaternions),
//!   measured by their rotation angle; points are unit vectors measured by
//!   colatitude from the north pole.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const NORTH_POLE: [f64; 3] = [0.0, 0.0, 1.0];

// ---------------------------------------------------------------------------
// Descriptors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Torus(usize),
    Su2,
    Sphere2,
}

/// Which group/manifold, with both the group dimension (used by the Weyl
/// counting exponents) and the manifold dimension exposed explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    pub kind: GroupKind,
}

impl GroupDescriptor {
    pub fn torus(n: usize) -> Result<Self> {
        if n == 0 || n > 3 {
            return Err(Error::config(format!(
                "torus dimension must be 1..=3, got {n}"
            )));
        }
        Ok(GroupDescriptor {
            kind: GroupKind::Torus(n),
        })
    }

    pub fn su2() -> Self {
        GroupDescriptor { kind: GroupKind::Su2 }
    }

    pub fn sphere2() -> Self {
        GroupDescriptor {
            kind: GroupKind::Sphere2,
        }
    }

    /// Dimension of the acting group `G` (`SO(3)` for the sphere). This is
    /// the exponent entering every Weyl-counting and threshold formula.
    pub fn dimension(&self) -> usize {
        match self.kind {
            GroupKind::Torus(n) => n,
            GroupKind::Su2 => 3,
            GroupKind::Sphere2 => 3,
        }
    }

    pub fn manifold_dimension(&self) -> usize {
        match self.kind {
            GroupKind::Torus(n) => n,
            GroupKind::Su2 => 3,
            GroupKind::Sphere2 => 2,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        matches!(self.kind, GroupKind::Sphere2)
    }

    pub fn code(&self) -> &'static str {
        match self.kind {
            GroupKind::Torus(1) => "t1",
            GroupKind::Torus(2) => "t2",
            GroupKind::Torus(3) => "t3",
            GroupKind::Torus(_) => unreachable!("torus dimension is validated"),
            GroupKind::Su2 => "su2",
            GroupKind::Sphere2 => "s2",
        }
    }

    pub fn parse(code: &str) -> Result<Self> {
        match code {
            "t1" => GroupDescriptor::torus(1),
            "t2" => GroupDescriptor::torus(2),
            "t3" => GroupDescriptor::torus(3),
            "su2" => Ok(GroupDescriptor::su2()),
            "s2" => Ok(GroupDescriptor::sphere2()),
            other => Err(Error::config(format!(
                "unsupported group kind {other:?} (expected t1|t2|t3|su2|s2)"
            ))),
        }
    }

    pub fn identity_shift(&self) -> GroupElement {
        match self.kind {
            GroupKind::Torus(n) => GroupElement::Torus(vec![0.0; n]),
            GroupKind::Su2 => GroupElement::Su2(Quaternion::IDENTITY),
            GroupKind::Sphere2 => GroupElement::SphereRotation(Quaternion::IDENTITY),
        }
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for GroupDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let code = String::deserialize(d)?;
        GroupDescriptor::parse(&code).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Quaternions
// ---------------------------------------------------------------------------

/// Unit quaternion `w + xi + yj + zk`. The associated `SU(2)` matrix is
/// `U = w·I − i(xσ_x + yσ_y + zσ_z)`, so `q = (cos t/2, sin(t/2)·n)` is the
/// rotation by angle `t` about the unit axis `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const IDENTITY: Quaternion = Quaternion {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Self {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        let (s, c) = (0.5 * angle).sin_cos();
        Quaternion {
            w: c,
            x: s * axis[0] / n,
            y: s * axis[1] / n,
            z: s * axis[2] / n,
        }
        .normalized()
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Quaternion {
            w: self.w / n,
            x: self.x / n,
            y: self.y / n,
            z: self.z / n,
        }
    }

    /// Hamilton product, renormalized to keep the unit invariant tight.
    pub fn mul(&self, r: &Quaternion) -> Quaternion {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (r.w, r.x, r.y, r.z);
        Quaternion {
            w: a * e - b * f - c * g - d * h,
            x: a * f + b * e + c * h - d * g,
            y: a * g - b * h + c * e + d * f,
            z: a * h + b * g - c * f + d * e,
        }
        .normalized()
    }

    pub fn conjugate(&self) -> Quaternion {
        Quaternion {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Rotation angle in `[0, π]`, quaternion sign quotiented.
    pub fn rotation_angle(&self) -> f64 {
        2.0 * self.w.abs().clamp(0.0, 1.0).acos()
    }

    /// Apply the rotation to a vector in `ℝ³`.
    pub fn rotate(&self, v: [f64; 3]) -> [f64; 3] {
        let q = self;
        let p = Quaternion {
            w: 0.0,
            x: v[0],
            y: v[1],
            z: v[2],
        };
        // q p q^{-1} without renormalizing the pure part
        let t = raw_mul(&raw_mul(q, &p), &q.conjugate());
        [t.x, t.y, t.z]
    }

    /// ZYZ Euler decomposition `q = q_z(α) q_y(β) q_z(γ)` with
    /// `α ∈ [0, 2π)`, `β ∈ [0, π]`, `γ ∈ [0, 4π)`.
    pub fn euler_zyz(&self) -> (f64, f64, f64) {
        // U = [[a, b], [-conj(b), conj(a)]], a = w − iz, b = −y − ix
        let mod_a = (self.w * self.w + self.z * self.z).sqrt();
        let mod_b = (self.x * self.x + self.y * self.y).sqrt();
        let beta = 2.0 * mod_b.atan2(mod_a);
        let (mut alpha, mut gamma);
        if mod_b < 1e-15 {
            // a = e^{-i(α+γ)/2}; pick γ = 0
            alpha = 2.0 * self.z.atan2(self.w);
            gamma = 0.0;
        } else if mod_a < 1e-15 {
            // -b = e^{-i(α-γ)/2} sin(β/2); pick γ = 0
            alpha = -2.0 * self.x.atan2(self.y);
            gamma = 0.0;
        } else {
            let phi_a = (-self.z).atan2(self.w);
            let phi_b = self.x.atan2(self.y);
            alpha = -(phi_a + phi_b);
            gamma = phi_b - phi_a;
        }
        // Fold α into [0, 2π); shifting α by 2πk must be matched on γ to
        // keep the same quaternion (each 2π shift flips the sign).
        let k = (alpha / (2.0 * PI)).floor();
        alpha -= 2.0 * PI * k;
        gamma -= 2.0 * PI * k;
        gamma = gamma.rem_euclid(4.0 * PI);
        (alpha, beta, gamma)
    }

    fn z_rotation(angle: f64) -> Quaternion {
        let (s, c) = (0.5 * angle).sin_cos();
        Quaternion::new(c, 0.0, 0.0, s)
    }

    fn y_rotation(angle: f64) -> Quaternion {
        let (s, c) = (0.5 * angle).sin_cos();
        Quaternion::new(c, 0.0, s, 0.0)
    }

    pub fn from_euler_zyz(alpha: f64, beta: f64, gamma: f64) -> Quaternion {
        Quaternion::z_rotation(alpha)
            .mul(&Quaternion::y_rotation(beta))
            .mul(&Quaternion::z_rotation(gamma))
    }
}

fn raw_mul(a: &Quaternion, b: &Quaternion) -> Quaternion {
    Quaternion {
        w: a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        x: a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        y: a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        z: a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    }
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum GroupElement {
    /// Angles `θ_i ∈ [0, 2π)`.
    Torus(Vec<f64>),
    Su2(Quaternion),
    /// A point of `S²` (unit vector).
    SpherePoint([f64; 3]),
    /// An `SO(3)` element acting on `S²`, used for shifts.
    SphereRotation(Quaternion),
}

impl GroupElement {
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Torus(a), GroupElement::Torus(b)) => {
                assert_eq!(a.len(), b.len());
                GroupElement::Torus(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| (x + y).rem_euclid(2.0 * PI))
                        .collect(),
                )
            }
            (GroupElement::Su2(a), GroupElement::Su2(b)) => GroupElement::Su2(a.mul(b)),
            (GroupElement::SphereRotation(a), GroupElement::SphereRotation(b)) => {
                GroupElement::SphereRotation(a.mul(b))
            }
            (GroupElement::SphereRotation(a), GroupElement::SpherePoint(p)) => {
                GroupElement::SpherePoint(a.rotate(*p))
            }
            _ => panic!("incompatible group elements in compose"),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Torus(a) => {
                GroupElement::Torus(a.iter().map(|x| (-x).rem_euclid(2.0 * PI)).collect())
            }
            GroupElement::Su2(q) => GroupElement::Su2(q.conjugate()),
            GroupElement::SphereRotation(q) => GroupElement::SphereRotation(q.conjugate()),
            GroupElement::SpherePoint(_) => panic!("points of G/K have no group inverse"),
        }
    }
}

/// `|h| = d(h, e)` in the bi-invariant metric (colatitude for sphere points).
pub fn geodesic_distance(g: &GroupDescriptor, h: &GroupElement) -> f64 {
    match (g.kind, h) {
        (GroupKind::Torus(_), GroupElement::Torus(angles)) => {
            let mut s = 0.0;
            for &t in angles {
                let mut d = t.rem_euclid(2.0 * PI);
                if d > PI {
                    d = 2.0 * PI - d;
                }
                s += d * d;
            }
            s.sqrt()
        }
        (GroupKind::Su2, GroupElement::Su2(q)) => q.rotation_angle(),
        (GroupKind::Sphere2, GroupElement::SphereRotation(q)) => q.rotation_angle(),
        (GroupKind::Sphere2, GroupElement::SpherePoint(p)) => {
            let c = p[0] * NORTH_POLE[0] + p[1] * NORTH_POLE[1] + p[2] * NORTH_POLE[2];
            c.clamp(-1.0, 1.0).acos()
        }
        _ => panic!("element does not belong to this group"),
    }
}

// ---------------------------------------------------------------------------
// Dual points
// ---------------------------------------------------------------------------

/// A class-I representation label with dimension, invariant-vector count,
/// Casimir eigenvalue and first-order elliptic weight `⟨ξ⟩ = (1+λ²)^{1/2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualPoint {
    pub label: Vec<i64>,
    pub dim: usize,
    pub k: usize,
    pub lambda_sq: f64,
    pub weight: f64,
}

impl DualPoint {
    pub fn torus(j: &[i64]) -> DualPoint {
        let lambda_sq = j.iter().map(|&v| (v * v) as f64).sum::<f64>();
        DualPoint {
            label: j.to_vec(),
            dim: 1,
            k: 1,
            lambda_sq,
            weight: (1.0 + lambda_sq).sqrt(),
        }
    }

    /// SU(2) representation indexed by twice-spin `m = 2ℓ`.
    pub fn su2(m: i64) -> DualPoint {
        assert!(m >= 0);
        let l = m as f64 / 2.0;
        let lambda_sq = l * (l + 1.0);
        DualPoint {
            label: vec![m],
            dim: (m + 1) as usize,
            k: (m + 1) as usize,
            lambda_sq,
            weight: (1.0 + lambda_sq).sqrt(),
        }
    }

    /// Class-I representation of SO(3) with respect to SO(2), degree `ℓ`.
    pub fn sphere(l: i64) -> DualPoint {
        assert!(l >= 0);
        let lf = l as f64;
        let lambda_sq = lf * (lf + 1.0);
        DualPoint {
            label: vec![l],
            dim: (2 * l + 1) as usize,
            k: 1,
            lambda_sq,
            weight: (1.0 + lambda_sq).sqrt(),
        }
    }

    pub fn for_label(g: &GroupDescriptor, label: &[i64]) -> Result<DualPoint> {
        match g.kind {
            GroupKind::Torus(n) => {
                if label.len() != n {
                    return Err(Error::argument(format!(
                        "torus label must have {n} components, got {}",
                        label.len()
                    )));
                }
                Ok(DualPoint::torus(label))
            }
            GroupKind::Su2 => {
                if label.len() != 1 || label[0] < 0 {
                    return Err(Error::argument("su2 label is a single twice-spin m >= 0"));
                }
                Ok(DualPoint::su2(label[0]))
            }
            GroupKind::Sphere2 => {
                if label.len() != 1 || label[0] < 0 {
                    return Err(Error::argument("sphere label is a single degree l >= 0"));
                }
                Ok(DualPoint::sphere(label[0]))
            }
        }
    }

    /// Deterministic dual ordering: weight ascending, ties by label.
    pub fn sort_key(&self) -> (f64, &[i64]) {
        (self.lambda_sq, &self.label)
    }
}

/// All class-I dual points with `⟨ξ⟩ ≤ Λ`, weight-ascending, label tie-break.
pub fn enumerate_dual(g: &GroupDescriptor, band: f64) -> Result<Vec<DualPoint>> {
    if !(band >= 1.0) {
        return Err(Error::argument(format!("band must be >= 1, got {band}")));
    }
    let mut points = Vec::new();
    match g.kind {
        GroupKind::Torus(n) => {
            let jmax = torus_mode_max(band);
            let mut idx = vec![-jmax; n];
            loop {
                let p = DualPoint::torus(&idx);
                if p.weight <= band {
                    points.push(p);
                }
                // odometer over [-jmax, jmax]^n
                let mut axis = n;
                loop {
                    if axis == 0 {
                        break;
                    }
                    axis -= 1;
                    idx[axis] += 1;
                    if idx[axis] <= jmax {
                        break;
                    }
                    idx[axis] = -jmax;
                    if axis == 0 {
                        return finish(points);
                    }
                }
            }
        }
        GroupKind::Su2 => {
            let mut m = 0;
            loop {
                let p = DualPoint::su2(m);
                if p.weight > band {
                    break;
                }
                points.push(p);
                m += 1;
            }
            finish(points)
        }
        GroupKind::Sphere2 => {
            let mut l = 0;
            loop {
                let p = DualPoint::sphere(l);
                if p.weight > band {
                    break;
                }
                points.push(p);
                l += 1;
            }
            finish(points)
        }
    }
}

fn finish(mut points: Vec<DualPoint>) -> Result<Vec<DualPoint>> {
    points.sort_by(|a, b| {
        a.lambda_sq
            .total_cmp(&b.lambda_sq)
            .then_with(|| a.label.cmp(&b.label))
    });
    Ok(points)
}

/// Largest integer frequency with `⟨j⟩ ≤ Λ` on the torus.
pub fn torus_mode_max(band: f64) -> i64 {
    if band < 1.0 {
        return -1;
    }
    let mut j = (band * band - 1.0).max(0.0).sqrt().floor() as i64;
    while (1.0 + ((j + 1) * (j + 1)) as f64).sqrt() <= band {
        j += 1;
    }
    while j > 0 && (1.0 + (j * j) as f64).sqrt() > band {
        j -= 1;
    }
    j
}

/// Largest twice-spin with `⟨ξ⟩ ≤ Λ` on SU(2).
pub fn su2_twice_spin_max(band: f64) -> i64 {
    let mut m = 0i64;
    while DualPoint::su2(m + 1).weight <= band {
        m += 1;
    }
    m
}

/// Largest degree with `⟨ξ⟩ ≤ Λ` on the sphere.
pub fn sphere_degree_max(band: f64) -> i64 {
    let mut l = 0i64;
    while DualPoint::sphere(l + 1).weight <= band {
        l += 1;
    }
    l
}

// ---------------------------------------------------------------------------
// Random elements
// ---------------------------------------------------------------------------

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Marsaglia polar method.
    loop {
        let u: f64 = rng.gen_range(-1.0..1.0);
        let v: f64 = rng.gen_range(-1.0..1.0);
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            return u * (-2.0 * s.ln() / s).sqrt();
        }
    }
}

fn random_unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.iter().map(|x| x / norm).collect();
        }
    }
}

pub fn random_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    let v = random_unit_vector(rng, 4);
    Quaternion::new(v[0], v[1], v[2], v[3])
}

/// Haar-uniform element (no radius), or uniform on the geodesic sphere
/// `{|h| = r}` when a radius is given. Deterministic in the seed.
pub fn random_element(
    g: &GroupDescriptor,
    seed: u64,
    radius: Option<f64>,
) -> Result<GroupElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_element_with(g, &mut rng, radius)
}

pub fn random_element_with(
    g: &GroupDescriptor,
    rng: &mut ChaCha8Rng,
    radius: Option<f64>,
) -> Result<GroupElement> {
    if let Some(r) = radius {
        if !(r > 0.0 && r <= PI) {
            return Err(Error::argument(format!(
                "shift radius must lie in (0, pi], got {r}"
            )));
        }
    }
    match (g.kind, radius) {
        (GroupKind::Torus(n), None) => Ok(GroupElement::Torus(
            (0..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect(),
        )),
        (GroupKind::Torus(1), Some(r)) => {
            let sign = if rng.gen_range(0..2u8) == 0 { 1.0 } else { -1.0 };
            Ok(GroupElement::Torus(vec![(sign * r).rem_euclid(2.0 * PI)]))
        }
        (GroupKind::Torus(n), Some(r)) => {
            let u = random_unit_vector(rng, n);
            Ok(GroupElement::Torus(
                u.iter().map(|c| (r * c).rem_euclid(2.0 * PI)).collect(),
            ))
        }
        (GroupKind::Su2, None) => Ok(GroupElement::Su2(random_quaternion(rng))),
        (GroupKind::Su2, Some(r)) => {
            let axis = random_unit_vector(rng, 3);
            Ok(GroupElement::Su2(Quaternion::from_axis_angle(
                [axis[0], axis[1], axis[2]],
                r,
            )))
        }
        (GroupKind::Sphere2, None) => Ok(GroupElement::SphereRotation(random_quaternion(rng))),
        (GroupKind::Sphere2, Some(r)) => {
            let axis = random_unit_vector(rng, 3);
            Ok(GroupElement::SphereRotation(Quaternion::from_axis_angle(
                [axis[0], axis[1], axis[2]],
                r,
            )))
        }
    }
}

// ---------------------------------------------------------------------------
// Weyl counting sums
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct WeylPoint {
    pub lambda: f64,
    pub sum: f64,
    /// `S(λ) / λ^{(r+1)n}` for the asymptotic comparison.
    pub ratio: f64,
}

/// Head sums `S(λ) = Σ_{⟨ξ⟩≤λ} d_ξ² ⟨ξ⟩^{rn}` for `r > −1`, or tail sums
/// `Σ_{λ≤⟨ξ⟩≤Λmax} d_ξ² ⟨ξ⟩^{rn}` for `r < −1` (restricted to the
/// enumerated band `Λmax = max λ`).
pub fn weyl_partial_sums(
    g: &GroupDescriptor,
    lambdas: &[f64],
    r: f64,
) -> Result<Vec<WeylPoint>> {
    if r == -1.0 {
        return Err(Error::argument(
            "r = -1 separates the head and tail regimes; neither applies",
        ));
    }
    if lambdas.is_empty() {
        return Err(Error::argument("need at least one lambda"));
    }
    let lam_max = lambdas.iter().cloned().fold(f64::MIN, f64::max);
    let dual = enumerate_dual(g, lam_max.max(1.0))?;
    let n = g.dimension() as f64;
    let term =
        |p: &DualPoint| (p.dim * p.dim) as f64 * p.weight.powf(r * n);
    let mut out = Vec::with_capacity(lambdas.len());
    for &lam in lambdas {
        let sum: f64 = if r > -1.0 {
            dual.iter()
                .filter(|p| p.weight <= lam)
                .map(term)
                .sum()
        } else {
            dual.iter()
                .filter(|p| p.weight >= lam)
                .map(term)
                .sum()
        };
        let ratio = sum / lam.powf((r + 1.0) * n);
        out.push(WeylPoint {
            lambda: lam,
            sum,
            ratio,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_dual_band_2p5() {
        let g = GroupDescriptor::torus(1).unwrap();
        let dual = enumerate_dual(&g, 2.5).unwrap();
        let labels: Vec<i64> = dual.iter().map(|p| p.label[0]).collect();
        assert_eq!(labels, vec![0, -1, 1, -2, 2]);
        let w2 = dual.iter().find(|p| p.label[0] == 2).unwrap().weight;
        assert!((w2 - 5.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn su2_dual_band_1p5() {
        let dual = enumerate_dual(&GroupDescriptor::su2(), 1.5).unwrap();
        assert_eq!(dual.len(), 2);
        assert_eq!(dual[0].label, vec![0]);
        assert_eq!(dual[0].dim, 1);
        assert!((dual[0].weight - 1.0).abs() < 1e-15);
        assert_eq!(dual[1].label, vec![1]);
        assert_eq!(dual[1].dim, 2);
        assert!((dual[1].lambda_sq - 0.75).abs() < 1e-15);
        assert!((dual[1].weight - (7.0f64).sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn sphere_dual_band_3() {
        let dual = enumerate_dual(&GroupDescriptor::sphere2(), 3.0).unwrap();
        assert_eq!(dual.len(), 3);
        for (i, p) in dual.iter().enumerate() {
            assert_eq!(p.label[0] as usize, i);
            assert_eq!(p.dim, 2 * i + 1);
            assert_eq!(p.k, 1);
        }
        assert!((dual[2].lambda_sq - 6.0).abs() < 1e-15);
        assert!((dual[2].weight - 7.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn dual_weights_at_least_one_and_prefix_monotone() {
        for g in [
            GroupDescriptor::torus(2).unwrap(),
            GroupDescriptor::su2(),
            GroupDescriptor::sphere2(),
        ] {
            let small = enumerate_dual(&g, 4.0).unwrap();
            let large = enumerate_dual(&g, 9.0).unwrap();
            assert!(small.iter().all(|p| p.weight >= 1.0));
            assert_eq!(&large[..small.len()], &small[..]);
            for p in &small {
                // construction order: weight is exactly sqrt(1 + lambda_sq)
                assert_eq!(p.weight, (1.0 + p.lambda_sq).sqrt());
            }
        }
    }

    #[test]
    fn enumerate_dual_band_below_one_is_error() {
        assert!(enumerate_dual(&GroupDescriptor::su2(), 0.5).is_err());
    }

    #[test]
    fn torus_circle_distance() {
        let g = GroupDescriptor::torus(1).unwrap();
        assert_eq!(geodesic_distance(&g, &g.identity_shift()), 0.0);
        let d = geodesic_distance(&g, &GroupElement::Torus(vec![PI]));
        assert!((d - PI).abs() < 1e-15);
        let d = geodesic_distance(&g, &GroupElement::Torus(vec![1.5 * PI]));
        assert!((d - 0.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn su2_distance_small_rotation() {
        let g = GroupDescriptor::su2();
        let q = Quaternion::new(0.1f64.cos(), 0.1f64.sin(), 0.0, 0.0);
        let d = geodesic_distance(&g, &GroupElement::Su2(q));
        assert!((d - 0.2).abs() < 1e-14);
        // |h| = |h^{-1}| exactly
        let h = GroupElement::Su2(random_quaternion(&mut ChaCha8Rng::seed_from_u64(3)));
        assert_eq!(
            geodesic_distance(&g, &h),
            geodesic_distance(&g, &h.inverse())
        );
    }

    #[test]
    fn su2_distance_matrix_log_oracle() {
        // |h| should match the rotation angle recovered from the SU(2)
        // matrix trace: tr U = 2 cos(theta/2).
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..32 {
            let q = random_quaternion(&mut rng);
            // tr U = 2w for U = wI - i(x sx + y sy + z sz)
            let theta = 2.0 * q.w.abs().clamp(0.0, 1.0).acos();
            let d = geodesic_distance(&GroupDescriptor::su2(), &GroupElement::Su2(q));
            assert!((d - theta).abs() < 1e-12);
        }
    }

    #[test]
    fn random_radius_is_exact() {
        let g = GroupDescriptor::torus(1).unwrap();
        let h = random_element(&g, 1, Some(0.3)).unwrap();
        assert!((geodesic_distance(&g, &h) - 0.3).abs() < 1e-14);
        let g = GroupDescriptor::su2();
        for seed in 0..8 {
            let h = random_element(&g, seed, Some(0.8)).unwrap();
            assert!((geodesic_distance(&g, &h) - 0.8).abs() < 1e-12);
        }
        assert!(random_element(&g, 0, Some(4.0)).is_err());
    }

    #[test]
    fn random_elements_deterministic_in_seed() {
        let g = GroupDescriptor::su2();
        assert_eq!(
            random_element(&g, 42, None).unwrap(),
            random_element(&g, 42, None).unwrap()
        );
        let t = GroupDescriptor::torus(3).unwrap();
        assert_eq!(
            random_element(&t, 7, Some(0.1)).unwrap(),
            random_element(&t, 7, Some(0.1)).unwrap()
        );
    }

    #[test]
    fn triangle_inequality_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in [GroupDescriptor::torus(2).unwrap(), GroupDescriptor::su2()] {
            for _ in 0..64 {
                let a = random_element_with(&g, &mut rng, None).unwrap();
                let b = random_element_with(&g, &mut rng, None).unwrap();
                let ab = a.compose(&b);
                let da = geodesic_distance(&g, &a);
                let db = geodesic_distance(&g, &b);
                let dab = geodesic_distance(&g, &ab);
                assert!(dab <= da + db + 1e-10);
            }
        }
    }

    #[test]
    fn group_product_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..64 {
            let a = random_quaternion(&mut rng);
            let b = random_quaternion(&mut rng);
            let c = random_quaternion(&mut rng);
            let left = a.mul(&b).mul(&c);
            let right = a.mul(&b.mul(&c));
            assert!((left.w - right.w).abs() < 1e-12);
            assert!((left.x - right.x).abs() < 1e-12);
            assert!((left.y - right.y).abs() < 1e-12);
            assert!((left.z - right.z).abs() < 1e-12);
            assert!((a.mul(&b).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn euler_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..256 {
            let q = random_quaternion(&mut rng);
            let (al, be, ga) = q.euler_zyz();
            assert!((0.0..2.0 * PI).contains(&al) || al == 0.0);
            assert!((0.0..=PI).contains(&be));
            assert!((0.0..4.0 * PI).contains(&ga) || ga == 0.0);
            let r = Quaternion::from_euler_zyz(al, be, ga);
            // same quaternion up to global sign handled by the pairing rule
            let same = (q.w - r.w).abs() < 1e-10
                && (q.x - r.x).abs() < 1e-10
                && (q.y - r.y).abs() < 1e-10
                && (q.z - r.z).abs() < 1e-10;
            assert!(same, "euler roundtrip failed: {q:?} vs {r:?}");
        }
    }

    #[test]
    fn torus_lattice_count_closed_form() {
        // S(lambda) with r=0 counts lattice points: 2*floor(sqrt(l^2-1))+1
        let g = GroupDescriptor::torus(1).unwrap();
        let pts = weyl_partial_sums(&g, &[10.0], 0.0).unwrap();
        let expected = 2.0 * ((10.0f64 * 10.0 - 1.0).sqrt().floor()) + 1.0;
        assert_eq!(pts[0].sum, expected);
        assert!((pts[0].ratio - 1.9).abs() < 1e-12);
    }

    #[test]
    fn su2_counting_ratio_closed_form_oracle() {
        // Closed form: sum_{d<=D} d^2 = D(D+1)(2D+1)/6 with d = m+1 and
        // <xi> = sqrt(1 + (d^2-1)/4) <= lam  <=>  d <= sqrt(4 lam^2 - 3).
        let g = GroupDescriptor::su2();
        for &lam in &[8.0f64, 16.0, 32.0, 64.0] {
            let d_max = ((4.0 * lam * lam - 3.0).sqrt().floor()) as i64;
            let oracle = (d_max * (d_max + 1) * (2 * d_max + 1)) as f64 / 6.0;
            let got = weyl_partial_sums(&g, &[lam], 0.0).unwrap()[0].sum;
            assert_eq!(got, oracle);
            let ratio = got / lam.powi(3);
            assert!(
                (2.0..=3.5).contains(&ratio),
                "ratio {ratio} out of range at lambda={lam}"
            );
        }
        for &lam in &[32.0f64, 64.0] {
            let ratio = weyl_partial_sums(&g, &[lam], 0.0).unwrap()[0].ratio;
            assert!((ratio - 8.0 / 3.0).abs() / (8.0 / 3.0) < 0.10);
        }
    }

    #[test]
    fn su2_convergence_criterion_tail() {
        // sum d^2 <xi>^{-4}: increments over doublings must be Cauchy.
        // Direct summation oracle: per-representation terms.
        let term = |m: i64| {
            let p = DualPoint::su2(m);
            (p.dim * p.dim) as f64 * p.weight.powi(-4)
        };
        let partial = |mmax: i64| (0..=mmax).map(term).sum::<f64>();
        let mut prev_inc = f64::MAX;
        for k in 4..9 {
            let inc = partial(1 << (k + 1)) - partial(1 << k);
            assert!(inc < prev_inc);
            prev_inc = inc;
        }
        // per-representation increments beyond <xi> = 2000 are below 1e-6
        let m_at = |w: f64| su2_twice_spin_max(w);
        let m0 = m_at(2000.0);
        assert!(term(m0 + 1) < 1e-6);
        // and the tail form through weyl_partial_sums matches direct summation
        let g = GroupDescriptor::su2();
        let r = -4.0 / 3.0;
        let got = weyl_partial_sums(&g, &[1.0, 300.0], r).unwrap();
        let direct: f64 = (0..=m_at(300.0)).map(term).sum();
        assert!((got[0].sum - direct).abs() / direct < 1e-12);
    }

    #[test]
    fn weyl_r_minus_one_rejected() {
        let g = GroupDescriptor::su2();
        assert!(weyl_partial_sums(&g, &[4.0], -1.0).is_err());
    }

    #[test]
    fn group_parse_roundtrip() {
        for code in ["t1", "t2", "t3", "su2", "s2"] {
            assert_eq!(GroupDescriptor::parse(code).unwrap().code(), code);
        }
        assert!(GroupDescriptor::parse("so5").is_err());
        let s2 = GroupDescriptor::sphere2();
        assert_eq!(s2.dimension(), 3);
        assert_eq!(s2.manifold_dimension(), 2);
        assert!(s2.is_homogeneous());
    }
}
