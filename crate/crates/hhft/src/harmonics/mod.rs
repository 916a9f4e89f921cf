//! Matrix coefficients of irreducible representations, the FFT kernel, and
//! band-exact quadrature grids.

pub mod fft;
pub mod gauss;
pub mod grid;
pub mod wigner;

pub use fft::{fft, FftDirection};
pub use gauss::gauss_legendre;
pub use grid::{build_grid, build_grid_with_cap, GridLayout, QuadratureGrid, DEFAULT_NODE_CAP};
pub use wigner::{wigner_d, wigner_stack, WignerBlock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::{DualPoint, GroupDescriptor, GroupElement, GroupKind, Quaternion};
use crate::linalg::CMatrix;

/// Sphere basis ordering: the K-invariant vector (m = 0) first, then
/// alternating `+1, -1, +2, -2, …` up to `±ℓ`. Row/column `j` of a sphere
/// spectrum block refers to `m_order(ℓ)[j]`.
pub fn sphere_m_order(l: i64) -> Vec<i64> {
    let mut order = Vec::with_capacity(2 * l as usize + 1);
    order.push(0);
    for m in 1..=l {
        order.push(m);
        order.push(-m);
    }
    order
}

/// Full Wigner-D matrix from a little-d block and the two z-angles:
/// `D_{ik} = e^{-i μ_i α} d_{ik} e^{-i μ_k γ}` with `μ_i = (m - 2i)/2`.
pub(crate) fn su2_matrix_from_block(block: &WignerBlock, alpha: f64, gamma: f64) -> CMatrix {
    let m = block.m;
    let d = block.dim();
    let mu = |i: usize| (m - 2 * i as i64) as f64 / 2.0;
    let row_phase: Vec<Complex64> = (0..d)
        .map(|i| Complex64::from_polar(1.0, -mu(i) * alpha))
        .collect();
    let col_phase: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(1.0, -mu(k) * gamma))
        .collect();
    CMatrix::from_fn(d, |i, k| row_phase[i] * block.get(i, k) * col_phase[k])
}

/// Wigner-D matrix of the SU(2) element `q` at twice-spin `m`, in the
/// weight-descending basis.
pub fn su2_rep(m: i64, q: &Quaternion) -> CMatrix {
    let (alpha, beta, gamma) = q.euler_zyz();
    let block = wigner_stack(m, beta).pop().expect("nonempty stack");
    su2_matrix_from_block(&block, alpha, gamma)
}

/// Representative rotation mapping the north pole to the point `p`.
pub(crate) fn sphere_point_representative(p: &[f64; 3]) -> Quaternion {
    let theta = p[2].clamp(-1.0, 1.0).acos();
    let phi = p[1].atan2(p[0]);
    Quaternion::from_euler_zyz(phi, theta, 0.0)
}

/// The `d_ξ × d_ξ` unitary matrix `ξ(x)`.
///
/// For the sphere, rotations give the full SO(3) representation matrix in
/// the invariant-first basis; a point is interpreted through its coset
/// representative.
pub fn rep_matrix(g: &GroupDescriptor, xi: &DualPoint, x: &GroupElement) -> Result<CMatrix> {
    let canonical = DualPoint::for_label(g, &xi.label)?;
    if canonical.dim != xi.dim {
        return Err(Error::argument(format!(
            "dual point dim {} disagrees with the label rule ({})",
            xi.dim, canonical.dim
        )));
    }
    match (g.kind, x) {
        (GroupKind::Torus(n), GroupElement::Torus(theta)) => {
            if theta.len() != n {
                return Err(Error::argument("torus element has wrong arity"));
            }
            let phase: f64 = xi
                .label
                .iter()
                .zip(theta)
                .map(|(&j, &t)| j as f64 * t)
                .sum();
            Ok(CMatrix::from_fn(1, |_, _| Complex64::from_polar(1.0, phase)))
        }
        (GroupKind::Su2, GroupElement::Su2(q)) => Ok(su2_rep(xi.label[0], q)),
        (GroupKind::Sphere2, GroupElement::SphereRotation(q)) => {
            Ok(sphere_rep(xi.label[0], q))
        }
        (GroupKind::Sphere2, GroupElement::SpherePoint(p)) => {
            Ok(sphere_rep(xi.label[0], &sphere_point_representative(p)))
        }
        _ => Err(Error::argument("element does not belong to this group")),
    }
}

/// SO(3) representation of degree `ℓ` in the invariant-first basis.
pub fn sphere_rep(l: i64, q: &Quaternion) -> CMatrix {
    let d_su2 = su2_rep(2 * l, q);
    let order = sphere_m_order(l);
    let idx = |m: i64| (l - m) as usize;
    CMatrix::from_fn(2 * l as usize + 1, |r, c| {
        d_su2[(idx(order[r]), idx(order[c]))]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{enumerate_dual, random_element, random_quaternion};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn su2_fundamental(q: &Quaternion) -> CMatrix {
        // U = wI - i(x sx + y sy + z sz)
        CMatrix::from_rows(vec![
            vec![
                Complex64::new(q.w, -q.z),
                Complex64::new(-q.y, -q.x),
            ],
            vec![
                Complex64::new(q.y, -q.x),
                Complex64::new(q.w, q.z),
            ],
        ])
    }

    #[test]
    fn torus_character() {
        let g = GroupDescriptor::torus(1).unwrap();
        let xi = DualPoint::torus(&[3]);
        let x = GroupElement::Torus(vec![0.7]);
        let m = rep_matrix(&g, &xi, &x).unwrap();
        assert!((m[(0, 0)] - Complex64::from_polar(1.0, 2.1)).norm() < 1e-15);
    }

    #[test]
    fn identity_maps_to_identity() {
        let cases: Vec<(GroupDescriptor, DualPoint)> = vec![
            (GroupDescriptor::torus(2).unwrap(), DualPoint::torus(&[2, -1])),
            (GroupDescriptor::su2(), DualPoint::su2(5)),
            (GroupDescriptor::sphere2(), DualPoint::sphere(3)),
        ];
        for (g, xi) in cases {
            let m = rep_matrix(&g, &xi, &g.identity_shift()).unwrap();
            assert!(m.sub(&CMatrix::identity(xi.dim)).hs_norm() < 1e-12);
        }
    }

    #[test]
    fn spin_half_matches_quaternion_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..64 {
            let q = random_quaternion(&mut rng);
            let via_rep = su2_rep(1, &q);
            let direct = su2_fundamental(&q);
            assert!(
                via_rep.max_abs_diff(&direct) < 1e-12,
                "{q:?}: {via_rep:?} vs {direct:?}"
            );
        }
    }

    #[test]
    fn su2_homomorphism_quaternion_oracle() {
        let g = GroupDescriptor::su2();
        let xi = DualPoint::su2(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..32 {
            let a = random_quaternion(&mut rng);
            let b = random_quaternion(&mut rng);
            let prod = rep_matrix(&g, &xi, &GroupElement::Su2(a.mul(&b))).unwrap();
            let split = rep_matrix(&g, &xi, &GroupElement::Su2(a))
                .unwrap()
                .mul(&rep_matrix(&g, &xi, &GroupElement::Su2(b)).unwrap());
            assert!(prod.sub(&split).hs_norm() < 1e-9);
        }
    }

    #[test]
    fn unitary_and_adjoint_inverse_through_band_64() {
        let g = GroupDescriptor::su2();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for &m in &[1i64, 2, 16, 33, 126] {
            let xi = DualPoint::su2(m);
            assert!(xi.weight <= 64.5);
            let x = random_element(&g, 100 + m as u64, None).unwrap();
            let mat = rep_matrix(&g, &xi, &x).unwrap();
            assert!(mat.unitarity_defect() < 1e-10, "m={m}");
            let inv = rep_matrix(&g, &xi, &x.inverse()).unwrap();
            assert!(inv.sub(&mat.adjoint()).hs_norm() < 1e-10, "m={m}");
            let _ = &mut rng;
        }
        // sphere reps too
        let s2 = GroupDescriptor::sphere2();
        let xi = DualPoint::sphere(9);
        let x = random_element(&s2, 7, None).unwrap();
        let mat = rep_matrix(&s2, &xi, &x).unwrap();
        assert!(mat.unitarity_defect() < 1e-10);
        assert!(
            rep_matrix(&s2, &xi, &x.inverse())
                .unwrap()
                .sub(&mat.adjoint())
                .hs_norm()
                < 1e-10
        );
    }

    #[test]
    fn casimir_eigenvalue_by_discrete_laplacian() {
        // Apply sum_i d^2/dt^2 f(x exp(t X_i)) with unit-speed rotation
        // generators to matrix coefficients; the eigenvalue must be
        // -l(l+1) in the metric fixed by the distance convention.
        let g = GroupDescriptor::su2();
        let eps = 1e-3;
        let axes = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        for (m, want) in [(1i64, 0.75), (2, 2.0)] {
            let xi = DualPoint::su2(m);
            assert_eq!(xi.lambda_sq, want);
            let x = random_element(&g, 31 + m as u64, None).unwrap();
            let at = |e: &GroupElement| rep_matrix(&g, &xi, e).unwrap();
            let center = at(&x);
            let mut acc = CMatrix::zeros(xi.dim);
            for axis in axes {
                for sgn in [1.0, -1.0] {
                    let step = GroupElement::Su2(Quaternion::from_axis_angle(axis, sgn * eps));
                    acc = acc.add(&at(&x.compose(&step)));
                }
            }
            // acc - 6*center over eps^2 approximates the Laplacian
            let lap = acc.sub(&center.scale(Complex64::new(6.0, 0.0)))
                .scale(Complex64::new(1.0 / (eps * eps), 0.0));
            let expected = center.scale(Complex64::new(-want, 0.0));
            let rel = lap.sub(&expected).hs_norm() / expected.hs_norm();
            assert!(rel < 1e-4, "m={m}: relative defect {rel}");
        }
    }

    #[test]
    fn haar_sampling_kills_matrix_coefficients() {
        // Monte-Carlo orthogonality: the Haar mean of every entry of the
        // twice-spin-2 representation vanishes within 3 sigma.
        let g = GroupDescriptor::su2();
        let xi = DualPoint::su2(2);
        let mut rng = ChaCha8Rng::seed_from_u64(12345);
        let trials = 100_000usize;
        let mut mean = CMatrix::zeros(3);
        for _ in 0..trials {
            let q = random_quaternion(&mut rng);
            mean = mean.add(&su2_rep(2, &q));
        }
        mean = mean.scale(Complex64::new(1.0 / trials as f64, 0.0));
        // Var of each entry component is at most 1/d = 1/3.
        let three_sigma = 3.0 * (1.0 / (3.0 * trials as f64)).sqrt();
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    mean[(i, j)].norm() < 2.0 * three_sigma,
                    "entry ({i},{j}) mean {} vs 3sigma {three_sigma}",
                    mean[(i, j)].norm()
                );
            }
        }
    }

    #[test]
    fn grid_integrates_matrix_coefficients_to_band() {
        for (g, band) in [
            (GroupDescriptor::torus(1).unwrap(), 6.0),
            (GroupDescriptor::su2(), 4.0),
            (GroupDescriptor::sphere2(), 4.0),
        ] {
            let grid = build_grid(&g, band).unwrap();
            let homogeneous = g.is_homogeneous();
            for xi in enumerate_dual(&g, band).unwrap() {
                let mut acc = CMatrix::zeros(xi.dim);
                for (node, &w) in grid.nodes.iter().zip(&grid.weights) {
                    acc = acc.add(
                        &rep_matrix(&g, &xi, node)
                            .unwrap()
                            .scale(Complex64::new(w, 0.0)),
                    );
                }
                // On G/K only the invariant column consists of functions on
                // the quotient; other columns of the coset representative
                // are not class-I coefficients.
                let residual = if homogeneous {
                    (0..xi.dim)
                        .map(|j| acc[(j, 0)].norm_sqr())
                        .sum::<f64>()
                        .sqrt()
                } else {
                    acc.hs_norm()
                };
                if xi.lambda_sq == 0.0 {
                    assert!(
                        (acc[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12,
                        "{}: trivial rep",
                        g.code()
                    );
                } else {
                    assert!(
                        residual < 1e-10,
                        "{} xi={:?}: residual {residual}",
                        g.code(),
                        xi.label,
                    );
                }
            }
        }
    }

    #[test]
    fn discrete_peter_weyl_gram_su2() {
        // Gram matrix of sqrt(d) xi_ij over the band-4 grid is the identity.
        let g = GroupDescriptor::su2();
        let band = 4.0;
        let grid = build_grid(&g, band).unwrap();
        let dual = enumerate_dual(&g, band).unwrap();
        // flatten all basis functions: per node, per (xi, i, j)
        let mut funcs: Vec<Vec<Complex64>> = Vec::new();
        for xi in &dual {
            let scale = (xi.dim as f64).sqrt();
            let mut per_entry: Vec<Vec<Complex64>> =
                vec![Vec::with_capacity(grid.len()); xi.dim * xi.dim];
            for node in &grid.nodes {
                let m = rep_matrix(&g, xi, node).unwrap();
                for i in 0..xi.dim {
                    for j in 0..xi.dim {
                        per_entry[i * xi.dim + j].push(m[(i, j)] * scale);
                    }
                }
            }
            funcs.extend(per_entry);
        }
        let n = funcs.len();
        for a in 0..n {
            for b in a..n {
                let inner: Complex64 = grid
                    .weights
                    .iter()
                    .enumerate()
                    .map(|(k, &w)| funcs[a][k] * funcs[b][k].conj() * w)
                    .sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!(
                    (inner - Complex64::new(expect, 0.0)).norm() < 1e-9,
                    "gram ({a},{b}) = {inner}"
                );
            }
        }
    }

    #[test]
    fn sphere_rep_basis_order() {
        let order = sphere_m_order(2);
        assert_eq!(order, vec![0, 1, -1, 2, -2]);
        // rotation about z acts diagonally with phases e^{-i m t}
        let q = Quaternion::from_euler_zyz(0.9, 0.0, 0.0);
        let rep = sphere_rep(2, &q);
        for (r, &m) in order.iter().enumerate() {
            let expect = Complex64::from_polar(1.0, -(m as f64) * 0.9);
            assert!((rep[(r, r)] - expect).norm() < 1e-12);
        }
    }
}
