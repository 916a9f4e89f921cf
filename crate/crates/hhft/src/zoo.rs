//! Test functions and synthetic spectra with analytically known
//! Hölder/Dini-Lipschitz regularity.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::{enumerate_dual, DualPoint, GroupDescriptor, GroupKind};
use crate::linalg::CMatrix;
use crate::transform::{Spectrum, SpectrumEntry};

/// Parsed function family with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    HardyLittlewood { alpha: f64 },
    Lacunary { alpha: f64 },
    PrescribedTail { alpha: f64, d: f64 },
    HeatKernel { t: f64 },
    Zonal { s: f64 },
    Constant,
    SingleMode { label: Vec<i64> },
}

/// A function specification: family, band, and seed. The CLI grammar is
/// `family:key=value,key=value` (e.g. `hardy:alpha=0.5`, `tail:alpha=0.5,d=1`,
/// `heat:t=0.1`); band and seed are carried separately.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    pub family: Family,
    pub band: f64,
    pub seed: u64,
}

/// A synthesized spectrum plus any construction warnings.
#[derive(Debug, Clone)]
pub struct ZooFunction {
    pub spectrum: Spectrum,
    pub warnings: Vec<String>,
}

pub fn parse_family(text: &str) -> Result<Family> {
    let (name, rest) = match text.split_once(':') {
        Some((n, r)) => (n, r),
        None => (text, ""),
    };
    let mut params: Vec<(String, String)> = Vec::new();
    if !rest.is_empty() {
        for piece in rest.split(',') {
            let (k, v) = piece.split_once('=').ok_or_else(|| {
                Error::config(format!("malformed function parameter {piece:?}"))
            })?;
            params.push((k.trim().to_string(), v.trim().to_string()));
        }
    }
    let get_f64 = |params: &[(String, String)], key: &str| -> Result<f64> {
        params
            .iter()
            .find(|(k, _)| k == key)
            .ok_or_else(|| Error::config(format!("missing parameter {key:?} for {name:?}")))?
            .1
            .parse::<f64>()
            .map_err(|_| Error::config(format!("parameter {key:?} is not a number")))
    };
    let reject_unknown = |params: &[(String, String)], allowed: &[&str]| -> Result<()> {
        for (k, _) in params {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::config(format!(
                    "unknown parameter {k:?} for family {name:?}"
                )));
            }
        }
        Ok(())
    };
    match name {
        "hardy" | "hardy_littlewood" => {
            reject_unknown(&params, &["alpha"])?;
            Ok(Family::HardyLittlewood {
                alpha: get_f64(&params, "alpha")?,
            })
        }
        "lacunary" => {
            reject_unknown(&params, &["alpha"])?;
            Ok(Family::Lacunary {
                alpha: get_f64(&params, "alpha")?,
            })
        }
        "tail" | "prescribed_tail" => {
            reject_unknown(&params, &["alpha", "d"])?;
            let d = if params.iter().any(|(k, _)| k == "d") {
                get_f64(&params, "d")?
            } else {
                0.0
            };
            Ok(Family::PrescribedTail {
                alpha: get_f64(&params, "alpha")?,
                d,
            })
        }
        "heat" | "heat_kernel" => {
            reject_unknown(&params, &["t"])?;
            Ok(Family::HeatKernel {
                t: get_f64(&params, "t")?,
            })
        }
        "zonal" => {
            reject_unknown(&params, &["s"])?;
            Ok(Family::Zonal {
                s: get_f64(&params, "s")?,
            })
        }
        "constant" => {
            reject_unknown(&params, &[])?;
            Ok(Family::Constant)
        }
        "single_mode" | "mode" => {
            reject_unknown(&params, &["j", "j1", "j2", "j3", "m", "l"])?;
            let mut label = Vec::new();
            for key in ["j", "j1", "j2", "j3", "m", "l"] {
                if let Some((_, v)) = params.iter().find(|(k, _)| k == key) {
                    label.push(v.parse::<i64>().map_err(|_| {
                        Error::config(format!("parameter {key:?} is not an integer"))
                    })?);
                }
            }
            if label.is_empty() {
                return Err(Error::config("single_mode needs a label (j=, m= or l=)"));
            }
            Ok(Family::SingleMode { label })
        }
        other => Err(Error::config(format!("unknown function family {other:?}"))),
    }
}

/// Build the spectrum for a family on a group.
pub fn build(g: &GroupDescriptor, spec: &FunctionSpec) -> Result<ZooFunction> {
    match &spec.family {
        Family::HardyLittlewood { alpha } => {
            if g.kind != GroupKind::Torus(1) {
                return Err(Error::argument("hardy_littlewood lives on t1"));
            }
            hardy_littlewood(*alpha, spec.band).map(plain)
        }
        Family::Lacunary { alpha } => {
            if g.kind != GroupKind::Torus(1) {
                return Err(Error::argument("lacunary lives on t1"));
            }
            lacunary(*alpha, spec.band).map(plain)
        }
        Family::PrescribedTail { alpha, d } => {
            prescribed_tail(g, *alpha, *d, spec.band, spec.seed)
        }
        Family::HeatKernel { t } => heat_kernel(g, *t, spec.band).map(plain),
        Family::Zonal { s } => {
            if g.kind != GroupKind::Sphere2 {
                return Err(Error::argument("zonal lives on s2"));
            }
            zonal(*s, spec.band).map(plain)
        }
        Family::Constant => constant(g, spec.band).map(plain),
        Family::SingleMode { label } => single_mode(g, label, spec.band).map(plain),
    }
}

fn plain(spectrum: Spectrum) -> ZooFunction {
    ZooFunction {
        spectrum,
        warnings: Vec::new(),
    }
}

/// The sharpness witness: `f̂(n) = e^{i n log n} n^{-(1/2+α)}` for `n ≥ 1`,
/// one-sided exactly as printed.
pub fn hardy_littlewood(alpha: f64, band: f64) -> Result<Spectrum> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::argument(format!(
            "hardy_littlewood needs alpha in (0,1), got {alpha}"
        )));
    }
    let g = GroupDescriptor::torus(1).unwrap();
    let n_max = crate::groups::torus_mode_max(band);
    let mut entries = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let nf = n as f64;
        let value = Complex64::from_polar(nf.powf(-(0.5 + alpha)), nf * nf.ln());
        entries.push(SpectrumEntry {
            point: DualPoint::torus(&[n]),
            matrix: CMatrix::from_fn(1, |_, _| value),
        });
    }
    Spectrum::from_entries(g, band, entries)
}

/// Lacunary witness: `f̂(2^k) = 2^{-αk}` for `⟨2^k⟩ ≤ Λ`.
pub fn lacunary(alpha: f64, band: f64) -> Result<Spectrum> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::argument(format!(
            "lacunary needs alpha in (0,1], got {alpha}"
        )));
    }
    let g = GroupDescriptor::torus(1).unwrap();
    let n_max = crate::groups::torus_mode_max(band);
    let mut entries = Vec::new();
    let mut k = 0u32;
    while (1i64 << k) <= n_max {
        entries.push(SpectrumEntry {
            point: DualPoint::torus(&[1i64 << k]),
            matrix: CMatrix::from_fn(1, |_, _| {
                Complex64::new(2.0f64.powf(-alpha * k as f64), 0.0)
            }),
        });
        k += 1;
    }
    Spectrum::from_entries(g, band, entries)
}

/// Spectrum whose tail sum tracks `N^{-2α} (log(e+N))^{2d}`.
///
/// For decaying targets the construction is an exact staircase: the energy
/// dropped at each distinct weight makes `tail_sum(w) = target(w)` on the
/// enumerated lattice. In the non-decaying regimes (α = 0, d ≥ 0) energy is
/// assigned per dyadic shell instead and the result is flagged as not
/// square-summable in the limit.
pub fn prescribed_tail(
    g: &GroupDescriptor,
    alpha: f64,
    d: f64,
    band: f64,
    seed: u64,
) -> Result<ZooFunction> {
    if alpha < 0.0 {
        return Err(Error::argument("prescribed_tail needs alpha >= 0"));
    }
    if alpha == 0.0 && d < 0.0 {
        return Err(Error::argument(
            "alpha > 0 is required when d < 0 (tails are non-monotone at small N otherwise)",
        ));
    }
    let dual = enumerate_dual(g, band)?;
    let target = |w: f64| w.powf(-2.0 * alpha) * (std::f64::consts::E + w).ln().powf(2.0 * d);

    // group dual points by distinct weight, ascending
    let mut shells: Vec<(f64, Vec<usize>)> = Vec::new();
    for (i, p) in dual.iter().enumerate() {
        match shells.last_mut() {
            Some((w, idxs)) if (*w - p.weight).abs() < 1e-12 => idxs.push(i),
            _ => shells.push((p.weight, vec![i])),
        }
    }

    let mut warnings = Vec::new();
    let mut shell_energy = vec![0.0; shells.len()];
    let non_l2 = alpha == 0.0;
    if non_l2 {
        // per dyadic shell: every octave carries target(lower edge)
        warnings.push(
            "alpha = 0: constant-per-octave shell energy; the spectrum is not square-summable \
             in the limit and is meaningful only as truncated at this band"
                .to_string(),
        );
        let octave = |w: f64| w.log2().floor() as i64;
        let mut members: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
        for (si, (w, _)) in shells.iter().enumerate() {
            members.entry(octave(*w)).or_default().push(si);
        }
        for (oct, sis) in members {
            let edge = 2.0f64.powi(oct as i32);
            let e = target(edge) / sis.len() as f64;
            for si in sis {
                shell_energy[si] = e;
            }
        }
    } else {
        for i in 0..shells.len() {
            let t_here = target(shells[i].0);
            let t_next = if i + 1 < shells.len() {
                target(shells[i + 1].0)
            } else {
                0.0
            };
            shell_energy[i] = (t_here - t_next).max(0.0);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries: Vec<Option<SpectrumEntry>> = vec![None; dual.len()];
    for ((_, idxs), energy) in shells.iter().zip(&shell_energy) {
        let per_point = energy / idxs.len() as f64;
        for &i in idxs {
            let point = dual[i].clone();
            let d_xi = point.dim as f64;
            let hs = (per_point / d_xi).sqrt();
            let rows = if g.is_homogeneous() { 1 } else { point.dim };
            let cols = point.dim;
            let per_entry = hs / ((rows * cols) as f64).sqrt();
            let matrix = CMatrix::from_fn(point.dim, |r, _| {
                if r < rows {
                    Complex64::from_polar(
                        per_entry,
                        rng.gen_range(0.0..2.0 * std::f64::consts::PI),
                    )
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            entries[i] = Some(SpectrumEntry { point, matrix });
        }
    }
    let spectrum = Spectrum::from_entries(
        *g,
        band,
        entries.into_iter().map(|e| e.expect("filled")).collect(),
    )?;
    Ok(ZooFunction { spectrum, warnings })
}

/// `f̂(ξ) = e^{-t λ²_ξ} I_{d_ξ}` (first entry only on the sphere).
pub fn heat_kernel(g: &GroupDescriptor, t: f64, band: f64) -> Result<Spectrum> {
    if !(t > 0.0) {
        return Err(Error::argument("heat kernel needs t > 0"));
    }
    let entries = enumerate_dual(g, band)?
        .into_iter()
        .map(|point| {
            let scale = (-t * point.lambda_sq).exp();
            let matrix = if g.is_homogeneous() {
                let mut m = CMatrix::zeros(point.dim);
                m[(0, 0)] = Complex64::new(scale, 0.0);
                m
            } else {
                CMatrix::identity(point.dim).scale(Complex64::new(scale, 0.0))
            };
            SpectrumEntry { point, matrix }
        })
        .collect();
    Spectrum::from_entries(*g, band, entries)
}

/// Zonal sphere spectrum: only the invariant entry, `f̂(ℓ)_{00} = ⟨ξ⟩^{-s}`.
pub fn zonal(s: f64, band: f64) -> Result<Spectrum> {
    let g = GroupDescriptor::sphere2();
    let entries = enumerate_dual(&g, band)?
        .into_iter()
        .map(|point| {
            let mut matrix = CMatrix::zeros(point.dim);
            matrix[(0, 0)] = Complex64::new(point.weight.powf(-s), 0.0);
            SpectrumEntry { point, matrix }
        })
        .collect();
    Spectrum::from_entries(g, band, entries)
}

/// The constant function 1: unit coefficient at the trivial representation.
pub fn constant(g: &GroupDescriptor, band: f64) -> Result<Spectrum> {
    let trivial = enumerate_dual(g, 1.0)?.remove(0);
    let mut matrix = CMatrix::zeros(trivial.dim);
    matrix[(0, 0)] = Complex64::new(1.0, 0.0);
    Spectrum::from_entries(
        *g,
        band,
        vec![SpectrumEntry {
            point: trivial,
            matrix,
        }],
    )
}

/// A single representation carrying the identity block (invariant entry on
/// the sphere).
pub fn single_mode(g: &GroupDescriptor, label: &[i64], band: f64) -> Result<Spectrum> {
    let point = DualPoint::for_label(g, label)?;
    if point.weight > band {
        return Err(Error::argument(format!(
            "mode {label:?} exceeds the band {band}"
        )));
    }
    let matrix = if g.is_homogeneous() {
        let mut m = CMatrix::zeros(point.dim);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m
    } else {
        CMatrix::identity(point.dim)
    };
    Spectrum::from_entries(*g, band, vec![SpectrumEntry { point, matrix }])
}

/// Random band-limited spectrum (Gaussian-free uniform entries), class-I
/// support pattern on homogeneous spaces. Used as generic test input.
pub fn random_spectrum(g: &GroupDescriptor, band: f64, seed: u64) -> Spectrum {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::build_grid;
    use crate::lipschitz::{fit_decay, FitModel};
    use crate::spaces::tail_sum;
    use crate::transform::{forward, inverse};
    use std::sync::Arc;

    #[test]
    fn hardy_littlewood_first_coefficients() {
        let s = hardy_littlewood(0.25, 64.0).unwrap();
        let c1 = s.get(&[1]).unwrap().matrix[(0, 0)];
        assert!((c1 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let c2 = s.get(&[2]).unwrap().matrix[(0, 0)];
        assert!((c2.norm() - 2.0f64.powf(-0.75)).abs() < 1e-15);
        assert!(s.get(&[-1]).is_none() || s.get(&[-1]).unwrap().matrix.hs_norm() == 0.0);
        assert!(hardy_littlewood(1.5, 64.0).is_err());
    }

    #[test]
    fn hardy_littlewood_tail_window() {
        let alpha = 0.5;
        let s = hardy_littlewood(alpha, 65536.0).unwrap();
        for n in [64.0, 256.0, 1024.0, 4096.0] {
            let scaled = tail_sum(&s, n) * n.powf(2.0 * alpha) * (2.0 * alpha);
            assert!((0.9..=1.1).contains(&scaled), "N={n}: {scaled}");
        }
    }

    #[test]
    fn lacunary_geometric_tail_closed_form() {
        let alpha = 0.7;
        let s = lacunary(alpha, 16384.0).unwrap();
        for m in [3u32, 5, 8] {
            let n = 2.0f64.powi(m as i32);
            let got = tail_sum(&s, n);
            // modes up to 2^13 are present
            let kmax = 13u32;
            let exact: f64 = (m..=kmax)
                .map(|k| 2.0f64.powf(-2.0 * alpha * k as f64))
                .sum();
            assert!((got - exact).abs() <= 1e-15 * exact.max(1.0));
            let closed = 2.0f64.powf(-2.0 * alpha * m as f64)
                * (1.0 - 2.0f64.powf(-2.0 * alpha * (kmax - m + 1) as f64))
                / (1.0 - 2.0f64.powf(-2.0 * alpha));
            assert!((got - closed).abs() <= 1e-12 * closed);
        }
        // alpha = 1 tail slope
        let s1 = lacunary(1.0, 16384.0).unwrap();
        let pts: Vec<(f64, f64)> = (3..11)
            .map(|j| {
                let n = 2.0f64.powi(j) * 1.4142135623730951;
                (n, tail_sum(&s1, n))
            })
            .collect();
        let fit = fit_decay(&pts, FitModel::Power).unwrap();
        assert!((fit.exponent_b + 2.0).abs() < 0.05, "b = {}", fit.exponent_b);
    }

    #[test]
    fn prescribed_tail_recovers_exponents() {
        // construction self-test on T1 at a large band
        for (alpha, d) in [(0.5, 0.0), (0.5, 1.0), (1.0, -1.0)] {
            let z = prescribed_tail(
                &GroupDescriptor::torus(1).unwrap(),
                alpha,
                d,
                16384.0,
                7,
            )
            .unwrap();
            assert!(z.warnings.is_empty());
            let pts: Vec<(f64, f64)> = (0..24)
                .map(|i| {
                    let n = 64.0 * (8192.0f64 / 64.0).powf(i as f64 / 23.0);
                    (n, tail_sum(&z.spectrum, n))
                })
                .collect();
            let fit = fit_decay(&pts, FitModel::PowerLog).unwrap();
            assert!(
                (fit.exponent_b + 2.0 * alpha).abs() < 0.05,
                "alpha={alpha} d={d}: b {}",
                fit.exponent_b
            );
            assert!(
                (fit.log_exponent_d - 2.0 * d).abs() < 0.2,
                "alpha={alpha} d={d}: dhat {}",
                fit.log_exponent_d
            );
        }
        // su2 at a large band
        let z = prescribed_tail(&GroupDescriptor::su2(), 0.5, 0.0, 128.0, 3).unwrap();
        let pts: Vec<(f64, f64)> = (0..16)
            .map(|i| {
                let n = 4.0 * (64.0f64 / 4.0).powf(i as f64 / 15.0);
                (n, tail_sum(&z.spectrum, n))
            })
            .collect();
        let fit = fit_decay(&pts, FitModel::Power).unwrap();
        assert!((fit.exponent_b + 1.0).abs() < 0.05, "b {}", fit.exponent_b);
    }

    #[test]
    fn prescribed_tail_flags_and_determinism() {
        let g = GroupDescriptor::torus(1).unwrap();
        let z = prescribed_tail(&g, 0.0, 0.0, 256.0, 1).unwrap();
        assert!(!z.warnings.is_empty());
        assert!(prescribed_tail(&g, 0.0, -1.0, 256.0, 1).is_err());
        let a = prescribed_tail(&GroupDescriptor::su2(), 0.4, 0.5, 32.0, 9).unwrap();
        let b = prescribed_tail(&GroupDescriptor::su2(), 0.4, 0.5, 32.0, 9).unwrap();
        assert_eq!(
            a.spectrum.to_json_string().unwrap(),
            b.spectrum.to_json_string().unwrap()
        );
    }

    #[test]
    fn heat_kernel_trivial_and_plancherel() {
        let g = GroupDescriptor::su2();
        let band = 6.0;
        let s = heat_kernel(&g, 0.3, band).unwrap();
        assert!(
            (s.get(&[0]).unwrap().matrix[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15
        );
        let grid = Arc::new(build_grid(&g, band).unwrap());
        let f = inverse(&s, &grid).unwrap();
        let closed: f64 = s
            .entries()
            .iter()
            .map(|e| {
                let d = e.point.dim as f64;
                d * d * (-2.0 * 0.3 * e.point.lambda_sq).exp()
            })
            .sum();
        assert!((f.l2_norm().powi(2) - closed).abs() / closed < 1e-9);
    }

    #[test]
    fn zonal_support_and_tail_slope() {
        let s0 = zonal(0.0, 3.0).unwrap();
        assert_eq!(s0.entries().len(), 3);
        for e in s0.entries() {
            assert!((e.matrix[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
            for i in 1..e.point.dim {
                for j in 0..e.point.dim {
                    assert_eq!(e.matrix[(i, j)], Complex64::new(0.0, 0.0));
                }
            }
        }
        // tail slope: d * |fhat|^2 = (2l+1) w^{-2s} per degree, so the tail
        // decays like N^{2-2s} (shell correction = manifold dimension).
        // Window stays well below the band so truncation cannot bias it.
        let s = zonal(2.0, 512.0).unwrap();
        let pts: Vec<(f64, f64)> = (2..=6)
            .map(|j| {
                let n = 2.0f64.powi(j) * 1.3;
                (n, tail_sum(&s, n))
            })
            .collect();
        let fit = fit_decay(&pts, FitModel::Power).unwrap();
        let direct: f64 = s
            .entries()
            .iter()
            .filter(|e| e.point.weight >= 16.0)
            .map(|e| e.point.dim as f64 * e.matrix.hs_norm_sqr())
            .sum();
        assert!((direct - tail_sum(&s.clone(), 16.0)).abs() < 1e-15);
        assert!((fit.exponent_b + 2.0).abs() < 0.1, "b {}", fit.exponent_b);
    }

    #[test]
    fn every_family_roundtrips_at_own_band() {
        let cases: Vec<(GroupDescriptor, Spectrum)> = vec![
            (
                GroupDescriptor::torus(1).unwrap(),
                hardy_littlewood(0.5, 24.0).unwrap(),
            ),
            (
                GroupDescriptor::torus(1).unwrap(),
                lacunary(0.5, 24.0).unwrap(),
            ),
            (
                GroupDescriptor::su2(),
                prescribed_tail(&GroupDescriptor::su2(), 0.5, 0.5, 8.0, 2)
                    .unwrap()
                    .spectrum,
            ),
            (
                GroupDescriptor::sphere2(),
                prescribed_tail(&GroupDescriptor::sphere2(), 0.4, 0.0, 8.0, 2)
                    .unwrap()
                    .spectrum,
            ),
            (GroupDescriptor::su2(), heat_kernel(&GroupDescriptor::su2(), 0.2, 8.0).unwrap()),
            (GroupDescriptor::sphere2(), zonal(1.0, 8.0).unwrap()),
            (
                GroupDescriptor::torus(2).unwrap(),
                constant(&GroupDescriptor::torus(2).unwrap(), 4.0).unwrap(),
            ),
            (
                GroupDescriptor::torus(1).unwrap(),
                single_mode(&GroupDescriptor::torus(1).unwrap(), &[2], 4.0).unwrap(),
            ),
        ];
        for (g, s) in cases {
            let grid = Arc::new(build_grid(&g, s.band).unwrap());
            let f = inverse(&s, &grid).unwrap();
            let back = forward(&f, s.band).unwrap();
            let rel = back.relative_distance(&s);
            assert!(rel < 1e-9, "{}: roundtrip {rel}", g.code());
        }
    }

    #[test]
    fn family_grammar() {
        assert_eq!(
            parse_family("hardy:alpha=0.5").unwrap(),
            Family::HardyLittlewood { alpha: 0.5 }
        );
        assert_eq!(
            parse_family("tail:alpha=0.5,d=1").unwrap(),
            Family::PrescribedTail { alpha: 0.5, d: 1.0 }
        );
        assert_eq!(parse_family("heat:t=0.1").unwrap(), Family::HeatKernel { t: 0.1 });
        assert_eq!(parse_family("constant").unwrap(), Family::Constant);
        assert_eq!(
            parse_family("mode:m=4").unwrap(),
            Family::SingleMode { label: vec![4] }
        );
        assert!(parse_family("hardy:beta=0.5").is_err());
        assert!(parse_family("warp:alpha=1").is_err());
        assert!(parse_family("heat:t").is_err());
    }
}
