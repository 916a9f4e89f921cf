//! Small dense complex matrices.
//!
//! Spectra hold one `d_ξ × d_ξ` block per representation with `d_ξ` a few
//! hundred at most, so a plain row-major buffer beats pulling in a full
//! linear-algebra stack.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        CMatrix { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim, "matrix rows must be square");
            data.extend(r);
        }
        CMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let brow = &other.data[k * d..(k + 1) * d];
                let orow = &mut out.data[i * d..(i + 1) * d];
                for j in 0..d {
                    orow[j] += a * brow[j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let d = self.dim;
        CMatrix::from_fn(d, |i, j| self.data[j * d + i].conj())
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Hilbert-Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn hs_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// Operator norm via power iteration on `A*A` (deterministic start).
    pub fn op_norm(&self) -> f64 {
        let d = self.dim;
        if d == 0 {
            return 0.0;
        }
        if d == 1 {
            return self.data[0].norm();
        }
        let mut v: Vec<Complex64> = (0..d)
            .map(|i| Complex64::new(1.0, (i as f64 + 1.0).sin()))
            .collect();
        let norm = |x: &[Complex64]| x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let n0 = norm(&v);
        v.iter_mut().for_each(|z| *z /= n0);
        let mut lambda = 0.0;
        for _ in 0..100 {
            // w = A v, u = A* w
            let mut w = vec![Complex64::new(0.0, 0.0); d];
            for i in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..d {
                    acc += self.data[i * d + j] * v[j];
                }
                w[i] = acc;
            }
            let mut u = vec![Complex64::new(0.0, 0.0); d];
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..d {
                    acc += self.data[i * d + j].conj() * w[i];
                }
                u[j] = acc;
            }
            let nu = norm(&u);
            if nu == 0.0 {
                return 0.0;
            }
            let next = nu.sqrt();
            u.iter_mut().for_each(|z| *z /= nu);
            if (next - lambda).abs() <= 1e-13 * next.max(1.0) {
                return next;
            }
            lambda = next;
            v = u;
        }
        lambda
    }

    /// `‖A A* − I‖_HS`, the unitarity defect.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.mul(&self.adjoint());
        prod.sub(&CMatrix::identity(self.dim)).hs_norm()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}
