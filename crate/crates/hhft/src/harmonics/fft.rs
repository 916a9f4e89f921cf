//! Radix-2 FFT kernel plus a Bluestein wrapper for the arbitrary (odd)
//! transform lengths produced by the torus quadrature grids.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FftDirection {
    Forward,
    Inverse,
}

/// Radix-2 iterative transform. Forward is unscaled,
/// `y[t] = Σ_c v[c] e^{-2πi t c / N}`; inverse carries the `1/N` factor.
pub fn fft(v: &[Complex64], direction: FftDirection) -> Result<Vec<Complex64>> {
    let n = v.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::argument(format!(
            "fft length must be a power of two, got {n}"
        )));
    }
    let mut buf = v.to_vec();
    let sign = match direction {
        FftDirection::Forward => -1.0,
        FftDirection::Inverse => 1.0,
    };
    radix2_in_place(&mut buf, sign);
    if direction == FftDirection::Inverse {
        let scale = 1.0 / n as f64;
        buf.iter_mut().for_each(|z| *z *= scale);
    }
    Ok(buf)
}

fn radix2_in_place(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    if n <= 1 {
        return;
    }
    // bit-reversal permutation
    let shift = (n - 1).leading_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> shift;
        if i < j {
            buf.swap(i, j);
        }
    }
    let mut m = 2;
    while m <= n {
        let step = sign * 2.0 * PI / m as f64;
        let w_m: Vec<Complex64> = (0..m / 2)
            .map(|k| Complex64::from_polar(1.0, step * k as f64))
            .collect();
        for start in (0..n).step_by(m) {
            for k in 0..m / 2 {
                let e = buf[start + k];
                let o = buf[start + k + m / 2] * w_m[k];
                buf[start + k] = e + o;
                buf[start + k + m / 2] = e - o;
            }
        }
        m <<= 1;
    }
}

/// Unscaled DFT of any length: `y[t] = Σ_c v[c] e^{sign·2πi t c / N}`.
/// Powers of two go straight to the radix-2 kernel; other lengths use
/// Bluestein's chirp-z reduction onto it.
pub(crate) fn dft_any(v: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = v.len();
    if n <= 1 {
        return v.to_vec();
    }
    if n.is_power_of_two() {
        let mut buf = v.to_vec();
        radix2_in_place(&mut buf, sign);
        return buf;
    }
    // chirp phase pi*k^2/n computed modulo 2*pi with exact integer reduction
    let chirp = |k: usize| -> Complex64 {
        let kk = (k as u128 * k as u128) % (2 * n as u128);
        Complex64::from_polar(1.0, sign * PI * kk as f64 / n as f64)
    };
    let m = (2 * n - 1).next_power_of_two();
    let mut a = vec![Complex64::new(0.0, 0.0); m];
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    for c in 0..n {
        a[c] = v[c] * chirp(c);
        let bc = chirp(c).conj();
        b[c] = bc;
        if c > 0 {
            b[m - c] = bc;
        }
    }
    radix2_in_place(&mut a, -1.0);
    radix2_in_place(&mut b, -1.0);
    for i in 0..m {
        a[i] *= b[i];
    }
    radix2_in_place(&mut a, 1.0);
    let scale = 1.0 / m as f64;
    (0..n).map(|t| chirp(t) * a[t] * scale).collect()
}
