use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::signals::{signal_norm_sq_closed, Window};
use crate::special::{complex_hermite_2d, factorial, neg_one_pow};
use crate::superosc::SuperoscParams;
use crate::transforms::MOYAL_FACTOR;
use crate::C64;
use std::f64::consts::PI;

/// `Σ_{j,k} C_j C_k e^{2ix(k-j)/n} e^{-(k-j)²/n²}`.
pub fn dan_double_sum(x: f64, p: &SuperoscParams) -> f64 {
    let n = p.n() as f64;
    let c = p.coefficients();
    let mut acc = C64::new(0.0, 0.0);
    for (j, cj) in c.iter().enumerate() {
        for (k, ck) in c.iter().enumerate() {
            let d = k as f64 - j as f64;
            acc += cj * ck * C64::from_polar((-(d * d) / (n * n)).exp(), 2.0 * x * d / n);
        }
    }
    acc.re
}

/// `π Σ_{j,k} C_j C_k e^{-2ix(j-k)/n - (k-j)²/n²}`, which equals
/// `‖φ‖² ‖S_n^{φ,x}‖²`; the plane norm `∬ |V_φ S_n^{φ,x}|²` is `2π` times
/// this value.
pub fn norm_sq_closed_gaussian(x: f64, p: &SuperoscParams) -> f64 {
    PI * dan_double_sum(x, p)
}

/// `φ_{n,a}(s) = Σ_ℓ C_ℓ e^{-2ℓ²/n² + (2ℓ/n)(s - ix)}`.
pub fn phi_na(x: f64, p: &SuperoscParams, s: f64) -> C64 {
    let n = p.n() as f64;
    p.coefficients()
        .iter()
        .enumerate()
        .map(|(l, c)| {
            let l = l as f64;
            c * C64::from_polar((-2.0 * l * l / (n * n) + 2.0 * l * s / n).exp(), -2.0 * l * x / n)
        })
        .sum()
}

/// `(1/√π) ∫ |φ_{n,a}(s)|² e^{-s²} ds` by quadrature.
pub fn phi_na_norm(x: f64, p: &SuperoscParams, quad: &QuadratureSpec) -> Result<f64> {
    let v = quad.integrate_real(|s| phi_na(x, p, s).norm_sqr() * (-s * s).exp())?;
    Ok(v / PI.sqrt())
}

/// `(-1)^m 2^{m+k} k! π Σ_{s,ℓ} C_s C_ℓ e^{-(s-ℓ)²/n²} e^{2i(s-ℓ)x/n} H_{m,m}(√2(s-ℓ)/n, √2(s-ℓ)/n)`,
/// which equals `‖h_k‖² ‖S_n^{h_m,x}‖²`.
///
/// The diagonal value `H_{m,m}(0, 0) = (-1)^m m!` is used directly. The
/// imaginary residue of the sum must stay below `1e-12` relative to its
/// magnitude.
pub fn norm_sq_closed_hermite(k: usize, m: usize, x: f64, p: &SuperoscParams) -> Result<f64> {
    let n = p.n() as f64;
    let c = p.coefficients();
    let mut acc = C64::new(0.0, 0.0);
    for (s, cs) in c.iter().enumerate() {
        for (l, cl) in c.iter().enumerate() {
            let d = s as f64 - l as f64;
            let h = if s == l {
                C64::new(neg_one_pow(m as i64) * factorial(m), 0.0)
            } else {
                let z = C64::new(2f64.sqrt() * d / n, 0.0);
                complex_hermite_2d(m, m, z, z)
            };
            acc += cs * cl * C64::from_polar((-(d * d) / (n * n)).exp(), 2.0 * d * x / n) * h;
        }
    }
    let scale = neg_one_pow(m as i64) * 2f64.powi((m + k) as i32) * factorial(k) * PI;
    let v = scale * acc;
    if v.im.abs() > 1e-12 * v.norm().max(1.0) {
        return Err(Error::NonFinite(format!(
            "Hermite norm sum has imaginary residue {}",
            v.im
        )));
    }
    Ok(v.re)
}

/// `∬ |V_g f|² = 2π ‖g‖² ‖f‖²` for `f = S_n^{h,x}` with signal window `h`.
pub fn stft_norm_sq_closed(g: &Window, h: &Window, x: f64, p: &SuperoscParams) -> Result<f64> {
    Ok(MOYAL_FACTOR * g.norm_sq() * signal_norm_sq_closed(h, x, p)?.value)
}
