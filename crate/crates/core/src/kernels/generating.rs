use super::cross::hermite_convolution_closed;
use crate::error::{Error, Result};
use crate::special::{complex_hermite_2d, factorial, hermite_function, i_pow, MAX_COMPLEX_HERMITE_ORDER};
use crate::C64;
use std::f64::consts::{PI, SQRT_2};

/// A truncated generating series and its closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratingCheck {
    pub lhs: C64,
    pub rhs: C64,
    /// The closed form exactly as printed; equals `rhs` where the printed
    /// identity holds.
    pub printed_rhs: C64,
}

impl GeneratingCheck {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }

    pub fn printed_residual(&self) -> f64 {
        (self.lhs - self.printed_rhs).norm()
    }
}

fn check_args(u: C64, v: C64, order: usize) -> Result<()> {
    if u.norm() > 1.0 || v.norm() > 1.0 {
        return Err(Error::Domain(format!(
            "generating variables must satisfy |u|, |v| <= 1, got {u} and {v}"
        )));
    }
    if order > MAX_COMPLEX_HERMITE_ORDER {
        return Err(Error::Domain(format!(
            "truncation order must be <= {MAX_COMPLEX_HERMITE_ORDER}, got {order}"
        )));
    }
    Ok(())
}

/// `Σ_{m,n ≤ K} H_{m,n}(z, w) u^m v^n / (m! n!)` against `e^{uw + vz - uv}`;
/// the printed closed form is `e^{uz + vw - uv}`.
pub fn complex_hermite_generating_sum(z: C64, w: C64, u: C64, v: C64, order: usize) -> Result<GeneratingCheck> {
    check_args(u, v, order)?;
    let mut lhs = C64::new(0.0, 0.0);
    for m in 0..=order {
        for n in 0..=order {
            lhs += complex_hermite_2d(m, n, z, w) * u.powu(m as u32) * v.powu(n as u32) / (factorial(m) * factorial(n));
        }
    }
    Ok(GeneratingCheck {
        lhs,
        rhs: (u * w + v * z - u * v).exp(),
        printed_rhs: complex_hermite_generating_sum_printed(z, w, u, v),
    })
}

/// `e^{uz + vw - uv}`.
pub fn complex_hermite_generating_sum_printed(z: C64, w: C64, u: C64, v: C64) -> C64 {
    (u * z + v * w - u * v).exp()
}

/// `Σ_{k,m ≤ K} u^k v^m / (2^{(k+m)/2} k! m!) (M_x h_k * M_x h_m)(λ)` against
/// `√π e^{-λ²/4 + λ(ix + (u+v)/√2)} e^{-uv}`.
pub fn generating_sum_check(x: f64, u: C64, v: C64, lambda: f64, order: usize) -> Result<GeneratingCheck> {
    check_args(u, v, order)?;
    let mut lhs = C64::new(0.0, 0.0);
    for k in 0..=order {
        for m in 0..=order {
            let w =
                u.powu(k as u32) * v.powu(m as u32) / (2f64.powf((k + m) as f64 / 2.0) * factorial(k) * factorial(m));
            lhs += w * hermite_convolution_closed(k, m, x, x, lambda);
        }
    }
    let rhs = PI.sqrt() * (-(lambda * lambda) / 4.0 + lambda * (C64::new(0.0, x) + (u + v) / SQRT_2) - u * v).exp();
    Ok(GeneratingCheck {
        lhs,
        rhs,
        printed_rhs: rhs,
    })
}

/// `Σ_{k,m ≤ K} u^k v^m / (2^{(k+m)/2} k! m!) (-i)^{k+m} h_k(λ-x) h_m(λ-x)`
/// against `e^{-uv - (x-λ)² + (u+v)²/2 + √2 i(x-λ)(u+v)}`; the printed
/// closed form carries an extra factor `2π`.
pub fn hermite_product_generating_check(x: f64, u: C64, v: C64, lambda: f64, order: usize) -> Result<GeneratingCheck> {
    check_args(u, v, order)?;
    let hs: Vec<f64> = (0..=order).map(|k| hermite_function(k, lambda - x)).collect();
    let mut lhs = C64::new(0.0, 0.0);
    for k in 0..=order {
        for m in 0..=order {
            let w =
                u.powu(k as u32) * v.powu(m as u32) / (2f64.powf((k + m) as f64 / 2.0) * factorial(k) * factorial(m));
            lhs += w * i_pow(-((k + m) as i64)) * hs[k] * hs[m];
        }
    }
    let d = x - lambda;
    let s = u + v;
    let rhs = (-u * v - d * d + s * s / 2.0 + C64::new(0.0, SQRT_2 * d) * s).exp();
    Ok(GeneratingCheck {
        lhs,
        rhs,
        printed_rhs: 2.0 * PI * rhs,
    })
}
