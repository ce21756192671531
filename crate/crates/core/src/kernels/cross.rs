use super::TFQuadruple;
use crate::error::{ensure_finite, Result};
use crate::special::{binomial, complex_hermite_2d, i_pow, neg_one_pow};
use crate::superosc::SuperoscParams;
use crate::C64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

fn sqrt2_pow(k: usize) -> f64 {
    2f64.powf(k as f64 / 2.0)
}

/// Gaussian envelope shared by the cross-window kernels:
/// `e^{-(ω-η)²/4 + i(u+x)(ω-η)/2 - (x-u)²/4}`.
fn cross_envelope(q: &TFQuadruple) -> C64 {
    let d = q.omega - q.eta;
    let s = q.x - q.u;
    C64::from_polar((-(d * d) / 4.0 - s * s / 4.0).exp(), (q.u + q.x) * d / 2.0)
}

/// `α = (u - x + i(ω - η)) / √2`.
fn cross_alpha(q: &TFQuadruple) -> C64 {
    C64::new(q.u - q.x, q.omega - q.eta) * FRAC_1_SQRT_2
}

/// `V_{h_k}(M_ω T_x h_m)(u, η)
///   = √π (-1)^k 2^{(k+m)/2} e^{-(ω-η)²/4 + i(u+x)(ω-η)/2 - (x-u)²/4} H_{k,m}(α, ᾱ)`.
pub(crate) fn cross_hermite_kernel(k: usize, m: usize, q: &TFQuadruple) -> C64 {
    let alpha = cross_alpha(q);
    PI.sqrt()
        * neg_one_pow(k as i64)
        * sqrt2_pow(k + m)
        * cross_envelope(q)
        * complex_hermite_2d(k, m, alpha, alpha.conj())
}

/// `V_{h_k}(S_n^{h_m,x})(u, η) = Σ_j C_j V_{h_k}(M_{ω_j} T_x h_m)(u, η)`.
pub fn stft_superosc_cross_hermite(k: usize, m: usize, x: f64, p: &SuperoscParams, u: f64, eta: f64) -> Result<C64> {
    let mut acc = C64::new(0.0, 0.0);
    for (c, w) in p.terms() {
        acc += c * cross_hermite_kernel(k, m, &TFQuadruple { x, omega: w, u, eta });
    }
    ensure_finite(acc, "cross-window Hermite STFT")
}

/// The cross-window closed form as printed, with sign `(-1)^m` and the
/// polynomial `H_{k,m}(α_j, ᾱ_j)` evaluated per term.
///
/// Differs from [`stft_superosc_cross_hermite`] by `(-1)^{k+m}`.
pub fn stft_superosc_cross_hermite_printed(
    k: usize,
    m: usize,
    x: f64,
    p: &SuperoscParams,
    u: f64,
    eta: f64,
) -> Result<C64> {
    let sign = neg_one_pow(m as i64) * neg_one_pow(k as i64);
    Ok(sign * stft_superosc_cross_hermite(k, m, x, p, u, eta)?)
}

/// `V_{h_k}(M_a T_x h_m)(u, η)`, the `n → ∞` limit of
/// [`stft_superosc_cross_hermite`].
pub fn cross_hermite_limit(k: usize, m: usize, x: f64, a: f64, u: f64, eta: f64) -> C64 {
    cross_hermite_kernel(k, m, &TFQuadruple { x, omega: a, u, eta })
}

/// The limit as printed, with sign `(-1)^m`.
pub fn cross_hermite_limit_printed(k: usize, m: usize, x: f64, a: f64, u: f64, eta: f64) -> C64 {
    neg_one_pow((k + m) as i64) * cross_hermite_limit(k, m, x, a, u, eta)
}

/// `I_{k,m}` by its defining sum, in terms of `d = x - u`:
/// `Σ_ℓ 2^{(k+ℓ)/2} i^{k+ℓ} C(m,ℓ) (2d)^{m-ℓ} H_{k,ℓ}((λ+id)/√2, (λ+id)/√2)`.
///
/// Polynomial in `d` and `λ`, so complex arguments are accepted.
pub fn i_km_series_complex(k: usize, m: usize, d: C64, lambda: C64) -> C64 {
    let z = (lambda + C64::i() * d) * FRAC_1_SQRT_2;
    let mut acc = C64::new(0.0, 0.0);
    for l in 0..=m {
        acc += sqrt2_pow(k + l)
            * i_pow((k + l) as i64)
            * binomial(m, l)
            * (2.0 * d).powu((m - l) as u32)
            * complex_hermite_2d(k, l, z, z);
    }
    acc
}

/// Compact form `(-1)^m 2^{(k+m)/2} H_{k,m}((-d-iλ)/√2, (-d+iλ)/√2)` with
/// `d = x - u`.
pub fn i_km_closed_complex(k: usize, m: usize, d: C64, lambda: C64) -> C64 {
    let il = C64::i() * lambda;
    let z = (-d - il) * FRAC_1_SQRT_2;
    let w = (-d + il) * FRAC_1_SQRT_2;
    neg_one_pow(m as i64) * sqrt2_pow(k + m) * complex_hermite_2d(k, m, z, w)
}

/// `I_{k,m}(x, u, λ)` by its defining sum.
pub fn i_km_series(k: usize, m: usize, x: f64, u: f64, lambda: f64) -> C64 {
    i_km_series_complex(k, m, C64::new(x - u, 0.0), C64::new(lambda, 0.0))
}

/// `I_{k,m}(x, u, λ) = (-1)^m 2^{(k+m)/2} H_{k,m}((u-x-iλ)/√2, (u-x+iλ)/√2)`.
pub fn i_km_closed(k: usize, m: usize, x: f64, u: f64, lambda: f64) -> C64 {
    i_km_closed_complex(k, m, C64::new(x - u, 0.0), C64::new(lambda, 0.0))
}

/// The compact form as printed, with arguments `((u-x+iλ)/√2, (u-x-iλ)/√2)`.
///
/// The two argument orders give complex conjugate values, so this agrees
/// with [`i_km_series`] only when `k = m` or `λ = 0`.
pub fn i_km_closed_printed(k: usize, m: usize, x: f64, u: f64, lambda: f64) -> C64 {
    let z = C64::new(u - x, lambda) * FRAC_1_SQRT_2;
    neg_one_pow(m as i64) * sqrt2_pow(k + m) * complex_hermite_2d(k, m, z, z.conj())
}

/// Gaussian prefactor `√π e^{-λ²/4 + iλ(x+u)/2} e^{-(x-u)²/4}`.
fn product_prefactor(x: f64, u: f64, lambda: f64) -> C64 {
    let s = x - u;
    PI.sqrt() * C64::from_polar((-(lambda * lambda) / 4.0 - s * s / 4.0).exp(), lambda * (x + u) / 2.0)
}

/// `∫ e^{itλ} h_k(t-x) h_m(t-u) dt = √π e^{-λ²/4 + iλ(x+u)/2} e^{-(x-u)²/4} I_{k,m}(x, u, λ)`.
pub fn hermite_product_integral(k: usize, m: usize, x: f64, u: f64, lambda: f64) -> C64 {
    product_prefactor(x, u, lambda) * i_km_series(k, m, x, u, lambda)
}

/// `(M_x h_k * M_u h_m)(λ) = (-i)^{k+m} √π e^{-λ²/4 + iλ(x+u)/2} e^{-(x-u)²/4} I_{k,m}(x, u, λ)`
/// with `I_{k,m}` from its defining sum.
pub fn hermite_convolution_series(k: usize, m: usize, x: f64, u: f64, lambda: f64) -> C64 {
    i_pow(-((k + m) as i64)) * hermite_product_integral(k, m, x, u, lambda)
}

/// `(M_x h_k * M_u h_m)(λ)
///   = √π i^{m-k} 2^{(k+m)/2} e^{-λ²/4 + iλ(x+u)/2} e^{-(x-u)²/4} H_{k,m}((u-x-iλ)/√2, (u-x+iλ)/√2)`.
pub fn hermite_convolution_closed(k: usize, m: usize, x: f64, u: f64, lambda: f64) -> C64 {
    let z = C64::new(u - x, -lambda) * FRAC_1_SQRT_2;
    product_prefactor(x, u, lambda)
        * i_pow(m as i64 - k as i64)
        * sqrt2_pow(k + m)
        * complex_hermite_2d(k, m, z, z.conj())
}

/// The shifted convolution as printed, with arguments
/// `((u-x+iλ)/√2, (u-x-iλ)/√2)`.
pub fn hermite_convolution_closed_printed(k: usize, m: usize, x: f64, u: f64, lambda: f64) -> C64 {
    let z = C64::new(u - x, lambda) * FRAC_1_SQRT_2;
    product_prefactor(x, u, lambda)
        * i_pow(m as i64 - k as i64)
        * sqrt2_pow(k + m)
        * complex_hermite_2d(k, m, z, z.conj())
}

/// `(h_k * h_m)(λ) = √π 2^{(k+m)/2} e^{-λ²/4} H_{k,m}(λ/√2, λ/√2)`.
pub fn hermite_convolution_centered(k: usize, m: usize, lambda: f64) -> C64 {
    let z = C64::new(lambda * FRAC_1_SQRT_2, 0.0);
    PI.sqrt() * sqrt2_pow(k + m) * (-(lambda * lambda) / 4.0).exp() * complex_hermite_2d(k, m, z, z)
}

/// `(M_x h_k * M_x h_m)(λ) = √π 2^{(k+m)/2} e^{-λ²/4 + iλx} H_{k,m}(λ/√2, λ/√2)`.
pub fn hermite_convolution_same_shift(k: usize, m: usize, x: f64, lambda: f64) -> C64 {
    C64::from_polar(1.0, lambda * x) * hermite_convolution_centered(k, m, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureSpec;
    use crate::signals::{build_signal, Shifted, Signal, Window};
    use crate::special::hermite_function;
    use crate::transforms::{convolve, stft, stft_quadrature};

    fn quad() -> QuadratureSpec {
        QuadratureSpec::with_radius(24.0)
    }

    fn conv_quadrature(k: usize, m: usize, x: f64, u: f64, lambda: f64) -> C64 {
        let hk = Window::hermite(k);
        let hm = Window::hermite(m);
        convolve(&Shifted::new(&hk, 0.0, x), &Shifted::new(&hm, 0.0, u), lambda, &quad()).unwrap()
    }

    #[test]
    fn cross_kernel_matches_quadrature() {
        for &(k, m) in &[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 3)] {
            let hk = Window::hermite(k);
            let f = Signal::limit(Window::hermite(m), 0.4, 0.7);
            let v = stft(&f, &hk, -0.3, 0.2, &quad()).unwrap();
            let c = cross_hermite_limit(k, m, 0.4, 0.7, -0.3, 0.2);
            assert!((v - c).norm() < 1e-9, "({k},{m}): {v} vs {c}");
        }
    }

    #[test]
    fn cross_superosc_matches_quadrature() {
        for &(k, m) in &[(0, 0), (1, 0), (1, 1), (2, 1)] {
            let p = SuperoscParams::new(2.0, 4).unwrap();
            let hk = Window::hermite(k);
            let sig = build_signal(&Window::hermite(m), 0.5, &p);
            let q = stft_quadrature(&sig, &hk, 1.0).unwrap();
            let v = stft(&sig, &hk, 0.3, -0.4, &q).unwrap();
            let c = stft_superosc_cross_hermite(k, m, 0.5, &p, 0.3, -0.4).unwrap();
            assert!((v - c).norm() < 1e-7, "({k},{m})");
            let printed = stft_superosc_cross_hermite_printed(k, m, 0.5, &p, 0.3, -0.4).unwrap();
            let expected = if (k + m) % 2 == 0 { c } else { -c };
            assert!((printed - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn cross_limit_examples() {
        let v = cross_hermite_limit(0, 0, 0.0, 2.0, 0.0, 0.0);
        assert!((v - PI.sqrt() * (-1.0f64).exp()).norm() < 1e-15);
        assert_eq!(cross_hermite_limit_printed(0, 0, 0.0, 2.0, 0.0, 0.0), v);
        let err = |n| {
            let p = SuperoscParams::new(1.5, n).unwrap();
            let lim = cross_hermite_limit(1, 2, 0.2, 1.5, 0.3, 0.2);
            (stft_superosc_cross_hermite(1, 2, 0.2, &p, 0.3, 0.2).unwrap() - lim).norm()
        };
        assert!(err(40) <= 0.6 * err(10));
    }

    #[test]
    fn i_km_examples() {
        assert!((i_km_series(0, 0, 0.3, 0.1, 0.7) - 1.0).norm() < 1e-15);
        assert!((i_km_closed(0, 0, 0.3, 0.1, 0.7) - 1.0).norm() < 1e-15);
        let s = i_km_series(3, 2, 0.4, -0.2, 1.1);
        let c = i_km_closed(3, 2, 0.4, -0.2, 1.1);
        assert!((s - c).norm() < 1e-10 * s.norm().max(1.0));
        let printed = i_km_closed_printed(3, 2, 0.4, -0.2, 1.1);
        assert!((printed - s).norm() > 1e-3);
        assert!((i_km_closed_printed(2, 2, 0.4, -0.2, 1.1) - i_km_series(2, 2, 0.4, -0.2, 1.1)).norm() < 1e-10);
    }

    #[test]
    fn i_km_polynomial_identity_at_complex_points() {
        let pts = [
            (C64::new(0.3, -0.7), C64::new(1.2, 0.4)),
            (C64::new(-1.1, 0.2), C64::new(-0.5, -0.9)),
            (C64::new(0.0, 1.3), C64::new(0.8, 0.0)),
        ];
        for k in 0..=6 {
            for m in 0..=6 {
                for &(d, l) in &pts {
                    let s = i_km_series_complex(k, m, d, l);
                    let c = i_km_closed_complex(k, m, d, l);
                    assert!((s - c).norm() <= 1e-10 * s.norm().max(1.0), "({k},{m}) {s} {c}");
                }
            }
        }
    }

    #[test]
    fn product_integral_matches_quadrature() {
        let (k, m, x, u, l) = (2, 1, 0.3, 0.0, 0.9);
        let v = quad()
            .integrate(|t| C64::from_polar(1.0, t * l) * hermite_function(k, t - x) * hermite_function(m, t - u))
            .unwrap();
        assert!((v - hermite_product_integral(k, m, x, u, l)).norm() < 1e-8);
    }

    #[test]
    fn convolution_examples() {
        assert!((hermite_convolution_closed(0, 0, 0.0, 0.0, 0.0) - PI.sqrt()).norm() < 1e-14);
        let a = hermite_convolution_closed(1, 2, 0.0, 0.0, 1.0);
        let b = hermite_convolution_centered(1, 2, 1.0);
        assert!((a - b).norm() < 1e-12);
        let v = conv_quadrature(1, 1, 0.5, -0.3, 0.8);
        assert!((v - hermite_convolution_closed(1, 1, 0.5, -0.3, 0.8)).norm() < 1e-8);
        for &(k, m, x, u, l) in &[(1, 2, 0.5, -0.3, 0.8), (3, 0, -0.2, 0.6, -1.4), (2, 3, 0.1, 0.1, 2.0)] {
            let v = conv_quadrature(k, m, x, u, l);
            assert!((v - hermite_convolution_closed(k, m, x, u, l)).norm() < 1e-8);
            assert!((v - hermite_convolution_series(k, m, x, u, l)).norm() < 1e-8);
        }
        let v = conv_quadrature(2, 1, 0.7, 0.7, 1.3);
        assert!((v - hermite_convolution_same_shift(2, 1, 0.7, 1.3)).norm() < 1e-8);
        let printed = hermite_convolution_closed_printed(1, 2, 0.5, -0.3, 0.8);
        assert!((printed - conv_quadrature(1, 2, 0.5, -0.3, 0.8)).norm() > 1e-3);
    }
}
