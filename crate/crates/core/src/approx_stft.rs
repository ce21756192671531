//! STFT of the approximating sequence `φ_{ψ,n,a}(t) = Σ_j C_j ψ(t + ω_j)`
//! through the ambiguity function and through 2D-complex Hermite closed
//! forms, with the `n → ∞` limit `ψ(t + a)`.

use crate::error::{ensure_finite, Result};
use crate::quadrature::QuadratureSpec;
use crate::signals::{Support, Waveform, Window};
use crate::special::{complex_hermite_2d, factorial, neg_one_pow};
use crate::superosc::{f_n, SuperoscParams};
use crate::transforms::{ambiguity, fourier, stft};
use crate::C64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// The approximating sequence `φ_{ψ,n,a}` of a waveform `ψ`.
pub struct ApproximatingSignal<'a, W> {
    psi: W,
    params: &'a SuperoscParams,
}

impl<'a, W: Waveform> ApproximatingSignal<'a, W> {
    pub fn new(psi: W, params: &'a SuperoscParams) -> Self {
        Self { psi, params }
    }
}

impl<W: Waveform> Waveform for ApproximatingSignal<'_, W> {
    fn value(&self, t: f64) -> C64 {
        self.params.terms().map(|(c, w)| c * self.psi.value(t + w)).sum()
    }

    fn support(&self) -> Option<Support> {
        self.psi.support().map(|s| Support {
            center: s.center,
            radius: s.radius + 1.0,
        })
    }
}

/// `V_g(φ_{g,n,a})(u, η)` by direct quadrature.
pub fn stft_approx_numeric(g: &Window, p: &SuperoscParams, u: f64, eta: f64, quad: &QuadratureSpec) -> Result<C64> {
    stft(&ApproximatingSignal::new(g, p), g, u, eta, quad)
}

/// Default rule for `V_g(φ_{g,n,a})(u, ·)`.
pub fn approx_quadrature(g: &Window, u: f64) -> QuadratureSpec {
    QuadratureSpec::for_support(g.decay_radius(), u.abs() + 1.0)
}

/// `e^{-iuη/2} Σ_j C_j e^{iηω_j/2} A[g](u + ω_j, η)`.
pub fn stft_approx_via_ambiguity(
    g: &Window,
    p: &SuperoscParams,
    u: f64,
    eta: f64,
    quad: &QuadratureSpec,
) -> Result<C64> {
    let mut acc = C64::new(0.0, 0.0);
    for (c, w) in p.terms() {
        acc += c * C64::from_polar(1.0, eta * w / 2.0) * ambiguity(g, u + w, eta, quad)?;
    }
    ensure_finite(C64::from_polar(1.0, -u * eta / 2.0) * acc, "ambiguity route")
}

/// `z_j = ((u + ω_j) + iη) / √2`.
pub fn hermite_argument(u: f64, eta: f64, omega: f64) -> C64 {
    C64::new(u + omega, eta) * FRAC_1_SQRT_2
}

/// `e^{-iuη/2 - (u²+η²)/4} Σ_j C_j e^{-ω_j²/4 - (u-iη)ω_j/2} H(ω_j)` for a
/// per-term polynomial factor `H`.
fn hermite_sum<F: Fn(C64) -> C64>(p: &SuperoscParams, u: f64, eta: f64, poly: F) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (c, w) in p.terms() {
        let e = C64::new(-w * w / 4.0 - u * w / 2.0, eta * w / 2.0).exp();
        acc += c * e * poly(hermite_argument(u, eta, w));
    }
    C64::from_polar((-(u * u + eta * eta) / 4.0).exp(), -u * eta / 2.0) * acc
}

/// `V_{h_k}(φ_{h_m,n,a})(u, η)
///   = √π (-1)^k 2^{(k+m)/2} e^{-iuη/2 - (u²+η²)/4} Σ_j C_j e^{-ω_j²/4 - (u-iη)ω_j/2} H_{k,m}(z̄_j, z_j)`.
pub fn stft_approx_hermite_closed(k: usize, m: usize, p: &SuperoscParams, u: f64, eta: f64) -> Result<C64> {
    let front = PI.sqrt() * neg_one_pow(k as i64) * 2f64.powf((k + m) as f64 / 2.0);
    let v = front * hermite_sum(p, u, eta, |z| complex_hermite_2d(k, m, z.conj(), z));
    ensure_finite(v, "Hermite approximating STFT")
}

/// The closed form as printed, `√(π/k!) 2^{k/2} ... H_{k,m}(z_j, z̄_j)`.
///
/// Agrees with [`stft_approx_hermite_closed`] for `k = m = 0`. In general the
/// two differ by the constant `(-1)^k 2^{m/2} √(k!)` and by conjugated
/// polynomial arguments.
pub fn stft_approx_hermite_printed(k: usize, m: usize, p: &SuperoscParams, u: f64, eta: f64) -> Result<C64> {
    let front = (PI / factorial(k)).sqrt() * 2f64.powf(k as f64 / 2.0);
    let v = front * hermite_sum(p, u, eta, |z| complex_hermite_2d(k, m, z, z.conj()));
    ensure_finite(v, "Hermite approximating STFT")
}

/// `V_φ(φ(· + a))(u, η) = √π e^{-(u²+η²+a²)/4} e^{-(u-iη)a/2} e^{-iuη/2}`.
pub fn stft_approx_gaussian_limit(a: f64, u: f64, eta: f64) -> C64 {
    let e = C64::new(
        -(u * u + eta * eta + a * a) / 4.0 - u * a / 2.0,
        eta * a / 2.0 - u * eta / 2.0,
    );
    PI.sqrt() * e.exp()
}

/// `F(φ_{ψ,n,a})(λ)` by quadrature and `F(ψ)(λ) F_n(λ, a)`.
pub fn fourier_factorization<W: Waveform>(
    psi: &W,
    p: &SuperoscParams,
    lambda: f64,
    quad: &QuadratureSpec,
) -> Result<(C64, C64)> {
    let lhs = fourier(&ApproximatingSignal::new(psi, p), lambda, quad)?;
    let rhs = fourier(psi, lambda, quad)? * f_n(p, lambda);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::Shifted;
    use crate::superosc::supershift_probe;

    fn params(a: f64, n: usize) -> SuperoscParams {
        SuperoscParams::new(a, n).unwrap()
    }

    #[test]
    fn ambiguity_route_matches_quadrature() {
        let g = Window::gaussian();
        let p = params(2.0, 3);
        let (u, eta) = (0.4, -0.6);
        let q = approx_quadrature(&g, u);
        let a = stft_approx_via_ambiguity(&g, &p, u, eta, &q).unwrap();
        let b = stft_approx_numeric(&g, &p, u, eta, &q).unwrap();
        assert!((a - b).norm() < 1e-8, "{a} {b}");
        let h = Window::hermite(2);
        let q = approx_quadrature(&h, u);
        let a = stft_approx_via_ambiguity(&h, &p, u, eta, &q).unwrap();
        let b = stft_approx_numeric(&h, &p, u, eta, &q).unwrap();
        assert!((a - b).norm() < 1e-8);
    }

    #[test]
    fn ambiguity_route_special_cases() {
        let g = Window::gaussian();
        let one = params(1.0, 1);
        let (u, eta) = (0.3, 0.8);
        let q = approx_quadrature(&g, u);
        let v = stft_approx_via_ambiguity(&g, &one, u, eta, &q).unwrap();
        let expected = C64::from_polar(1.0, -u * eta / 2.0 + eta / 2.0) * ambiguity(&g, u + 1.0, eta, &q).unwrap();
        assert!((v - expected).norm() < 1e-14);
        let v = stft_approx_via_ambiguity(&g, &params(2.0, 4), 0.0, 0.0, &q).unwrap();
        assert!(v.im.abs() < 1e-12 * v.norm().max(1.0));
    }

    #[test]
    fn hermite_closed_matches_quadrature() {
        let p = params(2.0, 3);
        for k in 0..=3 {
            for m in 0..=3 {
                let hk = Window::hermite(k);
                let hm = Window::hermite(m);
                let (u, eta) = (0.3, -0.5);
                let q = approx_quadrature(&hk, u).covering(hm.decay_radius() + 10.0);
                let v = stft(&ApproximatingSignal::new(&hm, &p), &hk, u, eta, &q).unwrap();
                let c = stft_approx_hermite_closed(k, m, &p, u, eta).unwrap();
                assert!((v - c).norm() < 1e-8 * v.norm().max(1.0), "({k},{m}) {v} {c}");
            }
        }
    }

    #[test]
    fn gaussian_routes_agree() {
        let g = Window::gaussian();
        let p = params(2.0, 2);
        let (u, eta) = (0.3, 0.5);
        let a = stft_approx_via_ambiguity(&g, &p, u, eta, &approx_quadrature(&g, u)).unwrap();
        let b = stft_approx_hermite_closed(0, 0, &p, u, eta).unwrap();
        let c = stft_approx_hermite_printed(0, 0, &p, u, eta).unwrap();
        assert!((a - b).norm() < 1e-8 && (b - c).norm() < 1e-15);
    }

    #[test]
    fn printed_constant_differs_off_diagonal() {
        let p = params(2.0, 3);
        let a = stft_approx_hermite_closed(2, 1, &p, 0.3, -0.5).unwrap();
        let b = stft_approx_hermite_printed(2, 1, &p, 0.3, -0.5).unwrap();
        assert!((a - b).norm() > 1e-3);
    }

    #[test]
    fn hermite_arguments() {
        let z0 = hermite_argument(0.2, 0.7, 1.0);
        let z1 = hermite_argument(0.2, 0.7, -1.0);
        assert!((z0 - C64::new(1.2, 0.7) * FRAC_1_SQRT_2).norm() < 1e-15);
        assert!((z1 - C64::new(-0.8, 0.7) * FRAC_1_SQRT_2).norm() < 1e-15);
    }

    #[test]
    fn limit_closed_form_and_supershift() {
        let g = Window::gaussian();
        let (a, u, eta) = (1.5, 0.2, 0.1);
        let psi = Shifted::new(&g, -a, 0.0);
        let q = approx_quadrature(&g, a + u);
        let v = stft(&psi, &g, u, eta, &q).unwrap();
        let lim = stft_approx_gaussian_limit(a, u, eta);
        assert!((v - lim).norm() < 1e-8);
        let err = |n| (stft_approx_hermite_closed(0, 0, &params(a, n), u, eta).unwrap() - lim).norm();
        assert!(err(40) <= 0.5 * err(10), "{} {}", err(10), err(40));
        let p = params(a, 20);
        let probe = supershift_probe(|w| Ok(stft_approx_gaussian_limit(w, u, eta)), &p).unwrap();
        let closed = stft_approx_hermite_closed(0, 0, &p, u, eta).unwrap();
        assert!((probe - closed).norm() < 1e-12);
    }

    #[test]
    fn fourier_factorization_and_translation() {
        let g = Window::gaussian();
        let q = QuadratureSpec::with_radius(20.0);
        for n in 1..=4 {
            let p = params(2.0, n);
            for lambda in [-1.5, -0.4, 0.0, 0.7, 2.0] {
                let (l, r) = fourier_factorization(&g, &p, lambda, &q).unwrap();
                assert!((l - r).norm() < 1e-8);
            }
        }
        let p = params(2.0, 4);
        let (x, lambda) = (0.7, 0.4);
        let lhs = fourier(&ApproximatingSignal::new(Shifted::new(&g, x, 0.0), &p), lambda, &q).unwrap();
        let rhs = C64::from_polar(1.0, -x * lambda) * fourier(&ApproximatingSignal::new(&g, &p), lambda, &q).unwrap();
        assert!((lhs - rhs).norm() < 1e-9);
    }
}
