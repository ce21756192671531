use crate::error::{ensure_finite, Result};
use crate::special::factorial;
use crate::superosc::SuperoscParams;
use crate::C64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Reproducing kernel of the Fock space, `(1/π) e^{z w̄}`.
pub fn fock_kernel(z: C64, w: C64) -> C64 {
    (z * w.conj()).exp() / PI
}

/// Normalized reproducing kernel `k_w(z) = (1/√π) e^{z w̄ - |w|²/2}`.
pub fn normalized_fock_kernel(w: C64, z: C64) -> C64 {
    (z * w.conj() - w.norm_sqr() / 2.0).exp() / PI.sqrt()
}

/// `M_p^{-1} = e^{-η²/4 - (u+x)²/4 - i(u+x)η/2}`.
fn inverse_multiplier(x: f64, u: f64, eta: f64) -> C64 {
    let s = u + x;
    C64::from_polar((-(eta * eta) / 4.0 - s * s / 4.0).exp(), -s * eta / 2.0)
}

/// Gaussian-window STFT of `S_n^{φ,x}` through normalized Fock kernels:
/// `π e^{ux} M_p^{-1} Σ_j C_j k_{ω_j/√2}(p̄/√2)` with `p = η - i(u+x)`.
pub fn stft_superosc_fock_form(x: f64, p: &SuperoscParams, u: f64, eta: f64) -> Result<C64> {
    let pbar = C64::new(eta, u + x) * FRAC_1_SQRT_2;
    let mut acc = C64::new(0.0, 0.0);
    for (c, w) in p.terms() {
        acc += c * normalized_fock_kernel(C64::new(w * FRAC_1_SQRT_2, 0.0), pbar);
    }
    ensure_finite(PI * (u * x).exp() * inverse_multiplier(x, u, eta) * acc, "Fock form")
}

/// The Fock form as printed, `π e^{ux} M_p^{-1} Σ_j C_j k_{ω_j/2}(p̄)`.
pub fn stft_superosc_fock_form_printed(x: f64, p: &SuperoscParams, u: f64, eta: f64) -> Result<C64> {
    let pbar = C64::new(eta, u + x);
    let mut acc = C64::new(0.0, 0.0);
    for (c, w) in p.terms() {
        acc += c * normalized_fock_kernel(C64::new(w / 2.0, 0.0), pbar);
    }
    ensure_finite(PI * (u * x).exp() * inverse_multiplier(x, u, eta) * acc, "Fock form")
}

/// `W_{a+ib} e_m(z) = (1/√(m! π)) e^{-(a²+b²)/4 + iab/2} e^{z(a+ib)/√2} (z - (a-ib)/√2)^m`,
/// the Bargmann image of `M_b T_a` acting on the Fock basis element
/// `e_m(z) = z^m / √(m! π)`.
pub fn weyl_action_on_basis(a: f64, b: f64, m: usize, z: C64) -> C64 {
    let c = C64::new(a, b);
    let front = C64::from_polar((-(a * a + b * b) / 4.0).exp(), a * b / 2.0) / (factorial(m) * PI).sqrt();
    front * (z * c * FRAC_1_SQRT_2).exp() * (z - c.conj() * FRAC_1_SQRT_2).powu(m as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::stft_superosc_closed;
    use crate::quadrature::QuadratureSpec;
    use crate::signals::{FnWaveform, Window};
    use crate::special::hermite_function_normalized;
    use crate::transforms::{bargmann, bargmann_kernel_overlap};

    #[test]
    fn kernel_examples() {
        let z = C64::new(0.4, -1.2);
        assert!((fock_kernel(z, C64::new(0.0, 0.0)) - 1.0 / PI).norm() < 1e-15);
        let one = C64::new(1.0, 0.0);
        assert!((normalized_fock_kernel(one, one) - 0.5f64.exp() / PI.sqrt()).norm() < 1e-15);
        let (z, w) = (C64::new(0.5, 0.0), C64::new(0.3, 0.1));
        let q = QuadratureSpec::with_radius(20.0);
        let v = bargmann_kernel_overlap(z, w, &q).unwrap();
        assert!((v - fock_kernel(z, w)).norm() < 1e-10, "{v}");
    }

    #[test]
    fn fock_form_matches_gaussian_closed_form() {
        let p = SuperoscParams::new(2.0, 4).unwrap();
        let g = Window::gaussian();
        for &(x, u, eta) in &[(0.0, 0.3, -0.5), (0.7, -0.4, 1.1), (-1.2, 0.9, 0.2)] {
            let a = stft_superosc_fock_form(x, &p, u, eta).unwrap();
            let b = stft_superosc_closed(&g, x, &p, u, eta).unwrap();
            assert!((a - b).norm() < 1e-10, "{a} {b}");
        }
        let printed = stft_superosc_fock_form_printed(0.0, &p, 0.3, -0.5).unwrap();
        let closed = stft_superosc_closed(&g, 0.0, &p, 0.3, -0.5).unwrap();
        assert!((printed - closed).norm() > 1e-3);
    }

    #[test]
    fn fock_form_single_term() {
        let p = SuperoscParams::new(1.0, 1).unwrap();
        let (x, u, eta) = (0.4, 0.1, -0.3);
        let pbar = C64::new(eta, u + x) * FRAC_1_SQRT_2;
        let expected = PI
            * (u * x).exp()
            * inverse_multiplier(x, u, eta)
            * normalized_fock_kernel(C64::new(FRAC_1_SQRT_2, 0.0), pbar);
        assert!((stft_superosc_fock_form(x, &p, u, eta).unwrap() - expected).norm() < 1e-15);
    }

    #[test]
    fn weyl_action_examples() {
        let z = C64::new(0.2, 0.3);
        let e2 = z.powu(2) / (2.0 * PI).sqrt();
        assert!((weyl_action_on_basis(0.0, 0.0, 2, z) - e2).norm() < 1e-15);
        let (a, b, m) = (0.5, 1.0, 1);
        let psi = FnWaveform::new(
            move |t: f64| C64::from_polar(hermite_function_normalized(m, t - a), b * t),
            None,
        );
        let q = QuadratureSpec::with_radius(20.0);
        let v = bargmann(&psi, z, &q).unwrap();
        assert!((v - weyl_action_on_basis(a, b, m, z)).norm() < 1e-8);
    }
}
