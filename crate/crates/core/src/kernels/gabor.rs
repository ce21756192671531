use super::cross::cross_hermite_kernel;
use super::TFQuadruple;
use crate::error::{ensure_finite, Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::signals::{Window, WindowKind};
use crate::special::{factorial, laguerre};
use crate::superosc::SuperoscParams;
use crate::transforms::MOYAL_FACTOR;
use crate::C64;
use std::f64::consts::PI;

/// Default rule for `K_g(x, ω; u, η)`: covers both translated windows.
pub fn kernel_quadrature(g: &Window, q: &TFQuadruple) -> QuadratureSpec {
    QuadratureSpec::for_support(g.decay_radius(), q.x.abs().max(q.u.abs()))
}

/// `∫ e^{it(ω-η)} g(t - x) conj(g(t - u)) dt` by quadrature.
pub fn gabor_kernel_numeric(g: &Window, q: &TFQuadruple, quad: &QuadratureSpec) -> Result<C64> {
    let d = q.omega - q.eta;
    quad.integrate(|t| C64::from_polar(1.0, t * d) * g.eval(t - q.x) * g.eval(t - q.u).conj())
}

/// `√π e^{i(u+x)(ω-η)/2} e^{-(u-x)²/4 - (η-ω)²/4}`.
pub fn gabor_kernel_gaussian(q: &TFQuadruple) -> C64 {
    let d = q.omega - q.eta;
    let s = q.u - q.x;
    PI.sqrt() * C64::from_polar((-(s * s) / 4.0 - d * d / 4.0).exp(), (q.u + q.x) * d / 2.0)
}

/// Gaussian kernel times `L_n(((x-u)² + (ω-η)²)/2)`, as printed.
///
/// This is the kernel of the unit-norm-rescaled window `h_n / √(2^n n!)`.
pub fn gabor_kernel_hermite_printed(n: usize, q: &TFQuadruple) -> C64 {
    let r = ((q.x - q.u).powi(2) + (q.omega - q.eta).powi(2)) / 2.0;
    gabor_kernel_gaussian(q) * laguerre(n, r)
}

/// Factor relating the printed Hermite kernel to the kernel of `h_n`:
/// `‖h_n‖² / ‖h_0‖² = 2^n n!`.
pub fn hermite_kernel_calibration(n: usize) -> f64 {
    2f64.powi(n as i32) * factorial(n)
}

/// Kernel of the window `h_n`: `2^n n!` times the printed form.
pub fn gabor_kernel_hermite(n: usize, q: &TFQuadruple) -> C64 {
    hermite_kernel_calibration(n) * gabor_kernel_hermite_printed(n, q)
}

/// Ratio of the quadrature kernel of `h_n` to the printed closed form at a
/// reference quadruple; the oracle behind [`hermite_kernel_calibration`].
pub fn calibrate_hermite_kernel(n: usize, quad: &QuadratureSpec) -> Result<f64> {
    let q = TFQuadruple {
        x: 0.5,
        omega: 1.0,
        u: 0.0,
        eta: 0.0,
    };
    let printed = gabor_kernel_hermite_printed(n, &q);
    if printed.norm() < 1e-8 {
        return Err(Error::Domain(format!(
            "printed Hermite kernel of order {n} vanishes at the reference point"
        )));
    }
    let ratio = gabor_kernel_numeric(&Window::hermite(n), &q, quad)? / printed;
    if ratio.im.abs() > 1e-8 * ratio.norm() {
        return Err(Error::Contract(format!(
            "Hermite kernel calibration is not real: {ratio}"
        )));
    }
    Ok(ratio.re)
}

/// `K_g(x, ω; u, η)`: closed forms for Gaussian and Hermite windows,
/// quadrature for custom windows.
pub fn gabor_kernel(g: &Window, q: &TFQuadruple) -> Result<C64> {
    match g.kind() {
        WindowKind::Gaussian => Ok(gabor_kernel_gaussian(q)),
        WindowKind::Hermite(n) => Ok(gabor_kernel_hermite(*n, q)),
        WindowKind::Custom { .. } => gabor_kernel_numeric(g, q, &kernel_quadrature(g, q)),
    }
}

/// `Σ_j C_j K_g(x, ω_j; u, η)` with every kernel evaluated by quadrature.
pub fn stft_superosc_kernel_sum(
    g: &Window,
    x: f64,
    p: &SuperoscParams,
    u: f64,
    eta: f64,
    quad: &QuadratureSpec,
) -> Result<C64> {
    let mut acc = C64::new(0.0, 0.0);
    for (c, w) in p.terms() {
        acc += c * gabor_kernel_numeric(g, &TFQuadruple { x, omega: w, u, eta }, quad)?;
    }
    ensure_finite(acc, "kernel sum")
}

/// `V_g(S_n^{g,x})(u, η) = Σ_j C_j K_g(x, ω_j; u, η)`.
///
/// Gaussian and Hermite windows use closed kernels; custom windows use the
/// quadrature kernel.
pub fn stft_superosc_closed(g: &Window, x: f64, p: &SuperoscParams, u: f64, eta: f64) -> Result<C64> {
    let mut acc = C64::new(0.0, 0.0);
    for (c, w) in p.terms() {
        acc += c * gabor_kernel(g, &TFQuadruple { x, omega: w, u, eta })?;
    }
    ensure_finite(acc, "superoscillation STFT")
}

/// `V_g(M_a T_x g)(u, η) = K_g(x, a; u, η)`.
pub fn stft_superosc_limit(g: &Window, x: f64, a: f64, u: f64, eta: f64) -> Result<C64> {
    let q = TFQuadruple { x, omega: a, u, eta };
    match g.kind() {
        WindowKind::Hermite(m) => Ok(cross_hermite_kernel(*m, *m, &q)),
        _ => gabor_kernel(g, &q),
    }
}

/// `F_n(y, a)` recovered from `V_g(S_n^{g,x})` by the reconstruction formula:
/// `(1 / (2π ‖g‖² g(y-x))) ∬ V_g(S_n^{g,x})(u, η) e^{iηy} g(y-u) du dη`.
///
/// The `u` box is centred at `(x+y)/2` and the `η` box at the origin, both
/// with half-width `quad.radius()`.
pub fn stft_integral_representation(
    g: &Window,
    x: f64,
    y: f64,
    p: &SuperoscParams,
    quad2d: &QuadratureSpec,
) -> Result<C64> {
    let gy = g.eval(y - x);
    if gy.norm() < 1e-300 {
        return Err(Error::Domain(format!(
            "window vanishes at y - x = {}; the representation divides by g(y - x)",
            y - x
        )));
    }
    let r = quad2d.radius();
    let centre = (x + y) / 2.0;
    let ru = quad2d.rule_on(centre - r, centre + r);
    let reta = quad2d.rule_on(-r, r);
    let phases: Vec<C64> = reta.points.iter().map(|&e| C64::from_polar(1.0, e * y)).collect();
    let mut acc = C64::new(0.0, 0.0);
    for (&u, &wu) in ru.points.iter().zip(&ru.weights) {
        let gu = g.eval(y - u);
        if gu.norm() == 0.0 {
            continue;
        }
        let mut inner = C64::new(0.0, 0.0);
        for ((&eta, &we), phase) in reta.points.iter().zip(&reta.weights).zip(&phases) {
            inner += we * stft_superosc_closed(g, x, p, u, eta)? * phase;
        }
        acc += wu * gu * inner;
    }
    ensure_finite(acc / (MOYAL_FACTOR * g.norm_sq() * gy), "integral representation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::build_signal;
    use crate::superosc::f_n;
    use crate::transforms::{stft, stft_quadrature};

    fn quad() -> QuadratureSpec {
        QuadratureSpec::with_radius(22.0)
    }

    #[test]
    fn numeric_kernel_examples() {
        let g = Window::gaussian();
        let diag = TFQuadruple::new(0.7, -0.2, 0.7, -0.2).unwrap();
        assert!((gabor_kernel_numeric(&g, &diag, &quad()).unwrap() - PI.sqrt()).norm() < 1e-12);
        let h = Window::hermite(2);
        let q = TFQuadruple::new(0.3, 1.1, -0.8, 0.4).unwrap();
        let a = gabor_kernel_numeric(&h, &q, &quad()).unwrap();
        let b = gabor_kernel_numeric(&h, &q.swapped(), &quad()).unwrap();
        assert!((a - b.conj()).norm() < 1e-12);
        let q = TFQuadruple::new(0.0, 1.0, 0.5, 0.2).unwrap();
        let v = gabor_kernel_numeric(&g, &q, &quad()).unwrap();
        assert!((v - gabor_kernel_gaussian(&q)).norm() < 1e-9);
    }

    #[test]
    fn gaussian_kernel_examples() {
        let q = TFQuadruple::new(0.0, 0.0, 0.0, 0.0).unwrap();
        assert!((gabor_kernel_gaussian(&q).re - 1.772454).abs() < 1e-6);
        let q = TFQuadruple::new(1.0, 0.5, -0.3, 2.0).unwrap();
        let v = gabor_kernel_numeric(&Window::gaussian(), &q, &quad()).unwrap();
        assert!((v - gabor_kernel_gaussian(&q)).norm() < 1e-10);
        assert!(TFQuadruple::new(f64::NAN, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn hermite_kernel_calibration_matches_oracle() {
        let q = TFQuadruple::new(0.4, -0.6, 1.0, 0.9).unwrap();
        assert_eq!(gabor_kernel_hermite_printed(0, &q), gabor_kernel_gaussian(&q));
        let diag = TFQuadruple::new(0.3, 0.3, 0.3, 0.3).unwrap();
        assert!((gabor_kernel_hermite_printed(3, &diag) - PI.sqrt()).norm() < 1e-14);
        for n in 0..=4 {
            let c = calibrate_hermite_kernel(n, &quad()).unwrap();
            assert!((c / hermite_kernel_calibration(n) - 1.0).abs() < 1e-10, "n={n}: {c}");
            let v = gabor_kernel_numeric(&Window::hermite(n), &q, &quad()).unwrap();
            assert!((v - gabor_kernel_hermite(n, &q)).norm() < 1e-8 * hermite_kernel_calibration(n));
        }
    }

    #[test]
    fn superosc_stft_matches_quadrature() {
        let p = SuperoscParams::new(2.0, 6).unwrap();
        let g = Window::gaussian();
        let sig = build_signal(&g, 0.0, &p);
        let qq = stft_quadrature(&sig, &g, 1.0).unwrap();
        let v = stft(&sig, &g, 0.4, -0.7, &qq).unwrap();
        assert!((v - stft_superosc_closed(&g, 0.0, &p, 0.4, -0.7).unwrap()).norm() < 1e-8);
        let h = Window::hermite(1);
        let p = SuperoscParams::new(2.0, 4).unwrap();
        let sig = build_signal(&h, 0.0, &p);
        let qq = stft_quadrature(&sig, &h, 1.0).unwrap();
        let v = stft(&sig, &h, 0.0, 0.0, &qq).unwrap();
        assert!((v - stft_superosc_closed(&h, 0.0, &p, 0.0, 0.0).unwrap()).norm() < 1e-8);
        let sum = stft_superosc_kernel_sum(&h, 0.0, &p, 0.0, 0.0, &quad()).unwrap();
        assert!((v - sum).norm() < 1e-8);
    }

    #[test]
    fn single_term_and_custom_window() {
        let p = SuperoscParams::new(1.0, 1).unwrap();
        let g = Window::gaussian();
        let v = stft_superosc_closed(&g, 0.2, &p, -0.1, 0.3).unwrap();
        let k = gabor_kernel_gaussian(&TFQuadruple::new(0.2, 1.0, -0.1, 0.3).unwrap());
        assert!((v - k).norm() < 1e-15);
        let custom = Window::custom("sech", |t| C64::new(1.0 / t.cosh(), 0.0), 40.0).unwrap();
        let p = SuperoscParams::new(2.0, 3).unwrap();
        let sig = build_signal(&custom, 0.0, &p);
        let qq = stft_quadrature(&sig, &custom, 1.0).unwrap();
        let v = stft(&sig, &custom, 0.5, 0.2, &qq).unwrap();
        assert!((v - stft_superosc_closed(&custom, 0.0, &p, 0.5, 0.2).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn limit_examples() {
        let g = Window::gaussian();
        let v = stft_superosc_limit(&g, 0.0, 2.0, 0.0, 0.0).unwrap();
        assert!((v - PI.sqrt() * (-1.0f64).exp()).norm() < 1e-15);
        let h = Window::hermite(2);
        let q = TFQuadruple::new(0.3, 1.5, -0.2, 0.4).unwrap();
        let v = stft_superosc_limit(&h, q.x, q.omega, q.u, q.eta).unwrap();
        assert!((v - gabor_kernel_hermite(2, &q)).norm() < 1e-12);
        let err = |n| {
            let p = SuperoscParams::new(1.5, n).unwrap();
            let lim = stft_superosc_limit(&g, 0.0, 1.5, 0.3, 0.2).unwrap();
            (stft_superosc_closed(&g, 0.0, &p, 0.3, 0.2).unwrap() - lim).norm()
        };
        assert!(err(40) <= 0.6 * err(10));
    }

    #[test]
    fn integral_representation_examples() {
        let g = Window::gaussian();
        let p = SuperoscParams::new(2.0, 3).unwrap();
        let q2 = QuadratureSpec::new(14.0, 16, crate::quadrature::Scheme::CompositeSimpson).unwrap();
        let v = stft_integral_representation(&g, 0.0, 0.5, &p, &q2).unwrap();
        assert!((v - f_n(&p, 0.5)).norm() < 1e-6);
        let v = stft_integral_representation(&g, 0.3, 0.3, &p, &q2).unwrap();
        assert!((v - f_n(&p, 0.3)).norm() < 1e-6);
        let h1 = Window::hermite(1);
        assert!(matches!(
            stft_integral_representation(&h1, 0.2, 0.2, &p, &q2),
            Err(Error::Domain(_))
        ));
    }
}
