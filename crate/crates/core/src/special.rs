//! Scalar special functions: Hermite and Laguerre polynomials, 2D-complex
//! Hermite polynomials, the Jacobi theta function and the Gaussian integral.

use crate::error::{Error, Result};
use crate::C64;
use std::f64::consts::PI;

const FACTORIAL_TABLE_LEN: usize = 171;

const FACTORIALS: [f64; FACTORIAL_TABLE_LEN] = {
    let mut table = [1.0; FACTORIAL_TABLE_LEN];
    let mut i = 1;
    while i < FACTORIAL_TABLE_LEN {
        table[i] = table[i - 1] * i as f64;
        i += 1;
    }
    table
};

/// Largest order accepted by [`complex_hermite_2d`].
pub const MAX_COMPLEX_HERMITE_ORDER: usize = 32;

/// `n!` as a float, exact for `n ≤ 22` and correctly rounded up to `n = 170`.
pub fn factorial(n: usize) -> f64 {
    if n < FACTORIAL_TABLE_LEN {
        FACTORIALS[n]
    } else {
        f64::INFINITY
    }
}

/// Binomial coefficient `C(n, k)` as a float; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// `i^k` computed with quarter-turn arithmetic, exact for every integer `k`.
pub fn i_pow(k: i64) -> C64 {
    match k.rem_euclid(4) {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// `(-1)^k`.
pub fn neg_one_pow(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Physicists' Hermite polynomial `H_n(t)` by the three-term recurrence.
///
/// Orders up to 64 are supported; larger orders may overflow for large `|t|`.
pub fn hermite_polynomial(n: usize, t: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * t;
    for k in 1..n {
        let next = 2.0 * t * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Hermite function `h_n(t) = e^{-t²/2} H_n(t)`, not unit-normalized.
pub fn hermite_function(n: usize, t: f64) -> f64 {
    let envelope = (-0.5 * t * t).exp();
    if envelope == 0.0 {
        return 0.0;
    }
    envelope * hermite_polynomial(n, t)
}

/// Squared `L²` norm of `h_n`: `2^n n! √π`.
pub fn hermite_norm_sq(n: usize) -> f64 {
    2f64.powi(n as i32) * factorial(n) * PI.sqrt()
}

/// Unit-normalized Hermite function `h_n / ‖h_n‖`.
pub fn hermite_function_normalized(n: usize, t: f64) -> f64 {
    hermite_function(n, t) / hermite_norm_sq(n).sqrt()
}

/// Laguerre polynomial `L_n(x) = L_n^0(x)`.
pub fn laguerre(n: usize, x: f64) -> f64 {
    generalized_laguerre(n, 0, x)
}

/// Generalized Laguerre polynomial `L_n^α(x)` for integer `α ≥ 0`, by
/// `(k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}`.
pub fn generalized_laguerre(n: usize, alpha: usize, x: f64) -> f64 {
    let alpha = alpha as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// 2D-complex Hermite polynomial
/// `H_{k,l}(z, w) = Σ_j (-1)^j j! C(k,j) C(l,j) z^{l-j} w^{k-j}`.
///
/// Orders up to [`MAX_COMPLEX_HERMITE_ORDER`] are supported.
pub fn complex_hermite_2d(k: usize, l: usize, z: C64, w: C64) -> C64 {
    debug_assert!(k <= MAX_COMPLEX_HERMITE_ORDER && l <= MAX_COMPLEX_HERMITE_ORDER);
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..=k.min(l) {
        let coeff = neg_one_pow(j as i64) * factorial(j) * binomial(k, j) * binomial(l, j);
        acc += coeff * z.powu((l - j) as u32) * w.powu((k - j) as u32);
    }
    acc
}

/// Truncation order for [`theta`]: `ceil(sqrt(14 ln 10 / (π Im τ))) + 2`.
pub fn theta_truncation(tau: C64) -> usize {
    ((14.0 * std::f64::consts::LN_10 / (PI * tau.im)).sqrt().ceil() as usize) + 2
}

/// Jacobi theta function `θ(z, τ) = Σ_k e^{πik²τ + 2πikz}`.
///
/// The sum runs over `|k - k*| ≤ K` where `k*` is the index of the largest
/// term (zero for real `z`), so the neglected tail is below `1e-14` of the
/// peak term.
pub fn theta(z: C64, tau: C64) -> Result<C64> {
    if tau.im.is_nan() || tau.im <= 0.0 {
        return Err(Error::Domain(format!("theta requires Im(tau) > 0, got {}", tau.im)));
    }
    let big_k = theta_truncation(tau) as i64;
    let center = (-z.im / tau.im).round() as i64;
    let mut acc = C64::new(0.0, 0.0);
    for k in (center - big_k)..=(center + big_k) {
        let kf = k as f64;
        let exponent = C64::i() * PI * (kf * kf * tau + 2.0 * kf * z);
        acc += exponent.exp();
    }
    crate::error::ensure_finite(acc, "theta")
}

/// Gaussian integral `∫ e^{-αt² + wt} dt = (π/α)^{1/2} e^{w²/(4α)}`.
pub fn gaussian_integral(alpha: f64, w: C64) -> Result<C64> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::Domain(format!(
            "gaussian integral requires alpha > 0, got {alpha}"
        )));
    }
    Ok((PI / alpha).sqrt() * (w * w / (4.0 * alpha)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    fn hermite_explicit(n: usize, t: f64) -> f64 {
        (0..=n / 2)
            .map(|m| {
                neg_one_pow(m as i64) * factorial(n) / (factorial(m) * factorial(n - 2 * m))
                    * (2.0 * t).powi((n - 2 * m) as i32)
            })
            .sum()
    }

    fn laguerre_explicit(n: usize, alpha: usize, x: f64) -> f64 {
        (0..=n)
            .map(|i| neg_one_pow(i as i64) * binomial(n + alpha, n - i) * x.powi(i as i32) / factorial(i))
            .sum()
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(hermite_polynomial(0, 3.7), 1.0);
        assert_eq!(hermite_polynomial(1, 1.5), 3.0);
        assert_eq!(hermite_polynomial(2, 1.0), 2.0);
        assert_eq!(hermite_function(0, 0.0), 1.0);
        assert!(close(hermite_function(1, 1.0), 2.0 * (-0.5f64).exp(), 1e-15));
        assert!(close(2.0 * (-0.5f64).exp(), 1.213061, 1e-6));
    }

    #[test]
    fn hermite_recurrence_matches_explicit_sum() {
        for n in 0..=12 {
            for &t in &[-2.3, -0.4, 0.0, 0.9, 1.7] {
                let r = hermite_polynomial(n, t);
                let e = hermite_explicit(n, t);
                assert!(close(r, e, 1e-12), "n={n} t={t}: {r} vs {e}");
            }
        }
    }

    #[test]
    fn hermite_norm_by_riemann_sum() {
        let h = 1e-3;
        let s: f64 = (-12000..=12000)
            .map(|i| hermite_function(2, i as f64 * h).powi(2) * h)
            .sum();
        assert!(close(s, 8.0 * PI.sqrt(), 1e-10));
        assert!(close(hermite_norm_sq(2), 8.0 * PI.sqrt(), 1e-15));
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(0, 5.2), 1.0);
        assert!(close(laguerre(1, 2.0), -1.0, 1e-15));
        assert!(close(laguerre(2, 2.0), -1.0, 1e-15));
    }

    #[test]
    fn laguerre_recurrence_matches_explicit_sum() {
        for n in 0..=10 {
            for alpha in 0..=4 {
                for &x in &[0.0, 0.3, 1.5, 4.2] {
                    let r = generalized_laguerre(n, alpha, x);
                    let e = laguerre_explicit(n, alpha, x);
                    assert!(close(r, e, 1e-11), "n={n} a={alpha} x={x}: {r} vs {e}");
                }
            }
        }
    }

    #[test]
    fn complex_hermite_examples() {
        let z = C64::new(0.3, -1.2);
        let w = C64::new(2.0, 0.5);
        assert_eq!(complex_hermite_2d(0, 0, z, w), C64::new(1.0, 0.0));
        let h11 = complex_hermite_2d(1, 1, C64::new(2.0, 0.0), C64::new(3.0, 0.0));
        assert!((h11 - 5.0).norm() < 1e-15);
        for k in 0..5 {
            assert!((complex_hermite_2d(k, 0, z, w) - w.powu(k as u32)).norm() < 1e-13);
        }
    }

    #[test]
    fn complex_hermite_diagonal_at_origin() {
        let zero = C64::new(0.0, 0.0);
        for m in 0..8 {
            let v = complex_hermite_2d(m, m, zero, zero);
            assert!((v - neg_one_pow(m as i64) * factorial(m)).norm() < 1e-12);
        }
    }

    #[test]
    fn theta_examples() {
        let tau = C64::new(0.0, 1.0 / (2.0 * PI));
        let v = theta(C64::new(0.0, 0.0), tau).unwrap();
        assert!((v.re - 2.506628).abs() < 1e-6 && v.im.abs() < 1e-15);
        let v = theta(C64::new(0.0, 0.0), C64::new(0.0, 1.0)).unwrap();
        assert!((v.re - 1.086435).abs() < 1e-6);
        let z = C64::new(0.37, 0.1);
        let a = theta(z, tau).unwrap();
        let b = theta(z + 1.0, tau).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn theta_rejects_lower_half_plane() {
        assert!(matches!(
            theta(C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(theta(C64::new(0.0, 0.0), C64::new(0.0, -1.0)).is_err());
    }

    #[test]
    fn theta_truncation_is_converged() {
        let tau = C64::new(0.2, 0.05);
        let z = C64::new(0.3, -0.4);
        let v = theta(z, tau).unwrap();
        let big_k = 2 * theta_truncation(tau) as i64;
        let center = (-z.im / tau.im).round() as i64;
        let mut doubled = C64::new(0.0, 0.0);
        for k in (center - big_k)..=(center + big_k) {
            let kf = k as f64;
            doubled += (C64::i() * PI * (kf * kf * tau + 2.0 * kf * z)).exp();
        }
        assert!((v - doubled).norm() <= 1e-13 * doubled.norm().max(1.0));
    }

    #[test]
    fn gaussian_integral_examples() {
        let v = gaussian_integral(1.0, C64::new(0.0, 0.0)).unwrap();
        assert!((v.re - 1.772454).abs() < 1e-6);
        let v = gaussian_integral(1.0, C64::new(2.0, 0.0)).unwrap();
        assert!((v.re - 4.818029).abs() < 1e-6);
        let v = gaussian_integral(0.5, C64::new(0.0, 1.0)).unwrap();
        assert!((v.re - 1.520347).abs() < 1e-6 && v.im.abs() < 1e-15);
        assert!(gaussian_integral(0.0, C64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn gaussian_integral_matches_riemann_sum() {
        let w = C64::new(0.4, -0.9);
        let h = 1e-3;
        let s: C64 = (-15000..=15000)
            .map(|i| {
                let t = i as f64 * h;
                (-1.3 * t * t + w * t).exp() * h
            })
            .sum();
        let v = gaussian_integral(1.3, w).unwrap();
        assert!((s - v).norm() < 1e-12);
    }

    #[test]
    fn powers_of_i_are_exact() {
        assert_eq!(i_pow(0), C64::new(1.0, 0.0));
        assert_eq!(i_pow(5), C64::new(0.0, 1.0));
        assert_eq!(i_pow(-1), C64::new(0.0, -1.0));
        assert_eq!(i_pow(-6), C64::new(-1.0, 0.0));
    }
}
