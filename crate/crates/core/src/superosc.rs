//! Superoscillating sequences: the coefficients `C_j(n, a)`, the prototype
//! `F_n(t, a)`, generalized Fourier sequences, approximating sequences and
//! the supershift probe.

use crate::error::{Error, Result};
use crate::special::binomial;
use crate::C64;
use serde::Serialize;
use std::sync::Arc;

/// Amplitude `a` and order `n` of `F_n(t, a) = (cos(t/n) + i a sin(t/n))^n`.
///
/// The coefficient vector is computed once at construction and shared by
/// clones.
#[derive(Debug, Clone, Serialize)]
pub struct SuperoscParams {
    a: f64,
    n: usize,
    #[serde(skip)]
    coeffs: Arc<[f64]>,
}

impl PartialEq for SuperoscParams {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.n == other.n
    }
}

impl SuperoscParams {
    pub fn new(a: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("superoscillation order n must be >= 1".into()));
        }
        if !a.is_finite() {
            return Err(Error::Domain(format!("amplitude a must be finite, got {a}")));
        }
        let p = (1.0 + a) / 2.0;
        let q = (1.0 - a) / 2.0;
        let coeffs: Vec<f64> = (0..=n)
            .map(|j| binomial(n, j) * p.powi((n - j) as i32) * q.powi(j as i32))
            .collect();
        Ok(Self {
            a,
            n,
            coeffs: coeffs.into(),
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `[C_0, …, C_n]` with `C_j = C(n,j) ((1+a)/2)^{n-j} ((1-a)/2)^j`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Frequency `ω_j = 1 - 2j/n`.
    pub fn frequency(&self, j: usize) -> f64 {
        1.0 - 2.0 * j as f64 / self.n as f64
    }

    /// Frequencies `ω_0 = 1 > ω_1 > … > ω_n = -1`.
    pub fn frequencies(&self) -> Vec<f64> {
        (0..=self.n).map(|j| self.frequency(j)).collect()
    }

    /// Pairs `(C_j, ω_j)` in ascending `j`.
    pub fn terms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.coeffs.iter().enumerate().map(|(j, &c)| (c, self.frequency(j)))
    }

    /// Whether `|a| > 1`, i.e. the target frequency lies outside `[-1, 1]`.
    pub fn is_superoscillatory(&self) -> bool {
        self.a.abs() > 1.0
    }
}

/// Coefficients `C_j(n, a)` for `j = 0..=n`.
pub fn coefficients(p: &SuperoscParams) -> Vec<f64> {
    p.coefficients().to_vec()
}

/// `F_n(t, a)` by the product form `(cos(t/n) + i a sin(t/n))^n`.
pub fn f_n(p: &SuperoscParams, t: f64) -> C64 {
    let s = t / p.n as f64;
    C64::new(s.cos(), p.a * s.sin()).powu(p.n as u32)
}

/// `F_n(t, a)` by direct summation of `Σ_j C_j e^{iω_j t}`.
pub fn f_n_direct(p: &SuperoscParams, t: f64) -> C64 {
    p.terms().map(|(c, w)| c * C64::from_polar(1.0, w * t)).sum()
}

/// A generalized Fourier sequence `Σ_j Z_j e^{i h_j t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedSequence {
    coefficients: Vec<C64>,
    frequencies: Vec<f64>,
}

impl GeneralizedSequence {
    pub fn new(coefficients: Vec<C64>, frequencies: Vec<f64>) -> Result<Self> {
        if coefficients.len() != frequencies.len() {
            return Err(Error::Contract(format!(
                "{} coefficients but {} frequencies",
                coefficients.len(),
                frequencies.len()
            )));
        }
        Ok(Self {
            coefficients,
            frequencies,
        })
    }

    /// The sequence encoding `F_n(t, a)`.
    pub fn from_params(p: &SuperoscParams) -> Self {
        Self {
            coefficients: p.coefficients().iter().map(|&c| C64::new(c, 0.0)).collect(),
            frequencies: p.frequencies(),
        }
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.coefficients
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    /// `sup_j |h_j|`; at most one for a superoscillating sequence.
    pub fn max_frequency(&self) -> f64 {
        self.frequencies.iter().fold(0.0, |m, h| m.max(h.abs()))
    }
}

/// `Σ_j Z_j e^{i h_j t}` by direct summation.
pub fn generalized_f(seq: &GeneralizedSequence, t: f64) -> C64 {
    seq.coefficients
        .iter()
        .zip(&seq.frequencies)
        .map(|(z, &h)| z * C64::from_polar(1.0, h * t))
        .sum()
}

/// Approximating sequence `φ_{ψ,n,a}(x) = Σ_j C_j ψ(x + ω_j)`.
pub fn approximating_sequence<F>(psi: F, p: &SuperoscParams, x: f64) -> C64
where
    F: Fn(f64) -> C64,
{
    p.terms().map(|(c, w)| c * psi(x + w)).sum()
}

/// Supershift builder `Σ_j C_j closed_form_at(ω_j)`.
pub fn supershift_probe<F>(mut closed_form_at: F, p: &SuperoscParams) -> Result<C64>
where
    F: FnMut(f64) -> Result<C64>,
{
    let mut acc = C64::new(0.0, 0.0);
    for (c, w) in p.terms() {
        acc += c * closed_form_at(w)?;
    }
    Ok(acc)
}
