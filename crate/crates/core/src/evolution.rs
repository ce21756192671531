//! Free Schrödinger evolution `i∂_t φ = -∂²_x φ` of time-frequency shifted
//! windows and of superoscillating data.
//!
//! Quadrature and closed-form routes return `∫ F(datum)(p) e^{-ip²t} e^{ipx} dp`
//! without the `1/2π` of the inverse Fourier transform, so at `t = 0` they
//! equal `2π` times the datum. [`normalize`] and [`Evolved::normalized`]
//! divide the factor out.

use crate::error::{ensure_finite, Error, Result};
use crate::kernels::gabor_kernel_gaussian;
use crate::kernels::TFQuadruple;
use crate::quadrature::QuadratureSpec;
use crate::signals::{Window, WindowKind};
use crate::special::{hermite_function, i_pow};
use crate::superosc::SuperoscParams;
use crate::transforms::FourierTable;
use crate::C64;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Results with `|t| T²` above this value carry a cleared accuracy flag.
pub const OSCILLATION_LIMIT: f64 = 1e4;

/// Largest factor by which the node density grows with `|t| T`.
pub const MAX_DENSITY_FACTOR: usize = 16;

/// Evaluation point `(x, t)` and initial datum `M_{k0} T_{x0} g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvolutionPoint {
    pub x: f64,
    pub t: f64,
    pub x0: f64,
    pub k0: f64,
}

impl EvolutionPoint {
    pub fn new(x: f64, t: f64, x0: f64, k0: f64) -> Result<Self> {
        if [x, t, x0, k0].iter().all(|v| v.is_finite()) {
            Ok(Self { x, t, x0, k0 })
        } else {
            Err(Error::Domain(format!(
                "evolution point must be finite, got x={x}, t={t}, x0={x0}, k0={k0}"
            )))
        }
    }
}

/// A quadrature-evaluated evolution value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evolved {
    pub value: C64,
    /// `false` when `|t| T² > OSCILLATION_LIMIT` and the oscillatory
    /// integrand may be under-resolved.
    pub accurate: bool,
    pub nodes_per_unit: usize,
}

impl Evolved {
    /// The value divided by `2π`, equal to the datum at `t = 0`.
    pub fn normalized(&self) -> C64 {
        normalize(self.value)
    }
}

/// Divides out the `2π` of the unnormalized evolution convention.
pub fn normalize(v: C64) -> C64 {
    v / TAU
}

/// Default rule for the frequency integral of `g`: `T = decay radius + 8`.
pub fn evolution_quadrature(g: &Window) -> QuadratureSpec {
    QuadratureSpec::for_support(g.decay_radius(), 0.0)
}

/// Density scaled by `1 + |t| T`, capped at `MAX_DENSITY_FACTOR`, and the
/// accuracy flag `|t| T² ≤ OSCILLATION_LIMIT`.
fn oscillatory_rule(quad: &QuadratureSpec, t: f64) -> Result<(QuadratureSpec, bool)> {
    let r = quad.radius();
    let factor = (1.0 + t.abs() * r).ceil().min(MAX_DENSITY_FACTOR as f64) as usize;
    let scaled = quad.with_nodes_per_unit(quad.nodes_per_unit() * factor.max(1))?;
    Ok((scaled, t.abs() * r * r <= OSCILLATION_LIMIT))
}

/// `∫ (T_{k0} M_{-x0} F g)(p) e^{-ip²t} e^{ipx} dp` over `|p - k0| ≤ T`,
/// with `F g` computed by quadrature on the window's own support.
pub fn evolve_numeric(g: &Window, pt: &EvolutionPoint, quad: &QuadratureSpec) -> Result<Evolved> {
    let (q, accurate) = oscillatory_rule(quad, pt.t)?;
    let rule = q.rule_on(pt.k0 - q.radius(), pt.k0 + q.radius());
    let fq = QuadratureSpec::for_support(g.decay_radius(), 0.0).with_nodes_per_unit(quad.nodes_per_unit())?;
    let table = FourierTable::new(g, &fq);
    let mut acc = C64::new(0.0, 0.0);
    for (&p, &w) in rule.points.iter().zip(&rule.weights) {
        let s = p - pt.k0;
        let datum = C64::from_polar(1.0, -pt.x0 * s) * table.at(s)?;
        acc += w * datum * C64::from_polar(1.0, p * pt.x - p * p * pt.t);
    }
    Ok(Evolved {
        value: ensure_finite(acc, "evolution integral")?,
        accurate,
        nodes_per_unit: q.nodes_per_unit(),
    })
}

/// `2π (1+2it)^{-1/2} e^{i x0 k0 - k0²/2} e^{[k0 + i(x - x0)]² / (2(1+2it))}`,
/// principal square root.
pub fn evolve_gaussian_closed(pt: &EvolutionPoint) -> C64 {
    let d = C64::new(1.0, 2.0 * pt.t);
    let b = C64::new(pt.k0, pt.x - pt.x0);
    let front = C64::from_polar((-pt.k0 * pt.k0 / 2.0).exp(), pt.x0 * pt.k0);
    TAU * front * (b * b / (2.0 * d)).exp() / d.sqrt()
}

/// `√(2π) (-i)^m e^{i k0 x - i k0² t} ∫ e^{-iu²t + iu(x - x0 - 2k0 t)} h_m(u) du`,
/// using `F(h_m) = √(2π) (-i)^m h_m`.
pub fn evolve_hermite(m: usize, pt: &EvolutionPoint, quad: &QuadratureSpec) -> Result<Evolved> {
    let (q, accurate) = oscillatory_rule(quad, pt.t)?;
    let shift = pt.x - pt.x0 - 2.0 * pt.k0 * pt.t;
    let integral = q.integrate(|u| C64::from_polar(hermite_function(m, u), u * shift - u * u * pt.t))?;
    let front = TAU.sqrt() * i_pow(-(m as i64)) * C64::from_polar(1.0, pt.k0 * pt.x - pt.k0 * pt.k0 * pt.t);
    Ok(Evolved {
        value: ensure_finite(front * integral, "Hermite evolution")?,
        accurate,
        nodes_per_unit: q.nodes_per_unit(),
    })
}

/// Evolution of the datum `M_{k0} T_{x0} g` for any window: closed form
/// for the Gaussian, the Hermite route for `h_m`, quadrature otherwise.
pub fn evolve(g: &Window, pt: &EvolutionPoint, quad: &QuadratureSpec) -> Result<Evolved> {
    match g.kind() {
        WindowKind::Gaussian => Ok(Evolved {
            value: ensure_finite(evolve_gaussian_closed(pt), "Gaussian evolution")?,
            accurate: true,
            nodes_per_unit: quad.nodes_per_unit(),
        }),
        WindowKind::Hermite(m) => evolve_hermite(*m, pt, quad),
        WindowKind::Custom { .. } => evolve_numeric(g, pt, quad),
    }
}

/// Mode-wise evolution `Σ_j C_j e^{iω_j y - iω_j² t}` of `F_n(y, a)`.
pub fn evolve_superosc(p: &SuperoscParams, y: f64, t: f64) -> C64 {
    p.terms()
        .map(|(c, w)| c * C64::from_polar(1.0, w * y - w * w * t))
        .sum()
}

/// Half-width beyond which the Gaussian Gabor kernel `e^{-s²/4}` drops below `1e-12`.
fn kernel_cutoff() -> f64 {
    2.0 * (1e12f64).ln().sqrt()
}

/// Evolved Gaussian signal `S_n^{φ,x}` at `(y, t)` divided by `φ(y - x)`:
/// `Σ_j C_j φ_j(y, t) / φ(y - x)` with `φ_j` the normalized evolution of
/// `M_{ω_j} T_x φ`. At `t = 0` this is `F_n(y, a)`.
pub fn evolve_superosc_signal(p: &SuperoscParams, x: f64, y: f64, t: f64) -> Result<C64> {
    let g = (-(y - x) * (y - x) / 2.0).exp();
    if g < 1e-300 {
        return Err(Error::Domain(format!("window vanishes at y - x = {}", y - x)));
    }
    let mut acc = C64::new(0.0, 0.0);
    for (c, w) in p.terms() {
        acc += c * normalize(evolve_gaussian_closed(&EvolutionPoint { x: y, t, x0: x, k0: w }));
    }
    ensure_finite(acc / g, "evolved signal")
}

/// The same quantity through the reconstruction formula:
/// `(1 / (2π ‖φ‖² φ(y - x))) ∬ Σ_j C_j K_φ(x, ω_j; x0, k0) φ_{x0,k0}(y, t) dx0 dk0`,
/// with `φ_{x0,k0}` the normalized evolution of `M_{k0} T_{x0} φ`. The plane
/// is truncated where the Gabor kernel falls below `1e-12`.
pub fn evolve_superosc_representation(
    p: &SuperoscParams,
    x: f64,
    y: f64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<C64> {
    let g = (-(y - x) * (y - x) / 2.0).exp();
    if g < 1e-300 {
        return Err(Error::Domain(format!("window vanishes at y - x = {}", y - x)));
    }
    let h = kernel_cutoff();
    let w_max = p.terms().map(|(_, w)| w.abs()).fold(0.0, f64::max);
    let ru = quad.rule_on(x - h, x + h);
    let rk = quad.rule_on(-w_max - h, w_max + h);
    let mut acc = C64::new(0.0, 0.0);
    for (&x0, &wu) in ru.points.iter().zip(&ru.weights) {
        let mut inner = C64::new(0.0, 0.0);
        for (&k0, &wk) in rk.points.iter().zip(&rk.weights) {
            let mut v = C64::new(0.0, 0.0);
            for (c, w) in p.terms() {
                v += c * gabor_kernel_gaussian(&TFQuadruple {
                    x,
                    omega: w,
                    u: x0,
                    eta: k0,
                });
            }
            inner += wk * v * evolve_gaussian_closed(&EvolutionPoint { x: y, t, x0, k0 });
        }
        acc += wu * inner;
    }
    let norm = PI.sqrt();
    ensure_finite(normalize(acc) / (TAU * norm * g), "evolution representation")
}

/// `i ∂_t φ + ∂²_x φ` at `(x, t)` by central differences with step `h`.
pub fn schrodinger_residual<F: Fn(f64, f64) -> C64>(f: F, x: f64, t: f64, h: f64) -> C64 {
    let dt = (f(x, t + h) - f(x, t - h)) / (2.0 * h);
    let dxx = (f(x + h, t) - 2.0 * f(x, t) + f(x - h, t)) / (h * h);
    C64::i() * dt + dxx
}
