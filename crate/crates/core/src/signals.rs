//! Windows, time-frequency shifts and superoscillation-modulated signals.

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::special::{complex_hermite_2d, factorial, hermite_function, hermite_norm_sq, neg_one_pow};
use crate::superosc::{f_n, SuperoscParams};
use crate::C64;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Magnitude below which a window is treated as negligible.
pub const DECAY_THRESHOLD: f64 = 1e-16;

/// A function of time that may declare where it is non-negligible.
pub trait Waveform: Sync {
    fn value(&self, t: f64) -> C64;

    /// Interval outside which `|f| < 1e-16`, when known.
    fn support(&self) -> Option<Support>;
}

/// The interval `[center - radius, center + radius]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Support {
    pub center: f64,
    pub radius: f64,
}

impl Support {
    /// Radius of the smallest origin-centered interval containing the support.
    pub fn extent(&self) -> f64 {
        self.center.abs() + self.radius
    }
}

impl<W: Waveform + ?Sized> Waveform for &W {
    fn value(&self, t: f64) -> C64 {
        (**self).value(t)
    }

    fn support(&self) -> Option<Support> {
        (**self).support()
    }
}

/// Wraps a closure as a [`Waveform`].
pub struct FnWaveform<F> {
    f: F,
    support: Option<Support>,
}

impl<F: Fn(f64) -> C64 + Sync> FnWaveform<F> {
    pub fn new(f: F, support: Option<Support>) -> Self {
        Self { f, support }
    }
}

impl<F: Fn(f64) -> C64 + Sync> Waveform for FnWaveform<F> {
    fn value(&self, t: f64) -> C64 {
        (self.f)(t)
    }

    fn support(&self) -> Option<Support> {
        self.support
    }
}

/// `M_ω T_x f`, i.e. `t ↦ e^{iωt} f(t - x)`.
pub struct Shifted<W> {
    inner: W,
    x: f64,
    omega: f64,
}

impl<W: Waveform> Shifted<W> {
    pub fn new(inner: W, x: f64, omega: f64) -> Self {
        Self { inner, x, omega }
    }
}

impl<W: Waveform> Waveform for Shifted<W> {
    fn value(&self, t: f64) -> C64 {
        C64::from_polar(1.0, self.omega * t) * self.inner.value(t - self.x)
    }

    fn support(&self) -> Option<Support> {
        self.inner.support().map(|s| Support {
            center: s.center + self.x,
            radius: s.radius,
        })
    }
}

type Evaluator = Arc<dyn Fn(f64) -> C64 + Send + Sync>;

/// Shape of a window.
#[derive(Clone)]
pub enum WindowKind {
    /// `e^{-t²/2}`.
    Gaussian,
    /// `h_m(t) = e^{-t²/2} H_m(t)`.
    Hermite(usize),
    /// A caller-supplied square-integrable function.
    Custom { label: String, eval: Evaluator },
}

impl fmt::Debug for WindowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowKind::Gaussian => write!(f, "Gaussian"),
            WindowKind::Hermite(m) => write!(f, "Hermite({m})"),
            WindowKind::Custom { label, .. } => write!(f, "Custom({label})"),
        }
    }
}

/// A window function with decay metadata and a cached squared norm.
#[derive(Clone, Debug)]
pub struct Window {
    kind: WindowKind,
    decay_radius: f64,
    norm_sq: f64,
}

impl Window {
    pub fn gaussian() -> Self {
        Self {
            kind: WindowKind::Gaussian,
            decay_radius: (-2.0 * DECAY_THRESHOLD.ln()).sqrt(),
            norm_sq: PI.sqrt(),
        }
    }

    pub fn hermite(m: usize) -> Self {
        Self {
            kind: WindowKind::Hermite(m),
            decay_radius: hermite_decay_radius(m),
            norm_sq: hermite_norm_sq(m),
        }
    }

    /// A custom window; `decay_radius` bounds where `|g| ≥ 1e-16`.
    pub fn custom<F>(label: &str, eval: F, decay_radius: f64) -> Result<Self>
    where
        F: Fn(f64) -> C64 + Send + Sync + 'static,
    {
        if !(decay_radius > 0.0 && decay_radius.is_finite()) {
            return Err(Error::Contract(format!(
                "custom window needs a positive decay radius, got {decay_radius}"
            )));
        }
        let eval: Evaluator = Arc::new(eval);
        let q = QuadratureSpec::for_support(decay_radius, 0.0);
        let norm_sq = q.integrate(|t| C64::new(eval(t).norm_sqr(), 0.0))?.re;
        Ok(Self {
            kind: WindowKind::Custom {
                label: label.to_string(),
                eval,
            },
            decay_radius,
            norm_sq,
        })
    }

    pub fn kind(&self) -> &WindowKind {
        &self.kind
    }

    pub fn hermite_order(&self) -> Option<usize> {
        match self.kind {
            WindowKind::Hermite(m) => Some(m),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            WindowKind::Gaussian => "gaussian".to_string(),
            WindowKind::Hermite(m) => format!("hermite({m})"),
            WindowKind::Custom { label, .. } => label.clone(),
        }
    }

    pub fn eval(&self, t: f64) -> C64 {
        match &self.kind {
            WindowKind::Gaussian => C64::new((-0.5 * t * t).exp(), 0.0),
            WindowKind::Hermite(m) => C64::new(hermite_function(*m, t), 0.0),
            WindowKind::Custom { eval, .. } => eval(t),
        }
    }

    pub fn decay_radius(&self) -> f64 {
        self.decay_radius
    }

    /// `‖g‖²`: `√π` for the Gaussian, `2^m m! √π` for `h_m`, quadrature otherwise.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }
}

impl Waveform for Window {
    fn value(&self, t: f64) -> C64 {
        self.eval(t)
    }

    fn support(&self) -> Option<Support> {
        Some(Support {
            center: 0.0,
            radius: self.decay_radius,
        })
    }
}

fn hermite_decay_radius(m: usize) -> f64 {
    let step = 1e-2;
    let mut last = 0.0;
    let mut t = 0.0;
    while t < 80.0 {
        if hermite_function(m, t).abs() >= DECAY_THRESHOLD {
            last = t;
        }
        t += step;
    }
    last + step
}

/// `(M_ω T_x g)(t) = e^{iωt} g(t - x)`.
pub fn time_frequency_shift(x: f64, omega: f64, g: &Window, t: f64) -> C64 {
    C64::from_polar(1.0, omega * t) * g.eval(t - x)
}

/// Modulation factor of a [`Signal`].
#[derive(Debug, Clone, PartialEq)]
pub enum Modulation {
    /// `F_n(t, a)`.
    Superosc(SuperoscParams),
    /// `e^{iat}`.
    Limit(f64),
    /// No modulation.
    None,
}

/// `t ↦ modulation(t) · g(t - x)`.
#[derive(Debug, Clone)]
pub struct Signal {
    window: Window,
    x: f64,
    modulation: Modulation,
}

impl Signal {
    pub fn new(window: Window, x: f64, modulation: Modulation) -> Self {
        Self { window, x, modulation }
    }

    /// `M_a T_x g`.
    pub fn limit(window: Window, x: f64, a: f64) -> Self {
        Self::new(window, x, Modulation::Limit(a))
    }

    /// `T_x g`.
    pub fn plain(window: Window, x: f64) -> Self {
        Self::new(window, x, Modulation::None)
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn translation(&self) -> f64 {
        self.x
    }

    pub fn modulation(&self) -> &Modulation {
        &self.modulation
    }

    pub fn eval(&self, t: f64) -> C64 {
        let g = self.window.eval(t - self.x);
        match &self.modulation {
            Modulation::Superosc(p) => f_n(p, t) * g,
            Modulation::Limit(a) => C64::from_polar(1.0, a * t) * g,
            Modulation::None => g,
        }
    }
}

impl Waveform for Signal {
    fn value(&self, t: f64) -> C64 {
        self.eval(t)
    }

    fn support(&self) -> Option<Support> {
        Some(Support {
            center: self.x,
            radius: self.window.decay_radius(),
        })
    }
}

/// The superoscillating signal `S_n^{g,x}(t) = F_n(t, a) g(t - x)`.
pub fn build_signal(g: &Window, x: f64, p: &SuperoscParams) -> Signal {
    Signal::new(g.clone(), x, Modulation::Superosc(p.clone()))
}

/// `S_n^{g,x}(t)`, or the limit/plain variant.
pub fn evaluate(sig: &Signal, t: f64) -> C64 {
    sig.eval(t)
}

/// How a norm was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Closed,
    Quadrature,
}

/// A squared norm and its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormSq {
    pub value: f64,
    pub provenance: Provenance,
}

/// `‖S_n^{g,x}‖²`.
///
/// Gaussian and Hermite windows use the double sum
/// `Σ_j Σ_k C_j C_k e^{iδx} ∫ |g(s)|² e^{iδs} ds` with `δ = ω_j - ω_k` and
/// the closed forms of the inner integral; custom windows fall back to
/// quadrature.
pub fn signal_norm_sq_closed(g: &Window, x: f64, p: &SuperoscParams) -> Result<NormSq> {
    let n = p.n() as f64;
    let c = p.coefficients();
    let inner: Box<dyn Fn(i64) -> C64> = match g.kind() {
        WindowKind::Gaussian => Box::new(|d: i64| {
            let d = d as f64;
            C64::new(PI.sqrt() * (-(d * d) / (n * n)).exp(), 0.0)
        }),
        WindowKind::Hermite(m) => {
            let m = *m;
            Box::new(move |d: i64| {
                let df = d as f64;
                let h = if d == 0 {
                    C64::new(neg_one_pow(m as i64) * factorial(m), 0.0)
                } else {
                    let z = C64::new(2f64.sqrt() * df / n, 0.0);
                    complex_hermite_2d(m, m, z, z)
                };
                PI.sqrt() * (-2f64).powi(m as i32) * (-(df * df) / (n * n)).exp() * h
            })
        }
        WindowKind::Custom { .. } => {
            let sig = build_signal(g, x, p);
            let q = QuadratureSpec::for_support(g.decay_radius(), x);
            let value = q.integrate(|t| C64::new(sig.eval(t).norm_sqr(), 0.0))?.re;
            return Ok(NormSq {
                value,
                provenance: Provenance::Quadrature,
            });
        }
    };
    let mut acc = C64::new(0.0, 0.0);
    for (j, cj) in c.iter().enumerate() {
        for (k, ck) in c.iter().enumerate() {
            let d = k as i64 - j as i64;
            let phase = C64::from_polar(1.0, 2.0 * d as f64 * x / n);
            acc += cj * ck * phase * inner(d);
        }
    }
    Ok(NormSq {
        value: acc.re,
        provenance: Provenance::Closed,
    })
}
