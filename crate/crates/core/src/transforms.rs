//! Integral transforms evaluated by truncated quadrature: Fourier transform,
//! STFT and its grids, reconstruction, ambiguity function, Bargmann
//! transform and convolution.

use crate::error::{ensure_finite, Error, Result};
use crate::signals::{Waveform, Window};
use crate::C64;
use std::f64::consts::PI;
use std::ops::{Add, Mul};

pub use crate::quadrature::{integrate_plane, QuadratureSpec, Rule, Scheme};

/// Constant in the Moyal identity
/// `∬ V_{g1}f1 conj(V_{g2}f2) = 2π ⟨f1, f2⟩ conj⟨g1, g2⟩` under the
/// convention `V_g f(x, ω) = ∫ e^{-itω} conj(g(t-x)) f(t) dt`.
pub const MOYAL_FACTOR: f64 = 2.0 * PI;

/// Relative magnitude below which integrand samples are skipped in STFT sums.
const NEGLIGIBLE: f64 = 1e-30;

/// Nodes between exact phase re-anchoring in STFT phase recurrences.
const REANCHOR_EVERY: usize = 32;

/// `∫ e^{-itλ} f(t) dt`.
pub fn fourier<W: Waveform + ?Sized>(f: &W, lambda: f64, q: &QuadratureSpec) -> Result<C64> {
    q.integrate(|t| C64::from_polar(1.0, -t * lambda) * f.value(t))
}

/// `⟨f1, f2⟩ = ∫ f1(t) conj(f2(t)) dt`.
pub fn inner_product<A, B>(f1: &A, f2: &B, q: &QuadratureSpec) -> Result<C64>
where
    A: Waveform + ?Sized,
    B: Waveform + ?Sized,
{
    q.integrate(|t| f1.value(t) * f2.value(t).conj())
}

/// Weighted products `w_i conj(g(t_i - x)) f(t_i)` restricted to the span of
/// non-negligible entries.
struct StftRow {
    points: Vec<f64>,
    products: Vec<C64>,
}

impl StftRow {
    fn new<W: Waveform + ?Sized>(f: &W, g: &Window, x: f64, rule: &Rule) -> Self {
        Self::from_fn(rule, |t| g.eval(t - x).conj() * f.value(t))
    }

    fn from_fn<F: Fn(f64) -> C64>(rule: &Rule, f: F) -> Self {
        let products: Vec<C64> = rule.points.iter().zip(&rule.weights).map(|(&t, &w)| w * f(t)).collect();
        let peak = products.iter().fold(0.0f64, |m, p| m.max(p.norm()));
        let keep = |p: &C64| p.norm() > NEGLIGIBLE * peak;
        let first = products.iter().position(keep);
        let last = products.iter().rposition(keep);
        match (first, last) {
            (Some(a), Some(b)) => Self {
                points: rule.points[a..=b].to_vec(),
                products: products[a..=b].to_vec(),
            },
            _ => Self {
                points: Vec::new(),
                products: Vec::new(),
            },
        }
    }

    fn at(&self, omega: f64) -> C64 {
        let n = self.points.len();
        if n == 0 {
            return C64::new(0.0, 0.0);
        }
        let uniform = n > 2 && {
            let h = self.points[1] - self.points[0];
            (self.points[n - 1] - self.points[0] - h * (n - 1) as f64).abs() < 1e-9 * h
        };
        let mut acc = C64::new(0.0, 0.0);
        if uniform {
            let h = self.points[1] - self.points[0];
            let rot = C64::from_polar(1.0, -omega * h);
            let mut phase = C64::new(1.0, 0.0);
            for (i, (&t, p)) in self.points.iter().zip(&self.products).enumerate() {
                if i % REANCHOR_EVERY == 0 {
                    phase = C64::from_polar(1.0, -omega * t);
                }
                acc += p * phase;
                phase *= rot;
            }
        } else {
            for (&t, p) in self.points.iter().zip(&self.products) {
                acc += p * C64::from_polar(1.0, -omega * t);
            }
        }
        acc
    }
}

/// Weighted samples of `f` on a rule, for evaluating `F(f)(λ)` at many `λ`.
pub struct FourierTable {
    row: StftRow,
}

impl FourierTable {
    pub fn new<W: Waveform + ?Sized>(f: &W, q: &QuadratureSpec) -> Self {
        Self {
            row: StftRow::from_fn(&q.rule(), |t| f.value(t)),
        }
    }

    /// `∫ e^{-itλ} f(t) dt` over the table's rule.
    pub fn at(&self, lambda: f64) -> Result<C64> {
        ensure_finite(self.row.at(lambda), "Fourier transform")
    }
}

/// `V_g f(x, ω) = ∫ e^{-itω} conj(g(t - x)) f(t) dt`.
pub fn stft<W: Waveform + ?Sized>(f: &W, g: &Window, x: f64, omega: f64, q: &QuadratureSpec) -> Result<C64> {
    let row = StftRow::new(f, g, x, &q.rule());
    ensure_finite(row.at(omega), "stft")
}

/// Default rule for `V_g f` evaluated at translations up to `max_shift`.
pub fn stft_quadrature<W: Waveform + ?Sized>(f: &W, g: &Window, max_shift: f64) -> Result<QuadratureSpec> {
    let support = f
        .support()
        .ok_or_else(|| Error::Contract("signal has no declared decay radius".into()))?;
    let radius = support.extent().max(max_shift.abs() + g.decay_radius());
    Ok(QuadratureSpec::for_support(radius, 0.0))
}

/// Values on a rectangular lattice, stored row-major with `u` outer.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<T> {
    u_axis: Vec<f64>,
    eta_axis: Vec<f64>,
    values: Vec<T>,
}

/// Complex-valued grid (STFT matrices, Zak tables).
pub type ComplexGrid = Grid<C64>;
/// Real-valued grid (spectrograms).
pub type RealGrid = Grid<f64>;

fn strictly_increasing(axis: &[f64]) -> bool {
    axis.windows(2).all(|w| w[0] < w[1]) && axis.iter().all(|v| v.is_finite())
}

impl<T: Copy> Grid<T> {
    pub fn new(u_axis: Vec<f64>, eta_axis: Vec<f64>, values: Vec<T>) -> Result<Self> {
        if u_axis.is_empty() || eta_axis.is_empty() {
            return Err(Error::Contract("grid axes must be non-empty".into()));
        }
        if !strictly_increasing(&u_axis) || !strictly_increasing(&eta_axis) {
            return Err(Error::Contract("grid axes must be strictly increasing".into()));
        }
        if values.len() != u_axis.len() * eta_axis.len() {
            return Err(Error::Contract(format!(
                "grid has {} values for {}x{} axes",
                values.len(),
                u_axis.len(),
                eta_axis.len()
            )));
        }
        Ok(Self {
            u_axis,
            eta_axis,
            values,
        })
    }

    /// Fills the grid with `f(u, η)`.
    pub fn from_fn<F>(u_axis: Vec<f64>, eta_axis: Vec<f64>, mut f: F) -> Result<Self>
    where
        F: FnMut(f64, f64) -> Result<T>,
    {
        let mut values = Vec::with_capacity(u_axis.len() * eta_axis.len());
        for &u in &u_axis {
            for &eta in &eta_axis {
                values.push(f(u, eta)?);
            }
        }
        Self::new(u_axis, eta_axis, values)
    }

    pub fn u_axis(&self) -> &[f64] {
        &self.u_axis
    }

    pub fn eta_axis(&self) -> &[f64] {
        &self.eta_axis
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Value at `(u_axis[i], eta_axis[j])`.
    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.eta_axis.len() + j]
    }

    pub fn map<U: Copy, F: Fn(T) -> U>(&self, f: F) -> Grid<U> {
        Grid {
            u_axis: self.u_axis.clone(),
            eta_axis: self.eta_axis.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Iterates `(u, η, value)` row-major.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, T)> + '_ {
        let m = self.eta_axis.len();
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &v)| (self.u_axis[k / m], self.eta_axis[k % m], v))
    }
}

fn bracket(axis: &[f64], v: f64) -> Option<(usize, f64)> {
    let n = axis.len();
    if n == 1 {
        return (v == axis[0]).then_some((0, 0.0));
    }
    if v < axis[0] || v > axis[n - 1] {
        return None;
    }
    let i = axis.partition_point(|&a| a <= v).clamp(1, n - 1) - 1;
    Some((i, (v - axis[i]) / (axis[i + 1] - axis[i])))
}

impl<T> Grid<T>
where
    T: Copy + Mul<f64, Output = T> + Add<Output = T>,
{
    /// Bilinear interpolation; `None` outside the grid.
    pub fn interpolate(&self, u: f64, eta: f64) -> Option<T> {
        let (i, s) = bracket(&self.u_axis, u)?;
        let (j, r) = bracket(&self.eta_axis, eta)?;
        let i1 = (i + 1).min(self.u_axis.len() - 1);
        let j1 = (j + 1).min(self.eta_axis.len() - 1);
        Some(
            self.get(i, j) * ((1.0 - s) * (1.0 - r))
                + self.get(i1, j) * (s * (1.0 - r))
                + self.get(i, j1) * ((1.0 - s) * r)
                + self.get(i1, j1) * (s * r),
        )
    }
}

/// `n` equispaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + i as f64 * h })
                .collect()
        }
    }
}

/// `V_g f` on the lattice `u_axis × eta_axis`.
pub fn stft_grid<W: Waveform + ?Sized>(
    f: &W,
    g: &Window,
    u_axis: &[f64],
    eta_axis: &[f64],
    q: &QuadratureSpec,
) -> Result<ComplexGrid> {
    let rule = q.rule();
    let mut values = Vec::with_capacity(u_axis.len() * eta_axis.len());
    for &u in u_axis {
        let row = StftRow::new(f, g, u, &rule);
        for &eta in eta_axis {
            values.push(ensure_finite(row.at(eta), "stft grid")?);
        }
    }
    Grid::new(u_axis.to_vec(), eta_axis.to_vec(), values)
}

/// Spectrogram `|V_g f|² / ‖g‖²`, i.e. computed with the unit-normalized window.
pub fn spectrogram(grid: &ComplexGrid, g: &Window) -> RealGrid {
    let n = g.norm_sq();
    grid.map(|v| v.norm_sqr() / n)
}

/// `∬ V_{g1}f1(u, η) conj(V_{g2}f2(u, η)) du dη` over the box
/// `[-T_u, T_u] × [-T_η, T_η]`, with line integrals on `q_line`.
pub fn stft_plane_inner<A, B>(
    f1: &A,
    g1: &Window,
    f2: &B,
    g2: &Window,
    q_line: &QuadratureSpec,
    q_u: &QuadratureSpec,
    q_eta: &QuadratureSpec,
) -> Result<C64>
where
    A: Waveform + ?Sized,
    B: Waveform + ?Sized,
{
    let line = q_line.rule();
    let ru = q_u.rule();
    let reta = q_eta.rule();
    let mut acc = C64::new(0.0, 0.0);
    for (&u, &wu) in ru.points.iter().zip(&ru.weights) {
        let r1 = StftRow::new(f1, g1, u, &line);
        let r2 = StftRow::new(f2, g2, u, &line);
        let mut inner = C64::new(0.0, 0.0);
        for (&eta, &weta) in reta.points.iter().zip(&reta.weights) {
            inner += weta * r1.at(eta) * r2.at(eta).conj();
        }
        acc += wu * inner;
    }
    ensure_finite(acc, "plane inner product")
}

/// `∬ |V_g f|² du dη` over the box `[-T_u, T_u] × [-T_η, T_η]`.
pub fn stft_norm_sq<W: Waveform + ?Sized>(
    f: &W,
    g: &Window,
    q_line: &QuadratureSpec,
    q_u: &QuadratureSpec,
    q_eta: &QuadratureSpec,
) -> Result<f64> {
    let line = q_line.rule();
    let ru = q_u.rule();
    let reta = q_eta.rule();
    let mut acc = 0.0;
    for (&u, &wu) in ru.points.iter().zip(&ru.weights) {
        let row = StftRow::new(f, g, u, &line);
        let mut inner = 0.0;
        for (&eta, &weta) in reta.points.iter().zip(&reta.weights) {
            inner += weta * row.at(eta).norm_sqr();
        }
        acc += wu * inner;
    }
    if acc.is_finite() {
        Ok(acc)
    } else {
        Err(Error::NonFinite("stft norm".into()))
    }
}

/// Largest integrand magnitude allowed on the boundary of a reconstruction grid.
pub const COVERAGE_LIMIT: f64 = 1e-12;

/// `f(y) = (1 / (2π ‖g‖²)) ∬ V(x, ω) e^{iωy} g(y - x) dx dω`.
///
/// `v` is interpolated bilinearly and integrated over its own box at the node
/// density and scheme of `q2d`. The grid boundary must carry integrand
/// magnitudes below `1e-12` (relative to the larger of 1 and the peak).
pub fn reconstruct(v: &ComplexGrid, g: &Window, y: f64, q2d: &QuadratureSpec) -> Result<C64> {
    let norm = g.norm_sq();
    if norm.is_nan() || norm <= 0.0 {
        return Err(Error::Domain("reconstruction needs a nonzero window".into()));
    }
    let integrand = |x: f64, value: C64| (value * g.eval(y - x)).norm();
    let (nu, neta) = (v.u_axis().len(), v.eta_axis().len());
    let mut peak = 0.0f64;
    let mut edge = 0.0f64;
    for i in 0..nu {
        for j in 0..neta {
            let m = integrand(v.u_axis()[i], v.get(i, j));
            peak = peak.max(m);
            if i == 0 || j == 0 || i == nu - 1 || j == neta - 1 {
                edge = edge.max(m);
            }
        }
    }
    let limit = COVERAGE_LIMIT * peak.max(1.0);
    if edge > limit {
        return Err(Error::Coverage { tail: edge, limit });
    }
    let (ulo, uhi) = (v.u_axis()[0], v.u_axis()[nu - 1]);
    let (elo, ehi) = (v.eta_axis()[0], v.eta_axis()[neta - 1]);
    let ru = q2d.rule_on(ulo, uhi);
    let reta = q2d.rule_on(elo, ehi);
    let phases: Vec<C64> = reta.points.iter().map(|&w| C64::from_polar(1.0, w * y)).collect();
    let mut acc = C64::new(0.0, 0.0);
    for (&x, &wx) in ru.points.iter().zip(&ru.weights) {
        let gx = g.eval(y - x);
        if gx.norm() == 0.0 {
            continue;
        }
        let mut inner = C64::new(0.0, 0.0);
        for ((&omega, &wo), phase) in reta.points.iter().zip(&reta.weights).zip(&phases) {
            let value = v.interpolate(x, omega).unwrap_or_default();
            inner += wo * value * phase;
        }
        acc += wx * gx * inner;
    }
    ensure_finite(acc / (MOYAL_FACTOR * norm), "reconstruction")
}

/// Ambiguity function `A[g](u, η) = e^{iuη/2} V_g g(u, η)`.
pub fn ambiguity(g: &Window, u: f64, eta: f64, q: &QuadratureSpec) -> Result<C64> {
    Ok(C64::from_polar(1.0, u * eta / 2.0) * stft(g, g, u, eta, q)?)
}

/// Bargmann kernel `A(z, t) = π^{-3/4} e^{-(z² + t²)/2 + √2 z t}`.
pub fn bargmann_kernel(z: C64, t: f64) -> C64 {
    PI.powf(-0.75) * (-(z * z + t * t) / 2.0 + 2f64.sqrt() * z * t).exp()
}

/// Bargmann transform `∫ A(z, t) f(t) dt`.
pub fn bargmann<W: Waveform + ?Sized>(f: &W, z: C64, q: &QuadratureSpec) -> Result<C64> {
    q.integrate(|t| bargmann_kernel(z, t) * f.value(t))
}

/// `⟨A_z, A_w⟩ = ∫ A(z, t) conj(A(w, t)) dt`.
pub fn bargmann_kernel_overlap(z: C64, w: C64, q: &QuadratureSpec) -> Result<C64> {
    q.integrate(|t| bargmann_kernel(z, t) * bargmann_kernel(w, t).conj())
}

/// `(f * g)(λ) = ∫ f(s) g(λ - s) ds`.
pub fn convolve<A, B>(f: &A, g: &B, lambda: f64, q: &QuadratureSpec) -> Result<C64>
where
    A: Waveform + ?Sized,
    B: Waveform + ?Sized,
{
    q.integrate(|s| f.value(s) * g.value(lambda - s))
}
