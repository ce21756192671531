//! Zak transform `Z f(u, η) = Σ_k f(u - k) e^{ikη}`, its covariance under
//! time-frequency shifts, theta-function forms and bounds, and Gabor-frame
//! verdicts on the critical lattice `α = β = 1`.

use crate::error::{ensure_finite, Error, Result};
use crate::signals::{build_signal, FnWaveform, Support, Waveform, Window};
use crate::special::theta;
use crate::superosc::SuperoscParams;
use crate::C64;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Default threshold separating a zero of `|Z f|` from a positive lower bound.
pub const FRAME_TOLERANCE: f64 = 1e-8;

/// Number of smallest local grid minima refined by Newton iteration.
const REFINE_CANDIDATES: usize = 8;

/// Index range `k` for which `f(u - k)` can be non-negligible.
fn zak_range(s: &Support, u: f64) -> (i64, i64) {
    let lo = (u - s.center - s.radius).floor() as i64 - 1;
    let hi = (u - s.center + s.radius).ceil() as i64 + 1;
    (lo, hi)
}

/// `Σ_k f(u - k) e^{ikη}` over the indices where `f(u - k)` is above `1e-16`.
pub fn zak<W: Waveform + ?Sized>(f: &W, u: f64, eta: f64) -> Result<C64> {
    let s = f
        .support()
        .ok_or_else(|| Error::Contract("Zak transform needs a declared decay radius".into()))?;
    let (lo, hi) = zak_range(&s, u);
    let mut acc = C64::new(0.0, 0.0);
    for k in lo..=hi {
        acc += f.value(u - k as f64) * C64::from_polar(1.0, k as f64 * eta);
    }
    ensure_finite(acc, "Zak transform")
}

/// `Z φ(u, η) = Σ_k e^{-(u-k)²/2} e^{ikη}` summed termwise over `|k - u| ≤ 12`.
pub fn zak_gaussian(u: f64, eta: f64) -> C64 {
    let lo = (u - 12.0).floor() as i64;
    let hi = (u + 12.0).ceil() as i64;
    (lo..=hi)
        .map(|k| {
            let d = u - k as f64;
            C64::from_polar((-d * d / 2.0).exp(), k as f64 * eta)
        })
        .sum()
}

/// `Z φ(u, η) = e^{-u²/2} θ((η - iu)/2π, i/2π)`.
pub fn zak_gaussian_theta(u: f64, eta: f64) -> Result<C64> {
    let z = C64::new(eta, -u) / TAU;
    Ok((-u * u / 2.0).exp() * theta(z, C64::new(0.0, 1.0 / TAU))?)
}

/// `|Z(T_x M_ω f)(u, η) - e^{iω(u-x)} Z f(u - x, η - ω)|`.
pub fn zak_shift_identity_check<W: Waveform + ?Sized>(f: &W, x: f64, omega: f64, u: f64, eta: f64) -> Result<f64> {
    let support = f
        .support()
        .ok_or_else(|| Error::Contract("Zak transform needs a declared decay radius".into()))?;
    let moved = FnWaveform::new(
        |t: f64| C64::from_polar(1.0, omega * (t - x)) * f.value(t - x),
        Some(Support {
            center: support.center + x,
            radius: support.radius,
        }),
    );
    let lhs = zak(&moved, u, eta)?;
    let rhs = C64::from_polar(1.0, omega * (u - x)) * zak(f, u - x, eta - omega)?;
    Ok((lhs - rhs).norm())
}

/// `Z(S_n^{g,x})(u, η) = Σ_j C_j e^{iω_j u} Z g(u - x, η - ω_j)`.
pub fn zak_superosc(g: &Window, x: f64, p: &SuperoscParams, u: f64, eta: f64) -> Result<C64> {
    let mut acc = C64::new(0.0, 0.0);
    for (c, w) in p.terms() {
        acc += c * C64::from_polar(1.0, w * u) * zak(g, u - x, eta - w)?;
    }
    ensure_finite(acc, "Zak transform of superoscillation")
}

/// `F̃_n(t) = e^{-t²/2} F_n(t, a)`, the Gaussian signal with `x = 0`.
pub fn f_tilde(p: &SuperoscParams) -> impl Waveform + '_ {
    build_signal(&Window::gaussian(), 0.0, p)
}

/// `|Z F̃_n(u, η)|` and its bound `(1+a)^n e^{-u²/2} θ(-iu/2π, i/2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaBound {
    pub value: f64,
    pub bound: f64,
}

impl ThetaBound {
    pub fn holds(&self) -> bool {
        self.value <= self.bound * (1.0 + 1e-12)
    }
}

pub fn theta_bound_check(p: &SuperoscParams, u: f64, eta: f64) -> Result<ThetaBound> {
    let value = zak(&f_tilde(p), u, eta)?.norm();
    let th = theta(C64::new(0.0, -u / TAU), C64::new(0.0, 1.0 / TAU))?;
    let bound = (1.0 + p.a()).powi(p.n() as i32) * (-u * u / 2.0).exp() * th.re;
    Ok(ThetaBound { value, bound })
}

/// Outcome of a frame test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Frame,
    NotFrame,
    Inconclusive,
}

/// A point of the fundamental domain `[0, 1] × [0, 2π]` with the value of `|Z f|` there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extremum {
    pub u: f64,
    pub eta: f64,
    pub value: f64,
}

/// Result of [`frame_check`] on the lattice `α = β = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FrameVerdict {
    /// Smallest `|Z f|` found, on the grid or by refinement.
    pub lower_bound: f64,
    /// Largest sampled `|Z f|`.
    pub upper_bound: f64,
    pub grid_resolution: usize,
    pub verdict: Verdict,
    pub tolerance: f64,
    /// Smallest sampled grid value and its location.
    pub grid_minimum: Extremum,
    pub grid_maximum: Extremum,
    /// Best point after Newton refinement of the smallest local grid minima.
    pub refined_minimum: Extremum,
    /// Numeric estimate of the Wiener norm `Σ_k sup_{[0,1]} |f(· + k)|`.
    pub wiener_norm_estimate: f64,
    /// Heuristic only: the Wiener-norm estimate is finite.
    pub wiener_bounded: bool,
}

/// Samples `|Z f|` on `resolution²` points of `[0, 1) × [0, 2π)`, refines the
/// smallest local minima by Newton iteration on `Z f = 0` and classifies:
/// `NotFrame` when a refined point has `|Z f| < tolerance`, `Inconclusive`
/// when only a grid sample does, `Frame` otherwise.
pub fn frame_check<W: Waveform + ?Sized>(f: &W, resolution: usize) -> Result<FrameVerdict> {
    frame_check_with_tolerance(f, resolution, FRAME_TOLERANCE)
}

pub fn frame_check_with_tolerance<W: Waveform + ?Sized>(
    f: &W,
    resolution: usize,
    tolerance: f64,
) -> Result<FrameVerdict> {
    if resolution < 2 {
        return Err(Error::Domain(format!(
            "frame check resolution must be >= 2, got {resolution}"
        )));
    }
    let res = resolution;
    let du = 1.0 / res as f64;
    let deta = TAU / res as f64;
    let mut values = vec![0.0; res * res];
    for i in 0..res {
        for j in 0..res {
            values[i * res + j] = zak(f, i as f64 * du, j as f64 * deta)?.norm();
        }
    }
    let at = |i: usize, j: usize| Extremum {
        u: i as f64 * du,
        eta: j as f64 * deta,
        value: values[i * res + j],
    };
    let mut min = at(0, 0);
    let mut max = at(0, 0);
    let mut local_minima = Vec::new();
    for i in 0..res {
        for j in 0..res {
            let e = at(i, j);
            if e.value < min.value {
                min = e;
            }
            if e.value > max.value {
                max = e;
            }
            let mut is_min = true;
            for di in [res - 1, 0, 1] {
                for dj in [res - 1, 0, 1] {
                    if (di, dj) != (0, 0) && values[((i + di) % res) * res + (j + dj) % res] < e.value {
                        is_min = false;
                    }
                }
            }
            if is_min {
                local_minima.push(e);
            }
        }
    }
    local_minima.sort_by(|a, b| a.value.total_cmp(&b.value));
    let mut refined = min;
    for start in local_minima.iter().take(REFINE_CANDIDATES) {
        let r = refine_zero(f, start.u, start.eta, du.max(deta / TAU))?;
        if r.value < refined.value {
            refined = r;
        }
    }
    let verdict = if refined.value < tolerance {
        Verdict::NotFrame
    } else if min.value < tolerance {
        Verdict::Inconclusive
    } else {
        Verdict::Frame
    };
    let wiener = wiener_norm_estimate(f)?;
    Ok(FrameVerdict {
        lower_bound: min.value.min(refined.value),
        upper_bound: max.value,
        grid_resolution: res,
        verdict,
        tolerance,
        grid_minimum: min,
        grid_maximum: max,
        refined_minimum: refined,
        wiener_norm_estimate: wiener,
        wiener_bounded: wiener.is_finite(),
    })
}

/// Damped Newton iteration on the real system `(Re Z, Im Z)(u, η) = 0` with a
/// finite-difference Jacobian, started at `(u, η)` and kept within `radius`
/// (in `u` units, `2π·radius` in `η`) of the start.
fn refine_zero<W: Waveform + ?Sized>(f: &W, u0: f64, eta0: f64, cell: f64) -> Result<Extremum> {
    let radius = 4.0 * cell;
    let h = 1e-6;
    let (mut u, mut eta) = (u0, eta0);
    let mut z = zak(f, u, eta)?;
    for _ in 0..60 {
        if z.norm() == 0.0 {
            break;
        }
        let zu = (zak(f, u + h, eta)? - zak(f, u - h, eta)?) / (2.0 * h);
        let ze = (zak(f, u, eta + h)? - zak(f, u, eta - h)?) / (2.0 * h);
        let det = zu.re * ze.im - ze.re * zu.im;
        if det.abs() < 1e-300 {
            break;
        }
        let su = -(ze.im * z.re - ze.re * z.im) / det;
        let se = -(-zu.im * z.re + zu.re * z.im) / det;
        let mut step = 1.0;
        let mut improved = false;
        for _ in 0..40 {
            let (nu, ne) = (u + step * su, eta + step * se);
            if (nu - u0).abs() <= radius && (ne - eta0).abs() <= TAU * radius {
                let nz = zak(f, nu, ne)?;
                if nz.norm() < z.norm() {
                    u = nu;
                    eta = ne;
                    z = nz;
                    improved = true;
                    break;
                }
            }
            step /= 2.0;
        }
        if !improved || (step * su).abs() + (step * se).abs() < 1e-15 {
            break;
        }
    }
    Ok(Extremum {
        u: u.rem_euclid(1.0),
        eta: eta.rem_euclid(TAU),
        value: z.norm(),
    })
}

/// `Σ_k sup_{t ∈ [0,1]} |f(t + k)|` over the cells meeting the decay
/// interval, each sampled at 64 points.
pub fn wiener_norm_estimate<W: Waveform + ?Sized>(f: &W) -> Result<f64> {
    let s = f
        .support()
        .ok_or_else(|| Error::Contract("Wiener norm estimate needs a declared decay radius".into()))?;
    let lo = (s.center - s.radius).floor() as i64 - 1;
    let hi = (s.center + s.radius).ceil() as i64 + 1;
    let mut total = 0.0;
    for k in lo..=hi {
        let mut sup = 0.0f64;
        for i in 0..=64 {
            sup = sup.max(f.value(k as f64 + i as f64 / 64.0).norm());
        }
        total += sup;
    }
    Ok(total)
}

/// `θ(0, i/2π) = Σ_k e^{-k²/2}`.
pub fn gaussian_theta_constant() -> Result<f64> {
    Ok(theta(C64::new(0.0, 0.0), C64::new(0.0, 1.0 / (2.0 * PI)))?.re)
}
