//! Registry of identity checks: every closed form is compared with an
//! independent quadrature or series evaluation, grouped into suites, and
//! reported as JSON records.
//!
//! Each suite also reruns its quadrature-based values at twice the node
//! density and reports the largest change as `quadrature_stability`.

use crate::approx_stft::{
    approx_quadrature, fourier_factorization, stft_approx_gaussian_limit, stft_approx_hermite_closed,
    stft_approx_numeric, stft_approx_via_ambiguity, ApproximatingSignal,
};
use crate::error::{Error, Result};
use crate::evolution::{
    evolution_quadrature, evolve_gaussian_closed, evolve_hermite, evolve_numeric, evolve_superosc,
    evolve_superosc_representation, evolve_superosc_signal, schrodinger_residual, EvolutionPoint,
};
use crate::kernels::{
    calibrate_hermite_kernel, complex_hermite_generating_sum, cross_hermite_limit, dan_double_sum, fock_kernel,
    gabor_kernel, gabor_kernel_gaussian, gabor_kernel_hermite, gabor_kernel_numeric, generating_sum_check,
    hermite_convolution_centered, hermite_convolution_closed, hermite_convolution_same_shift,
    hermite_convolution_series, hermite_kernel_calibration, hermite_product_generating_check, hermite_product_integral,
    i_km_closed_complex, i_km_series_complex, kernel_quadrature, norm_sq_closed_gaussian, norm_sq_closed_hermite,
    phi_na_norm, stft_integral_representation, stft_superosc_closed, stft_superosc_cross_hermite,
    stft_superosc_fock_form, weyl_action_on_basis, TFQuadruple,
};
use crate::quadrature::{nodes_per_unit_from_env, QuadratureSpec, Scheme, DEFAULT_NODES_PER_UNIT, MIN_NODES_PER_UNIT};
use crate::signals::{build_signal, FnWaveform, Shifted, Waveform, Window};
use crate::special::{hermite_function, hermite_function_normalized, theta};
use crate::superosc::{f_n, SuperoscParams};
use crate::transforms::{
    bargmann, bargmann_kernel_overlap, convolve, fourier, inner_product, linspace, reconstruct, stft, stft_norm_sq,
    stft_plane_inner, stft_quadrature, Grid, MOYAL_FACTOR,
};
use crate::zak::{
    f_tilde, frame_check, theta_bound_check, zak_gaussian, zak_gaussian_theta, zak_shift_identity_check, Verdict,
};
use crate::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;
/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 42;
/// Largest change allowed when the node density doubles, relative to `max(1, |v|)`.
pub const STABILITY_TOLERANCE: f64 = 1e-9;

/// A group of related checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Stft,
    Kernels,
    Hermite,
    Zak,
    Evolution,
    Approx,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Stft,
        Suite::Kernels,
        Suite::Hermite,
        Suite::Zak,
        Suite::Evolution,
        Suite::Approx,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Stft => "stft",
            Suite::Kernels => "kernels",
            Suite::Hermite => "hermite",
            Suite::Zak => "zak",
            Suite::Evolution => "evolution",
            Suite::Approx => "approx",
        }
    }

    /// Parses a suite name, with `all` expanding to every suite.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            Ok(Suite::ALL.to_vec())
        } else {
            Ok(vec![s.parse()?])
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}

/// Seed and base node density for a verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub nodes_per_unit: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            nodes_per_unit: DEFAULT_NODES_PER_UNIT,
        }
    }
}

impl VerifyConfig {
    /// Default configuration with the node density taken from the environment.
    pub fn from_env(seed: u64) -> Result<Self> {
        Ok(Self {
            seed,
            nodes_per_unit: nodes_per_unit_from_env()?.unwrap_or(DEFAULT_NODES_PER_UNIT),
        })
    }
}

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub suite: Suite,
    pub id: String,
    pub paper_anchor: String,
    pub params: Value,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

/// A verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub seed: u64,
    pub nodes_per_unit: usize,
    pub suites: Vec<Record>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.suites.iter().all(|r| r.pass)
    }

    pub fn record(&self, id: &str) -> Option<&Record> {
        self.suites.iter().find(|r| r.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.suites.iter().filter(|r| !r.pass)
    }
}

/// Runs the selected suites.
pub fn run(suites: &[Suite], cfg: &VerifyConfig) -> Result<Report> {
    if cfg.nodes_per_unit < MIN_NODES_PER_UNIT {
        return Err(Error::Domain(format!(
            "nodes per unit must be >= {MIN_NODES_PER_UNIT}, got {}",
            cfg.nodes_per_unit
        )));
    }
    let mut records = Vec::new();
    for &s in suites {
        records.extend(run_suite(s, cfg));
    }
    Ok(Report {
        schema: SCHEMA_VERSION,
        seed: cfg.seed,
        nodes_per_unit: cfg.nodes_per_unit,
        suites: records,
    })
}

/// Runs one suite at the configured density and at twice that density.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<Record> {
    let base = Ctx::new(cfg.seed, cfg.nodes_per_unit);
    let fine = Ctx::new(cfg.seed, cfg.nodes_per_unit * 2);
    let coarse_checks = suite_checks(suite, &base);
    let fine_checks = suite_checks(suite, &fine);
    let stability = stability_record(&coarse_checks, &fine_checks, cfg.nodes_per_unit);
    coarse_checks
        .into_iter()
        .map(|c| c.into_record(suite))
        .chain(std::iter::once(stability.into_record(suite)))
        .collect()
}

fn suite_checks(suite: Suite, ctx: &Ctx) -> Vec<Check> {
    match suite {
        Suite::Stft => stft_suite(ctx),
        Suite::Kernels => kernels_suite(ctx),
        Suite::Hermite => hermite_suite(ctx),
        Suite::Zak => zak_suite(ctx),
        Suite::Evolution => evolution_suite(ctx),
        Suite::Approx => approx_suite(ctx),
    }
}

struct Ctx {
    seed: u64,
    npu: usize,
}

impl Ctx {
    fn new(seed: u64, npu: usize) -> Self {
        Self { seed, npu }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt))
    }

    /// Line rule at the run's density.
    fn line(&self, radius: f64) -> QuadratureSpec {
        QuadratureSpec::new(radius, self.npu, Scheme::CompositeSimpson).expect("valid line rule")
    }

    /// Rule for plane integrals at a quarter of the run's density.
    fn plane(&self, radius: f64) -> QuadratureSpec {
        QuadratureSpec::new(radius, (self.npu / 4).max(MIN_NODES_PER_UNIT), Scheme::CompositeSimpson)
            .expect("valid plane rule")
    }

    fn with_density(&self, q: QuadratureSpec) -> QuadratureSpec {
        q.with_nodes_per_unit(self.npu).expect("valid density")
    }
}

struct Check {
    id: &'static str,
    anchor: &'static str,
    params: Value,
    tolerance: f64,
    max_error: f64,
    pass: Option<bool>,
    detail: Option<Value>,
    values: Vec<C64>,
    error: Option<String>,
}

impl Check {
    fn new(id: &'static str, anchor: &'static str, params: Value, tolerance: f64) -> Self {
        Self {
            id,
            anchor,
            params,
            tolerance,
            max_error: 0.0,
            pass: None,
            detail: None,
            values: Vec::new(),
            error: None,
        }
    }

    fn err(&mut self, e: f64) {
        if e.is_nan() || e > self.max_error {
            self.max_error = if e.is_nan() { f64::INFINITY } else { e };
        }
    }

    /// Records `|a - b| / max(1, |a|)`.
    fn rel(&mut self, a: C64, b: C64) {
        self.err((a - b).norm() / a.norm().max(1.0));
    }

    fn value(&mut self, v: C64) {
        self.values.push(v);
    }

    fn run<F: FnOnce(&mut Check) -> Result<()>>(mut self, f: F) -> Self {
        if let Err(e) = f(&mut self) {
            self.error = Some(e.to_string());
            self.max_error = f64::INFINITY;
        }
        self
    }

    fn passed(&self) -> bool {
        self.error.is_none() && self.pass.unwrap_or(self.max_error <= self.tolerance)
    }

    fn into_record(self, suite: Suite) -> Record {
        let pass = self.passed();
        let detail = match (self.detail, self.error) {
            (d, None) => d,
            (_, Some(e)) => Some(json!({ "error": e })),
        };
        Record {
            suite,
            id: self.id.to_string(),
            paper_anchor: self.anchor.to_string(),
            params: self.params,
            max_error: self.max_error,
            tolerance: self.tolerance,
            pass,
            detail,
        }
    }
}

fn stability_record(coarse: &[Check], fine: &[Check], npu: usize) -> Check {
    let mut c = Check::new(
        "quadrature_stability",
        "every quadrature value above, recomputed at twice the node density",
        json!({ "nodes_per_unit": npu, "doubled": npu * 2 }),
        STABILITY_TOLERANCE,
    );
    let mut worst = "";
    let mut count = 0usize;
    for (a, b) in coarse.iter().zip(fine) {
        if a.values.len() != b.values.len() {
            c.error = Some(format!("{} produced a different number of values when refined", a.id));
            c.max_error = f64::INFINITY;
            continue;
        }
        for (x, y) in a.values.iter().zip(&b.values) {
            let e = (x - y).norm() / x.norm().max(1.0);
            count += 1;
            if e.is_nan() || e > c.max_error {
                worst = a.id;
            }
            c.err(e);
        }
    }
    c.detail = Some(json!({ "values_compared": count, "worst_check": worst }));
    c
}

fn params(a: f64, n: usize) -> Result<SuperoscParams> {
    SuperoscParams::new(a, n)
}

fn random_quadruple(rng: &mut ChaCha8Rng, r: f64) -> TFQuadruple {
    TFQuadruple {
        x: rng.gen_range(-r..r),
        omega: rng.gen_range(-r..r),
        u: rng.gen_range(-r..r),
        eta: rng.gen_range(-r..r),
    }
}

fn line_norm_sq<W: Waveform + ?Sized>(f: &W, q: &QuadratureSpec) -> Result<f64> {
    q.integrate_real(|t| f.value(t).norm_sqr())
}

fn stft_suite(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();

    out.push(
        Check::new(
            "stft_kernel_sum",
            "STFT of the superoscillating signal as a combination of Gabor kernels",
            json!({ "windows": ["gaussian", "hermite(1)"], "a": [1.5, 2.0], "n": [2, 4, 8], "x": [0.0, 0.5],
                    "grid": "u, eta in [-2, 2], 5x5", "error": "|numeric - closed| / (1+a)^n" }),
            1e-8,
        )
        .run(|c| {
            let axis = linspace(-2.0, 2.0, 5);
            for g in [Window::gaussian(), Window::hermite(1)] {
                for a in [1.5, 2.0] {
                    for n in [2, 4, 8] {
                        let p = params(a, n)?;
                        let scale = (1.0 + a).powi(n as i32);
                        for x in [0.0, 0.5] {
                            let sig = build_signal(&g, x, &p);
                            let q = ctx.with_density(stft_quadrature(&sig, &g, 2.0)?);
                            for &u in &axis {
                                for &eta in &axis {
                                    let v = stft(&sig, &g, u, eta, &q)?;
                                    let k = stft_superosc_closed(&g, x, &p, u, eta)?;
                                    c.err((v - k).norm() / scale);
                                    c.value(v / scale);
                                }
                            }
                        }
                    }
                }
            }
            Ok(())
        }),
    );

    let moyal = |ctx: &Ctx| -> Result<f64> {
        let h0 = Window::hermite(0);
        let g = Window::gaussian();
        stft_norm_sq(&h0, &g, &ctx.line(18.0), &ctx.plane(11.0), &ctx.plane(11.0))
    };
    out.push(
        Check::new(
            "moyal_norm",
            "isometry of the STFT, squared plane norm of the Gaussian STFT of h_0 against the stated value pi",
            json!({ "window": "gaussian", "signal": "h_0", "target": PI, "error": "relative" }),
            1e-4,
        )
        .run(|c| {
            let v = moyal(ctx)?;
            c.err((v - PI).abs() / PI);
            c.value(C64::new(v, 0.0));
            c.detail = Some(json!({ "value": v, "target": PI, "ratio": v / PI,
                                    "value_with_2pi_factor": MOYAL_FACTOR * PI }));
            Ok(())
        }),
    );
    out.push(
        Check::new(
            "moyal_norm_scaled",
            "isometry of the STFT with the 2pi factor of the unnormalized STFT: 2pi ||g||^2 ||f||^2",
            json!({ "window": "gaussian", "signal": "h_0", "target": MOYAL_FACTOR * PI, "error": "relative" }),
            1e-4,
        )
        .run(|c| {
            let v = moyal(ctx)?;
            let target = MOYAL_FACTOR * PI;
            c.err((v - target).abs() / target);
            c.value(C64::new(v, 0.0));
            Ok(())
        }),
    );
    out.push(
        Check::new(
            "moyal_cross",
            "Moyal formula for (f1, f2, g1, g2) = (h_0, h_1, phi, h_1)",
            json!({ "f1": "h_0", "g1": "gaussian", "f2": "h_1", "g2": "h_1", "error": "absolute" }),
            1e-5,
        )
        .run(|c| {
            let (h0, h1, g) = (Window::hermite(0), Window::hermite(1), Window::gaussian());
            let lhs = stft_plane_inner(&h0, &g, &h1, &h1, &ctx.line(18.0), &ctx.plane(11.0), &ctx.plane(11.0))?;
            let q = ctx.line(18.0);
            let rhs = MOYAL_FACTOR * inner_product(&h0, &h1, &q)? * inner_product(&g, &h1, &q)?.conj();
            c.err((lhs - rhs).norm());
            c.value(lhs);
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "reconstruction",
            "inversion formula recovering h_0 from its Gaussian STFT",
            json!({ "grid": "[-12, 12]^2, spacing 0.05, bilinear", "y": [-1.0, -0.5, 0.0, 0.5, 1.0],
                    "note": "limited by grid interpolation, excluded from the density gate" }),
            1e-3,
        )
        .run(|c| {
            let g = Window::gaussian();
            let axis = linspace(-12.0, 12.0, 481);
            let grid = Grid::from_fn(axis.clone(), axis, |u, eta| {
                Ok(gabor_kernel_gaussian(&TFQuadruple {
                    x: 0.0,
                    omega: 0.0,
                    u,
                    eta,
                }))
            })?;
            let q = ctx.plane(12.0);
            for y in [-1.0, -0.5, 0.0, 0.5, 1.0] {
                let v = reconstruct(&grid, &g, y, &q)?;
                c.err((v - (-y * y / 2.0f64).exp()).norm());
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "integral_representation",
            "F_n recovered from the STFT of the superoscillating signal by the reconstruction integral",
            json!({ "window": "gaussian", "a": 2.0, "n": 4, "x": 0.3, "y": [0.1, 0.6] }),
            1e-6,
        )
        .run(|c| {
            let g = Window::gaussian();
            let p = params(2.0, 4)?;
            let q = ctx.plane(14.0);
            for y in [0.1, 0.6] {
                let v = stft_integral_representation(&g, 0.3, y, &p, &q)?;
                c.rel(f_n(&p, y), v);
                c.value(v);
            }
            Ok(())
        }),
    );
    out
}

fn kernels_suite(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();

    out.push(
        Check::new(
            "gabor_kernel_gaussian",
            "closed Gabor kernel of the Gaussian window against quadrature",
            json!({ "samples": 20, "range": [-2.0, 2.0] }),
            1e-10,
        )
        .run(|c| {
            let g = Window::gaussian();
            let mut rng = ctx.rng(1);
            for _ in 0..20 {
                let q = random_quadruple(&mut rng, 2.0);
                let v = gabor_kernel_numeric(&g, &q, &ctx.with_density(kernel_quadrature(&g, &q)))?;
                c.err((v - gabor_kernel_gaussian(&q)).norm());
                c.value(v);
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "gabor_kernel_hermite",
            "closed Gabor kernel of the Hermite window h_n (Gaussian times Laguerre) after calibrating its constant",
            json!({ "n": [1, 2, 3, 4], "samples_per_n": 5, "calibration": "2^n n!" }),
            1e-8,
        )
        .run(|c| {
            let mut rng = ctx.rng(2);
            let mut calibrations = Vec::new();
            for n in 1..=4 {
                let g = Window::hermite(n);
                let cal = calibrate_hermite_kernel(n, &ctx.line(g.decay_radius() + 9.0))?;
                c.err((cal - hermite_kernel_calibration(n)).abs() / hermite_kernel_calibration(n));
                calibrations.push(
                    json!({ "n": n, "oracle": cal, "printed": 1.0, "calibrated": hermite_kernel_calibration(n) }),
                );
                for _ in 0..5 {
                    let q = random_quadruple(&mut rng, 2.0);
                    let v = gabor_kernel_numeric(&g, &q, &ctx.with_density(kernel_quadrature(&g, &q)))?;
                    c.err((v - gabor_kernel_hermite(n, &q)).norm());
                    c.value(v);
                }
            }
            c.detail = Some(json!({ "calibration": calibrations }));
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "fock_form",
            "Gaussian-window STFT of the superoscillating signal through normalized Fock kernels",
            json!({ "a": 2.0, "n": 4, "points": 3 }),
            1e-10,
        )
        .run(|c| {
            let p = params(2.0, 4)?;
            let g = Window::gaussian();
            for &(x, u, eta) in &[(0.0, 0.3, -0.5), (0.7, -0.4, 1.1), (-1.2, 0.9, 0.2)] {
                c.rel(
                    stft_superosc_closed(&g, x, &p, u, eta)?,
                    stft_superosc_fock_form(x, &p, u, eta)?,
                );
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "fock_kernel",
            "reproducing kernel of the Fock space as the overlap of Bargmann kernels",
            json!({ "samples": 4 }),
            1e-10,
        )
        .run(|c| {
            let mut rng = ctx.rng(3);
            for _ in 0..4 {
                let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let w = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let v = bargmann_kernel_overlap(z, w, &ctx.line(20.0))?;
                c.rel(fock_kernel(z, w), v);
                c.value(v);
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "weyl_action",
            "Bargmann image of a time-frequency shift acting on the Fock basis",
            json!({ "a": 0.5, "b": 1.0, "m": [0, 1, 2] }),
            1e-8,
        )
        .run(|c| {
            let (a, b) = (0.5, 1.0);
            let z = C64::new(0.2, 0.3);
            for m in 0..=2 {
                let psi = FnWaveform::new(
                    move |t: f64| C64::from_polar(hermite_function_normalized(m, t - a), b * t),
                    None,
                );
                let v = bargmann(&psi, z, &ctx.line(20.0))?;
                c.rel(weyl_action_on_basis(a, b, m, z), v);
                c.value(v);
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "norm_gaussian",
            "closed norm of the Gaussian superoscillating signal, ||g||^2 ||S||^2, against quadrature",
            json!({ "a": 2.0, "n": "1..=8", "x": [0.0, 0.5], "error": "relative" }),
            1e-5,
        )
        .run(|c| {
            let g = Window::gaussian();
            for n in 1..=8 {
                let p = params(2.0, n)?;
                for x in [0.0, 0.5] {
                    let sig = build_signal(&g, x, &p);
                    let v = g.norm_sq() * line_norm_sq(&sig, &ctx.line(20.0))?;
                    let closed = norm_sq_closed_gaussian(x, &p);
                    c.err((v - closed).abs() / closed.abs());
                    c.value(C64::new(v, 0.0));
                }
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "norm_gaussian_plane",
            "plane norm of the Gaussian STFT of the superoscillating signal, 2pi times the closed norm",
            json!({ "a": 2.0, "n": 2, "x": 0.5, "error": "relative" }),
            1e-5,
        )
        .run(|c| {
            let g = Window::gaussian();
            let p = params(2.0, 2)?;
            let sig = build_signal(&g, 0.5, &p);
            let v = stft_norm_sq(&sig, &g, &ctx.line(18.0), &ctx.plane(11.0), &ctx.plane(11.0))?;
            let closed = MOYAL_FACTOR * norm_sq_closed_gaussian(0.5, &p);
            c.err((v - closed).abs() / closed);
            c.value(C64::new(v, 0.0));
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "norm_hermite",
            "closed norm ||h_k||^2 ||S^{h_m}||^2 of the Hermite superoscillating signal against quadrature",
            json!({ "a": 2.0, "n": "1..=4", "k": "0..=2", "m": "0..=2", "x": 0.3, "error": "relative" }),
            1e-5,
        )
        .run(|c| {
            for n in 1..=4 {
                let p = params(2.0, n)?;
                for m in 0..=2 {
                    let sig = build_signal(&Window::hermite(m), 0.3, &p);
                    let line = line_norm_sq(&sig, &ctx.line(22.0))?;
                    for k in 0..=2 {
                        let v = Window::hermite(k).norm_sq() * line;
                        let closed = norm_sq_closed_hermite(k, m, 0.3, &p)?;
                        c.err((v - closed).abs() / closed.abs());
                        c.value(C64::new(v, 0.0));
                    }
                }
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "dan_identity",
            "double coefficient sum equals the weighted norm of phi_{n,a}",
            json!({ "cases": [[2.0, 4, 0.5], [1.5, 6, -0.3], [3.0, 2, 0.0], [2.0, 8, 1.0]] }),
            1e-8,
        )
        .run(|c| {
            for &(a, n, x) in &[(2.0, 4, 0.5), (1.5, 6, -0.3), (3.0, 2, 0.0), (2.0, 8, 1.0)] {
                let p = params(a, n)?;
                let lhs = dan_double_sum(x, &p);
                let rhs = phi_na_norm(x, &p, &ctx.line(16.0))?;
                c.err((lhs - rhs).abs() / lhs.abs().max(1.0));
                c.value(C64::new(rhs, 0.0));
            }
            Ok(())
        }),
    );

    out.push(supershift_check(
        "supershift_gabor",
        "supershift limit of the Gabor kernel sum, error ratio between n = 40 and n = 10",
        |n| {
            let g = Window::gaussian();
            let p = params(1.5, n)?;
            let lim = gabor_kernel(
                &g,
                &TFQuadruple {
                    x: 0.2,
                    omega: 1.5,
                    u: 0.3,
                    eta: 0.2,
                },
            )?;
            Ok((stft_superosc_closed(&g, 0.2, &p, 0.3, 0.2)? - lim).norm())
        },
    ));
    out
}

fn supershift_check<F: Fn(usize) -> Result<f64>>(id: &'static str, anchor: &'static str, err: F) -> Check {
    Check::new(
        id,
        anchor,
        json!({ "a": 1.5, "n": [10, 40], "error": "err(40) / err(10)" }),
        0.6,
    )
    .run(|c| {
        let (e10, e40) = (err(10)?, err(40)?);
        c.err(e40 / e10);
        c.detail = Some(json!({ "err_10": e10, "err_40": e40 }));
        Ok(())
    })
}

fn hermite_suite(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();

    out.push(
        Check::new(
            "hermite_convolution",
            "convolutions of modulated Hermite functions in closed form against quadrature",
            json!({ "k": "0..=4", "m": "0..=4", "lambda": [-3.0, -1.5, 0.0, 1.5, 3.0],
                    "shifts": [[0.5, -0.3], [0.0, 0.0], [0.4, 0.4]], "error": "|d| / max(1, |v|)" }),
            1e-8,
        )
        .run(|c| {
            let q = ctx.line(24.0);
            for k in 0..=4 {
                for m in 0..=4 {
                    let (hk, hm) = (Window::hermite(k), Window::hermite(m));
                    for lambda in [-3.0, -1.5, 0.0, 1.5, 3.0] {
                        for &(x, u) in &[(0.5, -0.3), (0.0, 0.0), (0.4, 0.4)] {
                            let v = convolve(&Shifted::new(&hk, 0.0, x), &Shifted::new(&hm, 0.0, u), lambda, &q)?;
                            c.rel(v, hermite_convolution_closed(k, m, x, u, lambda));
                            c.rel(v, hermite_convolution_series(k, m, x, u, lambda));
                            if x == 0.0 && u == 0.0 {
                                c.rel(v, hermite_convolution_centered(k, m, lambda));
                            }
                            if x == u {
                                c.rel(v, hermite_convolution_same_shift(k, m, x, lambda));
                            }
                            c.value(v);
                        }
                    }
                }
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "i_km_compact",
            "compact 2D-complex Hermite form of the polynomials I_{k,m} against their defining sum",
            json!({ "samples": 20, "k": "0..=6", "m": "0..=6", "error": "|d| / max(1, |series|)" }),
            1e-10,
        )
        .run(|c| {
            let mut rng = ctx.rng(4);
            for _ in 0..20 {
                let d = C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
                let l = C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
                for k in 0..=6 {
                    for m in 0..=6 {
                        c.rel(i_km_series_complex(k, m, d, l), i_km_closed_complex(k, m, d, l));
                    }
                }
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "hermite_product_integral",
            "Fourier integral of a product of shifted Hermite functions against quadrature",
            json!({ "k": "0..=3", "m": "0..=3", "points": [[0.3, 0.0, 0.9], [-0.4, 0.5, -1.2]] }),
            1e-8,
        )
        .run(|c| {
            let q = ctx.line(24.0);
            for k in 0..=3 {
                for m in 0..=3 {
                    for &(x, u, l) in &[(0.3, 0.0, 0.9), (-0.4, 0.5, -1.2)] {
                        let v = q.integrate(|t| {
                            C64::from_polar(1.0, t * l) * hermite_function(k, t - x) * hermite_function(m, t - u)
                        })?;
                        c.rel(v, hermite_product_integral(k, m, x, u, l));
                        c.value(v);
                    }
                }
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "cross_window_stft",
            "Hermite-window STFT of the Hermite superoscillating signal in 2D-complex Hermite form",
            json!({ "pairs": [[0, 0], [1, 0], [0, 1], [1, 1], [2, 1], [1, 3]], "a": 2.0, "n": 4, "x": 0.5,
                    "point": [0.3, -0.4] }),
            1e-7,
        )
        .run(|c| {
            let p = params(2.0, 4)?;
            for &(k, m) in &[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 3)] {
                let hk = Window::hermite(k);
                let sig = build_signal(&Window::hermite(m), 0.5, &p);
                let q = ctx.with_density(stft_quadrature(&sig, &hk, 1.0)?);
                let v = stft(&sig, &hk, 0.3, -0.4, &q)?;
                c.rel(v, stft_superosc_cross_hermite(k, m, 0.5, &p, 0.3, -0.4)?);
                c.value(v);
            }
            Ok(())
        }),
    );

    out.push(supershift_check(
        "supershift_hermite",
        "supershift limit of the 2D-complex Hermite kernel sum, error ratio between n = 40 and n = 10",
        |n| {
            let p = params(1.5, n)?;
            let lim = cross_hermite_limit(1, 2, 0.2, 1.5, 0.3, 0.2);
            Ok((stft_superosc_cross_hermite(1, 2, 0.2, &p, 0.3, 0.2)? - lim).norm())
        },
    ));

    out.push(
        Check::new(
            "generating_complex_hermite",
            "generating function of the 2D-complex Hermite polynomials, truncated at order 20",
            json!({ "samples": 5, "order": 20, "uv_bound": 0.5 }),
            1e-8,
        )
        .run(|c| {
            let mut rng = ctx.rng(5);
            for _ in 0..5 {
                let mut z = || C64::from_polar(rng.gen_range(0.0..0.5), rng.gen_range(0.0..TAU));
                let (u, v) = (z(), z());
                let zz = z() * 3.0;
                let w = z() * 3.0;
                let g = complex_hermite_generating_sum(zz, w, u, v, 20)?;
                c.err(g.residual() / g.rhs.norm().max(1.0));
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "generating_convolution",
            "generating function of the same-shift Hermite convolutions, truncated at order 20",
            json!({ "samples": 5, "order": 20, "uv_bound": 0.5 }),
            1e-8,
        )
        .run(|c| {
            let mut rng = ctx.rng(6);
            for _ in 0..5 {
                let mut z = || C64::from_polar(rng.gen_range(0.0..0.5), rng.gen_range(0.0..TAU));
                let (u, v) = (z(), z());
                let x = rng.gen_range(-1.0..1.0);
                let l = rng.gen_range(-2.0..2.0);
                let g = generating_sum_check(x, u, v, l, 20)?;
                c.err(g.residual() / g.rhs.norm().max(1.0));
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "generating_product",
            "generating function of products of Hermite functions, truncated at order 20",
            json!({ "samples": 5, "order": 20, "uv_bound": 0.5 }),
            1e-8,
        )
        .run(|c| {
            let mut rng = ctx.rng(7);
            for _ in 0..5 {
                let mut z = || C64::from_polar(rng.gen_range(0.0..0.5), rng.gen_range(0.0..TAU));
                let (u, v) = (z(), z());
                let x = rng.gen_range(-1.0..1.0);
                let l = rng.gen_range(-2.0..2.0);
                let g = hermite_product_generating_check(x, u, v, l, 20)?;
                c.err(g.residual() / g.rhs.norm().max(1.0));
            }
            Ok(())
        }),
    );
    out
}

fn zak_suite(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();

    out.push(
        Check::new(
            "zak_shift_covariance",
            "Zak transform of a time-frequency shift in terms of the Zak transform of the signal",
            json!({ "signals": ["gaussian", "hermite(1)", "superosc-gaussian a=2 n=4"], "samples": 5 }),
            1e-10,
        )
        .run(|c| {
            let p = params(2.0, 4)?;
            let sig = f_tilde(&p);
            let g = Window::gaussian();
            let h = Window::hermite(1);
            let fs: [&dyn Waveform; 3] = [&g, &h, &sig];
            let mut rng = ctx.rng(8);
            for f in fs {
                for _ in 0..5 {
                    let (x, w) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                    let (u, eta) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..TAU));
                    c.err(zak_shift_identity_check(f, x, w, u, eta)?);
                }
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "zak_gaussian_theta",
            "Zak transform of the Gaussian as a theta function",
            json!({ "grid": "u in [0, 1], eta in [0, 2pi], 8x8" }),
            1e-10,
        )
        .run(|c| {
            for u in linspace(0.0, 1.0, 8) {
                for eta in linspace(0.0, TAU, 8) {
                    c.err((zak_gaussian(u, eta) - zak_gaussian_theta(u, eta)?).norm());
                }
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "theta_bound",
            "theta-function upper bound on the Zak transform of the Gaussian superoscillating signal",
            json!({ "cases": [[2.0, 4], [1.5, 6]], "grid": "u in [-2, 2], eta in [0, 2pi], 10x10",
                    "error": "max(|Z| / bound - 1, 0)" }),
            1e-12,
        )
        .run(|c| {
            for &(a, n) in &[(2.0, 4), (1.5, 6)] {
                let p = params(a, n)?;
                for u in linspace(-2.0, 2.0, 10) {
                    for eta in linspace(0.0, TAU, 10) {
                        let b = theta_bound_check(&p, u, eta)?;
                        c.err((b.value / b.bound - 1.0).max(0.0));
                    }
                }
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "theta_constant",
            "theta(0, i/2pi) against 2.506628",
            json!({ "z": 0.0, "tau": "i/2pi", "target": 2.506628 }),
            1e-6,
        )
        .run(|c| {
            let v = theta(C64::new(0.0, 0.0), C64::new(0.0, 1.0 / TAU))?;
            c.err((v - 2.506628).norm());
            c.detail = Some(json!({ "value": v.re }));
            Ok(())
        }),
    );

    let verdicts = |p: &SuperoscParams| -> Result<(crate::zak::FrameVerdict, crate::zak::FrameVerdict)> {
        let sig = f_tilde(p);
        Ok((frame_check(&sig, 128)?, frame_check(&sig, 256)?))
    };
    out.push(
        Check::new(
            "frame_verdict_superosc",
            "Gabor frame property of the Gaussian superoscillating signal on the critical lattice",
            json!({ "a": 2.0, "n": 4, "resolution": [128, 256], "expected": "Frame",
                    "error": "1 unless both verdicts are Frame" }),
            0.0,
        )
        .run(|c| {
            let p = params(2.0, 4)?;
            let (v1, v2) = verdicts(&p)?;
            let ok = v1.verdict == Verdict::Frame && v2.verdict == Verdict::Frame;
            c.err(if ok { 0.0 } else { 1.0 });
            c.detail = Some(json!({ "verdict_128": v1.verdict, "verdict_256": v2.verdict,
                                    "refined_minimum": v1.refined_minimum, "lower_bound": v1.lower_bound }));
            Ok(())
        }),
    );
    out.push(
        Check::new(
            "frame_verdict_stability",
            "frame verdicts unchanged when the scan resolution doubles",
            json!({ "signals": ["superosc-gaussian a=2 n=4", "gaussian"], "resolution": [128, 256] }),
            0.0,
        )
        .run(|c| {
            let p = params(2.0, 4)?;
            let (v1, v2) = verdicts(&p)?;
            let g = Window::gaussian();
            let (w1, w2) = (frame_check(&g, 128)?, frame_check(&g, 256)?);
            let ok = v1.verdict == v2.verdict && w1.verdict == w2.verdict;
            c.err(if ok { 0.0 } else { 1.0 });
            c.detail = Some(json!({ "superosc": [v1.verdict, v2.verdict], "gaussian": [w1.verdict, w2.verdict] }));
            Ok(())
        }),
    );
    out
}

fn evolution_suite(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    let pt = |x, t, x0, k0| EvolutionPoint { x, t, x0, k0 };

    out.push(
        Check::new(
            "evolution_numeric_vs_closed",
            "free evolution of the shifted Gaussian: quadrature against the closed form",
            json!({ "points": [[0.3, 0.5, 0.2, 1.0], [-0.5, 0.2, 0.4, -0.8], [1.0, -0.3, 0.0, 0.5]] }),
            1e-7,
        )
        .run(|c| {
            let g = Window::gaussian();
            let q = ctx.with_density(evolution_quadrature(&g));
            for p in [
                pt(0.3, 0.5, 0.2, 1.0),
                pt(-0.5, 0.2, 0.4, -0.8),
                pt(1.0, -0.3, 0.0, 0.5),
            ] {
                let v = evolve_numeric(&g, &p, &q)?.value;
                c.err((v - evolve_gaussian_closed(&p)).norm());
                c.value(v);
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "evolution_initial_datum",
            "every evolution route at t = 0 equals 2pi times the datum",
            json!({ "routes": ["numeric gaussian", "closed gaussian", "hermite m=0", "hermite m=1", "numeric h_1"],
                    "points": [[0.5, 0.0, 0.0, 1.0], [0.4, 0.0, 0.0, 0.5]] }),
            1e-7,
        )
        .run(|c| {
            let g = Window::gaussian();
            let h1 = Window::hermite(1);
            let datum = |w: &Window, p: &EvolutionPoint| TAU * C64::from_polar(1.0, p.k0 * p.x) * w.eval(p.x - p.x0);
            for p in [pt(0.5, 0.0, 0.0, 1.0), pt(0.4, 0.0, 0.0, 0.5)] {
                let qg = ctx.with_density(evolution_quadrature(&g));
                let qh = ctx.with_density(evolution_quadrature(&h1));
                let a = evolve_numeric(&g, &p, &qg)?.value;
                let b = evolve_hermite(0, &p, &qg)?.value;
                let d = evolve_hermite(1, &p, &qh)?.value;
                let e = evolve_numeric(&h1, &p, &qh)?.value;
                c.err((a - datum(&g, &p)).norm());
                c.err((evolve_gaussian_closed(&p) - datum(&g, &p)).norm());
                c.err((b - datum(&g, &p)).norm());
                c.err((d - datum(&h1, &p)).norm());
                c.err((e - datum(&h1, &p)).norm());
                for v in [a, b, d, e] {
                    c.value(v);
                }
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "evolution_hermite_route",
            "free evolution of shifted Hermite windows: Hermite-domain integral against the Fourier route",
            json!({ "m": [0, 1, 2], "points": [[0.0, 0.3, 0.1, 1.0], [0.2, 0.4, -0.3, 0.8]] }),
            1e-6,
        )
        .run(|c| {
            for m in 0..=2 {
                let h = Window::hermite(m);
                let q = ctx.with_density(evolution_quadrature(&h));
                for p in [pt(0.0, 0.3, 0.1, 1.0), pt(0.2, 0.4, -0.3, 0.8)] {
                    let a = evolve_hermite(m, &p, &q)?.value;
                    let b = evolve_numeric(&h, &p, &q)?.value;
                    c.err((a - b).norm());
                    c.value(a);
                    c.value(b);
                }
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "evolution_pde_residual",
            "closed Gaussian evolution satisfies i d/dt phi = -d^2/dx^2 phi (central differences, h = 1e-3)",
            json!({ "samples": 10, "t_bound": 1.0, "error": "|residual| / |phi|" }),
            1e-4,
        )
        .run(|c| {
            let mut rng = ctx.rng(9);
            for _ in 0..10 {
                let p = pt(
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.5..1.5),
                );
                let f = |x: f64, t: f64| evolve_gaussian_closed(&EvolutionPoint { x, t, ..p });
                let r = schrodinger_residual(f, p.x, p.t, 1e-3);
                c.err(r.norm() / f(p.x, p.t).norm());
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "evolution_superosc_modes",
            "mode-wise evolution of F_n satisfies the free equation and reduces to F_n at t = 0",
            json!({ "a": 2.0, "n": 4, "y": 0.3, "t": 0.2, "step": 1e-3 }),
            1e-5,
        )
        .run(|c| {
            let p = params(2.0, 4)?;
            let r = schrodinger_residual(|y, t| evolve_superosc(&p, y, t), 0.3, 0.2, 1e-3);
            c.err(r.norm());
            c.err((evolve_superosc(&p, 0.3, 0.0) - f_n(&p, 0.3)).norm());
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "evolution_representation",
            "evolved Gaussian superoscillating signal through the reconstruction integral",
            json!({ "a": 2.0, "n": 4, "x": 0.2, "y": 0.5, "t": [0.0, 0.3] }),
            1e-6,
        )
        .run(|c| {
            let p = params(2.0, 4)?;
            let q = ctx.plane(1.0);
            for t in [0.0, 0.3] {
                let v = evolve_superosc_representation(&p, 0.2, 0.5, t, &q)?;
                c.rel(evolve_superosc_signal(&p, 0.2, 0.5, t)?, v);
                c.value(v);
            }
            let v0 = evolve_superosc_representation(&p, 0.2, 0.5, 0.0, &q)?;
            c.rel(f_n(&p, 0.5), v0);
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "evolution_longevity",
            "evolved superoscillation approaches the evolved plane wave e^{iay - ia^2 t} as n grows",
            json!({ "a": 1.5, "y": 0.1, "t": 0.1, "n": [10, 40], "error": "err(40) / err(10)" }),
            1.0,
        )
        .run(|c| {
            let (a, y, t) = (1.5, 0.1, 0.1);
            let target = C64::from_polar(1.0, a * y - a * a * t);
            let err = |n| -> Result<f64> { Ok((evolve_superosc(&params(a, n)?, y, t) - target).norm()) };
            let (e10, e40) = (err(10)?, err(40)?);
            c.err(e40 / e10);
            c.pass = Some(e40 < e10);
            c.detail = Some(json!({ "err_10": e10, "err_40": e40 }));
            Ok(())
        }),
    );
    out
}

fn approx_suite(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();

    out.push(
        Check::new(
            "approx_fourier_factorization",
            "Fourier transform of the approximating sequence factors as F(psi) F_n",
            json!({ "psi": "gaussian", "a": 2.0, "n": "1..=4", "lambda": [-1.5, -0.4, 0.0, 0.7, 2.0] }),
            1e-8,
        )
        .run(|c| {
            let g = Window::gaussian();
            let q = ctx.line(20.0);
            for n in 1..=4 {
                let p = params(2.0, n)?;
                for l in [-1.5, -0.4, 0.0, 0.7, 2.0] {
                    let (lhs, rhs) = fourier_factorization(&g, &p, l, &q)?;
                    c.rel(lhs, rhs);
                    c.value(lhs);
                }
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "approx_translation",
            "Fourier transform of the approximating sequence of T_x g is M_{-x} of that of g",
            json!({ "x": 0.7, "lambda": 0.4, "a": 2.0, "n": 4 }),
            1e-9,
        )
        .run(|c| {
            let g = Window::gaussian();
            let p = params(2.0, 4)?;
            let q = ctx.line(20.0);
            let (x, l) = (0.7, 0.4);
            let lhs = fourier(&ApproximatingSignal::new(Shifted::new(&g, x, 0.0), &p), l, &q)?;
            let rhs = C64::from_polar(1.0, -x * l) * fourier(&ApproximatingSignal::new(&g, &p), l, &q)?;
            c.err((lhs - rhs).norm());
            c.value(lhs);
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "approx_ambiguity_route",
            "STFT of the approximating sequence through the ambiguity function against direct quadrature",
            json!({ "windows": ["gaussian", "hermite(2)"], "a": 2.0, "n": 3, "point": [0.4, -0.6] }),
            1e-8,
        )
        .run(|c| {
            let p = params(2.0, 3)?;
            for g in [Window::gaussian(), Window::hermite(2)] {
                let q = ctx.with_density(approx_quadrature(&g, 0.4));
                let a = stft_approx_via_ambiguity(&g, &p, 0.4, -0.6, &q)?;
                let b = stft_approx_numeric(&g, &p, 0.4, -0.6, &q)?;
                c.rel(b, a);
                c.value(a);
            }
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "approx_hermite_closed",
            "Hermite-window STFT of the Hermite approximating sequence in 2D-complex Hermite form, and agreement with the ambiguity route",
            json!({ "k": "0..=3", "m": "0..=3", "a": 2.0, "n": 3, "point": [0.3, -0.5],
                    "gaussian_agreement": { "a": 2.0, "n": 2, "point": [0.3, 0.5] } }),
            1e-8,
        )
        .run(|c| {
            let p = params(2.0, 3)?;
            for k in 0..=3 {
                for m in 0..=3 {
                    let (hk, hm) = (Window::hermite(k), Window::hermite(m));
                    let q = ctx.with_density(approx_quadrature(&hk, 0.3).covering(hm.decay_radius() + 10.0));
                    let v = stft(&ApproximatingSignal::new(&hm, &p), &hk, 0.3, -0.5, &q)?;
                    c.rel(v, stft_approx_hermite_closed(k, m, &p, 0.3, -0.5)?);
                    c.value(v);
                }
            }
            let g = Window::gaussian();
            let p = params(2.0, 2)?;
            let a = stft_approx_via_ambiguity(&g, &p, 0.3, 0.5, &ctx.with_density(approx_quadrature(&g, 0.3)))?;
            c.rel(a, stft_approx_hermite_closed(0, 0, &p, 0.3, 0.5)?);
            c.value(a);
            Ok(())
        }),
    );

    out.push(
        Check::new(
            "approx_gaussian_limit",
            "Gaussian STFT of the shifted Gaussian phi(t + a) in closed form against quadrature",
            json!({ "a": 1.5, "points": [[0.2, 0.1], [-0.7, 1.3]] }),
            1e-8,
        )
        .run(|c| {
            let g = Window::gaussian();
            let a = 1.5;
            for &(u, eta) in &[(0.2f64, 0.1), (-0.7, 1.3)] {
                let psi = Shifted::new(&g, -a, 0.0);
                let q = ctx.with_density(approx_quadrature(&g, a + u.abs()));
                let v = stft(&psi, &g, u, eta, &q)?;
                c.err((v - stft_approx_gaussian_limit(a, u, eta)).norm());
                c.value(v);
            }
            Ok(())
        }),
    );

    out.push(supershift_check(
        "supershift_approx",
        "supershift limit of the Gaussian STFT of the approximating sequence, error ratio between n = 40 and n = 10",
        |n| {
            let p = params(1.5, n)?;
            let lim = stft_approx_gaussian_limit(1.5, 0.2, 0.1);
            Ok((stft_approx_hermite_closed(0, 0, &p, 0.2, 0.1)? - lim).norm())
        },
    ));
    out
}
