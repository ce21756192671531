//! Truncated quadrature on the real line and iterated quadrature on the plane.

use crate::error::{ensure_finite, Error, Result};
use crate::C64;
use serde::{Deserialize, Serialize};

/// Default node density.
pub const DEFAULT_NODES_PER_UNIT: usize = 64;
/// Smallest accepted node density.
pub const MIN_NODES_PER_UNIT: usize = 16;
/// Extra truncation radius added beyond decay radius plus shifts.
pub const TRUNCATION_MARGIN: f64 = 8.0;
/// Environment variable overriding the default node density.
pub const NODES_ENV_VAR: &str = "SUPERSTFT_QUAD_NODES";

/// Quadrature rule family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    CompositeSimpson,
    GaussLegendrePanels,
}

/// Truncation radius `T`, node density and scheme for integrals over
/// `[-T, T]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    radius: f64,
    nodes_per_unit: usize,
    scheme: Scheme,
}

/// Nodes and weights of a concrete rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureSpec {
    pub fn new(radius: f64, nodes_per_unit: usize, scheme: Scheme) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Domain(format!(
                "truncation radius must be positive and finite, got {radius}"
            )));
        }
        if nodes_per_unit < MIN_NODES_PER_UNIT {
            return Err(Error::Domain(format!(
                "nodes per unit must be >= {MIN_NODES_PER_UNIT}, got {nodes_per_unit}"
            )));
        }
        Ok(Self {
            radius,
            nodes_per_unit,
            scheme,
        })
    }

    /// Composite Simpson with the default density and the given radius.
    pub fn with_radius(radius: f64) -> Self {
        Self::new(radius, DEFAULT_NODES_PER_UNIT, Scheme::CompositeSimpson).expect("radius must be positive")
    }

    /// Default rule for a function decaying within `decay_radius` of a
    /// point displaced by `shift`: `T = decay_radius + |shift| + 8`.
    pub fn for_support(decay_radius: f64, shift: f64) -> Self {
        Self::with_radius(decay_radius + shift.abs() + TRUNCATION_MARGIN)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn nodes_per_unit(&self) -> usize {
        self.nodes_per_unit
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn with_nodes_per_unit(self, nodes_per_unit: usize) -> Result<Self> {
        Self::new(self.radius, nodes_per_unit, self.scheme)
    }

    pub fn with_scheme(self, scheme: Scheme) -> Self {
        Self { scheme, ..self }
    }

    /// Same radius and scheme, twice the node density.
    pub fn doubled(self) -> Self {
        Self {
            nodes_per_unit: self.nodes_per_unit * 2,
            ..self
        }
    }

    /// Same density and scheme with the radius enlarged to at least `radius`.
    pub fn covering(self, radius: f64) -> Self {
        Self {
            radius: self.radius.max(radius),
            ..self
        }
    }

    /// Nodes and weights on `[-T, T]`.
    pub fn rule(&self) -> Rule {
        self.rule_on(-self.radius, self.radius)
    }

    /// Nodes and weights on `[lo, hi]` at this rule's density.
    pub fn rule_on(&self, lo: f64, hi: f64) -> Rule {
        match self.scheme {
            Scheme::CompositeSimpson => simpson_rule(lo, hi, self.nodes_per_unit),
            Scheme::GaussLegendrePanels => gauss_legendre_panels(lo, hi, self.nodes_per_unit),
        }
    }

    /// `∫_{-T}^{T} f(t) dt`.
    pub fn integrate<F: Fn(f64) -> C64>(&self, f: F) -> Result<C64> {
        self.rule().integrate(f)
    }

    /// `∫_{-T}^{T} f(t) dt` for a real integrand.
    pub fn integrate_real<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        Ok(self.rule().integrate(|t| C64::new(f(t), 0.0))?.re)
    }
}

impl Rule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> C64>(&self, f: F) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for (&t, &w) in self.points.iter().zip(&self.weights) {
            acc += w * f(t);
        }
        ensure_finite(acc, "quadrature sum")
    }
}

/// Iterated quadrature `∫∫ f(u, η) du dη` over the box `[-T_u, T_u] × [-T_η, T_η]`.
pub fn integrate_plane<F>(qu: &QuadratureSpec, qeta: &QuadratureSpec, f: F) -> Result<C64>
where
    F: Fn(f64, f64) -> C64,
{
    let ru = qu.rule();
    let reta = qeta.rule();
    let mut acc = C64::new(0.0, 0.0);
    for (&u, &wu) in ru.points.iter().zip(&ru.weights) {
        let mut inner = C64::new(0.0, 0.0);
        for (&eta, &weta) in reta.points.iter().zip(&reta.weights) {
            inner += weta * f(u, eta);
        }
        acc += wu * inner;
    }
    ensure_finite(acc, "plane quadrature sum")
}

/// Reads the node-density override from `SUPERSTFT_QUAD_NODES`.
pub fn nodes_per_unit_from_env() -> Result<Option<usize>> {
    match std::env::var(NODES_ENV_VAR) {
        Err(_) => Ok(None),
        Ok(raw) => {
            let n: usize = raw
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("{NODES_ENV_VAR} must be an integer, got {raw:?}")))?;
            if n < MIN_NODES_PER_UNIT {
                return Err(Error::Domain(format!(
                    "{NODES_ENV_VAR} must be >= {MIN_NODES_PER_UNIT}, got {n}"
                )));
            }
            Ok(Some(n))
        }
    }
}

fn simpson_rule(lo: f64, hi: f64, nodes_per_unit: usize) -> Rule {
    let width = hi - lo;
    let mut intervals = ((width * nodes_per_unit as f64).ceil() as usize).max(2);
    if intervals % 2 == 1 {
        intervals += 1;
    }
    let h = width / intervals as f64;
    let mut points = Vec::with_capacity(intervals + 1);
    let mut weights = Vec::with_capacity(intervals + 1);
    for i in 0..=intervals {
        points.push(lo + i as f64 * h);
        let w = if i == 0 || i == intervals {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        weights.push(w * h / 3.0);
    }
    Rule { points, weights }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn gauss_legendre_panels(lo: f64, hi: f64, nodes_per_panel: usize) -> Rule {
    let width = hi - lo;
    let panels = (width.ceil() as usize).max(1);
    let panel_width = width / panels as f64;
    let (nodes, weights) = gauss_legendre(nodes_per_panel);
    let mut rule = Rule {
        points: Vec::with_capacity(panels * nodes_per_panel),
        weights: Vec::with_capacity(panels * nodes_per_panel),
    };
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * panel_width;
        for (&x, &w) in nodes.iter().zip(&weights) {
            rule.points.push(mid + 0.5 * panel_width * x);
            rule.weights.push(0.5 * panel_width * w);
        }
    }
    rule
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rejects_invalid_specs() {
        assert!(QuadratureSpec::new(0.0, 64, Scheme::CompositeSimpson).is_err());
        assert!(QuadratureSpec::new(5.0, 8, Scheme::CompositeSimpson).is_err());
    }

    #[test]
    fn default_truncation_radius() {
        let q = QuadratureSpec::for_support(3.0, -2.0);
        assert_eq!(q.radius(), 13.0);
        assert_eq!(q.nodes_per_unit(), 64);
        assert_eq!(q.scheme(), Scheme::CompositeSimpson);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(16);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((s - 2.0 / 31.0).abs() < 1e-14);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn both_schemes_integrate_a_gaussian() {
        for scheme in [Scheme::CompositeSimpson, Scheme::GaussLegendrePanels] {
            let q = QuadratureSpec::new(12.0, 16, scheme).unwrap();
            let v = q.integrate_real(|t| (-t * t).exp()).unwrap();
            assert!((v - PI.sqrt()).abs() < 1e-13, "{scheme:?}: {v}");
        }
    }

    #[test]
    fn plane_integral_of_separable_gaussian() {
        let q = QuadratureSpec::new(10.0, 16, Scheme::CompositeSimpson).unwrap();
        let v = integrate_plane(&q, &q, |u, e| C64::new((-u * u - 2.0 * e * e).exp(), 0.0)).unwrap();
        assert!((v.re - PI / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn non_finite_samples_are_reported() {
        let q = QuadratureSpec::with_radius(1.0);
        assert!(matches!(
            q.integrate(|_| C64::new(f64::NAN, 0.0)),
            Err(Error::NonFinite(_))
        ));
    }
}
