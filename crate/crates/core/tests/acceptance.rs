//! Acceptance criteria A1-A14, evaluated on one shared verification report.
//!
//! Each criterion prints one `PASS`/`FAIL` line. Two criteria are known to
//! fail: the literal Moyal target (A2) and the expected frame verdict for the
//! Gaussian superoscillating signal (A10). Their tests assert that they fail
//! for the documented reason, so a change in behaviour is still caught.

use std::f64::consts::PI;
use std::sync::OnceLock;
use superstft::verify::{self, Record, Report, Suite, VerifyConfig};

fn report() -> &'static Report {
    static REPORT: OnceLock<Report> = OnceLock::new();
    REPORT.get_or_init(|| verify::run(&Suite::ALL, &VerifyConfig::default()).expect("verification run"))
}

fn find(suite: Suite, id: &str) -> &'static Record {
    report()
        .suites
        .iter()
        .find(|r| r.suite == suite && r.id == id)
        .unwrap_or_else(|| panic!("missing record {suite}/{id}"))
}

/// Looks up the records, checks their pinned tolerances, prints the line and
/// returns whether every record passed.
fn criterion(label: &str, title: &str, checks: &[(Suite, &str, f64)]) -> bool {
    let mut pass = true;
    let mut parts = Vec::new();
    for &(suite, id, tol) in checks {
        let r = find(suite, id);
        assert_eq!(r.tolerance, tol, "tolerance of {suite}/{id}");
        pass &= r.pass;
        parts.push(format!("{id}={:.3e}/{:.0e}", r.max_error, tol));
    }
    let status = if pass { "PASS" } else { "FAIL" };
    println!("{status} {label} {title}: {}", parts.join(" "));
    pass
}

#[test]
fn a01_kernel_sum() {
    assert!(criterion(
        "A1",
        "STFT as a sum of Gabor kernels",
        &[(Suite::Stft, "stft_kernel_sum", 1e-8)]
    ));
}

#[test]
fn a02_moyal() {
    let ok = criterion(
        "A2",
        "Moyal identities",
        &[(Suite::Stft, "moyal_norm", 1e-4), (Suite::Stft, "moyal_cross", 1e-5)],
    );
    assert!(!ok, "the literal plane norm target is expected to be off by 2pi");
    assert!(find(Suite::Stft, "moyal_cross").pass);
    assert!(find(Suite::Stft, "moyal_norm_scaled").pass);
    let ratio = find(Suite::Stft, "moyal_norm").detail.as_ref().unwrap()["ratio"]
        .as_f64()
        .unwrap();
    assert!((ratio - 2.0 * PI).abs() < 1e-6, "ratio {ratio}");
}

#[test]
fn a03_gaussian_gabor_kernel() {
    assert!(criterion(
        "A3",
        "Gaussian Gabor kernel",
        &[(Suite::Kernels, "gabor_kernel_gaussian", 1e-10)]
    ));
}

#[test]
fn a04_hermite_gabor_kernel() {
    assert!(criterion(
        "A4",
        "Hermite Gabor kernel",
        &[(Suite::Kernels, "gabor_kernel_hermite", 1e-8)]
    ));
}

#[test]
fn a05_hermite_convolution() {
    assert!(criterion(
        "A5",
        "Hermite convolution",
        &[(Suite::Hermite, "hermite_convolution", 1e-8)]
    ));
}

#[test]
fn a06_complex_hermite_series() {
    assert!(criterion(
        "A6",
        "2D-complex Hermite series and product integral",
        &[
            (Suite::Hermite, "i_km_compact", 1e-10),
            (Suite::Hermite, "hermite_product_integral", 1e-8),
        ]
    ));
}

#[test]
fn a07_norms() {
    assert!(criterion(
        "A7",
        "closed-form norms",
        &[
            (Suite::Kernels, "norm_gaussian", 1e-5),
            (Suite::Kernels, "norm_hermite", 1e-5),
            (Suite::Kernels, "dan_identity", 1e-8),
        ]
    ));
}

#[test]
fn a08_supershift() {
    assert!(criterion(
        "A8",
        "supershift convergence",
        &[
            (Suite::Kernels, "supershift_gabor", 0.6),
            (Suite::Hermite, "supershift_hermite", 0.6),
            (Suite::Approx, "supershift_approx", 0.6),
        ]
    ));
}

#[test]
fn a09_reconstruction() {
    assert!(criterion(
        "A9",
        "reconstruction",
        &[(Suite::Stft, "reconstruction", 1e-3)]
    ));
}

#[test]
fn a10_zak() {
    let ok = criterion(
        "A10",
        "Zak transform and frame verdicts",
        &[
            (Suite::Zak, "zak_shift_covariance", 1e-10),
            (Suite::Zak, "zak_gaussian_theta", 1e-10),
            (Suite::Zak, "theta_bound", 1e-12),
            (Suite::Zak, "theta_constant", 1e-6),
            (Suite::Zak, "frame_verdict_superosc", 0.0),
            (Suite::Zak, "frame_verdict_stability", 0.0),
        ],
    );
    assert!(!ok, "the superoscillating signal is expected to give NotFrame");
    let failed: Vec<_> = report()
        .failures()
        .filter(|r| r.suite == Suite::Zak)
        .map(|r| r.id.as_str())
        .collect();
    assert_eq!(failed, ["frame_verdict_superosc"]);
    let detail = find(Suite::Zak, "frame_verdict_superosc").detail.as_ref().unwrap();
    assert_eq!(detail["verdict_128"], "NotFrame");
    assert_eq!(detail["verdict_256"], "NotFrame");
}

#[test]
fn a11_evolution() {
    assert!(criterion(
        "A11",
        "free Schrodinger evolution",
        &[
            (Suite::Evolution, "evolution_numeric_vs_closed", 1e-7),
            (Suite::Evolution, "evolution_initial_datum", 1e-7),
            (Suite::Evolution, "evolution_pde_residual", 1e-4),
        ]
    ));
}

#[test]
fn a12_approximating_sequence() {
    assert!(criterion(
        "A12",
        "approximating sequence STFT",
        &[
            (Suite::Approx, "approx_fourier_factorization", 1e-8),
            (Suite::Approx, "approx_ambiguity_route", 1e-8),
            (Suite::Approx, "approx_hermite_closed", 1e-8),
            (Suite::Approx, "approx_gaussian_limit", 1e-8),
        ]
    ));
}

#[test]
fn a13_generating_functions() {
    assert!(criterion(
        "A13",
        "generating functions",
        &[
            (Suite::Hermite, "generating_complex_hermite", 1e-8),
            (Suite::Hermite, "generating_convolution", 1e-8),
            (Suite::Hermite, "generating_product", 1e-8),
        ]
    ));
}

#[test]
fn a14_quadrature_stability() {
    let checks: Vec<_> = Suite::ALL.iter().map(|&s| (s, "quadrature_stability", 1e-9)).collect();
    assert!(criterion("A14", "stability under doubled node density", &checks));
}

#[test]
fn only_known_failures() {
    let failed: Vec<_> = report().failures().map(|r| (r.suite, r.id.as_str())).collect();
    assert_eq!(
        failed,
        [(Suite::Stft, "moyal_norm"), (Suite::Zak, "frame_verdict_superosc")]
    );
}
