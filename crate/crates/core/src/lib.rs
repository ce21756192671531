//! Short-time Fourier analysis of superoscillating signals.
//!
//! The crate pairs closed-form expressions for Gabor kernels, Fock kernels,
//! 2D-complex Hermite identities, Zak transforms and free Schrödinger
//! evolution with brute-force quadrature oracles, so every closed form can
//! be checked numerically.
//!
//! Conventions used throughout:
//!
//! * Fourier transform `F(f)(λ) = ∫ e^{-itλ} f(t) dt`.
//! * STFT `V_g f(x, ω) = ∫ e^{-itω} conj(g(t - x)) f(t) dt`.
//! * Hermite functions `h_m(t) = e^{-t²/2} H_m(t)` are not normalized.

pub mod approx_stft;
pub mod error;
pub mod evolution;
pub mod kernels;
pub mod quadrature;
pub mod signals;
pub mod special;
pub mod superosc;
pub mod transforms;
pub mod verify;
pub mod zak;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex scalar used by every public operation.
pub type C64 = Complex64;
