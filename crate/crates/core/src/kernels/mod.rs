//! Closed-form kernels and identities: Gabor kernels, Fock kernels,
//! closed-form STFTs of superoscillating signals, convolutions of Hermite
//! functions, the polynomials `I_{k,m}`, Weyl-operator action, norms and
//! generating functions.
//!
//! Where a printed constant or argument order disagrees with the quadrature
//! oracle, both variants are exposed: the `_printed` function reproduces the
//! formula as stated and the plain name is the oracle-consistent form.

mod cross;
mod fock;
mod gabor;
mod generating;
mod norms;

pub use cross::{
    cross_hermite_limit, cross_hermite_limit_printed, hermite_convolution_centered, hermite_convolution_closed,
    hermite_convolution_closed_printed, hermite_convolution_same_shift, hermite_convolution_series,
    hermite_product_integral, i_km_closed, i_km_closed_complex, i_km_closed_printed, i_km_series, i_km_series_complex,
    stft_superosc_cross_hermite, stft_superosc_cross_hermite_printed,
};
pub use fock::{
    fock_kernel, normalized_fock_kernel, stft_superosc_fock_form, stft_superosc_fock_form_printed, weyl_action_on_basis,
};
pub use gabor::{
    calibrate_hermite_kernel, gabor_kernel, gabor_kernel_gaussian, gabor_kernel_hermite, gabor_kernel_hermite_printed,
    gabor_kernel_numeric, hermite_kernel_calibration, kernel_quadrature, stft_integral_representation,
    stft_superosc_closed, stft_superosc_kernel_sum, stft_superosc_limit,
};
pub use generating::{
    complex_hermite_generating_sum, complex_hermite_generating_sum_printed, generating_sum_check,
    hermite_product_generating_check, GeneratingCheck,
};
pub use norms::{
    dan_double_sum, norm_sq_closed_gaussian, norm_sq_closed_hermite, phi_na, phi_na_norm, stft_norm_sq_closed,
};

use crate::error::{Error, Result};
use crate::C64;
use serde::Serialize;

/// Arguments `(x, ω; u, η)` of the Gabor kernel
/// `K_g(x, ω; u, η) = ⟨M_ω T_x g, M_η T_u g⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TFQuadruple {
    pub x: f64,
    pub omega: f64,
    pub u: f64,
    pub eta: f64,
}

impl TFQuadruple {
    pub fn new(x: f64, omega: f64, u: f64, eta: f64) -> Result<Self> {
        if ![x, omega, u, eta].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain(format!(
                "time-frequency quadruple must be finite, got ({x}, {omega}, {u}, {eta})"
            )));
        }
        Ok(Self { x, omega, u, eta })
    }

    /// The quadruple with the two time-frequency points exchanged.
    pub fn swapped(self) -> Self {
        Self {
            x: self.u,
            omega: self.eta,
            u: self.x,
            eta: self.omega,
        }
    }
}

/// A point of the Fock space domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockPoint {
    pub z: C64,
}

impl FockPoint {
    pub fn new(z: C64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("Fock point must be finite, got {z}")));
        }
        Ok(Self { z })
    }

    /// `p = η - i(u + x)`.
    pub fn from_stft(x: f64, u: f64, eta: f64) -> Self {
        Self {
            z: C64::new(eta, -(u + x)),
        }
    }
}
