//! Closed-form constants of the spectral action expansion.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralConstants {
    pub f0: f64,
    pub f2: f64,
    pub f4: f64,
    pub lambda: f64,
    pub tr1: f64,
    pub n: u32,
    /// Newton constant as printed, G = (3/2)(2π/tr1)F2Λ². Dimensionally suspect; kept verbatim.
    pub g_newton: f64,
    pub g_newton_flag: String,
    pub cosmological: f64,
    pub mu_scalar: f64,
    pub lambda_norm: f64,
    pub x: f64,
    /// c = (2π)^{−n/2}F4Λ^{n−4}; c·tr(Φ̃²) is the canonical |θ|².
    pub c: f64,
}

impl SpectralConstants {
    pub fn new(f0: f64, f2: f64, f4: f64, lambda: f64, tr1: f64, n: u32) -> Result<Self> {
        if !(f4 > 0.0) {
            return Err(Error::input("constants.F4", "F4 must be positive"));
        }
        if !(lambda > 0.0) {
            return Err(Error::input("constants.Lambda", "cutoff must be positive"));
        }
        if !(tr1 > 0.0) {
            return Err(Error::input("constants.tr1", "tr1 must be positive"));
        }
        if !(f2 > 0.0) {
            return Err(Error::input("constants.F2", "F2 must be positive"));
        }
        let nf = n as f64;
        let tp = (2.0 * PI).powf(nf / 2.0);
        let ln4 = lambda.powf(nf - 4.0);
        let x = tp / (4.0 * ln4 * f4);
        Ok(Self {
            f0,
            f2,
            f4,
            lambda,
            tr1,
            n,
            g_newton: 1.5 * (2.0 * PI / tr1) * f2 * lambda * lambda,
            g_newton_flag: "verbatim: G grows with F2*Lambda^2; an inverse dependence is expected dimensionally"
                .into(),
            cosmological: (1.0 / 12.0) * (tr1 * tr1 / (2.0 * PI).powi(4)) * (f0 / f2) * lambda * lambda,
            mu_scalar: (2.0 * f2 / f4).sqrt() * lambda,
            lambda_norm: 0.5 * f4 * ln4 / tp,
            x,
            c: f4 * ln4 / tp,
        })
    }

    /// Coefficient of |θ|² for canonically normalized scalars.
    pub fn mass_coefficient(&self) -> f64 {
        -self.mu_scalar * self.mu_scalar / 2.0
    }
}
