//! Multiprecision special functions with rigorous error bounds.
//!
//! Everything that can lose accuracy to cancellation or to exponentially
//! large/small factors is computed in MPFR arithmetic (via `rug`), with the
//! working precision raised by the amount of cancellation expected.

mod bernoulli;
mod bessel;
mod gamma;
mod mpc;
mod zeta;

pub use bernoulli::bernoulli_b2k;
pub(crate) use bessel::{ln_bessel_k_real_bound, ln_bessel_k_scaled_bound_at};
pub use bessel::{
    bessel_k_real_bound, bessel_k_scaled, bessel_k_scaled_bound, BesselKernel, BesselOrder,
    KernelValue, ScaledBesselValue,
};
pub use gamma::{gamma_complex, ln_gamma_complex, ln_gamma_mp};
pub use mpc::MpComplex;
pub use zeta::{zeta_complex, zeta_mp, CriticalLineZeta, ZetaValue};

use crate::error::{Error, Result};

pub(crate) use mpc::two_pow_neg as two_pow_neg_pub;

/// Guard bits added on top of every working precision.
pub(crate) const GUARD_BITS: u32 = 48;

/// Precision settings shared by all multiprecision computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    /// Target precision in bits before cancellation allowances.
    pub base_bits: u32,
    /// Raise the Bessel/θ working precision by `⌈πt / (2 ln 2)⌉` bits, the
    /// cancellation incurred when `K_{it}` is assembled from O(1) terms and
    /// is itself of size `e^{-πt/2}`.
    pub spectral_scaling: bool,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { base_bits: 128, spectral_scaling: true }
    }
}

impl PrecisionPolicy {
    pub fn new(base_bits: u32) -> Result<Self> {
        let p = PrecisionPolicy { base_bits, ..Default::default() };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(64..=1 << 16).contains(&self.base_bits) {
            return Err(Error::Domain(format!(
                "base_bits must lie in [64, 65536], got {}",
                self.base_bits
            )));
        }
        Ok(())
    }

    /// Extra bits that compensate the cancellation in `K_{iτ}`.
    pub fn spectral_bits(&self, tau: f64) -> u32 {
        if self.spectral_scaling {
            (std::f64::consts::PI * tau.abs() / (2.0 * std::f64::consts::LN_2)).ceil() as u32
        } else {
            0
        }
    }

    /// Working precision for Bessel and θ computations at spectral parameter `tau`.
    pub fn working_bits(&self, tau: f64) -> u32 {
        self.base_bits + self.spectral_bits(tau) + GUARD_BITS
    }

    /// Working precision for Γ and ζ at argument `s`: the base precision plus
    /// guard bits plus the bits lost when forming phases `t·ln n`.
    pub fn analytic_bits(&self, s_abs: f64) -> u32 {
        self.base_bits + GUARD_BITS + (s_abs + 2.0).log2().ceil() as u32
    }
}
