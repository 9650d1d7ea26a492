//! Numerical laboratory for sign changes of automorphic forms on the modular
//! surface restricted to cuspidal geodesics.
//!
//! * [`special`]: multiprecision Γ, ζ and the scaled imaginary-order `K`-Bessel kernel.
//! * [`eisenstein`]: the Eisenstein series `E(z, s)` from its Fourier expansion.
//! * [`maass`]: even Hecke–Maass cusp forms from coefficient files.
//! * [`restriction`]: sampling, certified sign counting, `M_p` norms and `J(f, η)`.
//! * [`littlewood`]: the Littlewood sign-change certificate and exponent bookkeeping.
//! * [`lfun`]: `L(t, ν) = ζ(ν+it)ζ(ν-it)`, the γ-factor and `I` kernel, ζ moments.
//! * [`csv`]: CSV rows for every output type.

pub mod csv;
pub mod eisenstein;
pub mod error;
pub mod lfun;
pub mod littlewood;
pub mod maass;
pub mod restriction;
pub mod special;

pub use error::{Error, Result};

pub use eisenstein::{
    divisor_eta, eisenstein_eval, restricted_eval, scattering_phi, theta_factor, truncation_length,
    EisensteinConfig, EisensteinContext, EisensteinRestriction, EisensteinValue, SpectralParameter,
    SpectralPoint, TruncationReport,
};
pub use lfun::{
    eisenstein_l, gamma_factor, i_kernel, j_integrand_profile, maass_l_second_moment, zeta_moment,
    zeta_moment_scan, GammaFactor, LValue, MomentRecord,
};
pub use littlewood::{
    certify, certify_with, exponent_budget, CPolicy, CertifyOptions, ExponentBudget,
    LittlewoodCertificate, Regime,
};
pub use maass::{
    l_phi_truncated, load_maass_record, maass_eval, MaassEvaluator, MaassFormRecord,
    MaassRestriction, Parity,
};
pub use restriction::{
    count_sign_changes, j_functional, m_p_norm, m_p_norm_samples, sample_segment, GeodesicSegment,
    JReport, Measure, NormReport, QuadratureConfig, RestrictionSamples, Sample, SegmentFunction,
    SignCertificate, SignChange, Spacing,
};
pub use special::{
    bessel_k_scaled, gamma_complex, zeta_complex, MpComplex, PrecisionPolicy, ScaledBesselValue,
    ZetaValue,
};

pub use num_complex::Complex64;
