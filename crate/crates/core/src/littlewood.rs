//! The Littlewood sign-change certificate and the exponent bookkeeping.
//!
//! Certificate: if `f` is defined on `[a, b + η]`, `η = |I|/N`, and for some
//! `c ∈ (0, 1)` both `M₁(f) ≥ c M₂(f)` and `J(f, η) < c³ η M₂(f)/16` hold
//! (norms on `I = [a, b]` with `dy`), then `f` has at least `c² N / 8` sign
//! changes on `I`.

use crate::csv::{fmt_num, CsvRecord};
use crate::error::{Error, Result};
use crate::restriction::norms::SurrogatePair;
use crate::restriction::{Measure, QuadratureConfig, SegmentFunction};

/// Relative safety factor applied to the data-driven `c`.
const C_SAFETY: f64 = 1e-12;

/// How `c` is chosen from the measured norms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CPolicy {
    /// `c = M₁/M₂` (error-adjusted).
    Ratio,
    /// `c = min(M₁/M₂, 1 - ε_c)`.
    RatioClamped(f64),
}

impl Default for CPolicy {
    fn default() -> Self {
        CPolicy::RatioClamped(1e-3)
    }
}

/// Options for [`certify_with`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CertifyOptions {
    pub policy: CPolicy,
    /// Measure for `M₁`, `M₂`. The certificate is only valid for `dy`;
    /// `dy/y` runs are marked exploratory.
    pub measure: Measure,
    pub quadrature: QuadratureConfig,
}

/// The full inequality chain of the certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct LittlewoodCertificate {
    pub interval: (f64, f64),
    pub n: usize,
    pub eta: f64,
    pub m1: f64,
    pub m1_error: f64,
    pub m2: f64,
    pub m2_error: f64,
    pub c: f64,
    pub j: f64,
    pub j_error: f64,
    /// `c³ η M₂ / 16` at the measured `M₂`.
    pub threshold: f64,
    pub hypotheses_hold: bool,
    /// `⌈c² N / 8⌉` when the hypotheses hold, else 0.
    pub lower_bound: usize,
    pub clamp_applied: bool,
    pub measure: Measure,
    /// Set when the norms were not taken with `dy`.
    pub exploratory: bool,
}

impl CsvRecord for LittlewoodCertificate {
    const HEADER: &'static [&'static str] =
        &["a", "b", "N", "eta", "M1", "M2", "c", "J", "threshold", "hypotheses_hold", "lower_bound"];

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_num(self.interval.0),
            fmt_num(self.interval.1),
            self.n.to_string(),
            fmt_num(self.eta),
            fmt_num(self.m1),
            fmt_num(self.m2),
            fmt_num(self.c),
            fmt_num(self.j),
            fmt_num(self.threshold),
            self.hypotheses_hold.to_string(),
            self.lower_bound.to_string(),
        ]
    }
}

/// Run the certificate on `[a, b]` with `N` windows and default options.
pub fn certify<F: SegmentFunction + ?Sized>(
    f: &F,
    interval: (f64, f64),
    n: usize,
    policy: CPolicy,
) -> Result<LittlewoodCertificate> {
    certify_with(f, interval, n, &CertifyOptions { policy, ..CertifyOptions::default() })
}

/// Run the certificate with explicit options.
///
/// Error bounds are applied against the certificate: `M₁` is lowered, `M₂`
/// raised when forming `c`, and `J` raised and `M₂` lowered in the window
/// test, so an issued certificate holds for every value consistent with the
/// reported errors.
pub fn certify_with<F: SegmentFunction + ?Sized>(
    f: &F,
    (a, b): (f64, f64),
    n: usize,
    opts: &CertifyOptions,
) -> Result<LittlewoodCertificate> {
    if n < 2 {
        return Err(Error::Domain(format!("N must be ≥ 2, got {n}")));
    }
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::Domain(format!("empty interval [{a}, {b}]")));
    }
    let eps_c = match opts.policy {
        CPolicy::RatioClamped(e) if !(e > 0.0 && e < 1.0) => {
            return Err(Error::Domain(format!("ε_c must lie in (0, 1), got {e}")));
        }
        CPolicy::RatioClamped(e) => Some(e),
        CPolicy::Ratio => None,
    };
    let eta = (b - a) / n as f64;
    let (lo, top) = f.domain();
    if a < lo || b + eta > top {
        return Err(Error::Domain(format!(
            "certificate needs f on [{a}, {}], domain is [{lo}, {top}]",
            b + eta
        )));
    }
    let cfg = &opts.quadrature;
    let pair = SurrogatePair::build(f, a, b, eta, cfg)?;
    let r1 = pair.norm(a, b, 1.0, opts.measure, cfg)?;
    let r2 = pair.norm(a, b, 2.0, opts.measure, cfg)?;
    let jr = pair.j(a, b, eta, cfg)?;
    if r2.value <= r2.quad_error {
        return Err(Error::Degenerate(format!(
            "M₂ = {:e} does not exceed its error bound {:e}; f is numerically zero",
            r2.value, r2.quad_error
        )));
    }
    let c_raw = ((r1.value - r1.quad_error) / (r2.value + r2.quad_error)).max(0.0) * (1.0 - C_SAFETY);
    let (c, clamp_applied) = match eps_c {
        Some(e) if c_raw > 1.0 - e => (1.0 - e, true),
        _ => (c_raw, false),
    };
    let threshold = c.powi(3) * eta * r2.value / 16.0;
    let safe_threshold = c.powi(3) * eta * (r2.value - r2.quad_error) / 16.0;
    let hypotheses_hold = c > 0.0 && c < 1.0 && jr.value + jr.quad_error < safe_threshold;
    let lower_bound = if hypotheses_hold { (c * c * n as f64 / 8.0).ceil() as usize } else { 0 };
    Ok(LittlewoodCertificate {
        interval: (a, b),
        n,
        eta,
        m1: r1.value,
        m1_error: r1.quad_error,
        m2: r2.value,
        m2_error: r2.quad_error,
        c,
        j: jr.value,
        j_error: jr.quad_error,
        threshold,
        hypotheses_hold,
        lower_bound,
        clamp_applied,
        measure: opts.measure,
        exploratory: opts.measure != Measure::Lebesgue,
    })
}

/// Which form family the exponent bookkeeping refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Eisenstein,
    Cusp,
}

impl Regime {
    /// `κ` must exceed this.
    pub fn kappa_floor(&self) -> f64 {
        match self {
            Regime::Eisenstein => 8.0,
            Regime::Cusp => 9.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Regime::Eisenstein => "eisenstein",
            Regime::Cusp => "cusp",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eisenstein" => Ok(Regime::Eisenstein),
            "cusp" => Ok(Regime::Cusp),
            other => Err(Error::Domain(format!("unknown regime `{other}` (eisenstein | cusp)"))),
        }
    }
}

/// Admissible `δ` thresholds and the resulting sign-change exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentBudget {
    pub epsilon: f64,
    pub p: f64,
    pub kappa: f64,
    pub regime: Regime,
    /// `6pε/(p-2)`.
    pub delta_min_eisenstein: f64,
    /// `(7p-2)ε/(p-2)`.
    pub delta_min_cusp: f64,
    /// `1 - κεp/(p-2)`, when `κ > 8`.
    pub final_exponent_eisenstein: Option<f64>,
    /// `1 - κεp/(p-2)`, when `κ > 9`.
    pub final_exponent_cusp: Option<f64>,
}

impl ExponentBudget {
    pub fn delta_min(&self) -> f64 {
        match self.regime {
            Regime::Eisenstein => self.delta_min_eisenstein,
            Regime::Cusp => self.delta_min_cusp,
        }
    }

    /// Final exponent of the requested regime (always present).
    pub fn final_exponent(&self) -> f64 {
        match self.regime {
            Regime::Eisenstein => self.final_exponent_eisenstein,
            Regime::Cusp => self.final_exponent_cusp,
        }
        .expect("validated on construction")
    }

}

impl CsvRecord for ExponentBudget {
    const HEADER: &'static [&'static str] = &["epsilon", "p", "kappa", "delta_min", "final_exponent"];

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_num(self.epsilon),
            fmt_num(self.p),
            fmt_num(self.kappa),
            fmt_num(self.delta_min()),
            fmt_num(self.final_exponent()),
        ]
    }
}

/// Exponent bookkeeping for a given `ε`, `p > 2` and `κ`.
pub fn exponent_budget(epsilon: f64, p: f64, kappa: f64, regime: Regime) -> Result<ExponentBudget> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Domain(format!("ε must be positive, got {epsilon}")));
    }
    if !(p > 2.0 && p.is_finite()) {
        return Err(Error::Domain(format!("p must exceed 2, got {p}")));
    }
    if !(kappa > regime.kappa_floor() && kappa.is_finite()) {
        return Err(Error::Domain(format!(
            "κ must exceed {} in the {} regime, got {kappa}",
            regime.kappa_floor(),
            regime.name()
        )));
    }
    let r = p / (p - 2.0);
    let fin = 1.0 - kappa * epsilon * r;
    Ok(ExponentBudget {
        epsilon,
        p,
        kappa,
        regime,
        delta_min_eisenstein: 6.0 * epsilon * r,
        delta_min_cusp: (7.0 * p - 2.0) * epsilon / (p - 2.0),
        final_exponent_eisenstein: (kappa > 8.0).then_some(fin),
        final_exponent_cusp: (kappa > 9.0).then_some(fin),
    })
}
