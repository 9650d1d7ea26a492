//! The Eisenstein series `E(z, s)` via its Fourier expansion
//!
//! `E(z,s) = y^s + φ(s) y^{1-s} + (4√y/θ(s)) Σ_{n≥1} η_{s-1/2}(n) K_{s-1/2}(2πny) cos(2πnx)`
//!
//! with `θ(s) = π^{-s} Γ(s) ζ(2s)`, `φ(s) = θ(1-s)/θ(s)` and
//! `η_ν(n) = Σ_{ab=n} (a/b)^ν`.
//!
//! On the critical line `s = 1/2 + it` both `θ` and `K_{it}` carry a factor
//! `e^{-πt/2}`; they are stored scaled (`θ̂ = e^{πt/2} θ`, `K̂ = e^{πt/2} K`)
//! so the factors cancel symbolically.
//!
//! `E(z, 1/2+it)` itself is real only up to a constant phase: since
//! `φ = conj(θ̂)/θ̂`, one has `E = φ·conj(E)`. The evaluator returns the
//! rotated value `(θ̂/|θ̂|)·E`, which is real, has the same modulus, and is
//! `θ(s)E(z,s)/|θ(s)|`, the completed Eisenstein series normalised to
//! unit-modulus prefactor. The rotation is applied to the complex expansion,
//! so the returned imaginary part is a genuine consistency check.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rug::Float;

use crate::error::{Error, Result};
use crate::restriction::{GeodesicSegment, Sample, SegmentFunction};
use crate::special::{
    ln_bessel_k_real_bound, ln_bessel_k_scaled_bound_at, ln_gamma_mp, zeta_mp, BesselKernel,
    BesselOrder, KernelValue, MpComplex, PrecisionPolicy,
};

const EPS: f64 = f64::EPSILON;

/// A point `s = 1/2 + it` on the critical line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub t: f64,
}

impl SpectralPoint {
    pub fn new(t: f64) -> Result<Self> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!("spectral parameter must be finite and ≥ 0, got {t}")));
        }
        Ok(SpectralPoint { t })
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(0.5, self.t)
    }

    /// Laplace eigenvalue `1/4 + t²`.
    pub fn eigenvalue(&self) -> f64 {
        0.25 + self.t * self.t
    }
}

/// Which Eisenstein series a context evaluates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralParameter {
    /// `E_t = E(·, 1/2 + it)` (phase-normalised, see the module docs).
    Critical(SpectralPoint),
    /// `E(·, s)` for real `s > 1`.
    Real(f64),
}

impl SpectralParameter {
    fn order(&self) -> BesselOrder {
        match *self {
            SpectralParameter::Critical(p) => BesselOrder::Imaginary(p.t),
            SpectralParameter::Real(s) => BesselOrder::Real(s - 0.5),
        }
    }
}

/// Settings of an [`EisensteinContext`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EisensteinConfig {
    pub prec: PrecisionPolicy,
    /// Target absolute accuracy of `E` values.
    pub tol: f64,
    /// Smallest admissible `Im z`.
    pub y_floor: f64,
    /// Largest admissible number of expansion terms.
    pub n_cap: usize,
}

impl Default for EisensteinConfig {
    fn default() -> Self {
        EisensteinConfig { prec: PrecisionPolicy::default(), tol: 1e-10, y_floor: 0.05, n_cap: 100_000 }
    }
}

impl EisensteinConfig {
    pub fn validate(&self) -> Result<()> {
        self.prec.validate()?;
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Domain(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.y_floor > 0.0 && self.y_floor.is_finite()) {
            return Err(Error::Domain(format!("y_floor must be positive, got {}", self.y_floor)));
        }
        if self.n_cap == 0 {
            return Err(Error::Domain("n_cap must be positive".into()));
        }
        Ok(())
    }
}

/// Number of expansion terms and the proved bound on the dropped tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationReport {
    pub n_terms: usize,
    pub tail_bound: f64,
}

/// An Eisenstein value with a rigorous absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EisensteinValue {
    /// Real part is the value; on the critical line the imaginary part is a
    /// residual that must stay below `abs_error`.
    pub value: Complex64,
    pub abs_error: f64,
    pub n_terms: usize,
}

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}

/// `θ(s) e^{scale}` together with a relative error bound, where `scale = πt/2`
/// when `scale_t = Some(t)`. Uses `θ(s) = θ(1/2 - s)` for `Re s < 1/4`, which
/// keeps `Γ` away from its poles.
pub(crate) fn theta_parts(s: Complex64, prec: &PrecisionPolicy, scale_t: Option<f64>) -> Result<(MpComplex, f64)> {
    let s1 = if s.re < 0.25 { Complex64::new(0.5, 0.0) - s } else { s };
    if s1 == Complex64::new(0.5, 0.0) {
        return Err(Error::Pole("θ has a pole at s = 1/2 (and at s = 0)".into()));
    }
    let bits = prec.analytic_bits(s1.norm()) + 16;
    let target = prec.base_bits + 8;
    let s_mp = MpComplex::from_c64(bits, s1);
    let mut ln_pre = ln_gamma_mp(&s_mp, target)?;
    let wp = ln_pre.prec();
    let ln_pi = Float::with_val(wp, rug::float::Constant::Pi).ln();
    let s_w = MpComplex::from_c64(wp, s1);
    ln_pre = ln_pre.sub(&s_w.mul_float(&ln_pi));
    if let Some(t) = scale_t {
        ln_pre.re += Float::with_val(wp, rug::float::Constant::Pi) * t / 2u32;
    }
    let (z, zerr) = zeta_mp(&s_w.scale(2.0), target)?;
    let zabs = z.abs().to_f64();
    if !(zabs > zerr) {
        return Err(Error::Domain(format!("θ({s}) is indistinguishable from zero")));
    }
    let v = ln_pre.exp().mul(&z);
    let rel = 16.0 * crate::special::two_pow_neg_pub(target) + zerr / zabs;
    Ok((v, rel))
}

/// `θ(s) = π^{-s} Γ(s) ζ(2s)`.
///
/// Poles are reported at `s = 1/2` and at non-positive integers. At negative
/// integers the Γ pole is cancelled by a trivial zero of ζ and θ is finite
/// there, but it is still reported as a pole, matching the documented
/// precondition. [`scattering_phi`] evaluates through `θ(s) = θ(1/2 - s)`
/// instead.
pub fn theta_factor(s: Complex64, prec: &PrecisionPolicy) -> Result<MpComplex> {
    prec.validate()?;
    if s == Complex64::new(0.5, 0.0) || is_nonpositive_integer(s) {
        return Err(Error::Pole(format!("θ(s) at the excluded point s = {s}")));
    }
    Ok(theta_parts(s, prec, None)?.0)
}

/// `φ(s) = θ(1-s)/θ(s)`; `φ(1/2) = -1` is the removable value.
pub fn scattering_phi(s: Complex64, prec: &PrecisionPolicy) -> Result<Complex64> {
    prec.validate()?;
    if s == Complex64::new(0.5, 0.0) {
        return Ok(Complex64::new(-1.0, 0.0));
    }
    if s == Complex64::new(1.0, 0.0) || s == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole(format!("φ has a pole or zero at s = {s}")));
    }
    let (num, _) = theta_parts(Complex64::new(1.0, 0.0) - s, prec, None)?;
    let (den, _) = theta_parts(s, prec, None)?;
    Ok(num.div(&den).to_c64())
}

/// `η_{it}(n) = Σ_{ab=n} (a/b)^{it} = Σ_{d|n} cos(t log(d²/n))`.
pub fn divisor_eta(t: f64, n: u64) -> f64 {
    assert!(n >= 1, "divisor_eta needs n ≥ 1");
    let ln_n = (n as f64).ln();
    let mut s = 0.0;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            let c = (t * (2.0 * (d as f64).ln() - ln_n)).cos();
            s += if d * d == n { c } else { 2.0 * c };
        }
        d += 1;
    }
    s
}

/// `η_ν(n) = Σ_{d|n} (d²/n)^ν` for real `ν`.
pub fn divisor_eta_real(nu: f64, n: u64) -> f64 {
    let ln_n = (n as f64).ln();
    let mut s = 0.0;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            let a = (nu * (2.0 * (d as f64).ln() - ln_n)).exp();
            s += if d * d == n { a } else { a + 1.0 / a };
        }
        d += 1;
    }
    s
}

/// Sieve `η(n)` for `n = 1..=n_max`, with per-entry rounding bounds.
fn eta_sieve(param: &SpectralParameter, n_max: usize) -> (Vec<f64>, Vec<f64>) {
    let mut eta = vec![0.0; n_max + 1];
    let mut err = vec![0.0; n_max + 1];
    let ln: Vec<f64> = (0..=n_max).map(|k| if k == 0 { 0.0 } else { (k as f64).ln() }).collect();
    for d in 1..=n_max {
        let mut m = d;
        while m <= n_max {
            // Each divisor pair is visited from both ends, matching Σ_{ab=n}.
            let arg = 2.0 * ln[d] - ln[m];
            match *param {
                SpectralParameter::Critical(p) => {
                    eta[m] += (p.t * arg).cos();
                    err[m] += (p.t * (2.0 * ln[d] + ln[m]) * 2.0 + 4.0) * EPS;
                }
                SpectralParameter::Real(s) => {
                    let v = ((s - 0.5) * arg).exp();
                    eta[m] += v;
                    err[m] += v * (((s - 0.5) * (2.0 * ln[d] + ln[m])).abs() * 2.0 + 4.0) * EPS;
                }
            }
            m += d;
        }
    }
    (eta, err)
}

/// Frozen evaluator for `E(·, s)` at one spectral point.
#[derive(Debug, Clone)]
pub struct EisensteinContext {
    param: SpectralParameter,
    config: EisensteinConfig,
    /// `θ̂` on the critical line, `θ(s)` for real `s`.
    theta_scaled: Complex64,
    theta_rel_err: f64,
    phi_value: Complex64,
    phi_err: f64,
    /// Unit rotation applied to critical-line values.
    phase: Complex64,
    kernel: BesselKernel,
    coeff_cache: Vec<f64>,
    coeff_err: Vec<f64>,
}

impl EisensteinContext {
    /// Context on the critical line `s = 1/2 + it`.
    pub fn critical(t: f64, config: EisensteinConfig) -> Result<Self> {
        Self::new(SpectralParameter::Critical(SpectralPoint::new(t)?), config)
    }

    /// Context at real `s > 1`.
    pub fn real(s: f64, config: EisensteinConfig) -> Result<Self> {
        Self::new(SpectralParameter::Real(s), config)
    }

    pub fn new(param: SpectralParameter, config: EisensteinConfig) -> Result<Self> {
        config.validate()?;
        let prec = config.prec;
        let (theta_scaled, theta_rel_err, phi_value, phi_err, phase) = match param {
            SpectralParameter::Critical(p) => {
                if p.t == 0.0 {
                    return Err(Error::Pole("θ(1/2) is a pole; use t > 0".into()));
                }
                let (th, rel) = theta_parts(p.s(), &prec, Some(p.t))?;
                let th = th.to_c64();
                // φ(1/2+it) = θ(1/2-it)/θ(1/2+it) = conj(θ̂)/θ̂.
                let phi = th.conj() / th;
                (th, rel, phi, 2.0 * rel + 4.0 * EPS, th / th.norm())
            }
            SpectralParameter::Real(s) => {
                if !(s > 1.0 && s.is_finite()) {
                    return Err(Error::Domain(format!("real s must exceed 1, got {s}")));
                }
                let sc = Complex64::new(s, 0.0);
                let (th, rel) = theta_parts(sc, &prec, None)?;
                let (num, rel_n) = theta_parts(Complex64::new(1.0 - s, 0.0), &prec, None)?;
                let phi = num.div(&th).to_c64();
                let th = th.to_c64();
                (th, rel, phi, phi.norm() * (rel + rel_n + 4.0 * EPS), Complex64::new(1.0, 0.0))
            }
        };
        let kernel = BesselKernel::new(param.order(), 2.0 * PI * config.y_floor, &prec)?;
        let mut ctx = EisensteinContext {
            param,
            config,
            theta_scaled,
            theta_rel_err,
            phi_value,
            phi_err,
            phase,
            kernel,
            coeff_cache: Vec::new(),
            coeff_err: Vec::new(),
        };
        let fill = match ctx.truncation(config.y_floor) {
            Ok(r) => r.n_terms,
            Err(Error::TruncationFailure(_)) => config.n_cap,
            Err(e) => return Err(e),
        };
        let (eta, err) = eta_sieve(&param, fill);
        ctx.coeff_cache = eta;
        ctx.coeff_err = err;
        Ok(ctx)
    }

    pub fn parameter(&self) -> SpectralParameter {
        self.param
    }

    pub fn config(&self) -> &EisensteinConfig {
        &self.config
    }

    /// `θ̂ = e^{πt/2} θ(1/2+it)` (critical line) or `θ(s)` (real `s`).
    pub fn theta_scaled(&self) -> Complex64 {
        self.theta_scaled
    }

    pub fn phi_value(&self) -> Complex64 {
        self.phi_value
    }

    /// Cached `η(n)` for `1 ≤ n ≤` [`Self::coeff_len`].
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeff_cache[n]
    }

    pub fn coeff_len(&self) -> usize {
        self.coeff_cache.len().saturating_sub(1)
    }

    /// Angular frequency of the main term `y^{±it}` at height `y`.
    pub fn frequency_at(&self, y: f64) -> f64 {
        match self.param {
            SpectralParameter::Critical(p) => (p.t / y).max(2.0 * PI),
            SpectralParameter::Real(_) => 2.0 * PI,
        }
    }

    /// Log of the tail-term bound `4√y/|θ̂| · d(n) · K̂_bound(2πny)` with
    /// `d(n) ≤ 2√n`, plus the contour angle used (critical line).
    fn ln_tail_term(&self, y: f64, n: usize) -> (f64, f64) {
        let pre = (4.0 * y.sqrt() / self.theta_scaled.norm()).ln() + (2.0 * (n as f64).sqrt()).ln();
        let x = 2.0 * PI * n as f64 * y;
        match self.param {
            SpectralParameter::Critical(p) => {
                let (lb, alpha) = ln_bessel_k_scaled_bound_at(p.t, x);
                (pre + lb, alpha)
            }
            SpectralParameter::Real(s) => {
                let nu = s - 0.5;
                (pre + nu * (n as f64).ln() + ln_bessel_k_real_bound(nu, x), 0.0)
            }
        }
    }

    /// Rigorous bound on `Σ_{n>m} term(n)` once terms decay geometrically.
    fn geometric_remainder(&self, y: f64, m: usize, alpha: f64) -> f64 {
        match self.param {
            SpectralParameter::Critical(p) => {
                // For fixed α, term(n) ≤ (4√y/|θ̂|) e^{τ(π/2-α)} (y cos α)^{-1/2} e^{-2πny cos α}.
                let ca = alpha.cos();
                let r = (-2.0 * PI * y * ca).exp();
                let ln_first = (4.0 * y.sqrt() / self.theta_scaled.norm()).ln()
                    + p.t * (PI / 2.0 - alpha)
                    - 0.5 * (y * ca).ln()
                    - 2.0 * PI * (m + 1) as f64 * y * ca;
                ln_first.exp() / (1.0 - r)
            }
            SpectralParameter::Real(s) => {
                // term(n) ≤ (4√y/θ) 2√n n^ν √(π/(2x)) e^{-x + ν²/(2x)}, x = 2πny;
                // for n > m the ratio of consecutive terms is at most r below.
                let nu = s - 0.5;
                let r = ((m + 2) as f64 / (m + 1) as f64).powf(nu) * (-2.0 * PI * y).exp();
                if r >= 1.0 {
                    return f64::INFINITY;
                }
                let (lt, _) = self.ln_tail_term(y, m + 1);
                lt.exp() / (1.0 - r)
            }
        }
    }

    /// Smallest `N` whose proved tail bound at height `y` is below `tol/2`.
    fn truncation(&self, y: f64) -> Result<TruncationReport> {
        let target = 0.5 * self.config.tol;
        let cap = self.config.n_cap;
        // Terms b_1..b_M explicitly, then a geometric remainder past M.
        let mut terms: Vec<f64> = Vec::new();
        let mut remainder;
        let mut n = 1usize;
        loop {
            let (lt, alpha) = self.ln_tail_term(y, n);
            terms.push(lt.exp());
            remainder = self.geometric_remainder(y, n, alpha);
            if remainder <= 1e-3 * target {
                break;
            }
            n += 1;
            if n > cap + 1 {
                return Err(Error::TruncationFailure(format!(
                    "more than n_cap = {cap} terms needed at y = {y}"
                )));
            }
        }
        // Smallest N with Σ_{n>N} b_n ≤ target; tail(N) = Σ terms[N..] + remainder.
        let mut tail = remainder;
        let mut best = terms.len();
        for k in (0..terms.len()).rev() {
            let next = tail + terms[k];
            if next > target {
                break;
            }
            tail = next;
            best = k;
        }
        let n_terms = best.max(1);
        if n_terms > cap {
            return Err(Error::TruncationFailure(format!(
                "{n_terms} terms needed at y = {y}, above n_cap = {cap}"
            )));
        }
        let tail_bound = terms[n_terms..].iter().sum::<f64>() + remainder;
        Ok(TruncationReport { n_terms, tail_bound })
    }

    fn check_y(&self, y: f64) -> Result<()> {
        if !(y.is_finite() && y >= self.config.y_floor) {
            return Err(Error::Domain(format!(
                "Im z = {y} is below y_floor = {}",
                self.config.y_floor
            )));
        }
        Ok(())
    }

    /// Height-dependent data shared by all points with the same `y`.
    fn prepare(&self, y: f64) -> Result<Row> {
        self.check_y(y)?;
        let tr = self.truncation(y)?;
        if tr.n_terms > self.coeff_len() {
            return Err(Error::TruncationFailure(format!(
                "{} terms needed at y = {y}, coefficient cache holds {}",
                tr.n_terms,
                self.coeff_len()
            )));
        }
        let x1 = 2.0 * PI * y;
        let kv = self.kernel.ladder(x1, tr.n_terms)?;
        Ok(Row { y, trunc: tr, kvals: kv })
    }

    /// Combine a prepared row with `cos(2πnx)` values.
    fn combine(&self, row: &Row, cos_n: impl Fn(u64) -> (f64, f64)) -> EisensteinValue {
        let y = row.y;
        let t_or_nu = match self.param {
            SpectralParameter::Critical(p) => p.t,
            SpectralParameter::Real(s) => s - 0.5,
        };
        let mut sum = 0.0;
        let mut err = 0.0;
        let mut abs_sum = 0.0;
        for (i, KernelValue { value: k, abs_error: ke }) in row.kvals.iter().enumerate() {
            let n = i + 1;
            let (c, ce) = cos_n(n as u64);
            let e = self.coeff_cache[n];
            let term = e * k * c;
            sum += term;
            abs_sum += term.abs();
            // Kernel error, coefficient error, cosine error, and the kernel's
            // sensitivity to rounding of x₁ = 2πy (|∂_x K̂| ≤ (1 + τ/x)·bound).
            let x = 2.0 * PI * n as f64 * y;
            err += e.abs() * ke
                + self.coeff_err[n] * k.abs()
                + (e * k).abs() * ce
                + e.abs() * (x + t_or_nu.abs() + 1.0) * 4.0 * EPS * k.abs().max(*ke);
        }
        err += abs_sum * (row.kvals.len() as f64 + 2.0) * EPS;
        let sqy = y.sqrt();
        match self.param {
            SpectralParameter::Critical(p) => {
                let ang = p.t * y.ln();
                let ys = Complex64::from_polar(sqy, ang);
                let main = ys + self.phi_value * ys.conj();
                let main_err = sqy * (2.0 * (ang.abs() + 2.0) * EPS + self.phi_err);
                let pref = 4.0 * sqy / self.theta_scaled;
                let cusp = pref * sum;
                let cusp_err = pref.norm() * err
                    + row.trunc.tail_bound
                    + cusp.norm() * (self.theta_rel_err + 4.0 * EPS);
                let e = main + cusp;
                let value = self.phase * e;
                let abs_error = main_err + cusp_err + 8.0 * EPS * (main.norm() + cusp.norm());
                EisensteinValue { value, abs_error, n_terms: row.trunc.n_terms }
            }
            SpectralParameter::Real(s) => {
                let ly = y.ln();
                let a = (s * ly).exp();
                let b = self.phi_value.re * ((1.0 - s) * ly).exp();
                let main_err = (a.abs() + b.abs()) * ((s * ly).abs() + 4.0) * 2.0 * EPS + self.phi_err * ((1.0 - s) * ly).exp();
                let pref = 4.0 * sqy / self.theta_scaled.re;
                let cusp = pref * sum;
                let cusp_err = pref.abs() * err
                    + row.trunc.tail_bound
                    + cusp.abs() * (self.theta_rel_err + 4.0 * EPS);
                let v = a + b + cusp;
                let abs_error = main_err + cusp_err + 8.0 * EPS * (a.abs() + b.abs() + cusp.abs());
                EisensteinValue { value: Complex64::new(v, 0.0), abs_error, n_terms: row.trunc.n_terms }
            }
        }
    }

    /// Evaluate at every `x` in `xs` at the common height `y`, sharing the
    /// Bessel ladder across the row.
    pub fn eval_row(&self, y: f64, xs: &[f64]) -> Result<Vec<EisensteinValue>> {
        let row = self.prepare(y)?;
        Ok(xs.iter().map(|&x| self.combine(&row, |n| cos_2pi_nx(n, x))).collect())
    }
}

struct Row {
    y: f64,
    trunc: TruncationReport,
    kvals: Vec<KernelValue>,
}

/// `cos(2πnx)` with the argument reduced modulo 1, and its error bound.
fn cos_2pi_nx(n: u64, x: f64) -> (f64, f64) {
    let nx = n as f64 * x;
    let frac = nx - nx.round();
    ((2.0 * PI * frac).cos(), 2.0 * PI * (nx.abs() + 1.0) * 2.0 * EPS)
}

/// Number of terms needed for `Im z ≥ y_min` and the proved tail bound.
pub fn truncation_length(ctx: &EisensteinContext, y_min: f64) -> Result<TruncationReport> {
    if !(y_min > 0.0 && y_min.is_finite()) {
        return Err(Error::Domain(format!("y_min must be positive, got {y_min}")));
    }
    ctx.truncation(y_min)
}

/// `E(z, s)` (phase-normalised on the critical line) with its error bound.
pub fn eisenstein_eval(ctx: &EisensteinContext, z: Complex64) -> Result<EisensteinValue> {
    if !z.re.is_finite() {
        return Err(Error::Domain("Re z must be finite".into()));
    }
    let row = ctx.prepare(z.im)?;
    Ok(ctx.combine(&row, |n| cos_2pi_nx(n, z.re)))
}

/// `f(y) = y^{-1/2} E(x₀ + iy)` along a segment; `y` must lie in `[a, b + margin]`.
pub fn restricted_eval(ctx: &EisensteinContext, segment: &GeodesicSegment, y: f64) -> Result<Sample> {
    if !segment.contains_eval(y) {
        return Err(Error::Domain(format!(
            "y = {y} lies outside [{}, {}]",
            segment.a,
            segment.b + segment.eval_margin
        )));
    }
    let row = ctx.prepare(y)?;
    let v = ctx.combine(&row, |n| (segment.cos_harmonic(n), 8.0 * EPS));
    if v.value.im.abs() > v.abs_error {
        return Err(Error::PrecisionFailure(format!(
            "imaginary residual {:e} at y = {y} exceeds the error bound {:e}",
            v.value.im, v.abs_error
        )));
    }
    let s = y.sqrt();
    Ok(Sample { y, value: v.value.re / s, abs_error: v.abs_error / s * (1.0 + 2.0 * EPS) + v.value.re.abs() / s * 2.0 * EPS })
}

/// `f_t` on a segment as a [`SegmentFunction`].
#[derive(Debug, Clone)]
pub struct EisensteinRestriction {
    pub ctx: Arc<EisensteinContext>,
    pub segment: GeodesicSegment,
}

impl EisensteinRestriction {
    pub fn new(ctx: Arc<EisensteinContext>, segment: GeodesicSegment) -> Self {
        EisensteinRestriction { ctx, segment }
    }
}

impl SegmentFunction for EisensteinRestriction {
    fn eval(&self, y: f64) -> Result<Sample> {
        restricted_eval(&self.ctx, &self.segment, y)
    }

    fn domain(&self) -> (f64, f64) {
        self.segment.eval_domain()
    }

    fn frequency(&self) -> f64 {
        self.ctx.frequency_at(self.segment.a)
    }
}
