//! Even Hecke–Maass cusp forms from precomputed coefficient files.
//!
//! Values use first-coefficient normalisation `ρ(1) = 1`, so
//! `f(y) = y^{-1/2} φ(x₀+iy) = Σ_{n≥1} 2 λ(n) K̂_{it}(2πny) cos(2πn x₀)`
//! with `K̂ = e^{πt/2} K` absorbing the exponential scale. Sign changes,
//! `M₁/M₂` and the certificate hypotheses are invariant under positive
//! rescaling, so the missing `L²` normalisation does not affect them.

use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::restriction::{GeodesicSegment, Sample, SegmentFunction};
use crate::special::{ln_bessel_k_scaled_bound_at, BesselKernel, BesselOrder, PrecisionPolicy};

const EPS: f64 = f64::EPSILON;

/// Largest `m`, `n` covered by the standard Hecke check.
pub const HECKE_CHECK_LIMIT: usize = 20;

/// Parity of a Maass form; only even forms are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// How much of the Hecke multiplicativity to verify on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeckeCheck {
    /// All pairs `m, n ≤ 20` with `mn ≤ n_max`.
    #[default]
    Standard,
    /// All pairs with `mn ≤ n_max`.
    Exhaustive,
}

/// Spectral parameter and Hecke eigenvalues of an even Maass cusp form.
#[derive(Debug, Clone, PartialEq)]
pub struct MaassFormRecord {
    pub t_phi: f64,
    pub parity: Parity,
    /// `lambda[n] = λ(n)` for `1 ≤ n ≤ n_max`; `lambda[0]` is unused and zero.
    pub lambda: Vec<f64>,
    pub coeff_tol: f64,
    pub source_id: String,
}

impl MaassFormRecord {
    /// Build and validate a record from `λ(1..=n_max)`.
    pub fn new(t_phi: f64, lambda_1_based: &[f64], coeff_tol: f64, source_id: &str) -> Result<Self> {
        let rec = Self::new_unchecked(t_phi, lambda_1_based, coeff_tol, source_id);
        rec.validate(HeckeCheck::Standard)?;
        Ok(rec)
    }

    /// Build a record without any Hecke or normalisation checks. Intended for
    /// linear combinations and rescaled coefficient vectors, which are not
    /// Hecke eigenforms.
    pub fn new_unchecked(t_phi: f64, lambda_1_based: &[f64], coeff_tol: f64, source_id: &str) -> Self {
        let mut lambda = Vec::with_capacity(lambda_1_based.len() + 1);
        lambda.push(0.0);
        lambda.extend_from_slice(lambda_1_based);
        MaassFormRecord { t_phi, parity: Parity::Even, lambda, coeff_tol, source_id: source_id.to_string() }
    }

    pub fn n_max(&self) -> usize {
        self.lambda.len().saturating_sub(1)
    }

    /// `λ(n)` for `1 ≤ n ≤ n_max`.
    pub fn lambda(&self, n: usize) -> f64 {
        self.lambda[n]
    }

    /// Check ranges, `λ(1) = 1` and the Hecke relations
    /// `λ(m)λ(n) = Σ_{d | (m,n)} λ(mn/d²)`.
    pub fn validate(&self, check: HeckeCheck) -> Result<()> {
        if !(self.t_phi > 0.0 && self.t_phi.is_finite()) {
            return Err(Error::Domain(format!("t_phi must be positive, got {}", self.t_phi)));
        }
        if self.parity != Parity::Even {
            return Err(Error::Domain(
                "odd forms vanish on x0 = 0 and are not supported; supply an even form".into(),
            ));
        }
        if !(self.coeff_tol >= 0.0 && self.coeff_tol.is_finite()) {
            return Err(Error::InvalidRecord(format!("coeff_tol must be ≥ 0, got {}", self.coeff_tol)));
        }
        let n_max = self.n_max();
        if n_max < 10 {
            return Err(Error::Domain(format!("n_max must be at least 10, got {n_max}")));
        }
        if let Some(n) = (1..=n_max).find(|&n| !self.lambda[n].is_finite()) {
            return Err(Error::InvalidRecord(format!("λ({n}) is not finite")));
        }
        let tol = self.coeff_tol;
        if (self.lambda[1] - 1.0).abs() > tol {
            return Err(Error::InvalidRecord(format!(
                "λ(1) = {} differs from 1 by more than coeff_tol = {tol}",
                self.lambda[1]
            )));
        }
        let limit = match check {
            HeckeCheck::Standard => HECKE_CHECK_LIMIT,
            HeckeCheck::Exhaustive => n_max,
        };
        let l = &self.lambda;
        for m in 2..=limit.min(n_max / 2) {
            for n in m..=limit {
                let mn = m * n;
                if mn > n_max {
                    break;
                }
                let g = m.gcd(&n);
                let mut rhs = 0.0;
                let mut rhs_abs = 0.0;
                let mut divisors = 0.0;
                for d in (1..=g).filter(|d| g % d == 0) {
                    let v = l[mn / (d * d)];
                    rhs += v;
                    rhs_abs += v.abs();
                    divisors += 1.0;
                }
                let lhs = l[m] * l[n];
                let allowed = tol * (l[m].abs() + l[n].abs() + tol + divisors)
                    + 8.0 * EPS * (lhs.abs() + rhs_abs + 1.0);
                if (lhs - rhs).abs() > allowed {
                    return Err(Error::InvalidRecord(format!(
                        "Hecke relation fails at (m, n, mn) = ({m}, {n}, {mn}): \
                         λ(m)λ(n) = {lhs} but Σ_(d | gcd) λ(mn/d²) = {rhs}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Serialise in the coefficient-file format read by [`load_maass_record`].
    pub fn to_file_string(&self) -> String {
        let mut s = format!(
            "# {}\nt_phi = {}\nparity = even\ncoeff_tol = {:e}\nn_max = {}\n",
            self.source_id,
            self.t_phi,
            self.coeff_tol,
            self.n_max()
        );
        for n in 1..=self.n_max() {
            s.push_str(&format!("{n} {:e}\n", self.lambda[n]));
        }
        s
    }
}

/// Parse a coefficient file's text; `source_id` labels the record.
pub fn parse_maass_record(text: &str, source_id: &str, check: HeckeCheck) -> Result<MaassFormRecord> {
    let bad = |line: usize, msg: String| Error::InvalidRecord(format!("{source_id}:{line}: {msg}"));
    let mut t_phi = None;
    let mut parity = None;
    let mut coeff_tol = None;
    let mut n_max: Option<usize> = None;
    let mut lambda = vec![0.0];
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once('=') {
            if lambda.len() > 1 {
                return Err(bad(lineno, "header line after coefficient lines".into()));
            }
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| v.parse::<f64>().map_err(|e| bad(lineno, format!("{key}: {e}")));
            match key {
                "t_phi" => t_phi = Some(num(value)?),
                "coeff_tol" => coeff_tol = Some(num(value)?),
                "n_max" => {
                    n_max = Some(value.parse().map_err(|e| bad(lineno, format!("n_max: {e}")))?)
                }
                "parity" => {
                    parity = Some(match value {
                        "even" => Parity::Even,
                        "odd" => Parity::Odd,
                        other => return Err(bad(lineno, format!("unknown parity `{other}`"))),
                    })
                }
                other => return Err(bad(lineno, format!("unknown header key `{other}`"))),
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(n), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(lineno, format!("expected `<n> <lambda_n>`, got `{line}`")));
        };
        let n: usize = n.parse().map_err(|e| bad(lineno, format!("index: {e}")))?;
        if n != lambda.len() {
            return Err(bad(lineno, format!("expected index {}, got {n}", lambda.len())));
        }
        lambda.push(v.parse::<f64>().map_err(|e| bad(lineno, format!("λ({n}): {e}")))?);
    }
    let missing = |k: &str| Error::InvalidRecord(format!("{source_id}: missing header `{k}`"));
    let t_phi = t_phi.ok_or_else(|| missing("t_phi"))?;
    let parity = parity.ok_or_else(|| missing("parity"))?;
    let coeff_tol = coeff_tol.ok_or_else(|| missing("coeff_tol"))?;
    let n_max = n_max.ok_or_else(|| missing("n_max"))?;
    if lambda.len() - 1 != n_max {
        return Err(Error::InvalidRecord(format!(
            "{source_id}: header declares n_max = {n_max} but {} coefficients follow",
            lambda.len() - 1
        )));
    }
    let rec = MaassFormRecord { t_phi, parity, lambda, coeff_tol, source_id: source_id.to_string() };
    rec.validate(check)?;
    Ok(rec)
}

/// Load and validate a coefficient file (standard Hecke check).
pub fn load_maass_record(path: impl AsRef<Path>) -> Result<MaassFormRecord> {
    load_maass_record_with(path, HeckeCheck::Standard)
}

/// Load a coefficient file with the chosen depth of Hecke validation.
pub fn load_maass_record_with(path: impl AsRef<Path>, check: HeckeCheck) -> Result<MaassFormRecord> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_maass_record(&text, &path.display().to_string(), check)
}

/// Evaluator for `y^{-1/2} φ(x₀ + iy)` with a proved truncation tail.
///
/// Coefficients beyond `n_max` are bounded by `|λ(n)| ≤ d(n) n^{7/64}`, the
/// Kim–Sarnak bound for genuine Hecke eigenforms.
#[derive(Debug, Clone)]
pub struct MaassEvaluator {
    record: Arc<MaassFormRecord>,
    prec: PrecisionPolicy,
    tol: f64,
    y_floor: f64,
    rho1: f64,
    kernel: BesselKernel,
}

impl MaassEvaluator {
    pub fn new(record: Arc<MaassFormRecord>, prec: PrecisionPolicy, tol: f64, y_floor: f64) -> Result<Self> {
        prec.validate()?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Domain(format!("tol must be positive, got {tol}")));
        }
        if !(y_floor > 0.0 && y_floor.is_finite()) {
            return Err(Error::Domain(format!("y_floor must be positive, got {y_floor}")));
        }
        if !(record.t_phi > 0.0 && record.t_phi.is_finite()) {
            return Err(Error::Domain(format!("t_phi must be positive, got {}", record.t_phi)));
        }
        if record.parity != Parity::Even {
            return Err(Error::Domain("only even forms are supported".into()));
        }
        let kernel = BesselKernel::new(BesselOrder::Imaginary(record.t_phi), 2.0 * PI * y_floor, &prec)?;
        Ok(MaassEvaluator { record, prec, tol, y_floor, rho1: 1.0, kernel })
    }

    /// Use `ρ(1) = rho1 > 0` instead of 1; every value scales by `rho1`.
    pub fn with_rho1(mut self, rho1: f64) -> Result<Self> {
        if !(rho1 > 0.0 && rho1.is_finite()) {
            return Err(Error::Domain(format!("ρ(1) must be positive, got {rho1}")));
        }
        self.rho1 = rho1;
        Ok(self)
    }

    pub fn record(&self) -> &MaassFormRecord {
        &self.record
    }

    pub fn prec(&self) -> &PrecisionPolicy {
        &self.prec
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Number of terms needed at height `y` and the proved tail bound.
    pub fn truncation(&self, y: f64) -> Result<(usize, f64)> {
        let t = self.record.t_phi;
        let n_max = self.record.n_max();
        let target = 0.5 * self.tol / self.rho1;
        let bound = |n: usize| {
            let (lb, _) = ln_bessel_k_scaled_bound_at(t, 2.0 * PI * n as f64 * y);
            2.0 * lb.exp()
        };
        // Remainder past n_max with |λ(n)| ≤ 2√n n^{7/64}; for fixed α the
        // n-th term is ≤ 2 n^{7/64} e^{t(π/2-α)} (y cos α)^{-1/2} e^{-2πny cos α}.
        let m = n_max + 1;
        let (_, alpha) = ln_bessel_k_scaled_bound_at(t, 2.0 * PI * m as f64 * y);
        let ca = alpha.cos();
        let ks = 7.0 / 64.0;
        let r = ((m + 1) as f64 / m as f64).powf(ks) * (-2.0 * PI * y * ca).exp();
        let ln_first = (2.0f64).ln() + ks * (m as f64).ln() + t * (PI / 2.0 - alpha)
            - 0.5 * (y * ca).ln()
            - 2.0 * PI * m as f64 * y * ca;
        let remainder = if r < 1.0 { ln_first.exp() / (1.0 - r) } else { f64::INFINITY };
        if !(remainder <= target) {
            return Err(Error::TruncationFailure(format!(
                "tolerance {} at y = {y} needs coefficients beyond n_max = {n_max}",
                self.tol
            )));
        }
        let mut tail = remainder;
        let mut n_terms = n_max;
        while n_terms > 1 {
            let next = tail + self.record.lambda[n_terms].abs() * bound(n_terms);
            if next > target {
                break;
            }
            tail = next;
            n_terms -= 1;
        }
        Ok((n_terms, tail * self.rho1))
    }

    fn eval_at(&self, segment: &GeodesicSegment, y: f64) -> Result<Sample> {
        if !(y.is_finite() && y >= self.y_floor) {
            return Err(Error::Domain(format!("y = {y} is below y_floor = {}", self.y_floor)));
        }
        let (n_terms, tail) = self.truncation(y)?;
        let kv = self.kernel.ladder(2.0 * PI * y, n_terms)?;
        let t = self.record.t_phi;
        let lam = &self.record.lambda;
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        let mut err = 0.0;
        for (i, k) in kv.iter().enumerate() {
            let n = i + 1;
            let c = segment.cos_harmonic(n as u64);
            let term = 2.0 * lam[n] * k.value * c;
            sum += term;
            abs_sum += term.abs();
            let x = 2.0 * PI * n as f64 * y;
            err += 2.0 * lam[n].abs() * (k.abs_error + (x + t + 1.0) * 4.0 * EPS * k.value.abs().max(k.abs_error))
                + term.abs() * 8.0 * EPS;
        }
        err += abs_sum * (kv.len() as f64 + 2.0) * EPS;
        let value = self.rho1 * sum;
        let abs_error = self.rho1 * err * (1.0 + 4.0 * EPS) + tail + value.abs() * 2.0 * EPS;
        Ok(Sample { y, value, abs_error })
    }
}

/// `y^{-1/2} φ(x₀ + iy) = Σ_{n≤N} 2 λ(n) K̂_{it}(2πny) cos(2πn x₀)` with error bound.
pub fn maass_eval(ev: &MaassEvaluator, segment: &GeodesicSegment, y: f64) -> Result<Sample> {
    if !segment.contains_eval(y) {
        return Err(Error::Domain(format!(
            "y = {y} lies outside [{}, {}]",
            segment.a,
            segment.b + segment.eval_margin
        )));
    }
    ev.eval_at(segment, y)
}

/// A Maass form restricted to a segment, as a [`SegmentFunction`].
#[derive(Debug, Clone)]
pub struct MaassRestriction {
    pub ev: Arc<MaassEvaluator>,
    pub segment: GeodesicSegment,
}

impl MaassRestriction {
    pub fn new(ev: Arc<MaassEvaluator>, segment: GeodesicSegment) -> Self {
        MaassRestriction { ev, segment }
    }
}

impl SegmentFunction for MaassRestriction {
    fn eval(&self, y: f64) -> Result<Sample> {
        maass_eval(&self.ev, &self.segment, y)
    }

    fn domain(&self) -> (f64, f64) {
        self.segment.eval_domain()
    }

    fn frequency(&self) -> f64 {
        (self.ev.record.t_phi / self.segment.a).max(2.0 * PI)
    }
}

/// Partial sum `Σ_{n ≤ n_terms} λ(n) n^{-s}` and the heuristic residual
/// `Σ_{n_terms < n ≤ n_max} |λ(n)| n^{-Re s}` (an indicator, not a bound).
pub fn l_phi_truncated(record: &MaassFormRecord, s: Complex64, n_terms: usize) -> Result<(Complex64, f64)> {
    let n_max = record.n_max();
    if n_terms == 0 || n_terms > n_max {
        return Err(Error::Domain(format!("n_terms must lie in 1..={n_max}, got {n_terms}")));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=n_terms {
        let l = record.lambda[n];
        if l != 0.0 {
            sum += l * (-s * (n as f64).ln()).exp();
        }
    }
    let tail: f64 = (n_terms + 1..=n_max)
        .map(|n| record.lambda[n].abs() * (n as f64).powf(-s.re))
        .sum();
    Ok((sum, tail))
}
