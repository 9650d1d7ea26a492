//! `L(t, ν) = ζ(ν+it) ζ(ν-it)`, the `γ(ν, t)` factor and the `I` kernel of the
//! window integral's Mellin–Barnes form, and critical-line moments of `ζ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::csv::{fmt_num, CsvRecord};
use crate::eisenstein::theta_parts;
use crate::error::{Error, Result};
use crate::maass::{l_phi_truncated, MaassFormRecord};
use crate::special::{ln_gamma_mp, zeta_complex, CriticalLineZeta, MpComplex, PrecisionPolicy};

const EPS: f64 = f64::EPSILON;

/// A complex value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LValue {
    pub value: Complex64,
    pub abs_error: f64,
}

/// `ζ(ν+it) ζ(ν-it)`; for `Re ν > 1` this is `Σ η_{it}(n) n^{-ν}`.
pub fn eisenstein_l(t: f64, nu: Complex64, prec: &PrecisionPolicy) -> Result<LValue> {
    let it = Complex64::new(0.0, t);
    let a = zeta_complex(nu + it, prec)?;
    let b = zeta_complex(nu - it, prec)?;
    let value = a.value * b.value;
    let abs_error = a.value.norm() * b.abs_error
        + b.value.norm() * a.abs_error
        + a.abs_error * b.abs_error
        + 4.0 * EPS * value.norm();
    Ok(LValue { value, abs_error })
}

/// `γ(ν, t) = Γ((ν+it)/2) Γ((ν-it)/2) π^{-ν} / θ(1/2+it)` in scaled form:
/// `γ = unit · e^{ln_scale}` with `ln_scale = Σ ledger`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaFactor {
    /// `γ / e^{ln_scale}`; of unit modulus.
    pub scaled: Complex64,
    pub ln_scale: f64,
    /// Named contributions to `ln |γ|`.
    pub ledger: Vec<(&'static str, f64)>,
}

impl GammaFactor {
    /// `|γ|`, which may under- or overflow where `ln_scale` does not.
    pub fn abs(&self) -> f64 {
        self.ln_scale.exp()
    }

    /// `γ` itself, when representable.
    pub fn value(&self) -> Complex64 {
        self.scaled * self.ln_scale.exp()
    }
}

/// The γ-factor with every exponentially large or small piece kept in logs.
///
/// `t = 0` is rejected: `θ(1/2)` is a pole, so γ vanishes identically there.
pub fn gamma_factor(nu: Complex64, t: f64, prec: &PrecisionPolicy) -> Result<GammaFactor> {
    prec.validate()?;
    if t == 0.0 {
        return Err(Error::Pole("θ(1/2) is a pole, so γ(ν, 0) = 0".into()));
    }
    let half_plus = (nu + Complex64::new(0.0, t)) / 2.0;
    let half_minus = (nu - Complex64::new(0.0, t)) / 2.0;
    let bits = prec.analytic_bits(half_plus.norm().max(half_minus.norm())) + 16;
    let lg = |z: Complex64| ln_gamma_mp(&MpComplex::from_c64(bits, z), prec.base_bits + 8);
    let gp = lg(half_plus)?.to_c64();
    let gm = lg(half_minus)?.to_c64();
    let tt = t.abs();
    let (theta_hat, _) = theta_parts(Complex64::new(0.5, tt), prec, Some(tt))?;
    let th = theta_hat.to_c64();
    // θ(1/2 - it) = conj θ(1/2 + it).
    let th = if t < 0.0 { th.conj() } else { th };
    let ln_th = th.norm().ln() - PI * tt / 2.0;
    let ln_pi = PI.ln();
    let ledger = vec![
        ("ln|Γ((ν+it)/2)|", gp.re),
        ("ln|Γ((ν-it)/2)|", gm.re),
        ("-ln|θ(1/2+it)|", -ln_th),
        ("-Re ν ln π", -nu.re * ln_pi),
    ];
    let ln_scale = ledger.iter().map(|(_, v)| v).sum();
    let phase = gp.im + gm.im - th.arg() - nu.im * ln_pi;
    Ok(GammaFactor { scaled: Complex64::from_polar(1.0, phase), ln_scale, ledger })
}

/// `I(η, y; ν) = ∫_0^η (y+v)^{-ν} dv = ((y+η)^{1-ν} - y^{1-ν})/(1-ν)`.
///
/// Evaluated as `y^{1-ν} expm1((1-ν) log(1+η/y))/(1-ν)`, which is accurate
/// near `ν = 1` and equals `log((y+η)/y)` there.
pub fn i_kernel(eta: f64, y: f64, nu: Complex64) -> Result<Complex64> {
    if !(eta > 0.0 && eta.is_finite() && y > 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("need η > 0 and y > 0, got η = {eta}, y = {y}")));
    }
    let l = (eta / y).ln_1p();
    if nu == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(eta, 0.0));
    }
    let w = Complex64::new(1.0, 0.0) - nu;
    if w == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(l, 0.0));
    }
    let z = w * l;
    let ratio = if z.norm() < 1e-3 {
        // expm1(z)/z = Σ z^k/(k+1)!
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 1..12 {
            term *= z / (k as f64 + 1.0);
            sum += term;
        }
        sum * l
    } else {
        complex_expm1(z) / w
    };
    Ok((w * y.ln()).exp() * ratio)
}

/// `e^z - 1` without cancellation for small `|z|`.
fn complex_expm1(z: Complex64) -> Complex64 {
    let half_sin = (z.im / 2.0).sin();
    Complex64::new(z.re.exp_m1() * z.im.cos() - 2.0 * half_sin * half_sin, z.re.exp() * z.im.sin())
}

/// Which part of the `r` range a profile point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileRange {
    /// `|r| < 1/η`.
    Low,
    /// `1/η ≤ |r| ≤ t`.
    Middle,
    /// `|r| > t`.
    Tail,
}

impl ProfileRange {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileRange::Low => "low",
            ProfileRange::Middle => "middle",
            ProfileRange::Tail => "tail",
        }
    }
}

/// One point of the Mellin–Barnes integrand profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub r: f64,
    pub range: ProfileRange,
    /// `ln |I γ L|²`.
    pub ln_value: f64,
    /// `|I γ L|²` (`exp(ln_value)`).
    pub value: f64,
}

/// `|I(η, y; ν) γ(ν, t) L(t, ν)|²` at `ν = 1/2 + ir` for each `r`.
pub fn j_integrand_profile(
    t: f64,
    eta: f64,
    r_grid: &[f64],
    y: f64,
    prec: &PrecisionPolicy,
) -> Result<Vec<ProfilePoint>> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    if !(eta > 2.0 / t && eta < 1.0) {
        return Err(Error::Domain(format!("η must satisfy 2/t < η < 1, got η = {eta}, t = {t}")));
    }
    r_grid
        .par_iter()
        .map(|&r| {
            let nu = Complex64::new(0.5, r);
            let i = i_kernel(eta, y, nu)?;
            let g = gamma_factor(nu, t, prec)?;
            let l = eisenstein_l(t, nu, prec)?;
            let ln_value = 2.0 * (i.norm().ln() + g.ln_scale + l.value.norm().ln());
            let range = if r.abs() < 1.0 / eta {
                ProfileRange::Low
            } else if r.abs() <= t {
                ProfileRange::Middle
            } else {
                ProfileRange::Tail
            };
            Ok(ProfilePoint { r, range, ln_value, value: ln_value.exp() })
        })
        .collect()
}

/// One moment value `(1/T) ∫_0^T |ζ(1/2+it)|^{2k} dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRecord {
    pub t: f64,
    pub k: u32,
    pub value: f64,
    pub quad_error: f64,
}

impl CsvRecord for MomentRecord {
    const HEADER: &'static [&'static str] = &["T", "k", "value", "quad_error"];

    fn fields(&self) -> Vec<String> {
        vec![fmt_num(self.t), self.k.to_string(), fmt_num(self.value), fmt_num(self.quad_error)]
    }
}

/// Relative disagreement between the two Simpson resolutions that is accepted.
pub const MOMENT_REL_TOL: f64 = 1e-3;

/// Default step in `t`.
pub const MOMENT_STEP: f64 = 0.05;

/// Composite Simpson with `n` (a multiple of 4) intervals and with `n/2`
/// intervals, from samples `g[0..=n]`. Integer weights keep constants exact.
fn simpson_pair(g: &[f64], len: f64) -> (f64, f64) {
    let n = g.len() - 1;
    let simpson = |stride: usize| {
        let m = n / stride;
        let mut acc = 0.0;
        for j in 0..=m {
            let w = if j == 0 || j == m { 1.0 } else if j % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * g[j * stride];
        }
        acc / (3 * m) as f64 * len
    };
    (simpson(1), simpson(2))
}

/// Mean of `|ζ(1/2+it)|^{2k}` over `[t0, t1]`.
pub fn zeta_moment_window(
    t0: f64,
    t1: f64,
    k: u32,
    step: f64,
    prec: &PrecisionPolicy,
) -> Result<MomentRecord> {
    if !(k == 1 || k == 2) {
        return Err(Error::Domain(format!("k must be 1 or 2, got {k}")));
    }
    if !(t1 > t0 && t0.is_finite() && t1.is_finite()) {
        return Err(Error::Domain(format!("empty window [{t0}, {t1}]")));
    }
    if !(step > 0.0 && step <= 0.25) {
        return Err(Error::Domain(format!("resolution must lie in (0, 0.25], got {step}")));
    }
    let len = t1 - t0;
    let n = 4 * ((len / (4.0 * step)).ceil() as usize).max(1);
    let zeta = CriticalLineZeta::new(t0.abs().max(t1.abs()), prec)?;
    let p = 2 * k as i32;
    let samples: Vec<(f64, f64)> = (0..=n)
        .into_par_iter()
        .map(|i| {
            let t = (t0 * (n - i) as f64 + t1 * i as f64) / n as f64;
            let z = zeta.eval(t)?;
            let a = z.value.norm();
            let g = a.powi(p);
            // |(|z| ± e)^p - |z|^p| ≤ p e (|z| + e)^{p-1}.
            let ge = p as f64 * z.abs_error * (a + z.abs_error).powi(p - 1) + 4.0 * EPS * g;
            Ok((g, ge))
        })
        .collect::<Result<_>>()?;
    let g: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let eval_err = samples.iter().map(|s| s.1).fold(0.0, f64::max);
    let (fine, coarse) = simpson_pair(&g, len);
    let (fine, coarse) = (fine / len, coarse / len);
    let diff = (fine - coarse).abs();
    if diff > MOMENT_REL_TOL * fine.abs() {
        return Err(Error::QuadratureUnconverged(format!(
            "moment resolutions h = {} and 2h disagree: {fine} vs {coarse}",
            len / n as f64
        )));
    }
    Ok(MomentRecord { t: t1, k, value: fine, quad_error: diff + eval_err })
}

/// `(1/T) ∫_0^T |ζ(1/2+it)|^{2k} dt` by composite Simpson at spacing about
/// `step`, checked against the rule at twice the spacing.
pub fn zeta_moment(t: f64, k: u32, step: f64, prec: &PrecisionPolicy) -> Result<MomentRecord> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("T must be positive, got {t}")));
    }
    zeta_moment_window(0.0, t, k, step, prec)
}

/// [`zeta_moment`] for every `T` in `t_grid`.
pub fn zeta_moment_scan(t_grid: &[f64], k: u32, step: f64, prec: &PrecisionPolicy) -> Result<Vec<MomentRecord>> {
    t_grid.iter().map(|&t| zeta_moment(t, k, step, prec)).collect()
}

/// Label attached to every truncated cusp-form moment.
pub const MAASS_MOMENT_CAVEAT: &str =
    "exploratory: raw Dirichlet-series truncation without an approximate functional equation";

/// Mean of `|Σ_{n ≤ n_terms} λ(n) n^{-1/2-it}|²` over `[t0, t1]` (exploratory).
pub fn maass_l_mean_square(
    record: &MaassFormRecord,
    t0: f64,
    t1: f64,
    n_terms: usize,
) -> Result<(f64, &'static str)> {
    if !(t1 > t0 && t0.is_finite() && t1.is_finite()) {
        return Err(Error::Domain(format!("empty window [{t0}, {t1}]")));
    }
    let len = t1 - t0;
    // The partial sum oscillates with frequencies up to log(n_terms).
    let h = 0.1 / (n_terms as f64).ln().max(1.0);
    let n = 4 * ((len / (4.0 * h)).ceil() as usize).max(1);
    let g: Vec<f64> = (0..=n)
        .into_par_iter()
        .map(|i| {
            let t = (t0 * (n - i) as f64 + t1 * i as f64) / n as f64;
            Ok(l_phi_truncated(record, Complex64::new(0.5, t), n_terms)?.0.norm_sqr())
        })
        .collect::<Result<_>>()?;
    let (fine, coarse) = simpson_pair(&g, len);
    let (fine, coarse) = (fine / len, coarse / len);
    if (fine - coarse).abs() > MOMENT_REL_TOL * fine.abs().max(1e-300) {
        return Err(Error::QuadratureUnconverged(format!(
            "cusp-form moment resolutions disagree: {fine} vs {coarse}"
        )));
    }
    Ok((fine, MAASS_MOMENT_CAVEAT))
}

/// `(1/T) ∫_T^{2T} |L_φ(1/2+it)|² dt` with `L_φ` truncated to `n_terms`
/// terms. Exploratory only; the caveat string says so.
pub fn maass_l_second_moment(record: &MaassFormRecord, t: f64, n_terms: usize) -> Result<(f64, &'static str)> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("T must be positive, got {t}")));
    }
    maass_l_mean_square(record, t, 2.0 * t, n_terms)
}
