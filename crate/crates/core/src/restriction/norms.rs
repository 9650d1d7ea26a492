//! `M_p` norms and the η-window functional `J`.

use super::quadrature::{QuadratureConfig, Surrogate};
use super::{Measure, RestrictionSamples, SegmentFunction};
use crate::error::{Error, Result};

/// A normalised `L^p` norm with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport {
    pub p: f64,
    pub value: f64,
    pub quad_error: f64,
    pub measure: Measure,
}

/// `J(f, η) = (1/|I|) ∫_I |∫_0^η f(y+v) dv| dy` with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JReport {
    pub eta: f64,
    pub value: f64,
    pub quad_error: f64,
}

fn check_interval<F: SegmentFunction + ?Sized>(f: &F, a: f64, hi: f64) -> Result<()> {
    let (lo, top) = f.domain();
    if !(a >= lo && hi <= top && hi > a) {
        return Err(Error::Domain(format!(
            "[{a}, {hi}] is not inside the evaluation domain [{lo}, {top}]"
        )));
    }
    Ok(())
}

/// Two surrogates at resolutions `P` and `2P` covering `[a, b]` and, when
/// `eta > 0`, the window extension `[b, b + η]`.
pub(crate) struct SurrogatePair {
    pub coarse: Surrogate,
    pub fine: Surrogate,
}

impl SurrogatePair {
    pub fn build<F: SegmentFunction + ?Sized>(
        f: &F,
        a: f64,
        b: f64,
        eta: f64,
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        let omega = f.frequency();
        let (breaks, counts) = if eta > 0.0 {
            (vec![a, b, b + eta], vec![cfg.panels_for(b - a, omega), cfg.panels_for(eta, omega)])
        } else {
            (vec![a, b], vec![cfg.panels_for(b - a, omega)])
        };
        let fine_counts: Vec<usize> = counts.iter().map(|c| 2 * c).collect();
        let coarse = Surrogate::build(f, &breaks, &counts, cfg.order)?;
        let fine = Surrogate::build(f, &breaks, &fine_counts, cfg.order)?;
        Ok(SurrogatePair { coarse, fine })
    }

    pub fn max_eval_error(&self) -> f64 {
        self.coarse.max_eval_error.max(self.fine.max_eval_error)
    }

    pub fn norm(&self, a: f64, b: f64, p: f64, measure: Measure, cfg: &QuadratureConfig) -> Result<NormReport> {
        let len = measure.length(a, b);
        let m = |s: &Surrogate| (s.abs_pow_integral(a, b, p, measure) / len).powf(1.0 / p);
        let (vc, vf) = (m(&self.coarse), m(&self.fine));
        let d = cfg.compare(&format!("M_{p}"), vc, vf)?;
        // Minkowski: |M_p(f) - M_p(g)| ≤ sup |f - g|.
        Ok(NormReport { p, value: vf, quad_error: d + self.max_eval_error(), measure })
    }

    pub fn j(&self, a: f64, b: f64, eta: f64, cfg: &QuadratureConfig) -> Result<JReport> {
        let jv = |s: &Surrogate| s.window_abs_integral(a, b, eta) / (b - a);
        let (jc, jf) = (jv(&self.coarse), jv(&self.fine));
        let d = cfg.compare("J", jc, jf)?;
        Ok(JReport { eta, value: jf, quad_error: d + eta * self.max_eval_error() })
    }
}

/// `M_p(f) = ((1/|I|) ∫_I |f|^p dμ)^{1/p}` on `I = [a, b]`.
///
/// Composite Gauss–Legendre on a barycentric surrogate, with `|f|^p` split at
/// the surrogate's roots; the error estimate compares two panel resolutions
/// and adds the largest evaluation error (Minkowski).
pub fn m_p_norm<F: SegmentFunction + ?Sized>(
    f: &F,
    (a, b): (f64, f64),
    p: f64,
    measure: Measure,
    cfg: &QuadratureConfig,
) -> Result<NormReport> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Domain(format!("p must be ≥ 1, got {p}")));
    }
    check_interval(f, a, b)?;
    SurrogatePair::build(f, a, b, 0.0, cfg)?.norm(a, b, p, measure, cfg)
}

/// `M_p` from a fixed sample set by the trapezoid rule over all of `ys`.
///
/// The error estimate is the difference from the rule on every other point
/// (odd sample counts only); it is reported, never enforced.
pub fn m_p_norm_samples(samples: &RestrictionSamples, p: f64) -> Result<NormReport> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Domain(format!("p must be ≥ 1, got {p}")));
    }
    let ys = &samples.ys;
    if ys.len() < 2 {
        return Err(Error::Domain("need at least two samples".into()));
    }
    let mu = samples.measure;
    let g: Vec<f64> = ys
        .iter()
        .zip(&samples.values)
        .map(|(&y, &v)| v.abs().powf(p) * mu.weight(y))
        .collect();
    let trap = |step: usize| {
        let idx: Vec<usize> = (0..ys.len()).step_by(step).collect();
        idx.windows(2).map(|w| 0.5 * (ys[w[1]] - ys[w[0]]) * (g[w[0]] + g[w[1]])).sum::<f64>()
    };
    let len = mu.length(ys[0], ys[ys.len() - 1]);
    let fine = (trap(1) / len).powf(1.0 / p);
    let d = if ys.len() >= 3 && ys.len() % 2 == 1 {
        ((trap(2) / len).powf(1.0 / p) - fine).abs()
    } else {
        0.0
    };
    let max_err = samples.errors.iter().cloned().fold(0.0, f64::max);
    Ok(NormReport { p, value: fine, quad_error: d + max_err, measure: mu })
}

/// `J(f, η)` on `I = [a, b]`; `f` must be defined on `[a, b + η]`.
pub fn j_functional<F: SegmentFunction + ?Sized>(
    f: &F,
    (a, b): (f64, f64),
    eta: f64,
    cfg: &QuadratureConfig,
) -> Result<JReport> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::Domain(format!("η must be positive, got {eta}")));
    }
    let top = f.domain().1;
    if b + eta > top {
        return Err(Error::Domain(format!(
            "η = {eta} exceeds the evaluation margin above b = {b} (domain ends at {top})"
        )));
    }
    check_interval(f, a, b + eta)?;
    SurrogatePair::build(f, a, b, eta, cfg)?.j(a, b, eta, cfg)
}

#[cfg(test)]
mod tests {
    use super::super::FnSegment;
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn constant_norms() {
        let f = FnSegment::new(|_| 2.0, (1.0, 3.0), 1.0);
        for p in [1.0, 2.0, 3.5] {
            for mu in [Measure::Lebesgue, Measure::Hyperbolic] {
                let r = m_p_norm(&f, (1.0, 3.0), p, mu, &cfg()).unwrap();
                assert!((r.value - 2.0).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn sine_norms() {
        let f = FnSegment::new(|y: f64| (2.0 * PI * y).sin(), (0.0, 1.0), 2.0 * PI);
        let m2 = m_p_norm(&f, (0.0, 1.0), 2.0, Measure::Lebesgue, &cfg()).unwrap();
        let m1 = m_p_norm(&f, (0.0, 1.0), 1.0, Measure::Lebesgue, &cfg()).unwrap();
        assert!((m2.value - 0.5f64.sqrt()).abs() < 1e-13);
        assert!((m1.value - 2.0 / PI).abs() < 1e-13);
    }

    #[test]
    fn j_of_constant_is_eta() {
        let f = FnSegment::new(|_| 1.0, (0.0, 1.5), 1.0);
        let j = j_functional(&f, (0.0, 1.0), 0.3, &cfg()).unwrap();
        assert!((j.value - 0.3).abs() < 1e-14);
        assert!(matches!(j_functional(&f, (0.0, 1.0), 0.6, &cfg()), Err(Error::Domain(_))));
    }
}
