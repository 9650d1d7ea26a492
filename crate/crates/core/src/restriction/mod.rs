//! Restriction of a form to a vertical geodesic segment `x₀ + i[a, b]`:
//! sampling, certified sign-change counting, `M_p` norms and the `J` functional.

pub(crate) mod norms;
pub mod quadrature;
mod signs;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub use norms::{j_functional, m_p_norm, m_p_norm_samples, JReport, NormReport};
pub use quadrature::{QuadratureConfig, Surrogate};
pub use signs::{count_sign_changes, SignCertificate, SignChange};

/// Vertical segment `x₀ + i[a, b]` with rational `x₀ = p/q ∈ [0, 1)` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicSegment {
    x0_num: u64,
    x0_den: u64,
    pub a: f64,
    pub b: f64,
    /// Extra room above `b` on which the function must be defined (needed by `J`).
    pub eval_margin: f64,
}

impl GeodesicSegment {
    pub fn new(x0_num: u64, x0_den: u64, a: f64, b: f64, eval_margin: f64) -> Result<Self> {
        if x0_den == 0 || x0_num >= x0_den {
            return Err(Error::Domain(format!(
                "x0 = {x0_num}/{x0_den} must satisfy 0 ≤ x0 < 1"
            )));
        }
        if !(a > 0.0 && b > a && a.is_finite() && b.is_finite()) {
            return Err(Error::Domain(format!("segment needs 0 < a < b, got a = {a}, b = {b}")));
        }
        if !(eval_margin >= 0.0 && eval_margin.is_finite()) {
            return Err(Error::Domain(format!("margin must be ≥ 0, got {eval_margin}")));
        }
        let g = x0_num.gcd(&x0_den);
        Ok(GeodesicSegment { x0_num: x0_num / g, x0_den: x0_den / g, a, b, eval_margin })
    }

    /// The segment `i[a, b]` on the imaginary axis.
    pub fn imaginary_axis(a: f64, b: f64, eval_margin: f64) -> Result<Self> {
        Self::new(0, 1, a, b, eval_margin)
    }

    /// The segment `1/2 + i[a, b]`.
    pub fn half_line(a: f64, b: f64, eval_margin: f64) -> Result<Self> {
        Self::new(1, 2, a, b, eval_margin)
    }

    pub fn x0(&self) -> f64 {
        self.x0_num as f64 / self.x0_den as f64
    }

    pub fn x0_ratio(&self) -> (u64, u64) {
        (self.x0_num, self.x0_den)
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// `[a, b + eval_margin]`.
    pub fn eval_domain(&self) -> (f64, f64) {
        (self.a, self.b + self.eval_margin)
    }

    /// `cos(2π n x₀)` reduced exactly modulo 1 through the rational `x₀`.
    pub fn cos_harmonic(&self, n: u64) -> f64 {
        let r = ((n as u128 * self.x0_num as u128) % self.x0_den as u128) as f64;
        (2.0 * std::f64::consts::PI * r / self.x0_den as f64).cos()
    }

    pub fn contains_eval(&self, y: f64) -> bool {
        y >= self.a && y <= self.b + self.eval_margin
    }
}

/// One evaluation: value with a rigorous absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub y: f64,
    pub value: f64,
    pub abs_error: f64,
}

impl Sample {
    /// `+1`/`-1` when the sign is certified (`|value| > abs_error`), else `0`.
    pub fn certified_sign(&self) -> i8 {
        if self.value.abs() > self.abs_error {
            if self.value > 0.0 {
                1
            } else {
                -1
            }
        } else {
            0
        }
    }
}

/// A real function of `y` on a segment, with error bounds.
pub trait SegmentFunction: Sync {
    fn eval(&self, y: f64) -> Result<Sample>;

    /// Closed interval of admissible `y`.
    fn domain(&self) -> (f64, f64);

    /// Typical angular frequency of oscillation in `y`; sizes grids and panels.
    fn frequency(&self) -> f64;

    /// Evaluate many points; results are in input order regardless of scheduling.
    fn eval_many(&self, ys: &[f64]) -> Result<Vec<Sample>> {
        ys.par_iter().map(|&y| self.eval(y)).collect()
    }
}

impl<T: SegmentFunction + ?Sized> SegmentFunction for &T {
    fn eval(&self, y: f64) -> Result<Sample> {
        (**self).eval(y)
    }
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
    fn frequency(&self) -> f64 {
        (**self).frequency()
    }
    fn eval_many(&self, ys: &[f64]) -> Result<Vec<Sample>> {
        (**self).eval_many(ys)
    }
}

/// A closed-form function with a fixed absolute error bound.
pub struct FnSegment<F> {
    f: F,
    domain: (f64, f64),
    frequency: f64,
    abs_error: f64,
}

impl<F: Fn(f64) -> f64 + Sync> FnSegment<F> {
    pub fn new(f: F, domain: (f64, f64), frequency: f64) -> Self {
        FnSegment { f, domain, frequency, abs_error: 0.0 }
    }

    pub fn with_error(mut self, abs_error: f64) -> Self {
        self.abs_error = abs_error;
        self
    }
}

impl<F: Fn(f64) -> f64 + Sync> SegmentFunction for FnSegment<F> {
    fn eval(&self, y: f64) -> Result<Sample> {
        check_domain(self.domain, y)?;
        Ok(Sample { y, value: (self.f)(y), abs_error: self.abs_error })
    }
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
    fn frequency(&self) -> f64 {
        self.frequency
    }
}

/// `λ·f` for `λ > 0`; values and error bounds scale together.
pub struct Scaled<S> {
    pub inner: S,
    pub factor: f64,
}

impl<S: SegmentFunction> SegmentFunction for Scaled<S> {
    fn eval(&self, y: f64) -> Result<Sample> {
        let s = self.inner.eval(y)?;
        Ok(Sample { y, value: s.value * self.factor, abs_error: s.abs_error * self.factor.abs() })
    }
    fn domain(&self) -> (f64, f64) {
        self.inner.domain()
    }
    fn frequency(&self) -> f64 {
        self.inner.frequency()
    }
    fn eval_many(&self, ys: &[f64]) -> Result<Vec<Sample>> {
        Ok(self
            .inner
            .eval_many(ys)?
            .into_iter()
            .map(|s| Sample {
                y: s.y,
                value: s.value * self.factor,
                abs_error: s.abs_error * self.factor.abs(),
            })
            .collect())
    }
}

pub(crate) fn check_domain((lo, hi): (f64, f64), y: f64) -> Result<()> {
    if !(y >= lo && y <= hi) {
        return Err(Error::Domain(format!("y = {y} lies outside [{lo}, {hi}]")));
    }
    Ok(())
}

/// Integration measure on the segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Measure {
    /// `dy`.
    #[default]
    Lebesgue,
    /// `dy / y`.
    Hyperbolic,
}

impl Measure {
    pub fn weight(&self, y: f64) -> f64 {
        match self {
            Measure::Lebesgue => 1.0,
            Measure::Hyperbolic => 1.0 / y,
        }
    }

    /// `∫_a^b dμ`.
    pub fn length(&self, a: f64, b: f64) -> f64 {
        match self {
            Measure::Lebesgue => b - a,
            Measure::Hyperbolic => (b / a).ln(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Measure::Lebesgue => "lebesgue",
            Measure::Hyperbolic => "hyperbolic",
        }
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lebesgue" | "dy" => Ok(Measure::Lebesgue),
            "hyperbolic" | "dy/y" => Ok(Measure::Hyperbolic),
            other => Err(Error::Domain(format!("unknown measure `{other}`"))),
        }
    }
}

/// Point placement for [`sample_segment`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    UniformY,
    UniformLogY,
}

/// Values of a function on a grid over `[a, b + margin]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionSamples {
    pub segment: GeodesicSegment,
    pub ys: Vec<f64>,
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    pub measure: Measure,
}

/// Grid of `n` points on `[lo, hi]`, endpoints included exactly.
pub fn grid(lo: f64, hi: f64, n: usize, spacing: Spacing) -> Vec<f64> {
    let d = (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i + 1 == n {
                hi
            } else {
                match spacing {
                    Spacing::UniformY => (lo * (n - 1 - i) as f64 + hi * i as f64) / d,
                    Spacing::UniformLogY => {
                        (lo.ln() * (n - 1 - i) as f64 / d + hi.ln() * i as f64 / d).exp()
                    }
                }
            }
        })
        .collect()
}

/// Evaluate `f` at `n_points` points covering `[a, b + eval_margin]`.
pub fn sample_segment<F: SegmentFunction + ?Sized>(
    f: &F,
    segment: &GeodesicSegment,
    n_points: usize,
    spacing: Spacing,
    measure: Measure,
) -> Result<RestrictionSamples> {
    if n_points < 2 {
        return Err(Error::Domain(format!("n_points must be ≥ 2, got {n_points}")));
    }
    let (lo, hi) = segment.eval_domain();
    let ys = grid(lo, hi, n_points, spacing);
    let s = f.eval_many(&ys)?;
    Ok(RestrictionSamples {
        segment: *segment,
        values: s.iter().map(|x| x.value).collect(),
        errors: s.iter().map(|x| x.abs_error).collect(),
        ys,
        measure,
    })
}
