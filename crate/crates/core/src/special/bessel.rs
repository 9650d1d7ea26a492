//! Scaled Bessel functions `K̂_{iτ}(x) = e^{πτ/2} K_{iτ}(x)` and `K_ν(x)`.
//!
//! Both come from the integral `∫_0^∞ e^{-x cosh u} g(u) du` with
//! `g(u) = cos(τu)` or `cosh(νu)`. Its integrand already decays
//! double-exponentially, so the plain trapezoid rule in `u` converges
//! geometrically, at a rate set by the width of the analyticity strip. The
//! error has three rigorously bounded parts:
//!
//! * discretisation, from the strip estimate `2M / (e^{2πd/h} - 1)`;
//! * truncation of the node set where `e^{-x cosh u}` is negligible;
//! * MPFR rounding, proportional to the sum of absolute values of the terms.
//!
//! For imaginary order the terms are O(1) while the result is of size
//! `e^{-πτ/2}`, so the sum runs at `base + ⌈πτ/(2 ln 2)⌉` bits when the
//! policy asks for spectral scaling.
//!
//! A [`BesselKernel`] precomputes the nodes once for all `x ≥ x_min`, and
//! [`BesselKernel::ladder`] evaluates at `x = n x₁` for `n = 1..N` using only
//! the `exp` calls needed for `x₁`: `e^{-n x₁ cosh u} = (e^{-x₁ cosh u})^n`.

use rug::{Assign, Float};

use super::mpc::two_pow_neg;
use super::PrecisionPolicy;
use crate::error::{Error, Result};

const PI: f64 = std::f64::consts::PI;

/// Distance of the strip edge from `±π/2` used for imaginary order.
const STRIP_DELTA: f64 = 0.25;
/// Strip half-width used for real order.
const STRIP_REAL: f64 = PI / 4.0;

/// Order of the Bessel function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BesselOrder {
    /// `K_{iτ}`, returned scaled by `e^{πτ/2}`; `τ ≥ 0`.
    Imaginary(f64),
    /// `K_ν`, unscaled; `ν ≥ 0`.
    Real(f64),
}

/// A scaled Bessel value in full working precision.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledBesselValue {
    pub tau: f64,
    pub x: f64,
    /// `e^{πτ/2} K_{iτ}(x)`.
    pub value: Float,
    pub abs_error: f64,
}

/// A kernel value rounded to `f64`; the bound includes the final rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: f64,
    pub abs_error: f64,
}

/// Upper bound for `|K̂_{iτ}(x)|`, uniform in the sense needed for tail sums:
/// it is nonincreasing in `x` and `K̂(2x) ≤ K̂(x)/√2`.
///
/// Shifting the contour to `Im u = α` gives
/// `|K_{iτ}(x)| ≤ e^{-τα} K_0(x cos α) ≤ e^{-τα} √(π/(2x cos α)) e^{-x cos α}`;
/// the bound is minimised over `α ∈ [0, π/2)`.
pub fn bessel_k_scaled_bound(tau: f64, x: f64) -> f64 {
    ln_bessel_k_scaled_bound(tau, x).exp()
}

pub(crate) fn ln_bessel_k_scaled_bound(tau: f64, x: f64) -> f64 {
    ln_bessel_k_scaled_bound_at(tau, x).0
}

/// `(ln bound, α)` where `α` is the contour shift attaining the bound.
pub(crate) fn ln_bessel_k_scaled_bound_at(tau: f64, x: f64) -> (f64, f64) {
    let tau = tau.abs();
    let g = |a: f64| tau * (PI / 2.0 - a) + 0.5 * (PI / (2.0 * x * a.cos())).ln() - x * a.cos();
    // g is convex; locate the zero of g'(α) = -τ + tan(α)/2 + x sin α.
    let dg = |a: f64| -tau + 0.5 * a.tan() + x * a.sin();
    let (mut lo, mut hi) = (0.0f64, PI / 2.0 - 1e-12);
    if dg(lo) >= 0.0 {
        return (g(0.0), 0.0);
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if dg(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (g(lo), lo)
}

/// Upper bound `K_ν(x) ≤ √(π/(2x)) e^{-x + ν²/(2x)}`, from `cosh u ≥ 1 + u²/2`.
pub fn bessel_k_real_bound(nu: f64, x: f64) -> f64 {
    ln_bessel_k_real_bound(nu, x).exp()
}

pub(crate) fn ln_bessel_k_real_bound(nu: f64, x: f64) -> f64 {
    0.5 * (PI / (2.0 * x)).ln() - x + nu * nu / (2.0 * x)
}

/// Precomputed trapezoid nodes valid for all `x ≥ x_min`.
#[derive(Debug, Clone)]
pub struct BesselKernel {
    order: BesselOrder,
    base_bits: u32,
    work_bits: u32,
    ln_scale: f64,
    scale: Float,
    x_min: f64,
    h: f64,
    ln_target: f64,
    cosh_u: Vec<Float>,
    weights: Vec<Float>,
    cosh_f: Vec<f64>,
    weights_f: Vec<f64>,
}

impl BesselKernel {
    /// Build nodes for `x ≥ x_min`.
    pub fn new(order: BesselOrder, x_min: f64, prec: &PrecisionPolicy) -> Result<Self> {
        prec.validate()?;
        if !(x_min > 0.0 && x_min.is_finite()) {
            return Err(Error::Domain(format!("Bessel argument must be positive, got {x_min}")));
        }
        let (ln_scale, work_bits) = match order {
            BesselOrder::Imaginary(t) => {
                if !(t >= 0.0 && t.is_finite()) {
                    return Err(Error::Domain(format!("τ must be finite and ≥ 0, got {t}")));
                }
                (PI * t / 2.0, prec.working_bits(t))
            }
            BesselOrder::Real(nu) => {
                if !(nu >= 0.0 && nu.is_finite()) {
                    return Err(Error::Domain(format!("ν must be finite and ≥ 0, got {nu}")));
                }
                (0.0, prec.base_bits + super::GUARD_BITS)
            }
        };
        // Absolute target for each error component, well inside 2^{-base/2}.
        let ln_target = -(prec.base_bits as f64 + 4.0) * std::f64::consts::LN_2;

        let mut k = BesselKernel {
            order,
            base_bits: prec.base_bits,
            work_bits,
            ln_scale,
            scale: match order {
                BesselOrder::Imaginary(t) => (super::mpc::pi(work_bits) * t / 2u32).exp(),
                BesselOrder::Real(_) => Float::with_val(work_bits, 1),
            },
            x_min,
            h: 0.0,
            ln_target,
            cosh_u: Vec::new(),
            weights: Vec::new(),
            cosh_f: Vec::new(),
            weights_f: Vec::new(),
        };
        // Step from the strip bound: disc(x_min) ≤ target.
        let two_pi_d = 2.0 * PI * k.strip_width();
        let ln_m = k.ln_strip_mass(x_min);
        let denom = (ln_m - ln_target + 1.0).max(1.0);
        k.h = two_pi_d / denom;

        // Nodes out to where the tail for x_min is negligible.
        let n_nodes = k.cutoff_search(x_min, usize::MAX);
        let h_mp = Float::with_val(work_bits, k.h);
        for i in 0..n_nodes {
            let u = Float::with_val(work_bits, &h_mp * i as u32);
            let c = Float::with_val(work_bits, u.cosh_ref());
            let w = if i == 0 { Float::with_val(work_bits, &h_mp / 2u32) } else { h_mp.clone() };
            let g = match order {
                BesselOrder::Imaginary(t) => Float::with_val(work_bits, &u * t).cos(),
                BesselOrder::Real(nu) => Float::with_val(work_bits, &u * nu).cosh(),
            };
            let wg = w * g;
            k.cosh_f.push(c.to_f64());
            k.weights_f.push(wg.to_f64());
            k.cosh_u.push(c);
            k.weights.push(wg);
        }
        Ok(k)
    }

    pub fn order(&self) -> BesselOrder {
        self.order
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn work_bits(&self) -> u32 {
        self.work_bits
    }

    pub fn node_count(&self) -> usize {
        self.cosh_u.len()
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    fn strip_width(&self) -> f64 {
        match self.order {
            BesselOrder::Imaginary(_) => PI / 2.0 - STRIP_DELTA,
            BesselOrder::Real(_) => STRIP_REAL,
        }
    }

    /// Log of the (scaled) strip constant `M(x)` in the trapezoid error bound
    /// `2M / (e^{2πd/h} - 1)`, over the full line.
    fn ln_strip_mass(&self, x: f64) -> f64 {
        match self.order {
            BesselOrder::Imaginary(t) => {
                // |cos(τ(u+iv))| ≤ e^{τd}; Re cosh(u+iv) ≥ sin δ cosh u;
                // ∫_R e^{-a cosh u} du = 2K_0(a) ≤ 2√(π/(2a)) e^{-a}.
                let a = x * STRIP_DELTA.sin();
                self.ln_scale + t * self.strip_width() + (2.0f64).ln() + 0.5 * (PI / (2.0 * a)).ln()
                    - a
            }
            BesselOrder::Real(nu) => {
                let a = x * STRIP_REAL.cos();
                (2.0f64).ln() + ln_bessel_k_real_bound(nu, a)
            }
        }
    }

    fn ln_disc_bound(&self, x: f64) -> f64 {
        let r = 2.0 * PI * self.strip_width() / self.h;
        // 2M/(e^r - 1), and the half-line sum is half the full-line sum.
        self.ln_strip_mass(x) - (r.exp_m1()).ln()
    }

    /// Log bound on the scaled contribution of nodes `i ≥ k` at argument `x`.
    fn ln_tail(&self, x: f64, k: usize) -> f64 {
        let u = k as f64 * self.h;
        let (sh, ch) = (u.sinh(), u.cosh());
        match self.order {
            BesselOrder::Imaginary(_) => {
                if k == 0 {
                    return f64::INFINITY;
                }
                self.ln_scale - x * ch + (self.h + 1.0 / (x * sh)).ln()
            }
            BesselOrder::Real(nu) => {
                // Past the peak (x sinh u ≥ 2ν) the integrand e^{-x cosh u + νu} decays
                // at least like e^{-x sinh(U)(u - U)/2}.
                if k == 0 || x * sh < 2.0 * nu.max(0.5) {
                    return f64::INFINITY;
                }
                -x * ch + nu * u + (self.h + 2.0 / (x * sh)).ln()
            }
        }
    }

    /// Number of nodes needed at argument `x` (searching below `limit`).
    fn cutoff_search(&self, x: f64, limit: usize) -> usize {
        let ln_goal = self.ln_target - (4.0f64).ln();
        let mut k = 1usize;
        while k < limit && self.ln_tail(x, k) > ln_goal {
            k += 1;
        }
        k.min(limit)
    }

    /// Scaled value at a single `x ≥ x_min`, in working precision.
    pub fn eval_mp(&self, x: f64) -> Result<(Float, f64)> {
        if !(x >= self.x_min) {
            return Err(Error::Domain(format!(
                "x = {x} is below the kernel's x_min = {}",
                self.x_min
            )));
        }
        let kc = self.cutoff_search(x, self.cosh_u.len());
        let wp = self.work_bits;
        let mut sum = Float::new(wp);
        let mut e = Float::new(wp);
        for i in 0..kc {
            e.assign(&self.cosh_u[i] * -x);
            e.exp_mut();
            e *= &self.weights[i];
            sum += &e;
        }
        sum *= &self.scale;
        let err = self.error_bound(x, kc, 1);
        Ok((sum, err))
    }

    fn abs_sum(&self, x: f64, kc: usize) -> f64 {
        let mut s = 0.0;
        for i in 0..kc {
            s += self.weights_f[i].abs() * (-x * self.cosh_f[i]).exp();
        }
        s * 1.01
    }

    /// Total scaled error bound at `x` with `kc` nodes and `n` repeated products.
    fn error_bound(&self, x: f64, kc: usize, n: usize) -> f64 {
        let disc = self.ln_disc_bound(x).exp();
        let tail = self.ln_tail(x, kc).exp();
        let l = if kc > 0 { x * self.cosh_f[kc - 1] } else { 0.0 };
        let round = 4.0
            * (n as f64 + l + kc as f64 + 16.0)
            * self.abs_sum(x, kc)
            * (self.ln_scale.exp())
            * two_pow_neg(self.work_bits);
        disc + tail + round
    }

    fn check(&self, value: f64, err: f64, x: f64) -> Result<()> {
        let allowed = two_pow_neg(self.base_bits / 2) * value.abs().max(1.0);
        if !(err <= allowed) {
            return Err(Error::PrecisionFailure(format!(
                "Bessel error bound {err:e} at x = {x} exceeds {allowed:e}"
            )));
        }
        Ok(())
    }

    /// Scaled value at `x` rounded to `f64`.
    pub fn eval(&self, x: f64) -> Result<KernelValue> {
        let (v, err) = self.eval_mp(x)?;
        let value = v.to_f64();
        self.check(value, err, x)?;
        Ok(KernelValue { value, abs_error: err + value.abs() * f64::EPSILON })
    }

    /// Scaled values at `x = n x₁` for `n = 1..=n_max` (index `n - 1`).
    pub fn ladder(&self, x1: f64, n_max: usize) -> Result<Vec<KernelValue>> {
        if !(x1 >= self.x_min) {
            return Err(Error::Domain(format!(
                "x₁ = {x1} is below the kernel's x_min = {}",
                self.x_min
            )));
        }
        let wp = self.work_bits;
        let mut kc = self.cutoff_search(x1, self.cosh_u.len());
        let mut base: Vec<Float> = Vec::with_capacity(kc);
        for i in 0..kc {
            let mut e = Float::with_val(wp, &self.cosh_u[i] * -x1);
            e.exp_mut();
            base.push(e);
        }
        let mut pow = base.clone();
        let mut out = Vec::with_capacity(n_max);
        let mut sum = Float::new(wp);
        let mut tmp = Float::new(wp);
        for n in 1..=n_max {
            let x = n as f64 * x1;
            kc = self.cutoff_search_from(x, kc);
            sum.assign(0);
            for (w, pw) in self.weights[..kc].iter().zip(&pow[..kc]) {
                tmp.assign(w * pw);
                sum += &tmp;
            }
            sum *= &self.scale;
            let value = sum.to_f64();
            let err = self.error_bound(x, kc, n);
            self.check(value, err, x)?;
            out.push(KernelValue { value, abs_error: err + value.abs() * f64::EPSILON });
            if n < n_max {
                for i in 0..kc {
                    pow[i] *= &base[i];
                }
            }
        }
        Ok(out)
    }

    /// Cutoff at `x`, knowing it does not exceed `upper` (cutoffs shrink as `x` grows).
    fn cutoff_search_from(&self, x: f64, upper: usize) -> usize {
        let ln_goal = self.ln_target - (4.0f64).ln();
        let mut k = upper;
        while k > 1 && self.ln_tail(x, k - 1) <= ln_goal {
            k -= 1;
        }
        k
    }
}

/// `K̂_{iτ}(x) = e^{πτ/2} K_{iτ}(x)` with a rigorous error bound.
///
/// The absolute error is at most `2^{-base_bits/2} max(1, |value|)`;
/// otherwise [`Error::PrecisionFailure`] is returned.
pub fn bessel_k_scaled(tau: f64, x: f64, prec: &PrecisionPolicy) -> Result<ScaledBesselValue> {
    let kernel = BesselKernel::new(BesselOrder::Imaginary(tau), x, prec)?;
    let (value, abs_error) = kernel.eval_mp(x)?;
    kernel.check(value.to_f64(), abs_error, x)?;
    Ok(ScaledBesselValue { tau, x, value, abs_error })
}
