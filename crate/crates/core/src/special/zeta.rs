//! Riemann zeta by Euler–Maclaurin summation with a rigorous remainder bound.

use num_complex::Complex64;
use rug::Float;

use super::bernoulli::bernoulli_float;
use super::mpc::{two_pow_neg, MpComplex};
use super::PrecisionPolicy;
use crate::error::{Error, Result};

/// `ζ(s)` rounded to `f64` together with a rigorous absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: Complex64,
    pub abs_error: f64,
}

/// Largest supported `|Im s|`.
pub const ZETA_IM_MAX: f64 = 1e5;

/// Number of directly summed terms for a given `|s|` and target precision.
fn em_length(s_abs: f64, target_bits: u32) -> usize {
    ((s_abs + target_bits as f64) / std::f64::consts::PI).ceil() as usize + 8
}

/// Euler–Maclaurin tail `N^{1-s}/(s-1) + N^{-s}/2 + Σ_k B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}`.
///
/// `n_pow` is `N^{-s}`. Returns the tail and the remainder bound.
fn em_tail(
    s: &MpComplex,
    n: usize,
    n_pow: &MpComplex,
    tol: f64,
) -> Result<(MpComplex, f64)> {
    let wp = s.prec();
    let sc = s.to_c64();
    let nf = n as f64;
    let s_minus_1 = s.add_real(-1.0);
    let mut tail = n_pow.scale(nf).div(&s_minus_1);
    tail = tail.add(&n_pow.scale(0.5));

    let mut p = s.mul(n_pow).div_u(n as u64); // (s)_1 N^{-s-1}
    let mut fact = Float::with_val(wp, 2u32); // (2k)!
    let mut k = 1usize;
    loop {
        let b = bernoulli_float(k, wp) / &fact;
        let term = p.mul_float(&b);
        let denom = sc.re + (2 * k - 1) as f64;
        if denom > 0.0 {
            let bound = term.abs().to_f64() * (sc + (2 * k - 1) as f64).norm() / denom;
            if bound < tol {
                return Ok((tail, bound));
            }
        }
        tail = tail.add(&term);
        if k > 2000 {
            return Err(Error::PrecisionFailure(format!(
                "Euler–Maclaurin remainder for ζ({sc}) did not fall below {tol:e}"
            )));
        }
        // (s)_{2k+1} N^{-s-2k-1} = (s)_{2k-1} N^{-s-2k+1} (s+2k-1)(s+2k) / N².
        let f1 = s.add_real((2 * k - 1) as f64);
        let f2 = s.add_real((2 * k) as f64);
        p = p.mul(&f1).mul(&f2).div_u(n as u64 * n as u64);
        fact *= ((2 * k + 1) * (2 * k + 2)) as u32;
        k += 1;
    }
}

/// `ζ(s)` for an MP argument with absolute error at most the returned bound.
///
/// The working precision is taken from `s`; `target_bits` sets the
/// remainder tolerance `2^{-target_bits}`.
pub fn zeta_mp(s: &MpComplex, target_bits: u32) -> Result<(MpComplex, f64)> {
    let sc = s.to_c64();
    if sc.re == 1.0 && sc.im == 0.0 {
        return Err(Error::Pole("ζ has a pole at s = 1".into()));
    }
    if !sc.re.is_finite() || !sc.im.is_finite() {
        return Err(Error::Domain("non-finite argument to ζ".into()));
    }
    if sc.im.abs() > ZETA_IM_MAX {
        return Err(Error::Domain(format!(
            "|Im s| = {} exceeds the supported range {ZETA_IM_MAX:e}",
            sc.im.abs()
        )));
    }
    let n = em_length(sc.norm(), target_bits);
    let sigma = sc.re;
    // Extra bits for large direct-sum terms when σ < 1 and for the phases t ln n.
    let growth = ((1.0 - sigma).max(0.0) * (n as f64).log2()).ceil() as u32;
    let wp = s.prec().max(target_bits + 16) + growth + (n as f64).log2().ceil() as u32;
    let s = MpComplex { re: Float::with_val(wp, &s.re), im: Float::with_val(wp, &s.im) };
    let neg_s = s.neg();

    let mut sum = MpComplex::from_f64(wp, 1.0, 0.0);
    let mut abs_sum = 1.0f64;
    for k in 2..n {
        let lk = Float::with_val(wp, k).ln();
        sum = sum.add(&neg_s.mul_float(&lk).exp());
        abs_sum += (k as f64).powf(-sigma);
    }
    let ln_n = Float::with_val(wp, n).ln();
    let n_pow = neg_s.mul_float(&ln_n).exp();
    let tol = two_pow_neg(target_bits);
    let (tail, rem) = em_tail(&s, n, &n_pow, tol)?;
    let tail_abs = tail.abs().to_f64();
    let total = sum.add(&tail);
    let rounding = 8.0 * (n as f64 + 64.0) * (abs_sum + tail_abs) * two_pow_neg(wp);
    Ok((total, rem + rounding))
}

/// `ζ(s)` with a rigorous absolute error bound (including the final rounding to `f64`).
pub fn zeta_complex(s: Complex64, prec: &PrecisionPolicy) -> Result<ZetaValue> {
    prec.validate()?;
    let bits = prec.analytic_bits(s.norm());
    let (v, err) = zeta_mp(&MpComplex::from_c64(bits, s), prec.base_bits)?;
    let value = v.to_c64();
    Ok(ZetaValue { value, abs_error: err + value.norm() * f64::EPSILON })
}

/// Repeated evaluation of `ζ(1/2 + it)` with the logarithms and the moduli
/// `n^{-1/2}` of the direct sum cached across calls.
#[derive(Debug)]
pub struct CriticalLineZeta {
    bits: u32,
    target_bits: u32,
    ln_n: Vec<Float>,
    inv_sqrt_n: Vec<Float>,
    abs_prefix: Vec<f64>,
}

impl CriticalLineZeta {
    /// Prepare for `|t| ≤ t_max`.
    pub fn new(t_max: f64, prec: &PrecisionPolicy) -> Result<Self> {
        prec.validate()?;
        if !(t_max.abs() <= ZETA_IM_MAX) {
            return Err(Error::Domain(format!("t_max = {t_max} exceeds {ZETA_IM_MAX:e}")));
        }
        let target_bits = prec.base_bits;
        let n_max = em_length(t_max.abs() + 0.5, target_bits);
        let bits = prec.analytic_bits(t_max.abs() + 0.5)
            + ((n_max as f64).log2() * 1.5).ceil() as u32;
        let mut ln_n = Vec::with_capacity(n_max + 1);
        let mut inv_sqrt_n = Vec::with_capacity(n_max + 1);
        let mut abs_prefix = Vec::with_capacity(n_max + 1);
        let mut acc = 0.0;
        for k in 0..=n_max {
            if k == 0 {
                ln_n.push(Float::new(bits));
                inv_sqrt_n.push(Float::new(bits));
                abs_prefix.push(0.0);
                continue;
            }
            ln_n.push(Float::with_val(bits, k).ln());
            inv_sqrt_n.push(Float::with_val(bits, k).sqrt().recip());
            acc += (k as f64).powf(-0.5);
            abs_prefix.push(acc);
        }
        Ok(CriticalLineZeta { bits, target_bits, ln_n, inv_sqrt_n, abs_prefix })
    }

    /// `ζ(1/2 + it)` with an absolute error bound.
    pub fn eval(&self, t: f64) -> Result<ZetaValue> {
        let n = em_length(Complex64::new(0.5, t).norm(), self.target_bits);
        if n >= self.ln_n.len() {
            return Err(Error::Domain(format!("t = {t} exceeds the prepared range")));
        }
        let wp = self.bits;
        let mut re = Float::with_val(wp, 1);
        let mut im = Float::new(wp);
        let mut ang = Float::new(wp);
        let mut cosv = Float::new(wp);
        for k in 2..n {
            ang.assign_mul(&self.ln_n[k], t);
            ang.sin_cos_mut(&mut cosv);
            // n^{-1/2 - it} = n^{-1/2} (cos(t ln n) - i sin(t ln n)).
            cosv *= &self.inv_sqrt_n[k];
            ang *= &self.inv_sqrt_n[k];
            re += &cosv;
            im -= &ang;
        }
        let s = MpComplex::from_f64(wp, 0.5, t);
        ang.assign_mul(&self.ln_n[n], t);
        ang.sin_cos_mut(&mut cosv);
        let n_pow = MpComplex {
            re: Float::with_val(wp, &cosv * &self.inv_sqrt_n[n]),
            im: Float::with_val(wp, -&ang) * &self.inv_sqrt_n[n],
        };
        let (tail, rem) = em_tail(&s, n, &n_pow, two_pow_neg(self.target_bits))?;
        let total = MpComplex { re, im }.add(&tail);
        let rounding =
            8.0 * (n as f64 + 64.0) * (self.abs_prefix[n] + tail.abs().to_f64()) * two_pow_neg(wp);
        let value = total.to_c64();
        Ok(ZetaValue { value, abs_error: rem + rounding + value.norm() * f64::EPSILON })
    }
}

trait AssignMul {
    fn assign_mul(&mut self, a: &Float, b: f64);
}

impl AssignMul for Float {
    fn assign_mul(&mut self, a: &Float, b: f64) {
        use rug::Assign;
        self.assign(a * b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn even_integers() {
        let pi = std::f64::consts::PI;
        let z2 = zeta_complex(Complex64::new(2.0, 0.0), &pol()).unwrap();
        assert!((z2.value.re - pi * pi / 6.0).abs() < 1e-15);
        let z4 = zeta_complex(Complex64::new(4.0, 0.0), &pol()).unwrap();
        assert!((z4.value.re - pi.powi(4) / 90.0).abs() < 1e-15);
    }

    #[test]
    fn half_and_negative() {
        let z = zeta_complex(Complex64::new(0.5, 0.0), &pol()).unwrap();
        assert!((z.value.re + 1.460354508809586812889).abs() < 1e-15);
        // ζ(-1) = -1/12, ζ(-3) = 1/120, ζ(0) = -1/2.
        let z = zeta_complex(Complex64::new(-1.0, 0.0), &pol()).unwrap();
        assert!((z.value.re + 1.0 / 12.0).abs() < 1e-15);
        let z = zeta_complex(Complex64::new(-3.0, 0.0), &pol()).unwrap();
        assert!((z.value.re - 1.0 / 120.0).abs() < 1e-15);
        let z = zeta_complex(Complex64::new(0.0, 0.0), &pol()).unwrap();
        assert!((z.value.re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn off_axis_value() {
        let z = zeta_complex(Complex64::new(0.3, 20.0), &pol()).unwrap();
        let expect = Complex64::new(0.2689944157539869102, -1.288423418048303805361);
        assert!((z.value - expect).norm() < 1e-14);
        assert!(z.abs_error < 1e-15);
    }

    #[test]
    fn first_zero_is_small() {
        let z = zeta_complex(Complex64::new(0.5, 14.1347), &pol()).unwrap();
        assert!((z.value.norm() - 1.994138799337e-5).abs() < 1e-15);
    }

    #[test]
    fn pole_at_one() {
        assert!(matches!(
            zeta_complex(Complex64::new(1.0, 0.0), &pol()),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn cached_scanner_matches_direct() {
        let scan = CriticalLineZeta::new(300.0, &pol()).unwrap();
        for t in [0.0, 1.0, 14.1347, 99.5, 287.0] {
            let a = scan.eval(t).unwrap();
            let b = zeta_complex(Complex64::new(0.5, t), &pol()).unwrap();
            assert!((a.value - b.value).norm() < 1e-14, "t = {t}");
        }
        assert!(scan.eval(5000.0).is_err());
    }
}
