//! Complex log-gamma by Stirling's series after an upward shift.

use num_complex::Complex64;
use rug::Float;

use super::bernoulli::bernoulli_float;
use super::mpc::{ln_f64, pi, MpComplex};
use super::PrecisionPolicy;
use crate::error::{Error, Result};

fn check_pole(re: f64, im: f64) -> Result<()> {
    if im == 0.0 && re <= 0.0 && re == re.round() {
        return Err(Error::Pole(format!("Γ has a pole at s = {re}")));
    }
    if !re.is_finite() || !im.is_finite() {
        return Err(Error::Domain("non-finite argument to Γ".into()));
    }
    Ok(())
}

/// `ln Γ(z)` with absolute error below `2^{-target_bits}` in the real part,
/// and in the imaginary part modulo `2π`.
///
/// The result carries a working precision that exceeds `target_bits` by the
/// bits needed to represent `|ln Γ|`, so `exp` of it has relative error
/// about `2^{-target_bits}`.
pub fn ln_gamma_mp(z: &MpComplex, target_bits: u32) -> Result<MpComplex> {
    let zc = z.to_c64();
    check_pole(zc.re, zc.im)?;
    let r_min = 0.3 * target_bits as f64 + 10.0;

    // Shift count M so that w = z + M has Re w >= 1 and |w| >= r_min.
    let mut m: u32 = 0;
    loop {
        let w = Complex64::new(zc.re + m as f64, zc.im);
        if w.re >= 1.0 && w.norm() >= r_min {
            break;
        }
        m += 1;
    }
    let wabs = Complex64::new(zc.re + m as f64, zc.im).norm();
    let wp = target_bits + ((wabs + 2.0) * (wabs + 2.0).ln()).log2().ceil() as u32 + 16;

    let zw = MpComplex {
        re: Float::with_val(wp, &z.re),
        im: Float::with_val(wp, &z.im),
    };
    let w = zw.add_real(m as f64);

    // (w - 1/2) ln w - w + ln(2π)/2
    let lnw = w.ln();
    let mut acc = w.add_real(-0.5).mul(&lnw).sub(&w);
    let ln2pi = Float::with_val(wp, pi(wp) * 2u32).ln() / 2u32;
    acc.re += &ln2pi;

    // Stirling correction terms B_{2k} / (2k (2k-1) w^{2k-1}).
    let winv = w.recip();
    let winv2 = winv.mul(&winv);
    let mut wpow = winv.clone();
    let theta = zc.im.atan2(zc.re + m as f64);
    let ln_sec = -(theta / 2.0).cos().ln();
    let ln_w = wabs.ln();
    let tol_ln = -(target_bits as f64 + 4.0) * std::f64::consts::LN_2;
    let mut k: usize = 1;
    loop {
        let b = bernoulli_float(k, wp);
        let denom = (2 * k * (2 * k - 1)) as u32;
        let coeff = b / denom;
        let term = wpow.mul_float(&coeff);
        acc = acc.add(&term);
        // Remainder after k terms is bounded by the next term times sec^{2k+2}(θ/2).
        let next = bernoulli_float(k + 1, 64);
        let ln_next = ln_f64(&next.abs())
            - (((2 * k + 2) * (2 * k + 1)) as f64).ln()
            - (2 * k + 1) as f64 * ln_w
            + (2 * k + 2) as f64 * ln_sec;
        if ln_next < tol_ln {
            break;
        }
        k += 1;
        if k > 4 * target_bits as usize {
            return Err(Error::PrecisionFailure(format!(
                "Stirling series for ln Γ({zc}) did not reach 2^-{target_bits}"
            )));
        }
        wpow = wpow.mul(&winv2);
    }

    if m > 0 {
        let mut prod = zw.clone();
        for j in 1..m {
            prod = prod.mul(&zw.add_real(j as f64));
        }
        acc = acc.sub(&prod.ln());
    }
    Ok(acc)
}

/// `ln Γ(s)` as an MP complex with the policy's base precision.
pub fn ln_gamma_complex(s: Complex64, prec: &PrecisionPolicy) -> Result<MpComplex> {
    prec.validate()?;
    let bits = prec.analytic_bits(s.norm());
    ln_gamma_mp(&MpComplex::from_c64(bits, s), prec.base_bits + 8)
}

/// `Γ(s)` with relative error at most `2^{-(base_bits - 8)}`.
///
/// Poles at non-positive integers are reported as [`Error::Pole`].
pub fn gamma_complex(s: Complex64, prec: &PrecisionPolicy) -> Result<MpComplex> {
    Ok(ln_gamma_complex(s, prec)?.exp())
}
