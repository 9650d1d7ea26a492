//! A minimal complex number over MPFR floats.

use num_complex::Complex64;
use rug::float::Constant;
use rug::{Assign, Float};

/// Complex number with `rug::Float` parts, both at the same precision.
#[derive(Debug, Clone, PartialEq)]
pub struct MpComplex {
    pub re: Float,
    pub im: Float,
}

impl MpComplex {
    pub fn zero(prec: u32) -> Self {
        MpComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        MpComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_c64(prec: u32, z: Complex64) -> Self {
        Self::from_f64(prec, z.re, z.im)
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        MpComplex { re, im }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(&self, o: &MpComplex) -> MpComplex {
        let p = self.prec();
        MpComplex {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &MpComplex) -> MpComplex {
        let p = self.prec();
        MpComplex {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn add_real(&self, r: f64) -> MpComplex {
        MpComplex { re: Float::with_val(self.prec(), &self.re + r), im: self.im.clone() }
    }

    pub fn mul(&self, o: &MpComplex) -> MpComplex {
        let p = self.prec();
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        MpComplex { re: ac - bd, im: ad + bc }
    }

    pub fn mul_float(&self, r: &Float) -> MpComplex {
        let p = self.prec();
        MpComplex { re: Float::with_val(p, &self.re * r), im: Float::with_val(p, &self.im * r) }
    }

    pub fn scale(&self, r: f64) -> MpComplex {
        let p = self.prec();
        MpComplex { re: Float::with_val(p, &self.re * r), im: Float::with_val(p, &self.im * r) }
    }

    /// Exact-argument division by a positive integer.
    pub fn div_u(&self, d: u64) -> MpComplex {
        let p = self.prec();
        let d = Float::with_val(p.max(64), d);
        MpComplex { re: Float::with_val(p, &self.re / &d), im: Float::with_val(p, &self.im / &d) }
    }

    pub fn neg(&self) -> MpComplex {
        MpComplex { re: Float::with_val(self.prec(), -&self.re), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn conj(&self) -> MpComplex {
        MpComplex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let a = Float::with_val(p, self.re.square_ref());
        let b = Float::with_val(p, self.im.square_ref());
        a + b
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn recip(&self) -> MpComplex {
        let n = self.norm_sqr();
        let p = self.prec();
        MpComplex {
            re: Float::with_val(p, &self.re / &n),
            im: Float::with_val(p, -&self.im) / &n,
        }
    }

    pub fn div(&self, o: &MpComplex) -> MpComplex {
        self.mul(&o.recip())
    }

    /// `e^z`.
    pub fn exp(&self) -> MpComplex {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        MpComplex { re: Float::with_val(p, &m * &c), im: m * s }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> MpComplex {
        let p = self.prec();
        let r = Float::with_val(p, self.norm_sqr().ln()) / 2u32;
        MpComplex { re: r, im: self.arg() }
    }

    /// `e^z - 1`, accurate for small `|z|`.
    pub fn exp_m1(&self) -> MpComplex {
        let p = self.prec();
        // e^{a+ib} - 1 = (e^a - 1) cos b + (cos b - 1) + i e^a sin b,
        // with cos b - 1 = -2 sin²(b/2).
        let em1 = Float::with_val(p, self.re.exp_m1_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        let half = Float::with_val(p, &self.im / 2u32);
        let sh = half.sin();
        let cm1 = Float::with_val(p, sh.square_ref()) * -2i32;
        let ea = Float::with_val(p, &em1 + 1u32);
        MpComplex { re: Float::with_val(p, &em1 * &c) + cm1, im: ea * s }
    }

    /// `x^z` for real `x > 0`.
    pub fn real_pow(x: &Float, z: &MpComplex) -> MpComplex {
        let lx = Float::with_val(z.prec(), x.ln_ref());
        z.mul_float(&lx).exp()
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut n: u32) -> MpComplex {
        let mut base = self.clone();
        let mut acc = MpComplex::from_f64(self.prec(), 1.0, 0.0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn assign(&mut self, o: &MpComplex) {
        self.re.assign(&o.re);
        self.im.assign(&o.im);
    }
}

/// π at precision `prec`.
pub(crate) fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `2^{-bits}` as an `f64` (saturating at the smallest positive normal).
pub(crate) fn two_pow_neg(bits: u32) -> f64 {
    2f64.powi(-(bits.min(1000) as i32))
}

/// Natural logarithm of a positive float as `f64`, without overflow.
pub(crate) fn ln_f64(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    m.abs().ln() + e as f64 * std::f64::consts::LN_2
}
