//! Independent reference computations used only by tests.
//!
//! Nothing here calls into the library: each oracle uses a different
//! algorithm from the production code path.
#![allow(dead_code)]

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// `K₀(x)` from the ascending series
/// `K₀(x) = -(ln(x/2) + γ) I₀(x) + Σ_{k≥1} (x²/4)^k / (k!)² H_k`.
pub fn k0_series(x: f64, bits: u32) -> Float {
    let xf = Float::with_val(bits, x);
    let q = Float::with_val(bits, &xf * &xf) / 4u32;
    let mut term = Float::with_val(bits, 1);
    let mut i0 = Float::with_val(bits, 1);
    let mut h = Float::with_val(bits, 0);
    let mut s = Float::with_val(bits, 0);
    let eps = Float::with_val(bits, Float::i_exp(1, -(bits as i32)));
    for k in 1..10_000u32 {
        term *= &q;
        term /= k * k;
        h += Float::with_val(bits, 1) / k;
        i0 += &term;
        let add = Float::with_val(bits, &term * &h);
        s += &add;
        if term < eps {
            break;
        }
    }
    let lg = Float::with_val(bits, &xf / 2u32).ln() + Float::with_val(bits, Constant::Euler);
    s - lg * i0
}

/// `K_{iτ}(x) = ∫_0^∞ e^{-x cosh u} cos(τu) du` by tanh-sinh quadrature on a
/// truncated range, refined level by level until two levels agree.
pub fn bessel_ki_tanh_sinh(tau: f64, x: f64, bits: u32) -> Float {
    let p = bits;
    // e^{-x cosh U} < 2^{-bits-40} past U.
    let target = (bits + 40) as f64 * std::f64::consts::LN_2 + (x.max(1.0)).ln();
    let u_max = (target / x).acosh().max(1.0) + 1.0;
    let half = Float::with_val(p, u_max) / 2u32;
    let f = |u: &Float| -> Float {
        let c = Float::with_val(p, u.cosh_ref());
        let e = Float::with_val(p, -(c * x)).exp();
        let arg = Float::with_val(p, u * tau);
        e * arg.cos()
    };
    let pi2 = Float::with_val(p, Constant::Pi) / 2u32;
    let mut prev: Option<Float> = None;
    let mut h = Float::with_val(p, 0.5f64);
    for _level in 0..14 {
        let mut sum = Float::with_val(p, 0);
        let kmax = (8.0 / h.to_f64()).ceil() as i64;
        for k in -kmax..=kmax {
            let t = Float::with_val(p, &h * k);
            let sh = Float::with_val(p, t.sinh_ref());
            let ch = Float::with_val(p, t.cosh_ref());
            let arg = Float::with_val(p, &pi2 * &sh);
            let xk = Float::with_val(p, arg.tanh_ref());
            let c2 = Float::with_val(p, arg.cosh_ref()).pow(2u32);
            let w = Float::with_val(p, &pi2 * &ch) / c2;
            if w.is_zero() {
                continue;
            }
            // Map [-1, 1] to [0, U].
            let u = Float::with_val(p, &xk + 1u32) * &half;
            sum += f(&u) * w;
        }
        let val = sum * &h * &half;
        if let Some(pv) = &prev {
            let d = Float::with_val(p, &val - pv).abs();
            let scale = Float::with_val(p, val.abs_ref()) + Float::with_val(p, Float::i_exp(1, -200));
            if d < scale * Float::with_val(p, Float::i_exp(1, -(bits as i32) / 2)) {
                return val;
            }
        }
        prev = Some(val);
        h /= 2u32;
    }
    prev.unwrap()
}

/// `E(z, s) = (1/2) Σ_{gcd(c,d)=1} y^s / |cz + d|^{2s}` over `|c|, |d| ≤ r`.
pub fn lattice_sum(x: f64, y: f64, s: f64, r: i64) -> f64 {
    fn gcd(mut a: i64, mut b: i64) -> i64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    }
    let ys = y.powf(s);
    // (c, d) and (-c, -d) give the same term: count c > 0 once, plus c = 0, d = ±1.
    let mut total = ys;
    for c in 1..=r {
        let mut row = 0.0;
        for d in -r..=r {
            if gcd(c, d) != 1 {
                continue;
            }
            let re = c as f64 * x + d as f64;
            let im = c as f64 * y;
            row += (re * re + im * im).powf(-s);
        }
        total += ys * row;
    }
    total
}

/// A real trigonometric polynomial `Σ a_k cos(ω_k y + φ_k)`.
#[derive(Debug, Clone)]
pub struct TrigPoly {
    pub terms: Vec<(f64, f64, f64)>,
}

impl TrigPoly {
    pub fn eval(&self, y: f64) -> f64 {
        self.terms.iter().map(|&(a, w, p)| a * (w * y + p).cos()).sum()
    }

    pub fn deriv(&self, y: f64) -> f64 {
        self.terms.iter().map(|&(a, w, p)| -a * w * (w * y + p).sin()).sum()
    }

    pub fn max_freq(&self) -> f64 {
        self.terms.iter().map(|t| t.1.abs()).fold(0.0, f64::max)
    }

    fn lip1(&self) -> f64 {
        self.terms.iter().map(|&(a, w, _)| a.abs() * w.abs()).sum()
    }

    fn lip2(&self) -> f64 {
        self.terms.iter().map(|&(a, w, _)| a.abs() * w * w).sum()
    }
}

/// Exact number of sign changes of `p` on `[a, b]` by root isolation:
/// cells are split until each is provably zero-free (`|p| > L₁·h` at an end)
/// or provably monotone (`|p'| > L₂·h` at an end). Returns `None` if a cell
/// cannot be resolved (a near-tangential zero).
pub fn exact_sign_changes(p: &TrigPoly, a: f64, b: f64) -> Option<usize> {
    let (l1, l2) = (p.lip1(), p.lip2());
    #[allow(clippy::too_many_arguments)]
    fn rec(p: &TrigPoly, l: f64, r: f64, fl: f64, fr: f64, l1: f64, l2: f64, depth: u32) -> Option<usize> {
        let h = r - l;
        if fl.abs() > l1 * h || fr.abs() > l1 * h {
            return Some(0);
        }
        if p.deriv(l).abs() > l2 * h {
            return Some(usize::from(fl.signum() != fr.signum() && fl != 0.0 && fr != 0.0));
        }
        if depth > 60 {
            return None;
        }
        let m = 0.5 * (l + r);
        let fm = p.eval(m);
        Some(rec(p, l, m, fl, fm, l1, l2, depth + 1)? + rec(p, m, r, fm, fr, l1, l2, depth + 1)?)
    }
    let n = (p.max_freq() * (b - a)).ceil().max(1.0) as usize * 8;
    let mut total = 0;
    let mut prev_y = a;
    let mut prev_f = p.eval(a);
    for i in 1..=n {
        let y = a + (b - a) * i as f64 / n as f64;
        let fy = p.eval(y);
        total += rec(p, prev_y, y, prev_f, fy, l1, l2, 0)?;
        prev_y = y;
        prev_f = fy;
    }
    Some(total)
}

/// `λ(1..=n_max)` of a Hecke-consistent sequence generated from `λ(p)` via
/// `λ(p^{k+1}) = λ(p)λ(p^k) - λ(p^{k-1})` and multiplicativity.
pub fn hecke_sequence(n_max: usize, lp: impl Fn(usize) -> f64) -> Vec<f64> {
    let mut spf = vec![0usize; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n_max {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    let mut lam = vec![0.0; n_max + 1];
    lam[1] = 1.0;
    for n in 2..=n_max {
        let p = spf[n];
        let mut m = n;
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        let (mut prev, mut cur) = (1.0, lp(p));
        for _ in 1..k {
            let next = lp(p) * cur - prev;
            prev = cur;
            cur = next;
        }
        lam[n] = cur * lam[m];
    }
    lam[1..].to_vec()
}

/// Riemann–Siegel theta `ϑ(t)` from its asymptotic series (t ≥ 10).
pub fn hardy_theta(t: f64) -> f64 {
    use std::f64::consts::PI;
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
}

/// `d(n)` for `n ≤ n_max` by sieve.
pub fn divisor_counts(n_max: usize) -> Vec<u32> {
    let mut d = vec![0u32; n_max + 1];
    for i in 1..=n_max {
        let mut j = i;
        while j <= n_max {
            d[j] += 1;
            j += i;
        }
    }
    d
}

/// `η_{it}(n) = Σ_{ab=n} (a/b)^{it}` by a double loop over factor pairs.
pub fn eta_pairs(t: f64, n: u64) -> f64 {
    (1..=n).filter(|a| n % a == 0).map(|a| (t * ((a * a) as f64 / n as f64).ln()).cos()).sum()
}
