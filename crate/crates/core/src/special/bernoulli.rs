//! Exact Bernoulli numbers via tangent numbers, cached process-wide.

use std::sync::{OnceLock, RwLock};

use rug::{Float, Integer, Rational};

static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

/// Tangent numbers `T_1..=T_n` (T_1 = 1, T_2 = 2, T_3 = 16, …) by the
/// in-place recurrence of Brent and Harvey.
fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t: Vec<Integer> = Vec::with_capacity(n);
    if n == 0 {
        return t;
    }
    t.push(Integer::from(1));
    for k in 1..n {
        let next = Integer::from(&t[k - 1] * k as u32);
        t.push(next);
    }
    for k in 2..=n {
        for j in k..=n {
            // T_j = (j-k) T_{j-1} + (j-k+2) T_j, 1-based indices.
            let a = Integer::from(&t[j - 2] * (j - k) as u32);
            t[j - 1] *= (j - k + 2) as u32;
            t[j - 1] += a;
        }
    }
    t
}

/// `B_{2k}` for `k = 1..=n` from `B_{2k} = (-1)^{k-1} 2k T_k / (2^{2k}(2^{2k} - 1))`.
fn bernoulli_table(n: usize) -> Vec<Rational> {
    tangent_numbers(n)
        .into_iter()
        .enumerate()
        .map(|(i, tk)| {
            let k = i as u32 + 1;
            let num = tk * (2 * k);
            let p = Integer::from(1) << (2 * k);
            let den = &p * Integer::from(&p - 1u32);
            let r = Rational::from((num, den));
            if k % 2 == 0 {
                -r
            } else {
                r
            }
        })
        .collect()
}

/// Exact `B_{2k}` for `k ≥ 1`.
pub fn bernoulli_b2k(k: usize) -> Rational {
    assert!(k >= 1, "B_2k is requested for k >= 1");
    let lock = CACHE.get_or_init(|| RwLock::new(Vec::new()));
    {
        let table = lock.read().expect("bernoulli cache poisoned");
        if k <= table.len() {
            return table[k - 1].clone();
        }
    }
    let mut table = lock.write().expect("bernoulli cache poisoned");
    if k > table.len() {
        let n = k.max(2 * table.len()).max(64);
        *table = bernoulli_table(n);
    }
    table[k - 1].clone()
}

/// `B_{2k}` rounded to a float of precision `prec`.
pub(crate) fn bernoulli_float(k: usize, prec: u32) -> Float {
    Float::with_val(prec, &bernoulli_b2k(k))
}
