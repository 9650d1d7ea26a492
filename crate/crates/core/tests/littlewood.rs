#[path = "support/oracles.rs"]
mod oracles;

use std::f64::consts::PI;

use oracles::{exact_sign_changes, TrigPoly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signlab_core::restriction::{FnSegment, Scaled};
use signlab_core::{certify, count_sign_changes, CPolicy};

/// Certificates on random trigonometric polynomials never exceed the exact count.
#[test]
fn issued_certificates_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut issued = 0;
    for _ in 0..60 {
        let n_terms = rng.gen_range(1..=30);
        let lo = rng.gen_range(20.0..300.0);
        let p = TrigPoly {
            terms: (0..n_terms)
                .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(lo..lo + 200.0), rng.gen_range(0.0..2.0 * PI)))
                .collect(),
        };
        let n = rng.gen_range(2..=24);
        let eta = 1.0 / n as f64;
        let pc = p.clone();
        let f = FnSegment::new(move |y| pc.eval(y), (0.0, 1.0 + eta), p.max_freq());
        let c = certify(&f, (0.0, 1.0), n, CPolicy::default()).unwrap();
        if c.hypotheses_hold {
            issued += 1;
            let exact = exact_sign_changes(&p, 0.0, 1.0).expect("resolvable");
            assert!(c.lower_bound <= exact, "{c:?} vs {exact}");
            assert!(c.lower_bound <= n);
        }
    }
    assert!(issued >= 10, "only {issued} certificates issued");
}

#[test]
fn certificates_are_consistent_with_certified_counts() {
    let p = TrigPoly { terms: vec![(1.0, 200.0, 0.0), (0.4, 260.0, 1.0)] };
    let pc = p.clone();
    let f = FnSegment::new(move |y| pc.eval(y), (0.0, 1.5), 260.0).with_error(1e-14);
    let c = certify(&f, (0.0, 1.0), 4, CPolicy::default()).unwrap();
    assert!(c.hypotheses_hold, "{c:?}");
    let k = count_sign_changes(&f, (0.0, 1.0), 2000, 30).unwrap();
    assert!(c.lower_bound <= k.count);
}

#[test]
fn threshold_scales_linearly_in_eta() {
    let f = FnSegment::new(|y: f64| (300.0 * y).sin() + 0.2, (0.0, 1.5), 300.0);
    let a = certify(&f, (0.0, 1.0), 4, CPolicy::default()).unwrap();
    let b = certify(&f, (0.0, 1.0), 8, CPolicy::default()).unwrap();
    assert!((a.c - b.c).abs() < 1e-9);
    assert!((a.threshold / b.threshold - 2.0).abs() < 1e-7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn scale_invariance(lambda in 0.01f64..100.0, w in 50.0f64..250.0, n in 2usize..10) {
        let f = FnSegment::new(move |y: f64| (w * y).cos() + 0.3 * (1.7 * w * y).sin(), (0.0, 1.6), 1.7 * w);
        let g = Scaled { inner: &f, factor: lambda };
        let a = certify(&f, (0.0, 1.0), n, CPolicy::default()).unwrap();
        let b = certify(&g, (0.0, 1.0), n, CPolicy::default()).unwrap();
        prop_assert!((a.c - b.c).abs() < 1e-9);
        prop_assert_eq!(a.hypotheses_hold, b.hypotheses_hold);
        prop_assert_eq!(a.lower_bound, b.lower_bound);
    }
}
