#[path = "support/oracles.rs"]
mod oracles;

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use signlab_core::special::{BesselKernel, BesselOrder, CriticalLineZeta};
use signlab_core::{bessel_k_scaled, gamma_complex, zeta_complex, PrecisionPolicy};

fn pol() -> PrecisionPolicy {
    PrecisionPolicy::default()
}

#[test]
fn k0_matches_ascending_series() {
    for x in [0.5, 1.0, 5.0] {
        let k = bessel_k_scaled(0.0, x, &pol()).unwrap();
        let o = oracles::k0_series(x, 256).to_f64();
        assert!(((k.value.to_f64() - o) / o).abs() < 1e-10, "x = {x}");
        assert!(k.abs_error < 1e-12 * o);
    }
}

#[test]
fn scaled_kernel_matches_unscaled_quadrature_at_tau_20() {
    let tau = 20.0;
    for x in [1.0, 5.0, 15.0, 25.0] {
        let k = bessel_k_scaled(tau, x, &pol()).unwrap();
        let unscaled = oracles::bessel_ki_tanh_sinh(tau, x, 256);
        let rescaled = unscaled.to_f64() * (PI * tau / 2.0).exp();
        let v = k.value.to_f64();
        assert!((v - rescaled).abs() <= 1e-10 * v.abs().max(1e-3), "x = {x}: {v} vs {rescaled}");
    }
}

#[test]
fn gamma_modulus_on_critical_line() {
    let g = gamma_complex(Complex64::new(0.5, 14.0), &pol()).unwrap().to_c64();
    let expected = PI / (14.0 * PI).cosh();
    assert!((g.norm_sqr() / expected - 1.0).abs() < 1e-14);
    let g = gamma_complex(Complex64::new(0.5, 0.0), &pol()).unwrap().to_c64();
    assert!((g.re - PI.sqrt()).abs() < 1e-15);
}

#[test]
fn hardy_z_is_real_and_changes_sign_at_first_zero() {
    let z = |t: f64| {
        let v = zeta_complex(Complex64::new(0.5, t), &pol()).unwrap().value;
        Complex64::from_polar(1.0, oracles::hardy_theta(t)) * v
    };
    for t in [14.0, 20.0, 37.5, 100.0] {
        let v = z(t);
        assert!(v.im.abs() < 1e-9 * v.norm().max(1.0), "t = {t}: {v}");
    }
    assert!(z(14.0).re.signum() != z(14.3).re.signum());
}

#[test]
fn critical_line_scanner_agrees_with_direct_zeta() {
    let scan = CriticalLineZeta::new(500.0, &pol()).unwrap();
    for t in [0.0, 3.3, 77.7, 499.0] {
        let a = scan.eval(t).unwrap();
        let b = zeta_complex(Complex64::new(0.5, t), &pol()).unwrap();
        assert!((a.value - b.value).norm() <= a.abs_error + b.abs_error + 1e-14);
    }
}

#[test]
fn evaluation_is_deterministic() {
    let a = bessel_k_scaled(33.3, 7.7, &pol()).unwrap();
    let b = bessel_k_scaled(33.3, 7.7, &pol()).unwrap();
    assert_eq!(a.value, b.value);
    assert_eq!(a.abs_error, b.abs_error);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ladder_agrees_with_single_evaluations(tau in 0.0f64..60.0, k64 in 20u32..128) {
        // Dyadic x₁ keeps n·x₁ exact in f64, so both paths see the same argument.
        let x1 = k64 as f64 / 64.0;
        let k = BesselKernel::new(BesselOrder::Imaginary(tau), x1, &pol()).unwrap();
        let ladder = k.ladder(x1, 6).unwrap();
        for (i, v) in ladder.iter().enumerate() {
            let direct = k.eval(x1 * (i + 1) as f64).unwrap();
            prop_assert!((v.value - direct.value).abs() <= v.abs_error + direct.abs_error + 1e-15 * direct.value.abs());
        }
    }

    #[test]
    fn reflection_of_zeta(re in -3.0f64..3.0, im in 1.0f64..40.0) {
        let s = Complex64::new(re, im);
        let a = zeta_complex(s, &pol()).unwrap();
        let b = zeta_complex(s.conj(), &pol()).unwrap();
        prop_assert!((a.value - b.value.conj()).norm() <= a.abs_error + b.abs_error + 1e-15 * a.value.norm());
    }
}
