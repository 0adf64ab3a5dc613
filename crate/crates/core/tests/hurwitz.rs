mod common;

use common::hermite_zeta;
use hzk_core::bernoulli::bernoulli_poly;
use hzk_core::hurwitz::*;
use proptest::prelude::*;

fn args(z: f64, q: f64) -> ZetaArgs {
    ZetaArgs::new(z, q).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn check_against_hermite(zs: &[f64], rel: f64) {
    let qs = [0.05, 0.3, 0.5, 0.99, 1.25, 2.7, 4.9];
    for &z in zs {
        for &q in &qs {
            let all = hurwitz_zeta_all(args(z, q)).unwrap();
            for order in 0..3 {
                let want = hermite_zeta(z, q, order);
                let got = all[order];
                let scale = want.abs().max(1.0);
                assert!(
                    (got.value - want).abs() <= rel * scale + 2.0 * got.err_estimate,
                    "order {order} at ({z}, {q}): {} vs {want} (err est {})",
                    got.value,
                    got.err_estimate
                );
            }
        }
    }
}

#[test]
fn hermite_integral_oracle_grid() {
    check_against_hermite(&[-10.5, -7.5, -4.0, -2.5, -1.0, -0.8, -0.5, 0.0, 0.5, 1.5, 2.0, 3.7, 10.0, 30.0], 1e-12);
}

// The oscillatory Hermite integrand loses digits for strongly negative z.
#[test]
fn hermite_integral_oracle_far_left() {
    check_against_hermite(&[-25.0, -20.3, -14.5], 1e-9);
}

#[test]
fn shift_ladder_oracle() {
    // ζ(z, q) - ζ(z, q + M) is a finite sum; the far end comes from Hermite's integral.
    let (z, q) = (-2.5f64, 1.25f64);
    let m = 8;
    let head: f64 = (0..m).map(|n| (q + n as f64).powf(-z)).sum();
    let far = hermite_zeta(z, q + m as f64, 0);
    let got = hurwitz_zeta(args(z, q)).unwrap().value;
    let ladder = head + far;
    assert!((got - ladder).abs() <= 1e-12 * head.abs(), "{got} vs {ladder}");
    assert!((got - -0.039288096082003843).abs() < 1e-15);
}

#[test]
fn second_derivative_at_two_by_direct_sum() {
    let n = 1_000_000u64;
    let f = |x: f64| x.ln().powi(2) / (x * x);
    let mut head = 0.0;
    for k in (1..n).rev() {
        head += f(k as f64);
    }
    let x = n as f64;
    let l = x.ln();
    let df = (2.0 * l - 2.0 * l * l) / (x * x * x);
    let tail = (l * l + 2.0 * l + 2.0) / x + 0.5 * f(x) - df / 12.0;
    let oracle = head + tail;
    let got = riemann_zeta_d2z(2.0).unwrap().value;
    assert!((got - oracle).abs() < 1e-13, "{got} vs {oracle}");
    assert!((got - 1.98928).abs() < 1e-5);
}

#[test]
fn classical_values() {
    use std::f64::consts::PI;
    assert!((riemann_zeta(2.0).unwrap().value - PI * PI / 6.0).abs() < 1e-15);
    assert!((hurwitz_zeta(args(-1.0, 0.5)).unwrap().value - 1.0 / 24.0).abs() < 1e-16);
    let ln_sqrt_2pi = 0.5 * (2.0 * PI).ln();
    assert!((riemann_zeta_dz(0.0).unwrap().value + ln_sqrt_2pi).abs() < 1e-14);
    let lerch = zeta_dz(0.0, 3.0).unwrap() - zeta_dz(0.0, 1.0).unwrap();
    assert!((lerch - 2f64.ln()).abs() < 1e-14);
    let zeta3 = 1.2020569031595942;
    assert!((riemann_zeta_dz(-2.0).unwrap().value + zeta3 / (4.0 * PI * PI)).abs() < 1e-15);
    assert!((riemann_zeta_dz(-1.0).unwrap().value - -0.16542114370045092).abs() < 1e-15);
    assert!((riemann_zeta_dz(2.0).unwrap().value - -0.93754825431584375).abs() < 1e-15);
}

#[test]
fn d2z_shift_relation() {
    let a = hurwitz_zeta_d2z(args(3.0, 2.0)).unwrap().value;
    let b = hurwitz_zeta_d2z(args(3.0, 3.0)).unwrap().value;
    let l = 2f64.ln();
    assert!((a - b - l * l / 8.0).abs() < 1e-14);
}

#[test]
fn d2z_second_difference_at_origin() {
    let h = 1e-4;
    let f = |z: f64| riemann_zeta(z).unwrap().value;
    let fd = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
    assert!((riemann_zeta_d2z(0.0).unwrap().value - fd).abs() < 1e-6);
}

#[test]
fn q_derivative() {
    assert_eq!(hurwitz_zeta_dq(args(-1.0, 2.0)).unwrap().value, -1.5);
    assert!((hurwitz_zeta_dq(args(-2.0, 0.5)).unwrap().value - 1.0 / 12.0).abs() < 1e-16);
    let h = 1e-5;
    let fd = (zeta(2.5, 1.7 + h).unwrap() - zeta(2.5, 1.7 - h).unwrap()) / (2.0 * h);
    assert!((hurwitz_zeta_dq(args(2.5, 1.7)).unwrap().value - fd).abs() < 1e-8);
    for &z in &[-3.5, -1.0, 0.5, 2.0, 4.0] {
        for &q in &[0.4, 1.0, 2.5] {
            let fd = (zeta(z, q + h).unwrap() - zeta(z, q - h).unwrap()) / (2.0 * h);
            let got = hurwitz_zeta_dq(args(z, q)).unwrap().value;
            assert!(close(got, fd, 1e-7), "({z}, {q}): {got} vs {fd}");
        }
    }
}

#[test]
fn z_derivative_finite_differences() {
    let h = 1e-6;
    for &z in &[-8.3, -2.5, -0.4, 0.3, 2.2, 6.0] {
        for &q in &[0.2, 0.75, 1.0, 3.3] {
            let fd = (zeta(z + h, q).unwrap() - zeta(z - h, q).unwrap()) / (2.0 * h);
            let got = zeta_dz(z, q).unwrap();
            assert!(close(got, fd, 1e-7), "({z}, {q}): {got} vs {fd}");
        }
    }
}

#[test]
fn bernoulli_specialization() {
    for m in 1..=10usize {
        for i in 1..30 {
            let q = 0.1 * i as f64;
            let got = zeta(1.0 - m as f64, q).unwrap();
            let want = -bernoulli_poly(m, q).unwrap() / m as f64;
            assert!((got - want).abs() <= 1e-11 * want.abs().max(1e-3), "m={m} q={q}");
        }
    }
}

#[test]
fn half_argument() {
    for &z in &[-9.5, -3.0, -0.7, 0.0, 0.5, 2.0, 7.25] {
        let half = zeta(z, 0.5).unwrap();
        let full = (2f64.powf(z) - 1.0) * zeta(z, 1.0).unwrap();
        assert!(close(half, full, 1e-12), "z={z}: {half} vs {full}");
    }
}

#[test]
fn errors() {
    assert!(ZetaArgs::new(1.0, 0.5).is_err());
    assert!(ZetaArgs::new(2.0, 0.0).is_err());
    assert!(ZetaArgs::new(2.0, -1.0).is_err());
    assert!(ZetaArgs::new(f64::NAN, 1.0).is_err());
    assert!(matches!(hurwitz_zeta(args(400.0, 1e-3)), Err(hzk_core::error::Error::Overflow(_))));
}

#[test]
fn plan_bounds() {
    for &z in &[-30.0, -5.0, 0.0, 2.0, 30.0] {
        for &q in &[0.1, 1.0, 7.0, 50.0] {
            let p = EulerMaclaurinPlan::forced(args(z, q));
            assert!(p.j_tail <= 30);
            assert!(p.n_direct as f64 + q >= 6.0);
        }
    }
}

proptest! {
    #[test]
    fn shift_identity(z in -10.0f64..10.0, q in 0.01f64..5.0) {
        prop_assume!((z - 1.0).abs() > 1e-6);
        let a = zeta(z, q).unwrap();
        let b = zeta(z, q + 1.0).unwrap();
        let d = q.powf(-z);
        let scale = a.abs().max(b.abs()).max(d.abs());
        prop_assert!((a - b - d).abs() <= 1e-12 * scale, "{} {} {}", a, b, d);
    }

    #[test]
    fn err_estimate_is_finite(z in -30.0f64..30.0, q in 0.01f64..20.0) {
        prop_assume!((z - 1.0).abs() > 1e-6);
        for r in hurwitz_zeta_all(args(z, q)).unwrap() {
            prop_assert!(r.value.is_finite() && r.err_estimate.is_finite() && r.err_estimate >= 0.0);
        }
    }
}
