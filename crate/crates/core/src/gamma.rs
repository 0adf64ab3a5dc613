//! Log-gamma, digamma and trigamma on the positive real axis.
//!
//! All three use upward recurrence into `x ≥ 12` followed by the Stirling
//! asymptotic series. They never touch the Hurwitz kernel, so they can serve
//! as independent checks of it.

use crate::bernoulli::bernoulli_number;

const ASYMPTOTIC_FROM: f64 = 12.0;
const SERIES_TERMS: usize = 12;

fn b2k(k: usize) -> f64 {
    bernoulli_number(2 * k).expect("index within table")
}

/// Shift `x` upward until it reaches the asymptotic region, returning the
/// shifted argument and the number of steps.
fn lift(x: f64) -> (f64, usize) {
    let steps = if x < ASYMPTOTIC_FROM { (ASYMPTOTIC_FROM - x).ceil() as usize } else { 0 };
    (x + steps as f64, steps)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    let (y, steps) = lift(x);
    // ln Γ(x) = ln Γ(y) - ln(x (x+1) ... (x+steps-1)); the product is
    // accumulated in chunks to stay inside the double range.
    let mut log_prod = 0.0;
    let mut prod = 1.0;
    for i in 0..steps {
        prod *= x + i as f64;
        if prod > 1e250 || prod < 1e-250 {
            log_prod += prod.ln();
            prod = 1.0;
        }
    }
    log_prod += prod.ln();

    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for k in 1..=SERIES_TERMS {
        series += b2k(k) / ((2 * k) as f64 * (2 * k - 1) as f64) * pow;
        pow *= inv2;
    }
    let half_ln_2pi = 0.918_938_533_204_672_8;
    (y - 0.5) * y.ln() - y + half_ln_2pi + series - log_prod
}

/// `Γ(x)` for `x > 0`, via `exp(ln Γ)`.
pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

/// Digamma `ψ(x) = d/dx ln Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let (y, steps) = lift(x);
    let shift: f64 = (0..steps).rev().map(|i| 1.0 / (x + i as f64)).sum();
    let inv2 = 1.0 / (y * y);
    let mut series = 0.0;
    let mut pow = inv2;
    for k in 1..=SERIES_TERMS {
        series += b2k(k) / (2 * k) as f64 * pow;
        pow *= inv2;
    }
    y.ln() - 0.5 / y - series - shift
}

/// Trigamma `ψ'(x)` for `x > 0`.
pub fn trigamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let (y, steps) = lift(x);
    let shift: f64 = (0..steps).rev().map(|i| 1.0 / ((x + i as f64) * (x + i as f64))).sum();
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv2 * inv;
    for k in 1..=SERIES_TERMS {
        series += b2k(k) * pow;
        pow *= inv2;
    }
    inv + 0.5 * inv2 + series + shift
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn ln_gamma_known_values() {
        assert!(ln_gamma(1.0).abs() < 1e-14);
        assert!(ln_gamma(2.0).abs() < 1e-14);
        assert!((ln_gamma(0.5) - 0.5 * PI.ln()).abs() < 1e-14);
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-14);
        // ln Γ(1e-8) ≈ -ln(1e-8) - γ·1e-8
        assert!((ln_gamma(1e-8) - (18.420_680_743_952_367 - EULER_GAMMA * 1e-8)).abs() < 1e-13);
        assert!((ln_gamma(100.0) - 359.134_205_369_575_4).abs() < 1e-11);
    }

    #[test]
    fn digamma_known_values() {
        assert!((digamma(1.0) + EULER_GAMMA).abs() < 1e-15);
        assert!((digamma(0.5) + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-15);
        assert!((digamma(2.0) - (1.0 - EULER_GAMMA)).abs() < 1e-15);
    }

    #[test]
    fn trigamma_known_values() {
        assert!((trigamma(1.0) - PI * PI / 6.0).abs() < 1e-15);
        assert!((trigamma(0.5) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn recurrences() {
        for &x in &[0.1, 0.77, 3.3, 15.2] {
            assert!((ln_gamma(x + 1.0) - ln_gamma(x) - x.ln()).abs() < 1e-14);
            assert!((digamma(x + 1.0) - digamma(x) - 1.0 / x).abs() < 1e-13);
            assert!((trigamma(x) - trigamma(x + 1.0) - 1.0 / (x * x)).abs() < 1e-12);
        }
    }
}
