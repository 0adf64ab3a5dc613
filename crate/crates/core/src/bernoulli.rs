//! Bernoulli numbers and polynomials, harmonic numbers, and small
//! combinatorial helpers.
//!
//! Bernoulli numbers come from the exact rational recurrence
//! `sum_{j=0}^{m} C(m+1, j) B_j = 0` and are rounded to `f64` exactly once.
//! Polynomial coefficients `C(m, k) B_k` are likewise formed in rational
//! arithmetic before rounding.

use std::sync::OnceLock;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported Bernoulli index.
pub const MAX_INDEX: usize = 60;

/// One cached Bernoulli number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernoulliEntry {
    pub value: f64,
    /// True when `value` represents the rational number exactly.
    pub exact: bool,
}

/// Immutable table of `B_0..=B_60` and of the polynomial coefficients
/// `C(m, k) B_k` for every `m ≤ 60`.
#[derive(Debug)]
pub struct BernoulliCache {
    numbers: Vec<BernoulliEntry>,
    rationals: Vec<BigRational>,
    poly_coeffs: Vec<Vec<f64>>,
}

impl BernoulliCache {
    fn build() -> Self {
        let mut rationals: Vec<BigRational> = Vec::with_capacity(MAX_INDEX + 1);
        rationals.push(BigRational::one());
        for m in 1..=MAX_INDEX {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (j, b) in rationals.iter().enumerate() {
                // binom = C(m+1, j)
                acc += b * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            rationals.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }

        let numbers = rationals
            .iter()
            .map(|r| {
                let value = r.to_f64().expect("Bernoulli numbers up to B_60 fit in f64");
                let exact = BigRational::from_float(value).is_some_and(|back| &back == r);
                BernoulliEntry { value, exact }
            })
            .collect();

        let poly_coeffs = (0..=MAX_INDEX)
            .map(|m| {
                let mut binom = BigInt::one();
                (0..=m)
                    .map(|k| {
                        let c = &rationals[k] * BigRational::from_integer(binom.clone());
                        binom = binom.clone() * BigInt::from(m - k) / BigInt::from(k + 1);
                        c.to_f64().expect("coefficient fits in f64")
                    })
                    .collect()
            })
            .collect();

        Self { numbers, rationals, poly_coeffs }
    }

    /// The process-wide cache, built on first use.
    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::build)
    }

    pub fn max(&self) -> usize {
        MAX_INDEX
    }

    pub fn entry(&self, k: usize) -> Option<BernoulliEntry> {
        self.numbers.get(k).copied()
    }

    /// Exact rational value of `B_k`.
    pub fn rational(&self, k: usize) -> Option<&BigRational> {
        self.rationals.get(k)
    }

    fn coeffs(&self, m: usize) -> &[f64] {
        &self.poly_coeffs[m]
    }
}

fn check_index(k: usize) -> Result<()> {
    if k > MAX_INDEX {
        return Err(Error::Range(format!("Bernoulli index {k} exceeds {MAX_INDEX}")));
    }
    Ok(())
}

/// Bernoulli number `B_k` (with `B_1 = -1/2`).
pub fn bernoulli_number(k: usize) -> Result<f64> {
    check_index(k)?;
    Ok(BernoulliCache::global().numbers[k].value)
}

/// Bernoulli polynomial `B_m(q)` by Horner evaluation of
/// `sum_k C(m, k) B_k q^{m-k}`.
pub fn bernoulli_poly(m: usize, q: f64) -> Result<f64> {
    check_index(m)?;
    let coeffs = BernoulliCache::global().coeffs(m);
    Ok(coeffs.iter().fold(0.0, |acc, &c| acc * q + c))
}

/// Harmonic number `H_n`, with `H_0 = 0`.
pub fn harmonic(n: usize) -> f64 {
    // Summing smallest terms first keeps the rounding error minimal.
    (1..=n).rev().map(|i| 1.0 / i as f64).sum()
}

/// `n!` as a double (exact up to `22!`).
pub fn factorial(n: usize) -> f64 {
    (2..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Binomial coefficient `C(n, k)`, computed exactly in integers then rounded.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c as f64
}

/// Left side of the shifted Bernoulli summation identity
/// `sum_{r=0}^{p} (-1)^r C(p+1, r+1) q^{p-r} B_{r+1}(a + b q) / b^{r+1}`,
/// which equals `q^{p+1} + (-1)^p B_{p+1}(a) / b^{p+1}`.
pub fn shifted_bernoulli_sum(p: usize, a: f64, b: f64, q: f64) -> Result<f64> {
    if b == 0.0 {
        return Err(Error::domain("b must be nonzero"));
    }
    check_index(p + 1)?;
    let x = a + b * q;
    let mut sum = 0.0;
    for r in 0..=p {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial(p + 1, r + 1) * q.powi((p - r) as i32) * bernoulli_poly(r + 1, x)?
            / b.powi(r as i32 + 1);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    #[test]
    fn small_numbers() {
        assert_eq!(bernoulli_number(0).unwrap(), 1.0);
        assert_eq!(bernoulli_number(1).unwrap(), -0.5);
        assert_eq!(bernoulli_number(2).unwrap(), 1.0 / 6.0);
        for k in (3..=MAX_INDEX).step_by(2) {
            assert_eq!(bernoulli_number(k).unwrap(), 0.0, "B_{k}");
        }
    }

    #[test]
    fn b12_is_exact_rational() {
        let cache = BernoulliCache::global();
        let expected = BigRational::new(BigInt::from(-691), BigInt::from(2730));
        assert_eq!(cache.rational(12).unwrap(), &expected);
        assert_eq!(bernoulli_number(12).unwrap(), -691.0 / 2730.0);
    }

    #[test]
    fn provenance_flags() {
        let cache = BernoulliCache::global();
        assert!(cache.entry(0).unwrap().exact);
        assert!(cache.entry(1).unwrap().exact);
        assert!(!cache.entry(2).unwrap().exact);
        assert!(cache.entry(3).unwrap().exact);
    }

    #[test]
    fn b60_magnitude() {
        // B_60 = -2.139994925722533e34 (leading digits of the exact rational)
        let b60 = bernoulli_number(60).unwrap();
        assert!((b60 / -2.139994925722533e34 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(bernoulli_number(61), Err(Error::Range(_))));
        assert!(bernoulli_poly(61, 0.5).is_err());
    }

    #[test]
    fn polynomial_examples() {
        let b2 = |q: f64| q * q - q + 1.0 / 6.0;
        for &q in &[0.0, 0.3, 1.7, -2.0] {
            assert!((bernoulli_poly(2, q).unwrap() - b2(q)).abs() < 1e-15);
        }
        assert!(bernoulli_poly(3, 0.5).unwrap().abs() < 1e-16);
    }

    #[test]
    fn b5_matches_generating_function_coefficient() {
        // Taylor coefficient of t e^{qt}/(e^t - 1) at t^5, times 5!, computed
        // by exact series division in rationals.
        let q = BigRational::new(BigInt::from(13), BigInt::from(10));
        let n = 8;
        // e^t - 1 over t: coefficients 1/(i+1)!
        let fact = |i: usize| (1..=i).fold(BigInt::one(), |a, k| a * BigInt::from(k));
        let denom: Vec<BigRational> =
            (0..n).map(|i| BigRational::new(BigInt::one(), fact(i + 1))).collect();
        let mut qpow = BigRational::one();
        let numer: Vec<BigRational> = (0..n)
            .map(|i| {
                let c = qpow.clone() / BigRational::from_integer(fact(i));
                qpow = qpow.clone() * q.clone();
                c
            })
            .collect();
        let mut quot: Vec<BigRational> = Vec::new();
        for i in 0..n {
            let mut acc = numer[i].clone();
            for j in 0..i {
                acc -= quot[j].clone() * denom[i - j].clone();
            }
            quot.push(acc / denom[0].clone());
        }
        let b5 = (quot[5].clone() * BigRational::from_integer(fact(5))).to_f64().unwrap();
        assert!((bernoulli_poly(5, 1.3).unwrap() - b5).abs() < 1e-14);
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), 0.0);
        assert_eq!(harmonic(1), 1.0);
        assert!((harmonic(4) - 25.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(51, 25), 247_959_266_474_052.0);
        assert_eq!(binomial(3, 4), 0.0);
    }

    #[test]
    fn shifted_bernoulli_sum_examples() {
        let rhs = |p: usize, a: f64, b: f64, q: f64| {
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            q.powi(p as i32 + 1) + sign * bernoulli_poly(p + 1, a).unwrap() / b.powi(p as i32 + 1)
        };
        assert!((shifted_bernoulli_sum(0, 0.0, 1.0, 2.0).unwrap() - 1.5).abs() < 1e-15);
        assert!((shifted_bernoulli_sum(1, 0.3, 2.0, 0.7).unwrap() - rhs(1, 0.3, 2.0, 0.7)).abs() < 1e-14);
        assert!((shifted_bernoulli_sum(3, 1.0, 1.0, 1.0).unwrap() - rhs(3, 1.0, 1.0, 1.0)).abs() < 1e-14);
        assert!(shifted_bernoulli_sum(2, 0.0, 0.0, 1.0).is_err());
    }
}
