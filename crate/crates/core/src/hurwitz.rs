//! Hurwitz zeta `ζ(z, q)` and its first two `z`-derivatives for real `z ≠ 1`
//! and `q > 0`.
//!
//! The workhorse is Euler–Maclaurin summation, differentiated term by term in
//! `z`. For strongly negative `z` and small `q` the Euler–Maclaurin partial
//! sums cancel catastrophically, so for `z < -3/4` and small `q` the Hurwitz
//! Fourier series is used on the fractional part of `q` and the result is
//! shifted back with `ζ(z, q) = q^{-z} + ζ(z, q+1)`. Fractional parts too close
//! to an integer make the Fourier sums slow; those fall back to
//! Euler–Maclaurin with an error estimate that carries the cancellation.

use std::f64::consts::PI;

use crate::bernoulli::{bernoulli_number, factorial};
use crate::error::{Error, Result};
use crate::eval::{EvalResult, SeriesControl};
use crate::fourier::{cos_pi, log_dirichlet_sums, sin_pi};
use crate::gamma::{digamma, ln_gamma, trigamma};

const EPS: f64 = f64::EPSILON;
const MAX_TAIL: usize = 30;
/// Exponents below this use the Fourier path when `q` is small.
const FOURIER_BELOW: f64 = -0.75;
/// Term budget for the Fourier path before falling back to Euler–Maclaurin.
const FOURIER_TERMS: usize = 200_000;

/// Validated argument pair for the Hurwitz kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaArgs {
    pub z: f64,
    pub q: f64,
}

impl ZetaArgs {
    pub fn new(z: f64, q: f64) -> Result<Self> {
        if !z.is_finite() || !q.is_finite() {
            return Err(Error::domain(format!("non-finite argument (z = {z}, q = {q})")));
        }
        if q <= 0.0 {
            return Err(Error::domain(format!("q must be positive, got {q}")));
        }
        if z == 1.0 {
            return Err(Error::domain("z = 1 is the pole of the Hurwitz zeta function"));
        }
        Ok(Self { z, q })
    }
}

/// How many terms Euler–Maclaurin sums directly and how many Bernoulli
/// corrections it may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerMaclaurinPlan {
    pub n_direct: usize,
    pub j_tail: usize,
}

impl EulerMaclaurinPlan {
    /// Smallest `N + q` for which the Bernoulli tail reaches double precision
    /// within `MAX_TAIL` corrections.
    fn min_abscissa(z: f64) -> f64 {
        if z >= 0.0 {
            (z + 10.0).ceil().max(10.0)
        } else {
            (0.35 * -z + 2.0).max(6.0)
        }
    }

    /// The plan for `(z, q)`, or `None` when the Fourier path is preferred.
    pub fn choose(args: ZetaArgs) -> Option<Self> {
        let x_min = Self::min_abscissa(args.z);
        if args.z < FOURIER_BELOW && args.q < x_min {
            return None;
        }
        Some(Self::forced(args))
    }

    /// Euler–Maclaurin plan regardless of cancellation.
    pub fn forced(args: ZetaArgs) -> Self {
        let x_min = Self::min_abscissa(args.z);
        let n_direct = if args.q >= x_min { 0 } else { (x_min - args.q).ceil() as usize };
        Self { n_direct, j_tail: MAX_TAIL }
    }
}

/// Rising factorial `(x)_n = x (x+1) ... (x+n-1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (x + i as f64))
}

/// Neumaier-compensated accumulator.
#[derive(Default, Clone, Copy)]
struct Accum {
    sum: f64,
    comp: f64,
    mass: f64,
}

impl Accum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
        self.mass += v.abs();
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `ζ`, `∂_z ζ`, `∂²_z ζ` at one point.
fn derivatives(args: ZetaArgs) -> Result<[EvalResult; 3]> {
    match EulerMaclaurinPlan::choose(args) {
        Some(plan) => euler_maclaurin(args, plan),
        None => match fourier_shifted(args) {
            Err(Error::Convergence { .. }) => euler_maclaurin(args, EulerMaclaurinPlan::forced(args)),
            other => other,
        },
    }
}

fn euler_maclaurin(args: ZetaArgs, plan: EulerMaclaurinPlan) -> Result<[EvalResult; 3]> {
    let ZetaArgs { z, q } = args;
    let mut acc = [Accum::default(); 3];

    for n in 0..plan.n_direct {
        let y = n as f64 + q;
        let l = y.ln();
        let t = (-z * l).exp();
        if !t.is_finite() {
            return Err(Error::Overflow(format!("({y})^(-{z}) exceeds the double range")));
        }
        acc[0].add(t);
        acc[1].add(-l * t);
        acc[2].add(l * l * t);
    }

    let x = plan.n_direct as f64 + q;
    let l = x.ln();
    let xz = (-z * l).exp();
    let x1z = xz * x;
    if !x1z.is_finite() || !xz.is_finite() {
        return Err(Error::Overflow(format!("({x})^(1-{z}) exceeds the double range")));
    }
    let u = 1.0 / (z - 1.0);
    acc[0].add(x1z * u);
    acc[1].add(x1z * (-l * u - u * u));
    acc[2].add(x1z * (l * l * u + 2.0 * l * u * u + 2.0 * u * u * u));
    acc[0].add(0.5 * xz);
    acc[1].add(-0.5 * l * xz);
    acc[2].add(0.5 * l * l * xz);

    // Bernoulli tail: c_j (z)_{2j-1} x^{1-z-2j}, with (z)_m and its first two
    // z-derivatives carried by the product rule.
    let (mut p, mut dp, mut d2p) = (z, 1.0, 0.0);
    let inv_x2 = 1.0 / (x * x);
    let mut power = xz / x; // x^{-z-1}
    let mut omitted = [0.0f64; 3];
    let mut prev_scaled = f64::INFINITY;
    for j in 1..=plan.j_tail {
        if j > 1 {
            for k in [2 * j - 3, 2 * j - 2] {
                let f = z + k as f64;
                d2p = d2p * f + 2.0 * dp;
                dp = dp * f + p;
                p *= f;
            }
            power *= inv_x2;
        }
        let c = bernoulli_number(2 * j)? / factorial(2 * j);
        let e = c * power;
        let t = [e * p, e * (dp - l * p), e * (d2p - 2.0 * l * dp + l * l * p)];
        let scaled = (0..3)
            .map(|k| t[k].abs() / acc[k].mass.max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max);
        if j > 2 && scaled > prev_scaled {
            omitted = t.map(f64::abs);
            break;
        }
        for k in 0..3 {
            acc[k].add(t[k]);
        }
        omitted = t.map(f64::abs);
        prev_scaled = scaled;
        if scaled < 0.25 * EPS * EPS.sqrt() {
            break;
        }
    }

    let nd = plan.n_direct.max(1) as f64;
    let out = [0, 1, 2].map(|k| {
        let v = acc[k].value();
        EvalResult::new(v, omitted[k] + nd * EPS * v.abs() + 2.0 * EPS * acc[k].mass)
    });
    if out.iter().any(|r| !r.value.is_finite()) {
        return Err(Error::Overflow(format!("ζ({z}, {q}) is not representable")));
    }
    Ok(out)
}

fn fourier_shifted(args: ZetaArgs) -> Result<[EvalResult; 3]> {
    let ZetaArgs { z, q } = args;
    let shifts = if q > 1.0 { q.ceil() as usize - 1 } else { 0 };
    let q0 = q - shifts as f64;

    let s = 1.0 - z;
    let ctrl = SeriesControl::new(1e-14, FOURIER_TERMS);
    let sums = log_dirichlet_sums(s, q0, &ctrl)?;
    let (c0, s0) = (sums.plain.re, sums.plain.im);
    let (c1, s1) = (sums.log1.re, sums.log1.im);
    let (c2, s2) = (sums.log2.re, sums.log2.im);

    let ln_pre = 2f64.ln() + ln_gamma(s) - s * (2.0 * PI).ln();
    let pre = ln_pre.exp();
    if !pre.is_finite() {
        return Err(Error::Overflow(format!("Γ({s}) prefactor exceeds the double range")));
    }
    let big_l = (2.0 * PI).ln() - digamma(s);
    let tri = trigamma(s);
    let (sz, cz) = (sin_pi(z / 2.0), cos_pi(z / 2.0));
    let h = PI / 2.0;

    let g0 = sz * c0 + cz * s0;
    let g1 = h * (cz * c0 - sz * s0) + sz * c1 + cz * s1;
    let g2 = -h * h * g0 + 2.0 * h * (cz * c1 - sz * s1) + sz * c2 + cz * s2;

    let f0 = pre * g0;
    let f1 = pre * (big_l * g0 + g1);
    let f2 = pre * ((big_l * big_l + tri) * g0 + 2.0 * big_l * g1 + g2);

    let mag = pre * (c0.abs() + s0.abs() + c1.abs() + s1.abs() + c2.abs() + s2.abs());
    let rel_pre = EPS * (4.0 + ln_pre.abs());
    let series_err = pre * sums.err * (1.0 + big_l.abs() + h).powi(2);
    let mut out = [
        (f0, series_err + rel_pre * f0.abs() + EPS * mag),
        (f1, series_err + rel_pre * f1.abs() + EPS * mag * (1.0 + big_l.abs())),
        (f2, series_err + rel_pre * f2.abs() + EPS * mag * (1.0 + big_l.abs()).powi(2)),
    ];

    // ζ(z, q0 + m) = ζ(z, q0) - sum_{i<m} (q0 + i)^{-z}
    for i in 0..shifts {
        let y = q0 + i as f64;
        let l = y.ln();
        let t = (-z * l).exp();
        if !t.is_finite() {
            return Err(Error::Overflow(format!("({y})^(-{z}) exceeds the double range")));
        }
        out[0].0 -= t;
        out[1].0 += l * t;
        out[2].0 -= l * l * t;
        out[0].1 += EPS * t;
        out[1].1 += EPS * (l * t).abs();
        out[2].1 += EPS * l * l * t;
    }
    Ok(out.map(|(v, e)| EvalResult::new(v, e)))
}

/// `ζ(z, q)`.
pub fn hurwitz_zeta(args: ZetaArgs) -> Result<EvalResult> {
    if args.z <= 0.0 && args.z.fract() == 0.0 && args.q > 0.0 {
        // ζ(-m, q) = -B_{m+1}(q)/(m+1): the Euler–Maclaurin tail terminates,
        // so sum the terminating expansion at x = q with no direct terms.
        let m = -args.z as usize;
        if m < crate::bernoulli::MAX_INDEX {
            let v = -crate::bernoulli::bernoulli_poly(m + 1, args.q)? / (m + 1) as f64;
            let scale = args.q.abs().max(1.0).powi(m as i32 + 1);
            return Ok(EvalResult::new(v, 8.0 * EPS * (v.abs() + scale)));
        }
    }
    Ok(derivatives(args)?[0])
}

/// `∂ζ(z, q)/∂z`.
pub fn hurwitz_zeta_dz(args: ZetaArgs) -> Result<EvalResult> {
    Ok(derivatives(args)?[1])
}

/// `∂²ζ(z, q)/∂z²`.
pub fn hurwitz_zeta_d2z(args: ZetaArgs) -> Result<EvalResult> {
    Ok(derivatives(args)?[2])
}

/// `∂ζ(z, q)/∂q = -z ζ(z+1, q)`; at `z = 0` the limit `-1` is returned.
pub fn hurwitz_zeta_dq(args: ZetaArgs) -> Result<EvalResult> {
    if args.z == 0.0 {
        return Ok(EvalResult::exact(-1.0));
    }
    let shifted = ZetaArgs::new(args.z + 1.0, args.q)?;
    Ok(hurwitz_zeta(shifted)?.scale(-args.z))
}

/// Value and both `z`-derivatives in one pass.
pub fn hurwitz_zeta_all(args: ZetaArgs) -> Result<[EvalResult; 3]> {
    derivatives(args)
}

/// Riemann `ζ(z)`.
pub fn riemann_zeta(z: f64) -> Result<EvalResult> {
    hurwitz_zeta(ZetaArgs::new(z, 1.0)?)
}

/// Riemann `ζ'(z)`.
pub fn riemann_zeta_dz(z: f64) -> Result<EvalResult> {
    hurwitz_zeta_dz(ZetaArgs::new(z, 1.0)?)
}

/// Riemann `ζ''(z)`.
pub fn riemann_zeta_d2z(z: f64) -> Result<EvalResult> {
    hurwitz_zeta_d2z(ZetaArgs::new(z, 1.0)?)
}

/// Convenience: `ζ(z, q)` value only.
pub fn zeta(z: f64, q: f64) -> Result<f64> {
    Ok(hurwitz_zeta(ZetaArgs::new(z, q)?)?.value)
}

/// Convenience: `∂_z ζ(z, q)` value only.
pub fn zeta_dz(z: f64, q: f64) -> Result<f64> {
    Ok(hurwitz_zeta_dz(ZetaArgs::new(z, q)?)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_products() {
        assert_eq!(pochhammer(3.0, 0), 1.0);
        assert_eq!(pochhammer(-3.0, 4), 0.0);
        assert_eq!(pochhammer(1.0 - -1.5, 2), 8.75);
    }

    #[test]
    fn fourier_and_euler_maclaurin_agree() {
        for &(z, q) in &[(-2.2, 0.4), (-6.5, 1.3), (-12.0, 3.5), (-1.5, 0.9)] {
            let a = ZetaArgs::new(z, q).unwrap();
            assert!(EulerMaclaurinPlan::choose(a).is_none());
            let f = fourier_shifted(a).unwrap();
            let e = euler_maclaurin(a, EulerMaclaurinPlan::forced(a)).unwrap();
            for k in 0..3 {
                let tol = 4.0 * (f[k].err_estimate + e[k].err_estimate);
                assert!((f[k].value - e[k].value).abs() <= tol, "({z}, {q}) order {k}");
            }
        }
    }

    #[test]
    fn near_integer_falls_back() {
        let a = ZetaArgs::new(-8.5, 1.9999999).unwrap();
        assert!(matches!(fourier_shifted(a), Err(Error::Convergence { .. })));
        let r = hurwitz_zeta(a).unwrap();
        assert!((r.value - -1.0044151856520059).abs() <= r.err_estimate);
    }
}
