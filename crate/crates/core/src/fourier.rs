//! Trigonometric Dirichlet sums `sum_{n≥1} (ln n)^p e^{2πinq} / n^s`.
//!
//! The first `N - 1` terms are summed directly. The tail `n ≥ N` is
//! replaced by the expansion `w^N · [1 / (1 - w e^D)] f(N)`, with
//! `w = e^{2πiq}` and `D` the derivative operator, which converges
//! geometrically once `N` is large compared with `s / dist(q, Z)`. When `q`
//! is an integer the sum is non-oscillatory and the tail comes from
//! Euler–Maclaurin instead.

use std::f64::consts::PI;

use num::complex::Complex64;

use crate::bernoulli::{bernoulli_number, factorial};
use crate::error::{Error, Result};
use crate::eval::SeriesControl;

/// `sin(πx)`, exact at multiples of ½.
pub fn sin_pi(x: f64) -> f64 {
    // reduce to r ∈ [-1, 1) with sin(πx) = ±sin(πr)
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r.abs() == 0.5 {
        return r.signum();
    }
    if r.abs() <= 0.25 {
        (PI * r).sin()
    } else if r.abs() <= 0.75 {
        r.signum() * (PI * (0.5 - r.abs())).cos()
    } else {
        r.signum() * (PI * (1.0 - r.abs())).sin()
    }
}

/// `cos(πx)`, exact at multiples of ½.
pub fn cos_pi(x: f64) -> f64 {
    let r = (x - 2.0 * (x / 2.0).round()).abs();
    if r == 0.5 {
        return 0.0;
    }
    if r <= 0.25 {
        (PI * r).cos()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).sin()
    } else {
        -(PI * (1.0 - r)).cos()
    }
}

/// `e^{2πi t}` evaluated through exact argument reduction.
fn unit_root(t: f64) -> Complex64 {
    let frac = t - t.floor();
    Complex64::new(cos_pi(2.0 * frac), sin_pi(2.0 * frac))
}

/// The three sums for `p = 0, 1, 2`.
#[derive(Debug, Clone, Copy)]
pub struct LogDirichletSums {
    pub plain: Complex64,
    pub log1: Complex64,
    pub log2: Complex64,
    /// Directly summed terms before the tail expansion took over.
    pub terms: usize,
    /// Absolute error estimate, common to the three sums.
    pub err: f64,
}

/// Coefficients of `x^{-s-r} P(ln x)` with `deg P ≤ 2`, for `(ln x)^p x^{-s}`
/// differentiated `r` times.
#[derive(Clone, Copy)]
struct DerivPoly([f64; 3]);

impl DerivPoly {
    fn start(p: usize) -> Self {
        let mut c = [0.0; 3];
        c[p] = 1.0;
        DerivPoly(c)
    }

    /// d/dx [x^{-s-r} P(L)] = x^{-s-r-1} [-(s+r) P(L) + P'(L)]
    fn step(self, s_plus_r: f64) -> Self {
        let [c0, c1, c2] = self.0;
        DerivPoly([-s_plus_r * c0 + c1, -s_plus_r * c1 + 2.0 * c2, -s_plus_r * c2])
    }

    fn eval(self, l: f64) -> f64 {
        let [c0, c1, c2] = self.0;
        c0 + l * (c1 + l * c2)
    }
}

const MAX_CORRECTIONS: usize = 80;

/// Sums `sum_{n≥1} (ln n)^p e^{2πinq} n^{-s}` for `p = 0, 1, 2` and `s > 1`.
pub fn log_dirichlet_sums(s: f64, q: f64, ctrl: &SeriesControl) -> Result<LogDirichletSums> {
    if !(s > 1.0) {
        return Err(Error::domain(format!("Dirichlet exponent must exceed 1, got {s}")));
    }
    if !q.is_finite() {
        return Err(Error::domain("q must be finite"));
    }
    let frac = q - q.floor();
    if frac == 0.0 {
        return non_oscillatory(s, ctrl);
    }
    let rho = 2.0 * PI * frac.min(1.0 - frac);
    let n_start = (2.0 * (s + 30.0) / rho).ceil().max(32.0);
    if n_start > ctrl.max_terms as f64 {
        return Err(Error::Convergence { what: format!("Fourier sum at q = {q}"), terms: ctrl.max_terms });
    }
    let n_start = n_start as usize;

    let mut sums = [Complex64::new(0.0, 0.0); 3];
    let mut abs_mass = 0.0;
    for n in (1..n_start).rev() {
        let nf = n as f64;
        let l = nf.ln();
        let mag = (-s * l).exp();
        let w = unit_root(nf * frac);
        sums[0] += w * mag;
        sums[1] += w * (mag * l);
        sums[2] += w * (mag * l * l);
        abs_mass += mag * (1.0 + l * l);
    }

    // g_r = [D^r] 1/(1 - w e^D)
    let w = unit_root(frac);
    let one_minus_w = Complex64::new(1.0, 0.0) - w;
    let ratio = w / one_minus_w;
    let mut g = vec![Complex64::new(1.0, 0.0) / one_minus_w];
    let inv_fact: Vec<f64> = (0..=MAX_CORRECTIONS).map(|i| 1.0 / factorial(i)).collect();

    let x = n_start as f64;
    let l = x.ln();
    let base = (-s * l).exp();
    let phase = unit_root(x * frac);
    let mut polys = [DerivPoly::start(0), DerivPoly::start(1), DerivPoly::start(2)];
    let mut xpow = base;
    let mut tails = [Complex64::new(0.0, 0.0); 3];
    let mut last = f64::INFINITY;
    let mut prev = f64::INFINITY;
    let mut prev2 = f64::INFINITY;
    for r in 0..=MAX_CORRECTIONS {
        if r > 0 {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 1..=r {
                acc += g[r - i] * inv_fact[i];
            }
            g.push(ratio * acc);
            for poly in polys.iter_mut() {
                *poly = poly.step(s + (r - 1) as f64);
            }
            xpow /= x;
        }
        let terms: Vec<Complex64> = polys.iter().map(|poly| g[r] * (xpow * poly.eval(l))).collect();
        let size = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
        // Asymptotic expansion: stop before the terms start growing. At
        // w = -1 every other g_r vanishes, so compare with the last two.
        if r > 4 && size > prev.max(prev2) {
            break;
        }
        for (tail, term) in tails.iter_mut().zip(&terms) {
            *tail += term;
        }
        prev2 = prev;
        prev = size;
        last = size.max(0.5 * prev2);
        if size.max(prev2) <= 1e-18 * base.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    let err = last + 4.0 * f64::EPSILON * abs_mass;
    if err > ctrl.tol.max(1e-13 * abs_mass) {
        return Err(Error::Convergence { what: format!("Fourier tail at q = {q}"), terms: n_start });
    }
    Ok(LogDirichletSums {
        plain: sums[0] + phase * tails[0],
        log1: sums[1] + phase * tails[1],
        log2: sums[2] + phase * tails[2],
        terms: n_start,
        err,
    })
}

fn non_oscillatory(s: f64, ctrl: &SeriesControl) -> Result<LogDirichletSums> {
    let n_start = ((s + 60.0) / PI).ceil().max(20.0) as usize;
    let mut sums = [0.0f64; 3];
    let mut abs_mass = 0.0;
    for n in (1..n_start).rev() {
        let nf = n as f64;
        let l = nf.ln();
        let mag = (-s * l).exp();
        sums[0] += mag;
        sums[1] += mag * l;
        sums[2] += mag * l * l;
        abs_mass += mag * (1.0 + l * l);
    }
    let x = n_start as f64;
    let l = x.ln();
    let t = s - 1.0;
    let xt = (-t * l).exp();
    let base = (-s * l).exp();
    let integrals = [xt / t, xt * (l / t + 1.0 / (t * t)), xt * (l * l / t + 2.0 * l / (t * t) + 2.0 / (t * t * t))];
    let mut tails = [0.0f64; 3];
    for p in 0..3 {
        tails[p] = integrals[p] + 0.5 * base * DerivPoly::start(p).eval(l);
    }

    let mut polys = [DerivPoly::start(0), DerivPoly::start(1), DerivPoly::start(2)];
    let mut order = 0usize;
    let mut xpow = base;
    let mut last = f64::INFINITY;
    let mut prev = f64::INFINITY;
    for j in 1..=30 {
        // advance derivative order to 2j - 1
        while order < 2 * j - 1 {
            for poly in polys.iter_mut() {
                *poly = poly.step(s + order as f64);
            }
            xpow /= x;
            order += 1;
        }
        let coeff = bernoulli_number(2 * j)? / factorial(2 * j);
        let mut size: f64 = 0.0;
        for p in 0..3 {
            let term = coeff * xpow * polys[p].eval(l);
            tails[p] -= term;
            size = size.max(term.abs());
        }
        if size > prev {
            break;
        }
        prev = size;
        last = size;
        if size <= 1e-18 * base {
            break;
        }
    }
    let err = last + 4.0 * f64::EPSILON * abs_mass;
    if err > ctrl.tol.max(1e-13 * abs_mass) {
        return Err(Error::Convergence { what: "non-oscillatory Dirichlet tail".into(), terms: n_start });
    }
    let c = |v: f64| Complex64::new(v, 0.0);
    Ok(LogDirichletSums {
        plain: c(sums[0] + tails[0]),
        log1: c(sums[1] + tails[1]),
        log2: c(sums[2] + tails[2]),
        terms: n_start,
        err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_trig_points() {
        assert_eq!(sin_pi(1.0), 0.0);
        assert_eq!(sin_pi(-3.0), 0.0);
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(-0.5), -1.0);
        assert_eq!(sin_pi(1.5), -1.0);
        assert_eq!(cos_pi(0.5), 0.0);
        assert_eq!(cos_pi(-1.5), 0.0);
        assert_eq!(cos_pi(1.0), -1.0);
        assert_eq!(cos_pi(2.0), 1.0);
        for &x in &[0.1, 0.3, 0.7, 1.2, -0.45, 2.9] {
            assert!((sin_pi(x) - (PI * x).sin()).abs() < 1e-15, "sin {x}");
            assert!((cos_pi(x) - (PI * x).cos()).abs() < 1e-15, "cos {x}");
        }
    }

    /// Brute-force partial sums with an averaged tail (valid for s ≥ 4,
    /// where 10^5 terms leave < 1e-15).
    fn brute(s: f64, q: f64) -> [Complex64; 3] {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for n in (1..=100_000u64).rev() {
            let nf = n as f64;
            let l = nf.ln();
            let w = Complex64::from_polar(nf.powf(-s), 2.0 * PI * nf * q);
            out[0] += w;
            out[1] += w * l;
            out[2] += w * l * l;
        }
        out
    }

    #[test]
    fn matches_brute_force_for_fast_decay() {
        let ctrl = SeriesControl::default();
        for &(s, q) in &[(4.0, 0.1), (5.5, 0.37), (6.0, 0.5), (4.5, 0.93), (7.0, 0.0)] {
            let got = log_dirichlet_sums(s, q, &ctrl).unwrap();
            let want = brute(s, q);
            assert!((got.plain - want[0]).norm() < 1e-13, "p0 s={s} q={q}");
            assert!((got.log1 - want[1]).norm() < 1e-12, "p1 s={s} q={q}");
            assert!((got.log2 - want[2]).norm() < 1e-11, "p2 s={s} q={q}");
        }
    }

    #[test]
    fn slow_decay_closed_forms() {
        let ctrl = SeriesControl::default();
        // sum cos(2πn/2)/n^2 = -π²/12
        let r = log_dirichlet_sums(2.0, 0.5, &ctrl).unwrap();
        assert!((r.plain.re + PI * PI / 12.0).abs() < 1e-14);
        assert!(r.plain.im.abs() < 1e-14);
        // sum 1/n^2 at q = 0
        let r = log_dirichlet_sums(2.0, 0.0, &ctrl).unwrap();
        assert!((r.plain.re - PI * PI / 6.0).abs() < 1e-14);
        // Catalan: sum sin(nπ/2)/n^2
        let r = log_dirichlet_sums(2.0, 0.25, &ctrl).unwrap();
        assert!((r.plain.im - 0.915_965_594_177_219).abs() < 1e-14);
        // -ζ'(2) = sum ln n / n^2
        let r = log_dirichlet_sums(2.0, 1.0, &ctrl).unwrap();
        assert!((r.log1.re - 0.937_548_254_315_843_8).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_exponent() {
        assert!(log_dirichlet_sums(1.0, 0.3, &SeriesControl::default()).is_err());
    }

    #[test]
    fn near_integer_q_needs_many_terms() {
        let ctrl = SeriesControl::new(1e-14, 1000);
        assert!(matches!(log_dirichlet_sums(2.0, 1e-4, &ctrl), Err(Error::Convergence { .. })));
    }
}
