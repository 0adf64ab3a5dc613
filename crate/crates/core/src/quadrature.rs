//! Numerical integration used as the independent oracle for identity checks.
//!
//! Smooth integrands go through globally adaptive Gauss–Kronrod (10/21)
//! subdivision. When either endpoint is flagged singular the whole interval is
//! handled by tanh-sinh, whose nodes crowd the endpoints double-exponentially
//! and never sample them.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_EVALS: usize = 200_000;

type Integrand<'a> = Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>;

pub struct QuadratureProblem<'a> {
    integrand: Integrand<'a>,
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
    pub singular_lo: bool,
    pub singular_hi: bool,
    pub max_evals: usize,
}

impl<'a> QuadratureProblem<'a> {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'a, lo: f64, hi: f64) -> Self {
        Self {
            integrand: Box::new(f),
            lo,
            hi,
            tol: 1e-12,
            singular_lo: false,
            singular_hi: false,
            max_evals: DEFAULT_MAX_EVALS,
        }
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn singular_lo(mut self, yes: bool) -> Self {
        self.singular_lo = yes;
        self
    }

    pub fn singular_hi(mut self, yes: bool) -> Self {
        self.singular_hi = yes;
        self
    }

    pub fn singular_both(self) -> Self {
        self.singular_lo(true).singular_hi(true)
    }

    pub fn max_evals(mut self, n: usize) -> Self {
        self.max_evals = n;
        self
    }

    fn eval(&self, x: f64) -> Result<f64> {
        let y = (self.integrand)(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteSample(x))
        }
    }
}

impl std::fmt::Debug for QuadratureProblem<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuadratureProblem")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("tol", &self.tol)
            .field("singular_lo", &self.singular_lo)
            .field("singular_hi", &self.singular_hi)
            .field("max_evals", &self.max_evals)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

pub fn integrate(p: &QuadratureProblem<'_>) -> Result<QuadratureResult> {
    if !(p.lo.is_finite() && p.hi.is_finite() && p.lo < p.hi) {
        return Err(Error::domain(format!("need finite lo < hi, got [{}, {}]", p.lo, p.hi)));
    }
    if !(p.tol >= 1e-14) {
        return Err(Error::domain(format!("tol must be at least 1e-14, got {}", p.tol)));
    }
    if p.singular_lo || p.singular_hi {
        tanh_sinh(p)
    } else {
        gauss_kronrod(p)
    }
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn qk21(p: &QuadratureProblem<'_>, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = p.eval(center)?;
    let mut res_g = 0.0;
    let mut res_k = fc * WGK[10];
    let mut res_abs = (fc * WGK[10]).abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = p.eval(center - x)?;
        let f2 = p.eval(center + x)?;
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(floor);
    }
    Ok(Segment { a, b, value, err })
}

fn gauss_kronrod(p: &QuadratureProblem<'_>) -> Result<QuadratureResult> {
    let first = qk21(p, p.lo, p.hi)?;
    let mut evals = 21;
    let mut total = first.value;
    let mut total_err = first.err;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    loop {
        let target = 0.5 * p.tol * (1.0 + total.abs());
        if total_err <= target {
            break;
        }
        if evals + 42 > p.max_evals {
            return Err(Error::BudgetExceeded { budget: p.max_evals, estimate: total_err });
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval at machine resolution; accept its error
            heap.push(Segment { err: 0.0, ..worst });
            total_err = heap.iter().map(|s| s.err).sum();
            if heap.peek().is_some_and(|s| s.err == 0.0) {
                break;
            }
            continue;
        }
        let left = qk21(p, worst.a, mid)?;
        let right = qk21(p, mid, worst.b)?;
        evals += 42;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        if heap.len() % 64 == 0 {
            // refresh running sums against drift
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.err).sum();
        }
    }
    let value: f64 = heap.iter().map(|s| s.value).sum();
    let err: f64 = heap.iter().map(|s| s.err).sum();
    Ok(QuadratureResult { value, err_estimate: err, evaluations: evals })
}

/// Tanh-sinh over `[lo, hi]` with step halving until successive levels agree.
fn tanh_sinh(p: &QuadratureProblem<'_>) -> Result<QuadratureResult> {
    const T_MAX: f64 = 4.5;
    let r = 0.5 * (p.hi - p.lo);
    let mut evals = 0usize;

    // contribution of node t (weight included, step excluded)
    let node = |t: f64, evals: &mut usize| -> Result<(f64, f64)> {
        let v = FRAC_PI_2 * t.sinh();
        let cv = v.cosh();
        let w = r * FRAC_PI_2 * t.cosh() / (cv * cv);
        if w == 0.0 || !w.is_finite() {
            return Ok((0.0, 0.0));
        }
        // distance to the nearer endpoint, computed without cancellation
        let d = 2.0 * r / (1.0 + (2.0 * v.abs()).exp());
        let x = if t >= 0.0 { p.hi - d } else { p.lo + d };
        if d == 0.0 || x <= p.lo || x >= p.hi {
            return Ok((0.0, 0.0));
        }
        *evals += 1;
        let y = p.eval(x)?;
        Ok((w * y, (w * y).abs()))
    };

    let mut h = 1.0;
    let (mut sum, mut abs_sum) = node(0.0, &mut evals)?;
    let mut k = 1;
    while k as f64 * h <= T_MAX {
        let t = k as f64 * h;
        for s in [t, -t] {
            let (a, b) = node(s, &mut evals)?;
            sum += a;
            abs_sum += b;
        }
        k += 1;
    }
    let mut estimate = sum * h;
    let mut err = f64::INFINITY;
    for _level in 0..20 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= T_MAX {
            let t = k as f64 * h;
            for s in [t, -t] {
                let (a, b) = node(s, &mut evals)?;
                sum += a;
                abs_sum += b;
            }
            k += 2;
        }
        let next = sum * h;
        let diff = (next - estimate).abs();
        estimate = next;
        let roundoff = 64.0 * f64::EPSILON * abs_sum * h;
        err = diff.max(roundoff);
        if diff <= 0.5 * p.tol * (1.0 + estimate.abs()) || diff <= roundoff {
            return Ok(QuadratureResult { value: estimate, err_estimate: err, evaluations: evals });
        }
        if evals > p.max_evals {
            break;
        }
    }
    Err(Error::BudgetExceeded { budget: p.max_evals, estimate: err })
}

/// Central difference of order 1 or 2, Richardson-refined over `h` and `2h`.
pub fn finite_diff(f: impl Fn(f64) -> f64, q: f64, order: u8, h: f64) -> f64 {
    match order {
        1 => {
            let d = |s: f64| (f(q + s) - f(q - s)) / (2.0 * s);
            (4.0 * d(h) - d(2.0 * h)) / 3.0
        }
        2 => {
            let f0 = f(q);
            let d = |s: f64| (f(q + s) - 2.0 * f0 + f(q - s)) / (s * s);
            (4.0 * d(h) - d(2.0 * h)) / 3.0
        }
        _ => panic!("finite_diff supports order 1 or 2, got {order}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{digamma, ln_gamma};
    use std::f64::consts::PI;

    #[test]
    fn log_endpoint() {
        let r = integrate(&QuadratureProblem::new(f64::ln, 0.0, 1.0).singular_lo(true)).unwrap();
        assert!((r.value + 1.0).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn log_sine() {
        let p = QuadratureProblem::new(|q: f64| (PI * q).sin().ln(), 0.0, 1.0).singular_both();
        let r = integrate(&p).unwrap();
        assert!((r.value + 2f64.ln()).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn raabe() {
        let p = QuadratureProblem::new(ln_gamma, 0.0, 1.0).singular_lo(true);
        let r = integrate(&p).unwrap();
        assert!((r.value - 0.5 * (2.0 * PI).ln()).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn polynomials_exact() {
        for deg in 0..=10 {
            let p = QuadratureProblem::new(move |x: f64| (deg as f64 + 1.0) * x.powi(deg), -0.3, 1.7);
            let r = integrate(&p).unwrap();
            let want = 1.7f64.powi(deg + 1) - (-0.3f64).powi(deg + 1);
            assert!((r.value - want).abs() <= 1e-13 * want.abs().max(1.0), "deg {deg}");
        }
    }

    #[test]
    fn algebraic_endpoint() {
        let p = QuadratureProblem::new(|x: f64| x.powf(-0.5) * (1.0 - x).powf(-0.25), 0.0, 1.0).singular_both();
        let r = integrate(&p).unwrap();
        // B(1/2, 3/4)
        let want = (ln_gamma(0.5) + ln_gamma(0.75) - ln_gamma(1.25)).exp();
        assert!((r.value - want).abs() < 1e-10, "{} vs {want}", r.value);
    }

    #[test]
    fn budget_and_bad_input() {
        let p = QuadratureProblem::new(|x: f64| (1.0 / x).sin(), 1e-9, 1.0).max_evals(500);
        assert!(matches!(integrate(&p), Err(Error::BudgetExceeded { .. })));
        let p = QuadratureProblem::new(|x: f64| x, 1.0, 0.0);
        assert!(integrate(&p).is_err());
        let p = QuadratureProblem::new(|x: f64| 1.0 / (x - 0.5), 0.0, 1.0);
        assert!(matches!(integrate(&p), Err(Error::NonFiniteSample(_))));
    }

    #[test]
    fn finite_differences() {
        assert!((finite_diff(|x| x * x, 3.0, 1, 1e-3) - 6.0).abs() < 1e-10);
        assert!((finite_diff(ln_gamma, 2.0, 1, 1e-3) - digamma(2.0)).abs() < 1e-10);
        assert!((finite_diff(f64::exp, 0.0, 2, 1e-3) - 1.0).abs() < 1e-8);
    }
}
