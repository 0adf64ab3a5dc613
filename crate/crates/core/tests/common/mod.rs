#![allow(dead_code)]

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite Gauss–Legendre on [a, b] with `panels` equal pieces.
pub fn composite(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let rule = gauss_legendre(20);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mut s = 0.0;
        for &(x, w) in &rule {
            s += w * f(lo + 0.5 * h * (x + 1.0));
        }
        total += 0.5 * h * s;
    }
    total
}

/// Hermite's integral for `∂^order/∂s^order ζ(s, q)`, order ≤ 2:
/// ζ(s,q) = q^{-s}/2 + q^{1-s}/(s-1) + 2∫_0^∞ sin(s atan(t/q)) (q²+t²)^{-s/2} / (e^{2πt} - 1) dt.
pub fn hermite_zeta(s: f64, q: f64, order: usize) -> f64 {
    let lq = q.ln();
    let u = 1.0 / (s - 1.0);
    let boundary = match order {
        0 => 0.5 * q.powf(-s) + q.powf(1.0 - s) * u,
        1 => -0.5 * lq * q.powf(-s) + q.powf(1.0 - s) * (-lq * u - u * u),
        _ => 0.5 * lq * lq * q.powf(-s) + q.powf(1.0 - s) * (lq * lq * u + 2.0 * lq * u * u + 2.0 * u * u * u),
    };
    let f = |t: f64| {
        if t == 0.0 {
            return 0.0;
        }
        let th = (t / q).atan();
        let lr = 0.5 * (q * q + t * t).ln();
        let r = (-s * lr).exp();
        let (sn, cs) = (s * th).sin_cos();
        let g = match order {
            0 => sn,
            1 => th * cs - lr * sn,
            _ => -th * th * sn - 2.0 * th * lr * cs + lr * lr * sn,
        };
        2.0 * g * r / (2.0 * PI * t).exp_m1()
    };
    let upper = 12.0 + s.abs().max(q) * 1.5;
    let knee = q.min(1.0);
    boundary + composite(&f, 0.0, knee, 200) + composite(&f, knee, upper, 400)
}
