use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    CheckKind, Ctx, IntegralIdentity, Point, Suite, ALGEBRAIC_TOL, CONSTANTS_TOL, FINITE_DIFFERENCE_TOL, ORACLE_TOL,
    PRIMITIVE_TOL,
};
use crate::bernoulli::{bernoulli_number, bernoulli_poly, binomial, factorial, harmonic, shifted_bernoulli_sum};
use crate::constants::{CONSTANTS, ZETA3, ZETA5};
use crate::error::Result;
use crate::eval::SeriesControl;
use crate::families::{
    a_k, a_k_fourier, a_k_shifted, clausen, glaisher_log, gosper_negapolygamma_with_budget, gosper_offset,
    negapolygamma, negapolygamma_alt_form, negapolygamma_fourier, polygamma, FamilyIndex,
};
use crate::gamma;
use crate::hurwitz::{
    hurwitz_zeta, hurwitz_zeta_dq, hurwitz_zeta_dz, riemann_zeta, riemann_zeta_d2z, riemann_zeta_dz, ZetaArgs,
};
use crate::integrals::*;
use crate::quadrature::{finite_diff, integrate, QuadratureProblem};

const PRIMITIVE_DRAWS: usize = 20;
const QUAD_TOL: f64 = 1e-12;
const FD_STEP: f64 = 1e-3;

use Suite::*;

fn quad(ctx: &Ctx, f: impl Fn(f64) -> f64 + Send + Sync, lo: f64, hi: f64) -> Result<f64> {
    quad_flags(ctx, f, lo, hi, false, false)
}

fn quad_flags(ctx: &Ctx, f: impl Fn(f64) -> f64 + Send + Sync, lo: f64, hi: f64, slo: bool, shi: bool) -> Result<f64> {
    let p = QuadratureProblem::new(f, lo, hi).tol(QUAD_TOL).singular_lo(slo).singular_hi(shi).max_evals(ctx.max_evals);
    Ok(integrate(&p)?.value)
}

fn fam(k: usize) -> FamilyIndex {
    FamilyIndex::new(k).expect("registry family orders lie in 1..=40")
}

fn zeta(z: f64, q: f64) -> f64 {
    hurwitz_zeta(ZetaArgs::new(z, q).expect("grid keeps zeta arguments valid")).map(|r| r.value).unwrap_or(f64::NAN)
}

fn ak(k: usize, q: f64) -> Result<f64> {
    Ok(a_k(fam(k), q)?.value)
}

fn npg(k: usize, q: f64) -> Result<f64> {
    Ok(negapolygamma(fam(k), q)?.value)
}

/// Integrand wrapper: domain errors inside an integrand surface as NaN, which the
/// quadrature reports as a non-finite sample.
fn npg_or_nan(k: usize, q: f64) -> f64 {
    npg(k, q).unwrap_or(f64::NAN)
}

fn sign(j: usize) -> f64 {
    if j % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn interval(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> (f64, f64) {
    loop {
        let u: f64 = rng.gen_range(lo..hi);
        let v: f64 = rng.gen_range(lo..hi);
        if (u - v).abs() >= 0.05 {
            return (u.min(v), u.max(v));
        }
    }
}

/// `(a, b)` with `a + b q ≥ floor` on `[q1, q2]`; `b` negative about a third of the time.
fn affine(rng: &mut ChaCha8Rng, q1: f64, q2: f64, floor: f64) -> (f64, f64) {
    let mut b: f64 = rng.gen_range(0.4..2.0);
    if rng.gen_bool(0.3) {
        b = -b;
    }
    let low = (b * q1).min(b * q2);
    let a = floor - low + rng.gen_range(0.0..1.0);
    (a, b)
}

fn draws(rng: &mut ChaCha8Rng, count: usize, mut f: impl FnMut(&mut ChaCha8Rng) -> Point) -> Vec<Point> {
    (0..count).map(|_| f(rng)).collect()
}

fn product<const N: usize>(keys: [&'static str; N], values: &[[f64; N]]) -> Vec<Point> {
    values.iter().map(|v| Point(keys.iter().copied().zip(v.iter().copied()).collect())).collect()
}

fn k_q_grid(ks: std::ops::RangeInclusive<usize>, qs: &[f64]) -> Vec<Point> {
    let mut out = Vec::new();
    for k in ks {
        for &q in qs {
            out.push(Point::new(&[("k", k as f64), ("q", q)]));
        }
    }
    out
}

const TENTHS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

fn prim_params(p: &Point) -> PrimitiveParams {
    let get = |k: &str| p.entries().iter().find(|(n, _)| *n == k).map(|(_, v)| *v);
    PrimitiveParams {
        n: get("n").unwrap_or(0.0) as usize,
        m: get("m").unwrap_or(0.0) as i64,
        z: get("z").unwrap_or(0.0),
        a: get("a").unwrap_or(0.0),
        b: get("b").unwrap_or(1.0),
        c: get("c").unwrap_or(0.0),
        d: get("d").unwrap_or(1.0),
        q: 0.0,
    }
}

fn primitive_difference(
    p: &Point,
    f: impl Fn(&PrimitiveParams) -> Result<ClosedFormValue>,
    ctx: &Ctx,
    g: impl Fn(&PrimitiveParams, f64) -> f64 + Send + Sync,
) -> Result<(f64, f64)> {
    let pp = prim_params(p);
    let (q1, q2) = (p.get("q1"), p.get("q2"));
    let lhs = f(&pp.at(q2))?.value - f(&pp.at(q1))?.value;
    let rhs = quad(ctx, |q| g(&pp, q), q1, q2)?;
    Ok((lhs, rhs))
}

fn zeta_draw(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-3.0..0.8)
}

fn hermite_zeta(ctx: &Ctx, s: f64, q: f64) -> Result<f64> {
    let f = move |t: f64| (s * (t / q).atan()).sin() / ((q * q + t * t).powf(0.5 * s) * (2.0 * PI * t).exp_m1());
    let tail = quad(ctx, f, 0.0, 40.0)?;
    Ok(q.powf(-s) / 2.0 + q.powf(1.0 - s) / (s - 1.0) + 2.0 * tail)
}

fn zeta_moment_unit_integrand(n: usize, z: f64) -> impl Fn(f64) -> f64 + Send + Sync {
    move |q| q.powi(n as i32) * zeta(z, q)
}

pub(super) fn all() -> &'static [IntegralIdentity] {
    static REGISTRY: OnceLock<Vec<IntegralIdentity>> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

fn build() -> Vec<IntegralIdentity> {
    let mut v = Vec::new();
    v.extend(core_identities());
    v.extend(ak_identities());
    v.extend(negapoly_identities());
    v.extend(constant_identities());
    v.extend(primitive_identities());
    v.extend(definite_identities());
    v
}

fn core_identities() -> Vec<IntegralIdentity> {
    vec![
        IntegralIdentity {
            id: "zeta-shift-recurrence",
            paper_anchor: "ζ(z,q) = q^{-z} + ζ(z,q+1)",
            check_kind: CheckKind::Invariant,
            tol: 1e-12,
            suites: &[Core],
            grid: |rng| {
                draws(rng, 30, |r| {
                    let mut z: f64 = r.gen_range(-10.0..10.0);
                    if (z - 1.0).abs() < 0.05 {
                        z += 0.1;
                    }
                    Point::new(&[("z", z), ("q", r.gen_range(0.05..5.0))])
                })
            },
            check: |p, _| {
                let (z, q) = (p.get("z"), p.get("q"));
                Ok((zeta(z, q), q.powf(-z) + zeta(z, q + 1.0)))
            },
        },
        IntegralIdentity {
            id: "zeta-bernoulli-specialization",
            paper_anchor: "ζ(1-m,q) = -B_m(q)/m",
            check_kind: CheckKind::Invariant,
            tol: 1e-11,
            suites: &[Core],
            grid: |rng| draws(rng, 20, |r| Point::new(&[("m", r.gen_range(1..=10) as f64), ("q", r.gen_range(0.01..3.0))])),
            check: |p, _| {
                let (m, q) = (p.index("m"), p.get("q"));
                Ok((zeta(1.0 - m as f64, q), -bernoulli_poly(m, q)? / m as f64))
            },
        },
        IntegralIdentity {
            id: "zeta-half-argument",
            paper_anchor: "ζ(z,1/2) = (2^z - 1) ζ(z)",
            check_kind: CheckKind::Invariant,
            tol: 1e-12,
            suites: &[Core],
            grid: |rng| {
                draws(rng, 20, |r| {
                    let mut z: f64 = r.gen_range(-12.0..12.0);
                    if (z - 1.0).abs() < 0.05 {
                        z -= 0.1;
                    }
                    Point::new(&[("z", z)])
                })
            },
            check: |p, _| {
                let z = p.get("z");
                Ok((zeta(z, 0.5), (z.exp2() - 1.0) * riemann_zeta(z)?.value))
            },
        },
        IntegralIdentity {
            id: "zeta-dz-finite-difference",
            paper_anchor: "∂_z ζ(z,q)",
            check_kind: CheckKind::Invariant,
            tol: 1e-7,
            suites: &[Core],
            grid: |rng| {
                draws(rng, 20, |r| {
                    let mut z: f64 = r.gen_range(-6.0..6.0);
                    if (z - 1.0).abs() < 0.1 {
                        z += 0.25;
                    }
                    Point::new(&[("z", z), ("q", r.gen_range(0.2..4.0))])
                })
            },
            check: |p, _| {
                let (z, q) = (p.get("z"), p.get("q"));
                let d = hurwitz_zeta_dz(ZetaArgs::new(z, q)?)?.value;
                Ok((d, finite_diff(|t| zeta(t, q), z, 1, 1e-3)))
            },
        },
        IntegralIdentity {
            id: "zeta-dq-finite-difference",
            paper_anchor: "∂_q ζ(z,q) = -z ζ(z+1,q)",
            check_kind: CheckKind::Invariant,
            tol: 1e-7,
            suites: &[Core],
            grid: |rng| {
                draws(rng, 20, |r| {
                    let mut z: f64 = r.gen_range(-6.0..6.0);
                    if z.abs() < 0.1 || (z - 1.0).abs() < 0.1 {
                        z += 0.25;
                    }
                    Point::new(&[("z", z), ("q", r.gen_range(0.3..4.0))])
                })
            },
            check: |p, _| {
                let (z, q) = (p.get("z"), p.get("q"));
                let d = hurwitz_zeta_dq(ZetaArgs::new(z, q)?)?.value;
                Ok((d, finite_diff(|t| zeta(z, t), q, 1, 1e-3)))
            },
        },
        IntegralIdentity {
            id: "zeta-hermite-integral",
            paper_anchor: "ζ(z,q) = Σ_{n≥0} (n+q)^{-z}",
            check_kind: CheckKind::CrossPath,
            tol: ORACLE_TOL,
            suites: &[Core],
            grid: |rng| {
                draws(rng, 20, |r| {
                    let mut z: f64 = r.gen_range(-4.0..4.0);
                    if (z - 1.0).abs() < 0.1 {
                        z += 0.3;
                    }
                    Point::new(&[("z", z), ("q", r.gen_range(0.3..3.0))])
                })
            },
            check: |p, ctx| {
                let (z, q) = (p.get("z"), p.get("q"));
                Ok((zeta(z, q), hermite_zeta(ctx, z, q)?))
            },
        },
        IntegralIdentity {
            id: "polygamma-zeta-relation",
            paper_anchor: "ψ^(m)(q) = (-1)^{m+1} m! ζ(m+1,q)",
            check_kind: CheckKind::CrossPath,
            tol: ALGEBRAIC_TOL,
            suites: &[Core],
            grid: |rng| draws(rng, 20, |r| Point::new(&[("q", r.gen_range(0.05..6.0))])),
            check: |p, _| {
                let q = p.get("q");
                Ok((polygamma(1, q)?.value, gamma::trigamma(q)))
            },
        },
        IntegralIdentity {
            id: "digamma-limit",
            paper_anchor: "lim_{z→1} [ζ(z,q) - 1/(z-1)] = -ψ(q)",
            check_kind: CheckKind::Invariant,
            tol: ORACLE_TOL,
            suites: &[Core, Constants],
            grid: |rng| draws(rng, 10, |r| Point::new(&[("q", r.gen_range(0.1..5.0))])),
            check: |p, _| {
                let q = p.get("q");
                let e = (-20f64).exp2();
                let sym = 0.5 * ((zeta(1.0 + e, q) - 1.0 / e) + (zeta(1.0 - e, q) + 1.0 / e));
                Ok((sym, -gamma::digamma(q)))
            },
        },
        IntegralIdentity {
            id: "bernoulli-shift",
            paper_anchor: "B_m(q+1) = B_m(q) + m q^{m-1}",
            check_kind: CheckKind::Invariant,
            tol: ALGEBRAIC_TOL,
            suites: &[Core],
            grid: |rng| draws(rng, 20, |r| Point::new(&[("m", r.gen_range(1..=20) as f64), ("q", r.gen_range(-2.0..3.0))])),
            check: |p, _| {
                let (m, q) = (p.index("m"), p.get("q"));
                Ok((bernoulli_poly(m, q + 1.0)?, bernoulli_poly(m, q)? + m as f64 * q.powi(m as i32 - 1)))
            },
        },
        IntegralIdentity {
            id: "bernoulli-reflection",
            paper_anchor: "(-1)^j B_{j+2}(q) = B_{j+2}(1-q)",
            check_kind: CheckKind::Invariant,
            tol: ALGEBRAIC_TOL,
            suites: &[Core],
            grid: |rng| draws(rng, 20, |r| Point::new(&[("j", r.gen_range(0..=18) as f64), ("q", r.gen_range(-1.0..2.0))])),
            check: |p, _| {
                let (j, q) = (p.index("j"), p.get("q"));
                Ok((sign(j) * bernoulli_poly(j + 2, q)?, bernoulli_poly(j + 2, 1.0 - q)?))
            },
        },
        IntegralIdentity {
            id: "bernoulli-derivative",
            paper_anchor: "B'_k(q) = k B_{k-1}(q)",
            check_kind: CheckKind::Invariant,
            tol: FINITE_DIFFERENCE_TOL,
            suites: &[Core],
            grid: |rng| draws(rng, 20, |r| Point::new(&[("k", r.gen_range(1..=12) as f64), ("q", r.gen_range(-1.0..2.0))])),
            check: |p, _| {
                let (k, q) = (p.index("k"), p.get("q"));
                let d = finite_diff(|t| bernoulli_poly(k, t).unwrap_or(f64::NAN), q, 1, FD_STEP);
                Ok((d, k as f64 * bernoulli_poly(k - 1, q)?))
            },
        },
        IntegralIdentity {
            id: "bernoulli-zero-mean",
            paper_anchor: "∫_0^1 B_k(q) dq = 0",
            check_kind: CheckKind::Invariant,
            tol: ORACLE_TOL,
            suites: &[Core],
            grid: |_| (1..=12).map(|k| Point::new(&[("k", k as f64)])).collect(),
            check: |p, ctx| {
                let k = p.index("k");
                Ok((quad(ctx, |q| bernoulli_poly(k, q).unwrap_or(f64::NAN), 0.0, 1.0)?, 0.0))
            },
        },
        IntegralIdentity {
            id: "bernoulli-addition",
            paper_anchor: "B_{p+1}(x+y) = Σ_r C(p+1,r) B_r(x) y^{p+1-r}",
            check_kind: CheckKind::Invariant,
            tol: ALGEBRAIC_TOL,
            suites: &[Core],
            grid: |rng| {
                draws(rng, 20, |r| {
                    Point::new(&[("p", r.gen_range(0..=10) as f64), ("x", r.gen_range(-1.0..2.0)), ("y", r.gen_range(-1.0..1.0))])
                })
            },
            check: |p, _| {
                let (pp, x, y) = (p.index("p"), p.get("x"), p.get("y"));
                let mut s = 0.0;
                for r in 0..=pp + 1 {
                    s += binomial(pp + 1, r) * bernoulli_poly(r, x)? * y.powi((pp + 1 - r) as i32);
                }
                Ok((bernoulli_poly(pp + 1, x + y)?, s))
            },
        },
        IntegralIdentity {
            id: "shifted-bernoulli-sum",
            paper_anchor: "Σ_r (-1)^r C(p+1,r+1) q^{p-r} B_{r+1}(a+bq)/b^{r+1} = q^{p+1} + (-1)^p B_{p+1}(a)/b^{p+1}",
            check_kind: CheckKind::Invariant,
            tol: ALGEBRAIC_TOL,
            suites: &[Core],
            grid: |rng| {
                draws(rng, 20, |r| {
                    let mut b: f64 = r.gen_range(0.5..2.0);
                    if r.gen_bool(0.5) {
                        b = -b;
                    }
                    Point::new(&[
                        ("p", r.gen_range(0..=10) as f64),
                        ("a", r.gen_range(-1.0..1.0)),
                        ("b", b),
                        ("q", r.gen_range(-1.0..1.0)),
                    ])
                })
            },
            check: |p, _| {
                let (pp, a, b, q) = (p.index("p"), p.get("a"), p.get("b"), p.get("q"));
                let lhs = shifted_bernoulli_sum(pp, a, b, q)?;
                Ok((lhs, q.powi(pp as i32 + 1) + sign(pp) * bernoulli_poly(pp + 1, a)? / b.powi(pp as i32 + 1)))
            },
        },
    ]
}

fn a2_special(case: usize) -> (f64, f64) {
    let zp = CONSTANTS.zeta_prime_minus1;
    let g = CONSTANTS.catalan;
    match case {
        0 => (1.0, 2.0 * zp),
        1 => (0.5, -zp - LN_2 / 12.0),
        2 => (0.25, -0.25 * zp + g / (2.0 * PI)),
        3 => (2.0, 2.0 * zp),
        4 => (3.0, 2.0 * zp + 4.0 * LN_2),
        5 => (1.5, -zp - 13.0 / 12.0 * LN_2),
        _ => (1.25, -0.25 * zp + g / (2.0 * PI) - LN_2),
    }
}

fn ak_identities() -> Vec<IntegralIdentity> {
    vec![
        IntegralIdentity {
            id: "ak-shift-recurrence",
            paper_anchor: "A_k(q+1) = A_k(q) + k q^{k-1} ln q",
            check_kind: CheckKind::Invariant,
            tol: ALGEBRAIC_TOL,
            suites: &[Ak],
            grid: |rng| draws(rng, 24, |r| Point::new(&[("k", r.gen_range(1..=8) as f64), ("q", r.gen_range(0.1..5.0))])),
            check: |p, _| {
                let (k, q) = (p.index("k"), p.get("q"));
                Ok((ak(k, q + 1.0)?, ak(k, q)? + k as f64 * q.powi(k as i32 - 1) * q.ln()))
            },
        },
        IntegralIdentity {
            id: "ak-shifted-cross-path",
            paper_anchor: "A_k(q+1) = A_k(q) + k q^{k-1} ln q",
            check_kind: CheckKind::CrossPath,
            tol: ALGEBRAIC_TOL,
            suites: &[Ak],
            grid: |rng| draws(rng, 20, |r| Point::new(&[("k", r.gen_range(1..=8) as f64), ("q", r.gen_range(1.05..6.0))])),
            check: |p, _| {
                let (k, q) = (p.index("k"), p.get("q"));
                Ok((ak(k, q)?, a_k_shifted(fam(k), q)?.value))
            },
        },
        IntegralIdentity {
            id: "ak-endpoints",
            paper_anchor: "A_k(0) = A_k(1) = k ζ'(1-k)",
            check_kind: CheckKind::Invariant,
            tol: 1e-7,
            suites: &[Ak],
            grid: |_| k_q_grid(2..=8, &[0.0, 1e-10, 1.0]),
            check: |p, _| {
                let (k, q) = (p.index("k"), p.get("q"));
                Ok((ak(k, q)?, k as f64 * riemann_zeta_dz(1.0 - k as f64)?.value))
            },
        },
        IntegralIdentity {
            id: "ak-zero-mean",
            paper_anchor: "∫_0^1 A_k(q) dq = 0",
            check_kind: CheckKind::Invariant,
            tol: ORACLE_TOL,
            suites: &[Ak],
            grid: |_| (1..=8).map(|k| Point::new(&[("k", k as f64)])).collect(),
            check: |p, ctx| {
                let k = p.index("k");
                let v = quad_flags(ctx, move |q| ak(k, q).unwrap_or(f64::NAN), 0.0, 1.0, k == 1, false)?;
                Ok((v, 0.0))
            },
        },
        IntegralIdentity {
            id: "ak-derivative-ladder",
            paper_anchor: "A'_{k+1}(q) = (k+1) [A_k(q) + B_k(q)/k]",
            check_kind: CheckKind::Invariant,
            tol: 1e-7,
            suites: &[Ak],
            grid: |rng| draws(rng, 20, |r| Point::new(&[("k", r.gen_range(1..=6) as f64), ("q", r.gen_range(0.2..3.0))])),
            check: |p, _| {
                let (k, q) = (p.index("k"), p.get("q"));
                let d = finite_diff(|t| ak(k + 1, t).unwrap_or(f64::NAN), q, 1, FD_STEP);
                Ok((d, (k + 1) as f64 * (ak(k, q)? + bernoulli_poly(k, q)? / k as f64)))
            },
        },
        IntegralIdentity {
            id: "ak-half-argument",
            paper_anchor: "A_k(1/2) = (-1)^{k-1} B_k 2^{1-k} ln 2 - (1 - 2^{1-k}) k ζ'(1-k)",
            check_kind: CheckKind::Invariant,
            tol: 1e-11,
            suites: &[Ak],
            grid: |_| (1..=8).map(|k| Point::new(&[("k", k as f64)])).collect(),
            check: |p, _| {
                let k = p.index("k");
                let w = (1.0 - k as f64).exp2();
                let rhs = sign(k - 1) * bernoulli_number(k)? * w * LN_2
                    - (1.0 - w) * k as f64 * riemann_zeta_dz(1.0 - k as f64)?.value;
                Ok((ak(k, 0.5)?, rhs))
            },
        },
        IntegralIdentity {
            id: "a2-special-values",
            paper_anchor: "A_2(1/4) = -ζ'(-1)/4 + G/(2π)",
            check_kind: CheckKind::DefiniteValue,
            tol: 1e-11,
            suites: &[Ak, Constants],
            grid: |_| (0..7).map(|c| Point::new(&[("case", c as f64), ("q", a2_special(c).0)])).collect(),
            check: |p, _| {
                let (q, printed) = a2_special(p.index("case"));
                Ok((ak(2, q)?, printed))
            },
        },
        IntegralIdentity {
            id: "ak-fourier-cross-path",
            paper_anchor: "A_k(q) via the Hurwitz Fourier series",
            check_kind: CheckKind::CrossPath,
            tol: PRIMITIVE_TOL,
            suites: &[Ak],
            grid: |_| k_q_grid(2..=6, &TENTHS),
            check: |p, _| {
                let (k, q) = (p.index("k"), p.get("q"));
                Ok((ak(k, q)?, a_k_fourier(fam(k), q, &SeriesControl::fourier())?.value))
            },
        },
    ]
}

fn negapoly_identities() -> Vec<IntegralIdentity> {
    vec![
        IntegralIdentity {
            id: "negapoly-alt-form",
            paper_anchor: "ψ^(-k)(q) = [ζ'(1-k,q) + (ψ(k) + γ) ζ(1-k,q)]/(k-1)!",
            check_kind: CheckKind::CrossPath,
            tol: ALGEBRAIC_TOL,
            suites: &[Negapoly],
            grid: |rng| draws(rng, 20, |r| Point::new(&[("k", r.gen_range(1..=8) as f64), ("q", r.gen_range(0.05..4.0))])),
            check: |p, _| {
                let (k, q) = (p.index("k"), p.get("q"));
                Ok((npg(k, q)?, negapolygamma_alt_form(fam(k), q)?.value))
            },
        },
        IntegralIdentity {
            id: "negapoly-zero-mean",
            paper_anchor: "∫_0^1 ψ^(-k)(q) dq = 0",
            check_kind: CheckKind::Invariant,
            tol: ORACLE_TOL,
            suites: &[Negapoly],
            grid: |_| (1..=6).map(|k| Point::new(&[("k", k as f64)])).collect(),
            check: |p, ctx| {
                let k = p.index("k");
                Ok((quad_flags(ctx, move |q| npg_or_nan(k, q), 0.0, 1.0, k == 1, false)?, 0.0))
            },
        },
        IntegralIdentity {
            id: "negapoly-ladder",
            paper_anchor: "d/dq ψ^(-k)(q) = ψ^(-k+1)(q)",
            check_kind: CheckKind::Invariant,
            tol: 1e-7,
            suites: &[Negapoly],
            grid: |rng| draws(rng, 20, |r| Point::new(&[("k", r.gen_range(1..=6) as f64), ("q", r.gen_range(0.2..3.0))])),
            check: |p, _| {
                let (k, q) = (p.index("k"), p.get("q"));
                let d = finite_diff(|t| npg_or_nan(k, t), q, 1, FD_STEP);
                let rhs = if k == 1 { gamma::digamma(q) } else { npg(k - 1, q)? };
                Ok((d, rhs))
            },
        },
        IntegralIdentity {
            id: "negapoly-fourier-cross-path",
            paper_anchor: "ψ^(-k)(q) Fourier expansion",
            check_kind: CheckKind::CrossPath,
            tol: PRIMITIVE_TOL,
            suites: &[Negapoly],
            grid: |_| k_q_grid(2..=6, &TENTHS),
            check: |p, _| {
                let (k, q) = (p.index("k"), p.get("q"));
                Ok((npg(k, q)?, negapolygamma_fourier(fam(k), q, &SeriesControl::fourier())?.value))
            },
        },
        IntegralIdentity {
            id: "negapoly-shift",
            paper_anchor: "ψ^(-k)(q+1) = ψ^(-k)(q) + q^{k-1}/(k-1)! [ln q - H_{k-1}]",
            check_kind: CheckKind::Invariant,
            tol: ALGEBRAIC_TOL,
            suites: &[Negapoly],
            grid: |rng| draws(rng, 20, |r| Point::new(&[("k", r.gen_range(1..=6) as f64), ("q", r.gen_range(0.1..5.0))])),
            check: |p, _| {
                let (k, q) = (p.index("k"), p.get("q"));
                let step = q.powi(k as i32 - 1) / factorial(k - 1) * (q.ln() - harmonic(k - 1));
                Ok((npg(k, q + 1.0)?, npg(k, q)? + step))
            },
        },
        IntegralIdentity {
            id: "negapoly-endpoints",
            paper_anchor: "ψ^(-1-r)(1) = ψ^(-1-r)(0)",
            check_kind: CheckKind::Invariant,
            tol: ALGEBRAIC_TOL,
            suites: &[Negapoly],
            grid: |_| (1..=6).map(|r| Point::new(&[("r", r as f64)])).collect(),
            check: |p, _| {
                let r = p.index("r");
                Ok((npg(1 + r, 1.0)?, npg(1 + r, 0.0)?))
            },
        },
        IntegralIdentity {
            id: "gosper-glaisher-cross-path",
            paper_anchor: "ψ^(-k)(q) - ψ_{-k}(q) = Σ_{r<k} q^{k-1-r} [ζ'(-r) + H_r ζ(-r)] / (r! (k-1-r)!)",
            check_kind: CheckKind::CrossPath,
            tol: PRIMITIVE_TOL,
            suites: &[Negapoly],
            grid: |_| k_q_grid(2..=5, &[0.3, 0.7, 1.2, 2.0]),
            check: |p, ctx| {
                let (k, q) = (p.index("k"), p.get("q"));
                let g = gosper_negapolygamma_with_budget(fam(k), q, ctx.max_evals)?.value;
                Ok((npg(k, q)?, g + gosper_offset(fam(k), q)?))
            },
        },
    ]
}

fn constant_identities() -> Vec<IntegralIdentity> {
    vec![
        IntegralIdentity {
            id: "zeta-prime-minus-one-functional",
            paper_anchor: "ζ'(-1) = ζ'(2)/(2π²) - (2 ln√(2π) + γ - 1)/12",
            check_kind: CheckKind::CrossPath,
            tol: 1e-12,
            suites: &[Constants],
            grid: |_| vec![Point::new(&[])],
            check: |_, _| {
                let direct = hurwitz_zeta_dz(ZetaArgs::new(-1.0, 1.0)?)?.value;
                Ok((direct, CONSTANTS.zeta_prime_minus1_from(riemann_zeta_dz(2.0)?.value)))
            },
        },
        IntegralIdentity {
            id: "zeta-prime-zero",
            paper_anchor: "ζ'(0) = -ln√(2π)",
            check_kind: CheckKind::DefiniteValue,
            tol: CONSTANTS_TOL,
            suites: &[Constants],
            grid: |_| vec![Point::new(&[])],
            check: |_, _| Ok((riemann_zeta_dz(0.0)?.value, -CONSTANTS.log_sqrt_2pi)),
        },
        IntegralIdentity {
            id: "zeta-prime-negative-even",
            paper_anchor: "ζ'(-2k) = (-1)^k (2k)! ζ(2k+1) / (2 (2π)^{2k})",
            check_kind: CheckKind::CrossPath,
            tol: CONSTANTS_TOL,
            suites: &[Constants],
            grid: |_| (1..=5).map(|k| Point::new(&[("k", k as f64)])).collect(),
            check: |p, _| {
                let k = p.index("k");
                let rhs = sign(k) * factorial(2 * k) * riemann_zeta(2.0 * k as f64 + 1.0)?.value
                    / (2.0 * (2.0 * PI).powi(2 * k as i32));
                Ok((riemann_zeta_dz(-2.0 * k as f64)?.value, rhs))
            },
        },
        IntegralIdentity {
            id: "glaisher-constants",
            paper_anchor: "ln A_r = -[ζ'(-r) + H_r ζ(-r)]",
            check_kind: CheckKind::DefiniteValue,
            tol: CONSTANTS_TOL,
            suites: &[Constants],
            grid: |_| (0..=2).map(|r| Point::new(&[("r", r as f64)])).collect(),
            check: |p, _| {
                let r = p.index("r");
                // Reference values: ln√(2π), Glaisher–Kinkelin ln A, and ζ(3)/(4π²).
                let reference = [CONSTANTS.log_sqrt_2pi, 0.248_754_477_033_784_26, ZETA3 / (4.0 * PI * PI)][r];
                Ok((-glaisher_log(r)?, reference))
            },
        },
        IntegralIdentity {
            id: "clausen-special-values",
            paper_anchor: "Cl_n(x) at rational multiples of π",
            check_kind: CheckKind::DefiniteValue,
            tol: CONSTANTS_TOL,
            suites: &[Constants],
            grid: |_| (0..4).map(|c| Point::new(&[("case", c as f64)])).collect(),
            check: |p, _| {
                let ctrl = SeriesControl::fourier();
                let (n, x, expect) = match p.index("case") {
                    0 => (2, PI / 2.0, CONSTANTS.catalan),
                    1 => (3, 0.0, ZETA3),
                    2 => (3, PI, -0.75 * ZETA3),
                    _ => (2, PI / 3.0, 1.014_941_606_409_653_6),
                };
                Ok((clausen(n, x, &ctrl)?.value, expect))
            },
        },
        IntegralIdentity {
            id: "raabe-integral",
            paper_anchor: "∫_0^1 lnΓ(q) dq = ln√(2π)",
            check_kind: CheckKind::DefiniteValue,
            tol: ORACLE_TOL,
            suites: &[Constants],
            grid: |_| vec![Point::new(&[])],
            check: |_, ctx| Ok((quad_flags(ctx, gamma::ln_gamma, 0.0, 1.0, true, false)?, CONSTANTS.log_sqrt_2pi)),
        },
    ]
}

fn primitive_identities() -> Vec<IntegralIdentity> {
    vec![
        IntegralIdentity {
            id: "zeta-moment-primitive",
            paper_anchor: "∫ q^n ζ(z,a+bq) dq = n! Σ_j (-1)^j q^{n-j} ζ(z-j-1,a+bq) / (b^{j+1} (1-z)_{j+1} (n-j)!)",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: |rng| {
                draws(rng, PRIMITIVE_DRAWS, |r| {
                    let (q1, q2) = interval(r, 0.0, 1.5);
                    let (a, b) = affine(r, q1, q2, 0.1);
                    let n = r.gen_range(0..=4) as f64;
                    Point::new(&[("n", n), ("z", zeta_draw(r)), ("a", a), ("b", b), ("q1", q1), ("q2", q2)])
                })
            },
            check: |p, ctx| {
                primitive_difference(p, prim_zeta_moment, ctx, |pp, q| q.powi(pp.n as i32) * zeta(pp.z, pp.a + pp.b * q))
            },
        },
        IntegralIdentity {
            id: "zeta-bernoulli-weight-primitive",
            paper_anchor: "∫ B_m(c+dq) ζ(z,a+bq) dq = m! Σ_j (-1)^j d^j B_{m-j}(c+dq) ζ(z-j-1,a+bq) / (b^{j+1} (1-z)_{j+1} (m-j)!)",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: |rng| {
                draws(rng, PRIMITIVE_DRAWS, |r| {
                    let (q1, q2) = interval(r, 0.0, 1.5);
                    let (a, b) = affine(r, q1, q2, 0.1);
                    Point::new(&[
                        ("m", r.gen_range(0..=4) as f64),
                        ("z", zeta_draw(r)),
                        ("a", a),
                        ("b", b),
                        ("c", r.gen_range(-1.0..1.0)),
                        ("d", r.gen_range(-2.0..2.0)),
                        ("q1", q1),
                        ("q2", q2),
                    ])
                })
            },
            check: |p, ctx| {
                primitive_difference(p, prim_zeta_bernoulli_weight, ctx, |pp, q| {
                    bernoulli_poly(pp.m as usize, pp.c + pp.d * q).unwrap_or(f64::NAN) * zeta(pp.z, pp.a + pp.b * q)
                })
            },
        },
        IntegralIdentity {
            id: "bernoulli-moment-primitive",
            paper_anchor: "∫ q^n B_m(a+bq) dq = n! m!/(n+m+1)! Σ_j (-1)^j q^{n-j} b^{-j-1} C(m+n+1,n-j) B_{m+j+1}(a+bq)",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: |rng| {
                draws(rng, PRIMITIVE_DRAWS, |r| {
                    let (q1, q2) = interval(r, -1.0, 2.0);
                    let (a, b) = affine(r, q1, q2, -1.0);
                    Point::new(&[
                        ("n", r.gen_range(0..=5) as f64),
                        ("m", r.gen_range(0..=6) as f64),
                        ("a", a),
                        ("b", b),
                        ("q1", q1),
                        ("q2", q2),
                    ])
                })
            },
            check: |p, ctx| {
                primitive_difference(p, prim_bernoulli_moment, ctx, |pp, q| {
                    q.powi(pp.n as i32) * bernoulli_poly(pp.m as usize, pp.a + pp.b * q).unwrap_or(f64::NAN)
                })
            },
        },
        IntegralIdentity {
            id: "zeta-selfproduct-primitive",
            paper_anchor: "∫ ζ(z-n,q) ζ(z,q) dq = ½ Σ_{k=1}^n (z-n)_{k-1}/(1-z)_k ζ(z-k,q) ζ(z-n+k-1,q), n odd",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: selfproduct_grid,
            check: |p, ctx| selfproduct_difference(p, ctx, prim_zeta_selfproduct_odd),
        },
        IntegralIdentity {
            id: "zeta-selfproduct-centered-primitive",
            paper_anchor: "∫ ζ(z-2r+1,q) ζ(z,q) dq, paired terms merged around ζ(z-r,q)²",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: selfproduct_grid,
            check: |p, ctx| selfproduct_difference(p, ctx, prim_zeta_selfproduct_centered),
        },
        IntegralIdentity {
            id: "zeta-selfproduct-forms",
            paper_anchor: "∫ ζ(z-n,q) ζ(z,q) dq, terms equal in pairs",
            check_kind: CheckKind::CrossPath,
            tol: 1e-12,
            suites: &[Primitives],
            grid: |rng| {
                draws(rng, PRIMITIVE_DRAWS, |r| {
                    let n = [1.0, 3.0, 5.0, 7.0][r.gen_range(0..4)];
                    Point::new(&[("n", n), ("z", zeta_draw(r)), ("q", r.gen_range(0.2..3.0))])
                })
            },
            check: |p, _| {
                let (n, z, q) = (p.index("n"), p.get("z"), p.get("q"));
                Ok((prim_zeta_selfproduct_odd(n, z, q)?.value, prim_zeta_selfproduct_centered(n, z, q)?.value))
            },
        },
        IntegralIdentity {
            id: "exp-zeta-primitive",
            paper_anchor: "∫ e^q ζ(z,a+bq) dq = e^q Σ_j (-1)^j ζ(z-1-j,a+bq) / (b^{j+1} (1-z)_{j+1})",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: |rng| {
                draws(rng, PRIMITIVE_DRAWS, |r| {
                    let (q1, q2) = interval(r, 0.0, 1.5);
                    let (a, mut b) = affine(r, q1, q2, 0.1);
                    if b.abs() < 0.5 {
                        b = 0.5 * b.signum();
                    }
                    let low = (b * q1).min(b * q2);
                    let a = a.max(0.1 - low);
                    Point::new(&[("z", zeta_draw(r)), ("a", a), ("b", b), ("q1", q1), ("q2", q2)])
                })
            },
            check: |p, ctx| {
                let ctrl = SeriesControl::factorial();
                primitive_difference(p, |pp| prim_exp_zeta(pp, &ctrl), ctx, |pp, q| q.exp() * zeta(pp.z, pp.a + pp.b * q))
            },
        },
        IntegralIdentity {
            id: "exp-bernoulli-primitive",
            paper_anchor: "∫ e^q B_m(a+bq) dq = m! e^q (-1)^m Σ_{j≤m} (-1)^j b^{m-j} B_j(a+bq)/j!",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: |rng| {
                draws(rng, PRIMITIVE_DRAWS, |r| {
                    let (q1, q2) = interval(r, -1.0, 2.0);
                    let (a, b) = affine(r, q1, q2, -1.0);
                    Point::new(&[("m", r.gen_range(0..=8) as f64), ("a", a), ("b", b), ("q1", q1), ("q2", q2)])
                })
            },
            check: |p, ctx| {
                primitive_difference(p, prim_exp_bernoulli, ctx, |pp, q| {
                    q.exp() * bernoulli_poly(pp.m as usize, pp.a + pp.b * q).unwrap_or(f64::NAN)
                })
            },
        },
        IntegralIdentity {
            id: "polygamma-moment-primitive",
            paper_anchor: "∫ q^n ψ^(m)(a+bq) dq = n! Σ_j (-1)^j q^{n-j} ψ^(m-j-1)(a+bq) / (b^{j+1} (n-j)!)",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: |rng| polygamma_family_grid(rng, 1, 4, 0.3),
            check: |p, ctx| {
                primitive_difference(p, prim_polygamma_moment, ctx, |pp, q| {
                    q.powi(pp.n as i32) * polygamma(pp.m as usize, pp.a + pp.b * q).map(|r| r.value).unwrap_or(f64::NAN)
                })
            },
        },
        IntegralIdentity {
            id: "digamma-moment-primitive",
            paper_anchor: "∫ q^n ψ(a+bq) dq = n! Σ_j (-1)^j q^{n-j} ψ^(-j-1)(a+bq) / (b^{j+1} (n-j)!)",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: |rng| polygamma_family_grid(rng, 0, 0, 0.1),
            check: |p, ctx| {
                primitive_difference(p, prim_digamma_moment, ctx, |pp, q| {
                    q.powi(pp.n as i32) * gamma::digamma(pp.a + pp.b * q)
                })
            },
        },
        IntegralIdentity {
            id: "negapoly-moment-primitive",
            paper_anchor: "∫ q^n ψ^(-m)(a+bq) dq = n! Σ_j (-1)^j q^{n-j} ψ^(-m-j-1)(a+bq) / (b^{j+1} (n-j)!)",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives, Negapoly],
            grid: |rng| polygamma_family_grid(rng, 1, 5, 0.1),
            check: |p, ctx| {
                primitive_difference(p, prim_negapolygamma_moment, ctx, |pp, q| {
                    q.powi(pp.n as i32) * npg_or_nan(pp.m as usize, pp.a + pp.b * q)
                })
            },
        },
        IntegralIdentity {
            id: "ak-moment-equivalence",
            paper_anchor: "∫ q^n A_m(a+bq) dq = m! n! Σ_j (-1)^j q^{n-j} [A_{m+j+1} - (H_{m+j} - H_{m-1}) B_{m+j+1}](a+bq) / (b^{j+1} (n-j)! (m+j+1)!)",
            check_kind: CheckKind::CrossPath,
            tol: ALGEBRAIC_TOL,
            suites: &[Primitives, Ak],
            grid: |rng| {
                draws(rng, PRIMITIVE_DRAWS, |r| {
                    let q: f64 = r.gen_range(0.0..2.0);
                    let (a, b) = affine(r, q, q + 0.1, 0.1);
                    Point::new(&[
                        ("n", r.gen_range(0..=4) as f64),
                        ("m", r.gen_range(1..=5) as f64),
                        ("a", a),
                        ("b", b),
                        ("q", q),
                    ])
                })
            },
            check: |p, _| {
                let pp = prim_params(p).at(p.get("q"));
                let m = pp.m as usize;
                let ak_form = prim_ak_moment(&pp)?.value;
                let bern = prim_bernoulli_moment(&pp)?.value;
                let via_ak = (ak_form - harmonic(m - 1) * bern) / factorial(m);
                Ok((via_ak, prim_negapolygamma_moment(&pp)?.value))
            },
        },
        IntegralIdentity {
            id: "loggamma-moment-primitive",
            paper_anchor: "∫ q^n lnΓ(a+bq) dq = ln√(2π) q^{n+1}/(n+1) + n! Σ_j (-1)^j q^{n-j} ψ^(-2-j)(a+bq) / (b^{j+1} (n-j)!)",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: |rng| polygamma_family_grid(rng, 0, 0, 0.1),
            check: |p, ctx| {
                primitive_difference(p, prim_loggamma_moment, ctx, |pp, q| {
                    q.powi(pp.n as i32) * gamma::ln_gamma(pp.a + pp.b * q)
                })
            },
        },
        IntegralIdentity {
            id: "loggamma-moment-specializations",
            paper_anchor: "∫ q^n lnΓ(q) dq and ∫ q^n lnΓ(1-q) dq",
            check_kind: CheckKind::CrossPath,
            tol: 1e-12,
            suites: &[Primitives],
            grid: |rng| {
                draws(rng, 10, |r| Point::new(&[("n", r.gen_range(0..=5) as f64), ("q", r.gen_range(0.05..0.95))]))
            },
            check: |p, _| {
                let (n, q) = (p.index("n"), p.get("q"));
                let lead = CONSTANTS.log_sqrt_2pi * q.powi(n as i32 + 1) / (n + 1) as f64;
                let (mut up, mut down) = (lead, lead);
                for j in 0..=n {
                    let w = factorial(n) * q.powi((n - j) as i32) / factorial(n - j);
                    up += w * sign(j) * npg(j + 2, q)?;
                    down -= w * npg(j + 2, 1.0 - q)?;
                }
                let base = PrimitiveParams { n, ..Default::default() }.at(q);
                let f_up = prim_loggamma_moment(&base)?.value;
                let f_down = prim_loggamma_moment(&PrimitiveParams { a: 1.0, b: -1.0, ..base })?.value;
                Ok((f_up + f_down, up + down))
            },
        },
        IntegralIdentity {
            id: "logsine-moment-primitive",
            paper_anchor: "∫ q^n ln sin πq dq = -q^{n+1} ln2/(n+1) - n! Σ_j q^{n-j} [(-1)^j A_{j+2}(q) - A_{j+2}(1-q)] / ((j+2)! (n-j)!)",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: |rng| {
                draws(rng, PRIMITIVE_DRAWS, |r| {
                    let (q1, q2) = interval(r, 0.02, 0.98);
                    Point::new(&[("n", r.gen_range(0..=6) as f64), ("q1", q1), ("q2", q2)])
                })
            },
            check: |p, ctx| {
                primitive_difference(p, |pp| prim_logsine_moment(pp.n, pp.q), ctx, |pp, q| {
                    q.powi(pp.n as i32) * (PI * q).sin().ln()
                })
            },
        },
        IntegralIdentity {
            id: "logsine-moment-derivative",
            paper_anchor: "d/dq ∫ q^n ln sin πq dq = q^n ln sin πq",
            check_kind: CheckKind::Invariant,
            tol: FINITE_DIFFERENCE_TOL,
            suites: &[Primitives],
            grid: |rng| draws(rng, 20, |r| Point::new(&[("n", r.gen_range(0..=6) as f64), ("q", r.gen_range(0.05..0.95))])),
            check: |p, _| {
                let (n, q) = (p.index("n"), p.get("q"));
                let d = finite_diff(|t| prim_logsine_moment(n, t).map(|c| c.value).unwrap_or(f64::NAN), q, 1, 1e-4);
                Ok((d, q.powi(n as i32) * (PI * q).sin().ln()))
            },
        },
        IntegralIdentity {
            id: "exp-logsine-primitive",
            paper_anchor: "∫ e^q ln sin πq dq = -e^q [ln2 + Σ_j ((-1)^j A_{j+2}(q) - A_{j+2}(1-q))/(j+2)!]",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: unit_interval_grid,
            check: |p, ctx| {
                let ctrl = SeriesControl::new(1e-14, 200);
                primitive_difference(p, |pp| prim_exp_logsine(pp.q, &ctrl), ctx, |_, q| q.exp() * (PI * q).sin().ln())
            },
        },
        IntegralIdentity {
            id: "exp-cot-primitive",
            paper_anchor: "∫ e^q cot πq dq = (e^q/π) [ln sin πq + ln2 + Σ_j ((-1)^j A_{j+2}(q) - A_{j+2}(1-q))/(j+2)!]",
            check_kind: CheckKind::PrimitiveDifference,
            tol: PRIMITIVE_TOL,
            suites: &[Primitives],
            grid: unit_interval_grid,
            check: |p, ctx| {
                let ctrl = SeriesControl::new(1e-14, 200);
                primitive_difference(p, |pp| prim_exp_cot(pp.q, &ctrl), ctx, |_, q| q.exp() / (PI * q).tan())
            },
        },
        IntegralIdentity {
            id: "exp-cot-by-parts",
            paper_anchor: "π ∫ e^q cot πq dq = e^q ln sin πq - ∫ e^q ln sin πq dq",
            check_kind: CheckKind::CrossPath,
            tol: 1e-12,
            suites: &[Primitives],
            grid: |rng| draws(rng, 10, |r| Point::new(&[("q", r.gen_range(0.05..0.95))])),
            check: |p, _| {
                let q = p.get("q");
                let ctrl = SeriesControl::new(1e-14, 200);
                let lhs = PI * prim_exp_cot(q, &ctrl)?.value;
                Ok((lhs, q.exp() * (PI * q).sin().ln() - prim_exp_logsine(q, &ctrl)?.value))
            },
        },
    ]
}

fn selfproduct_grid(rng: &mut ChaCha8Rng) -> Vec<Point> {
    let mut out = Vec::new();
    for n in [1.0, 3.0, 5.0] {
        out.extend(draws(rng, 7, |r| {
            let (q1, q2) = interval(r, 0.2, 2.5);
            Point::new(&[("n", n), ("z", zeta_draw(r)), ("q1", q1), ("q2", q2)])
        }));
    }
    out
}

fn selfproduct_difference(p: &Point, ctx: &Ctx, f: fn(usize, f64, f64) -> Result<ClosedFormValue>) -> Result<(f64, f64)> {
    let (n, z, q1, q2) = (p.index("n"), p.get("z"), p.get("q1"), p.get("q2"));
    let lhs = f(n, z, q2)?.value - f(n, z, q1)?.value;
    let rhs = quad(ctx, |q| zeta(z - n as f64, q) * zeta(z, q), q1, q2)?;
    Ok((lhs, rhs))
}

fn polygamma_family_grid(rng: &mut ChaCha8Rng, m_lo: i64, m_hi: i64, floor: f64) -> Vec<Point> {
    draws(rng, PRIMITIVE_DRAWS, |r| {
        let (q1, q2) = interval(r, 0.0, 2.0);
        let (a, b) = affine(r, q1, q2, floor);
        Point::new(&[
            ("n", r.gen_range(0..=4) as f64),
            ("m", r.gen_range(m_lo..=m_hi) as f64),
            ("a", a),
            ("b", b),
            ("q1", q1),
            ("q2", q2),
        ])
    })
}

fn unit_interval_grid(rng: &mut ChaCha8Rng) -> Vec<Point> {
    draws(rng, PRIMITIVE_DRAWS, |r| {
        let (q1, q2) = interval(r, 0.05, 0.95);
        Point::new(&[("q1", q1), ("q2", q2)])
    })
}

fn half_logsine_printed(n: usize) -> f64 {
    let pi2 = PI * PI;
    match n {
        1 => -LN_2 / 8.0 + 7.0 * ZETA3 / (16.0 * pi2),
        2 => -LN_2 / 24.0 + 3.0 * ZETA3 / (16.0 * pi2),
        _ => -LN_2 / 64.0 + 9.0 * ZETA3 / (64.0 * pi2) - 93.0 * ZETA5 / (128.0 * pi2 * pi2),
    }
}

fn definite_identities() -> Vec<IntegralIdentity> {
    vec![
        IntegralIdentity {
            id: "zeta-moment-definite",
            paper_anchor: "∫_0^1 q^n ζ(z,a+bq) dq",
            check_kind: CheckKind::DefiniteValue,
            tol: ORACLE_TOL,
            suites: &[Definite],
            grid: |rng| {
                draws(rng, 12, |r| {
                    let (a, b) = affine(r, 0.0, 1.0, 0.1);
                    Point::new(&[("n", r.gen_range(0..=4) as f64), ("z", zeta_draw(r)), ("a", a.max(0.1)), ("b", b)])
                })
            },
            check: |p, ctx| {
                let (n, z, a, b) = (p.index("n"), p.get("z"), p.get("a"), p.get("b"));
                let v = def_zeta_moment(n, z, a, b)?.value;
                Ok((v, quad(ctx, |q| q.powi(n as i32) * zeta(z, a + b * q), 0.0, 1.0)?))
            },
        },
        IntegralIdentity {
            id: "zeta-moment-definite-ftc",
            paper_anchor: "∫_0^1 q^n ζ(z,a+bq) dq = F(1) - F(0)",
            check_kind: CheckKind::CrossPath,
            tol: ALGEBRAIC_TOL,
            suites: &[Definite],
            grid: |rng| {
                draws(rng, 12, |r| {
                    let (a, b) = affine(r, 0.0, 1.0, 0.1);
                    Point::new(&[("n", r.gen_range(0..=4) as f64), ("z", zeta_draw(r)), ("a", a.max(0.1)), ("b", b)])
                })
            },
            check: |p, _| {
                let pp = prim_params(p);
                let ftc = prim_zeta_moment(&pp.at(1.0))?.value - prim_zeta_moment(&pp.at(0.0))?.value;
                Ok((def_zeta_moment(pp.n, pp.z, pp.a, pp.b)?.value, ftc))
            },
        },
        IntegralIdentity {
            id: "zeta-moment-unit",
            paper_anchor: "∫_0^1 q^n ζ(z,q) dq = n! Σ_{j<n} (-1)^j ζ(z-j-1) / ((1-z)_{j+1} (n-j)!)",
            check_kind: CheckKind::DefiniteValue,
            tol: ORACLE_TOL,
            suites: &[Definite],
            grid: |rng| {
                let mut out = product(["n", "z"], &[[0.0, -1.5], [0.0, 0.4], [1.0, -1.0], [3.0, -0.5]]);
                out.extend(draws(rng, 8, |r| Point::new(&[("n", r.gen_range(0..=4) as f64), ("z", r.gen_range(-3.0..0.7))])));
                out
            },
            check: |p, ctx| {
                let (n, z) = (p.index("n"), p.get("z"));
                let v = def_zeta_moment_unit(n, z)?.value;
                Ok((v, quad_flags(ctx, zeta_moment_unit_integrand(n, z), 0.0, 1.0, z > 0.0, false)?))
            },
        },
        IntegralIdentity {
            id: "logsine-moment-definite",
            paper_anchor: "∫_0^1 q^n ln sin πq dq = -ln2/(n+1) + n! Σ_{k=1}^{⌊n/2⌋} (-1)^k ζ(2k+1) / ((2π)^{2k} (n+1-2k)!)",
            check_kind: CheckKind::DefiniteValue,
            tol: ORACLE_TOL,
            suites: &[Definite],
            grid: |_| (0..=6).map(|n| Point::new(&[("n", n as f64)])).collect(),
            check: |p, ctx| {
                let n = p.index("n");
                let oracle = quad_flags(ctx, move |q| q.powi(n as i32) * (PI * q).sin().ln(), 0.0, 1.0, true, true)?;
                Ok((def_logsine_moment(n)?.value, oracle))
            },
        },
        IntegralIdentity {
            id: "logsine-half-moment-values",
            paper_anchor: "∫_0^{1/2} q ln sin πq dq = -ln2/8 + 7ζ(3)/(16π²)",
            check_kind: CheckKind::DefiniteValue,
            tol: ALGEBRAIC_TOL,
            suites: &[Definite],
            grid: |_| {
                let mut out = Vec::new();
                for n in 1..=3 {
                    for form in 0..3 {
                        out.push(Point::new(&[("n", n as f64), ("form", form as f64)]));
                    }
                }
                out
            },
            check: |p, ctx| {
                let n = p.index("n");
                let lhs = match p.index("form") {
                    0 => def_logsine_moment_half(n)?.value,
                    1 => prim_logsine_moment(n, 0.5)?.value - prim_logsine_moment(n, 0.0)?.value,
                    _ => quad_flags(ctx, move |q| q.powi(n as i32) * (PI * q).sin().ln(), 0.0, 0.5, true, false)?,
                };
                Ok((lhs, half_logsine_printed(n)))
            },
        },
        IntegralIdentity {
            id: "logsine-half-moment-definite",
            paper_anchor: "∫_0^{1/2} q^n ln sin πq dq",
            check_kind: CheckKind::DefiniteValue,
            tol: ORACLE_TOL,
            suites: &[Definite],
            grid: |_| (0..=8).map(|n| Point::new(&[("n", n as f64)])).collect(),
            check: |p, ctx| {
                let n = p.index("n");
                let oracle = quad_flags(ctx, move |q| q.powi(n as i32) * (PI * q).sin().ln(), 0.0, 0.5, true, false)?;
                Ok((def_logsine_moment_half(n)?.value, oracle))
            },
        },
        IntegralIdentity {
            id: "loggamma-definite-values",
            paper_anchor: "∫_0^{1/2} lnΓ(q+1) dq = -3/8 - (13/24) ln2 + ½ ln√(2π) - (3/2) ζ'(-1)",
            check_kind: CheckKind::DefiniteValue,
            tol: ALGEBRAIC_TOL,
            suites: &[Definite],
            grid: |_| product(["upper", "form"], &[[0.5, 0.0], [0.5, 1.0], [0.25, 0.0], [0.25, 1.0]]),
            check: |p, _| {
                let upper = p.get("upper");
                let zp = hurwitz_zeta_dz(ZetaArgs::new(-1.0, 1.0)?)?.value;
                let ls = CONSTANTS.log_sqrt_2pi;
                let printed = if upper == 0.5 {
                    -3.0 / 8.0 - 13.0 / 24.0 * LN_2 + 0.5 * ls - 1.5 * zp
                } else {
                    -5.0 / 32.0 - 0.5 * LN_2 + 0.25 * ls - 9.0 / 8.0 * zp + CONSTANTS.catalan / (4.0 * PI)
                };
                let lhs = if p.index("form") == 0 {
                    let base = PrimitiveParams { a: 1.0, b: 1.0, ..Default::default() };
                    prim_loggamma_moment(&base.at(upper))?.value - prim_loggamma_moment(&base.at(0.0))?.value
                } else {
                    def_loggamma_shifted(upper)?.value
                };
                Ok((lhs, printed))
            },
        },
        IntegralIdentity {
            id: "negapoly-product",
            paper_anchor: "∫_0^1 ψ^(-k)(q) ψ^(-k')(q) dq = 2cos((k-k')π/2)/(2π)^{k+k'} [ζ'' - 2(γ+ln2π) ζ' + ((γ+ln2π)² + π²/4) ζ](k+k')",
            check_kind: CheckKind::DefiniteValue,
            tol: ORACLE_TOL,
            suites: &[Definite, Negapoly],
            grid: |_| product(["k", "k2"], &[[1.0, 1.0], [2.0, 2.0], [1.0, 3.0], [3.0, 3.0], [2.0, 4.0], [4.0, 4.0]]),
            check: |p, ctx| {
                let (k, k2) = (p.index("k"), p.index("k2"));
                let singular = k.min(k2) == 1;
                let oracle = quad_flags(ctx, move |q| npg_or_nan(k, q) * npg_or_nan(k2, q), 0.0, 1.0, singular, false)?;
                Ok((def_negapoly_product(k, k2)?.value, oracle))
            },
        },
        IntegralIdentity {
            id: "lngamma-squared",
            paper_anchor: "∫_0^1 lnΓ(q)² dq = γ²/12 + π²/48 + γ ln√(2π)/3 + (4/3) ln²√(2π) - (γ + 2 ln√(2π)) ζ'(2)/π² + ζ''(2)/(2π²)",
            check_kind: CheckKind::DefiniteValue,
            tol: ORACLE_TOL,
            suites: &[Definite, Constants],
            grid: |_| (0..2).map(|f| Point::new(&[("form", f as f64)])).collect(),
            check: |p, ctx| {
                let g = CONSTANTS.euler_gamma;
                let ls = CONSTANTS.log_sqrt_2pi;
                let zp2 = riemann_zeta_dz(2.0)?.value;
                let zpp2 = riemann_zeta_d2z(2.0)?.value;
                let printed = g * g / 12.0 + PI * PI / 48.0 + g * ls / 3.0 + 4.0 / 3.0 * ls * ls
                    - (g + 2.0 * ls) * zp2 / (PI * PI)
                    + zpp2 / (2.0 * PI * PI);
                let lhs = if p.index("form") == 0 {
                    def_negapoly_product(1, 1)?.value + ls * ls
                } else {
                    quad_flags(ctx, |q| gamma::ln_gamma(q).powi(2), 0.0, 1.0, true, false)?
                };
                Ok((lhs, printed))
            },
        },
        IntegralIdentity {
            id: "negapoly-product-parity",
            paper_anchor: "cos((k-k')π/2) = 0 for k - k' odd",
            check_kind: CheckKind::Invariant,
            tol: 1e-15,
            suites: &[Definite, Negapoly],
            grid: |_| {
                let mut out = Vec::new();
                for k in 1..=6 {
                    for k2 in 1..=6 {
                        if (k + k2) % 2 == 1 {
                            out.push(Point::new(&[("k", k as f64), ("k2", k2 as f64)]));
                        }
                    }
                }
                out
            },
            check: |p, _| Ok((def_negapoly_product(p.index("k"), p.index("k2"))?.value, 0.0)),
        },
        IntegralIdentity {
            id: "zeta-product-definite",
            paper_anchor: "∫_0^1 ζ(z,q) ζ(z',q) dq = 2Γ(1-z)Γ(1-z')(2π)^{z+z'-2} ζ(2-z-z') cos(π(z-z')/2)",
            check_kind: CheckKind::DefiniteValue,
            tol: ORACLE_TOL,
            suites: &[Definite],
            grid: |rng| {
                let mut out = product(["z", "z2"], &[[0.0, 0.0], [-1.0, 0.0], [-1.5, -0.5]]);
                out.extend(draws(rng, 4, |r| Point::new(&[("z", r.gen_range(-3.0..0.0)), ("z2", r.gen_range(-3.0..0.0))])));
                out
            },
            check: |p, ctx| {
                let (z, z2) = (p.get("z"), p.get("z2"));
                let oracle = quad(ctx, |q| zeta(z, q) * zeta(z2, q), 0.0, 1.0)?;
                Ok((def_zeta_product(z, z2)?.value, oracle))
            },
        },
    ]
}
