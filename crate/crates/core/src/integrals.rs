//! Closed-form primitives and definite integrals built on the Hurwitz
//! kernels. Primitives are defined up to an additive constant; only
//! differences `F(q2) - F(q1)` are meaningful.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::bernoulli::{bernoulli_poly, binomial, factorial, harmonic};
use crate::constants::CONSTANTS;
use crate::error::{Error, Result};
use crate::eval::{EvalResult, SeriesControl};
use crate::families::{a_k, polygamma_any, FamilyIndex};
use crate::fourier::cos_pi;
use crate::gamma::ln_gamma;
use crate::hurwitz::{
    hurwitz_zeta, pochhammer, riemann_zeta, riemann_zeta_d2z, riemann_zeta_dz, ZetaArgs,
};

const EPS: f64 = f64::EPSILON;
/// Distance from a Pochhammer zero below which a primitive is rejected.
pub const POLE_GUARD: f64 = 1e-6;

/// Parameters shared by the primitive evaluators. Unused fields are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrimitiveParams {
    pub n: usize,
    pub m: i64,
    pub z: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub q: f64,
}

impl Default for PrimitiveParams {
    fn default() -> Self {
        Self { n: 0, m: 0, z: 0.0, a: 0.0, b: 1.0, c: 0.0, d: 1.0, q: 0.5 }
    }
}

impl PrimitiveParams {
    pub fn at(self, q: f64) -> Self {
        Self { q, ..self }
    }

    /// `a + b q`, the argument of the special-function factor.
    pub fn arg(&self) -> f64 {
        self.a + self.b * self.q
    }

    fn check_b(&self) -> Result<()> {
        if self.b == 0.0 || !self.b.is_finite() {
            return Err(Error::domain("b must be a nonzero finite number"));
        }
        Ok(())
    }

    fn check_arg(&self) -> Result<f64> {
        self.check_b()?;
        let x = self.arg();
        if !(x > 0.0) {
            return Err(Error::domain(format!("a + b q must be positive, got {x}")));
        }
        Ok(x)
    }

    fn order(&self) -> Result<usize> {
        usize::try_from(self.m).map_err(|_| Error::domain(format!("m must be nonnegative, got {}", self.m)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormValue {
    pub value: f64,
    pub terms_used: usize,
    pub err_estimate: f64,
}

impl ClosedFormValue {
    fn finite(sum: Sum) -> Result<Self> {
        if !sum.value.is_finite() {
            return Err(Error::Overflow("closed form is not representable".into()));
        }
        Ok(Self { value: sum.value, terms_used: sum.terms, err_estimate: sum.err + 4.0 * EPS * sum.mass })
    }
}

impl From<ClosedFormValue> for EvalResult {
    fn from(c: ClosedFormValue) -> Self {
        EvalResult::new(c.value, c.err_estimate)
    }
}

/// Running sum of `coef * EvalResult` terms with error bookkeeping.
#[derive(Default, Clone, Copy)]
struct Sum {
    value: f64,
    err: f64,
    mass: f64,
    terms: usize,
}

impl Sum {
    fn push(&mut self, coef: f64, r: EvalResult) -> f64 {
        let t = coef * r.value;
        self.value += t;
        self.err += coef.abs() * r.err_estimate;
        self.mass += t.abs();
        self.terms += 1;
        t
    }

    fn push_exact(&mut self, t: f64) {
        self.push(1.0, EvalResult::new(t, EPS * t.abs()));
    }

    fn scaled(mut self, f: f64) -> Self {
        self.value *= f;
        self.err *= f.abs();
        self.mass *= f.abs();
        self
    }
}

fn sign(j: usize) -> f64 {
    if j % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Rejects `z` near any of `1, ..., top`, the zeros of `(1-z)_{j+1}` for `j < top`.
fn guard_pochhammer(z: f64, top: usize) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::domain("z must be finite"));
    }
    let nearest = z.round();
    if nearest >= 1.0 && nearest <= top as f64 && (z - nearest).abs() < POLE_GUARD {
        return Err(Error::pole(format!(
            "z = {z} is within {POLE_GUARD:e} of {nearest}, where (1 - z)_k vanishes"
        )));
    }
    Ok(())
}

fn zeta(z: f64, x: f64) -> Result<EvalResult> {
    hurwitz_zeta(ZetaArgs::new(z, x)?)
}

fn fam(k: usize) -> Result<FamilyIndex> {
    FamilyIndex::new(k)
}

/// `∫ q^n ζ(z, a+bq) dq = n! Σ_j (-1)^j q^{n-j} ζ(z-j-1, a+bq) / (b^{j+1} (1-z)_{j+1} (n-j)!)`.
pub fn prim_zeta_moment(p: &PrimitiveParams) -> Result<ClosedFormValue> {
    let x = p.check_arg()?;
    guard_pochhammer(p.z, p.n + 1)?;
    let mut s = Sum::default();
    for j in 0..=p.n {
        let coef = sign(j) * p.q.powi((p.n - j) as i32)
            / (p.b.powi(j as i32 + 1) * pochhammer(1.0 - p.z, j + 1) * factorial(p.n - j));
        s.push(coef, zeta(p.z - j as f64 - 1.0, x)?);
    }
    ClosedFormValue::finite(s.scaled(factorial(p.n)))
}

/// `∫ B_m(c+dq) ζ(z, a+bq) dq`.
pub fn prim_zeta_bernoulli_weight(p: &PrimitiveParams) -> Result<ClosedFormValue> {
    let x = p.check_arg()?;
    let m = p.order()?;
    if m > 30 {
        return Err(Error::Range(format!("m must be at most 30, got {m}")));
    }
    guard_pochhammer(p.z, m + 1)?;
    let y = p.c + p.d * p.q;
    let mut s = Sum::default();
    for j in 0..=m {
        let coef = sign(j) * p.d.powi(j as i32) * bernoulli_poly(m - j, y)?
            / (p.b.powi(j as i32 + 1) * pochhammer(1.0 - p.z, j + 1) * factorial(m - j));
        s.push(coef, zeta(p.z - j as f64 - 1.0, x)?);
    }
    ClosedFormValue::finite(s.scaled(factorial(m)))
}

/// `∫ q^n B_m(a+bq) dq`.
pub fn prim_bernoulli_moment(p: &PrimitiveParams) -> Result<ClosedFormValue> {
    p.check_b()?;
    let m = p.order()?;
    if m > 30 || p.n > 20 {
        return Err(Error::Range(format!("need m ≤ 30 and n ≤ 20, got m = {m}, n = {}", p.n)));
    }
    let n = p.n;
    let x = p.arg();
    let mut s = Sum::default();
    for j in 0..=n {
        let coef = sign(j) * p.q.powi((n - j) as i32) / p.b.powi(j as i32 + 1) * binomial(m + n + 1, n - j);
        s.push_exact(coef * bernoulli_poly(m + j + 1, x)?);
    }
    ClosedFormValue::finite(s.scaled(factorial(n) * factorial(m) / factorial(n + m + 1)))
}

fn check_self_product(n: usize, z: f64, q: f64) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::domain(format!("the self-product primitive needs odd n, got {n}")));
    }
    if !(q > 0.0) {
        return Err(Error::domain(format!("q must be positive, got {q}")));
    }
    guard_pochhammer(z, n)
}

/// `∫ ζ(z-n, q) ζ(z, q) dq` for odd `n`:
/// `½ Σ_{k=1}^{n} (z-n)_{k-1}/(1-z)_k ζ(z-k,q) ζ(z-n+k-1,q)`.
pub fn prim_zeta_selfproduct_odd(n: usize, z: f64, q: f64) -> Result<ClosedFormValue> {
    check_self_product(n, z, q)?;
    let mut s = Sum::default();
    for k in 1..=n {
        let coef = pochhammer(z - n as f64, k - 1) / pochhammer(1.0 - z, k);
        let u = zeta(z - k as f64, q)?;
        let v = zeta(z - n as f64 + k as f64 - 1.0, q)?;
        s.push(coef, product(u, v));
    }
    ClosedFormValue::finite(s.scaled(0.5))
}

/// The same primitive with the paired terms merged, `n = 2r - 1`:
/// `(z-2r+1)_{r-1}/(2 (1-z)_r) ζ(z-r,q)² + Σ_{k<r} (z-2r+1)_{k-1}/(1-z)_k ζ(z-k,q) ζ(z-2r+k,q)`.
pub fn prim_zeta_selfproduct_centered(n: usize, z: f64, q: f64) -> Result<ClosedFormValue> {
    check_self_product(n, z, q)?;
    let r = (n + 1) / 2;
    let base = z - n as f64;
    let mut s = Sum::default();
    let central = zeta(z - r as f64, q)?;
    s.push(pochhammer(base, r - 1) / (2.0 * pochhammer(1.0 - z, r)), product(central, central));
    for k in 1..r {
        let coef = pochhammer(base, k - 1) / pochhammer(1.0 - z, k);
        let u = zeta(z - k as f64, q)?;
        let v = zeta(z - (2 * r - k) as f64, q)?;
        s.push(coef, product(u, v));
    }
    ClosedFormValue::finite(s)
}

fn product(u: EvalResult, v: EvalResult) -> EvalResult {
    EvalResult::new(u.value * v.value, u.err_estimate * v.value.abs() + v.err_estimate * u.value.abs())
}

/// Two consecutive terms below `tol · max(1, |partial sum|)`.
fn small_pair(prev: f64, cur: f64, sum: f64, tol: f64) -> bool {
    let bound = tol * sum.abs().max(1.0);
    prev.abs() < bound && cur.abs() < bound
}

/// `∫ e^q ζ(z, a+bq) dq = e^q Σ_j (-1)^j ζ(z-1-j, a+bq) / (b^{j+1} (1-z)_{j+1})`.
pub fn prim_exp_zeta(p: &PrimitiveParams, ctrl: &SeriesControl) -> Result<ClosedFormValue> {
    let x = p.check_arg()?;
    guard_pochhammer(p.z, usize::MAX)?;
    let mut s = Sum::default();
    let mut prev = f64::INFINITY;
    for j in 0..ctrl.max_terms {
        let coef = sign(j) / (p.b.powi(j as i32 + 1) * pochhammer(1.0 - p.z, j + 1));
        let t = s.push(coef, zeta(p.z - 1.0 - j as f64, x)?);
        if !s.value.is_finite() {
            break;
        }
        if small_pair(prev, t, s.value, ctrl.tol) {
            s.err += t.abs() + prev.abs();
            return ClosedFormValue::finite(s.scaled(p.q.exp()));
        }
        prev = t;
    }
    Err(Error::Convergence { what: "exponential-weight zeta series".into(), terms: ctrl.max_terms })
}

/// `∫ e^q B_m(a+bq) dq = m! e^q (-1)^m Σ_{j≤m} (-1)^j b^{m-j} B_j(a+bq)/j!`.
pub fn prim_exp_bernoulli(p: &PrimitiveParams) -> Result<ClosedFormValue> {
    p.check_b()?;
    let m = p.order()?;
    if m > 30 {
        return Err(Error::Range(format!("m must be at most 30, got {m}")));
    }
    let x = p.arg();
    let mut s = Sum::default();
    for j in 0..=m {
        s.push_exact(sign(j) * p.b.powi((m - j) as i32) * bernoulli_poly(j, x)? / factorial(j));
    }
    ClosedFormValue::finite(s.scaled(factorial(m) * p.q.exp() * sign(m)))
}

/// `n! Σ_j (-1)^j q^{n-j} ψ^(top-j)(a+bq) / (b^{j+1} (n-j)!)`: the common shape of
/// the polygamma-family moment formulas.
fn polygamma_ladder(p: &PrimitiveParams, top: i64) -> Result<Sum> {
    let x = p.check_arg()?;
    let mut s = Sum::default();
    for j in 0..=p.n {
        let coef = sign(j) * p.q.powi((p.n - j) as i32) / (p.b.powi(j as i32 + 1) * factorial(p.n - j));
        s.push(coef, polygamma_any(top - j as i64, x)?);
    }
    Ok(s.scaled(factorial(p.n)))
}

/// `∫ q^n ψ^(m)(a+bq) dq`, `m ≥ 1`.
pub fn prim_polygamma_moment(p: &PrimitiveParams) -> Result<ClosedFormValue> {
    if p.m < 1 {
        return Err(Error::domain(format!("polygamma moments need m ≥ 1, got {}", p.m)));
    }
    ClosedFormValue::finite(polygamma_ladder(p, p.m - 1)?)
}

/// `∫ q^n ψ(a+bq) dq`.
pub fn prim_digamma_moment(p: &PrimitiveParams) -> Result<ClosedFormValue> {
    ClosedFormValue::finite(polygamma_ladder(p, -1)?)
}

/// `∫ q^n ψ^(-m)(a+bq) dq`, `m ≥ 1`.
pub fn prim_negapolygamma_moment(p: &PrimitiveParams) -> Result<ClosedFormValue> {
    if p.m < 1 {
        return Err(Error::domain(format!("negapolygamma moments need m ≥ 1, got {}", p.m)));
    }
    ClosedFormValue::finite(polygamma_ladder(p, -p.m - 1)?)
}

/// `∫ q^n A_m(a+bq) dq`:
/// `m! n! Σ_j (-1)^j q^{n-j} [A_{m+j+1} - (H_{m+j} - H_{m-1}) B_{m+j+1}](a+bq) / (b^{j+1} (n-j)! (m+j+1)!)`.
pub fn prim_ak_moment(p: &PrimitiveParams) -> Result<ClosedFormValue> {
    let x = p.check_arg()?;
    let m = p.order()?;
    if m < 1 {
        return Err(Error::domain("A_m moments need m ≥ 1"));
    }
    let n = p.n;
    let mut s = Sum::default();
    for j in 0..=n {
        let k = m + j + 1;
        let coef = sign(j) * p.q.powi((n - j) as i32) / (p.b.powi(j as i32 + 1) * factorial(n - j) * factorial(k));
        let a = a_k(fam(k)?, x)?;
        let hb = (harmonic(m + j) - harmonic(m - 1)) * bernoulli_poly(k, x)?;
        s.push(coef, EvalResult::new(a.value - hb, a.err_estimate + EPS * hb.abs()));
    }
    ClosedFormValue::finite(s.scaled(factorial(m) * factorial(n)))
}

/// `∫ q^n lnΓ(a+bq) dq = ln√(2π) q^{n+1}/(n+1) + n! Σ_j (-1)^j q^{n-j} ψ^(-2-j)(a+bq) / (b^{j+1} (n-j)!)`.
pub fn prim_loggamma_moment(p: &PrimitiveParams) -> Result<ClosedFormValue> {
    let mut s = polygamma_ladder(p, -2)?;
    s.push_exact(CONSTANTS.log_sqrt_2pi * p.q.powi(p.n as i32 + 1) / (p.n + 1) as f64);
    ClosedFormValue::finite(s)
}

/// `Σ_j c_j [(-1)^j A_{j+2}(q) - A_{j+2}(1-q)]` with weights supplied by `weight(j)`.
fn logsine_bracket(q: f64, terms: usize, weight: impl Fn(usize) -> f64) -> Result<Sum> {
    let mut s = Sum::default();
    for j in 0..terms {
        let w = weight(j);
        if w == 0.0 {
            continue;
        }
        let k = fam(j + 2)?;
        let u = a_k(k, q)?;
        let v = a_k(k, 1.0 - q)?;
        s.push(w, EvalResult::new(sign(j) * u.value - v.value, u.err_estimate + v.err_estimate));
    }
    Ok(s)
}

fn check_unit(q: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(format!("q must lie in [0, 1], got {q}")));
    }
    Ok(())
}

/// `∫ q^n ln sin πq dq` on `[0, 1]`; the endpoints are the one-sided limits.
pub fn prim_logsine_moment(n: usize, q: f64) -> Result<ClosedFormValue> {
    check_unit(q)?;
    if n > 37 {
        return Err(Error::Range(format!("n must be at most 37, got {n}")));
    }
    let mut s = logsine_bracket(q, n + 1, |j| {
        -factorial(n) * q.powi((n - j) as i32) / (factorial(j + 2) * factorial(n - j))
    })?;
    s.push_exact(-q.powi(n as i32 + 1) * LN_2 / (n + 1) as f64);
    ClosedFormValue::finite(s)
}

/// `ln 2 + Σ_j ((-1)^j A_{j+2}(q) - A_{j+2}(1-q))/(j+2)!`, shared by the
/// exponential log-sine and cotangent primitives.
fn exp_logsine_series(q: f64, ctrl: &SeriesControl) -> Result<Sum> {
    check_unit(q)?;
    let mut s = Sum::default();
    s.push_exact(LN_2);
    let mut prev = f64::INFINITY;
    let cap = ctrl.max_terms.min(FamilyIndex::MAX - 1);
    for j in 0..cap {
        let k = fam(j + 2)?;
        let u = a_k(k, q)?;
        let v = a_k(k, 1.0 - q)?;
        let t = s.push(
            1.0 / factorial(j + 2),
            EvalResult::new(sign(j) * u.value - v.value, u.err_estimate + v.err_estimate),
        );
        if small_pair(prev, t, s.value, ctrl.tol) {
            s.err += t.abs() + prev.abs();
            return Ok(s);
        }
        prev = t;
    }
    Err(Error::Convergence { what: "log-sine A_k series".into(), terms: cap })
}

/// `∫ e^q ln sin πq dq = -e^q [ln 2 + Σ_j ((-1)^j A_{j+2}(q) - A_{j+2}(1-q))/(j+2)!]`, `0 < q < 1`.
pub fn prim_exp_logsine(q: f64, ctrl: &SeriesControl) -> Result<ClosedFormValue> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("q must lie in (0, 1), got {q}")));
    }
    ClosedFormValue::finite(exp_logsine_series(q, ctrl)?.scaled(-q.exp()))
}

/// `∫ e^q cot πq dq = (e^q/π) [ln sin πq + ln 2 + Σ_j ((-1)^j A_{j+2}(q) - A_{j+2}(1-q))/(j+2)!]`.
pub fn prim_exp_cot(q: f64, ctrl: &SeriesControl) -> Result<ClosedFormValue> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("q must lie in (0, 1), got {q}")));
    }
    let mut s = exp_logsine_series(q, ctrl)?;
    s.push_exact((PI * q).sin().ln());
    ClosedFormValue::finite(s.scaled(q.exp() / PI))
}

/// `∫_0^1 q^n ζ(z, a+bq) dq`, `a > 0`, `a + b > 0`.
pub fn def_zeta_moment(n: usize, z: f64, a: f64, b: f64) -> Result<ClosedFormValue> {
    if b == 0.0 || !b.is_finite() {
        return Err(Error::domain("b must be a nonzero finite number"));
    }
    if !(a > 0.0 && a + b > 0.0) {
        return Err(Error::domain(format!("need a > 0 and a + b > 0, got a = {a}, b = {b}")));
    }
    guard_pochhammer(z, n + 1)?;
    let mut s = Sum::default();
    for j in 0..n {
        let coef = sign(j) / (b.powi(j as i32 + 1) * pochhammer(1.0 - z, j + 1) * factorial(n - j));
        s.push(coef, zeta(z - j as f64 - 1.0, a + b)?);
    }
    let coef = sign(n) / (b.powi(n as i32 + 1) * pochhammer(1.0 - z, n + 1));
    let w = z - n as f64 - 1.0;
    s.push(coef, zeta(w, a + b)?.sub(zeta(w, a)?));
    ClosedFormValue::finite(s.scaled(factorial(n)))
}

/// `∫_0^1 q^n ζ(z, q) dq = n! Σ_{j<n} (-1)^j ζ(z-j-1) / ((1-z)_{j+1} (n-j)!)`, `z < n + 1`.
pub fn def_zeta_moment_unit(n: usize, z: f64) -> Result<ClosedFormValue> {
    if !(z - n as f64 - 1.0 < 0.0) {
        return Err(Error::domain(format!("need z - n - 1 < 0, got z = {z}, n = {n}")));
    }
    guard_pochhammer(z, n + 1)?;
    let mut s = Sum::default();
    for j in 0..n {
        let coef = sign(j) / (pochhammer(1.0 - z, j + 1) * factorial(n - j));
        s.push(coef, riemann_zeta(z - j as f64 - 1.0)?);
    }
    ClosedFormValue::finite(s.scaled(factorial(n)))
}

/// `∫_0^1 q^n ln sin πq dq = -ln2/(n+1) + n! Σ_{k=1}^{⌊n/2⌋} (-1)^k ζ(2k+1) / ((2π)^{2k} (n+1-2k)!)`.
pub fn def_logsine_moment(n: usize) -> Result<ClosedFormValue> {
    if n > 150 {
        return Err(Error::Range(format!("n must be at most 150, got {n}")));
    }
    let mut s = Sum::default();
    s.push_exact(-LN_2 / (n + 1) as f64);
    for k in 1..=n / 2 {
        let coef = sign(k) * factorial(n) / ((2.0 * PI).powi(2 * k as i32) * factorial(n + 1 - 2 * k));
        s.push(coef, riemann_zeta(2.0 * k as f64 + 1.0)?);
    }
    ClosedFormValue::finite(s)
}

/// `∫_0^{1/2} q^n ln sin πq dq`.
pub fn def_logsine_moment_half(n: usize) -> Result<ClosedFormValue> {
    if n > 150 {
        return Err(Error::Range(format!("n must be at most 150, got {n}")));
    }
    let mut inner = Sum::default();
    inner.push_exact(LN_2 / (n + 1) as f64);
    for k in 1..=(n + 1) / 2 {
        let p4 = 4f64.powi(k as i32);
        let coef = sign(k) * (p4 - 1.0) * factorial(n) / ((2.0 * PI).powi(2 * k as i32) * factorial(n + 1 - 2 * k));
        inner.push(coef, riemann_zeta(2.0 * k as f64 + 1.0)?);
    }
    let mut s = inner.scaled(-0.5f64.powi(n as i32 + 1));
    if n % 2 == 1 {
        s.push(-2.0 / (n + 1) as f64, riemann_zeta_dz(-(n as f64) - 1.0)?);
    }
    ClosedFormValue::finite(s)
}

/// `cos(jπ/2)` for integer `j`, exactly.
pub fn parity_factor(j: i64) -> f64 {
    [1.0, 0.0, -1.0, 0.0][j.rem_euclid(4) as usize]
}

/// `∫_0^1 ψ^(-k)(q) ψ^(-k2)(q) dq`.
pub fn def_negapoly_product(k: usize, k2: usize) -> Result<ClosedFormValue> {
    if k == 0 || k2 == 0 {
        return Err(Error::domain("k and k2 must be positive"));
    }
    let cosine = parity_factor(k as i64 - k2 as i64);
    if cosine == 0.0 {
        return Ok(ClosedFormValue { value: 0.0, terms_used: 0, err_estimate: 0.0 });
    }
    let s_arg = (k + k2) as f64;
    let c = CONSTANTS.euler_gamma + (2.0 * PI).ln();
    let mut s = Sum::default();
    s.push(1.0, riemann_zeta_d2z(s_arg)?);
    s.push(-2.0 * c, riemann_zeta_dz(s_arg)?);
    s.push(c * c + PI * PI / 4.0, riemann_zeta(s_arg)?);
    ClosedFormValue::finite(s.scaled(2.0 * cosine / (2.0 * PI).powi((k + k2) as i32)))
}

/// `∫_0^1 ζ(z,q) ζ(z2,q) dq = 2Γ(1-z)Γ(1-z2)(2π)^{z+z2-2} ζ(2-z-z2) cos(π(z-z2)/2)`, `z, z2 ≤ 0`.
pub fn def_zeta_product(z: f64, z2: f64) -> Result<ClosedFormValue> {
    if !(z <= 0.0 && z2 <= 0.0) {
        return Err(Error::domain(format!("need z, z2 ≤ 0, got z = {z}, z2 = {z2}")));
    }
    let cosine = cos_pi(0.5 * (z - z2));
    if cosine == 0.0 {
        return Ok(ClosedFormValue { value: 0.0, terms_used: 0, err_estimate: 0.0 });
    }
    let log_pre = 2f64.ln() + ln_gamma(1.0 - z) + ln_gamma(1.0 - z2) + (z + z2 - 2.0) * (2.0 * PI).ln();
    let zeta_part = riemann_zeta(2.0 - z - z2)?;
    let mut s = Sum::default();
    s.push(cosine * log_pre.exp(), zeta_part);
    s.err += 8.0 * EPS * (1.0 + log_pre.abs()) * s.value.abs();
    ClosedFormValue::finite(s)
}

/// `∫_0^q lnΓ(t+1) dt = q ln√(2π) + ½A_2(q+1) - ½B_2(q+1) - ζ'(-1) + ½B_2`.
pub fn def_loggamma_shifted(q: f64) -> Result<ClosedFormValue> {
    if !(q >= 0.0) {
        return Err(Error::domain(format!("q must be nonnegative, got {q}")));
    }
    let mut s = Sum::default();
    s.push_exact(q * CONSTANTS.log_sqrt_2pi);
    s.push(0.5, a_k(fam(2)?, q + 1.0)?);
    s.push_exact(-0.5 * bernoulli_poly(2, q + 1.0)?);
    s.push(-1.0, riemann_zeta_dz(-1.0)?);
    s.push_exact(0.5 / 6.0);
    ClosedFormValue::finite(s)
}
