//! Derived families: `A_k`, balanced and Gosper negapolygammas, Clausen
//! functions, the Fourier kernels `C(z,q)`, `S(z,q)`, and polygammas.

use std::f64::consts::PI;

use num::complex::Complex64;

use crate::bernoulli::{bernoulli_number, bernoulli_poly, factorial, harmonic};
use crate::constants::CONSTANTS;
use crate::error::{Error, Result};
use crate::eval::{EvalResult, SeriesControl};
use crate::fourier::log_dirichlet_sums;
use crate::gamma;
use crate::hurwitz::{hurwitz_zeta, hurwitz_zeta_dz, ZetaArgs};
use crate::quadrature::{integrate, QuadratureProblem, DEFAULT_MAX_EVALS};

const EPS: f64 = f64::EPSILON;

/// Family order `k`, `1 ≤ k ≤ 40`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FamilyIndex(usize);

impl FamilyIndex {
    pub const MAX: usize = 40;

    pub fn new(k: usize) -> Result<Self> {
        if (1..=Self::MAX).contains(&k) {
            Ok(Self(k))
        } else {
            Err(Error::domain(format!("family order k must lie in 1..=40, got {k}")))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

fn index(k: usize) -> Result<FamilyIndex> {
    FamilyIndex::new(k)
}

/// `e^{-ikπ/2}` without rounding.
fn quarter_turn_conj(k: usize) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// `ζ(-r) = (-1)^r B_{r+1}/(r+1)`, from the exact Bernoulli table.
pub fn zeta_nonpositive(r: usize) -> Result<f64> {
    let b = bernoulli_number(r + 1)?;
    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * b / (r + 1) as f64)
}

/// `A_k(q) = k ∂_z ζ(z, q)` at `z = 1 - k`. At `q = 0` (k ≥ 2) the continuous
/// extension `k ζ'(1-k)` is returned.
pub fn a_k(k: FamilyIndex, q: f64) -> Result<EvalResult> {
    let k = k.get();
    if q == 0.0 {
        if k == 1 {
            return Err(Error::domain("A_1(q) = lnΓ(q) + ζ'(0) diverges at q = 0"));
        }
        return a_k(index(k)?, 1.0);
    }
    let d = hurwitz_zeta_dz(ZetaArgs::new(1.0 - k as f64, q)?)?;
    Ok(d.scale(k as f64))
}

/// `A_k(q)` on `[0, 1]` from its Fourier expansion (k ≥ 2).
pub fn a_k_fourier(k: FamilyIndex, q: f64, ctrl: &SeriesControl) -> Result<EvalResult> {
    let k = k.get();
    if k < 2 {
        return Err(Error::domain("the Fourier form of A_k needs k ≥ 2"));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(format!("the Fourier form of A_k needs 0 ≤ q ≤ 1, got {q}")));
    }
    let sums = log_dirichlet_sums(k as f64, q, ctrl)?;
    let poly = bernoulli_poly(k, q)?;
    let lead = harmonic(k - 1) - CONSTANTS.euler_gamma - (2.0 * PI).ln();
    let coef = 2.0 * factorial(k) / (2.0 * PI).powi(k as i32);
    let m = (k - 1) / 2;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let bracket = if k % 2 == 1 {
        sign * (sums.log1.im + 0.5 * PI * sums.plain.re)
    } else {
        -sign * (sums.log1.re - 0.5 * PI * sums.plain.im)
    };
    let value = lead * poly + coef * bracket;
    let err = coef * sums.err * (1.0 + PI) + 8.0 * EPS * (lead * poly).abs() + 8.0 * EPS * (coef * bracket).abs();
    Ok(EvalResult::new(value, err))
}

/// `A_k(q)` for `q > 1` by stepping down with `A_k(q+1) = A_k(q) + k q^{k-1} ln q`.
pub fn a_k_shifted(k: FamilyIndex, q: f64) -> Result<EvalResult> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(Error::domain(format!("a_k_shifted needs q > 1, got {q}")));
    }
    let kk = k.get();
    let steps = q.ceil() as usize - 1;
    let base = q - steps as f64;
    let mut acc = a_k(k, base)?;
    for i in 0..steps {
        let x = base + i as f64;
        let t = kk as f64 * x.powi(kk as i32 - 1) * x.ln();
        acc = acc.add(EvalResult::new(t, EPS * t.abs()));
    }
    Ok(acc)
}

/// Balanced negapolygamma `ψ^(-k)(q) = [A_k(q) - H_{k-1} B_k(q)]/k!`.
pub fn negapolygamma(k: FamilyIndex, q: f64) -> Result<EvalResult> {
    let kk = k.get();
    let a = a_k(k, q)?;
    let hb = harmonic(kk - 1) * bernoulli_poly(kk, q)?;
    let f = factorial(kk);
    Ok(EvalResult::new((a.value - hb) / f, (a.err_estimate + 4.0 * EPS * hb.abs()) / f))
}

/// `ψ^(-k)(q)` on `[0, 1]` from its Fourier expansion (k ≥ 2).
pub fn negapolygamma_fourier(k: FamilyIndex, q: f64, ctrl: &SeriesControl) -> Result<EvalResult> {
    let k = k.get();
    if k < 2 {
        return Err(Error::domain("the Fourier form of ψ^(-k) needs k ≥ 2"));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(format!("the Fourier form of ψ^(-k) needs 0 ≤ q ≤ 1, got {q}")));
    }
    let sums = log_dirichlet_sums(k as f64, q, ctrl)?;
    let u = quarter_turn_conj(k);
    let p0 = u * sums.plain;
    let p1 = u * sums.log1;
    let c = (2.0 * PI).ln() + CONSTANTS.euler_gamma;
    let coef = 2.0 / (2.0 * PI).powi(k as i32);
    let bracket = c * p0.re + p1.re - 0.5 * PI * p0.im;
    let err = coef * (sums.err * (c + 1.0 + PI) + 8.0 * EPS * (c * p0.re.abs() + p1.re.abs() + p0.im.abs()));
    Ok(EvalResult::new(coef * bracket, err))
}

/// `ψ^(-k)(q)` through `[ζ'(1-k,q) + (γ + ψ(k)) ζ(1-k,q)]/(k-1)!`, using the
/// numerical digamma and Hurwitz kernels.
pub fn negapolygamma_alt_form(k: FamilyIndex, q: f64) -> Result<EvalResult> {
    let kk = k.get();
    let args = ZetaArgs::new(1.0 - kk as f64, q)?;
    let d = hurwitz_zeta_dz(args)?;
    let z = hurwitz_zeta(args)?;
    let w = CONSTANTS.euler_gamma + gamma::digamma(kk as f64);
    let f = factorial(kk - 1);
    let value = (d.value + w * z.value) / f;
    let err = (d.err_estimate + w.abs() * z.err_estimate + 4.0 * EPS * (w * z.value).abs()) / f;
    Ok(EvalResult::new(value, err))
}

/// Gosper's `ψ_{-k}(q) = ∫_0^q (q-t)^{k-2} lnΓ(t) dt / (k-2)!`, k ≥ 2, by quadrature.
pub fn gosper_negapolygamma(k: FamilyIndex, q: f64) -> Result<EvalResult> {
    gosper_negapolygamma_with_budget(k, q, DEFAULT_MAX_EVALS)
}

pub fn gosper_negapolygamma_with_budget(k: FamilyIndex, q: f64, max_evals: usize) -> Result<EvalResult> {
    let k = k.get();
    if k < 2 {
        return Err(Error::domain("Gosper negapolygamma needs k ≥ 2"));
    }
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::domain(format!("Gosper negapolygamma needs q > 0, got {q}")));
    }
    let f = factorial(k - 2);
    let p = QuadratureProblem::new(move |t: f64| (q - t).powi(k as i32 - 2) * gamma::ln_gamma(t) / f, 0.0, q)
        .tol(1e-13)
        .singular_lo(true)
        .max_evals(max_evals);
    let r = integrate(&p)?;
    Ok(EvalResult::new(r.value, r.err_estimate))
}

/// `ζ'(-r) + H_r ζ(-r)`, i.e. minus the log of the generalized Glaisher constant.
pub fn glaisher_log(r: usize) -> Result<f64> {
    if r > 20 {
        return Err(Error::Range(format!("glaisher_log supports r ≤ 20, got {r}")));
    }
    let d = hurwitz_zeta_dz(ZetaArgs::new(-(r as f64), 1.0)?)?.value;
    Ok(d + harmonic(r) * zeta_nonpositive(r)?)
}

/// `ψ^(-k)(q) - ψ_{-k}(q) = Σ_{r<k} q^{k-1-r} (ζ'(-r) + H_r ζ(-r)) / (r! (k-1-r)!)`.
pub fn gosper_offset(k: FamilyIndex, q: f64) -> Result<f64> {
    let k = k.get();
    let mut s = 0.0;
    for r in 0..k {
        s += q.powi((k - 1 - r) as i32) * glaisher_log(r)? / (factorial(r) * factorial(k - 1 - r));
    }
    Ok(s)
}

/// Clausen function `Cl_n(x)`: sine series for even `n`, cosine series for odd `n`.
pub fn clausen(n: usize, x: f64, ctrl: &SeriesControl) -> Result<EvalResult> {
    if n < 2 {
        return Err(Error::domain(format!("clausen needs n ≥ 2, got {n}")));
    }
    if !x.is_finite() {
        return Err(Error::domain("clausen needs finite x"));
    }
    let q = (x / (2.0 * PI)).rem_euclid(1.0);
    let sums = log_dirichlet_sums(n as f64, q, ctrl)?;
    let v = if n % 2 == 0 { sums.plain.im } else { sums.plain.re };
    Ok(EvalResult::new(v, sums.err + 4.0 * EPS * v.abs()))
}

/// `C(z, q) = Σ cos(2πnq)/n^z` and `S(z, q) = Σ sin(2πnq)/n^z` for `z > 1`.
pub fn fourier_kernels(z: f64, q: f64, ctrl: &SeriesControl) -> Result<(EvalResult, EvalResult)> {
    if !(z > 1.0) {
        return Err(Error::domain(format!("Fourier kernels need z > 1, got {z}")));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(format!("Fourier kernels need 0 ≤ q ≤ 1, got {q}")));
    }
    let sums = log_dirichlet_sums(z, q, ctrl)?;
    let c = sums.plain.re;
    let s = sums.plain.im;
    Ok((EvalResult::new(c, sums.err + 4.0 * EPS * c.abs()), EvalResult::new(s, sums.err + 4.0 * EPS * s.abs())))
}

/// `ψ(q)` by recurrence and asymptotic expansion.
pub fn digamma(q: f64) -> Result<EvalResult> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::domain(format!("digamma needs q > 0, got {q}")));
    }
    let v = gamma::digamma(q);
    Ok(EvalResult::new(v, 8.0 * EPS * (1.0 + v.abs())))
}

/// `lnΓ(q)` by recurrence and Stirling series.
pub fn loggamma(q: f64) -> Result<EvalResult> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::domain(format!("loggamma needs q > 0, got {q}")));
    }
    let v = gamma::ln_gamma(q);
    Ok(EvalResult::new(v, 8.0 * EPS * (1.0 + v.abs())))
}

/// `ψ^(m)(q)`: digamma for `m = 0`, otherwise `(-1)^{m+1} m! ζ(m+1, q)`.
pub fn polygamma(m: usize, q: f64) -> Result<EvalResult> {
    if m == 0 {
        return digamma(q);
    }
    let z = hurwitz_zeta(ZetaArgs::new(m as f64 + 1.0, q)?)?;
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    Ok(z.scale(sign * factorial(m)))
}

/// `ψ^(j)(x)` for any integer order: polygamma for `j ≥ 0`, balanced
/// negapolygamma for `j < 0`.
pub fn polygamma_any(j: i64, x: f64) -> Result<EvalResult> {
    if j >= 0 {
        polygamma(j as usize, x)
    } else {
        negapolygamma(index((-j) as usize)?, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> FamilyIndex {
        FamilyIndex::new(n).unwrap()
    }

    #[test]
    fn index_bounds() {
        assert!(FamilyIndex::new(0).is_err());
        assert!(FamilyIndex::new(41).is_err());
        assert_eq!(FamilyIndex::new(40).unwrap().get(), 40);
    }

    #[test]
    fn zeta_at_nonpositive_integers() {
        assert_eq!(zeta_nonpositive(0).unwrap(), -0.5);
        assert!((zeta_nonpositive(1).unwrap() + 1.0 / 12.0).abs() < 1e-17);
        assert_eq!(zeta_nonpositive(2).unwrap(), 0.0);
        assert!((zeta_nonpositive(3).unwrap() - 1.0 / 120.0).abs() < 1e-17);
    }

    #[test]
    fn a1_at_zero_is_rejected() {
        assert!(a_k(k(1), 0.0).is_err());
        let a = a_k(k(3), 0.0).unwrap().value;
        assert_eq!(a, a_k(k(3), 1.0).unwrap().value);
    }

    #[test]
    fn quarter_turns() {
        for n in 0..8 {
            let u = quarter_turn_conj(n);
            let ang = -(n as f64) * PI / 2.0;
            assert!((u.re - ang.cos()).abs() < 1e-15 && (u.im - ang.sin()).abs() < 1e-15);
        }
    }
}
