//! Named evaluators reachable from `eval` and `table`.

use std::collections::BTreeMap;

use hzk_core::bernoulli::bernoulli_poly;
use hzk_core::error::{Error, Result};
use hzk_core::eval::SeriesControl;
use hzk_core::families::{self, FamilyIndex};
use hzk_core::hurwitz::{self, ZetaArgs};
use hzk_core::integrals::{self, ClosedFormValue, PrimitiveParams};

pub type Params = BTreeMap<String, f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Value {
    pub value: f64,
    pub err_estimate: f64,
}

impl From<hzk_core::eval::EvalResult> for Value {
    fn from(r: hzk_core::eval::EvalResult) -> Self {
        Self { value: r.value, err_estimate: r.err_estimate }
    }
}

impl From<ClosedFormValue> for Value {
    fn from(c: ClosedFormValue) -> Self {
        Self { value: c.value, err_estimate: c.err_estimate }
    }
}

pub struct Ctx<'a> {
    pub params: &'a Params,
    pub series_tol: f64,
}

impl Ctx<'_> {
    fn f(&self, key: &str) -> f64 {
        self.params[key]
    }

    fn int(&self, key: &str) -> Result<usize> {
        let v = self.f(key);
        if v >= 0.0 && v.fract() == 0.0 && v < 1e9 {
            Ok(v as usize)
        } else {
            Err(Error::Domain(format!("parameter --{key} must be a nonnegative integer, got {v}")))
        }
    }

    fn k(&self) -> Result<FamilyIndex> {
        FamilyIndex::new(self.int("k")?)
    }

    fn prim(&self) -> Result<PrimitiveParams> {
        let get = |k: &str, d: f64| self.params.get(k).copied().unwrap_or(d);
        let n = if self.params.contains_key("n") { self.int("n")? } else { 0 };
        let m = if self.params.contains_key("m") { self.int("m")? as i64 } else { 0 };
        Ok(PrimitiveParams {
            n,
            m,
            z: get("z", 0.0),
            a: get("a", 0.0),
            b: get("b", 1.0),
            c: get("c", 0.0),
            d: get("d", 1.0),
            q: get("q", 0.0),
        })
    }

    fn fourier(&self) -> SeriesControl {
        SeriesControl::new(self.series_tol, SeriesControl::fourier().max_terms)
    }

    fn factorial_ctrl(&self) -> SeriesControl {
        SeriesControl::new(self.series_tol, SeriesControl::factorial().max_terms)
    }
}

pub struct FunctionSpec {
    pub name: &'static str,
    pub required: &'static [&'static str],
    pub optional: &'static [&'static str],
    pub summary: &'static str,
    eval: fn(&Ctx) -> Result<Value>,
}

impl FunctionSpec {
    pub fn evaluate(&self, ctx: &Ctx) -> Result<Value> {
        (self.eval)(ctx)
    }

    pub fn accepts(&self, key: &str) -> bool {
        self.required.contains(&key) || self.optional.contains(&key)
    }
}

fn zargs(c: &Ctx) -> Result<ZetaArgs> {
    ZetaArgs::new(c.f("z"), c.f("q"))
}

const AB: &[&str] = &["a", "b"];

pub const FUNCTIONS: &[FunctionSpec] = &[
    FunctionSpec { name: "hurwitz_zeta", required: &["z", "q"], optional: &[], summary: "ζ(z, q)", eval: |c| Ok(hurwitz::hurwitz_zeta(zargs(c)?)?.into()) },
    FunctionSpec { name: "hurwitz_zeta_dz", required: &["z", "q"], optional: &[], summary: "∂_z ζ(z, q)", eval: |c| Ok(hurwitz::hurwitz_zeta_dz(zargs(c)?)?.into()) },
    FunctionSpec { name: "hurwitz_zeta_d2z", required: &["z", "q"], optional: &[], summary: "∂²_z ζ(z, q)", eval: |c| Ok(hurwitz::hurwitz_zeta_d2z(zargs(c)?)?.into()) },
    FunctionSpec { name: "hurwitz_zeta_dq", required: &["z", "q"], optional: &[], summary: "∂_q ζ(z, q)", eval: |c| Ok(hurwitz::hurwitz_zeta_dq(zargs(c)?)?.into()) },
    FunctionSpec { name: "riemann_zeta", required: &["z"], optional: &[], summary: "ζ(z)", eval: |c| Ok(hurwitz::riemann_zeta(c.f("z"))?.into()) },
    FunctionSpec { name: "a_k", required: &["k", "q"], optional: &[], summary: "A_k(q) = k ζ'(1-k, q)", eval: |c| Ok(families::a_k(c.k()?, c.f("q"))?.into()) },
    FunctionSpec { name: "a_k_fourier", required: &["k", "q"], optional: &[], summary: "A_k(q) from its Fourier series, 0 ≤ q ≤ 1", eval: |c| Ok(families::a_k_fourier(c.k()?, c.f("q"), &c.fourier())?.into()) },
    FunctionSpec { name: "negapolygamma", required: &["k", "q"], optional: &[], summary: "balanced ψ^(-k)(q)", eval: |c| Ok(families::negapolygamma(c.k()?, c.f("q"))?.into()) },
    FunctionSpec { name: "negapolygamma_fourier", required: &["k", "q"], optional: &[], summary: "ψ^(-k)(q) from its Fourier series", eval: |c| Ok(families::negapolygamma_fourier(c.k()?, c.f("q"), &c.fourier())?.into()) },
    FunctionSpec { name: "gosper_negapolygamma", required: &["k", "q"], optional: &[], summary: "Gosper ψ_{-k}(q) by quadrature", eval: |c| Ok(families::gosper_negapolygamma(c.k()?, c.f("q"))?.into()) },
    FunctionSpec { name: "polygamma", required: &["m", "q"], optional: &[], summary: "ψ^(m)(q)", eval: |c| Ok(families::polygamma(c.int("m")?, c.f("q"))?.into()) },
    FunctionSpec { name: "digamma", required: &["q"], optional: &[], summary: "ψ(q)", eval: |c| Ok(families::digamma(c.f("q"))?.into()) },
    FunctionSpec { name: "loggamma", required: &["q"], optional: &[], summary: "lnΓ(q)", eval: |c| Ok(families::loggamma(c.f("q"))?.into()) },
    FunctionSpec { name: "clausen", required: &["n", "x"], optional: &[], summary: "Cl_n(x)", eval: |c| Ok(families::clausen(c.int("n")?, c.f("x"), &c.fourier())?.into()) },
    FunctionSpec {
        name: "bernoulli_poly",
        required: &["m", "q"],
        optional: &[],
        summary: "B_m(q)",
        eval: |c| {
            let v = bernoulli_poly(c.int("m")?, c.f("q"))?;
            Ok(Value { value: v, err_estimate: 4.0 * f64::EPSILON * v.abs() })
        },
    },
    FunctionSpec {
        name: "glaisher_log",
        required: &["r"],
        optional: &[],
        summary: "ζ'(-r) + H_r ζ(-r) = -ln A_r",
        eval: |c| {
            let v = families::glaisher_log(c.int("r")?)?;
            Ok(Value { value: v, err_estimate: 8.0 * f64::EPSILON * v.abs().max(1.0) })
        },
    },
    FunctionSpec { name: "prim_zeta_moment", required: &["n", "z", "q"], optional: AB, summary: "∫ q^n ζ(z, a+bq) dq", eval: |c| Ok(integrals::prim_zeta_moment(&c.prim()?)?.into()) },
    FunctionSpec { name: "prim_zeta_bernoulli_weight", required: &["m", "z", "q"], optional: &["a", "b", "c", "d"], summary: "∫ B_m(c+dq) ζ(z, a+bq) dq", eval: |c| Ok(integrals::prim_zeta_bernoulli_weight(&c.prim()?)?.into()) },
    FunctionSpec { name: "prim_bernoulli_moment", required: &["n", "m", "q"], optional: AB, summary: "∫ q^n B_m(a+bq) dq", eval: |c| Ok(integrals::prim_bernoulli_moment(&c.prim()?)?.into()) },
    FunctionSpec { name: "prim_zeta_selfproduct_odd", required: &["n", "z", "q"], optional: &[], summary: "∫ ζ(z-n, q) ζ(z, q) dq, odd n", eval: |c| Ok(integrals::prim_zeta_selfproduct_odd(c.int("n")?, c.f("z"), c.f("q"))?.into()) },
    FunctionSpec { name: "prim_zeta_selfproduct_centered", required: &["n", "z", "q"], optional: &[], summary: "same, paired terms merged", eval: |c| Ok(integrals::prim_zeta_selfproduct_centered(c.int("n")?, c.f("z"), c.f("q"))?.into()) },
    FunctionSpec { name: "prim_exp_zeta", required: &["z", "q"], optional: AB, summary: "∫ e^q ζ(z, a+bq) dq", eval: |c| Ok(integrals::prim_exp_zeta(&c.prim()?, &c.factorial_ctrl())?.into()) },
    FunctionSpec { name: "prim_exp_bernoulli", required: &["m", "q"], optional: AB, summary: "∫ e^q B_m(a+bq) dq", eval: |c| Ok(integrals::prim_exp_bernoulli(&c.prim()?)?.into()) },
    FunctionSpec { name: "prim_polygamma_moment", required: &["n", "m", "q"], optional: AB, summary: "∫ q^n ψ^(m)(a+bq) dq", eval: |c| Ok(integrals::prim_polygamma_moment(&c.prim()?)?.into()) },
    FunctionSpec { name: "prim_digamma_moment", required: &["n", "q"], optional: AB, summary: "∫ q^n ψ(a+bq) dq", eval: |c| Ok(integrals::prim_digamma_moment(&c.prim()?)?.into()) },
    FunctionSpec { name: "prim_negapolygamma_moment", required: &["n", "m", "q"], optional: AB, summary: "∫ q^n ψ^(-m)(a+bq) dq", eval: |c| Ok(integrals::prim_negapolygamma_moment(&c.prim()?)?.into()) },
    FunctionSpec { name: "prim_ak_moment", required: &["n", "m", "q"], optional: AB, summary: "∫ q^n A_m(a+bq) dq", eval: |c| Ok(integrals::prim_ak_moment(&c.prim()?)?.into()) },
    FunctionSpec { name: "prim_loggamma_moment", required: &["n", "q"], optional: AB, summary: "∫ q^n lnΓ(a+bq) dq", eval: |c| Ok(integrals::prim_loggamma_moment(&c.prim()?)?.into()) },
    FunctionSpec { name: "prim_logsine_moment", required: &["n", "q"], optional: &[], summary: "∫ q^n ln sin πq dq", eval: |c| Ok(integrals::prim_logsine_moment(c.int("n")?, c.f("q"))?.into()) },
    FunctionSpec { name: "prim_exp_logsine", required: &["q"], optional: &[], summary: "∫ e^q ln sin πq dq", eval: |c| Ok(integrals::prim_exp_logsine(c.f("q"), &c.factorial_ctrl())?.into()) },
    FunctionSpec { name: "prim_exp_cot", required: &["q"], optional: &[], summary: "∫ e^q cot πq dq", eval: |c| Ok(integrals::prim_exp_cot(c.f("q"), &c.factorial_ctrl())?.into()) },
    FunctionSpec { name: "def_zeta_moment", required: &["n", "z", "a", "b"], optional: &[], summary: "∫_0^1 q^n ζ(z, a+bq) dq", eval: |c| Ok(integrals::def_zeta_moment(c.int("n")?, c.f("z"), c.f("a"), c.f("b"))?.into()) },
    FunctionSpec { name: "def_zeta_moment_unit", required: &["n", "z"], optional: &[], summary: "∫_0^1 q^n ζ(z, q) dq", eval: |c| Ok(integrals::def_zeta_moment_unit(c.int("n")?, c.f("z"))?.into()) },
    FunctionSpec { name: "def_logsine_moment", required: &["n"], optional: &[], summary: "∫_0^1 q^n ln sin πq dq", eval: |c| Ok(integrals::def_logsine_moment(c.int("n")?)?.into()) },
    FunctionSpec { name: "def_logsine_moment_half", required: &["n"], optional: &[], summary: "∫_0^{1/2} q^n ln sin πq dq", eval: |c| Ok(integrals::def_logsine_moment_half(c.int("n")?)?.into()) },
    FunctionSpec { name: "def_negapoly_product", required: &["k", "k2"], optional: &[], summary: "∫_0^1 ψ^(-k) ψ^(-k2) dq", eval: |c| Ok(integrals::def_negapoly_product(c.int("k")?, c.int("k2")?)?.into()) },
    FunctionSpec { name: "def_zeta_product", required: &["z", "z2"], optional: &[], summary: "∫_0^1 ζ(z, q) ζ(z2, q) dq, z, z2 ≤ 0", eval: |c| Ok(integrals::def_zeta_product(c.f("z"), c.f("z2"))?.into()) },
    FunctionSpec { name: "def_loggamma_shifted", required: &["q"], optional: &[], summary: "∫_0^q lnΓ(t+1) dt", eval: |c| Ok(integrals::def_loggamma_shifted(c.f("q"))?.into()) },
];

pub fn lookup(name: &str) -> Option<&'static FunctionSpec> {
    FUNCTIONS.iter().find(|f| f.name == name)
}

/// Rejects unknown names, missing required parameters and parameters the
/// function does not use, before anything is evaluated.
pub fn validate(name: &str, params: &Params) -> std::result::Result<&'static FunctionSpec, String> {
    let spec = lookup(name).ok_or_else(|| format!("unknown function '{name}'; run `hzk list --functions`"))?;
    for key in spec.required {
        if !params.contains_key(*key) {
            return Err(format!("{name} requires --{key}"));
        }
    }
    for key in params.keys() {
        if !spec.accepts(key) {
            return Err(format!("{name} does not take --{key}"));
        }
    }
    Ok(spec)
}
