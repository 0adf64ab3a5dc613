//! Identity registry and suite runner. Every check compares two numbers
//! under the mixed rule `|lhs - rhs| ≤ tol · (1 + max(|lhs|, |rhs|))`.

mod registry;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::DEFAULT_MAX_EVALS;

pub const ORACLE_TOL: f64 = 1e-9;
pub const FINITE_DIFFERENCE_TOL: f64 = 1e-6;
pub const CONSTANTS_TOL: f64 = 1e-11;
pub const PRIMITIVE_TOL: f64 = 1e-8;
pub const ALGEBRAIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    PrimitiveDifference,
    DefiniteValue,
    Invariant,
    CrossPath,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::PrimitiveDifference => "primitive-difference",
            Self::DefiniteValue => "definite-value",
            Self::Invariant => "invariant",
            Self::CrossPath => "cross-path",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Core,
    Ak,
    Negapoly,
    Primitives,
    Definite,
    Constants,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["all", "core", "ak", "negapoly", "primitives", "definite", "constants"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Self::All,
            "core" => Self::Core,
            "ak" => Self::Ak,
            "negapoly" => Self::Negapoly,
            "primitives" => Self::Primitives,
            "definite" => Self::Definite,
            "constants" => Self::Constants,
            _ => {
                return Err(Error::Registry(format!(
                    "unknown suite '{s}', expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(Self::NAMES[i])
    }
}

/// Named parameter assignment; serialized as an object in insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<(&'static str, f64)>);

impl Point {
    pub fn new(entries: &[(&'static str, f64)]) -> Self {
        Self(entries.to_vec())
    }

    pub fn get(&self, key: &str) -> f64 {
        self.0
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| panic!("grid point has no parameter '{key}'"))
    }

    pub fn index(&self, key: &str) -> usize {
        self.get(key) as usize
    }

    pub fn entries(&self) -> &[(&'static str, f64)] {
        &self.0
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// Evaluation context passed to every check.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub max_evals: usize,
}

impl Default for Ctx {
    fn default() -> Self {
        Self { max_evals: DEFAULT_MAX_EVALS }
    }
}

type GridFn = fn(&mut ChaCha8Rng) -> Vec<Point>;
type CheckFn = fn(&Point, &Ctx) -> Result<(f64, f64)>;

pub struct IntegralIdentity {
    pub id: &'static str,
    pub paper_anchor: &'static str,
    pub check_kind: CheckKind,
    pub tol: f64,
    pub suites: &'static [Suite],
    grid: GridFn,
    check: CheckFn,
}

impl IntegralIdentity {
    pub fn in_suite(&self, suite: Suite) -> bool {
        suite == Suite::All || self.suites.contains(&suite)
    }

    /// Grid points for this identity, drawn from a stream keyed by `seed` and the id.
    pub fn parameter_grid(&self, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_key(self.id));
        (self.grid)(&mut rng)
    }

    pub fn evaluate(&self, point: &Point, ctx: &Ctx) -> Result<(f64, f64)> {
        (self.check)(point, ctx)
    }
}

impl fmt::Debug for IntegralIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegralIdentity")
            .field("id", &self.id)
            .field("check_kind", &self.check_kind)
            .field("tol", &self.tol)
            .finish()
    }
}

/// FNV-1a, so draw streams do not depend on registry order.
fn stream_key(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn registry() -> &'static [IntegralIdentity] {
    registry::all()
}

pub fn find_identity(id: &str) -> Option<&'static IntegralIdentity> {
    registry().iter().find(|i| i.id == id)
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityInfo {
    pub id: &'static str,
    pub paper_anchor: &'static str,
    pub check_kind: CheckKind,
}

pub fn list_identities() -> Vec<IdentityInfo> {
    registry()
        .iter()
        .map(|i| IdentityInfo { id: i.id, paper_anchor: i.paper_anchor, check_kind: i.check_kind })
        .collect()
}

/// Mixed absolute/relative comparison.
pub fn mixed_pass(lhs: f64, rhs: f64, tol: f64) -> bool {
    (lhs - rhs).abs() <= tol * (1.0 + lhs.abs().max(rhs.abs()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: &'static str,
    pub grid_index: usize,
    pub point: Point,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckRecord {
    fn new(id: &'static str, grid_index: usize, point: Point, tol: f64, outcome: Result<(f64, f64)>) -> Self {
        match outcome {
            Ok((lhs, rhs)) => {
                let abs_residual = (lhs - rhs).abs();
                let scale = lhs.abs().max(rhs.abs());
                let rel_residual = if abs_residual == 0.0 { 0.0 } else { abs_residual / scale };
                let pass = abs_residual.is_finite() && mixed_pass(lhs, rhs, tol);
                Self { id, grid_index, point, lhs, rhs, abs_residual, rel_residual, tol, pass, error: None }
            }
            Err(e) => Self {
                id,
                grid_index,
                point,
                lhs: f64::NAN,
                rhs: f64::NAN,
                abs_residual: f64::NAN,
                rel_residual: f64::NAN,
                tol,
                pass: false,
                error: Some(e.to_string()),
            },
        }
    }

    /// `|lhs - rhs| / (1 + max(|lhs|, |rhs|))`, the quantity compared against `tol`.
    pub fn mixed_residual(&self) -> f64 {
        self.abs_residual / (1.0 + self.lhs.abs().max(self.rhs.abs()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub oracle: f64,
    pub finite_difference: f64,
    pub constants: f64,
    pub primitives: f64,
    pub algebraic: f64,
    #[serde(rename = "override")]
    pub override_tol: Option<f64>,
}

impl Tolerances {
    fn with_override(override_tol: Option<f64>) -> Self {
        Self {
            oracle: ORACLE_TOL,
            finite_difference: FINITE_DIFFERENCE_TOL,
            constants: CONSTANTS_TOL,
            primitives: PRIMITIVE_TOL,
            algebraic: ALGEBRAIC_TOL,
            override_tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub worst_residual: f64,
    pub worst_id: Option<&'static str>,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub seed: u64,
    pub tol_override: Option<f64>,
    pub ctx: Ctx,
}

impl RunConfig {
    pub fn new(seed: u64) -> Self {
        Self { seed, tol_override: None, ctx: Ctx::default() }
    }
}

pub fn run_suite(suite: &str, seed: u64, tol_override: Option<f64>) -> Result<VerificationReport> {
    run_suite_with(suite, &RunConfig { seed, tol_override, ctx: Ctx::default() })
}

pub fn run_suite_with(suite: &str, cfg: &RunConfig) -> Result<VerificationReport> {
    let s: Suite = suite.parse()?;
    let ids: Vec<&IntegralIdentity> = registry().iter().filter(|i| i.in_suite(s)).collect();
    run_identities(suite, &ids, cfg)
}

/// Runs an explicit list of identities; used by the suite runner and by callers
/// that want a single identity.
pub fn run_identities(label: &str, ids: &[&IntegralIdentity], cfg: &RunConfig) -> Result<VerificationReport> {
    if let Some(t) = cfg.tol_override {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain(format!("tolerance override must be positive, got {t}")));
        }
    }
    if ids.is_empty() {
        return Err(Error::Registry(format!("suite '{label}' has no identities")));
    }
    let start = Instant::now();
    let jobs: Vec<(&IntegralIdentity, usize, Point)> = ids
        .iter()
        .flat_map(|i| i.parameter_grid(cfg.seed).into_iter().enumerate().map(move |(g, p)| (*i, g, p)))
        .collect();
    let mut checks: Vec<CheckRecord> = jobs
        .into_par_iter()
        .map(|(ident, g, p)| {
            let tol = cfg.tol_override.unwrap_or(ident.tol);
            let outcome = ident.evaluate(&p, &cfg.ctx);
            CheckRecord::new(ident.id, g, p, tol, outcome)
        })
        .collect();
    checks.sort_by(|a, b| a.id.cmp(b.id).then(a.grid_index.cmp(&b.grid_index)));

    let passed = checks.iter().filter(|c| c.pass).count();
    let mut worst_residual = 0.0;
    let mut worst_id = None;
    for c in &checks {
        let r = if c.error.is_some() { f64::INFINITY } else { c.mixed_residual() };
        let r = if r.is_nan() { f64::INFINITY } else { r };
        if worst_id.is_none() || r > worst_residual {
            worst_residual = r;
            worst_id = Some(c.id);
        }
    }
    let summary = Summary {
        total: checks.len(),
        passed,
        failed: checks.len() - passed,
        worst_residual,
        worst_id,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    Ok(VerificationReport {
        suite: label.to_string(),
        seed: cfg.seed,
        tolerances: Tolerances::with_override(cfg.tol_override),
        checks,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            let s: Suite = name.parse().unwrap();
            assert_eq!(s.to_string(), name);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::Registry(_))));
    }

    #[test]
    fn stream_keys_differ() {
        assert_ne!(stream_key("a"), stream_key("b"));
        assert_eq!(stream_key(""), 0xcbf2_9ce4_8422_2325);
    }

    #[test]
    fn mixed_rule() {
        assert!(mixed_pass(1e6, 1e6 + 1e-4, 1e-9 * 1e2));
        assert!(mixed_pass(0.0, 1e-10, 1e-9));
        assert!(!mixed_pass(0.0, 1e-8, 1e-9));
    }

    #[test]
    fn errors_become_failed_records() {
        let r = CheckRecord::new("x", 0, Point::new(&[("q", 1.0)]), 1e-9, Err(Error::domain("bad")));
        assert!(!r.pass);
        assert!(r.error.unwrap().contains("bad"));
    }
}
