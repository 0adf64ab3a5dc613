//! Value/error pairs and series truncation controls.

use serde::Serialize;

/// A computed value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub err_estimate: f64,
}

impl EvalResult {
    pub fn new(value: f64, err_estimate: f64) -> Self {
        debug_assert!(err_estimate >= 0.0);
        Self { value, err_estimate: err_estimate.abs() }
    }

    pub fn exact(value: f64) -> Self {
        Self::new(value, f64::EPSILON * value.abs())
    }

    pub fn scale(self, factor: f64) -> Self {
        Self::new(self.value * factor, self.err_estimate * factor.abs())
    }

    pub fn add(self, other: Self) -> Self {
        Self::new(self.value + other.value, self.err_estimate + other.err_estimate)
    }

    pub fn sub(self, other: Self) -> Self {
        Self::new(self.value - other.value, self.err_estimate + other.err_estimate)
    }
}

/// Truncation rule for infinite series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Absolute truncation tolerance.
    pub tol: f64,
    /// Hard cap on the number of terms.
    pub max_terms: usize,
}

impl SeriesControl {
    pub const fn new(tol: f64, max_terms: usize) -> Self {
        Self { tol, max_terms }
    }

    /// Defaults for slowly decaying Fourier-type sums.
    pub const fn fourier() -> Self {
        Self::new(1e-14, 1_000_000)
    }

    /// Defaults for sums whose terms decay factorially.
    pub const fn factorial() -> Self {
        Self::new(1e-14, 200)
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self::fourier()
    }
}
