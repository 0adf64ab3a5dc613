//! Named constants used by closed forms.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub euler_gamma: f64,
    pub catalan: f64,
    pub log_sqrt_2pi: f64,
    pub zeta_prime_minus1: f64,
}

pub const CONSTANTS: Constants = Constants {
    euler_gamma: 0.577_215_664_901_532_9,
    catalan: 0.915_965_594_177_219,
    log_sqrt_2pi: 0.918_938_533_204_672_8,
    zeta_prime_minus1: -0.165_421_143_700_450_93,
};

pub const ZETA3: f64 = 1.202_056_903_159_594_3;
pub const ZETA5: f64 = 1.036_927_755_143_37;

impl Constants {
    /// `ζ'(-1)` from `ζ'(2)` through the functional equation:
    /// `ζ'(-1) = ζ'(2)/(2π²) - (2 ln√(2π) + γ - 1)/12`.
    pub fn zeta_prime_minus1_from(&self, zeta_prime_2: f64) -> f64 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        zeta_prime_2 / (2.0 * pi2) - (2.0 * self.log_sqrt_2pi + self.euler_gamma - 1.0) / 12.0
    }
}
