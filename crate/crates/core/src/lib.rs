pub mod bernoulli;
pub mod constants;
pub mod error;
pub mod eval;
pub mod families;
pub mod fourier;
pub mod gamma;
pub mod hurwitz;
pub mod integrals;
pub mod quadrature;
pub mod verify;
