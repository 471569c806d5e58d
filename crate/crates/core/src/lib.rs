//! Reliability of MDS-coded multidimensional storage arrays.
//!
//! Components fail independently with an arbitrary hazard function
//! ([`hazard`]). A 1-D block of `n` components protected by an `(n, k)` MDS
//! code survives while at most `n - k` components have failed; a T-D array
//! applies the same rule per dimension to blocks of the level below. The
//! [`mds`] module gives exact survival, density and hazard per data component
//! for such arrays, [`asymptotic`] their large-array limits, and [`sim`] a
//! seeded Monte Carlo estimate of the same survival curves.

pub mod asymptotic;
pub mod code;
pub mod curve;
pub mod error;
pub mod hazard;
pub mod lifetime;
pub mod mds;
pub mod psi;
pub mod quadrature;
pub mod sim;
pub mod special;

pub use asymptotic::{asymptotic_mu_c, solve_time_for_q, theorem5_constant, LimitRegime};
pub use code::{ArrayConfig, MdsCode};
pub use curve::{Curve, Grid, Spacing};
pub use error::{Error, Result};
pub use hazard::{
    density, reliability, sample_ttf, CompositeBathtub, ConstantHazard, Hazard, HazardModel, SurvivalPoint,
    TabulatedHazard, Weibull, WeibullPiece,
};
pub use lifetime::{afr, mttf, mttf_within, MttfEstimate};
pub use mds::{
    array_density, array_hazard, array_lower_bound, multidim_mu_c, mu_c, mu_c_lower_bound, parity_mu_c,
    repetition_mu_c, system_density, system_survival, BlockModel,
};
pub use psi::{psi, psi_z};
pub use sim::{
    empirical_hazard, run_simulation, run_simulation_with, simulate_system_ttf, Execution, SimConfig, SimOptions,
    SimOutcome,
};
pub use special::LogProb;
