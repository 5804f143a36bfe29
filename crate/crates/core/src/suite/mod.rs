//! The registry of congruences and the runners that sweep it over primes.

mod env;
mod registry;
mod runner;

pub use env::{sign, Param, PrimeEnv};
pub use registry::{find_check, fixed, list_checks, sampled, CheckSpec, Kind, Values};
pub use runner::{
    primes_between, run_check, run_range, run_spec, sample_params, select_checks, CheckResult, Report, RunOptions,
    Sampling, Status, Summary,
};
