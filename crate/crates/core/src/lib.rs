//! Real-coded genetic algorithm toolkit built around a ring crossover
//! operator, five classic crossover operators to compare it against, and a
//! six-function benchmark harness.
//!
//! The crate is organized along the pipeline of a generational GA:
//!
//! - [`genome`]: value types (bounds, genomes, individuals, populations) and
//!   the deterministic random stream every stochastic operation consumes
//! - [`crossover`]: the six crossover operators as pure functions
//! - [`benchmarks`]: the six test functions with bounds and known optima
//! - [`engine`]: the generational loop (rank scaling, stochastic universal
//!   sampling, crossover dispatch, Gaussian mutation, elitism, bound repair)
//!   under a fixed evaluation budget
//! - [`experiment`]: multi-run grids with per-cell statistics, CSV and
//!   plain-text table output
//! - [`variety`]: exhaustive enumeration of the distinct children each
//!   structural operator can produce
//!
//! Every run is reproducible: all randomness flows through
//! [`rng::RngStream`], seeded from a 64-bit integer.

pub mod benchmarks;
pub mod crossover;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod genome;
pub mod rng;
pub mod variety;

pub use benchmarks::{evaluate, spec_of, FunctionId, FunctionSpec};
pub use crossover::{CrossoverKind, CrossoverParams};
pub use engine::{run, GaConfig, RunResult};
pub use error::{Error, Result};
pub use experiment::{emit_csv, emit_table, run_experiment, CellStats, ExperimentPlan};
pub use genome::{clamp, init_population, Bounds, Genome, Individual, Population};
pub use rng::RngStream;
