//! Simulation and verification laboratory for first-order limit laws on
//! preferential attachment graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`multigraph`]: growth-ordered undirected multigraphs, balls and bounded cycles.
//! * [`generators`]: classical and sequential attachment rules, the Pólya urn
//!   representation and the Pólya-point limit tree.
//! * [`logic`]: first-order sentences over the multigraph signature.
//! * [`efgame`]: Ehrenfeucht-Fraïssé games deciding `≡_k`.
//! * [`neighborhoods`]: canonical codes, cycle components and profiles.
//! * [`chains`]: inhomogeneous counting processes and birth-death chains.
//! * [`experiments`]: Monte Carlo harness producing [`experiments::EstimateTable`]s.
//!
//! Numerical routines whose arithmetic is purely field operations are generic
//! over [`Scalar`], so they can run in `f64` or exactly in [`Rational`].

pub mod chains;
pub mod efgame;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod logic;
pub mod multigraph;
pub mod neighborhoods;
pub mod rng;
pub mod scalar;
pub mod stats;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary precision rational, used for exact matrix products and solvers.
pub type Rational = num_rational::BigRational;

pub type Constants = generators::ModelConstants<f64>;
pub type ExactConstants = generators::ModelConstants<Rational>;
pub type StationaryLawF64 = chains::StationaryLaw<f64>;
pub type ExactStationaryLaw = chains::StationaryLaw<Rational>;
pub type OscillatorF64 = chains::OscillatorRun<f64>;
pub type ExactOscillator = chains::OscillatorRun<Rational>;

pub use multigraph::{Multigraph, Vertex};
