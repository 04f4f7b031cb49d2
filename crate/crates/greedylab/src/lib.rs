//! greedylab: a desk-scale laboratory for thresholding-greedy approximation
//! in sequence spaces.
//!
//! The crate evaluates a family of Banach sequence-space norms exactly, runs
//! the thresholding greedy algorithm and its weak and `(a, b, t)`-weak
//! relaxations, computes best m-term approximation functionals with explicit
//! witnesses, estimates basis constants with explicit one-sidedness, and
//! packages executable pass/fail suites for the inequalities and
//! counterexamples those objects satisfy.
//!
//! Start with the runnable examples (`cargo run --example eval_norms`, etc.)
//! or the `greedylab` binary for batch experiments.

pub mod constants;
pub mod error;
pub mod functionals;
pub mod greedy;
pub mod optimize;
pub mod samples;
pub mod spaces;
pub mod vector;
pub mod verify;
pub mod weights;

pub mod cli;

pub use error::{Error, Result};
pub use spaces::{eval_norm, SpaceSpec};
pub use vector::{Coord, FiniteVector};
pub use weights::WeightFunction;
