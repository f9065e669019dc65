//! Exact integration of uniformly continuous functions on the unit interval.
//!
//! Real numbers are regular approximation functions over the rationals
//! (a completion monad), piecewise-constant functions are finite glue
//! trees of exact rationals, and the integral is the lift of an exact
//! affine fold through the completion. Every printed digit comes with a
//! certified error bound; no floating point is used anywhere in the core.

pub mod cli;
pub mod completion;
pub mod foundations;
pub mod functions;
pub mod integration;
pub mod stepfn;
pub mod stepmetric;

pub use completion::{answer, Complete, Real};
pub use foundations::{OpenUnit, PosRational, Rational};
pub use stepfn::{StepF, StepQ};
