//! Exact computation of the G₂-invariant Monge–Ampère equations on the
//! contactification of the ten-dimensional orbit `G₂/GL₂(ℝ)`.
//!
//! The pipeline runs bottom-up: [`rootsys`] builds G₂ and its gradations,
//! [`g2rep`] realizes the stabilizer action on the orbit module, [`exterior`]
//! solves for invariant forms, [`invariants`] names them, [`mae`] turns
//! five-forms into polynomials in the Hessian entries `u_ij`, and
//! [`equivalence`] classifies the resulting equations.

pub mod cli;
pub mod equivalence;
pub mod error;
pub mod exterior;
pub mod g2rep;
pub mod invariants;
pub mod linalg;
pub mod mae;
pub mod parakahler;
pub mod par;
pub mod rational;
pub mod rootsys;

pub use error::{Error, Result};
pub use par::Exec;
pub use rational::Q;
