//! Laboratory for the LCD preferential-attachment random graph model.
//!
//! Four cross-verifying views of the same object:
//!
//! - [`process`] / [`pairing`]: Monte Carlo generators — the dynamic
//!   sub-step process and the static chord-pairing construction;
//! - [`exact`]: the nonhomogeneous Markov chain of a vertex's degree,
//!   computed by forward kernel iteration and independently by
//!   first-passage/survival decomposition, in f64 or exact rationals;
//! - [`theory`]: the closed-form stationary distribution
//!   `P(k) = 2m(m+1) / (k(k+1)(k+2))` and its identities;
//! - [`oracle`]: exhaustive enumeration at tiny sizes, the ground truth
//!   everything else is checked against.
//!
//! [`harness`] orchestrates seeded replicas and three-way comparisons;
//! [`registry`] exposes generators and exact routes as named strategies.

pub mod dist;
pub mod error;
pub mod exact;
pub mod harness;
pub mod oracle;
pub mod pairing;
pub mod process;
pub mod registry;
pub mod report;
pub mod scalar;
pub mod stats;
pub mod theory;

pub use dist::{DegreeDistribution, DistributionKind};
pub use error::{Error, Result};
pub use process::{GraphState, ProcessParams};
pub use scalar::{NumericMode, Scalar};
