//! A Hölder continuous vector field on the plane tangent to a one-parameter
//! family of pairwise distinct foliations with smooth leaves.
//!
//! The construction is elementary but delicate: the middle-thirds Cantor set
//! drives a slope function that vanishes on the set and rises as a scaled
//! polynomial bump on every complementary gap. Its integral g is a strictly
//! increasing C^(r+1) function that is flat to order r+1 on the Cantor set,
//! and the field
//!
//! ```text
//! X(x, y) = (1, slope(g^-1(y)))
//! ```
//!
//! is tangent to the horizontal translates of the graph of g. Shearing that
//! graph horizontally by t times a Cantor staircase produces, for every
//! t in [0, 1], another foliation by C^r graphs tangent to the same field:
//! through each point of the plane pass continuum many distinct integral
//! curves, even though X is Hölder continuous.
//!
//! Modules:
//! - [`cantor`]: exact Cantor-set classification, gap arithmetic, staircase.
//! - [`generator`]: the bump, the slope, the rise g and its inverse.
//! - [`staircase`]: the transverse staircase psi on the rise scale.
//! - [`foliation`]: the foliation family, leaf evaluators and the field.
//! - [`verify`]: quantitative verification suites (Hölder fit, tangency,
//!   flatness, distinctness, ODE funnel) with deterministic seeding.
//! - [`export`]: CSV and SVG emission for sampled leaves.
//! - [`cli`]: the command-line front end used by the `cantorfield` binary.
//!
//! The `examples/` directory holds one runnable example per capability; start
//! with `cargo run --example leaf_gallery`.

pub mod cantor;
pub mod cli;
pub mod config;
pub mod error;
pub mod export;
pub mod foliation;
pub mod generator;
pub mod staircase;
mod ternary;
pub mod verify;

pub use cantor::{cantor_function, classify, count_gaps_left, gap_bounds, GapId, PointClass};
pub use config::{EvalConfig, SmoothnessOrder};
pub use error::{Error, Result};
pub use foliation::{FoliationFamily, FoliationParam, LeafSpec, PlanarVector};
pub use generator::{ConstantsBundle, Generator};
