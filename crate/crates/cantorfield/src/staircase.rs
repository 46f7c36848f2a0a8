//! The transverse staircase psi on the rise scale.
//!
//! psi is a Cantor function associated with the image g(C) of the Cantor set
//! under the rise: monotone, continuous, non-constant, and constant on every
//! component of [0, g(1)] minus g(C). This crate fixes psi = c compose g^-1,
//! where c is the classical staircase: it is computable to machine precision
//! and normalized to psi(0) = 0, psi(g(1)) = 1. Outside [0, g(1)] psi extends
//! by those constants.

use crate::cantor::cantor_function;
use crate::error::Result;
use crate::generator::Generator;

/// A sampled value of the transverse staircase.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct StaircaseEval {
    /// Ordinate in the plane where psi was evaluated.
    pub y: f64,
    /// Staircase value in [0, 1].
    pub value: f64,
}

/// psi(y) = c(g^-1(y)) for y in [0, g(1)], extended by 0 below and 1 above.
///
/// Exact (to the last bit) on every component of the complement of g(C): the
/// preimage lands strictly inside a gap and the staircase plateau absorbs the
/// inversion tolerance. Near points of g(C) the rise is flat to order 3r, so
/// an f64 ordinate determines its preimage only to about (eps/K2)^(1/(3r)),
/// and psi inherits the staircase modulus of that uncertainty: roughly 1e-4
/// at r = 1. The error is intrinsic to double precision, not to the solver.
pub fn psi(gen: &Generator, y: f64) -> Result<f64> {
    if y <= 0.0 {
        return Ok(0.0);
    }
    if y >= gen.total_rise() {
        return Ok(1.0);
    }
    let x = gen.rise_inverse(y)?;
    Ok(cantor_function(x, gen.config()))
}

/// psi together with its argument, for tabulation.
pub fn evaluate(gen: &Generator, y: f64) -> Result<StaircaseEval> {
    Ok(StaircaseEval {
        y,
        value: psi(gen, y)?,
    })
}
