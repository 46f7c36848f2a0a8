//! Evaluation configuration and the smoothness order of the construction.

use crate::error::{Error, Result};

/// Deepest ternary stage with 3^n representable in `u64` (3^40 < 2^64).
pub const MAX_STAGE: u32 = 40;

/// Smoothness order r of the construction: leaves are graphs of C^r functions.
///
/// Orders above 6 are rejected: the per-stage weights 3^(-3rn) leave the
/// double-precision range after a handful of stages, so nothing past r = 6
/// is numerically meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SmoothnessOrder(u32);

impl SmoothnessOrder {
    pub const MAX: u32 = 6;

    pub fn new(r: u32) -> Result<Self> {
        if r == 0 || r > Self::MAX {
            return Err(Error::domain(format!(
                "smoothness order must satisfy 1 <= r <= {}, got {r}",
                Self::MAX
            )));
        }
        Ok(SmoothnessOrder(r))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl Default for SmoothnessOrder {
    fn default() -> Self {
        SmoothnessOrder(1)
    }
}

impl std::fmt::Display for SmoothnessOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Shared numeric knobs: ternary truncation depth and bisection control.
///
/// The default depth 34 resolves structure down to 3^-34 ~ 6e-17, below the
/// resolution of an f64 in [0, 1]; points unresolved at that depth behave
/// like Cantor points, where the slope function vanishes anyway.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EvalConfig {
    /// Ternary truncation depth N (stages scanned during classification).
    pub depth: u32,
    /// Absolute bisection tolerance on the argument being solved for.
    pub tolerance: f64,
    /// Iteration cap for bisection loops.
    pub max_iterations: u32,
}

impl EvalConfig {
    pub fn new(depth: u32, tolerance: f64, max_iterations: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::domain("truncation depth must be at least 1"));
        }
        if depth > MAX_STAGE {
            return Err(Error::DepthLimit { stage: depth });
        }
        if !tolerance.is_finite() || tolerance <= 0.0 {
            return Err(Error::domain(format!(
                "bisection tolerance must be a positive finite real, got {tolerance}"
            )));
        }
        if max_iterations == 0 {
            return Err(Error::domain("max iterations must be at least 1"));
        }
        Ok(EvalConfig {
            depth,
            tolerance,
            max_iterations,
        })
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            depth: 34,
            tolerance: 1e-14,
            max_iterations: 200,
        }
    }
}

/// Exact powers of three as `u64`, indexed by exponent up to [`MAX_STAGE`].
pub(crate) fn pow3_u64(n: u32) -> Result<u64> {
    if n > MAX_STAGE {
        return Err(Error::DepthLimit { stage: n });
    }
    Ok(3u64.pow(n))
}
