//! The foliation family and the tangent vector field.
//!
//! For t in [0, 1] the map f_t(y) = g^-1(y) + t psi(y) is a strictly
//! increasing homeomorphism of the line; its inverse g_t is the height of the
//! leaf through the origin of foliation F_t, and every other leaf is a
//! horizontal translate L^t_c: y = g_t(x - c). All of them are tangent to
//!
//! ```text
//! X(x, y) = (1, slope(g^-1(y)))
//! ```
//!
//! In leaf coordinates f_t(g(x)) = x + t c(x) with c the Cantor staircase, a
//! horizontal shear of the base leaf. Inverting that shear needs one
//! staircase evaluation per bisection step instead of a nested inversion, so
//! g_t(x) evaluates as g(shear^-1(x)).

use crate::cantor::{cantor_function, resolve_in_cantor};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::generator::{bisect, Generator};
use crate::staircase::psi;
use crate::SmoothnessOrder;

/// Parameter of one foliation in the family, constrained to [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FoliationParam(f64);

impl FoliationParam {
    pub fn new(t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::domain(format!(
                "foliation parameter must lie in [0, 1], got {t}"
            )));
        }
        Ok(FoliationParam(t))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// A single leaf L^t_c: the graph of x -> g_t(x - c).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LeafSpec {
    pub t: FoliationParam,
    /// Horizontal translate of the leaf through the origin.
    pub c: f64,
}

/// A value of the field X; the horizontal component is always 1.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PlanarVector {
    pub dx: f64,
    pub dy: f64,
}

/// The one-parameter family of foliations tangent to the field.
#[derive(Debug, Clone)]
pub struct FoliationFamily {
    gen: Generator,
}

impl FoliationFamily {
    pub fn new(order: SmoothnessOrder, cfg: EvalConfig) -> Self {
        FoliationFamily {
            gen: Generator::new(order, cfg),
        }
    }

    pub fn generator(&self) -> &Generator {
        &self.gen
    }

    pub fn config(&self) -> &EvalConfig {
        self.gen.config()
    }

    /// Abscissa of the t-leaf through the origin at height y:
    /// f_t(y) = g^-1(y) + t psi(y).
    pub fn leaf_abscissa(&self, t: FoliationParam, y: f64) -> Result<f64> {
        if !y.is_finite() {
            return Err(Error::domain(format!(
                "leaf_abscissa requires finite y, got {y}"
            )));
        }
        let u = self.gen.rise_inverse(y)?;
        // psi(y) = c(g^-1(y)) by construction; reuse the pullback.
        Ok(u + t.get() * cantor_function(u, self.gen.config()))
    }

    /// Abscissa of the t-leaf at the point (x, g(x)) of the base leaf:
    /// f_t(g(x)) evaluated through the identity f_t(g(x)) = x + t c(x).
    ///
    /// Equivalent to `leaf_abscissa(t, rise(x))` but far more accurate near
    /// the Cantor set, where inverting the rise right after evaluating it
    /// would cost ~(eps/K2)^(1/(3r)) of the abscissa.
    pub fn shear(&self, t: FoliationParam, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::domain(format!("shear requires finite x, got {x}")));
        }
        Ok(x + t.get() * cantor_function(x, self.gen.config()))
    }

    /// Height of the t-leaf through the origin at abscissa x: the inverse of
    /// `leaf_abscissa`, computed as g(shear^-1(x)).
    pub fn leaf_height(&self, t: FoliationParam, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::domain(format!(
                "leaf_height requires finite x, got {x}"
            )));
        }
        let u = self.shear_inverse(t, x)?;
        Ok(self.gen.rise(u))
    }

    /// Solves u + t c(u) = z for u. The bracket [z - t, z] is monotone in u
    /// since 0 <= t c <= t.
    fn shear_inverse(&self, t: FoliationParam, z: f64) -> Result<f64> {
        let t = t.get();
        if t == 0.0 {
            return Ok(z);
        }
        let cfg = self.gen.config();
        bisect(|u| u + t * cantor_function(u, cfg), z - t, z, z, cfg)
    }

    /// The field X = (1, slope(g^-1(y))): independent of x, tangent to every
    /// leaf of every foliation of the family.
    pub fn field_at(&self, _x: f64, y: f64) -> Result<PlanarVector> {
        let u = self.gen.rise_inverse(y)?;
        Ok(PlanarVector {
            dx: 1.0,
            dy: self.gen.slope(u),
        })
    }

    /// Uniform samples (x, g_t(x - c)) of a leaf over [x_min, x_max]; the
    /// heights are strictly increasing along the sequence.
    pub fn sample_leaf(
        &self,
        leaf: &LeafSpec,
        x_min: f64,
        x_max: f64,
        count: usize,
    ) -> Result<Vec<(f64, f64)>> {
        if !x_min.is_finite() || !x_max.is_finite() || x_min >= x_max {
            return Err(Error::domain(format!(
                "sample range must satisfy x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if count < 2 {
            return Err(Error::domain(format!(
                "sample count must be at least 2, got {count}"
            )));
        }
        let step = (x_max - x_min) / (count - 1) as f64;
        let mut points = Vec::with_capacity(count);
        for i in 0..count {
            let x = if i + 1 == count {
                x_max
            } else {
                x_min + i as f64 * step
            };
            points.push((x, self.leaf_height(leaf.t, x - leaf.c)?));
        }
        Ok(points)
    }

    /// Membership of z in the transported Cantor set C_t = f_t(g(C)): true
    /// when the pullback shear^-1(z) resolves into the Cantor set at the
    /// depth and snap tolerance the rise inversion supports (see
    /// [`Generator::membership_resolution`]). Exact membership is not
    /// decidable in floating point.
    pub fn in_cantor_image(&self, t: FoliationParam, z: f64) -> Result<bool> {
        if !z.is_finite() {
            return Err(Error::domain(format!(
                "in_cantor_image requires finite z, got {z}"
            )));
        }
        let u = self.shear_inverse(t, z)?;
        let (depth, snap) = self.gen.membership_resolution();
        Ok(resolve_in_cantor(u, depth, snap))
    }

    /// The transverse staircase on the rise scale (delegates to [`psi`]).
    pub fn staircase(&self, y: f64) -> Result<f64> {
        psi(&self.gen, y)
    }
}
