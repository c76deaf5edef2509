//! Dimension-aware tolerances.
//!
//! Residuals are compared in a dimensionally normalized form: a length
//! residual is measured against `rel * scale`, a power/area residual against
//! `rel * scale^2`, so that pass/fail is independent of configuration size.

/// Relative tolerance with an absolute floor, tied to a configuration scale.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    /// Dimensionless relative tolerance.
    pub rel: f64,
    /// Absolute floor (length units); guards tiny configurations.
    pub abs_floor: f64,
    /// Configuration diameter (length units).
    pub scale: f64,
}

/// Default relative tolerance for closed-form constructions.
pub const REL_CLOSED_FORM: f64 = 1e-9;
/// Default relative tolerance for objects produced by iterative solves.
pub const REL_ITERATIVE: f64 = 1e-7;

impl Tolerance {
    pub fn new(rel: f64, abs_floor: f64, scale: f64) -> Self {
        assert!(rel > 0.0, "rel must be positive");
        assert!(scale > 0.0, "scale must be positive");
        Tolerance { rel, abs_floor, scale }
    }

    /// Tolerance for closed-form constructions at the given scale.
    pub fn closed_form(scale: f64) -> Self {
        Tolerance::new(REL_CLOSED_FORM, 1e-14, scale)
    }

    /// Tolerance for Newton/bisection-derived objects at the given scale.
    pub fn iterative(scale: f64) -> Self {
        Tolerance::new(REL_ITERATIVE, 1e-12, scale)
    }

    /// Effective tolerance for a residual of physical dimension length^k.
    pub fn eff(&self, k: i32) -> f64 {
        (self.rel * self.scale.powi(k)).max(self.abs_floor)
    }

    /// Effective tolerance for a length residual.
    pub fn len(&self) -> f64 {
        self.eff(1)
    }

    /// Effective tolerance for a power/area residual.
    pub fn pow(&self) -> f64 {
        self.eff(2)
    }

    /// Same relative settings at a different scale.
    pub fn with_scale(&self, scale: f64) -> Self {
        Tolerance::new(self.rel, self.abs_floor, scale)
    }

    /// Same scale with a different relative tolerance.
    pub fn with_rel(&self, rel: f64) -> Self {
        Tolerance::new(rel, self.abs_floor, self.scale)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::closed_form(1.0)
    }
}
