//! Parameter types for the extension family.

use crate::error::{Error, Result};
use crate::C64;

/// Index of a self-adjoint extension: μ ∈ ℝ ∪ {∞}.
///
/// `Friedrichs` is the μ = ∞ endpoint, the free Laplacian. Finite μ labels
/// the extension whose domain elements satisfy the boundary condition
/// `u(x) ~ c(1/(4π|x|) + μ) + o(1)` at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtensionParameter {
    Finite(f64),
    Friedrichs,
}

impl ExtensionParameter {
    /// Construct a finite parameter, rejecting non-finite floats.
    pub fn finite(mu: f64) -> Result<Self> {
        if mu.is_finite() {
            Ok(ExtensionParameter::Finite(mu))
        } else {
            Err(Error::InvalidInput(format!("extension parameter must be finite, got {mu}")))
        }
    }

    pub fn mu(&self) -> Option<f64> {
        match self {
            ExtensionParameter::Finite(mu) => Some(*mu),
            ExtensionParameter::Friedrichs => None,
        }
    }

    pub fn is_friedrichs(&self) -> bool {
        matches!(self, ExtensionParameter::Friedrichs)
    }
}

/// Boundary angle θ ∈ [−π, π) on the extension circle.
///
/// θ = −π is the Friedrichs point; the circle parameter maps to the line
/// parameter through [`crate::parametrization::theta_to_mu`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaParameter(f64);

impl ThetaParameter {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidInput(format!("theta must be finite, got {theta}")));
        }
        if !(-std::f64::consts::PI..std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidInput(format!(
                "theta must lie in [-pi, pi), got {theta}"
            )));
        }
        Ok(ThetaParameter(theta))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn is_friedrichs_point(&self) -> bool {
        self.0 == -std::f64::consts::PI
    }
}

/// Which component of ℂ \ ℝ (or the real axis) a frequency lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlane {
    Upper,
    Lower,
    RealAxis,
}

/// A spectral parameter λ ∈ ℂ.
///
/// The resolvent `(L^μ − λ²)⁻¹` is the physical-sheet operator for
/// Im λ > 0; kernel formulas extend meromorphically elsewhere, and callers
/// that require the operator sense must check [`ComplexFrequency::half_plane`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexFrequency(pub C64);

impl ComplexFrequency {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexFrequency(C64::new(re, im))
    }

    pub fn value(&self) -> C64 {
        self.0
    }

    pub fn half_plane(&self) -> HalfPlane {
        if self.0.im > 0.0 {
            HalfPlane::Upper
        } else if self.0.im < 0.0 {
            HalfPlane::Lower
        } else {
            HalfPlane::RealAxis
        }
    }

    pub fn is_physical(&self) -> bool {
        self.half_plane() == HalfPlane::Upper
    }
}

impl From<C64> for ComplexFrequency {
    fn from(z: C64) -> Self {
        ComplexFrequency(z)
    }
}
