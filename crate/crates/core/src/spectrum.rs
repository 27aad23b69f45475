//! Spectrum, bound state, and resonance of the extension family.
//!
//! Every extension has essential spectrum [0, ∞). The rank-one resolvent
//! coefficient b(μ, λ) = i/(4π(λ + iμ)) has one pole, λ = −iμ, whose
//! half-plane decides its physics:
//!
//! * μ < 0: λ = −iμ lies in the upper (physical) half plane, so the pole is
//!   a genuine eigenvalue λ² = −μ² with L² eigenfunction
//!   v_μ(x) = e^{μ|x|}/|x| and ‖v_μ‖² = −2π/μ;
//! * μ = 0: the pole sits at λ = 0, a zero-energy resonance, and e^{μr}/r
//!   degenerates to 1/r which just fails to be square integrable;
//! * μ > 0: the pole lies in the lower half plane, a resonance; no new
//!   spectrum appears.
//!
//! The Friedrichs extension (μ = ∞) has no pole at all: it is the free
//! Laplacian's form extension, spectrum exactly [0, ∞).

use crate::error::{Error, Result};
use crate::point::Point3;
use crate::quad::{integrate, sphere_rule, QuadratureSpec};
use crate::resolvent::SourceField;
use crate::types::{ExtensionParameter, HalfPlane};
use crate::C64;
use std::f64::consts::PI;

/// Classification of the coupling coefficient's pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleKind {
    /// Upper half plane: contributes the eigenvalue −μ².
    BoundState,
    /// Pole at λ = 0: a half-bound (zero-energy) state.
    ZeroEnergyResonance,
    /// Lower half plane: no spectral contribution, finite lifetime decay.
    Resonance,
}

/// Everything spectral about one extension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData {
    /// Left endpoint of the essential spectrum (always 0 here; the band is
    /// [essential_min, ∞)).
    pub essential_min: f64,
    /// The isolated negative eigenvalue −μ², present only for μ < 0.
    pub eigenvalue: Option<f64>,
    /// Location λ = −iμ of the coupling pole, absent for Friedrichs.
    pub pole: Option<C64>,
    pub pole_kind: Option<PoleKind>,
}

/// Spectral summary of L^μ.
pub fn spectral_data(param: ExtensionParameter) -> SpectralData {
    match param {
        ExtensionParameter::Friedrichs => SpectralData {
            essential_min: 0.0,
            eigenvalue: None,
            pole: None,
            pole_kind: None,
        },
        ExtensionParameter::Finite(mu) => {
            let pole = C64::new(0.0, -mu);
            let kind = match crate::types::ComplexFrequency::from(pole).half_plane() {
                HalfPlane::Upper => PoleKind::BoundState,
                HalfPlane::RealAxis => PoleKind::ZeroEnergyResonance,
                HalfPlane::Lower => PoleKind::Resonance,
            };
            SpectralData {
                essential_min: 0.0,
                eigenvalue: if mu < 0.0 { Some(-mu * mu) } else { None },
                pole: Some(pole),
                pole_kind: Some(kind),
            }
        }
    }
}

fn bound_state_mu(param: ExtensionParameter) -> Result<f64> {
    match param {
        ExtensionParameter::Finite(mu) if mu < 0.0 => Ok(mu),
        _ => Err(Error::NoSuchSpectralData(format!(
            "{param:?} has no L² eigenfunction (needs finite mu < 0)"
        ))),
    }
}

/// Unnormalized bound state v_μ(x) = e^{μ|x|}/|x|, defined for μ < 0 only.
pub fn eigenfunction(param: ExtensionParameter, x: &Point3) -> Result<f64> {
    let mu = bound_state_mu(param)?;
    let r = x.norm();
    if r == 0.0 {
        return Err(Error::Singular("eigenfunction evaluated at the origin".into()));
    }
    Ok((mu * r).exp() / r)
}

/// ‖v_μ‖² = −2π/μ in closed form (μ < 0).
pub fn eigenfunction_norm_squared(param: ExtensionParameter) -> Result<f64> {
    let mu = bound_state_mu(param)?;
    Ok(-2.0 * PI / mu)
}

/// Unit-norm bound state √(−μ/2π) e^{μ|x|}/|x|.
pub fn normalized_eigenfunction(param: ExtensionParameter, x: &Point3) -> Result<f64> {
    let mu = bound_state_mu(param)?;
    Ok((-mu / (2.0 * PI)).sqrt() * eigenfunction(param, x)?)
}

/// Kernel of the rank-one spectral projection onto the bound state,
/// P(x, y) = v(x) v(y)/‖v‖² = −μ e^{μ(|x|+|y|)} / (2π |x||y|).
pub fn projection_kernel(param: ExtensionParameter, x: &Point3, y: &Point3) -> Result<f64> {
    let mu = bound_state_mu(param)?;
    let rx = x.norm();
    let ry = y.norm();
    if rx == 0.0 || ry == 0.0 {
        return Err(Error::Singular("projection kernel evaluated at the origin".into()));
    }
    // group rx·ry first so swapping x and y is bitwise neutral
    Ok(-mu * (mu * (rx + ry)).exp() / (2.0 * PI * (rx * ry)))
}

/// Apply the bound-state projection to a compactly supported function:
/// (Pg)(x) = v(x) ⟨v, g⟩ / ‖v‖², with the pairing reduced to one radial
/// integral, ⟨v, g⟩ = 4π ∫₀^R e^{μρ} ρ · mean g(ρω) dρ.
pub fn apply_projection<F: Fn(&Point3) -> C64>(
    param: ExtensionParameter,
    g: &SourceField<F>,
    x: &Point3,
    spec: &QuadratureSpec,
) -> Result<C64> {
    let mu = bound_state_mu(param)?;
    let rule = sphere_rule(spec.angular_order);
    let mut radial = |rho: f64| {
        if rho == 0.0 {
            return C64::new(0.0, 0.0);
        }
        let mut f = |p: &Point3| (g.eval)(p);
        rule.mean(&mut f, &Point3::ORIGIN, rho) * rho * (mu * rho).exp()
    };
    let pairing = integrate(&mut radial, 0.0, g.support_radius, spec)? * (4.0 * PI);
    let v = eigenfunction(param, x)?;
    let norm2 = eigenfunction_norm_squared(param)?;
    Ok(pairing * (v / norm2))
}
