//! Resolvent kernels of the extension family.
//!
//! With the spectral parameter written as λ² (Im λ > 0 on the physical
//! sheet), the free resolvent (−Δ − λ²)⁻¹ has the kernel
//!
//! ```text
//! K_free(x, y) = e^{iλ|x−y|} / (4π|x−y|),
//! ```
//!
//! and the extension with line parameter μ differs by a rank-one kernel
//! concentrated at the interaction point:
//!
//! ```text
//! K_μ(x, y) = K_free(x, y) + b(μ, λ) e^{iλ(|x|+|y|)} / (|x||y|),
//! b(μ, λ)   = i / (4π(λ + iμ)).
//! ```
//!
//! The coefficient b has a simple pole at λ = −iμ, the spectral signature
//! of the interaction: a bound state for μ < 0, a resonance for μ ≥ 0. The
//! Friedrichs extension (μ = ∞) has b ≡ 0.
//!
//! All formulas are analytic continuations in λ; the resolvent reading
//! requires Im λ > 0. Every kernel blows up on its singular set (x = y for
//! the free part, x = 0 or y = 0 for the rank-one part) and evaluation
//! there reports an error instead of an infinity.

use crate::error::{Error, Result};
use crate::point::Point3;
use crate::quad::{integrate, sphere_mean, QuadratureSpec};
use crate::types::{ComplexFrequency, ExtensionParameter};
use crate::C64;
use std::f64::consts::PI;

/// Free outgoing kernel e^{iλ|x−y|}/(4π|x−y|). Errors when x = y.
pub fn free_resolvent_kernel(lambda: ComplexFrequency, x: &Point3, y: &Point3) -> Result<C64> {
    let s = x.dist(y);
    if s == 0.0 {
        return Err(Error::Singular("free kernel evaluated on the diagonal".into()));
    }
    let il = C64::i() * lambda.value();
    Ok((il * s).exp() / (4.0 * PI * s))
}

/// Rank-one coupling coefficient b(μ, λ) = i/(4π(λ + iμ)).
///
/// Errors with [`Error::Pole`] when λ + iμ = 0 exactly; values nearby are
/// legitimately large. The Friedrichs extension returns 0.
pub fn b_coefficient(param: ExtensionParameter, lambda: ComplexFrequency) -> Result<C64> {
    let mu = match param {
        ExtensionParameter::Friedrichs => return Ok(C64::new(0.0, 0.0)),
        ExtensionParameter::Finite(mu) => mu,
    };
    let denom = lambda.value() + C64::i() * mu;
    if denom.norm() == 0.0 {
        return Err(Error::Pole(lambda.value()));
    }
    Ok(C64::i() / (4.0 * PI * denom))
}

/// The rank-one part b(μ, λ) e^{iλ(|x|+|y|)}/(|x||y|).
///
/// Errors when x or y sits at the interaction point, or at the pole of b.
pub fn extra_part(
    param: ExtensionParameter,
    lambda: ComplexFrequency,
    x: &Point3,
    y: &Point3,
) -> Result<C64> {
    let rx = x.norm();
    let ry = y.norm();
    if rx == 0.0 || ry == 0.0 {
        return Err(Error::Singular(
            "rank-one kernel part evaluated at the interaction point".into(),
        ));
    }
    let b = b_coefficient(param, lambda)?;
    let il = C64::i() * lambda.value();
    Ok(b * (il * (rx + ry)).exp() / (rx * ry))
}

/// Full kernel K_μ(x, y) = K_free(x, y) + rank-one part.
pub fn resolvent_kernel(
    param: ExtensionParameter,
    lambda: ComplexFrequency,
    x: &Point3,
    y: &Point3,
) -> Result<C64> {
    let free = free_resolvent_kernel(lambda, x, y)?;
    if param.is_friedrichs() {
        return Ok(free);
    }
    Ok(free + extra_part(param, lambda, x, y)?)
}

/// A compactly supported source term: a callable plus the radius of a ball
/// (centered at the interaction point) that contains its support.
pub struct SourceField<F: Fn(&Point3) -> C64> {
    pub eval: F,
    pub support_radius: f64,
}

impl<F: Fn(&Point3) -> C64> SourceField<F> {
    pub fn new(eval: F, support_radius: f64) -> Result<Self> {
        if !(support_radius > 0.0) || !support_radius.is_finite() {
            return Err(Error::InvalidInput(
                "source support radius must be positive and finite".into(),
            ));
        }
        Ok(SourceField { eval, support_radius })
    }
}

/// Apply the resolvent to a source: u(x) = ∫ K_μ(x, y) f(y) dy.
///
/// The free part integrates in spherical shells centered at x, which
/// cancels the 1/|x−y| singularity against the volume element:
///
/// ```text
/// ∫ K_free f dy = ∫₀^{|x|+R} e^{iλs} s · mean_{|ω|=1} f(x + sω) ds.
/// ```
///
/// The rank-one part factorizes through one radial integral at the origin:
///
/// ```text
/// ∫ extra · f dy = b e^{iλ|x|}/|x| · 4π ∫₀^R e^{iλρ} ρ mean f(ρω) dρ.
/// ```
///
/// Errors at x = 0 (kernel singularity) and at the pole λ = −iμ.
pub fn apply_resolvent<F: Fn(&Point3) -> C64>(
    param: ExtensionParameter,
    lambda: ComplexFrequency,
    source: &SourceField<F>,
    x: &Point3,
    spec: &QuadratureSpec,
) -> Result<C64> {
    let il = C64::i() * lambda.value();
    let rx = x.norm();

    // Free part: shells around x out to where the support ends. Mean errors
    // are mapped to NaN inside the closure and rejected afterwards.
    let s_max = rx + source.support_radius;
    let nan = C64::new(f64::NAN, f64::NAN);
    let mut free_integrand = |s: f64| {
        if s == 0.0 {
            return C64::new(0.0, 0.0);
        }
        let mut f = |p: &Point3| (source.eval)(p);
        let m = sphere_mean(&mut f, x, s, spec).unwrap_or(nan);
        (il * s).exp() * s * m
    };
    let free = integrate(&mut free_integrand, 0.0, s_max, spec)?;
    if !free.re.is_finite() || !free.im.is_finite() {
        return Err(Error::QuadratureFailure(
            "sphere means failed inside the free resolvent integral".into(),
        ));
    }

    if param.is_friedrichs() {
        return Ok(free);
    }
    if rx == 0.0 {
        return Err(Error::Singular(
            "resolvent image evaluated at the interaction point".into(),
        ));
    }
    let b = b_coefficient(param, lambda)?;
    let mut origin_integrand = |rho: f64| {
        if rho == 0.0 {
            return C64::new(0.0, 0.0);
        }
        let mut f = |p: &Point3| (source.eval)(p);
        let m = sphere_mean(&mut f, &Point3::ORIGIN, rho, spec).unwrap_or(nan);
        (il * rho).exp() * rho * m
    };
    let origin_integral =
        integrate(&mut origin_integrand, 0.0, source.support_radius, spec)? * (4.0 * PI);
    let image = free + b * (il * rx).exp() / rx * origin_integral;
    if !image.re.is_finite() || !image.im.is_finite() {
        return Err(Error::QuadratureFailure(
            "sphere means failed inside the rank-one resolvent integral".into(),
        ));
    }
    Ok(image)
}

/// Independent reduction of the free part for radial sources: collapsing
/// the angular integral of K_free against f(|y|) in closed form leaves
///
/// ```text
/// u(r) = (1/(2iλr)) ∫₀^R ρ f(ρ) [e^{iλ(r+ρ)} − e^{iλ|r−ρ|}] dρ,
/// ```
///
/// a one-dimensional formula sharing no code path with [`apply_resolvent`].
pub fn free_resolvent_radial_oracle(
    lambda: ComplexFrequency,
    radial_source: &mut impl FnMut(f64) -> C64,
    support_radius: f64,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<C64> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput("oracle needs a positive radius".into()));
    }
    let il = C64::i() * lambda.value();
    let mut integrand = |rho: f64| {
        let phase = (il * (r + rho)).exp() - (il * (r - rho).abs()).exp();
        radial_source(rho) * rho * phase
    };
    // |r − ρ| kinks the integrand at ρ = r; split so each piece is smooth.
    let split = r.min(support_radius);
    let lower = integrate(&mut integrand, 0.0, split, spec)?;
    let upper = if split < support_radius {
        integrate(&mut integrand, split, support_radius, spec)?
    } else {
        C64::new(0.0, 0.0)
    };
    Ok((lower + upper) / (2.0 * C64::i() * lambda.value() * r))
}
