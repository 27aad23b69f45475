//! The extension circle and the extension line.
//!
//! Self-adjoint extensions of the positive Laplacian restricted away from
//! the origin are indexed by a boundary angle θ ∈ [−π, π). Two equivalent
//! charts are used: a complex Cayley-type form
//!
//! ```text
//! μ(θ) = −e^{iπ/4} (e^{iθ} − i) / (e^{iθ} + 1)        (complex route)
//! ```
//!
//! and the real half-angle form
//!
//! ```text
//! μ(θ) = (√2/2)(tan(θ/2) − 1)                          (real route)
//! ```
//!
//! The complex route is implemented literally (complex exponential and
//! division) so that its vanishing imaginary part is a genuine cross-check
//! of the identity rather than an algebraic tautology. The real route is
//! evaluated as `sin(θ/2 − π/4)/cos(θ/2)`, an exact rewrite that avoids the
//! tangent's intermediate overflow and makes μ(π/2) = 0 exact in floating
//! point.
//!
//! θ = −π is the Friedrichs point: both formulas pole there, and the line
//! parameter is μ = ∞.

use crate::cutoff::CutoffProfile;
use crate::error::{Error, Result};
use crate::point::Point3;
use crate::quad::{sphere_rule, QuadratureSpec};
use crate::types::{ExtensionParameter, ThetaParameter};
use crate::C64;
use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

/// Circle parameter to line parameter.
pub fn theta_to_mu(theta: ThetaParameter) -> ExtensionParameter {
    if theta.is_friedrichs_point() {
        return ExtensionParameter::Friedrichs;
    }
    let t = theta.value();
    ExtensionParameter::Finite((0.5 * t - FRAC_PI_4).sin() / (0.5 * t).cos())
}

/// The complex form of the circle-to-line map, kept in ℂ on purpose: its
/// imaginary part must vanish up to rounding, which the tests verify.
///
/// Fails at the Friedrichs point, where the denominator e^{iθ} + 1 vanishes.
pub fn theta_to_mu_complex_form(theta: ThetaParameter) -> Result<C64> {
    if theta.is_friedrichs_point() {
        return Err(Error::Singular(
            "complex parametrization form has a pole at theta = -pi".into(),
        ));
    }
    let t = theta.value();
    let z = C64::new(t.cos(), t.sin()); // e^{iθ}
    let rot = C64::from_polar(1.0, FRAC_PI_4); // e^{iπ/4}
    Ok(-rot * (z - C64::i()) / (z + 1.0))
}

/// Line parameter to circle parameter: θ = 2 arctan(√2 μ + 1), with the
/// Friedrichs extension pinned to θ = −π.
pub fn mu_to_theta(param: ExtensionParameter) -> ThetaParameter {
    let theta = match param {
        ExtensionParameter::Friedrichs => -PI,
        ExtensionParameter::Finite(mu) => 2.0 * (SQRT_2 * mu + 1.0).atan(),
    };
    ThetaParameter::new(theta).expect("arctan image lies in (-pi, pi)")
}

/// Which deficiency space: `Plus` spans ker(L* − i), `Minus` spans ker(L* + i).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeficiencySign {
    Plus,
    Minus,
}

impl DeficiencySign {
    /// Decay constant c with c² = ∓i, Re c > 0: e^{−iπ/4} for `Plus`,
    /// e^{+iπ/4} for `Minus`.
    pub fn decay_constant(&self) -> C64 {
        match self {
            DeficiencySign::Plus => C64::from_polar(1.0, -FRAC_PI_4),
            DeficiencySign::Minus => C64::from_polar(1.0, FRAC_PI_4),
        }
    }
}

/// Deficiency element u_±(x) = e^{−c_±|x|} / (4π|x|), the normalized
/// solution of (−Δ ∓ i)u = 0 in L². Singular at the origin.
pub fn deficiency_element(sign: DeficiencySign, x: &Point3) -> Result<C64> {
    let r = x.norm();
    if r == 0.0 {
        return Err(Error::Singular("deficiency element evaluated at the origin".into()));
    }
    let c = sign.decay_constant();
    Ok((-c * r).exp() / (4.0 * PI * r))
}

/// Leading origin behavior of a function with a point singularity:
/// f(x) = c₋₁/|x| + c₀ + O(|x|).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OriginExpansion {
    pub c_minus1: C64,
    pub c_0: C64,
    /// Root-mean-square misfit of the two-parameter model over the sampled
    /// radii. Callers should distrust c₀ claims finer than this.
    pub residual: f64,
}

/// Least-squares fit of sphere averages of `f` to the model a/r + b.
///
/// The average over the sphere of radius r removes the angular dependence;
/// the radial model then exposes the singular coefficient and the boundary
/// constant whose ratio classifies domain membership. Radii must be
/// positive, distinct, and at least two.
pub fn fit_origin_expansion(
    f: &mut impl FnMut(&Point3) -> C64,
    radii: &[f64],
    spec: &QuadratureSpec,
) -> Result<OriginExpansion> {
    if radii.len() < 2 {
        return Err(Error::DegenerateFit(format!(
            "need at least two radii, got {}",
            radii.len()
        )));
    }
    if radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::InvalidInput("fit radii must be positive".into()));
    }
    let rule = sphere_rule(spec.angular_order);
    let means: Vec<C64> = radii
        .iter()
        .map(|r| rule.mean(f, &Point3::ORIGIN, *r))
        .collect();
    // Normal equations for the real design [1/r, 1] with complex data.
    let n = radii.len() as f64;
    let mut sxx = 0.0;
    let mut sx = 0.0;
    let mut sxm = C64::new(0.0, 0.0);
    let mut sm = C64::new(0.0, 0.0);
    for (r, m) in radii.iter().zip(means.iter()) {
        let u = 1.0 / r;
        sxx += u * u;
        sx += u;
        sxm += m * u;
        sm += m;
    }
    let det = sxx * n - sx * sx;
    if det.abs() < 1e-300 || !det.is_finite() {
        return Err(Error::DegenerateFit("fit radii are (numerically) coincident".into()));
    }
    let a = (sxm * n - sm * sx) / det;
    let b = (sm * sxx - sxm * sx) / det;
    let mut ss = 0.0;
    for (r, m) in radii.iter().zip(means.iter()) {
        ss += (m - a / *r - b).norm_sqr();
    }
    Ok(OriginExpansion {
        c_minus1: a,
        c_0: b,
        residual: (ss / n).sqrt(),
    })
}

/// Recipe for an element of D(L^μ): a cutoff singular head plus a regular
/// tail,
///
/// ```text
/// u(x) = β χ(|x|) (1/|x| + μ) + regular(x),   χ(r) = φ(r/ρ),
/// ```
///
/// so that u carries the boundary ratio c₀/c₋₁ = μ whenever β ≠ 0. The
/// cutoff χ is identically 1 on |x| ≤ ρ/2 and vanishes beyond ρ.
pub struct DomainElementSpec<F: Fn(&Point3) -> C64> {
    pub beta: C64,
    pub chi_radius: f64,
    /// Smooth part; must vanish at the origin so it cannot pollute c₀.
    pub regular: F,
    pub profile: CutoffProfile,
}

/// Evaluate a domain element at x ≠ 0.
///
/// The Friedrichs extension admits no singular head: β must be 0 for it,
/// otherwise the requested element does not belong to the domain.
pub fn evaluate_domain_element<F: Fn(&Point3) -> C64>(
    param: ExtensionParameter,
    elem: &DomainElementSpec<F>,
    x: &Point3,
) -> Result<C64> {
    if !(elem.chi_radius > 0.0) {
        return Err(Error::InvalidInput("chi_radius must be positive".into()));
    }
    let r = x.norm();
    if r == 0.0 {
        return Err(Error::Singular("domain element evaluated at the origin".into()));
    }
    let mu = match param {
        ExtensionParameter::Finite(mu) => mu,
        ExtensionParameter::Friedrichs => {
            if elem.beta.norm() != 0.0 {
                return Err(Error::InvalidInput(
                    "Friedrichs domain elements have no singular part (beta must be 0)".into(),
                ));
            }
            return Ok((elem.regular)(x));
        }
    };
    let chi = elem.profile.value(r / elem.chi_radius);
    Ok(elem.beta * chi * (1.0 / r + mu) + (elem.regular)(x))
}
