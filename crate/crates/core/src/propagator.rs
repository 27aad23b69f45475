//! Closed-form wave propagation for the extension family.
//!
//! The wave equation u_tt + L^μ u = 0 with Cauchy data u(0) = f,
//! u_t(0) = g is solved by u(t) = cos(t√L) f + (sin(t√L)/√L) g. The sine
//! kernel splits into the free (Kirchhoff) wavefront and a diffracted tail
//! radiated from the interaction point:
//!
//! ```text
//! S_μ(t, x, y) = δ(t − |x−y|)/(4π|x−y|)                      sharp front
//!              + H(t − s₀) e^{μ(s₀ − t)} / (4π|x||y|)        diffracted
//! ```
//!
//! with s₀ = |x| + |y| and H the Heaviside step, H(0) = ½. The diffracted
//! term switches on exactly when a signal from y has had time to reach the
//! origin and return to x; it decays like e^{−μt} for μ > 0, is a constant
//! memory for μ = 0 (value 1/(8π|x||y|) on the front itself), and grows
//! like e^{|μ|t} for μ < 0. In the spectral decomposition that growth is
//! carried by the bound state: the continuous-spectrum part alone equals
//! the diffracted term minus [`bound_state_sine_component`], and both
//! pieces grow exponentially while their difference before the front
//! cancels exactly. The Friedrichs extension propagates with the sharp
//! front alone.
//!
//! Applying the propagator to data needs only spherical means: the sharp
//! front gives Kirchhoff's t · (mean over the sphere of radius t), the
//! diffracted terms reduce to one radial integral through the origin.

use crate::error::{Error, Result};
use crate::point::Point3;
use crate::quad::{integrate, sphere_mean, QuadratureSpec};
use crate::types::ExtensionParameter;
use std::f64::consts::PI;

/// The sine kernel at one (t, x, y): the sharp front is a δ layer, so its
/// location and weight are reported separately from the locally integrable
/// remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveKernelValue {
    /// Time t = |x − y| at which the sharp front crosses this pair.
    pub front_time: f64,
    /// Weight 1/(4π|x−y|) of the δ(t − |x−y|) layer.
    pub front_weight: f64,
    /// Time s₀ = |x| + |y| at which the diffracted step switches on.
    pub diffracted_front_time: f64,
    /// Value of the regular part at (t, x, y).
    pub regular: f64,
}

fn heaviside_half(s: f64) -> f64 {
    if s > 0.0 {
        1.0
    } else if s == 0.0 {
        0.5
    } else {
        0.0
    }
}

/// Evaluate the sine kernel. Errors on the diagonal x = y (the δ weight is
/// infinite there) and, for finite μ, at the interaction point.
pub fn sine_kernel(
    param: ExtensionParameter,
    t: f64,
    x: &Point3,
    y: &Point3,
) -> Result<WaveKernelValue> {
    if !(t >= 0.0) {
        return Err(Error::InvalidInput("propagation time must be nonnegative".into()));
    }
    let sep = x.dist(y);
    if sep == 0.0 {
        return Err(Error::Singular("sine kernel evaluated on the diagonal".into()));
    }
    let rx = x.norm();
    let ry = y.norm();
    let s0 = rx + ry;
    let regular = match param {
        ExtensionParameter::Friedrichs => 0.0,
        ExtensionParameter::Finite(mu) => {
            if rx == 0.0 || ry == 0.0 {
                return Err(Error::Singular(
                    "sine kernel evaluated at the interaction point".into(),
                ));
            }
            heaviside_half(t - s0) * (mu * (s0 - t)).exp() / (4.0 * PI * rx * ry)
        }
    };
    Ok(WaveKernelValue {
        front_time: sep,
        front_weight: 1.0 / (4.0 * PI * sep),
        diffracted_front_time: s0,
        regular,
    })
}

/// Discrete-spectrum component of the sine kernel, present only for μ < 0:
///
/// ```text
/// B(t, x, y) = −sinh(μt) e^{μ s₀} / (2π|x||y|) = v(x)v(y)/‖v‖² · sinh(|μ|t)/|μ|.
/// ```
///
/// This is not an addition on top of the regular kernel: the spectral
/// theorem splits regular = (continuous part) + B, and before the
/// diffracted front the two pieces cancel exactly. Spectral-integral
/// reconstructions of the kernel recover only the continuous part and must
/// add B back; this function is their bookkeeping partner. Returns 0 for
/// μ ≥ 0 and for the Friedrichs extension.
pub fn bound_state_sine_component(
    param: ExtensionParameter,
    t: f64,
    x: &Point3,
    y: &Point3,
) -> Result<f64> {
    let mu = match param {
        ExtensionParameter::Friedrichs => return Ok(0.0),
        ExtensionParameter::Finite(mu) => mu,
    };
    if mu >= 0.0 {
        return Ok(0.0);
    }
    let rx = x.norm();
    let ry = y.norm();
    if rx == 0.0 || ry == 0.0 {
        return Err(Error::Singular(
            "bound-state component evaluated at the interaction point".into(),
        ));
    }
    Ok(-(mu * t).sinh() * (mu * (rx + ry)).exp() / (2.0 * PI * rx * ry))
}

/// Cauchy data for the wave problem: initial displacement (with its exact
/// gradient, which the cosine propagator needs) and initial velocity, all
/// supported in the ball |x| ≤ support_radius.
pub struct CauchyData {
    position: Box<dyn Fn(&Point3) -> f64 + Send + Sync>,
    gradient: Box<dyn Fn(&Point3) -> Point3 + Send + Sync>,
    velocity: Box<dyn Fn(&Point3) -> f64 + Send + Sync>,
    support_radius: f64,
}

impl CauchyData {
    pub fn from_parts(
        position: impl Fn(&Point3) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&Point3) -> Point3 + Send + Sync + 'static,
        velocity: impl Fn(&Point3) -> f64 + Send + Sync + 'static,
        support_radius: f64,
    ) -> Result<Self> {
        if !(support_radius > 0.0) || !support_radius.is_finite() {
            return Err(Error::InvalidInput(
                "Cauchy data support radius must be positive and finite".into(),
            ));
        }
        Ok(CauchyData {
            position: Box::new(position),
            gradient: Box::new(gradient),
            velocity: Box::new(velocity),
            support_radius,
        })
    }

    /// Smooth radial annular bump B((r−c)/w) with c, w the annulus center
    /// and half-width; B(s) = e^{−1/(1−s²)} inside |s| < 1.
    fn bump_profile(inner: f64, outer: f64) -> impl Fn(f64) -> (f64, f64) + Copy {
        let c = 0.5 * (inner + outer);
        let w = 0.5 * (outer - inner);
        move |r: f64| {
            let s = (r - c) / w;
            if s.abs() >= 1.0 {
                return (0.0, 0.0);
            }
            let q = 1.0 - s * s;
            let b = (-1.0 / q).exp();
            // dB/dr = B · (−2s/q²) / w
            (b, b * (-2.0 * s / (q * q)) / w)
        }
    }

    /// Struck-string data: zero displacement, annular bump velocity.
    pub fn quiescent_bump(inner: f64, outer: f64) -> Result<Self> {
        if !(0.0 <= inner && inner < outer) || !outer.is_finite() {
            return Err(Error::InvalidInput("need 0 ≤ inner < outer".into()));
        }
        let bump = Self::bump_profile(inner, outer);
        Self::from_parts(
            |_| 0.0,
            |_| Point3::ORIGIN,
            move |p: &Point3| bump(p.norm()).0,
            outer,
        )
    }

    /// Plucked-string data: annular bump displacement (with exact gradient),
    /// zero velocity.
    pub fn displaced_bump(inner: f64, outer: f64) -> Result<Self> {
        if !(0.0 <= inner && inner < outer) || !outer.is_finite() {
            return Err(Error::InvalidInput("need 0 ≤ inner < outer".into()));
        }
        let bump = Self::bump_profile(inner, outer);
        Self::from_parts(
            move |p: &Point3| bump(p.norm()).0,
            move |p: &Point3| {
                let r = p.norm();
                if r == 0.0 {
                    return Point3::ORIGIN;
                }
                *p * (bump(r).1 / r)
            },
            |_| 0.0,
            outer,
        )
    }

    pub fn position(&self, x: &Point3) -> f64 {
        (self.position)(x)
    }

    pub fn gradient(&self, x: &Point3) -> Point3 {
        (self.gradient)(x)
    }

    pub fn velocity(&self, x: &Point3) -> f64 {
        (self.velocity)(x)
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }
}

/// Spherical mean of a scalar field over the sphere of radius r about c.
fn mean_over_sphere(
    f: &dyn Fn(&Point3) -> f64,
    c: &Point3,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let mut g = |p: &Point3| f(p);
    sphere_mean(&mut g, c, r, spec)
}

/// Mean of the outward normal derivative of the displacement over the
/// sphere of radius r about c, computed from the exact gradient.
fn mean_normal_derivative(
    data: &CauchyData,
    c: &Point3,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let mut g = |p: &Point3| {
        let omega = (*p - *c) * (1.0 / r);
        data.gradient(p).dot(&omega)
    };
    sphere_mean(&mut g, c, r, spec)
}

/// Radial integral ∫_{lo}^{hi} e^{μρ} ρ m(ρ) dρ of origin-centered sphere
/// means m of a field; the workhorse of every diffracted term.
fn weighted_radial_integral(
    field: &dyn Fn(&Point3) -> f64,
    mu: f64,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if hi <= lo {
        return Ok(0.0);
    }
    let mut integrand = |rho: f64| {
        if rho <= 0.0 {
            return 0.0;
        }
        let mut g = |p: &Point3| field(p);
        let m = sphere_mean(&mut g, &Point3::ORIGIN, rho, spec).unwrap_or(f64::NAN);
        m * rho * (mu * rho).exp()
    };
    let value = integrate(&mut integrand, lo, hi, spec)?;
    if !value.is_finite() {
        return Err(Error::QuadratureFailure(
            "sphere means failed inside a diffracted radial integral".into(),
        ));
    }
    Ok(value)
}

/// u(t, x) = (sin(t√L)/√L g)(x) for g the velocity component of `data`.
///
/// Free part: Kirchhoff's t · mean of g over the sphere of radius t.
/// Diffracted part: e^{μ(|x|−t)}/|x| · ∫₀^{min(t−|x|, R)} e^{μρ} ρ m_g(ρ) dρ.
pub fn apply_sine_propagator(
    param: ExtensionParameter,
    data: &CauchyData,
    t: f64,
    x: &Point3,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::InvalidInput("propagation time must be nonnegative".into()));
    }
    let g = |p: &Point3| data.velocity(p);
    let free = if t == 0.0 {
        0.0
    } else {
        t * mean_over_sphere(&g, x, t, spec)?
    };
    let mu = match param {
        ExtensionParameter::Friedrichs => return Ok(free),
        ExtensionParameter::Finite(mu) => mu,
    };
    let rx = x.norm();
    if rx == 0.0 {
        return Err(Error::Singular(
            "diffracted wave evaluated at the interaction point".into(),
        ));
    }
    let reach = (t - rx).min(data.support_radius());
    let diffracted = if reach > 0.0 {
        (mu * (rx - t)).exp() / rx * weighted_radial_integral(&g, mu, 0.0, reach, spec)?
    } else {
        0.0
    };
    Ok(free + diffracted)
}

/// u(t, x) = (cos(t√L) f)(x) for f the displacement component of `data`,
/// obtained by differentiating the sine solution in t:
///
/// * free part: mean_t f + t · mean_t(∂f/∂n);
/// * diffracted boundary term (t−|x|) m_f(t−|x|)/|x| where the moving upper
///   limit crosses the data, minus μ times the sine-type integral.
pub fn apply_cosine_propagator(
    param: ExtensionParameter,
    data: &CauchyData,
    t: f64,
    x: &Point3,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::InvalidInput("propagation time must be nonnegative".into()));
    }
    let f = |p: &Point3| data.position(p);
    let free = if t == 0.0 {
        data.position(x)
    } else {
        mean_over_sphere(&f, x, t, spec)? + t * mean_normal_derivative(data, x, t, spec)?
    };
    let mu = match param {
        ExtensionParameter::Friedrichs => return Ok(free),
        ExtensionParameter::Finite(mu) => mu,
    };
    let rx = x.norm();
    if rx == 0.0 {
        return Err(Error::Singular(
            "diffracted wave evaluated at the interaction point".into(),
        ));
    }
    let r_sup = data.support_radius();
    let reach = (t - rx).min(r_sup);
    let mut diffracted = 0.0;
    if reach > 0.0 {
        let edge = t - rx;
        if edge < r_sup {
            let m_edge = mean_over_sphere(&f, &Point3::ORIGIN, edge, spec)?;
            diffracted += edge * m_edge / rx;
        }
        diffracted -=
            mu * (mu * (rx - t)).exp() / rx * weighted_radial_integral(&f, mu, 0.0, reach, spec)?;
    }
    Ok(free + diffracted)
}

/// Full Cauchy evolution u(t) = cos(t√L) f + (sin(t√L)/√L) g.
pub fn wave_solution(
    param: ExtensionParameter,
    data: &CauchyData,
    t: f64,
    x: &Point3,
    spec: &QuadratureSpec,
) -> Result<f64> {
    Ok(apply_cosine_propagator(param, data, t, x, spec)?
        + apply_sine_propagator(param, data, t, x, spec)?)
}

/// Free-space radial d'Alembert reduction for the sine propagator: with
/// radial velocity g and H(s) = ∫₀^s σ g(σ) dσ (an even function),
///
/// ```text
/// u(t, r) = [H(r + t) − H(|r − t|)] / (2r).
/// ```
///
/// Completely independent of the spherical-mean machinery.
pub fn free_sine_radial_oracle(
    g: &mut impl FnMut(f64) -> f64,
    support_radius: f64,
    t: f64,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(r > 0.0) || !(t >= 0.0) {
        return Err(Error::InvalidInput("oracle needs r > 0, t ≥ 0".into()));
    }
    let mut anti = |s: f64| -> Result<f64> {
        let upper = s.min(support_radius);
        if upper <= 0.0 {
            return Ok(0.0);
        }
        let mut integrand = |sigma: f64| sigma * g(sigma);
        integrate(&mut integrand, 0.0, upper, spec)
    };
    Ok((anti(r + t)? - anti((r - t).abs())?) / (2.0 * r))
}

/// Free-space radial d'Alembert reduction for the cosine propagator: with
/// radial displacement f,
///
/// ```text
/// u(t, r) = [(r + t) f(r + t) + (r − t) f(|r − t|)] / (2r).
/// ```
pub fn free_cosine_radial_oracle(f: &mut impl FnMut(f64) -> f64, t: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) || !(t >= 0.0) {
        return Err(Error::InvalidInput("oracle needs r > 0, t ≥ 0".into()));
    }
    Ok(((r + t) * f(r + t) + (r - t) * f((r - t).abs())) / (2.0 * r))
}

/// Least-squares slope of ln|u| against t: the empirical exponential rate
/// of a sampled signal u(t) ≈ C e^{rate·t}. Samples must be nonzero.
pub fn fit_exponential_rate(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::DegenerateFit("need at least two samples".into()));
    }
    let n = samples.len() as f64;
    let mut st = 0.0;
    let mut stt = 0.0;
    let mut sy = 0.0;
    let mut sty = 0.0;
    for &(t, u) in samples {
        if u == 0.0 || !u.is_finite() {
            return Err(Error::DegenerateFit(format!("sample at t = {t} is zero or non-finite")));
        }
        let y = u.abs().ln();
        st += t;
        stt += t * t;
        sy += y;
        sty += t * y;
    }
    let det = stt * n - st * st;
    if det.abs() < 1e-300 {
        return Err(Error::DegenerateFit("sample times are coincident".into()));
    }
    Ok((sty * n - sy * st) / det)
}
