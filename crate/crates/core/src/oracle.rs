//! Independent numerical verification of the closed forms.
//!
//! Every kernel formula in this crate is an analytic shortcut for an
//! integral the formula is supposed to equal. The oracles here evaluate
//! those integrals by routes that share no algebra with the shortcuts:
//!
//! * [`fourier_radial_check`] rebuilds e^{−λr}/(4πr) from its Fourier
//!   representation, taming the conditionally convergent tail by summing
//!   between the integrand's zeros and accelerating the alternating series;
//! * [`reconstruct_diffracted_kernel`] rebuilds the wave kernel's
//!   diffracted part from the resolvent along the continuous spectrum,
//!   mollified by one of the cutoff profiles;
//! * [`residue_check`] verifies residue bookkeeping by actually walking a
//!   contour around the pole;
//! * [`pde_residual_sweep`] feeds the closed forms back into their PDEs via
//!   centered differences.

use crate::cutoff::CutoffProfile;
use crate::error::{Error, Result};
use crate::fd::{fd_laplacian3, fd_second};
use crate::point::Point3;
use crate::propagator::{bound_state_sine_component, sine_kernel};
use crate::quad::{
    euler_accelerated_sum, gl_panel, integrate, oscillatory_fixed_panels, QuadratureSpec,
};
use crate::resolvent::resolvent_kernel;
use crate::spectrum::eigenfunction;
use crate::types::{ComplexFrequency, ExtensionParameter};
use crate::C64;
use std::f64::consts::PI;

/// Outcome of comparing a numerically reconstructed value against its
/// closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckReport {
    pub computed: C64,
    pub expected: C64,
    pub abs_error: f64,
    /// abs_error / |expected|, or abs_error itself when the expected value
    /// is zero.
    pub rel_error: f64,
}

impl CheckReport {
    pub fn new(computed: C64, expected: C64) -> Self {
        let abs_error = (computed - expected).norm();
        let scale = expected.norm();
        let rel_error = if scale == 0.0 { abs_error } else { abs_error / scale };
        CheckReport { computed, expected, abs_error, rel_error }
    }
}

/// Verify e^{−λr}/(4πr) = (1/2π²r) ∫₀^∞ ρ sin(ρr)/(ρ² + λ²) dρ for Re λ > 0.
///
/// The integral converges only conditionally, so it is split at the sine's
/// zeros ρ_k = kπ/r: a head of whole half-periods is summed directly, and
/// the alternating tail series is Euler-accelerated. No part of this path
/// touches the closed form being checked.
pub fn fourier_radial_check(decay: C64, r: f64, spec: &QuadratureSpec) -> Result<CheckReport> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    if !(decay.re > 0.0) {
        return Err(Error::InvalidInput(
            "Fourier identity requires a decay constant with Re > 0".into(),
        ));
    }
    let lam2 = decay * decay;
    let mut integrand = |rho: f64| rho * (rho * r).sin() / (rho * rho + lam2);

    // Head: enough half-periods to contain the pole scale |λ| comfortably.
    let half_period = PI / r;
    let n_head = 8 + (3.0 * decay.norm() * r / PI).ceil() as usize;
    let mut head = C64::new(0.0, 0.0);
    for k in 0..n_head {
        head += integrate(&mut integrand, k as f64 * half_period, (k + 1) as f64 * half_period, spec)?;
    }
    // Tail: one term per half-period, alternating by construction.
    let n_tail = 48;
    let mut terms = Vec::with_capacity(n_tail);
    for k in n_head..n_head + n_tail {
        terms.push(gl_panel(
            &mut integrand,
            k as f64 * half_period,
            (k + 1) as f64 * half_period,
            24,
        ));
    }
    let computed = (head + euler_accelerated_sum(&terms)) / (2.0 * PI * PI * r);
    let expected = (-decay * r).exp() / (4.0 * PI * r);
    Ok(CheckReport::new(computed, expected))
}

/// Mollified Dirichlet integral: (2/π) ∫₀^{√R} sin(aλ)/λ · φ(λ²/R) dλ → sign(a).
///
/// A pure diagnostic for the mollifier profiles: how close the smoothed
/// integral gets to the step function controls how well the same profile
/// reconstructs wave kernels.
pub fn dirichlet_integral_check(
    a: f64,
    mollifier_scale: f64,
    profile: CutoffProfile,
    spec: &QuadratureSpec,
) -> Result<CheckReport> {
    if !(mollifier_scale > 0.0) {
        return Err(Error::InvalidInput("mollifier scale must be positive".into()));
    }
    let big_r = mollifier_scale;
    let upper = big_r.sqrt();
    let mut g = |l: f64| {
        let osc = if l == 0.0 { a } else { (a * l).sin() / l };
        osc * profile.value(l * l / big_r)
    };
    let computed = oscillatory_fixed_panels(&mut g, upper, a.abs(), spec) * (2.0 / PI);
    let expected = if a == 0.0 { 0.0 } else { a.signum() };
    Ok(CheckReport::new(C64::new(computed, 0.0), C64::new(expected, 0.0)))
}

/// Everything the wave-kernel reconstruction produces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructionReport {
    /// Continuous-spectrum (mollified real-axis) contribution.
    pub contour_value: f64,
    /// Discrete contribution, nonzero only for μ < 0.
    pub bound_state_value: f64,
    /// contour + bound state: the reconstructed regular kernel value.
    pub value: f64,
    /// The closed form it must match.
    pub closed_form: f64,
    pub abs_error: f64,
    pub rel_error: f64,
}

/// Rebuild the regular part of the sine kernel at (t, x, y) from the
/// resolvent's jump across the continuous spectrum, mollified by
/// φ(λ²/R):
///
/// ```text
/// contour = (1/2π²|x||y|) ∫₀^{√R} [λ sin(tλ)cos(s₀λ) + μ sin(tλ)sin(s₀λ)]
///                                  / (λ² + μ²) · φ(λ²/R) dλ,
/// ```
///
/// plus the bound-state component for μ < 0. The mollifier suppresses the
/// truncated tail; the reconstruction error is dominated by the profile's
/// smoothness at its shoulders.
pub fn reconstruct_diffracted_kernel(
    param: ExtensionParameter,
    t: f64,
    x: &Point3,
    y: &Point3,
    mollifier_scale: f64,
    profile: CutoffProfile,
    spec: &QuadratureSpec,
) -> Result<ReconstructionReport> {
    let mu = match param {
        ExtensionParameter::Finite(mu) => mu,
        ExtensionParameter::Friedrichs => {
            return Err(Error::InvalidInput(
                "the Friedrichs extension has no diffracted kernel to reconstruct".into(),
            ))
        }
    };
    if !(mollifier_scale > 0.0) {
        return Err(Error::InvalidInput("mollifier scale must be positive".into()));
    }
    if !(t >= 0.0) {
        return Err(Error::InvalidInput("propagation time must be nonnegative".into()));
    }
    let rx = x.norm();
    let ry = y.norm();
    if rx == 0.0 || ry == 0.0 {
        return Err(Error::Singular("reconstruction at the interaction point".into()));
    }
    let s0 = rx + ry;
    let big_r = mollifier_scale;
    let upper = big_r.sqrt();
    let mut g = |l: f64| {
        let w = if mu == 0.0 {
            if l == 0.0 {
                t
            } else {
                (t * l).sin() * (s0 * l).cos() / l
            }
        } else {
            (l * (t * l).sin() * (s0 * l).cos() + mu * (t * l).sin() * (s0 * l).sin())
                / (l * l + mu * mu)
        };
        w * profile.value(l * l / big_r)
    };
    let integral = oscillatory_fixed_panels(&mut g, upper, t + s0, spec);
    let contour_value = integral / (2.0 * PI * PI * rx * ry);
    let bound_state_value = bound_state_sine_component(param, t, x, y)?;
    let value = contour_value + bound_state_value;
    let closed_form = sine_kernel(param, t, x, y)?.regular;
    let abs_error = (value - closed_form).abs();
    let rel_error = if closed_form == 0.0 { abs_error } else { abs_error / closed_form.abs() };
    Ok(ReconstructionReport {
        contour_value,
        bound_state_value,
        value,
        closed_form,
        abs_error,
        rel_error,
    })
}

/// Walk a circle of radius `radius` around λ₀ = −iμ with the trapezoid rule
/// (spectrally accurate for periodic analytic integrands) and compare
/// (1/2πi) ∮ e^{iλs}/(λ + iμ)^order dλ against the calculus-of-residues
/// value: e^{μs} for a simple pole, i s e^{μs} for a double pole.
pub fn residue_check(mu: f64, s: f64, pole_order: u32, radius: f64) -> Result<CheckReport> {
    if pole_order == 0 || pole_order > 2 {
        return Err(Error::InvalidInput("pole order must be 1 or 2".into()));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidInput("contour radius must be positive".into()));
    }
    let center = C64::new(0.0, -mu);
    let n = 64;
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..n {
        let theta = 2.0 * PI * j as f64 / n as f64;
        let offset = C64::from_polar(radius, theta);
        let lambda = center + offset;
        let denom = lambda + C64::i() * mu;
        let f = (C64::i() * lambda * s).exp()
            / if pole_order == 1 { denom } else { denom * denom };
        // dλ = iρe^{iθ}dθ and the 1/2πi prefactor leave (ρ/n) Σ f e^{iθ}.
        acc += f * offset;
    }
    let computed = acc / n as f64;
    let expected = if pole_order == 1 {
        (mu * s).exp().into()
    } else {
        C64::i() * s * (mu * s).exp()
    };
    Ok(CheckReport::new(computed, expected))
}

/// Which closed form to push back through its differential equation.
pub enum PdeSubject {
    /// −Δ v = −μ² v for the bound state (μ < 0).
    Eigenfunction { param: ExtensionParameter },
    /// −Δ K = λ² K away from the source point and the origin.
    ResolventKernel {
        param: ExtensionParameter,
        lambda: ComplexFrequency,
        source: Point3,
    },
    /// ∂²_t u + (−Δ) u = 0 for the regular part of the sine kernel, checked
    /// with centered differences in both t and x.
    WaveKernelRegular {
        param: ExtensionParameter,
        source: Point3,
        time: f64,
    },
}

/// One probe point's worth of PDE misfit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualSample {
    pub x: Point3,
    /// |equation applied to the closed form| at x.
    pub residual: f64,
    /// The natural size of the equation's terms at x; compare residual
    /// against this.
    pub scale: f64,
}

/// Evaluate the subject's PDE residual at each probe point with stencil
/// width h. Probe points must avoid the subject's singular set (origin,
/// source point, wavefronts) by a few h.
pub fn pde_residual_sweep(
    subject: &PdeSubject,
    points: &[Point3],
    h: f64,
    spec: &QuadratureSpec,
) -> Result<Vec<ResidualSample>> {
    if !(h > 0.0) {
        return Err(Error::InvalidInput("stencil width must be positive".into()));
    }
    let _ = spec; // reserved for subjects that need quadrature-backed values
    let mut out = Vec::with_capacity(points.len());
    for &x in points {
        let sample = match subject {
            PdeSubject::Eigenfunction { param } => {
                let mut v = |p: &Point3| eigenfunction(*param, p).unwrap_or(f64::NAN);
                let value = eigenfunction(*param, &x)?;
                let mu = match param {
                    ExtensionParameter::Finite(m) => *m,
                    ExtensionParameter::Friedrichs => unreachable!("eigenfunction errored above"),
                };
                let lap = fd_laplacian3(&mut v, &x, h);
                let want = -mu * mu * value;
                ResidualSample {
                    x,
                    residual: (lap - want).abs(),
                    scale: want.abs(),
                }
            }
            PdeSubject::ResolventKernel { param, lambda, source } => {
                let mut k =
                    |p: &Point3| resolvent_kernel(*param, *lambda, p, source).unwrap_or(C64::new(f64::NAN, 0.0));
                let value = resolvent_kernel(*param, *lambda, &x, source)?;
                let lap = fd_laplacian3(&mut k, &x, h);
                let want = lambda.value() * lambda.value() * value;
                ResidualSample {
                    x,
                    residual: (lap - want).norm(),
                    scale: want.norm(),
                }
            }
            PdeSubject::WaveKernelRegular { param, source, time } => {
                let mut u_x =
                    |p: &Point3| sine_kernel(*param, *time, p, source).map(|k| k.regular).unwrap_or(f64::NAN);
                let mut u_t =
                    |s: f64| sine_kernel(*param, s, &x, source).map(|k| k.regular).unwrap_or(f64::NAN);
                // the kernel's step at t = s₀ must stay outside the stencil,
                // which perturbs t by h and s₀ by at most h
                let s0 = x.norm() + source.norm();
                if (*time - s0).abs() <= 4.0 * h {
                    return Err(Error::InvalidInput(format!(
                        "probe at {x:?} puts the diffracted front inside the stencil (t − s₀ = {})",
                        *time - s0
                    )));
                }
                let lap = fd_laplacian3(&mut u_x, &x, h);
                let utt = fd_second(&mut u_t, *time, h);
                ResidualSample {
                    x,
                    residual: (utt + lap).abs(),
                    scale: utt.abs().max(lap.abs()),
                }
            }
        };
        if !sample.residual.is_finite() {
            return Err(Error::InvalidInput(format!(
                "PDE stencil at {:?} touched a singular point",
                sample.x
            )));
        }
        out.push(sample);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutoff::make_standard_cutoff;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn fourier_identity_for_real_and_complex_decay() {
        let spec = QuadratureSpec::default_spec();
        for (decay, r) in [
            (C64::new(1.0, 0.0), 1.0),
            (C64::new(2.0, 0.0), 0.5),
            (C64::from_polar(1.0, FRAC_PI_4), 0.5),
            (C64::from_polar(1.0, -FRAC_PI_4), 2.0),
        ] {
            let rep = fourier_radial_check(decay, r, &spec).unwrap();
            assert!(
                rep.rel_error <= 1e-5,
                "decay {decay}, r {r}: rel {}",
                rep.rel_error
            );
        }
        assert!(fourier_radial_check(C64::new(-1.0, 0.0), 1.0, &spec).is_err());
    }

    #[test]
    fn mollified_dirichlet_integral_hits_the_step() {
        let spec = QuadratureSpec::default_spec();
        for a in [1.0, -1.0] {
            let rep =
                dirichlet_integral_check(a, 1e4, make_standard_cutoff(), &spec).unwrap();
            assert!(
                rep.abs_error <= 1e-3,
                "a = {a}: got {}, err {}",
                rep.computed,
                rep.abs_error
            );
        }
    }

    #[test]
    fn kernel_reconstruction_all_coupling_signs() {
        let spec = QuadratureSpec::default_spec();
        let x = Point3::on_axis(1.0);
        let y = Point3::new(0.0, 1.0, 0.0);
        // C³ taper: its mollification error sits well under 1e-3 at R = 1e4.
        let profile = CutoffProfile::SepticTaper;
        for mu in [1.0, 0.0, -1.0] {
            let param = ExtensionParameter::Finite(mu);
            let rep =
                reconstruct_diffracted_kernel(param, 3.0, &x, &y, 1e4, profile, &spec).unwrap();
            assert!(
                rep.rel_error <= 1e-3,
                "mu = {mu}: value {} vs closed {} (rel {})",
                rep.value,
                rep.closed_form,
                rep.rel_error
            );
        }
        // μ = −1, t = 3: the closed form is e^{+1}/(4π), a growing tail.
        let rep = reconstruct_diffracted_kernel(
            ExtensionParameter::Finite(-1.0),
            3.0,
            &x,
            &y,
            1e4,
            profile,
            &spec,
        )
        .unwrap();
        assert!((rep.closed_form - 1.0f64.exp() / (4.0 * PI)).abs() < 1e-15);
        assert!(rep.bound_state_value > 0.0);
    }

    #[test]
    fn reconstruction_before_the_front_cancels_exactly() {
        // t < s₀: closed form is 0, so contour ≈ −bound (cancellation), and
        // the reconstructed value must be small in absolute terms.
        let spec = QuadratureSpec::default_spec();
        let x = Point3::on_axis(1.2);
        let y = Point3::new(0.0, 0.0, 1.3);
        let rep = reconstruct_diffracted_kernel(
            ExtensionParameter::Finite(-0.8),
            1.0,
            &x,
            &y,
            1e4,
            CutoffProfile::SepticTaper,
            &spec,
        )
        .unwrap();
        assert_eq!(rep.closed_form, 0.0);
        assert!(rep.bound_state_value > 0.0);
        assert!(
            rep.abs_error <= 1e-3 * rep.bound_state_value,
            "cancellation defect {} vs bound size {}",
            rep.abs_error,
            rep.bound_state_value
        );
    }

    #[test]
    fn zero_coupling_half_step_on_the_front() {
        // μ = 0, t = s₀: the reconstruction must land on the half-step value
        // 1/(8π|x||y|).
        let spec = QuadratureSpec::default_spec();
        let x = Point3::on_axis(1.0);
        let y = Point3::new(0.0, 1.0, 0.0);
        let rep = reconstruct_diffracted_kernel(
            ExtensionParameter::Finite(0.0),
            2.0,
            &x,
            &y,
            1e4,
            CutoffProfile::SepticTaper,
            &spec,
        )
        .unwrap();
        assert!((rep.closed_form - 1.0 / (8.0 * PI)).abs() < 1e-16);
        assert!(rep.rel_error <= 1e-3, "rel {}", rep.rel_error);
    }

    #[test]
    fn residues_by_contour_walking() {
        for mu in [1.0, -1.0] {
            for order in [1u32, 2] {
                let s = 2.0;
                let rep = residue_check(mu, s, order, 0.75).unwrap();
                assert!(
                    rep.rel_error <= 1e-10,
                    "mu {mu} order {order}: rel {}",
                    rep.rel_error
                );
            }
        }
        assert!(residue_check(1.0, 1.0, 3, 0.5).is_err());
    }

    #[test]
    fn eigenfunction_sweep_is_clean() {
        let spec = QuadratureSpec::default_spec();
        let subject = PdeSubject::Eigenfunction {
            param: ExtensionParameter::Finite(-1.0),
        };
        let pts = [
            Point3::new(0.75, 0.0, 0.2),
            Point3::new(-1.0, 1.2, 0.4),
            Point3::new(2.0, -1.0, 1.5),
        ];
        let samples = pde_residual_sweep(&subject, &pts, 1e-3, &spec).unwrap();
        for s in samples {
            assert!(
                s.residual <= 1e-4 * s.scale,
                "residual {} at {:?}",
                s.residual,
                s.x
            );
        }
    }

    #[test]
    fn wave_kernel_sweep_is_clean() {
        let spec = QuadratureSpec::default_spec();
        let subject = PdeSubject::WaveKernelRegular {
            param: ExtensionParameter::Finite(0.7),
            source: Point3::on_axis(1.0),
            time: 4.0,
        };
        // all probe radii keep t − s₀ ≥ 1 so the step is far from the stencil
        let pts = [Point3::new(1.0, 0.5, 0.5), Point3::new(0.0, -1.4, 0.7)];
        let samples = pde_residual_sweep(&subject, &pts, 1e-3, &spec).unwrap();
        for s in samples {
            assert!(
                s.residual <= 1e-5 * s.scale,
                "residual {} scale {}",
                s.residual,
                s.scale
            );
        }
    }
}
