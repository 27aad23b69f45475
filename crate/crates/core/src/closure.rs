//! Quantitative closure analysis: how much it costs, in graph norm, to cut
//! a function off near the origin.
//!
//! Whether removing the origin from the domain of L = −Δ matters is a
//! question about cutoff families. The naive family φ_ε = 1 − φ(|x|/ε)
//! (with φ the standard profile: 1 on [0, ½], 0 on [1, ∞)) has
//!
//! ```text
//! ‖L φ_ε‖²_{L²(ℝ^d)} = ε^{d−4} · ‖Lφ‖²_{L²(ℝ^d)}
//! ```
//!
//! by pure scaling — vanishing for d ≥ 5, exactly ε-independent in the
//! critical dimension d = 4. There the tailored family
//! φ_ε = 1 − φ((|x|/ε)^ε), whose transition region (ε2^{−1/ε}, ε) stretches
//! logarithmically, still wins: its squared norm decays like ε (though only
//! logarithmically in the support size). The radial Laplacian of the
//! tailored composite is
//!
//! ```text
//! −Δ φ((r/ε)^ε) = −[(d−2) ε^{1−ε} r^{ε−2} φ′ + ε^{2−2ε} r^{2ε−2} φ″
//!                   + ε^{2−ε} r^{ε−2} φ′],   φ', φ″ at (r/ε)^ε,
//! ```
//!
//! and the dimension-by-dimension dominant radial integrals have the closed
//! values ε/2 (d = 4 and d = 3) and −ε³lnε/2 + ε²/4 (d = 2). Everything
//! here certifies those claims numerically; d = 1 is covered by the same
//! machinery but carries no certified closed form.

use crate::cutoff::{make_standard_cutoff, CutoffProfile};
use crate::error::{Error, Result};
use crate::quad::{integrate, radial_ball_integral, sphere_surface, QuadratureSpec};

/// The two cutoff families of the closure argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffFamilyKind {
    /// φ_ε = 1 − φ(|x|/ε): transition annulus (ε/2, ε).
    Naive,
    /// φ_ε = 1 − φ((|x|/ε)^ε): transition annulus (ε 2^{−1/ε}, ε).
    Tailored,
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidInput(format!("eps must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

/// L φ((r/ε)^ε) with L = −Δ in d dimensions, evaluated through the
/// closed-form chain rule above (the composite's inner derivative is
/// h′ = ε^{1−ε} r^{ε−1}). Zero outside the transition band
/// (r/ε)^ε ∈ (½, 1). Uses the standard profile.
pub fn laplacian_of_tailored_cutoff(d: u32, eps: f64, r: f64) -> Result<f64> {
    if !(1..=4).contains(&d) {
        return Err(Error::InvalidInput(format!("dimension must be 1..=4, got {d}")));
    }
    check_eps(eps)?;
    if !(r > 0.0) {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    let profile = make_standard_cutoff();
    let u = (r / eps).powf(eps);
    let (_, d1, d2) = profile.eval(u);
    let t1 = (d as f64 - 2.0) * eps.powf(1.0 - eps) * r.powf(eps - 2.0) * d1;
    let t2 = eps.powf(2.0 - 2.0 * eps) * r.powf(2.0 * eps - 2.0) * d2;
    let t3 = eps.powf(2.0 - eps) * r.powf(eps - 2.0) * d1;
    Ok(-(t1 + t2 + t3))
}

/// The radial integrals that dominate the tailored-family norm estimates,
/// one per dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureIntegralCase {
    /// ε^{2−2ε} ∫₀^ε r^{2ε−4} · r³ dr = ε/2.
    D4,
    /// ε^{2−2ε} ∫₀^ε r^{2ε−3} · r² dr = ε/2 (the Hölder weight |x| absorbed).
    D3,
    /// −ε^{4−2ε} ∫₀^ε r^{2ε−1} ln r dr = −ε³lnε/2 + ε²/4.
    D2,
}

impl ClosureIntegralCase {
    /// Closed-form value the quadrature must reproduce.
    pub fn closed_form(&self, eps: f64) -> f64 {
        match self {
            ClosureIntegralCase::D4 | ClosureIntegralCase::D3 => eps / 2.0,
            ClosureIntegralCase::D2 => {
                -eps.powi(3) * eps.ln() / 2.0 + eps * eps / 4.0
            }
        }
    }
}

/// Evaluate the case's radial integral by quadrature (no angular constant:
/// the returned value is the radial factor alone). With the volume weight
/// absorbed, every case reduces to ∫₀^ε r^{2ε−1} (·ln r) dr; substituting
/// r = ε e^{−v} turns the endpoint singularity into plain exponential decay
/// in v, which an adaptive rule resolves without deep refinement.
pub fn closure_radial_integral(
    case: ClosureIntegralCase,
    eps: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_eps(eps)?;
    // truncation at v = V leaves a relative tail of e^{−2εV}
    let v_max = 24.0 / eps;
    let pow = eps.powf(2.0 * eps);
    match case {
        ClosureIntegralCase::D4 | ClosureIntegralCase::D3 => {
            let mut g = |v: f64| pow * (-2.0 * eps * v).exp();
            Ok(eps.powf(2.0 - 2.0 * eps) * integrate(&mut g, 0.0, v_max, spec)?)
        }
        ClosureIntegralCase::D2 => {
            let mut g = |v: f64| pow * (-2.0 * eps * v).exp() * (eps.ln() - v);
            Ok(-eps.powf(4.0 - 2.0 * eps) * integrate(&mut g, 0.0, v_max, spec)?)
        }
    }
}

/// Tailored-family Laplacian in the logarithmic variable r = ε e^{−v},
/// where every extreme power of r collapses:
///
/// ```text
/// Δφ(u) = (d−2) ε^{−1} e^{(2−ε)v} φ′(u) + e^{(2−2ε)v} φ″(u) + e^{(2−ε)v} φ′(u),
/// u = e^{−εv}.
/// ```
fn tailored_laplacian_logvar(profile: &CutoffProfile, d: u32, eps: f64, v: f64) -> f64 {
    let u = (-eps * v).exp();
    let (_, d1, d2) = profile.eval(u);
    let e1 = ((2.0 - eps) * v).exp();
    let e2 = ((2.0 - 2.0 * eps) * v).exp();
    (d as f64 - 2.0) / eps * e1 * d1 + e2 * d2 + e1 * d1
}

/// Squared L² norm ‖L φ_ε‖² over ℝ^d (angular constant ω_{d−1} included).
///
/// Naive: a single smooth integral over the annulus (ε/2, ε). Tailored: the
/// transition region spans many decades, so the integral runs in the
/// logarithmic variable v ∈ [0, ln2/ε], where the integrand is tame.
pub fn cutoff_l2_laplacian_norm(
    kind: CutoffFamilyKind,
    d: u32,
    eps: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(1..=5).contains(&d) {
        return Err(Error::InvalidInput(format!("dimension must be 1..=5, got {d}")));
    }
    check_eps(eps)?;
    let profile = make_standard_cutoff();
    let omega = sphere_surface(d);
    match kind {
        CutoffFamilyKind::Naive => {
            let mut f = |r: f64| {
                let (_, d1, d2) = profile.eval(r / eps);
                let lap = d2 / (eps * eps) + (d as f64 - 1.0) * d1 / (eps * r);
                lap * lap * r.powi(d as i32 - 1)
            };
            Ok(omega * integrate(&mut f, eps / 2.0, eps, spec)?)
        }
        CutoffFamilyKind::Tailored => {
            let v_max = 2.0f64.ln() / eps;
            // balance the e^{2v}-scale growth of the Laplacian against the
            // e^{−dv} volume factor before squaring
            let half_weight = eps.powf(d as f64 / 2.0);
            let mut f = |v: f64| {
                let w = tailored_laplacian_logvar(&profile, d, eps, v)
                    * half_weight
                    * (-(d as f64) * v / 2.0).exp();
                w * w
            };
            Ok(omega * integrate(&mut f, 0.0, v_max, spec)?)
        }
    }
}

/// A radial test function with exact first and second derivatives, for the
/// graph-norm approximation experiment.
pub struct RadialTestFunction {
    pub value: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub derivative: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub second_derivative: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl RadialTestFunction {
    /// ψ(r) = e^{−r²}: smooth, ψ(0) ≠ 0; admissible only in d = 4.
    pub fn gaussian() -> Self {
        RadialTestFunction {
            value: Box::new(|r| (-r * r).exp()),
            derivative: Box::new(|r| -2.0 * r * (-r * r).exp()),
            second_derivative: Box::new(|r| (4.0 * r * r - 2.0) * (-r * r).exp()),
        }
    }

    /// ψ(r) = r e^{−r²}: vanishes at the origin; as a function of x ∈ ℝ^d
    /// this is |x| e^{−|x|²}, whose Laplacian carries a 1/r term — still
    /// square integrable for d = 3 but not for d = 2.
    pub fn abs_times_gaussian() -> Self {
        RadialTestFunction {
            value: Box::new(|r| r * (-r * r).exp()),
            derivative: Box::new(|r| (1.0 - 2.0 * r * r) * (-r * r).exp()),
            second_derivative: Box::new(|r| (4.0 * r * r - 6.0) * r * (-r * r).exp()),
        }
    }

    /// ψ(r) = r² e^{−r²}: vanishes to second order; admissible in every
    /// dimension here, needed for d = 2.
    pub fn square_times_gaussian() -> Self {
        RadialTestFunction {
            value: Box::new(|r| r * r * (-r * r).exp()),
            derivative: Box::new(|r| 2.0 * r * (1.0 - r * r) * (-r * r).exp()),
            second_derivative: Box::new(|r| {
                (2.0 - 10.0 * r * r + 4.0 * r.powi(4)) * (-r * r).exp()
            }),
        }
    }
}

/// The four L² norms measuring how well ψ φ_ε approximates ψ in graph norm
/// for the tailored family (all supported in |x| ≤ ε).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct W22Report {
    /// ‖ψ φ_ε − ψ‖ = ‖ψ φ((r/ε)^ε)‖.
    pub value_defect: f64,
    /// ‖(Lψ)(φ_ε − 1)‖.
    pub laplacian_mismatch: f64,
    /// ‖∇ψ · ∇(φ_ε − 1)‖.
    pub gradient_cross: f64,
    /// ‖ψ L(φ_ε − 1)‖ — the term the dominant radial integrals control.
    pub singular_product: f64,
}

/// Measure the four norms for a radial ψ in dimension d ∈ {2, 3, 4}.
///
/// For d < 4 the test function must vanish at the origin (the graph-norm
/// approximation fails otherwise, which is the whole point of the
/// dimension split). Radial symmetry turns each norm into a 1-D integral
/// with weight ω_{d−1} r^{d−1}; the plateau part (r ≤ ε2^{−1/ε}, where
/// φ_ε − 1 = −1 exactly) integrates in r, the transition part in the
/// logarithmic variable.
pub fn w22_approximation_error(
    d: u32,
    psi: &RadialTestFunction,
    eps: f64,
    spec: &QuadratureSpec,
) -> Result<W22Report> {
    if !(2..=4).contains(&d) {
        return Err(Error::InvalidInput(format!("dimension must be 2..=4, got {d}")));
    }
    check_eps(eps)?;
    if d < 4 && (psi.value)(0.0) != 0.0 {
        return Err(Error::InvalidInput(
            "for d < 4 the test function must vanish at the origin".into(),
        ));
    }
    let profile = make_standard_cutoff();
    let omega = sphere_surface(d);
    let df = d as f64;
    let r_plateau = eps * 2.0f64.powf(-1.0 / eps);
    let v_max = 2.0f64.ln() / eps;
    let lap_psi = |r: f64| -((psi.second_derivative)(r) + (df - 1.0) * (psi.derivative)(r) / r);

    // plateau contributions: φ(u) = 1, derivatives 0
    let mut f_val = |r: f64| (psi.value)(r).powi(2);
    let plateau_value = radial_ball_integral(&mut f_val, d, r_plateau, spec)?;
    let mut f_lap = |r: f64| lap_psi(r).powi(2);
    let plateau_lap = radial_ball_integral(&mut f_lap, d, r_plateau, spec)?;

    // transition contributions in v, volume factor ε^d e^{−dv} dv
    let vol = |v: f64| eps.powf(df) * (-df * v).exp();
    let radius = |v: f64| eps * (-v).exp();
    let mut t_val = |v: f64| {
        let r = radius(v);
        let u = (-eps * v).exp();
        ((psi.value)(r) * profile.value(u)).powi(2) * vol(v)
    };
    let trans_value = integrate(&mut t_val, 0.0, v_max, spec)?;
    let mut t_lap = |v: f64| {
        let r = radius(v);
        let u = (-eps * v).exp();
        (lap_psi(r) * profile.value(u)).powi(2) * vol(v)
    };
    let trans_lap = integrate(&mut t_lap, 0.0, v_max, spec)?;
    // ∇ψ·∇(φ_ε−1) = −ψ′(r) φ′(u) u′(r), and u′ = ε^{1−ε} r^{ε−1} = e^{(1−ε)v}
    let mut t_grad = |v: f64| {
        let r = radius(v);
        let u = (-eps * v).exp();
        let (_, d1, _) = profile.eval(u);
        ((psi.derivative)(r) * d1 * ((1.0 - eps) * v).exp()).powi(2) * vol(v)
    };
    let trans_grad = integrate(&mut t_grad, 0.0, v_max, spec)?;
    let mut t_sing = |v: f64| {
        let r = radius(v);
        ((psi.value)(r) * tailored_laplacian_logvar(&profile, d, eps, v)).powi(2) * vol(v)
    };
    let trans_sing = integrate(&mut t_sing, 0.0, v_max, spec)?;

    // radial_ball_integral already carries ω_{d−1}; the v-integrals do not
    Ok(W22Report {
        value_defect: (plateau_value + omega * trans_value).sqrt(),
        laplacian_mismatch: (plateau_lap + omega * trans_lap).sqrt(),
        gradient_cross: (omega * trans_grad).sqrt(),
        singular_product: (omega * trans_sing).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::{fd_first, fd_second};

    #[test]
    fn central_formula_matches_finite_differences() {
        // value = −(g″ + (d−1)/r g′) for g(r) = φ((r/ε)^ε)
        let eps = 0.3;
        for d in [1u32, 2, 3, 4] {
            // place the composite mid-band: (r/ε)^ε = 0.75
            let r = eps * 0.75f64.powf(1.0 / eps);
            let got = laplacian_of_tailored_cutoff(d, eps, r).unwrap();
            let profile = make_standard_cutoff();
            let mut g = |rr: f64| profile.value((rr / eps).powf(eps));
            let h = 1e-4 * r;
            let want = -(fd_second(&mut g, r, h) + (d as f64 - 1.0) * fd_first(&mut g, r, h) / r);
            assert!(
                (got - want).abs() <= 1e-4 * want.abs(),
                "d = {d}: closed {got} vs fd {want}"
            );
        }
    }

    #[test]
    fn central_formula_vanishes_on_the_plateaus() {
        let eps = 0.25;
        // (r/ε)^ε = 0.25 → deep inside the inner plateau
        let r_inner = eps * 0.25f64.powf(1.0 / eps);
        assert_eq!(laplacian_of_tailored_cutoff(3, eps, r_inner).unwrap(), 0.0);
        // r ≥ ε → outer plateau
        assert_eq!(laplacian_of_tailored_cutoff(3, eps, eps * 1.1).unwrap(), 0.0);
    }

    #[test]
    fn two_dimensional_case_drops_the_first_term() {
        // at d = 2 the (d−2) coefficient is exactly zero, so the value is
        // the φ″ term plus the ε² φ′ term only; verify via linearity in d:
        // value(d) − value(2) must scale like (d−2).
        let eps = 0.3;
        let r = eps * 0.8f64.powf(1.0 / eps);
        let v2 = laplacian_of_tailored_cutoff(2, eps, r).unwrap();
        let v3 = laplacian_of_tailored_cutoff(3, eps, r).unwrap();
        let v4 = laplacian_of_tailored_cutoff(4, eps, r).unwrap();
        assert!(((v4 - v2) - 2.0 * (v3 - v2)).abs() <= 1e-12 * v2.abs().max(v3.abs()));
    }

    #[test]
    fn dominant_integrals_match_their_closed_forms() {
        let spec = QuadratureSpec::default_spec();
        for (case, eps) in [
            (ClosureIntegralCase::D4, 0.1),
            (ClosureIntegralCase::D4, 0.3),
            (ClosureIntegralCase::D3, 0.2),
            (ClosureIntegralCase::D3, 0.05),
            (ClosureIntegralCase::D2, 0.1),
            (ClosureIntegralCase::D2, 0.4),
        ] {
            let got = closure_radial_integral(case, eps, &spec).unwrap();
            let want = case.closed_form(eps);
            assert!(
                (got - want).abs() <= 1e-10 * want,
                "{case:?} at eps {eps}: got {got}, want {want}"
            );
        }
        // spot values
        assert_eq!(ClosureIntegralCase::D4.closed_form(0.1), 0.05);
        assert!((ClosureIntegralCase::D2.closed_form(0.1) - 0.0036512925464970228).abs() < 1e-12);
    }

    #[test]
    fn naive_family_critical_dimension_is_scale_invariant() {
        let spec = QuadratureSpec::default_spec();
        let v1 = cutoff_l2_laplacian_norm(CutoffFamilyKind::Naive, 4, 0.1, &spec).unwrap();
        let v2 = cutoff_l2_laplacian_norm(CutoffFamilyKind::Naive, 4, 0.05, &spec).unwrap();
        let v3 = cutoff_l2_laplacian_norm(CutoffFamilyKind::Naive, 4, 0.025, &spec).unwrap();
        assert!((v1 - v2).abs() <= 1e-10 * v1);
        assert!((v1 - v3).abs() <= 1e-10 * v1);
    }

    #[test]
    fn naive_family_scales_like_eps_to_d_minus_4() {
        let spec = QuadratureSpec::default_spec();
        for (d, want_ratio) in [(5u32, 0.5), (3, 2.0), (2, 4.0)] {
            let hi = cutoff_l2_laplacian_norm(CutoffFamilyKind::Naive, d, 0.1, &spec).unwrap();
            let lo = cutoff_l2_laplacian_norm(CutoffFamilyKind::Naive, d, 0.2, &spec).unwrap();
            assert!(
                (hi / lo - want_ratio).abs() <= 1e-6 * want_ratio,
                "d = {d}: ratio {}",
                hi / lo
            );
        }
    }

    #[test]
    fn tailored_family_beats_the_critical_dimension() {
        let spec = QuadratureSpec::default_spec();
        let v1 = cutoff_l2_laplacian_norm(CutoffFamilyKind::Tailored, 4, 0.2, &spec).unwrap();
        let v2 = cutoff_l2_laplacian_norm(CutoffFamilyKind::Tailored, 4, 0.1, &spec).unwrap();
        let v3 = cutoff_l2_laplacian_norm(CutoffFamilyKind::Tailored, 4, 0.05, &spec).unwrap();
        assert!(v1 > v2 && v2 > v3, "{v1} > {v2} > {v3} fails");
        // leading behavior is linear in ε (with logarithmic corrections)
        let ratio = v2 / v3;
        assert!(ratio > 1.5 && ratio < 2.5, "halving ratio {ratio}");
    }

    #[test]
    fn graph_norm_defects_shrink_with_eps() {
        let spec = QuadratureSpec::default_spec();
        let psi = RadialTestFunction::abs_times_gaussian();
        let big = w22_approximation_error(3, &psi, 0.1, &spec).unwrap();
        let small = w22_approximation_error(3, &psi, 0.05, &spec).unwrap();
        assert!(big.value_defect > small.value_defect);
        assert!(big.laplacian_mismatch > small.laplacian_mismatch);
        assert!(big.gradient_cross > small.gradient_cross);
        assert!(big.singular_product > small.singular_product);
    }

    #[test]
    fn dominant_norm_obeys_the_dimension_four_bound() {
        // ‖ψ L(φ_ε−1)‖² ≤ max|ψ|² ω₃ (ε/2) · 3(5M₁ + M₂)
        let spec = QuadratureSpec::default_spec();
        let psi = RadialTestFunction::gaussian();
        let eps = 0.1;
        let rep = w22_approximation_error(4, &psi, eps, &spec).unwrap();
        let (m1, m2) = make_standard_cutoff().derivative_sups();
        let max_psi_sq = 1.0;
        let bound = max_psi_sq * sphere_surface(4) * (eps / 2.0) * 3.0 * (5.0 * m1 * m1 + m2 * m2);
        assert!(
            rep.singular_product.powi(2) <= bound,
            "norm² {} exceeds bound {bound}",
            rep.singular_product.powi(2)
        );
    }

    #[test]
    fn low_dimension_needs_vanishing_test_functions() {
        let spec = QuadratureSpec::default_spec();
        let psi = RadialTestFunction::gaussian();
        assert!(w22_approximation_error(3, &psi, 0.1, &spec).is_err());
        // and d = 2 works with the second-order zero
        let psi2 = RadialTestFunction::square_times_gaussian();
        let rep = w22_approximation_error(2, &psi2, 0.1, &spec).unwrap();
        assert!(rep.singular_product.is_finite() && rep.singular_product > 0.0);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let spec = QuadratureSpec::default_spec();
        assert!(laplacian_of_tailored_cutoff(5, 0.1, 0.05).is_err());
        assert!(laplacian_of_tailored_cutoff(3, 1.2, 0.05).is_err());
        assert!(closure_radial_integral(ClosureIntegralCase::D4, 0.0, &spec).is_err());
        assert!(cutoff_l2_laplacian_norm(CutoffFamilyKind::Naive, 6, 0.1, &spec).is_err());
    }
}
