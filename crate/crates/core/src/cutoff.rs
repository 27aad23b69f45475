//! Smooth radial cutoff profiles.
//!
//! A profile is a nonincreasing φ: [0, ∞) → [0, 1] with φ ≡ 1 on [0, ½] and
//! φ ≡ 0 on [1, ∞), evaluable together with two derivatives. Profiles serve
//! two distinct roles: as spatial cutoffs `χ(|x|/ρ)` multiplying singular
//! domain elements, and as spectral mollifiers `φ(λ²/R)` truncating contour
//! integrals.

/// Transition taper on (½, 1). All variants satisfy the same contract; they
/// differ in smoothness class and derivative size, which matters for the
/// convergence rate of mollified contour integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffProfile {
    /// `φ(s) = b(1−s) / (b(1−s) + b(s−½))` with `b(u) = e^{−1/u}`.
    /// C^∞, but with derivative sup-norms that grow fast with the order.
    ExponentialBump,
    /// `φ(s) = 1 − S(2s−1)` with the quintic smoothstep `S(u) = 6u⁵−15u⁴+10u³`.
    /// C² across the transition points.
    QuinticTaper,
    /// `φ(s) = 1 − S(2s−1)` with `S(u) = −20u⁷+70u⁶−84u⁵+35u⁴`. C³, with
    /// small derivative constants; the default mollifier for contour work.
    SepticTaper,
}

/// The standard cutoff: exponential-bump transition on (½, 1).
pub fn make_standard_cutoff() -> CutoffProfile {
    CutoffProfile::ExponentialBump
}

impl CutoffProfile {
    /// φ(s).
    pub fn value(&self, s: f64) -> f64 {
        self.eval(s).0
    }

    /// φ′(s).
    pub fn d1(&self, s: f64) -> f64 {
        self.eval(s).1
    }

    /// φ″(s).
    pub fn d2(&self, s: f64) -> f64 {
        self.eval(s).2
    }

    /// (φ, φ′, φ″) at `s`. Exact 1/0 plateaus outside the transition band.
    pub fn eval(&self, s: f64) -> (f64, f64, f64) {
        if s <= 0.5 {
            return (1.0, 0.0, 0.0);
        }
        if s >= 1.0 {
            return (0.0, 0.0, 0.0);
        }
        match self {
            CutoffProfile::ExponentialBump => bump_eval(s),
            CutoffProfile::QuinticTaper => {
                let u = 2.0 * s - 1.0;
                let (v, d1, d2) = quintic_smoothstep(u);
                (1.0 - v, -2.0 * d1, -4.0 * d2)
            }
            CutoffProfile::SepticTaper => {
                let u = 2.0 * s - 1.0;
                let (v, d1, d2) = septic_smoothstep(u);
                (1.0 - v, -2.0 * d1, -4.0 * d2)
            }
        }
    }

    /// Sup-norms (‖φ′‖_∞, ‖φ″‖_∞) estimated on a fine transition grid.
    /// Used by closure estimates that need explicit profile constants.
    pub fn derivative_sups(&self) -> (f64, f64) {
        let n = 20_000;
        let mut m1: f64 = 0.0;
        let mut m2: f64 = 0.0;
        for k in 0..=n {
            let s = 0.5 + 0.5 * k as f64 / n as f64;
            let (_, d1, d2) = self.eval(s);
            m1 = m1.max(d1.abs());
            m2 = m2.max(d2.abs());
        }
        (m1, m2)
    }
}

/// `b(u) = e^{−1/u}` for u > 0, extended by 0. Flat to all orders at 0.
fn bexp(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        (-1.0 / u).exp()
    }
}

fn bump_eval(s: f64) -> (f64, f64, f64) {
    let up = 1.0 - s; // argument of the numerator bump
    let uq = s - 0.5; // argument of the denominator bump
    let p = bexp(up);
    let q = bexp(uq);
    // Deep in either tail the opposite bump underflows to exactly 0; the
    // profile is exactly on its plateau there and the formulas below would
    // divide 0 by an underflowed power.
    if q == 0.0 {
        return (1.0, 0.0, 0.0);
    }
    if p == 0.0 {
        return (0.0, 0.0, 0.0);
    }
    // b'(u) = b/u², b''(u) = b(1−2u)/u⁴; chain rule for p(s) = b(1−s).
    let dp = -p / (up * up);
    let dq = q / (uq * uq);
    let ddp = p * (1.0 - 2.0 * up) / (up * up * up * up);
    let ddq = q * (1.0 - 2.0 * uq) / (uq * uq * uq * uq);
    let w = p + q;
    let dw = dp + dq;
    let value = p / w;
    let d1 = (dp * q - p * dq) / (w * w);
    let d2 = ((ddp * q - p * ddq) * w - 2.0 * (dp * q - p * dq) * dw) / (w * w * w);
    (value, d1, d2)
}

/// S(u) = 6u⁵ − 15u⁴ + 10u³ with S′(u) = 30u²(1−u)².
fn quintic_smoothstep(u: f64) -> (f64, f64, f64) {
    let v = ((6.0 * u - 15.0) * u + 10.0) * u * u * u;
    let d1 = 30.0 * u * u * (1.0 - u) * (1.0 - u);
    let d2 = 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u);
    (v, d1, d2)
}

/// S(u) = −20u⁷ + 70u⁶ − 84u⁵ + 35u⁴ with S′(u) = 140u³(1−u)³.
fn septic_smoothstep(u: f64) -> (f64, f64, f64) {
    let v = (((-20.0 * u + 70.0) * u - 84.0) * u + 35.0) * u * u * u * u;
    let w = u * (1.0 - u);
    let d1 = 140.0 * w * w * w;
    let d2 = 420.0 * w * w * (1.0 - 2.0 * u);
    (v, d1, d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PROFILES: [CutoffProfile; 3] = [
        CutoffProfile::ExponentialBump,
        CutoffProfile::QuinticTaper,
        CutoffProfile::SepticTaper,
    ];

    #[test]
    fn plateaus_are_exact() {
        for p in PROFILES {
            assert_eq!(p.eval(0.0), (1.0, 0.0, 0.0));
            assert_eq!(p.eval(0.5), (1.0, 0.0, 0.0));
            assert_eq!(p.eval(1.0), (0.0, 0.0, 0.0));
            assert_eq!(p.eval(7.5), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn standard_cutoff_midpoint_is_half() {
        // p and q see the same argument at s = 3/4, so the ratio is exactly 1/2.
        let phi = make_standard_cutoff();
        assert_eq!(phi.value(0.75), 0.5);
        let v = phi.value(0.6);
        assert!(v > 0.0 && v < 1.0);
    }

    #[test]
    fn profiles_are_nonincreasing_and_bounded() {
        for p in PROFILES {
            let mut prev = 1.0 + 1e-15;
            for k in 0..=1000 {
                let s = 1.2 * k as f64 / 1000.0;
                let v = p.value(s);
                assert!((0.0..=1.0).contains(&v), "{p:?} value {v} out of range at {s}");
                assert!(v <= prev + 1e-12, "{p:?} increases at s = {s}");
                prev = v;
            }
        }
    }

    /// Central differences of φ reproduce φ′ and φ″ inside the transition.
    #[test]
    fn derivatives_match_central_differences() {
        let h = 1e-5;
        for p in PROFILES {
            for k in 1..100 {
                let s = 0.5 + 0.5 * k as f64 / 100.0 - 1e-4;
                if s <= 0.5 + h || s >= 1.0 - h {
                    continue;
                }
                let (v, d1, d2) = p.eval(s);
                let fd1 = (p.value(s + h) - p.value(s - h)) / (2.0 * h);
                let fd2 = (p.value(s + h) - 2.0 * v + p.value(s - h)) / (h * h);
                assert!(
                    (d1 - fd1).abs() <= 1e-6 * (1.0 + d1.abs()),
                    "{p:?} phi' mismatch at s={s}: {d1} vs {fd1}"
                );
                assert!(
                    (d2 - fd2).abs() <= 1e-4 * (1.0 + d2.abs()),
                    "{p:?} phi'' mismatch at s={s}: {d2} vs {fd2}"
                );
            }
        }
    }

    #[test]
    fn bump_deep_tails_do_not_produce_nan() {
        let p = CutoffProfile::ExponentialBump;
        // s − ½ below 1/745 underflows b(s−½) to zero.
        let (v, d1, d2) = p.eval(0.5 + 1e-6);
        assert_eq!((v, d1, d2), (1.0, 0.0, 0.0));
        let (v, d1, d2) = p.eval(1.0 - 1e-6);
        assert_eq!((v, d1, d2), (0.0, 0.0, 0.0));
    }

    #[test]
    fn derivative_sups_are_moderate() {
        // The closure estimates cite these constants; pin their rough size.
        let (m1, m2) = CutoffProfile::SepticTaper.derivative_sups();
        // S'(1/2) = 140/64 scaled by the chain factor 2; the second-derivative
        // extremum sits at u = (5−√5)/10 where u(1−u) = 1/5 exactly.
        assert!((m1 - 4.375).abs() < 1e-3, "septic sup phi' = {m1}");
        assert!((m2 - 1680.0 / (25.0 * 5f64.sqrt())).abs() < 0.01, "septic sup phi'' = {m2}");
        let (m1, _) = CutoffProfile::ExponentialBump.derivative_sups();
        assert!(m1 > 1.0 && m1 < 10.0, "bump sup phi' = {m1}");
    }
}
