//! Central finite differences.
//!
//! These are the independent checks played against every closed-form kernel:
//! a formula is trusted only after the 7-point Laplacian (and, for evolution
//! problems, a second difference in time) reproduces its defining PDE.

use crate::point::Point3;
use crate::quad::Scalar;

/// Second-order 7-point stencil for the positive Laplacian `L = −Δ`:
/// −Σ_i (u(x+he_i) − 2u(x) + u(x−he_i)) / h².
pub fn fd_laplacian3<T: Scalar>(u: &mut impl FnMut(&Point3) -> T, x: &Point3, h: f64) -> T {
    assert!(h > 0.0, "step must be positive");
    let c = u(x);
    let mut acc = T::zero();
    let axes = [
        Point3::new(h, 0.0, 0.0),
        Point3::new(0.0, h, 0.0),
        Point3::new(0.0, 0.0, h),
    ];
    for e in axes {
        acc = acc + u(&(*x + e)) + u(&(*x - e)) - c - c;
    }
    acc * (-1.0 / (h * h))
}

/// Central second derivative g″(t) ≈ (g(t+h) − 2g(t) + g(t−h)) / h².
pub fn fd_second<T: Scalar>(g: &mut impl FnMut(f64) -> T, t: f64, h: f64) -> T {
    assert!(h > 0.0, "step must be positive");
    (g(t + h) - g(t) * 2.0 + g(t - h)) * (1.0 / (h * h))
}

/// Central first derivative g′(t) ≈ (g(t+h) − g(t−h)) / 2h.
pub fn fd_first<T: Scalar>(g: &mut impl FnMut(f64) -> T, t: f64, h: f64) -> T {
    assert!(h > 0.0, "step must be positive");
    (g(t + h) - g(t - h)) * (1.0 / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn laplacian_of_quadratics_is_exact() {
        // second differences are exact on quadratics: L|x|² = −6, L x₁ = 0
        let mut sq = |p: &Point3| p.x * p.x + p.y * p.y + p.z * p.z;
        let x = Point3::new(0.4, -1.2, 2.0);
        let got = fd_laplacian3(&mut sq, &x, 1e-3);
        assert!((got - (-6.0)).abs() < 1e-8, "got {got}");
        let mut lin = |p: &Point3| p.x;
        let got = fd_laplacian3(&mut lin, &x, 1e-3);
        assert!(got.abs() < 1e-10);
    }

    #[test]
    fn laplacian_matches_helmholtz_solution() {
        // u = e^{iλ|x|}/|x| satisfies (−Δ − λ²)u = 0 away from the origin.
        let lam = C64::new(1.0, 0.5);
        let mut u = |p: &Point3| {
            let r = p.norm();
            (C64::i() * lam * r).exp() / r
        };
        let x = Point3::new(1.0, 0.5, -0.3);
        let lap = fd_laplacian3(&mut u, &x, 1e-3);
        let want = lam * lam * u(&x);
        assert!((lap - want).norm() < 1e-5 * want.norm(), "residual {}", (lap - want).norm());
    }

    #[test]
    fn time_derivatives() {
        let mut g = |t: f64| (2.0 * t).sin();
        let d2 = fd_second(&mut g, 0.7, 1e-4);
        assert!((d2 - (-4.0 * (1.4f64).sin())).abs() < 1e-6);
        let d1 = fd_first(&mut g, 0.7, 1e-5);
        assert!((d1 - 2.0 * (1.4f64).cos()).abs() < 1e-9);
    }
}
