//! Points of ℝ³.

use std::ops::{Add, Mul, Sub};

/// A point (or vector) in ℝ³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    /// Point at distance `r` from the origin along the first axis.
    pub fn on_axis(r: f64) -> Self {
        Point3::new(r, 0.0, 0.0)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn dist(&self, other: &Point3) -> f64 {
        (*self - *other).norm()
    }

    pub fn dot(&self, other: &Point3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Point3) -> Point3 {
        Point3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn is_origin(&self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    /// Unit vector in the direction of `self`. Returns `None` at the origin.
    pub fn unit(&self) -> Option<Point3> {
        let n = self.norm();
        if n == 0.0 {
            None
        } else {
            Some(*self * (1.0 / n))
        }
    }

    /// Point on the unit sphere with polar angle arccos(`cos_theta`) and
    /// azimuth `phi`.
    pub fn from_spherical(cos_theta: f64, phi: f64) -> Point3 {
        let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
        Point3::new(sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta)
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, rhs: Point3) -> Point3 {
        Point3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, rhs: Point3) -> Point3 {
        Point3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_and_dist() {
        let p = Point3::new(3.0, 4.0, 0.0);
        assert_eq!(p.norm(), 5.0);
        assert_eq!(p.dist(&Point3::ORIGIN), 5.0);
        assert_eq!(Point3::on_axis(2.0).dist(&Point3::on_axis(-1.0)), 3.0);
    }

    #[test]
    fn spherical_points_are_unit() {
        for &ct in &[-1.0, -0.3, 0.0, 0.9, 1.0] {
            for &phi in &[0.0, 1.0, 3.0, 6.0] {
                let p = Point3::from_spherical(ct, phi);
                assert!((p.norm() - 1.0).abs() < 1e-15);
            }
        }
    }
}
