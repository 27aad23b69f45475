//! Sampled fields: values attached to a finite set of points.

use crate::error::{Error, Result};
use crate::point::Point3;
use crate::C64;

/// A complex-valued field sampled on an explicit point set, the exchange
/// format for grid evaluations (kernel slices, wave snapshots).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    points: Vec<Point3>,
    values: Vec<C64>,
}

impl SampledField {
    /// One value per point; point multiset must not contain exact duplicates.
    pub fn new(points: Vec<Point3>, values: Vec<C64>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        let mut keys: Vec<[u64; 3]> = points
            .iter()
            .map(|p| [p.x.to_bits(), p.y.to_bits(), p.z.to_bits()])
            .collect();
        keys.sort_unstable();
        if keys.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate grid point".into()));
        }
        Ok(SampledField { points, values })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point3, &C64)> {
        self.points.iter().zip(self.values.iter())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}
