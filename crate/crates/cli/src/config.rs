//! JSON run configuration shared by all subcommands.
//!
//! A config file is one JSON object; each command reads the fields it
//! needs and rejects contradictory ones. Unknown keys are parse errors so
//! a typo cannot silently fall back to a default.

use pointlab::{ExtensionParameter, Point3, ThetaParameter};
use serde::Deserialize;
use std::path::Path;

/// Errors that map to process exit codes: anything wrong with the config
/// or the way the tool was invoked is `Usage` (exit 2), a run that
/// completes and finds the numbers wanting is `Failed` (exit 1).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "config error: {m}"),
            CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

impl From<pointlab::Error> for CliError {
    fn from(e: pointlab::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Extension parameter as written in JSON: a number, or the string
/// "infinity" for the Friedrichs extension.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MuField {
    Number(f64),
    Word(String),
}

/// Uniformly spaced samples on a closed interval.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn samples(&self) -> CliResult<Vec<f64>> {
        if self.count == 0 {
            return Err(usage("axis count must be at least 1"));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(usage("axis endpoints must be finite"));
        }
        if self.count == 1 {
            return Ok(vec![self.start]);
        }
        let n = self.count;
        Ok((0..n)
            .map(|k| self.start + (self.stop - self.start) * k as f64 / (n - 1) as f64)
            .collect())
    }
}

/// Spatial evaluation points: a sampled line segment or an explicit list.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum GridSpec {
    Line {
        from: [f64; 3],
        to: [f64; 3],
        count: usize,
    },
    Points(Vec<[f64; 3]>),
}

impl GridSpec {
    pub fn points(&self) -> CliResult<Vec<Point3>> {
        match self {
            GridSpec::Line { from, to, count } => {
                if *count == 0 {
                    return Err(usage("grid line count must be at least 1"));
                }
                let a = Point3::new(from[0], from[1], from[2]);
                let b = Point3::new(to[0], to[1], to[2]);
                if *count == 1 {
                    return Ok(vec![a]);
                }
                let n = *count;
                Ok((0..n)
                    .map(|k| {
                        let s = k as f64 / (n - 1) as f64;
                        a + (b - a) * s
                    })
                    .collect())
            }
            GridSpec::Points(pts) => {
                if pts.is_empty() {
                    return Err(usage("grid point list must be nonempty"));
                }
                Ok(pts.iter().map(|p| Point3::new(p[0], p[1], p[2])).collect())
            }
        }
    }
}

/// Which Cauchy data components carry the radial annular bump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BumpComponents {
    Velocity,
    Position,
    Both,
}

/// Radial annular bump supported on inner ≤ |x| ≤ outer.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpSpec {
    pub inner: f64,
    pub outer: f64,
    #[serde(default = "default_components")]
    pub components: BumpComponents,
}

fn default_components() -> BumpComponents {
    BumpComponents::Velocity
}

/// Exponential-rate fit request for the wave command: sample u(t, x) at
/// `count` times on [t_start, t_stop] at the probe point and fit
/// ln |u| against t.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateFitSpec {
    pub probe: [f64; 3],
    pub t_start: f64,
    pub t_stop: f64,
    pub count: usize,
}

/// The one config record every subcommand parses. Commands validate the
/// subset of fields they use.
#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Extension parameter μ (number or "infinity").
    pub mu: Option<MuField>,
    /// Boundary angle θ ∈ [−π, π); alternative to `mu`.
    pub theta: Option<f64>,
    /// θ sweep for the parametrize command.
    pub theta_grid: Option<AxisSpec>,
    /// Resolvent frequency λ as [re, im].
    pub frequency: Option<[f64; 2]>,
    /// Resolvent source point y.
    pub source: Option<[f64; 3]>,
    /// Spatial evaluation points.
    pub grid: Option<GridSpec>,
    /// Snapshot times for the wave command.
    pub times: Option<Vec<f64>>,
    /// Cauchy data for the wave command.
    pub bump: Option<BumpSpec>,
    /// Optional long-time rate fit for the wave command.
    pub rate_fit: Option<RateFitSpec>,
    /// Verification suites to run (verify command); defaults to all.
    pub suites: Option<Vec<String>>,
    /// Mollifier scale R for the reconstruction suite.
    pub mollifier_scale: Option<f64>,
    /// Relative tolerance for the reconstruction suite.
    pub reconstruction_tolerance: Option<f64>,
    /// ε values for the closure command.
    pub eps: Option<Vec<f64>>,
    /// Dimensions for the closure norm sweeps.
    pub dims: Option<Vec<u32>>,
    /// Output format: "csv" (default for tables) or "json".
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| usage(format!("cannot parse {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> CliResult<()> {
        if self.mu.is_some() && self.theta.is_some() {
            return Err(usage("give exactly one of \"mu\" and \"theta\", not both"));
        }
        if let Some(MuField::Word(w)) = &self.mu {
            if w != "infinity" {
                return Err(usage(format!(
                    "\"mu\" must be a number or the string \"infinity\", got \"{w}\""
                )));
            }
        }
        if let Some(ts) = &self.times {
            if ts.is_empty() {
                return Err(usage("\"times\" must be nonempty"));
            }
            if ts.iter().any(|t| !t.is_finite() || *t < 0.0) {
                return Err(usage("\"times\" entries must be finite and nonnegative"));
            }
        }
        if let Some(b) = &self.bump {
            if !(0.0 < b.inner && b.inner < b.outer && b.outer.is_finite()) {
                return Err(usage("bump needs 0 < inner < outer < infinity"));
            }
        }
        if let Some(e) = &self.eps {
            if e.is_empty() || e.iter().any(|x| !(0.0 < *x && *x < 1.0)) {
                return Err(usage("\"eps\" must be a nonempty list inside (0, 1)"));
            }
        }
        if let Some(d) = &self.dims {
            if d.is_empty() || d.iter().any(|x| !(1..=5).contains(x)) {
                return Err(usage("\"dims\" must be a nonempty list of dimensions 1..=5"));
            }
        }
        if let Some(r) = self.mollifier_scale {
            if !(r > 0.0 && r.is_finite()) {
                return Err(usage("\"mollifier_scale\" must be positive and finite"));
            }
        }
        if let Some(t) = self.reconstruction_tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(usage("\"reconstruction_tolerance\" must be positive and finite"));
            }
        }
        Ok(())
    }

    /// The extension parameter, required. Accepts μ (finite or "infinity")
    /// or θ, never both.
    pub fn extension(&self) -> CliResult<ExtensionParameter> {
        match (&self.mu, self.theta) {
            (Some(MuField::Number(mu)), None) => ExtensionParameter::finite(*mu)
                .map_err(|e| usage(e.to_string())),
            (Some(MuField::Word(_)), None) => Ok(ExtensionParameter::Friedrichs),
            (None, Some(theta)) => {
                let tp = ThetaParameter::new(theta).map_err(|e| usage(e.to_string()))?;
                Ok(pointlab::parametrization::theta_to_mu(tp))
            }
            (None, None) => Err(usage("this command needs \"mu\" or \"theta\"")),
            (Some(_), Some(_)) => unreachable!("validate rejects mu with theta"),
        }
    }

    pub fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.format.unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> CliResult<RunConfig> {
        let cfg: RunConfig = serde_json::from_str(s).map_err(|e| usage(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    #[test]
    fn mu_and_theta_are_mutually_exclusive() {
        assert!(parse(r#"{"mu": 1.0, "theta": 0.5}"#).is_err());
        assert!(parse(r#"{"mu": 1.0}"#).is_ok());
        assert!(parse(r#"{"theta": 0.5}"#).is_ok());
    }

    #[test]
    fn infinity_is_the_only_accepted_word() {
        assert!(parse(r#"{"mu": "infinity"}"#).is_ok());
        assert!(parse(r#"{"mu": "friedrichs"}"#).is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(parse(r#"{"muu": 1.0}"#).is_err());
    }

    #[test]
    fn grid_line_interpolates_endpoints() {
        let g = GridSpec::Line { from: [0.0, 0.0, 0.0], to: [2.0, 0.0, 0.0], count: 3 };
        let pts = g.points().unwrap();
        assert_eq!(pts[1], Point3::new(1.0, 0.0, 0.0));
        assert_eq!(pts[2], Point3::new(2.0, 0.0, 0.0));
    }

    #[test]
    fn extension_resolves_theta_through_the_circle_map() {
        let cfg = parse(r#"{"theta": 1.5707963267948966}"#).unwrap();
        assert_eq!(cfg.extension().unwrap(), ExtensionParameter::Finite(0.0));
    }
}
