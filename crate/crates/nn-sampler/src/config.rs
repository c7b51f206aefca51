use crate::error::{Error, Result};

/// Parameters that determine a sample: the logarithm base of the
/// representativeness function, the selection threshold, and — for point
/// data — the neighborhood radius and the distance discretization step.
///
/// Two runs with equal configs over equal datasets select identical samples.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplerConfig {
    log_base: f64,
    threshold: f64,
    radius: Option<f64>,
    step: Option<f64>,
}

impl SamplerConfig {
    /// Default selection threshold: an object is a representative when
    /// r(o) >= 1.
    pub const DEFAULT_THRESHOLD: f64 = 1.0;

    /// Creates a config with the given log base and the default threshold.
    ///
    /// The base must be finite and strictly greater than 1; otherwise
    /// log_base(d) is non-positive or undefined for d >= 2. Non-integer
    /// bases (1.3, 1.8, ...) are first-class values.
    pub fn new(log_base: f64) -> Result<Self> {
        if !log_base.is_finite() || log_base <= 1.0 {
            return Err(Error::Config(format!(
                "log base must be a finite number > 1, got {log_base}"
            )));
        }
        Ok(SamplerConfig {
            log_base,
            threshold: Self::DEFAULT_THRESHOLD,
            radius: None,
            step: None,
        })
    }

    pub fn with_threshold(mut self, threshold: f64) -> Result<Self> {
        if !threshold.is_finite() || threshold < 0.0 {
            return Err(Error::Config(format!(
                "threshold must be a finite number >= 0, got {threshold}"
            )));
        }
        self.threshold = threshold;
        Ok(self)
    }

    /// Sets the vector-space parameters. Units are those of the point data.
    pub fn with_radius_step(mut self, radius: f64, step: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::Config(format!(
                "radius must be a finite number > 0, got {radius}"
            )));
        }
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::Config(format!(
                "step must be a finite number > 0, got {step}"
            )));
        }
        self.radius = Some(radius);
        self.step = Some(step);
        Ok(self)
    }

    pub fn log_base(&self) -> f64 {
        self.log_base
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn radius(&self) -> Option<f64> {
        self.radius
    }

    pub fn step(&self) -> Option<f64> {
        self.step
    }

    pub(crate) fn require_radius_step(&self) -> Result<(f64, f64)> {
        match (self.radius, self.step) {
            (Some(r), Some(s)) => Ok((r, s)),
            _ => Err(Error::Config(
                "point sampling requires both radius and step".into(),
            )),
        }
    }
}
