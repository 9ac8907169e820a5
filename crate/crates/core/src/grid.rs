//! Uniform radial grids.

use thiserror::Error;

/// Largest number of grid intervals accepted.
pub const MAX_INTERVALS: f64 = 1e7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid start {0} is negative or not finite")]
    NegativeStart(f64),
    #[error("grid end {end} must exceed start {start}")]
    EmptyRange { start: f64, end: f64 },
    #[error("grid step {0} must be positive and finite")]
    BadStep(f64),
    #[error("grid has {0:.0} intervals, more than 1e7")]
    TooFine(f64),
}

/// Nodes `start + k * step` for `k = 0..=intervals`, where `intervals` is
/// `(end - start) / step` rounded to the nearest integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self, GridError> {
        if !(start.is_finite() && start >= 0.0) {
            return Err(GridError::NegativeStart(start));
        }
        if !(end.is_finite() && end > start) {
            return Err(GridError::EmptyRange { start, end });
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(GridError::BadStep(step));
        }
        let count = (end - start) / step;
        if count > MAX_INTERVALS {
            return Err(GridError::TooFine(count));
        }
        Ok(Self { start, end, step })
    }

    pub fn intervals(&self) -> usize {
        ((self.end - self.start) / self.step).round() as usize
    }

    pub fn len(&self) -> usize {
        self.intervals() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |k| self.node(k))
    }

    /// Same range, half the step.
    pub fn refined(&self) -> Self {
        Self {
            step: self.step / 2.0,
            ..*self
        }
    }

    /// Same start and step, end moved to `end`.
    pub fn with_end(&self, end: f64) -> Result<Self, GridError> {
        Self::new(self.start, end, self.step)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_count() {
        let g = GridSpec::new(0.0, 10.0, 0.01).unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g.node(0), 0.0);
        assert!((g.node(1000) - 10.0).abs() < 1e-12);
        assert_eq!(g.refined().len(), 2001);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(matches!(GridSpec::new(-1.0, 1.0, 0.1), Err(GridError::NegativeStart(_))));
        assert!(GridSpec::new(1.0, 1.0, 0.1).is_err());
        assert!(GridSpec::new(0.0, 1.0, 0.0).is_err());
        assert!(matches!(GridSpec::new(0.0, 1.0, 1e-8), Err(GridError::TooFine(_))));
    }
}
