//! Soft resource limits for long-running computations.

use std::time::Instant;

use crate::error::{Error, Result};

/// An optional wall-clock budget, checked at coarse checkpoints inside the
/// heavy loops. Exceeding it aborts the computation with a structured
/// error instead of producing a partial result.
#[derive(Debug, Clone, Copy, Default)]
pub struct Deadline {
    at: Option<(Instant, f64)>,
}

impl Deadline {
    /// No limit.
    pub fn none() -> Self {
        Deadline { at: None }
    }

    /// Budget of `seconds` starting now.
    pub fn after_seconds(seconds: f64) -> Self {
        Deadline {
            at: Some((Instant::now(), seconds)),
        }
    }

    /// Errors if the budget is spent.
    pub fn check(&self, phase: &'static str) -> Result<()> {
        if let Some((start, seconds)) = self.at {
            if start.elapsed().as_secs_f64() > seconds {
                return Err(Error::TimeLimit { seconds, phase });
            }
        }
        Ok(())
    }
}
