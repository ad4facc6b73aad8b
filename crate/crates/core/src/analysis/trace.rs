use std::io::Write;

use serde::Serialize;

use super::kendall_tau;
use crate::error::{Error, Result};

/// How close one pass's τ was to the exact κ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub iteration: usize,
    pub kendall_tau: f64,
    pub active_ratio: f64,
    /// Fraction of cliques with τ = κ.
    pub accuracy: f64,
}

/// Per-pass similarity of the running estimates to a known κ.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ConvergenceTrace {
    pub points: Vec<TracePoint>,
}

impl ConvergenceTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends the point for `tau` after `iteration`. With fewer than two
    /// cliques the rank correlation is taken as 1.0 when τ = κ.
    pub fn record(&mut self, iteration: usize, active_ratio: f64, tau: &[u32], exact: &[u32]) -> Result<()> {
        if tau.len() != exact.len() {
            return Err(Error::LengthMismatch {
                left: tau.len(),
                right: exact.len(),
            });
        }
        let hits = tau.iter().zip(exact).filter(|(a, b)| a == b).count();
        let accuracy = if tau.is_empty() { 1.0 } else { hits as f64 / tau.len() as f64 };
        let kendall_tau = if tau.len() < 2 {
            if hits == tau.len() { 1.0 } else { 0.0 }
        } else {
            kendall_tau(tau, exact)?
        };
        self.points.push(TracePoint {
            iteration,
            kendall_tau,
            active_ratio,
            accuracy,
        });
        Ok(())
    }

    /// First iteration whose Kendall-Tau reaches `threshold`.
    pub fn iterations_to_tau(&self, threshold: f64) -> Option<usize> {
        self.points.iter().find(|p| p.kendall_tau >= threshold).map(|p| p.iteration)
    }

    /// The first point whose active ratio is below `threshold`.
    pub fn first_below_active_ratio(&self, threshold: f64) -> Option<&TracePoint> {
        self.points.iter().find(|p| p.active_ratio < threshold)
    }

    /// CSV with header `iteration,kendall_tau,active_ratio,accuracy`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for p in &self.points {
            w.serialize(p)?;
        }
        w.flush()?;
        Ok(())
    }
}
