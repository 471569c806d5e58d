use super::{check_cumulative, HazardModel};
use crate::error::{domain, Error, Result};

/// Empirical hazard: linear interpolation between `(time, rate)` knots, the
/// last rate held constant beyond the final knot.
///
/// `Λ` is the exact integral of the interpolant (trapezoids) and its inverse
/// is solved per segment in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedHazard {
    times: Vec<f64>,
    rates: Vec<f64>,
    cumulative: Vec<f64>,
}

impl TabulatedHazard {
    /// `times` must start at 0 and increase strictly; `rates` must be
    /// non-negative and finite.
    pub fn new(times: Vec<f64>, rates: Vec<f64>) -> Result<Self> {
        const OP: &str = "TabulatedHazard::new";
        if times.len() < 2 || times.len() != rates.len() {
            return Err(domain(OP, "need at least two knots and one rate per knot"));
        }
        if times[0] != 0.0 {
            return Err(domain(OP, format!("first knot must be at 0, got {}", times[0])));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) || !times.iter().all(|t| t.is_finite()) {
            return Err(domain(OP, "knot times must be finite and strictly increasing"));
        }
        if rates.iter().any(|r| !(*r >= 0.0) || !r.is_finite()) {
            return Err(domain(OP, "rates must be finite and non-negative"));
        }
        let mut cumulative = Vec::with_capacity(times.len());
        cumulative.push(0.0);
        for j in 1..times.len() {
            let h = times[j] - times[j - 1];
            cumulative.push(cumulative[j - 1] + 0.5 * h * (rates[j - 1] + rates[j]));
        }
        Ok(TabulatedHazard {
            times,
            rates,
            cumulative,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    /// Index of the segment `[times[j], times[j+1])` holding `x`.
    fn segment(&self, x: f64) -> usize {
        let last = self.times.len() - 1;
        match self.times.partition_point(|&t| t <= x) {
            0 => 0,
            p => (p - 1).min(last),
        }
    }
}

impl HazardModel for TabulatedHazard {
    fn hazard(&self, x: f64) -> f64 {
        let last = self.times.len() - 1;
        let j = self.segment(x);
        if j == last {
            return self.rates[last];
        }
        let w = (x - self.times[j]) / (self.times[j + 1] - self.times[j]);
        self.rates[j] + w * (self.rates[j + 1] - self.rates[j])
    }

    fn cumulative_hazard(&self, x: f64) -> f64 {
        let last = self.times.len() - 1;
        let j = self.segment(x);
        let s = x - self.times[j];
        if j == last {
            return self.cumulative[last] + s * self.rates[last];
        }
        let slope = (self.rates[j + 1] - self.rates[j]) / (self.times[j + 1] - self.times[j]);
        self.cumulative[j] + s * (self.rates[j] + 0.5 * slope * s)
    }

    fn inverse_cumulative_hazard(&self, u: f64) -> Result<f64> {
        check_cumulative("TabulatedHazard", u)?;
        let last = self.times.len() - 1;
        // First knot whose cumulative hazard exceeds u.
        let p = self.cumulative.partition_point(|&c| c <= u);
        if p > last {
            let excess = u - self.cumulative[last];
            if excess == 0.0 {
                return Ok(self.times[last]);
            }
            if self.rates[last] == 0.0 {
                return Err(Error::NonConvergence {
                    op: "TabulatedHazard::inverse_cumulative_hazard",
                    detail: format!("cumulative hazard is bounded by {} < {u}", self.cumulative[last]),
                });
            }
            return Ok(self.times[last] + excess / self.rates[last]);
        }
        let j = p - 1;
        let c = u - self.cumulative[j];
        if c == 0.0 {
            return Ok(self.times[j]);
        }
        let h = self.times[j + 1] - self.times[j];
        let b = self.rates[j];
        let a = 0.5 * (self.rates[j + 1] - b) / h;
        // Root of a s^2 + b s - c = 0 in the form that avoids cancellation.
        let disc = (b * b + 4.0 * a * c).max(0.0);
        let s = 2.0 * c / (b + disc.sqrt());
        Ok(self.times[j] + s.clamp(0.0, h))
    }
}
