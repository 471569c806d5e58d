//! Time grids and sampled curves.

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Strictly increasing, non-negative evaluation ages in hours.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
}

impl Grid {
    /// `points` ages from `start` to `end` inclusive. Log spacing needs `start > 0`.
    pub fn uniform(start: f64, end: f64, points: usize, spacing: Spacing) -> Result<Self> {
        if points < 2 {
            return Err(domain("Grid::uniform", format!("need at least 2 points, got {points}")));
        }
        if !(start >= 0.0) || !(end > start) || !end.is_finite() {
            return Err(domain("Grid::uniform", format!("need 0 <= start < end, got {start}..{end}")));
        }
        let last = (points - 1) as f64;
        let values: Vec<f64> = match spacing {
            Spacing::Linear => (0..points)
                .map(|i| start + (end - start) * (i as f64 / last))
                .collect(),
            Spacing::Log => {
                if !(start > 0.0) {
                    return Err(domain("Grid::uniform", "log spacing needs start > 0"));
                }
                let (a, b) = (start.ln(), end.ln());
                (0..points).map(|i| (a + (b - a) * (i as f64 / last)).exp()).collect()
            }
        };
        let mut values = values;
        values[0] = start;
        values[points - 1] = end;
        Self::explicit(values)
    }

    pub fn explicit(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(domain("Grid::explicit", "grid is empty"));
        }
        if points.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
            return Err(domain("Grid::explicit", "ages must be finite and non-negative"));
        }
        if points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(domain("Grid::explicit", "ages must be strictly increasing"));
        }
        Ok(Grid { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Values of one quantity over ages.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub quantity: String,
    pub units: String,
    pub x: Vec<f64>,
    pub values: Vec<f64>,
}

impl Curve {
    pub fn new(quantity: impl Into<String>, units: impl Into<String>, x: Vec<f64>, values: Vec<f64>) -> Self {
        debug_assert_eq!(x.len(), values.len());
        Curve {
            quantity: quantity.into(),
            units: units.into(),
            x,
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}
