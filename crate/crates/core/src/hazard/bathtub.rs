use super::{check_cumulative, HazardModel};
use crate::error::{domain, Result};

/// One Weibull branch of a composite hazard.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeibullPiece {
    pub shape: f64,
    pub scale: f64,
}

impl WeibullPiece {
    pub fn new(shape: f64, scale: f64) -> Self {
        WeibullPiece { shape, scale }
    }

    fn hazard(&self, x: f64) -> f64 {
        self.shape / self.scale * (x / self.scale).powf(self.shape - 1.0)
    }

    /// `(x / scale)^shape`, the antiderivative of `hazard` vanishing at 0.
    fn antiderivative(&self, x: f64) -> f64 {
        (x / self.scale).powf(self.shape)
    }

    fn antiderivative_inverse(&self, v: f64) -> f64 {
        self.scale * v.powf(1.0 / self.shape)
    }
}

/// Three-phase bathtub hazard built from Weibull branches.
///
/// On `(0, t1]` the first branch applies, on `(t1, t2]` the second and beyond
/// `t2` the third. Each branch keeps its absolute-age form
/// `β t^{β-1} / θ^β`, so `Λ` is the exact integral of the piecewise hazard:
/// completed phases contribute `(b/θ)^β - (a/θ)^β` and the open phase its
/// partial share.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeBathtub {
    pieces: [WeibullPiece; 3],
    t1: f64,
    t2: f64,
    cum_t1: f64,
    cum_t2: f64,
}

impl CompositeBathtub {
    pub fn new(pieces: [WeibullPiece; 3], t1: f64, t2: f64) -> Result<Self> {
        for (i, p) in pieces.iter().enumerate() {
            if !(p.shape > 0.0) || !p.shape.is_finite() || !(p.scale > 0.0) || !p.scale.is_finite() {
                return Err(domain(
                    "CompositeBathtub::new",
                    format!("piece {}: shape = {} and scale = {} must be positive", i + 1, p.shape, p.scale),
                ));
            }
        }
        if !(t1 > 0.0) || !(t2 > t1) || !t2.is_finite() {
            return Err(domain(
                "CompositeBathtub::new",
                format!("breakpoints must satisfy 0 < t1 < t2, got t1 = {t1}, t2 = {t2}"),
            ));
        }
        let cum_t1 = pieces[0].antiderivative(t1);
        let cum_t2 = cum_t1 + pieces[1].antiderivative(t2) - pieces[1].antiderivative(t1);
        Ok(CompositeBathtub {
            pieces,
            t1,
            t2,
            cum_t1,
            cum_t2,
        })
    }

    /// Infant mortality `β=0.5, θ=100`, useful life `β=1, θ=200`, wear-out
    /// `β=2.5, θ=500`, with breakpoints at 100 h and 1000 h.
    pub fn paper_default() -> Self {
        Self::new(
            [
                WeibullPiece::new(0.5, 100.0),
                WeibullPiece::new(1.0, 200.0),
                WeibullPiece::new(2.5, 500.0),
            ],
            100.0,
            1000.0,
        )
        .expect("default bathtub parameters are valid")
    }

    pub fn pieces(&self) -> &[WeibullPiece; 3] {
        &self.pieces
    }

    pub fn breakpoints(&self) -> (f64, f64) {
        (self.t1, self.t2)
    }
}

impl HazardModel for CompositeBathtub {
    fn hazard(&self, x: f64) -> f64 {
        if x <= self.t1 {
            self.pieces[0].hazard(x)
        } else if x <= self.t2 {
            self.pieces[1].hazard(x)
        } else {
            self.pieces[2].hazard(x)
        }
    }

    fn cumulative_hazard(&self, x: f64) -> f64 {
        if x <= self.t1 {
            self.pieces[0].antiderivative(x)
        } else if x <= self.t2 {
            self.cum_t1 + self.pieces[1].antiderivative(x) - self.pieces[1].antiderivative(self.t1)
        } else {
            self.cum_t2 + self.pieces[2].antiderivative(x) - self.pieces[2].antiderivative(self.t2)
        }
    }

    fn inverse_cumulative_hazard(&self, u: f64) -> Result<f64> {
        check_cumulative("CompositeBathtub", u)?;
        let (piece, start, cum_start) = if u <= self.cum_t1 {
            (&self.pieces[0], 0.0, 0.0)
        } else if u <= self.cum_t2 {
            (&self.pieces[1], self.t1, self.cum_t1)
        } else {
            (&self.pieces[2], self.t2, self.cum_t2)
        };
        if u == cum_start {
            return Ok(start);
        }
        let x = piece.antiderivative_inverse(piece.antiderivative(start) + (u - cum_start));
        Ok(x.max(start))
    }
}
