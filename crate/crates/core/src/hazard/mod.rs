//! Component lifetime models described by their hazard function.
//!
//! Every model exposes the hazard rate `λ(x)`, the cumulative hazard
//! `Λ(x) = ∫_0^x λ`, the reliability `R(x) = e^{-Λ(x)}` and the inverse of
//! `Λ`, which makes inverse-transform sampling exact. Time is in hours.

mod bathtub;
mod tabulated;

pub use bathtub::{CompositeBathtub, WeibullPiece};
pub use tabulated::TabulatedHazard;

use std::sync::Arc;

use crate::error::{domain, Result};
use crate::special::ln_one_minus_exp;

/// Reliability and unreliability of a component at one instant, both kept in
/// log form so that neither loses precision near 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalPoint {
    /// `ln R`
    pub ln_r: f64,
    /// `ln(1 - R)`
    pub ln_f: f64,
}

impl SurvivalPoint {
    pub fn from_cumulative_hazard(cumulative: f64) -> Self {
        SurvivalPoint {
            ln_r: -cumulative,
            ln_f: ln_one_minus_exp(-cumulative),
        }
    }

    pub fn from_reliability(r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(domain("SurvivalPoint::from_reliability", format!("R = {r} is not in [0, 1]")));
        }
        Ok(SurvivalPoint {
            ln_r: r.ln(),
            ln_f: (-r).ln_1p(),
        })
    }

    #[inline]
    pub fn reliability(&self) -> f64 {
        self.ln_r.exp()
    }

    #[inline]
    pub fn unreliability(&self) -> f64 {
        self.ln_f.exp()
    }
}

/// A lifetime distribution given through its hazard function.
///
/// Implementations must keep `hazard >= 0`, `cumulative_hazard(0) = 0`, a
/// non-decreasing `cumulative_hazard`, and invert it exactly wherever it is
/// strictly increasing.
pub trait HazardModel: Send + Sync + std::fmt::Debug {
    /// Failure rate per hour at age `x`.
    fn hazard(&self, x: f64) -> f64;

    /// `∫_0^x λ(y) dy`.
    fn cumulative_hazard(&self, x: f64) -> f64;

    /// Smallest `x` with `cumulative_hazard(x) = u`.
    fn inverse_cumulative_hazard(&self, u: f64) -> Result<f64>;

    fn reliability(&self, x: f64) -> f64 {
        (-self.cumulative_hazard(x)).exp()
    }

    fn survival_point(&self, x: f64) -> SurvivalPoint {
        SurvivalPoint::from_cumulative_hazard(self.cumulative_hazard(x))
    }
}

impl<T: HazardModel + ?Sized> HazardModel for &T {
    fn hazard(&self, x: f64) -> f64 {
        (**self).hazard(x)
    }
    fn cumulative_hazard(&self, x: f64) -> f64 {
        (**self).cumulative_hazard(x)
    }
    fn inverse_cumulative_hazard(&self, u: f64) -> Result<f64> {
        (**self).inverse_cumulative_hazard(u)
    }
    fn reliability(&self, x: f64) -> f64 {
        (**self).reliability(x)
    }
    fn survival_point(&self, x: f64) -> SurvivalPoint {
        (**self).survival_point(x)
    }
}

impl<T: HazardModel + ?Sized> HazardModel for Box<T> {
    fn hazard(&self, x: f64) -> f64 {
        (**self).hazard(x)
    }
    fn cumulative_hazard(&self, x: f64) -> f64 {
        (**self).cumulative_hazard(x)
    }
    fn inverse_cumulative_hazard(&self, u: f64) -> Result<f64> {
        (**self).inverse_cumulative_hazard(u)
    }
    fn reliability(&self, x: f64) -> f64 {
        (**self).reliability(x)
    }
    fn survival_point(&self, x: f64) -> SurvivalPoint {
        (**self).survival_point(x)
    }
}

impl<T: HazardModel + ?Sized> HazardModel for Arc<T> {
    fn hazard(&self, x: f64) -> f64 {
        (**self).hazard(x)
    }
    fn cumulative_hazard(&self, x: f64) -> f64 {
        (**self).cumulative_hazard(x)
    }
    fn inverse_cumulative_hazard(&self, u: f64) -> Result<f64> {
        (**self).inverse_cumulative_hazard(u)
    }
    fn reliability(&self, x: f64) -> f64 {
        (**self).reliability(x)
    }
    fn survival_point(&self, x: f64) -> SurvivalPoint {
        (**self).survival_point(x)
    }
}

/// Exponential lifetimes: `λ(x) = rate`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantHazard {
    rate: f64,
}

impl ConstantHazard {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate > 0.0) || !rate.is_finite() {
            return Err(domain("ConstantHazard::new", format!("rate = {rate} must be positive and finite")));
        }
        Ok(ConstantHazard { rate })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }
}

impl HazardModel for ConstantHazard {
    fn hazard(&self, _x: f64) -> f64 {
        self.rate
    }

    fn cumulative_hazard(&self, x: f64) -> f64 {
        self.rate * x
    }

    fn inverse_cumulative_hazard(&self, u: f64) -> Result<f64> {
        check_cumulative("ConstantHazard", u)?;
        Ok(u / self.rate)
    }
}

/// Two-parameter Weibull: `Λ(x) = (x / scale)^shape`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weibull {
    shape: f64,
    scale: f64,
}

impl Weibull {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        if !(shape > 0.0) || !shape.is_finite() || !(scale > 0.0) || !scale.is_finite() {
            return Err(domain(
                "Weibull::new",
                format!("shape = {shape} and scale = {scale} must be positive and finite"),
            ));
        }
        Ok(Weibull { shape, scale })
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

impl HazardModel for Weibull {
    fn hazard(&self, x: f64) -> f64 {
        self.shape / self.scale * (x / self.scale).powf(self.shape - 1.0)
    }

    fn cumulative_hazard(&self, x: f64) -> f64 {
        (x / self.scale).powf(self.shape)
    }

    fn inverse_cumulative_hazard(&self, u: f64) -> Result<f64> {
        check_cumulative("Weibull", u)?;
        Ok(self.scale * u.powf(1.0 / self.shape))
    }
}

pub(crate) fn check_cumulative(op: &'static str, u: f64) -> Result<()> {
    if !(u >= 0.0) || !u.is_finite() {
        return Err(domain(op, format!("cumulative hazard {u} must be finite and non-negative")));
    }
    Ok(())
}

/// Any of the built-in models, owned.
#[derive(Debug, Clone, PartialEq)]
pub enum Hazard {
    Constant(ConstantHazard),
    Weibull(Weibull),
    Bathtub(CompositeBathtub),
    Tabulated(TabulatedHazard),
}

impl HazardModel for Hazard {
    fn hazard(&self, x: f64) -> f64 {
        match self {
            Hazard::Constant(m) => m.hazard(x),
            Hazard::Weibull(m) => m.hazard(x),
            Hazard::Bathtub(m) => m.hazard(x),
            Hazard::Tabulated(m) => m.hazard(x),
        }
    }

    fn cumulative_hazard(&self, x: f64) -> f64 {
        match self {
            Hazard::Constant(m) => m.cumulative_hazard(x),
            Hazard::Weibull(m) => m.cumulative_hazard(x),
            Hazard::Bathtub(m) => m.cumulative_hazard(x),
            Hazard::Tabulated(m) => m.cumulative_hazard(x),
        }
    }

    fn inverse_cumulative_hazard(&self, u: f64) -> Result<f64> {
        match self {
            Hazard::Constant(m) => m.inverse_cumulative_hazard(u),
            Hazard::Weibull(m) => m.inverse_cumulative_hazard(u),
            Hazard::Bathtub(m) => m.inverse_cumulative_hazard(u),
            Hazard::Tabulated(m) => m.inverse_cumulative_hazard(u),
        }
    }
}

impl From<ConstantHazard> for Hazard {
    fn from(m: ConstantHazard) -> Self {
        Hazard::Constant(m)
    }
}

impl From<Weibull> for Hazard {
    fn from(m: Weibull) -> Self {
        Hazard::Weibull(m)
    }
}

impl From<CompositeBathtub> for Hazard {
    fn from(m: CompositeBathtub) -> Self {
        Hazard::Bathtub(m)
    }
}

impl From<TabulatedHazard> for Hazard {
    fn from(m: TabulatedHazard) -> Self {
        Hazard::Tabulated(m)
    }
}

fn check_age(op: &'static str, x: f64) -> Result<()> {
    if !(x >= 0.0) {
        return Err(domain(op, format!("age x = {x} must be non-negative")));
    }
    Ok(())
}

/// `S(x) = e^{-Λ(x)}`.
pub fn reliability<M: HazardModel + ?Sized>(model: &M, x: f64) -> Result<f64> {
    check_age("reliability", x)?;
    Ok(model.reliability(x))
}

/// Lifetime density `f(x) = λ(x) S(x)`.
pub fn density<M: HazardModel + ?Sized>(model: &M, x: f64) -> Result<f64> {
    check_age("density", x)?;
    let s = model.reliability(x);
    if s == 0.0 {
        return Ok(0.0);
    }
    Ok(model.hazard(x) * s)
}

/// Inverse-transform sample: the age at which `Λ` reaches `-ln(uniform_draw)`.
pub fn sample_ttf<M: HazardModel + ?Sized>(model: &M, uniform_draw: f64) -> Result<f64> {
    if !(uniform_draw > 0.0 && uniform_draw < 1.0) {
        return Err(domain("sample_ttf", format!("draw {uniform_draw} is not in (0, 1)")));
    }
    model.inverse_cumulative_hazard(-uniform_draw.ln())
}
