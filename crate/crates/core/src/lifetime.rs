//! Mean time to failure and annualized failure rate.

use crate::error::{domain, Error, Result};
use crate::quadrature;

pub const HOURS_PER_YEAR: f64 = 8760.0;

const MAX_DOUBLINGS: usize = 1000;
const MAX_HALVINGS: usize = 1100;

/// Result of integrating a survival function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MttfEstimate {
    /// `∫_0^∞ S`, hours.
    pub mttf: f64,
    /// First point of the doubling grid where `S` fell below the truncation level.
    pub horizon: f64,
    /// Exponential extrapolation of `∫_horizon^∞ S`, included in `mttf`.
    pub tail: f64,
    /// Quadrature error estimate on `[0, horizon]`.
    pub quadrature_error: f64,
}

/// MTTF of a survival function by adaptive quadrature.
///
/// The horizon is found on the grid `1, 2, 4, …` hours (or `1, 1/2, 1/4, …`
/// when `S(1)` is already below `truncation_eps`). Beyond it, the integral is
/// extrapolated from the decay across the last grid interval, which is exact
/// for exponential tails.
pub fn mttf<S: Fn(f64) -> f64>(survival: S, truncation_eps: f64) -> Result<MttfEstimate> {
    mttf_within(survival, truncation_eps, f64::MAX)
}

/// As [`mttf`], but fails if `S(max_horizon)` has not dropped below
/// `truncation_eps`.
pub fn mttf_within<S: Fn(f64) -> f64>(survival: S, truncation_eps: f64, max_horizon: f64) -> Result<MttfEstimate> {
    if !(truncation_eps > 0.0 && truncation_eps <= 1e-3) {
        return Err(domain("mttf", format!("truncation_eps = {truncation_eps} is not in (0, 1e-3]")));
    }
    if !(max_horizon > 0.0) {
        return Err(domain("mttf", format!("max_horizon = {max_horizon} must be positive")));
    }

    let mut breaks = vec![0.0];
    let mut x = 1.0f64.min(max_horizon);
    let mut s = survival(x);
    if s < truncation_eps {
        // Shrink towards zero while the survival is still negligible.
        let mut halvings = 0;
        while halvings < MAX_HALVINGS {
            let half = 0.5 * x;
            let s_half = survival(half);
            if s_half >= truncation_eps || half == 0.0 {
                break;
            }
            x = half;
            s = s_half;
            halvings += 1;
        }
        let prev = 0.5 * x;
        let s_prev = survival(prev);
        breaks.push(prev);
        breaks.push(x);
        return finish(&survival, breaks, prev, s_prev, x, s);
    }

    breaks.push(x);
    let mut doublings = 0;
    loop {
        if x >= max_horizon || doublings >= MAX_DOUBLINGS {
            return Err(Error::NonConvergence {
                op: "mttf",
                detail: format!(
                    "survival {s:e} at horizon {x:e} h has not dropped below truncation level {truncation_eps:e}"
                ),
            });
        }
        let next = (2.0 * x).min(max_horizon);
        let s_next = survival(next);
        breaks.push(next);
        if s_next < truncation_eps {
            return finish(&survival, breaks, x, s, next, s_next);
        }
        x = next;
        s = s_next;
        doublings += 1;
    }
}

fn finish<S: Fn(f64) -> f64>(
    survival: &S,
    breaks: Vec<f64>,
    prev: f64,
    s_prev: f64,
    horizon: f64,
    s_horizon: f64,
) -> Result<MttfEstimate> {
    let (body, quadrature_error) = quadrature::integrate(survival, &breaks, 1e-300, 1e-12, 20_000)?;
    let tail = if s_horizon <= 0.0 || s_prev <= s_horizon {
        0.0
    } else {
        s_horizon * (horizon - prev) / (s_prev / s_horizon).ln()
    };
    Ok(MttfEstimate {
        mttf: body + tail,
        horizon,
        tail,
        quadrature_error,
    })
}

/// `AFR = 1 - e^{-8760 / MTTF}`.
pub fn afr(mttf_hours: f64) -> Result<f64> {
    if !(mttf_hours > 0.0) {
        return Err(domain("afr", format!("MTTF = {mttf_hours} must be positive")));
    }
    Ok(-(-HOURS_PER_YEAR / mttf_hours).exp_m1())
}
