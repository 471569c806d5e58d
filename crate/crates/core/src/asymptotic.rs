//! Large-array limits of the per-component hazard.

use crate::error::{domain, Error, Result};
use crate::hazard::HazardModel;

/// Limit of `μ_c(a, n, r)` as `n → ∞` at the age `a` where `R(a) = 1/q`:
/// `λ(a) (q r - 1) / (r (q - 1))` for `r >= 1/q`, otherwise 0.
pub fn asymptotic_mu_c(q: f64, r: f64, lambda_at_a: f64) -> Result<f64> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(domain("asymptotic_mu_c", format!("q = {q} must exceed 1")));
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(domain("asymptotic_mu_c", format!("rate r = {r} is not in (0, 1]")));
    }
    let excess = q * r - 1.0;
    if excess <= 0.0 {
        return Ok(0.0);
    }
    Ok(lambda_at_a * excess / (r * (q - 1.0)))
}

/// Age `a` with `Λ(a) = ln q`, i.e. `R(a) = 1/q`.
pub fn solve_time_for_q<M: HazardModel + ?Sized>(model: &M, q: f64) -> Result<f64> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(domain("solve_time_for_q", format!("q = {q} must exceed 1")));
    }
    model.inverse_cumulative_hazard(q.ln()).map_err(|e| match e {
        Error::NonConvergence { detail, .. } => Error::NonConvergence {
            op: "solve_time_for_q",
            detail,
        },
        other => other,
    })
}

/// Which joint limit of age and array size is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitRegime {
    /// `x → ∞` with `n R(x)` bounded.
    Wearout,
    /// `x → 0` with `n (1 - R(x))` bounded.
    Infancy,
}

/// Constant `C(x, r, a)` of the adaptive limit `μ_c → λ(x) C / n`:
/// `1/r` in the wear-out regime and
/// `(1 - R) / ((R - r)(2R - r - 1))` in the infancy regime.
pub fn theorem5_constant(regime: LimitRegime, reliability: f64, r: f64) -> Result<f64> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(domain("theorem5_constant", format!("rate r = {r} is not in (0, 1]")));
    }
    match regime {
        LimitRegime::Wearout => Ok(1.0 / r),
        LimitRegime::Infancy => {
            if !(0.0..=1.0).contains(&reliability) {
                return Err(domain("theorem5_constant", format!("R = {reliability} is not in [0, 1]")));
            }
            let gap = reliability - r;
            let spread = 2.0 * reliability - r - 1.0;
            if gap == 0.0 {
                return Err(Error::Singularity {
                    op: "theorem5_constant",
                    factor: "R - r",
                });
            }
            if spread == 0.0 {
                return Err(Error::Singularity {
                    op: "theorem5_constant",
                    factor: "2R - r - 1",
                });
            }
            Ok((1.0 - reliability) / (gap * spread))
        }
    }
}
