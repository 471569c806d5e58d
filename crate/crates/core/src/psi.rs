//! Binomial failure-count sums `ψ`.
//!
//! `ψ_t(z, n) = Σ_{i=0}^{t} C(n,i) C(i,z) (1-R)^i R^{n-i}`; with `z = 0` this is
//! the probability that at most `t` of `n` independent components with
//! reliability `R` have failed. All sums are accumulated in log space.

use crate::error::{domain, Result};
use crate::hazard::SurvivalPoint;
use crate::special::{ln_choose, logsumexp, scaled_log};

/// `ln [C(n,i) (1-R)^i R^{n-i}]`.
#[inline]
pub(crate) fn ln_binomial_term(n: u64, i: u64, p: SurvivalPoint) -> f64 {
    ln_choose(n, i) + scaled_log(i as f64, p.ln_f) + scaled_log((n - i) as f64, p.ln_r)
}

/// `ln ψ_t(n)`. Requires `t <= n`.
pub(crate) fn ln_psi(t: u64, n: u64, p: SurvivalPoint) -> f64 {
    debug_assert!(t <= n);
    if t == n {
        return 0.0;
    }
    logsumexp((0..=t).map(|i| ln_binomial_term(n, i, p)))
}

/// `ln(1 - ψ_t(n))`, summed over the upper tail directly.
pub(crate) fn ln_psi_complement(t: u64, n: u64, p: SurvivalPoint) -> f64 {
    debug_assert!(t <= n);
    if t == n {
        return f64::NEG_INFINITY;
    }
    logsumexp((t + 1..=n).map(|i| ln_binomial_term(n, i, p)))
}

/// `ln [ψ_t(n) - ψ_{t-1}(n-1)] = ln [C(n-1,t) (1-R)^t R^{n-t}]`, the
/// probability that exactly `t` of the other `n - 1` components have failed
/// while the first survives. Requires `t < n`.
pub(crate) fn ln_psi_increment(t: u64, n: u64, p: SurvivalPoint) -> f64 {
    debug_assert!(t < n);
    ln_choose(n - 1, t) + scaled_log(t as f64, p.ln_f) + scaled_log((n - t) as f64, p.ln_r)
}

fn check_reliability(op: &'static str, r: f64) -> Result<SurvivalPoint> {
    SurvivalPoint::from_reliability(r).map_err(|_| domain(op, format!("R = {r} is not in [0, 1]")))
}

/// Binomial CDF `ψ_t(n) = Σ_{i=0}^{t} C(n,i) (1-R)^i R^{n-i}`.
pub fn psi(t: u64, n: u64, r: f64) -> Result<f64> {
    if t > n {
        return Err(domain("psi", format!("t = {t} exceeds n = {n}")));
    }
    let p = check_reliability("psi", r)?;
    Ok(ln_psi(t, n, p).exp().min(1.0))
}

/// `ψ_t(n)` from a log-form survival point.
pub fn psi_at(t: u64, n: u64, p: SurvivalPoint) -> Result<f64> {
    if t > n {
        return Err(domain("psi_at", format!("t = {t} exceeds n = {n}")));
    }
    Ok(ln_psi(t, n, p).exp().min(1.0))
}

/// Generalized sum `ψ_t(z, n) = Σ_{i=0}^{t} C(n,i) C(i,z) (1-R)^i R^{n-i}`,
/// with `C(i, z) = 0` for `z > i`.
pub fn psi_z(z: u64, t: u64, n: u64, r: f64) -> Result<f64> {
    if t > n || z > n {
        return Err(domain("psi_z", format!("need z, t <= n, got z = {z}, t = {t}, n = {n}")));
    }
    let p = check_reliability("psi_z", r)?;
    if z > t {
        return Ok(0.0);
    }
    let ln = logsumexp((z..=t).map(|i| ln_binomial_term(n, i, p) + ln_choose(i, z)));
    Ok(ln.exp())
}
