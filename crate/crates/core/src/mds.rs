//! Hazard rate per data component of MDS-coded arrays.
//!
//! A 1-D block of `n` i.i.d. components survives while at most `t = n - k`
//! have failed, so its survival is `ψ_t(n)`. The block hazard is
//! `-d ln ψ_t(n) / dx`, and the hazard per data component is that divided by
//! `k`:
//!
//! ```text
//! μ_c(x) = λ(x)/r · (1 - ψ_{t-1}(n-1) / ψ_t(n))
//!        = λ(x)/r · C(n-1,t) (1-R)^t R^{n-t} / ψ_t(n)
//! ```
//!
//! The second form follows from conditioning on one component; it has no
//! cancellation, so it stays accurate both when `ψ` is close to 1 and when it
//! underflows. Higher dimensions treat each `(s-1)`-level block as a single
//! component whose reliability is the block survival and whose hazard is the
//! block hazard.

use crate::code::{ArrayConfig, MdsCode};
use crate::error::{domain, Error, Result};
use crate::hazard::{HazardModel, SurvivalPoint};
use crate::psi::{ln_psi, ln_psi_complement, ln_psi_increment};

fn check_age(op: &'static str, x: f64) -> Result<()> {
    if !(x >= 0.0) {
        return Err(domain(op, format!("age x = {x} must be non-negative")));
    }
    Ok(())
}

/// `λ · e^{ln_factor}` with `∞ · 0 = 0`.
#[inline]
fn scale_rate(lambda: f64, ln_factor: f64) -> f64 {
    let factor = ln_factor.exp();
    if factor == 0.0 {
        0.0
    } else {
        lambda * factor
    }
}

/// Block hazard `k · μ_c` for components with hazard `lambda` at survival
/// point `p`.
fn block_hazard_at(x: f64, code: &MdsCode, lambda: f64, p: SurvivalPoint) -> Result<f64> {
    let (n, t) = (code.n(), code.t());
    if t == 0 {
        return Ok(n as f64 * lambda);
    }
    let ln_s = ln_psi(t, n, p);
    if ln_s == f64::NEG_INFINITY {
        return Err(Error::NumericOverflow { op: "mu_c", x, n, t });
    }
    Ok(scale_rate(n as f64 * lambda, ln_psi_increment(t, n, p) - ln_s))
}

/// Hazard rate per data component of a 1-D `(n, k)` block.
pub fn mu_c<M: HazardModel + ?Sized>(x: f64, code: &MdsCode, model: &M) -> Result<f64> {
    check_age("mu_c", x)?;
    let lambda = model.hazard(x);
    if code.t() == 0 {
        return Ok(lambda);
    }
    let p = model.survival_point(x);
    mu_c_at(x, code, lambda, p)
}

/// [`mu_c`] for an explicit component hazard and survival point.
pub fn mu_c_at(x: f64, code: &MdsCode, lambda: f64, p: SurvivalPoint) -> Result<f64> {
    if code.t() == 0 {
        return Ok(lambda);
    }
    Ok(block_hazard_at(x, code, lambda, p)? / code.k() as f64)
}

/// `λ(x) · max{0, (1 - R/r) / (1 - R)}`, zero at `R = 1`.
pub fn mu_c_lower_bound<M: HazardModel + ?Sized>(x: f64, code: &MdsCode, model: &M) -> Result<f64> {
    check_age("mu_c_lower_bound", x)?;
    Ok(lower_bound_at(code.rate(), code.t() as f64 / code.n() as f64, model.hazard(x), model.survival_point(x)))
}

/// Lower bound for a code of rate `rate` and redundancy `1 - rate`.
pub(crate) fn lower_bound_at(rate: f64, redundancy: f64, lambda: f64, p: SurvivalPoint) -> f64 {
    let f = p.unreliability();
    if f == 0.0 {
        return 0.0;
    }
    // (1 - R/r) / (1 - R) = (F - (1 - r)) / (r F)
    let ratio = (f - redundancy) / (rate * f);
    if ratio <= 0.0 {
        0.0
    } else {
        lambda * ratio
    }
}

/// Closed form for the `(n, 1)` repetition code:
/// `n λ R (1-R)^{n-1} / (1 - (1-R)^n)`.
pub fn repetition_mu_c<M: HazardModel + ?Sized>(x: f64, n: u64, model: &M) -> Result<f64> {
    check_age("repetition_mu_c", x)?;
    if n == 0 {
        return Err(domain("repetition_mu_c", "n must be at least 1"));
    }
    let lambda = model.hazard(x);
    if n == 1 {
        return Ok(lambda);
    }
    let p = model.survival_point(x);
    let nf = n as f64;
    let denom = -(nf * p.ln_f).exp_m1();
    let ln_num = nf.ln() + p.ln_r + (nf - 1.0) * p.ln_f;
    Ok(scale_rate(lambda, ln_num - denom.ln()))
}

/// Closed form for the `(n, n-1)` parity code: `λ n (1-R) / (n (1-R) + R)`.
pub fn parity_mu_c<M: HazardModel + ?Sized>(x: f64, n: u64, model: &M) -> Result<f64> {
    check_age("parity_mu_c", x)?;
    if n < 2 {
        return Err(domain("parity_mu_c", "parity code needs n >= 2"));
    }
    let p = model.survival_point(x);
    let (r, f) = (p.reliability(), p.unreliability());
    let nf = n as f64;
    let factor = nf * f / (nf * f + r);
    Ok(if factor == 0.0 { 0.0 } else { model.hazard(x) * factor })
}

/// Survival point and hazard of the block at one level of the array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelState {
    pub point: SurvivalPoint,
    /// Hazard of the whole block at this level (not per component).
    pub hazard: f64,
}

/// States for levels `0..=T`; level 0 is a single leaf component and level
/// `s` a block of dimension `s`.
pub fn level_states<M: HazardModel + ?Sized>(x: f64, config: &ArrayConfig, model: &M) -> Result<Vec<LevelState>> {
    check_age("level_states", x)?;
    let mut states = Vec::with_capacity(config.depth() + 1);
    let mut current = LevelState {
        point: model.survival_point(x),
        hazard: model.hazard(x),
    };
    states.push(current);
    for code in config.dims() {
        current = next_level(x, code, current)?;
        states.push(current);
    }
    Ok(states)
}

fn next_level(x: f64, code: &MdsCode, child: LevelState) -> Result<LevelState> {
    let (n, t) = (code.n(), code.t());
    let point = SurvivalPoint {
        ln_r: ln_psi(t, n, child.point),
        ln_f: ln_psi_complement(t, n, child.point),
    };
    let hazard = block_hazard_at(x, code, child.hazard, child.point)?;
    Ok(LevelState { point, hazard })
}

fn top_state<M: HazardModel + ?Sized>(x: f64, config: &ArrayConfig, model: &M) -> Result<LevelState> {
    check_age("system", x)?;
    let mut current = LevelState {
        point: model.survival_point(x),
        hazard: model.hazard(x),
    };
    for code in config.dims() {
        current = next_level(x, code, current)?;
    }
    Ok(current)
}

/// Hazard per data component of a T-dimensional array.
///
/// Level `s` applies the 1-D result to `n_s` blocks of level `s - 1`, each
/// with reliability `S_{s-1}` and hazard `k_{1,s-1} μ_c^{(s-1)}`; the block
/// hazard at the top is divided by the `k_{1,T}` data components.
pub fn multidim_mu_c<M: HazardModel + ?Sized>(x: f64, config: &ArrayConfig, model: &M) -> Result<f64> {
    if config.depth() == 1 {
        return mu_c(x, &config.dims()[0], model);
    }
    Ok(top_state(x, config, model)?.hazard / config.data_components() as f64)
}

/// Array hazard `k_{1,T} · μ_c`, i.e. `-d ln S_system / dx`.
pub fn array_hazard<M: HazardModel + ?Sized>(x: f64, config: &ArrayConfig, model: &M) -> Result<f64> {
    Ok(config.data_components() as f64 * multidim_mu_c(x, config, model)?)
}

/// Probability that the array is still decodable at age `x`:
/// `S_1 = ψ_{t_1}(n_1, R)`, `S_s = ψ_{t_s}(n_s, S_{s-1})`.
pub fn system_survival<M: HazardModel + ?Sized>(x: f64, config: &ArrayConfig, model: &M) -> Result<f64> {
    check_age("system_survival", x)?;
    let mut point = model.survival_point(x);
    for code in config.dims() {
        point = SurvivalPoint {
            ln_r: ln_psi(code.t(), code.n(), point),
            ln_f: ln_psi_complement(code.t(), code.n(), point),
        };
    }
    Ok(point.reliability().min(1.0))
}

/// Lifetime density of a 1-D block.
///
/// Evaluated as `n λ C(n-1,t) (1-R)^t R^{n-t}`, which is the density
/// `λ n ψ_t(n) - λ ψ_t(1,n) / (1-R)` after substituting
/// `ψ_t(1,n) = n (1-R) ψ_{t-1}(n-1)`; the collapsed form is finite at `R = 1`.
pub fn system_density<M: HazardModel + ?Sized>(x: f64, code: &MdsCode, model: &M) -> Result<f64> {
    check_age("system_density", x)?;
    let p = model.survival_point(x);
    let n = code.n() as f64;
    Ok(scale_rate(n * model.hazard(x), ln_psi_increment(code.t(), code.n(), p)))
}

/// Lifetime density of a T-dimensional array, `array hazard × survival`.
pub fn array_density<M: HazardModel + ?Sized>(x: f64, config: &ArrayConfig, model: &M) -> Result<f64> {
    if config.depth() == 1 {
        return system_density(x, &config.dims()[0], model);
    }
    let top = top_state(x, config, model)?;
    Ok(scale_rate(top.hazard, top.point.ln_r))
}

/// The lower bound evaluated with the overall array rate `r_{1,T}`.
pub fn array_lower_bound<M: HazardModel + ?Sized>(x: f64, config: &ArrayConfig, model: &M) -> Result<f64> {
    check_age("array_lower_bound", x)?;
    let rate = config.rate();
    Ok(lower_bound_at(rate, 1.0 - rate, model.hazard(x), model.survival_point(x)))
}

/// A block of an array viewed as a single component.
///
/// `Λ_block = -ln S_block` and `λ_block` is the analytic block hazard, so the
/// block can be fed back anywhere a [`HazardModel`] is accepted.
#[derive(Debug, Clone)]
pub struct BlockModel<M> {
    config: ArrayConfig,
    base: M,
}

impl<M: HazardModel> BlockModel<M> {
    pub fn new(config: ArrayConfig, base: M) -> Self {
        BlockModel { config, base }
    }

    pub fn config(&self) -> &ArrayConfig {
        &self.config
    }
}

impl<M: HazardModel> HazardModel for BlockModel<M> {
    fn hazard(&self, x: f64) -> f64 {
        top_state(x, &self.config, &self.base).map_or(f64::NAN, |s| s.hazard)
    }

    fn cumulative_hazard(&self, x: f64) -> f64 {
        -self.survival_point(x).ln_r
    }

    fn survival_point(&self, x: f64) -> SurvivalPoint {
        let mut point = self.base.survival_point(x);
        for code in self.config.dims() {
            point = SurvivalPoint {
                ln_r: ln_psi(code.t(), code.n(), point),
                ln_f: ln_psi_complement(code.t(), code.n(), point),
            };
        }
        point
    }

    fn inverse_cumulative_hazard(&self, u: f64) -> Result<f64> {
        crate::hazard::check_cumulative("BlockModel", u)?;
        if u == 0.0 {
            return Ok(0.0);
        }
        let mut hi = 1.0f64;
        let mut doublings = 0;
        while self.cumulative_hazard(hi) < u {
            hi *= 2.0;
            doublings += 1;
            if doublings > 1000 {
                return Err(Error::NonConvergence {
                    op: "BlockModel::inverse_cumulative_hazard",
                    detail: format!("cumulative hazard never reaches {u}"),
                });
            }
        }
        let mut lo = 0.0f64;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.cumulative_hazard(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(hi)
    }
}
