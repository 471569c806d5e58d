//! Seeded Monte Carlo failure-time simulation.
//!
//! # Stream contract
//!
//! Trial `i` draws from `ChaCha8Rng::seed_from_u64(seed)` switched to stream
//! `i` (`set_stream(i)`), so every trial owns an independent, reproducible
//! stream no matter how trials are scheduled. Each uniform draw consumes one
//! `u64` word `w` and maps it to the open interval as
//! `u = ((w >> 12) + 0.5) · 2^-52`. A leaf lifetime is `Λ^{-1}(-ln u)`.
//!
//! Leaves are drawn in row-major order of the index `(i_T, …, i_2, i_1)`:
//! the dimension-1 index varies fastest, so each run of `n_1` consecutive
//! draws forms one dimension-1 block, each run of `n_2` consecutive
//! dimension-1 blocks one dimension-2 block, and so on.
//!
//! A block fails at the `(t + 1)`-th smallest failure time of its children.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::code::ArrayConfig;
use crate::curve::{Curve, Grid};
use crate::error::{domain, Error, Result};
use crate::hazard::{sample_ttf, HazardModel};

/// Default cap on `trials × leaves` per run.
pub const DEFAULT_SAMPLE_BUDGET: u128 = 1_000_000_000;

const CHUNK_TRIALS: u64 = 2048;

/// A complete simulation request.
#[derive(Debug, Clone)]
pub struct SimConfig<M> {
    pub config: ArrayConfig,
    pub model: M,
    pub trials: u64,
    pub seed: u64,
    pub grid: Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimOptions {
    pub execution: Execution,
    pub sample_budget: u128,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            execution: Execution::Parallel,
            sample_budget: DEFAULT_SAMPLE_BUDGET,
        }
    }
}

/// Empirical survival estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub grid: Vec<f64>,
    /// Fraction of trials whose system lifetime exceeds each grid age.
    pub survival_hat: Vec<f64>,
    /// `1.96 · sqrt(p̂ (1 - p̂) / trials)`.
    pub half_width_95: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub mean_system_ttf: f64,
    /// Standard error of `mean_system_ttf`; NaN for a single trial.
    pub mean_ttf_stderr: f64,
}

/// The random stream of trial `trial`.
pub fn trial_stream(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One uniform draw in the open interval `(0, 1)`.
#[inline]
pub fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    const SCALE: f64 = 1.0 / (1u64 << 52) as f64;
    ((rng.next_u64() >> 12) as f64 + 0.5) * SCALE
}

/// System lifetime given the uniform draws for every leaf, in leaf order.
pub fn system_ttf_from_draws<M, I>(config: &ArrayConfig, model: &M, draws: I) -> Result<f64>
where
    M: HazardModel + ?Sized,
    I: IntoIterator<Item = f64>,
{
    let mut scratch = Vec::new();
    let mut draws = draws.into_iter();
    fill_and_reduce(config, model, &mut scratch, || {
        draws
            .next()
            .ok_or_else(|| domain("system_ttf_from_draws", "fewer draws than leaves"))
    })
}

/// Draws one system lifetime from `rng`.
pub fn simulate_system_ttf<M, R>(config: &ArrayConfig, model: &M, rng: &mut R) -> Result<f64>
where
    M: HazardModel + ?Sized,
    R: RngCore + ?Sized,
{
    let mut scratch = Vec::new();
    simulate_with_scratch(config, model, rng, &mut scratch)
}

fn simulate_with_scratch<M, R>(config: &ArrayConfig, model: &M, rng: &mut R, scratch: &mut Vec<f64>) -> Result<f64>
where
    M: HazardModel + ?Sized,
    R: RngCore + ?Sized,
{
    fill_and_reduce(config, model, scratch, || Ok(open_unit(rng)))
}

fn fill_and_reduce<M, D>(config: &ArrayConfig, model: &M, scratch: &mut Vec<f64>, mut draw: D) -> Result<f64>
where
    M: HazardModel + ?Sized,
    D: FnMut() -> Result<f64>,
{
    let leaves = config.components() as usize;
    scratch.clear();
    scratch.reserve(leaves);
    for _ in 0..leaves {
        scratch.push(sample_ttf(model, draw()?)?);
    }
    let mut len = leaves;
    for code in config.dims() {
        let n = code.n() as usize;
        let t = code.t() as usize;
        let blocks = len / n;
        for b in 0..blocks {
            let children = &mut scratch[b * n..(b + 1) * n];
            let (_, failure, _) = children.select_nth_unstable_by(t, f64::total_cmp);
            let failure = *failure;
            scratch[b] = failure;
        }
        len = blocks;
    }
    Ok(scratch[0])
}

#[derive(Debug, Clone)]
struct Tally {
    /// `hist[j]`: trials whose lifetime exceeds exactly the first `j` grid ages.
    hist: Vec<u64>,
    count: u64,
    mean: f64,
    m2: f64,
}

impl Tally {
    fn new(grid_len: usize) -> Self {
        Tally {
            hist: vec![0; grid_len + 1],
            count: 0,
            mean: 0.0,
            m2: 0.0,
        }
    }

    fn push(&mut self, grid: &[f64], ttf: f64) {
        self.hist[grid.partition_point(|&x| x < ttf)] += 1;
        self.count += 1;
        let delta = ttf - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (ttf - self.mean);
    }

    fn merge(mut self, other: &Tally) -> Tally {
        for (a, b) in self.hist.iter_mut().zip(&other.hist) {
            *a += b;
        }
        if other.count == 0 {
            return self;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 += other.m2 + delta * delta * self.count as f64 * other.count as f64 / total as f64;
        self.count = total;
        self
    }
}

fn run_chunk<M: HazardModel>(sim: &SimConfig<M>, chunk: u64) -> Result<Tally> {
    let grid = sim.grid.points();
    let mut tally = Tally::new(grid.len());
    let mut scratch = Vec::with_capacity(sim.config.components() as usize);
    let first = chunk * CHUNK_TRIALS;
    let last = (first + CHUNK_TRIALS).min(sim.trials);
    for trial in first..last {
        let mut rng = trial_stream(sim.seed, trial);
        let ttf = simulate_with_scratch(&sim.config, &sim.model, &mut rng, &mut scratch)?;
        tally.push(grid, ttf);
    }
    Ok(tally)
}

/// Runs the simulation with default options (parallel, default budget).
pub fn run_simulation<M: HazardModel>(sim: &SimConfig<M>) -> Result<SimOutcome> {
    run_simulation_with(sim, &SimOptions::default())
}

/// Runs the simulation. The outcome depends only on `sim`, never on
/// `options.execution`: trials are tallied in fixed chunks and the chunk
/// tallies are merged in chunk order.
pub fn run_simulation_with<M: HazardModel>(sim: &SimConfig<M>, options: &SimOptions) -> Result<SimOutcome> {
    if sim.trials == 0 {
        return Err(domain("run_simulation", "trials must be at least 1"));
    }
    let requested = sim.trials as u128 * sim.config.components() as u128;
    if requested > options.sample_budget {
        return Err(Error::Capacity {
            requested,
            budget: options.sample_budget,
        });
    }

    let chunks = sim.trials.div_ceil(CHUNK_TRIALS);
    let tallies: Vec<Tally> = match options.execution {
        Execution::Serial => (0..chunks).map(|c| run_chunk(sim, c)).collect::<Result<_>>()?,
        Execution::Parallel => (0..chunks)
            .into_par_iter()
            .map(|c| run_chunk(sim, c))
            .collect::<Result<_>>()?,
    };
    let grid = sim.grid.points();
    let total = tallies
        .iter()
        .fold(Tally::new(grid.len()), |acc, t| acc.merge(t));

    let n = sim.trials as f64;
    let mut survivors = 0u64;
    let mut survival_hat = vec![0.0; grid.len()];
    for j in (0..grid.len()).rev() {
        survivors += total.hist[j + 1];
        survival_hat[j] = survivors as f64 / n;
    }
    let half_width_95 = survival_hat
        .iter()
        .map(|p| 1.96 * (p * (1.0 - p) / n).sqrt())
        .collect();
    let mean_ttf_stderr = if sim.trials > 1 {
        (total.m2 / (n - 1.0) / n).sqrt()
    } else {
        f64::NAN
    };
    Ok(SimOutcome {
        grid: grid.to_vec(),
        survival_hat,
        half_width_95,
        trials: sim.trials,
        seed: sim.seed,
        mean_system_ttf: total.mean,
        mean_ttf_stderr,
    })
}

/// Hazard estimate `-Δ ln Ŝ / Δx` between consecutive grid ages, placed at the
/// interval midpoints and smoothed with a centred moving average of
/// `smoothing_window` intervals.
///
/// Intervals touching a point with `Ŝ <= 10 / trials` are unreliable and left
/// out.
pub fn empirical_hazard(outcome: &SimOutcome, smoothing_window: usize) -> Result<Curve> {
    if smoothing_window == 0 {
        return Err(domain("empirical_hazard", "smoothing window must be at least 1"));
    }
    let floor = 10.0 / outcome.trials as f64;
    let s = &outcome.survival_hat;
    let x = &outcome.grid;
    let (mids, raw): (Vec<f64>, Vec<f64>) = (0..s.len().saturating_sub(1))
        .filter(|&i| s[i] > floor && s[i + 1] > floor)
        .map(|i| {
            let h = (s[i].ln() - s[i + 1].ln()) / (x[i + 1] - x[i]);
            (0.5 * (x[i] + x[i + 1]), h)
        })
        .unzip();
    if raw.is_empty() {
        return Err(Error::EmptyCurve(format!(
            "no grid interval keeps the empirical survival above {floor:e}"
        )));
    }
    let half = smoothing_window / 2;
    let smoothed = (0..raw.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + smoothing_window - half).min(raw.len());
            raw[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect();
    Ok(Curve::new("empirical_hazard", "per hour", mids, smoothed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hazard::ConstantHazard;

    #[test]
    fn single_component_is_its_sample() {
        let m = ConstantHazard::new(1.0).unwrap();
        let cfg = ArrayConfig::from_pairs(&[(1, 1)]).unwrap();
        let u = 0.3f64;
        let ttf = system_ttf_from_draws(&cfg, &m, [u]).unwrap();
        assert_eq!(ttf, -u.ln());
    }

    #[test]
    fn mirrored_pair_fails_at_the_later_copy() {
        let m = ConstantHazard::new(1.0).unwrap();
        let cfg = ArrayConfig::from_pairs(&[(2, 1)]).unwrap();
        let ttf = system_ttf_from_draws(&cfg, &m, [(-1f64).exp(), (-2f64).exp()]).unwrap();
        assert!((ttf - 2.0).abs() < 1e-15);
    }

    #[test]
    fn parity_block_fails_at_second_failure() {
        let m = ConstantHazard::new(0.5).unwrap();
        let cfg = ArrayConfig::from_pairs(&[(4, 3)]).unwrap();
        let draws = [0.9, 0.2, 0.6, 0.4];
        // Lifetimes 2·(-ln u): 0.2107, 3.2189, 1.0217, 1.8326; second smallest is 1.0217.
        let ttf = system_ttf_from_draws(&cfg, &m, draws).unwrap();
        assert!((ttf - (-2.0 * 0.6f64.ln())).abs() < 1e-15);
        assert!(system_ttf_from_draws(&cfg, &m, [0.5, 0.5]).is_err());
    }

    #[test]
    fn open_unit_stays_inside() {
        struct Extreme(u64);
        impl RngCore for Extreme {
            fn next_u32(&mut self) -> u32 {
                self.0 as u32
            }
            fn next_u64(&mut self) -> u64 {
                self.0
            }
            fn fill_bytes(&mut self, _dst: &mut [u8]) {
                unimplemented!()
            }
        }
        let lo = open_unit(&mut Extreme(0));
        let hi = open_unit(&mut Extreme(u64::MAX));
        assert!(lo > 0.0 && hi < 1.0);
    }

    #[test]
    fn capacity_checked_up_front() {
        let sim = SimConfig {
            config: ArrayConfig::from_pairs(&[(100, 90), (100, 90)]).unwrap(),
            model: ConstantHazard::new(1e-3).unwrap(),
            trials: 1_000_000,
            seed: 1,
            grid: Grid::explicit(vec![1.0, 2.0]).unwrap(),
        };
        assert!(matches!(run_simulation(&sim), Err(Error::Capacity { .. })));
        let sim = SimConfig { trials: 0, ..sim };
        assert!(run_simulation(&sim).is_err());
    }

    #[test]
    fn single_trial_outcome() {
        let sim = SimConfig {
            config: ArrayConfig::from_pairs(&[(3, 2)]).unwrap(),
            model: ConstantHazard::new(1e-2).unwrap(),
            trials: 1,
            seed: 5,
            grid: Grid::uniform(0.0, 300.0, 7, crate::curve::Spacing::Linear).unwrap(),
        };
        let out = run_simulation(&sim).unwrap();
        assert!(out.survival_hat.iter().all(|&p| p == 0.0 || p == 1.0));
        assert!(out.half_width_95.iter().all(|&h| h == 0.0));
        assert!(out.mean_ttf_stderr.is_nan());
    }

    #[test]
    fn empirical_hazard_flat_prefix_and_errors() {
        let out = SimOutcome {
            grid: vec![0.0, 1.0, 2.0, 3.0],
            survival_hat: vec![1.0, 1.0, 0.5, 0.0],
            half_width_95: vec![0.0; 4],
            trials: 1000,
            seed: 0,
            mean_system_ttf: 0.0,
            mean_ttf_stderr: 0.0,
        };
        let c = empirical_hazard(&out, 1).unwrap();
        assert_eq!(c.x, vec![0.5, 1.5]);
        assert_eq!(c.values[0], 0.0);
        assert!((c.values[1] - 2f64.ln()).abs() < 1e-15);
        assert!(empirical_hazard(&out, 0).is_err());
        let dead = SimOutcome {
            survival_hat: vec![0.001, 0.0, 0.0, 0.0],
            ..out
        };
        assert!(matches!(empirical_hazard(&dead, 3), Err(Error::EmptyCurve(_))));
    }
}
