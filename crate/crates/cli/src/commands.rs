//! `curve`, `mttf`, `asymptotic` and `simulate`.
//!
//! Every command writes its CSV to `--out`, else `output.path`, else stdout.
//! Human-readable summaries go to stdout when the CSV went to a file and to
//! stderr otherwise.

use std::path::{Path, PathBuf};

use mdsrel::{
    afr, array_density, array_hazard, array_lower_bound, asymptotic_mu_c, mttf_within, mu_c, mu_c_lower_bound,
    multidim_mu_c, run_simulation_with, solve_time_for_q, system_survival, Execution, HazardModel, MdsCode,
    SimConfig, SimOptions,
};

use crate::config::{Quantity, RunConfig, Validated};
use crate::output::{format_number, Table};
use crate::{AsymptoticArgs, CliError, CommonArgs, CurveArgs, SimulateArgs};

pub const DEFAULT_TRUNCATION_EPS: f64 = 1e-9;

fn load(common: &CommonArgs) -> Result<(RunConfig, Validated), CliError> {
    let cfg = RunConfig::load(&common.config)?;
    let v = cfg.validate()?;
    Ok((cfg, v))
}

fn output_path(common: &CommonArgs, cfg: &RunConfig) -> Option<PathBuf> {
    common.out.clone().or_else(|| cfg.output.path.clone())
}

fn report(to_file: bool, line: &str) {
    if to_file {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn warn(what: &str, x: f64, err: &mdsrel::Error) {
    eprintln!("warning: {what} at x = {}: {err}; writing nan", format_number(x));
}

/// One quantity at one age.
pub fn evaluate(v: &Validated, quantity: Quantity, x: f64) -> mdsrel::Result<f64> {
    match quantity {
        Quantity::ComponentHazard => multidim_mu_c(x, &v.array, &v.model),
        Quantity::ArrayHazard => array_hazard(x, &v.array, &v.model),
        Quantity::Survival => system_survival(x, &v.array, &v.model),
        Quantity::Density => array_density(x, &v.array, &v.model),
        Quantity::LowerBound => array_lower_bound(x, &v.array, &v.model),
        Quantity::BaseHazard => mdsrel::reliability(&v.model, x).map(|_| v.model.hazard(x)),
    }
}

/// The `x_hours,<quantity>` table over the configured grid.
pub fn curve_table(v: &Validated, quantity: Quantity) -> Table {
    let mut table = Table::new(["x_hours", quantity.column()]);
    for &x in v.grid.points() {
        let value = evaluate(v, quantity, x).unwrap_or_else(|e| {
            warn(quantity.column(), x, &e);
            f64::NAN
        });
        table.push(vec![x, value]);
    }
    table
}

pub fn curve(args: &CurveArgs) -> Result<(), CliError> {
    let (cfg, v) = load(&args.common)?;
    let quantity = args
        .quantity
        .or(cfg.output.quantity)
        .unwrap_or(Quantity::ComponentHazard);
    curve_table(&v, quantity).emit(output_path(&args.common, &cfg).as_deref())
}

pub fn mttf(args: &CommonArgs) -> Result<(), CliError> {
    let (cfg, v) = load(args)?;
    let eps = cfg.mttf.as_ref().map_or(DEFAULT_TRUNCATION_EPS, |m| m.truncation_eps);
    let cap = *v.grid.points().last().expect("grids are non-empty");
    let survival = |x: f64| system_survival(x, &v.array, &v.model).unwrap_or(f64::NAN);
    let est = mttf_within(survival, eps, cap).map_err(|e| match e {
        mdsrel::Error::NonConvergence { .. } => CliError::Numeric(format!(
            "{e}; survival at grid.end = {} h is {}, above mttf.truncation_eps = {}; raise grid.end",
            format_number(cap),
            format_number(survival(cap)),
            format_number(eps)
        )),
        mdsrel::Error::Domain { .. } => CliError::Config(format!("mttf.truncation_eps: {e}")),
        other => other.into(),
    })?;
    let rate = afr(est.mttf)?;

    let mut table = Table::new(["mttf_hours", "afr", "horizon_hours", "tail_hours"]);
    table.push(vec![est.mttf, rate, est.horizon, est.tail]);
    let path = output_path(args, &cfg);
    table.emit(path.as_deref())?;
    let to_file = path.is_some();
    report(to_file, &format!("MTTF = {} hours", format_number(est.mttf)));
    report(to_file, &format!("AFR = {}", format_number(rate)));
    Ok(())
}

/// Rows `r, finite_n_mu_c, asymptotic_mu_c, lower_bound` at the age where
/// `R = 1/q`.
pub fn asymptotic_table(v: &Validated, q: f64, n: u64, rates: &[f64]) -> Result<Table, CliError> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(CliError::Config(format!("asymptotic.q: must exceed 1, got {q}")));
    }
    let codes = rates
        .iter()
        .map(|&r| {
            MdsCode::with_rate(n, r).map_err(|_| {
                CliError::Config(format!("asymptotic.rates: rate {r} gives a non-integer k for n = {n}"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let a = solve_time_for_q(&v.model, q)?;
    let lambda = v.model.hazard(a);
    let mut table = Table::new(["r", "finite_n_mu_c", "asymptotic_mu_c", "lower_bound"]);
    for code in codes {
        let r = code.rate();
        let finite = mu_c(a, &code, &v.model).unwrap_or_else(|e| {
            warn("finite_n_mu_c", a, &e);
            f64::NAN
        });
        table.push(vec![
            r,
            finite,
            asymptotic_mu_c(q, r, lambda)?,
            mu_c_lower_bound(a, &code, &v.model)?,
        ]);
    }
    Ok(table)
}

pub fn asymptotic(args: &AsymptoticArgs) -> Result<(), CliError> {
    let (cfg, v) = load(&args.common)?;
    let section = cfg.asymptotic.clone().unwrap_or_default();
    let q = args
        .q
        .or(section.q)
        .ok_or_else(|| CliError::Config("asymptotic.q: missing; set it or pass --q".into()))?;
    let n = section.n.unwrap_or(v.array.dims()[0].n());
    if n == 0 {
        return Err(CliError::Config("asymptotic.n: must be positive".into()));
    }
    let rates = args
        .rates
        .clone()
        .or(section.rates)
        .unwrap_or_else(|| (1..=n).map(|k| k as f64 / n as f64).collect());
    if rates.is_empty() {
        return Err(CliError::Config("asymptotic.rates: empty list".into()));
    }
    asymptotic_table(&v, q, n, &rates)?.emit(output_path(&args.common, &cfg).as_deref())
}

pub fn simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let (cfg, v) = load(&args.common)?;
    let section = cfg.simulation.as_ref();
    let trials = args
        .trials
        .or(section.map(|s| s.trials))
        .ok_or_else(|| CliError::Config("simulation.trials: missing; set it or pass --trials".into()))?;
    let seed = args
        .seed
        .or(section.map(|s| s.seed))
        .ok_or_else(|| CliError::Config("simulation.seed: missing; set it or pass --seed".into()))?;
    if trials == 0 {
        return Err(CliError::Config("simulation.trials: must be at least 1".into()));
    }
    let sim = SimConfig {
        config: v.array.clone(),
        model: v.model.clone(),
        trials,
        seed,
        grid: v.grid.clone(),
    };
    let options = SimOptions {
        execution: if args.serial { Execution::Serial } else { Execution::Parallel },
        ..SimOptions::default()
    };
    let out = run_simulation_with(&sim, &options)?;

    let mut table = Table::new(["x_hours", "survival_hat", "half_width_95", "survival_closed_form"]);
    for (i, &x) in out.grid.iter().enumerate() {
        let exact = system_survival(x, &v.array, &v.model).unwrap_or_else(|e| {
            warn("survival_closed_form", x, &e);
            f64::NAN
        });
        table.push(vec![x, out.survival_hat[i], out.half_width_95[i], exact]);
    }
    let path = output_path(&args.common, &cfg);
    table.emit(path.as_deref())?;
    report(
        path.is_some(),
        &format!(
            "mean_system_ttf_hours = {} ± {} (trials = {}, seed = {})",
            format_number(out.mean_system_ttf),
            format_number(out.mean_ttf_stderr),
            out.trials,
            out.seed
        ),
    );
    Ok(())
}

/// Reads the header row of a CSV file.
pub fn read_header(path: &Path) -> Result<Vec<String>, CliError> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let header = reader
        .headers()
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Ok(header.iter().map(str::to_string).collect())
}
