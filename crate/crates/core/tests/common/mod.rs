#![allow(dead_code)]

use mdsrel::HazardModel;

/// `ln C(n, i)` by direct summation of logs.
pub fn ln_choose_sum(n: u64, i: u64) -> f64 {
    let j = i.min(n - i);
    (1..=j).map(|m| ((n - j + m) as f64).ln() - (m as f64).ln()).sum()
}

fn lse(values: &[f64]) -> f64 {
    let m = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + values.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
}

/// `(ln S, ln(1 - S))` of a k-out-of-n block whose children have log
/// reliability `ln_r` and log unreliability `ln_f`.
pub fn block_logs(t: u64, n: u64, ln_r: f64, ln_f: f64) -> (f64, f64) {
    let term = |i: u64| {
        let mut v = ln_choose_sum(n, i);
        if i > 0 {
            v += i as f64 * ln_f;
        }
        if n - i > 0 {
            v += (n - i) as f64 * ln_r;
        }
        v
    };
    let alive: Vec<f64> = (0..=t).map(term).collect();
    let dead: Vec<f64> = (t + 1..=n).map(term).collect();
    (lse(&alive), lse(&dead))
}

/// Nested `(ln S, ln(1 - S))` for an array given as `(n, k)` pairs.
pub fn nested_logs(codes: &[(u64, u64)], model: &dyn HazardModel, x: f64) -> (f64, f64) {
    let cum = model.cumulative_hazard(x);
    let mut ln_r = -cum;
    let mut ln_f = if cum > std::f64::consts::LN_2 {
        (-(-cum).exp()).ln_1p()
    } else {
        (-(-cum).exp_m1()).ln()
    };
    for &(n, k) in codes {
        let (a, b) = block_logs(n - k, n, ln_r, ln_f);
        ln_r = a;
        ln_f = b;
    }
    (ln_r, ln_f)
}

/// `-ln S` of the array, accurate even when `S` is within rounding of 1.
pub fn neg_ln_survival(codes: &[(u64, u64)], model: &dyn HazardModel, x: f64) -> f64 {
    let (ln_s, ln_comp) = nested_logs(codes, model, x);
    if ln_comp < -std::f64::consts::LN_2 {
        -(-ln_comp.exp()).ln_1p()
    } else {
        -ln_s
    }
}

/// Finite-difference step used by every derivative oracle.
pub fn fd_step(x: f64) -> f64 {
    (1e-4 * x).max(1e-3)
}

pub fn central_diff<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
    let h = fd_step(x);
    (f(x + h) - f(x - h)) / (2.0 * h)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Composite Simpson rule with `intervals` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, intervals: usize) -> f64 {
    assert!(intervals % 2 == 0);
    let h = (b - a) / intervals as f64;
    let mut s = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// `P(Poisson(mean) <= a - 1)`, the regularized upper gamma at integer `a`.
pub fn poisson_cdf_below(a: u64, mean: f64) -> f64 {
    let mut term = (-mean).exp();
    let mut sum = 0.0;
    for i in 0..a {
        if i > 0 {
            term *= mean / i as f64;
        }
        sum += term;
    }
    sum
}

pub fn log_grid(start: f64, end: f64, points: usize) -> Vec<f64> {
    let (a, b) = (start.ln(), end.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect()
}
