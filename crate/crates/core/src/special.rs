//! Special functions used by the reliability core.
//!
//! Everything that sums binomial terms works in the natural-log domain: for
//! arrays of a few thousand components the individual terms of a binomial
//! CDF are far below the smallest positive `f64`. Throughout the crate the
//! conventions `0^0 = 1` and `0 · ln 0 = 0` hold.

use crate::error::{domain, Error, Result};

/// A probability stored as its natural logarithm.
///
/// `ln(0)` is represented by negative infinity.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogProb(f64);

impl LogProb {
    pub const ZERO: LogProb = LogProb(f64::NEG_INFINITY);
    pub const ONE: LogProb = LogProb(0.0);

    /// Wraps a log-probability. Values a few ulps above zero are rounded down.
    pub fn new(ln: f64) -> Result<Self> {
        if ln.is_nan() || ln > 1e-12 {
            return Err(domain("LogProb::new", format!("{ln} is not a log-probability")));
        }
        Ok(LogProb(ln.min(0.0)))
    }

    pub fn from_prob(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(domain("LogProb::from_prob", format!("{p} is not in [0, 1]")));
        }
        Ok(LogProb(p.ln()))
    }

    #[inline]
    pub fn ln(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn prob(self) -> f64 {
        self.0.exp().clamp(0.0, 1.0)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// `ln(1 - p)`, accurate at both ends of the unit interval.
    pub fn complement(self) -> LogProb {
        LogProb(ln_one_minus_exp(self.0))
    }
}

/// `ln(1 - e^x)` for `x <= 0`.
pub fn ln_one_minus_exp(x: f64) -> f64 {
    if x == 0.0 {
        f64::NEG_INFINITY
    } else if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// `count · ln_value` with `0 · ln 0 = 0`.
#[inline]
pub(crate) fn scaled_log(count: f64, ln_value: f64) -> f64 {
    if count == 0.0 {
        0.0
    } else {
        count * ln_value
    }
}

/// Numerically stable `ln Σ exp(v)`. The empty sum yields `-∞`.
pub fn logsumexp<I>(values: I) -> f64
where
    I: IntoIterator<Item = f64>,
    I::IntoIter: Clone,
{
    let iter = values.into_iter();
    let max = iter.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY || max.is_nan() {
        return max;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let sum: f64 = iter.map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

/// `ln(e^a + e^b)`.
pub fn logaddexp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Natural log of the gamma function for positive arguments.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// `ln C(n, i)`.
pub fn log_binomial(n: u64, i: u64) -> Result<f64> {
    if i > n {
        return Err(domain("log_binomial", format!("i = {i} exceeds n = {n}")));
    }
    Ok(ln_choose(n, i))
}

/// `ln C(n, i)` without the range check; callers guarantee `i <= n`.
pub(crate) fn ln_choose(n: u64, i: u64) -> f64 {
    debug_assert!(i <= n);
    let j = i.min(n - i);
    match j {
        0 => 0.0,
        1 => (n as f64).ln(),
        _ => match exact_choose(n, j) {
            Some(c) => (c as f64).ln(),
            None => ln_gamma(n as f64 + 1.0) - ln_gamma(j as f64 + 1.0) - ln_gamma((n - j) as f64 + 1.0),
        },
    }
}

/// `C(n, j)` when it fits in 64 bits.
fn exact_choose(n: u64, j: u64) -> Option<u64> {
    let mut c: u128 = 1;
    for m in 1..=j as u128 {
        c = c.checked_mul(n as u128 - j as u128 + m)? / m;
        if c > u64::MAX as u128 {
            return None;
        }
    }
    Some(c as u64)
}

const GAMMA_EPS: f64 = 1e-16;
const GAMMA_MAX_ITER: usize = 100_000;

/// Regularized upper incomplete gamma `Γ(a, b) / Γ(a)`.
///
/// Uses the power series for the lower function when `b < a + 1` and a
/// modified-Lentz continued fraction otherwise.
pub fn regularized_upper_gamma(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain("regularized_upper_gamma", format!("a = {a} must be positive")));
    }
    if !(b >= 0.0) {
        return Err(domain("regularized_upper_gamma", format!("b = {b} must be non-negative")));
    }
    if b == 0.0 {
        return Ok(1.0);
    }
    if b == f64::INFINITY {
        return Ok(0.0);
    }
    let ln_prefactor = a * b.ln() - b - ln_gamma(a);
    if b < a + 1.0 {
        let lower = lower_gamma_series(a, b, ln_prefactor)?;
        Ok((1.0 - lower).clamp(0.0, 1.0))
    } else {
        Ok(upper_gamma_fraction(a, b, ln_prefactor)?.clamp(0.0, 1.0))
    }
}

fn lower_gamma_series(a: f64, b: f64, ln_prefactor: f64) -> Result<f64> {
    let mut denom = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..GAMMA_MAX_ITER {
        denom += 1.0;
        term *= b / denom;
        sum += term;
        if term.abs() < sum.abs() * GAMMA_EPS {
            return Ok(sum * ln_prefactor.exp());
        }
    }
    Err(Error::NonConvergence {
        op: "regularized_upper_gamma",
        detail: format!("series did not converge for a = {a}, b = {b}"),
    })
}

fn upper_gamma_fraction(a: f64, b: f64, ln_prefactor: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut beta = b + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / beta;
    let mut h = d;
    for i in 1..GAMMA_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        beta += 2.0;
        d = an * d + beta;
        if d.abs() < TINY {
            d = TINY;
        }
        c = beta + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < GAMMA_EPS {
            return Ok((ln_prefactor + h.ln()).exp());
        }
    }
    Err(Error::NonConvergence {
        op: "regularized_upper_gamma",
        detail: format!("continued fraction did not converge for a = {a}, b = {b}"),
    })
}

/// q-ary entropy `h_q(p)`, in base-q units.
pub fn q_ary_entropy(q: f64, p: f64) -> Result<f64> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(domain("q_ary_entropy", format!("q = {q} must exceed 1")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(domain("q_ary_entropy", format!("p = {p} is not in [0, 1]")));
    }
    let nats = scaled_log(p, (q - 1.0).ln()) - scaled_log(p, p.ln()) - scaled_log(1.0 - p, (1.0 - p).ln());
    Ok(nats / q.ln())
}

/// `ln Σ_{i=0}^{t} C(n, i) (q - 1)^i`, the log-volume of a Hamming ball of
/// radius `t` in an n-dimensional space over an alphabet of size `q`.
///
/// `q` need not be an integer.
pub fn hamming_ball_volume(n: u64, t: u64, q: f64) -> Result<f64> {
    if n == 0 {
        return Err(domain("hamming_ball_volume", "n must be positive"));
    }
    if t > n {
        return Err(domain("hamming_ball_volume", format!("t = {t} exceeds n = {n}")));
    }
    if !(q > 1.0) || !q.is_finite() {
        return Err(domain("hamming_ball_volume", format!("q = {q} must exceed 1")));
    }
    let ln_q1 = (q - 1.0).ln();
    Ok(logsumexp((0..=t).map(|i| ln_choose(n, i) + scaled_log(i as f64, ln_q1))))
}
