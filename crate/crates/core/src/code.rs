//! Erasure-code geometry per dimension.

use std::fmt;

use crate::error::{domain, Result};

/// An `(n, k)` MDS code: `n` components, `k` of them data, any `t = n - k`
/// erasures correctable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MdsCode {
    n: u64,
    k: u64,
}

impl MdsCode {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        if k == 0 || k > n {
            return Err(domain("MdsCode::new", format!("need 1 <= k <= n, got n = {n}, k = {k}")));
        }
        Ok(MdsCode { n, k })
    }

    /// Code of length `n` and rate `rate`, provided `rate · n` is an integer.
    pub fn with_rate(n: u64, rate: f64) -> Result<Self> {
        let k = rate * n as f64;
        let rounded = k.round();
        if !(rate > 0.0 && rate <= 1.0) || (k - rounded).abs() > 1e-9 * k.max(1.0) {
            return Err(domain(
                "MdsCode::with_rate",
                format!("rate {rate} does not give an integer number of data components for n = {n}"),
            ));
        }
        Self::new(n, rounded as u64)
    }

    /// `(n, 1)` repetition code.
    pub fn repetition(n: u64) -> Result<Self> {
        Self::new(n, 1)
    }

    /// `(n, n - 1)` single-parity code.
    pub fn parity(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(domain("MdsCode::parity", "parity code needs n >= 2"));
        }
        Self::new(n, n - 1)
    }

    #[inline]
    pub fn n(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u64 {
        self.k
    }

    /// Correctable erasures `n - k`; the minimum distance is `t + 1`.
    #[inline]
    pub fn t(&self) -> u64 {
        self.n - self.k
    }

    #[inline]
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

impl fmt::Display for MdsCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.k, self.t() + 1)
    }
}

/// A T-dimensional array: dimension `s` groups `n_s` blocks of dimension
/// `s - 1` under its own MDS code. Dimension 1 groups single components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrayConfig {
    dims: Vec<MdsCode>,
}

impl ArrayConfig {
    pub fn new(dims: Vec<MdsCode>) -> Result<Self> {
        if dims.is_empty() {
            return Err(domain("ArrayConfig::new", "at least one dimension is required"));
        }
        let config = ArrayConfig { dims };
        if config.checked_components().is_none() {
            return Err(domain("ArrayConfig::new", "total component count overflows u64"));
        }
        Ok(config)
    }

    pub fn one_dim(code: MdsCode) -> Self {
        ArrayConfig { dims: vec![code] }
    }

    /// Builds from `(n, k)` pairs.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self> {
        let dims = pairs
            .iter()
            .map(|&(n, k)| MdsCode::new(n, k))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims)
    }

    pub fn dims(&self) -> &[MdsCode] {
        &self.dims
    }

    /// Number of dimensions `T`.
    pub fn depth(&self) -> usize {
        self.dims.len()
    }

    fn checked_components(&self) -> Option<u64> {
        self.dims.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.n()))
    }

    /// `n_{1,s} = ∏_{i<=s} n_i`.
    pub fn components_through(&self, s: usize) -> u64 {
        self.dims[..s].iter().map(MdsCode::n).product()
    }

    /// `k_{1,s} = ∏_{i<=s} k_i`.
    pub fn data_through(&self, s: usize) -> u64 {
        self.dims[..s].iter().map(MdsCode::k).product()
    }

    /// `r_{1,s} = ∏_{i<=s} r_i`.
    pub fn rate_through(&self, s: usize) -> f64 {
        self.data_through(s) as f64 / self.components_through(s) as f64
    }

    /// Total leaf components `n_{1,T}`.
    pub fn components(&self) -> u64 {
        self.components_through(self.depth())
    }

    /// Total data components `k_{1,T}`.
    pub fn data_components(&self) -> u64 {
        self.data_through(self.depth())
    }

    /// Overall rate `r_{1,T}`.
    pub fn rate(&self) -> f64 {
        self.rate_through(self.depth())
    }

    /// The same codes applied in a different order.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.depth() {
            return Err(domain("ArrayConfig::reordered", "order must list every dimension once"));
        }
        let mut seen = vec![false; self.depth()];
        let mut dims = Vec::with_capacity(order.len());
        for &i in order {
            if i >= self.depth() || seen[i] {
                return Err(domain("ArrayConfig::reordered", "order must list every dimension once"));
            }
            seen[i] = true;
            dims.push(self.dims[i]);
        }
        Self::new(dims)
    }
}

impl fmt::Display for ArrayConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
