use num_traits::Zero;

use super::{binom_i, PowerSeries, Rat};

/// A series with logarithms, `sum_j (log^j x / j!) * f_j(x)`.
///
/// Every part shares one truncation. The top part is kept nonzero, so the
/// zero log-series has no parts at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    parts: Vec<PowerSeries>,
    truncation: usize,
}

impl LogSeries {
    pub fn new(parts: Vec<PowerSeries>) -> Self {
        let truncation = parts.iter().map(PowerSeries::truncation).min().unwrap_or(0);
        Self::with_truncation(parts, truncation)
    }

    pub fn with_truncation(parts: Vec<PowerSeries>, truncation: usize) -> Self {
        let mut parts: Vec<PowerSeries> = parts.into_iter().map(|p| p.truncate(truncation)).collect();
        while parts.last().is_some_and(PowerSeries::is_zero) {
            parts.pop();
        }
        LogSeries { parts, truncation }
    }

    pub fn zero(truncation: usize) -> Self {
        LogSeries { parts: Vec::new(), truncation }
    }

    /// A log-free series.
    pub fn analytic(f: PowerSeries) -> Self {
        LogSeries::new(vec![f])
    }

    /// `log^k(x)/k!` (as a series in x, i.e. only the `k`-th part is 1).
    pub fn log_power(k: usize, truncation: usize) -> Self {
        let mut parts = vec![PowerSeries::zero(truncation); k];
        parts.push(PowerSeries::one(truncation));
        LogSeries::with_truncation(parts, truncation)
    }

    pub fn parts(&self) -> &[PowerSeries] {
        &self.parts
    }

    /// The coefficient series of `log^j / j!` (zero if absent).
    pub fn part(&self, j: usize) -> PowerSeries {
        self.parts
            .get(j)
            .cloned()
            .unwrap_or_else(|| PowerSeries::zero(self.truncation))
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Highest power of `log x` present; `None` for zero.
    pub fn log_degree(&self) -> Option<usize> {
        self.parts.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn truncate(&self, n: usize) -> LogSeries {
        LogSeries::with_truncation(self.parts.clone(), n.min(self.truncation))
    }

    pub fn add(&self, other: &LogSeries) -> LogSeries {
        let n = self.truncation.min(other.truncation);
        let m = self.parts.len().max(other.parts.len());
        let parts = (0..m)
            .map(|j| self.part(j).truncate(n).add(&other.part(j).truncate(n)))
            .collect();
        LogSeries::with_truncation(parts, n)
    }

    pub fn sub(&self, other: &LogSeries) -> LogSeries {
        self.add(&other.scale(&-Rat::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rat) -> LogSeries {
        LogSeries::with_truncation(self.parts.iter().map(|p| p.scale(c)).collect(), self.truncation)
    }

    pub fn mul_series(&self, f: &PowerSeries) -> LogSeries {
        let n = self.truncation.min(f.truncation());
        LogSeries::with_truncation(self.parts.iter().map(|p| p.truncate(n).mul(f)).collect(), n)
    }

    /// Product, using `(L^j/j!)(L^k/k!) = binom(j+k, j) L^{j+k}/(j+k)!`.
    pub fn mul(&self, other: &LogSeries) -> LogSeries {
        let n = self.truncation.min(other.truncation);
        if self.is_zero() || other.is_zero() {
            return LogSeries::zero(n);
        }
        let m = self.parts.len() + other.parts.len() - 1;
        let mut parts = vec![PowerSeries::zero(n); m];
        for (j, f) in self.parts.iter().enumerate() {
            for (k, g) in other.parts.iter().enumerate() {
                let term = f.truncate(n).mul(&g.truncate(n)).scale(&binom_i((j + k) as i64, j as i64));
                parts[j + k] = parts[j + k].add(&term);
            }
        }
        LogSeries::with_truncation(parts, n)
    }

    /// Euler derivative: `theta(L^j/j! f) = L^j/j! theta f + L^{j-1}/(j-1)! f`.
    pub fn theta(&self) -> LogSeries {
        let parts = (0..self.parts.len())
            .map(|j| {
                let t = self.parts[j].theta();
                match self.parts.get(j + 1) {
                    Some(next) => t.add(next),
                    None => t,
                }
            })
            .collect();
        LogSeries::with_truncation(parts, self.truncation)
    }

    /// `x * W(self, other) = self * theta(other) - other * theta(self)`.
    pub fn x_wronskian(&self, other: &LogSeries) -> LogSeries {
        self.mul(&other.theta()).sub(&other.mul(&self.theta()))
    }

    /// The constant terms of every part, lowest log power first.
    pub fn constant_terms(&self) -> Vec<Rat> {
        self.parts.iter().map(|p| p.coeff(0)).collect()
    }

    /// True when every part vanishes below `n` (a weaker truncation check).
    pub fn vanishes_below(&self, n: usize) -> bool {
        self.parts
            .iter()
            .all(|p| p.coeffs().iter().take(n).all(Zero::is_zero))
    }
}
