use std::fmt;

use num_traits::{One, Zero};

use super::{fmt_rat, rat, Rat};
use crate::error::{Error, Result};

/// Truncated power series `c_0 + c_1 x + ... + c_{N-1} x^{N-1} + O(x^N)`.
///
/// The coefficient vector always has exactly `N` entries. Binary operations
/// truncate to the smaller of the two operands' orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rat>,
}

impl PowerSeries {
    /// Builds a series of truncation `n`, padding or cutting `coeffs`.
    pub fn new(mut coeffs: Vec<Rat>, n: usize) -> Self {
        coeffs.resize(n, Rat::zero());
        PowerSeries { coeffs }
    }

    pub fn from_ints(cs: &[i64], n: usize) -> Self {
        PowerSeries::new(cs.iter().map(|&c| rat(c)).collect(), n)
    }

    pub fn zero(n: usize) -> Self {
        PowerSeries::new(Vec::new(), n)
    }

    pub fn one(n: usize) -> Self {
        PowerSeries::new(vec![Rat::one()], n)
    }

    /// The series `x`.
    pub fn x(n: usize) -> Self {
        PowerSeries::new(vec![Rat::zero(), Rat::one()], n)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set_coeff(&mut self, k: usize, c: Rat) {
        if k < self.coeffs.len() {
            self.coeffs[k] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, n: usize) -> PowerSeries {
        PowerSeries::new(self.coeffs[..n.min(self.coeffs.len())].to_vec(), n.min(self.coeffs.len()))
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.truncation().min(other.truncation());
        PowerSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.truncation().min(other.truncation());
        PowerSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn neg(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.truncation().min(other.truncation());
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: out }
    }

    pub fn div(&self, other: &PowerSeries) -> Result<PowerSeries> {
        let b0 = other.coeff(0);
        if b0.is_zero() {
            return Err(Error::DivisionByNonUnit);
        }
        let n = self.truncation().min(other.truncation());
        let inv0 = Rat::one() / b0;
        let mut out: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                let b = &other.coeffs[j];
                if !b.is_zero() {
                    acc -= b * &out[k - j];
                }
            }
            out.push(acc * &inv0);
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `self(inner(x))`; the inner series must have zero constant term.
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::CompositionConstantTerm);
        }
        let n = self.truncation().min(inner.truncation());
        let inner = inner.truncate(n);
        let mut acc = PowerSeries::zero(n);
        for c in self.coeffs[..n].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Formal derivative; the truncation drops by one.
    pub fn derivative(&self) -> PowerSeries {
        let n = self.truncation().saturating_sub(1);
        PowerSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k + 1] * rat(k as i64 + 1)).collect(),
        }
    }

    /// Antiderivative with zero constant term; the truncation grows by one.
    pub fn integral(&self) -> PowerSeries {
        let mut out = vec![Rat::zero()];
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / rat(k as i64 + 1)),
        );
        PowerSeries { coeffs: out }
    }

    /// Euler derivative `x d/dx`, which keeps the truncation.
    pub fn theta(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        }
    }

    /// Multiply by `x^k` (same truncation; top coefficients fall off).
    pub fn shift_up(&self, k: usize) -> PowerSeries {
        let n = self.truncation();
        let mut v = vec![Rat::zero(); k.min(n)];
        v.extend(self.coeffs.iter().take(n.saturating_sub(k)).cloned());
        PowerSeries { coeffs: v }
    }

    /// Divide by `x^k`; the lowest `k` coefficients must vanish. The
    /// truncation shrinks by `k`.
    pub fn shift_down(&self, k: usize) -> Option<PowerSeries> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(PowerSeries {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    pub fn exp(&self) -> Result<PowerSeries> {
        if !self.coeff(0).is_zero() {
            return Err(Error::ExpConstantTerm);
        }
        let n = self.truncation();
        let mut g: Vec<Rat> = Vec::with_capacity(n);
        if n == 0 {
            return Ok(PowerSeries { coeffs: g });
        }
        g.push(Rat::one());
        // n g_n = sum_{k=1}^{n} k f_k g_{n-k}
        for m in 1..n {
            let mut acc = Rat::zero();
            for k in 1..=m {
                let f = &self.coeffs[k];
                if !f.is_zero() {
                    acc += f * rat(k as i64) * &g[m - k];
                }
            }
            g.push(acc / rat(m as i64));
        }
        Ok(PowerSeries { coeffs: g })
    }

    pub fn log(&self) -> Result<PowerSeries> {
        if self.truncation() > 0 && !self.coeff(0).is_one() {
            return Err(Error::LogConstantTerm);
        }
        let n = self.truncation();
        let mut l = vec![Rat::zero(); n];
        // n l_n = n a_n - sum_{k=1}^{n-1} k l_k a_{n-k}
        for m in 1..n {
            let mut acc = &self.coeffs[m] * rat(m as i64);
            for k in 1..m {
                if !l[k].is_zero() {
                    acc -= &l[k] * rat(k as i64) * &self.coeffs[m - k];
                }
            }
            l[m] = acc / rat(m as i64);
        }
        Ok(PowerSeries { coeffs: l })
    }

    /// Compositional inverse of `x + O(x^2)` by Lagrange inversion:
    /// `[x^n] b = (1/n) [x^{n-1}] (x / a)^n`. The result is checked by
    /// back-substitution before it is returned.
    pub fn revert(&self) -> Result<PowerSeries> {
        let n = self.truncation();
        if n < 2 || !self.coeff(0).is_zero() || !self.coeff(1).is_one() {
            return Err(Error::NotRevertible);
        }
        let a_over_x = self.shift_down(1).ok_or(Error::NotRevertible)?;
        let phi = PowerSeries::one(n - 1).div(&a_over_x)?;
        let mut out = vec![Rat::zero(); n];
        let mut pow = PowerSeries::one(n - 1);
        for m in 1..n {
            pow = pow.mul(&phi);
            out[m] = pow.coeff(m - 1) / rat(m as i64);
        }
        let b = PowerSeries { coeffs: out };
        if self.compose(&b)? != PowerSeries::x(n) {
            return Err(Error::NotRevertible);
        }
        Ok(b)
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(super::is_integral)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => fmt_rat(c),
                1 => format!("{}*x", fmt_rat(c)),
                _ => format!("{}*x^{}", fmt_rat(c), k),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} + O(x^{})", terms.join(" + "), self.truncation())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn difference_of_squares() {
        let a = PowerSeries::from_ints(&[1, 1], 6);
        let b = PowerSeries::from_ints(&[1, -1], 6);
        assert_eq!(a.mul(&b), PowerSeries::from_ints(&[1, 0, -1], 6));
    }

    #[test]
    fn geometric_series() {
        let r = PowerSeries::one(8)
            .div(&PowerSeries::from_ints(&[1, -1], 8))
            .unwrap();
        assert_eq!(r, PowerSeries::from_ints(&[1; 8], 8));
        assert_eq!(
            PowerSeries::one(4).div(&PowerSeries::x(4)),
            Err(Error::DivisionByNonUnit)
        );
    }

    #[test]
    fn truncation_is_min() {
        let a = PowerSeries::one(5);
        let b = PowerSeries::one(3);
        assert_eq!(a.mul(&b).truncation(), 3);
        assert_eq!(a.add(&b).truncation(), 3);
    }

    #[test]
    fn exp_of_log_one_plus_x() {
        let l = PowerSeries::from_ints(&[1, 1], 10).log().unwrap();
        // Mercator series
        for k in 1..10 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(l.coeff(k), ratio(sign, k as i64));
        }
        assert_eq!(l.exp().unwrap(), PowerSeries::from_ints(&[1, 1], 10));
        assert_eq!(PowerSeries::zero(5).exp().unwrap(), PowerSeries::one(5));
        assert_eq!(PowerSeries::one(3).exp(), Err(Error::ExpConstantTerm));
        assert_eq!(PowerSeries::x(3).log(), Err(Error::LogConstantTerm));
    }

    #[test]
    fn exp_of_x_plus_x2() {
        // f = x + x^2: g' = (1 + 2x) g gives 1, 1, 3/2, 7/6, 25/24
        let g = PowerSeries::from_ints(&[0, 1, 1], 5).exp().unwrap();
        let want = vec![rat(1), rat(1), ratio(3, 2), ratio(7, 6), ratio(25, 24)];
        assert_eq!(g.coeffs(), &want[..]);
    }

    #[test]
    fn compose_exp_with_log() {
        let exp_minus_one = PowerSeries::zero(8)
            .exp()
            .unwrap();
        assert_eq!(exp_minus_one, PowerSeries::one(8));
        let e = PowerSeries::x(8).exp().unwrap();
        let log1px = PowerSeries::from_ints(&[1, 1], 8).log().unwrap();
        assert_eq!(e.compose(&log1px).unwrap(), PowerSeries::from_ints(&[1, 1], 8));
        assert_eq!(
            e.compose(&PowerSeries::one(8)),
            Err(Error::CompositionConstantTerm)
        );
    }

    #[test]
    fn reversion() {
        assert_eq!(PowerSeries::x(6).revert().unwrap(), PowerSeries::x(6));
        // Catalan numbers with alternating sign
        let b = PowerSeries::from_ints(&[0, 1, 1], 6).revert().unwrap();
        assert_eq!(b, PowerSeries::from_ints(&[0, 1, -1, 2, -5, 14], 6));
        let a = PowerSeries::new(vec![rat(0), rat(1), ratio(3, 7)], 9);
        assert_eq!(a.revert().unwrap().revert().unwrap(), a);
        assert_eq!(PowerSeries::from_ints(&[0, 2], 4).revert(), Err(Error::NotRevertible));
    }

    #[test]
    fn derivative_and_integral() {
        let a = PowerSeries::from_ints(&[3, 1, 4, 1, 5], 5);
        assert_eq!(a.derivative().integral().truncate(5).coeff(2), rat(4));
        assert_eq!(a.theta().coeff(4), rat(20));
        assert_eq!(a.shift_up(2).coeff(2), rat(3));
        assert_eq!(a.shift_up(2).shift_down(2).unwrap().coeff(0), rat(3));
    }
}
