use std::fmt;

use num_traits::{Signed, Zero};

use super::ThetaOperator;
use crate::error::{Error, Result};
use crate::exact::{content, denom_lcm, rat, Poly, Rat};

/// A linear recurrence `c_0(n) A_{n+q} + c_1(n) A_{n+q-1} + ... + c_q(n) A_n = 0`,
/// written `c_0(n) N^q + ... + c_q(n)` in shift-operator notation.
///
/// Stored in the same canonical form as operators: integer coefficients with
/// content 1 and positive leading coefficient of `c_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Recurrence {
    coeffs: Vec<Poly>,
}

impl Recurrence {
    pub fn new(coeffs: Vec<Poly>) -> Result<Self> {
        // A vanishing c_0 would change the meaning of n, so it is rejected;
        // a vanishing tail just lowers the order.
        if coeffs.first().map_or(true, Poly::is_zero) {
            return Err(Error::Invalid("recurrence needs a nonzero leading coefficient".into()));
        }
        let last = coeffs.iter().rposition(|p| !p.is_zero()).unwrap();
        let coeffs = &coeffs[..=last];
        let den = denom_lcm(coeffs.iter().flat_map(|p| p.coeffs().iter()));
        let scaled: Vec<Poly> = coeffs.iter().map(|p| p.scale(&Rat::from_integer(den.clone()))).collect();
        let nums: Vec<_> = scaled.iter().flat_map(|p| p.coeffs().iter().map(|c| c.to_integer())).collect();
        let mut g = content(nums.iter());
        if scaled[0].leading().is_negative() {
            g = -g;
        }
        let inv = Rat::new(1.into(), g);
        Ok(Recurrence { coeffs: scaled.iter().map(|p| p.scale(&inv)).collect() })
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Order `q` in the shift `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Extends `init` (at least `q` leading terms) to length `len`.
    /// Terms with negative index are zero, and the recurrence is used from
    /// the first `n` with `n + q >= init.len()`.
    pub fn advance(&self, init: &[Rat], len: usize) -> Result<Vec<Rat>> {
        let q = self.order() as i64;
        let mut a: Vec<Rat> = init.to_vec();
        while a.len() < len {
            let m = a.len() as i64;
            let n = m - q;
            let lead = self.coeffs[0].eval_int(n);
            if lead.is_zero() {
                return Err(Error::VanishingLeading(n));
            }
            let mut acc = Rat::zero();
            for (i, c) in self.coeffs.iter().enumerate().skip(1) {
                let k = m - i as i64;
                if k >= 0 {
                    acc += c.eval_int(n) * &a[k as usize];
                }
            }
            a.push(-acc / lead);
        }
        Ok(a)
    }

    /// True iff the recurrence holds for every window fully inside `seq`,
    /// including the ones reaching to negative indices.
    pub fn holds_on(&self, seq: &[Rat]) -> bool {
        let q = self.order() as i64;
        (0..seq.len() as i64).all(|m| {
            let n = m - q;
            let mut acc = Rat::zero();
            for (i, c) in self.coeffs.iter().enumerate() {
                let k = m - i as i64;
                if k >= 0 {
                    acc += c.eval_int(n) * &seq[k as usize];
                }
            }
            acc.is_zero()
        })
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.order();
        writeln!(f, "recurrence order={}", q)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "N^{} {}", q - i, c)?;
        }
        Ok(())
    }
}

impl ThetaOperator {
    /// `c_i(n) = P_i(n + p - i)`.
    pub fn to_recurrence(&self) -> Recurrence {
        let p = self.degree() as i64;
        let coeffs = self
            .rows()
            .iter()
            .enumerate()
            .map(|(i, row)| row.shift(&rat(p - i as i64)))
            .collect();
        Recurrence::new(coeffs).expect("nonzero operator gives a nonzero recurrence")
    }

    /// `P_i(theta) = c_i(theta - p + i)`.
    pub fn from_recurrence(rec: &Recurrence) -> ThetaOperator {
        let p = rec.order() as i64;
        let rows = rec
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c.shift(&rat(i as i64 - p)))
            .collect();
        ThetaOperator::new(rows).expect("nonzero recurrence gives a nonzero operator")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric() {
        // (n+1)(A_{n+1} - A_n) = 0; the factor n+1 makes the relation hold at n = -1 too
        let rec = Recurrence::new(vec![Poly::from_ints(&[1, 1]), Poly::from_ints(&[-1, -1])]).unwrap();
        let op = ThetaOperator::from_recurrence(&rec);
        assert_eq!(op, ThetaOperator::from_int_rows(&[&[0, 1], &[-1, -1]]).unwrap());
        let ones = vec![rat(1); 10];
        assert!(op.annihilates(&ones));
        assert_eq!(op.to_recurrence(), rec);
    }

    #[test]
    fn theta_four() {
        let rec = ThetaOperator::theta_power(4).to_recurrence();
        assert_eq!(rec.order(), 0);
        assert_eq!(rec.coeffs()[0], Poly::from_ints(&[0, 0, 0, 0, 1]));
    }

    #[test]
    fn advance_matches_series_solution() {
        let op = ThetaOperator::from_int_rows(&[&[0, 0, 0, 1], &[-5, -21, -33, -22], &[125, 375, 375, 125]]).unwrap();
        let rec = op.to_recurrence();
        // c_0(n) = (n+2)^3
        assert_eq!(rec.coeffs()[0], Poly::from_ints(&[8, 12, 6, 1]));
        let a = rec.advance(&[rat(1)], 12).unwrap();
        assert_eq!(a, op.series_solution(12).unwrap());
        assert!(rec.holds_on(&a));
    }
}
