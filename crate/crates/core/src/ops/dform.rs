use std::fmt;

use num_traits::{One, Zero};

use super::ThetaOperator;
use crate::error::{Error, Result};
use crate::exact::{rat, stirling2_row, Poly, PowerSeries, Rat};

/// A rational function `num / den` in `x`, reduced with a monic denominator.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading();
        Ok(RatFunc {
            num: num.scale(&(Rat::one() / &lead)),
            den: den.monic(),
        })
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::new(num, &self.den * &o.den).unwrap()
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn derivative(&self) -> RatFunc {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(num, &self.den * &self.den).unwrap()
    }

    /// Laurent expansion at 0: returns `(v, s)` with `self = x^v * s(x)`,
    /// `s` a power series of truncation `n` and `s(0) != 0` (v = 0 for zero).
    pub fn laurent_at_zero(&self, n: usize) -> (i64, PowerSeries) {
        if self.is_zero() {
            return (0, PowerSeries::zero(n));
        }
        let vn = self.num.valuation().unwrap();
        let vd = self.den.valuation().unwrap();
        let num = PowerSeries::new(self.num.coeffs()[vn..].to_vec(), n);
        let den = PowerSeries::new(self.den.coeffs()[vd..].to_vec(), n);
        (vn as i64 - vd as i64, num.div(&den).expect("unit constant term"))
    }
}

impl PartialEq for RatFunc {
    /// Equality by cross-multiplication.
    fn eq(&self, o: &RatFunc) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

/// Monic operator `y^(r) + a_{r-1} y^(r-1) + ... + a_0 y` in `d/dx` form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DOperator {
    coeffs: Vec<RatFunc>,
}

impl DOperator {
    /// From `a_0 .. a_{r-1}`.
    pub fn new(coeffs: Vec<RatFunc>) -> Self {
        DOperator { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_j`, the coefficient of `y^(j)`; `a_r = 1`.
    pub fn a(&self, j: usize) -> RatFunc {
        if j == self.coeffs.len() {
            RatFunc::constant(Rat::one())
        } else {
            self.coeffs[j].clone()
        }
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }
}

impl ThetaOperator {
    /// Polynomial coefficients `Q_j(x)` of `sum_j Q_j(x) (d/dx)^j`, using
    /// `theta^k = sum_j S(k, j) x^j (d/dx)^j`.
    pub fn d_form_polys(&self) -> Vec<Poly> {
        let r = self.order();
        let mut q = vec![Poly::zero(); r + 1];
        for (i, row) in self.rows().iter().enumerate() {
            for (k, c) in row.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, s) in stirling2_row(k).into_iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    let term = Poly::monomial(i + j, c * Rat::from_integer(s));
                    q[j] = &q[j] + &term;
                }
            }
        }
        q
    }

    pub fn to_d(&self) -> DOperator {
        let q = self.d_form_polys();
        let r = q.len() - 1;
        let lead = q[r].clone();
        DOperator::new(
            q[..r]
                .iter()
                .map(|p| RatFunc::new(p.clone(), lead.clone()).unwrap())
                .collect(),
        )
    }

    /// Inverse of [`ThetaOperator::to_d`]: clears denominators, writes
    /// `x^j (d/dx)^j` as the falling factorial `theta (theta-1) ... (theta-j+1)`
    /// and multiplies through by the power of `x` that makes every row polynomial.
    pub fn from_d(op: &DOperator) -> Result<ThetaOperator> {
        let r = op.order();
        if r == 0 {
            return Err(Error::NotConvertible("order zero operator".into()));
        }
        let mut den = Poly::one();
        for j in 0..=r {
            let d = op.a(j).den().clone();
            let g = den.gcd(&d);
            den = (&den * &d).div_rem(&g).0;
        }
        let q: Vec<Poly> = (0..=r)
            .map(|j| {
                let a = op.a(j);
                let (k, rem) = den.div_rem(a.den());
                debug_assert!(rem.is_zero());
                &a.num().clone() * &k
            })
            .collect();
        ThetaOperator::from_d_polys(&q)
    }

    /// The operator `sum_j Q_j(x) (d/dx)^j`, left-multiplied by the least
    /// power of `x` that makes it a theta-operator.
    pub fn from_d_polys(q: &[Poly]) -> Result<ThetaOperator> {
        // x^s * Q_j(x) * x^{-j} must be a polynomial for every j.
        let s = q
            .iter()
            .enumerate()
            .filter_map(|(j, p)| p.valuation().map(|v| j as i64 - v as i64))
            .max()
            .unwrap_or(0)
            .max(0) as usize;
        let width = q.iter().filter_map(Poly::degree).max().unwrap_or(0) + s + 1;
        let mut rows = vec![Poly::zero(); width];
        for (j, p) in q.iter().enumerate() {
            let ff = falling_factorial(j);
            for (e, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let i = e + s - j;
                rows[i] = &rows[i] + &ff.scale(c);
            }
        }
        ThetaOperator::new(rows)
    }

    /// Calabi-Yau condition for order four:
    /// `a_1 = a_2 a_3 / 2 - a_3^3 / 8 + a_2' - 3 a_3 a_3' / 4 - a_3'' / 2`,
    /// checked after multiplying by `8 Q^3`, where `a_j = Q_j / Q`.
    pub fn cond2(&self) -> Result<bool> {
        if self.order() != 4 {
            return Err(Error::WrongOrder { expected: 4, found: self.order() });
        }
        let q = self.d_form_polys();
        let c = Cleared::new(&q[4]);
        let (q1, q2, q3) = (&q[1], &q[2], &q[3]);
        let lhs = (&(q1 * &c.q) * &c.q).scale(&rat(8));
        let rhs = &(&(&(&(&(q2 * q3) * &c.q).scale(&rat(4)) - &(&(q3 * q3) * q3))
            + &(&c.d1(q2) * &c.q).scale(&rat(8)))
            - &(q3 * &c.d1(q3)).scale(&rat(6)))
            - &c.d2(q3).scale(&rat(4));
        Ok(lhs == rhs)
    }

    /// The order-five analogue:
    /// `b_2 = 3 b_3 b_4 / 5 - 4 b_4^3 / 25 + 3 b_3' / 2 - 6 b_4 b_4' / 5 - b_4''`,
    /// checked after multiplying by `50 Q^3`, where `b_j = Q_j / Q`.
    pub fn cond2_5(&self) -> Result<bool> {
        if self.order() != 5 {
            return Err(Error::WrongOrder { expected: 5, found: self.order() });
        }
        let q = self.d_form_polys();
        let c = Cleared::new(&q[5]);
        let (q2, q3, q4) = (&q[2], &q[3], &q[4]);
        let lhs = (&(q2 * &c.q) * &c.q).scale(&rat(50));
        let rhs = &(&(&(&(&(q3 * q4) * &c.q).scale(&rat(30)) - &(&(q4 * q4) * q4).scale(&rat(8)))
            + &(&c.d1(q3) * &c.q).scale(&rat(75)))
            - &(q4 * &c.d1(q4)).scale(&rat(60)))
            - &c.d2(q4).scale(&rat(50));
        Ok(lhs == rhs)
    }
}

/// Derivatives of `p / q` with the denominators `q^2` and `q^3` cleared.
struct Cleared {
    q: Poly,
    q1: Poly,
    q2: Poly,
}

impl Cleared {
    fn new(q: &Poly) -> Self {
        let q1 = q.derivative();
        let q2 = q1.derivative();
        Cleared { q: q.clone(), q1, q2 }
    }

    /// `q^2 (p/q)'`.
    fn d1(&self, p: &Poly) -> Poly {
        &(&p.derivative() * &self.q) - &(p * &self.q1)
    }

    /// `q^3 (p/q)''`.
    fn d2(&self, p: &Poly) -> Poly {
        let p1 = p.derivative();
        let p2 = p1.derivative();
        let qq = &self.q * &self.q;
        let a = &(&p2 * &qq) - &(&(&p1 * &self.q1) * &self.q).scale(&rat(2));
        let b = &(&(p * &self.q2) * &self.q) - &(&(p * &self.q1) * &self.q1).scale(&rat(2));
        &a - &b
    }
}

/// `t (t-1) ... (t-j+1)`.
fn falling_factorial(j: usize) -> Poly {
    (0..j).fold(Poly::one(), |acc, k| &acc * &Poly::linear(rat(1), rat(-(k as i64))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    /// Condition 2 evaluated on reduced rational functions.
    fn cond2_rational(op: &ThetaOperator) -> bool {
        let d = op.to_d();
        let (a1, a2, a3) = (d.a(1), d.a(2), d.a(3));
        let a3p = a3.derivative();
        let rhs = a2
            .mul(&a3)
            .scale(&ratio(1, 2))
            .sub(&a3.mul(&a3).mul(&a3).scale(&ratio(1, 8)))
            .add(&a2.derivative())
            .sub(&a3.mul(&a3p).scale(&ratio(3, 4)))
            .sub(&a3p.derivative().scale(&ratio(1, 2)));
        a1 == rhs
    }

    fn cond2_5_rational(op: &ThetaOperator) -> bool {
        let d = op.to_d();
        let (b2, b3, b4) = (d.a(2), d.a(3), d.a(4));
        let b4p = b4.derivative();
        let rhs = b3
            .mul(&b4)
            .scale(&ratio(3, 5))
            .sub(&b4.mul(&b4).mul(&b4).scale(&ratio(4, 25)))
            .add(&b3.derivative().scale(&ratio(3, 2)))
            .sub(&b4.mul(&b4p).scale(&ratio(6, 5)))
            .sub(&b4p.derivative());
        b2 == rhs
    }

    #[test]
    fn cleared_conditions_match_rational_route() {
        for id in ["14", "133", "34", "366", "hyp5pb", "hyp5pb-printed", "32pb", "198-printed"] {
            let op = crate::catalog::operator(id).unwrap();
            assert_eq!(op.cond2().unwrap(), cond2_rational(&op), "{id}");
        }
        for id in ["zud5", "hyp5"] {
            let op = crate::catalog::operator(id).unwrap();
            assert!(op.cond2_5().unwrap() && cond2_5_rational(&op), "{id}");
        }
        let bad5 = ThetaOperator::parse_expr("θ^5 − x(θ^5+θ+1)").unwrap();
        assert_eq!(bad5.cond2_5().unwrap(), cond2_5_rational(&bad5));
    }

    #[test]
    fn stirling_conversion() {
        let q = ThetaOperator::theta_power(2).d_form_polys();
        assert_eq!(q, vec![Poly::zero(), Poly::from_ints(&[0, 1]), Poly::from_ints(&[0, 0, 1])]);
        let q = ThetaOperator::theta_power(3).d_form_polys();
        assert_eq!(q[1], Poly::from_ints(&[0, 1]));
        assert_eq!(q[2], Poly::from_ints(&[0, 0, 3]));
        assert_eq!(q[3], Poly::from_ints(&[0, 0, 0, 1]));
    }

    #[test]
    fn round_trip() {
        let op = ThetaOperator::from_int_rows(&[&[0, 0, 0, 1], &[-5, -21, -33, -22], &[125, 375, 375, 125]]).unwrap();
        assert_eq!(ThetaOperator::from_d(&op.to_d()).unwrap(), op);
        let t4 = ThetaOperator::theta_power(4);
        assert_eq!(ThetaOperator::from_d(&t4.to_d()).unwrap(), t4);
    }

    #[test]
    fn rational_functions() {
        let a = RatFunc::new(Poly::from_ints(&[0, 2]), Poly::from_ints(&[0, 0, 4])).unwrap();
        assert_eq!(a.num(), &Poly::new(vec![ratio(1, 2)]));
        assert_eq!(a.den(), &Poly::from_ints(&[0, 1]));
        // (1/x)' = -1/x^2
        let d = a.derivative();
        assert_eq!(d, RatFunc::new(Poly::from_ints(&[-1]), Poly::from_ints(&[0, 0, 2])).unwrap());
        let (v, s) = RatFunc::new(Poly::from_ints(&[6]), Poly::from_ints(&[0, 1, -1])).unwrap().laurent_at_zero(4);
        assert_eq!(v, -1);
        assert_eq!(s, PowerSeries::from_ints(&[6, 6, 6, 6], 4));
    }

    #[test]
    fn trivial_conditions() {
        assert_eq!(ThetaOperator::theta_power(4).cond2(), Ok(true));
        assert_eq!(ThetaOperator::theta_power(5).cond2_5(), Ok(true));
        let bad4 = ThetaOperator::from_int_rows(&[&[0, 0, 0, 0, 1], &[0, 0, 0, -1]]).unwrap();
        assert_eq!(bad4.cond2(), Ok(false));
        let bad5 = ThetaOperator::from_int_rows(&[&[0, 0, 0, 0, 0, 1], &[0, 0, 0, 0, -1]]).unwrap();
        assert_eq!(bad5.cond2_5(), Ok(false));
        assert!(ThetaOperator::theta_power(3).cond2().is_err());
    }
}
