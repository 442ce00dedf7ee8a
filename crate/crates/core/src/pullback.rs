//! Wronskians of fourth order solutions and the fifth order equations they
//! satisfy.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, ratio, LogSeries, PowerSeries, Rat};
use crate::fit::{fit, FitSpec};
use crate::frobenius::{frobenius, FrobeniusBasis};
use crate::ops::ThetaOperator;

/// `w_0 = x W(y_0, y_1)` and `w_1 = x W(y_0, y_2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WronskianPair {
    pub w0: LogSeries,
    pub w1: LogSeries,
}

fn require_order(basis: &FrobeniusBasis, r: usize) -> Result<()> {
    if basis.order() != r {
        return Err(Error::WrongOrder { expected: r, found: basis.order() });
    }
    Ok(())
}

pub fn wronskians(basis: &FrobeniusBasis) -> Result<WronskianPair> {
    require_order(basis, 4)?;
    let y = basis.solutions();
    Ok(WronskianPair { w0: y[0].x_wronskian(&y[1]), w1: y[0].x_wronskian(&y[2]) })
}

/// All five independent wronskians `x W(y_i, y_j)`, ordered by log degree:
/// `(0,1), (0,2), (0,3), (1,3), (2,3)`.
pub fn wronskian_basis(basis: &FrobeniusBasis) -> Result<Vec<LogSeries>> {
    require_order(basis, 4)?;
    let y = basis.solutions();
    Ok([(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
        .iter()
        .map(|&(i, j)| y[i].x_wronskian(&y[j]))
        .collect())
}

/// `exp(-1/2 int h)` where `a_3 = 6/x + h(x)` in the monic `d/dx` form.
fn a3_factor(op4: &ThetaOperator, n: usize) -> Result<PowerSeries> {
    let (v, s) = op4.to_d().a(3).laurent_at_zero(n + 1);
    if v != -1 || s.coeff(0) != rat(6) {
        return Err(Error::NotCheckable(format!(
            "a_3 = x^{v} ({} + ...) is not 6/x plus an analytic function",
            s.coeff(0)
        )));
    }
    let mut s = s;
    s.set_coeff(0, Rat::zero());
    let h = s.shift_down(1).expect("constant term removed");
    h.integral().truncate(n).scale(&ratio(-1, 2)).exp()
}

/// Checks `x W(w_0, w_1) = y_0^2 exp(-1/2 int h)` through `x^{n-1}`, where
/// `a_3 = 6/x + h`; the `6/x` part accounts for the powers of `x` in
/// `|w_0 w_1; w_0' w_1'| = x^2 y_0^2 exp(-1/2 int a_3)`.
pub fn double_wronskian_check(basis: &FrobeniusBasis, op4: &ThetaOperator, n: usize) -> Result<bool> {
    require_order(basis, 4)?;
    if !op4.cond2()? {
        return Err(Error::NotCheckable("condition 2 does not hold".into()));
    }
    let n = n.min(basis.truncation());
    let e = a3_factor(op4, n)?;
    let wr = wronskians(basis)?;
    let lhs = wr.w0.x_wronskian(&wr.w1).truncate(n);
    let y0 = basis.y0().truncate(n);
    let rhs = LogSeries::analytic(y0.mul(&y0).mul(&e));
    Ok(lhs.sub(&rhs).is_zero())
}

fn require_pair(op4: &ThetaOperator, op5: &ThetaOperator) -> Result<()> {
    if op4.order() != 4 {
        return Err(Error::WrongOrder { expected: 4, found: op4.order() });
    }
    if op5.order() != 5 {
        return Err(Error::WrongOrder { expected: 5, found: op5.order() });
    }
    if !op4.is_mum() {
        return Err(Error::NotMum);
    }
    if !op5.cond2_5()? {
        return Err(Error::NotCheckable("the fifth order operator fails condition 2".into()));
    }
    Ok(())
}

/// True iff `op5` annihilates `w_0` and `w_1` of `op4` through `x^{n-1}`.
pub fn verify_pullback_pair(op4: &ThetaOperator, op5: &ThetaOperator, n: usize) -> Result<bool> {
    require_pair(op4, op5)?;
    let wr = wronskians(&frobenius(op4, n)?)?;
    Ok(op5.apply(&wr.w0).vanishes_below(n) && op5.apply(&wr.w1).vanishes_below(n))
}

/// Compares `op5` with the wronskians of `op4` up to a common factor: with
/// `z_0, z_1, z_2` the first Frobenius solutions of `op5` and
/// `w_0, w_1, w_2 = x W(y_0, y_1), x W(y_0, y_2), x W(y_0, y_3)`, checks
/// `z_k w_0 = z_0 w_k` for `k = 1, 2` through `x^{n-1}`. Equal ratios mean the
/// same mirror map and Yukawa coupling. Returns `f = z_0 / w_0` on success.
pub fn pullback_factor(op4: &ThetaOperator, op5: &ThetaOperator, n: usize) -> Result<Option<PowerSeries>> {
    require_pair(op4, op5)?;
    let w = wronskian_basis(&frobenius(op4, n)?)?;
    let z = frobenius(op5, n)?.solutions();
    let ok = (1..3).all(|k| z[k].mul(&w[0]).sub(&z[0].mul(&w[k])).is_zero());
    if !ok {
        return Ok(None);
    }
    let f = z[0].part(0).div(&w[0].part(0))?;
    Ok(Some(f))
}

/// Best-effort construction of a fourth order operator from `op5`: the
/// square root of `x W(z_0, z_1)` is fitted at order four over degrees up to
/// `p_max`. Fails cleanly with [`Error::GridExhausted`].
pub fn derive_pullback(op5: &ThetaOperator, n: usize, p_max: usize) -> Result<ThetaOperator> {
    if op5.order() != 5 {
        return Err(Error::WrongOrder { expected: 5, found: op5.order() });
    }
    let z = frobenius(op5, n)?.solutions();
    let w = z[0].x_wronskian(&z[1]);
    if w.log_degree().is_some_and(|d| d > 0) {
        return Err(Error::NotCheckable("x W(z_0, z_1) is not log-free".into()));
    }
    let w = w.part(0);
    if w.coeff(0) != Rat::one() {
        return Err(Error::NotCheckable("x W(z_0, z_1) does not start with 1".into()));
    }
    let root = w.log()?.scale(&ratio(1, 2)).exp()?;
    let seq = root.into_coeffs();
    for p in 0..=p_max {
        let spec = FitSpec::new(4, p);
        if spec.terms_needed() > seq.len() {
            break;
        }
        if let Some(op) = fit(&seq, &spec)?.operator {
            return Ok(op);
        }
    }
    Err(Error::GridExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_four_wronskians() {
        let op = ThetaOperator::theta_power(4);
        let basis = frobenius(&op, 10).unwrap();
        let wr = wronskians(&basis).unwrap();
        assert_eq!(wr.w0, LogSeries::analytic(PowerSeries::one(10)));
        assert_eq!(wr.w1, LogSeries::log_power(1, 10));
        assert!(double_wronskian_check(&basis, &op, 10).unwrap());
        assert!(verify_pullback_pair(&op, &ThetaOperator::theta_power(5), 10).unwrap());
    }

    #[test]
    fn hypergeometric_double_wronskian() {
        let op = ThetaOperator::parse_expr("θ^4 − 2985984x(θ+1/12)(θ+5/12)(θ+7/12)(θ+11/12)").unwrap();
        let basis = frobenius(&op, 30).unwrap();
        assert_eq!(wronskians(&basis).unwrap().w0.part(0).coeff(0), rat(1));
        assert!(double_wronskian_check(&basis, &op, 30).unwrap());
    }

    #[test]
    fn rejects_failing_condition() {
        let op = ThetaOperator::parse_expr("θ^4 − x(θ^3+1)").unwrap();
        let basis = frobenius(&op, 8).unwrap();
        assert!(matches!(double_wronskian_check(&basis, &op, 8), Err(Error::NotCheckable(_))));
    }
}
