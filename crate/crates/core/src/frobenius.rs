//! Frobenius solutions at a point of maximal unipotent monodromy, the mirror
//! map, the Yukawa coupling and instanton numbers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{is_integral, rat, LogSeries, PowerSeries, Rat};
use crate::ops::ThetaOperator;

/// Bound for the search of the common denominator of instanton numbers.
pub const N0_BOUND: u64 = 1_000_000;

/// Frobenius basis `y_k = sum_{j<=k} log^j(x)/j! * g_{k-j}(x)` with
/// `g_0(0) = 1` and `g_k(0) = 0` for `k > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusBasis {
    g: Vec<PowerSeries>,
}

impl FrobeniusBasis {
    /// A basis given by its pieces `g_0 .. g_{r-1}`; requires `g_0(0) = 1`,
    /// `g_k(0) = 0` for `k > 0` and a common truncation.
    pub fn from_pieces(g: Vec<PowerSeries>) -> Result<Self> {
        let Some(first) = g.first() else {
            return Err(Error::Invalid("empty basis".into()));
        };
        let n = first.truncation();
        if n == 0 || first.coeff(0) != Rat::one() {
            return Err(Error::Invalid("g_0 must start with 1".into()));
        }
        if g.iter().any(|p| p.truncation() != n) || g[1..].iter().any(|p| !p.coeff(0).is_zero()) {
            return Err(Error::Invalid("pieces must share a truncation and g_k(0) = 0 for k > 0".into()));
        }
        Ok(FrobeniusBasis { g })
    }

    /// The series `g_0 .. g_{r-1}`.
    pub fn pieces(&self) -> &[PowerSeries] {
        &self.g
    }

    pub fn order(&self) -> usize {
        self.g.len()
    }

    pub fn truncation(&self) -> usize {
        self.g[0].truncation()
    }

    /// The analytic solution `y_0`.
    pub fn y0(&self) -> &PowerSeries {
        &self.g[0]
    }

    /// `y_k` as a log-series.
    pub fn solution(&self, k: usize) -> LogSeries {
        let parts = (0..=k).map(|j| self.g[k - j].clone()).collect();
        LogSeries::with_truncation(parts, self.truncation())
    }

    pub fn solutions(&self) -> Vec<LogSeries> {
        (0..self.order()).map(|k| self.solution(k)).collect()
    }

    /// The identity `W(y_0, y_3) = W(y_1, y_2)` between wronskians, tested as a
    /// log-series identity through `x^{n-1}`.
    pub fn wronskian_condition(&self, n: usize) -> Result<bool> {
        if self.order() != 4 {
            return Err(Error::WrongOrder { expected: 4, found: self.order() });
        }
        let y: Vec<LogSeries> = self.solutions().iter().map(|s| s.truncate(n)).collect();
        Ok(y[0].x_wronskian(&y[3]) == y[1].x_wronskian(&y[2]))
    }
}

/// Solves for the Frobenius basis to truncation `n`.
///
/// The coefficient of `x^m` in `L y_k` gives
/// `P_0(m) g_k[m] = -sum_{(i,s) != (0,0)} (P_i^{(s)}/s!)(m-i) g_{k-s}[m-i]`.
pub fn frobenius(op: &ThetaOperator, n: usize) -> Result<FrobeniusBasis> {
    if !op.is_mum() {
        return Err(Error::NotMum);
    }
    let r = op.order();
    let rows = op.rows();
    let mut g: Vec<Vec<Rat>> = (0..r)
        .map(|k| {
            let mut v = vec![Rat::zero(); n];
            if k == 0 && n > 0 {
                v[0] = Rat::one();
            }
            v
        })
        .collect();
    for m in 1..n {
        let lead = rows[0].eval_int(m as i64);
        for k in 0..r {
            let mut acc = Rat::zero();
            for s in 0..=k {
                for (i, p) in rows.iter().enumerate() {
                    if i > m || (i == 0 && s == 0) || p.is_zero() {
                        continue;
                    }
                    let v = &g[k - s][m - i];
                    if v.is_zero() {
                        continue;
                    }
                    let c = if s == 0 { p.eval_int((m - i) as i64) } else { p.taylor_at(&rat((m - i) as i64), s) };
                    acc += c * v;
                }
            }
            g[k][m] = -acc / &lead;
        }
    }
    Ok(FrobeniusBasis {
        g: g.into_iter().map(|v| PowerSeries::new(v, n)).collect(),
    })
}

/// Mirror map and Yukawa coupling of an order-four (or higher) basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorData {
    /// `t - log x = g_1 / g_0`.
    pub t_series: PowerSeries,
    /// `q(x) = x exp(t - log x)`.
    pub q_of_x: PowerSeries,
    /// Inverse series `x(q)`.
    pub x_of_q: PowerSeries,
    /// Yukawa coupling `K(q)`, present for order at least three.
    pub k_of_q: Option<PowerSeries>,
}

/// `q = x exp(g_1/g_0)` and its reversion.
pub fn mirror_map(basis: &FrobeniusBasis) -> Result<(PowerSeries, PowerSeries)> {
    if basis.order() < 2 {
        return Err(Error::Invalid("mirror map needs at least two solutions".into()));
    }
    let t = basis.g[1].div(&basis.g[0])?;
    let q = t.exp()?.shift_up(1);
    let x = q.revert()?;
    Ok((q, x))
}

/// `K(q) = d^2/dt^2 (y_2/y_0)` with `d/dt = q d/dq`.
///
/// Writing `y_2/y_0 = t^2/2 + R(x)` with `R = g_2/g_0 - (g_1/g_0)^2/2`, this is
/// `1 + theta_q^2 R(x(q))`.
pub fn yukawa(basis: &FrobeniusBasis) -> Result<PowerSeries> {
    if basis.order() < 3 {
        return Err(Error::Invalid("Yukawa coupling needs at least three solutions".into()));
    }
    let (_, x_of_q) = mirror_map(basis)?;
    let s = basis.g[1].div(&basis.g[0])?;
    let r = basis.g[2]
        .div(&basis.g[0])?
        .sub(&s.mul(&s).scale(&crate::exact::ratio(1, 2)));
    let rq = r.compose(&x_of_q)?;
    let mut k = rq.theta().theta();
    k.set_coeff(0, Rat::one() + k.coeff(0));
    Ok(k)
}

pub fn mirror_data(basis: &FrobeniusBasis) -> Result<MirrorData> {
    let t = basis.g[1].div(&basis.g[0])?;
    let (q, x) = mirror_map(basis)?;
    let k = if basis.order() >= 3 { Some(yukawa(basis)?) } else { None };
    Ok(MirrorData { t_series: t, q_of_x: q, x_of_q: x, k_of_q: k })
}

/// Instanton numbers `n_1 .. n_d` with their least common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instantons {
    pub n: Vec<Rat>,
    /// Least `N_0` with every `N_0 n_d` integral, if it is at most [`N0_BOUND`].
    pub n0: Option<u64>,
}

/// Divisor-sum inversion of `[q^m](K - 1) = sum_{d | m} n_d d^3` for `m <= depth`.
pub fn instantons(k: &PowerSeries, depth: usize) -> Result<Instantons> {
    if k.truncation() <= depth {
        return Err(Error::InsufficientTerms { needed: depth + 1, got: k.truncation() });
    }
    let mut n: Vec<Rat> = Vec::with_capacity(depth);
    for m in 1..=depth {
        let mut acc = k.coeff(m);
        for d in 1..m {
            if m % d == 0 {
                acc -= &n[d - 1] * rat((d * d * d) as i64);
            }
        }
        n.push(acc / rat((m * m * m) as i64));
    }
    let den = n.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let n0 = u64::try_from(&den).ok().filter(|&v| v <= N0_BOUND);
    Ok(Instantons { n, n0 })
}

/// `1 + sum_d n_d d^3 q^d / (1 - q^d)` to truncation `len`.
pub fn lambert_sum(n: &[Rat], len: usize) -> PowerSeries {
    let mut c = vec![Rat::zero(); len];
    if len > 0 {
        c[0] = Rat::one();
    }
    for (i, nd) in n.iter().enumerate() {
        let d = i + 1;
        let w = nd * rat((d * d * d) as i64);
        let mut m = d;
        while m < len {
            c[m] += &w;
            m += d;
        }
    }
    PowerSeries::new(c, len)
}

/// Verdicts for the integrality conditions of a MUM operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    pub mum: bool,
    /// Condition 2, only for order four.
    pub cond2: Option<bool>,
    /// `y_0` has integral coefficients through `x^N`.
    pub a: Option<bool>,
    /// `q(x)` has integral coefficients through `x^N`.
    pub b: Option<bool>,
    /// A common denominator `N_0` of the instanton numbers exists within bound.
    pub c: Option<bool>,
    pub instantons: Option<Instantons>,
}

impl IntegralityReport {
    /// True when every condition that was evaluated holds.
    pub fn passes(&self) -> bool {
        self.mum && [self.cond2, self.a, self.b, self.c].iter().all(|v| v.unwrap_or(true))
    }

    /// Stable key-value rendering, one entry per line.
    pub fn render(&self) -> String {
        let show = |v: Option<bool>| v.map_or("skipped".to_string(), |b| b.to_string());
        let mut out = format!(
            "mum={}\ncond2={}\n3a={}\n3b={}\n3c={}\n",
            self.mum,
            show(self.cond2),
            show(self.a),
            show(self.b),
            show(self.c)
        );
        if let Some(inst) = &self.instantons {
            out += &format!("N0={}\n", inst.n0.map_or("none".to_string(), |v| v.to_string()));
            for (d, v) in inst.n.iter().enumerate() {
                out += &format!("n_{}={}\n", d + 1, crate::exact::fmt_rat(v));
            }
        }
        out
    }
}

/// Evaluates MUM, condition 2 and conditions 3a-c. 3a and 3b look at the
/// coefficients of `x^1 .. x^n`; instantons are extracted up to degree `depth`.
/// Every verdict is computed independently of the others.
pub fn integrality_report(op: &ThetaOperator, n: usize, depth: usize) -> Result<IntegralityReport> {
    let mum = op.is_mum();
    let cond2 = if op.order() == 4 { Some(op.cond2()?) } else { None };
    if !mum {
        return Ok(IntegralityReport { mum, cond2, a: None, b: None, c: None, instantons: None });
    }
    let trunc = (n + 1).max(depth + 1);
    let basis = frobenius(op, trunc)?;
    let a = basis.y0().coeffs()[..=n].iter().all(is_integral);
    let (b, c, inst) = if op.order() >= 2 {
        let (q, _) = mirror_map(&basis)?;
        let b = q.coeffs()[..=n].iter().all(is_integral);
        if op.order() >= 3 {
            let k = yukawa(&basis)?;
            let inst = instantons(&k, depth)?;
            (Some(b), Some(inst.n0.is_some()), Some(inst))
        } else {
            (Some(b), None, None)
        }
    } else {
        (None, None, None)
    };
    Ok(IntegralityReport { mum, cond2, a: Some(a), b, c, instantons: inst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn theta_four_basis() {
        let b = frobenius(&ThetaOperator::theta_power(4), 8).unwrap();
        for k in 0..4 {
            assert_eq!(b.solution(k), LogSeries::log_power(k, 8));
        }
        let (q, x) = mirror_map(&b).unwrap();
        assert_eq!(q, PowerSeries::x(8));
        assert_eq!(x, PowerSeries::x(8));
        assert_eq!(yukawa(&b).unwrap(), PowerSeries::one(8));
        assert!(b.wronskian_condition(8).unwrap());
    }

    #[test]
    fn basis_is_annihilated() {
        let op = ThetaOperator::parse_expr("θ^4 - 144x(12θ+1)(12θ+5)(12θ+7)(12θ+11)").unwrap();
        let b = frobenius(&op, 12).unwrap();
        for y in b.solutions() {
            assert!(op.apply(&y).is_zero());
        }
        assert_eq!(b.y0().coeff(1), rat(55440));
        assert!(b.wronskian_condition(12).unwrap());
    }

    #[test]
    fn lambert_inversion() {
        let inst = instantons(&PowerSeries::one(6), 5).unwrap();
        assert!(inst.n.iter().all(Zero::is_zero));
        assert_eq!(inst.n0, Some(1));
        // K = 1 + q/(1-q)
        let k = PowerSeries::from_ints(&[1, 1, 1, 1, 1, 1, 1], 7);
        let inst = instantons(&k, 6).unwrap();
        assert_eq!(inst.n[0], rat(1));
        assert!(inst.n[1..].iter().all(Zero::is_zero));
        let odd = PowerSeries::new(vec![rat(1), ratio(1, 2), rat(3)], 3);
        let inst = instantons(&odd, 2).unwrap();
        assert_eq!(lambert_sum(&inst.n, 3), odd);
        assert_eq!(inst.n0, Some(16));
    }

    #[test]
    fn fractional_first_coefficient() {
        let op = ThetaOperator::parse_expr("θ^4 + x(θ+1/2)").unwrap();
        let rep = integrality_report(&op, 5, 3).unwrap();
        assert_eq!(rep.a, Some(false));
        assert!(!rep.passes());
        assert!(rep.render().starts_with("mum=true\ncond2=false\n3a=false\n"));
    }

    #[test]
    fn non_mum_is_rejected() {
        let op = ThetaOperator::parse_expr("θ^2(θ-1)^2 - x").unwrap();
        assert_eq!(frobenius(&op, 5), Err(Error::NotMum));
        let rep = integrality_report(&op, 5, 3).unwrap();
        assert!(!rep.mum && rep.a.is_none());
    }
}
