use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{content, denom_lcm, rat, LogSeries, Poly, PowerSeries, Rat};

/// A differential operator `sum_i x^i P_i(theta)` with `theta = x d/dx`.
///
/// Values are always kept in canonical form: no zero rows at either end of
/// the x-range, integer coefficients with content 1, and the leading
/// coefficient of `P_0` positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaOperator {
    rows: Vec<Poly>,
}

impl ThetaOperator {
    /// Canonicalizes the given rows. Fails only for the zero operator.
    pub fn new(rows: Vec<Poly>) -> Result<Self> {
        let first = rows.iter().position(|p| !p.is_zero());
        let last = rows.iter().rposition(|p| !p.is_zero());
        let (first, last) = match (first, last) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Invalid("zero operator".into())),
        };
        let rows = &rows[first..=last];
        let den = denom_lcm(rows.iter().flat_map(|p| p.coeffs().iter()));
        let scaled: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|p| {
                p.coeffs()
                    .iter()
                    .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect();
        let mut g = content(scaled.iter().flatten());
        if rows[0].leading().is_negative() {
            g = -g;
        }
        let rows = scaled
            .into_iter()
            .map(|row| Poly::from_bigints(&row.into_iter().map(|c| c / &g).collect::<Vec<_>>()))
            .collect();
        Ok(ThetaOperator { rows })
    }

    /// Rows given as integer coefficient lists, lowest theta power first.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        ThetaOperator::new(rows.iter().map(|r| Poly::from_ints(r)).collect())
    }

    /// `theta^r`.
    pub fn theta_power(r: usize) -> Self {
        ThetaOperator { rows: vec![Poly::monomial(r, Rat::one())] }
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> Poly {
        self.rows.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    /// Maximal theta-degree `r`.
    pub fn order(&self) -> usize {
        self.rows.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// Maximal x-degree `p`.
    pub fn degree(&self) -> usize {
        self.rows.len() - 1
    }

    /// Integer coefficient of `x^i theta^j`.
    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.row(i).coeff(j).to_integer()
    }

    /// Maximal unipotent monodromy at 0: `P_0(theta) = c * theta^r`.
    pub fn is_mum(&self) -> bool {
        let r = self.order();
        let p0 = &self.rows[0];
        p0.degree() == Some(r) && p0.coeffs()[..r].iter().all(Zero::is_zero)
    }

    /// `x -> c x`, i.e. row `i` is multiplied by `c^i`.
    pub fn rescale_x(&self, c: &Rat) -> Result<Self> {
        let mut f = Rat::one();
        let mut rows = Vec::with_capacity(self.rows.len());
        for p in &self.rows {
            rows.push(p.scale(&f));
            f *= c;
        }
        ThetaOperator::new(rows)
    }

    /// Coefficient `[x^m] L y` for a coefficient accessor `a`.
    fn image_coeff(&self, m: usize, s: usize, a: impl Fn(usize) -> Rat) -> Rat {
        let mut acc = Rat::zero();
        for (i, p) in self.rows.iter().enumerate() {
            if i > m || p.is_zero() {
                continue;
            }
            let n = m - i;
            let v = a(n);
            if v.is_zero() {
                continue;
            }
            let t = if s == 0 { p.eval_int(n as i64) } else { p.taylor_at(&rat(n as i64), s) };
            acc += t * v;
        }
        acc
    }

    /// `L y` for a log-free series; the truncation is kept.
    pub fn apply_series(&self, y: &PowerSeries) -> PowerSeries {
        let n = y.truncation();
        let coeffs = (0..n)
            .map(|m| self.image_coeff(m, 0, |k| y.coeff(k)))
            .collect();
        PowerSeries::new(coeffs, n)
    }

    /// `L y` for a series with logarithms.
    ///
    /// `P(theta)` maps `log^j/j! f` to `sum_s log^{j-s}/(j-s)! (P^{(s)}/s!)(theta) f`.
    pub fn apply(&self, y: &LogSeries) -> LogSeries {
        let n = y.truncation();
        let parts: Vec<PowerSeries> = y.parts().to_vec();
        let out = (0..parts.len())
            .map(|k| {
                let coeffs = (0..n)
                    .map(|m| {
                        let mut acc = Rat::zero();
                        for (s, f) in parts.iter().enumerate().skip(k) {
                            acc += self.image_coeff(m, s - k, |t| f.coeff(t));
                        }
                        acc
                    })
                    .collect();
                PowerSeries::new(coeffs, n)
            })
            .collect();
        LogSeries::with_truncation(out, n)
    }

    /// True iff `L (sum a_n x^n)` vanishes in every coefficient the finite
    /// sequence determines.
    pub fn annihilates(&self, seq: &[Rat]) -> bool {
        self.first_defect(seq).is_none()
    }

    /// Smallest `m` with `[x^m] L y != 0`, if any.
    pub fn first_defect(&self, seq: &[Rat]) -> Option<usize> {
        (0..seq.len()).find(|&m| !self.image_coeff(m, 0, |k| seq[k].clone()).is_zero())
    }

    /// The power-series solution `1 + A_1 x + ...` normalized by `A_0 = 1`.
    ///
    /// Requires `P_0(0) = 0` and `P_0(n) != 0` for `1 <= n < N`.
    pub fn series_solution(&self, n: usize) -> Result<Vec<Rat>> {
        let p0 = &self.rows[0];
        if !p0.eval_int(0).is_zero() {
            return Err(Error::VanishingLeading(0));
        }
        let mut a: Vec<Rat> = Vec::with_capacity(n);
        if n == 0 {
            return Ok(a);
        }
        a.push(Rat::one());
        for m in 1..n {
            let lead = p0.eval_int(m as i64);
            if lead.is_zero() {
                return Err(Error::VanishingLeading(m as i64));
            }
            let rest = self.image_coeff(m, 0, |k| if k < m { a[k].clone() } else { Rat::zero() });
            a.push(-rest / lead);
        }
        Ok(a)
    }

    /// The transform `theta -> -theta - shift`, `x -> 1/(a x)`, followed by
    /// clearing powers of `x`. Row `p - i` of the result is
    /// `a^{-i} P_i(-theta - shift)`.
    pub fn mirror_at_infinity(&self, a: &Rat, shift: &Rat) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Invalid("mirror scale must be nonzero".into()));
        }
        let p = self.degree();
        let inv = Rat::one() / a;
        let mut rows = vec![Poly::zero(); p + 1];
        let mut f = Rat::one();
        for (i, row) in self.rows.iter().enumerate() {
            rows[p - i] = row.compose_linear(&rat(-1), &-shift).scale(&f);
            f *= &inv;
        }
        ThetaOperator::new(rows)
    }

    /// Smallest scale (up to sign, with `A_1 > 0`) making the power-series
    /// solution of the mirrored operator integral through `x^{terms-1}`.
    pub fn mirror_scale(&self, shift: &Rat, terms: usize) -> Result<Rat> {
        let base = self.mirror_at_infinity(&Rat::one(), shift)?;
        let seq = base.series_solution(terms)?;
        // A_n(a) = a^n A_n(1); solve v_q(a) >= ceil(-v_q(A_n)/n) prime by prime.
        let mut primes: Vec<u64> = Vec::new();
        for v in seq.iter().skip(1) {
            for q in small_prime_factors(v.denom()) {
                if !primes.contains(&q) {
                    primes.push(q);
                }
            }
        }
        if let Some(a1) = seq.get(1).filter(|v| !v.is_zero()) {
            for q in small_prime_factors(a1.numer()) {
                if !primes.contains(&q) {
                    primes.push(q);
                }
            }
        }
        primes.sort_unstable();
        let mut scale = Rat::one();
        for q in primes {
            let mut need: Option<i64> = None;
            for (n, v) in seq.iter().enumerate().skip(1) {
                if v.is_zero() {
                    continue;
                }
                let val = valuation(v.numer(), q) - valuation(v.denom(), q);
                let k = (-val).div_euclid(n as i64) + i64::from((-val).rem_euclid(n as i64) != 0);
                need = Some(need.map_or(k, |m| m.max(k)));
            }
            let e = need.unwrap_or(0);
            let qb = Rat::from_integer(BigInt::from(q));
            if e >= 0 {
                scale *= num_traits::pow(qb, e as usize);
            } else {
                scale /= num_traits::pow(qb, (-e) as usize);
            }
        }
        if seq.get(1).is_some_and(|a1| a1.is_negative()) {
            scale = -scale;
        }
        Ok(scale)
    }

    /// Multi-line text form: a header line and one row of integers per power of x.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// A human readable rendering such as `theta^3 - x*(22*theta^3 + ...)`.
    pub fn pretty(&self) -> String {
        let mut parts = Vec::new();
        for (i, p) in self.rows.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let mut terms = Vec::new();
            for (j, c) in p.coeffs().iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let c = c.to_integer();
                terms.push(match j {
                    0 => c.to_string(),
                    1 => format!("{c}*t"),
                    _ => format!("{c}*t^{j}"),
                });
            }
            let body = format!("({})", terms.join(" + ").replace("+ -", "- "));
            parts.push(match i {
                0 => body,
                1 => format!("x*{body}"),
                _ => format!("x^{i}*{body}"),
            });
        }
        parts.join(" + ")
    }
}

fn valuation(n: &BigInt, q: u64) -> i64 {
    if n.is_zero() {
        return i64::MAX / 4;
    }
    let q = BigInt::from(q);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &q).is_zero() {
        n /= &q;
        v += 1;
    }
    v
}

/// Prime factors below 10^5 found by trial division; any large cofactor is
/// ignored.
fn small_prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut q: u64 = 2;
    while q < 100_000 && n > BigInt::one() {
        let qb = BigInt::from(q);
        if (&n % &qb).is_zero() {
            out.push(q);
            while (&n % &qb).is_zero() {
                n /= &qb;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    out
}

impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.order();
        writeln!(f, "theta-operator order={} degree={}", r, self.degree())?;
        for p in &self.rows {
            let line: Vec<String> = (0..=r).map(|j| p.coeff(j).to_integer().to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for ThetaOperator {
    type Err = Error;

    /// Parses the text form. Blank lines and `#` comments are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let mut words = header.split_whitespace();
        if words.next() != Some("theta-operator") {
            return Err(Error::Parse { line: hline, msg: "expected `theta-operator`".into() });
        }
        let mut order = None;
        let mut degree = None;
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: hline, msg: format!("bad field `{w}`") })?;
            let v: usize = v
                .parse()
                .map_err(|_| Error::Parse { line: hline, msg: format!("bad number `{v}`") })?;
            match k {
                "order" => order = Some(v),
                "degree" => degree = Some(v),
                _ => return Err(Error::Parse { line: hline, msg: format!("unknown field `{k}`") }),
            }
        }
        let (r, p) = match (order, degree) {
            (Some(r), Some(p)) => (r, p),
            _ => return Err(Error::Parse { line: hline, msg: "missing order or degree".into() }),
        };
        let mut rows = Vec::with_capacity(p + 1);
        for (ln, l) in lines {
            let vals = l
                .split_whitespace()
                .map(|w| w.parse::<BigInt>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse { line: ln, msg: "expected integers".into() })?;
            if vals.len() != r + 1 {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("expected {} coefficients, found {}", r + 1, vals.len()),
                });
            }
            rows.push(Poly::from_bigints(&vals));
        }
        if rows.len() != p + 1 {
            return Err(Error::Parse {
                line: hline,
                msg: format!("expected {} rows, found {}", p + 1, rows.len()),
            });
        }
        ThetaOperator::new(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn eta() -> ThetaOperator {
        // theta^3 - x(2t+1)(11t^2+11t+5) + 125x^2(t+1)^3
        ThetaOperator::from_int_rows(&[&[0, 0, 0, 1], &[-5, -21, -33, -22], &[125, 375, 375, 125]]).unwrap()
    }

    #[test]
    fn canonical_form() {
        let op = ThetaOperator::new(vec![
            Poly::zero(),
            Poly::new(vec![rat(0), ratio(-1, 2)]),
            Poly::new(vec![ratio(1, 3)]),
            Poly::zero(),
        ])
        .unwrap();
        assert_eq!(op.rows(), &[Poly::from_ints(&[0, 3]), Poly::from_ints(&[-2])]);
        assert_eq!((op.order(), op.degree()), (1, 1));
        assert!(ThetaOperator::new(vec![Poly::zero()]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let op = eta();
        let text = op.to_text();
        assert!(text.starts_with("theta-operator order=3 degree=2\n0 0 0 1\n"));
        assert_eq!(text.parse::<ThetaOperator>().unwrap(), op);
        assert!("theta-operator order=1 degree=0\n1 2 3".parse::<ThetaOperator>().is_err());
        assert!("nonsense".parse::<ThetaOperator>().is_err());
    }

    #[test]
    fn theta_power_kills_constants() {
        let op = ThetaOperator::theta_power(4);
        let y = LogSeries::analytic(PowerSeries::one(10));
        assert!(op.apply(&y).is_zero());
        // theta^2 log x = 0 but theta log x = 1
        assert!(op.apply(&LogSeries::log_power(3, 6)).is_zero());
        let t = ThetaOperator::theta_power(1);
        assert_eq!(t.apply(&LogSeries::log_power(1, 6)), LogSeries::analytic(PowerSeries::one(6)));
    }

    #[test]
    fn eta_series_solution() {
        let a = eta().series_solution(6).unwrap();
        let want: Vec<Rat> = [1, 5, 35, 275, 2275, 19255].iter().map(|&v| rat(v)).collect();
        assert_eq!(a, want);
        assert!(eta().is_mum());
    }

    #[test]
    fn mirror_involution_for_unit_scale() {
        let op = ThetaOperator::from_int_rows(&[&[0, 0, 0, 0, 1], &[], &[1, 4, 6, 4, 1]]).unwrap();
        let m = op.mirror_at_infinity(&rat(1), &rat(1)).unwrap();
        assert_eq!(m, op);
        let twice = eta()
            .mirror_at_infinity(&rat(-1), &rat(1))
            .unwrap()
            .mirror_at_infinity(&rat(-1), &rat(1))
            .unwrap();
        assert_eq!(twice, eta());
    }
}
