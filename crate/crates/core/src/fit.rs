//! Guessing an annihilating operator for a coefficient sequence by exact
//! linear algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{content, denom_lcm, fmt_rat, parse_rat, Poly, Rat};
use crate::ops::ThetaOperator;

/// The shape of the operator to look for.
///
/// Unknowns are the coefficients of `x^e (d/dx)^d` for `d = 0..=order` and
/// `e` in `[d + low[d], d + degree + high[d]]`. With zero offsets this is
/// exactly the space of theta-operators of the given order and degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitSpec {
    pub order: usize,
    pub degree: usize,
    pub low: Vec<i64>,
    pub high: Vec<i64>,
    /// Number of trailing terms held out for verification.
    pub margin: usize,
}

impl FitSpec {
    pub fn new(order: usize, degree: usize) -> Self {
        FitSpec {
            order,
            degree,
            low: vec![0; order + 1],
            high: vec![0; order + 1],
            margin: 5,
        }
    }

    pub fn with_margin(mut self, margin: usize) -> Self {
        self.margin = margin;
        self
    }

    pub fn with_offsets(mut self, low: Vec<i64>, high: Vec<i64>) -> Self {
        self.low = low;
        self.high = high;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.margin < 1 {
            return Err(Error::Invalid("margin must be at least 1".into()));
        }
        if self.low.len() != self.order + 1 || self.high.len() != self.order + 1 {
            return Err(Error::Invalid("one offset pair per derivative order is required".into()));
        }
        for d in 0..=self.order {
            if self.window(d).is_none() {
                return Err(Error::Invalid(format!("empty window for derivative order {d}")));
            }
        }
        Ok(())
    }

    /// Admitted x-exponents for `(d/dx)^d`.
    pub fn window(&self, d: usize) -> Option<(usize, usize)> {
        let lo = (d as i64 + self.low[d]).max(0);
        let hi = d as i64 + self.degree as i64 + self.high[d];
        (hi >= lo).then_some((lo as usize, hi as usize))
    }

    /// `(e, d)` pairs in column order.
    pub fn unknowns(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for d in 0..=self.order {
            if let Some((lo, hi)) = self.window(d) {
                out.extend((lo..=hi).map(|e| (e, d)));
            }
        }
        out
    }

    /// Terms needed: one equation per unknown plus the held-out margin.
    pub fn terms_needed(&self) -> usize {
        self.unknowns().len() + self.margin
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitResult {
    /// The verified operator, or `None` when no annihilator survived.
    pub operator: Option<ThetaOperator>,
    /// Dimension of the nullspace of the fitting system.
    pub nullity: usize,
    /// Number of sequence terms that entered the linear system.
    pub consumed: usize,
}

impl FitResult {
    pub fn success(&self) -> bool {
        self.operator.is_some()
    }
}

/// `n (n-1) ... (n-d+1)`.
fn falling(n: usize, d: usize) -> BigInt {
    if d > n {
        return BigInt::zero();
    }
    ((n - d + 1)..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Fits an operator of the given shape to `seq`.
///
/// The system uses the first `len - margin` terms; the chosen nullspace
/// vector (first free column of the reduced echelon form) is accepted only
/// if the operator annihilates the whole sequence.
pub fn fit(seq: &[Rat], spec: &FitSpec) -> Result<FitResult> {
    spec.validate()?;
    if seq.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateSequence);
    }
    let unknowns = spec.unknowns();
    let needed = unknowns.len() + spec.margin;
    if seq.len() < needed {
        return Err(Error::InsufficientTerms { needed, got: seq.len() });
    }
    let used = seq.len() - spec.margin;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    // Coefficient of x^m in x^e D^d y is falling(n, d) A_n with n = m + d - e.
    let max_shift = unknowns.iter().map(|&(e, d)| d as i64 - e as i64).max().unwrap_or(0).max(0) as usize;
    for m in 0..used.saturating_sub(max_shift) {
        let row: Vec<Rat> = unknowns
            .iter()
            .map(|&(e, d)| {
                let n = m as i64 + d as i64 - e as i64;
                if n < 0 {
                    Rat::zero()
                } else {
                    let n = n as usize;
                    &seq[n] * Rat::from_integer(falling(n, d))
                }
            })
            .collect();
        let den = denom_lcm(row.iter());
        let ints: Vec<BigInt> = row
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        if ints.iter().any(|c| !c.is_zero()) {
            rows.push(ints);
        }
    }
    let basis = nullspace(rows, unknowns.len());
    let nullity = basis.len();
    let mut operator = None;
    for v in &basis {
        let mut q = vec![Poly::zero(); spec.order + 1];
        for (&(e, d), c) in unknowns.iter().zip(v) {
            if !c.is_zero() {
                q[d] = &q[d] + &Poly::monomial(e, Rat::from_integer(c.clone()));
            }
        }
        let op = match ThetaOperator::from_d_polys(&q) {
            Ok(op) => op,
            Err(_) => continue,
        };
        if op.annihilates(seq) {
            operator = Some(op);
            break;
        }
    }
    Ok(FitResult { operator, nullity, consumed: used })
}

/// Scans orders `1..=r_max` and, within each, degrees `0..=p_max`, returning
/// the first shape that admits a verified annihilator. Cells needing more
/// terms than available are skipped.
pub fn search(seq: &[Rat], r_max: usize, p_max: usize) -> Result<(FitSpec, FitResult)> {
    search_with_margin(seq, r_max, p_max, 5)
}

pub fn search_with_margin(seq: &[Rat], r_max: usize, p_max: usize, margin: usize) -> Result<(FitSpec, FitResult)> {
    if seq.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateSequence);
    }
    for r in 1..=r_max {
        for p in 0..=p_max {
            let spec = FitSpec::new(r, p).with_margin(margin);
            if spec.terms_needed() > seq.len() {
                continue;
            }
            let res = fit(seq, &spec)?;
            if res.success() {
                return Ok((spec, res));
            }
        }
    }
    Err(Error::GridExhausted)
}

/// True iff `op` annihilates `sum seq_n x^n` in every coefficient the
/// sequence determines.
pub fn verify(op: &ThetaOperator, seq: &[Rat]) -> bool {
    op.annihilates(seq)
}

/// Nullspace basis of an integer matrix by fraction-free elimination.
///
/// Each basis vector has a 1-like entry (the product of pivots, reduced) at
/// one free column and zeros at the other free columns; vectors are ordered
/// by free column and reduced to content 1.
pub fn nullspace(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].bits())
        else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let a = &pivot_row[c] / &g;
            let b = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = &*x * &a - y * &b;
            }
            let g = content(row.iter());
            if !g.is_zero() && !g.is_one() {
                for x in row.iter_mut() {
                    *x /= &g;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        // x_f = L, x_{pivot c_i} = -row_i[f] * L / row_i[c_i]
        let l = pivots
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (i, &c)| acc.lcm(&rows[i][c].abs()));
        let mut v = vec![BigInt::zero(); ncols];
        v[f] = l.clone();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -(&rows[i][f] * &l) / &rows[i][c];
        }
        let g = content(v.iter());
        for x in v.iter_mut() {
            *x /= &g;
        }
        basis.push(v);
    }
    basis
}

/// Parses a sequence file: one integer or `num/den` per line, `#` comments.
pub fn parse_sequence(text: &str) -> Result<Vec<Rat>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v = parse_rat(line).ok_or_else(|| Error::Parse { line: k + 1, msg: format!("not a rational: `{line}`") })?;
        out.push(v);
    }
    Ok(out)
}

pub fn format_sequence(seq: &[Rat]) -> String {
    seq.iter().map(|v| fmt_rat(v) + "\n").collect()
}
