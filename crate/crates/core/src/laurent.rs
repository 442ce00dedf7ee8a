//! Constant terms of powers of Laurent polynomials in up to four variables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::binom;

pub const MAX_DIM: usize = 4;

type Exp = [i32; MAX_DIM];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<Exp, BigInt>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Invalid(format!("dimension must be 1..={MAX_DIM}, got {dim}")));
        }
        Ok(LaurentPoly { dim, terms: BTreeMap::new() })
    }

    pub fn one(dim: usize) -> Result<Self> {
        let mut p = Self::zero(dim)?;
        p.terms.insert([0; MAX_DIM], BigInt::one());
        Ok(p)
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs; like terms
    /// are merged and zero coefficients dropped.
    pub fn from_terms<'a>(dim: usize, terms: impl IntoIterator<Item = (i64, &'a [i32])>) -> Result<Self> {
        let mut p = Self::zero(dim)?;
        for (c, e) in terms {
            p.add_term(BigInt::from(c), e)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, c: BigInt, e: &[i32]) -> Result<()> {
        if e.len() != self.dim {
            return Err(Error::Invalid(format!("exponent vector of length {} in dimension {}", e.len(), self.dim)));
        }
        let mut key = [0; MAX_DIM];
        key[..self.dim].copy_from_slice(e);
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coefficient, exponent vector)` pairs in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &[i32])> {
        self.terms.iter().map(move |(e, c)| (c, &e[..self.dim]))
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&[0; MAX_DIM]).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.dim != other.dim {
            return Err(Error::Invalid("dimension mismatch".into()));
        }
        let mut acc: HashMap<Exp, BigInt> = HashMap::new();
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                *acc.entry(add(e, f)).or_insert_with(BigInt::zero) += c * d;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { dim: self.dim, terms: acc.into_iter().collect() })
    }

    pub fn pow(&self, n: usize) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::one(self.dim)?;
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Per-variable `(min, max)` exponent over all terms.
    fn ranges(&self) -> [(i32, i32); MAX_DIM] {
        let mut r = [(0, 0); MAX_DIM];
        for e in self.terms.keys() {
            for i in 0..self.dim {
                r[i].0 = r[i].0.min(e[i]);
                r[i].1 = r[i].1.max(e[i]);
            }
        }
        r
    }
}

fn add(e: &Exp, f: &Exp) -> Exp {
    let mut out = [0; MAX_DIM];
    for i in 0..MAX_DIM {
        out[i] = e[i] + f[i];
    }
    out
}

/// True when `e` can still be brought back to zero by `rest` further factors
/// whose exponents lie in `ranges`.
fn reachable(e: &Exp, rest: i64, ranges: &[(i32, i32); MAX_DIM], dim: usize) -> bool {
    (0..dim).all(|i| {
        let v = e[i] as i64;
        v + rest * ranges[i].0 as i64 <= 0 && v + rest * ranges[i].1 as i64 >= 0
    })
}

/// Generic repeated multiplication with optional pruning, over any
/// coefficient ring given by `mul_add`.
fn power_ct<C: Clone + Default>(
    s: &LaurentPoly,
    n: usize,
    prune: bool,
    one: C,
    lift: impl Fn(&BigInt) -> C,
    mul_add: impl Fn(&mut C, &C, &C),
    is_zero: impl Fn(&C) -> bool,
) -> C {
    let ranges = s.ranges();
    let factors: Vec<(Exp, C)> = s.terms.iter().map(|(e, c)| (*e, lift(c))).collect();
    let mut cur: HashMap<Exp, C> = HashMap::from([([0; MAX_DIM], one)]);
    for k in 0..n {
        let rest = (n - k - 1) as i64;
        let mut next: HashMap<Exp, C> = HashMap::with_capacity(cur.len() * 2);
        for (e, c) in &cur {
            for (f, d) in &factors {
                let g = add(e, f);
                if prune && !reachable(&g, rest, &ranges, s.dim) {
                    continue;
                }
                mul_add(next.entry(g).or_default(), c, d);
            }
        }
        next.retain(|_, c| !is_zero(c));
        cur = next;
    }
    cur.remove(&[0; MAX_DIM]).unwrap_or_default()
}

/// Constant term of `s^n`, dropping monomials that cannot return to the
/// origin within the remaining multiplications.
pub fn ct_power(s: &LaurentPoly, n: usize) -> BigInt {
    power_ct(s, n, true, BigInt::one(), Clone::clone, |a, b, c| *a += b * c, Zero::is_zero)
}

/// Constant term of `s^n` by plain repeated multiplication.
pub fn ct_power_unpruned(s: &LaurentPoly, n: usize) -> BigInt {
    power_ct(s, n, false, BigInt::one(), Clone::clone, |a, b, c| *a += b * c, Zero::is_zero)
}

/// `[c.t.(s^0), ..., c.t.(s^(len-1))]` reusing each power for the next.
pub fn ct_sequence(s: &LaurentPoly, len: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(len);
    let mut cur = match LaurentPoly::one(s.dim) {
        Ok(p) => p,
        Err(_) => return out,
    };
    for k in 0..len {
        out.push(cur.constant_term());
        if k + 1 < len {
            cur = cur.mul(s).expect("same dimension");
        }
    }
    out
}

fn ct_mod(s: &LaurentPoly, n: usize, p: u64) -> u64 {
    power_ct(
        s,
        n,
        true,
        1u64,
        |c| c.mod_floor(&BigInt::from(p)).to_u64().expect("reduced"),
        |a, b, c| *a = ((*a as u128 + *b as u128 * *c as u128) % p as u128) as u64,
        |c| *c == 0,
    )
}

/// Largest prime below 2^31 that is not in `avoid`.
fn spot_prime(avoid: &[u64]) -> u64 {
    let mut q: u64 = (1 << 31) - 1;
    loop {
        if is_prime(q) && !avoid.contains(&q) {
            return q;
        }
        q -= 2;
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Constant term of `s^n` reconstructed from residues modulo `primes` by the
/// Chinese remainder theorem, in the symmetric range. The product of the
/// primes must exceed `2 * bound`, and the result is checked against an
/// independent prime.
pub fn ct_modular(s: &LaurentPoly, n: usize, primes: &[u64], bound: &BigInt) -> Result<BigInt> {
    if primes.is_empty() || primes.iter().any(|&p| !is_prime(p) || p >= 1 << 32) {
        return Err(Error::Invalid("primes must be distinct primes below 2^32".into()));
    }
    let modulus: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    if modulus <= BigInt::from(2) * bound.abs() {
        return Err(Error::Reconstruction(format!("prime product {modulus} does not exceed twice the bound {bound}")));
    }
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for &p in primes {
        let r = BigInt::from(ct_mod(s, n, p));
        let pb = BigInt::from(p);
        // x + m t == r (mod p)
        let inv = mod_inverse(&m.mod_floor(&pb), &pb)
            .ok_or_else(|| Error::Invalid("primes must be distinct".into()))?;
        let t = ((&r - &x).mod_floor(&pb) * inv).mod_floor(&pb);
        x += &m * t;
        m *= pb;
    }
    if &x * 2 > m {
        x -= &m;
    }
    let q = spot_prime(primes);
    let check = ct_mod(s, n, q);
    if x.mod_floor(&BigInt::from(q)) != BigInt::from(check) {
        return Err(Error::Reconstruction(format!("value disagrees with the residue modulo {q}; the bound is too small")));
    }
    Ok(x)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Whether `A_n` is the constant term of `S^n` or of `S^(2n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerStep {
    Single,
    Double,
}

impl PowerStep {
    fn exponent(self, n: usize) -> usize {
        match self {
            PowerStep::Single => n,
            PowerStep::Double => 2 * n,
        }
    }
}

/// A split `S = u + p + q` in which the eliminated variable appears only in
/// `p` (exponent +1) and `q` (exponent -1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationPlan {
    pub var: usize,
    pub u: LaurentPoly,
    pub p: LaurentPoly,
    pub q: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CTJob {
    pub s: LaurentPoly,
    pub step: PowerStep,
    pub plan: Option<EliminationPlan>,
}

impl CTJob {
    pub fn validate(&self) -> Result<()> {
        let Some(plan) = &self.plan else { return Ok(()) };
        let v = plan.var;
        if v >= self.s.dim {
            return Err(Error::MalformedPlan(format!("variable {v} out of range")));
        }
        for (part, want, name) in [(&plan.u, 0, "u"), (&plan.p, 1, "p"), (&plan.q, -1, "q")] {
            if part.dim != self.s.dim {
                return Err(Error::MalformedPlan(format!("{name} has the wrong dimension")));
            }
            if let Some((_, e)) = part.terms().find(|(_, e)| e[v] != want) {
                return Err(Error::MalformedPlan(format!("{name} has a term with exponent {} in the eliminated variable", e[v])));
            }
        }
        let mut sum = plan.u.clone();
        for part in [&plan.p, &plan.q] {
            for (c, e) in part.terms() {
                sum.add_term(c.clone(), e)?;
            }
        }
        if sum != self.s {
            return Err(Error::MalformedPlan("u + p + q differs from S".into()));
        }
        Ok(())
    }

    /// `A_n` by direct powering.
    pub fn ct_power(&self, n: usize) -> BigInt {
        ct_power(&self.s, self.step.exponent(n))
    }
}

/// `A_n` via the elimination plan: the constant term in the eliminated
/// variable of `(u + p + q)^N` is `sum_j N!/(j!^2 (N-2j)!) u^(N-2j) (pq)^j`.
pub fn ct_eliminated(job: &CTJob, n: usize) -> Result<BigInt> {
    Ok(ct_eliminated_sequence(job, n + 1)?.pop().expect("nonempty"))
}

/// `A_0, ..., A_(len-1)` via the elimination plan.
pub fn ct_eliminated_sequence(job: &CTJob, len: usize) -> Result<Vec<BigInt>> {
    job.validate()?;
    let plan = job.plan.as_ref().ok_or_else(|| Error::MalformedPlan("no elimination plan".into()))?;
    let big = job.step.exponent(len.saturating_sub(1));
    let v = plan.p.mul(&plan.q)?;
    let upow = powers(&plan.u, big)?;
    let vpow = powers(&v, big / 2)?;
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        let big_n = job.step.exponent(n) as i64;
        let mut acc = BigInt::zero();
        for j in 0..=big_n / 2 {
            let coef = binom(big_n, 2 * j) * binom(2 * j, j);
            acc += coef * pairing(&upow[(big_n - 2 * j) as usize], &vpow[j as usize]);
        }
        out.push(acc);
    }
    Ok(out)
}

fn powers(s: &LaurentPoly, n: usize) -> Result<Vec<LaurentPoly>> {
    let mut out = vec![LaurentPoly::one(s.dim)?];
    for k in 0..n {
        let next = out[k].mul(s)?;
        out.push(next);
    }
    Ok(out)
}

/// Constant term of `a * b`.
fn pairing(a: &LaurentPoly, b: &LaurentPoly) -> BigInt {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut acc = BigInt::zero();
    for (e, c) in &small.terms {
        let mut neg = [0; MAX_DIM];
        for i in 0..MAX_DIM {
            neg[i] = -e[i];
        }
        if let Some(d) = large.terms.get(&neg) {
            acc += c * d;
        }
    }
    acc
}

/// `x^2/y + y + 1/x + 1/(xy)` in variables `(x, y)`.
pub fn polygon_2d() -> LaurentPoly {
    LaurentPoly::from_terms(2, [(1, &[2, -1][..]), (1, &[0, 1]), (1, &[-1, 0]), (1, &[-1, -1])]).expect("valid")
}

/// The four-variable polynomial in `(x, y, z, t)` whose even powers give the
/// order-4 sequence stored as "325", split for elimination of `t`.
pub fn job_325() -> CTJob {
    let u: &[[i32; 4]] = &[
        [-1, 0, 0, 0],
        [-1, 1, 0, 0],
        [1, -1, 0, 0],
        [-1, 0, 1, 0],
        [1, 0, -1, 0],
        [-1, 1, 1, 0],
        [1, -1, -1, 0],
    ];
    let p: &[[i32; 4]] = &[[-1, 0, 0, 1], [-1, 1, 0, 1], [-1, 1, 1, 1]];
    let q: &[[i32; 4]] = &[[1, 0, 0, -1], [1, -1, 0, -1], [1, -1, -1, -1]];
    let mk = |es: &[[i32; 4]]| LaurentPoly::from_terms(4, es.iter().map(|e| (1, &e[..]))).expect("valid");
    let (u, p, q) = (mk(u), mk(p), mk(q));
    let s = mk(&[u.terms.keys().copied().collect::<Vec<_>>(), p.terms.keys().copied().collect(), q.terms.keys().copied().collect()].concat());
    CTJob { s, step: PowerStep::Double, plan: Some(EliminationPlan { var: 3, u, p, q }) }
}

/// The "325" sequence through the elimination route.
pub fn seq325(len: usize) -> Vec<crate::exact::Rat> {
    ct_eliminated_sequence(&job_325(), len)
        .expect("valid plan")
        .into_iter()
        .map(crate::exact::Rat::from_integer)
        .collect()
}

impl fmt::Display for LaurentPoly {
    /// Polytope file format: `dim=<d>`, then `coefficient e_1 ... e_d` per term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim={}", self.dim)?;
        for (c, e) in self.terms() {
            let es: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{} {}", c, es.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (k, head) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty polytope file".into() })?;
        let dim: usize = head
            .strip_prefix("dim=")
            .and_then(|d| d.trim().parse().ok())
            .ok_or_else(|| Error::Parse { line: k, msg: format!("expected `dim=<d>`, found `{head}`") })?;
        let mut p = LaurentPoly::zero(dim).map_err(|e| Error::Parse { line: k, msg: e.to_string() })?;
        for (k, line) in lines {
            let mut fields = line.split_whitespace();
            let c: BigInt = fields
                .next()
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| Error::Parse { line: k, msg: "bad coefficient".into() })?;
            let e: Vec<i32> = fields
                .map(|v| v.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse { line: k, msg: "bad exponent".into() })?;
            if e.len() != dim {
                return Err(Error::Parse { line: k, msg: format!("expected {dim} exponents, found {}", e.len()) });
            }
            p.add_term(c, &e)?;
        }
        Ok(p)
    }
}
