//! Lucas and Dwork type congruences and a suite of binomial identities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{binom, Rat};

/// Little-endian base-`p` digits; zero has no digits.
pub fn base_p_digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p);
        n /= p;
    }
    out
}

/// A failing `n` with `A_n mod p` and `prod A_{n_i} mod p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub n: u64,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DworkReport {
    pub p: u64,
    pub depth: u32,
    /// Every `n < p^depth` was tested.
    pub tested: u64,
    pub violations: Vec<Witness>,
}

impl DworkReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for DworkReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "p={} K={} tested={} ", self.p, self.depth, self.tested)?;
        match self.violations.first() {
            None => write!(f, "pass"),
            Some(w) => write!(
                f,
                "fail violations={} first: n={} A_n={} prod={} (mod {})",
                self.violations.len(),
                w.n,
                w.lhs,
                w.rhs,
                self.p
            ),
        }
    }
}

fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).try_into().expect("residue fits")
}

/// Checks `A_n = A_{n_0} A_{n_1} ... (mod p)` for all `n < p^depth`, with
/// `n = n_0 + n_1 p + ...` and the empty product equal to 1.
pub fn dwork_check(seq: &[Rat], p: u64, depth: u32) -> Result<DworkReport> {
    if p < 2 {
        return Err(Error::Invalid(format!("{p} is not a prime")));
    }
    let bound = p.checked_pow(depth).ok_or_else(|| Error::Invalid("p^K overflows".into()))?;
    if (seq.len() as u64) < bound {
        return Err(Error::InsufficientTerms { needed: bound as usize, got: seq.len() });
    }
    let mut res = Vec::with_capacity(bound as usize);
    for (i, a) in seq.iter().take(bound as usize).enumerate() {
        if !a.is_integer() {
            return Err(Error::NonInteger(i));
        }
        res.push(residue(&a.to_integer(), p));
    }
    let mut violations = Vec::new();
    for n in 0..bound {
        let rhs = base_p_digits(n, p).iter().fold(1 % p, |acc, &d| acc * res[d as usize] % p);
        let lhs = res[n as usize];
        if lhs != rhs {
            violations.push(Witness { n, lhs, rhs });
        }
    }
    Ok(DworkReport { p, depth, tested: bound, violations })
}

/// Lucas' theorem `binom(n,k) = prod binom(n_i,k_i) (mod p)` for all
/// `0 <= k <= n <= bound`.
pub fn lucas_check(p: u64, bound: u64) -> bool {
    (0..=bound).all(|n| {
        let nd = base_p_digits(n, p);
        (0..=n).all(|k| {
            let kd = base_p_digits(k, p);
            let rhs = nd.iter().enumerate().fold(BigInt::one(), |acc, (i, &a)| {
                acc * binom(a as i64, kd.get(i).copied().unwrap_or(0) as i64)
            });
            residue(&binom(n as i64, k as i64), p) == residue(&rhs, p)
        })
    })
}

fn b(n: i64, k: i64) -> BigInt {
    binom(n, k)
}

fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Result of one identity over its whole range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityResult {
    pub name: &'static str,
    pub statement: &'static str,
    /// First failing `(n, free index)`, if any.
    pub failure: Option<(i64, i64)>,
}

impl IdentityResult {
    pub fn passes(&self) -> bool {
        self.failure.is_none()
    }
}

fn identity_1(n: i64) -> bool {
    let lhs: BigInt = (0..=n).map(|k| b(n, k) * b(n, k) * b(3 * k, 2 * n)).sum();
    let rhs: BigInt = (0..=n).map(|k| b(n, k) * b(n, k) * b(2 * k, k)).sum();
    lhs == rhs
}

fn identity_2(n: i64) -> bool {
    let lhs: BigInt = (0..=n).map(|k| sign(n + k) * b(n, k) * b(n + k, n) * b(n + k, n)).sum();
    let rhs: BigInt = (0..=n).map(|k| b(n, k) * b(n, k) * b(n + k, n)).sum();
    lhs == rhs
}

fn identity_3(n: i64, l: i64) -> bool {
    let lhs: BigInt = (0..=n).map(|k| sign(k + l) * b(n, k) * b(n, 2 * l - k)).sum();
    lhs == b(n, l)
}

fn identity_4(n: i64, k: i64) -> bool {
    let lhs: BigInt = (0..=n)
        .map(|l| sign(n + k + l) * b(n, l) * b(2 * l, n - k) * b(2 * n - 2 * l, k))
        .sum();
    lhs == num_traits::pow(BigInt::from(2), n as usize) * b(n, k)
}

/// Checks the four identities for every `n <= bound` and every free index in
/// `0..=n`.
pub fn identity_suite(bound: i64) -> Vec<IdentityResult> {
    let single = |f: fn(i64) -> bool| (0..=bound).find(|&n| !f(n)).map(|n| (n, 0));
    let double = |f: fn(i64, i64) -> bool| {
        (0..=bound).find_map(|n| (0..=n).find(|&j| !f(n, j)).map(|j| (n, j)))
    };
    vec![
        IdentityResult {
            name: "identity-1",
            statement: "sum binom(n,k)^2 binom(3k,2n) = sum binom(n,k)^2 binom(2k,k)",
            failure: single(identity_1),
        },
        IdentityResult {
            name: "identity-2",
            statement: "sum (-1)^(n+k) binom(n,k) binom(n+k,n)^2 = sum binom(n,k)^2 binom(n+k,n)",
            failure: single(identity_2),
        },
        IdentityResult {
            name: "identity-3",
            statement: "sum_k (-1)^(k+l) binom(n,k) binom(n,2l-k) = binom(n,l)",
            failure: double(identity_3),
        },
        IdentityResult {
            name: "identity-4",
            statement: "sum_l (-1)^(n+k+l) binom(n,l) binom(2l,n-k) binom(2n-2l,k) = 2^n binom(n,k)",
            failure: double(identity_4),
        },
    ]
}
