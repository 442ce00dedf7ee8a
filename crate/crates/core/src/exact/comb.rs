use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rat;

/// Binomial coefficient with the convention `binom(n, k) = 0` for `k < 0`
/// or `k > n`. Negative `n` also yields 0; no catalog formula needs the
/// extension to negative upper index.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `binom` as a rational, convenient inside summations.
pub fn binom_i(n: i64, k: i64) -> Rat {
    Rat::from_integer(binom(n, k))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// H_n = 1 + 1/2 + ... + 1/n, and 0 for every n <= 0.
pub fn harmonic(n: i64) -> Rat {
    let mut acc = Rat::zero();
    for j in 1..=n {
        acc += Rat::new(BigInt::one(), BigInt::from(j));
    }
    acc
}

/// Stirling numbers of the second kind S(k, 0..=k).
pub fn stirling2_row(k: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for n in 1..=k {
        let mut next = vec![BigInt::zero(); n + 1];
        for j in 1..=n {
            let carry = if j < row.len() { &row[j] * j } else { BigInt::zero() };
            next[j] = carry + &row[j - 1];
        }
        row = next;
    }
    row
}
