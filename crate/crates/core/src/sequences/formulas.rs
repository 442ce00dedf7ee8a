//! Closed binomial and harmonic sum formulas for coefficient sequences.
//!
//! Every function returns `A_n` exactly; formulas stated only for `n > 0`
//! return 1 at `n = 0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{binom, factorial, harmonic, Rat};

/// Rows `0..=m` of Pascal's triangle.
fn pascal(m: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m + 1);
    for r in 0..=m {
        let mut row = vec![BigInt::one(); r + 1];
        for c in 1..r {
            row[c] = &rows[r - 1][c - 1] + &rows[r - 1][c];
        }
        rows.push(row);
    }
    rows
}

fn b(n: i64, k: i64) -> Rat {
    Rat::from_integer(binom(n, k))
}

fn bpow(n: i64, k: i64, e: u32) -> Rat {
    Rat::from_integer(num_traits::pow(binom(n, k), e as usize))
}

fn sign(k: i64) -> Rat {
    if k % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

fn int(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

/// `(3k)!/k!^3` written as `binom(2k, k) binom(3k, k)`.
fn trinomial3(k: i64) -> Rat {
    b(2 * k, k) * b(3 * k, k)
}

/// `(5k)!/k!^5` as a product of binomials.
fn multinomial5(k: i64) -> Rat {
    b(2 * k, k) * b(3 * k, k) * b(4 * k, k) * b(5 * k, k)
}

/// The third order eta sequence in its original form:
/// `5 binom(2n,n)^-1 binom(3n,n)^-1 sum (-1)^k (n-2k)/(4n-5k) binom(n,k)^-2
/// binom(n,5k) binom(5n-5k,n)^-1 (5k)!/k!^5 (5n-5k)!/(n-k)!^5`.
pub fn eta_original(n: usize) -> Rat {
    if n == 0 {
        return Rat::one();
    }
    let n = n as i64;
    let mut acc = Rat::zero();
    for k in 0..=n / 5 {
        let t = sign(k) * int(n - 2 * k) / int(4 * n - 5 * k) / bpow(n, k, 2) * b(n, 5 * k) / b(5 * n - 5 * k, n)
            * multinomial5(k)
            * multinomial5(n - k);
        acc += t;
    }
    int(5) * acc / b(2 * n, n) / b(3 * n, n)
}

/// `5 sum (-1)^k (n-2k)/(4n-5k) binom(n,k)^3 binom(4n-5k,3n)`.
pub fn eta_short(n: usize) -> Rat {
    eta_short_exp(n, 3)
}

/// The same sum with `binom(n,k)^e`; the exponent 2 variant appears when the
/// radix-5 empty-sum formula is specialized.
pub fn eta_short_exp(n: usize, e: u32) -> Rat {
    if n == 0 {
        return Rat::one();
    }
    let n = n as i64;
    let mut acc = Rat::zero();
    for k in 0..=n / 5 {
        acc += sign(k) * int(n - 2 * k) / int(4 * n - 5 * k) * bpow(n, k, e) * b(4 * n - 5 * k, 3 * n);
    }
    int(5) * acc
}

/// `sum (-1)^k binom(n,k)^3 (binom(4n-5k-1,3n) + binom(4n-5k,3n))`, the
/// manifestly integral form.
pub fn eta_integral(n: usize) -> Rat {
    if n == 0 {
        return Rat::one();
    }
    let n = n as i64;
    let mut acc = Rat::zero();
    for k in 0..=n / 5 {
        acc += sign(k) * bpow(n, k, 3) * (b(4 * n - 5 * k - 1, 3 * n) + b(4 * n - 5 * k, 3 * n));
    }
    acc
}

/// Hypergeometric `12^{6n} (1/12)_n (5/12)_n (7/12)_n (11/12)_n / n!^4`,
/// computed as the product `prod_{j=1}^n 144 (12j-11)(12j-7)(12j-5)(12j-1) / j^4`.
pub fn hyper14(n: usize) -> Rat {
    let mut acc = Rat::one();
    for j in 1..=n as i64 {
        acc = acc * int(144) * int(12 * j - 11) * int(12 * j - 7) * int(12 * j - 5) * int(12 * j - 1) / int(j * j * j * j);
    }
    acc
}

/// `(3n)!/n!^3 sum binom(n,k)^3`.
pub fn seq15(n: usize) -> Rat {
    let n = n as i64;
    let s: Rat = (0..=n).map(|k| bpow(n, k, 3)).sum();
    trinomial3(n) * s
}

/// `sum binom(n,k)^5`.
pub fn seq22(n: usize) -> Rat {
    let n = n as i64;
    (0..=n).map(|k| bpow(n, k, 5)).sum()
}

/// `sum binom(n,k)^7 (1 + k(-7H_k + 7H_{n-k}))`.
pub fn seq27h(n: usize) -> Rat {
    let n = n as i64;
    (0..=n)
        .map(|k| bpow(n, k, 7) * (Rat::one() + int(k) * (int(-7) * harmonic(k) + int(7) * harmonic(n - k))))
        .sum()
}

/// The vanishing symmetric sum `sum (n-2k) binom(n,k)^e`.
pub fn symmetric_zero(n: usize, e: u32) -> Rat {
    let n = n as i64;
    (0..=n).map(|k| int(n - 2 * k) * bpow(n, k, e)).sum()
}

/// `sum_{i_1+..+i_m=n} (n!/(i_1!..i_m!))^2 = n!^2 [x^n] (sum x^i/i!^2)^m`,
/// for all `n < len`.
pub fn squared_multinomials(m: usize, len: usize) -> Vec<Rat> {
    let base: Vec<Rat> = (0..len as u64)
        .map(|i| {
            let f = Rat::from_integer(factorial(i));
            Rat::one() / (&f * &f)
        })
        .collect();
    let mut pow = vec![Rat::zero(); len];
    if len > 0 {
        pow[0] = Rat::one();
    }
    for _ in 0..m {
        let mut next = vec![Rat::zero(); len];
        for (i, a) in pow.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in base.iter().take(len - i).enumerate() {
                next[i + j] += a * c;
            }
        }
        pow = next;
    }
    pow.into_iter()
        .enumerate()
        .map(|(n, c)| {
            let f = Rat::from_integer(factorial(n as u64));
            c * &f * &f
        })
        .collect()
}

/// `sum_{k,l} binom(n,k)^2 binom(n,l)^2 binom(k+l,l) binom(n+k+l,n)`.
pub fn seq193(n: usize) -> Rat {
    let t = pascal(3 * n);
    let mut acc = BigInt::zero();
    for k in 0..=n {
        let bk = &t[n][k] * &t[n][k];
        for l in 0..=n {
            acc += &bk * &t[n][l] * &t[n][l] * &t[k + l][l] * &t[n + k + l][n];
        }
    }
    Rat::from_integer(acc)
}

/// `sum_{k,l} binom(n,k)^2 binom(n,l)^2 binom(k+l,l) binom(2n-k,n)`.
pub fn seq198(n: usize) -> Rat {
    let t = pascal(2 * n);
    let mut acc = BigInt::zero();
    for k in 0..=n {
        let bk = &t[n][k] * &t[n][k] * &t[2 * n - k][n];
        for l in 0..=n {
            acc += &bk * &t[n][l] * &t[n][l] * &t[k + l][l];
        }
    }
    Rat::from_integer(acc)
}

/// The two-block harmonic formula: `16^{-n} binom(2n,n)^2 (S_1 + S_2)` with
/// a harmonic-weighted sum over `0..=n` and a correction sum over `1..=n`.
pub fn seq264(n: usize) -> Rat {
    let n = n as i64;
    let h = harmonic;
    let mut s1 = Rat::zero();
    for k in 0..=n {
        let w = b(n, k) * b(2 * k, k) * b(2 * n - 2 * k, n - k) * bpow(2 * n + 2 * k, n + k, 2) * bpow(4 * n - 2 * k, 2 * n - k, 2)
            / b(2 * n, k)
            / b(2 * n, n - k);
        let hs = int(-2) * h(k) + int(2) * h(n - k) - int(3) * h(n + k) + int(3) * h(2 * n - k) + int(2) * h(2 * k)
            - int(2) * h(2 * n - 2 * k)
            + int(4) * h(2 * n + 2 * k)
            - int(4) * h(4 * n - 2 * k);
        s1 += w * (Rat::one() + int(k) * hs);
    }
    let mut s2 = Rat::zero();
    for k in 1..=n {
        s2 += int(n + 2 * k) / int(k) * b(2 * n + k, 2 * n) * b(2 * n + 2 * k, n + k) * bpow(2 * n - 2 * k, n - k, 2)
            * bpow(4 * n + 2 * k, 2 * n + k, 2)
            / b(2 * k, k)
            / b(n + k, n)
            / b(2 * n, n + k);
    }
    let scale = bpow(2 * n, n, 2) / Rat::from_integer(num_traits::pow(num_bigint::BigInt::from(16), n as usize));
    scale * (s1 + s2)
}

/// `sum_{k,l} (-1)^{n+k} 3^{n-3k} binom(n,3k) (3k)!/k!^3 binom(n,l) binom(2k,n-l) binom(2l,n)`.
pub fn seq349(n: usize) -> Rat {
    let n = n as i64;
    let mut acc = Rat::zero();
    for k in 0..=n / 3 {
        let pre = sign(n + k)
            * Rat::from_integer(num_traits::pow(num_bigint::BigInt::from(3), (n - 3 * k) as usize))
            * b(n, 3 * k)
            * trinomial3(k);
        for l in 0..=n {
            let t = b(n, l) * b(2 * k, n - l) * b(2 * l, n);
            if !t.is_zero() {
                acc += &pre * t;
            }
        }
    }
    acc
}

/// `sum binom(n,k) binom(n+3k,n) binom(4n-3k,n) (3k)!/k!^3 (3n-3k)!/(n-k)!^3
/// (1 + k(-4H_k + 4H_{n-k} + 3H_{n+3k} - 3H_{4n-3k}))`.
pub fn seq360(n: usize) -> Rat {
    let n = n as i64;
    let h = harmonic;
    let mut acc = Rat::zero();
    for k in 0..=n {
        let w = b(n, k) * b(n + 3 * k, n) * b(4 * n - 3 * k, n) * trinomial3(k) * trinomial3(n - k);
        let hs = int(-4) * h(k) + int(4) * h(n - k) + int(3) * h(n + 3 * k) - int(3) * h(4 * n - 3 * k);
        acc += w * (Rat::one() + int(k) * hs);
    }
    acc
}

/// Constant terms of `(x^2/y + y + 1/x + 1/(xy))^n` in closed form:
/// `sum binom(n,3k) binom(3k,k) binom(2k,n-4k)`.
pub fn poly2d(n: usize) -> Rat {
    let n = n as i64;
    (0..=n / 3).map(|k| b(n, 3 * k) * b(3 * k, k) * b(2 * k, n - 4 * k)).sum()
}
