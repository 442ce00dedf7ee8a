//! Exact arithmetic kernel: big rationals, dense polynomials, truncated
//! power series, log-series and a few combinatorial primitives.

mod comb;
mod logseries;
mod poly;
mod series;

pub use comb::{binom, binom_i, factorial, harmonic, stirling2_row};
pub use logseries::LogSeries;
pub use poly::Poly;
pub use series::PowerSeries;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Shorthand used throughout the crate.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

pub fn is_integral(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Least common multiple of the denominators of `xs` (1 for an empty slice).
pub fn denom_lcm<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Positive gcd of the numerators; zero when all entries vanish.
pub fn content<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x))
        .abs()
}

/// Parse `123`, `-7` or `num/den`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// Render integers without the `/1` suffix.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
