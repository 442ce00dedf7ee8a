//! Coefficient formulas obtained from identically vanishing binomial sums.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binom, Rat};

/// Printed prefactors `C_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prefactor {
    One,
    /// `binom(2n,n)`
    Central,
    /// `binom(2n,n)^2`
    CentralSq,
    /// `binom(2n,n)^3`
    CentralCube,
    /// `binom(2n,n)^-1`
    CentralInv,
    /// `binom(2n,n) binom(4n,2n)`
    CentralQuartic,
    /// `(5n)! / ((2n)! n!^3)`
    Quintic,
}

/// Printed weights `E(n,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    One,
    /// `binom(2n,k)^-1 binom(2n,n-k)^-1`
    InvPair,
    /// `binom(2n,k) binom(2n,n-k)`
    Pair,
    /// `binom(2k,k) binom(2n-2k,n-k)`
    Centrals,
    /// `binom(2k,k) binom(2n-2k,n-k) binom(2n,2k)^-1`
    CentralsOverEven,
    /// `binom(2k,k) binom(2n-2k,n-k) binom(n+k,n)^-1 binom(2n-k,n)^-1`
    CentralsOverShifted,
    /// `binom(n+k,n)^-1 binom(2n-k,n)^-1`
    InvShifted,
    /// `binom(2n,2k)^-1`
    InvEven,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptySumFamily {
    pub radix: u32,
    pub a: i32,
    pub c: Prefactor,
    pub e: Weight,
}

/// `(id, radix, a, C_n, E)` for every tabulated row.
const TABLE: &[(&str, u32, i32, Prefactor, Weight)] = &[
    ("133", 3, -1, Prefactor::CentralSq, Weight::One),
    ("279", 3, 1, Prefactor::One, Weight::One),
    ("334", 3, 1, Prefactor::CentralSq, Weight::InvPair),
    ("281", 3, 2, Prefactor::CentralSq, Weight::InvPair),
    ("363", 3, -3, Prefactor::CentralQuartic, Weight::Pair),
    ("352", 3, -1, Prefactor::One, Weight::Centrals),
    ("253", 3, 0, Prefactor::Central, Weight::CentralsOverEven),
    ("353", 3, -1, Prefactor::Central, Weight::CentralsOverEven),
    ("350", 3, -2, Prefactor::CentralCube, Weight::CentralsOverShifted),
    ("300", 4, -2, Prefactor::Quintic, Weight::InvShifted),
    ("36", 4, -2, Prefactor::Central, Weight::One),
    ("364", 4, -1, Prefactor::One, Weight::One),
    ("357", 4, 0, Prefactor::CentralInv, Weight::One),
    ("205", 4, 0, Prefactor::One, Weight::InvEven),
    ("365", 4, -3, Prefactor::One, Weight::Centrals),
    ("354", 5, -3, Prefactor::One, Weight::One),
    ("b*eta", 5, -2, Prefactor::One, Weight::One),
    ("347", 6, -4, Prefactor::CentralSq, Weight::One),
];

fn b(n: i64, k: i64) -> Rat {
    Rat::from_integer(binom(n, k))
}

impl Prefactor {
    fn eval(self, n: i64) -> Rat {
        match self {
            Prefactor::One => Rat::one(),
            Prefactor::Central => b(2 * n, n),
            Prefactor::CentralSq => b(2 * n, n) * b(2 * n, n),
            Prefactor::CentralCube => b(2 * n, n) * b(2 * n, n) * b(2 * n, n),
            Prefactor::CentralInv => Rat::one() / b(2 * n, n),
            Prefactor::CentralQuartic => b(2 * n, n) * b(4 * n, 2 * n),
            // (5n)!/((2n)! n!^3) = binom(5n,2n) binom(3n,n) binom(2n,n)
            Prefactor::Quintic => b(5 * n, 2 * n) * b(3 * n, n) * b(2 * n, n),
        }
    }
}

impl Weight {
    fn eval(self, n: i64, k: i64) -> Rat {
        let centrals = || b(2 * k, k) * b(2 * n - 2 * k, n - k);
        match self {
            Weight::One => Rat::one(),
            Weight::InvPair => Rat::one() / (b(2 * n, k) * b(2 * n, n - k)),
            Weight::Pair => b(2 * n, k) * b(2 * n, n - k),
            Weight::Centrals => centrals(),
            Weight::CentralsOverEven => centrals() / b(2 * n, 2 * k),
            Weight::CentralsOverShifted => centrals() / (b(n + k, n) * b(2 * n - k, n)),
            Weight::InvShifted => Rat::one() / (b(n + k, n) * b(2 * n - k, n)),
            Weight::InvEven => Rat::one() / b(2 * n, 2 * k),
        }
    }
}

impl EmptySumFamily {
    /// Accepts only parameter combinations that appear in the tables.
    pub fn new(radix: u32, a: i32, c: Prefactor, e: Weight) -> Result<Self> {
        if TABLE.iter().any(|&(_, m, aa, cc, ee)| (m, aa, cc, ee) == (radix, a, c, e)) {
            Ok(EmptySumFamily { radix, a, c, e })
        } else {
            Err(Error::UnknownFamily(format!("radix {radix}, a = {a}, {c:?}, {e:?}")))
        }
    }

    /// The tabulated row with the given catalog id.
    pub fn row(id: &str) -> Result<Self> {
        TABLE
            .iter()
            .find(|r| r.0 == id)
            .map(|&(_, radix, a, c, e)| EmptySumFamily { radix, a, c, e })
            .ok_or_else(|| Error::UnknownFamily(id.to_string()))
    }

    pub fn ids() -> impl Iterator<Item = &'static str> {
        TABLE.iter().map(|r| r.0)
    }
}

/// Evaluates the coefficient formula of a tabulated family. The formulas hold
/// for `n >= 1`; `A_0 = 1`.
pub fn empty_sum_eval(family: &EmptySumFamily, n: usize) -> Result<Rat> {
    EmptySumFamily::new(family.radix, family.a, family.c, family.e)?;
    if n == 0 {
        return Ok(Rat::one());
    }
    let m = family.radix as i64;
    let n = n as i64;
    let pow = (m + family.a as i64) as usize;
    let cn = family.c.eval(n);
    let lower = if m == 6 { 3 * n } else { (m - 2) * n };
    let mut acc = Rat::zero();
    for k in 0..=n / m {
        let sign = if m % 2 == 1 && k % 2 == 1 { -Rat::one() } else { Rat::one() };
        let base = Rat::from_integer(num_traits::pow(binom(n, k), pow));
        let frac = Rat::new((n - 2 * k).into(), ((m - 1) * n - m * k).into());
        let tail = b((m - 1) * n - m * k, lower);
        acc += sign * frac * base * family.e.eval(n, k) * tail;
    }
    let outer = match m {
        3 => Rat::one(),
        4 => b(2 * n, n),
        5 => b(2 * n, n) * b(3 * n, n),
        _ => Rat::one(),
    };
    Ok(Rat::from_integer(m.into()) * outer * cn * acc)
}
