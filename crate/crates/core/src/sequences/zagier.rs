//! Second and third order families `θ² − x(aθ²+aθ+b) + cx²(θ+1)²` and
//! `θ³ − x(2θ+1)(aθ²+aθ+b) + cx²(θ+1)³`.

use crate::error::{Error, Result};
use crate::exact::{rat, Poly, Rat};
use crate::ops::ThetaOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZagierParams {
    Second { a: i64, b: i64, c: i64 },
    Third { a: i64, b: i64, c: i64 },
}

impl ZagierParams {
    pub fn operator(&self) -> Result<ThetaOperator> {
        let t1 = Poly::linear(rat(1), rat(1));
        match *self {
            ZagierParams::Second { a, b, c } => {
                let p0 = Poly::monomial(2, rat(1));
                let p1 = Poly::from_ints(&[-b, -a, -a]);
                let p2 = t1.pow(2).scale(&rat(c));
                ThetaOperator::new(vec![p0, p1, p2])
            }
            ZagierParams::Third { a, b, c } => {
                let p0 = Poly::monomial(3, rat(1));
                let p1 = &Poly::from_ints(&[1, 2]) * &Poly::from_ints(&[-b, -a, -a]);
                let p2 = t1.pow(3).scale(&rat(c));
                ThetaOperator::new(vec![p0, p1, p2])
            }
        }
    }
}

/// `A_0, ..., A_N` from the recurrence of the family operator.
pub fn zagier_seq(params: ZagierParams, n: usize) -> Result<Vec<Rat>> {
    let rec = params.operator()?.to_recurrence();
    // The leading coefficient is a power of (n + 2) and never vanishes.
    match rec.advance(&[rat(1)], n + 1) {
        Err(Error::VanishingLeading(m)) => unreachable!("leading coefficient vanished at {m}"),
        other => other,
    }
}
