//! Coefficient sequences: closed formulas, empty-sum families, Hadamard
//! products and recurrences of catalog operators.

pub mod empty_sum;
pub mod formulas;
pub mod zagier;

use std::fmt;

pub use empty_sum::{empty_sum_eval, EmptySumFamily, Prefactor, Weight};
pub use zagier::{zagier_seq, ZagierParams};

use crate::error::{Error, Result};
use crate::exact::{binom, Rat};

/// How a catalog sequence is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    ClosedSum,
    Recurrence,
    Hadamard,
    ConstantTerm,
    /// Listed for reference; no evaluator exists.
    Stub,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::ClosedSum => "closed-sum",
            Kind::Recurrence => "recurrence",
            Kind::Hadamard => "hadamard",
            Kind::ConstantTerm => "constant-term",
            Kind::Stub => "stub",
        })
    }
}

enum Gen {
    Term(fn(usize) -> Rat),
    Block(fn(usize) -> Vec<Rat>),
    EmptySum,
    Hadamard(fn(usize) -> Result<Vec<Rat>>),
    Recurrence,
    ConstantTerm,
    Stub,
}

fn central(n: usize) -> Rat {
    let n = n as i64;
    Rat::from_integer(binom(2 * n, n))
}

fn trinomial(n: usize) -> Rat {
    let n = n as i64;
    Rat::from_integer(binom(2 * n, n) * binom(3 * n, n))
}

fn gen(id: &str) -> Option<Gen> {
    use formulas::*;
    Some(match id {
        "eta" => Gen::Term(eta_short),
        "14" => Gen::Term(hyper14),
        "15" => Gen::Term(seq15),
        "22" => Gen::Term(seq22),
        "27h" => Gen::Term(seq27h),
        "193" => Gen::Term(seq193),
        "198" => Gen::Term(seq198),
        "264" => Gen::Term(seq264),
        "349" => Gen::Term(seq349),
        "360" => Gen::Term(seq360),
        "poly2d" => Gen::Term(poly2d),
        "sym0" => Gen::Term(|n| symmetric_zero(n, 7)),
        "34" => Gen::Block(|len| squared_multinomials(5, len)),
        "130" => Gen::Block(|len| squared_multinomials(6, len)),
        "133" => Gen::Hadamard(|len| {
            let f = zagier_seq(ZagierParams::Second { a: 9, b: 3, c: 27 }, len.saturating_sub(1))?;
            let c: Vec<Rat> = (0..len).map(|n| central(n) * central(n)).collect();
            hadamard(&c, &f[..len])
        }),
        "c*eta" => Gen::Hadamard(|len| {
            let e: Vec<Rat> = (0..len).map(formulas::eta_short).collect();
            hadamard(&(0..len).map(central).collect::<Vec<_>>(), &e)
        }),
        "b*eta" => Gen::Hadamard(|len| {
            let e: Vec<Rat> = (0..len).map(formulas::eta_short).collect();
            hadamard(&(0..len).map(trinomial).collect::<Vec<_>>(), &e)
        }),
        "366" | "32pb" | "hyp5" | "hyp5pb" | "zud5" => Gen::Recurrence,
        "325" => Gen::ConstantTerm,
        "117" => Gen::Stub,
        _ if EmptySumFamily::row(id).is_ok() => Gen::EmptySum,
        _ => return None,
    })
}

/// Generator kind of a sequence id.
pub fn kind(id: &str) -> Result<Kind> {
    Ok(match gen(id).ok_or_else(|| Error::UnknownId(id.to_string()))? {
        Gen::Term(_) | Gen::Block(_) | Gen::EmptySum => Kind::ClosedSum,
        Gen::Hadamard(_) => Kind::Hadamard,
        Gen::Recurrence => Kind::Recurrence,
        Gen::ConstantTerm => Kind::ConstantTerm,
        Gen::Stub => Kind::Stub,
    })
}

/// Ids with a generator, in catalog order.
pub fn ids() -> Vec<&'static str> {
    let mut out = vec![
        "eta", "14", "15", "22", "27h", "34", "130", "133", "193", "198", "264", "349", "360", "366", "325", "poly2d",
        "c*eta", "b*eta", "32pb", "hyp5", "hyp5pb", "zud5", "sym0", "117",
    ];
    out.extend(EmptySumFamily::ids().filter(|id| !matches!(*id, "133" | "b*eta")));
    out
}

/// `A_n` of the sequence `id`.
pub fn eval(id: &str, n: usize) -> Result<Rat> {
    match gen(id).ok_or_else(|| Error::UnknownId(id.to_string()))? {
        Gen::Term(f) => Ok(f(n)),
        Gen::EmptySum => empty_sum_eval(&EmptySumFamily::row(id)?, n),
        _ => Ok(generate(id, n + 1)?.pop().expect("nonempty")),
    }
}

/// `A_0, ..., A_{len-1}` of the sequence `id`.
pub fn generate(id: &str, len: usize) -> Result<Vec<Rat>> {
    match gen(id).ok_or_else(|| Error::UnknownId(id.to_string()))? {
        Gen::Term(f) => Ok((0..len).map(f).collect()),
        Gen::Block(f) => Ok(f(len)),
        Gen::EmptySum => {
            let fam = EmptySumFamily::row(id)?;
            (0..len).map(|n| empty_sum_eval(&fam, n)).collect()
        }
        Gen::Hadamard(f) => f(len),
        Gen::Recurrence => crate::catalog::operator(id)?.series_solution(len),
        Gen::ConstantTerm => Ok(crate::laurent::seq325(len)),
        Gen::Stub => Err(Error::NoEvaluator(id.to_string())),
    }
}

/// Termwise product `sum u_n v_n x^n`.
pub fn hadamard(u: &[Rat], v: &[Rat]) -> Result<Vec<Rat>> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    Ok(u.iter().zip(v).map(|(a, b)| a * b).collect())
}
