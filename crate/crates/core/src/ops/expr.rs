//! Parser for operators written in the usual notation, e.g.
//! `theta^3 - x(2theta+1)(11theta^2+11theta+5) + 125x^2(theta+1)^3`.
//!
//! Every term is read as `x^i * P(theta)` with `x` standing to the left, so
//! the expression can be expanded as a commutative polynomial in `x` and
//! `theta`. `t` and `θ` are accepted for `theta`; `·` and `*` both mean
//! multiplication and juxtaposition is implicit multiplication.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ThetaOperator;
use crate::error::{Error, Result};
use crate::exact::{Poly, Rat};

type Bivariate = BTreeMap<(usize, usize), Rat>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Theta,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(text.parse().unwrap()));
            }
            'x' => out.push(Tok::X),
            'θ' => out.push(Tok::Theta),
            't' => {
                let rest: String = chars[i..].iter().take(5).collect();
                if rest == "theta" {
                    i += 4;
                }
                out.push(Tok::Theta);
            }
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' | '·' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' | '[' | '{' => out.push(Tok::Open),
            ')' | ']' | '}' => out.push(Tok::Close),
            _ => return Err(Error::Parse { line: 1, msg: format!("unexpected character `{c}`") }),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

fn mul(a: &Bivariate, b: &Bivariate) -> Bivariate {
    let mut out = Bivariate::new();
    for ((i, j), c) in a {
        for ((k, l), d) in b {
            let e = out.entry((i + k, j + l)).or_insert_with(Rat::zero);
            *e += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn add(a: &Bivariate, b: &Bivariate, sign: i64) -> Bivariate {
    let mut out = a.clone();
    for (k, c) in b {
        let e = out.entry(*k).or_insert_with(Rat::zero);
        if sign < 0 {
            *e -= c;
        } else {
            *e += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn constant(c: Rat) -> Bivariate {
    let mut m = Bivariate::new();
    if !c.is_zero() {
        m.insert((0, 0), c);
    }
    m
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: 1, msg: format!("{msg} at token {}", self.pos + 1) }
    }

    fn expr(&mut self) -> Result<Bivariate> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                add(&Bivariate::new(), &self.term()?, -1)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = add(&acc, &self.term()?, 1);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = add(&acc, &self.term()?, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Bivariate> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = mul(&acc, &self.power()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    let c = match d.len() {
                        1 if d.contains_key(&(0, 0)) => d[&(0, 0)].clone(),
                        _ => return Err(self.err("division by a non-constant")),
                    };
                    acc = mul(&acc, &constant(Rat::one() / c));
                }
                Some(Tok::Num(_)) | Some(Tok::X) | Some(Tok::Theta) | Some(Tok::Open) => {
                    acc = mul(&acc, &self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Bivariate> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Num(n)) => n.clone(),
                _ => return Err(self.err("expected an integer exponent")),
            };
            self.pos += 1;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            let mut out = constant(Rat::one());
            for _ in 0..e {
                out = mul(&out, &base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Bivariate> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(constant(Rat::from_integer(n))),
            Tok::X => Ok(BTreeMap::from([((1, 0), Rat::one())])),
            Tok::Theta => Ok(BTreeMap::from([((0, 1), Rat::one())])),
            Tok::Open => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Minus => Ok(add(&Bivariate::new(), &self.power()?, -1)),
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl ThetaOperator {
    /// Parses an operator written as an expression in `x` and `theta`.
    pub fn parse_expr(s: &str) -> Result<ThetaOperator> {
        let mut p = Parser { toks: tokenize(s)?, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        let deg = e.keys().map(|(i, _)| *i).max().unwrap_or(0);
        let mut rows = vec![Vec::<Rat>::new(); deg + 1];
        for ((i, j), c) in e {
            let row = &mut rows[i];
            if row.len() <= j {
                row.resize(j + 1, Rat::zero());
            }
            row[j] = c;
        }
        ThetaOperator::new(rows.into_iter().map(Poly::new).collect())
    }
}
