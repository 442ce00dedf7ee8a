//! The built-in catalog: operators stored as text files next to the crate,
//! each linked to a sequence generator where one exists.

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::ops::ThetaOperator;
use crate::sequences::{self, Kind};

const INDEX: &str = include_str!("../catalog/index.txt");

macro_rules! op_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../catalog/", $name)))),*]
    };
}

const FILES: &[(&str, &str)] = op_files!(
    "eta.op", "14.op", "15.op", "22.op", "27h.op", "34.op", "130.op", "133.op", "193.op", "198.op", "198-printed.op",
    "264.op", "325.op", "325-printed.op", "349.op", "360.op", "366.op", "poly2d.op", "bessel-raw.op", "c-eta.op", "b-eta.op",
    "32pb.op", "zud5.op", "hyp5.op", "hyp5pb.op", "hyp5pb-printed.op",
);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    /// `None` when the entry has no sequence generator.
    pub kind: Option<Kind>,
    pub operator: Option<ThetaOperator>,
    pub note: String,
}

impl CatalogEntry {
    pub fn generate(&self, len: usize) -> Result<Vec<Rat>> {
        sequences::generate(&self.id, len)
    }
}

/// Outcome of checking one entry against its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    /// The operator leaves a nonzero coefficient at this power of `x`.
    Failed(usize),
    NoOperator,
    NoGenerator,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        !matches!(self, Verdict::Failed(_))
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Verified => write!(f, "verified"),
            Verdict::Failed(m) => write!(f, "failed at x^{m}"),
            Verdict::NoOperator => write!(f, "no-operator"),
            Verdict::NoGenerator => write!(f, "no-generator"),
        }
    }
}

fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

fn parse_line(line: &str) -> Result<CatalogEntry> {
    let fields: Vec<&str> = line.splitn(3, '|').map(str::trim).collect();
    let [id, op, note] = fields[..] else {
        return Err(Error::Invalid(format!("bad catalog index line `{line}`")));
    };
    let operator = match op {
        "-" => None,
        name => {
            let text = file(name).ok_or_else(|| Error::Invalid(format!("missing catalog file {name}")))?;
            Some(text.parse::<ThetaOperator>()?)
        }
    };
    let kind = match sequences::kind(id) {
        Ok(k) => Some(k),
        Err(Error::UnknownId(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(CatalogEntry { id: id.to_string(), kind, operator, note: note.to_string() })
}

fn lines() -> impl Iterator<Item = &'static str> {
    INDEX.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// All entries in index order.
pub fn entries() -> Result<Vec<CatalogEntry>> {
    lines().map(parse_line).collect()
}

pub fn entry(id: &str) -> Result<CatalogEntry> {
    let line = lines()
        .find(|l| l.split('|').next().map(str::trim) == Some(id))
        .ok_or_else(|| Error::UnknownId(id.to_string()))?;
    parse_line(line)
}

/// The stored operator of `id`.
pub fn operator(id: &str) -> Result<ThetaOperator> {
    entry(id)?.operator.ok_or_else(|| Error::Invalid(format!("catalog entry {id} has no operator")))
}

/// Checks that the stored operator annihilates the first `terms` generated
/// coefficients.
pub fn verify(entry: &CatalogEntry, terms: usize) -> Result<Verdict> {
    let Some(op) = &entry.operator else { return Ok(Verdict::NoOperator) };
    if !matches!(entry.kind, Some(k) if k != Kind::Stub) {
        return Ok(Verdict::NoGenerator);
    }
    let seq = entry.generate(terms)?;
    Ok(match op.first_defect(&seq) {
        None => Verdict::Verified,
        Some(m) => Verdict::Failed(m),
    })
}

pub fn verify_all(terms: usize) -> Result<Vec<(String, Verdict)>> {
    entries()?
        .into_iter()
        .map(|e| Ok((e.id.clone(), verify(&e, terms)?)))
        .collect()
}
