//! `cyeq`: catalog browsing, sequence generation, operator fitting,
//! certification, transforms and congruence checks.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cyeq::catalog;
use cyeq::congruence::dwork_check;
use cyeq::exact::{fmt_rat, parse_rat, Rat};
use cyeq::fit::{fit, format_sequence, parse_sequence, search_with_margin, FitSpec};
use cyeq::frobenius::integrality_report;
use cyeq::laurent::{ct_power, ct_sequence, LaurentPoly};
use cyeq::pullback::{derive_pullback, pullback_factor, verify_pullback_pair};
use cyeq::sequences;
use cyeq::{Error, ThetaOperator};

#[derive(Parser)]
#[command(name = "cyeq", version, about = "Exact tools for Calabi-Yau differential operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Browse and validate the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print A_0..A_N of a catalog sequence or of an operator file's power series solution.
    Series {
        source: String,
        #[arg(short = 'N', default_value_t = 10)]
        n: usize,
    },
    /// Fit an annihilating operator to a sequence.
    Fit {
        source: String,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = 5)]
        margin: usize,
        /// Grid bounds used when order and degree are not both given.
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Number of sequence terms taken from a catalog id.
        #[arg(short = 'N', default_value_t = 60)]
        n: usize,
    },
    /// Certification report: MUM, condition 2, 3a, 3b, 3c and Dwork.
    Check {
        source: String,
        #[arg(short = 'N', default_value_t = 30)]
        n: usize,
        #[arg(short = 'D', default_value_t = 8)]
        depth: usize,
    },
    /// The transform theta -> -theta - shift, x -> 1/(scale x).
    MirrorInf {
        source: String,
        #[arg(long, default_value = "1")]
        shift: String,
        /// Defaults to the smallest scale making the new series solution integral.
        #[arg(long, allow_hyphen_values = true)]
        scale: Option<String>,
    },
    /// Fourth and fifth order wronskian relations.
    Pullback {
        #[command(subcommand)]
        action: PullbackAction,
    },
    /// Termwise product of two sequences.
    Hadamard {
        a: String,
        b: String,
        #[arg(short = 'N', default_value_t = 10)]
        n: usize,
    },
    /// Constant terms of powers of a Laurent polynomial.
    Ct {
        polytope: String,
        #[arg(short = 'N', default_value_t = 10)]
        n: usize,
        /// Only even powers: A_n = c.t.(S^(2n)).
        #[arg(long)]
        even: bool,
    },
    /// Dwork congruence A_n = prod A_{n_i} (mod p) over base-p digits.
    Dwork {
        source: String,
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'K', default_value_t = 3)]
        depth: u32,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { id: String },
    VerifyAll {
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
}

#[derive(Subcommand)]
enum PullbackAction {
    /// Checks that the fifth order operator annihilates x W(y0,y1) and x W(y0,y2).
    Verify {
        op4: String,
        op5: String,
        #[arg(short = 'N', default_value_t = 25)]
        n: usize,
    },
    /// Best-effort fourth order operator for a fifth order one.
    Derive {
        op5: String,
        #[arg(short = 'N', default_value_t = 60)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
}

/// Failure classes, mapped to exit statuses 1, 2 and 3.
enum Failure {
    Check(String),
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownId(_)
            | Error::Parse { .. }
            | Error::Invalid(_)
            | Error::InsufficientTerms { .. }
            | Error::WrongOrder { .. }
            | Error::MalformedPlan(_)
            | Error::UnknownFamily(_)
            | Error::NoEvaluator(_)
            | Error::NonInteger(_)
            | Error::LengthMismatch(..)
            | Error::DegenerateSequence => Failure::Usage(e.to_string()),
            Error::GridExhausted | Error::NotCheckable(_) | Error::NotMum => Failure::Check(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn is_file(source: &str) -> bool {
    Path::new(source).is_file()
}

fn load_operator(source: &str) -> Result<ThetaOperator, Failure> {
    if is_file(source) {
        Ok(read(source)?.parse()?)
    } else {
        Ok(catalog::operator(source)?)
    }
}

/// A sequence file, a catalog sequence, or the series solution of an operator.
fn load_sequence(source: &str, len: usize) -> Result<Vec<Rat>, Failure> {
    if is_file(source) {
        let text = read(source)?;
        if text.trim_start().starts_with("theta-operator") {
            return Ok(text.parse::<ThetaOperator>()?.series_solution(len)?);
        }
        return Ok(parse_sequence(&text)?);
    }
    match sequences::generate(source, len) {
        Err(Error::UnknownId(_)) | Err(Error::NoEvaluator(_)) => Ok(catalog::operator(source)?.series_solution(len)?),
        other => Ok(other?),
    }
}

fn parse_arg(s: &str) -> Result<Rat, Failure> {
    parse_rat(s).ok_or_else(|| Failure::Usage(format!("not a rational number: {s}")))
}

fn catalog_cmd(action: CatalogAction) -> Outcome {
    match action {
        CatalogAction::List => {
            let mut out = String::new();
            for e in catalog::entries()? {
                let (order, degree) = e
                    .operator
                    .as_ref()
                    .map_or(("-".into(), "-".into()), |o| (o.order().to_string(), o.degree().to_string()));
                let kind = e.kind.map_or("-".to_string(), |k| k.to_string());
                let status = catalog::verify(&e, 20)?;
                writeln!(out, "{}\t{}\t{}\t{}\t{}", e.id, order, degree, kind, status).unwrap();
            }
            Ok(out)
        }
        CatalogAction::Show { id } => {
            let e = catalog::entry(&id)?;
            let mut out = format!("# {}: {}\n", e.id, e.note);
            match &e.operator {
                Some(op) => out += &op.to_text(),
                None => out += "# no operator\n",
            }
            Ok(out)
        }
        CatalogAction::VerifyAll { terms } => {
            let mut out = String::new();
            let mut failed = false;
            for (id, v) in catalog::verify_all(terms)? {
                failed |= !v.ok();
                writeln!(out, "{id}\t{v}").unwrap();
            }
            if failed {
                Err(Failure::Check(out))
            } else {
                Ok(out)
            }
        }
    }
}

fn fit_cmd(source: &str, order: Option<usize>, degree: Option<usize>, margin: usize, grid: (usize, usize), n: usize) -> Outcome {
    let seq = load_sequence(source, n)?;
    let op = match (order, degree) {
        (Some(r), Some(p)) => fit(&seq, &FitSpec::new(r, p).with_margin(margin))?
            .operator
            .ok_or_else(|| Failure::Check(format!("no annihilator of order {r} and degree {p}")))?,
        _ => search_with_margin(&seq, grid.0, grid.1, margin)?.1.operator.expect("search returns a verified operator"),
    };
    Ok(op.to_text())
}

fn check_cmd(source: &str, n: usize, depth: usize) -> Outcome {
    let op = load_operator(source)?;
    let report = integrality_report(&op, n, depth)?;
    let mut out = format!("order={}\ndegree={}\n", op.order(), op.degree());
    out += &report.render();
    if report.mum {
        let len = 125usize.max(n + 1);
        match op.series_solution(len) {
            Ok(seq) => {
                for p in [2, 3, 5] {
                    let line = match dwork_check(&seq, p, 3) {
                        Ok(r) if r.passes() => "pass".to_string(),
                        Ok(r) => format!("fail n={}", r.violations[0].n),
                        Err(e) => format!("skipped ({e})"),
                    };
                    writeln!(out, "dwork_p{p}={line}").unwrap();
                }
            }
            Err(e) => writeln!(out, "dwork=skipped ({e})").unwrap(),
        }
    }
    if report.passes() {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

fn mirror_cmd(source: &str, shift: &str, scale: Option<&str>) -> Outcome {
    let op = load_operator(source)?;
    let shift = parse_arg(shift)?;
    let scale = match scale {
        Some(s) => parse_arg(s)?,
        None => op.mirror_scale(&shift, 30)?,
    };
    let m = op.mirror_at_infinity(&scale, &shift)?;
    Ok(format!("# scale={}\n{}", fmt_rat(&scale), m.to_text()))
}

fn pullback_cmd(action: PullbackAction) -> Outcome {
    match action {
        PullbackAction::Verify { op4, op5, n } => {
            let (o4, o5) = (load_operator(&op4)?, load_operator(&op5)?);
            let literal = verify_pullback_pair(&o4, &o5, n)?;
            let mut out = format!("annihilates={literal}\n");
            match pullback_factor(&o4, &o5, n)? {
                Some(f) => {
                    let head: Vec<String> = f.coeffs().iter().take(4).map(fmt_rat).collect();
                    writeln!(out, "equivalent=true\nfactor={}", head.join(" ")).unwrap();
                }
                None => out += "equivalent=false\n",
            }
            if literal {
                Ok(out)
            } else {
                Err(Failure::Check(out))
            }
        }
        PullbackAction::Derive { op5, n, max_degree } => Ok(derive_pullback(&load_operator(&op5)?, n, max_degree)?.to_text()),
    }
}

fn ct_cmd(path: &str, n: usize, even: bool) -> Outcome {
    let s: LaurentPoly = read(path)?.parse()?;
    let seq: Vec<Rat> = if even {
        (0..=n).map(|k| Rat::from_integer(ct_power(&s, 2 * k))).collect()
    } else {
        ct_sequence(&s, n + 1).into_iter().map(Rat::from_integer).collect()
    };
    Ok(format_sequence(&seq))
}

fn dwork_cmd(source: &str, p: u64, depth: u32) -> Outcome {
    if !cyeq::laurent::is_prime(p) {
        return Err(Failure::Usage(format!("{p} is not a prime")));
    }
    let len = p.checked_pow(depth).ok_or_else(|| Failure::Usage("p^K overflows".into()))? as usize;
    let seq = load_sequence(source, len)?;
    let report = dwork_check(&seq, p, depth)?;
    let mut out = format!("{report}\n");
    for w in report.violations.iter().take(10) {
        writeln!(out, "n={} A_n={} prod={}", w.n, w.lhs, w.rhs).unwrap();
    }
    if report.passes() {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Catalog { action } => catalog_cmd(action),
        Command::Series { source, n } => Ok(format_sequence(&load_sequence(&source, n + 1)?)),
        Command::Fit { source, order, degree, margin, max_order, max_degree, n } => {
            fit_cmd(&source, order, degree, margin, (max_order, max_degree), n)
        }
        Command::Check { source, n, depth } => check_cmd(&source, n, depth),
        Command::MirrorInf { source, shift, scale } => mirror_cmd(&source, &shift, scale.as_deref()),
        Command::Pullback { action } => pullback_cmd(action),
        Command::Hadamard { a, b, n } => {
            let h = sequences::hadamard(&load_sequence(&a, n + 1)?, &load_sequence(&b, n + 1)?)?;
            Ok(format_sequence(&h))
        }
        Command::Ct { polytope, n, even } => ct_cmd(&polytope, n, even),
        Command::Dwork { source, p, depth } => dwork_cmd(&source, p, depth),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
