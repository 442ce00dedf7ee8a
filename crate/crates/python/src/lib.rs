//! Python bindings: operators, sequences, fitting, certification, transforms
//! and congruence checks. Rationals cross the boundary as `fractions.Fraction`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use cyeq::catalog;
use cyeq::congruence::dwork_check;
use cyeq::exact::{parse_rat, Poly, Rat};
use cyeq::fit::{fit as fit_seq, search_with_margin, FitSpec};
use cyeq::frobenius::integrality_report;
use cyeq::laurent::{ct_sequence, LaurentPoly};
use cyeq::pullback::{pullback_factor, verify_pullback_pair};
use cyeq::sequences;
use cyeq::ThetaOperator;

create_exception!(cyeq_py, CyeqError, PyValueError);

fn err(e: cyeq::Error) -> PyErr {
    CyeqError::new_err(e.to_string())
}

fn to_rat(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if let (Ok(n), Ok(d)) = (obj.getattr("numerator"), obj.getattr("denominator")) {
        let n: BigInt = n.extract()?;
        let d: BigInt = d.extract()?;
        if d == BigInt::from(0) {
            return Err(CyeqError::new_err("zero denominator"));
        }
        return Ok(Rat::new(n, d));
    }
    let s = obj.str()?.to_string();
    parse_rat(&s).ok_or_else(|| CyeqError::new_err(format!("not a rational: {s}")))
}

fn to_seq(seq: &Bound<'_, PyAny>) -> PyResult<Vec<Rat>> {
    seq.try_iter()?.map(|x| to_rat(&x?)).collect()
}

fn fraction<'py>(py: Python<'py>, x: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((x.numer().clone(), x.denom().clone()))
}

fn fractions<'py>(py: Python<'py>, xs: &[Rat]) -> PyResult<Bound<'py, PyList>> {
    let items = xs.iter().map(|x| fraction(py, x)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// A differential operator `sum_i x^i P_i(theta)` with integer coefficients.
#[pyclass(frozen, eq, from_py_object, module = "cyeq_py")]
#[derive(Clone, PartialEq)]
struct Operator {
    inner: ThetaOperator,
}

#[pymethods]
impl Operator {
    /// Parses the text form produced by [`Operator::text`].
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self { inner: text.parse().map_err(err)? })
    }

    /// Parses an expression such as `θ^4 - 16x(2θ+1)^4`.
    #[staticmethod]
    fn from_expr(expr: &str) -> PyResult<Self> {
        Ok(Self { inner: ThetaOperator::parse_expr(expr).map_err(err)? })
    }

    #[staticmethod]
    fn from_catalog(id: &str) -> PyResult<Self> {
        Ok(Self { inner: catalog::operator(id).map_err(err)? })
    }

    /// `rows[i][j]` is the coefficient of `x^i theta^j`.
    #[staticmethod]
    fn from_rows(rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let rows = rows.iter().map(|r| Poly::from_bigints(r)).collect();
        Ok(Self { inner: ThetaOperator::new(rows).map_err(err)? })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn rows(&self) -> Vec<Vec<BigInt>> {
        let r = self.inner.order();
        (0..=self.inner.degree()).map(|i| (0..=r).map(|j| self.inner.coeff(i, j)).collect()).collect()
    }

    fn is_mum(&self) -> bool {
        self.inner.is_mum()
    }

    fn cond2(&self) -> PyResult<bool> {
        self.inner.cond2().map_err(err)
    }

    fn cond2_5(&self) -> PyResult<bool> {
        self.inner.cond2_5().map_err(err)
    }

    fn text(&self) -> String {
        self.inner.to_text()
    }

    /// Coefficients `A_0 .. A_{n-1}` of the analytic solution at zero.
    fn series<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyList>> {
        fractions(py, &self.inner.series_solution(n).map_err(err)?)
    }

    fn annihilates(&self, seq: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner.annihilates(&to_seq(seq)?))
    }

    fn first_defect(&self, seq: &Bound<'_, PyAny>) -> PyResult<Option<usize>> {
        Ok(self.inner.first_defect(&to_seq(seq)?))
    }

    /// Transform under `x -> 1/(scale x)`, `theta -> -theta - shift`; the
    /// scale defaults to the one making the result integral.
    #[pyo3(signature = (scale=None, shift=None))]
    fn mirror_at_infinity(&self, scale: Option<&Bound<'_, PyAny>>, shift: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let shift = shift.map(to_rat).transpose()?.unwrap_or_default();
        let scale = match scale {
            Some(s) => to_rat(s)?,
            None => self.inner.mirror_scale(&shift, 30).map_err(err)?,
        };
        Ok(Self { inner: self.inner.mirror_at_infinity(&scale, &shift).map_err(err)? })
    }

    /// MUM, condition 2 and integrality of `y_0`, `q(x)` and the instanton
    /// numbers up to `depth`.
    #[pyo3(signature = (n=20, depth=5))]
    fn check<'py>(&self, py: Python<'py>, n: usize, depth: usize) -> PyResult<Bound<'py, PyDict>> {
        let rep = integrality_report(&self.inner, n, depth).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("mum", rep.mum)?;
        d.set_item("cond2", rep.cond2)?;
        d.set_item("3a", rep.a)?;
        d.set_item("3b", rep.b)?;
        d.set_item("3c", rep.c)?;
        d.set_item("passes", rep.passes())?;
        if let Some(inst) = &rep.instantons {
            d.set_item("N0", inst.n0)?;
            d.set_item("instantons", fractions(py, &inst.n)?)?;
        }
        Ok(d)
    }

    fn __str__(&self) -> String {
        self.inner.pretty()
    }

    fn __repr__(&self) -> String {
        format!("Operator(order={}, degree={})", self.inner.order(), self.inner.degree())
    }
}

/// Ids of the built-in sequences.
#[pyfunction]
fn sequence_ids() -> Vec<&'static str> {
    sequences::ids()
}

/// Ids of the catalog entries.
#[pyfunction]
fn catalog_ids() -> PyResult<Vec<String>> {
    Ok(catalog::entries().map_err(err)?.into_iter().map(|e| e.id).collect())
}

/// `A_0 .. A_{n-1}` of a built-in sequence.
#[pyfunction]
fn sequence<'py>(py: Python<'py>, id: &str, n: usize) -> PyResult<Bound<'py, PyList>> {
    fractions(py, &sequences::generate(id, n).map_err(err)?)
}

#[pyfunction]
fn hadamard<'py>(py: Python<'py>, u: &Bound<'_, PyAny>, v: &Bound<'_, PyAny>) -> PyResult<Bound<'py, PyList>> {
    fractions(py, &sequences::hadamard(&to_seq(u)?, &to_seq(v)?).map_err(err)?)
}

/// Fits an operator of the given order and degree; `None` when nothing
/// annihilates the whole sequence.
#[pyfunction]
#[pyo3(signature = (seq, order, degree, margin=5))]
fn fit(seq: &Bound<'_, PyAny>, order: usize, degree: usize, margin: usize) -> PyResult<Option<Operator>> {
    let spec = FitSpec::new(order, degree).with_margin(margin);
    Ok(fit_seq(&to_seq(seq)?, &spec).map_err(err)?.operator.map(|inner| Operator { inner }))
}

/// Smallest operator over the grid of orders and degrees.
#[pyfunction]
#[pyo3(signature = (seq, max_order=4, max_degree=8, margin=5))]
fn search(seq: &Bound<'_, PyAny>, max_order: usize, max_degree: usize, margin: usize) -> PyResult<Operator> {
    let (_, res) = search_with_margin(&to_seq(seq)?, max_order, max_degree, margin).map_err(err)?;
    Ok(Operator { inner: res.operator.expect("search returns a verified operator") })
}

/// `A_n = prod A_{n_i} (mod p)` over base-`p` digits for all `n < p^depth`.
/// Returns the failing `(n, A_n mod p, product mod p)` triples.
#[pyfunction]
fn dwork(seq: &Bound<'_, PyAny>, p: u64, depth: u32) -> PyResult<Vec<(u64, u64, u64)>> {
    let rep = dwork_check(&to_seq(seq)?, p, depth).map_err(err)?;
    Ok(rep.violations.iter().map(|w| (w.n, w.lhs, w.rhs)).collect())
}

/// Constant terms of the powers `0 .. n-1` of a Laurent polynomial given in
/// the `dim=` text format.
#[pyfunction]
fn constant_terms(polytope: &str, n: usize) -> PyResult<Vec<BigInt>> {
    let s: LaurentPoly = polytope.parse().map_err(err)?;
    Ok(ct_sequence(&s, n))
}

/// `(annihilates, equivalent)` for a fourth order operator and a fifth order
/// candidate on the wronskians of its solutions.
#[pyfunction]
#[pyo3(signature = (op4, op5, n=20))]
fn pullback(op4: &Operator, op5: &Operator, n: usize) -> PyResult<(bool, bool)> {
    let lit = verify_pullback_pair(&op4.inner, &op5.inner, n).map_err(err)?;
    let eq = pullback_factor(&op4.inner, &op5.inner, n).map_err(err)?.is_some();
    Ok((lit, eq))
}

#[pymodule]
pub fn cyeq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CyeqError", m.py().get_type::<CyeqError>())?;
    m.add_class::<Operator>()?;
    m.add_function(wrap_pyfunction!(sequence_ids, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_ids, m)?)?;
    m.add_function(wrap_pyfunction!(sequence, m)?)?;
    m.add_function(wrap_pyfunction!(hadamard, m)?)?;
    m.add_function(wrap_pyfunction!(fit, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(dwork, m)?)?;
    m.add_function(wrap_pyfunction!(constant_terms, m)?)?;
    m.add_function(wrap_pyfunction!(pullback, m)?)?;
    Ok(())
}
