//! Python bindings for the `circavoid` crate.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;

use circavoid::error::Error;
use circavoid::oracle;
use circavoid::perm::{self, Permutation, VincularPattern};
use circavoid::recurrence::{self, Recurrences};
use circavoid::series::{self, Argument, TruncatedSeries};
use circavoid::verify::{self, VerifyConfig};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn permutation(entries: Vec<usize>) -> PyResult<Permutation> {
    Permutation::new(entries).map_err(err)
}

/// A vincular pattern such as `"23-4-1"`; letters inside a block are adjacent.
#[pyclass(name = "Pattern", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPattern(VincularPattern);

#[pymethods]
impl PyPattern {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    #[staticmethod]
    fn circular_target() -> Self {
        Self(perm::circular_target())
    }

    #[getter]
    fn entries(&self) -> Vec<usize> {
        self.0.entries().to_vec()
    }

    #[getter]
    fn vincula(&self) -> Vec<usize> {
        self.0.vincula().iter().copied().collect()
    }

    fn contains(&self, perm: Vec<usize>) -> PyResult<bool> {
        Ok(perm::contains(&permutation(perm)?, &self.0))
    }

    /// One-based positions of every occurrence.
    fn occurrences(&self, perm: Vec<usize>) -> PyResult<Vec<Vec<usize>>> {
        let host = permutation(perm)?;
        Ok(perm::occurrences(&host, &self.0)
            .iter()
            .map(|o| o.one_based())
            .collect())
    }

    fn avoids_circular(&self, perm: Vec<usize>) -> PyResult<bool> {
        Ok(perm::avoids_circular(&permutation(perm)?, &self.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Pattern('{}')", self.0)
    }
}

/// Circular permutations of length n avoiding `pattern` (default 23-4-1),
/// by exhaustive enumeration.
#[pyfunction]
#[pyo3(signature = (n, pattern=None, cap=10, allow_large=false))]
fn count_circular(
    py: Python<'_>,
    n: usize,
    pattern: Option<PyPattern>,
    cap: usize,
    allow_large: bool,
) -> PyResult<u64> {
    oracle::ensure_within_cap(n, cap, allow_large).map_err(err)?;
    let pat = pattern.map_or_else(perm::circular_target, |p| p.0);
    Ok(py.detach(|| oracle::count_circular_avoiders(n, &pat)))
}

/// |L_n| by exhaustive enumeration.
#[pyfunction]
#[pyo3(signature = (n, cap=10, allow_large=false))]
fn count_linear(py: Python<'_>, n: usize, cap: usize, allow_large: bool) -> PyResult<u64> {
    oracle::ensure_within_cap(n, cap, allow_large).map_err(err)?;
    Ok(py.detach(|| oracle::count_l(n)))
}

/// a_1, ..., a_N from the recurrences.
#[pyfunction]
fn sequence(py: Python<'_>, n_max: usize) -> Vec<BigUint> {
    if n_max == 0 {
        return Vec::new();
    }
    py.detach(|| recurrence::Recurrences::compute(n_max).a.values().to_vec())
}

#[pyfunction]
fn published() -> Vec<BigUint> {
    verify::published_a()
}

/// The v, c, b tables and the sequence a through `max_n`.
#[pyclass(name = "Recurrences", frozen)]
struct PyRecurrences(Recurrences);

impl PyRecurrences {
    fn check(&self, n: usize) -> PyResult<()> {
        if n > self.0.max_n() {
            return Err(PyIndexError::new_err(format!(
                "n = {n} is beyond the table (max {})",
                self.0.max_n()
            )));
        }
        Ok(())
    }
}

#[pymethods]
impl PyRecurrences {
    #[new]
    fn new(py: Python<'_>, max_n: usize) -> PyResult<Self> {
        if max_n == 0 {
            return Err(PyValueError::new_err("max_n must be at least 1"));
        }
        Ok(Self(py.detach(|| Recurrences::compute(max_n))))
    }

    #[getter]
    fn max_n(&self) -> usize {
        self.0.max_n()
    }

    fn a(&self, n: usize) -> PyResult<BigUint> {
        self.check(n)?;
        if n == 0 {
            return Err(PyIndexError::new_err("a is indexed from 1"));
        }
        Ok(self.0.a.get(n).clone())
    }

    fn v(&self, n: usize, j: usize) -> PyResult<BigUint> {
        self.check(n)?;
        Ok(self.0.v.get(n, j).clone())
    }

    fn c(&self, n: usize, i: usize, j: usize) -> PyResult<BigUint> {
        self.check(n)?;
        Ok(self.0.c.get(n, i, j).clone())
    }

    fn b(&self, n: usize, i: usize, j: usize) -> PyResult<BigUint> {
        self.check(n)?;
        Ok(self.0.b.get(n, i, j).clone())
    }

    /// Per-n total of table `"a"`, `"b"`, `"c"` or `"v"`.
    fn total(&self, table: &str, n: usize) -> PyResult<BigUint> {
        self.check(n)?;
        match table {
            "a" => self.a(n),
            "b" => Ok(self.0.b.total(n)),
            "c" => Ok(self.0.c.total(n)),
            "v" => Ok(self.0.v.total(n)),
            _ => Err(PyValueError::new_err(format!("unknown table {table:?}"))),
        }
    }
}

fn argument(obj: &Bound<'_, PyAny>) -> PyResult<Argument> {
    if let Ok(i) = obj.extract::<BigInt>() {
        return Ok(Argument::Scalar(BigRational::from_integer(i)));
    }
    if let Ok(s) = obj.extract::<String>() {
        return s
            .trim()
            .parse::<BigRational>()
            .map(Argument::Scalar)
            .map_err(|_| PyValueError::new_err(format!("not an exact rational: {s:?}")));
    }
    // fractions.Fraction and friends
    let numer: BigInt = obj.getattr("numerator")?.extract()?;
    let denom: BigInt = obj.getattr("denominator")?.extract()?;
    if denom == BigInt::from(0) {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(Argument::Scalar(BigRational::new(numer, denom)))
}

/// Integers stay `int`; other coefficients become `fractions.Fraction`.
fn coefficients<'py>(py: Python<'py>, s: &TruncatedSeries) -> PyResult<Bound<'py, PyList>> {
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    let items = s
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                c.numer().clone().into_pyobject(py).map(Bound::into_any)
            } else {
                fraction.call1((c.numer().clone(), c.denom().clone()))
            }
        })
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// Coefficients of x^0..x^order of one generating function:
/// `A`, `V0`, `V1`, `C11`, `B11`, `V` (argument `p`), `C1u`, `B1u`
/// (argument `u`), or `A` with both `v` and `u`.
#[pyfunction]
#[pyo3(signature = (name, order, v=None, u=None, p=None))]
fn gf<'py>(
    py: Python<'py>,
    name: &str,
    order: usize,
    v: Option<&Bound<'py, PyAny>>,
    u: Option<&Bound<'py, PyAny>>,
    p: Option<&Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyList>> {
    let need = |a: Option<&Bound<'py, PyAny>>, what: &str| {
        a.map(argument)
            .unwrap_or_else(|| Err(PyValueError::new_err(format!("{name} needs {what}"))))
    };
    let s = match name {
        "A" => match (v, u) {
            (None, None) => py.detach(|| series::a_series(order)),
            (Some(v), Some(u)) => {
                let (v, u) = (argument(v)?, argument(u)?);
                py.detach(|| series::a_vu_series(&v, &u, order))
            }
            _ => return Err(PyValueError::new_err("give both v and u, or neither")),
        },
        "V0" => py.detach(|| series::v0_series(order)),
        "V1" => py.detach(|| series::v_series(&Argument::one(), order)),
        "C11" => py.detach(|| series::c11_series(order)),
        "B11" => py.detach(|| series::b11_series(order)),
        "V" => {
            let p = need(p, "p")?;
            py.detach(|| series::v_series(&p, order))
        }
        "C1u" => {
            let u = need(u, "u")?;
            py.detach(|| series::c1u_series(&u, order))
        }
        "B1u" => {
            let u = need(u, "u")?;
            py.detach(|| series::b1u_series(&u, order))
        }
        _ => return Err(PyValueError::new_err(format!("unknown series {name:?}"))),
    }
    .map_err(err)?;
    coefficients(py, &s)
}

/// Runs the cross-checks; returns `(name, passed, detail)` per check.
#[pyfunction]
#[pyo3(signature = (oracle_max=9, table_n=30, order=32))]
fn run_checks(
    py: Python<'_>,
    oracle_max: usize,
    table_n: usize,
    order: usize,
) -> Vec<(String, bool, String)> {
    let cfg = VerifyConfig {
        oracle_max,
        reduction_max: oracle_max.min(VerifyConfig::default().reduction_max),
        table_n,
        order,
        ..VerifyConfig::default()
    };
    py.detach(|| verify::run(&cfg))
        .outcomes
        .into_iter()
        .map(|o| (o.name, o.passed, o.detail))
        .collect()
}

/// For n < N: whether a_n^(n+1) < a_{n+1}^n, and the ratio a_{n+1}/a_n.
/// Checked over the range, not proven.
#[pyfunction]
fn conjectures(py: Python<'_>, n_max: usize) -> PyResult<Vec<(usize, bool, Bound<'_, PyAny>)>> {
    if n_max == 0 {
        return Ok(Vec::new());
    }
    let report = py.detach(|| recurrence::check_conjectures(&Recurrences::compute(n_max).a));
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    report
        .inequality
        .iter()
        .zip(&report.ratios)
        .map(|(&(n, holds), r)| {
            Ok((n, holds, fraction.call1((r.numer().clone(), r.denom().clone()))?))
        })
        .collect()
}

#[pymodule]
pub fn circavoid_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPattern>()?;
    m.add_class::<PyRecurrences>()?;
    m.add_function(wrap_pyfunction!(count_circular, m)?)?;
    m.add_function(wrap_pyfunction!(count_linear, m)?)?;
    m.add_function(wrap_pyfunction!(sequence, m)?)?;
    m.add_function(wrap_pyfunction!(published, m)?)?;
    m.add_function(wrap_pyfunction!(gf, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    m.add_function(wrap_pyfunction!(conjectures, m)?)?;
    Ok(())
}
