//! Python bindings for the monoid growth engine.
//!
//! Exposes presentations, series, divisibility, tower and cancellativity
//! operations as plain functions over a `Presentation` class. Words cross
//! the boundary as strings in the presentation's symbols (compact like
//! `cbb` for single-character alphabets, whitespace-separated otherwise;
//! `1` or `""` is the identity).

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use monoid_growth::cancellativity;
use monoid_growth::divisibility;
use monoid_growth::enumerate;
use monoid_growth::error::EngineError;
use monoid_growth::presentation::Presentation as CorePresentation;
use monoid_growth::rewrite::{self, ClassTables, Element, Limits};
use monoid_growth::series;
use monoid_growth::towers;

fn engine_err(e: EngineError) -> PyErr {
    match e {
        EngineError::WordBudgetExceeded { .. }
        | EngineError::TowerBudgetExceeded { .. }
        | EngineError::Overflow => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A positive homogeneous monoid presentation.
#[pyclass(frozen)]
struct Presentation {
    inner: CorePresentation,
}

impl Presentation {
    fn word(&self, text: &str) -> PyResult<monoid_growth::Word> {
        self.inner.parse_word(text).map_err(value_err)
    }

    fn fmt(&self, e: &Element) -> String {
        self.inner.format_word(e.canonical())
    }

    fn tables(&self, d_max: usize) -> PyResult<ClassTables> {
        ClassTables::build(&self.inner, d_max, &Limits::default()).map_err(engine_err)
    }

    fn element(&self, tables: &ClassTables, text: &str) -> PyResult<Element> {
        let w = self.word(text)?;
        tables.canonical_of_word(&w).map_err(engine_err)
    }
}

#[pymethods]
impl Presentation {
    /// Parse the line-oriented text format (`alphabet ...` then `rel` lines).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        CorePresentation::parse(text)
            .map(|inner| Presentation { inner })
            .map_err(value_err)
    }

    /// Built-in presentation, `name` or `name:param` (e.g. `bii`, `gn:3`).
    #[staticmethod]
    fn preset(spec: &str) -> PyResult<Self> {
        CorePresentation::preset_spec(spec)
            .map(|inner| Presentation { inner })
            .map_err(value_err)
    }

    /// The opposite presentation: all relation words reversed.
    fn reversed(&self) -> Self {
        Presentation {
            inner: self.inner.reversed(),
        }
    }

    /// Render back into the text format.
    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name().map(str::to_string)
    }

    fn alphabet(&self) -> Vec<String> {
        self.inner
            .alphabet()
            .iter()
            .map(|l| l.symbol.clone())
            .collect()
    }

    fn relations(&self) -> Vec<(String, String)> {
        self.inner
            .relations()
            .iter()
            .map(|r| {
                (
                    self.inner.format_word(&r.lhs),
                    self.inner.format_word(&r.rhs),
                )
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Presentation(name={:?}, alphabet={:?}, relations={})",
            self.inner.name().unwrap_or("?"),
            self.alphabet(),
            self.inner.relations().len()
        )
    }
}

/// Growth series coefficients `[#M_0, #M_1, ..., #M_d]`.
#[pyfunction]
fn growth(p: &Presentation, max_degree: usize) -> PyResult<Vec<i64>> {
    enumerate::growth_series(&p.inner, max_degree, &Limits::default())
        .map(|s| s.coefficients)
        .map_err(engine_err)
}

/// Skew growth series coefficients via tower enumeration.
#[pyfunction]
fn skew(p: &Presentation, max_degree: usize) -> PyResult<Vec<i64>> {
    towers::skew_growth(&p.inner, max_degree, &Limits::default())
        .map(|s| s.coefficients)
        .map_err(engine_err)
}

/// Check `P(t) * N(t) = 1` through the bound; returns a dict with the
/// verdict and all three coefficient lists.
#[pyfunction]
fn verify_inversion<'py>(
    py: Python<'py>,
    p: &Presentation,
    max_degree: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let report =
        series::verify_inversion(&p.inner, max_degree, &Limits::default()).map_err(engine_err)?;
    let dict = PyDict::new(py);
    dict.set_item("presentation", report.presentation)?;
    dict.set_item("max_degree", report.d_max)?;
    dict.set_item("growth", report.growth.coefficients)?;
    dict.set_item("skew", report.skew.coefficients)?;
    dict.set_item("product", report.product.coefficients)?;
    dict.set_item("verdict", if report.pass { "pass" } else { "fail" })?;
    dict.set_item("first_failing_degree", report.first_failing_degree)?;
    Ok(dict)
}

/// Lexicographically minimal word equivalent to `word`.
#[pyfunction]
fn canonical(p: &Presentation, word: &str) -> PyResult<String> {
    let w = p.word(word)?;
    rewrite::canonical(&p.inner, &w, &Limits::default())
        .map(|e| p.fmt(&e))
        .map_err(engine_err)
}

/// All words equivalent to `word`, sorted.
#[pyfunction]
fn equivalence_class(p: &Presentation, word: &str) -> PyResult<Vec<String>> {
    let w = p.word(word)?;
    rewrite::equivalence_class(&p.inner, &w, &Limits::default())
        .map(|ws| ws.iter().map(|m| p.inner.format_word(m)).collect())
        .map_err(engine_err)
}

/// Whether two words represent the same element.
#[pyfunction]
fn are_equivalent(p: &Presentation, u: &str, v: &str) -> PyResult<bool> {
    let (wu, wv) = (p.word(u)?, p.word(v)?);
    rewrite::are_equivalent(&p.inner, &wu, &wv, &Limits::default()).map_err(engine_err)
}

/// Whether the element of `left` divides the element of `right` from the
/// left, i.e. `right = left * x`.
#[pyfunction]
fn left_divides(p: &Presentation, left: &str, right: &str) -> PyResult<bool> {
    let (wl, wr) = (p.word(left)?, p.word(right)?);
    let tables = p.tables(wl.degree().max(wr.degree()))?;
    let u = tables.canonical_of_word(&wl).map_err(engine_err)?;
    let v = tables.canonical_of_word(&wr).map_err(engine_err)?;
    divisibility::left_divides_in(&tables, &u, &v).map_err(engine_err)
}

/// Minimal common multiples of the given words within the bound, as
/// `(canonical_word, degree)` pairs.
#[pyfunction]
fn mcm(p: &Presentation, words: Vec<String>, max_degree: usize) -> PyResult<Vec<(String, usize)>> {
    let tables = p.tables(max_degree)?;
    let set: Vec<Element> = words
        .iter()
        .map(|w| p.element(&tables, w))
        .collect::<PyResult<_>>()?;
    if set.is_empty() {
        return Err(PyValueError::new_err("mcm needs a nonempty set of words"));
    }
    divisibility::mcm(&tables, &set, max_degree)
        .map(|ms| ms.iter().map(|m| (p.fmt(m), m.degree())).collect())
        .map_err(engine_err)
}

/// All pairs `(x, y)` with `left * x = right * y` and product degree within
/// the bound, as canonical words sorted by `(x, y)`.
#[pyfunction]
fn right_complements(
    p: &Presentation,
    left: &str,
    right: &str,
    max_degree: usize,
) -> PyResult<Vec<(String, String)>> {
    let tables = p.tables(max_degree)?;
    let u = p.element(&tables, left)?;
    let v = p.element(&tables, right)?;
    divisibility::right_complements(&tables, &u, &v, max_degree)
        .map(|pairs| pairs.iter().map(|(x, y)| (p.fmt(x), p.fmt(y))).collect())
        .map_err(engine_err)
}

/// All common multiples of the given words within the bound.
#[pyfunction]
fn common_multiples(
    p: &Presentation,
    words: Vec<String>,
    max_degree: usize,
) -> PyResult<Vec<(String, usize)>> {
    let tables = p.tables(max_degree)?;
    let set: Vec<Element> = words
        .iter()
        .map(|w| p.element(&tables, w))
        .collect::<PyResult<_>>()?;
    if set.is_empty() {
        return Err(PyValueError::new_err(
            "common_multiples needs a nonempty set of words",
        ));
    }
    divisibility::common_multiples(&tables, &set, max_degree)
        .map(|ms| ms.iter().map(|m| (p.fmt(m), m.degree())).collect())
        .map_err(engine_err)
}

/// Every tower realized within the bound as dicts with `height`, `stages`
/// and `top_mcm` keys.
#[pyfunction]
fn towers_within<'py>(
    py: Python<'py>,
    p: &Presentation,
    max_degree: usize,
) -> PyResult<Bound<'py, PyList>> {
    let tables = p.tables(max_degree)?;
    let all = towers::enumerate_towers(&tables, max_degree).map_err(engine_err)?;
    let list = PyList::empty(py);
    for tower in &all {
        let dict = PyDict::new(py);
        dict.set_item("height", tower.height())?;
        let stages: Vec<Vec<String>> = tower
            .stages
            .iter()
            .map(|s| s.iter().map(|e| p.fmt(e)).collect())
            .collect();
        dict.set_item("stages", stages)?;
        let top: Vec<String> = tower.top().iter().map(|e| p.fmt(e)).collect();
        dict.set_item("top_mcm", top)?;
        list.append(dict)?;
    }
    Ok(list)
}

/// Maximum tower height realized within the bound (a lower bound for the
/// monoid's true height).
#[pyfunction]
fn observed_height(p: &Presentation, max_degree: usize) -> PyResult<usize> {
    let tables = p.tables(max_degree)?;
    towers::observed_height(&tables, max_degree).map_err(engine_err)
}

/// Bounded two-sided cancellativity check. Returns a dict with `verdict`
/// (`no-counterexample` / `counterexample`) and an optional `witness`.
#[pyfunction]
fn cancellative_up_to<'py>(
    py: Python<'py>,
    p: &Presentation,
    max_degree: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let report = cancellativity::cancellative_up_to(&p.inner, max_degree, &Limits::default())
        .map_err(engine_err)?;
    let dict = PyDict::new(py);
    dict.set_item("max_degree", report.d_max)?;
    dict.set_item(
        "verdict",
        if report.no_counterexample() {
            "no-counterexample"
        } else {
            "counterexample"
        },
    )?;
    match &report.witness {
        None => dict.set_item("witness", py.None())?,
        Some(w) => {
            let witness = PyDict::new(py);
            witness.set_item("side", w.side.as_str())?;
            witness.set_item("generator", p.inner.format_word(&w.generator))?;
            witness.set_item("x", p.fmt(&w.x))?;
            witness.set_item("y", p.fmt(&w.y))?;
            witness.set_item("product", p.fmt(&w.product))?;
            witness.set_item("degree", w.product.degree())?;
            dict.set_item("witness", witness)?;
        }
    }
    Ok(dict)
}

/// Classify subsets of the degree-1 elements by their minimal common
/// multiples within the bound.
#[pyfunction]
fn condition_l<'py>(
    py: Python<'py>,
    p: &Presentation,
    max_degree: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let tables = p.tables(max_degree)?;
    let report = divisibility::condition_l_report(&tables, max_degree).map_err(engine_err)?;
    let dict = PyDict::new(py);
    dict.set_item("max_degree", report.d_max)?;
    dict.set_item(
        "verdict",
        match report.verdict {
            divisibility::ConditionLVerdict::Violated => "violated",
            divisibility::ConditionLVerdict::NoViolationFound => "no-violation-found",
        },
    )?;
    let witnesses = PyList::empty(py);
    for w in &report.witnesses {
        let entry = PyDict::new(py);
        let subset: Vec<String> = w.subset.iter().map(|e| p.fmt(e)).collect();
        entry.set_item("subset", subset)?;
        let minimals: Vec<(String, usize)> =
            w.minimals.iter().map(|m| (p.fmt(m), m.degree())).collect();
        entry.set_item("minimals", minimals)?;
        witnesses.append(entry)?;
    }
    dict.set_item("witnesses", witnesses)?;
    let undetermined: Vec<Vec<String>> = report
        .undetermined
        .iter()
        .map(|s| s.iter().map(|e| p.fmt(e)).collect())
        .collect();
    dict.set_item("undetermined", undetermined)?;
    Ok(dict)
}

/// Graded element table: list of strata, each a sorted list of canonical
/// words.
#[pyfunction]
fn graded_elements(p: &Presentation, max_degree: usize) -> PyResult<Vec<Vec<String>>> {
    let table =
        enumerate::graded_elements(&p.inner, max_degree, &Limits::default()).map_err(engine_err)?;
    Ok(table
        .strata
        .iter()
        .map(|s| s.iter().map(|e| p.fmt(e)).collect())
        .collect())
}

#[pymodule]
fn monoid_growth_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Presentation>()?;
    m.add_function(wrap_pyfunction!(growth, m)?)?;
    m.add_function(wrap_pyfunction!(skew, m)?)?;
    m.add_function(wrap_pyfunction!(verify_inversion, m)?)?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(equivalence_class, m)?)?;
    m.add_function(wrap_pyfunction!(are_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(left_divides, m)?)?;
    m.add_function(wrap_pyfunction!(mcm, m)?)?;
    m.add_function(wrap_pyfunction!(right_complements, m)?)?;
    m.add_function(wrap_pyfunction!(common_multiples, m)?)?;
    m.add_function(wrap_pyfunction!(towers_within, m)?)?;
    m.add_function(wrap_pyfunction!(observed_height, m)?)?;
    m.add_function(wrap_pyfunction!(cancellative_up_to, m)?)?;
    m.add_function(wrap_pyfunction!(condition_l, m)?)?;
    m.add_function(wrap_pyfunction!(graded_elements, m)?)?;
    Ok(())
}
