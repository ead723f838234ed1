//! Python bindings. Field elements cross the boundary as discrete logarithms
//! to base θ, with `-1` standing for zero.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hermgrs_core::constructions::{
    construct_theorem1, construct_theorem2, construct_theorem3, family_b, family_blm, family_s,
    named_pool,
};
use hermgrs_core::ff::{make_field, prime_power};
use hermgrs_core::grs::{hermitian_gram, is_mds, CodeSpec as CoreCode, CodeSpecJson};
use hermgrs_core::linalg::SolverLimits;
use hermgrs_core::selfdual::{
    conjecture_sweep, criterion_direct, criterion_lemma, existence_scan, find_multipliers,
    span_condition, ScanOptions,
};
use hermgrs_core::{Element, Error, Field as CoreField};

create_exception!(hermgrs, BudgetError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    let msg = format!("{}: {e}", e.code());
    if e.is_budget() {
        BudgetError::new_err(msg)
    } else {
        PyValueError::new_err(msg)
    }
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// The field `F_{q^2}` with `q = p^m`.
#[pyclass(frozen, module = "hermgrs")]
struct Field {
    inner: CoreField,
}

impl Field {
    fn elem(&self, d: i64) -> PyResult<Element> {
        match d {
            -1 => Ok(Element::ZERO),
            d if d >= 0 => Ok(self.inner.theta_pow(d)),
            _ => Err(PyValueError::new_err(format!("bad element dlog {d}"))),
        }
    }

    fn elems(&self, ds: &[i64]) -> PyResult<Vec<Element>> {
        ds.iter().map(|&d| self.elem(d)).collect()
    }

    fn dlog(&self, x: Element) -> i64 {
        self.inner.dlog_or_minus_one(x)
    }

    fn dlogs(&self, xs: &[Element]) -> Vec<i64> {
        xs.iter().map(|&x| self.dlog(x)).collect()
    }
}

#[pymethods]
impl Field {
    #[new]
    fn new(p: u64, m: u32) -> PyResult<Self> {
        Ok(Field {
            inner: make_field(p, m).map_err(to_py)?,
        })
    }

    /// Field for a prime power `q`.
    #[staticmethod]
    fn for_q(q: u64) -> PyResult<Self> {
        let (p, m) = prime_power(q).map_err(to_py)?;
        Field::new(p, m)
    }

    #[staticmethod]
    fn from_record(record: &str) -> PyResult<Self> {
        Ok(Field {
            inner: CoreField::from_record(record).map_err(to_py)?,
        })
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    #[getter]
    fn record(&self) -> String {
        self.inner.record()
    }

    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.inner.modulus().to_vec()
    }

    fn add(&self, x: i64, y: i64) -> PyResult<i64> {
        Ok(self.dlog(self.inner.add(self.elem(x)?, self.elem(y)?)))
    }

    fn mul(&self, x: i64, y: i64) -> PyResult<i64> {
        Ok(self.dlog(self.inner.mul(self.elem(x)?, self.elem(y)?)))
    }

    fn neg(&self, x: i64) -> PyResult<i64> {
        Ok(self.dlog(self.inner.neg(self.elem(x)?)))
    }

    fn inv(&self, x: i64) -> PyResult<i64> {
        Ok(self.dlog(self.inner.inv(self.elem(x)?).map_err(to_py)?))
    }

    fn frobenius(&self, x: i64) -> PyResult<i64> {
        Ok(self.dlog(self.inner.frobenius(self.elem(x)?)))
    }

    fn trace(&self, x: i64) -> PyResult<i64> {
        Ok(self.dlog(self.inner.trace(self.elem(x)?)))
    }

    fn norm(&self, x: i64) -> PyResult<i64> {
        Ok(self.dlog(self.inner.norm(self.elem(x)?)))
    }

    fn parse(&self, s: &str) -> PyResult<i64> {
        Ok(self.dlog(self.inner.parse_element(s).map_err(to_py)?))
    }

    fn render(&self, x: i64) -> PyResult<String> {
        Ok(self.inner.render(self.elem(x)?))
    }

    /// `V`, zero first then ascending dlog.
    fn trace_zero(&self) -> Vec<i64> {
        self.dlogs(&self.inner.trace_zero_set().elements)
    }

    fn family_b(&self, l: usize) -> PyResult<Vec<i64>> {
        Ok(self.dlogs(&family_b(&self.inner, l).map_err(to_py)?.elements))
    }

    fn family_blm(&self, l: usize, m: u64) -> PyResult<Vec<i64>> {
        Ok(self.dlogs(&family_blm(&self.inner, l, m).map_err(to_py)?.elements))
    }

    fn family_s(&self, e: i64, b: i64) -> PyResult<Vec<i64>> {
        Ok(self.dlogs(&family_s(&self.inner, e, self.elem(b)?).elements))
    }

    fn pool(&self, name: &str) -> PyResult<Vec<i64>> {
        Ok(self.dlogs(&named_pool(&self.inner, name).map_err(to_py)?.elements))
    }

    fn __repr__(&self) -> String {
        format!("Field('{}')", self.inner.record())
    }
}

/// A GRS or extended GRS code over a given field.
#[pyclass(frozen, module = "hermgrs")]
struct Code {
    field: CoreField,
    inner: CoreCode,
}

impl Code {
    fn wrap(field: &CoreField, inner: CoreCode) -> Self {
        Code {
            field: field.clone(),
            inner,
        }
    }
}

#[pymethods]
impl Code {
    #[new]
    #[pyo3(signature = (field, locators, multipliers, k, extended=false))]
    fn new(
        field: &Field,
        locators: Vec<i64>,
        multipliers: Vec<i64>,
        k: usize,
        extended: bool,
    ) -> PyResult<Self> {
        let code = CoreCode::new(
            field.elems(&locators)?,
            field.elems(&multipliers)?,
            k,
            extended,
        )
        .map_err(to_py)?;
        Ok(Code::wrap(&field.inner, code))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec: CodeSpecJson =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let (field, code) = spec.to_code().map_err(to_py)?;
        Ok(Code { field, inner: code })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner.to_json(&self.field)).expect("json")
    }

    #[getter]
    fn locators(&self) -> Vec<i64> {
        self.inner
            .locators()
            .iter()
            .map(|&x| self.field.dlog_or_minus_one(x))
            .collect()
    }

    #[getter]
    fn multipliers(&self) -> Vec<i64> {
        self.inner
            .multipliers()
            .iter()
            .map(|&x| self.field.dlog_or_minus_one(x))
            .collect()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn extended(&self) -> bool {
        self.inner.is_extended()
    }

    /// `(length, k, length - k + 1)`.
    #[getter]
    fn parameters(&self) -> (usize, usize, usize) {
        (
            self.inner.length(),
            self.inner.k(),
            self.inner.designed_distance(),
        )
    }

    fn is_self_dual(&self) -> PyResult<bool> {
        criterion_direct(&self.field, &self.inner).map_err(to_py)
    }

    fn lemma_criterion(&self) -> PyResult<bool> {
        criterion_lemma(&self.field, &self.inner).map_err(to_py)
    }

    fn is_mds(&self) -> PyResult<bool> {
        is_mds(&self.field, &self.inner).map_err(to_py)
    }

    /// Hermitian Gram matrix of the generator rows as dlogs.
    fn gram(&self) -> Vec<Vec<i64>> {
        hermitian_gram(&self.field, &self.inner).to_dlog_rows(&self.field)
    }

    fn __repr__(&self) -> String {
        let (n, k, d) = self.parameters();
        format!("Code([{n},{k},{d}], extended={})", self.inner.is_extended())
    }
}

/// Runs one of the three closed-form constructions. Returns the code and a
/// dict with `lambda`, `affine`, `proof_exponents` and `s`.
#[pyfunction]
#[pyo3(signature = (field, theorem, n, *, extended=false, e=None, b=-1, l=None, m=None))]
#[allow(clippy::too_many_arguments)]
fn construct(
    py: Python<'_>,
    field: &Field,
    theorem: u8,
    n: usize,
    extended: bool,
    e: Option<i64>,
    b: i64,
    l: Option<usize>,
    m: Option<u64>,
) -> PyResult<(Code, Py<PyAny>)> {
    let need = |name: &str| PyValueError::new_err(format!("theorem {theorem} needs `{name}`"));
    let f = &field.inner;
    let c = match theorem {
        1 => construct_theorem1(f, e.ok_or_else(|| need("e"))?, field.elem(b)?, n, extended, None),
        2 => construct_theorem2(f, l.ok_or_else(|| need("l"))?, n, extended, None),
        3 => construct_theorem3(
            f,
            l.ok_or_else(|| need("l"))?,
            m.ok_or_else(|| need("m"))?,
            n,
            extended,
            None,
        ),
        _ => return Err(PyValueError::new_err("theorem must be 1, 2 or 3")),
    }
    .map_err(to_py)?;
    let info = serde_json::json!({
        "theorem": c.theorem,
        "lambda": field.dlog(c.lambda),
        "affine": [field.dlog(c.affine.0), field.dlog(c.affine.1)],
        "proof_exponents": c.proof_exponents,
        "s": c.s,
    });
    Ok((Code::wrap(f, c.code), json_to_py(py, &info.to_string())?))
}

/// Multipliers making the code on `locators` self-dual, or `None`.
#[pyfunction]
#[pyo3(signature = (field, locators, extended=false))]
fn search(field: &Field, locators: Vec<i64>, extended: bool) -> PyResult<Option<Code>> {
    let locs = field.elems(&locators)?;
    let found = find_multipliers(&field.inner, &locs, extended, SolverLimits::default())
        .map_err(to_py)?;
    Ok(found.map(|c| Code::wrap(&field.inner, c)))
}

/// Whether the span condition holds for `locators`.
#[pyfunction]
#[pyo3(signature = (field, locators, extended=false))]
fn span_holds(field: &Field, locators: Vec<i64>, extended: bool) -> PyResult<bool> {
    let locs = field.elems(&locators)?;
    Ok(span_condition(&field.inner, &locs, extended)
        .map_err(to_py)?
        .holds)
}

fn options(workers: Option<usize>, subset_budget: u128) -> ScanOptions {
    ScanOptions {
        workers,
        subset_budget,
        ..ScanOptions::default()
    }
}

/// Existence scan over every `n`-subset of a named pool; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (field, n, pool="all-nonzero", extended=false, workers=None, subset_budget=1_000_000))]
fn scan(
    py: Python<'_>,
    field: &Field,
    n: usize,
    pool: &str,
    extended: bool,
    workers: Option<usize>,
    subset_budget: u128,
) -> PyResult<Py<PyAny>> {
    let pool = named_pool(&field.inner, pool).map_err(to_py)?;
    let report = py
        .detach(|| {
            existence_scan(
                &field.inner,
                n,
                &pool,
                extended,
                options(workers, subset_budget),
            )
        })
        .map_err(to_py)?;
    json_to_py(py, &report.to_json_pretty())
}

/// Span-condition and existence sweep; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (field, n, pool="subgroup", extended=false, workers=None, subset_budget=1_000_000))]
fn conjecture(
    py: Python<'_>,
    field: &Field,
    n: usize,
    pool: &str,
    extended: bool,
    workers: Option<usize>,
    subset_budget: u128,
) -> PyResult<Py<PyAny>> {
    let pool = named_pool(&field.inner, pool).map_err(to_py)?;
    let report = py
        .detach(|| {
            conjecture_sweep(
                &field.inner,
                n,
                &pool,
                extended,
                options(workers, subset_budget),
            )
        })
        .map_err(to_py)?;
    json_to_py(py, &serde_json::to_string(&report).expect("json"))
}

#[pymodule]
fn hermgrs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Code>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(span_holds, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture, m)?)?;
    m.add("BudgetError", m.py().get_type::<BudgetError>())?;
    Ok(())
}
