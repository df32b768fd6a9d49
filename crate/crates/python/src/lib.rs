//! Python bindings. Field elements cross the boundary as exact strings
//! ("3", "-1/4").

use std::collections::BTreeMap;
use std::time::Duration;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qhbd_core::cli::{config::parse_field, verify_sections, Report, RunConfig, Suite};
use qhbd_core::cyclotomic::fixed::eigen_dims;
use qhbd_core::cyclotomic::{CycloAlgebra as CoreCyclo, MultiplicityMap, QuotientOptions};
use qhbd_core::engine::Algebra as CoreAlgebra;
use qhbd_core::report::CheckSet;
use qhbd_core::scalars::{series_comp_inverse, series_f, Params as CoreParams, Scalar};
use qhbd_core::vqha::{beta_from_seeds, relation_checks, v_algebra};
use qhbd_core::weyl::{orbit as core_orbit, Flavor, Tuple};
use qhbd_core::wqha::{relation_checks_d, w_algebra};

fn py_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn flavor(s: &str) -> PyResult<Flavor> {
    match s {
        "B" | "b" => Ok(Flavor::B),
        "D" | "d" => Ok(Flavor::D),
        _ => Err(PyValueError::new_err(format!("flavor must be \"B\" or \"D\", not {s:?}"))),
    }
}

fn strings(t: &[Scalar]) -> Vec<String> {
    t.iter().map(|x| x.to_string()).collect()
}

fn checks_to_py<'py>(py: Python<'py>, set: &CheckSet) -> PyResult<Vec<Bound<'py, PyDict>>> {
    set.records()
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("name", &r.name)?;
            d.set_item("anchor", &r.anchor)?;
            d.set_item("passed", r.passed)?;
            d.set_item("instances", r.instances)?;
            d.set_item("witness", r.witness.clone())?;
            Ok(d)
        })
        .collect()
}

/// Ground field together with the parameters `p` and `q`.
#[pyclass(frozen)]
struct Params {
    inner: CoreParams,
}

#[pymethods]
impl Params {
    #[new]
    #[pyo3(signature = (field, q, p = "1"))]
    fn new(field: &str, q: &str, p: &str) -> PyResult<Self> {
        let f = parse_field(field).map_err(py_err)?;
        Ok(Params { inner: CoreParams::parse(f, p, q).map_err(py_err)? })
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    #[getter]
    fn p(&self) -> String {
        self.inner.p().to_string()
    }

    #[getter]
    fn q(&self) -> String {
        self.inner.q().to_string()
    }

    /// Order of `q^2`, or `None` when it has infinite order.
    #[getter]
    fn e(&self) -> Option<u64> {
        self.inner.e()
    }

    fn __repr__(&self) -> String {
        format!("Params(field={}, p={}, q={})", self.inner.field(), self.inner.p(), self.inner.q())
    }
}

impl Params {
    fn tuples(&self, seeds: Vec<Vec<String>>) -> PyResult<Vec<Tuple>> {
        let f = self.inner.field();
        seeds.iter().map(|s| s.iter().map(|x| f.parse(x)).collect::<Result<Tuple, _>>().map_err(py_err)).collect()
    }
}

/// Quiver Hecke algebra of type B or D on the orbits of the given seeds.
#[pyclass(frozen)]
struct Algebra {
    inner: CoreAlgebra,
}

#[pymethods]
impl Algebra {
    #[new]
    #[pyo3(signature = (params, seeds, flavor = "B"))]
    fn new(params: &Params, seeds: Vec<Vec<String>>, flavor: &str) -> PyResult<Self> {
        let seeds = params.tuples(seeds)?;
        let beta = beta_from_seeds(&seeds, Flavor::B);
        let inner = match self::flavor(flavor)? {
            Flavor::B => v_algebra(params.inner.clone(), beta),
            Flavor::D => w_algebra(params.inner.clone(), beta),
        }
        .map_err(py_err)?;
        Ok(Algebra { inner })
    }

    #[getter]
    fn flavor(&self) -> String {
        self.inner.flavor().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn tuples(&self) -> Vec<Vec<String>> {
        self.inner.tuples().iter().map(|t| strings(t)).collect()
    }

    /// Number of basis words `y^m psi_w e(i)` with `|m| <= max_ydeg`.
    fn basis_word_count(&self, max_ydeg: u32) -> usize {
        self.inner.basis_words(max_ydeg).len()
    }

    /// Checks every defining relation in normal form.
    fn relation_checks<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let set = match self.inner.flavor() {
            Flavor::B => relation_checks(&self.inner),
            Flavor::D => relation_checks_d(&self.inner),
        }
        .map_err(py_err)?;
        checks_to_py(py, &set)
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Cyclotomic quotient by `y_1^{m(i_1)} e(i)`.
#[pyclass(frozen)]
struct CycloAlgebra {
    inner: CoreCyclo,
}

#[pymethods]
impl CycloAlgebra {
    #[new]
    #[pyo3(signature = (algebra, multiplicities, degree_cap = None))]
    fn new(algebra: &Algebra, multiplicities: BTreeMap<String, u32>, degree_cap: Option<i32>) -> PyResult<Self> {
        let f = algebra.inner.field();
        let entries: Vec<(Scalar, u32)> =
            multiplicities.iter().map(|(k, v)| Ok((f.parse(k).map_err(py_err)?, *v))).collect::<PyResult<_>>()?;
        let m = MultiplicityMap::new(entries).map_err(py_err)?;
        let mut opts = QuotientOptions::default();
        if let Some(c) = degree_cap {
            opts.degree_cap = c;
        }
        Ok(CycloAlgebra { inner: CoreCyclo::new(&algebra.inner, &m, opts).map_err(py_err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn graded_dims(&self) -> BTreeMap<i32, usize> {
        self.inner.graded_dims()
    }

    /// Graded dimensions of the `+1` and `-1` eigenspaces of the sign
    /// involution on `psi_0`.
    fn eigen_dims(&self) -> (BTreeMap<i32, usize>, BTreeMap<i32, usize>) {
        eigen_dims(&self.inner)
    }

    fn nilpotency_indices(&self) -> Vec<u32> {
        self.inner.nilpotency_indices().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Orbit of `seed` under the Weyl group of the given flavor.
#[pyfunction]
#[pyo3(signature = (params, seed, flavor = "B"))]
fn orbit(params: &Params, seed: Vec<String>, flavor: &str) -> PyResult<Vec<Vec<String>>> {
    let seed = params.tuples(vec![seed])?.remove(0);
    Ok(core_orbit(&seed, self::flavor(flavor)?).members.iter().map(|t| strings(t)).collect())
}

/// Coefficients of `f = z + z/(1 - z)` and of its compositional inverse `g`.
#[pyfunction]
#[pyo3(signature = (field, order = 20))]
fn series(field: &str, order: usize) -> PyResult<(Vec<String>, Vec<String>)> {
    let f = series_f(parse_field(field).map_err(py_err)?, order).map_err(py_err)?;
    let g = series_comp_inverse(&f).map_err(py_err)?;
    Ok((strings(f.coeffs()), strings(g.coeffs())))
}

/// Runs verification suites on a TOML configuration and returns the JSON
/// report.
#[pyfunction]
fn verify(py: Python<'_>, config: &str, suites: Vec<String>) -> PyResult<String> {
    let cfg = RunConfig::from_toml(config).map_err(py_err)?;
    let resolved = cfg.resolve().map_err(py_err)?;
    let chosen: Vec<Suite> = suites
        .iter()
        .map(|s| Suite::from_name(s).ok_or_else(|| py_err(format!("unknown suite {s:?}"))))
        .collect::<PyResult<_>>()?;
    let sections = py.detach(|| verify_sections(&resolved, &chosen)).map_err(py_err)?;
    Ok(Report::new("verify", &cfg, sections, Default::default(), Duration::ZERO).to_json())
}

#[pymodule]
fn qhbd(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Params>()?;
    m.add_class::<Algebra>()?;
    m.add_class::<CycloAlgebra>()?;
    m.add_function(wrap_pyfunction!(orbit, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
