//! Python bindings: the Chow ring, characteristic classes, scenarios with
//! their checks, the local multiplicity engine and the scenario runner.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use foliares_core::classes::{self, SplitBundle};
use foliares_core::local::{self, LocalIdeal, LocalPoly, VectorFieldGerm, DEFAULT_MAX_DEGREE};
use foliares_core::report::{render_structured, render_text, Format};
use foliares_core::residue::{self, Check, TangencyComponent};
use foliares_core::run::{run, CheckSelector, RunConfig};
use foliares_core::scenario::{self as scn, Sweep};
use foliares_core::{ChowElement, MultiDegree};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "MultiProjectiveSpace", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySpace(foliares_core::MultiProjectiveSpace);

#[pymethods]
impl PySpace {
    #[new]
    fn new(factor_dims: Vec<u32>) -> PyResult<Self> {
        foliares_core::MultiProjectiveSpace::new(factor_dims).map(PySpace).map_err(err)
    }

    #[getter]
    fn factor_dims(&self) -> Vec<u32> {
        self.0.factor_dims().to_vec()
    }

    #[getter]
    fn dim(&self) -> u32 {
        self.0.dim()
    }

    fn point_class(&self) -> PyChow {
        PyChow(ChowElement::point_class(&self.0))
    }

    fn hyperplane(&self, index: usize) -> PyResult<PyChow> {
        if index == 0 || index > self.0.num_factors() {
            return Err(err(format!("factor index {index} out of range 1..={}", self.0.num_factors())));
        }
        Ok(PyChow(ChowElement::hyperplane(&self.0, index - 1)))
    }

    fn __repr__(&self) -> String {
        format!("MultiProjectiveSpace({:?})", self.0.factor_dims())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "ChowElement", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyChow(ChowElement);

#[pymethods]
impl PyChow {
    /// Parses a class such as `"3*h1^2 - h1*h2"`.
    #[staticmethod]
    fn parse(space: &PySpace, src: &str) -> PyResult<Self> {
        ChowElement::parse(&space.0, src).map(PyChow).map_err(err)
    }

    #[getter]
    fn space(&self) -> PySpace {
        PySpace(self.0.space().clone())
    }

    fn __add__(&self, other: &PyChow) -> PyResult<PyChow> {
        self.0.checked_add(&other.0).map(PyChow).map_err(err)
    }

    fn __sub__(&self, other: &PyChow) -> PyResult<PyChow> {
        self.0.checked_sub(&other.0).map(PyChow).map_err(err)
    }

    fn __mul__(&self, other: &PyChow) -> PyResult<PyChow> {
        self.0.checked_mul(&other.0).map(PyChow).map_err(err)
    }

    fn __neg__(&self) -> PyChow {
        PyChow(-&self.0)
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> PyChow {
        PyChow(self.0.pow(e))
    }

    fn grade_part(&self, d: u32) -> PyChow {
        PyChow(self.0.grade_part(d))
    }

    /// Degree of the top-dimensional part.
    fn integrate(&self) -> BigInt {
        self.0.integrate()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `(exponents, coefficient)` pairs in canonical order.
    fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        self.0.terms().map(|(e, c)| (e.to_vec(), c.clone())).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ChowElement('{}')", self.0)
    }
}

fn bundle(space: &PySpace, degrees: Vec<Vec<i64>>) -> PyResult<SplitBundle> {
    SplitBundle::new(&space.0, degrees.into_iter().map(MultiDegree::new).collect()).map_err(err)
}

/// Total Chern class of the split bundle with the given multidegrees.
#[pyfunction]
fn chern_class(space: &PySpace, degrees: Vec<Vec<i64>>) -> PyResult<PyChow> {
    Ok(PyChow(classes::chern_of_split(&bundle(space, degrees)?).into_value()))
}

/// Total Segre class (inverse of the Chern class).
#[pyfunction]
fn segre_class(space: &PySpace, degrees: Vec<Vec<i64>>) -> PyResult<PyChow> {
    Ok(PyChow(classes::segre_of_split(&bundle(space, degrees)?).into_value()))
}

/// Euler characteristic of the complete intersection cut out by the
/// given multidegrees.
#[pyfunction]
fn chi_of_ci(space: &PySpace, degrees: Vec<Vec<i64>>) -> PyResult<BigInt> {
    classes::chi_of_ci(&space.0, &bundle(space, degrees)?).map_err(err)
}

fn parse_check(name: &str) -> PyResult<Check> {
    Check::ALL
        .into_iter()
        .find(|c| c.name() == name)
        .ok_or_else(|| err(format!("unknown check '{name}' (expected theorem, tangency, izawa or ampleness)")))
}

#[pyclass(name = "Scenario", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyScenario(residue::Scenario);

#[pymethods]
impl PyScenario {
    /// `tangency` is a list of `(multiplicity, count, class)` triples.
    #[new]
    #[pyo3(signature = (space, x_defining, conormal, tangency=None))]
    fn new(
        space: &PySpace,
        x_defining: Vec<Vec<i64>>,
        conormal: Vec<Vec<i64>>,
        tangency: Option<Vec<(i64, i64, String)>>,
    ) -> PyResult<Self> {
        let mut sc = residue::Scenario::new(space.0.clone(), bundle(space, x_defining)?, bundle(space, conormal)?)
            .map_err(err)?;
        if let Some(entries) = tangency {
            let comps = entries
                .into_iter()
                .enumerate()
                .map(|(i, (m, c, class))| {
                    let class = ChowElement::parse(&space.0, &class)?;
                    TangencyComponent::new(format!("R{}", i + 1), BigInt::from(m), BigInt::from(c), class)
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            sc = sc.with_tangency(comps).map_err(err)?;
        }
        Ok(PyScenario(sc))
    }

    #[getter]
    fn dim_x(&self) -> u32 {
        self.0.dim_x()
    }

    #[getter]
    fn codim_k(&self) -> u32 {
        self.0.codim_k()
    }

    #[getter]
    fn sign(&self) -> i32 {
        self.0.sign()
    }

    fn lhs_theorem_main(&self) -> PyResult<PyChow> {
        residue::lhs_theorem_main(&self.0).map(PyChow).map_err(err)
    }

    fn lhs_proof_form(&self) -> PyResult<PyChow> {
        residue::lhs_proof_form(&self.0).map(PyChow).map_err(err)
    }

    fn rhs(&self) -> Option<PyChow> {
        residue::rhs_from_tangency_data(&self.0).map(PyChow)
    }

    fn tangency_corollary(&self) -> PyResult<PyChow> {
        residue::tangency_corollary(&self.0).map(PyChow).map_err(err)
    }

    fn izawa_lhs(&self) -> PyResult<BigInt> {
        residue::izawa_lhs(&self.0).map_err(err)
    }

    /// Runs one check and returns `(verdict, report)`; the report is text
    /// or a JSON document depending on `structured`.
    #[pyo3(signature = (check="theorem", structured=false))]
    fn verify(&self, check: &str, structured: bool) -> PyResult<(String, String)> {
        let r = residue::run_check(&self.0, parse_check(check)?).map_err(err)?;
        let body = if structured { render_structured(&r) } else { render_text(&r) };
        Ok((r.verdict.to_string(), body))
    }
}

#[pyclass(name = "ScenarioFile", frozen)]
struct PyScenarioFile(scn::ScenarioFile);

#[pymethods]
impl PyScenarioFile {
    #[staticmethod]
    fn parse(src: &str) -> PyResult<Self> {
        scn::parse_scenario(src).map(PyScenarioFile).map_err(err)
    }

    #[getter]
    fn ambient(&self) -> PySpace {
        PySpace(self.0.ambient().clone())
    }

    #[getter]
    fn sweep(&self) -> Option<(i64, i64)> {
        self.0.sweep().map(|s| (s.start, s.end))
    }

    #[pyo3(signature = (l=None))]
    fn instantiate(&self, l: Option<i64>) -> PyResult<PyScenario> {
        self.0.instantiate(l).map(PyScenario).map_err(err)
    }
}

/// Runs a scenario file like the `verify` command; returns
/// `(exit_code, output)`.
#[pyfunction]
#[pyo3(signature = (path, check="all", sweep=None, structured=false, max_degree=DEFAULT_MAX_DEGREE))]
fn run_scenario(
    path: &str,
    check: &str,
    sweep: Option<(i64, i64)>,
    structured: bool,
    max_degree: u32,
) -> PyResult<(i32, String)> {
    let selector = match check {
        "theorem" => CheckSelector::Theorem,
        "tangency" => CheckSelector::Tangency,
        "izawa" => CheckSelector::Izawa,
        "ampleness" => CheckSelector::Ampleness,
        "all" => CheckSelector::All,
        other => return Err(err(format!("unknown check selector '{other}'"))),
    };
    let sweep = sweep.map(|(a, b)| Sweep::new(a, b)).transpose().map_err(err)?;
    let out = run(&RunConfig {
        scenario: path.into(),
        check: selector,
        sweep,
        format: if structured { Format::Structured } else { Format::Text },
        max_degree,
    });
    Ok((out.exit_code, out.output))
}

/// Colength of the ideal generated by `;`-separated polynomials in x1..xn.
#[pyfunction]
#[pyo3(signature = (ideal, max_degree=DEFAULT_MAX_DEGREE))]
fn colength(ideal: &str, max_degree: u32) -> PyResult<u64> {
    local::colength(&LocalIdeal::parse(ideal, None).map_err(err)?, max_degree).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (f, max_degree=DEFAULT_MAX_DEGREE))]
fn milnor_number(f: &str, max_degree: u32) -> PyResult<u64> {
    let n = LocalPoly::max_var_index(f).map_err(err)?.max(1);
    local::milnor_number(&LocalPoly::parse(f, n).map_err(err)?, max_degree).map_err(err)
}

/// Tangency index of the curve `f = 0` with the vector field `"a1; a2"`.
#[pyfunction]
#[pyo3(signature = (f, v, max_degree=DEFAULT_MAX_DEGREE))]
fn brunella_index(f: &str, v: &str, max_degree: u32) -> PyResult<u64> {
    let v = VectorFieldGerm::parse(v).map_err(err)?;
    local::brunella_index(&LocalPoly::parse(f, v.nvars()).map_err(err)?, &v, max_degree).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (system, max_degree=DEFAULT_MAX_DEGREE))]
fn jacobian_residue(system: &str, max_degree: u32) -> PyResult<u64> {
    let ideal = LocalIdeal::parse(system, None).map_err(err)?;
    local::jacobian_residue(ideal.generators(), max_degree).map_err(err)
}

#[pymodule]
#[pyo3(name = "foliares")]
fn foliares_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpace>()?;
    m.add_class::<PyChow>()?;
    m.add_class::<PyScenario>()?;
    m.add_class::<PyScenarioFile>()?;
    m.add_function(wrap_pyfunction!(chern_class, m)?)?;
    m.add_function(wrap_pyfunction!(segre_class, m)?)?;
    m.add_function(wrap_pyfunction!(chi_of_ci, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(colength, m)?)?;
    m.add_function(wrap_pyfunction!(milnor_number, m)?)?;
    m.add_function(wrap_pyfunction!(brunella_index, m)?)?;
    m.add_function(wrap_pyfunction!(jacobian_residue, m)?)?;
    Ok(())
}
