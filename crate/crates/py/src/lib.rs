//! Python bindings for ncg-forge.

use std::path::PathBuf;
use std::sync::Arc;

use ncg_forge::cli::{cmd_distance, cmd_model, cmd_torus, cmd_validate, Cli, Command, TorusAction};
use ncg_forge::distance::{self, DistanceProblem};
use ncg_forge::io::{self, Problem};
use ncg_forge::linalg::{CMatrix, C64};
use ncg_forge::model::intersection::intersection_form;
use ncg_forge::torus::{self, MatNCPoly, Theta};
use ncg_forge::triple::random::{random_triple, RandomTripleOptions};
use ncg_forge::triple::{sm, FiniteTriple};
use pyo3::exceptions::{PyArithmeticError, PyIOError, PyValueError};
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn err(e: ncg_forge::Error) -> PyErr {
    match e {
        ncg_forge::Error::Domain(m) => PyArithmeticError::new_err(m),
        ncg_forge::Error::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn matrix(rows: &[Vec<C64>], what: &str) -> PyResult<CMatrix> {
    let n = rows.len();
    let m = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.iter().any(|r| r.len() != m) {
        return Err(PyValueError::new_err(format!("{what}: rows have different lengths")));
    }
    Ok(CMatrix::from_fn(n, m, |i, j| rows[i][j]))
}

fn rows(m: &CMatrix) -> Vec<Vec<C64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

fn options(tol: f64, seed: u64) -> Cli {
    Cli { tol, seed, json: true, out: None, command: Command::Validate { file: PathBuf::new() } }
}

/// Finite spectral triple.
#[pyclass(name = "Triple", module = "ncg_forge_py", skip_from_py_object)]
#[derive(Clone)]
struct PyTriple {
    inner: FiniteTriple,
}

#[pymethods]
impl PyTriple {
    #[staticmethod]
    fn standard_model() -> Self {
        Self { inner: sm::standard_model_default() }
    }

    /// Standard model plus a leptoquark link of the given strength.
    #[staticmethod]
    fn leptoquark(strength: f64) -> Self {
        Self { inner: sm::standard_model_leptoquark(&sm::SmMasses::default(), strength) }
    }

    /// C^n with chiralities `signs` and an optional raw Dirac operator.
    #[staticmethod]
    #[pyo3(signature = (signs, dirac=None))]
    fn commutative(signs: Vec<i64>, dirac: Option<Vec<Vec<C64>>>) -> PyResult<Self> {
        if signs.is_empty() || signs.iter().any(|s| s.abs() != 1) {
            return Err(PyValueError::new_err("signs must be a nonempty list of +1/-1"));
        }
        let d = dirac.map(|d| matrix(&d, "dirac")).transpose()?;
        Ok(Self { inner: sm::commutative(&signs, d) })
    }

    #[staticmethod]
    fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self { inner: random_triple(&mut rng, &RandomTripleOptions::default()) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| err(e.into()))?;
        Ok(Self { inner: io::triple_from_json(&v, "").map_err(err)? })
    }

    fn to_json(&self) -> String {
        Value::Object(io::triple_json(&self.inner)).to_string()
    }

    #[getter]
    fn dim(&self) -> PyResult<usize> {
        Ok(self.inner.representation().map_err(err)?.dim)
    }

    #[getter]
    fn mu(&self) -> Vec<Vec<i64>> {
        self.inner.mu.clone()
    }

    fn dirac(&self) -> PyResult<Vec<Vec<C64>>> {
        Ok(rows(&self.inner.assemble_dirac().map_err(err)?))
    }

    /// (matrix, determinant) of the intersection form.
    fn intersection_form(&self) -> (Vec<Vec<i64>>, i128) {
        let f = intersection_form(&self.inner.algebra, &self.inner.reps, &self.inner.mu);
        (f.matrix, f.det)
    }

    /// Axiom report as a dict.
    #[pyo3(signature = (tol=1e-9, seed=0))]
    fn validate<'py>(&self, py: Python<'py>, tol: f64, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let p = Problem::FiniteTriple(self.inner.clone());
        let o = cmd_validate(&p, &self.inner, &options(tol, seed)).map_err(err)?;
        to_py(py, &o.report["report"])
    }

    /// Model report. `constants` maps F0, F2, F4, Lambda, tr1, n; `charges` are U(1) charges.
    #[pyo3(signature = (constants=None, charges=None))]
    fn model<'py>(&self, py: Python<'py>, constants: Option<&str>, charges: Option<Vec<f64>>) -> PyResult<Bound<'py, PyAny>> {
        let k = match constants {
            Some(s) => {
                let v: Value = serde_json::from_str(s).map_err(|e| err(e.into()))?;
                io::constants_from_json(&v, "constants").map_err(err)?
            }
            None => io::ConstantsInput::default(),
        };
        let p = Problem::Model { triple: self.inner.clone(), constants: k, charges };
        let o = cmd_model(&p, &options(1e-9, 0)).map_err(err)?;
        to_py(py, &o.report["report"])
    }

    fn __repr__(&self) -> String {
        let s: Vec<String> = self.inner.algebra.summands.iter().map(|s| format!("{}{}", s.field.symbol(), s.n)).collect();
        format!("Triple({}, reps={})", s.join("+"), self.inner.nrep())
    }
}

/// Connes distance between points i and j (0-based) for a Hermitian Δ.
#[pyfunction]
#[pyo3(signature = (delta, i, j, sizes=None, tol=1e-9))]
fn distance_numeric(delta: Vec<Vec<C64>>, i: usize, j: usize, sizes: Option<Vec<usize>>, tol: f64) -> PyResult<f64> {
    let d = matrix(&delta, "delta")?;
    let sizes = sizes.unwrap_or_else(|| vec![1; d.nrows()]);
    let p = DistanceProblem::new(sizes, d).map_err(err)?;
    Ok(distance::distance_numeric(&p, i, j, tol).map_err(err)?.value)
}

#[pyfunction]
fn distance_three_point(d12: f64, d13: f64, d23: f64) -> PyResult<(f64, f64, f64)> {
    distance::distance_three_point(d12, d13, d23).map_err(err)
}

#[pyfunction]
fn deltas_from_distances(d12: f64, d13: f64, d23: f64) -> PyResult<(f64, f64, f64)> {
    distance::deltas_from_distances(d12, d13, d23).map_err(err)
}

#[pyfunction]
fn distance_chain4(d12: f64, d23: f64, d34: f64) -> PyResult<f64> {
    distance::distance_chain4(d12, d23, d34).map_err(err)
}

#[pyfunction]
fn chain_uniform(n: usize, l: f64) -> PyResult<f64> {
    distance::chain_uniform(n, l).map_err(err)
}

/// Powers-Rieffel projector at θ = −λ: (∫e, ‖e²−e‖, c12).
#[pyfunction]
fn powers_rieffel(lam: f64, k: usize) -> PyResult<(f64, f64, f64)> {
    let pr = torus::powers_rieffel(lam, k).map_err(err)?;
    let ch = torus::topological_charge(&MatNCPoly::scalar(&pr.e)).map_err(err)?;
    Ok((pr.integral, pr.defect, ch.c[0][1]))
}

/// Product projector on the 4-torus: (c12, c34, q).
#[pyfunction]
fn block_product_charge(a: f64, b: f64, k: usize) -> PyResult<(f64, f64, f64)> {
    let (e, _, _) = torus::block_product_projector(a, b, k).map_err(err)?;
    let ch = torus::topological_charge(&MatNCPoly::scalar(&e)).map_err(err)?;
    Ok((ch.c[0][1], ch.c[2][3], ch.q.unwrap_or(f64::NAN)))
}

/// Residual of the orientability cycle for an antisymmetric θ given row by row.
#[pyfunction]
fn orientability_residual(theta: Vec<Vec<f64>>) -> PyResult<f64> {
    let n = theta.len();
    let flat: Vec<f64> = theta.into_iter().flatten().collect();
    if flat.len() != n * n {
        return Err(PyValueError::new_err("theta must be square"));
    }
    let t = Arc::new(Theta::new(n, flat).map_err(err)?);
    Ok(torus::orientability_cycle(&t).map_err(err)?.residual)
}

/// Run a command on a problem document, as the CLI does. Returns (exit code, report).
#[pyfunction]
#[pyo3(signature = (problem, command, i=None, j=None, action=None, tol=1e-9, seed=0))]
#[allow(clippy::too_many_arguments)]
fn run<'py>(
    py: Python<'py>,
    problem: &str,
    command: &str,
    i: Option<usize>,
    j: Option<usize>,
    action: Option<&str>,
    tol: f64,
    seed: u64,
) -> PyResult<(i32, Bound<'py, PyAny>)> {
    let p = io::parse_str(problem).map_err(err)?;
    let cli = options(tol, seed);
    let o = match command {
        "validate" => match &p {
            Problem::FiniteTriple(t) | Problem::Model { triple: t, .. } => cmd_validate(&p, t, &cli),
            _ => return Err(PyValueError::new_err("validate needs a finite_triple or model problem")),
        },
        "distance" => {
            let (Some(i), Some(j)) = (i, j) else {
                return Err(PyValueError::new_err("distance needs i and j (1-based)"));
            };
            cmd_distance(&p, i, j, &cli)
        }
        "model" => cmd_model(&p, &cli),
        "torus" => {
            let a = match action.unwrap_or("") {
                "ym" => TorusAction::Ym,
                "cs" => TorusAction::Cs,
                "charge" => TorusAction::Charge,
                "brs" => TorusAction::Brs,
                "feynman" => TorusAction::Feynman,
                other => return Err(PyValueError::new_err(format!("unknown torus action {other:?}"))),
            };
            match &p {
                Problem::Torus(t) => cmd_torus(&p, t, a, &cli),
                _ => return Err(PyValueError::new_err("torus needs a torus problem")),
            }
        }
        other => return Err(PyValueError::new_err(format!("unknown command {other:?}"))),
    }
    .map_err(err)?;
    Ok((o.code, to_py(py, &o.report)?))
}

#[pymodule]
pub fn ncg_forge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTriple>()?;
    m.add_function(wrap_pyfunction!(distance_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(distance_three_point, m)?)?;
    m.add_function(wrap_pyfunction!(deltas_from_distances, m)?)?;
    m.add_function(wrap_pyfunction!(distance_chain4, m)?)?;
    m.add_function(wrap_pyfunction!(chain_uniform, m)?)?;
    m.add_function(wrap_pyfunction!(powers_rieffel, m)?)?;
    m.add_function(wrap_pyfunction!(block_product_charge, m)?)?;
    m.add_function(wrap_pyfunction!(orientability_residual, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
