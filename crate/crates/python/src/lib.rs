//! Python bindings: root systems, verification suites, artifacts and rank-one numerics.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use daha_lab::coeffs::{BigRational, Mono, Poly, Zero};
use daha_lab::report::Mode;
use daha_lab::roots::{RootSystem as CoreRootSystem, RootType};
use daha_lab::trigdunkl::{Dunkl, KappaParams};
use daha_lab::{emit as core_emit, rank1, suites, Error};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn system(kind: &str, rank: usize) -> PyResult<CoreRootSystem> {
    CoreRootSystem::new(RootType::parse(kind).map_err(err)?, rank).map_err(err)
}

fn rational(s: &str) -> PyResult<BigRational> {
    s.trim().parse().map_err(|_| PyValueError::new_err(format!("{s:?} is not a rational number")))
}

fn from_json<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// A reduced root system of rank at most 8.
#[pyclass(name = "RootSystem", frozen)]
struct PyRootSystem {
    inner: CoreRootSystem,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(kind: &str, rank: usize) -> PyResult<Self> {
        Ok(PyRootSystem { inner: system(kind, rank)? })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank
    }

    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.positive_roots().map(|(_, r)| r.alpha.clone()).collect()
    }

    fn special_nodes(&self) -> Vec<usize> {
        self.inner.special_nodes()
    }

    /// Inner product `(z, w)` of two coweights, as a fraction string.
    fn pairing(&self, z: Vec<i64>, w: Vec<i64>) -> PyResult<String> {
        self.check(&z)?;
        self.check(&w)?;
        Ok(self.inner.ip(&z, &w).to_string())
    }

    /// Length of the translation by the coweight `b`.
    fn translation_length(&self, b: Vec<i64>) -> PyResult<usize> {
        self.check(&b)?;
        Ok(self.inner.length(&self.inner.translation(&b)))
    }

    /// `(r, word)` with `b = pi_r s_{word[0]} ...`.
    fn translation_word(&self, b: Vec<i64>) -> PyResult<(usize, Vec<usize>)> {
        self.check(&b)?;
        let rw = self.inner.reduced_word(&self.inner.translation(&b)).map_err(err)?;
        Ok((rw.r, rw.word))
    }

    fn __repr__(&self) -> String {
        format!("RootSystem({:?}, {})", self.inner.kind.to_string(), self.inner.rank)
    }
}

impl PyRootSystem {
    fn check(&self, z: &[i64]) -> PyResult<()> {
        if z.len() != self.inner.rank {
            return Err(PyValueError::new_err(format!("expected {} coordinates", self.inner.rank)));
        }
        Ok(())
    }
}

/// Runs one suite and returns its checks as a list of dicts.
#[pyfunction]
#[pyo3(signature = (kind, rank, suite, points=3, seed=7, symbolic=false, box_size=3, degree=2, qorder=8, horder=3, pairs=5))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    kind: &str,
    rank: usize,
    suite: &str,
    points: usize,
    seed: u64,
    symbolic: bool,
    box_size: i64,
    degree: i64,
    qorder: i64,
    horder: i64,
    pairs: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let rs = system(kind, rank)?;
    if points == 0 {
        return Err(PyValueError::new_err("points must be at least 1"));
    }
    let mode = if symbolic { Mode::Symbolic } else { Mode::Generic { points, seed } };
    let checks = py.detach(|| -> PyResult<_> {
        Ok(match suite {
            "roots" => suites::roots(&rs, seed),
            "daha-relations" => suites::daha_relations(&rs, mode, box_size, rs.kind == RootType::G),
            "y-operators" => suites::y_operators(&rs, mode, box_size),
            "macdonald" => suites::macdonald(&rs, mode, degree, 1),
            "pairing" | "pairing-unitarity" => suites::pairing_unitarity(&rs, qorder, seed, pairs),
            "dunkl" => suites::dunkl(&rs, mode, box_size, 2),
            "ratdiff" => suites::ratdiff(&rs, mode, degree, 20),
            "limits" => {
                let mut c = suites::differential_limit(&rs, mode, degree, horder);
                c.extend(suites::difference_limit(&rs, mode, degree, horder as usize));
                c
            }
            other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
        })
    })?;
    let v = serde_json::to_value(&checks).map_err(|e| PyValueError::new_err(e.to_string()))?;
    from_json(py, &v)
}

/// A JSON artifact: `nsmac`, `macdonald-op`, `mu0` or `lambda-op`.
#[pyfunction]
#[pyo3(signature = (artifact, kind, rank, weight=None, r=1, degree=2, qorder=8, height=4, k="1"))]
#[allow(clippy::too_many_arguments)]
fn emit<'py>(
    py: Python<'py>,
    artifact: &str,
    kind: &str,
    rank: usize,
    weight: Option<Vec<i64>>,
    r: usize,
    degree: i64,
    qorder: i64,
    height: i64,
    k: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let rs = system(kind, rank)?;
    let doc = match artifact {
        "nsmac" => {
            let w = weight.ok_or_else(|| PyValueError::new_err("nsmac needs a weight"))?;
            core_emit::nsmac(&rs, &w)
        }
        "macdonald-op" => core_emit::macdonald_op(&rs, r, degree),
        "mu0" => core_emit::mu0(&rs, qorder, height),
        "lambda-op" => core_emit::lambda_op(&rs, r, degree, &rational(k)?),
        other => return Err(PyValueError::new_err(format!("unknown artifact {other:?}"))),
    }
    .map_err(err)?;
    from_json(py, &doc)
}

/// Dunkl operator `D_b` on a Laurent polynomial given as `[(exps, "p/q"), ...]`.
#[pyfunction]
fn dunkl_apply(kind: &str, rank: usize, kappa: &str, b: Vec<i64>, f: Vec<(Vec<i64>, String)>) -> PyResult<Vec<(Vec<i64>, String)>> {
    let rs = system(kind, rank)?;
    if b.len() != rank || f.iter().any(|(e, _)| e.len() != rank) {
        return Err(PyValueError::new_err(format!("expected {rank} coordinates")));
    }
    let mut p = Poly::zero();
    for (e, c) in &f {
        p.add_term(Mono::from_i64(e), rational(c)?);
    }
    let d = Dunkl::new(&rs, KappaParams::uniform(rational(kappa)?));
    let out = d.apply(&b, &p);
    Ok(out.terms().rev().map(|(m, c)| (m.to_vec(rank), c.to_string())).collect())
}

/// `(u(s), v(s))` for the rank-one spectral problem.
#[pyfunction]
#[pyo3(signature = (lam, k, s, tol=1e-10))]
fn solve_g(lam: Complex64, k: f64, s: Vec<f64>, tol: f64) -> PyResult<Vec<(Complex64, Complex64)>> {
    let sol = rank1::solve_g(lam, k, &s, tol).map_err(err)?;
    Ok(sol.u.into_iter().zip(sol.v).collect())
}

#[pyfunction]
#[pyo3(signature = (lam, k, s, tol=1e-8))]
fn main_theorem_residual(lam: Complex64, k: f64, s: f64, tol: f64) -> PyResult<f64> {
    rank1::main_theorem_residual(lam, k, s, tol).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (lam, k, s, tol=1e-8))]
fn intertwiner_residuals(lam: Complex64, k: f64, s: f64, tol: f64) -> PyResult<(f64, f64)> {
    Ok((
        rank1::intertwiner_s1_residual(lam, k, s, tol).map_err(err)?,
        rank1::intertwiner_s0_residual(lam, k, s, tol).map_err(err)?,
    ))
}

/// The Gamma-product `sigma(lambda)` in rank one; `symmetric` selects the primed variant.
#[pyfunction]
#[pyo3(signature = (lam, k, symmetric=false))]
fn sigma(lam: Complex64, k: f64, symmetric: bool) -> PyResult<Complex64> {
    let v = if symmetric { rank1::SigmaVariant::Symmetric } else { rank1::SigmaVariant::Asymmetric };
    rank1::eval_sigma(lam, k, v).map_err(err)
}

#[pymodule]
fn daha_lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyRootSystem>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(emit, m)?)?;
    m.add_function(wrap_pyfunction!(dunkl_apply, m)?)?;
    m.add_function(wrap_pyfunction!(solve_g, m)?)?;
    m.add_function(wrap_pyfunction!(main_theorem_residual, m)?)?;
    m.add_function(wrap_pyfunction!(intertwiner_residuals, m)?)?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    Ok(())
}
