//! Python bindings: matrices, design verification, scheme verification,
//! seed constructions, and the three digraph-family pipelines.
//!
//! Reports cross the boundary as plain dicts (converted from their JSON
//! form) so Python callers can inspect checks without extra types.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use ddforge::scheme::{center_dimension, verify_scheme};
use ddforge::seeds::{paley_hadamard, skew_bgw, sylvester_hadamard, verify_bgw, verify_skew};
use ddforge::{
    build_s3, build_s4, build_s5, derive_ddd_params, galois::build_field, verify_ddd, DDDParams,
    IntMatrix,
};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<PyObject> {
    Ok(match value {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_py(py),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py(py)
            }
        }
        serde_json::Value::String(s) => s.into_py(py),
        serde_json::Value::Array(items) => {
            let list = PyList::empty_bound(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py(py)
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new_bound(py);
            for (k, v) in map {
                dict.set_item(k, json_to_py(py, v)?)?;
            }
            dict.into_py(py)
        }
    })
}

fn report_to_py(py: Python<'_>, report: &ddforge::VerificationReport) -> PyResult<PyObject> {
    let mut value = serde_json::to_value(report).map_err(err)?;
    if let serde_json::Value::Object(map) = &mut value {
        map.insert(
            "overall".to_string(),
            serde_json::to_value(report.overall()).map_err(err)?,
        );
    }
    json_to_py(py, &value)
}

fn matrix_from_rows(rows: Vec<Vec<i64>>) -> PyResult<IntMatrix> {
    let r = rows.len();
    let c = rows.first().map(|row| row.len()).unwrap_or(0);
    if rows.iter().any(|row| row.len() != c) {
        return Err(PyValueError::new_err("ragged row lengths"));
    }
    IntMatrix::new(r, c, rows.into_iter().flatten().collect()).map_err(err)
}

/// A dense integer matrix.
#[pyclass(name = "Matrix")]
#[derive(Clone)]
struct PyMatrix {
    inner: IntMatrix,
}

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(PyMatrix { inner: matrix_from_rows(rows)? })
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyMatrix { inner: IntMatrix::identity(n) }
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    fn get(&self, r: usize, c: usize) -> PyResult<i64> {
        if r >= self.inner.rows() || c >= self.inner.cols() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.get(r, c))
    }

    fn to_list(&self) -> Vec<Vec<i64>> {
        (0..self.inner.rows())
            .map(|r| (0..self.inner.cols()).map(|c| self.inner.get(r, c)).collect())
            .collect()
    }

    fn matmul(&self, other: &PyMatrix) -> PyResult<PyMatrix> {
        Ok(PyMatrix { inner: self.inner.mul(&other.inner).map_err(err)? })
    }

    fn transpose(&self) -> PyMatrix {
        PyMatrix { inner: self.inner.transpose() }
    }

    fn __repr__(&self) -> String {
        format!("Matrix({}x{})", self.inner.rows(), self.inner.cols())
    }
}

fn params_from_list(values: [u64; 6]) -> DDDParams {
    DDDParams {
        v: values[0],
        k: values[1],
        lambda1: values[2],
        lambda2: values[3],
        m: values[4],
        n: values[5],
    }
}

fn params_to_py(py: Python<'_>, params: &DDDParams) -> PyResult<PyObject> {
    json_to_py(py, &serde_json::to_value(params).map_err(err)?)
}

/// Check the divisible-design identity A A^T = A^T A = kI + l1 (blocks)
/// + l2 (off-blocks) for the given parameter tuple (v, k, l1, l2, m, n).
#[pyfunction]
fn check_design(py: Python<'_>, adjacency: &PyMatrix, params: [u64; 6]) -> PyResult<PyObject> {
    let report = verify_ddd(&adjacency.inner, &params_from_list(params)).map_err(err)?;
    report_to_py(py, &report)
}

/// Derive the design parameters of a 0/1 matrix with the given group
/// shape (m groups of size n), verifying the identity along the way.
#[pyfunction]
fn design_parameters(py: Python<'_>, adjacency: &PyMatrix, m: u64, n: u64) -> PyResult<PyObject> {
    let params = derive_ddd_params(&adjacency.inner, m, n).map_err(err)?;
    params_to_py(py, &params)
}

/// Verify the association-scheme axioms and return the verdict along
/// with commutativity, valences, and the center dimension.
#[pyfunction]
fn check_scheme(py: Python<'_>, classes: Vec<PyMatrix>) -> PyResult<PyObject> {
    let mats: Vec<IntMatrix> = classes.into_iter().map(|m| m.inner).collect();
    let outcome = verify_scheme(&mats).map_err(err)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("report", report_to_py(py, &outcome.report)?)?;
    if let Some(tensor) = &outcome.tensor {
        dict.set_item("commutative", tensor.is_commutative())?;
        dict.set_item("classes", tensor.classes())?;
        dict.set_item(
            "valences",
            (0..tensor.classes()).map(|i| tensor.valence(i)).collect::<Vec<_>>(),
        )?;
        dict.set_item("center_dimension", center_dimension(tensor))?;
    }
    Ok(dict.into_py(py))
}

/// Skew weighing matrix BGW(q+1, q, q-1) over Z_g in exponent encoding;
/// -1 marks the zero entry.
#[pyfunction]
fn skew_weighing_matrix(q: u64, g: u64) -> PyResult<Vec<Vec<i64>>> {
    let (p, m) = prime_power(q)?;
    let field = build_field(p, m).map_err(err)?;
    let w = skew_bgw(&field, g).map_err(err)?;
    if !verify_bgw(&w).is_verified() || !verify_skew(&w).map_err(err)? {
        return Err(PyValueError::new_err("constructed matrix failed verification"));
    }
    Ok(w
        .entries
        .iter()
        .map(|row| row.iter().map(|e| e.map(|x| x as i64).unwrap_or(-1)).collect())
        .collect())
}

/// Hadamard matrix of the given order: powers of two via doubling,
/// q + 1 for prime powers q = 3 (mod 4) via quadratic residues.
#[pyfunction]
fn hadamard_matrix(order: usize) -> PyResult<PyMatrix> {
    let h = if order > 0 && order.is_power_of_two() {
        sylvester_hadamard(order.trailing_zeros())
    } else if order >= 4 {
        paley_hadamard(order as u64 - 1).map_err(err)?
    } else {
        return Err(PyValueError::new_err(format!("no Hadamard matrix of order {order}")));
    };
    Ok(PyMatrix { inner: h.mat })
}

fn prime_power(q: u64) -> PyResult<(u64, u32)> {
    if q < 2 {
        return Err(PyValueError::new_err(format!("{q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut m = 0;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            return if rest == 1 {
                Ok((p, m))
            } else {
                Err(PyValueError::new_err(format!("{q} is not a prime power")))
            };
        }
        p += 1;
    }
    Ok((q, 1))
}

fn bundle_dict<'py>(
    py: Python<'py>,
    params: &DDDParams,
    adjacency: &IntMatrix,
    classes: &[IntMatrix],
    report: &ddforge::VerificationReport,
) -> PyResult<PyObject> {
    let dict = PyDict::new_bound(py);
    dict.set_item("params", params_to_py(py, params)?)?;
    dict.set_item("adjacency", PyMatrix { inner: adjacency.clone() }.into_py(py))?;
    dict.set_item(
        "classes",
        classes
            .iter()
            .map(|m| PyMatrix { inner: m.clone() }.into_py(py))
            .collect::<Vec<_>>(),
    )?;
    dict.set_item("report", report_to_py(py, report)?)?;
    Ok(dict.into_py(py))
}

/// Digraph pair on n^2 (p+1) vertices from a Hadamard matrix of order n
/// and a weighing matrix built from the field of order p.
#[pyfunction]
fn hadamard_family(py: Python<'_>, n: usize, p: u64) -> PyResult<PyObject> {
    let bundle = build_s3(n, p, None).map_err(err)?;
    bundle_dict(py, &bundle.params, &bundle.a[1], &bundle.a, &bundle.report)
}

/// Digraph family on (n+1) blocks of size g from a skew weighing matrix
/// over Z_g.
#[pyfunction]
fn block_family(py: Python<'_>, n: u64, g: u64) -> PyResult<PyObject> {
    let bundle = build_s4(n, g).map_err(err)?;
    bundle_dict(py, &bundle.params, &bundle.n_mats[0], &bundle.classes, &bundle.report)
}

/// Digraph family on (q+1) q^2 vertices from the field of order q.
#[pyfunction]
fn field_family(py: Python<'_>, q: u64) -> PyResult<PyObject> {
    let bundle = build_s5(q).map_err(err)?;
    bundle_dict(py, &bundle.params, &bundle.n_mats[1], &bundle.classes, &bundle.report)
}

#[pymodule]
fn ddforge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(check_design, m)?)?;
    m.add_function(wrap_pyfunction!(design_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(check_scheme, m)?)?;
    m.add_function(wrap_pyfunction!(skew_weighing_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(hadamard_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(hadamard_family, m)?)?;
    m.add_function(wrap_pyfunction!(block_family, m)?)?;
    m.add_function(wrap_pyfunction!(field_family, m)?)?;
    Ok(())
}
