use std::collections::HashMap;

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ztorsion_core::export::{poset_dot, poset_json};
use ztorsion_core::io::{parse_realization, to_json};
use ztorsion_core::{
    build_poset, face_module_hilbert, hermite_normal_form, smith_normal_form, verify_main_theorem,
    verify_realization, IntMatrix, VerifyOptions,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_matrix(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_rows(cols, &rows).map_err(value_err)
}

/// A realized Z-matroid: generators in Z^D modulo a relation lattice.
#[pyclass(name = "Realization", module = "ztorsion", frozen)]
struct PyRealization {
    inner: ztorsion_core::Realization,
}

#[pymethods]
impl PyRealization {
    #[new]
    #[pyo3(signature = (ambient_rank, generators, relations=None))]
    fn new(ambient_rank: usize, generators: Vec<Vec<BigInt>>, relations: Option<Vec<Vec<BigInt>>>) -> PyResult<Self> {
        let relations = relations.unwrap_or_default();
        let inner = ztorsion_core::Realization::new(ambient_rank, &relations, generators).map_err(value_err)?;
        Ok(PyRealization { inner })
    }

    /// Parses JSON or the whitespace matrix shorthand.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_realization(text).map(|inner| PyRealization { inner }).map_err(value_err)
    }

    fn to_json(&self) -> String {
        to_json(&self.inner)
    }

    #[getter]
    fn ambient_rank(&self) -> usize {
        self.inner.ambient_rank()
    }

    #[getter]
    fn generators(&self) -> Vec<Vec<BigInt>> {
        self.inner.generators().to_vec()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn initial_multiplicity(&self) -> BigInt {
        self.inner.initial_multiplicity()
    }

    fn is_essential(&self) -> bool {
        self.inner.is_essential()
    }

    /// `(subset, d, cork, m, independent)` for every subset, with 0-based indices.
    fn profiles(&self) -> Vec<(Vec<usize>, usize, usize, BigInt, bool)> {
        self.inner
            .profiles()
            .into_iter()
            .map(|p| (p.subset.indices().collect(), p.d, p.cork, p.multiplicity, p.independent))
            .collect()
    }

    /// The arithmetic Tutte polynomial as a string.
    fn tutte(&self) -> String {
        self.inner.arithmetic_tutte().to_string()
    }

    /// Coefficients keyed by `(x exponent, y exponent)`.
    fn tutte_terms(&self) -> HashMap<(u32, u32), BigInt> {
        self.inner.arithmetic_tutte().terms().into_iter().map(|(e, c)| (e, c.clone())).collect()
    }

    fn dual(&self) -> PyResult<Self> {
        self.inner.dual().map(|inner| PyRealization { inner }).map_err(value_err)
    }

    fn modulo_initial_torsion(&self) -> Self {
        PyRealization { inner: self.inner.modulo_initial_torsion() }
    }

    /// Hilbert series of the face module in canonical form.
    fn hilbert(&self) -> PyResult<String> {
        face_module_hilbert(&self.inner).map(|s| s.to_string()).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    /// `(numerator coefficients, pole order)` of the face module series.
    fn hilbert_parts(&self) -> PyResult<(Vec<BigInt>, usize)> {
        let s = face_module_hilbert(&self.inner).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        Ok((s.numerator().coeffs().to_vec(), s.pole_order()))
    }

    fn main_theorem_holds(&self) -> PyResult<bool> {
        verify_main_theorem(&self.inner).map(|r| r.holds).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn poset_json(&self) -> String {
        poset_json(&build_poset(&self.inner))
    }

    fn poset_dot(&self) -> String {
        poset_dot(&build_poset(&self.inner))
    }

    /// `(all passed, report lines)`.
    fn verify(&self) -> (bool, Vec<String>) {
        let report = verify_realization(&self.inner, VerifyOptions::default());
        (report.all_passed(), report.checks.iter().map(ToString::to_string).collect())
    }

    fn __repr__(&self) -> String {
        format!("Realization({})", to_json(&self.inner))
    }
}

/// Row Hermite normal form.
#[pyfunction]
fn hnf(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<Vec<BigInt>>> {
    Ok(hermite_normal_form(&to_matrix(rows)?).row_vectors())
}

/// Invariant factors of the Smith normal form.
#[pyfunction]
fn snf(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<BigInt>> {
    Ok(smith_normal_form(&to_matrix(rows)?).invariants)
}

#[pymodule]
fn ztorsion(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRealization>()?;
    m.add_function(wrap_pyfunction!(hnf, m)?)?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    Ok(())
}
