//! Python module `qsplit`. Structured results cross the boundary as JSON
//! strings or plain tuples.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qsplit::arith::{hilbert_symbol, quaternion_ramification, rational, Place};
use qsplit::checks::{all_passed, claims_suite, cocycle_suite, crep_suite};
use qsplit::forms::{class_group as core_class_group, discriminants_with_class_group, is_exceptional as core_is_exceptional, GroupStructure};
use qsplit::nakamura::compute_all;
use qsplit::report::{classify_with, compute_records, diff_row, GrossRecord};

fn err(e: qsplit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Invariant factors of the class group of discriminant `d`.
#[pyfunction]
fn class_group(d: i64) -> PyResult<Vec<u64>> {
    Ok(core_class_group(d).map_err(err)?.structure.0)
}

/// Discriminants with class group given by invariant factors, `|D| <= bound`.
#[pyfunction]
fn discriminants(invariants: Vec<u64>, bound: u64) -> Vec<i64> {
    discriminants_with_class_group(&GroupStructure(invariants), bound)
}

#[pyfunction]
fn is_exceptional(d: i64) -> bool {
    core_is_exceptional(d)
}

/// `(a, b)_p`; `p = 0` is the real place.
#[pyfunction]
fn hilbert(a: i64, b: i64, p: u64) -> PyResult<i8> {
    let place = if p == 0 { Place::Infinite } else { Place::Finite(p) };
    hilbert_symbol(&rational(a), &rational(b), place).map_err(err)
}

/// Discriminant of the quaternion algebra `(a, b / Q)`.
#[pyfunction]
fn quaternion_discriminant(a: i64, b: i64) -> PyResult<u64> {
    Ok(quaternion_ramification(a, b).map_err(err)?.discriminant())
}

/// The JSON record for one discriminant.
#[pyfunction]
fn nakamura(d: i64) -> PyResult<String> {
    let r = compute_all(d).map_err(err)?;
    Ok(GrossRecord::from(&r).to_json())
}

/// Whether the computed row for `d` matches the embedded table.
#[pyfunction]
fn table1_matches(d: i64) -> PyResult<bool> {
    let r = compute_all(d).map_err(err)?;
    Ok(diff_row(&r).map_err(err)?.is_clean())
}

/// `(product, matrix)` algebra counts.
#[pyfunction]
fn classify_counts() -> PyResult<(usize, usize)> {
    let rep = compute_records(None).and_then(|r| classify_with(&r)).map_err(err)?;
    Ok((rep.product_algebras.len(), rep.matrix_algebras.len()))
}

/// Runs `cocycles`, `crep` or `claims`; returns whether every line passed.
#[pyfunction]
#[pyo3(signature = (suite, instances = 20))]
fn check(suite: &str, instances: usize) -> PyResult<bool> {
    let lines = match suite {
        "cocycles" => cocycle_suite(),
        "crep" => crep_suite(instances),
        "claims" => claims_suite(),
        other => return Err(PyValueError::new_err(format!("unknown suite {other}"))),
    };
    Ok(all_passed(&lines))
}

#[pymodule]
#[pyo3(name = "qsplit")]
fn qsplit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(class_group, m)?)?;
    m.add_function(wrap_pyfunction!(discriminants, m)?)?;
    m.add_function(wrap_pyfunction!(is_exceptional, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(quaternion_discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(nakamura, m)?)?;
    m.add_function(wrap_pyfunction!(table1_matches, m)?)?;
    m.add_function(wrap_pyfunction!(classify_counts, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    Ok(())
}
