//! Python module `tritree_py`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tritree::approximation::{approximants as approx_rows, ApproximationTarget};
use tritree::coding::{matrix_of, point_of, representation_of, walk, word_of, Anchor, Representation, Word};
use tritree::exact_core::Triple;
use tritree::triangle_dynamics::triangle_sequence_rational;
use tritree::triangular_tree::{level_counterimage, rank};

fn err(e: tritree::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `encode("19/54", "14/54")` -> dict of representation, anchor, word, matrix, rank.
#[pyfunction]
fn encode(x: &str, y: &str) -> PyResult<BTreeMap<String, Option<String>>> {
    let t = Triple::parse_parts(x, y, false).map_err(err)?;
    let rep = representation_of(&t);
    let w = word_of(&rep).ok();
    Ok(BTreeMap::from([
        ("point".into(), Some(t.to_text())),
        ("kind".into(), Some(rep.kind.to_string())),
        ("representation".into(), Some(rep.to_string())),
        ("anchor".into(), w.as_ref().map(|(a, _)| a.name().to_string())),
        ("word".into(), w.as_ref().map(|(_, w)| w.to_string())),
        ("matrix".into(), matrix_of(&t).ok().map(|m| m.to_string())),
        ("rank".into(), Some(rank(&t).to_string())),
    ]))
}

/// Point reached by an L/R/I word from an anchor, as `p/q,r/q`.
#[pyfunction]
#[pyo3(signature = (word, anchor = "root"))]
fn decode(word: &str, anchor: &str) -> PyResult<String> {
    let w: Word = word.parse().map_err(err)?;
    let a: Anchor = anchor.parse().map_err(err)?;
    Ok(walk(a, &w).map_err(err)?.1.to_text())
}

#[pyfunction]
fn decode_repr(repr: &str) -> PyResult<String> {
    let r: Representation = repr.parse().map_err(err)?;
    Ok(point_of(&r).map_err(err)?.to_text())
}

/// Level n as `(point, kind)` pairs.
#[pyfunction]
fn tree_level(n: i64) -> PyResult<Vec<(String, String)>> {
    if n < -1 {
        return Err(PyValueError::new_err("level must be >= -1"));
    }
    Ok(level_counterimage(n).iter().map(|x| (x.triple.to_text(), x.kind.to_string())).collect())
}

/// `(digits, remainder, kind)` for a rational point `p/q,r/q`.
#[pyfunction]
fn triangle_sequence(point: &str) -> PyResult<(Vec<String>, String, String)> {
    let t = Triple::parse(point, true).map_err(err)?;
    let (s, rem, kind) = triangle_sequence_rational(&t);
    Ok((s.digits.iter().map(|d| d.to_string()).collect(), rem.to_string(), kind.to_string()))
}

/// `(word, point, representation)` rows toward a `TS;CF` target.
#[pyfunction]
fn approximants(repr: &str, steps: usize) -> PyResult<Vec<(String, String, String)>> {
    let target = ApproximationTarget::parse_repr(repr).map_err(err)?;
    let rows = approx_rows(&target, steps).map_err(err)?;
    Ok(rows.iter().map(|r| (r.word.to_string(), r.triple.to_text(), r.representation.to_string())).collect())
}

#[pymodule]
fn tritree_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(decode_repr, m)?)?;
    m.add_function(wrap_pyfunction!(tree_level, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(approximants, m)?)?;
    Ok(())
}
