//! Python bindings: words, polynomials, regularization, relation tables and
//! numerical evaluation.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use polyzeta::constants::parse_const_poly;
use polyzeta::numerics::{eval_numeric, finite_part_estimate, mzv, verify_poly, EvalContext};
use polyzeta::regularize::{regularize_poly, regularize_word, Regularization};
use polyzeta::relations::{build_table, Families};
use polyzeta::words::lyndon_generate;
use polyzeta::{Alphabet, Composition, Product, Rational};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr>(s: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    s.parse::<T>().map_err(err)
}

#[pyclass(name = "Word", frozen, eq, ord, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyWord(polyzeta::Word);

#[pymethods]
impl PyWord {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyWord(parse(text)?))
    }

    #[getter]
    fn weight(&self) -> usize {
        self.0.weight()
    }

    #[getter]
    fn alphabet(&self) -> String {
        self.0.alphabet().to_string()
    }

    fn is_lyndon(&self) -> bool {
        self.0.is_lyndon()
    }

    fn is_convergent(&self) -> bool {
        self.0.is_convergent()
    }

    fn lyndon_factorization(&self) -> Vec<PyWord> {
        self.0.lyndon_factorization().into_iter().map(PyWord).collect()
    }

    /// The word over the other alphabet, or None when it has no image.
    fn transcode(&self) -> Option<PyWord> {
        self.0.transcode().map(PyWord)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}')", self.0)
    }
}

#[pyclass(name = "Poly", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoly(polyzeta::NCPoly<Rational>);

#[pymethods]
impl PyPoly {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyPoly(polyzeta::NCPoly::parse(text).map_err(err)?))
    }

    fn shuffle(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.shuffle(&other.0).map_err(err)?))
    }

    fn stuffle(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.stuffle(&other.0).map_err(err)?))
    }

    fn concat(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.concat(&other.0).map_err(err)?))
    }

    /// Coefficient of a word as a `p/q` string.
    fn coeff(&self, word: &PyWord) -> String {
        self.0.coeff(&word.0).to_string()
    }

    /// Regularized value under `shuffle`, `stuffle` or `gamma`.
    fn regularize(&self, kind: &str) -> PyResult<String> {
        let kind: Regularization = parse(kind)?;
        Ok(regularize_poly(kind, &self.0).map_err(err)?.to_string())
    }

    fn __add__(&self, other: &PyPoly) -> PyPoly {
        PyPoly(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &PyPoly) -> PyPoly {
        PyPoly(self.0.sub(&other.0))
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }
}

#[pyclass(name = "RelationTable", frozen)]
struct PyRelationTable(polyzeta::RelationTable);

#[pymethods]
impl PyRelationTable {
    #[getter]
    fn max_weight(&self) -> usize {
        self.0.max_weight
    }

    /// `{head: rhs}` over all weights.
    fn rewrites(&self) -> Vec<(String, String)> {
        self.0
            .levels
            .iter()
            .flat_map(|l| l.rewrites.iter().map(|(h, r)| (h.to_string(), r.to_string())))
            .collect()
    }

    fn irreducibles(&self, weight: usize) -> Vec<String> {
        self.0.level(weight).map(|l| l.irreducibles.iter().map(|s| s.to_string()).collect()).unwrap_or_default()
    }

    fn normalize(&self, poly: &str) -> PyResult<String> {
        let p = parse_const_poly(poly).map_err(err)?;
        Ok(self.0.normalize(&p).map_err(err)?.to_string())
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.to_json()).expect("serializable")
    }

    fn to_markdown(&self) -> String {
        self.0.to_markdown()
    }
}

#[pyfunction]
#[pyo3(signature = (alphabet, max_weight))]
fn lyndon_words(alphabet: &str, max_weight: usize) -> PyResult<Vec<PyWord>> {
    let alphabet: Alphabet = parse(alphabet)?;
    Ok(lyndon_generate(alphabet, max_weight).into_iter().map(PyWord).collect())
}

#[pyfunction]
fn product(kind: &str, u: &PyWord, v: &PyWord) -> PyResult<PyPoly> {
    let kind: Product = parse(kind)?;
    let pu = polyzeta::NCPoly::from_word(u.0.clone());
    Ok(PyPoly(pu.product(&polyzeta::NCPoly::from_word(v.0.clone()), kind).map_err(err)?))
}

#[pyfunction]
fn regularize(kind: &str, word: &PyWord) -> PyResult<String> {
    let kind: Regularization = parse(kind)?;
    Ok(regularize_word(kind, &word.0).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (max_weight, duality = false, hexagon = false))]
fn relation_table(py: Python<'_>, max_weight: usize, duality: bool, hexagon: bool) -> PyResult<PyRelationTable> {
    let table = py.detach(|| build_table(max_weight, Families { duality, hexagon })).map_err(err)?;
    Ok(PyRelationTable(table))
}

/// `(decimal value, error bound)` of a multiple zeta value.
#[pyfunction]
#[pyo3(signature = (composition, digits = 40))]
fn zeta(composition: &str, digits: u32) -> PyResult<(String, f64)> {
    let c: Composition = parse(composition)?;
    let ctx = EvalContext::new(digits);
    let v = mzv(&c, &ctx).map_err(err)?;
    Ok((v.to_decimal(digits as usize), v.error_bound()))
}

/// `(real, imaginary)` parts of a constant polynomial such as `"z(2) + 1/6·ipi^2"`.
#[pyfunction]
#[pyo3(signature = (poly, digits = 40))]
fn evaluate(poly: &str, digits: u32) -> PyResult<(f64, f64)> {
    let p = parse_const_poly(poly).map_err(err)?;
    let (re, im) = eval_numeric(&p, &EvalContext::new(digits)).map_err(err)?;
    Ok((re.to_f64(), im.to_f64()))
}

/// `(verified, residual bound)` for the identity `poly = 0`.
#[pyfunction]
#[pyo3(signature = (poly, digits = 40))]
fn verify(poly: &str, digits: u32) -> PyResult<(bool, f64)> {
    let p = parse_const_poly(poly).map_err(err)?;
    let (ok, residual) = verify_poly(&p, &EvalContext::new(digits)).map_err(err)?;
    Ok((ok, residual.magnitude_bound()))
}

#[pyfunction]
#[pyo3(signature = (word, n, digits = 30))]
fn finite_part(word: &PyWord, n: u64, digits: u32) -> PyResult<f64> {
    Ok(finite_part_estimate(&word.0, n, &EvalContext::new(digits)).map_err(err)?.to_f64())
}

#[pymodule]
fn polyzeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyRelationTable>()?;
    m.add_function(wrap_pyfunction!(lyndon_words, m)?)?;
    m.add_function(wrap_pyfunction!(product, m)?)?;
    m.add_function(wrap_pyfunction!(regularize, m)?)?;
    m.add_function(wrap_pyfunction!(relation_table, m)?)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(finite_part, m)?)?;
    Ok(())
}
