//! Python bindings. Algebra elements cross the boundary as lists of
//! `(coeff, [(row, col), ...])` pairs with Python integers as coefficients.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use superschur::algebra::{FormalSum, MatrixUnit, SymMonomial, Word};
use superschur::central::{self, DualityKind, IntegerPartition};
use superschur::{duality, symmetrization};

type Pair = (usize, usize);
type Terms = Vec<(BigInt, Vec<Pair>)>;
type SergeevTerms = Vec<(BigInt, bool, Vec<bool>, Vec<usize>)>;

fn err(e: superschur::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn units(pairs: &[Pair]) -> Vec<MatrixUnit> {
    pairs.iter().map(|&(r, c)| MatrixUnit::new(r, c)).collect()
}

fn pairs(units: &[MatrixUnit]) -> Vec<Pair> {
    units.iter().map(|u| (u.row, u.col)).collect()
}

fn sym_terms(a: &FormalSum<SymMonomial>) -> Terms {
    a.iter().map(|(m, c)| (c.clone(), pairs(m.units()))).collect()
}

fn word_terms(u: &FormalSum<Word>) -> Terms {
    u.iter().map(|(w, c)| (c.clone(), pairs(w.units()))).collect()
}

fn partition(parts: Vec<usize>) -> PyResult<IntegerPartition> {
    IntegerPartition::new(parts).map_err(err)
}

/// The superspace `C^{m|n}`, or the `Q(n)` setting when `m = n`.
#[pyclass(name = "SpaceSpec", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PySpaceSpec {
    inner: superschur::SpaceSpec,
}

#[pymethods]
impl PySpaceSpec {
    #[new]
    fn new(m: usize, n: usize) -> PyResult<Self> {
        Ok(PySpaceSpec { inner: superschur::SpaceSpec::new(m, n).map_err(err)? })
    }

    #[staticmethod]
    fn queer(n: usize) -> PyResult<Self> {
        Ok(PySpaceSpec { inner: superschur::SpaceSpec::queer(n).map_err(err)? })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn parity(&self, i: usize) -> PyResult<u8> {
        self.inner.check_index(i).map_err(err)?;
        Ok(self.inner.parity(i))
    }

    fn __repr__(&self) -> String {
        format!("SpaceSpec({}, {})", self.inner.m(), self.inner.n())
    }
}

impl PySpaceSpec {
    fn word(&self, w: &[Pair]) -> PyResult<Word> {
        let w = Word::new(units(w));
        w.check(&self.inner).map_err(err)?;
        Ok(w)
    }

    fn word_sum(&self, terms: Terms) -> PyResult<FormalSum<Word>> {
        let mut out = FormalSum::zero();
        for (c, w) in terms {
            out.add_term(self.word(&w)?, c);
        }
        Ok(out)
    }

    fn sym_sum(&self, terms: Terms) -> PyResult<FormalSum<SymMonomial>> {
        let mut out = FormalSum::zero();
        for (c, m) in terms {
            out.add_term(SymMonomial::canonical(&self.inner, units(&m)).map_err(err)?, c);
        }
        Ok(out)
    }
}

/// `σ̃` of a single word, by the closed partition formula.
#[pyfunction]
fn sigma_tilde(spec: &PySpaceSpec, word: Vec<Pair>) -> PyResult<Terms> {
    Ok(sym_terms(&symmetrization::sigma_tilde_closed(&spec.inner, &spec.word(&word)?)))
}

/// `σ̃` of a single word, by iterating the star operation.
#[pyfunction]
fn sigma_tilde_iter(spec: &PySpaceSpec, word: Vec<Pair>) -> PyResult<Terms> {
    Ok(sym_terms(&symmetrization::sigma_tilde_iter(&spec.inner, &spec.word(&word)?)))
}

/// `σ̃` of a linear combination of words.
#[pyfunction]
fn sigma_tilde_sum(spec: &PySpaceSpec, terms: Terms) -> PyResult<Terms> {
    Ok(sym_terms(&symmetrization::sigma_tilde_closed_sum(&spec.inner, &spec.word_sum(terms)?)))
}

/// `σ` of a linear combination of canonical monomials.
#[pyfunction]
fn sigma(spec: &PySpaceSpec, terms: Terms) -> PyResult<Terms> {
    Ok(word_terms(&symmetrization::sigma(&spec.inner, &spec.sym_sum(terms)?)))
}

/// Regular partitions of `{1..m}` as lists of blocks.
#[pyfunction]
fn regular_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    symmetrization::regular_partitions(m).map(|p| p.blocks().to_vec()).collect()
}

#[pyfunction]
fn i_rho(spec: &PySpaceSpec, rho: Vec<usize>) -> PyResult<Terms> {
    Ok(sym_terms(&central::i_rho(&spec.inner, &partition(rho)?)))
}

#[pyfunction]
fn j_rho(spec: &PySpaceSpec, rho: Vec<usize>) -> PyResult<Terms> {
    Ok(sym_terms(&central::j_rho(&spec.inner, &partition(rho)?).map_err(err)?))
}

/// `a_{ρ,N}` as `(coeff, one-line permutation)` pairs.
#[pyfunction]
#[pyo3(signature = (rho, big_n))]
fn a_rho(rho: Vec<usize>, big_n: usize) -> PyResult<Vec<(BigInt, Vec<usize>)>> {
    let a = central::a_rho(&partition(rho)?, big_n).map_err(err)?;
    Ok(a.iter().map(|(p, c)| (c.clone(), p.one_line().to_vec())).collect())
}

/// `q_{ρ,N}` as `(coeff, eps, a_bits, one-line permutation)` tuples in the
/// normal form `ε^eps a_1^{b_1} ... a_N^{b_N} τ`.
#[pyfunction]
#[pyo3(signature = (rho, big_n))]
fn q_rho(rho: Vec<usize>, big_n: usize) -> PyResult<SergeevTerms> {
    let q = central::q_rho(&partition(rho)?, big_n).map_err(err)?;
    Ok(q.iter().map(|(g, c)| (c.clone(), g.eps, g.a.clone(), g.tau.one_line().to_vec())).collect())
}

/// Exact check that `a_{ρ,N}` and `σ(I_ρ)` act identically on `(C^{m|n})^{⊗N}`.
#[pyfunction]
#[pyo3(signature = (spec, big_n, rho))]
fn verify_thm24(spec: &PySpaceSpec, big_n: usize, rho: Vec<usize>) -> PyResult<bool> {
    Ok(central::verify_thm24(&spec.inner, big_n, &partition(rho)?).map_err(err)?.pass)
}

/// Exact check that `q_{ρ,N}` and `σ(J_ρ)` act identically on `(C^{n|n})^{⊗N}`.
#[pyfunction]
#[pyo3(signature = (n, big_n, rho))]
fn verify_thm25(n: usize, big_n: usize, rho: Vec<usize>) -> PyResult<bool> {
    Ok(central::verify_thm25(n, big_n, &partition(rho)?).map_err(err)?.pass)
}

/// Double commutant check; returns a dict with `pass` and the span dimensions.
#[pyfunction]
#[pyo3(signature = (spec, big_n, which = "symmetric"))]
fn verify_duality<'py>(py: Python<'py>, spec: &PySpaceSpec, big_n: usize, which: &str) -> PyResult<Bound<'py, PyDict>> {
    let kind = match which {
        "symmetric" => DualityKind::Symmetric,
        "sergeev" => DualityKind::Sergeev,
        other => return Err(PyValueError::new_err(format!("unknown duality {other:?}"))),
    };
    let r = duality::verify_duality(&spec.inner, big_n, kind).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("pass", r.pass)?;
    d.set_item("group_span", r.dims.group_span)?;
    d.set_item("algebra_span", r.dims.algebra_span)?;
    d.set_item("commutant_of_group", r.dims.commutant_of_group)?;
    d.set_item("commutant_of_algebra", r.dims.commutant_of_algebra)?;
    Ok(d)
}

#[pymodule]
fn superschur_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpaceSpec>()?;
    m.add_function(wrap_pyfunction!(sigma_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_tilde_iter, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_tilde_sum, m)?)?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(regular_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(i_rho, m)?)?;
    m.add_function(wrap_pyfunction!(j_rho, m)?)?;
    m.add_function(wrap_pyfunction!(a_rho, m)?)?;
    m.add_function(wrap_pyfunction!(q_rho, m)?)?;
    m.add_function(wrap_pyfunction!(verify_thm24, m)?)?;
    m.add_function(wrap_pyfunction!(verify_thm25, m)?)?;
    m.add_function(wrap_pyfunction!(verify_duality, m)?)?;
    Ok(())
}
