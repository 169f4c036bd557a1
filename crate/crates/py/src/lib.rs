//! Python bindings: the exact-arithmetic certificate toolkit as an
//! extension module. Scalar results come back as Python ints, exact
//! rationals as strings, and the structured reports as JSON strings so
//! callers can `json.loads` them.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use kummer_core::arith::Level;
use kummer_core::autgroup::{AutElement as CoreAutElement, Sign, TorsionElement};
use kummer_core::exterior::{
    build_tau_tilde, Form as CoreForm, Monomial, Permutation as CorePermutation,
};
use kummer_core::lefschetz::{
    certify_faithful_on_kernel, fixed_locus as core_fixed_locus,
    lefschetz_translation as core_lefschetz_translation,
};
use kummer_core::symplectic::{
    check_fixed_locus_symplectic, parse_matrix_text, SymplecticSpace,
};

fn value_err(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn level(n: u64) -> PyResult<Level> {
    Level::new(n).map_err(value_err)
}

fn torsion(coords: (u64, u64, u64, u64), n: u64) -> PyResult<TorsionElement> {
    TorsionElement::new([coords.0, coords.1, coords.2, coords.3], n).map_err(value_err)
}

/// All positive divisors of n, ascending.
#[pyfunction]
fn divisors(n: u64) -> PyResult<Vec<u64>> {
    kummer_core::arith::divisors(n).map_err(value_err)
}

/// Sum of the positive divisors of n.
#[pyfunction]
fn sigma(n: u64) -> PyResult<u64> {
    kummer_core::arith::sigma(n).map_err(value_err)
}

/// Euler number n^3 * sigma(n) of the level-n manifold.
#[pyfunction]
fn euler_kummer(n: u64) -> PyResult<u128> {
    Ok(kummer_core::lefschetz::euler_kummer(level(n)?))
}

/// Lefschetz number of a nontrivial torsion translation.
#[pyfunction]
fn lefschetz_translation(coords: (u64, u64, u64, u64), n: u64) -> PyResult<u128> {
    core_lefschetz_translation(&torsion(coords, n)?).map_err(value_err)
}

/// Fixed-locus combinatorics as (order, codegree, component_count,
/// component_level).
#[pyfunction]
fn fixed_locus(coords: (u64, u64, u64, u64), n: u64) -> PyResult<(u64, u64, u128, u64)> {
    let locus = core_fixed_locus(&torsion(coords, n)?).map_err(value_err)?;
    Ok((
        locus.order,
        locus.codegree,
        locus.component_count,
        locus.component_level,
    ))
}

/// Full faithfulness certificate over the 2n^4 kernel elements, as JSON.
#[pyfunction]
fn certify_json(n: u64) -> PyResult<String> {
    let report = certify_faithful_on_kernel(level(n)?).map_err(value_err)?;
    serde_json::to_string(&report).map_err(value_err)
}

/// Fixed-subspace report for a symplectic matrix in the text format
/// (`rows cols` then entries, optional second block for a custom form).
#[pyfunction]
#[pyo3(signature = (matrix_text, max_order=24))]
fn symplectic_report_json(matrix_text: &str, max_order: u32) -> PyResult<String> {
    let (matrix, custom_form) = parse_matrix_text(matrix_text).map_err(value_err)?;
    let space = match custom_form {
        Some(form) => SymplecticSpace::with_form(form).map_err(value_err)?,
        None => SymplecticSpace::standard(matrix.rows()).map_err(value_err)?,
    };
    let report = check_fixed_locus_symplectic(&matrix, &space, max_order).map_err(value_err)?;
    serde_json::to_string(&report).map_err(value_err)
}

/// One element of the kernel group: a torsion translation, optionally
/// composed with the inversion involution.
#[pyclass(name = "AutElement", skip_from_py_object)]
#[derive(Clone)]
struct PyAutElement {
    inner: CoreAutElement,
}

#[pymethods]
impl PyAutElement {
    #[new]
    #[pyo3(signature = (coords, n, iota=false))]
    fn new(coords: (u64, u64, u64, u64), n: u64, iota: bool) -> PyResult<Self> {
        let sign = if iota { Sign::Minus } else { Sign::Plus };
        Ok(PyAutElement {
            inner: CoreAutElement::new(torsion(coords, n)?, sign),
        })
    }

    /// Parse the CLI syntax `a1,a2,a3,a4[,iota]`.
    #[staticmethod]
    fn parse(text: &str, n: u64) -> PyResult<Self> {
        Ok(PyAutElement {
            inner: CoreAutElement::parse(text, n).map_err(value_err)?,
        })
    }

    fn compose(&self, other: &PyAutElement) -> PyResult<Self> {
        Ok(PyAutElement {
            inner: self.inner.compose(&other.inner).map_err(value_err)?,
        })
    }

    fn inverse(&self) -> Self {
        PyAutElement {
            inner: self.inner.inverse(),
        }
    }

    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn is_pure_translation(&self) -> bool {
        self.inner.is_pure_translation()
    }

    fn modulus(&self) -> u64 {
        self.inner.modulus()
    }

    fn coords(&self) -> (u64, u64, u64, u64) {
        let [a1, a2, a3, a4] = self.inner.translation().coords();
        (a1, a2, a3, a4)
    }

    fn __eq__(&self, other: &PyAutElement) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AutElement('{}', n={})", self.inner, self.inner.modulus())
    }
}

/// A sparse exact-rational form on the coordinate 1-forms at a fixed level.
#[pyclass(name = "Form", skip_from_py_object)]
#[derive(Clone)]
struct PyForm {
    inner: CoreForm,
}

#[pymethods]
impl PyForm {
    /// The invariant witness (2,1)-form at level n >= 3, reduced.
    #[staticmethod]
    fn tau_tilde(n: u64) -> PyResult<Self> {
        Ok(PyForm {
            inner: build_tau_tilde(level(n)?).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn zero(n: u64) -> PyResult<Self> {
        Ok(PyForm {
            inner: CoreForm::zero(level(n)?),
        })
    }

    /// Parse the rendered syntax, e.g. `dz1_1^dz2_2 - 3/2 dzb2_1`.
    #[staticmethod]
    fn parse(text: &str, n: u64) -> PyResult<Self> {
        Ok(PyForm {
            inner: CoreForm::parse(text, level(n)?).map_err(value_err)?,
        })
    }

    fn wedge(&self, other: &PyForm) -> PyResult<Self> {
        Ok(PyForm {
            inner: self.inner.wedge(&other.inner).map_err(value_err)?,
        })
    }

    fn normalize(&self) -> Self {
        PyForm {
            inner: self.inner.normalize(),
        }
    }

    fn pullback(&self, element: &PyAutElement) -> PyResult<Self> {
        Ok(PyForm {
            inner: self.inner.pullback(&element.inner).map_err(value_err)?,
        })
    }

    /// Relabel indices by the transposition (i j) and re-normalize.
    fn swap_indices(&self, i: u64, j: u64) -> PyResult<Self> {
        let swap =
            CorePermutation::transposition(self.inner.level(), i, j).map_err(value_err)?;
        Ok(PyForm {
            inner: self.inner.permute(&swap).map_err(value_err)?,
        })
    }

    /// Exact coefficient of a monomial like `dz1_1^dz2_2^dzb2_2`, as a
    /// rational string.
    fn coefficient(&self, monomial: &str) -> PyResult<String> {
        let monomial: Monomial = monomial.parse().map_err(value_err)?;
        Ok(self.inner.coefficient(&monomial).to_string())
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_reduced(&self) -> bool {
        self.inner.is_reduced()
    }

    fn term_count(&self) -> usize {
        self.inner.term_count()
    }

    fn level(&self) -> u64 {
        self.inner.level().get()
    }

    fn __eq__(&self, other: &PyForm) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &PyForm) -> PyResult<Self> {
        if self.inner.level() != other.inner.level() {
            return Err(PyValueError::new_err("form levels must agree"));
        }
        Ok(PyForm {
            inner: &self.inner + &other.inner,
        })
    }

    fn __sub__(&self, other: &PyForm) -> PyResult<Self> {
        if self.inner.level() != other.inner.level() {
            return Err(PyValueError::new_err("form levels must agree"));
        }
        Ok(PyForm {
            inner: &self.inner - &other.inner,
        })
    }

    fn __neg__(&self) -> Self {
        PyForm {
            inner: -&self.inner,
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Form('{}', n={})",
            self.inner,
            self.inner.level().get()
        )
    }
}

#[pymodule]
fn kummer_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(divisors, m)?)?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(euler_kummer, m)?)?;
    m.add_function(wrap_pyfunction!(lefschetz_translation, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_locus, m)?)?;
    m.add_function(wrap_pyfunction!(certify_json, m)?)?;
    m.add_function(wrap_pyfunction!(symplectic_report_json, m)?)?;
    m.add_class::<PyAutElement>()?;
    m.add_class::<PyForm>()?;
    Ok(())
}
