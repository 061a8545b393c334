//! Python bindings. Documents cross the boundary as JSON text.

use noble_core::engine::{
    build_representation, coset_family_in, magnitude_family_in, verify_representation, wagner_preston,
};
use noble_core::filters::{enumerate_filters, magnitude_classes, MagnitudeMode};
use noble_core::io::{self, CertificateDocument, OracleDocument, RepresentationDocument};
use noble_core::oracle;
use noble_core::{EngineConfig, Error, Filter};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(noble, NobleError, PyValueError);

fn err(e: impl Into<Error>) -> PyErr {
    let e = e.into();
    NobleError::new_err((e.to_string(), e.exit_code()))
}

fn mode(s1: bool) -> MagnitudeMode {
    if s1 {
        MagnitudeMode::WithIdentity
    } else {
        MagnitudeMode::Semigroup
    }
}

/// A validated finite inverse semigroup.
#[pyclass(name = "SemigroupTable", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySemigroupTable(noble_core::SemigroupTable);

#[pymethods]
impl PySemigroupTable {
    #[new]
    fn new(rows: Vec<Vec<usize>>) -> PyResult<Self> {
        noble_core::validate_inverse_semigroup(&rows).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_cayley(text: &str) -> PyResult<Self> {
        io::parse_cayley(text).map(Self).map_err(err)
    }

    /// The closure of a generator file, numbered in sorted order.
    #[staticmethod]
    fn from_generators(text: &str) -> PyResult<Self> {
        let family = io::parse_generators(text).map_err(err)?;
        Ok(Self(family.abstract_table().map_err(err)?.table))
    }

    fn to_cayley(&self) -> String {
        io::emit_cayley(&self.0)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.0.name().map(str::to_string)
    }

    #[getter]
    fn zero(&self) -> Option<usize> {
        self.0.zero()
    }

    #[getter]
    fn identity(&self) -> Option<usize> {
        self.0.identity()
    }

    #[getter]
    fn idempotents(&self) -> Vec<usize> {
        self.0.idempotents().to_vec()
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.0.rows()
    }

    fn product(&self, s: usize, t: usize) -> PyResult<usize> {
        self.check(s)?;
        self.check(t)?;
        Ok(self.0.product(s, t))
    }

    fn inverse(&self, s: usize) -> PyResult<usize> {
        self.check(s)?;
        Ok(self.0.inverse(s))
    }

    fn natural_leq(&self, s: usize, t: usize) -> PyResult<bool> {
        self.check(s)?;
        self.check(t)?;
        Ok(self.0.natural_leq(s, t))
    }

    /// `{"L": classes, "R": classes, "D": classes}`.
    fn green(&self) -> std::collections::BTreeMap<&'static str, Vec<Vec<usize>>> {
        let g = self.0.green_relations();
        [("L", g.l.classes), ("R", g.r.classes), ("D", g.d.classes)].into_iter().collect()
    }

    fn filters(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(enumerate_filters(&self.0).map_err(err)?.iter().map(Filter::to_vec).collect())
    }

    #[pyo3(signature = (s1 = false))]
    fn magnitude_classes(&self, s1: bool) -> PyResult<Vec<Vec<usize>>> {
        let filters = enumerate_filters(&self.0).map_err(err)?;
        Ok(magnitude_classes(&self.0, &filters, mode(s1)))
    }

    /// The certificate as JSON.
    #[pyo3(signature = (s1 = false))]
    fn nobility(&self, s1: bool) -> PyResult<String> {
        let config = EngineConfig { magnitude_mode: mode(s1), ..EngineConfig::default() };
        let cert = noble_core::decide_nobility(&self.0, &config).map_err(err)?;
        let digest = io::input_digest(io::emit_cayley(&self.0).as_bytes());
        io::to_json(&CertificateDocument::new(&cert, digest)).map_err(err)
    }

    /// The verified representation on the family anchored at `h`, as JSON.
    #[pyo3(signature = (h, family = "orbit", s1 = false))]
    fn represent(&self, h: Vec<usize>, family: &str, s1: bool) -> PyResult<String> {
        for &x in &h {
            self.check(x)?;
        }
        let filter = Filter::from_elements(&self.0, h.iter().copied())
            .ok_or_else(|| err(noble_core::error::EngineError::NotAFilter(h.clone())))?;
        let fam = match family {
            "orbit" => coset_family_in(&self.0, &filter, mode(s1)),
            "magnitude" => magnitude_family_in(&self.0, &filter, mode(s1)),
            other => return Err(PyValueError::new_err(format!("family must be orbit or magnitude, not {other:?}"))),
        }
        .map_err(err)?;
        let rep = verify_representation(&self.0, build_representation(&self.0, fam).map_err(err)?);
        io::to_json(&RepresentationDocument::from_representation(&rep)).map_err(err)
    }

    /// Bounded exhaustive search, as JSON.
    #[pyo3(signature = (max_degree = 4))]
    fn oracle(&self, max_degree: usize) -> PyResult<String> {
        let witness = oracle::brute_force_noble(&self.0, max_degree).map_err(err)?;
        io::to_json(&OracleDocument::new(max_degree, witness.as_ref())).map_err(err)
    }

    /// The images of the Wagner-Preston embedding, by element.
    fn wagner_preston(&self) -> Vec<PyPartialBijection> {
        wagner_preston(&self.0).1.into_iter().map(PyPartialBijection).collect()
    }

    /// An isomorphism onto `other` as a list of images, or None.
    fn isomorphism(&self, other: &PySemigroupTable) -> Option<Vec<usize>> {
        oracle::are_isomorphic(&self.0, &other.0)
    }

    fn __len__(&self) -> usize {
        self.0.order()
    }

    fn __repr__(&self) -> String {
        format!("SemigroupTable(order={}, name={:?})", self.0.order(), self.0.name())
    }

    fn __eq__(&self, other: &PySemigroupTable) -> bool {
        self.0.rows() == other.0.rows()
    }
}

impl PySemigroupTable {
    fn check(&self, s: usize) -> PyResult<()> {
        if s < self.0.order() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("{s} is not an element id below {}", self.0.order())))
        }
    }
}

/// A one-to-one partial map of `0..degree`; `None` marks an undefined point.
#[pyclass(name = "PartialBijection", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartialBijection(noble_core::PartialBijection);

#[pymethods]
impl PyPartialBijection {
    #[new]
    fn new(entries: Vec<Option<usize>>) -> PyResult<Self> {
        noble_core::PartialBijection::new(entries).map(Self).map_err(err)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn entries(&self) -> Vec<Option<usize>> {
        self.0.entries()
    }

    fn domain(&self) -> Vec<usize> {
        self.0.domain()
    }

    fn range(&self) -> Vec<usize> {
        self.0.range()
    }

    fn is_idempotent(&self) -> bool {
        self.0.is_idempotent()
    }

    /// Left to right: `self` first.
    fn then(&self, other: &PyPartialBijection) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(err)
    }

    fn invert(&self) -> Self {
        Self(self.0.invert())
    }

    fn __repr__(&self) -> String {
        format!("PartialBijection({:?})", self.0.entries())
    }
}

/// Pairwise non-isomorphic test semigroups of order at most `max_order`.
#[pyfunction]
fn generate_corpus(max_order: usize) -> PyResult<Vec<PySemigroupTable>> {
    Ok(oracle::generate_corpus(max_order).map_err(err)?.into_iter().map(PySemigroupTable).collect())
}

/// The semigroup generated by partial maps of one point set.
#[pyfunction]
fn generate(generators: Vec<PyPartialBijection>) -> PyResult<PySemigroupTable> {
    let maps: Vec<_> = generators.into_iter().map(|g| g.0).collect();
    let family = noble_core::ConcreteFamily::generate(&maps).map_err(err)?;
    Ok(PySemigroupTable(family.abstract_table().map_err(err)?.table))
}

#[pymodule]
fn noble(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NobleError", m.py().get_type::<NobleError>())?;
    m.add("__version__", io::TOOL_VERSION)?;
    m.add_class::<PySemigroupTable>()?;
    m.add_class::<PyPartialBijection>()?;
    m.add_function(wrap_pyfunction!(generate_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}
