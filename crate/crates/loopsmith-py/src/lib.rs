//! Python bindings for the loop engine: table loops, plane-matrix
//! constructions, structural analysis, isomorphism testing, and search.

use loopsmith::bruck;
use loopsmith::gf::{Mat2, PlaneType};
use loopsmith::inner;
use loopsmith::iso;
use loopsmith::loops::FiniteLoop;
use loopsmith::qa::QaParams;
use loopsmith::report::structure_report;
use loopsmith::search::{self, SearchConstraints};
use loopsmith::structure;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::time::Duration;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite loop backed by its Cayley table; element 0 is the identity.
#[pyclass(name = "Loop")]
#[derive(Clone)]
struct PyLoop {
    inner: FiniteLoop,
}

impl PyLoop {
    fn check_index(&self, x: usize) -> PyResult<()> {
        if x >= self.inner.order() {
            Err(PyValueError::new_err(format!(
                "element {x} out of range for order {}",
                self.inner.order()
            )))
        } else {
            Ok(())
        }
    }
}

#[pymethods]
impl PyLoop {
    /// Builds a loop from a full Cayley table (list of rows). The identity
    /// may sit anywhere; it is relabeled to index 0.
    #[staticmethod]
    fn from_table(rows: Vec<Vec<usize>>) -> PyResult<PyLoop> {
        let (inner, _) = FiniteLoop::from_table(&rows).map_err(value_err)?;
        Ok(PyLoop { inner })
    }

    /// Parses the canonical text format (order line, then rows).
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<PyLoop> {
        Ok(PyLoop { inner: FiniteLoop::parse_table(text).map_err(value_err)? })
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Loop(order={})", self.inner.order())
    }

    fn equals(&self, other: &PyLoop) -> bool {
        self.inner.rows() == other.inner.rows()
    }

    fn table(&self) -> Vec<Vec<usize>> {
        self.inner.rows()
    }

    fn to_text(&self) -> String {
        self.inner.to_table_string()
    }

    fn mul(&self, x: usize, y: usize) -> PyResult<usize> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.inner.mul(x, y))
    }

    /// The unique z with x * z = y.
    fn ldiv(&self, x: usize, y: usize) -> PyResult<usize> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.inner.ldiv(x, y))
    }

    /// The unique z with z * x = y.
    fn rdiv(&self, y: usize, x: usize) -> PyResult<usize> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.inner.rdiv(y, x))
    }

    fn inverse(&self, x: usize) -> PyResult<usize> {
        self.check_index(x)?;
        Ok(self.inner.inverse(x))
    }

    fn power(&self, x: usize, k: i64) -> PyResult<usize> {
        self.check_index(x)?;
        Ok(self.inner.power(x, k))
    }

    fn element_order(&self, x: usize) -> PyResult<usize> {
        self.check_index(x)?;
        self.inner.element_order(x).map_err(value_err)
    }

    fn exponent(&self) -> PyResult<usize> {
        self.inner.exponent().map_err(value_err)
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn is_associative(&self) -> bool {
        self.inner.is_associative()
    }

    fn is_power_associative(&self) -> bool {
        self.inner.is_power_associative()
    }

    fn is_automorphic(&self) -> bool {
        inner::is_automorphic(&self.inner)
    }

    fn left_nucleus(&self) -> Vec<usize> {
        structure::left_nucleus(&self.inner).iter().collect()
    }

    fn middle_nucleus(&self) -> Vec<usize> {
        structure::middle_nucleus(&self.inner).iter().collect()
    }

    fn right_nucleus(&self) -> Vec<usize> {
        structure::right_nucleus(&self.inner).iter().collect()
    }

    fn nucleus(&self) -> Vec<usize> {
        structure::nucleus(&self.inner).iter().collect()
    }

    fn commutant(&self) -> Vec<usize> {
        structure::commutant(&self.inner).iter().collect()
    }

    fn center(&self) -> PyResult<Vec<usize>> {
        Ok(structure::center(&self.inner).map_err(value_err)?.iter().collect())
    }

    fn upper_central_series(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(structure::upper_central_series(&self.inner)
            .map_err(value_err)?
            .iter()
            .map(|s| s.iter().collect())
            .collect())
    }

    /// Nilpotency class, or None when the series stalls below the loop.
    fn nilpotency_class(&self) -> PyResult<Option<usize>> {
        match structure::nilpotency_class(&self.inner).map_err(value_err)? {
            structure::NilpotencyClass::Class(k) => Ok(Some(k)),
            structure::NilpotencyClass::NotNilpotent => Ok(None),
        }
    }

    /// Order of the multiplication group, as a decimal string.
    fn mlt_order(&self) -> PyResult<String> {
        inner::multiplication_group_order(&self.inner)
            .map(|n| n.to_string())
            .map_err(value_err)
    }

    /// Order of the inner mapping group, as a decimal string.
    fn inn_order(&self) -> PyResult<String> {
        inner::inner_mapping_group_order(&self.inner)
            .map(|n| n.to_string())
            .map_err(value_err)
    }

    /// The associated Bol loop of a uniquely 2-divisible commutative loop
    /// (validated: Bol law, automorphic inverses, power coincidence).
    fn bruck_associate(&self) -> PyResult<PyLoop> {
        let sqrt = bruck::unique_2_divisible(&self.inner).map_err(value_err)?;
        let assoc = bruck::bruck_associate(&self.inner, &sqrt).map_err(value_err)?;
        Ok(PyLoop { inner: assoc })
    }

    /// Runs the commutative-automorphic identity battery; raises ValueError
    /// naming the first failing law.
    fn verify_base_identities(&self) -> PyResult<()> {
        bruck::verify_base_identities(&self.inner).map_err(value_err)
    }

    /// True when the central series of the loop and of its Bol associate
    /// agree term by term (with the related center characterizations).
    fn centers_theorem_holds(&self) -> PyResult<bool> {
        Ok(bruck::verify_centers_theorem(&self.inner).map_err(value_err)?.all_ok())
    }

    /// Full structure report as a JSON string (key-sorted).
    #[pyo3(signature = (mlt = false))]
    fn structure_report_json(&self, mlt: bool) -> PyResult<String> {
        let report = structure_report(&self.inner, mlt).map_err(value_err)?;
        serde_json::to_string_pretty(&report).map_err(value_err)
    }
}

/// One isomorphism class in a plane-loop classification.
#[pyclass(name = "QaClass")]
#[derive(Clone)]
struct PyQaClass {
    #[pyo3(get)]
    plane_type: u8,
    #[pyo3(get)]
    member_count: usize,
    #[pyo3(get)]
    representative_matrix: Vec<u32>,
    #[pyo3(get)]
    char_poly_orbit: Vec<(u32, u32)>,
    table: FiniteLoop,
}

#[pymethods]
impl PyQaClass {
    fn representative_loop(&self) -> PyLoop {
        PyLoop { inner: self.table.clone() }
    }

    fn __repr__(&self) -> String {
        format!(
            "QaClass(plane_type={}, member_count={})",
            self.plane_type, self.member_count
        )
    }
}

#[pyclass(name = "Classification")]
struct PyClassification {
    #[pyo3(get)]
    p: u32,
    #[pyo3(get)]
    confidence: String,
    #[pyo3(get)]
    anisotropic_matrix_count: usize,
    classes: Vec<PyQaClass>,
}

#[pymethods]
impl PyClassification {
    fn classes(&self) -> Vec<PyQaClass> {
        self.classes.clone()
    }

    fn __repr__(&self) -> String {
        format!("Classification(p={}, classes={})", self.p, self.classes.len())
    }
}

#[pyclass(name = "SearchResult")]
struct PySearchResult {
    #[pyo3(get)]
    exhausted: bool,
    #[pyo3(get)]
    nodes: u64,
    loops: Vec<FiniteLoop>,
}

#[pymethods]
impl PySearchResult {
    fn loops(&self) -> Vec<PyLoop> {
        self.loops.iter().map(|q| PyLoop { inner: q.clone() }).collect()
    }

    fn __repr__(&self) -> String {
        format!("SearchResult(found={}, exhausted={})", self.loops.len(), self.exhausted)
    }
}

fn matrix_from(p: u32, entries: Vec<i64>) -> PyResult<Mat2> {
    let arr: [i64; 4] = entries
        .try_into()
        .map_err(|v: Vec<i64>| PyValueError::new_err(format!("expected 4 entries, got {}", v.len())))?;
    Mat2::new(arr, p).map_err(value_err)
}

/// The order-p^3 loop of an anisotropic 2x2 matrix over GF(p).
#[pyfunction]
fn qa_loop(p: u32, matrix: Vec<i64>) -> PyResult<PyLoop> {
    let params = QaParams::new(matrix_from(p, matrix)?).map_err(value_err)?;
    Ok(PyLoop { inner: params.build_loop().map_err(value_err)? })
}

/// The cyclic group of order n as a table loop.
#[pyfunction]
fn cyclic_group(n: usize) -> PyResult<PyLoop> {
    if n == 0 {
        return Err(PyValueError::new_err("order must be positive"));
    }
    Ok(PyLoop { inner: loopsmith::loops::cyclic_group(n) })
}

/// Direct product of two loops.
#[pyfunction]
fn direct_product(a: &PyLoop, b: &PyLoop) -> PyResult<PyLoop> {
    Ok(PyLoop {
        inner: loopsmith::loops::direct_product(&a.inner, &b.inner).map_err(value_err)?,
    })
}

/// Exact isomorphism test; returns the witness as a list of images, or None.
#[pyfunction]
fn are_isomorphic(a: &PyLoop, b: &PyLoop) -> Option<Vec<usize>> {
    iso::are_isomorphic(&a.inner, &b.inner)
        .map(|w| (0..w.degree()).map(|i| w.apply(i)).collect())
}

/// Classifies all plane loops at a prime up to isomorphism.
#[pyfunction]
#[pyo3(signature = (p, ceiling = None))]
fn classify_qa(p: u32, ceiling: Option<u32>) -> PyResult<PyClassification> {
    let c = iso::classify_qa_with_ceiling(p, ceiling.unwrap_or(iso::DEFAULT_CLASSIFY_CEILING))
        .map_err(value_err)?;
    Ok(PyClassification {
        p: c.p,
        confidence: match c.confidence {
            iso::Confidence::Verified => "verified".into(),
            iso::Confidence::Evidence => "evidence".into(),
        },
        anisotropic_matrix_count: c.anisotropic_matrix_count,
        classes: c
            .classes
            .into_iter()
            .map(|cl| PyQaClass {
                plane_type: cl.plane_type.as_u8(),
                member_count: cl.member_count,
                representative_matrix: cl.representative.values().to_vec(),
                char_poly_orbit: cl.char_poly_orbit,
                table: cl.table,
            })
            .collect(),
    })
}

/// Searches for loops meeting the constraints; every result is re-validated
/// independently and results are pairwise non-isomorphic.
#[pyfunction]
#[pyo3(signature = (
    order,
    commutative = false,
    automorphic = false,
    nonassociative = false,
    power_associative = false,
    exponent = None,
    trivial_center = false,
    nontrivial_center = false,
    limit = 1,
    budget_seconds = 60,
    seed = 0
))]
#[allow(clippy::too_many_arguments)]
fn search_loops(
    order: usize,
    commutative: bool,
    automorphic: bool,
    nonassociative: bool,
    power_associative: bool,
    exponent: Option<usize>,
    trivial_center: bool,
    nontrivial_center: bool,
    limit: usize,
    budget_seconds: u64,
    seed: u64,
) -> PyResult<PySearchResult> {
    let mut c = SearchConstraints::for_order(order);
    c.commutative = commutative;
    c.automorphic = automorphic;
    c.nonassociative = nonassociative;
    c.power_associative = power_associative;
    c.exponent = exponent;
    c.trivial_center = trivial_center;
    c.nontrivial_center = nontrivial_center;
    c.budget = Duration::from_secs(budget_seconds);
    c.seed = seed;
    let out = search::find_loops(&c, limit).map_err(value_err)?;
    Ok(PySearchResult { exhausted: out.exhausted, nodes: out.nodes, loops: out.loops })
}

/// An anisotropic matrix of the given type (1, 2, or 3), or None when no
/// such matrix exists at that prime.
#[pyfunction]
fn type_witness(p: u32, plane_type: u8) -> PyResult<Option<Vec<u32>>> {
    let t = PlaneType::from_u8(plane_type)
        .ok_or_else(|| PyValueError::new_err(format!("type must be 1..3, got {plane_type}")))?;
    Ok(loopsmith::gf::type_witness(p, t)
        .map_err(value_err)?
        .map(|m| m.values().to_vec()))
}

/// Counts |(R+a) intersect R| and |(R+a) intersect N| by direct enumeration.
#[pyfunction]
fn perron_counts(p: u32, a: u32) -> PyResult<(usize, usize)> {
    loopsmith::gf::perron_counts(p, a).map_err(value_err)
}

/// The proven closed form for the same counts.
#[pyfunction]
fn perron_closed_form(p: u32, a: u32) -> PyResult<(usize, usize)> {
    loopsmith::gf::perron_closed_form(p, a).map_err(value_err)
}

#[pymodule]
fn loopsmith_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLoop>()?;
    m.add_class::<PyQaClass>()?;
    m.add_class::<PyClassification>()?;
    m.add_class::<PySearchResult>()?;
    m.add_function(wrap_pyfunction!(qa_loop, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_group, m)?)?;
    m.add_function(wrap_pyfunction!(direct_product, m)?)?;
    m.add_function(wrap_pyfunction!(are_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(classify_qa, m)?)?;
    m.add_function(wrap_pyfunction!(search_loops, m)?)?;
    m.add_function(wrap_pyfunction!(type_witness, m)?)?;
    m.add_function(wrap_pyfunction!(perron_counts, m)?)?;
    m.add_function(wrap_pyfunction!(perron_closed_form, m)?)?;
    Ok(())
}
