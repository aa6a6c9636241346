//! Python bindings for the `secant` crate.
//!
//! Rationals cross the boundary as `fractions.Fraction` (outbound) and as
//! int / str / Fraction (inbound). Structured reports come back as dicts.

use pyo3::exceptions::{PyMemoryError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;
use secant::chevalley::{grade_by_fundamental, orbit_dim as lie_orbit_dim, parse_element};
use secant::classifier;
use secant::jordan::{AlbertAlgebra, AlbertElement as RawAlbert};
use secant::oracle;
use secant::ranks;
use secant::rootsys::{self, GroupDescriptor as RawDescriptor};
use secant::scalar::{q_from_str, q_to_string, Q};
use serde::Serialize;

fn err(e: secant::Error) -> PyErr {
    match e {
        secant::Error::Resource(m) => PyMemoryError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_py_json(py: Python<'_>, v: &impl Serialize) -> PyResult<PyObject> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import_bound("json")?.call_method1("loads", (s,))?.unbind())
}

fn q_in(obj: &Bound<'_, PyAny>) -> PyResult<Q> {
    let s = obj.str()?.to_string();
    q_from_str(s.trim()).map_err(PyValueError::new_err)
}

fn q_out(py: Python<'_>, x: &Q) -> PyResult<PyObject> {
    Ok(py.import_bound("fractions")?.getattr("Fraction")?.call1((q_to_string(x),))?.unbind())
}

fn qs_in(v: &Bound<'_, PyAny>) -> PyResult<Vec<Q>> {
    v.iter()?.map(|o| q_in(&o?)).collect()
}

fn qs_out(py: Python<'_>, v: &[Q]) -> PyResult<PyObject> {
    let items: Vec<PyObject> = v.iter().map(|x| q_out(py, x)).collect::<PyResult<_>>()?;
    Ok(PyList::new_bound(py, items).into_any().unbind())
}

fn matrix_in(m: &Bound<'_, PyAny>) -> PyResult<Vec<Vec<Q>>> {
    m.iter()?.map(|row| qs_in(&row?)).collect()
}

/// A module of a semisimple group, e.g. `GroupDescriptor("A2xC3[1,0|0,1,0]")`.
#[pyclass(frozen)]
#[derive(Clone)]
struct GroupDescriptor {
    inner: RawDescriptor,
}

#[pymethods]
impl GroupDescriptor {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(GroupDescriptor { inner: rootsys::canonicalize(&RawDescriptor::parse(text).map_err(err)?) })
    }

    /// Sum of the marks over all factors.
    fn height(&self) -> i64 {
        self.inner.height()
    }

    fn classify(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_py_json(py, &classifier::classify(&self.inner).map_err(err)?)
    }

    fn is_tame(&self) -> PyResult<bool> {
        Ok(classifier::classify(&self.inner).map_err(err)?.status == classifier::Status::Tame)
    }

    /// Shortest chopping chain to a wild base case, or None.
    fn wild_certificate(&self, py: Python<'_>) -> PyResult<PyObject> {
        match secant::chopping::find_wild_certificate(&self.inner) {
            Some(c) => to_py_json(py, &c),
            None => Ok(py.None()),
        }
    }

    fn max_rank(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_py_json(py, &classifier::max_typical_rank(&self.inner).map_err(err)?)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GroupDescriptor('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }
}

/// Exact tensor of one of the supported shapes.
#[pyclass]
struct Tensor {
    inner: ranks::Tensor,
}

#[pymethods]
impl Tensor {
    #[new]
    #[pyo3(signature = (shape, coords, dims = vec![]))]
    fn new(shape: &str, coords: &Bound<'_, PyAny>, dims: Vec<usize>) -> PyResult<Self> {
        let shape = ranks::Shape::from_parts(shape, &dims).map_err(err)?;
        Ok(Tensor { inner: ranks::Tensor::new(shape, qs_in(coords)?).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Tensor { inner: ranks::Tensor::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn shape(&self) -> String {
        self.inner.shape.to_string()
    }

    #[getter]
    fn coords(&self, py: Python<'_>) -> PyResult<PyObject> {
        qs_out(py, &self.inner.coords)
    }

    fn rank(&self) -> PyResult<usize> {
        ranks::tensor_rank(&self.inner).map_err(err)
    }
}

/// Element of the 27-dimensional Albert algebra over the split octonions.
#[pyclass]
struct AlbertElement {
    inner: RawAlbert<Q>,
}

fn albert() -> &'static AlbertAlgebra {
    static ALG: std::sync::OnceLock<AlbertAlgebra> = std::sync::OnceLock::new();
    ALG.get_or_init(AlbertAlgebra::split)
}

#[pymethods]
impl AlbertElement {
    /// 27 coordinates: three diagonal entries, then the octonions in positions (2,3), (3,1), (1,2).
    #[new]
    fn new(coords: &Bound<'_, PyAny>) -> PyResult<Self> {
        let v = qs_in(coords)?;
        if v.len() != 27 {
            return Err(PyValueError::new_err(format!("expected 27 coordinates, got {}", v.len())));
        }
        Ok(AlbertElement { inner: RawAlbert::from_slice(&v) })
    }

    fn coords(&self, py: Python<'_>) -> PyResult<PyObject> {
        qs_out(py, &self.inner.to_vec())
    }

    fn det(&self, py: Python<'_>) -> PyResult<PyObject> {
        q_out(py, &albert().det3(&self.inner))
    }

    fn sharp(&self) -> Self {
        AlbertElement { inner: albert().sharp(&self.inner) }
    }

    fn rank(&self) -> u8 {
        albert().jordan_rank(&self.inner)
    }

    /// For a rank-2 element: (d, a, b) with x = (a + √d b) + (a − √d b), both parts of rank 1.
    fn rank2_split(&self, py: Python<'_>) -> PyResult<(PyObject, Self, Self)> {
        let s = albert().rank2_split(&self.inner).map_err(err)?;
        Ok((q_out(py, &s.d)?, AlbertElement { inner: s.a }, AlbertElement { inner: s.b }))
    }

    fn __add__(&self, o: &Self) -> Self {
        AlbertElement { inner: self.inner.add(&o.inner) }
    }

    fn __sub__(&self, o: &Self) -> Self {
        AlbertElement { inner: self.inner.sub(&o.inner) }
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.inner == o.inner
    }
}

/// Exhaustive rank table of a cone over F_p.
#[pyclass]
struct RankTable {
    inner: oracle::RankTable,
}

#[pymethods]
impl RankTable {
    #[new]
    fn new(py: Python<'_>, family: &str, prime: u64) -> PyResult<Self> {
        let fam = oracle::Family::parse(family).map_err(err)?;
        let inner = py.allow_threads(|| oracle::rank_table(fam, prime)).map_err(err)?;
        Ok(RankTable { inner })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(RankTable { inner: oracle::RankTable::import(std::path::Path::new(path)).map_err(err)? })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        self.inner.export(std::path::Path::new(path)).map_err(err)
    }

    /// Rank of a vector given by residues 0..p−1; 0 for the zero vector.
    fn rank_of(&self, digits: Vec<u8>) -> PyResult<u8> {
        if digits.len() != self.inner.dim || digits.iter().any(|&d| d as u64 >= self.inner.prime) {
            return Err(PyValueError::new_err("vector does not match the table's dimension and prime"));
        }
        Ok(self.inner.rank_of(&digits))
    }

    fn max_rank(&self) -> u8 {
        self.inner.max_rank()
    }

    /// Projective points per rank.
    fn histogram(&self) -> std::collections::BTreeMap<u8, u64> {
        self.inner.histogram()
    }

    fn check(&self, py: Python<'_>) -> PyResult<PyObject> {
        let fam = oracle::Family::parse(&self.inner.family).map_err(err)?;
        to_py_json(py, &oracle::check_closed_form(&self.inner, fam).map_err(err)?)
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.inner.prime
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }
}

#[pyfunction]
fn classify(py: Python<'_>, descriptor: &str) -> PyResult<PyObject> {
    GroupDescriptor::new(descriptor)?.classify(py)
}

/// Tame descriptors for simple types up to `max_rank` and two-factor products.
#[pyfunction]
fn tame_table(py: Python<'_>, max_rank: usize) -> PyResult<PyObject> {
    let rows = py.allow_threads(|| secant::cli::table_entries(max_rank));
    to_py_json(py, &rows)
}

#[pyfunction]
fn wedge3_rank(coords: &Bound<'_, PyAny>) -> PyResult<usize> {
    ranks::wedge3_c6_rank(&qs_in(coords)?).map_err(err)
}

/// ψ from (coefficient, i, j, k) terms with 1-based indices.
#[pyfunction]
fn wedge3_from_terms(py: Python<'_>, terms: Vec<(i64, usize, usize, usize)>) -> PyResult<PyObject> {
    if terms.iter().any(|&(_, i, j, k)| [i, j, k].iter().any(|&x| x == 0 || x > 6) || i == j || j == k || i == k) {
        return Err(PyValueError::new_err("indices must be distinct and in 1..=6"));
    }
    qs_out(py, &ranks::wedge3_from_terms::<Q>(&terms))
}

/// Isotropic pairs (x, y) with Σ x∧y equal to the given 2n×2n coform.
#[pyfunction]
fn coform_decompose(py: Python<'_>, matrix: &Bound<'_, PyAny>) -> PyResult<Vec<(PyObject, PyObject)>> {
    let w = matrix_in(matrix)?;
    let pairs = ranks::coform_rank_decompose(&w).map_err(err)?;
    pairs.iter().map(|(x, y)| Ok((qs_out(py, x)?, qs_out(py, y)?))).collect()
}

#[pyfunction]
fn is_pure_spinor(coords: &Bound<'_, PyAny>) -> PyResult<bool> {
    let s = qs_in(coords)?;
    if s.len() != 16 {
        return Err(PyValueError::new_err("a half-spinor has 16 coordinates"));
    }
    Ok(ranks::is_pure(&s))
}

/// Dimension of the adjoint orbit of an element such as "e(1,0,0,0)+h2".
#[pyfunction]
fn orbit_dim(py: Python<'_>, ty: &str, element: &str) -> PyResult<usize> {
    let t = rootsys::parse_type(ty).map_err(err)?;
    let alg = secant::cache::chevalley_cached(t).map_err(err)?;
    let x = parse_element(&alg, element).map_err(err)?;
    Ok(py.allow_threads(|| lie_orbit_dim(&alg, &x)))
}

/// [(degree, dimension)] of the grading by the i-th fundamental coweight.
#[pyfunction]
fn grading(py: Python<'_>, ty: &str, i: usize) -> PyResult<Vec<(PyObject, usize)>> {
    let t = rootsys::parse_type(ty).map_err(err)?;
    let alg = secant::cache::chevalley_cached(t).map_err(err)?;
    let g = grade_by_fundamental(&alg, i).map_err(err)?;
    g.dims().iter().map(|(k, d)| Ok((q_out(py, k)?, *d))).collect()
}

#[pymodule]
pub fn secant_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<GroupDescriptor>()?;
    m.add_class::<Tensor>()?;
    m.add_class::<AlbertElement>()?;
    m.add_class::<RankTable>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(tame_table, m)?)?;
    m.add_function(wrap_pyfunction!(wedge3_rank, m)?)?;
    m.add_function(wrap_pyfunction!(wedge3_from_terms, m)?)?;
    m.add_function(wrap_pyfunction!(coform_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(is_pure_spinor, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_dim, m)?)?;
    m.add_function(wrap_pyfunction!(grading, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_round_trip() {
        pyo3::prepare_freethreaded_python();
        Python::with_gil(|py| {
            let x = q_from_str("-3/4").unwrap();
            let f = q_out(py, &x).unwrap();
            assert_eq!(f.bind(py).str().unwrap().to_string(), "-3/4");
            assert_eq!(q_in(f.bind(py)).unwrap(), x);
            assert!(q_in(pyo3::types::PyString::new_bound(py, "x").as_any()).is_err());
            let e = err(secant::Error::Resource("cap".into()));
            assert!(e.is_instance_of::<PyMemoryError>(py));
        });
    }
}
