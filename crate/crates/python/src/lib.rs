//! Python bindings. Rationals come back as `fractions.Fraction`, counts as `int`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ramified::category::FiniteCategory;
use ramified::constructions::{self, builtin_example, Builtin, RandomCoveringParams};
use ramified::covering::{self, CategoryFunctor, RamifiedCovering};
use ramified::invariants::{self, rational_string, EulerCharacteristic};
use ramified::nerve::{self, Chain};

type Fractions<'py> = Vec<Bound<'py, PyAny>>;

fn err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, text: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((text,))
}

fn integer<'py>(py: Python<'py>, digits: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((digits,))
}

fn fractions<'py>(py: Python<'py>, values: impl IntoIterator<Item = String>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    values.into_iter().map(|q| fraction(py, q)).collect()
}

/// A validated finite category.
#[pyclass(name = "Category", module = "ramified_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyCategory {
    inner: FiniteCategory,
}

#[pymethods]
impl PyCategory {
    /// Parses the JSON category format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        FiniteCategory::from_json(text)
            .map(|inner| PyCategory { inner })
            .map_err(err)
    }

    /// Loads a category file, or `builtin:<name>`.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        ramified::io::load_category(path)
            .map(|inner| PyCategory { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        match builtin_example(name).map_err(err)? {
            Builtin::Category(inner) => Ok(PyCategory { inner }),
            Builtin::Functor(_) => Err(err(format!("`{name}` is a functor"))),
        }
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn objects(&self) -> Vec<String> {
        self.inner.objects().iter().map(ToString::to_string).collect()
    }

    /// Ids of all morphisms, identities first.
    fn morphisms(&self) -> Vec<String> {
        self.inner.morphisms().iter().map(|m| m.id.to_string()).collect()
    }

    fn num_objects(&self) -> usize {
        self.inner.num_objects()
    }

    fn num_morphisms(&self) -> usize {
        self.inner.num_morphisms()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn preinitial_objects(&self) -> Vec<String> {
        self.inner
            .preinitial_objects()
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn adjacency_matrix(&self) -> Vec<Vec<u64>> {
        self.inner.adjacency_matrix()
    }

    /// Composite `second ∘ first`, or `None` when not composable.
    fn compose(&self, first: &str, second: &str) -> PyResult<Option<String>> {
        let f = self.inner.require_morphism(first).map_err(err)?;
        let g = self.inner.require_morphism(second).map_err(err)?;
        Ok(self.inner.compose(f, g).map(|h| self.inner.morphism(h).id.to_string()))
    }

    #[pyo3(signature = (n, nondegenerate = false, base = None))]
    fn chain_count<'py>(
        &self,
        py: Python<'py>,
        n: usize,
        nondegenerate: bool,
        base: Option<&str>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let count = match base {
            Some(b) => nerve::count_chains_based(&self.inner, n, nondegenerate, b).map_err(err)?,
            None => nerve::count_chains(&self.inner, n, nondegenerate),
        };
        integer(py, count.to_string())
    }

    /// Chains as lists of morphism ids; a chain of length zero is `[object]`.
    #[pyo3(signature = (n, nondegenerate = false, base = None))]
    fn chains(&self, n: usize, nondegenerate: bool, base: Option<&str>) -> PyResult<Vec<Vec<String>>> {
        let chains = nerve::enumerate_chains(&self.inner, n, nondegenerate, base).map_err(err)?;
        Ok(chains.iter().map(|c| c.ids(&self.inner)).collect())
    }

    /// The series Euler characteristic, or `None` where it is undefined.
    fn euler_characteristic<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        match invariants::series_euler_characteristic(&self.inner) {
            EulerCharacteristic::Defined(q) => fraction(py, rational_string(&q)).map(Some),
            EulerCharacteristic::Undefined => Ok(None),
        }
    }

    /// Reduced `(numerator, denominator)` coefficient lists in `t`.
    fn euler_rational_function<'py>(&self, py: Python<'py>) -> PyResult<(Fractions<'py>, Fractions<'py>)> {
        let r = invariants::euler_rational_function(&self.inner);
        Ok((
            fractions(py, r.numerator().coeffs().iter().map(rational_string))?,
            fractions(py, r.denominator().coeffs().iter().map(rational_string))?,
        ))
    }

    #[pyo3(signature = (order = invariants::DEFAULT_ORDER))]
    fn zeta<'py>(&self, py: Python<'py>, order: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(
            py,
            invariants::zeta_truncated(&self.inner, order)
                .coeffs()
                .iter()
                .map(rational_string),
        )
    }

    fn __eq__(&self, other: &PyCategory) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Category({} objects, {} morphisms)",
            self.inner.num_objects(),
            self.inner.num_morphisms()
        )
    }
}

/// A functor between finite categories.
#[pyclass(name = "Functor", module = "ramified_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyFunctor {
    inner: CategoryFunctor,
}

#[pymethods]
impl PyFunctor {
    /// Builds a functor from id maps; identities are mapped implicitly.
    #[new]
    fn new(
        source: &PyCategory,
        target: &PyCategory,
        object_map: BTreeMap<String, String>,
        morphism_map: BTreeMap<String, String>,
    ) -> PyResult<Self> {
        CategoryFunctor::validate(source.inner.clone(), target.inner.clone(), &object_map, &morphism_map)
            .map(|inner| PyFunctor { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn identity(category: &PyCategory) -> Self {
        PyFunctor {
            inner: CategoryFunctor::identity(&category.inner),
        }
    }

    /// Loads a functor file, or `builtin:<name>`.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        ramified::io::load_functor(path)
            .map(|inner| PyFunctor { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        match builtin_example(name).map_err(err)? {
            Builtin::Functor(inner) => Ok(PyFunctor { inner }),
            Builtin::Category(_) => Err(err(format!("`{name}` is a category"))),
        }
    }

    #[getter]
    fn source(&self) -> PyCategory {
        PyCategory {
            inner: self.inner.source().clone(),
        }
    }

    #[getter]
    fn target(&self) -> PyCategory {
        PyCategory {
            inner: self.inner.target().clone(),
        }
    }

    fn object_map(&self) -> BTreeMap<String, String> {
        let (s, t) = (self.inner.source(), self.inner.target());
        (0..s.num_objects())
            .map(|x| (s.object(x).to_string(), t.object(self.inner.map_object(x)).to_string()))
            .collect()
    }

    fn is_unramified(&self) -> PyResult<bool> {
        covering::check_unramified_covering(&self.inner)
            .map(|v| v.is_covering())
            .map_err(err)
    }

    /// Verifies the ramified covering property; raises `ValueError` with the findings otherwise.
    fn covering(&self) -> PyResult<PyCovering> {
        covering::check_ramified_covering(&self.inner)
            .map(|inner| PyCovering { inner })
            .map_err(err)
    }

    /// Writes the functor file plus `<stem>.source.json` and `<stem>.target.json`.
    fn save(&self, path: &str) -> PyResult<Vec<String>> {
        let written = ramified::io::write_functor(std::path::Path::new(path), &self.inner).map_err(err)?;
        Ok(written.iter().map(|p| p.display().to_string()).collect())
    }
}

/// A verified ramified covering.
#[pyclass(name = "Covering", module = "ramified_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyCovering {
    inner: RamifiedCovering,
}

#[pymethods]
impl PyCovering {
    #[getter]
    fn degree(&self) -> u64 {
        self.inner.degree()
    }

    #[getter]
    fn total_ramification(&self) -> u64 {
        self.inner.total_ramification()
    }

    #[getter]
    fn functor(&self) -> PyFunctor {
        PyFunctor {
            inner: self.inner.functor().clone(),
        }
    }

    /// Ramification number of every object of the total category.
    fn ramification(&self) -> BTreeMap<String, u64> {
        self.inner
            .ramification_map()
            .into_iter()
            .map(|(x, e)| (x.to_string(), e))
            .collect()
    }

    fn fiber(&self, object: &str) -> PyResult<Vec<String>> {
        Ok(self
            .inner
            .fiber(object)
            .map_err(err)?
            .iter()
            .map(ToString::to_string)
            .collect())
    }

    /// Lifts of the chain `start --arrows[0]--> ...` in lexicographic order.
    #[pyo3(signature = (start, arrows = Vec::new()))]
    fn lifts(&self, start: &str, arrows: Vec<String>) -> PyResult<Vec<Vec<String>>> {
        let base = self.inner.functor().target();
        let ids: Vec<&str> = arrows.iter().map(String::as_str).collect();
        let chain = Chain::from_ids(base, start, &ids).map_err(err)?;
        let set = self.inner.lift_chains(&chain).map_err(err)?;
        let total = self.inner.functor().source();
        Ok(set.lifts.iter().map(|l| l.ids(total)).collect())
    }

    /// `{"chi_total", "chi_base", "degree", "total_ramification", "passed"}`; characteristics may be `None`.
    fn riemann_hurwitz<'py>(&self, py: Python<'py>) -> PyResult<BTreeMap<&'static str, Bound<'py, PyAny>>> {
        let r = invariants::check_riemann_hurwitz(&self.inner);
        let chi = |c: &EulerCharacteristic| -> PyResult<Bound<'py, PyAny>> {
            match c {
                EulerCharacteristic::Defined(q) => fraction(py, rational_string(q)),
                EulerCharacteristic::Undefined => Ok(py.None().into_bound(py)),
            }
        };
        let mut out = BTreeMap::new();
        out.insert("chi_total", chi(&r.chi_total)?);
        out.insert("chi_base", chi(&r.chi_base)?);
        out.insert("degree", integer(py, r.degree.to_string())?);
        out.insert("total_ramification", integer(py, r.total_ramification.to_string())?);
        out.insert("passed", pyo3::types::PyBool::new(py, r.passed()).to_owned().into_any());
        Ok(out)
    }

    #[pyo3(signature = (order = invariants::DEFAULT_ORDER))]
    fn zeta_divisibility(&self, order: usize) -> bool {
        invariants::check_zeta_divisibility(&self.inner, order).passed()
    }

    #[pyo3(signature = (n_max = 4))]
    fn simplicial_compatibility(&self, n_max: usize) -> bool {
        self.inner.check_simplicial_compatibility(n_max).passed()
    }

    fn lemmas(&self) -> bool {
        self.inner.check_covering_lemmas().passed()
    }

    fn __repr__(&self) -> String {
        format!(
            "Covering(degree={}, total_ramification={})",
            self.inner.degree(),
            self.inner.total_ramification()
        )
    }
}

/// Wedge of `(category, object)` pairs at preinitial objects.
#[pyfunction]
fn wedge(parts: Vec<(PyCategory, String)>) -> PyResult<PyCategory> {
    let parts: Vec<(FiniteCategory, &str)> = parts.iter().map(|(c, o)| (c.inner.clone(), o.as_str())).collect();
    constructions::wedge(&parts)
        .map(|w| PyCategory { inner: w.category })
        .map_err(err)
}

/// Wedge of unramified coverings at preinitial objects over a common base object.
#[pyfunction]
fn wedge_covering(functors: Vec<PyFunctor>, basepoints: Vec<String>) -> PyResult<PyCovering> {
    let functors: Vec<CategoryFunctor> = functors.into_iter().map(|f| f.inner).collect();
    let basepoints: Vec<&str> = basepoints.iter().map(String::as_str).collect();
    constructions::wedge_covering(&functors, &basepoints)
        .map(|inner| PyCovering { inner })
        .map_err(err)
}

#[pyfunction]
fn random_covering(seed: u64) -> PyResult<PyCovering> {
    constructions::random_covering(seed, &RandomCoveringParams::default())
        .map(|inner| PyCovering { inner })
        .map_err(err)
}

#[pyfunction]
fn builtin_names() -> Vec<&'static str> {
    constructions::BUILTIN_NAMES.to_vec()
}

/// Runs the command line in-process; returns `(exit status, report text)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String) {
    ramified::cli::run(std::iter::once("ramified".to_string()).chain(args))
}

#[pymodule]
fn ramified_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCategory>()?;
    m.add_class::<PyFunctor>()?;
    m.add_class::<PyCovering>()?;
    m.add_function(wrap_pyfunction!(wedge, m)?)?;
    m.add_function(wrap_pyfunction!(wedge_covering, m)?)?;
    m.add_function(wrap_pyfunction!(random_covering, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
