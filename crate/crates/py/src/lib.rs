//! Python bindings: algebras, spaces and maps, with spectra, closures and the
//! property suites.

#![allow(clippy::useless_conversion)]

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use qtop_core::doc::{parse_algebra, parse_caps, parse_space};
use qtop_core::verify::{enumerate_spaces, run_suite as core_run_suite, InstanceSpec, Mode, SUITES};
use qtop_core::{
    builtin, enumerate_homs, firmness_inverse, generate_topology, is_embedding, is_epi, is_extremal_mono, is_t0,
    lift_through_reflection, m_closure, sierpinski, spectrum, AlgebraRef, Caps, ContinuousMap, FiniteAlgebra,
    QFunction, QSpace, SpaceDoc, Subset,
};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn caps_of(caps: Option<&str>) -> PyResult<Caps> {
    caps.map_or(Ok(Caps::default()), |text| parse_caps(text).map_err(err))
}

/// Hands a serializable value to Python through `json.loads`.
fn to_py(py: Python<'_>, value: &impl Serialize) -> PyResult<PyObject> {
    let text = serde_json::to_string(value).map_err(err)?;
    Ok(py.import_bound("json")?.call_method1("loads", (text,))?.unbind())
}

/// A finite algebra.
#[pyclass(name = "Algebra", frozen)]
#[derive(Clone)]
struct PyAlgebra {
    inner: Arc<FiniteAlgebra>,
}

#[pymethods]
impl PyAlgebra {
    /// One of BOOL_LAT, MEET_SL, CHAIN3.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ok(PyAlgebra {
            inner: Arc::new(builtin(name).map_err(err)?),
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyAlgebra {
            inner: Arc::new(parse_algebra(text).map_err(err)?),
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_raw()).map_err(err)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    /// All homomorphisms into `other`, as value lists.
    #[pyo3(signature = (other, caps=None))]
    fn homs_to(&self, other: &PyAlgebra, caps: Option<&str>) -> PyResult<Vec<Vec<usize>>> {
        let homs = enumerate_homs(&self.inner, &other.inner, &caps_of(caps)?).map_err(err)?;
        Ok(homs.into_iter().map(|h| h.values().to_vec()).collect())
    }

    fn __repr__(&self) -> String {
        format!("Algebra({}, size={})", self.inner.name(), self.inner.size())
    }
}

/// A Q-topological space on points `0..points`.
#[pyclass(name = "Space", frozen)]
#[derive(Clone)]
struct PySpace {
    inner: QSpace,
}

#[pymethods]
impl PySpace {
    /// With `close=True` the opens are a subbasis and get closed.
    #[new]
    #[pyo3(signature = (algebra, points, opens, close=false, caps=None))]
    fn new(
        algebra: &PyAlgebra,
        points: usize,
        opens: Vec<Vec<usize>>,
        close: bool,
        caps: Option<&str>,
    ) -> PyResult<Self> {
        let q = algebra.inner.clone();
        let opens = opens.into_iter().map(QFunction);
        let inner = if close {
            generate_topology(q, points, opens, &caps_of(caps)?)
        } else {
            QSpace::new(q, points, opens)
        };
        Ok(PySpace {
            inner: inner.map_err(err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (algebra, caps=None))]
    fn sierpinski(algebra: &PyAlgebra, caps: Option<&str>) -> PyResult<Self> {
        Ok(PySpace {
            inner: sierpinski(algebra.inner.clone(), &caps_of(caps)?).map_err(err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (text, caps=None))]
    fn from_json(text: &str, caps: Option<&str>) -> PyResult<Self> {
        Ok(PySpace {
            inner: parse_space(text, &caps_of(caps)?).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&SpaceDoc::of(&self.inner)).map_err(err)
    }

    #[getter]
    fn algebra(&self) -> PyAlgebra {
        PyAlgebra {
            inner: self.inner.q().clone(),
        }
    }

    #[getter]
    fn points(&self) -> usize {
        self.inner.points()
    }

    #[getter]
    fn opens(&self) -> Vec<Vec<usize>> {
        self.inner.topology().iter().map(|p| p.values().to_vec()).collect()
    }

    fn is_t0(&self) -> bool {
        is_t0(&self.inner)
    }

    #[pyo3(signature = (caps=None))]
    fn is_sober(&self, caps: Option<&str>) -> PyResult<bool> {
        Ok(spectrum(&self.inner, &caps_of(caps)?).map_err(err)?.eta_is_bijective())
    }

    /// `{"homs", "phi", "eta", "pt_space"}`; `pt_space` is a Space.
    #[pyo3(signature = (caps=None))]
    fn spectrum(&self, py: Python<'_>, caps: Option<&str>) -> PyResult<PyObject> {
        let s = spectrum(&self.inner, &caps_of(caps)?).map_err(err)?;
        let dict = pyo3::types::PyDict::new_bound(py);
        dict.set_item("homs", s.homs().to_vec())?;
        dict.set_item("phi", s.phi().to_vec())?;
        dict.set_item("eta", s.eta().to_vec())?;
        dict.set_item(
            "pt_space",
            PySpace {
                inner: s.pt_space().clone(),
            }
            .into_py(py),
        )?;
        Ok(dict.into_py(py))
    }

    /// The reflection map η into the spectrum.
    #[pyo3(signature = (caps=None))]
    fn sobrify(&self, caps: Option<&str>) -> PyResult<PyMap> {
        let s = spectrum(&self.inner, &caps_of(caps)?).map_err(err)?;
        Ok(PyMap { inner: s.eta_map() })
    }

    /// The [ ]-closure of a point set, with the pairs of opens witnessing it.
    fn closure(&self, py: Python<'_>, subset: Vec<usize>) -> PyResult<PyObject> {
        let m = Subset::new(self.inner.points(), subset).map_err(err)?;
        to_py(py, &m_closure(&self.inner, &m).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!(
            "Space({}, points={}, opens={})",
            self.inner.q().name(),
            self.inner.points(),
            self.inner.topology().len()
        )
    }
}

/// A continuous map between spaces over the same algebra.
#[pyclass(name = "Map", frozen)]
struct PyMap {
    inner: ContinuousMap,
}

#[pymethods]
impl PyMap {
    #[new]
    fn new(dom: &PySpace, cod: &PySpace, values: Vec<usize>) -> PyResult<Self> {
        Ok(PyMap {
            inner: ContinuousMap::new(dom.inner.clone(), cod.inner.clone(), values).map_err(err)?,
        })
    }

    #[getter]
    fn values(&self) -> Vec<usize> {
        self.inner.values().to_vec()
    }

    #[getter]
    fn dom(&self) -> PySpace {
        PySpace {
            inner: self.inner.dom().clone(),
        }
    }

    #[getter]
    fn cod(&self) -> PySpace {
        PySpace {
            inner: self.inner.cod().clone(),
        }
    }

    fn is_epi(&self) -> PyResult<bool> {
        Ok(is_epi(&self.inner).map_err(err)?.is_epi())
    }

    fn is_embedding(&self) -> bool {
        is_embedding(&self.inner)
    }

    fn is_extremal_mono(&self) -> PyResult<bool> {
        is_extremal_mono(&self.inner).map_err(err)
    }

    /// The unique map out of the sobrification of `dom` through which this one factors.
    #[pyo3(signature = (caps=None))]
    fn lift(&self, caps: Option<&str>) -> PyResult<PyMap> {
        Ok(PyMap {
            inner: lift_through_reflection(&self.inner, &caps_of(caps)?).map_err(err)?,
        })
    }

    /// The inverse of f* for an epimorphic embedding into a sober space.
    #[pyo3(signature = (caps=None))]
    fn firmness_inverse(&self, caps: Option<&str>) -> PyResult<PyMap> {
        let cert = firmness_inverse(&self.inner, &caps_of(caps)?).map_err(err)?;
        if !cert.is_inverse() {
            return Err(PyValueError::new_err("composites are not identities"));
        }
        Ok(PyMap { inner: cert.g })
    }

    fn __repr__(&self) -> String {
        format!("Map({:?})", self.inner.values())
    }
}

fn instance_spec(
    algebra: &PyAlgebra,
    max_points: usize,
    seed: Option<u64>,
    samples: usize,
    caps: Option<&str>,
) -> PyResult<InstanceSpec> {
    Ok(InstanceSpec {
        algebra: AlgebraRef::of(&algebra.inner),
        mode: match seed {
            Some(seed) => Mode::Random { seed, samples },
            None => Mode::Exhaustive,
        },
        caps: caps_of(caps)?,
        ..InstanceSpec::exhaustive(algebra.inner.name(), max_points)
    })
}

/// Every topology on at most `max_points` points; random subbases when `seed` is given.
#[pyfunction]
#[pyo3(signature = (algebra, max_points, seed=None, samples=64, caps=None))]
fn enumerate(
    algebra: &PyAlgebra,
    max_points: usize,
    seed: Option<u64>,
    samples: usize,
    caps: Option<&str>,
) -> PyResult<Vec<PySpace>> {
    let spec = instance_spec(algebra, max_points, seed, samples, caps)?;
    Ok(enumerate_spaces(&spec)
        .map_err(err)?
        .into_iter()
        .map(|inner| PySpace { inner })
        .collect())
}

/// Runs one property suite and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (name, algebra, max_points, seed=None, samples=64, caps=None))]
fn run_suite(
    py: Python<'_>,
    name: &str,
    algebra: &PyAlgebra,
    max_points: usize,
    seed: Option<u64>,
    samples: usize,
    caps: Option<&str>,
) -> PyResult<PyObject> {
    let spec = instance_spec(algebra, max_points, seed, samples, caps)?;
    let report = py.allow_threads(|| core_run_suite(name, &spec)).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
fn qtop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PySpace>()?;
    m.add_class::<PyMap>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("SUITES", SUITES.to_vec())?;
    Ok(())
}
