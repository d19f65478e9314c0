//! Python bindings for the distance law between two planar random flights.

use flightdist as fd;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(flightdist_py, ConvergenceError, PyRuntimeError);

fn to_py(e: fd::Error) -> PyErr {
    match e {
        fd::Error::Domain(_) | fd::Error::InvalidParameter(_) => {
            PyValueError::new_err(e.to_string())
        }
        fd::Error::Convergence { .. } => ConvergenceError::new_err(e.to_string()),
        fd::Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

#[pyclass(name = "FlightParams", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyFlightParams(fd::FlightParams);

#[pymethods]
impl PyFlightParams {
    #[new]
    fn new(speed: f64, rate: f64) -> PyResult<Self> {
        fd::FlightParams::new(speed, rate).map(Self).map_err(to_py)
    }

    #[getter]
    fn speed(&self) -> f64 {
        self.0.speed()
    }

    #[getter]
    fn rate(&self) -> f64 {
        self.0.rate()
    }

    fn reach(&self, t: f64) -> f64 {
        self.0.reach(t)
    }

    fn singular_mass(&self, t: f64) -> PyResult<f64> {
        fd::singular_mass(&self.0, t).map_err(to_py)
    }

    /// `P(R(t) < r)` for the distance of the flight from its start.
    fn radial_cdf(&self, r: f64, t: f64) -> PyResult<f64> {
        fd::radial_cdf(&self.0, r, t).map_err(to_py)
    }

    fn radial_density_ac(&self, r: f64, t: f64) -> PyResult<f64> {
        fd::radial_density_ac(&self.0, r, t).map_err(to_py)
    }

    fn marginal_density(&self, x: f64, t: f64) -> PyResult<f64> {
        fd::marginal_density(&self.0, x, t).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "FlightParams(speed={}, rate={})",
            self.0.speed(),
            self.0.rate()
        )
    }
}

/// Two flights; the faster one always comes first.
#[pyclass(name = "PairParams", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyPairParams(fd::PairParams);

#[pymethods]
impl PyPairParams {
    #[new]
    fn new(c1: f64, lambda1: f64, c2: f64, lambda2: f64) -> PyResult<Self> {
        fd::PairParams::from_values(c1, lambda1, c2, lambda2)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn first(&self) -> PyFlightParams {
        PyFlightParams(self.0.first())
    }

    #[getter]
    fn second(&self) -> PyFlightParams {
        PyFlightParams(self.0.second())
    }

    #[getter]
    fn speed_class(&self) -> &'static str {
        self.0.speed_class().name()
    }

    fn max_distance(&self, t: f64) -> f64 {
        self.0.max_distance(t)
    }

    fn __repr__(&self) -> String {
        let (f, s) = (self.0.first(), self.0.second());
        format!(
            "PairParams(c1={}, lambda1={}, c2={}, lambda2={})",
            f.speed(),
            f.rate(),
            s.speed(),
            s.rate()
        )
    }
}

#[pyclass(name = "CdfValue", frozen, get_all)]
struct PyCdfValue {
    value: f64,
    abs_error: f64,
    regime: &'static str,
    raw: f64,
    consistent: bool,
    evaluations: u64,
}

impl From<fd::CdfValue> for PyCdfValue {
    fn from(v: fd::CdfValue) -> Self {
        Self {
            value: v.value,
            abs_error: v.abs_error,
            regime: v.regime.name(),
            raw: v.raw,
            consistent: v.consistent,
            evaluations: v.evaluations,
        }
    }
}

#[pymethods]
impl PyCdfValue {
    fn __float__(&self) -> f64 {
        self.value
    }

    fn __repr__(&self) -> String {
        format!(
            "CdfValue(value={}, abs_error={:e}, regime={})",
            self.value, self.abs_error, self.regime
        )
    }
}

/// Distribution function of the distance between the two flights.
#[pyclass(name = "DistanceLaw", frozen)]
struct PyDistanceLaw(fd::DistanceLaw);

type Pair = (f64, f64);

fn pair_of(q: fd::QuadResult) -> Pair {
    (q.value, q.abs_error)
}

#[pymethods]
impl PyDistanceLaw {
    #[new]
    #[pyo3(signature = (pair, tol_1d=None, tol_2d=None))]
    fn new(pair: PyPairParams, tol_1d: Option<f64>, tol_2d: Option<f64>) -> Self {
        let d = fd::Tolerances::default();
        let tol = fd::Tolerances {
            one_d: tol_1d.unwrap_or(d.one_d),
            two_d: tol_2d.unwrap_or(d.two_d),
        };
        Self(fd::DistanceLaw::with_tolerances(pair.0, tol))
    }

    #[getter]
    fn pair(&self) -> PyPairParams {
        PyPairParams(*self.0.pair())
    }

    fn regime(&self, r: f64, t: f64) -> PyResult<&'static str> {
        self.0.regime(r, t).map(|g| g.tag.name()).map_err(to_py)
    }

    /// Junction points `[0, ..., (c1 + c2) t]` of the piecewise formula.
    fn junctions(&self, t: f64) -> PyResult<Vec<f64>> {
        self.0.regime(0.0, t).map(|g| g.junctions).map_err(to_py)
    }

    fn phi(&self, py: Python<'_>, r: f64, t: f64) -> PyResult<PyCdfValue> {
        py.detach(|| self.0.phi(r, t))
            .map(Into::into)
            .map_err(to_py)
    }

    fn grid(&self, py: Python<'_>, rs: Vec<f64>, t: f64) -> PyResult<Vec<PyCdfValue>> {
        py.detach(|| self.0.grid(&rs, t))
            .into_iter()
            .map(|v| v.map(Into::into).map_err(to_py))
            .collect()
    }

    /// `{"p00", "p10", "p01", "p11"}`, each as `(value, abs_error)`.
    fn components(&self, py: Python<'_>, r: f64, t: f64) -> PyResult<Vec<(&'static str, Pair)>> {
        let c = py.detach(|| self.0.components(r, t)).map_err(to_py)?;
        Ok(vec![
            ("p00", pair_of(c.p00)),
            ("p10", pair_of(c.p10)),
            ("p01", pair_of(c.p01)),
            ("p11", pair_of(c.p11)),
        ])
    }

    fn i1(&self, r: f64, t: f64) -> PyResult<Pair> {
        self.0.i1(r, t).map(pair_of).map_err(to_py)
    }

    fn i2(&self, r: f64, t: f64) -> PyResult<Pair> {
        self.0.i2(r, t).map(pair_of).map_err(to_py)
    }
}

/// Simulated distances between the two flights at time `t`, in draw order.
#[pyfunction]
fn sample_distances(
    py: Python<'_>,
    pair: PyPairParams,
    t: f64,
    n: usize,
    seed: u64,
) -> PyResult<Vec<f64>> {
    py.detach(|| fd::mc::sample_distances(&pair.0, t, n, seed))
        .map_err(to_py)
}

/// Sup distance between the simulated and the computed distribution
/// functions over `rs`, and the DKW half-width at level `alpha`.
#[pyfunction]
#[pyo3(signature = (pair, t, rs, n, seed, alpha=0.01))]
fn ks_check(
    py: Python<'_>,
    pair: PyPairParams,
    t: f64,
    rs: Vec<f64>,
    n: usize,
    seed: u64,
    alpha: f64,
) -> PyResult<Pair> {
    py.detach(|| {
        let emp = fd::empirical_distance_cdf(&pair.0, t, n, seed)?;
        let law = fd::DistanceLaw::new(pair.0);
        let mut sup: f64 = 0.0;
        for (r, v) in rs.iter().zip(law.grid(&rs, t)) {
            sup = sup.max((v?.value - emp.eval(*r)).abs());
        }
        Ok((sup, emp.dkw_half_width(alpha)))
    })
    .map_err(to_py)
}

#[pymodule]
fn flightdist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFlightParams>()?;
    m.add_class::<PyPairParams>()?;
    m.add_class::<PyCdfValue>()?;
    m.add_class::<PyDistanceLaw>()?;
    m.add_function(wrap_pyfunction!(sample_distances, m)?)?;
    m.add_function(wrap_pyfunction!(ks_check, m)?)?;
    m.add("ConvergenceError", m.py().get_type::<ConvergenceError>())?;
    Ok(())
}
