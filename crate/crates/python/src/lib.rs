//! Python bindings for `ecred_core`.

use ecred_core::channels::{ChannelKind, ChannelSpec};
use ecred_core::energy::{build_ledger, EnergyContext};
use ecred_core::estimator::{upper_bound_ecred, EstimatorConfig};
use ecred_core::lowerbounds::lb_for_channel;
use ecred_core::protocols::oracle::oracle_step;
use ecred_core::protocols::{step, ProtocolKind, StepOutcome};
use ecred_core::{BellDiagonalState, Error};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(ecred, NotDistillableError, PyValueError, "Channel output cannot be distilled.");
create_exception!(ecred, ScheduleError, PyRuntimeError, "No finite copy schedule reaches the target.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NotDistillable(_) => NotDistillableError::new_err(e.to_string()),
        Error::Stalled { .. } | Error::InfeasibleSchedule { .. } | Error::CapExceeded(_) => {
            ScheduleError::new_err(e.to_string())
        }
        Error::NoConvergence(_) | Error::CrossCheck(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse<T: std::str::FromStr>(s: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| PyValueError::new_err(e.to_string()))
}

/// Temperature in K, wavelength in nm.
#[pyclass(name = "EnergyContext", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyEnergyContext {
    inner: EnergyContext,
    wavelength_nm: f64,
}

#[pymethods]
impl PyEnergyContext {
    #[new]
    #[pyo3(signature = (temp_k = 293.0, wavelength_nm = 1550.0, p_cnot = 0.125))]
    fn new(temp_k: f64, wavelength_nm: f64, p_cnot: f64) -> PyResult<Self> {
        let inner = EnergyContext::new(temp_k, wavelength_nm * 1e-9, p_cnot).map_err(to_py)?;
        Ok(Self { inner, wavelength_nm })
    }

    #[getter]
    fn temp_k(&self) -> f64 {
        self.inner.temperature
    }

    #[getter]
    fn wavelength_nm(&self) -> f64 {
        self.wavelength_nm
    }

    #[getter]
    fn p_cnot(&self) -> f64 {
        self.inner.p_cnot
    }

    /// Energy ledger entries in joules.
    fn ledger<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (k, v) in build_ledger(&self.inner).entries() {
            d.set_item(k, v)?;
        }
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "EnergyContext(temp_k={}, wavelength_nm={}, p_cnot={})",
            self.temp_k(),
            self.wavelength_nm(),
            self.p_cnot()
        )
    }
}

/// Bell-diagonal two-qubit state, coefficients in the order
/// (phi+, psi+, phi-, psi-).
#[pyclass(name = "BellDiagonalState", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBellState {
    inner: BellDiagonalState,
}

#[pymethods]
impl PyBellState {
    #[new]
    fn new(coeffs: [f64; 4]) -> PyResult<Self> {
        Ok(Self {
            inner: BellDiagonalState::new(coeffs).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn isotropic(fidelity: f64) -> PyResult<Self> {
        Ok(Self {
            inner: BellDiagonalState::isotropic(fidelity).map_err(to_py)?,
        })
    }

    #[getter]
    fn coeffs(&self) -> [f64; 4] {
        self.inner.coeffs()
    }

    #[getter]
    fn fidelity(&self) -> f64 {
        self.inner.fidelity()
    }

    fn __repr__(&self) -> String {
        let c = self.inner.coeffs();
        format!("BellDiagonalState([{}, {}, {}, {}])", c[0], c[1], c[2], c[3])
    }
}

#[pyclass(name = "StepOutcome", frozen, get_all)]
struct PyStepOutcome {
    next_state: PyBellState,
    success_prob: f64,
    fidelity: f64,
    branch: Option<String>,
}

impl From<StepOutcome> for PyStepOutcome {
    fn from(o: StepOutcome) -> Self {
        Self {
            next_state: PyBellState { inner: o.next_state },
            success_prob: o.success_prob,
            fidelity: o.fidelity,
            branch: o.branch.map(|b| b.name().to_string()),
        }
    }
}

#[pymethods]
impl PyStepOutcome {
    fn __repr__(&self) -> String {
        format!(
            "StepOutcome(success_prob={}, fidelity={}, branch={:?})",
            self.success_prob, self.fidelity, self.branch
        )
    }
}

/// One protocol round: "bbpssw", "dejmps" or "p1p2".
#[pyfunction]
fn protocol_step(protocol: &str, state: &PyBellState) -> PyResult<PyStepOutcome> {
    let kind: ProtocolKind = parse(protocol)?;
    Ok(step(kind, &state.inner).map_err(to_py)?.into())
}

/// Same round simulated on the full two-pair density matrix.
#[pyfunction]
fn oracle_protocol_step(protocol: &str, state: &PyBellState) -> PyResult<PyStepOutcome> {
    let kind: ProtocolKind = parse(protocol)?;
    Ok(oracle_step(&state.inner.to_density(), kind).map_err(to_py)?.into())
}

/// Lower bound in J/ebit; `inf` when no finite bound exists.
#[pyfunction]
#[pyo3(signature = (channel, param, ctx = None))]
fn lower_bound(channel: &str, param: f64, ctx: Option<&PyEnergyContext>) -> PyResult<f64> {
    let kind: ChannelKind = parse(channel)?;
    let spec = ChannelSpec::new(kind, param).map_err(to_py)?;
    let ctx = ctx.map(|c| c.inner).unwrap_or_default();
    Ok(lb_for_channel(spec, &ctx).map_err(to_py)?.value.value())
}

/// Upper bound for a depolarizing channel. Returns a dict with the value in
/// J/ebit, the copy schedule and the forward fidelity path.
#[pyfunction]
#[pyo3(signature = (protocol, lam, f_des = 0.9, distance_km = 0.0, ctx = None, attenuation_db_per_km = 0.18, memory_exponent = 1, max_steps = 64))]
#[allow(clippy::too_many_arguments)]
fn upper_bound<'py>(
    py: Python<'py>,
    protocol: &str,
    lam: f64,
    f_des: f64,
    distance_km: f64,
    ctx: Option<&PyEnergyContext>,
    attenuation_db_per_km: f64,
    memory_exponent: u32,
    max_steps: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let mut cfg = EstimatorConfig::new(parse(protocol)?, lam, f_des);
    if let Some(c) = ctx {
        cfg.ctx = c.inner;
    }
    cfg.distance_km = distance_km;
    cfg.attenuation_db_per_km = attenuation_db_per_km;
    cfg.memory_exposure_exponent = memory_exponent;
    cfg.max_steps = max_steps;
    let ub = py.detach(|| upper_bound_ecred(&cfg)).map_err(to_py)?;

    let d = PyDict::new(py);
    d.set_item("value", ub.value)?;
    d.set_item("n", ub.schedule.n.clone())?;
    d.set_item("delta", ub.schedule.delta.clone())?;
    d.set_item("n1", ub.schedule.n1())?;
    d.set_item("runs_total", ub.schedule.runs_total)?;
    d.set_item("eta", ub.schedule.eta)?;
    d.set_item("k_steps", ub.path.k_steps())?;
    d.set_item("fidelities", ub.path.steps.iter().map(|s| s.fidelity).collect::<Vec<_>>())?;
    d.set_item("success_probs", ub.path.steps.iter().map(|s| s.success_prob).collect::<Vec<_>>())?;
    d.set_item("f_target", ub.path.f_target)?;
    d.set_item("run_cost", ub.run_cost)?;
    Ok(d)
}

#[pymodule]
pub fn ecred(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEnergyContext>()?;
    m.add_class::<PyBellState>()?;
    m.add_class::<PyStepOutcome>()?;
    m.add_function(wrap_pyfunction!(protocol_step, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_protocol_step, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound, m)?)?;
    m.add("NotDistillableError", m.py().get_type::<NotDistillableError>())?;
    m.add("ScheduleError", m.py().get_type::<ScheduleError>())?;
    Ok(())
}
