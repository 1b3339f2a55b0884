use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module(f: impl FnOnce(Python<'_>, &Bound<'_, PyModule>)) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "ecred").unwrap();
        ecred::ecred(&m).unwrap();
        f(py, &m);
    });
}

#[test]
fn bounds_through_python() {
    with_module(|_, m| {
        let lb: f64 = m.getattr("lower_bound").unwrap().call1(("erasure", 0.5)).unwrap().extract().unwrap();
        assert!((lb - 2.5632e-19).abs() < 1e-22);
        let inf: f64 = m.getattr("lower_bound").unwrap().call1(("dephasing", 1.0)).unwrap().extract().unwrap();
        assert!(inf.is_infinite());
        let ub = m.getattr("upper_bound").unwrap().call1(("dejmps", 0.2)).unwrap();
        let ub = ub.cast::<PyDict>().unwrap();
        let v: f64 = ub.get_item("value").unwrap().unwrap().extract().unwrap();
        assert!(v > 1e-13 && v < 1e-10);
        let n: Vec<u64> = ub.get_item("n").unwrap().unwrap().extract().unwrap();
        assert_eq!(n.len(), 2);
    });
}

#[test]
fn errors_map_to_python_exceptions() {
    with_module(|py, m| {
        let err = m.getattr("upper_bound").unwrap().call1(("dejmps", 0.9)).unwrap_err();
        let cls = m.getattr("NotDistillableError").unwrap();
        assert!(err.get_type(py).is_subclass(&cls).unwrap());
        let err = m.getattr("lower_bound").unwrap().call1(("hashing", 0.1)).unwrap_err();
        assert!(err.is_instance_of::<pyo3::exceptions::PyValueError>(py));
    });
}

#[test]
fn step_outcome_fields() {
    with_module(|_, m| {
        let cls = m.getattr("BellDiagonalState").unwrap();
        let s = cls.call_method1("isotropic", (0.75,)).unwrap();
        let o = m.getattr("protocol_step").unwrap().call1(("dejmps", s.clone())).unwrap();
        let p: f64 = o.getattr("success_prob").unwrap().extract().unwrap();
        assert!((p - 0.722222).abs() < 1e-6);
        let o2 = m.getattr("oracle_protocol_step").unwrap().call1(("dejmps", s)).unwrap();
        let f1: f64 = o.getattr("fidelity").unwrap().extract().unwrap();
        let f2: f64 = o2.getattr("fidelity").unwrap().extract().unwrap();
        assert!((f1 - f2).abs() < 1e-10);
    });
}
