use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: String, actual: String },

    #[error("matrix is not Hermitian (max |M - M^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("trace is not one (|Tr M - 1| = {0:e})")]
    NotUnitTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue = {0:e})")]
    NotPositive(f64),

    #[error("vector is not normalized (|norm^2 - 1| = {0:e})")]
    NotNormalized(f64),

    #[error("parameter {name} = {value} outside {range}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("density is not normalized (integral = {0})")]
    DensityNotNormalized(f64),

    #[error("density takes a negative value {value} at grid index {index}")]
    NegativeDensity { index: usize, value: f64 },

    #[error("inconsistent entanglement measures: {0}")]
    InconsistentMeasures(String),

    #[error("state not distillable: fidelity {0} does not exceed 1/2")]
    NotDistillable(f64),

    #[error("fidelity stalled at {fidelity} after {steps} steps, target {target} unreachable")]
    Stalled {
        fidelity: f64,
        target: f64,
        steps: usize,
    },

    #[error("distillation exceeded the cap of {0} steps")]
    CapExceeded(usize),

    #[error("no feasible copy count for step {step} (bound {limit})")]
    InfeasibleSchedule { step: usize, limit: u64 },

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("closed form and eigensolver disagree: {0}")]
    CrossCheck(String),
}

impl Error {
    /// Process exit status for command-line front ends.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotDistillable(_) => 2,
            Error::Stalled { .. } => 3,
            Error::InfeasibleSchedule { .. } => 4,
            Error::CapExceeded(_) => 5,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::ParamOutOfRange {
            name,
            value,
            range: "[0, 1]",
        })
    }
}
