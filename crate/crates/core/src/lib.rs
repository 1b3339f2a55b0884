//! Energy cost of distributing entanglement over noisy quantum channels.
//!
//! Lower bounds come from entanglement measures of the channel's Choi state;
//! upper bounds from explicit distillation protocols with a thermodynamic
//! cost ledger.

// `!(x > 0.0)` style checks are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod energy;
pub mod error;
pub mod estimator;
pub mod lowerbounds;
pub mod protocols;
pub mod qstate;

pub use channels::{ChannelKind, ChannelSpec};
pub use energy::{build_ledger, EnergyContext, EnergyLedger};
pub use error::{Error, Result};
pub use estimator::{upper_bound_ecred, EstimatorConfig, UpperBound};
pub use lowerbounds::{lb_for_channel, Bound, BoundResult};
pub use protocols::{ProtocolKind, StepOutcome};
pub use qstate::{BellDiagonalState, DensityMatrix};
