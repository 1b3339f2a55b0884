//! Lower bounds on the standard energy consumption per ebit.
//!
//! Every bound has the shape `2E · (numerator / denominator − 1)` where `E`
//! is the energy of one carrier particle and the factor two counts the two
//! halves of a pair. A vanishing denominator means nothing can be distilled
//! and the bound is `+∞`.

use std::fmt;

use crate::channels::{
    choi_amplitude_damping, choi_depolarizing, dephasing_two_way_capacity, erasure_two_way_capacity,
    ChannelKind, ChannelSpec, PhaseDensity, DEPHASING_GRID_POINTS,
};
use crate::energy::{photon_energy, EnergyContext};
use crate::error::{Error, Result};
use crate::qstate::{partial_transpose, trace_norm};

/// Denominators at or below this are treated as zero.
pub const ZERO_TOL: f64 = 1e-10;
/// Slack allowed when checking `numerator >= denominator`.
pub const ORDER_TOL: f64 = 1e-9;
/// Agreement required between eigensolver and closed-form trace norms.
pub const CROSS_CHECK_TOL: f64 = 1e-9;
const RATIO_SNAP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InfiniteReason {
    NonDistillable,
    Ppt,
    ZeroCapacity,
}

impl InfiniteReason {
    pub fn tag(self) -> &'static str {
        match self {
            InfiniteReason::NonDistillable => "non-distillable",
            InfiniteReason::Ppt => "ppt",
            InfiniteReason::ZeroCapacity => "zero-capacity",
        }
    }
}

/// J per ebit, or `+∞` with the reason it diverges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Finite(f64),
    Infinite(InfiniteReason),
}

impl Bound {
    pub fn value(self) -> f64 {
        match self {
            Bound::Finite(v) => v,
            Bound::Infinite(_) => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Bound::Infinite(_))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v:e}"),
            Bound::Infinite(_) => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    SingleShot,
    Asymptotic,
    CostOverDistillable,
    TwoWayCapacity,
    LogNegativity,
}

impl FormulaId {
    pub fn name(self) -> &'static str {
        match self {
            FormulaId::SingleShot => "single_shot",
            FormulaId::Asymptotic => "asymptotic",
            FormulaId::CostOverDistillable => "ec_over_ed",
            FormulaId::TwoWayCapacity => "two_way_capacity",
            FormulaId::LogNegativity => "log_negativity",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub value: Bound,
    pub formula: FormulaId,
    pub channel: ChannelSpec,
    pub inputs: Vec<(&'static str, f64)>,
}

fn ratio_bound(energy: f64, numerator: f64, denominator: f64, reason: InfiniteReason) -> Result<Bound> {
    if !(denominator >= 0.0) || !(numerator >= 0.0) {
        return Err(Error::InconsistentMeasures(format!(
            "negative entanglement quantity ({numerator}, {denominator})"
        )));
    }
    if denominator <= ZERO_TOL {
        return Ok(Bound::Infinite(reason));
    }
    if numerator < denominator - ORDER_TOL {
        return Err(Error::InconsistentMeasures(format!(
            "{numerator} < {denominator}: output entanglement exceeds input"
        )));
    }
    let excess = numerator / denominator - 1.0;
    // Round-off from the eigensolver, not a real gap.
    let excess = if excess < RATIO_SNAP_TOL { 0.0 } else { excess };
    Ok(Bound::Finite(2.0 * energy * excess))
}

/// `2E (⌈log₂ d_in⌉ / ⌈E_D^ε⌉ − 1)`; `ed_eps_ceil = 0` flags a
/// non-distillable channel.
pub fn lb_single_shot(energy_per_qubit: f64, log2_din: f64, ed_eps_ceil: u32) -> Result<Bound> {
    if !(log2_din >= 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "log2_din",
            value: log2_din,
            range: "[1, inf)",
        });
    }
    ratio_bound(
        energy_per_qubit,
        log2_din.ceil(),
        f64::from(ed_eps_ceil),
        InfiniteReason::NonDistillable,
    )
}

/// `2E (log₂ d_in / E_D − 1)`
pub fn lb_asymptotic(energy_per_qubit: f64, log2_din: f64, ed: f64) -> Result<Bound> {
    ratio_bound(energy_per_qubit, log2_din, ed, InfiniteReason::NonDistillable)
}

/// `2E (E_C / E_D − 1)`
pub fn lb_from_ec_ed(energy: f64, ec: f64, ed: f64) -> Result<Bound> {
    if ec == 0.0 && ed == 0.0 {
        // Separable: nothing to distill and nothing spent.
        return Ok(Bound::Infinite(InfiniteReason::NonDistillable));
    }
    ratio_bound(energy, ec, ed, InfiniteReason::NonDistillable)
}

/// `2E (log₂ d_in / Q↔ − 1)`
pub fn lb_from_capacity(energy: f64, log2_din: f64, q2: f64) -> Result<Bound> {
    ratio_bound(energy, log2_din, q2, InfiniteReason::ZeroCapacity)
}

/// `2E (log₂ d_in / log₂‖ρ^Γ‖₁ − 1)`
pub fn lb_from_log_negativity(energy: f64, log2_din: f64, logneg: f64) -> Result<Bound> {
    ratio_bound(energy, log2_din, logneg, InfiniteReason::Ppt)
}

/// Closed-form `‖ρ^Γ‖₁` of the depolarizing Choi state.
pub fn depolarizing_trace_norm_closed(p: f64) -> f64 {
    (2.0 - 1.5 * p).max(1.0)
}

/// Closed-form `‖ρ^Γ‖₁` of the amplitude-damping Choi state.
pub fn amplitude_damping_trace_norm_closed(p: f64) -> f64 {
    2.0 - p
}

/// Log-negativity from the eigensolver, cross-checked against the closed form.
pub fn log_negativity(kind: ChannelKind, p: f64) -> Result<f64> {
    let (choi, closed) = match kind {
        ChannelKind::Depolarizing => (choi_depolarizing(p)?, depolarizing_trace_norm_closed(p)),
        ChannelKind::AmplitudeDamping => {
            (choi_amplitude_damping(p)?, amplitude_damping_trace_norm_closed(p))
        }
        other => {
            return Err(Error::InvalidDimension(format!(
                "no qubit Choi matrix for the {other} channel"
            )))
        }
    };
    let norm = trace_norm(&partial_transpose(&choi.state, choi.dims)?)?;
    if (norm - closed).abs() > CROSS_CHECK_TOL {
        return Err(Error::CrossCheck(format!(
            "{kind} p={p}: eigensolver {norm} vs closed form {closed}"
        )));
    }
    Ok(norm.log2().max(0.0))
}

/// Dephasing with a centred box of width `fraction · 2π`.
pub fn dephasing_box_capacity(fraction: f64) -> Result<f64> {
    let density = PhaseDensity::centered_box(DEPHASING_GRID_POINTS, fraction)?;
    Ok(dephasing_two_way_capacity(&density).max(0.0))
}

/// Lower bound for a qubit channel fed one half of `ψ⁺₂`, with photons of
/// energy `ħω` as carriers.
pub fn lb_for_channel(spec: ChannelSpec, ctx: &EnergyContext) -> Result<BoundResult> {
    let e = photon_energy(ctx);
    let log2_din = 1.0;
    let p = spec.param();
    let (value, formula, inputs) = match spec.kind() {
        ChannelKind::Erasure => {
            let q2 = erasure_two_way_capacity(p)?;
            (
                lb_from_capacity(e, log2_din, q2)?,
                FormulaId::TwoWayCapacity,
                vec![("q2", q2)],
            )
        }
        ChannelKind::Depolarizing | ChannelKind::AmplitudeDamping => {
            let ln = log_negativity(spec.kind(), p)?;
            (
                lb_from_log_negativity(e, log2_din, ln)?,
                FormulaId::LogNegativity,
                vec![("log_negativity", ln)],
            )
        }
        ChannelKind::BosonicDephasingUniform => {
            if p == 0.0 {
                // Noiseless phase: unbounded capacity, trivial bound.
                (Bound::Finite(0.0), FormulaId::TwoWayCapacity, vec![("q2", f64::INFINITY)])
            } else {
                let q2 = dephasing_box_capacity(p)?;
                // A capacity above log₂ d_in only certifies the trivial bound.
                let bound = if q2 >= log2_din {
                    Bound::Finite(0.0)
                } else {
                    lb_from_capacity(e, log2_din, q2)?
                };
                (bound, FormulaId::TwoWayCapacity, vec![("q2", q2)])
            }
        }
    };
    let mut all_inputs = vec![("param", p), ("energy_per_qubit", e), ("log2_din", log2_din)];
    all_inputs.extend(inputs);
    Ok(BoundResult {
        value,
        formula,
        channel: spec,
        inputs: all_inputs,
    })
}
