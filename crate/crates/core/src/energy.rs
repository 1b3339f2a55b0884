//! Physical constants and the primitive-operation energy ledger.
//!
//! Entropies are in nats throughout; `ln 2` nats is one bit.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::protocols::ProtocolKind;

pub const PLANCK: f64 = 6.626_070_15e-34;
pub const LIGHT_SPEED: f64 = 299_792_458.0;
pub const BOLTZMANN: f64 = 1.380_649e-23;

pub const DEFAULT_TEMPERATURE_K: f64 = 293.0;
pub const DEFAULT_WAVELENGTH_M: f64 = 1550e-9;
pub const DEFAULT_P_CNOT: f64 = 0.125;
pub const DEFAULT_ERASURE_EPSILON: f64 = 0.5;

/// Bilateral single-qubit Clifford group used for the Bell twirl.
pub const TWIRL_GROUP_ORDER: u32 = 24;
/// `{B_x, B_y, B_z, 1}`
pub const DEPOLARIZATION_GROUP_ORDER: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyContext {
    pub temperature: f64,
    pub wavelength: f64,
    pub p_cnot: f64,
    pub erasure_epsilon: f64,
    pub boltzmann: f64,
    pub planck: f64,
    pub light_speed: f64,
}

impl Default for EnergyContext {
    fn default() -> Self {
        Self {
            temperature: DEFAULT_TEMPERATURE_K,
            wavelength: DEFAULT_WAVELENGTH_M,
            p_cnot: DEFAULT_P_CNOT,
            erasure_epsilon: DEFAULT_ERASURE_EPSILON,
            boltzmann: BOLTZMANN,
            planck: PLANCK,
            light_speed: LIGHT_SPEED,
        }
    }
}

impl EnergyContext {
    pub fn new(temperature: f64, wavelength: f64, p_cnot: f64) -> Result<Self> {
        Self {
            temperature,
            wavelength,
            p_cnot,
            ..Self::default()
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        let range_err = |name, value, range| Err(Error::ParamOutOfRange { name, value, range });
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return range_err("temperature", self.temperature, "(0, inf)");
        }
        if !(self.wavelength > 0.0) {
            return range_err("wavelength", self.wavelength, "(0, inf]");
        }
        if !(self.p_cnot > 0.0 && self.p_cnot <= 1.0) {
            return range_err("p_cnot", self.p_cnot, "(0, 1]");
        }
        if !(self.erasure_epsilon > 0.0 && self.erasure_epsilon < 1.0) {
            return range_err("erasure_epsilon", self.erasure_epsilon, "(0, 1)");
        }
        Ok(self)
    }

    /// `k_B T`
    pub fn thermal_energy(&self) -> f64 {
        self.boltzmann * self.temperature
    }
}

/// `ħω = h c / λ`
pub fn photon_energy(ctx: &EnergyContext) -> f64 {
    ctx.planck * ctx.light_speed / ctx.wavelength
}

/// Erasure with failure allowance ε: `k_B T (ΔS − ln(1−ε))`.
pub fn erasure_cost_ub(ctx: &EnergyContext, delta_s_nats: f64) -> Result<f64> {
    if !(delta_s_nats >= 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "delta_S",
            value: delta_s_nats,
            range: "[0, inf)",
        });
    }
    Ok(ctx.thermal_energy() * (delta_s_nats - (1.0 - ctx.erasure_epsilon).ln()))
}

/// Measurement with classical record: `ΔE_S + k_B T (H − ln(1−ε))`.
pub fn measurement_cost_ub(ctx: &EnergyContext, outcome_entropy_nats: f64, delta_e_system: f64) -> f64 {
    delta_e_system + ctx.thermal_energy() * (outcome_entropy_nats - (1.0 - ctx.erasure_epsilon).ln())
}

/// `⌈log₂ n⌉`
pub fn ceil_log2(n: u32) -> u32 {
    assert!(n > 0);
    u32::BITS - (n - 1).leading_zeros()
}

/// Per-operation upper bounds in joules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLedger {
    pub photon: f64,
    pub landauer_ub: f64,
    pub aux: f64,
    pub cc: f64,
    pub measurement: f64,
    pub randomness: f64,
    pub twirling: f64,
    pub depolarization: f64,
    pub cnot: f64,
    /// Passive optics.
    pub local_unitary: f64,
    pub post_selection: f64,
    pub run_bbpssw: f64,
    pub run_dejmps: f64,
    pub run_p1p2: f64,
}

pub fn build_ledger(ctx: &EnergyContext) -> EnergyLedger {
    let photon = photon_energy(ctx);
    let landauer_ub = ctx.thermal_energy() * (LN_2 - (1.0 - ctx.erasure_epsilon).ln());
    let measurement = measurement_cost_ub(ctx, LN_2, 0.0);
    let aux = photon + landauer_ub;
    let cc = photon + landauer_ub;
    let randomness = measurement + aux;
    let twirling = f64::from(ceil_log2(TWIRL_GROUP_ORDER)) * (randomness + cc);
    let depolarization = f64::from(ceil_log2(DEPOLARIZATION_GROUP_ORDER)) * (randomness + cc);
    let cnot = 2.0 * aux + 2.0 * measurement;
    let core = 2.0 * cnot + 2.0 * measurement + 2.0 * cc;
    EnergyLedger {
        photon,
        landauer_ub,
        aux,
        cc,
        measurement,
        randomness,
        twirling,
        depolarization,
        cnot,
        local_unitary: 0.0,
        post_selection: 0.0,
        run_bbpssw: 2.0 * depolarization + core,
        run_dejmps: core,
        run_p1p2: core,
    }
}

impl EnergyLedger {
    /// Energy of one protocol run on one pair of pairs. Inputs that are not
    /// already Bell diagonal pay for the twirl of both copies.
    pub fn run_cost(&self, kind: ProtocolKind, bell_diagonal_input: bool) -> f64 {
        let base = match kind {
            ProtocolKind::Bbpssw => self.run_bbpssw,
            ProtocolKind::Dejmps => self.run_dejmps,
            ProtocolKind::P1OrP2 => self.run_p1p2,
        };
        if bell_diagonal_input {
            base
        } else {
            base + 2.0 * self.twirling
        }
    }

    /// Named entries in a stable order.
    pub fn entries(&self) -> [(&'static str, f64); 14] {
        [
            ("photon", self.photon),
            ("landauer_ub", self.landauer_ub),
            ("aux", self.aux),
            ("cc", self.cc),
            ("measurement", self.measurement),
            ("randomness", self.randomness),
            ("twirling", self.twirling),
            ("depolarization", self.depolarization),
            ("cnot", self.cnot),
            ("local_unitary", self.local_unitary),
            ("post_selection", self.post_selection),
            ("run_bbpssw", self.run_bbpssw),
            ("run_dejmps", self.run_dejmps),
            ("run_p1p2", self.run_p1p2),
        ]
    }
}

/// Additive `ε · E_max` correction for an ε-approximate output state.
pub fn continuity_correction(epsilon: f64, e_max: f64) -> f64 {
    epsilon * e_max
}
