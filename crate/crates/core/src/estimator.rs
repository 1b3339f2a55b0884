//! Forward-backward upper bound on the energy per distilled ebit.
//!
//! The forward phase follows the fidelity of the surviving pair through
//! repeated successful protocol rounds. The backward phase picks, from the
//! last round down, how many pairs must enter each round so that a Chernoff
//! bound keeps the per-round failure probability below η.

use crate::energy::{build_ledger, continuity_correction, photon_energy, EnergyContext};
use crate::error::{Error, Result};
use crate::protocols::{step, ProtocolKind};
use crate::qstate::BellDiagonalState;

pub const DEFAULT_ATTENUATION_DB_PER_KM: f64 = 0.18;
pub const DEFAULT_MAX_STEPS: usize = 64;
/// Smallest fidelity gain per round before the path is declared stalled.
pub const STALL_TOL: f64 = 1e-12;
/// Largest copy count the backward phase will consider.
pub const MAX_COPIES: u64 = 1 << 40;

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    pub protocol: ProtocolKind,
    /// Depolarizing parameter of the channel.
    pub lambda: f64,
    pub f_des: f64,
    pub ctx: EnergyContext,
    pub distance_km: f64,
    pub attenuation_db_per_km: f64,
    pub memory_exposure_exponent: u32,
    pub max_steps: usize,
    /// Add `(1 − F_des) · ħω` to the result.
    pub continuity_correction: bool,
}

impl EstimatorConfig {
    pub fn new(protocol: ProtocolKind, lambda: f64, f_des: f64) -> Self {
        Self {
            protocol,
            lambda,
            f_des,
            ctx: EnergyContext::default(),
            distance_km: 0.0,
            attenuation_db_per_km: DEFAULT_ATTENUATION_DB_PER_KM,
            memory_exposure_exponent: 1,
            max_steps: DEFAULT_MAX_STEPS,
            continuity_correction: false,
        }
    }

    pub fn input_fidelity(&self) -> f64 {
        1.0 - 0.75 * self.lambda
    }

    pub fn validate(&self) -> Result<()> {
        crate::error::check_unit_interval("lambda", self.lambda)?;
        if !(self.f_des > 0.5 && self.f_des < 1.0) {
            return Err(Error::ParamOutOfRange {
                name: "f_des",
                value: self.f_des,
                range: "(0.5, 1)",
            });
        }
        if !(self.distance_km >= 0.0 && self.distance_km.is_finite()) {
            return Err(Error::ParamOutOfRange {
                name: "distance_km",
                value: self.distance_km,
                range: "[0, inf)",
            });
        }
        if !(self.attenuation_db_per_km >= 0.0 && self.attenuation_db_per_km.is_finite()) {
            return Err(Error::ParamOutOfRange {
                name: "attenuation_db_per_km",
                value: self.attenuation_db_per_km,
                range: "[0, inf)",
            });
        }
        if self.memory_exposure_exponent == 0 {
            return Err(Error::ParamOutOfRange {
                name: "memory_exposure_exponent",
                value: 0.0,
                range: "[1, inf)",
            });
        }
        self.ctx.validated().map(|_| ())
    }
}

/// One forward round: the fidelity entering it and its effective success
/// probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathStep {
    pub fidelity: f64,
    pub success_prob: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForwardPath {
    pub steps: Vec<PathStep>,
    pub f_target: f64,
}

impl ForwardPath {
    pub fn k_steps(&self) -> usize {
        self.steps.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CopySchedule {
    /// Pairs entering each round, `n_1..n_K`.
    pub n: Vec<u64>,
    /// `δ_k = 1 − n_{k+1} / (n_k p_k / 2)`
    pub delta: Vec<f64>,
    pub runs_total: u64,
    pub eta: f64,
    pub t_eta: f64,
}

impl CopySchedule {
    /// Pairs sent through the channel. With no rounds this is the single
    /// output pair.
    pub fn n1(&self) -> u64 {
        self.n.first().copied().unwrap_or(1)
    }
}

/// Photon survival after `distance_km` of fiber storage.
pub fn memory_survival(distance_km: f64, attenuation_db_per_km: f64, exponent: u32) -> Result<f64> {
    if !(distance_km >= 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "distance_km",
            value: distance_km,
            range: "[0, inf)",
        });
    }
    let once = 10f64.powf(-attenuation_db_per_km * distance_km / 10.0);
    Ok(once.powi(exponent as i32))
}

pub fn forward_phase(cfg: &EstimatorConfig) -> Result<ForwardPath> {
    cfg.validate()?;
    let f_in = cfg.input_fidelity();
    if f_in > cfg.f_des {
        return Ok(ForwardPath {
            steps: Vec::new(),
            f_target: f_in,
        });
    }
    if f_in <= 0.5 + crate::protocols::DISTILLABLE_TOL {
        return Err(Error::NotDistillable(f_in));
    }
    let survival = memory_survival(
        cfg.distance_km,
        cfg.attenuation_db_per_km,
        cfg.memory_exposure_exponent,
    )?;
    let overhead = cfg.ctx.p_cnot * cfg.ctx.p_cnot * survival;

    let mut state = BellDiagonalState::isotropic(f_in)?;
    let mut steps = Vec::new();
    while state.fidelity() <= cfg.f_des {
        if steps.len() >= cfg.max_steps {
            return Err(Error::CapExceeded(cfg.max_steps));
        }
        let f = state.fidelity();
        let out = step(cfg.protocol, &state)?;
        if out.fidelity - f < STALL_TOL {
            return Err(Error::Stalled {
                fidelity: f,
                target: cfg.f_des,
                steps: steps.len(),
            });
        }
        steps.push(PathStep {
            fidelity: f,
            success_prob: out.success_prob * overhead,
        });
        state = out.next_state;
    }
    Ok(ForwardPath {
        steps,
        f_target: state.fidelity(),
    })
}

/// Per-round failure budget η with `(1 − η)^K = (F_des − ½)/(F_target − ½)`.
pub fn failure_budget(f_des: f64, f_target: f64, k_steps: usize) -> Result<f64> {
    if !(0.5 < f_des && f_des < f_target && f_target <= 1.0) || k_steps == 0 {
        return Err(Error::ParamOutOfRange {
            name: "f_des",
            value: f_des,
            range: "(0.5, f_target) with f_target <= 1 and at least one step",
        });
    }
    let ratio = (f_des - 0.5) / (f_target - 0.5);
    Ok(1.0 - ratio.powf(1.0 / k_steps as f64))
}

/// Chernoff bound `exp(−δ² μ / 2)` on the chance that fewer than `next`
/// of the `n/2` runs succeed.
pub fn chernoff_tail(n: u64, next: u64, p: f64) -> f64 {
    let mu = n as f64 * p / 2.0;
    let delta = 1.0 - next as f64 / mu;
    (-delta * delta * mu / 2.0).exp()
}

/// Whether `n` pairs are enough to feed `next` pairs into the following
/// round with failure at most `e^{−t}`.
pub fn copies_sufficient(n: u64, next: u64, p: f64, t: f64) -> bool {
    if !n.is_multiple_of(2) || n < 2 {
        return false;
    }
    let n = n as f64;
    let m = next as f64;
    let mu = n * p / 2.0;
    let delta = 1.0 - m / mu;
    let quad = mu * mu - n * p * (m + t) + m * m;
    quad >= 0.0 && delta > 0.0 && delta < 1.0
}

fn smallest_copies(next: u64, p: f64, t: f64, step: usize) -> Result<u64> {
    let infeasible = Error::InfeasibleSchedule {
        step,
        limit: MAX_COPIES,
    };
    let m = next as f64;
    let root = 2.0 * (m + t + (t * t + 2.0 * m * t).sqrt()) / p;
    if !root.is_finite() || root > MAX_COPIES as f64 {
        return Err(infeasible);
    }
    let mut n = (root.ceil() as u64).max(2);
    n += n % 2;
    while n > 2 && copies_sufficient(n - 2, next, p, t) {
        n -= 2;
    }
    while !copies_sufficient(n, next, p, t) {
        n += 2;
        if n > MAX_COPIES {
            return Err(infeasible);
        }
    }
    Ok(n)
}

pub fn backward_phase(path: &ForwardPath, eta: f64) -> Result<CopySchedule> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "eta",
            value: eta,
            range: "(0, 1)",
        });
    }
    if path.steps.is_empty() {
        return Err(Error::InvalidDimension("empty forward path".into()));
    }
    let t = -eta.ln();
    let k = path.steps.len();
    let mut n = vec![0u64; k];
    let mut delta = vec![0.0; k];
    let mut next = 1u64;
    for i in (0..k).rev() {
        let p = path.steps[i].success_prob;
        n[i] = smallest_copies(next, p, t, i + 1)?;
        delta[i] = 1.0 - next as f64 / (n[i] as f64 * p / 2.0);
        next = n[i];
    }
    let runs_total = n.iter().map(|x| x / 2).sum();
    Ok(CopySchedule {
        n,
        delta,
        runs_total,
        eta,
        t_eta: t,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UpperBound {
    /// Joules per ebit.
    pub value: f64,
    pub schedule: CopySchedule,
    pub path: ForwardPath,
    pub run_cost: f64,
}

pub fn upper_bound_ecred(cfg: &EstimatorConfig) -> Result<UpperBound> {
    let path = forward_phase(cfg)?;
    let ledger = build_ledger(&cfg.ctx);
    let run_cost = ledger.run_cost(cfg.protocol, true);
    let photon = photon_energy(&cfg.ctx);
    let correction = if cfg.continuity_correction {
        continuity_correction(1.0 - cfg.f_des, photon)
    } else {
        0.0
    };
    if path.steps.is_empty() {
        let schedule = CopySchedule {
            n: Vec::new(),
            delta: Vec::new(),
            runs_total: 0,
            eta: 0.0,
            t_eta: f64::INFINITY,
        };
        return Ok(UpperBound {
            value: correction,
            schedule,
            path,
            run_cost,
        });
    }
    let eta = failure_budget(cfg.f_des, path.f_target, path.k_steps())?;
    let schedule = backward_phase(&path, eta)?;
    let n1 = schedule.n1() as f64;
    let total = 2.0 * n1 * photon + run_cost * schedule.runs_total as f64 - 2.0 * photon;
    // log2(d_out) = 1 for a qubit pair.
    Ok(UpperBound {
        value: total + correction,
        schedule,
        path,
        run_cost,
    })
}
