//! Recurrence pair-distillation protocols on Bell-diagonal states.
//!
//! The closed-form maps here are validated against [`oracle`], which runs
//! the full gate sequence on the 16-dimensional state of two pairs.

pub mod gates;
pub mod oracle;

use std::fmt;
use std::str::FromStr;

use crate::error::{check_unit_interval, Error, Result};
use crate::qstate::{bell_coeffs_from_density, BellDiagonalState, DensityMatrix};

/// Fidelity must exceed `1/2 + DISTILLABLE_TOL`.
pub const DISTILLABLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProtocolKind {
    Bbpssw,
    Dejmps,
    P1OrP2,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 3] = [ProtocolKind::Bbpssw, ProtocolKind::Dejmps, ProtocolKind::P1OrP2];

    pub fn name(self) -> &'static str {
        match self {
            ProtocolKind::Bbpssw => "bbpssw",
            ProtocolKind::Dejmps => "dejmps",
            ProtocolKind::P1OrP2 => "p1p2",
        }
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProtocolKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "bbpssw" => Ok(ProtocolKind::Bbpssw),
            "dejmps" => Ok(ProtocolKind::Dejmps),
            "p1p2" | "p1orp2" => Ok(ProtocolKind::P1OrP2),
            other => Err(format!("unknown protocol '{other}' (expected bbpssw, dejmps, p1p2)")),
        }
    }
}

/// Which routine of P1-or-P2 ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Bilateral CNOT; removes parity (bit-flip) errors.
    P1,
    /// Fourier-conjugated CNOT; removes phase errors.
    P2,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::P1 => "P1",
            Branch::P2 => "P2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    pub next_state: BellDiagonalState,
    /// Protocol-intrinsic success probability of one run.
    pub success_prob: f64,
    /// Overlap of `next_state` with Φ⁺.
    pub fidelity: f64,
    pub branch: Option<Branch>,
}

impl StepOutcome {
    fn from_state(next_state: BellDiagonalState, success_prob: f64, branch: Option<Branch>) -> Self {
        Self {
            next_state,
            success_prob,
            fidelity: next_state.fidelity(),
            branch,
        }
    }
}

fn require_distillable(f: f64) -> Result<()> {
    if f > 0.5 + DISTILLABLE_TOL {
        Ok(())
    } else {
        Err(Error::NotDistillable(f))
    }
}

/// One BBPSSW round on two isotropic copies of fidelity `f`.
pub fn bbpssw_step(f: f64) -> Result<StepOutcome> {
    check_unit_interval("fidelity", f)?;
    require_distillable(f)?;
    let r = (1.0 - f) / 3.0;
    let p_succ = f * f + 2.0 * f * (1.0 - f) / 3.0 + 5.0 * r * r;
    let f_next = ((f * f + r * r) / p_succ).min(1.0);
    Ok(StepOutcome::from_state(
        BellDiagonalState::isotropic(f_next)?,
        p_succ,
        None,
    ))
}

/// Coefficients reordered as `p₁ = max`, the other three descending, as
/// `(Φ⁺, Ψ⁺, Φ⁻, Ψ⁻)`.
pub fn dejmps_order(state: &BellDiagonalState) -> BellDiagonalState {
    let mut c = state.coeffs();
    let lead = (0..4).fold(0, |best, i| if c[i] > c[best] { i } else { best });
    c.swap(0, lead);
    c[1..].sort_by(|a, b| b.total_cmp(a));
    BellDiagonalState::from_unnormalized(c)
}

/// One DEJMPS round. The output is expressed in the frame reached after the
/// local reordering and ±π/2 X rotations, canonical order (Φ⁺, Ψ⁺, Φ⁻, Ψ⁻).
pub fn dejmps_step(state: &BellDiagonalState) -> Result<StepOutcome> {
    let [p1, p2, p3, p4] = dejmps_order(state).coeffs();
    require_distillable(p1)?;
    let n = (p1 + p4).powi(2) + (p2 + p3).powi(2);
    let q1 = (p1 * p1 + p4 * p4) / n;
    let q2 = (p2 * p2 + p3 * p3) / n;
    let q3 = 2.0 * p2 * p3 / n;
    let q4 = 2.0 * p1 * p4 / n;
    // q3 multiplies Ψ⁻ and q4 multiplies Φ⁻.
    Ok(StepOutcome::from_state(
        BellDiagonalState::from_unnormalized([q1, q2, q4, q3]),
        n,
        None,
    ))
}

pub fn p1p2_branch(alpha: &BellDiagonalState) -> Branch {
    if alpha.alpha(0, 0) + alpha.alpha(1, 0) <= alpha.alpha(0, 0) + alpha.alpha(0, 1) {
        Branch::P1
    } else {
        Branch::P2
    }
}

/// One P1-or-P2 round on `α_{kj}` (index `2k + j`).
pub fn p1p2_step(alpha: &BellDiagonalState) -> Result<StepOutcome> {
    let c = alpha.coeffs();
    if c.iter().all(|x| (x - c[0]).abs() <= DISTILLABLE_TOL) {
        return Err(Error::NotDistillable(c[0]));
    }
    let a = |k: usize, j: usize| alpha.alpha(k, j);
    let branch = p1p2_branch(alpha);
    let mut next = [0.0; 4];
    let p_succ = match branch {
        Branch::P1 => {
            let p: f64 = (0..2).map(|j| (a(0, j) + a(1, j)).powi(2)).sum();
            for k in 0..2 {
                for j in 0..2 {
                    next[2 * k + j] = (0..2).map(|k1| a(k1, j) * a(k1 ^ k, j)).sum::<f64>() / p;
                }
            }
            p
        }
        Branch::P2 => {
            let p: f64 = (0..2).map(|k| (a(k, 0) + a(k, 1)).powi(2)).sum();
            for k in 0..2 {
                for j in 0..2 {
                    next[2 * k + j] = (0..2).map(|j1| a(k, j1) * a(k, j1 ^ j)).sum::<f64>() / p;
                }
            }
            p
        }
    };
    Ok(StepOutcome::from_state(
        BellDiagonalState::from_unnormalized(next),
        p_succ,
        Some(branch),
    ))
}

/// One round of `kind` on two copies of `state`. BBPSSW first depolarizes
/// to the isotropic form.
pub fn step(kind: ProtocolKind, state: &BellDiagonalState) -> Result<StepOutcome> {
    match kind {
        ProtocolKind::Bbpssw => bbpssw_step(depolarize_to_isotropic(state).fidelity()),
        ProtocolKind::Dejmps => dejmps_step(state),
        ProtocolKind::P1OrP2 => p1p2_step(state),
    }
}

/// Ledger entry charged by a pre-processing map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LedgerTag {
    Twirling,
    Depolarization,
}

impl LedgerTag {
    pub fn name(self) -> &'static str {
        match self {
            LedgerTag::Twirling => "twirling",
            LedgerTag::Depolarization => "depolarization",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preprocessed {
    pub state: BellDiagonalState,
    pub tag: LedgerTag,
}

/// Bilateral Clifford twirl; keeps the Bell-basis diagonal.
pub fn twirl_to_bell_diagonal(rho: &DensityMatrix) -> Result<Preprocessed> {
    Ok(Preprocessed {
        state: bell_coeffs_from_density(rho)?,
        tag: LedgerTag::Twirling,
    })
}

/// `(F, (1−F)/3, (1−F)/3, (1−F)/3)`
pub fn depolarize_to_isotropic(state: &BellDiagonalState) -> BellDiagonalState {
    let f = state.fidelity();
    let r = (1.0 - f) / 3.0;
    BellDiagonalState::from_unnormalized([f, r, r, r])
}
