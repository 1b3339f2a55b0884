//! Brute-force two-pair simulation of one distillation round.
//!
//! Register layout is `A1 B1 A2 B2`: pair 1 (qubits 0, 1) is the source and
//! pair 2 (qubits 2, 3) the target. Twirls and rotations are applied as
//! explicit unitary averages, the bilateral CNOT as a permutation, and the
//! target pair is projected on matching computational-basis outcomes.

use super::gates::{self, clifford_group, cnot, conj, embed, paulis, rx};
use super::{dejmps_order, p1p2_branch, Branch, ProtocolKind, StepOutcome};
use crate::error::{Error, Result};
use crate::qstate::{
    bell_coeffs_from_density, partial_trace_b, tensor, ComplexMatrix, DensityMatrix,
};

const QUBITS: usize = 4;
const SOURCE_A: usize = 0;
const SOURCE_B: usize = 1;
const TARGET_A: usize = 2;
const TARGET_B: usize = 3;

#[derive(Debug, Clone)]
pub struct OracleRun {
    pub outcome: StepOutcome,
    pub failure_prob: f64,
    /// Post-selected, renormalized source pair.
    pub source_state: DensityMatrix,
}

/// Average of `(U ⊗ U*) ρ (U ⊗ U*)†` over `group`.
fn bilateral_average(rho: &DensityMatrix, group: &[ComplexMatrix]) -> Result<DensityMatrix> {
    let mut acc = ComplexMatrix::zeros(4, 4);
    for u in group {
        let w = u.kron(&conj(u));
        acc = acc.add(&rho.matrix().conjugate_by(&w)?)?;
    }
    Ok(DensityMatrix::new_unchecked(acc.scale(1.0 / group.len() as f64)))
}

/// Bell-diagonal projection via the four bilateral Paulis.
pub fn pauli_twirl(rho: &DensityMatrix) -> Result<DensityMatrix> {
    bilateral_average(rho, &paulis())
}

/// Isotropic projection via the 24 bilateral Cliffords.
pub fn clifford_twirl(rho: &DensityMatrix) -> Result<DensityMatrix> {
    bilateral_average(rho, &clifford_group())
}

/// Local unitary `(P C) ⊗ C*` that puts the largest Bell coefficient on Φ⁺
/// and the rest in descending order.
fn reorder_unitary(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    let target = dejmps_order(&bell_coeffs_from_density(rho)?);
    for c in clifford_group() {
        for p in paulis() {
            let w = p.matmul(&c)?.kron(&conj(&c));
            let moved = bell_coeffs_from_density(&rho.evolve(&w)?)?;
            if moved.max_abs_diff(&target) < 1e-9 {
                return Ok(w);
            }
        }
    }
    Err(Error::CrossCheck("no local unitary realizes the Bell reordering".into()))
}

fn apply(sigma: &ComplexMatrix, u: &ComplexMatrix) -> Result<ComplexMatrix> {
    sigma.conjugate_by(u)
}

/// Projector onto `A2 = B2` in the computational basis.
fn matching_flags_projector() -> ComplexMatrix {
    let dim = 1 << QUBITS;
    let mut diag = vec![0.0; dim];
    for (i, d) in diag.iter_mut().enumerate() {
        let a2 = (i >> (QUBITS - 1 - TARGET_A)) & 1;
        let b2 = (i >> (QUBITS - 1 - TARGET_B)) & 1;
        if a2 == b2 {
            *d = 1.0;
        }
    }
    ComplexMatrix::diagonal(&diag)
}

pub fn oracle_run(rho_pair: &DensityMatrix, kind: ProtocolKind) -> Result<OracleRun> {
    if rho_pair.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: "4".into(),
            actual: rho_pair.dim().to_string(),
        });
    }
    let mut branch = None;
    let mut pre = ComplexMatrix::identity(1 << QUBITS);
    let mut post = ComplexMatrix::identity(1 << QUBITS);

    let copy = match kind {
        ProtocolKind::Bbpssw => clifford_twirl(rho_pair)?,
        ProtocolKind::Dejmps => {
            let bd = pauli_twirl(rho_pair)?;
            let sorted = bd.evolve(&reorder_unitary(&bd)?)?;
            let rot = rx(std::f64::consts::FRAC_PI_2).kron(&rx(-std::f64::consts::FRAC_PI_2));
            sorted.evolve(&rot)?
        }
        ProtocolKind::P1OrP2 => {
            let bd = pauli_twirl(rho_pair)?;
            let b = p1p2_branch(&bell_coeffs_from_density(&bd)?);
            if b == Branch::P2 {
                let h = gates::hadamard();
                let h4 = h.kron(&h).kron(&h).kron(&h);
                pre = h4;
                post = embed(&h, SOURCE_A, QUBITS).matmul(&embed(&h, SOURCE_B, QUBITS))?;
            }
            branch = Some(b);
            bd
        }
    };

    let mut sigma = tensor(&copy, &copy).into_matrix();
    sigma = apply(&sigma, &pre)?;
    let bilateral_cnot = cnot(SOURCE_A, TARGET_A, QUBITS).matmul(&cnot(SOURCE_B, TARGET_B, QUBITS))?;
    sigma = apply(&sigma, &bilateral_cnot)?;
    sigma = apply(&sigma, &post)?;

    let proj = matching_flags_projector();
    let kept = proj.matmul(&sigma)?.matmul(&proj)?;
    let success_prob = kept.trace().re;
    let failure_prob = (sigma.trace() - kept.trace()).re;
    if success_prob <= 0.0 {
        return Err(Error::NotDistillable(0.0));
    }
    let joint = DensityMatrix::new_unchecked(kept.scale(1.0 / success_prob));
    let source_state = partial_trace_b(&joint, (4, 4))?;
    let next_state = bell_coeffs_from_density(&source_state)?;
    Ok(OracleRun {
        outcome: StepOutcome {
            next_state,
            success_prob,
            fidelity: next_state.fidelity(),
            branch,
        },
        failure_prob,
        source_state,
    })
}

pub fn oracle_step(rho_pair: &DensityMatrix, kind: ProtocolKind) -> Result<StepOutcome> {
    oracle_run(rho_pair, kind).map(|r| r.outcome)
}
