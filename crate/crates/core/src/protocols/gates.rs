//! Explicit gate matrices for the two-pair oracle. Qubit 0 is the most
//! significant tensor factor.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::qstate::{ComplexMatrix, C64};

fn m2(a: C64, b: C64, c: C64, d: C64) -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![a, b, c, d]).expect("2x2")
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn identity() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn pauli_x() -> ComplexMatrix {
    m2(re(0.0), re(1.0), re(1.0), re(0.0))
}

pub fn pauli_y() -> ComplexMatrix {
    m2(re(0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), re(0.0))
}

pub fn pauli_z() -> ComplexMatrix {
    m2(re(1.0), re(0.0), re(0.0), re(-1.0))
}

pub fn paulis() -> [ComplexMatrix; 4] {
    [identity(), pauli_x(), pauli_y(), pauli_z()]
}

pub fn hadamard() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    m2(re(s), re(s), re(s), re(-s))
}

pub fn phase_s() -> ComplexMatrix {
    m2(re(1.0), re(0.0), re(0.0), C64::new(0.0, 1.0))
}

/// `exp(−i θ X / 2)`
pub fn rx(theta: f64) -> ComplexMatrix {
    let (s, c) = (0.5 * theta).sin_cos();
    m2(re(c), C64::new(0.0, -s), C64::new(0.0, -s), re(c))
}

pub fn conj(u: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(u.rows(), u.cols(), |r, c| u[(r, c)].conj())
}

/// Remove the global phase so equal gates compare equal.
fn canonical_phase(u: &ComplexMatrix) -> ComplexMatrix {
    let pivot = u
        .entries()
        .iter()
        .find(|z| z.norm() > 1e-9)
        .copied()
        .unwrap_or(re(1.0));
    let phase = pivot.conj() / pivot.norm();
    ComplexMatrix::from_fn(u.rows(), u.cols(), |r, c| u[(r, c)] * phase)
}

/// The 24 single-qubit Cliffords modulo global phase, generated from H and S.
pub fn clifford_group() -> Vec<ComplexMatrix> {
    let gens = [hadamard(), phase_s()];
    let mut group = vec![identity()];
    let mut frontier = vec![identity()];
    while let Some(g) = frontier.pop() {
        for h in &gens {
            let cand = canonical_phase(&h.matmul(&g).expect("2x2"));
            if !group.iter().any(|e| e.max_abs_diff(&cand).unwrap() < 1e-9) {
                group.push(cand.clone());
                frontier.push(cand);
            }
        }
    }
    group
}

/// `u` acting on `qubit` of an `n`-qubit register.
pub fn embed(u: &ComplexMatrix, qubit: usize, n: usize) -> ComplexMatrix {
    let id = identity();
    let mut out = ComplexMatrix::identity(1);
    for q in 0..n {
        out = out.kron(if q == qubit { u } else { &id });
    }
    out
}

/// CNOT on an `n`-qubit register as a permutation matrix.
pub fn cnot(control: usize, target: usize, n: usize) -> ComplexMatrix {
    let dim = 1 << n;
    let cbit = 1 << (n - 1 - control);
    let tbit = 1 << (n - 1 - target);
    let mut m = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        let row = if col & cbit != 0 { col ^ tbit } else { col };
        m[(row, col)] = re(1.0);
    }
    m
}
