//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classical real Jacobi rotation to the resulting
//! real symmetric 2x2 block. Sweeps run over all `p < q` pairs until the
//! off-diagonal Frobenius norm drops below `OFF_DIAGONAL_TOL` (scaled by the
//! matrix norm when that exceeds one).

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 100;
pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `i` is the eigenvector for `values[i]`.
    pub vectors: ComplexMatrix,
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Rotate rows/columns `p`, `q` of `a` by the 2x2 unitary block `u`
/// (`a <- U^dagger a U`) and accumulate `v <- v U`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, u: [[C64; 2]; 2]) {
    let n = a.rows();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * u[0][0] + akq * u[1][0];
        a[(k, q)] = akp * u[0][1] + akq * u[1][1];
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = u[0][0].conj() * apk + u[1][0].conj() * aqk;
        a[(q, k)] = u[0][1].conj() * apk + u[1][1].conj() * aqk;
    }
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * u[0][0] + vkq * u[1][0];
        v[(k, q)] = vkp * u[0][1] + vkq * u[1][1];
    }
}

pub fn eigh(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            actual: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let herr = m.hermiticity_error();
    if herr > HERMITIAN_TOL {
        return Err(Error::NotHermitian(herr));
    }
    let n = m.rows();
    // Symmetrize so that rounding noise in the input does not leak into the rotations.
    let mut a = ComplexMatrix::from_fn(n, n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let tol = OFF_DIAGONAL_TOL * a.frobenius_norm().max(1.0);

    let mut converged = off_diagonal_norm(&a) < tol;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag < f64::MIN_POSITIVE {
                    continue;
                }
                let phase_conj = (apq / mag).conj();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let u = [
                    [C64::new(c, 0.0), C64::new(s, 0.0)],
                    [-phase_conj * s, phase_conj * c],
                ];
                rotate(&mut a, &mut v, p, q, u);
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
            }
        }
        converged = off_diagonal_norm(&a) < tol;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(EigenDecomposition { values, vectors })
}

pub fn eigvalsh(m: &ComplexMatrix) -> Result<Vec<f64>> {
    eigh(m).map(|d| d.values)
}
