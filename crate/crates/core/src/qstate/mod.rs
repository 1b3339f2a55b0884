//! Finite-dimensional state algebra: density operators, pure states, the
//! Bell basis, partial transpose, trace norm and distances.

mod bell;
pub mod eigen;
mod matrix;

pub use bell::{Bell, BellDiagonalState};
pub use eigen::{eigh, eigvalsh, EigenDecomposition};
pub use matrix::{ComplexMatrix, C64};

use crate::error::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = -1e-10;
pub const NORM_TOL: f64 = 1e-12;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidDimension(format!(
                "{}x{} density matrix",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let herr = matrix.hermiticity_error();
        if herr >= HERMITIAN_TOL {
            return Err(Error::NotHermitian(herr));
        }
        let terr = (matrix.trace() - C64::new(1.0, 0.0)).norm();
        if terr >= TRACE_TOL {
            return Err(Error::NotUnitTrace(terr));
        }
        let min = eigvalsh(&matrix)?[0];
        if min <= PSD_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { matrix })
    }

    /// For constructions that preserve the invariants by algebra
    /// (convex mixtures, tensor products, unitary conjugation).
    pub(crate) fn new_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.hermiticity_error() < 1e-9);
        Self { matrix }
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension("0".into()));
        }
        Ok(Self {
            matrix: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigvalsh(&self.matrix)
    }

    /// Convex combination `w self + (1 - w) other`.
    pub fn mix(&self, w: f64, other: &Self) -> Result<Self> {
        crate::error::check_unit_interval("weight", w)?;
        let m = self.matrix.scale(w).add(&other.matrix.scale(1.0 - w))?;
        Ok(Self::new_unchecked(m))
    }

    /// `U rho U^dagger` for a unitary `U` (not re-validated).
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        Ok(Self::new_unchecked(self.matrix.conjugate_by(u)?))
    }
}

/// Unit-norm state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension("empty state vector".into()));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() >= NORM_TOL {
            return Err(Error::NotNormalized((norm - 1.0).abs()));
        }
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::new_unchecked(ComplexMatrix::outer(&self.amplitudes, &self.amplitudes))
    }
}

/// `ψ⁺_d = d^{-1/2} Σ_i |ii>`
pub fn max_entangled(d: usize) -> Result<PureState> {
    if d < 2 {
        return Err(Error::InvalidDimension(format!(
            "maximally entangled state needs d >= 2, got {d}"
        )));
    }
    let amp = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut amplitudes = vec![C64::new(0.0, 0.0); d * d];
    for i in 0..d {
        amplitudes[i * d + i] = amp;
    }
    PureState::new(amplitudes)
}

pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::new_unchecked(a.matrix.kron(&b.matrix))
}

fn check_bipartite(dim: usize, (da, db): (usize, usize)) -> Result<()> {
    if da == 0 || db == 0 || da * db != dim {
        return Err(Error::DimensionMismatch {
            expected: format!("{dim} = dA x dB"),
            actual: format!("{da} x {db}"),
        });
    }
    Ok(())
}

/// Transpose on the second tensor factor.
pub fn partial_transpose(rho: &DensityMatrix, dims: (usize, usize)) -> Result<ComplexMatrix> {
    check_bipartite(rho.dim(), dims)?;
    let db = dims.1;
    let m = &rho.matrix;
    Ok(ComplexMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let (a1, b1) = (r / db, r % db);
        let (a2, b2) = (c / db, c % db);
        m[(a1 * db + b2, a2 * db + b1)]
    }))
}

/// Trace over the second factor.
pub fn partial_trace_b(rho: &DensityMatrix, dims: (usize, usize)) -> Result<DensityMatrix> {
    check_bipartite(rho.dim(), dims)?;
    let (da, db) = dims;
    let m = &rho.matrix;
    let out = ComplexMatrix::from_fn(da, da, |r, c| {
        (0..db).map(|k| m[(r * db + k, c * db + k)]).sum()
    });
    Ok(DensityMatrix::new_unchecked(out))
}

/// Trace over the first factor.
pub fn partial_trace_a(rho: &DensityMatrix, dims: (usize, usize)) -> Result<DensityMatrix> {
    check_bipartite(rho.dim(), dims)?;
    let (da, db) = dims;
    let m = &rho.matrix;
    let out = ComplexMatrix::from_fn(db, db, |r, c| {
        (0..da).map(|k| m[(k * db + r, k * db + c)]).sum()
    });
    Ok(DensityMatrix::new_unchecked(out))
}

/// `‖M‖₁ = Σ |λ_i|` for Hermitian `M`.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(eigvalsh(m)?.iter().map(|l| l.abs()).sum())
}

/// `<ψ|ρ|ψ>`
pub fn fidelity_with_pure(rho: &DensityMatrix, psi: &PureState) -> Result<f64> {
    if rho.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim().to_string(),
            actual: psi.dim().to_string(),
        });
    }
    let a = psi.amplitudes();
    let m = rho.matrix();
    let mut f = C64::new(0.0, 0.0);
    for r in 0..a.len() {
        for c in 0..a.len() {
            f += a[r].conj() * m[(r, c)] * a[c];
        }
    }
    Ok(f.re.clamp(0.0, 1.0))
}

/// `½ ‖a − b‖₁`
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    let diff = a.matrix().sub(b.matrix())?;
    Ok((0.5 * trace_norm(&diff)?).clamp(0.0, 1.0))
}

/// Diagonal of a two-qubit state in the Bell basis (the Bell twirl).
pub fn bell_coeffs_from_density(rho: &DensityMatrix) -> Result<BellDiagonalState> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: "4".into(),
            actual: rho.dim().to_string(),
        });
    }
    let psi = |b: Bell| PureState {
        amplitudes: b.amplitudes().to_vec(),
    };
    let mut raw = [0.0; 4];
    for b in Bell::ALL {
        raw[b as usize] = fidelity_with_pure(rho, &psi(b))?;
    }
    Ok(BellDiagonalState::from_unnormalized(raw))
}
