use std::f64::consts::FRAC_1_SQRT_2;

use super::matrix::{ComplexMatrix, C64};
use super::DensityMatrix;
use crate::error::{Error, Result};

pub const BELL_SUM_TOL: f64 = 1e-12;

/// Index of each Bell state in the canonical coefficient order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bell {
    PhiPlus = 0,
    PsiPlus = 1,
    PhiMinus = 2,
    PsiMinus = 3,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PsiPlus, Bell::PhiMinus, Bell::PsiMinus];

    /// `|psi_{mn}> = 2^{-1/2} sum_r (-1)^{m r} |r>|r xor n>`, with
    /// `(m, n)` = (phase bit, parity bit) and index `2m + n`.
    pub fn from_bits(phase: u8, parity: u8) -> Bell {
        Bell::ALL[usize::from(2 * (phase & 1) + (parity & 1))]
    }

    pub fn phase_bit(self) -> u8 {
        (self as u8) >> 1
    }

    pub fn parity_bit(self) -> u8 {
        (self as u8) & 1
    }

    pub fn amplitudes(self) -> [C64; 4] {
        let (m, n) = (self.phase_bit() as usize, self.parity_bit() as usize);
        let mut amps = [C64::new(0.0, 0.0); 4];
        for r in 0..2 {
            let sign = if m * r == 1 { -1.0 } else { 1.0 };
            amps[2 * r + (r ^ n)] = C64::new(sign * FRAC_1_SQRT_2, 0.0);
        }
        amps
    }

    pub fn projector(self) -> ComplexMatrix {
        let a = self.amplitudes();
        ComplexMatrix::outer(&a, &a)
    }
}

/// Two-qubit state diagonal in the Bell basis, coefficients ordered
/// (Φ⁺, Ψ⁺, Φ⁻, Ψ⁻). In the `α_{kj}` notation the index is `2k + j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalState {
    coeffs: [f64; 4],
}

impl BellDiagonalState {
    pub fn new(coeffs: [f64; 4]) -> Result<Self> {
        for (i, &c) in coeffs.iter().enumerate() {
            if !(0.0..=1.0).contains(&c) {
                return Err(Error::ParamOutOfRange {
                    name: ["p_phi_plus", "p_psi_plus", "p_phi_minus", "p_psi_minus"][i],
                    value: c,
                    range: "[0, 1]",
                });
            }
        }
        let sum: f64 = coeffs.iter().sum();
        if (sum - 1.0).abs() > BELL_SUM_TOL {
            return Err(Error::NotUnitTrace((sum - 1.0).abs()));
        }
        Ok(Self { coeffs })
    }

    /// Renormalizes and clamps rounding noise; used for protocol outputs
    /// computed from already-valid inputs.
    pub(crate) fn from_unnormalized(raw: [f64; 4]) -> Self {
        let clamped = raw.map(|c| c.max(0.0));
        let sum: f64 = clamped.iter().sum();
        Self {
            coeffs: clamped.map(|c| c / sum),
        }
    }

    /// `F Φ⁺ + (1-F)/3 (Ψ⁺ + Φ⁻ + Ψ⁻)`
    pub fn isotropic(fidelity: f64) -> Result<Self> {
        crate::error::check_unit_interval("fidelity", fidelity)?;
        let r = (1.0 - fidelity) / 3.0;
        Ok(Self {
            coeffs: [fidelity, r, r, r],
        })
    }

    pub fn coeffs(&self) -> [f64; 4] {
        self.coeffs
    }

    pub fn coeff(&self, b: Bell) -> f64 {
        self.coeffs[b as usize]
    }

    /// `α_{kj}`
    pub fn alpha(&self, k: usize, j: usize) -> f64 {
        self.coeffs[2 * k + j]
    }

    pub fn fidelity(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn to_density(&self) -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        for b in Bell::ALL {
            m = m.add(&b.projector().scale(self.coeff(b))).expect("4x4");
        }
        DensityMatrix::new_unchecked(m)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_labels() {
        let s = FRAC_1_SQRT_2;
        let re = |b: Bell| b.amplitudes().map(|z| z.re);
        assert_eq!(re(Bell::PhiPlus), [s, 0.0, 0.0, s]);
        assert_eq!(re(Bell::PsiPlus), [0.0, s, s, 0.0]);
        assert_eq!(re(Bell::PhiMinus), [s, 0.0, 0.0, -s]);
        assert_eq!(re(Bell::PsiMinus), [0.0, s, -s, 0.0]);
        assert_eq!(Bell::from_bits(1, 1), Bell::PsiMinus);
        assert_eq!(Bell::from_bits(0, 1), Bell::PsiPlus);
    }

    #[test]
    fn rejects_bad_coefficients() {
        assert!(BellDiagonalState::new([0.5, 0.5, 0.1, 0.0]).is_err());
        assert!(BellDiagonalState::new([1.2, -0.2, 0.0, 0.0]).is_err());
        assert!(BellDiagonalState::new([0.25; 4]).is_ok());
    }
}
