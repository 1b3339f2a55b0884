//! Channel families, their Choi states, and the closed-form two-way
//! capacities used by the lower bounds.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{check_unit_interval, Error, Result};
use crate::qstate::{
    max_entangled, partial_trace_a, partial_trace_b, ComplexMatrix, DensityMatrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    Depolarizing,
    AmplitudeDamping,
    Erasure,
    /// Bosonic dephasing with a box phase density of width `param · 2π`
    /// centred on zero; `param = 1` is the uniform density.
    BosonicDephasingUniform,
}

impl ChannelKind {
    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::Depolarizing => "depolarizing",
            ChannelKind::AmplitudeDamping => "amplitude-damping",
            ChannelKind::Erasure => "erasure",
            ChannelKind::BosonicDephasingUniform => "dephasing",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "depolarizing" | "depol" => Ok(ChannelKind::Depolarizing),
            "amplitude-damping" | "ad" => Ok(ChannelKind::AmplitudeDamping),
            "erasure" => Ok(ChannelKind::Erasure),
            "dephasing" | "bosonic-dephasing" | "bosonic-dephasing-uniform" => {
                Ok(ChannelKind::BosonicDephasingUniform)
            }
            other => Err(format!(
                "unknown channel '{other}' (expected depolarizing, amplitude-damping, erasure, dephasing)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    kind: ChannelKind,
    param: f64,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, param: f64) -> Result<Self> {
        check_unit_interval("channel parameter", param)?;
        Ok(Self { kind, param })
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn param(&self) -> f64 {
        self.param
    }
}

/// Choi state `(1 ⊗ Φ)(ψ⁺)` together with its bipartition.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiState {
    pub state: DensityMatrix,
    pub dims: (usize, usize),
}

/// `(1−λ) Φ⁺ + λ I/4`
pub fn choi_depolarizing(lambda: f64) -> Result<ChoiState> {
    check_unit_interval("lambda", lambda)?;
    let phi = max_entangled(2)?.to_density();
    let mixed = DensityMatrix::maximally_mixed(4)?;
    Ok(ChoiState {
        state: phi.mix(1.0 - lambda, &mixed)?,
        dims: (2, 2),
    })
}

/// `½(|00⟩⟨00| + (1−p)|11⟩⟨11| + √(1−p)(|00⟩⟨11| + |11⟩⟨00|) + p|10⟩⟨10|)`
pub fn choi_amplitude_damping(p: f64) -> Result<ChoiState> {
    check_unit_interval("p", p)?;
    let mut m = ComplexMatrix::zeros(4, 4);
    let coh = (1.0 - p).sqrt() * 0.5;
    m[(0, 0)] = 0.5.into();
    m[(3, 3)] = (0.5 * (1.0 - p)).into();
    m[(0, 3)] = coh.into();
    m[(3, 0)] = coh.into();
    m[(2, 2)] = (0.5 * p).into();
    Ok(ChoiState {
        state: DensityMatrix::new(m)?,
        dims: (2, 2),
    })
}

/// Depolarizing channel on the second qubit: `(1−λ)ρ + λ ρ_A ⊗ I/2`.
pub fn apply_depolarizing(rho: &DensityMatrix, lambda: f64) -> Result<DensityMatrix> {
    check_unit_interval("lambda", lambda)?;
    let rho_a = partial_trace_b(rho, (2, 2))?;
    let replaced = crate::qstate::tensor(&rho_a, &DensityMatrix::maximally_mixed(2)?);
    rho.mix(1.0 - lambda, &replaced)
}

/// Reduced state on the reference half; the maximally mixed state for every
/// unital-input Choi construction above.
pub fn choi_reference_marginal(choi: &ChoiState) -> Result<DensityMatrix> {
    partial_trace_b(&choi.state, choi.dims)
}

/// Output marginal (on the channel side).
pub fn choi_output_marginal(choi: &ChoiState) -> Result<DensityMatrix> {
    partial_trace_a(&choi.state, choi.dims)
}

/// `Q↔ = 1 − p`
pub fn erasure_two_way_capacity(p: f64) -> Result<f64> {
    check_unit_interval("p", p)?;
    Ok(1.0 - p)
}

pub const MIN_DENSITY_POINTS: usize = 129;
pub const DENSITY_NORM_TOL: f64 = 1e-6;

/// Phase density sampled on a uniform grid over `[−π, π]`, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDensity {
    values: Vec<f64>,
}

impl PhaseDensity {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < MIN_DENSITY_POINTS || values.len().is_multiple_of(2) {
            return Err(Error::InvalidDimension(format!(
                "phase density needs an odd number of at least {MIN_DENSITY_POINTS} points, got {}",
                values.len()
            )));
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v >= 0.0) || !v.is_finite())
        {
            return Err(Error::NegativeDensity { index, value });
        }
        let d = Self { values };
        let total = d.integrate(|p| p);
        if (total - 1.0).abs() > DENSITY_NORM_TOL {
            return Err(Error::DensityNotNormalized(total));
        }
        Ok(d)
    }

    pub fn from_fn(points: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let step = 2.0 * PI / (points.max(2) - 1) as f64;
        Self::new((0..points).map(|i| f(-PI + i as f64 * step)).collect())
    }

    /// Box density of total width `fraction · 2π` centred on 0. Grid points
    /// exactly on an edge carry half the box height, which makes the
    /// Simpson normalization exact when the edges fall on even indices.
    pub fn centered_box(points: usize, fraction: f64) -> Result<Self> {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(Error::ParamOutOfRange {
                name: "box fraction",
                value: fraction,
                range: "(0, 1]",
            });
        }
        if fraction == 1.0 {
            return Self::new(vec![1.0 / (2.0 * PI); points]);
        }
        let half = PI * fraction;
        let height = 1.0 / (2.0 * half);
        let step = 2.0 * PI / (points.max(2) - 1) as f64;
        let mut values: Vec<f64> = (0..points)
            .map(|i| {
                let x = (-PI + i as f64 * step).abs();
                if (x - half).abs() < 1e-9 * step {
                    0.5 * height
                } else if x < half {
                    height
                } else {
                    0.0
                }
            })
            .collect();
        // Edges between grid points leave a small quadrature error.
        let mut raw = Self { values: values.clone() };
        let mass = raw.integrate(|v| v);
        if !(mass > 0.0) {
            return Err(Error::DensityNotNormalized(mass));
        }
        values.iter_mut().for_each(|v| *v /= mass);
        raw.values = values;
        Self::new(raw.values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn step(&self) -> f64 {
        2.0 * PI / (self.values.len() - 1) as f64
    }

    /// Composite Simpson rule of `f(p(φ))` over the grid.
    fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let n = self.values.len();
        let mut acc = 0.0;
        for (i, &v) in self.values.iter().enumerate() {
            let w = if i == 0 || i == n - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += w * f(v);
        }
        acc * self.step() / 3.0
    }

    /// Differential entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        self.integrate(|p| if p > 0.0 { -p * p.log2() } else { 0.0 })
    }
}

/// `Q↔ = log₂(2π) − h(p)`
pub fn dephasing_two_way_capacity(density: &PhaseDensity) -> f64 {
    (2.0 * PI).log2() - density.entropy_bits()
}

/// Grid size used when a dephasing channel is given only by its box width.
pub const DEPHASING_GRID_POINTS: usize = (1 << 16) + 1;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{bell_coeffs_from_density, fidelity_with_pure, partial_transpose, trace_norm};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn depolarizing_choi_examples() {
        let phi = max_entangled(2).unwrap();
        let c0 = choi_depolarizing(0.0).unwrap();
        assert!(c0.state.matrix().max_abs_diff(phi.to_density().matrix()).unwrap() < 1e-15);
        let c1 = choi_depolarizing(1.0).unwrap();
        let quarter = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(c1.state.matrix().max_abs_diff(quarter.matrix()).unwrap() < 1e-15);
        let c = choi_depolarizing(0.4).unwrap();
        assert!(close(fidelity_with_pure(&c.state, &phi).unwrap(), 0.7, 1e-12));
        assert!(choi_depolarizing(1.5).is_err());
        assert!(choi_depolarizing(-0.1).is_err());
    }

    #[test]
    fn amplitude_damping_examples() {
        let phi = max_entangled(2).unwrap().to_density();
        let c0 = choi_amplitude_damping(0.0).unwrap();
        assert!(c0.state.matrix().max_abs_diff(phi.matrix()).unwrap() < 1e-15);
        let c1 = choi_amplitude_damping(1.0).unwrap();
        let want = ComplexMatrix::diagonal(&[0.5, 0.0, 0.5, 0.0]);
        assert!(c1.state.matrix().max_abs_diff(&want).unwrap() < 1e-15);
        let c = choi_amplitude_damping(0.5).unwrap();
        let tn = trace_norm(&partial_transpose(&c.state, c.dims).unwrap()).unwrap();
        assert!(close(tn, 1.5, 1e-9));
        assert!(choi_amplitude_damping(1.01).is_err());
    }

    #[test]
    fn choi_marginals_are_maximally_mixed() {
        let half = DensityMatrix::maximally_mixed(2).unwrap();
        for i in 0..=10 {
            let p = i as f64 / 10.0;
            for choi in [choi_depolarizing(p).unwrap(), choi_amplitude_damping(p).unwrap()] {
                let m = choi_reference_marginal(&choi).unwrap();
                assert!(m.matrix().max_abs_diff(half.matrix()).unwrap() < 1e-10);
                assert!(choi.state.eigenvalues().unwrap()[0] > -1e-10);
            }
        }
    }

    #[test]
    fn apply_depolarizing_examples() {
        let phi = max_entangled(2).unwrap().to_density();
        let same = apply_depolarizing(&phi, 0.0).unwrap();
        assert!(same.matrix().max_abs_diff(phi.matrix()).unwrap() < 1e-15);
        let out = apply_depolarizing(&phi, 0.2).unwrap();
        let c = bell_coeffs_from_density(&out).unwrap().coeffs();
        for (a, b) in c.iter().zip(&[0.85, 0.05, 0.05, 0.05]) {
            assert!(close(*a, *b, 1e-12));
        }
        let full = apply_depolarizing(&phi, 1.0).unwrap();
        let quarter = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(full.matrix().max_abs_diff(quarter.matrix()).unwrap() < 1e-15);
        assert!(apply_depolarizing(&phi, 2.0).is_err());
    }

    #[test]
    fn erasure_capacity_examples() {
        assert_eq!(erasure_two_way_capacity(0.0).unwrap(), 1.0);
        assert_eq!(erasure_two_way_capacity(1.0).unwrap(), 0.0);
        assert!(close(erasure_two_way_capacity(0.3).unwrap(), 0.7, 1e-15));
        assert!(erasure_two_way_capacity(1.3).is_err());
    }

    #[test]
    fn dephasing_capacity_examples() {
        let uniform = PhaseDensity::centered_box(1025, 1.0).unwrap();
        assert!(close(dephasing_two_way_capacity(&uniform), 0.0, 1e-8));

        // Half support: h = log₂ π.
        let half = PhaseDensity::centered_box(4097, 0.5).unwrap();
        assert!(close(dephasing_two_way_capacity(&half), 1.0, 1e-3));

        // Width 2π/1024: h = log₂ w, capacity 10. Edges carry the O(h) Simpson error.
        let narrow = PhaseDensity::centered_box((1 << 20) + 1, 1.0 / 1024.0).unwrap();
        assert!(close(dephasing_two_way_capacity(&narrow), 10.0, 1e-3));
    }

    #[test]
    fn phase_density_validation() {
        assert!(matches!(PhaseDensity::new(vec![0.1; 128]), Err(Error::InvalidDimension(_))));
        assert!(matches!(PhaseDensity::new(vec![0.1; 129]), Err(Error::DensityNotNormalized(_))));
        let mut v = vec![1.0 / (2.0 * PI); 129];
        v[5] = -0.01;
        assert!(matches!(PhaseDensity::new(v), Err(Error::NegativeDensity { index: 5, .. })));
        // Smooth von Mises-like density normalizes under Simpson.
        let raw = PhaseDensity::from_fn(2049, |x| (2.0 * x.cos()).exp());
        assert!(raw.is_err());
        let norm = 2.0 * PI * 2.2795853023360673; // 2π I₀(2)
        let d = PhaseDensity::from_fn(2049, |x| (2.0 * x.cos()).exp() / norm).unwrap();
        let c = dephasing_two_way_capacity(&d);
        assert!(c > 0.0 && c < (2.0 * PI).log2());
    }

    #[test]
    fn channel_names_parse() {
        for k in [
            ChannelKind::Depolarizing,
            ChannelKind::AmplitudeDamping,
            ChannelKind::Erasure,
            ChannelKind::BosonicDephasingUniform,
        ] {
            assert_eq!(k.name().parse::<ChannelKind>().unwrap(), k);
        }
        assert!("bogus".parse::<ChannelKind>().is_err());
        assert!(ChannelSpec::new(ChannelKind::Erasure, 1.5).is_err());
    }
}
