use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ecred_core::energy::{DEFAULT_P_CNOT, DEFAULT_TEMPERATURE_K};
use ecred_core::estimator::{DEFAULT_ATTENUATION_DB_PER_KM, DEFAULT_MAX_STEPS};
use ecred_core::{ChannelKind, ProtocolKind};

pub const DEFAULT_WAVELENGTH_NM: f64 = 1550.0;
pub const DEFAULT_F_DES: f64 = 0.9;

#[derive(Debug, Parser)]
#[command(name = "ecred", version, about = "Energy cost of entanglement distribution", args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the primitive-operation energy ledger.
    Constants(ConstantsArgs),
    /// Lower bound on the energy per ebit for a channel family.
    LowerBound(LowerBoundArgs),
    /// Distillation-based upper bound for a depolarizing channel.
    UpperBound(UpperBoundArgs),
    /// One protocol round on a Bell-diagonal state.
    Step(StepArgs),
    /// Upper bounds over a parameter grid.
    Sweep(SweepArgs),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Constants(a) => &a.common,
            Command::LowerBound(a) => &a.common,
            Command::UpperBound(a) => &a.common,
            Command::Step(a) => &a.common,
            Command::Sweep(a) => &a.common,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Temperature in kelvin.
    #[arg(long)]
    pub temp_k: Option<f64>,
    /// Photon wavelength in nanometres.
    #[arg(long)]
    pub wavelength_nm: Option<f64>,
    /// Success probability of one heralded CNOT.
    #[arg(long)]
    pub p_cnot: Option<f64>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Flat key=value file with default flag values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Common {
    pub fn temp_k(&self) -> f64 {
        self.temp_k.unwrap_or(DEFAULT_TEMPERATURE_K)
    }

    pub fn wavelength_nm(&self) -> f64 {
        self.wavelength_nm.unwrap_or(DEFAULT_WAVELENGTH_NM)
    }

    pub fn p_cnot(&self) -> f64 {
        self.p_cnot.unwrap_or(DEFAULT_P_CNOT)
    }
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelArg {
    Erasure,
    Depolarizing,
    AmplitudeDamping,
    Dephasing,
}

impl From<ChannelArg> for ChannelKind {
    fn from(c: ChannelArg) -> Self {
        match c {
            ChannelArg::Erasure => ChannelKind::Erasure,
            ChannelArg::Depolarizing => ChannelKind::Depolarizing,
            ChannelArg::AmplitudeDamping => ChannelKind::AmplitudeDamping,
            ChannelArg::Dephasing => ChannelKind::BosonicDephasingUniform,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolArg {
    Bbpssw,
    Dejmps,
    P1p2,
}

impl From<ProtocolArg> for ProtocolKind {
    fn from(p: ProtocolArg) -> Self {
        match p {
            ProtocolArg::Bbpssw => ProtocolKind::Bbpssw,
            ProtocolArg::Dejmps => ProtocolKind::Dejmps,
            ProtocolArg::P1p2 => ProtocolKind::P1OrP2,
        }
    }
}

/// Inclusive grid `start, start + step, ..., stop`.
#[derive(Debug, Clone, Args)]
pub struct Grid {
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct LowerBoundArgs {
    #[arg(long, value_enum)]
    pub channel: ChannelArg,
    /// Single channel parameter; use the grid flags for a sweep.
    #[arg(long, conflicts_with_all = ["start", "stop", "step"])]
    pub param: Option<f64>,
    #[command(flatten)]
    pub grid: Grid,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct EstimatorArgs {
    /// Target output fidelity.
    #[arg(long, default_value_t = DEFAULT_F_DES)]
    pub f_des: f64,
    #[arg(long, default_value_t = DEFAULT_ATTENUATION_DB_PER_KM)]
    pub attenuation_db_per_km: f64,
    /// Number of memory passes per round.
    #[arg(long, default_value_t = 1)]
    pub memory_exponent: u32,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: usize,
    /// Add (1 - F_des) times the photon energy.
    #[arg(long)]
    pub continuity_correction: bool,
}

#[derive(Debug, Args)]
pub struct UpperBoundArgs {
    #[arg(long, value_enum, default_value = "dejmps")]
    pub protocol: ProtocolArg,
    /// Depolarizing parameter of the channel.
    #[arg(long)]
    pub lambda: f64,
    /// Fiber memory length in km.
    #[arg(long, default_value_t = 0.0)]
    pub distance_km: f64,
    #[command(flatten)]
    pub est: EstimatorArgs,
    /// Also print one row per distillation round.
    #[arg(long)]
    pub detail: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct StepArgs {
    #[arg(long, value_enum)]
    pub protocol: ProtocolArg,
    /// Bell coefficients in the order phi+,psi+,phi-,psi-.
    #[arg(long, value_delimiter = ',', conflicts_with = "fidelity", required_unless_present = "fidelity")]
    pub coeffs: Option<Vec<f64>>,
    /// Isotropic input of this fidelity.
    #[arg(long)]
    pub fidelity: Option<f64>,
    /// Cross-check against the explicit two-pair simulation.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVariable {
    Lambda,
    DistanceKm,
    FDes,
}

impl SweepVariable {
    pub fn column(self) -> &'static str {
        match self {
            SweepVariable::Lambda => "lambda",
            SweepVariable::DistanceKm => "distance_km",
            SweepVariable::FDes => "f_des",
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub variable: SweepVariable,
    #[arg(long)]
    pub start: f64,
    #[arg(long)]
    pub stop: f64,
    #[arg(long)]
    pub step: f64,
    /// Protocols to evaluate at every grid point.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "bbpssw,dejmps,p1p2")]
    pub protocols: Vec<ProtocolArg>,
    /// Memory lengths in km; ignored when sweeping distance.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub distances: Vec<f64>,
    /// Channel parameter when it is not the swept variable.
    #[arg(long, default_value_t = 0.2)]
    pub lambda: f64,
    #[command(flatten)]
    pub est: EstimatorArgs,
    #[command(flatten)]
    pub common: Common,
}
