//! Independent checks of the closed-form measures and bounds: Lyapunov
//! Gramians, Monte-Carlo simulation and exhaustive graph enumeration.

pub mod audit;
pub mod enumerate;
pub mod lyapunov;
pub mod montecarlo;

pub use audit::{exhaustive_audit, AuditConfig, AuditReport, AuditRow};
pub use enumerate::{enumerate_connected, graph_from_mask, EnumerationStream, GraphFilter, MAX_N};
pub use lyapunov::{lyapunov_measure, solve_lyapunov, LyapunovMeasure, LyapunovSolution};
pub use montecarlo::{monte_carlo_measure, MonteCarloEstimate, SimConfig};

use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::measures::{foc_measure, soc_measure, OutputGraph, SocSystem};

/// A consensus network together with its performance output.
#[derive(Debug, Clone, PartialEq)]
pub enum ConsensusSystem {
    Foc { coupling: WeightedGraph, output: OutputGraph },
    Soc(SocSystem),
}

impl ConsensusSystem {
    pub fn foc_centering(coupling: WeightedGraph) -> Self {
        let output = OutputGraph::centering(coupling.n());
        ConsensusSystem::Foc { coupling, output }
    }

    pub fn coupling(&self) -> &WeightedGraph {
        match self {
            ConsensusSystem::Foc { coupling, .. } => coupling,
            ConsensusSystem::Soc(s) => &s.coupling,
        }
    }

    /// Spectral closed form of the total measure.
    pub fn closed_form(&self) -> Result<f64> {
        match self {
            ConsensusSystem::Foc { coupling, output } => foc_measure(coupling, output),
            ConsensusSystem::Soc(s) => Ok(soc_measure(s)?.rho_total),
        }
    }
}
