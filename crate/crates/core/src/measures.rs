//! Steady-state performance measures of first- and second-order consensus
//! networks.
//!
//! Every formula consumes the output Laplacian `L_Q` directly; the output
//! matrix `C_Q` with `L_Q = C_Qᵀ C_Q` is never formed.

use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_connected, WeightedGraph};
use crate::spectral::{centering, decompose, graph_spectrum, LaplacianMatrix, LaplacianSpectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    /// `L_Q = M_n`.
    Centering,
    /// Laplacian of an explicit (possibly disconnected or empty) graph.
    ExplicitGraph,
}

/// Output graph `Q`, represented by its Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputGraph {
    laplacian: DMatrix<f64>,
    kind: OutputKind,
}

impl OutputGraph {
    pub fn centering(n: usize) -> Self {
        Self { laplacian: centering(n), kind: OutputKind::Centering }
    }

    /// Unmeasured channel.
    pub fn zero(n: usize) -> Self {
        Self { laplacian: DMatrix::zeros(n, n), kind: OutputKind::ExplicitGraph }
    }

    pub fn from_graph(q: &WeightedGraph) -> Self {
        Self {
            laplacian: LaplacianMatrix::from_graph(q).matrix().clone(),
            kind: OutputKind::ExplicitGraph,
        }
    }

    /// Validates zero row sums, symmetry and positive semidefiniteness.
    pub fn from_laplacian(m: DMatrix<f64>) -> Result<Self> {
        let l = LaplacianMatrix::from_matrix(m)?;
        let s = decompose(&l)?;
        if s.eigenvalues()[0] < -s.zero_tolerance() {
            return Err(Error::NotLaplacian("output Laplacian is not positive semidefinite".into()));
        }
        Ok(Self { laplacian: l.matrix().clone(), kind: OutputKind::ExplicitGraph })
    }

    pub fn n(&self) -> usize {
        self.laplacian.nrows()
    }

    pub fn kind(&self) -> OutputKind {
        self.kind
    }

    pub fn laplacian(&self) -> &DMatrix<f64> {
        &self.laplacian
    }

    /// `W(Q) = Tr(L_Q) / 2`.
    pub fn weight_sum(&self) -> f64 {
        0.5 * self.laplacian.trace()
    }

    /// Symmetric square root `L_Q^{1/2}`, usable as an output map since only
    /// `yᵀy = xᵀ L_Q x` matters.
    pub fn output_map(&self) -> Result<DMatrix<f64>> {
        let s = decompose(&LaplacianMatrix::from_matrix(self.laplacian.clone())?)?;
        Ok(s.sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SocType {
    /// Velocity damping `-βI`.
    Type1,
    /// Velocity damping `-βL_G`.
    Type2,
}

impl FromStr for SocType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "type1" | "type-1" => Ok(SocType::Type1),
            "2" | "type2" | "type-2" => Ok(SocType::Type2),
            _ => Err(Error::Json(format!("unknown SOC type `{s}`"))),
        }
    }
}

/// Second-order consensus network with position and velocity outputs.
#[derive(Debug, Clone, PartialEq)]
pub struct SocSystem {
    pub coupling: WeightedGraph,
    pub soc_type: SocType,
    pub beta: f64,
    pub q_x: OutputGraph,
    pub q_v: OutputGraph,
}

impl SocSystem {
    pub fn new(
        coupling: WeightedGraph,
        soc_type: SocType,
        beta: f64,
        q_x: OutputGraph,
        q_v: OutputGraph,
    ) -> Result<Self> {
        check_beta(beta)?;
        if !is_connected(&coupling) {
            return Err(Error::Disconnected);
        }
        for q in [&q_x, &q_v] {
            if q.n() != coupling.n() {
                return Err(Error::DimensionMismatch { expected: coupling.n(), got: q.n() });
            }
        }
        Ok(Self { coupling, soc_type, beta, q_x, q_v })
    }

    /// Centering position output, unmeasured velocity.
    pub fn position_centering(coupling: WeightedGraph, soc_type: SocType, beta: f64) -> Result<Self> {
        let n = coupling.n();
        Self::new(coupling, soc_type, beta, OutputGraph::centering(n), OutputGraph::zero(n))
    }

    /// Unmeasured position, centering velocity output.
    pub fn velocity_centering(coupling: WeightedGraph, soc_type: SocType, beta: f64) -> Result<Self> {
        let n = coupling.n();
        Self::new(coupling, soc_type, beta, OutputGraph::zero(n), OutputGraph::centering(n))
    }
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidBeta(beta))
    }
}

/// Position, velocity and total measures of an SOC network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SocMeasure {
    pub rho_x: f64,
    pub rho_v: f64,
    pub rho_total: f64,
}

/// `ρ_ss(L_G; L_Q) = ½ Tr(L_Q L_G†)`.
pub fn foc_measure(g: &WeightedGraph, q: &OutputGraph) -> Result<f64> {
    if q.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), got: q.n() });
    }
    if g.n() == 1 {
        return Ok(0.0);
    }
    let s = graph_spectrum(g)?;
    foc_measure_from_spectrum(&s, q)
}

pub fn foc_measure_from_spectrum(s: &LaplacianSpectrum, q: &OutputGraph) -> Result<f64> {
    Ok(0.5 * s.weighted_trace(q.laplacian(), 1)?)
}

/// Centering-output FOC measure on a graph, `½ ζ(1)`.
pub fn foc_centering(g: &WeightedGraph) -> Result<f64> {
    foc_measure(g, &OutputGraph::centering(g.n()))
}

pub fn soc_measure(s: &SocSystem) -> Result<SocMeasure> {
    let n = s.coupling.n();
    if n == 1 {
        return Ok(SocMeasure { rho_x: 0.0, rho_v: 0.0, rho_total: 0.0 });
    }
    let spectrum = graph_spectrum(&s.coupling)?;
    let scale = 1.0 / (2.0 * s.beta);
    let (rho_x, rho_v) = match s.soc_type {
        SocType::Type1 => (
            scale * spectrum.weighted_trace(s.q_x.laplacian(), 1)?,
            scale * s.q_v.laplacian().trace(),
        ),
        SocType::Type2 => (
            scale * spectrum.weighted_trace(s.q_x.laplacian(), 2)?,
            scale * spectrum.weighted_trace(s.q_v.laplacian(), 1)?,
        ),
    };
    Ok(SocMeasure { rho_x, rho_v, rho_total: rho_x + rho_v })
}

/// Steady-state flock kinetic-energy measure `ρ_ss(A⁽²⁾; 0 ⊕ M_n) = ζ(1) / (2β)`.
pub fn formation_energy(s: &SocSystem) -> Result<f64> {
    if s.soc_type != SocType::Type2 {
        return Err(Error::WrongSocType { expected: "type 2" });
    }
    if s.coupling.n() == 1 {
        return Ok(0.0);
    }
    let spectrum = graph_spectrum(&s.coupling)?;
    Ok(spectrum.zeta(1)? / (2.0 * s.beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random::{random_connected, random_spanning_subgraph};
    use crate::graph::Family;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fam(f: Family, n: usize) -> WeightedGraph {
        f.build(&[n]).unwrap()
    }

    #[test]
    fn foc_examples() {
        assert_abs_diff_eq!(foc_centering(&fam(Family::Complete, 5)).unwrap(), 0.4, epsilon = 1e-13);
        assert_abs_diff_eq!(foc_centering(&fam(Family::Path, 5)).unwrap(), 2.0, epsilon = 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..15 {
            let g = random_connected(&mut rng, n, 0.3, 0.2..=3.0);
            let q = OutputGraph::from_graph(&g);
            assert_abs_diff_eq!(foc_measure(&g, &q).unwrap(), (n - 1) as f64 / 2.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn foc_rejects_bad_inputs() {
        let split = WeightedGraph::unweighted(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(foc_centering(&split), Err(Error::Disconnected));
        let p3 = fam(Family::Path, 3);
        assert!(matches!(
            foc_measure(&p3, &OutputGraph::centering(4)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn single_node_is_zero() {
        let g = WeightedGraph::unweighted(1, []).unwrap();
        assert_eq!(foc_centering(&g).unwrap(), 0.0);
        let s = SocSystem::position_centering(g, SocType::Type2, 1.0).unwrap();
        assert_eq!(soc_measure(&s).unwrap().rho_total, 0.0);
        assert_eq!(formation_energy(&s).unwrap(), 0.0);
    }

    #[test]
    fn soc_examples() {
        let p3 = SocSystem::position_centering(fam(Family::Path, 3), SocType::Type2, 1.0).unwrap();
        let m = soc_measure(&p3).unwrap();
        assert_abs_diff_eq!(m.rho_x, 5.0 / 9.0, epsilon = 1e-13);
        assert_eq!(m.rho_v, 0.0);

        for n in 3..12 {
            let s = SocSystem::position_centering(fam(Family::Star, n), SocType::Type2, 1.0).unwrap();
            let nf = n as f64;
            let expected = nf / 2.0 + 1.0 / (2.0 * nf * nf) - 1.0;
            assert_abs_diff_eq!(soc_measure(&s).unwrap().rho_x, expected, epsilon = 1e-11);
        }

        // type 1 velocity channel depends only on W(Q_v)
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let q_graph = random_connected(&mut rng, 6, 0.4, 0.5..=1.5);
        let q_v = OutputGraph::from_graph(&q_graph);
        for beta in [0.5, 1.0, 3.0] {
            for coupling in [fam(Family::Path, 6), fam(Family::Complete, 6), fam(Family::Cycle, 6)] {
                let s = SocSystem::new(coupling, SocType::Type1, beta, OutputGraph::zero(6), q_v.clone())
                    .unwrap();
                let m = soc_measure(&s).unwrap();
                assert_abs_diff_eq!(m.rho_v, q_graph.weight_sum() / beta, epsilon = 1e-12);
                assert_eq!(m.rho_x, 0.0);
            }
        }
    }

    #[test]
    fn formation_energy_examples() {
        let k4 = SocSystem::velocity_centering(fam(Family::Complete, 4), SocType::Type2, 1.0).unwrap();
        assert_abs_diff_eq!(formation_energy(&k4).unwrap(), 0.375, epsilon = 1e-13);
        let p5 = SocSystem::velocity_centering(fam(Family::Path, 5), SocType::Type2, 1.0).unwrap();
        let e1 = formation_energy(&p5).unwrap();
        assert_abs_diff_eq!(e1, 2.0, epsilon = 1e-12);
        let p5b = SocSystem::velocity_centering(fam(Family::Path, 5), SocType::Type2, 2.0).unwrap();
        assert_eq!(formation_energy(&p5b).unwrap(), e1 / 2.0);
        let t1 = SocSystem::velocity_centering(fam(Family::Path, 5), SocType::Type1, 1.0).unwrap();
        assert!(matches!(formation_energy(&t1), Err(Error::WrongSocType { .. })));
        // agrees with the general velocity channel
        assert_abs_diff_eq!(soc_measure(&p5).unwrap().rho_v, e1, epsilon = 1e-12);
    }

    #[test]
    fn soc_system_validation() {
        let p3 = fam(Family::Path, 3);
        assert!(matches!(
            SocSystem::position_centering(p3.clone(), SocType::Type1, 0.0),
            Err(Error::InvalidBeta(_))
        ));
        assert!(matches!(
            SocSystem::new(p3, SocType::Type1, 1.0, OutputGraph::zero(3), OutputGraph::zero(2)),
            Err(Error::DimensionMismatch { .. })
        ));
        let split = WeightedGraph::unweighted(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            SocSystem::position_centering(split, SocType::Type1, 1.0),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn output_laplacian_validation() {
        let c = centering(4);
        let q = OutputGraph::from_laplacian(c.clone()).unwrap();
        assert_eq!(q.laplacian(), &c);
        // zero row sums but indefinite
        let bad = DMatrix::from_row_slice(2, 2, &[-1.0, 1.0, 1.0, -1.0]);
        assert!(OutputGraph::from_laplacian(bad).is_err());
        let m = q.output_map().unwrap();
        assert!((&m * &m - &c).norm() < 1e-12);
    }

    #[test]
    fn identities_and_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for case in 0..60 {
            let n = 2 + case % 14;
            let g = random_connected(&mut rng, n, 0.3, 0.3..=3.0);
            let s = graph_spectrum(&g).unwrap();
            let r = s.effective_resistance().unwrap();
            let rho = foc_centering(&g).unwrap();
            assert!((rho - 0.5 * s.zeta(1).unwrap()).abs() < 1e-10);
            assert!((rho - r.total() / (2.0 * n as f64)).abs() < 1e-10 * rho.max(1.0));

            let q_graph = random_connected(&mut rng, n, 0.3, 0.3..=3.0);
            let q = OutputGraph::from_graph(&q_graph);
            let beta = 0.25 + case as f64 * 0.1;
            let t1 = SocSystem::new(g.clone(), SocType::Type1, beta, q.clone(), OutputGraph::zero(n)).unwrap();
            let foc_q = foc_measure(&g, &q).unwrap();
            assert!((soc_measure(&t1).unwrap().rho_x - foc_q / beta).abs() < 1e-12 * foc_q.max(1.0));
            let t2 = SocSystem::velocity_centering(g.clone(), SocType::Type2, beta).unwrap();
            assert!((soc_measure(&t2).unwrap().rho_v - rho / beta).abs() < 1e-12 * rho.max(1.0));

            let c = 0.5 + case as f64 * 0.05;
            let scaled = foc_centering(&g.scaled(c).unwrap()).unwrap();
            assert!((scaled - rho / c).abs() < 1e-10 * rho.max(1.0));
        }
    }

    #[test]
    fn removing_edges_never_helps() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for case in 0..200 {
            let n = 3 + case % 10;
            let g = random_connected(&mut rng, n, 0.4, 0.5..=2.0);
            let sub = random_spanning_subgraph(&mut rng, &g, 0.5);
            let foc = |h: &WeightedGraph| foc_centering(h).unwrap();
            let pos = |h: &WeightedGraph| {
                soc_measure(&SocSystem::position_centering(h.clone(), SocType::Type2, 1.0).unwrap())
                    .unwrap()
                    .rho_x
            };
            for f in [&foc as &dyn Fn(&WeightedGraph) -> f64, &pos] {
                let (sup, below) = (f(&g), f(&sub));
                if sub.m() == g.m() {
                    assert!((sup - below).abs() <= 1e-10 * sup.max(1.0));
                } else {
                    assert!(below > sup + 1e-10 * sup.max(1.0));
                }
            }
        }
    }
}
