//! Resistive power loss of the linearized swing-equation network.
//!
//! Lines carry conductance `g_e` and susceptance `b_e`; `α_e = g_e / b_e`.
//! The expected total loss is `Tr(L_b† L_g) / (2β)`, which equals the
//! `ν`-weighted mean of the `α_e` scaled by `(n-1)/(2β)`, where
//! `ν_e = b_e r_e` uses effective resistances of the susceptance graph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_connected, Family, WeightedGraph};
use crate::measures::check_beta;
use crate::spectral::graph_spectrum;

pub use crate::measures::formation_energy;

const AGREEMENT: f64 = 1e-9;

/// One transmission line in the power-network file format.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub i: usize,
    pub j: usize,
    pub g: Option<f64>,
    pub b: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Damping {
    Uniform(f64),
    PerGenerator(Vec<f64>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct NetworkFile {
    n: usize,
    beta: Damping,
    lines: Vec<Line>,
}

/// Shared topology with per-edge conductance and susceptance, and a common
/// generator damping `β`. Edge parameters are stored in the topology's
/// canonical edge order.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerNetwork {
    topology: WeightedGraph,
    g: Vec<f64>,
    b: Vec<f64>,
    beta: f64,
}

impl PowerNetwork {
    pub fn new(n: usize, beta: f64, lines: &[Line]) -> Result<Self> {
        check_beta(beta)?;
        let topology = WeightedGraph::unweighted(n, lines.iter().map(|l| (l.i, l.j)))?;
        let mut g = vec![0.0; topology.m()];
        let mut b = vec![0.0; topology.m()];
        for line in lines {
            let (i, j) = (line.i.min(line.j), line.i.max(line.j));
            let k = topology
                .edges()
                .binary_search_by(|e| (e.i, e.j).cmp(&(i, j)))
                .expect("edge present in topology");
            let (gk, bk) = match (line.g, line.b) {
                (Some(gk), Some(bk)) => (gk, bk),
                _ => return Err(Error::MissingEdgeParameter(i, j)),
            };
            for (label, v) in [("conductance", gk), ("susceptance", bk)] {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::InvalidLineParameter { i, j, reason: format!("{label} {v} must be positive and finite") });
                }
            }
            g[k] = gk;
            b[k] = bk;
        }
        Ok(Self { topology, g, b, beta })
    }

    /// Parses `{"n": .., "beta": .., "lines": [{"i","j","g","b"}, ..]}`.
    /// A per-generator `beta` array is accepted only if all entries agree.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: NetworkFile = serde_json::from_str(text)?;
        let beta = match file.beta {
            Damping::Uniform(b) => b,
            Damping::PerGenerator(v) => {
                let first = *v.first().ok_or(Error::HeterogeneousDamping)?;
                if v.iter().any(|&b| b != first) {
                    return Err(Error::HeterogeneousDamping);
                }
                first
            }
        };
        Self::new(file.n, beta, &file.lines)
    }

    pub fn to_json(&self) -> String {
        let lines = self
            .topology
            .edges()
            .iter()
            .zip(self.g.iter().zip(&self.b))
            .map(|(e, (&g, &b))| Line { i: e.i, j: e.j, g: Some(g), b: Some(b) })
            .collect();
        let file = NetworkFile { n: self.n(), beta: Damping::Uniform(self.beta), lines };
        serde_json::to_string(&file).expect("network serializes")
    }

    pub fn n(&self) -> usize {
        self.topology.n()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn topology(&self) -> &WeightedGraph {
        &self.topology
    }

    pub fn conductances(&self) -> &[f64] {
        &self.g
    }

    pub fn susceptances(&self) -> &[f64] {
        &self.b
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.g.iter().zip(&self.b).map(|(g, b)| g / b).collect()
    }

    fn weighted(&self, w: &[f64]) -> WeightedGraph {
        let edges = self.topology.edges().iter().zip(w).map(|(e, &w)| (e.i, e.j, w));
        WeightedGraph::new(self.n(), edges).expect("parameters validated")
    }

    /// Conductance graph `G_g`.
    pub fn conductance_graph(&self) -> WeightedGraph {
        self.weighted(&self.g)
    }

    /// Susceptance graph `G_b`.
    pub fn susceptance_graph(&self) -> WeightedGraph {
        self.weighted(&self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeLoss {
    pub i: usize,
    pub j: usize,
    pub g: f64,
    pub b: f64,
    pub alpha: f64,
    pub nu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LossReport {
    pub loss: f64,
    pub alpha_bar: f64,
    pub lower: f64,
    pub upper: f64,
    pub edges: Vec<EdgeLoss>,
}

impl LossReport {
    pub fn nu_sum(&self) -> f64 {
        self.edges.iter().map(|e| e.nu).sum()
    }
}

pub fn power_loss(pn: &PowerNetwork) -> Result<LossReport> {
    let n = pn.n();
    if !is_connected(&pn.topology) {
        return Err(Error::Disconnected);
    }
    let scale = (n as f64 - 1.0) / (2.0 * pn.beta);
    if n == 1 {
        return Ok(LossReport { loss: 0.0, alpha_bar: 0.0, lower: 0.0, upper: 0.0, edges: Vec::new() });
    }
    let gb = pn.susceptance_graph();
    let lg = crate::spectral::LaplacianMatrix::from_graph(&pn.conductance_graph());
    let pinv = graph_spectrum(&gb)?.pseudo_inverse()?;
    let trace = (&pinv * lg.matrix()).trace() / (2.0 * pn.beta);

    let alphas = pn.alphas();
    let edges: Vec<EdgeLoss> = gb
        .edges()
        .iter()
        .zip(pn.g.iter().zip(&alphas))
        .map(|(e, (&g, &alpha))| {
            let r = pinv[(e.i, e.i)] + pinv[(e.j, e.j)] - 2.0 * pinv[(e.i, e.j)];
            EdgeLoss { i: e.i, j: e.j, g, b: e.w, alpha, nu: r * e.w }
        })
        .collect();
    let alpha_bar = edges.iter().map(|e| e.nu * e.alpha).sum::<f64>() / (n as f64 - 1.0);
    let weighted_mean = alpha_bar * scale;
    if (trace - weighted_mean).abs() > AGREEMENT * trace.abs().max(1.0) {
        return Err(Error::LossMismatch { trace, weighted_mean });
    }
    let (lo, hi) = alphas
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &a| (lo.min(a), hi.max(a)));
    Ok(LossReport { loss: trace, alpha_bar, lower: lo * scale, upper: hi * scale, edges })
}

/// `Σ α_e · (n-1) / (2βm)` for edge-transitive topologies with identical
/// susceptances, cross-checked against [`power_loss`].
pub fn edge_transitive_loss(pn: &PowerNetwork, family: Family) -> Result<f64> {
    if !matches!(family, Family::Cycle | Family::Complete | Family::CompleteBipartite | Family::Star) {
        return Err(Error::NotDeclaredEdgeTransitive(family.name().to_string()));
    }
    let b0 = pn.b.first().copied().unwrap_or(1.0);
    if pn.b.iter().any(|&b| (b - b0).abs() > 1e-12 * b0) {
        return Err(Error::UnequalSusceptance);
    }
    let n = pn.n() as f64;
    let m = pn.topology.m() as f64;
    let formula = pn.alphas().iter().sum::<f64>() * (n - 1.0) / (2.0 * pn.beta * m);
    let trace = power_loss(pn)?.loss;
    if (formula - trace).abs() > AGREEMENT * trace.abs().max(1.0) {
        return Err(Error::EdgeTransitiveMismatch { formula, trace });
    }
    Ok(formula)
}

/// `Σ α_e / (2β)` on tree topologies.
pub fn tree_loss(pn: &PowerNetwork) -> Result<f64> {
    if pn.topology.m() + 1 != pn.n() || !is_connected(&pn.topology) {
        return Err(Error::NotATree);
    }
    Ok(pn.alphas().iter().sum::<f64>() / (2.0 * pn.beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn network(g: &WeightedGraph, beta: f64, params: impl Fn(usize) -> (f64, f64)) -> PowerNetwork {
        let lines: Vec<Line> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let (gk, bk) = params(k);
                Line { i: e.i, j: e.j, g: Some(gk), b: Some(bk) }
            })
            .collect();
        PowerNetwork::new(g.n(), beta, &lines).unwrap()
    }

    #[test]
    fn tree_example() {
        let path = Family::Path.build(&[4]).unwrap();
        let alphas = [0.1, 0.2, 0.3];
        let bs = [1.0, 5.0, 0.25];
        let pn = network(&path, 1.0, |k| (alphas[k] * bs[k], bs[k]));
        let report = power_loss(&pn).unwrap();
        assert_abs_diff_eq!(report.loss, 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(tree_loss(&pn).unwrap(), 0.3, epsilon = 1e-15);
        for e in &report.edges {
            assert_abs_diff_eq!(e.nu, 1.0, epsilon = 1e-12);
        }
        assert!(report.lower <= report.loss && report.loss <= report.upper);
    }

    #[test]
    fn cycle_example() {
        let c4 = Family::Cycle.build(&[4]).unwrap();
        let gs = [0.3, 1.1, 0.7, 2.0];
        let pn = network(&c4, 1.0, |k| (gs[k], 1.5));
        let expected = gs.iter().map(|g| g / 1.5).sum::<f64>() / 8.0 * 3.0;
        assert_abs_diff_eq!(power_loss(&pn).unwrap().loss, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(edge_transitive_loss(&pn, Family::Cycle).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn uniform_alpha_is_topology_independent() {
        for g in [
            Family::Complete.build(&[6]).unwrap(),
            Family::Path.build(&[6]).unwrap(),
            Family::StarLikeClique.build(&[6, 3]).unwrap(),
        ] {
            let pn = network(&g, 2.0, |k| (0.4 * (1.0 + k as f64), 1.0 + k as f64));
            assert_abs_diff_eq!(power_loss(&pn).unwrap().loss, 0.4 * 5.0 / 4.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn edge_transitive_declarations() {
        let k4 = Family::Complete.build(&[4]).unwrap();
        let pn = network(&k4, 1.0, |_| (0.6, 2.0));
        assert_abs_diff_eq!(edge_transitive_loss(&pn, Family::Complete).unwrap(), 0.3 * 3.0 / 2.0, epsilon = 1e-12);
        assert_eq!(
            edge_transitive_loss(&pn, Family::Path),
            Err(Error::NotDeclaredEdgeTransitive("path".into()))
        );
        let uneven = network(&k4, 1.0, |k| (0.6, 1.0 + k as f64));
        assert_eq!(edge_transitive_loss(&uneven, Family::Complete), Err(Error::UnequalSusceptance));
        // a diamond misdeclared as a cycle is caught by the trace cross-check
        let diamond = WeightedGraph::unweighted(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let misdeclared = network(&diamond, 1.0, |k| ([0.1, 0.1, 5.0, 0.1, 0.1][k], 1.0));
        assert!(matches!(
            edge_transitive_loss(&misdeclared, Family::Cycle),
            Err(Error::EdgeTransitiveMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let text = r#"{"n": 3, "beta": 2.0, "lines": [{"i": 0, "j": 1, "g": 0.5, "b": 1.0}, {"i": 2, "j": 1, "g": 1.0, "b": 4.0}]}"#;
        let pn = PowerNetwork::from_json(text).unwrap();
        assert_eq!(PowerNetwork::from_json(&pn.to_json()).unwrap(), pn);
        assert_abs_diff_eq!(power_loss(&pn).unwrap().loss, (0.5 + 0.25) / 4.0, epsilon = 1e-12);

        let missing = r#"{"n": 2, "beta": 1.0, "lines": [{"i": 0, "j": 1, "g": 0.5}]}"#;
        assert_eq!(PowerNetwork::from_json(missing), Err(Error::MissingEdgeParameter(0, 1)));
        let hetero = r#"{"n": 2, "beta": [1.0, 2.0], "lines": [{"i": 0, "j": 1, "g": 0.5, "b": 1.0}]}"#;
        assert_eq!(PowerNetwork::from_json(hetero), Err(Error::HeterogeneousDamping));
        let same = r#"{"n": 2, "beta": [2.0, 2.0], "lines": [{"i": 0, "j": 1, "g": 0.5, "b": 1.0}]}"#;
        assert_eq!(PowerNetwork::from_json(same).unwrap().beta(), 2.0);
        let negative = r#"{"n": 2, "beta": 1.0, "lines": [{"i": 0, "j": 1, "g": -0.5, "b": 1.0}]}"#;
        assert!(matches!(PowerNetwork::from_json(negative), Err(Error::InvalidLineParameter { .. })));
        let split = r#"{"n": 4, "beta": 1.0, "lines": [{"i": 0, "j": 1, "g": 1, "b": 1}, {"i": 2, "j": 3, "g": 1, "b": 1}]}"#;
        assert_eq!(power_loss(&PowerNetwork::from_json(split).unwrap()), Err(Error::Disconnected));
    }
}
