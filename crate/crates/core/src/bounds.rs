//! Fundamental limits and sparsity tradeoffs for consensus performance
//! measures, evaluated as self-contained [`BoundReport`]s.
//!
//! Bounds that depend only on `n` are plain arithmetic. Bounds on a concrete
//! graph go through [`GraphFacts`], which computes the spectrum and the
//! combinatorial statistics once so that many bounds can be checked cheaply
//! (the exhaustive audits evaluate millions of graphs this way).

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{bipartition, graph_stats, sparsity_measures, Family, GraphStats, Sparsity, WeightedGraph};
use crate::measures::{check_beta, foc_centering, OutputKind, SocSystem, SocType};
use crate::spectral::{graph_spectrum, LaplacianMatrix};

pub const DEFAULT_SLACK: f64 = 1e-9;

/// Outcome of checking one bound against a measured value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    #[serde(serialize_with = "finite_or_null")]
    pub lower: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub upper: f64,
    pub measured: f64,
    pub satisfied: bool,
    pub tight_at: Option<String>,
    #[serde(skip)]
    pub slack_tolerance: f64,
}

fn finite_or_null<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

impl BoundReport {
    pub fn new(name: impl Into<String>, lower: f64, upper: f64, measured: f64) -> Self {
        let mut report = Self {
            name: name.into(),
            lower,
            upper,
            measured,
            satisfied: false,
            tight_at: None,
            slack_tolerance: DEFAULT_SLACK,
        };
        report.recheck();
        report
    }

    pub fn tight_at(mut self, note: impl Into<String>) -> Self {
        self.tight_at = Some(note.into());
        self
    }

    pub fn with_tolerance(mut self, slack: f64) -> Self {
        self.slack_tolerance = slack;
        self.recheck();
        self
    }

    fn recheck(&mut self) {
        let tol = self.slack_tolerance * self.measured.abs().max(1.0);
        self.satisfied = self.lower - tol <= self.measured && self.measured <= self.upper + tol;
    }

    /// Distance from the measured value to the nearer finite bound.
    pub fn gap(&self) -> f64 {
        let lo = if self.lower.is_finite() { self.measured - self.lower } else { f64::INFINITY };
        let hi = if self.upper.is_finite() { self.upper - self.measured } else { f64::INFINITY };
        lo.min(hi)
    }
}

/// Lower and upper limits that depend only on the node count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeBound {
    pub name: &'static str,
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    pub lower_achiever: &'static str,
    pub upper_achiever: &'static str,
}

impl SizeBound {
    pub fn report(&self, measured: f64) -> BoundReport {
        BoundReport::new(self.name, self.lower, self.upper, measured)
    }
}

fn require_n(n: usize, min: usize) -> Result<f64> {
    if n < min {
        return Err(Error::InvalidN { n, reason: format!("need n >= {min}") });
    }
    Ok(n as f64)
}

/// `½ - 1/(2n) <= ρ <= (n² - 1)/12` over all unweighted connected graphs.
pub fn universal_foc_bounds(n: usize) -> Result<SizeBound> {
    let nf = require_n(n, 2)?;
    Ok(SizeBound {
        name: "universal",
        n,
        lower: 0.5 - 1.0 / (2.0 * nf),
        upper: (nf * nf - 1.0) / 12.0,
        lower_achiever: "K_n",
        upper_achiever: "P_n",
    })
}

pub fn tree_bounds(n: usize) -> Result<SizeBound> {
    let nf = require_n(n, 2)?;
    Ok(SizeBound {
        name: "tree",
        n,
        lower: (nf - 1.0).powi(2) / (2.0 * nf),
        upper: (nf * nf - 1.0) / 12.0,
        lower_achiever: "S_n",
        upper_achiever: "P_n",
    })
}

pub fn unicyclic_bounds(n: usize) -> Result<SizeBound> {
    let nf = require_n(n, 3)?;
    Ok(SizeBound {
        name: "unicyclic",
        n,
        lower: (nf - 1.0).powi(2) / (2.0 * nf) - 1.0 / 3.0,
        upper: (nf * nf - 1.0) / 12.0 + 3.0 / (2.0 * nf) - 1.0,
        lower_achiever: "S(K_3; K_1, ..., K_1)",
        upper_achiever: "P(K_3; K_1, ..., K_1)",
    })
}

/// Published bipartite limits next to the directly computed value of the
/// claimed minimizer `K_{⌊n/2⌋,⌈n/2⌉}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BipartiteBound {
    pub printed: SizeBound,
    /// `ρ(K_{⌊n/2⌋,⌈n/2⌉})` from its eigenvalues.
    pub balanced_complete_bipartite: f64,
    /// Whether the printed lower limit is consistent with that value.
    pub printed_consistent: bool,
}

pub fn bipartite_bounds(n: usize) -> Result<BipartiteBound> {
    let nf = require_n(n, 2)?;
    let (lo, hi) = (n / 2, n.div_ceil(2));
    let printed = SizeBound {
        name: "bipartite",
        n,
        lower: 1.0 - lo as f64 / (nf * hi as f64),
        upper: (nf * nf - 1.0) / 12.0,
        lower_achiever: "K_{n/2,n/2}",
        upper_achiever: "P_n",
    };
    let achiever = foc_centering(&Family::CompleteBipartite.build(&[lo, hi])?)?;
    Ok(BipartiteBound {
        printed_consistent: printed.lower <= achiever + DEFAULT_SLACK * achiever.max(1.0),
        printed,
        balanced_complete_bipartite: achiever,
    })
}

/// `Ξ(n)`, the strict upper limit on the type-2 centering position measure.
pub fn xi(n: usize, beta: f64) -> f64 {
    let nf = n as f64;
    (nf * nf - 1.0).powi(2) / (72.0 * beta) - (nf - 1.0) * (nf - 2.0).powi(2) / (2.0 * nf * beta)
}

/// Type-2 centering position measure of the path `P_n`.
pub fn soc_path_value(n: usize, beta: f64) -> f64 {
    let nf = n as f64;
    (nf * nf - 1.0).powi(2) / (72.0 * beta) - binomial(n + 2, 5) / (nf * beta)
}

/// Type-2 centering position measure of the star `S_n`.
pub fn soc_star_value(n: usize, beta: f64) -> f64 {
    let nf = n as f64;
    (nf / 2.0 + 1.0 / (2.0 * nf * nf) - 1.0) / beta
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Limits on the type-2 centering position measure, with the path and star
/// values as informational (conjectured extremal) references.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SocBound {
    pub name: &'static str,
    pub n: usize,
    pub beta: f64,
    pub lower: f64,
    pub upper: f64,
    pub lower_strict: bool,
    pub upper_strict: bool,
    pub path_value: f64,
    pub star_value: f64,
}

impl SocBound {
    pub fn report(&self, measured: f64) -> BoundReport {
        BoundReport::new(self.name, self.lower, self.upper, measured)
    }
}

pub fn soc2_universal_bounds(n: usize, beta: f64) -> Result<SocBound> {
    let nf = require_n(n, 2)?;
    check_beta(beta)?;
    Ok(SocBound {
        name: "soc_universal",
        n,
        beta,
        lower: (1.0 / (2.0 * nf) - 1.0 / (2.0 * nf * nf)) / beta,
        upper: xi(n, beta),
        lower_strict: false,
        upper_strict: true,
        path_value: soc_path_value(n, beta),
        star_value: soc_star_value(n, beta),
    })
}

pub fn soc2_tree_bounds(n: usize, beta: f64) -> Result<SocBound> {
    let nf = require_n(n, 2)?;
    check_beta(beta)?;
    Ok(SocBound {
        name: "soc_tree",
        n,
        beta,
        lower: 1.0 / (2.0 * beta) + (nf - 2.0).powi(3) / (2.0 * beta * (2.0 * nf - 3.0).powi(2)),
        upper: xi(n, beta),
        lower_strict: true,
        upper_strict: true,
        path_value: soc_path_value(n, beta),
        star_value: soc_star_value(n, beta),
    })
}

/// `Δ(G) = max_{α>0} { -1/(nα) + Σ 1/(2d_i + α) }`.
///
/// Log-spaced scan of 301 points over `[1e-6, 1e6]`, then golden-section
/// refinement of the best bracketing triple to relative width `1e-10`.
pub fn delta_maximized(degrees: &[f64]) -> f64 {
    let n = degrees.len() as f64;
    let f = |alpha: f64| -1.0 / (n * alpha) + degrees.iter().map(|d| 1.0 / (2.0 * d + alpha)).sum::<f64>();
    let grid: Vec<f64> = (0..301).map(|k| 10f64.powf(-6.0 + 12.0 * k as f64 / 300.0)).collect();
    let values: Vec<f64> = grid.iter().map(|&a| f(a)).collect();
    let best = (0..grid.len()).max_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    let (mut a, mut b) = (grid[best.saturating_sub(1)], grid[(best + 1).min(grid.len() - 1)]);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a) > 1e-10 * b.abs().max(f64::MIN_POSITIVE) {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    f(0.5 * (a + b)).max(values[best])
}

/// Unweighted closed form `-1/(2n) + (n-1)/(2n) Σ 1/d_i`.
pub fn delta_closed_form(degrees: &[f64]) -> f64 {
    let n = degrees.len() as f64;
    -1.0 / (2.0 * n) + (n - 1.0) / (2.0 * n) * degrees.iter().map(|d| 1.0 / d).sum::<f64>()
}

/// `(n-1)² / (2nd)` for d-regular weighted graphs.
pub fn delta_regular(n: usize, d: f64) -> f64 {
    let nf = n as f64;
    (nf - 1.0).powi(2) / (2.0 * nf * d)
}

/// Lower limit on the type-2 position measure from `m` and `‖L‖_F`.
pub fn frobenius_lower(m: usize, frobenius: f64, beta: f64) -> f64 {
    8.0 * (m as f64).powi(4) / (beta * frobenius.powi(6))
}

/// `n d / (2β (1 + d)³)` for unweighted d-regular graphs.
pub fn frobenius_regular_lower(n: usize, d: f64, beta: f64) -> f64 {
    n as f64 * d / (2.0 * beta * (1.0 + d).powi(3))
}

/// Identifiers for every bound a graph can be audited against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    Universal,
    Tree,
    Unicyclic,
    Bipartite,
    SocUniversal,
    SocTree,
    DiameterEdges,
    WeightSum,
    SpanningTrees,
    CutEdges,
    DegreeSequence,
    Frobenius,
    EdgeCountTradeoff,
    AdditiveTradeoff,
    SparsitySandwich,
    MaxDegreeTradeoff,
    SigmaTradeoff,
}

impl BoundId {
    pub const ALL: [BoundId; 17] = [
        BoundId::Universal,
        BoundId::Tree,
        BoundId::Unicyclic,
        BoundId::Bipartite,
        BoundId::SocUniversal,
        BoundId::SocTree,
        BoundId::DiameterEdges,
        BoundId::WeightSum,
        BoundId::SpanningTrees,
        BoundId::CutEdges,
        BoundId::DegreeSequence,
        BoundId::Frobenius,
        BoundId::EdgeCountTradeoff,
        BoundId::AdditiveTradeoff,
        BoundId::SparsitySandwich,
        BoundId::MaxDegreeTradeoff,
        BoundId::SigmaTradeoff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::Universal => "universal",
            BoundId::Tree => "tree",
            BoundId::Unicyclic => "unicyclic",
            BoundId::Bipartite => "bipartite",
            BoundId::SocUniversal => "soc_universal",
            BoundId::SocTree => "soc_tree",
            BoundId::DiameterEdges => "diameter_edges",
            BoundId::WeightSum => "weight_sum",
            BoundId::SpanningTrees => "spanning_trees",
            BoundId::CutEdges => "cut_edges",
            BoundId::DegreeSequence => "degree_sequence",
            BoundId::Frobenius => "frobenius",
            BoundId::EdgeCountTradeoff => "edge_count_tradeoff",
            BoundId::AdditiveTradeoff => "additive_tradeoff",
            BoundId::SparsitySandwich => "sparsity_sandwich",
            BoundId::MaxDegreeTradeoff => "max_degree_tradeoff",
            BoundId::SigmaTradeoff => "sigma_tradeoff",
        }
    }

    /// Whether the report's measured quantity is the centering FOC measure.
    pub fn measures_rho(self) -> bool {
        use BoundId::*;
        matches!(
            self,
            Universal | Tree | Unicyclic | Bipartite | DiameterEdges | WeightSum | SpanningTrees | CutEdges | DegreeSequence
        )
    }

    /// Parses a comma-separated list. Accepts the descriptive names above and
    /// the short `thmN` / `corN` aliases used by the command line.
    pub fn parse_list(s: &str) -> Result<Vec<BoundId>> {
        let mut out = Vec::new();
        for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let ids: &[BoundId] = match token.to_ascii_lowercase().as_str() {
                "all" => &BoundId::ALL,
                "thm3" => &[BoundId::Universal],
                "thm4" => &[BoundId::Tree],
                "thm5" => &[BoundId::Unicyclic],
                "thm6" => &[BoundId::Bipartite],
                "thm7" => &[BoundId::SocUniversal],
                "thm8" => &[BoundId::SocTree],
                "thm9" => &[BoundId::DiameterEdges],
                "thm10" => &[BoundId::WeightSum],
                "thm11" => &[BoundId::SpanningTrees],
                "thm12" => &[BoundId::CutEdges],
                "thm13" => &[BoundId::DegreeSequence],
                "thm14" => &[BoundId::Frobenius],
                "thm17" => &[BoundId::SigmaTradeoff],
                "cor1" => &[BoundId::EdgeCountTradeoff, BoundId::AdditiveTradeoff],
                "cor2" => &[BoundId::SparsitySandwich],
                "cor3" => &[BoundId::MaxDegreeTradeoff],
                other => {
                    let id = BoundId::from_str(other)?;
                    out.push(id);
                    continue;
                }
            };
            out.extend_from_slice(ids);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|id| id.name() == s.trim())
            .ok_or_else(|| Error::UnknownBound(s.to_string()))
    }
}

/// Everything the graph-dependent bounds need, computed once.
#[derive(Debug, Clone)]
pub struct GraphFacts {
    pub n: usize,
    pub unweighted: bool,
    pub beta: f64,
    /// `ρ_ss(L_G; M_n)`.
    pub rho: f64,
    /// Type-2 centering position measure at `beta`.
    pub soc_position: f64,
    pub stats: GraphStats,
    pub sparsity: Sparsity,
    pub frobenius: f64,
    pub bipartite: bool,
}

impl GraphFacts {
    pub fn compute(g: &WeightedGraph, beta: f64) -> Result<Self> {
        check_beta(beta)?;
        let n = g.n();
        require_n(n, 2)?;
        let spectrum = graph_spectrum(g)?;
        let stats = graph_stats(g)?;
        Ok(Self {
            n,
            unweighted: g.is_unweighted(),
            beta,
            rho: 0.5 * spectrum.zeta(1)?,
            soc_position: 0.5 * spectrum.zeta(2)? / beta,
            sparsity: sparsity_measures(g),
            frobenius: LaplacianMatrix::from_graph(g).frobenius_norm(),
            bipartite: bipartition(g).is_some(),
            stats,
        })
    }

    pub fn is_tree(&self) -> bool {
        self.stats.m == self.n - 1
    }

    pub fn is_unicyclic(&self) -> bool {
        self.stats.m == self.n
    }

    /// Whether `id` applies to this graph's class.
    pub fn applies(&self, id: BoundId) -> bool {
        use BoundId::*;
        let n = self.n;
        match id {
            WeightSum | SpanningTrees | Frobenius => true,
            Universal | DiameterEdges | CutEdges | EdgeCountTradeoff | AdditiveTradeoff
            | SparsitySandwich | SocUniversal => self.unweighted,
            DegreeSequence => true,
            Tree | SocTree => self.unweighted && self.is_tree() && n >= 5,
            Unicyclic => self.unweighted && self.is_unicyclic() && n >= 13,
            Bipartite => self.unweighted && self.bipartite,
            MaxDegreeTradeoff | SigmaTradeoff => self.unweighted && n >= 3,
        }
    }

    /// Evaluates `id`, or `None` if it does not apply.
    pub fn report(&self, id: BoundId) -> Option<BoundReport> {
        if !self.applies(id) {
            return None;
        }
        Some(self.evaluate(id))
    }

    fn evaluate(&self, id: BoundId) -> BoundReport {
        use BoundId::*;
        let n = self.n;
        let nf = n as f64;
        let m = self.stats.m as f64;
        let rho = self.rho;
        let diam = self.stats.diameter as f64;
        let inf = f64::INFINITY;
        match id {
            Universal => universal_foc_bounds(n).expect("n >= 2").report(rho).tight_at("K_n (lower), P_n (upper)"),
            Tree => tree_bounds(n).expect("n >= 2").report(rho).tight_at("S_n (lower), P_n (upper)"),
            Unicyclic => unicyclic_bounds(n)
                .expect("n >= 3")
                .report(rho)
                .tight_at("S(K_3; K_1..K_1) (lower), P(K_3; K_1..K_1) (upper)"),
            Bipartite => BoundReport::new("bipartite", 1.0 - (n / 2) as f64 / (nf * n.div_ceil(2) as f64), (nf * nf - 1.0) / 12.0, rho)
                .tight_at("K_(floor(n/2),ceil(n/2)) (lower), P_n (upper)"),
            SocUniversal => soc2_universal_bounds(n, self.beta)
                .expect("valid")
                .report(self.soc_position)
                .tight_at("K_n (lower)"),
            SocTree => soc2_tree_bounds(n, self.beta).expect("valid").report(self.soc_position),
            DiameterEdges => {
                let lower = (nf - 1.0).powi(2) / (4.0 * m);
                let upper = (nf - 1.0 + (nf * (nf - 1.0) / 2.0 - m) * diam) / (2.0 * nf);
                BoundReport::new("diameter_edges", lower, upper, rho).tight_at("K_n (both), S_n (upper)")
            }
            WeightSum => BoundReport::new(
                "weight_sum",
                (nf - 1.0).powi(2) / (4.0 * self.stats.weight_sum),
                inf,
                rho,
            )
            .tight_at("K_n"),
            SpanningTrees => {
                let root = (nf * self.stats.spanning_tree_count).powf(1.0 / (nf - 1.0));
                BoundReport::new("spanning_trees", (nf - 1.0) / (2.0 * root), inf, rho).tight_at("K_n")
            }
            CutEdges => {
                let k = self.stats.cut_edges as f64;
                let lower = 1.0 / (2.0 * nf) + (k + 1.0) / 2.0 - 1.0 / (nf - k);
                BoundReport::new("cut_edges", lower, inf, rho).tight_at("S(K_(n-k); K_1..K_1)")
            }
            DegreeSequence => {
                let degrees = &self.stats.degree_sequence;
                let lower = if self.unweighted {
                    delta_closed_form(degrees)
                } else {
                    delta_maximized(degrees)
                };
                BoundReport::new("degree_sequence", lower, inf, rho).tight_at("K_n, K_(n1,n2)")
            }
            Frobenius => BoundReport::new(
                "frobenius",
                frobenius_lower(self.stats.m, self.frobenius, self.beta),
                inf,
                self.soc_position,
            )
            .tight_at("K_n"),
            EdgeCountTradeoff => BoundReport::new(
                "edge_count_tradeoff",
                (nf - 1.0).powi(2) / 2.0,
                inf,
                rho * self.sparsity.a0 as f64,
            )
            .tight_at("K_n"),
            AdditiveTradeoff => {
                let lhs = (rho - 0.5 + 1.0 / (2.0 * nf)) / diam + self.sparsity.a0 as f64 / (4.0 * (nf - 1.0));
                BoundReport::new("additive_tradeoff", -inf, nf / 4.0, lhs).tight_at("K_n")
            }
            SparsitySandwich => {
                let lower = (nf - 1.0).powi(2) / (2.0 * rho);
                let upper = (nf - 1.0) * (nf - 4.0 * (rho - 0.5 + 1.0 / (2.0 * nf)) / diam);
                BoundReport::new("sparsity_sandwich", lower, upper, self.sparsity.a0 as f64)
            }
            MaxDegreeTradeoff => BoundReport::new(
                "max_degree_tradeoff",
                (nf - 1.0) / 2.0,
                inf,
                (rho + 1.0 / (2.0 * nf)) * self.sparsity.s01 as f64,
            )
            .tight_at("K_n"),
            SigmaTradeoff => BoundReport::new(
                "sigma_tradeoff",
                (nf - 1.0) / 2.0,
                inf,
                rho * self.sparsity.sigma as f64,
            )
            .tight_at("K_n"),
        }
    }

    /// Every applicable report.
    pub fn all_reports(&self) -> Vec<BoundReport> {
        BoundId::ALL.iter().filter_map(|&id| self.report(id)).collect()
    }
}

fn facts_for(g: &WeightedGraph, need_unweighted: bool) -> Result<GraphFacts> {
    if need_unweighted && !g.is_unweighted() {
        return Err(Error::WeightedNotSupported);
    }
    GraphFacts::compute(g, 1.0)
}

pub fn diameter_edge_bounds(g: &WeightedGraph) -> Result<BoundReport> {
    Ok(facts_for(g, true)?.evaluate(BoundId::DiameterEdges))
}

pub fn weight_sum_bound(g: &WeightedGraph) -> Result<BoundReport> {
    Ok(facts_for(g, false)?.evaluate(BoundId::WeightSum))
}

pub fn spanning_tree_bound(g: &WeightedGraph) -> Result<BoundReport> {
    Ok(facts_for(g, false)?.evaluate(BoundId::SpanningTrees))
}

pub fn cut_edge_bound(g: &WeightedGraph) -> Result<BoundReport> {
    Ok(facts_for(g, true)?.evaluate(BoundId::CutEdges))
}

pub fn degree_sequence_bound(g: &WeightedGraph) -> Result<BoundReport> {
    Ok(facts_for(g, false)?.evaluate(BoundId::DegreeSequence))
}

/// Type-2 position measure against `8m⁴ / (β ‖L_G‖_F⁶)`.
pub fn soc_frobenius_bound(s: &SocSystem) -> Result<BoundReport> {
    if s.soc_type != SocType::Type2 {
        return Err(Error::WrongSocType { expected: "type 2" });
    }
    if s.q_x.kind() != OutputKind::Centering {
        return Err(Error::WrongSocType { expected: "type 2 with centering position output" });
    }
    Ok(GraphFacts::compute(&s.coupling, s.beta)?.evaluate(BoundId::Frobenius))
}

/// The sparsity/performance tradeoffs: edge count (multiplicative and
/// additive forms), the sparsity sandwich at the measured performance level,
/// maximum degree, and σ(G).
pub fn tradeoff_checks(g: &WeightedGraph) -> Result<Vec<BoundReport>> {
    let facts = facts_for(g, true)?;
    let mut ids = vec![
        BoundId::EdgeCountTradeoff,
        BoundId::AdditiveTradeoff,
        BoundId::SparsitySandwich,
    ];
    if facts.n >= 3 {
        ids.extend([BoundId::MaxDegreeTradeoff, BoundId::SigmaTradeoff]);
    }
    Ok(ids.into_iter().map(|id| facts.evaluate(id)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random::random_connected;
    use crate::measures::soc_measure;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fam(f: Family, n: usize) -> WeightedGraph {
        f.build(&[n]).unwrap()
    }

    #[test]
    fn report_tolerance() {
        assert!(BoundReport::new("x", 1.0, 2.0, 2.0 + 1e-10).satisfied);
        assert!(!BoundReport::new("x", 1.0, 2.0, 2.0 + 1e-8).satisfied);
        assert!(BoundReport::new("x", 1.0, 2.0, 2.0 + 1e-8).with_tolerance(1e-7).satisfied);
        assert!(BoundReport::new("x", f64::NEG_INFINITY, f64::INFINITY, 5.0).satisfied);
        let json = serde_json::to_value(BoundReport::new("x", 1.0, f64::INFINITY, 1.5)).unwrap();
        assert!(json["upper"].is_null());
        assert_eq!(json["lower"], 1.0);
    }

    #[test]
    fn size_bounds() {
        let u = universal_foc_bounds(5).unwrap();
        assert_abs_diff_eq!(u.lower, 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(u.upper, 2.0, epsilon = 1e-15);
        let u2 = universal_foc_bounds(2).unwrap();
        assert_eq!((u2.lower, u2.upper), (0.25, 0.25));
        assert_abs_diff_eq!(foc_centering(&fam(Family::Complete, 2)).unwrap(), 0.25, epsilon = 1e-15);
        let u7 = universal_foc_bounds(7).unwrap();
        assert_abs_diff_eq!(u7.lower, 3.0 / 7.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u7.upper, 4.0, epsilon = 1e-15);

        let t = tree_bounds(5).unwrap();
        assert_abs_diff_eq!(t.lower, 1.6, epsilon = 1e-15);
        assert_abs_diff_eq!(t.upper, 2.0, epsilon = 1e-15);

        let uc = unicyclic_bounds(13).unwrap();
        assert_abs_diff_eq!(uc.lower, 144.0 / 26.0 - 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(uc.upper, 168.0 / 12.0 + 3.0 / 26.0 - 1.0, epsilon = 1e-12);

        assert!(matches!(universal_foc_bounds(1), Err(Error::InvalidN { .. })));
        assert!(matches!(unicyclic_bounds(2), Err(Error::InvalidN { .. })));
    }

    #[test]
    fn bipartite_printed_versus_computed() {
        let b = bipartite_bounds(6).unwrap();
        assert_abs_diff_eq!(b.printed.lower, 5.0 / 6.0, epsilon = 1e-15);
        // K_{3,3} eigenvalues {0, 3, 3, 3, 3, 6}
        assert_abs_diff_eq!(b.balanced_complete_bipartite, 0.75, epsilon = 1e-12);
        assert!(!b.printed_consistent);
    }

    #[test]
    fn soc_size_bounds() {
        let u = soc2_universal_bounds(5, 1.0).unwrap();
        assert_abs_diff_eq!(u.lower, 0.08, epsilon = 1e-15);
        assert_abs_diff_eq!(u.upper, 4.4, epsilon = 1e-12);
        let k5 = SocSystem::position_centering(fam(Family::Complete, 5), SocType::Type2, 1.0).unwrap();
        assert_abs_diff_eq!(soc_measure(&k5).unwrap().rho_x, 0.08, epsilon = 1e-14);
        assert_abs_diff_eq!(soc_star_value(3, 1.0), 5.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(soc_path_value(3, 1.0), 5.0 / 9.0, epsilon = 1e-15);
        assert!(soc2_tree_bounds(5, -1.0).is_err());
    }

    #[test]
    fn diameter_edge_examples() {
        let k5 = diameter_edge_bounds(&fam(Family::Complete, 5)).unwrap();
        assert_abs_diff_eq!(k5.lower, 0.4, epsilon = 1e-14);
        assert_abs_diff_eq!(k5.upper, 0.4, epsilon = 1e-14);
        assert!(k5.satisfied);
        let s5 = diameter_edge_bounds(&fam(Family::Star, 5)).unwrap();
        assert_abs_diff_eq!(s5.upper, 1.6, epsilon = 1e-14);
        assert_abs_diff_eq!(s5.measured, 1.6, epsilon = 1e-12);
        let p3 = diameter_edge_bounds(&fam(Family::Path, 3)).unwrap();
        assert_abs_diff_eq!(p3.lower, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p3.measured, 2.0 / 3.0, epsilon = 1e-13);
        assert_abs_diff_eq!(p3.upper, 2.0 / 3.0, epsilon = 1e-15);
        let weighted = fam(Family::Path, 3).scaled(2.0).unwrap();
        assert_eq!(diameter_edge_bounds(&weighted), Err(Error::WeightedNotSupported));
    }

    #[test]
    fn weight_sum_examples() {
        for n in 2..10 {
            let r = weight_sum_bound(&fam(Family::Complete, n)).unwrap();
            assert_abs_diff_eq!(r.lower, r.measured, epsilon = 1e-12);
        }
        let mut last = 0.0;
        for a in [0.5, 0.1, 0.01, 0.001] {
            let g = WeightedGraph::new(3, [(0, 1, a), (1, 2, 1.0 - a)]).unwrap();
            let r = weight_sum_bound(&g).unwrap();
            assert_abs_diff_eq!(r.lower, 1.0, epsilon = 1e-12);
            assert!(r.satisfied && r.measured > last);
            last = r.measured;
        }
        assert!(last > 100.0);
    }

    #[test]
    fn spanning_cut_degree_examples() {
        for n in 3..9 {
            let kn = fam(Family::Complete, n);
            let expected = (n - 1) as f64 / (2.0 * n as f64);
            let s = spanning_tree_bound(&kn).unwrap();
            assert_abs_diff_eq!(s.lower, expected, epsilon = 1e-12);
            assert_abs_diff_eq!(s.measured, expected, epsilon = 1e-12);
            let d = degree_sequence_bound(&kn).unwrap();
            assert_abs_diff_eq!(d.lower, expected, epsilon = 1e-12);
            assert_abs_diff_eq!(d.measured, expected, epsilon = 1e-12);
        }
        let g = Family::StarLikeClique.build(&[7, 4]).unwrap();
        let c = cut_edge_bound(&g).unwrap();
        let expected = 1.0 / 14.0 + 2.0 - 0.25;
        assert_abs_diff_eq!(c.lower, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(c.measured, expected, epsilon = 1e-10);
    }

    #[test]
    fn delta_maximization() {
        // K_n: maximizer α = 2, value (n-1)/(2n)
        for n in 2..12 {
            let d = vec![(n - 1) as f64; n];
            assert_abs_diff_eq!(delta_maximized(&d), (n - 1) as f64 / (2.0 * n as f64), epsilon = 1e-9);
            assert_abs_diff_eq!(delta_closed_form(&d), delta_maximized(&d), epsilon = 1e-7);
        }
        // regular weighted graphs
        for (n, d) in [(4, 2.0), (6, 0.3), (10, 7.5)] {
            assert_abs_diff_eq!(delta_maximized(&vec![d; n]), delta_regular(n, d), epsilon = 1e-9);
        }
        // P_3: maximize -1/(3a) + 2/(2+a) + 1/(4+a) by dense scan
        let scan = (1..200_000)
            .map(|k| k as f64 * 1e-4)
            .map(|a| -1.0 / (3.0 * a) + 2.0 / (2.0 + a) + 1.0 / (4.0 + a))
            .fold(f64::NEG_INFINITY, f64::max);
        let maximized = delta_maximized(&[1.0, 2.0, 1.0]);
        assert_abs_diff_eq!(maximized, scan, epsilon = 1e-7);
        // the unweighted closed form is a different (and here tighter) bound
        assert_abs_diff_eq!(delta_closed_form(&[1.0, 2.0, 1.0]), 2.0 / 3.0, epsilon = 1e-15);
        assert!(maximized < 2.0 / 3.0 - 0.1);
    }

    #[test]
    fn both_degree_forms_are_valid_lower_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for case in 0..200 {
            let n = 2 + case % 12;
            let g = random_connected(&mut rng, n, 0.35, 1.0..=1.0);
            let rho = foc_centering(&g).unwrap();
            let d = g.degrees();
            assert!(delta_closed_form(&d) <= rho + 1e-9 * rho.max(1.0));
            assert!(delta_maximized(&d) <= rho + 1e-9 * rho.max(1.0));
        }
    }

    #[test]
    fn frobenius_examples() {
        for n in 2..10 {
            let s = SocSystem::position_centering(fam(Family::Complete, n), SocType::Type2, 1.0).unwrap();
            let r = soc_frobenius_bound(&s).unwrap();
            let expected = (n - 1) as f64 / (2.0 * (n * n) as f64);
            assert_abs_diff_eq!(r.lower, expected, epsilon = 1e-12);
            assert_abs_diff_eq!(r.measured, expected, epsilon = 1e-12);
            assert_abs_diff_eq!(frobenius_regular_lower(n, (n - 1) as f64, 1.0), expected, epsilon = 1e-12);
        }
        let c4 = SocSystem::position_centering(fam(Family::Cycle, 4), SocType::Type2, 1.0).unwrap();
        let r = soc_frobenius_bound(&c4).unwrap();
        assert_abs_diff_eq!(r.lower, 4.0 / 27.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.measured, 9.0 / 32.0, epsilon = 1e-13);
        assert!(r.satisfied);
        let t1 = SocSystem::position_centering(fam(Family::Cycle, 4), SocType::Type1, 1.0).unwrap();
        assert!(matches!(soc_frobenius_bound(&t1), Err(Error::WrongSocType { .. })));
    }

    #[test]
    fn complete_graph_tradeoffs_are_tight() {
        for n in 3..12 {
            let reports = tradeoff_checks(&fam(Family::Complete, n)).unwrap();
            assert_eq!(reports.len(), 5);
            for r in &reports {
                assert!(r.satisfied, "{r:?}");
                if r.name != "sparsity_sandwich" {
                    assert!(r.gap().abs() < 1e-9, "{r:?}");
                }
            }
        }
        assert_eq!(tradeoff_checks(&fam(Family::Complete, 2)).unwrap().len(), 3);
    }

    #[test]
    fn bound_list_parsing() {
        let ids = BoundId::parse_list("thm3,thm10, thm11,thm13").unwrap();
        assert_eq!(
            ids,
            vec![BoundId::Universal, BoundId::WeightSum, BoundId::SpanningTrees, BoundId::DegreeSequence]
        );
        assert_eq!(BoundId::parse_list("cor1").unwrap().len(), 2);
        assert_eq!(BoundId::parse_list("cut_edges").unwrap(), vec![BoundId::CutEdges]);
        assert_eq!(BoundId::parse_list("all").unwrap().len(), 17);
        assert!(BoundId::parse_list("thm99").is_err());
    }

    #[test]
    fn reports_hold_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for case in 0..300 {
            let n = 3 + case % 10;
            let weighted = case % 2 == 0;
            let w = if weighted { 1.0..=4.0 } else { 1.0..=1.0 };
            let g = random_connected(&mut rng, n, 0.3, w);
            let facts = GraphFacts::compute(&g, 1.0).unwrap();
            for r in facts.all_reports() {
                if r.name == "bipartite" {
                    continue;
                }
                assert!(r.satisfied, "case {case}: {r:?}");
            }
        }
    }
}
