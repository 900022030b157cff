//! Weighted undirected graphs: construction, standard families, structural
//! statistics and sparsity measures.

mod family;
mod io;
pub mod random;
mod stats;

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use family::Family;
pub use io::{parse_edge_list, parse_graph_json, to_edge_list, to_graph_json};
pub use stats::{graph_stats, sparsity_measures, spanning_tree_count, GraphStats, Sparsity};

/// An undirected edge `{i, j}` with `i < j` and positive weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub w: f64,
}

/// A simple undirected graph on nodes `0..n` with positive edge weights.
///
/// Edges are stored canonically: `i < j`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    /// Validates and normalizes an edge list.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (a, b, w) in edges {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::NonPositiveWeight { i, j, w });
            }
            if !seen.insert((i, j)) {
                return Err(Error::DuplicateEdge(i, j));
            }
            out.push(Edge { i, j, w });
        }
        out.sort_by_key(|e| (e.i, e.j));
        Ok(Self { n, edges: out })
    }

    /// Unit-weight graph from index pairs.
    pub fn unweighted(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(n, pairs.into_iter().map(|(i, j)| (i, j, 1.0)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `W(G)`, the sum of all edge weights.
    pub fn weight_sum(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// True when every edge has weight exactly 1.
    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1.0)
    }

    /// Weighted degrees `d_i`.
    pub fn degrees(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n];
        for e in &self.edges {
            d[e.i] += e.w;
            d[e.j] += e.w;
        }
        d
    }

    /// Number of incident edges per node, ignoring weights.
    pub fn incidence_counts(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.i] += 1;
            d[e.j] += 1;
        }
        d
    }

    /// Sorted neighbor lists of the unweighted skeleton.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.i].push(e.j);
            adj[e.j].push(e.i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search_by_key(&key, |e| (e.i, e.j)).is_ok()
    }

    /// Same topology with every weight replaced by 1.
    pub fn skeleton(&self) -> Self {
        Self {
            n: self.n,
            edges: self.edges.iter().map(|e| Edge { w: 1.0, ..*e }).collect(),
        }
    }

    /// Same topology with all weights multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.n, self.edges.iter().map(|e| (e.i, e.j, e.w * c)))
    }

    /// Copy with an extra edge.
    pub fn with_edge(&self, i: usize, j: usize, w: f64) -> Result<Self> {
        Self::new(
            self.n,
            self.edges.iter().map(|e| (e.i, e.j, e.w)).chain(std::iter::once((i, j, w))),
        )
    }

    /// Copy restricted to the edges whose positions in [`Self::edges`] satisfy `keep`.
    pub fn retain_edges(&self, mut keep: impl FnMut(usize, &Edge) -> bool) -> Self {
        Self {
            n: self.n,
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(k, e)| keep(*k, e))
                .map(|(_, e)| *e)
                .collect(),
        }
    }

    /// Unweighted hop distances from `source`; `None` for unreachable nodes.
    pub fn hop_distances(&self, source: usize) -> Vec<Option<usize>> {
        bfs(&self.neighbors(), source)
    }
}

pub(crate) fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap_or(0);
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Breadth-first connectivity test. A single node is connected.
pub fn is_connected(g: &WeightedGraph) -> bool {
    g.hop_distances(0).iter().all(Option::is_some)
}

/// Two-coloring of the skeleton, if one exists.
pub fn bipartition(g: &WeightedGraph) -> Option<Vec<bool>> {
    let adj = g.neighbors();
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    for start in 0..g.n() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u]?;
            for &v in &adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    color.into_iter().collect()
}
