//! Exhaustive enumeration of connected labeled graphs.
//!
//! A graph on `n` nodes is identified by a bitmask over the `C(n, 2)` node
//! pairs in lexicographic order: bit `k` is set iff pair `k` is an edge.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

pub const MAX_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFilter {
    #[default]
    All,
    Trees,
    Unicyclic,
    Bipartite,
}

impl FromStr for GraphFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "all" | "all-connected" | "connected" => Ok(GraphFilter::All),
            "trees" | "tree" => Ok(GraphFilter::Trees),
            "unicyclic" => Ok(GraphFilter::Unicyclic),
            "bipartite" => Ok(GraphFilter::Bipartite),
            other => Err(Error::UnknownFilter(other.to_string())),
        }
    }
}

impl fmt::Display for GraphFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphFilter::All => "all",
            GraphFilter::Trees => "trees",
            GraphFilter::Unicyclic => "unicyclic",
            GraphFilter::Bipartite => "bipartite",
        })
    }
}

/// Node pairs in bit order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn graph_from_mask(n: usize, mask: u64) -> WeightedGraph {
    let edges = pairs(n).into_iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, p)| p);
    WeightedGraph::unweighted(n, edges).expect("mask encodes a simple graph")
}

/// Inverse of [`graph_from_mask`] for unweighted graphs.
pub fn mask_of(g: &WeightedGraph) -> u64 {
    let n = g.n();
    g.edges()
        .iter()
        .map(|e| 1u64 << (e.i * n - e.i * (e.i + 1) / 2 + (e.j - e.i - 1)))
        .fold(0, |a, b| a | b)
}

struct Matcher {
    n: usize,
    pairs: Vec<(usize, usize)>,
    filter: GraphFilter,
}

impl Matcher {
    fn accepts(&self, mask: u64) -> bool {
        let m = mask.count_ones() as usize;
        match self.filter {
            GraphFilter::Trees if m + 1 != self.n => return false,
            GraphFilter::Unicyclic if m != self.n => return false,
            _ => {}
        }
        if m + 1 < self.n {
            return false;
        }
        let mut parent = [0u8; MAX_N];
        for (k, p) in parent.iter_mut().enumerate().take(self.n) {
            *p = k as u8;
        }
        fn find(p: &mut [u8; MAX_N], mut x: usize) -> usize {
            while p[x] as usize != x {
                p[x] = p[p[x] as usize];
                x = p[x] as usize;
            }
            x
        }
        let mut components = self.n;
        let mut bits = mask;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (a, b) = self.pairs[k];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb as u8;
                components -= 1;
            }
        }
        if components != 1 {
            return false;
        }
        self.filter != GraphFilter::Bipartite || self.two_colorable(mask)
    }

    fn two_colorable(&self, mask: u64) -> bool {
        let mut adj = [0u8; MAX_N];
        let mut bits = mask;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (a, b) = self.pairs[k];
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        let mut color = [u8::MAX; MAX_N];
        color[0] = 0;
        let mut stack = vec![0usize];
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                if adj[u] >> v & 1 == 1 {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        stack.push(v);
                    } else if color[v] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Iterator over `(mask, graph)` for every matching connected graph in a
/// mask range, in increasing mask order.
pub struct EnumerationStream {
    matcher: Matcher,
    cursor: u64,
    end: u64,
}

impl EnumerationStream {
    pub fn n(&self) -> usize {
        self.matcher.n
    }

    pub fn filter(&self) -> GraphFilter {
        self.matcher.filter
    }

    /// Remaining mask range.
    pub fn range(&self) -> Range<u64> {
        self.cursor..self.end
    }

    /// Restricts the stream to `range` (clamped to the full mask space).
    pub fn restrict(mut self, range: Range<u64>) -> Self {
        self.end = range.end.min(self.end);
        self.cursor = range.start.max(self.cursor).min(self.end);
        self
    }

    /// Splits the remaining range into `parts` contiguous streams.
    pub fn partition(self, parts: usize) -> Vec<EnumerationStream> {
        let parts = parts.max(1) as u64;
        let (start, len) = (self.cursor, self.end - self.cursor);
        (0..parts)
            .map(|p| {
                let lo = start + len * p / parts;
                let hi = start + len * (p + 1) / parts;
                EnumerationStream {
                    matcher: Matcher { n: self.matcher.n, pairs: self.matcher.pairs.clone(), filter: self.matcher.filter },
                    cursor: lo,
                    end: hi,
                }
            })
            .collect()
    }

    /// Next matching mask without building the graph.
    pub fn next_mask(&mut self) -> Option<u64> {
        while self.cursor < self.end {
            let mask = self.cursor;
            self.cursor += 1;
            if self.matcher.accepts(mask) {
                return Some(mask);
            }
        }
        None
    }

    /// Counts the remaining matches in parallel.
    pub fn count_parallel(self) -> u64 {
        let chunks = self.partition(rayon::current_num_threads() * 8);
        chunks
            .into_par_iter()
            .map(|mut s| {
                let mut c = 0;
                while s.next_mask().is_some() {
                    c += 1;
                }
                c
            })
            .sum()
    }
}

impl Iterator for EnumerationStream {
    type Item = (u64, WeightedGraph);

    fn next(&mut self) -> Option<Self::Item> {
        let mask = self.next_mask()?;
        Some((mask, graph_from_mask(self.matcher.n, mask)))
    }
}

pub fn enumerate_connected(n: usize, filter: GraphFilter) -> Result<EnumerationStream> {
    if n > MAX_N {
        return Err(Error::NTooLarge { n, max: MAX_N });
    }
    if n < 2 {
        return Err(Error::InvalidN { n, reason: "enumeration needs n >= 2".into() });
    }
    let pairs = pairs(n);
    let end = 1u64 << pairs.len();
    Ok(EnumerationStream { matcher: Matcher { n, pairs, filter }, cursor: 0, end })
}
