use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::WeightedGraph;
use crate::error::{Error, Result};

/// Standard unit-weight graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `K_n`
    Complete,
    /// `S_n`, center at node 0.
    Star,
    /// `C_n`
    Cycle,
    /// `P_n`
    Path,
    /// `K_{n1,n2}` with parts `0..n1` and `n1..n1+n2`.
    CompleteBipartite,
    /// `S(K_k; K_1, ..., K_1)`: clique on `0..k` with `n - k` leaves on node 0.
    StarLikeClique,
    /// `S(K_3; K_1, ..., K_1)`
    StarLikeK3,
    /// `P(K_3; K_1, ..., K_1)`: path `0..n-2` with a triangle fused at node `n - 3`.
    PathLikeK3,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Complete,
        Family::Star,
        Family::Cycle,
        Family::Path,
        Family::CompleteBipartite,
        Family::StarLikeClique,
        Family::StarLikeK3,
        Family::PathLikeK3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Star => "star",
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::CompleteBipartite => "complete_bipartite",
            Family::StarLikeClique => "star_like_clique",
            Family::StarLikeK3 => "star_like_k3",
            Family::PathLikeK3 => "path_like_k3",
        }
    }

    /// Builds the family member.
    ///
    /// `params` is `[n]` for most families, `[n1, n2]` for complete bipartite
    /// and `[n, k]` for the star-like clique.
    pub fn build(self, params: &[usize]) -> Result<WeightedGraph> {
        let invalid = |reason: &str| Error::InvalidFamilyParams {
            family: self.name().to_string(),
            reason: reason.to_string(),
        };
        let expected = match self {
            Family::CompleteBipartite | Family::StarLikeClique => 2,
            _ => 1,
        };
        if params.len() != expected {
            return Err(invalid(&format!("expected {expected} parameter(s), got {}", params.len())));
        }
        let n = params[0];
        if n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        let pairs: Vec<(usize, usize)> = match self {
            Family::Complete => clique(0, n),
            Family::Star => (1..n).map(|leaf| (0, leaf)).collect(),
            Family::Path => (1..n).map(|v| (v - 1, v)).collect(),
            Family::Cycle => {
                if n < 3 {
                    return Err(invalid("cycle needs n >= 3"));
                }
                (0..n).map(|v| (v, (v + 1) % n)).collect()
            }
            Family::CompleteBipartite => {
                let (n1, n2) = (params[0], params[1]);
                if n2 == 0 {
                    return Err(invalid("both parts need at least one node"));
                }
                let pairs: Vec<(usize, usize)> = (0..n1).flat_map(|a| (n1..n1 + n2).map(move |b| (a, b))).collect();
                return WeightedGraph::unweighted(n1 + n2, pairs);
            }
            Family::StarLikeClique => {
                let k = params[1];
                if n < 2 || k == 0 || k > n {
                    return Err(invalid("need n >= 2 and 1 <= k <= n"));
                }
                let mut pairs = clique(0, k);
                pairs.extend((k..n).map(|leaf| (0, leaf)));
                pairs
            }
            Family::StarLikeK3 => {
                if n < 4 {
                    return Err(invalid("star-like graph needs n >= 4"));
                }
                return Family::StarLikeClique.build(&[n, 3]);
            }
            Family::PathLikeK3 => {
                if n < 4 {
                    return Err(invalid("path-like graph needs n >= 4"));
                }
                let hub = n - 3;
                let mut pairs: Vec<_> = (1..=hub).map(|v| (v - 1, v)).collect();
                pairs.extend([(hub, n - 2), (hub, n - 1), (n - 2, n - 1)]);
                pairs
            }
        };
        WeightedGraph::unweighted(n, pairs)
    }
}

fn clique(start: usize, k: usize) -> Vec<(usize, usize)> {
    (start..start + k)
        .flat_map(|a| (a + 1..start + k).map(move |b| (a, b)))
        .collect()
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let family = match key.as_str() {
            "complete" | "k" => Family::Complete,
            "star" | "s" => Family::Star,
            "cycle" | "c" => Family::Cycle,
            "path" | "p" => Family::Path,
            "complete_bipartite" | "bipartite" => Family::CompleteBipartite,
            "star_like_clique" => Family::StarLikeClique,
            "star_like_k3" => Family::StarLikeK3,
            "path_like_k3" => Family::PathLikeK3,
            _ => return Err(Error::UnknownFamily(s.to_string())),
        };
        Ok(family)
    }
}
