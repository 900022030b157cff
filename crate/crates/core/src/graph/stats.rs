use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{bfs, is_connected, WeightedGraph};
use crate::error::{Error, Result};

/// Structural statistics of a connected graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub m: usize,
    pub weight_sum: f64,
    pub degree_sequence: Vec<f64>,
    /// Unweighted hop diameter.
    pub diameter: usize,
    /// Number of bridges.
    pub cut_edges: usize,
    /// Weighted spanning-tree count; an integer for unit weights.
    pub spanning_tree_count: f64,
    /// Sum of hop distances over unordered node pairs.
    pub wiener: f64,
}

/// Sparsity measures of the adjacency matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sparsity {
    /// Number of nonzero adjacency entries, `2m`.
    pub a0: usize,
    /// Largest number of nonzeros in any adjacency row.
    pub s01: usize,
    /// `max_{i != j} d_i + d_j - |N(i) ∩ N(j)|` on the unweighted skeleton.
    pub sigma: usize,
}

pub fn graph_stats(g: &WeightedGraph) -> Result<GraphStats> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let adj = g.neighbors();
    let mut diameter = 0;
    let mut wiener = 0usize;
    for source in 0..g.n() {
        for (target, d) in bfs(&adj, source).into_iter().enumerate() {
            let d = d.ok_or(Error::Disconnected)?;
            diameter = diameter.max(d);
            if target > source {
                wiener += d;
            }
        }
    }
    Ok(GraphStats {
        m: g.m(),
        weight_sum: g.weight_sum(),
        degree_sequence: g.degrees(),
        diameter,
        cut_edges: count_bridges(&adj),
        spanning_tree_count: spanning_tree_count(g),
        wiener: wiener as f64,
    })
}

/// Kirchhoff count: determinant of the Laplacian with the last row and
/// column removed, by partially pivoted LU.
pub fn spanning_tree_count(g: &WeightedGraph) -> f64 {
    let k = g.n() - 1;
    if k == 0 {
        return 1.0;
    }
    let mut reduced = DMatrix::<f64>::zeros(k, k);
    for e in g.edges() {
        for (a, b) in [(e.i, e.j), (e.j, e.i)] {
            if a < k {
                reduced[(a, a)] += e.w;
                if b < k {
                    reduced[(a, b)] -= e.w;
                }
            }
        }
    }
    let det = reduced.lu().determinant();
    if g.is_unweighted() {
        let rounded = det.round();
        if (det - rounded).abs() > 1e-6 * rounded.abs().max(1.0) {
            log::warn!("spanning-tree determinant {det} is far from integer {rounded}");
        }
        rounded
    } else {
        det
    }
}

/// Iterative Tarjan bridge search.
fn count_bridges(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut bridges = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (node, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
            if *next < adj[u].len() {
                let v = adj[u][*next];
                *next += 1;
                if v == parent {
                    continue;
                }
                if disc[v] == usize::MAX {
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push((v, u, 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] > disc[parent] {
                        bridges += 1;
                    }
                }
            }
        }
    }
    bridges
}

pub fn sparsity_measures(g: &WeightedGraph) -> Sparsity {
    let adj = g.neighbors();
    let deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut sigma = 0;
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            let common = count_common(&adj[i], &adj[j]);
            sigma = sigma.max(deg[i] + deg[j] - common);
        }
    }
    Sparsity {
        a0: 2 * g.m(),
        s01: deg.iter().copied().max().unwrap_or(0),
        sigma,
    }
}

fn count_common(a: &[usize], b: &[usize]) -> usize {
    let (mut x, mut y, mut count) = (0, 0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                x += 1;
                y += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    /// Counts spanning trees by checking every (n-1)-edge subset for acyclicity.
    fn brute_force_spanning_trees(g: &WeightedGraph) -> usize {
        let m = g.m();
        let n = g.n();
        let mut count = 0;
        for mask in 0u64..(1 << m) {
            if mask.count_ones() as usize != n - 1 {
                continue;
            }
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            let mut acyclic = true;
            for (k, e) in g.edges().iter().enumerate() {
                if mask >> k & 1 == 1 {
                    let (a, b) = (find(&mut parent, e.i), find(&mut parent, e.j));
                    if a == b {
                        acyclic = false;
                        break;
                    }
                    parent[a] = b;
                }
            }
            if acyclic {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn complete_graph_spanning_trees() {
        let k5 = Family::Complete.build(&[5]).unwrap();
        assert_eq!(graph_stats(&k5).unwrap().spanning_tree_count, 125.0);
        for n in 2..9 {
            let g = Family::Complete.build(&[n]).unwrap();
            assert_eq!(spanning_tree_count(&g), (n as f64).powi(n as i32 - 2));
        }
    }

    #[test]
    fn cycle_spanning_trees_match_enumeration() {
        let c5 = Family::Cycle.build(&[5]).unwrap();
        assert_eq!(brute_force_spanning_trees(&c5), 5);
        assert_eq!(spanning_tree_count(&c5), 5.0);
        for g in [
            Family::CompleteBipartite.build(&[2, 3]).unwrap(),
            Family::StarLikeClique.build(&[6, 4]).unwrap(),
            Family::PathLikeK3.build(&[6]).unwrap(),
            Family::Complete.build(&[5]).unwrap(),
        ] {
            assert_eq!(spanning_tree_count(&g), brute_force_spanning_trees(&g) as f64);
        }
    }

    #[test]
    fn weighted_spanning_tree_sum() {
        // triangle with weights a, b, c: trees ab + bc + ca
        let g = WeightedGraph::new(3, [(0, 1, 2.0), (1, 2, 3.0), (0, 2, 5.0)]).unwrap();
        assert!((spanning_tree_count(&g) - (6.0 + 15.0 + 10.0)).abs() < 1e-12);
    }

    #[test]
    fn wiener_numbers() {
        let p5 = Family::Path.build(&[5]).unwrap();
        assert_eq!(graph_stats(&p5).unwrap().wiener, 20.0);
        let s5 = Family::Star.build(&[5]).unwrap();
        assert_eq!(graph_stats(&s5).unwrap().wiener, 16.0);
        for n in 3..=50usize {
            let p = graph_stats(&Family::Path.build(&[n]).unwrap()).unwrap();
            assert_eq!(p.wiener as usize, (n + 1) * n * (n - 1) / 6);
            let s = graph_stats(&Family::Star.build(&[n]).unwrap()).unwrap();
            assert_eq!(s.wiener as usize, (n - 1) * (n - 1));
        }
    }

    #[test]
    fn diameter_and_cut_edges() {
        let p5 = graph_stats(&Family::Path.build(&[5]).unwrap()).unwrap();
        assert_eq!((p5.diameter, p5.cut_edges), (4, 4));
        let k5 = graph_stats(&Family::Complete.build(&[5]).unwrap()).unwrap();
        assert_eq!((k5.diameter, k5.cut_edges), (1, 0));
        let c6 = graph_stats(&Family::Cycle.build(&[6]).unwrap()).unwrap();
        assert_eq!((c6.diameter, c6.cut_edges), (3, 0));
    }

    #[test]
    fn stats_require_connectivity() {
        let g = WeightedGraph::unweighted(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(graph_stats(&g), Err(Error::Disconnected));
    }

    #[test]
    fn unweighted_sums() {
        let g = Family::PathLikeK3.build(&[7]).unwrap();
        let s = graph_stats(&g).unwrap();
        assert_eq!(s.weight_sum, s.m as f64);
        assert_eq!(s.degree_sequence.iter().sum::<f64>(), 2.0 * s.m as f64);
    }

    #[test]
    fn sparsity_examples() {
        let k5 = Family::Complete.build(&[5]).unwrap();
        assert_eq!(sparsity_measures(&k5), Sparsity { a0: 20, s01: 4, sigma: 5 });
        let p3 = Family::Path.build(&[3]).unwrap();
        assert_eq!(sparsity_measures(&p3), Sparsity { a0: 4, s01: 2, sigma: 3 });
        let k2 = Family::Complete.build(&[2]).unwrap();
        assert_eq!(sparsity_measures(&k2), Sparsity { a0: 2, s01: 1, sigma: 2 });
    }

    #[test]
    fn sigma_ignores_weights() {
        let g = WeightedGraph::new(3, [(0, 1, 4.0), (1, 2, 0.5)]).unwrap();
        assert_eq!(sparsity_measures(&g).sigma, 3);
    }
}
