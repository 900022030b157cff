//! Random connected graphs for property suites and statistical checks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::WeightedGraph;

/// Random labeled tree: nodes in shuffled order, each attached to a uniformly
/// chosen earlier node.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> WeightedGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let pairs: Vec<(usize, usize)> = (1..n)
        .map(|k| (order[k], order[rng.random_range(0..k)]))
        .collect();
    WeightedGraph::unweighted(n, pairs).expect("attachment tree is simple")
}

/// Connected graph: a random tree plus each remaining pair with probability
/// `p`. Weights are drawn from `weights` (use `1.0..=1.0` for unweighted).
pub fn random_connected<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    p: f64,
    weights: std::ops::RangeInclusive<f64>,
) -> WeightedGraph {
    let tree = random_tree(rng, n);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if tree.has_edge(a, b) || rng.random_bool(p) {
                let w = if weights.start() == weights.end() {
                    *weights.start()
                } else {
                    rng.random_range(weights.clone())
                };
                edges.push((a, b, w));
            }
        }
    }
    WeightedGraph::new(n, edges).expect("generated graph is simple")
}

/// Connected spanning subgraph: keeps a random spanning tree of `g` and each
/// other edge with probability `keep`.
pub fn random_spanning_subgraph<R: Rng + ?Sized>(
    rng: &mut R,
    g: &WeightedGraph,
    keep: f64,
) -> WeightedGraph {
    let n = g.n();
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.shuffle(rng);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut in_tree = vec![false; g.m()];
    for &k in &order {
        let e = g.edges()[k];
        let (a, b) = (find(&mut parent, e.i), find(&mut parent, e.j));
        if a != b {
            parent[a] = b;
            in_tree[k] = true;
        }
    }
    let draws: Vec<bool> = (0..g.m()).map(|_| rng.random_bool(keep)).collect();
    g.retain_edges(|k, _| in_tree[k] || draws[k])
}
