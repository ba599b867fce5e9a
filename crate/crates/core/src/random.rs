//! Seeded random signed graphs used by the tests, the benches and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::density::mad_exact;
use crate::discharge::is_config_free;
use crate::reduce::Theorem;
use crate::signed::{Sign, SignedGraph};
use crate::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

fn build(n: usize, edges: Vec<(usize, usize, Sign)>) -> SignedGraph {
    SignedGraph::new(n, edges).expect("generated edges are simple")
}

/// `G(n, p)` with independent uniform signs.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> SignedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, random_sign(rng)));
            }
        }
    }
    build(n, edges)
}

/// `G(n, p)` topped up with random edges until every degree is at least `k`.
pub fn with_min_degree<R: Rng>(n: usize, k: usize, p: f64, rng: &mut R) -> SignedGraph {
    assert!(k < n, "minimum degree {k} impossible on {n} vertices");
    let g = gnp(n, p, rng);
    let mut adj = vec![vec![false; n]; n];
    let mut edges: Vec<(usize, usize, Sign)> = g.edges().iter().map(|e| (e.u, e.v, e.sign)).collect();
    let mut deg = vec![0usize; n];
    for &(u, v, _) in &edges {
        adj[u][v] = true;
        adj[v][u] = true;
        deg[u] += 1;
        deg[v] += 1;
    }
    for u in 0..n {
        while deg[u] < k {
            let mut free: Vec<usize> = (0..n).filter(|&v| v != u && !adj[u][v]).collect();
            free.shuffle(rng);
            // prefer partners that still need edges
            free.sort_by_key(|&v| deg[v] >= k);
            let v = free[0];
            adj[u][v] = true;
            adj[v][u] = true;
            deg[u] += 1;
            deg[v] += 1;
            edges.push((u, v, random_sign(rng)));
        }
    }
    build(n, edges)
}

/// Replaces edge `index` by a path of length two through a new last vertex.
/// The product of the two new signs equals the old sign.
pub fn subdivide<R: Rng>(g: &SignedGraph, index: usize, rng: &mut R) -> SignedGraph {
    let w = g.n();
    let mut edges: Vec<(usize, usize, Sign)> = Vec::with_capacity(g.edge_count() + 1);
    for (i, e) in g.edges().iter().enumerate() {
        if i == index {
            let a = random_sign(rng);
            edges.push((e.u, w, a));
            edges.push((w, e.v, a.mul(e.sign)));
        } else {
            edges.push((e.u, e.v, e.sign));
        }
    }
    build(w + 1, edges)
}

/// Minimum degree used for the base graph of a configuration-free corpus.
pub fn base_min_degree(theorem: Theorem) -> usize {
    match theorem {
        Theorem::Sp5 => 3,
        Theorem::Sp9 => 4,
        Theorem::Spq(_) => 5,
    }
}

/// A graph avoiding every configuration of `theorem`: a random base of high
/// minimum degree, then up to `attempts` random subdivisions, each kept only
/// if the result is still configuration-free.
pub fn config_free_graph<R: Rng>(theorem: Theorem, n: usize, attempts: usize, rng: &mut R) -> SignedGraph {
    let k = base_min_degree(theorem);
    let mut g = loop {
        let g = with_min_degree(n, k, 0.1, rng);
        if is_config_free(&g, theorem) {
            break g;
        }
    };
    for _ in 0..attempts {
        let index = rng.gen_range(0..g.edge_count());
        let h = subdivide(&g, index, rng);
        if is_config_free(&h, theorem) {
            g = h;
        }
    }
    g
}

/// Adds random edges one at a time, keeping each only while `mad < bound`.
pub fn sparse_below<R: Rng>(n: usize, bound: Rational, attempts: usize, rng: &mut R) -> SignedGraph {
    let mut g = SignedGraph::empty(n);
    if n < 2 {
        return g;
    }
    for _ in 0..attempts {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || g.is_adjacent(u, v) {
            continue;
        }
        let h = g.with_edge(u, v, random_sign(rng)).expect("fresh edge");
        if mad_exact(&h).map(|c| c.value < bound).unwrap_or(false) {
            g = h;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn seeded_generators_are_deterministic() {
        assert_eq!(gnp(10, 0.4, &mut rng(3)), gnp(10, 0.4, &mut rng(3)));
        let g = with_min_degree(12, 4, 0.1, &mut rng(1));
        assert!((0..12).all(|v| g.degree(v) >= 4));
    }

    #[test]
    fn subdivision_adds_a_two_vertex() {
        let g = with_min_degree(8, 3, 0.2, &mut rng(2));
        let h = subdivide(&g, 0, &mut rng(0));
        assert_eq!(h.n(), 9);
        assert_eq!(h.edge_count(), g.edge_count() + 1);
        assert_eq!(h.degree(8), 2);
    }

    #[test]
    fn sparse_graphs_respect_bound() {
        let bound = ratio(20, 7);
        let g = sparse_below(14, bound, 80, &mut rng(5));
        assert!(mad_exact(&g).unwrap().value < bound);
        assert!(g.edge_count() > 0);
    }

    #[test]
    fn config_free_graphs() {
        for th in [Theorem::Sp5, Theorem::Sp9, Theorem::Spq(13)] {
            let g = config_free_graph(th, 14, 40, &mut rng(7));
            assert!(is_config_free(&g, th));
        }
    }
}
