//! Target graphs: signed graphs on at most 64 vertices with neighbor masks,
//! the signed Paley graphs `SP_q`, the `G^+`, `G^-` and `ρ(G)` constructions,
//! and the common-neighborhood properties `P_{k,n}`.

use serde::Serialize;

use crate::autom;
use crate::error::{Error, Result};
use crate::field::FieldTable;
use crate::mask::{ColorMask, MAX_TARGET};
use crate::par;
use crate::signed::{Sign, SignedGraph};

/// Largest graph accepted by [`rho`].
pub const MAX_RHO_INPUT: usize = MAX_TARGET / 2;

/// A signed graph prepared for use as a coloring alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetGraph {
    graph: SignedGraph,
    pos: Vec<ColorMask>,
    neg: Vec<ColorMask>,
    antitwin: Option<Vec<usize>>,
}

impl TargetGraph {
    /// Wraps a graph and detects an antitwin pairing when every vertex has a unique antitwin.
    pub fn new(graph: SignedGraph) -> Result<Self> {
        let mut t = Self::without_antitwins(graph)?;
        t.antitwin = t.detect_antitwins();
        Ok(t)
    }

    /// Wraps a graph and never attaches an antitwin map.
    pub fn without_antitwins(graph: SignedGraph) -> Result<Self> {
        let n = graph.n();
        if n > MAX_TARGET {
            return Err(Error::SizeCap { what: "target vertex count", limit: MAX_TARGET, actual: n });
        }
        let mut pos = vec![ColorMask::EMPTY; n];
        let mut neg = vec![ColorMask::EMPTY; n];
        for e in graph.edges() {
            let masks = match e.sign {
                Sign::Positive => &mut pos,
                Sign::Negative => &mut neg,
            };
            masks[e.u].insert(e.v);
            masks[e.v].insert(e.u);
        }
        Ok(TargetGraph { graph, pos, neg, antitwin: None })
    }

    /// Wraps a graph with an explicit antitwin map, validating the invariant.
    pub fn with_antitwins(graph: SignedGraph, antitwin: Vec<usize>) -> Result<Self> {
        let mut t = Self::without_antitwins(graph)?;
        let n = t.n();
        if antitwin.len() != n {
            return Err(Error::InvalidGraph("antitwin map has wrong length".into()));
        }
        for v in 0..n {
            let w = antitwin[v];
            if w >= n || w == v || antitwin[w] != v || t.pos[w] != t.neg[v] || t.neg[w] != t.pos[v] {
                return Err(Error::InvalidGraph(format!("vertex {v} has no valid antitwin {w}")));
            }
        }
        t.antitwin = Some(antitwin);
        Ok(t)
    }

    fn detect_antitwins(&self) -> Option<Vec<usize>> {
        let n = self.n();
        if n == 0 {
            return None;
        }
        let mut map = vec![0; n];
        for v in 0..n {
            let mut found = None;
            for w in 0..n {
                if w != v && self.pos[w] == self.neg[v] && self.neg[w] == self.pos[v] {
                    if found.is_some() {
                        return None;
                    }
                    found = Some(w);
                }
            }
            map[v] = found?;
        }
        Some(map)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn graph(&self) -> &SignedGraph {
        &self.graph
    }

    #[inline]
    pub fn pos(&self, v: usize) -> ColorMask {
        self.pos[v]
    }

    #[inline]
    pub fn neg(&self, v: usize) -> ColorMask {
        self.neg[v]
    }

    /// `N^s(v)`: the neighbors joined to `v` by an edge of sign `s`.
    #[inline]
    pub fn mask(&self, v: usize, s: Sign) -> ColorMask {
        match s {
            Sign::Positive => self.pos[v],
            Sign::Negative => self.neg[v],
        }
    }

    /// Union of `N^s(c)` over `c` in `set`.
    pub fn mask_union(&self, set: ColorMask, s: Sign) -> ColorMask {
        set.iter().fold(ColorMask::EMPTY, |acc, c| acc | self.mask(c, s))
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        (self.pos[a] | self.neg[a]).contains(b)
    }

    #[inline]
    pub fn sign(&self, a: usize, b: usize) -> Option<Sign> {
        if self.pos[a].contains(b) {
            Some(Sign::Positive)
        } else if self.neg[a].contains(b) {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn full(&self) -> ColorMask {
        ColorMask::full(self.n())
    }

    pub fn is_antitwinned(&self) -> bool {
        self.antitwin.is_some()
    }

    pub fn antitwins(&self) -> Option<&[usize]> {
        self.antitwin.as_deref()
    }

    pub fn antitwin(&self, v: usize) -> Option<usize> {
        self.antitwin.as_ref().map(|m| m[v])
    }

    /// Equal colors or antitwin colors.
    pub fn same_identity(&self, a: usize, b: usize) -> bool {
        a == b || self.antitwin(a) == Some(b)
    }

    /// The colors sharing an identity with `c`.
    pub fn identity_mask(&self, c: usize) -> ColorMask {
        let mut m = ColorMask::single(c);
        if let Some(w) = self.antitwin(c) {
            m.insert(w);
        }
        m
    }

    /// The same target with every sign flipped.
    pub fn negated(&self) -> TargetGraph {
        TargetGraph {
            graph: self.graph.negated(),
            pos: self.neg.clone(),
            neg: self.pos.clone(),
            antitwin: self.antitwin.clone(),
        }
    }
}

/// The signed Paley graph `SP_q` as a plain signed graph.
pub fn sp_graph(q: usize) -> Result<SignedGraph> {
    let f = FieldTable::new(q)?;
    let edges = (0..q).flat_map(|u| {
        let f = &f;
        (u + 1..q).map(move |v| {
            let s = if f.is_square(f.sub(u, v)) { Sign::Positive } else { Sign::Negative };
            (u, v, s)
        })
    });
    SignedGraph::new(q, edges.collect::<Vec<_>>())
}

/// `SP_q` as a target (it has no antitwins).
pub fn gen_sp(q: usize) -> Result<TargetGraph> {
    TargetGraph::without_antitwins(sp_graph(q)?)
}

/// Adds vertex `n` joined positively to every other vertex.
pub fn plus(g: &SignedGraph) -> SignedGraph {
    let n = g.n();
    let edges = g
        .edges()
        .iter()
        .map(|e| (e.u, e.v, e.sign))
        .chain((0..n).map(|v| (v, n, Sign::Positive)));
    SignedGraph::new(n + 1, edges.collect::<Vec<_>>()).expect("adding a universal vertex keeps the graph simple")
}

/// Deletes vertex 0 of a vertex-transitive graph.
pub fn minus(g: &SignedGraph) -> Result<SignedGraph> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let t = TargetGraph::without_antitwins(g.clone())?;
    if !autom::check_transitivity(&t, 1)?.holds {
        return Err(Error::NotVertexTransitive);
    }
    let keep: Vec<usize> = (1..g.n()).collect();
    Ok(g.induced(&keep))
}

/// The antitwinned double `ρ(G)`: `v^+ = v`, `v^- = v + n`.
pub fn rho(g: &SignedGraph) -> Result<TargetGraph> {
    let n = g.n();
    if n > MAX_RHO_INPUT {
        return Err(Error::SizeCap { what: "rho input vertex count", limit: MAX_RHO_INPUT, actual: n });
    }
    let mut edges = Vec::with_capacity(4 * g.edge_count());
    for e in g.edges() {
        for (i, si) in [(0, Sign::Positive), (n, Sign::Negative)] {
            for (j, sj) in [(0, Sign::Positive), (n, Sign::Negative)] {
                edges.push((e.u + i, e.v + j, si.mul(sj).mul(e.sign)));
            }
        }
    }
    let doubled = SignedGraph::new(2 * n, edges)?;
    let antitwin = (0..2 * n).map(|v| (v + n) % (2 * n)).collect();
    TargetGraph::with_antitwins(doubled, antitwin)
}

/// `ρ(SP_q)`.
pub fn rho_sp(q: usize) -> Result<TargetGraph> {
    rho(&sp_graph(q)?)
}

/// `ρ(SP_q^+)`, the Tromp–Paley graph.
pub fn rho_sp_plus(q: usize) -> Result<TargetGraph> {
    rho(&plus(&sp_graph(q)?))
}

/// An ordered clique with a sign for each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueWitness {
    pub clique: Vec<usize>,
    pub signs: Vec<Sign>,
    pub common: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub holds: bool,
    /// Smallest value observed (common neighborhood size for `P_{k,n}`).
    pub minimum: Option<usize>,
    /// Counterexample, present iff the property fails.
    pub witness: Option<CliqueWitness>,
}

impl PropertyReport {
    pub fn line(&self) -> String {
        let verdict = if self.holds { "HOLDS" } else { "FAILS" };
        let mut s = format!("PROPERTY {} {verdict}", self.property);
        if let Some(m) = self.minimum {
            s.push_str(&format!(" min={m}"));
        }
        if let Some(w) = &self.witness {
            let signs: String = w.signs.iter().map(|s| s.as_char()).collect();
            s.push_str(&format!(" witness={:?}/{signs}", w.clique));
        }
        s
    }
}

/// Size of the common signed neighborhood of a clique.
pub fn common_neighbors(t: &TargetGraph, clique: &[usize], signs: &[Sign]) -> ColorMask {
    clique
        .iter()
        .zip(signs)
        .fold(t.full(), |acc, (&v, &s)| acc & t.mask(v, s))
}

fn extend_cliques(t: &TargetGraph, k: usize, clique: &mut Vec<usize>, cand: ColorMask, best: &mut Option<CliqueWitness>) {
    if clique.len() == k {
        for bits in 0..(1u32 << k) {
            let signs: Vec<Sign> = (0..k)
                .map(|i| if bits >> i & 1 == 1 { Sign::Negative } else { Sign::Positive })
                .collect();
            let common = common_neighbors(t, clique, &signs).len();
            if best.as_ref().map_or(true, |b| common < b.common) {
                *best = Some(CliqueWitness { clique: clique.clone(), signs, common });
            }
        }
        return;
    }
    for v in cand.iter() {
        clique.push(v);
        let next = ColorMask(cand.0 & !((2u64 << v) - 1)) & (t.pos(v) | t.neg(v));
        extend_cliques(t, k, clique, next, best);
        clique.pop();
    }
}

/// Smallest common signed neighborhood over all `k`-cliques and sign vectors.
pub fn min_common_neighbors(t: &TargetGraph, k: usize) -> Option<CliqueWitness> {
    if k == 0 {
        return Some(CliqueWitness { clique: vec![], signs: vec![], common: t.n() });
    }
    let per_root = par::map_collect(t.n(), |v| {
        let mut best = None;
        let mut clique = vec![v];
        let cand = ColorMask(t.full().0 & !((2u64 << v) - 1)) & (t.pos(v) | t.neg(v));
        extend_cliques(t, k, &mut clique, cand, &mut best);
        best
    });
    per_root
        .into_iter()
        .flatten()
        .fold(None, |acc: Option<CliqueWitness>, w| match acc {
            Some(a) if a.common <= w.common => Some(a),
            _ => Some(w),
        })
}

/// Decides property `P_{k,n}`; vacuously true when `T` has no `k`-clique.
pub fn check_property_p(t: &TargetGraph, k: usize, n: usize) -> PropertyReport {
    let best = min_common_neighbors(t, k);
    let minimum = best.as_ref().map(|w| w.common);
    let holds = minimum.map_or(true, |m| m >= n);
    PropertyReport {
        property: format!("P_{k}_{n}"),
        holds,
        minimum,
        witness: if holds { None } else { best },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sp5_is_pentagon_plus_pentagram() {
        let g = sp_graph(5).unwrap();
        assert_eq!(g.edge_count(), 10);
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    let d = (u + 5 - v) % 5;
                    let want = if d == 1 || d == 4 { Sign::Positive } else { Sign::Negative };
                    assert_eq!(g.sign(u, v), Some(want));
                }
            }
        }
    }

    #[test]
    fn sp9_positive_edges_are_rows_and_columns() {
        let g = sp_graph(9).unwrap();
        for u in 0..9 {
            for v in u + 1..9 {
                let same_row = u / 3 == v / 3;
                let same_col = u % 3 == v % 3;
                assert_eq!(g.sign(u, v) == Some(Sign::Positive), same_row || same_col, "{u} {v}");
            }
        }
    }

    #[test]
    fn constructions_have_expected_sizes() {
        let sp9p = plus(&sp_graph(9).unwrap());
        assert_eq!((sp9p.n(), sp9p.edge_count()), (10, 45));
        assert_eq!(sp9p.degree(9), 9);
        let k2 = plus(&SignedGraph::empty(1));
        assert_eq!(k2.serialize(), "2 1\n0 1 +\n");
        let m9 = minus(&sp_graph(9).unwrap()).unwrap();
        assert_eq!(m9.n(), 8);
        let m5 = minus(&sp_graph(5).unwrap()).unwrap();
        assert_eq!((m5.n(), m5.edge_count()), (4, 6));
        let k3 = crate::signed::complete(3, Sign::Positive);
        assert_eq!(minus(&k3).unwrap(), crate::signed::complete(2, Sign::Positive));
        let p3 = SignedGraph::parse("3 2\n0 1 +\n1 2 +\n").unwrap();
        assert_eq!(minus(&p3), Err(Error::NotVertexTransitive));
    }

    #[test]
    fn rho_structure() {
        let g = sp_graph(5).unwrap();
        let r = rho(&g).unwrap();
        assert_eq!(r.n(), 10);
        assert_eq!(r.graph().edge_count(), 40);
        for v in 0..10 {
            let w = r.antitwin(v).unwrap();
            assert!(!r.adjacent(v, w));
            assert_eq!(r.pos(w), r.neg(v));
        }
        assert_eq!(rho_sp_plus(9).unwrap().n(), 20);
        // detection recovers the same pairing
        let again = TargetGraph::new(r.graph().clone()).unwrap();
        assert_eq!(again.antitwins(), r.antitwins());
        assert!(rho(&SignedGraph::empty(33)).is_err());
    }

    #[test]
    fn sp5_p1_is_tight() {
        let rep = check_property_p(&gen_sp(5).unwrap(), 1, 2);
        assert!(rep.holds);
        assert_eq!(rep.minimum, Some(2));
        assert_eq!(rep.line(), "PROPERTY P_1_2 HOLDS min=2");
    }

    #[test]
    fn rho_sp9_plus_fails_p32() {
        let t = rho_sp_plus(9).unwrap();
        assert!(check_property_p(&t, 2, 4).holds);
        let rep = check_property_p(&t, 3, 2);
        assert!(!rep.holds);
        let w = rep.witness.unwrap();
        assert_eq!(w.common, 1);
        assert_eq!(common_neighbors(&t, &w.clique, &w.signs).len(), 1);
    }
}
