//! Signed graphs: data model, text format, switching, balance, girth and
//! switching equivalence.
//!
//! Vertices are dense indices `0..n`. Edges are stored once, as `(u, v, sign)`
//! with `u < v`, sorted lexicographically; that order is also the canonical
//! serialization order.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest input graph accepted by the parser and constructors.
pub const MAX_INPUT_VERTICES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Positive, Sign::Negative];

    #[inline]
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    /// Product of signs (`+` is the identity).
    #[inline]
    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Positive),
            '-' => Some(Sign::Negative),
            _ => None,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flip()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

/// A simple graph whose edges carry a sign.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
    // neighbor lists sorted by neighbor index
    adj: Vec<Vec<(usize, Sign)>>,
}

impl SignedGraph {
    /// Builds a graph, rejecting loops, duplicate pairs and out-of-range endpoints.
    /// Endpoints may be given in either order.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Sign)>,
    {
        if n > MAX_INPUT_VERTICES {
            return Err(Error::SizeCap {
                what: "vertex count",
                limit: MAX_INPUT_VERTICES,
                actual: n,
            });
        }
        let mut list: Vec<Edge> = Vec::new();
        for (a, b, sign) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            list.push(Edge { u, v, sign });
        }
        list.sort();
        for w in list.windows(2) {
            if (w[0].u, w[0].v) == (w[1].u, w[1].v) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    w[0].u, w[0].v
                )));
            }
        }
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u].push((e.v, e.sign));
            adj[e.v].push((e.u, e.sign));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        SignedGraph { n, edges, adj }
    }

    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, Sign)] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn sign(&self, u: usize, v: usize) -> Option<Sign> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.sign(u, v).is_some()
    }

    /// Unsigned edge list; two graphs with equal underlying graphs return equal vectors.
    pub fn underlying(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    pub fn same_underlying(&self, other: &SignedGraph) -> bool {
        self.n == other.n
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| (a.u, a.v) == (b.u, b.v))
    }

    /// The same underlying graph with every sign reversed.
    pub fn negated(&self) -> SignedGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { sign: e.sign.flip(), ..*e })
            .collect();
        Self::from_sorted(self.n, edges)
    }

    /// Induced subgraph on `keep` (in the given order), relabelled `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> SignedGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .map(|e| {
                let (a, b) = (index[e.u], index[e.v]);
                Edge { u: a.min(b), v: a.max(b), sign: e.sign }
            })
            .collect();
        edges.sort();
        Self::from_sorted(keep.len(), edges)
    }

    /// Adds the edge `uv`; fails on loops, duplicates and bad indices.
    pub fn with_edge(&self, u: usize, v: usize, sign: Sign) -> Result<SignedGraph> {
        let it = self
            .edges
            .iter()
            .map(|e| (e.u, e.v, e.sign))
            .chain(std::iter::once((u, v, sign)));
        SignedGraph::new(self.n, it)
    }

    /// Parses the line format `n m` followed by `m` lines `u v s`.
    pub fn parse(text: &str) -> Result<SignedGraph> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut edges: Vec<(usize, usize, Sign, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    if fields.len() != 2 {
                        return Err(err(format!("expected header `n m`, found `{line}`")));
                    }
                    let n: usize = fields[0]
                        .parse()
                        .map_err(|_| err(format!("bad vertex count `{}`", fields[0])))?;
                    let m: usize = fields[1]
                        .parse()
                        .map_err(|_| err(format!("bad edge count `{}`", fields[1])))?;
                    if n > MAX_INPUT_VERTICES {
                        return Err(err(format!(
                            "vertex count {n} exceeds cap {MAX_INPUT_VERTICES}"
                        )));
                    }
                    header = Some((n, m, line_no));
                }
                Some((n, _, _)) => {
                    if fields.len() != 3 {
                        return Err(err(format!("expected `u v s`, found `{line}`")));
                    }
                    let u: usize = fields[0]
                        .parse()
                        .map_err(|_| err(format!("bad vertex `{}`", fields[0])))?;
                    let v: usize = fields[1]
                        .parse()
                        .map_err(|_| err(format!("bad vertex `{}`", fields[1])))?;
                    let mut chars = fields[2].chars();
                    let sign = match (chars.next().and_then(Sign::from_char), chars.next()) {
                        (Some(s), None) => s,
                        _ => return Err(err(format!("bad sign `{}`", fields[2]))),
                    };
                    if u >= n || v >= n {
                        return Err(err(format!("vertex index out of range 0..{n}")));
                    }
                    if u == v {
                        return Err(err(format!("loop at vertex {u}")));
                    }
                    edges.push((u, v, sign, line_no));
                }
            }
        }
        let (n, m, header_line) = header.ok_or(Error::Parse {
            line: 0,
            message: "missing header line".into(),
        })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: header_line,
                message: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        let mut seen = std::collections::HashMap::new();
        for &(u, v, _, line) in &edges {
            let key = (u.min(v), u.max(v));
            if let Some(first) = seen.insert(key, line) {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate edge ({}, {}) (first on line {first})", key.0, key.1),
                });
            }
        }
        SignedGraph::new(n, edges.into_iter().map(|(u, v, s, _)| (u, v, s)))
    }

    /// Canonical text form: header, then edges sorted by `(u, v)`.
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, e.sign));
        }
        out
    }

    /// Switches every vertex of `set`: an edge flips iff exactly one endpoint is in the set.
    pub fn switch(&self, set: &SwitchSet) -> SignedGraph {
        let mut inside = vec![false; self.n];
        for &v in &set.members {
            if v < self.n {
                inside[v] = true;
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                sign: if inside[e.u] != inside[e.v] { e.sign.flip() } else { e.sign },
                ..*e
            })
            .collect();
        Self::from_sorted(self.n, edges)
    }

    /// Balance of a closed walk: balanced iff it uses an even number of negative edges.
    pub fn walk_balance(&self, walk: &ClosedWalk) -> Result<Balance> {
        let vs = &walk.vertices;
        if vs.len() < 2 {
            return Err(Error::InvalidWalk("a closed walk needs at least two vertices".into()));
        }
        let mut negatives = 0usize;
        for i in 0..vs.len() {
            let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
            match self.sign(a, b) {
                Some(Sign::Negative) => negatives += 1,
                Some(Sign::Positive) => {}
                None => {
                    return Err(Error::InvalidWalk(format!("({a}, {b}) is not an edge")));
                }
            }
        }
        Ok(if negatives % 2 == 0 {
            Balance::Balanced
        } else {
            Balance::Unbalanced
        })
    }

    /// Switch set making every edge of the BFS spanning forest positive.
    /// Roots are the smallest vertex of each component; neighbors are explored
    /// in index order.
    pub fn canonical_switch_set(&self) -> SwitchSet {
        let mut flip = vec![false; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &(w, s) in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        flip[w] = flip[u] ^ s.is_negative();
                        queue.push_back(w);
                    }
                }
            }
        }
        SwitchSet::new((0..self.n).filter(|&v| flip[v]).collect())
    }

    /// Representative of the switching class with all BFS-forest edges positive.
    pub fn switching_canonical_form(&self) -> SignedGraph {
        self.switch(&self.canonical_switch_set())
    }

    /// Same underlying labelled graph and same switching class.
    pub fn is_switching_equivalent(&self, other: &SignedGraph) -> bool {
        self.same_underlying(other)
            && self.switching_canonical_form() == other.switching_canonical_form()
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &(w, _) in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &(w, _) in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl fmt::Debug for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedGraph(n={}, [", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}{}", e.u, e.sign, e.v)?;
        }
        f.write_str("])")
    }
}

/// A set of vertices to switch.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SwitchSet {
    members: Vec<usize>,
}

impl SwitchSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        SwitchSet { members }
    }

    /// Checks `members ⊆ 0..n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self.members.iter().find(|&&v| v >= n) {
            Some(v) => Err(Error::InvalidGraph(format!("switch vertex {v} outside 0..{n}"))),
            None => Ok(()),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn from_bits(bits: u64, n: usize) -> Self {
        SwitchSet {
            members: (0..n).filter(|&v| bits >> v & 1 == 1).collect(),
        }
    }
}

impl fmt::Display for SwitchSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// A cyclic vertex sequence `v_1 .. v_k`; the closing pair `(v_k, v_1)` is implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedWalk {
    pub vertices: Vec<usize>,
}

impl ClosedWalk {
    pub fn new(vertices: Vec<usize>) -> Self {
        ClosedWalk { vertices }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Balance {
    Balanced,
    Unbalanced,
}

/// Cycle `0 1 .. n-1 0`; the listed edge indices (edge `i` joins `i` and `i+1`) are negative.
pub fn cycle(n: usize, negative: &[usize]) -> SignedGraph {
    let edges = (0..n).map(|i| {
        let sign = if negative.contains(&i) { Sign::Negative } else { Sign::Positive };
        (i, (i + 1) % n, sign)
    });
    SignedGraph::new(n, edges).expect("cycle needs n >= 3")
}

/// Complete graph with every edge of the given sign.
pub fn complete(n: usize, sign: Sign) -> SignedGraph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, sign)));
    SignedGraph::new(n, edges).expect("complete graph is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_pm() -> SignedGraph {
        SignedGraph::parse("3 2\n0 1 +\n1 2 -\n").unwrap()
    }

    #[test]
    fn parses_direct_encoding() {
        let g = path_pm();
        assert_eq!(g.n(), 3);
        assert_eq!(g.sign(0, 1), Some(Sign::Positive));
        assert_eq!(g.sign(2, 1), Some(Sign::Negative));
        assert_eq!(g.sign(0, 2), None);
    }

    #[test]
    fn serialization_is_canonical() {
        let g = SignedGraph::parse("# comment\n4 3\n3 1 -\n\n0 2 +\n1 0 +\n").unwrap();
        assert_eq!(g.serialize(), "4 3\n0 1 +\n0 2 +\n1 3 -\n");
        assert_eq!(SignedGraph::parse(&g.serialize()).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("3 1\n0 0 +\n", 2, "loop"),
            ("3 1\n0 5 +\n", 2, "range"),
            ("3 2\n0 1 +\n1 0 -\n", 3, "duplicate"),
            ("3 1\n0 1 x\n", 2, "sign"),
            ("3 1\n0 1\n", 2, "expected"),
            ("x 1\n", 1, "vertex count"),
            ("3 2\n0 1 +\n", 1, "announces"),
        ];
        for (text, line, needle) in cases {
            match SignedGraph::parse(text) {
                Err(Error::Parse { line: l, message }) => {
                    assert_eq!(l, line, "{text:?}: {message}");
                    assert!(message.contains(needle), "{message}");
                }
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert!(SignedGraph::new(2, [(0, 0, Sign::Positive)]).is_err());
        assert!(SignedGraph::new(2, [(0, 2, Sign::Positive)]).is_err());
        assert!(SignedGraph::new(2, [(0, 1, Sign::Positive), (1, 0, Sign::Negative)]).is_err());
    }

    #[test]
    fn switching_identities() {
        let g = cycle(5, &[1, 3]);
        assert_eq!(g.switch(&SwitchSet::default()), g);
        assert_eq!(g.switch(&SwitchSet::new((0..5).collect())), g);
        let s = SwitchSet::new(vec![0, 2]);
        assert_eq!(g.switch(&s).switch(&s), g);
        let sw = g.switch(&SwitchSet::new(vec![0]));
        assert_eq!(sw.sign(0, 1), Some(Sign::Negative));
        assert_eq!(sw.sign(4, 0), Some(Sign::Negative));
        assert_eq!(sw.sign(1, 2), Some(Sign::Negative));
    }

    #[test]
    fn walk_balance_parity() {
        let tri = complete(3, Sign::Positive);
        let w = ClosedWalk::new(vec![0, 1, 2]);
        assert_eq!(tri.walk_balance(&w).unwrap(), Balance::Balanced);
        let c4 = cycle(4, &[2]);
        let w4 = ClosedWalk::new(vec![0, 1, 2, 3]);
        assert_eq!(c4.walk_balance(&w4).unwrap(), Balance::Unbalanced);
        assert!(c4.walk_balance(&ClosedWalk::new(vec![0, 2, 1])).is_err());
        // a walk traversing an edge twice
        assert_eq!(
            c4.walk_balance(&ClosedWalk::new(vec![2, 3])).unwrap(),
            Balance::Balanced
        );
    }

    #[test]
    fn canonical_form_of_positive_cycle_is_itself() {
        let c = cycle(6, &[]);
        assert_eq!(c.switching_canonical_form(), c);
    }

    #[test]
    fn c4_negative_tree_edge_and_non_tree_edge_agree() {
        // BFS from 0 uses edges 01, 03, 12; edge 23 is the non-tree edge.
        let non_tree = SignedGraph::parse("4 4\n0 1 +\n1 2 +\n2 3 -\n0 3 +\n").unwrap();
        let tree = SignedGraph::parse("4 4\n0 1 -\n1 2 +\n2 3 +\n0 3 +\n").unwrap();
        let a = non_tree.switching_canonical_form();
        assert_eq!(a, tree.switching_canonical_form());
        assert_eq!(a, non_tree);
        // oracle: exactly the switchings of `tree` reach `non_tree`
        let hits = (0u64..16)
            .filter(|&b| tree.switch(&SwitchSet::from_bits(b, 4)) == non_tree)
            .count();
        assert_eq!(hits, 2);
    }

    #[test]
    fn balanced_and_unbalanced_c4_are_not_equivalent() {
        assert!(!cycle(4, &[]).is_switching_equivalent(&cycle(4, &[0])));
        assert!(cycle(4, &[0, 1]).is_switching_equivalent(&cycle(4, &[])));
    }

    #[test]
    fn girth_values() {
        let tree = SignedGraph::parse("4 3\n0 1 +\n1 2 -\n1 3 +\n").unwrap();
        assert_eq!(tree.girth(), None);
        assert_eq!(cycle(7, &[3]).girth(), Some(7));
        assert_eq!(complete(5, Sign::Negative).girth(), Some(3));
        let two = SignedGraph::new(
            9,
            [
                (0, 1, Sign::Positive),
                (1, 2, Sign::Positive),
                (2, 3, Sign::Positive),
                (3, 4, Sign::Positive),
                (4, 0, Sign::Positive),
                (5, 6, Sign::Positive),
                (6, 7, Sign::Positive),
                (7, 8, Sign::Positive),
                (8, 5, Sign::Positive),
            ],
        )
        .unwrap();
        assert_eq!(two.girth(), Some(4));
    }

    #[test]
    fn induced_relabels() {
        let g = cycle(5, &[0]);
        let h = g.induced(&[1, 0, 4]);
        assert_eq!(h.serialize(), "3 2\n0 1 -\n1 2 +\n");
    }
}
