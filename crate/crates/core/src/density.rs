//! Exact maximum average degree.
//!
//! For a guess `λ = p/q` the quantity `max_S 2q·e(S) − p·|S|` is computed as
//! `2q·|E| − mincut` on the bipartite edge/vertex network
//! `source → edge (2q)`, `edge → endpoint (∞)`, `vertex → sink (p)`.
//! Improving guesses are taken from the maximizing set until no set beats the
//! current density.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, INF};
use crate::signed::SignedGraph;
use crate::{ratio, Rational};

pub const MAX_BRUTEFORCE_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityCertificate {
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub witness: Vec<usize>,
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// `p/q` with an explicit denominator, e.g. `2/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl DensityCertificate {
    pub fn line(&self) -> String {
        let w: Vec<String> = self.witness.iter().map(|v| v.to_string()).collect();
        format!("mad = {}  witness = {{{}}}", format_rational(&self.value), w.join(","))
    }
}

/// `2·e(S)/|S|` for a nonempty vertex set.
pub fn average_degree(g: &SignedGraph, set: &[usize]) -> Rational {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    let e = g.edges().iter().filter(|e| inside[e.u] && inside[e.v]).count();
    ratio(2 * e as i64, set.len() as i64)
}

fn edgeless(g: &SignedGraph) -> Result<Option<DensityCertificate>> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok((g.edge_count() == 0).then(|| DensityCertificate { value: ratio(0, 1), witness: vec![0] }))
}

/// Builds and solves the network for `λ = p/q`; returns (excess, maximal maximizing set).
fn best_set(g: &SignedGraph, lambda: Rational) -> (i64, Vec<usize>) {
    let (p, q) = (*lambda.numer(), *lambda.denom());
    let (n, m) = (g.n(), g.edge_count());
    let source = m + n;
    let sink = source + 1;
    let mut net = FlowNetwork::new(n + m + 2);
    for (i, e) in g.edges().iter().enumerate() {
        net.add_edge(source, i, 2 * q);
        net.add_edge(i, m + e.u, INF);
        net.add_edge(i, m + e.v, INF);
    }
    for v in 0..n {
        net.add_edge(m + v, sink, p);
    }
    let cut = net.max_flow(source, sink);
    let excess = 2 * q * m as i64 - cut;
    let side = net.not_reaching_sink(sink);
    let set = (0..n).filter(|&v| side[m + v]).collect();
    (excess, set)
}

/// Exact `mad(G)`; the witness is the union of all densest subgraphs.
pub fn mad_exact(g: &SignedGraph) -> Result<DensityCertificate> {
    if let Some(c) = edgeless(g)? {
        return Ok(c);
    }
    let mut witness: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    let mut value = average_degree(g, &witness);
    loop {
        let (excess, set) = best_set(g, value);
        let better = if set.is_empty() { value } else { average_degree(g, &set) };
        if excess > 0 && better > value {
            value = better;
            witness = set;
            continue;
        }
        // at the optimum the maximal zero-excess set is the union of densest subgraphs
        if excess == 0 && !set.is_empty() && better == value {
            witness = set;
        }
        return Ok(DensityCertificate { value, witness });
    }
}

/// Exhaustive maximum over all nonempty subsets; ties go to the largest set.
pub fn mad_bruteforce(g: &SignedGraph) -> Result<DensityCertificate> {
    let n = g.n();
    if n > MAX_BRUTEFORCE_VERTICES {
        return Err(Error::SizeCap { what: "brute-force vertex count", limit: MAX_BRUTEFORCE_VERTICES, actual: n });
    }
    if let Some(c) = edgeless(g)? {
        return Ok(c);
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |a, &(w, _)| a | 1 << w))
        .collect();
    let mut best: (Rational, u32, u32) = (ratio(0, 1), 0, 0);
    for s in 1u32..(1u32 << n) {
        let mut twice_e = 0u32;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice_e += (adj[v] & s).count_ones();
        }
        let d = ratio(twice_e as i64, s.count_ones() as i64);
        let size = s.count_ones();
        if d > best.0 || (d == best.0 && size > best.2) {
            best = (d, s, size);
        }
    }
    Ok(DensityCertificate {
        value: best.0,
        witness: (0..n).filter(|&v| best.1 >> v & 1 == 1).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MadGirthReport {
    pub girth: Option<usize>,
    #[serde(serialize_with = "ser_rational")]
    pub mad: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub bound: Rational,
    pub holds: bool,
}

/// Checks `mad(G) < 2g/(g−2)` for a graph the caller asserts is planar.
/// Forests are compared against the bound 2.
pub fn check_mad_girth(g: &SignedGraph, planar: bool) -> Result<MadGirthReport> {
    let mad = mad_exact(g)?.value;
    let girth = g.girth();
    let bound = match girth {
        Some(k) => ratio(2 * k as i64, k as i64 - 2),
        None => ratio(2, 1),
    };
    let holds = match girth {
        None => true,
        Some(_) => !planar || mad < bound,
    };
    Ok(MadGirthReport { girth, mad, bound, holds })
}
