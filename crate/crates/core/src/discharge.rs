//! Vertex classes, discharging rules and forbidden-configuration detection
//! for the three mad theorems.

use std::fmt;

use serde::Serialize;

use crate::density::{format_rational, ser_rational};
use crate::error::{Error, Result};
use crate::par;
use crate::reduce::{parse_config_id, spq_degree_limits, ConfigId, Theorem};
use crate::signed::SignedGraph;
use crate::{ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VertexClassSp5 {
    /// Degree 0 or 1.
    Low,
    Deg2,
    ThreeWorse,
    ThreeBad,
    ThreeGood,
    FourPlus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VertexClassSp9 {
    Deg2,
    Bad,
    Good,
    /// Degree 0, 1 or 3.
    Other,
}

fn two_neighbors(g: &SignedGraph, v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&(w, _)| g.degree(w) == 2).count()
}

pub fn classify_sp5(g: &SignedGraph) -> Vec<VertexClassSp5> {
    let worse: Vec<bool> = (0..g.n()).map(|v| g.degree(v) == 3 && two_neighbors(g, v) > 0).collect();
    (0..g.n())
        .map(|v| match g.degree(v) {
            0 | 1 => VertexClassSp5::Low,
            2 => VertexClassSp5::Deg2,
            3 if worse[v] => VertexClassSp5::ThreeWorse,
            3 if g.neighbors(v).iter().filter(|&&(w, _)| worse[w]).count() >= 2 => VertexClassSp5::ThreeBad,
            3 => VertexClassSp5::ThreeGood,
            _ => VertexClassSp5::FourPlus,
        })
        .collect()
}

pub fn classify_sp9(g: &SignedGraph) -> Vec<VertexClassSp9> {
    (0..g.n())
        .map(|v| {
            let d = g.degree(v);
            let t = two_neighbors(g, v);
            match d {
                2 => VertexClassSp9::Deg2,
                4 if t == 1 => VertexClassSp9::Bad,
                6 if t == 4 => VertexClassSp9::Bad,
                d if d >= 4 => VertexClassSp9::Good,
                _ => VertexClassSp9::Other,
            }
        })
        .collect()
}

/// The average-degree bound `m` of a theorem.
pub fn mad_bound(theorem: Theorem) -> Result<Rational> {
    Ok(match theorem {
        Theorem::Sp5 => ratio(20, 7),
        Theorem::Sp9 => ratio(17, 5),
        Theorem::Spq(q) => {
            check_q(q)?;
            ratio(4, 1) - ratio(8, q as i64 + 3)
        }
    })
}

fn check_q(q: usize) -> Result<()> {
    crate::field::FieldTable::new(q)?;
    if q < 9 {
        return Err(Error::InvalidField { q, reason: "the parametric theorem needs q >= 9".into() });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub from: usize,
    pub to: usize,
    #[serde(serialize_with = "ser_rational")]
    pub amount: Rational,
    pub rule: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DischargeReport {
    pub theorem: String,
    #[serde(serialize_with = "ser_rational")]
    pub bound: Rational,
    #[serde(serialize_with = "ser_rationals")]
    pub initial: Vec<Rational>,
    pub transfers: Vec<Transfer>,
    #[serde(serialize_with = "ser_rationals")]
    pub final_weights: Vec<Rational>,
    pub violations: Vec<usize>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

impl DischargeReport {
    pub fn initial_total(&self) -> Rational {
        self.initial.iter().copied().sum()
    }

    pub fn final_total(&self) -> Rational {
        self.final_weights.iter().copied().sum()
    }

    /// Σ final = Σ initial = 2|E| − m|V|.
    pub fn conserved(&self, g: &SignedGraph) -> bool {
        let expected = ratio(2 * g.edge_count() as i64, 1) - self.bound * ratio(g.n() as i64, 1);
        self.initial_total() == expected && self.final_total() == expected
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("discharging for {} with m = {}", self.theorem, format_rational(&self.bound))];
        for (v, (a, b)) in self.initial.iter().zip(&self.final_weights).enumerate() {
            out.push(format!("  v{v}: {} -> {}", format_rational(a), format_rational(b)));
        }
        out.push(format!("{} transfers, total weight {}", self.transfers.len(), format_rational(&self.final_total())));
        if self.violations.is_empty() {
            out.push("all final weights >= 0".into());
        } else {
            out.push(format!("negative final weight at {:?}", self.violations));
        }
        out
    }
}

/// Applies the theorem's discharging rules with initial weights `d(v) − m`.
pub fn run_discharge(g: &SignedGraph, theorem: Theorem) -> Result<DischargeReport> {
    let bound = mad_bound(theorem)?;
    let n = g.n();
    let per_vertex: Vec<Vec<Transfer>> = match theorem {
        Theorem::Sp5 => {
            use VertexClassSp5::*;
            let class = classify_sp5(g);
            par::map_collect(n, |v| {
                let mut out = Vec::new();
                for &(w, _) in g.neighbors(v) {
                    if g.degree(v) >= 3 && class[w] == Deg2 {
                        out.push(Transfer { from: v, to: w, amount: ratio(3, 7), rule: "R1" });
                    }
                    if matches!(class[v], ThreeGood | ThreeBad | FourPlus) && class[w] == ThreeWorse {
                        out.push(Transfer { from: v, to: w, amount: ratio(1, 7), rule: "R2" });
                    }
                    if matches!(class[v], ThreeGood | FourPlus) && class[w] == ThreeBad {
                        out.push(Transfer { from: v, to: w, amount: ratio(1, 7), rule: "R3" });
                    }
                }
                out
            })
        }
        Theorem::Sp9 => {
            let class = classify_sp9(g);
            par::map_collect(n, |v| {
                let mut out = Vec::new();
                for &(w, _) in g.neighbors(v) {
                    if g.degree(v) >= 4 && g.degree(w) == 2 {
                        out.push(Transfer { from: v, to: w, amount: ratio(7, 10), rule: "R2" });
                    }
                    if class[v] == VertexClassSp9::Good && class[w] == VertexClassSp9::Bad {
                        out.push(Transfer { from: v, to: w, amount: ratio(1, 10), rule: "Rb" });
                    }
                }
                out
            })
        }
        Theorem::Spq(q) => {
            let amount = ratio(q as i64 - 1, q as i64 + 3);
            par::map_collect(n, |v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&(w, _)| g.degree(v) >= 4 && g.degree(w) == 2)
                    .map(|&(w, _)| Transfer { from: v, to: w, amount, rule: "R" })
                    .collect()
            })
        }
    };
    let transfers: Vec<Transfer> = per_vertex.into_iter().flatten().collect();
    let initial: Vec<Rational> = (0..n).map(|v| ratio(g.degree(v) as i64, 1) - bound).collect();
    let mut final_weights = initial.clone();
    for t in &transfers {
        final_weights[t.from] -= t.amount;
        final_weights[t.to] += t.amount;
    }
    let zero = ratio(0, 1);
    let violations = (0..n).filter(|&v| final_weights[v] < zero).collect();
    Ok(DischargeReport { theorem: theorem.to_string(), bound, initial, transfers, final_weights, violations })
}

/// One occurrence of a configuration; the first vertex is its centre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub vertices: Vec<usize>,
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vertices.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", v.join(","))
    }
}

fn emb(vertices: Vec<usize>) -> Embedding {
    Embedding { vertices }
}

fn low_degree(g: &SignedGraph, index: usize) -> Vec<Embedding> {
    (0..g.n())
        .filter(|&v| g.degree(v) == index)
        .map(|v| {
            let mut vs = vec![v];
            vs.extend(g.neighbors(v).iter().map(|&(w, _)| w));
            emb(vs)
        })
        .collect()
}

fn adjacent_pairs(g: &SignedGraph, pred: impl Fn(usize) -> bool) -> Vec<Embedding> {
    g.edges().iter().filter(|e| pred(e.u) && pred(e.v)).map(|e| emb(vec![e.u, e.v])).collect()
}

fn two_at_three(g: &SignedGraph) -> Vec<Embedding> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) == 2 {
            for &(w, _) in g.neighbors(v) {
                if g.degree(w) == 3 {
                    out.push(emb(vec![v, w]));
                }
            }
        }
    }
    out
}

fn of_degree(g: &SignedGraph, d: usize) -> Vec<Embedding> {
    (0..g.n()).filter(|&v| g.degree(v) == d).map(|v| emb(vec![v])).collect()
}

fn detect_sp5(g: &SignedGraph, index: usize) -> Vec<Embedding> {
    use VertexClassSp5::*;
    let class = classify_sp5(g);
    let bad = |v: usize| matches!(class[v], Deg2 | ThreeBad);
    match index {
        0 | 1 => low_degree(g, index),
        2 => adjacent_pairs(g, bad),
        3 => {
            let mut out = Vec::new();
            for u in (0..g.n()).filter(|&u| g.degree(u) == 3) {
                let bads: Vec<usize> = g.neighbors(u).iter().map(|&(w, _)| w).filter(|&w| bad(w)).collect();
                for i in 0..bads.len() {
                    for j in i + 1..bads.len() {
                        out.push(emb(vec![u, bads[i], bads[j]]));
                    }
                }
            }
            out
        }
        4 => {
            // u1 bad – u2 – u3 – u4 with u2, u3 3-vertices and u4 a 2-vertex
            let mut out = Vec::new();
            for u2 in (0..g.n()).filter(|&u| g.degree(u) == 3) {
                for &(u3, _) in g.neighbors(u2) {
                    if g.degree(u3) != 3 {
                        continue;
                    }
                    for &(u1, _) in g.neighbors(u2) {
                        if u1 == u3 || !bad(u1) {
                            continue;
                        }
                        for &(u4, _) in g.neighbors(u3) {
                            if u4 != u2 && g.degree(u4) == 2 {
                                out.push(emb(vec![u1, u2, u3, u4]));
                            }
                        }
                    }
                }
            }
            out
        }
        _ => (0..g.n())
            .filter(|&u| g.degree(u) == 4 && two_neighbors(g, u) >= 3)
            .map(|u| {
                let mut vs = vec![u];
                vs.extend(g.neighbors(u).iter().map(|&(w, _)| w).filter(|&w| g.degree(w) == 2));
                emb(vs)
            })
            .collect(),
    }
}

/// Counts `(t, b, n)` of 2-, bad and good neighbors, or `None` if some neighbor is none of these.
fn sp9_profile(g: &SignedGraph, class: &[VertexClassSp9], u: usize) -> Option<(usize, usize, usize)> {
    let (mut t, mut b, mut n) = (0, 0, 0);
    for &(w, _) in g.neighbors(u) {
        match class[w] {
            VertexClassSp9::Deg2 => t += 1,
            VertexClassSp9::Bad => b += 1,
            VertexClassSp9::Good => n += 1,
            VertexClassSp9::Other => return None,
        }
    }
    Some((t, b, n))
}

/// The guards of configurations 6, 7 and 8 for a 4+-vertex.
pub fn sp9_guard(t: usize, b: usize, n: usize) -> Option<usize> {
    if n == 0 && ((t + 4 * b < 20 && b <= 2) || (t < 3 && b == 3)) {
        Some(6)
    } else if n == 1 && t + 4 * b < 9 && b <= 2 {
        Some(7)
    } else if n == 2 && t < 4 && b == 0 {
        Some(8)
    } else {
        None
    }
}

fn detect_sp9(g: &SignedGraph, index: usize) -> Vec<Embedding> {
    match index {
        0 | 1 => low_degree(g, index),
        2 => adjacent_pairs(g, |v| g.degree(v) == 2),
        3 => two_at_three(g),
        4 => (0..g.n())
            .filter(|&u| g.degree(u) == 2)
            .filter_map(|u| {
                let nb = g.neighbors(u);
                g.is_adjacent(nb[0].0, nb[1].0).then(|| emb(vec![u, nb[0].0, nb[1].0]))
            })
            .collect(),
        5 => of_degree(g, 3),
        k => {
            let class = classify_sp9(g);
            (0..g.n())
                .filter(|&u| g.degree(u) >= 4)
                .filter(|&u| sp9_profile(g, &class, u).and_then(|(t, b, n)| sp9_guard(t, b, n)) == Some(k))
                .map(|u| emb(vec![u]))
                .collect()
        }
    }
}

fn detect_spq(g: &SignedGraph, q: usize, index: usize) -> Vec<Embedding> {
    match index {
        0 | 1 => low_degree(g, index),
        2 => adjacent_pairs(g, |v| g.degree(v) == 2),
        3 => two_at_three(g),
        4 => of_degree(g, 3),
        k => {
            let (offset, dmax) = spq_degree_limits(q)[k - 5];
            (0..g.n())
                .filter(|&u| {
                    let d = g.degree(u);
                    d > offset && d <= dmax && two_neighbors(g, u) + offset >= d
                })
                .map(|u| {
                    let mut vs = vec![u];
                    vs.extend(g.neighbors(u).iter().map(|&(w, _)| w).filter(|&w| g.degree(w) == 2));
                    emb(vs)
                })
                .collect()
        }
    }
}

fn detect_id(g: &SignedGraph, id: ConfigId) -> Vec<Embedding> {
    match id.theorem {
        Theorem::Sp5 => detect_sp5(g, id.index),
        Theorem::Sp9 => detect_sp9(g, id.index),
        Theorem::Spq(q) => detect_spq(g, q, id.index),
    }
}

/// All embeddings of a catalog configuration in `g`.
pub fn detect_config(g: &SignedGraph, id: &str) -> Result<Vec<Embedding>> {
    Ok(detect_id(g, parse_config_id(id)?))
}

/// Every configuration of the theorem present in `g`, in catalog order.
pub fn detect_all(g: &SignedGraph, theorem: Theorem) -> Vec<(ConfigId, Vec<Embedding>)> {
    (0..theorem.config_count())
        .map(|index| ConfigId { theorem, index })
        .map(|id| (id, detect_id(g, id)))
        .filter(|(_, e)| !e.is_empty())
        .collect()
}

pub fn is_config_free(g: &SignedGraph, theorem: Theorem) -> bool {
    (0..theorem.config_count()).all(|index| detect_id(g, ConfigId { theorem, index }).is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditTranscript {
    pub title: String,
    pub lines: Vec<String>,
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl AuditTranscript {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every `(degree, t, b, n)` with `4 ≤ degree ≤ 11` through the guards and weight checks,
/// then the `d ≥ 12` bound.
pub fn degree_case_audit_sp9() -> AuditTranscript {
    let m = ratio(17, 5);
    let zero = ratio(0, 1);
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    let (mut checked, mut skipped) = (0, 0);
    for degree in 4..=11usize {
        for t in 0..=degree {
            for b in 0..=degree - t {
                let n = degree - t - b;
                let head = format!("degree={degree} t={t} b={b} n={n}");
                if let Some(c) = sp9_guard(t, b, n) {
                    skipped += 1;
                    lines.push(format!("{head}: skipped (C{c})"));
                    continue;
                }
                let bad = (degree == 4 && t == 1) || (degree == 6 && t == 4);
                let d = ratio(degree as i64, 1);
                let w = if bad {
                    d - m + ratio(n as i64, 10) - ratio(7 * t as i64, 10)
                } else {
                    d - m - ratio(7 * t as i64, 10) - ratio(b as i64, 10)
                };
                checked += 1;
                let kind = if bad { "bad" } else { "not bad" };
                lines.push(format!("{head}: {kind}, weight {}", format_rational(&w)));
                if w < zero {
                    failures.push(head);
                }
            }
        }
    }
    // from degree 12 on, the worst case d − 17/5 − 7d/10 grows by 3/10 per degree
    let w12 = ratio(12, 1) - m - ratio(84, 10);
    lines.push(format!("degree>=12: weight at 12 is {}, slope 3/10", format_rational(&w12)));
    checked += 1;
    if w12 < zero {
        failures.push("degree=12".into());
    }
    AuditTranscript { title: "SP9 degree cases".into(), lines, checked, skipped, failures }
}

/// Checks the degree-range inequalities of the parametric theorem at each range's
/// lower end; the weight is increasing in `d` within every range.
pub fn threshold_audit_spq(q: usize) -> Result<AuditTranscript> {
    check_q(q)?;
    let qi = q as i64;
    let m = mad_bound(Theorem::Spq(q))?;
    let r = ratio(qi - 1, qi + 3);
    let zero = ratio(0, 1);
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    let mut checked = 0;

    let two = ratio(2, 1) - m + r * ratio(2, 1);
    lines.push(format!("2-vertex: 2 - m + 2*(q-1)/(q+3) = {}", format_rational(&two)));
    let text = ratio(2, 1) - m + ratio(2 * (qi + 1), qi + 3);
    lines.push(format!(
        "note: the 2-vertex paragraph writes 2*(q+1)/(q+3), which gives {}; the rule amount (q-1)/(q+3) is used",
        format_rational(&text)
    ));
    checked += 1;
    if two != zero {
        failures.push("2-vertex weight is not 0".into());
    }

    // (lower end, 2-neighbors kept off, must be exactly zero)
    let ranges = [
        (4, 4, false, "[4, (q+7)/4)"),
        ((qi + 7) / 4, 3, true, "[(q+7)/4, (q+3)/2)"),
        ((qi + 3) / 2, 2, true, "[(q+3)/2, q+1)"),
        (qi + 1, 1, false, "[q+1, 2q+2)"),
        (2 * qi + 2, 0, false, "[2q+2, inf)"),
    ];
    let uppers = [(qi + 7) / 4, (qi + 3) / 2, qi + 1, 2 * qi + 2, i64::MAX];
    for (i, &(lo, off, exact, name)) in ranges.iter().enumerate() {
        let hi = uppers[i];
        if lo >= hi {
            lines.push(format!("{name}: empty for q={q}"));
            continue;
        }
        let w = ratio(lo, 1) - m - ratio(lo - off, 1) * r;
        let slope = ratio(1, 1) - r;
        checked += 1;
        let ok = w >= zero && slope > zero && (!exact || w == zero);
        lines.push(format!(
            "{name}: d={lo}, at most d-{off} 2-neighbors, weight {}, slope {}{}",
            format_rational(&w),
            format_rational(&slope),
            if exact { " (equality expected)" } else { "" }
        ));
        if !ok {
            failures.push(format!("q={q} d={lo}"));
        }
    }
    Ok(AuditTranscript { title: format!("SPq thresholds q={q}"), lines, checked, skipped: 0, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::cycle;

    fn subdivided_star(leaves: usize) -> SignedGraph {
        // centre 0, path 0 - (2i+1) - (2i+2)
        let mut text = format!("{} {}\n", 2 * leaves + 1, 2 * leaves);
        for i in 0..leaves {
            text.push_str(&format!("0 {} +\n{} {} -\n", 2 * i + 1, 2 * i + 1, 2 * i + 2));
        }
        SignedGraph::parse(&text).unwrap()
    }

    #[test]
    fn cycle_classes_and_configs() {
        let c7 = cycle(7, &[0]);
        assert!(classify_sp5(&c7).iter().all(|&c| c == VertexClassSp5::Deg2));
        assert_eq!(detect_config(&c7, "SP5:C2").unwrap().len(), 7);
        assert!(detect_config(&c7, "SP5:C1").unwrap().is_empty());
        assert!(detect_config(&c7, "SP5:C9").is_err());
    }

    #[test]
    fn sp5_classes() {
        // K4 with one edge subdivided: endpoints of that edge are 3-worse
        let g = SignedGraph::parse("5 7\n0 1 +\n0 2 +\n1 2 +\n0 3 +\n1 3 +\n2 4 +\n4 3 -\n").unwrap();
        let c = classify_sp5(&g);
        assert_eq!(c[4], VertexClassSp5::Deg2);
        assert_eq!(c[2], VertexClassSp5::ThreeWorse);
        assert_eq!(c[3], VertexClassSp5::ThreeWorse);
        assert_eq!(c[0], VertexClassSp5::ThreeBad);
        assert_eq!(c[1], VertexClassSp5::ThreeBad);
    }

    #[test]
    fn sp9_classes_and_c6() {
        let star = subdivided_star(4);
        assert_eq!(classify_sp9(&star)[0], VertexClassSp9::Good);
        // centre: t = 4, b = 0, n = 0 → configuration 6
        assert_eq!(detect_config(&star, "SP9:C6").unwrap(), vec![emb(vec![0])]);
        let g6 = SignedGraph::parse("7 6\n0 1 +\n0 2 +\n0 3 +\n0 4 +\n0 5 +\n0 6 +\n").unwrap();
        assert_eq!(classify_sp9(&g6)[0], VertexClassSp9::Good);
    }

    #[test]
    fn two_vertex_weights_are_zero() {
        // 2-vertices between 4+-vertices end at exactly 0 under every theorem
        let g = SignedGraph::parse(
            "7 12\n0 1 +\n0 2 +\n0 3 +\n1 2 +\n1 3 +\n2 3 +\n0 4 +\n4 1 -\n2 5 +\n5 3 +\n0 6 +\n6 2 +\n",
        )
        .unwrap();
        for th in [Theorem::Sp9, Theorem::Spq(13)] {
            let r = run_discharge(&g, th).unwrap();
            for v in 4..7 {
                assert_eq!(r.final_weights[v], ratio(0, 1), "{th} v{v}");
            }
            assert!(r.conserved(&g));
        }
        let r = run_discharge(&g, Theorem::Sp5).unwrap();
        assert!(r.conserved(&g));
    }

    #[test]
    fn sp5_worse_pair_weight() {
        // 2-vertex whose two neighbors are 3-worse ends at 0
        let g = SignedGraph::parse("5 7\n0 1 +\n0 2 +\n1 2 +\n0 3 +\n1 3 +\n2 4 +\n4 3 -\n").unwrap();
        let r = run_discharge(&g, Theorem::Sp5).unwrap();
        assert_eq!(r.final_weights[4], ratio(0, 1));
    }

    #[test]
    fn degree_audit_passes() {
        let a = degree_case_audit_sp9();
        assert!(a.passed(), "{:?}", a.failures);
        assert!(a.lines.iter().any(|l| l.starts_with("degree=4 t=4 b=0 n=0: skipped (C6)")));
        assert!(a.lines.iter().any(|l| l.starts_with("degree=4 t=1 b=0 n=3: bad")));
    }

    #[test]
    fn threshold_audit() {
        for q in [9, 13, 17, 25, 29] {
            let a = threshold_audit_spq(q).unwrap();
            assert!(a.passed(), "q={q}: {:?}", a.lines);
        }
        let a = threshold_audit_spq(13).unwrap();
        assert!(a.lines.iter().any(|l| l.contains("d=5") && l.contains("weight 0/1")));
        assert!(a.lines.iter().any(|l| l.contains("d=8") && l.contains("weight 0/1")));
        assert!(threshold_audit_spq(5).is_err());
        assert!(threshold_audit_spq(15).is_err());
    }

    #[test]
    fn spq_parametric_detection() {
        // a 4-vertex with two 2-neighbors at q = 13: at least d-2 2-neighbors with d < 8
        let g = SignedGraph::parse("7 6\n0 1 +\n0 2 +\n0 3 +\n0 4 +\n1 5 +\n2 6 +\n").unwrap();
        assert_eq!(detect_config(&g, "SPq13:C7").unwrap().len(), 1);
        assert_eq!(detect_config(&g, "SPq13:C8").unwrap().len(), 1);
        assert_eq!(detect_config(&g, "SPq13:C6").unwrap().len(), 0);
    }
}
