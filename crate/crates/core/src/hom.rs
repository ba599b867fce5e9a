//! Sign-preserving homomorphism search with bitset domains, homomorphisms
//! through the antitwinned double, and exact chromatic numbers at toy scale.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mask::ColorMask;
use crate::par;
use crate::signed::{Sign, SignedGraph, SwitchSet};
use crate::target::{rho, TargetGraph, MAX_RHO_INPUT};

/// Largest `kmax` accepted by the chromatic number routines.
pub const MAX_CHI_ORDER: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomWitness {
    pub mapping: Vec<usize>,
    pub switch_set: Option<SwitchSet>,
}

impl HomWitness {
    pub fn line(&self) -> String {
        let m: Vec<String> = self.mapping.iter().map(|v| v.to_string()).collect();
        let mut s = format!("FOUND map=[{}]", m.join(","));
        if let Some(sw) = &self.switch_set {
            s.push_str(&format!(" switch={sw}"));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverOptions {
    /// Maximum number of search nodes before giving up with an error.
    pub node_budget: Option<u64>,
}

struct Solver<'a> {
    g: &'a SignedGraph,
    t: &'a TargetGraph,
    dom: Vec<ColorMask>,
    assign: Vec<usize>,
    trail: Vec<(usize, ColorMask)>,
    nodes: u64,
    budget: Option<u64>,
}

const UNSET: usize = usize::MAX;

impl<'a> Solver<'a> {
    fn pick(&self, comp: &[usize]) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for &v in comp {
            if self.assign[v] != UNSET {
                continue;
            }
            let size = self.dom[v].len();
            if best.map_or(true, |(s, _)| size < s) {
                best = Some((size, v));
            }
        }
        best.map(|(_, v)| v)
    }

    fn search(&mut self, comp: &[usize]) -> Result<bool> {
        let Some(v) = self.pick(comp) else {
            return Ok(true);
        };
        for c in self.dom[v].iter() {
            self.nodes += 1;
            if let Some(b) = self.budget {
                if self.nodes > b {
                    return Err(Error::BudgetExceeded { nodes: b });
                }
            }
            let mark = self.trail.len();
            self.assign[v] = c;
            let mut ok = true;
            for &(w, s) in self.g.neighbors(v) {
                if self.assign[w] != UNSET {
                    continue;
                }
                let narrowed = self.dom[w] & self.t.mask(c, s);
                if narrowed != self.dom[w] {
                    self.trail.push((w, self.dom[w]));
                    self.dom[w] = narrowed;
                }
                if narrowed.is_empty() {
                    ok = false;
                    break;
                }
            }
            if ok && self.search(comp)? {
                return Ok(true);
            }
            while self.trail.len() > mark {
                let (w, m) = self.trail.pop().unwrap();
                self.dom[w] = m;
            }
            self.assign[v] = UNSET;
        }
        Ok(false)
    }
}

/// Backtracking sp-homomorphism search with optional per-vertex domains.
/// Vertices whose domain is a single color and that are already consistent
/// act as a fixed precoloring.
pub fn sp_hom_domains(
    g: &SignedGraph,
    t: &TargetGraph,
    domains: Option<&[ColorMask]>,
    opts: SolverOptions,
) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    let full = t.full();
    let dom: Vec<ColorMask> = match domains {
        Some(d) => {
            if d.len() != n {
                return Err(Error::InvalidGraph("domain list length differs from vertex count".into()));
            }
            d.iter().map(|&m| m & full).collect()
        }
        None => vec![full; n],
    };
    if dom.iter().any(|m| m.is_empty()) {
        return Ok(None);
    }
    let mut solver = Solver {
        g,
        t,
        dom,
        assign: vec![UNSET; n],
        trail: Vec::new(),
        nodes: 0,
        budget: opts.node_budget,
    };
    for comp in g.components() {
        if comp.len() == 1 && g.degree(comp[0]) == 0 {
            continue;
        }
        if !solver.search(&comp)? {
            return Ok(None);
        }
    }
    for v in 0..n {
        if solver.assign[v] == UNSET {
            solver.assign[v] = solver.dom[v].first().expect("nonempty domain");
        }
    }
    Ok(Some(solver.assign))
}

/// Independent check that `map` is an sp-homomorphism `g → h`.
pub fn is_sp_hom(g: &SignedGraph, h: &SignedGraph, map: &[usize]) -> bool {
    map.len() == g.n()
        && map.iter().all(|&c| c < h.n())
        && g.edges().iter().all(|e| h.sign(map[e.u], map[e.v]) == Some(e.sign))
}

/// Independent check of a homomorphism witness `g → h`.
pub fn is_hom(g: &SignedGraph, h: &SignedGraph, w: &HomWitness) -> bool {
    match &w.switch_set {
        Some(s) => s.validate(g.n()).is_ok() && is_sp_hom(&g.switch(s), h, &w.mapping),
        None => is_sp_hom(g, h, &w.mapping),
    }
}

/// sp-homomorphism `g → t`; the witness is re-verified before it is returned.
pub fn sp_hom(g: &SignedGraph, t: &TargetGraph) -> Result<Option<HomWitness>> {
    sp_hom_opts(g, t, SolverOptions::default())
}

pub fn sp_hom_opts(g: &SignedGraph, t: &TargetGraph, opts: SolverOptions) -> Result<Option<HomWitness>> {
    let Some(mapping) = sp_hom_domains(g, t, None, opts)? else {
        return Ok(None);
    };
    if !is_sp_hom(g, t.graph(), &mapping) {
        return Err(Error::InvalidGraph("solver produced an invalid mapping".into()));
    }
    Ok(Some(HomWitness { mapping, switch_set: None }))
}

/// Homomorphism `g → h` via an sp-homomorphism to `ρ(h)`, folded back with its switch set.
pub fn hom(g: &SignedGraph, h: &SignedGraph) -> Result<Option<HomWitness>> {
    hom_opts(g, h, SolverOptions::default())
}

pub fn hom_opts(g: &SignedGraph, h: &SignedGraph, opts: SolverOptions) -> Result<Option<HomWitness>> {
    if h.n() > MAX_RHO_INPUT {
        return Err(Error::SizeCap { what: "hom target vertex count", limit: MAX_RHO_INPUT, actual: h.n() });
    }
    let lifted = rho(h)?;
    let Some(map) = sp_hom_domains(g, &lifted, None, opts)? else {
        return Ok(None);
    };
    let k = h.n();
    let switch_set = SwitchSet::new((0..g.n()).filter(|&v| map[v] >= k).collect());
    let mapping: Vec<usize> = map.iter().map(|&c| c % k).collect();
    let w = HomWitness { mapping, switch_set: Some(switch_set) };
    if !is_hom(g, h, &w) {
        return Err(Error::InvalidGraph("folded mapping failed verification".into()));
    }
    Ok(Some(w))
}

/// Exact value or a lower bound above the search limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChiValue {
    Exact(usize),
    Above(usize),
}

impl fmt::Display for ChiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiValue::Exact(k) => write!(f, "{k}"),
            ChiValue::Above(k) => write!(f, ">{k}"),
        }
    }
}

/// The signed graph on `k` vertices encoded by `code` in base 3 over the pairs
/// `(0,1), (0,2), .., (k-2,k-1)`: digit 0 = no edge, 1 = positive, 2 = negative.
pub fn graph_from_code(k: usize, mut code: u64) -> SignedGraph {
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            match code % 3 {
                1 => edges.push((u, v, Sign::Positive)),
                2 => edges.push((u, v, Sign::Negative)),
                _ => {}
            }
            code /= 3;
        }
    }
    SignedGraph::new(k, edges).expect("codes describe simple graphs")
}

fn chi_generic<F>(g: &SignedGraph, kmax: usize, test: F) -> Result<ChiValue>
where
    F: Fn(&SignedGraph) -> Result<bool> + Sync + Send,
{
    if kmax > MAX_CHI_ORDER {
        return Err(Error::SizeCap { what: "chromatic search order", limit: MAX_CHI_ORDER, actual: kmax });
    }
    if g.n() == 0 {
        return Ok(ChiValue::Exact(0));
    }
    const CHUNK: u64 = 512;
    for k in 1..=kmax {
        let total = 3u64.pow((k * (k - 1) / 2) as u32);
        let chunks = total.div_ceil(CHUNK) as usize;
        let hits = par::map_collect(chunks, |c| -> Result<bool> {
            let start = c as u64 * CHUNK;
            for code in start..(start + CHUNK).min(total) {
                if test(&graph_from_code(k, code))? {
                    return Ok(true);
                }
            }
            Ok(false)
        });
        for h in hits {
            if h? {
                return Ok(ChiValue::Exact(k));
            }
        }
    }
    // every graph maps to itself
    if g.n() == kmax + 1 {
        return Ok(ChiValue::Exact(g.n()));
    }
    Ok(ChiValue::Above(kmax))
}

/// Smallest order of a signed graph `H` with `g → H`, searched up to `kmax`.
pub fn chi_s_exact(g: &SignedGraph, kmax: usize) -> Result<ChiValue> {
    chi_generic(g, kmax, |h| Ok(hom(g, h)?.is_some()))
}

/// Smallest order of a signed graph `H` with `g →sp H`, searched up to `kmax`.
pub fn chi_sp_exact(g: &SignedGraph, kmax: usize) -> Result<ChiValue> {
    chi_generic(g, kmax, |h| {
        let t = TargetGraph::without_antitwins(h.clone())?;
        Ok(sp_hom(g, &t)?.is_some())
    })
}

/// Oracle: some switching of `g` sp-maps to `h` (exhaustive over `2^n` switch sets).
pub fn hom_by_switching(g: &SignedGraph, h: &SignedGraph) -> Result<Option<HomWitness>> {
    let n = g.n();
    if n > 20 {
        return Err(Error::SizeCap { what: "switching oracle vertex count", limit: 20, actual: n });
    }
    let t = TargetGraph::without_antitwins(h.clone())?;
    for bits in 0u64..(1u64 << n) {
        let s = SwitchSet::from_bits(bits, n);
        if let Some(w) = sp_hom(&g.switch(&s), &t)? {
            return Ok(Some(HomWitness { mapping: w.mapping, switch_set: Some(s) }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::{complete, cycle};
    use crate::target::rho_sp;

    fn target(g: SignedGraph) -> TargetGraph {
        TargetGraph::without_antitwins(g).unwrap()
    }

    #[test]
    fn basic_sp_hom() {
        let k2 = target(complete(2, Sign::Positive));
        assert!(sp_hom(&cycle(4, &[]), &k2).unwrap().is_some());
        assert!(sp_hom(&complete(3, Sign::Positive), &k2).unwrap().is_none());
        let w = sp_hom(&cycle(4, &[0]), &rho_sp(5).unwrap()).unwrap().unwrap();
        assert!(is_sp_hom(&cycle(4, &[0]), rho_sp(5).unwrap().graph(), &w.mapping));
    }

    #[test]
    fn unbalanced_c4_brute_force_agrees() {
        let t = rho_sp(5).unwrap();
        let g = cycle(4, &[0]);
        let mut any = false;
        for code in 0..10usize.pow(4) {
            let map: Vec<usize> = (0..4).map(|i| code / 10usize.pow(i as u32) % 10).collect();
            any |= is_sp_hom(&g, t.graph(), &map);
        }
        assert!(any);
    }

    #[test]
    fn isolated_and_domains() {
        let g = SignedGraph::parse("3 1\n0 1 -\n").unwrap();
        let t = target(complete(3, Sign::Negative));
        let doms = [ColorMask::single(2), t.full(), ColorMask::single(1)];
        let m = sp_hom_domains(&g, &t, Some(&doms), SolverOptions::default()).unwrap().unwrap();
        assert_eq!(m, vec![2, 0, 1]);
    }

    #[test]
    fn budget_is_an_error_not_none() {
        let g = complete(6, Sign::Positive);
        let t = target(complete(5, Sign::Positive));
        let r = sp_hom_opts(&g, &t, SolverOptions { node_budget: Some(10) });
        assert_eq!(r, Err(Error::BudgetExceeded { nodes: 10 }));
    }

    #[test]
    fn hom_through_rho() {
        let edge = complete(2, Sign::Positive);
        let w = hom(&cycle(6, &[0, 3]), &edge).unwrap().unwrap();
        assert!(is_hom(&cycle(6, &[0, 3]), &edge, &w));
        assert!(w.line().starts_with("FOUND map=["));
        let c4 = cycle(4, &[1]);
        for code in 0..27 {
            assert!(hom(&c4, &graph_from_code(3, code)).unwrap().is_none());
        }
    }

    #[test]
    fn small_chromatic_numbers() {
        assert_eq!(chi_s_exact(&complete(3, Sign::Positive), 5).unwrap(), ChiValue::Exact(3));
        assert_eq!(chi_s_exact(&cycle(4, &[0]), 5).unwrap(), ChiValue::Exact(4));
        assert_eq!(chi_sp_exact(&cycle(4, &[]), 5).unwrap(), ChiValue::Exact(2));
        assert!(chi_s_exact(&cycle(4, &[]), 6).is_err());
    }
}
