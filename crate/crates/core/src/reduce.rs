//! Reducible configurations and their verification.
//!
//! A configuration is a small pattern of *boundary* vertices (colored by the
//! rest of the graph, colors fixed), *kept* vertices (present in the smaller
//! graph, may be recolored) and *removed* vertices. It is reducible when every
//! boundary coloring and signature that extends to the smaller graph also
//! extends to the whole pattern.
//!
//! Two engines are provided. The tree engine handles forest-shaped patterns
//! by propagating families of allowed-color sets up to a root; the
//! enumeration engine tries every boundary coloring and signature.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::autom;
use crate::error::{Error, Result};
use crate::hom::{sp_hom_domains, SolverOptions};
use crate::mask::ColorMask;
use crate::par;
use crate::signed::{Sign, SignedGraph};
use crate::target::{check_property_p, rho_sp, rho_sp_plus, TargetGraph};

/// Bound on the number of boundary colorings times signatures enumerated.
pub const DEFAULT_ENUM_LIMIT: u128 = 100_000_000;
const FAMILY_CAP: usize = 200_000;
const EXACT_ROOT_LIMIT: u128 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    Boundary,
    Kept,
    Removed,
}

/// Edges of a replacement graph whose signs copy pattern edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Replacement {
    /// New vertices, numbered after the pattern vertices.
    pub extra: usize,
    /// `(a, b, e)`: edge `ab` carrying the sign of pattern edge `e`.
    pub edges: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pattern {
    pub roles: Vec<Role>,
    pub edges: Vec<(usize, usize)>,
    /// Removed vertices standing for any bad vertex (expanded into variants).
    pub bad: Vec<usize>,
    pub replacement: Option<Replacement>,
}

impl Pattern {
    fn new() -> Self {
        Pattern { roles: Vec::new(), edges: Vec::new(), bad: Vec::new(), replacement: None }
    }

    fn add(&mut self, role: Role) -> usize {
        self.roles.push(role);
        self.roles.len() - 1
    }

    fn join(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    /// A removed child of `x` with the given role, joined to `x`.
    fn child(&mut self, x: usize, role: Role) -> usize {
        let c = self.add(role);
        self.join(x, c);
        c
    }

    /// A removed 2-vertex between `x` and a fresh boundary vertex.
    fn two_vertex(&mut self, x: usize) -> usize {
        let w = self.child(x, Role::Removed);
        self.child(w, Role::Boundary);
        w
    }

    fn bad_slot(&mut self, x: usize) {
        self.bad.push(x);
    }

    pub fn n(&self) -> usize {
        self.roles.len()
    }

    pub fn boundary(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.roles[v] == Role::Boundary).collect()
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        let mut seen = HashSet::new();
        for &(a, b) in &self.edges {
            if a >= n || b >= n || a == b || !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidPattern(format!("bad edge ({a}, {b})")));
            }
        }
        if self.bad.iter().any(|&x| x >= n || self.roles[x] != Role::Removed) {
            return Err(Error::InvalidPattern("bad slots must be removed vertices".into()));
        }
        if let Some(r) = &self.replacement {
            let total = n + r.extra;
            for &(a, b, e) in &r.edges {
                if a >= total || b >= total || a == b || e >= self.edges.len() {
                    return Err(Error::InvalidPattern(format!("bad replacement edge ({a}, {b}, {e})")));
                }
                if [a, b].iter().any(|&v| v < n && self.roles[v] == Role::Removed) {
                    return Err(Error::InvalidPattern("replacement touches a removed vertex".into()));
                }
            }
        }
        if !(0..n).any(|v| self.roles[v] == Role::Removed) {
            return Err(Error::InvalidPattern("nothing is removed".into()));
        }
        Ok(())
    }

    /// Expands bad slots: each becomes a 2-vertex or the centre of a 3-bad gadget.
    fn variants(&self) -> Vec<(String, Pattern)> {
        let mut out = vec![(String::new(), Pattern { bad: Vec::new(), ..self.clone() })];
        for &x in &self.bad {
            let mut next = Vec::new();
            for (name, p) in &out {
                let mut two = p.clone();
                two.child(x, Role::Boundary);
                next.push((join_name(name, "2-vertex"), two));
                let mut gadget = p.clone();
                for _ in 0..2 {
                    let w = gadget.child(x, Role::Removed);
                    gadget.child(w, Role::Boundary);
                    gadget.two_vertex(w);
                }
                next.push((join_name(name, "3-bad"), gadget));
            }
            out = next;
        }
        if out.len() == 1 {
            out[0].0 = "base".into();
        }
        out
    }
}

fn join_name(a: &str, b: &str) -> String {
    if a.is_empty() {
        b.to_string()
    } else {
        format!("{a},{b}")
    }
}

/// The theorems whose configurations are catalogued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Mapping to `SP_5` under `mad < 20/7`.
    Sp5,
    /// Mapping to `SP_9^+` under `mad < 17/5`.
    Sp9,
    /// Mapping to `SP_q^+` under `mad < 4 − 8/(q+3)`.
    Spq(usize),
}

impl Theorem {
    pub fn target(self) -> Result<TargetGraph> {
        match self {
            Theorem::Sp5 => rho_sp(5),
            Theorem::Sp9 => rho_sp_plus(9),
            Theorem::Spq(q) => rho_sp_plus(q),
        }
    }

    pub fn target_name(self) -> String {
        match self {
            Theorem::Sp5 => "rho(SP5)".into(),
            Theorem::Sp9 => "rho(SP9+)".into(),
            Theorem::Spq(q) => format!("rho(SP{q}+)"),
        }
    }

    pub fn config_count(self) -> usize {
        match self {
            Theorem::Sp5 => 6,
            Theorem::Sp9 | Theorem::Spq(_) => 9,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theorem::Sp5 => f.write_str("SP5"),
            Theorem::Sp9 => f.write_str("SP9+"),
            Theorem::Spq(q) => write!(f, "SPq{q}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigId {
    pub theorem: Theorem,
    pub index: usize,
}

impl fmt::Display for ConfigId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:C{}", self.theorem, self.index)
    }
}

fn parse_theorem(s: &str) -> Option<Theorem> {
    let s = s.trim_end_matches('+');
    if let Some(rest) = s.strip_prefix("SPQ") {
        let digits: String = rest.chars().filter(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() || rest.chars().any(|c| !c.is_ascii_digit() && !"=()_".contains(c)) {
            return None;
        }
        return digits.parse().ok().map(Theorem::Spq);
    }
    match s {
        "SP5" => Some(Theorem::Sp5),
        "SP9" => Some(Theorem::Sp9),
        _ => None,
    }
}

/// Parses ids such as `SP5:C3`, `sp9+-c2`, `SPq13:C5` or `spq(9)/4`.
pub fn parse_config_id(id: &str) -> Result<ConfigId> {
    let unknown = || Error::UnknownConfig(id.to_string());
    let up: String = id.trim().to_ascii_uppercase().chars().filter(|c| !c.is_whitespace()).collect();
    let split = up.rfind([':', '-', '/', '.']).ok_or_else(unknown)?;
    let (thm, cfg) = (&up[..split], &up[split + 1..]);
    let theorem = parse_theorem(thm).ok_or_else(unknown)?;
    let index: usize = cfg.strip_prefix('C').unwrap_or(cfg).parse().map_err(|_| unknown())?;
    if let Theorem::Spq(q) = theorem {
        crate::field::FieldTable::new(q).map_err(|_| unknown())?;
        if 2 * (q + 1) > crate::mask::MAX_TARGET {
            return Err(unknown());
        }
    }
    if index >= theorem.config_count() {
        return Err(unknown());
    }
    Ok(ConfigId { theorem, index })
}

/// What a catalog entry asks to be verified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Check {
    /// One pattern (possibly with bad slots).
    Pattern(Pattern),
    /// A family of patterns, one per admissible degree.
    Degrees(Vec<(usize, Pattern)>),
    /// Verified by the forbidding propositions instead.
    Forbidding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub id: ConfigId,
    pub description: String,
    pub check: Check,
}

fn single(role: Role) -> (Pattern, usize) {
    let mut p = Pattern::new();
    let u = p.add(role);
    (p, u)
}

fn c0() -> Pattern {
    single(Role::Removed).0
}

fn c1() -> Pattern {
    let (mut p, u) = single(Role::Removed);
    p.child(u, Role::Boundary);
    p
}

fn adjacent_two_vertices() -> Pattern {
    let (mut p, u1) = single(Role::Removed);
    p.child(u1, Role::Boundary);
    p.two_vertex(u1);
    p
}

fn two_vertex_at_three_vertex() -> Pattern {
    let (mut p, u2) = single(Role::Removed);
    p.child(u2, Role::Boundary);
    let u1 = p.child(u2, Role::Kept);
    p.child(u1, Role::Boundary);
    p.child(u1, Role::Boundary);
    p
}

fn three_vertex_replaced() -> Pattern {
    let (mut p, u) = single(Role::Removed);
    let v: Vec<usize> = (0..3).map(|_| p.child(u, Role::Boundary)).collect();
    // new vertex x_i joins the two boundary vertices other than v_i
    let n = p.n();
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if j != i {
                edges.push((n + i, v[j], j));
            }
        }
    }
    p.replacement = Some(Replacement { extra: 3, edges });
    p
}

fn hub_with_two_vertices(hub: Role, boundary: usize, twos: usize) -> Pattern {
    let (mut p, u) = single(hub);
    for _ in 0..boundary {
        p.child(u, Role::Boundary);
    }
    for _ in 0..twos {
        p.two_vertex(u);
    }
    p
}

/// Degree ranges of the parametric configurations: `(offset, largest degree)`.
pub fn spq_degree_limits(q: usize) -> [(usize, usize); 4] {
    [
        (0, 2 * q + 1),
        (1, q),
        (2, (q + 1) / 2),
        (3, (q + 3) / 4),
    ]
}

/// Looks up a catalog entry by id.
pub fn configuration(id: &str) -> Result<Configuration> {
    let id = parse_config_id(id)?;
    let (description, check) = match (id.theorem, id.index) {
        (_, 0) => ("a 0-vertex".to_string(), Check::Pattern(c0())),
        (_, 1) => ("a 1-vertex".into(), Check::Pattern(c1())),
        (Theorem::Sp5, 2) => {
            let (mut p, u1) = single(Role::Removed);
            let u2 = p.child(u1, Role::Removed);
            p.bad_slot(u1);
            p.bad_slot(u2);
            ("two adjacent bad vertices".into(), Check::Pattern(p))
        }
        (Theorem::Sp5, 3) => {
            let (mut p, u) = single(Role::Removed);
            p.child(u, Role::Boundary);
            for _ in 0..2 {
                let b = p.child(u, Role::Removed);
                p.bad_slot(b);
            }
            ("a 3-vertex with two bad neighbors".into(), Check::Pattern(p))
        }
        (Theorem::Sp5, 4) => {
            let (mut p, u2) = single(Role::Removed);
            let u1 = p.child(u2, Role::Removed);
            p.bad_slot(u1);
            p.child(u2, Role::Boundary);
            let u3 = p.child(u2, Role::Removed);
            p.child(u3, Role::Boundary);
            p.two_vertex(u3);
            ("adjacent 3-vertices, one with a bad neighbor, the other with a 2-neighbor".into(), Check::Pattern(p))
        }
        (Theorem::Sp5, 5) => ("a 4-vertex with three 2-neighbors".into(), Check::Pattern(hub_with_two_vertices(Role::Removed, 1, 3))),
        (Theorem::Sp9, 2) | (Theorem::Spq(_), 2) => ("two adjacent 2-vertices".into(), Check::Pattern(adjacent_two_vertices())),
        (Theorem::Sp9, 3) | (Theorem::Spq(_), 3) => {
            ("a 2-vertex adjacent to a 3-vertex".into(), Check::Pattern(two_vertex_at_three_vertex()))
        }
        (Theorem::Sp9, 4) => {
            let (mut p, u) = single(Role::Removed);
            let v1 = p.child(u, Role::Boundary);
            let v2 = p.child(u, Role::Boundary);
            p.join(v1, v2);
            ("a 2-vertex on a triangle".into(), Check::Pattern(p))
        }
        (Theorem::Sp9, 5) | (Theorem::Spq(_), 4) => {
            ("a 3-vertex, replaced by three 2-vertices".into(), Check::Pattern(three_vertex_replaced()))
        }
        (Theorem::Sp9, _) => ("a vertex whose bad and 2-neighbors forbid too few colors".into(), Check::Forbidding),
        (Theorem::Spq(q), i) => {
            let (offset, dmax) = spq_degree_limits(q)[i - 5];
            // at d = offset nothing would be removed
            let dmin = offset + 1;
            let pats = (dmin..=dmax)
                .map(|d| {
                    let p = match offset {
                        0 => hub_with_two_vertices(Role::Removed, 0, d),
                        1 => hub_with_two_vertices(Role::Removed, 1, d - 1),
                        k => hub_with_two_vertices(Role::Kept, k, d - k),
                    };
                    (d, p)
                })
                .collect();
            (format!("a d-vertex with at least d-{offset} 2-neighbors, d <= {dmax}"), Check::Degrees(pats))
        }
        (Theorem::Sp5, _) => return Err(Error::UnknownConfig(id.to_string())),
    };
    Ok(Configuration { id, description, check })
}

/// All catalog ids of a theorem.
pub fn catalog(theorem: Theorem) -> Vec<ConfigId> {
    (0..theorem.config_count()).map(|index| ConfigId { theorem, index }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Engine {
    Auto,
    Tree,
    Enumeration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariantReport {
    pub name: String,
    pub engine: Engine,
    /// Fewest colors left for the root (or for the first removed vertex).
    pub min_choices: Option<usize>,
    /// False when `min_choices` is only a pigeonhole lower bound.
    pub exact: bool,
    pub cases: u128,
    pub reducible: bool,
    pub failure: Option<String>,
}

impl VariantReport {
    pub fn line(&self) -> String {
        let choices = match self.min_choices {
            Some(c) if self.exact => format!("min choices {c}"),
            Some(c) => format!("min choices >= {c}"),
            None => "no choice count".into(),
        };
        let verdict = if self.reducible { "ok" } else { "FAILS" };
        let mut s = format!("  {:<24} {:?} {choices}, {} cases: {verdict}", self.name, self.engine, self.cases);
        if let Some(f) = &self.failure {
            s.push_str(&format!(" ({f})"));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub id: String,
    pub description: String,
    pub target: String,
    pub reducible: bool,
    pub variants: Vec<VariantReport>,
}

impl ReductionReport {
    pub fn transcript(&self) -> Vec<String> {
        let mut out = vec![format!("{} ({}) over {}", self.id, self.description, self.target)];
        out.extend(self.variants.iter().map(|v| v.line()));
        out.push(format!("{} {}", self.id, if self.reducible { "REDUCIBLE" } else { "NOT VERIFIED" }));
        out
    }
}

// ---------------------------------------------------------------------------
// tree engine

fn dedupe(sets: impl IntoIterator<Item = ColorMask>) -> Vec<ColorMask> {
    let mut seen = HashSet::new();
    let mut out: Vec<ColorMask> = sets.into_iter().filter(|s| seen.insert(*s)).collect();
    out.sort_unstable_by_key(|s| (s.len(), s.0));
    out
}

/// Inclusion-minimal members of a family.
fn minimal(sets: impl IntoIterator<Item = ColorMask>) -> Vec<ColorMask> {
    let sorted = dedupe(sets);
    let mut keep: Vec<ColorMask> = Vec::new();
    for s in sorted {
        if !keep.iter().any(|k| k.is_subset(s)) {
            keep.push(s);
        }
    }
    keep
}

fn meet(acc: &[ColorMask], fam: &[ColorMask], prune: bool) -> Result<Vec<ColorMask>> {
    let estimate = acc.len() as u128 * fam.len() as u128;
    if estimate > (FAMILY_CAP as u128) * 64 {
        return Err(Error::BlowUp { estimate, limit: FAMILY_CAP as u128 * 64 });
    }
    let prod = acc.iter().flat_map(|&a| fam.iter().map(move |&f| a & f));
    let out = if prune { minimal(prod) } else { dedupe(prod) };
    if out.len() > FAMILY_CAP {
        return Err(Error::BlowUp { estimate: out.len() as u128, limit: FAMILY_CAP as u128 });
    }
    Ok(out)
}

struct Tree<'a> {
    t: &'a TargetGraph,
    roles: &'a [Role],
    children: Vec<Vec<usize>>,
    root: usize,
}

impl<'a> Tree<'a> {
    fn build(p: &'a Pattern, t: &'a TargetGraph) -> Result<Self> {
        let n = p.n();
        if p.replacement.is_some() {
            return Err(Error::InvalidPattern("the tree engine does not handle replacements".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &p.edges {
            if p.roles[a] == Role::Boundary && p.roles[b] == Role::Boundary {
                return Err(Error::InvalidPattern("edge between boundary vertices".into()));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        if (0..n).any(|v| p.roles[v] == Role::Boundary && adj[v].len() != 1) {
            return Err(Error::InvalidPattern("boundary vertices must be leaves".into()));
        }
        let root = (0..n)
            .find(|&v| p.roles[v] == Role::Kept)
            .or_else(|| (0..n).find(|&v| p.roles[v] == Role::Removed))
            .ok_or_else(|| Error::InvalidPattern("no root".into()))?;
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    children[x].push(y);
                    stack.push(y);
                } else if !children[y].contains(&x) {
                    return Err(Error::InvalidPattern("pattern has a cycle".into()));
                }
            }
        }
        if reached != n || p.edges.len() != n - 1 {
            return Err(Error::InvalidPattern("pattern is not a tree".into()));
        }
        for v in 0..n {
            if p.roles[v] == Role::Kept && v != root {
                return Err(Error::InvalidPattern("only the root may be kept".into()));
            }
        }
        Ok(Tree { t, roles: &p.roles, children, root })
    }

    /// Colors the parent of `x` may take, over all boundary colorings and signs.
    fn up_family(&self, x: usize) -> Result<Vec<ColorMask>> {
        if self.roles[x] == Role::Boundary {
            return Ok(dedupe((0..self.t.n()).flat_map(|c| Sign::BOTH.map(|s| self.t.mask(c, s)))));
        }
        let own = self.own_family(x, &self.child_families(x)?)?;
        Ok(minimal(own.iter().flat_map(|&a| Sign::BOTH.map(|s| self.t.mask_union(a, s)))))
    }

    fn child_families(&self, x: usize) -> Result<Vec<(usize, Vec<ColorMask>)>> {
        self.children[x].iter().map(|&c| Ok((c, self.up_family(c)?))).collect()
    }

    /// Minimal colors `x` itself may take.
    fn own_family(&self, x: usize, fams: &[(usize, Vec<ColorMask>)]) -> Result<Vec<ColorMask>> {
        let mut acc = vec![self.t.full()];
        if self.roles[x] == Role::Kept {
            for (c, f) in fams {
                if self.roles[*c] != Role::Removed {
                    acc = meet(&acc, f, false)?;
                }
            }
            // the smaller graph must already be colorable
            acc.retain(|s| !s.is_empty());
            acc = minimal(acc);
        }
        let mut removed: Vec<&Vec<ColorMask>> =
            fams.iter().filter(|(c, _)| self.roles[x] != Role::Kept || self.roles[*c] == Role::Removed).map(|(_, f)| f).collect();
        removed.sort_by_key(|f| f.len());
        for f in removed {
            acc = meet(&acc, f, true)?;
        }
        Ok(acc)
    }

    /// Lower bound on the root's choices by counting forbidden colors.
    fn pigeonhole(&self, fams: &[(usize, Vec<ColorMask>)]) -> Result<usize> {
        let n = self.t.n();
        let mut base = n;
        let mut lost = 0;
        if self.roles[self.root] == Role::Kept {
            let mut acc = vec![self.t.full()];
            for (c, f) in fams {
                if self.roles[*c] != Role::Removed {
                    acc = meet(&acc, f, false)?;
                }
            }
            base = acc.iter().filter(|s| !s.is_empty()).map(|s| s.len()).min().unwrap_or(n);
        }
        for (c, f) in fams {
            if self.roles[self.root] != Role::Kept || self.roles[*c] == Role::Removed {
                lost += n - f.iter().map(|s| s.len()).min().unwrap_or(0);
            }
        }
        Ok(base.saturating_sub(lost))
    }
}

/// Tree engine on a single pattern without bad slots.
pub fn tree_min_choices(p: &Pattern, t: &TargetGraph) -> Result<(usize, bool)> {
    let tree = Tree::build(p, t)?;
    let fams = tree.child_families(tree.root)?;
    let product = fams.iter().fold(1u128, |acc, (_, f)| acc.saturating_mul(f.len() as u128));
    let bound = tree.pigeonhole(&fams)?;
    if bound >= 1 && product > EXACT_ROOT_LIMIT {
        return Ok((bound, false));
    }
    match tree.own_family(tree.root, &fams) {
        Ok(own) => Ok((own.iter().map(|s| s.len()).min().unwrap_or(t.n()), true)),
        Err(Error::BlowUp { .. }) if bound >= 1 => Ok((bound, false)),
        Err(e) => Err(e),
    }
}

/// Families of allowed-color sets a pattern vertex passes to its parent; for cross-checks.
pub fn gadget_family(p: &Pattern, t: &TargetGraph, vertex: usize) -> Result<Vec<ColorMask>> {
    Tree::build(p, t)?.up_family(vertex)
}

// ---------------------------------------------------------------------------
// enumeration engine

fn enum_case_count(p: &Pattern, t: &TargetGraph, reps: usize, fix_sign: bool) -> u128 {
    let b = p.boundary().len();
    let colorings = if b == 0 { 1 } else { (reps as u128).saturating_mul((t.n() as u128).saturating_pow(b as u32 - 1)) };
    let signs = 2u128.saturating_pow((p.edges.len() - usize::from(fix_sign && !p.edges.is_empty())) as u32);
    colorings.saturating_mul(signs)
}

fn graph_of(n: usize, edges: &[(usize, usize, Sign)]) -> Result<SignedGraph> {
    SignedGraph::new(n, edges.iter().copied())
}

/// Checks one boundary coloring and signature. Returns `None` if the smaller
/// graph is not colorable, otherwise whether the whole pattern is.
fn enum_case(p: &Pattern, t: &TargetGraph, colors: &[usize], sigma: &[Sign]) -> Result<Option<bool>> {
    let n = p.n();
    let boundary = p.boundary();
    for (i, &(a, b)) in p.edges.iter().enumerate() {
        if p.roles[a] == Role::Boundary && p.roles[b] == Role::Boundary {
            let ca = colors[boundary.iter().position(|&x| x == a).unwrap()];
            let cb = colors[boundary.iter().position(|&x| x == b).unwrap()];
            if t.sign(ca, cb) != Some(sigma[i]) {
                return Ok(None);
            }
        }
    }
    let full = t.full();
    let domain = |v: usize| match boundary.iter().position(|&x| x == v) {
        Some(i) => ColorMask::single(colors[i]),
        None => full,
    };
    // smaller graph: pattern minus removed vertices, plus the replacement
    let extra = p.replacement.as_ref().map_or(0, |r| r.extra);
    let mut index = vec![usize::MAX; n + extra];
    let mut count = 0;
    for v in 0..n + extra {
        if v >= n || p.roles[v] != Role::Removed {
            index[v] = count;
            count += 1;
        }
    }
    let mut small_edges: Vec<(usize, usize, Sign)> = p
        .edges
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| index[a] != usize::MAX && index[b] != usize::MAX)
        .map(|(i, &(a, b))| (index[a], index[b], sigma[i]))
        .collect();
    if let Some(r) = &p.replacement {
        small_edges.extend(r.edges.iter().map(|&(a, b, e)| (index[a], index[b], sigma[e])));
    }
    let mut small_dom = vec![full; count];
    for v in 0..n {
        if index[v] != usize::MAX {
            small_dom[index[v]] = domain(v);
        }
    }
    let small = graph_of(count, &small_edges)?;
    if sp_hom_domains(&small, t, Some(&small_dom), SolverOptions::default())?.is_none() {
        return Ok(None);
    }
    let big_edges: Vec<(usize, usize, Sign)> = p.edges.iter().enumerate().map(|(i, &(a, b))| (a, b, sigma[i])).collect();
    let big = graph_of(n, &big_edges)?;
    let big_dom: Vec<ColorMask> = (0..n).map(domain).collect();
    Ok(Some(sp_hom_domains(&big, t, Some(&big_dom), SolverOptions::default())?.is_some()))
}

/// Enumeration engine on a single pattern without bad slots; returns cases checked.
pub fn enumerate_pattern(p: &Pattern, t: &TargetGraph, limit: u128) -> Result<(u128, Option<String>)> {
    let group = autom::automorphism_group(t, autom::DEFAULT_GROUP_CAP)?;
    let reps = autom::vertex_orbit_representatives(t.n(), &group);
    let fix_sign = autom::find_antiautomorphism(t).is_some();
    let estimate = enum_case_count(p, t, reps.len(), fix_sign);
    if estimate > limit {
        return Err(Error::BlowUp { estimate, limit });
    }
    let b = p.boundary().len();
    let m = p.edges.len();
    let sign_bits = m - usize::from(fix_sign && m > 0);
    let firsts: Vec<usize> = if b == 0 { vec![0] } else { reps.clone() };
    let rest = if b == 0 { 1 } else { t.n().pow(b as u32 - 1) };
    let results = par::map_slice(&firsts, |&first| -> Result<(u128, Option<String>)> {
        let mut cases = 0u128;
        for r in 0..rest {
            let mut colors = Vec::with_capacity(b);
            if b > 0 {
                colors.push(first);
                let mut x = r;
                for _ in 1..b {
                    colors.push(x % t.n());
                    x /= t.n();
                }
            }
            for bits in 0u64..(1u64 << sign_bits) {
                // with an antiautomorphism the first edge can be taken positive
                let sigma: Vec<Sign> = (0..m)
                    .map(|i| {
                        let bit = if fix_sign { if i == 0 { 0 } else { bits >> (i - 1) & 1 } } else { bits >> i & 1 };
                        if bit == 1 { Sign::Negative } else { Sign::Positive }
                    })
                    .collect();
                cases += 1;
                if enum_case(p, t, &colors, &sigma)? == Some(false) {
                    let signs: String = sigma.iter().map(|s| s.as_char()).collect();
                    return Ok((cases, Some(format!("boundary colors {colors:?}, signs {signs}"))));
                }
            }
        }
        Ok((cases, None))
    });
    let mut total = 0;
    for r in results {
        let (c, fail) = r?;
        total += c;
        if fail.is_some() {
            return Ok((total, fail));
        }
    }
    Ok((total, None))
}

fn tree_shaped(p: &Pattern, t: &TargetGraph) -> bool {
    Tree::build(p, t).is_ok()
}

fn verify_pattern(name: String, p: &Pattern, t: &TargetGraph, engine: Engine, limit: u128) -> Result<VariantReport> {
    let use_tree = match engine {
        Engine::Tree => true,
        Engine::Enumeration => false,
        Engine::Auto => tree_shaped(p, t),
    };
    if use_tree {
        let (choices, exact) = tree_min_choices(p, t)?;
        let reducible = choices >= 1;
        Ok(VariantReport {
            name,
            engine: Engine::Tree,
            min_choices: Some(choices),
            exact,
            cases: enum_case_count(p, t, t.n(), false),
            reducible,
            failure: (!reducible).then(|| "some boundary coloring leaves the root no color".into()),
        })
    } else {
        let (cases, failure) = enumerate_pattern(p, t, limit)?;
        Ok(VariantReport { name, engine: Engine::Enumeration, min_choices: None, exact: true, cases, reducible: failure.is_none(), failure })
    }
}

/// Verifies a catalog configuration on its theorem's target.
pub fn config_reducible(id: &str, engine: Engine) -> Result<ReductionReport> {
    let cfg = configuration(id)?;
    let t = cfg.id.theorem.target()?;
    config_reducible_on(&cfg, &t, engine, DEFAULT_ENUM_LIMIT)
}

pub fn config_reducible_on(cfg: &Configuration, t: &TargetGraph, engine: Engine, limit: u128) -> Result<ReductionReport> {
    let patterns: Vec<(String, Pattern)> = match &cfg.check {
        Check::Pattern(p) => {
            p.validate()?;
            p.variants()
        }
        Check::Degrees(list) => list.iter().map(|(d, p)| (format!("d={d}"), p.clone())).collect(),
        Check::Forbidding => {
            return Err(Error::InvalidPattern(format!(
                "{} is verified by the forbidding propositions (sghom verify cases20 / p754 / p75 / p77)",
                cfg.id
            )))
        }
    };
    let mut variants = Vec::new();
    for (name, p) in patterns {
        p.validate()?;
        variants.push(verify_pattern(name, &p, t, engine, limit)?);
    }
    if variants.is_empty() {
        variants.push(VariantReport {
            name: "no admissible degree".into(),
            engine: Engine::Tree,
            min_choices: None,
            exact: true,
            cases: 0,
            reducible: true,
            failure: None,
        });
    }
    let reducible = variants.iter().all(|v| v.reducible);
    Ok(ReductionReport {
        id: cfg.id.to_string(),
        description: cfg.description.clone(),
        target: cfg.id.theorem.target_name(),
        reducible,
        variants,
    })
}

/// Closed-form slack of the parametric configurations: choices left at the largest degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicCheck {
    pub q: usize,
    pub config: usize,
    pub max_degree: usize,
    pub available: usize,
    pub forbidden: usize,
    pub slack: i64,
    /// Available count measured on the target, when it was built.
    pub measured: Option<usize>,
}

/// Common-neighborhood sizes of `ρ(SP_q^+)`: `q`, `(q−1)/2`, `(q−5)/4` for 1, 2, 3 vertices.
pub fn spq_common_neighbors(q: usize, k: usize) -> usize {
    match k {
        0 => 2 * q + 2,
        1 => q,
        2 => (q - 1) / 2,
        _ => (q - 5) / 4,
    }
}

/// Pigeonhole slack of configurations 5–8 for each `q`; `measure` also checks
/// the common-neighborhood sizes against the built target.
pub fn symbolic_spq_checks(qs: &[usize], measure: bool) -> Result<Vec<SymbolicCheck>> {
    let mut out = Vec::new();
    for &q in qs {
        crate::field::FieldTable::new(q)?;
        if q < 5 {
            return Err(Error::InvalidField { q, reason: "needs q >= 5".into() });
        }
        let t = if measure { Some(rho_sp_plus(q)?) } else { None };
        for (i, (offset, dmax)) in spq_degree_limits(q).into_iter().enumerate() {
            if dmax <= offset {
                continue;
            }
            let available = spq_common_neighbors(q, offset);
            let forbidden = dmax - offset;
            let measured = match (&t, offset) {
                (Some(t), k) if k > 0 => check_property_p(t, k, 0).minimum,
                (Some(t), _) => Some(t.n()),
                _ => None,
            };
            out.push(SymbolicCheck {
                q,
                config: 5 + i,
                max_degree: dmax,
                available,
                forbidden,
                slack: available as i64 - forbidden as i64,
                measured,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::target::rho_sp;

    #[test]
    fn id_parsing() {
        let a = parse_config_id("SP5:C3").unwrap();
        assert_eq!(a, ConfigId { theorem: Theorem::Sp5, index: 3 });
        assert_eq!(parse_config_id("sp5-c3").unwrap(), a);
        assert_eq!(parse_config_id(" SP9+:C2 ").unwrap().theorem, Theorem::Sp9);
        assert_eq!(parse_config_id("SPq13:C5").unwrap().theorem, Theorem::Spq(13));
        assert_eq!(parse_config_id("spq(9)/4").unwrap(), ConfigId { theorem: Theorem::Spq(9), index: 4 });
        for bad in ["SP5:C6", "SP7:C1", "SPq15:C1", "SPq33:C1", "C3", "SP5:Cx"] {
            assert!(matches!(parse_config_id(bad), Err(Error::UnknownConfig(_))), "{bad}");
        }
        assert_eq!(a.to_string(), "SP5:C3");
    }

    #[test]
    fn sp5_catalog_is_reducible() {
        for id in catalog(Theorem::Sp5) {
            let r = config_reducible(&id.to_string(), Engine::Auto).unwrap();
            assert!(r.reducible, "{:?}", r.transcript());
        }
        let c1 = config_reducible("SP5:C1", Engine::Auto).unwrap();
        assert_eq!(c1.variants[0].min_choices, Some(4));
        assert!(c1.variants[0].exact);
        assert_eq!(config_reducible("SP5:C2", Engine::Auto).unwrap().variants.len(), 4);
    }

    #[test]
    fn engines_agree_on_small_patterns() {
        let t = rho_sp(5).unwrap();
        for p in [c1(), adjacent_two_vertices(), two_vertex_at_three_vertex(), hub_with_two_vertices(Role::Removed, 1, 2)] {
            let (choices, _) = tree_min_choices(&p, &t).unwrap();
            let (_, failure) = enumerate_pattern(&p, &t, DEFAULT_ENUM_LIMIT).unwrap();
            assert_eq!(choices >= 1, failure.is_none());
        }
    }

    #[test]
    fn detects_irreducible_pattern() {
        // a removed vertex with two free boundary neighbors can be blocked by antitwins
        let t = rho_sp(5).unwrap();
        let p = hub_with_two_vertices(Role::Removed, 2, 0);
        assert_eq!(tree_min_choices(&p, &t).unwrap(), (0, true));
        let (_, failure) = enumerate_pattern(&p, &t, DEFAULT_ENUM_LIMIT).unwrap();
        assert!(failure.is_some());
    }

    #[test]
    fn forbidding_entries_are_redirected() {
        assert!(matches!(config_reducible("SP9:C6", Engine::Auto), Err(Error::InvalidPattern(_))));
    }

    #[test]
    fn enumeration_blowup_is_reported() {
        let cfg = configuration("SP5:C2").unwrap();
        let t = rho_sp(5).unwrap();
        let r = config_reducible_on(&cfg, &t, Engine::Enumeration, 1_000_000);
        assert!(matches!(r, Err(Error::BlowUp { .. })));
    }

    #[test]
    fn symbolic_slack_is_one() {
        let checks = symbolic_spq_checks(&[9, 13, 17, 25, 29, 37, 41, 49, 53, 61], false).unwrap();
        assert!(checks.iter().all(|c| c.slack == 1), "{checks:?}");
        let measured = symbolic_spq_checks(&[9, 13], true).unwrap();
        assert!(measured.iter().all(|c| c.measured == Some(c.available)), "{measured:?}");
    }
}
