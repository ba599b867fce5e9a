//! Automorphisms and isomorphisms of small signed graphs by backtracking,
//! clique transitivity, and antiautomorphism.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::mask::ColorMask;
use crate::signed::Sign;
use crate::target::{CliqueWitness, PropertyReport, TargetGraph};

/// Default cap on the number of automorphisms enumerated by [`automorphism_group`].
pub const DEFAULT_GROUP_CAP: usize = 1 << 20;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rel {
    Pos,
    Neg,
    None,
}

fn rel(t: &TargetGraph, a: usize, b: usize) -> Rel {
    match t.sign(a, b) {
        Some(Sign::Positive) => Rel::Pos,
        Some(Sign::Negative) => Rel::Neg,
        None => Rel::None,
    }
}

fn rel_mask(t: &TargetGraph, v: usize, r: Rel) -> ColorMask {
    match r {
        Rel::Pos => t.pos(v),
        Rel::Neg => t.neg(v),
        Rel::None => t.full() - t.pos(v) - t.neg(v) - ColorMask::single(v),
    }
}

struct Search<'a> {
    b: &'a TargetGraph,
    order: Vec<usize>,
    // for each position: earlier positions' vertices and their relation
    back: Vec<Vec<(usize, Rel)>>,
    profile: Vec<ColorMask>,
    map: Vec<usize>,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(a: &'a TargetGraph, b: &'a TargetGraph, fixed: &[(usize, usize)], limit: usize) -> Option<Self> {
        let n = a.n();
        if b.n() != n {
            return None;
        }
        let deg = |t: &TargetGraph, v: usize| (t.pos(v).len(), t.neg(v).len());
        let profile: Vec<ColorMask> = (0..n)
            .map(|v| (0..n).filter(|&w| deg(b, w) == deg(a, v)).collect())
            .collect();
        for &(x, y) in fixed {
            if x >= n || y >= n || !profile[x].contains(y) {
                return None;
            }
        }
        // fixed vertices first, then greedily the vertex most tied to placed ones
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        for &(x, _) in fixed {
            if !placed[x] {
                placed[x] = true;
                order.push(x);
            }
        }
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let tied = order.iter().filter(|&&u| a.adjacent(u, v)).count();
                    (tied, std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let back = (0..n)
            .map(|i| order[..i].iter().map(|&u| (u, rel(a, u, order[i]))).collect())
            .collect();
        let mut map = vec![usize::MAX; n];
        for &(x, y) in fixed {
            if map[x] != usize::MAX && map[x] != y {
                return None;
            }
            map[x] = y;
        }
        Some(Search { b, order, back, profile, map, limit, found: Vec::new() })
    }

    fn run(&mut self, depth: usize, used: ColorMask) {
        if self.found.len() >= self.limit {
            return;
        }
        if depth == self.order.len() {
            self.found.push(self.map.clone());
            return;
        }
        let v = self.order[depth];
        let mut cand = self.profile[v] - used;
        for &(u, r) in &self.back[depth] {
            cand &= rel_mask(self.b, self.map[u], r);
        }
        let preset = self.map[v];
        if preset != usize::MAX {
            if cand.contains(preset) {
                self.run(depth + 1, used | ColorMask::single(preset));
            }
            return;
        }
        for c in cand.iter() {
            self.map[v] = c;
            self.run(depth + 1, used | ColorMask::single(c));
            if self.found.len() >= self.limit {
                break;
            }
        }
        self.map[v] = usize::MAX;
    }
}

/// A sign-preserving isomorphism `a → b` extending the `fixed` pairs.
pub fn find_isomorphism(a: &TargetGraph, b: &TargetGraph, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut s = Search::new(a, b, fixed, 1)?;
    s.run(0, ColorMask::EMPTY);
    s.found.pop()
}

/// An automorphism of `t` extending the `fixed` pairs.
pub fn find_automorphism(t: &TargetGraph, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    find_isomorphism(t, t, fixed)
}

/// All automorphisms of `t`, identity first; fails when there are more than `cap`.
pub fn automorphism_group(t: &TargetGraph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let mut s = match Search::new(t, t, &[], cap + 1) {
        Some(s) => s,
        None => return Ok(vec![(0..t.n()).collect()]),
    };
    s.run(0, ColorMask::EMPTY);
    if s.found.len() > cap {
        return Err(Error::SizeCap { what: "automorphism group order", limit: cap, actual: s.found.len() });
    }
    let mut group = s.found;
    let id: Vec<usize> = (0..t.n()).collect();
    if let Some(i) = group.iter().position(|g| *g == id) {
        group.swap(0, i);
    }
    Ok(group)
}

fn ordered_cliques(t: &TargetGraph, level: usize) -> Vec<Vec<usize>> {
    fn rec(t: &TargetGraph, level: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == level {
            out.push(cur.clone());
            return;
        }
        for v in 0..t.n() {
            if cur.iter().all(|&u| t.adjacent(u, v)) {
                cur.push(v);
                rec(t, level, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(t, level, &mut Vec::new(), &mut out);
    out
}

fn sign_pattern(t: &TargetGraph, clique: &[usize]) -> Vec<Sign> {
    let mut out = Vec::new();
    for i in 0..clique.len() {
        for j in i + 1..clique.len() {
            out.push(t.sign(clique[i], clique[j]).expect("clique"));
        }
    }
    out
}

fn transitivity_name(level: usize) -> &'static str {
    match level {
        1 => "vertex-transitive",
        2 => "edge-transitive",
        _ => "triangle-transitive",
    }
}

/// Decides `K_level`-transitivity (vertex, edge, triangle) by orbit closure
/// under automorphisms found on demand.
pub fn check_transitivity(t: &TargetGraph, level: usize) -> Result<PropertyReport> {
    if !(1..=3).contains(&level) {
        return Err(Error::InvalidGraph(format!("transitivity level {level} not in 1..=3")));
    }
    let property = transitivity_name(level).to_string();
    let cliques = ordered_cliques(t, level);
    let mut classes: HashMap<Vec<Sign>, Vec<Vec<usize>>> = HashMap::new();
    let mut class_order: Vec<Vec<Sign>> = Vec::new();
    for c in cliques {
        let key = sign_pattern(t, &c);
        let entry = classes.entry(key.clone()).or_default();
        if entry.is_empty() {
            class_order.push(key);
        }
        entry.push(c);
    }
    let mut gens: Vec<Vec<usize>> = Vec::new();
    for key in class_order {
        let members = &classes[&key];
        let base = members[0].clone();
        let mut reached: HashSet<Vec<usize>> = HashSet::new();
        reached.insert(base.clone());
        let close = |reached: &mut HashSet<Vec<usize>>, gens: &[Vec<usize>], seeds: Vec<Vec<usize>>| {
            let mut queue: VecDeque<Vec<usize>> = seeds.into();
            while let Some(c) = queue.pop_front() {
                for g in gens {
                    let img: Vec<usize> = c.iter().map(|&v| g[v]).collect();
                    if reached.insert(img.clone()) {
                        queue.push_back(img);
                    }
                }
            }
        };
        close(&mut reached, &gens, vec![base.clone()]);
        for target in members {
            if reached.contains(target) {
                continue;
            }
            let fixed: Vec<(usize, usize)> = base.iter().copied().zip(target.iter().copied()).collect();
            match find_automorphism(t, &fixed) {
                Some(g) => {
                    gens.push(g);
                    let seeds: Vec<Vec<usize>> = reached.iter().cloned().collect();
                    close(&mut reached, &gens, seeds);
                }
                None => {
                    let mut clique = base.clone();
                    clique.extend(target.iter().copied());
                    return Ok(PropertyReport {
                        property,
                        holds: false,
                        minimum: None,
                        witness: Some(CliqueWitness { clique, signs: key.clone(), common: 0 }),
                    });
                }
            }
        }
    }
    Ok(PropertyReport { property, holds: true, minimum: None, witness: None })
}

/// Whether `t` is isomorphic to its sign-flipped copy.
pub fn check_antiautomorphic(t: &TargetGraph) -> PropertyReport {
    let holds = find_isomorphism(t, &t.negated(), &[]).is_some();
    PropertyReport { property: "antiautomorphic".into(), holds, minimum: None, witness: None }
}

/// An isomorphism from `t` to its sign-flipped copy.
pub fn find_antiautomorphism(t: &TargetGraph) -> Option<Vec<usize>> {
    find_isomorphism(t, &t.negated(), &[])
}

/// Orbit representatives of vertices under a set of permutations.
pub fn vertex_orbit_representatives(n: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        reps.push(v);
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g[x];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    reps
}
