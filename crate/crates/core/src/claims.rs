//! Forbidding counts of the small gadgets used for `ρ(SP_5)`:
//! a 2-vertex, a 3-worse vertex and a 3-bad vertex hanging off a vertex `v`.

use std::collections::HashSet;

use serde::Serialize;

use crate::mask::ColorMask;
use crate::signed::Sign;
use crate::target::TargetGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub gadget: &'static str,
    pub min_forbidden: usize,
    pub max_forbidden: usize,
    pub bound: usize,
    /// Boundary colorings times signatures covered.
    pub cases: u128,
    pub holds: bool,
}

impl ClaimReport {
    pub fn line(&self) -> String {
        format!(
            "CLAIM {} forbids {}..={} (bound {}) over {} cases: {}",
            self.gadget,
            self.min_forbidden,
            self.max_forbidden,
            self.bound,
            self.cases,
            if self.holds { "HOLDS" } else { "FAILS" }
        )
    }
}

/// `{c : N^s(c) ∩ set ≠ ∅}`.
fn reach(t: &TargetGraph, set: ColorMask, s: Sign) -> ColorMask {
    t.mask_union(set, s)
}

/// Allowed colors of the middle vertex of `x -a- w -b- y` with `x`, `y` fixed,
/// seen from a neighbor over an edge of sign `s`.
fn two_vertex_sets(t: &TargetGraph) -> HashSet<ColorMask> {
    let mut out = HashSet::new();
    for x in 0..t.n() {
        for a in Sign::BOTH {
            for s in Sign::BOTH {
                out.insert(reach(t, t.mask(x, a), s));
            }
        }
    }
    out
}

/// Sets of colors allowed for the parent of a 3-worse vertex: the 3-worse
/// vertex has a boundary neighbor and a 2-neighbor leading to the boundary.
fn worse_sets(t: &TargetGraph, two: &HashSet<ColorMask>) -> HashSet<ColorMask> {
    let mut out = HashSet::new();
    for x in 0..t.n() {
        for a in Sign::BOTH {
            let own = t.mask(x, a);
            for &f in two {
                for s in Sign::BOTH {
                    out.insert(reach(t, own & f, s));
                }
            }
        }
    }
    out
}

fn summarize(t: &TargetGraph, gadget: &'static str, sets: &HashSet<ColorMask>, bound: usize, cases: u128, exact: Option<usize>) -> ClaimReport {
    let n = t.n();
    let min_forbidden = sets.iter().map(|s| n - s.len()).min().unwrap_or(n);
    let max_forbidden = sets.iter().map(|s| n - s.len()).max().unwrap_or(n);
    let holds = match exact {
        Some(e) => min_forbidden == e && max_forbidden == e,
        None => max_forbidden <= bound,
    };
    ClaimReport { gadget, min_forbidden, max_forbidden, bound, cases, holds }
}

/// The three gadget claims: a 2-neighbor forbids exactly one color, a
/// 3-worse neighbor at most two, a 3-bad neighbor at most one.
pub fn sp5_neighbor_claims(t: &TargetGraph) -> Vec<ClaimReport> {
    let n = t.n() as u128;
    let two = two_vertex_sets(t);
    let worse = worse_sets(t, &two);
    let mut bad: HashSet<ColorMask> = HashSet::new();
    for &f in &worse {
        for &g in &worse {
            for s in Sign::BOTH {
                bad.insert(reach(t, f & g, s));
            }
        }
    }
    vec![
        summarize(t, "2-vertex", &two, 1, n * 4, Some(1)),
        summarize(t, "3-worse", &worse, 2, n * n * 16, None),
        summarize(t, "3-bad", &bad, 1, n.pow(4) * 512, None),
    ]
}

/// Direct count for one 2-vertex `w` between a boundary color `x` and `v`.
pub fn two_vertex_forbidden(t: &TargetGraph, x: usize, a: Sign, b: Sign) -> usize {
    (0..t.n()).filter(|&c| !t.mask(x, a).intersects(t.mask(c, b))).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::target::rho_sp;

    #[test]
    fn claims_on_rho_sp5() {
        let t = rho_sp(5).unwrap();
        let reports = sp5_neighbor_claims(&t);
        assert!(reports.iter().all(|r| r.holds), "{reports:?}");
        assert_eq!(reports[0].max_forbidden, 1);
        assert_eq!(reports[1].max_forbidden, 2);
        assert_eq!(reports[2].max_forbidden, 1);
    }

    #[test]
    fn direct_two_vertex_count() {
        let t = rho_sp(5).unwrap();
        for x in 0..t.n() {
            for a in Sign::BOTH {
                for b in Sign::BOTH {
                    assert_eq!(two_vertex_forbidden(&t, x, a, b), 1);
                }
            }
        }
    }
}
