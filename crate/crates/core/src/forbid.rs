//! The forbidding oracle: how many colors a set of precolored-choice
//! neighbors can forbid from a hub vertex.
//!
//! A satellite `v` with available colors `S` joined to the hub by an edge of
//! sign `s` forbids hub color `c` when `S ∩ N^s(c) = ∅`.

use std::collections::HashSet;
use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::autom;
use crate::error::{Error, Result};
use crate::mask::{binomial, k_subsets, ColorMask};
use crate::par;
use crate::signed::Sign;
use crate::target::{check_property_p, TargetGraph};

/// Largest target handled by [`forbid_table`].
pub const MAX_TABLE_TARGET: usize = 24;
/// Default bound on the number of cases an exhaustive run may enumerate.
pub const DEFAULT_BLOWUP_LIMIT: u128 = 1_000_000_000;
/// Default seed and trial count for sampled runs.
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: u64 = 1_000_000;
const SAMPLE_CHUNK: u64 = 8192;

/// `f[c]` = largest number of target vertices with no `sign`-neighbor in a `c`-set.
pub fn forbid_table(t: &TargetGraph, sign: Sign) -> Result<Vec<usize>> {
    let n = t.n();
    if n > MAX_TABLE_TARGET {
        return Err(Error::SizeCap { what: "forbid table target", limit: MAX_TABLE_TARGET, actual: n });
    }
    let masks: Vec<u64> = (0..n).map(|v| t.mask(v, sign).0).collect();
    let low_bits = n.min(12);
    let chunks = 1usize << (n - low_bits);
    let partial = par::map_collect(chunks, |hi| {
        let mut best = vec![0usize; n + 1];
        for lo in 0..(1u64 << low_bits) {
            let set = (hi as u64) << low_bits | lo;
            let missed = masks.iter().filter(|&&m| m & set == 0).count();
            let c = set.count_ones() as usize;
            if missed > best[c] {
                best[c] = missed;
            }
        }
        best
    });
    let mut table = vec![0usize; n + 1];
    for row in partial {
        for (c, v) in row.into_iter().enumerate() {
            table[c] = table[c].max(v);
        }
    }
    Ok(table)
}

/// Number of target vertices `c` with `set ∩ N^s(c) = ∅`.
pub fn forbidden_by_set(t: &TargetGraph, set: ColorMask, s: Sign) -> usize {
    (0..t.n()).filter(|&c| !set.intersects(t.mask(c, s))).count()
}

fn forbid_either_sign(t: &TargetGraph, set: ColorMask) -> usize {
    forbidden_by_set(t, set, Sign::Positive).max(forbidden_by_set(t, set, Sign::Negative))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P24Report {
    pub max_forbid_full: usize,
    pub max_forbid_minus_one: usize,
    pub distinct_sets: usize,
    pub set_sizes: Vec<usize>,
}

/// Forbidding counts of the sets produced by property `P_{2,4}`.
pub fn p24_star_check(t: &TargetGraph) -> Result<P24Report> {
    if !check_property_p(t, 2, 4).holds {
        return Err(Error::MissingProperty("P_2_4".into()));
    }
    let mut sets: HashSet<ColorMask> = HashSet::new();
    for e in t.graph().edges() {
        for a in Sign::BOTH {
            for b in Sign::BOTH {
                sets.insert(t.mask(e.u, a) & t.mask(e.v, b));
            }
        }
    }
    let mut full = 0;
    let mut minus_one = 0;
    let mut sizes: Vec<usize> = sets.iter().map(|s| s.len()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    for &set in &sets {
        full = full.max(forbid_either_sign(t, set));
        for c in set.iter() {
            let mut smaller = set;
            smaller.remove(c);
            minus_one = minus_one.max(forbid_either_sign(t, smaller));
        }
    }
    Ok(P24Report { max_forbid_full: full, max_forbid_minus_one: minus_one, distinct_sets: sets.len(), set_sizes: sizes })
}

/// Constraint between two satellites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// Joined by an edge: their colors must be joined by an edge of the same sign.
    Adjacent,
    /// Their colors must have different identities (neither equal nor antitwins).
    IdentityDistinct,
    None,
}

impl Relation {
    pub fn code(self) -> char {
        match self {
            Relation::Adjacent => 'A',
            Relation::IdentityDistinct => 'D',
            Relation::None => '-',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Satellite {
    pub domain_size: usize,
    /// Earlier satellite whose available set this one must equal.
    pub shared_with: Option<usize>,
}

/// A hub with up to three satellites of prescribed available-set sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSpec {
    pub satellites: Vec<Satellite>,
    pub relation: Vec<Vec<Relation>>,
    pub quantify_edge_signs: bool,
}

impl CaseSpec {
    /// Builds a spec from sizes and the relations of pairs `(0,1), (0,2), (1,2), ..`.
    pub fn new(sizes: &[usize], pairs: &[((usize, usize), Relation)]) -> Result<Self> {
        let k = sizes.len();
        let mut relation = vec![vec![Relation::None; k]; k];
        for &((i, j), r) in pairs {
            if i >= k || j >= k || i == j {
                return Err(Error::InvalidCase(format!("bad pair ({i}, {j})")));
            }
            relation[i][j] = r;
            relation[j][i] = r;
        }
        let spec = CaseSpec {
            satellites: sizes.iter().map(|&d| Satellite { domain_size: d, shared_with: None }).collect(),
            relation,
            quantify_edge_signs: true,
        };
        Ok(spec)
    }

    /// Forces satellite `i` to reuse the available set of satellite `j < i`.
    pub fn share(mut self, i: usize, j: usize) -> Result<Self> {
        if j >= i || i >= self.satellites.len() || self.satellites[i].domain_size != self.satellites[j].domain_size {
            return Err(Error::InvalidCase(format!("satellite {i} cannot share with {j}")));
        }
        self.satellites[i].shared_with = Some(j);
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.satellites.len()
    }

    pub fn validate(&self, t: &TargetGraph) -> Result<()> {
        let k = self.k();
        if k == 0 || k > 3 {
            return Err(Error::InvalidCase(format!("{k} satellites (expected 1..=3)")));
        }
        if self.relation.len() != k || self.relation.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidCase("relation matrix has wrong shape".into()));
        }
        for i in 0..k {
            if self.relation[i][i] != Relation::None {
                return Err(Error::InvalidCase("relation must be irreflexive".into()));
            }
            if (0..k).any(|j| self.relation[i][j] != self.relation[j][i]) {
                return Err(Error::InvalidCase("relation must be symmetric".into()));
            }
            let d = self.satellites[i].domain_size;
            if d == 0 || d > t.n() {
                return Err(Error::InvalidCase(format!("domain size {d} outside 1..={}", t.n())));
            }
        }
        Ok(())
    }

    fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.k();
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if self.relation[i][j] == Relation::Adjacent {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Satellites that are tied to another by equal available sets.
    fn in_shared_group(&self, i: usize) -> bool {
        self.satellites[i].shared_with.is_some() || self.satellites.iter().any(|s| s.shared_with == Some(i))
    }

    fn free_satellites(&self) -> Vec<usize> {
        (0..self.k()).filter(|&i| self.satellites[i].shared_with.is_none()).collect()
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.satellites.iter().map(|s| s.domain_size.to_string()).collect();
        write!(f, "{}", sizes.join("-"))?;
        let k = self.k();
        match k {
            2 => write!(f, " {}", self.relation[0][1].code())?,
            3 => write!(
                f,
                " {}{}{}",
                self.relation[0][1].code(),
                self.relation[1][2].code(),
                self.relation[0][2].code()
            )?,
            _ => {}
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ForbidMode {
    Exhaustive,
    OrbitReduced,
    Sampled { seed: u64, trials: u64 },
}

impl fmt::Display for ForbidMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForbidMode::Exhaustive => f.write_str("exhaustive"),
            ForbidMode::OrbitReduced => f.write_str("orbitReduced"),
            ForbidMode::Sampled { seed, trials } => write!(f, "sampled(seed={seed},trials={trials})"),
        }
    }
}

/// One concrete choice of available sets and edge signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForbidWitness {
    pub sets: Vec<ColorMask>,
    pub hub_signs: Vec<Sign>,
    /// Signs of the adjacent pairs, in `(i, j)` order with `i < j`.
    pub pair_signs: Vec<((usize, usize), Sign)>,
    pub forbidden: ColorMask,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForbidResult {
    pub max_forbidden: usize,
    pub witness: ForbidWitness,
    pub mode: ForbidMode,
    /// Cases actually evaluated.
    pub evaluated: u128,
    /// True for sampled runs: the value is only a lower bound on the maximum.
    pub lower_bound: bool,
}

/// Precomputed evaluator for a fixed spec.
struct Evaluator<'a> {
    t: &'a TargetGraph,
    spec: &'a CaseSpec,
    full: ColorMask,
}

impl<'a> Evaluator<'a> {
    fn pair_mask(&self, i: usize, j: usize, x: usize, pair_sign: &[[Sign; 3]; 3]) -> ColorMask {
        match self.spec.relation[i][j] {
            Relation::Adjacent => self.t.mask(x, pair_sign[i][j]),
            Relation::IdentityDistinct => self.full - self.t.identity_mask(x),
            Relation::None => self.full,
        }
    }

    /// Hub colors admitting a compatible satellite assignment.
    fn allowed(&self, sets: &[ColorMask], hub: &[Sign], pair_sign: &[[Sign; 3]; 3]) -> ColorMask {
        let k = sets.len();
        let mut acc = ColorMask::EMPTY;
        match k {
            1 => {
                acc = self.t.mask_union(sets[0], hub[0]);
            }
            2 => {
                for x in sets[0].iter() {
                    let cand = sets[1] & self.pair_mask(0, 1, x, pair_sign);
                    if cand.is_empty() {
                        continue;
                    }
                    let base = self.t.mask(x, hub[0]);
                    if base.is_subset(acc) {
                        continue;
                    }
                    acc |= base & self.t.mask_union(cand, hub[1]);
                    if acc == self.full {
                        break;
                    }
                }
            }
            _ => {
                'outer: for x in sets[0].iter() {
                    let c1 = sets[1] & self.pair_mask(0, 1, x, pair_sign);
                    let c2 = sets[2] & self.pair_mask(0, 2, x, pair_sign);
                    if c1.is_empty() || c2.is_empty() {
                        continue;
                    }
                    let bx = self.t.mask(x, hub[0]);
                    if bx.is_subset(acc) {
                        continue;
                    }
                    for y in c1.iter() {
                        let c3 = c2 & self.pair_mask(1, 2, y, pair_sign);
                        if c3.is_empty() {
                            continue;
                        }
                        let bxy = bx & self.t.mask(y, hub[1]);
                        if bxy.is_subset(acc) {
                            continue;
                        }
                        acc |= bxy & self.t.mask_union(c3, hub[2]);
                        if acc == self.full {
                            break 'outer;
                        }
                    }
                }
            }
        }
        acc
    }
}

fn pair_matrix(pairs: &[(usize, usize)], bits: u32) -> [[Sign; 3]; 3] {
    let mut m = [[Sign::Positive; 3]; 3];
    for (idx, &(i, j)) in pairs.iter().enumerate() {
        let s = if bits >> idx & 1 == 1 { Sign::Negative } else { Sign::Positive };
        m[i][j] = s;
        m[j][i] = s;
    }
    m
}

fn signs_from_bits(k: usize, bits: u32) -> Vec<Sign> {
    (0..k).map(|i| if bits >> i & 1 == 1 { Sign::Negative } else { Sign::Positive }).collect()
}

#[derive(Clone)]
struct Best {
    count: usize,
    witness: Option<ForbidWitness>,
}

impl Best {
    fn new() -> Self {
        Best { count: 0, witness: None }
    }

    fn offer(&mut self, count: usize, make: impl FnOnce() -> ForbidWitness) {
        if self.witness.is_none() || count > self.count {
            self.count = count;
            self.witness = Some(make());
        }
    }

    fn merge(mut self, other: Best) -> Best {
        if let Some(w) = other.witness {
            if self.witness.is_none() || other.count > self.count {
                self.count = other.count;
                self.witness = Some(w);
            }
        }
        self
    }
}

/// Which hub signs are enumerated: all, or only `+` for satellites that can be switched.
fn hub_sign_choices(t: &TargetGraph, spec: &CaseSpec) -> Vec<u32> {
    let k = spec.k();
    if !spec.quantify_edge_signs {
        return vec![0];
    }
    let fixed: Vec<bool> = (0..k).map(|i| t.is_antitwinned() && !spec.in_shared_group(i)).collect();
    (0..(1u32 << k)).filter(|bits| (0..k).all(|i| !(fixed[i] && bits >> i & 1 == 1))).collect()
}

fn pair_sign_choices(spec: &CaseSpec, pairs: usize) -> u32 {
    if spec.quantify_edge_signs {
        1 << pairs
    } else {
        1
    }
}

/// Number of cases an exhaustive run enumerates (sign normalization included).
pub fn blowup_estimate(t: &TargetGraph, spec: &CaseSpec) -> u128 {
    let n = t.n();
    let sets: u128 = spec.free_satellites().iter().map(|&i| binomial(n, spec.satellites[i].domain_size)).product();
    sets * hub_sign_choices(t, spec).len() as u128 * pair_sign_choices(spec, spec.adjacent_pairs().len()) as u128
}

fn expand_sets(spec: &CaseSpec, free: &[ColorMask]) -> Vec<ColorMask> {
    let frees = spec.free_satellites();
    let mut sets = vec![ColorMask::EMPTY; spec.k()];
    for (idx, &i) in frees.iter().enumerate() {
        sets[i] = free[idx];
    }
    for i in 0..spec.k() {
        if let Some(j) = spec.satellites[i].shared_with {
            sets[i] = sets[j];
        }
    }
    sets
}

/// Evaluates every sign choice for fixed sets; returns the best case.
fn eval_all_signs(ev: &Evaluator, sets: &[ColorMask], hubs: &[u32], pairs: &[(usize, usize)], best: &mut Best) -> u128 {
    let k = sets.len();
    let mut n = 0;
    for &hb in hubs {
        let hub = signs_from_bits(k, hb);
        for pb in 0..pair_sign_choices(ev.spec, pairs.len()) {
            let pm = pair_matrix(pairs, pb);
            let allowed = ev.allowed(sets, &hub, &pm);
            n += 1;
            let count = ev.full.len() - allowed.len();
            if best.witness.is_none() || count > best.count {
                best.offer(count, || ForbidWitness {
                    sets: sets.to_vec(),
                    hub_signs: hub.clone(),
                    pair_signs: pairs.iter().map(|&(i, j)| ((i, j), pm[i][j])).collect(),
                    forbidden: ev.full - allowed,
                });
            }
        }
    }
    n
}

/// Options controlling [`max_forbidden`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForbidOptions {
    pub mode: ForbidMode,
    pub blowup_limit: u128,
}

impl ForbidOptions {
    pub fn exhaustive() -> Self {
        ForbidOptions { mode: ForbidMode::Exhaustive, blowup_limit: DEFAULT_BLOWUP_LIMIT }
    }

    pub fn orbit() -> Self {
        ForbidOptions { mode: ForbidMode::OrbitReduced, blowup_limit: DEFAULT_BLOWUP_LIMIT }
    }

    pub fn sampled(seed: u64, trials: u64) -> Self {
        ForbidOptions { mode: ForbidMode::Sampled { seed, trials }, blowup_limit: DEFAULT_BLOWUP_LIMIT }
    }
}

/// Maximum number of hub colors forbidden over the cases of `spec`.
pub fn max_forbidden(t: &TargetGraph, spec: &CaseSpec, opts: ForbidOptions) -> Result<ForbidResult> {
    spec.validate(t)?;
    let ev = Evaluator { t, spec, full: t.full() };
    let pairs = spec.adjacent_pairs();
    let hubs = hub_sign_choices(t, spec);
    let frees = spec.free_satellites();
    let n = t.n();
    let (best, evaluated) = match opts.mode {
        ForbidMode::Exhaustive => {
            let estimate = blowup_estimate(t, spec);
            if estimate > opts.blowup_limit {
                return Err(Error::BlowUp { estimate, limit: opts.blowup_limit });
            }
            let first: Vec<ColorMask> = k_subsets(n, spec.satellites[frees[0]].domain_size).collect();
            enumerate_rest(&ev, &frees, first, &hubs, &pairs)
        }
        ForbidMode::OrbitReduced => {
            // quotient the satellite with the most set choices by the automorphism group
            let pivot_pos = (0..frees.len())
                .max_by_key(|&p| (binomial(n, spec.satellites[frees[p]].domain_size), std::cmp::Reverse(p)))
                .unwrap();
            let group = autom::automorphism_group(t, autom::DEFAULT_GROUP_CAP)?;
            let reps = orbit_representatives(n, spec.satellites[frees[pivot_pos]].domain_size, &group)?;
            let estimate = blowup_estimate(t, spec) / binomial(n, spec.satellites[frees[pivot_pos]].domain_size) * reps.len() as u128;
            if estimate > opts.blowup_limit {
                return Err(Error::BlowUp { estimate, limit: opts.blowup_limit });
            }
            let mut order = frees.clone();
            order.swap(0, pivot_pos);
            enumerate_rest_ordered(&ev, &frees, &order, reps, &hubs, &pairs)
        }
        ForbidMode::Sampled { seed, trials } => sample_cases(&ev, &frees, seed, trials, &hubs, &pairs),
    };
    let witness = best.witness.expect("at least one case");
    Ok(ForbidResult {
        max_forbidden: best.count,
        witness,
        mode: opts.mode,
        evaluated,
        lower_bound: matches!(opts.mode, ForbidMode::Sampled { .. }),
    })
}

fn enumerate_rest(
    ev: &Evaluator,
    frees: &[usize],
    first: Vec<ColorMask>,
    hubs: &[u32],
    pairs: &[(usize, usize)],
) -> (Best, u128) {
    enumerate_rest_ordered(ev, frees, frees, first, hubs, pairs)
}

/// Enumerates `first` for satellite `order[0]` and all subsets for the other free satellites.
fn enumerate_rest_ordered(
    ev: &Evaluator,
    frees: &[usize],
    order: &[usize],
    first: Vec<ColorMask>,
    hubs: &[u32],
    pairs: &[(usize, usize)],
) -> (Best, u128) {
    let n = ev.t.n();
    let rest_lists: Vec<Vec<ColorMask>> = order[1..]
        .iter()
        .map(|&i| k_subsets(n, ev.spec.satellites[i].domain_size).collect())
        .collect();
    let results = par::map_slice(&first, |&s0| {
        let mut best = Best::new();
        let mut count = 0u128;
        let mut chosen = vec![ColorMask::EMPTY; frees.len()];
        let pos0 = frees.iter().position(|&f| f == order[0]).unwrap();
        chosen[pos0] = s0;
        let mut idx = vec![0usize; rest_lists.len()];
        loop {
            for (r, &i) in order[1..].iter().enumerate() {
                let p = frees.iter().position(|&f| f == i).unwrap();
                chosen[p] = rest_lists[r][idx[r]];
            }
            let sets = expand_sets(ev.spec, &chosen);
            count += eval_all_signs(ev, &sets, hubs, pairs, &mut best);
            // odometer
            let mut r = 0;
            loop {
                if r == idx.len() {
                    return (best, count);
                }
                idx[r] += 1;
                if idx[r] < rest_lists[r].len() {
                    break;
                }
                idx[r] = 0;
                r += 1;
            }
        }
    });
    results
        .into_iter()
        .fold((Best::new(), 0u128), |(b, c), (b2, c2)| (b.merge(b2), c + c2))
}

/// One representative per orbit of `size`-subsets under the given permutations.
pub fn orbit_representatives(n: usize, size: usize, group: &[Vec<usize>]) -> Result<Vec<ColorMask>> {
    if n > 28 {
        return Err(Error::SizeCap { what: "orbit reduction target", limit: 28, actual: n });
    }
    let mut seen = vec![0u64; (1usize << n).div_ceil(64)];
    let test = |seen: &Vec<u64>, m: u64| seen[(m >> 6) as usize] >> (m & 63) & 1 == 1;
    let mut reps = Vec::new();
    for s in k_subsets(n, size) {
        if test(&seen, s.0) {
            continue;
        }
        reps.push(s);
        for g in group {
            let img = s.permute(g).0;
            seen[(img >> 6) as usize] |= 1 << (img & 63);
        }
    }
    Ok(reps)
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> ColorMask {
    sample(rng, n, k).into_iter().collect()
}

fn sample_cases(ev: &Evaluator, frees: &[usize], seed: u64, trials: u64, hubs: &[u32], pairs: &[(usize, usize)]) -> (Best, u128) {
    let n = ev.t.n();
    let k = ev.spec.k();
    let chunks = trials.div_ceil(SAMPLE_CHUNK) as usize;
    let results = par::map_collect(chunks, |chunk| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk as u64);
        let start = chunk as u64 * SAMPLE_CHUNK;
        let end = (start + SAMPLE_CHUNK).min(trials);
        let mut best = Best::new();
        let mut chosen = vec![ColorMask::EMPTY; frees.len()];
        for _ in start..end {
            for (p, &i) in frees.iter().enumerate() {
                chosen[p] = random_subset(&mut rng, n, ev.spec.satellites[i].domain_size);
            }
            let sets = expand_sets(ev.spec, &chosen);
            let hub = signs_from_bits(k, hubs[rng.gen_range(0..hubs.len())]);
            let pb = rng.gen_range(0..pair_sign_choices(ev.spec, pairs.len()));
            let pm = pair_matrix(pairs, pb);
            let allowed = ev.allowed(&sets, &hub, &pm);
            let count = n - allowed.len();
            if best.witness.is_none() || count > best.count {
                best.offer(count, || ForbidWitness {
                    sets: sets.clone(),
                    hub_signs: hub.clone(),
                    pair_signs: pairs.iter().map(|&(i, j)| ((i, j), pm[i][j])).collect(),
                    forbidden: ev.full - allowed,
                });
            }
        }
        best
    });
    (results.into_iter().fold(Best::new(), Best::merge), trials as u128)
}

/// Slow independent recount of a witness: tries every satellite assignment for every hub color.
pub fn replay_witness(t: &TargetGraph, spec: &CaseSpec, w: &ForbidWitness) -> usize {
    let k = spec.k();
    let sign_of = |i: usize, j: usize| {
        w.pair_signs
            .iter()
            .find(|&&((a, b), _)| (a, b) == (i.min(j), i.max(j)))
            .map(|&(_, s)| s)
    };
    let ok_pair = |i: usize, j: usize, x: usize, y: usize| match spec.relation[i][j] {
        Relation::Adjacent => t.sign(x, y) == sign_of(i, j),
        Relation::IdentityDistinct => x != y && t.antitwin(x) != Some(y),
        Relation::None => true,
    };
    let lists: Vec<Vec<usize>> = w.sets.iter().map(|s| s.iter().collect()).collect();
    let mut forbidden = 0;
    for c in 0..t.n() {
        let mut found = false;
        let mut idx = vec![0usize; k];
        'search: loop {
            if lists.iter().all(|l| !l.is_empty()) {
                let pick: Vec<usize> = (0..k).map(|i| lists[i][idx[i]]).collect();
                let hub_ok = (0..k).all(|i| t.sign(c, pick[i]) == Some(w.hub_signs[i]));
                let pairs_ok = (0..k).all(|i| (i + 1..k).all(|j| ok_pair(i, j, pick[i], pick[j])));
                if hub_ok && pairs_ok {
                    found = true;
                    break 'search;
                }
            } else {
                break;
            }
            let mut r = 0;
            loop {
                if r == k {
                    break 'search;
                }
                idx[r] += 1;
                if idx[r] < lists[r].len() {
                    break;
                }
                idx[r] = 0;
                r += 1;
            }
        }
        if !found {
            forbidden += 1;
        }
    }
    forbidden
}

/// Sizes and pair relations of the twenty cases, pairs in order `(0,1), (1,2), (0,2)`.
pub const TWENTY_CASES: [([usize; 3], [Relation; 3]); 20] = {
    use Relation::{Adjacent as A, IdentityDistinct as D, None as N};
    [
        ([19, 19, 19], [A, A, A]),
        ([8, 19, 8], [A, A, N]),
        ([9, 19, 9], [A, A, D]),
        ([8, 9, 4], [A, D, N]),
        ([19, 17, 6], [D, D, A]),
        ([7, 7, 7], [D, D, D]),
        ([16, 17, 6], [A, D, N]),
        ([19, 17, 19], [A, D, A]),
        ([9, 7, 9], [D, D, A]),
        ([8, 17, 4], [A, D, N]),
        ([4, 7, 4], [D, D, N]),
        ([8, 19, 16], [A, A, N]),
        ([4, 9, 16], [D, A, N]),
        ([8, 9, 6], [A, D, N]),
        ([17, 19, 17], [A, A, D]),
        ([7, 9, 19], [D, A, D]),
        ([16, 19, 16], [A, A, N]),
        ([6, 9, 16], [D, A, N]),
        ([16, 17, 4], [D, A, N]),
        ([6, 17, 8], [A, D, N]),
    ]
};

/// Bound every case of the twenty-case figure must respect.
pub const TWENTY_CASE_BOUND: usize = 17;

pub fn twenty_case_spec(case: usize) -> Result<CaseSpec> {
    if !(1..=20).contains(&case) {
        return Err(Error::InvalidCase(format!("case {case} not in 1..=20")));
    }
    let (sizes, rel) = TWENTY_CASES[case - 1];
    CaseSpec::new(&sizes, &[((0, 1), rel[0]), ((1, 2), rel[1]), ((0, 2), rel[2])])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub case: usize,
    pub spec: String,
    pub estimate: u128,
    pub result: ForbidResult,
    pub bound: usize,
    pub passed: bool,
}

/// Budgets that decide how each twenty-case entry is run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditBudget {
    /// Cases at or below this estimate run exhaustively.
    pub exhaustive_limit: u128,
    /// Cases at or below this (orbit-reduced) estimate run orbit-reduced.
    pub orbit_limit: u128,
    pub seed: u64,
    pub trials: u64,
}

impl Default for AuditBudget {
    fn default() -> Self {
        AuditBudget { exhaustive_limit: 20_000_000, orbit_limit: 50_000_000, seed: DEFAULT_SEED, trials: DEFAULT_TRIALS }
    }
}

impl AuditBudget {
    /// Budget for explicit full runs; no runtime guarantee.
    pub fn exhaustive() -> Self {
        AuditBudget { exhaustive_limit: 1 << 40, orbit_limit: 1 << 44, seed: DEFAULT_SEED, trials: DEFAULT_TRIALS }
    }
}

/// Runs a spec under the budget: exhaustive, then orbit-reduced, then sampled.
pub fn run_with_budget(t: &TargetGraph, spec: &CaseSpec, budget: AuditBudget) -> Result<ForbidResult> {
    let estimate = blowup_estimate(t, spec);
    if estimate <= budget.exhaustive_limit {
        return max_forbidden(t, spec, ForbidOptions { mode: ForbidMode::Exhaustive, blowup_limit: budget.exhaustive_limit });
    }
    if budget.orbit_limit > 0 {
        let opts = ForbidOptions { mode: ForbidMode::OrbitReduced, blowup_limit: budget.orbit_limit };
        match max_forbidden(t, spec, opts) {
            Err(Error::BlowUp { .. }) => {}
            other => return other,
        }
    }
    max_forbidden(t, spec, ForbidOptions::sampled(budget.seed, budget.trials))
}

/// The twenty cases over the given target (normally `ρ(SP_9^+)`), in case order.
pub fn twenty_case_audit(t: &TargetGraph, budget: AuditBudget) -> Result<Vec<CaseOutcome>> {
    let mut out = Vec::with_capacity(20);
    for case in 1..=20 {
        let spec = twenty_case_spec(case)?;
        let estimate = blowup_estimate(t, &spec);
        let result = run_with_budget(t, &spec, budget)?;
        let passed = result.max_forbidden <= TWENTY_CASE_BOUND;
        out.push(CaseOutcome { case, spec: spec.to_string(), estimate, result, bound: TWENTY_CASE_BOUND, passed });
    }
    Ok(out)
}

/// A named forbidding proposition with its claimed bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proposition {
    pub id: &'static str,
    pub spec: CaseSpec,
    pub bound: usize,
}

/// The three computer-checked propositions on pairs and triples of bad neighbors.
pub fn propositions() -> Vec<Proposition> {
    use Relation::Adjacent as A;
    vec![
        Proposition {
            id: "p754",
            spec: CaseSpec::new(&[19, 5, 4], &[((0, 1), A), ((1, 2), A), ((0, 2), A)]).unwrap(),
            bound: 17,
        },
        Proposition { id: "p75", spec: CaseSpec::new(&[7, 5], &[((0, 1), A)]).unwrap(), bound: 13 },
        Proposition {
            id: "p77",
            spec: CaseSpec::new(&[7, 7], &[((0, 1), A)]).unwrap().share(1, 0).unwrap(),
            bound: 11,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::target::{rho_sp, rho_sp_plus};

    #[test]
    fn single_satellite_matches_table() {
        let t = rho_sp_plus(9).unwrap();
        let spec = CaseSpec::new(&[9], &[]).unwrap();
        let r = max_forbidden(&t, &spec, ForbidOptions::exhaustive()).unwrap();
        assert_eq!(r.max_forbidden, 1);
        assert_eq!(replay_witness(&t, &spec, &r.witness), 1);
        let full = CaseSpec::new(&[20], &[]).unwrap();
        assert_eq!(max_forbidden(&t, &full, ForbidOptions::exhaustive()).unwrap().max_forbidden, 0);
    }

    #[test]
    fn table_small_target() {
        let t = rho_sp(5).unwrap();
        let f = forbid_table(&t, Sign::Positive).unwrap();
        assert_eq!(f[0], 10);
        assert_eq!(f[1], 6);
        assert!(f.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(f, forbid_table(&t, Sign::Negative).unwrap());
    }

    #[test]
    fn orbit_mode_agrees_with_exhaustive() {
        let t = rho_sp(5).unwrap();
        use Relation::*;
        for (sizes, rel) in [(vec![3, 4], vec![((0, 1), Adjacent)]), (vec![2, 3, 2], vec![((0, 1), IdentityDistinct), ((1, 2), Adjacent)])] {
            let spec = CaseSpec::new(&sizes, &rel).unwrap();
            let a = max_forbidden(&t, &spec, ForbidOptions::exhaustive()).unwrap();
            let b = max_forbidden(&t, &spec, ForbidOptions::orbit()).unwrap();
            assert_eq!(a.max_forbidden, b.max_forbidden, "{spec}");
            assert_eq!(replay_witness(&t, &spec, &a.witness), a.max_forbidden);
            assert_eq!(replay_witness(&t, &spec, &b.witness), b.max_forbidden);
        }
    }

    #[test]
    fn sign_normalization_is_sound() {
        let t = rho_sp(5).unwrap();
        let mut spec = CaseSpec::new(&[3, 3], &[((0, 1), Relation::Adjacent)]).unwrap();
        let a = max_forbidden(&t, &spec, ForbidOptions::exhaustive()).unwrap();
        // brute force with every hub sign, no normalization
        let ev = Evaluator { t: &t, spec: &spec, full: t.full() };
        let mut best = 0;
        for s0 in k_subsets(10, 3) {
            for s1 in k_subsets(10, 3) {
                for hb in 0..4 {
                    for pb in 0..2 {
                        let allowed = ev.allowed(&[s0, s1], &signs_from_bits(2, hb), &pair_matrix(&[(0, 1)], pb));
                        best = best.max(10 - allowed.len());
                    }
                }
            }
        }
        assert_eq!(a.max_forbidden, best);
        spec.quantify_edge_signs = false;
        assert!(max_forbidden(&t, &spec, ForbidOptions::exhaustive()).unwrap().max_forbidden <= best);
    }

    #[test]
    fn sampling_is_deterministic() {
        let t = rho_sp_plus(9).unwrap();
        let spec = twenty_case_spec(11).unwrap();
        let a = max_forbidden(&t, &spec, ForbidOptions::sampled(7, 20_000)).unwrap();
        let b = max_forbidden(&t, &spec, ForbidOptions::sampled(7, 20_000)).unwrap();
        assert_eq!(a, b);
        assert!(a.lower_bound);
        assert_eq!(replay_witness(&t, &spec, &a.witness), a.max_forbidden);
    }

    #[test]
    fn blowup_is_reported() {
        let t = rho_sp_plus(9).unwrap();
        let spec = twenty_case_spec(6).unwrap();
        assert!(matches!(max_forbidden(&t, &spec, ForbidOptions::exhaustive()), Err(Error::BlowUp { .. })));
    }

    #[test]
    fn spec_validation() {
        let t = rho_sp(5).unwrap();
        assert!(CaseSpec::new(&[3, 3], &[((0, 0), Relation::Adjacent)]).is_err());
        assert!(CaseSpec::new(&[3, 4], &[]).unwrap().share(1, 0).is_err());
        let big = CaseSpec::new(&[11], &[]).unwrap();
        assert!(max_forbidden(&t, &big, ForbidOptions::exhaustive()).is_err());
        assert_eq!(twenty_case_spec(6).unwrap().to_string(), "7-7-7 DDD");
    }
}
