//! Full automorphism groups of Hadamard matrices.
//!
//! Points are signed rows `(i, ±)`; an automorphism (R, S) sends `(i, +)`
//! to `(π_R(i), r_i)`. The group is built level by level along the base
//! `(0, +), (1, +), …`: at level l every signed row γ not yet reachable
//! from `(l, +)` inside the known stabilizer of rows `0..l` is tested by a
//! depth-first search for an automorphism fixing those rows and sending
//! `(l, +)` to γ. Successes extend the known group; failures are propagated
//! along the known stabilizer's orbit of γ.
//!
//! Inside a search, each assignment of a source row to a signed target row
//! splits paired column classes by the normalized entries of the two rows.
//! Unequal class sizes prune the branch, and candidate targets for the next
//! row must have the same signed class sums as the source row. Once the
//! column classes are singletons, S is forced and R is read off by a row
//! lookup.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{KhmError, Result};
use crate::matrix::SignMatrix;
use crate::perm_group::PermGroup;
use crate::signed_perm::{AutPair, GroupElement, Permutation, SignedPermutation};

#[derive(Clone, Debug)]
pub struct AutSearchOptions {
    pub cap: usize,
    pub seed: Vec<AutPair>,
    pub time_budget: Option<Duration>,
}

impl Default for AutSearchOptions {
    fn default() -> Self {
        AutSearchOptions {
            cap: 1 << 20,
            seed: Vec::new(),
            time_budget: Some(Duration::from_secs(600)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FullAutGroup {
    pub group: PermGroup<AutPair>,
    /// False when the time budget ran out; `group` is then a subgroup.
    pub complete: bool,
    /// Sizes of the basic orbits along the base, whose product is the order.
    pub basic_orbit_sizes: Vec<usize>,
    /// Generators found by the search, in discovery order.
    pub found: Vec<AutPair>,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Paired column partition for a partial row map.
#[derive(Clone, Debug)]
pub struct SearchState {
    n: usize,
    assigned: Vec<(usize, usize, i8)>,
    src_class: Vec<u32>,
    tgt_class: Vec<u32>,
    src_eps: Vec<i8>,
    tgt_eps: Vec<i8>,
    classes: usize,
    used_src: Vec<bool>,
    used_tgt: Vec<bool>,
}

impl SearchState {
    pub fn new(n: usize) -> Self {
        SearchState {
            n,
            assigned: Vec::new(),
            src_class: vec![0; n],
            tgt_class: vec![0; n],
            src_eps: vec![1; n],
            tgt_eps: vec![1; n],
            classes: usize::from(n > 0),
            used_src: vec![false; n],
            used_tgt: vec![false; n],
        }
    }

    pub fn depth(&self) -> usize {
        self.assigned.len()
    }

    pub fn assigned(&self) -> &[(usize, usize, i8)] {
        &self.assigned
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    /// Column classes as (source columns, target columns), by class id.
    pub fn column_classes(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = vec![(Vec::new(), Vec::new()); self.classes];
        for j in 0..self.n {
            out[self.src_class[j] as usize].0.push(j);
            out[self.tgt_class[j] as usize].1.push(j);
        }
        out
    }

    /// Once rows are assigned and every class is a singleton, S is forced.
    pub fn is_discrete(&self) -> bool {
        !self.assigned.is_empty() && self.classes == self.n
    }

    /// Map source row `src` to `sign`·(row `tgt`) and refine; `None` on a
    /// class-size mismatch.
    pub fn assign(&self, h: &SignMatrix, src: usize, tgt: usize, sign: i8) -> Option<SearchState> {
        if self.used_src[src] || self.used_tgt[tgt] {
            return None;
        }
        let n = self.n;
        let mut next = self.clone();
        next.assigned.push((src, tgt, sign));
        next.used_src[src] = true;
        next.used_tgt[tgt] = true;
        if self.assigned.is_empty() {
            for j in 0..n {
                next.src_eps[j] = h.get(src, j);
                next.tgt_eps[j] = sign * h.get(tgt, j);
            }
            return Some(next);
        }
        let c = self.classes;
        let mut src_count = vec![0u32; 2 * c];
        let mut tgt_count = vec![0u32; 2 * c];
        let mut src_key = vec![0u32; n];
        let mut tgt_key = vec![0u32; n];
        for j in 0..n {
            let b = u32::from(h.get(src, j) * self.src_eps[j] < 0);
            let key = 2 * self.src_class[j] + b;
            src_key[j] = key;
            src_count[key as usize] += 1;
            let b = u32::from(sign * h.get(tgt, j) * self.tgt_eps[j] < 0);
            let key = 2 * self.tgt_class[j] + b;
            tgt_key[j] = key;
            tgt_count[key as usize] += 1;
        }
        if src_count != tgt_count {
            return None;
        }
        let mut relabel = vec![u32::MAX; 2 * c];
        let mut classes = 0u32;
        for (key, &cnt) in src_count.iter().enumerate() {
            if cnt > 0 {
                relabel[key] = classes;
                classes += 1;
            }
        }
        for j in 0..n {
            next.src_class[j] = relabel[src_key[j] as usize];
            next.tgt_class[j] = relabel[tgt_key[j] as usize];
        }
        next.classes = classes as usize;
        Some(next)
    }

    fn profile(&self, h: &SignMatrix, row: usize, source: bool) -> Vec<i32> {
        let (class, eps) = if source {
            (&self.src_class, &self.src_eps)
        } else {
            (&self.tgt_class, &self.tgt_eps)
        };
        let mut p = vec![0i32; self.classes];
        for j in 0..self.n {
            p[class[j] as usize] += (h.get(row, j) * eps[j]) as i32;
        }
        p
    }

    /// Signed targets for source row `src` whose class sums agree.
    pub fn candidates(&self, h: &SignMatrix, src: usize) -> Vec<(usize, i8)> {
        let n = self.n;
        if self.assigned.is_empty() {
            return (0..n).flat_map(|t| [(t, 1), (t, -1)]).collect();
        }
        let ps = self.profile(h, src, true);
        let neg: Vec<i32> = ps.iter().map(|v| -v).collect();
        let mut out = Vec::new();
        for t in 0..n {
            if self.used_tgt[t] {
                continue;
            }
            let pt = self.profile(h, t, false);
            if pt == ps {
                out.push((t, 1));
            }
            if pt == neg {
                out.push((t, -1));
            }
        }
        out
    }

    /// The forced S of a discrete state.
    fn forced_s(&self) -> SignedPermutation {
        let mut tgt_of_class = vec![0usize; self.n];
        for j in 0..self.n {
            tgt_of_class[self.tgt_class[j] as usize] = j;
        }
        let mut images = Vec::with_capacity(self.n);
        let mut signs = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let t = tgt_of_class[self.src_class[j] as usize];
            images.push(t);
            signs.push(self.src_eps[j] * self.tgt_eps[t]);
        }
        SignedPermutation::new(Permutation::from_images(images).expect("paired classes"), signs)
            .expect("±1")
    }
}

/// Row or column lookup up to sign: key = packed entries normalized so the
/// first entry is +1.
struct LineIndex {
    map: HashMap<Vec<u64>, (usize, i8)>,
}

fn normalized_key(line: impl Iterator<Item = i8>, n: usize) -> (Vec<u64>, i8) {
    let mut words = vec![0u64; n.div_ceil(64).max(1)];
    let mut first = 0i8;
    for (j, v) in line.enumerate() {
        if j == 0 {
            first = v;
        }
        if v * first < 0 {
            words[j / 64] |= 1 << (j % 64);
        }
    }
    (words, first)
}

impl LineIndex {
    fn rows(h: &SignMatrix) -> Self {
        let n = h.cols();
        let map = (0..h.rows())
            .map(|i| {
                let (key, first) = normalized_key(h.row(i).iter().copied(), n);
                (key, (i, first))
            })
            .collect();
        LineIndex { map }
    }

    fn cols(h: &SignMatrix) -> Self {
        let n = h.rows();
        let map = (0..h.cols())
            .map(|j| {
                let (key, first) = normalized_key((0..n).map(|i| h.get(i, j)), n);
                (key, (j, first))
            })
            .collect();
        LineIndex { map }
    }

    /// `(index, sign)` with line = sign · H-line(index).
    fn find(&self, line: impl Iterator<Item = i8>, n: usize) -> Option<(usize, i8)> {
        let (key, first) = normalized_key(line, n);
        self.map.get(&key).map(|&(idx, f)| (idx, first * f))
    }
}

/// Given S, recover R with R·H·Sᵀ = H, if any.
fn complete_r(h: &SignMatrix, rows: &LineIndex, s: &SignedPermutation) -> Option<SignedPermutation> {
    let n = h.rows();
    let mut images = vec![usize::MAX; n];
    let mut signs = vec![1i8; n];
    for t in 0..n {
        // v[j] = s_j · H[t][π_S(j)] must equal r_i · H[i] for the row i with π_R(i) = t
        let line = (0..n).map(|j| s.sign(j) * h.get(t, s.image(j)));
        let (i, sign) = rows.find(line, n)?;
        if images[i] != usize::MAX {
            return None;
        }
        images[i] = t;
        signs[i] = sign;
    }
    SignedPermutation::new(Permutation::from_images(images).ok()?, signs).ok()
}

/// S with R·H·Sᵀ = H for the given R, found column by column.
pub fn complete_s(h: &SignMatrix, r: &SignedPermutation) -> Result<SignedPermutation> {
    let n = h.rows();
    if r.degree() != n || h.cols() != n {
        return Err(KhmError::DimensionMismatch(format!("R of degree {} for order {n}", r.degree())));
    }
    let cols = LineIndex::cols(h);
    // (R⁻¹H)[π_R(l)][j] = r_l·H[l][j]; its column j must be s_j · column π_S(j)
    let r_inv = r.inverse();
    let mut images = vec![usize::MAX; n];
    let mut signs = vec![1i8; n];
    for j in 0..n {
        let line = (0..n).map(|i| r_inv.sign(i) * h.get(r_inv.image(i), j));
        let (col, sign) = cols.find(line, n).ok_or(KhmError::NotMonomial)?;
        images[j] = col;
        signs[j] = sign;
    }
    let perm = Permutation::from_images(images).map_err(|_| KhmError::NotMonomial)?;
    let s = SignedPermutation::new(perm, signs)?;
    if AutPair::new(r.clone(), s.clone())?.is_automorphism(h)? {
        Ok(s)
    } else {
        Err(KhmError::NotMonomial)
    }
}

struct Searcher<'a> {
    h: &'a SignMatrix,
    rows: LineIndex,
    deadline: Option<Instant>,
    nodes: std::sync::atomic::AtomicU64,
}

enum Outcome {
    Found(AutPair),
    None,
    OutOfTime,
}

impl<'a> Searcher<'a> {
    fn timed_out(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() > d)
    }

    fn leaf(&self, state: &SearchState) -> Option<AutPair> {
        let s = state.forced_s();
        let r = complete_r(self.h, &self.rows, &s)?;
        if state.assigned.iter().any(|&(i, t, sg)| r.image(i) != t || r.sign(i) != sg) {
            return None;
        }
        Some(AutPair::new(r, s).expect("same degree"))
    }

    fn next_source(state: &SearchState) -> Option<usize> {
        state.used_src.iter().position(|&u| !u)
    }

    /// Any automorphism extending `state`.
    fn extend(&self, state: &SearchState) -> Outcome {
        self.nodes.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        if state.is_discrete() {
            return match self.leaf(state) {
                Some(g) => Outcome::Found(g),
                None => Outcome::None,
            };
        }
        if self.timed_out() {
            return Outcome::OutOfTime;
        }
        let Some(src) = Self::next_source(state) else {
            return Outcome::None;
        };
        for (t, sg) in state.candidates(self.h, src) {
            if let Some(child) = state.assign(self.h, src, t, sg) {
                match self.extend(&child) {
                    Outcome::None => {}
                    other => return other,
                }
            }
        }
        Outcome::None
    }

    /// Like [`extend`], with the first branching level searched in parallel.
    fn extend_parallel(&self, state: &SearchState) -> Outcome {
        if state.is_discrete() {
            return self.extend(state);
        }
        let Some(src) = Self::next_source(state) else {
            return Outcome::None;
        };
        let children: Vec<SearchState> = state
            .candidates(self.h, src)
            .into_iter()
            .filter_map(|(t, sg)| state.assign(self.h, src, t, sg))
            .collect();
        let results: Vec<Outcome> = children
            .par_iter()
            .map(|c| self.extend(c))
            .collect();
        let mut out_of_time = false;
        for r in results {
            match r {
                Outcome::Found(g) => return Outcome::Found(g),
                Outcome::OutOfTime => out_of_time = true,
                Outcome::None => {}
            }
        }
        if out_of_time {
            Outcome::OutOfTime
        } else {
            Outcome::None
        }
    }
}

/// Image of the signed row `(i, sign)` under g.
fn act(g: &AutPair, point: (usize, i8)) -> (usize, i8) {
    (g.r.image(point.0), point.1 * g.r.sign(point.0))
}

fn orbit_of(gens: &[AutPair], start: (usize, i8)) -> HashSet<(usize, i8)> {
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = act(g, p);
            if seen.insert(q) {
                stack.push(q);
            }
        }
    }
    seen
}

/// Elements of `group` fixing rows `0..l` with sign +; returns a generating
/// set (all such elements).
fn pointwise_stabilizer(group: &PermGroup<AutPair>, l: usize) -> Vec<AutPair> {
    group
        .elements()
        .iter()
        .filter(|g| (0..l).all(|i| g.r.image(i) == i && g.r.sign(i) == 1))
        .cloned()
        .collect()
}

pub fn full_aut_group(h: &SignMatrix, options: &AutSearchOptions) -> Result<FullAutGroup> {
    let start = Instant::now();
    let n = h.rows();
    if !h.is_square() || n == 0 {
        return Err(KhmError::DimensionMismatch("expected a non-empty square matrix".into()));
    }
    if !h.is_hadamard() {
        return Err(KhmError::HypothesisViolated("matrix is not Hadamard".into()));
    }
    for g in &options.seed {
        if g.degree() != n || !g.is_automorphism(h)? {
            return Err(KhmError::HypothesisViolated(
                "seed generator is not an automorphism".into(),
            ));
        }
    }
    let searcher = Searcher {
        h,
        rows: LineIndex::rows(h),
        deadline: options.time_budget.map(|b| start + b),
        nodes: 0.into(),
    };
    let mut gens: Vec<AutPair> = options.seed.clone();
    gens.push(AutPair::negative_identity(n));
    let mut known = PermGroup::closure(AutPair::identity(n), &gens, options.cap)?;
    let mut found = Vec::new();

    // Base: rows 0..depth with sign +, until fixing them forces S.
    let mut prefixes = vec![SearchState::new(n)];
    loop {
        let last = prefixes.last().unwrap();
        if last.is_discrete() || last.depth() == n {
            break;
        }
        let l = last.depth();
        let next = last.assign(h, l, l, 1).expect("identity is consistent");
        prefixes.push(next);
    }
    let depth = prefixes.len() - 1;

    let partial = |known: &PermGroup<AutPair>, found: &Vec<AutPair>, sizes: Vec<usize>| FullAutGroup {
        group: known.clone(),
        complete: false,
        basic_orbit_sizes: sizes,
        found: found.clone(),
        nodes: searcher.nodes.load(std::sync::atomic::Ordering::Relaxed),
        elapsed: start.elapsed(),
    };

    let mut sizes = vec![0; depth];
    // Deepest level first, so that stabilizers are complete when a level
    // above uses them.
    for l in (0..depth).rev() {
        let prefix = &prefixes[l];
        let base_point = (l, 1i8);
        let mut stab = pointwise_stabilizer(&known, l);
        let mut orbit = orbit_of(&stab, base_point);
        let mut rejected: HashSet<(usize, i8)> = HashSet::new();
        for (t, sg) in prefix.candidates(h, l) {
            let gamma = (t, sg);
            if orbit.contains(&gamma) || rejected.contains(&gamma) {
                continue;
            }
            let outcome = match prefix.assign(h, l, t, sg) {
                None => Outcome::None,
                Some(child) => searcher.extend_parallel(&child),
            };
            match outcome {
                Outcome::Found(g) => {
                    found.push(g.clone());
                    gens.push(g);
                    known = PermGroup::closure(AutPair::identity(n), &gens, options.cap)?;
                    stab = pointwise_stabilizer(&known, l);
                    orbit = orbit_of(&stab, base_point);
                }
                Outcome::None => {
                    rejected.extend(orbit_of(&stab, gamma));
                }
                Outcome::OutOfTime => {
                    return Err(KhmError::TimeBudgetExceeded {
                        partial: Box::new(partial(&known, &found, sizes)),
                    })
                }
            }
        }
        sizes[l] = orbit.len();
    }

    let group = PermGroup::closure(AutPair::identity(n), &gens, options.cap)?;
    debug_assert_eq!(group.order(), sizes.iter().product::<usize>());
    Ok(FullAutGroup {
        group,
        complete: true,
        basic_orbit_sizes: sizes,
        found,
        nodes: searcher.nodes.load(std::sync::atomic::Ordering::Relaxed),
        elapsed: start.elapsed(),
    })
}
