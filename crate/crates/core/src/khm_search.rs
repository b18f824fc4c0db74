//! Exhaustive search for Kimura blocks at small k.
//!
//! Profiles are enumerated from the counting identities; within a profile the
//! first orthogonality identity Σ w̃·w̃* = (8k+4)·1 − 4·Σg (w̃ the ±1 version
//! of w) is solved by meet-in-the-middle over (a, b) and (c, d) pairs. Every
//! match is assembled and checked for the Hadamard property.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{KhmError, Result};
use crate::group_algebra::GroupRingElement;
use crate::kimura::{assemble, check_bounds, check_c_conditions, check_nc, parameter_profile, KimuraBlocks, ParameterProfile};

/// All profiles satisfying NC1–NC4 (and the strict bounds for k ≥ 5), in
/// lexicographic order.
pub fn enumerate_profiles(k: usize) -> Vec<ParameterProfile> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    for a1 in 0..k {
        let a2 = k - 1 - a1;
        for b1 in 0..=k {
            for c1 in 0..=k {
                for d1 in 0..=k {
                    let p = ParameterProfile::from_array([a1, a2, b1, k - b1, c1, k - c1, d1, k - d1]);
                    if check_nc(&p, k).iter().all(|&ok| ok) && check_bounds(&p, k) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Which of C1–C5 to impose.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CFilters(pub [bool; 5]);

impl CFilters {
    /// From 1-based condition numbers.
    pub fn from_list(list: &[usize]) -> Result<Self> {
        let mut f = [false; 5];
        for &c in list {
            if !(1..=5).contains(&c) {
                return Err(KhmError::UnsupportedParameter(format!("no condition C{c}")));
            }
            f[c - 1] = true;
        }
        Ok(CFilters(f))
    }

    pub fn has(&self, c: usize) -> bool {
        self.0[c - 1]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub node_cap: Option<u64>,
    pub time_budget: Option<Duration>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub k: usize,
    pub require_y_invariant: bool,
    pub c_filters: CFilters,
    pub profile_whitelist: Option<Vec<ParameterProfile>>,
    pub limits: SearchLimits,
    /// Lift the default size restrictions (k = 5 needs y-invariance or C5,
    /// k ≥ 7 needs this flag).
    pub force: bool,
}

impl SearchSpec {
    pub fn new(k: usize) -> Self {
        SearchSpec {
            k,
            require_y_invariant: false,
            c_filters: CFilters::default(),
            profile_whitelist: None,
            limits: SearchLimits::default(),
            force: false,
        }
    }

    fn y_invariant(&self) -> bool {
        self.require_y_invariant || self.c_filters.has(4)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k;
        if k < 3 || k % 2 == 0 {
            return Err(KhmError::UnsupportedParameter(format!("k = {k} must be odd and at least 3")));
        }
        if k > 63 {
            return Err(KhmError::UnsupportedParameter(format!("k = {k} is too large")));
        }
        if self.limits.node_cap == Some(0) || self.limits.time_budget == Some(Duration::ZERO) {
            return Err(KhmError::UnsupportedParameter("limits must be positive".into()));
        }
        if !self.force {
            let restricted = self.y_invariant() || self.c_filters.has(5);
            if k >= 7 || (k == 5 && !restricted) {
                return Err(KhmError::UnsupportedParameter(format!(
                    "k = {k} with these filters needs an explicit override"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchStop {
    NodeCap,
    TimeBudget,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub results: Vec<KimuraBlocks>,
    pub profiles_tried: usize,
    pub nodes: u64,
    /// Set when a limit cut the search short; `results` is then partial.
    pub stopped: Option<SearchStop>,
}

impl SearchOutcome {
    pub fn is_complete(&self) -> bool {
        self.stopped.is_none()
    }

    /// The results, or an error if the search was cut short.
    pub fn strict(self, spec: &SearchSpec) -> Result<Vec<KimuraBlocks>> {
        match self.stopped {
            None => Ok(self.results),
            Some(SearchStop::NodeCap) => Err(KhmError::NodeCapExceeded {
                cap: spec.limits.node_cap.unwrap_or(0),
            }),
            Some(SearchStop::TimeBudget) => Err(KhmError::SearchBudgetExceeded),
        }
    }
}

/// Subsets of `0..k` of size `size`, as bit masks in increasing order.
fn subsets(k: usize, size: usize, allowed: u64, y_invariant: bool) -> Vec<u64> {
    let mut out = Vec::new();
    if y_invariant {
        // unions of {i, −i}
        let orbits: Vec<u64> = (0..k)
            .filter(|&i| i <= (k - i) % k)
            .map(|i| (1u64 << i) | (1u64 << ((k - i) % k)))
            .collect();
        for pick in 0u64..(1 << orbits.len()) {
            let mask = orbits
                .iter()
                .enumerate()
                .filter(|(t, _)| pick >> t & 1 == 1)
                .fold(0, |m, (_, o)| m | o);
            if mask.count_ones() as usize == size && mask & !allowed == 0 {
                out.push(mask);
            }
        }
        out.sort_unstable();
    } else {
        for mask in 0u64..(1 << k) {
            if mask.count_ones() as usize == size && mask & !allowed == 0 {
                out.push(mask);
            }
        }
    }
    out
}

fn half(mask: u64, k: usize) -> Vec<i64> {
    (0..k).map(|i| (mask >> i & 1) as i64).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Slot {
    A,
    B,
    C,
    D,
}

struct Candidate {
    element: GroupRingElement,
    autocorrelation: Vec<i64>,
}

fn candidates(k: usize, slot: Slot, rot: usize, refl: usize, y_inv: bool, c5: bool) -> Vec<Candidate> {
    let full = (1u64 << k) - 1;
    let mut pairs = Vec::new();
    if c5 {
        // C5 fixes the rotation half from the reflection half
        let (allowed, derive): (u64, fn(u64, u64) -> u64) = match slot {
            Slot::A => (full & !1, |m, f| f & !1 & !m),
            Slot::B => (full, |m, f| f & !m),
            Slot::C | Slot::D => (full & !1, |m, _| m | 1),
        };
        for m in subsets(k, refl, allowed, y_inv) {
            let r = derive(m, full);
            if r.count_ones() as usize == rot {
                pairs.push((r, m));
            }
        }
    } else {
        let rots = subsets(k, rot, full, y_inv);
        for m in subsets(k, refl, full, y_inv) {
            for &r in &rots {
                pairs.push((r, m));
            }
        }
        pairs.sort_unstable();
    }
    let total = GroupRingElement::total(k);
    pairs
        .into_iter()
        .map(|(r, m)| {
            let element = GroupRingElement::from_halves(&half(r, k), &half(m, k)).expect("same k");
            let pm = total.sub(&element.scale(2)).expect("same k");
            let autocorrelation = pm.mul(&pm.star()).expect("same k").coeffs().to_vec();
            Candidate { element, autocorrelation }
        })
        .collect()
}

type CandidateCache = HashMap<(usize, usize, u8), std::sync::Arc<Vec<Candidate>>>;

struct Shared<'a> {
    spec: &'a SearchSpec,
    nodes: AtomicU64,
    stop: AtomicBool,
    reason: std::sync::Mutex<Option<SearchStop>>,
    deadline: Option<Instant>,
    cache: std::sync::Mutex<CandidateCache>,
}

impl Shared<'_> {
    /// Count `n` nodes; false once a limit is hit.
    fn tick(&self, n: u64) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let total = self.nodes.fetch_add(n, Ordering::Relaxed) + n;
        let reason = if self.spec.limits.node_cap.is_some_and(|cap| total > cap) {
            Some(SearchStop::NodeCap)
        } else if self.deadline.is_some_and(|d| Instant::now() > d) {
            Some(SearchStop::TimeBudget)
        } else {
            None
        };
        if let Some(r) = reason {
            self.stop.store(true, Ordering::Relaxed);
            self.reason.lock().unwrap().get_or_insert(r);
            return false;
        }
        true
    }

    fn candidates(&self, slot: Slot, rot: usize, refl: usize) -> std::sync::Arc<Vec<Candidate>> {
        let spec = self.spec;
        let key = (rot, refl, slot as u8);
        if let Some(c) = self.cache.lock().unwrap().get(&key) {
            return c.clone();
        }
        let c = std::sync::Arc::new(candidates(
            spec.k,
            slot,
            rot,
            refl,
            spec.y_invariant(),
            spec.c_filters.has(5),
        ));
        self.cache.lock().unwrap().insert(key, c.clone());
        c
    }

    fn search_profile(&self, p: &ParameterProfile) -> Vec<KimuraBlocks> {
        let k = self.spec.k;
        let a = self.candidates(Slot::A, p.a1, p.a2);
        let b = self.candidates(Slot::B, p.b1, p.b2);
        let c = self.candidates(Slot::C, p.c1, p.c2);
        let d = self.candidates(Slot::D, p.d1, p.d2);
        let mut out = Vec::new();
        if a.is_empty() || b.is_empty() || c.is_empty() || d.is_empty() {
            return out;
        }
        let add = |x: &[i64], y: &[i64]| -> Vec<i64> { x.iter().zip(y).map(|(u, v)| u + v).collect() };
        let mut right: HashMap<Vec<i64>, Vec<(usize, usize)>> = HashMap::new();
        for (ci, cc) in c.iter().enumerate() {
            if !self.tick(d.len() as u64) {
                return out;
            }
            for (di, dd) in d.iter().enumerate() {
                right
                    .entry(add(&cc.autocorrelation, &dd.autocorrelation))
                    .or_default()
                    .push((ci, di));
            }
        }
        // (8k+4)·1 − 4·Σg
        let mut target = vec![-4i64; 2 * k];
        target[0] += 8 * k as i64 + 4;
        for aa in a.iter() {
            if !self.tick(b.len() as u64) {
                return out;
            }
            for bb in b.iter() {
                let need: Vec<i64> = target
                    .iter()
                    .zip(&aa.autocorrelation)
                    .zip(&bb.autocorrelation)
                    .map(|((t, u), v)| t - u - v)
                    .collect();
                let Some(matches) = right.get(&need) else { continue };
                if !self.tick(matches.len() as u64) {
                    return out;
                }
                for &(ci, di) in matches {
                    let blocks = KimuraBlocks::new(
                        aa.element.clone(),
                        bb.element.clone(),
                        c[ci].element.clone(),
                        d[di].element.clone(),
                    )
                    .expect("binary, same k");
                    if self.accepts(&blocks) {
                        out.push(blocks);
                    }
                }
            }
        }
        out
    }

    fn accepts(&self, blocks: &KimuraBlocks) -> bool {
        let flags = check_c_conditions(blocks);
        let filters = self.spec.c_filters;
        if (1..=5).any(|c| filters.has(c) && !flags[c - 1]) {
            return false;
        }
        if self.spec.require_y_invariant && !flags[3] {
            return false;
        }
        assemble(blocks).is_hadamard()
    }
}

/// Profiles passing the profile-level conditions C1–C3 when requested.
fn profile_passes(p: &ParameterProfile, filters: CFilters) -> bool {
    (!filters.has(1) || p.a1 >= p.a2)
        && (!filters.has(2) || (p.b1 % 2 == 1 && p.c1 % 2 == 1 && p.d1 % 2 == 1))
        && (!filters.has(3) || (p.b1 >= p.c1 && p.b1 >= p.d1))
}

pub fn search(spec: &SearchSpec) -> Result<SearchOutcome> {
    spec.validate()?;
    let mut profiles = enumerate_profiles(spec.k);
    if let Some(white) = &spec.profile_whitelist {
        profiles.retain(|p| white.contains(p));
    }
    profiles.retain(|p| profile_passes(p, spec.c_filters));
    let shared = Shared {
        spec,
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        reason: std::sync::Mutex::new(None),
        deadline: spec.limits.time_budget.map(|b| Instant::now() + b),
        cache: std::sync::Mutex::new(HashMap::new()),
    };
    let per_profile: Vec<Vec<KimuraBlocks>> =
        profiles.par_iter().map(|p| shared.search_profile(p)).collect();
    let mut seen = HashSet::new();
    let mut results = Vec::new();
    for blocks in per_profile.into_iter().flatten() {
        debug_assert!(profiles.contains(&parameter_profile(&blocks)));
        if seen.insert(blocks.clone()) {
            results.push(blocks);
        }
    }
    let stopped = *shared.reason.lock().unwrap();
    Ok(SearchOutcome {
        results,
        profiles_tried: profiles.len(),
        nodes: shared.nodes.load(Ordering::Relaxed),
        stopped,
    })
}
