//! Materialized finite groups: closure, orbits, block systems, induced
//! actions and isomorphism fingerprints.
//!
//! Every group here is small enough to list element by element, so there is
//! no stabilizer chain. Elements are kept sorted, which makes membership a
//! binary search and all outputs deterministic.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{KhmError, Result};
use crate::signed_perm::{AutPair, GroupElement, Permutation};

#[derive(Clone, Debug)]
pub struct PermGroup<T> {
    degree: usize,
    generators: Vec<T>,
    elements: Vec<T>,
}

impl<T: GroupElement> PermGroup<T> {
    /// Breadth-first product closure of `generators`.
    ///
    /// Identity and duplicate generators are dropped; the element list is
    /// sorted. Fails with `CapExceeded` once more than `cap` elements appear.
    pub fn closure(identity: T, generators: &[T], cap: usize) -> Result<Self> {
        let mut gens: Vec<T> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        let degree = identity.degree();
        let mut seen: HashSet<T> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(e) = queue.pop_front() {
            for g in &gens {
                let next = e.compose(g);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(KhmError::CapExceeded { cap });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut elements: Vec<T> = seen.into_iter().collect();
        elements.sort();
        Ok(PermGroup {
            degree,
            generators: gens,
            elements,
        })
    }

    /// Wrap a list that is already closed under composition, choosing a
    /// generating set greedily in element order.
    pub fn from_closed_elements(identity: T, mut elements: Vec<T>) -> Self {
        elements.sort();
        elements.dedup();
        let degree = identity.degree();
        let mut generators: Vec<T> = Vec::new();
        let mut span: HashSet<T> = HashSet::from([identity.clone()]);
        for e in &elements {
            if span.contains(e) {
                continue;
            }
            generators.push(e.clone());
            // re-close the span with the new generator
            let mut queue: VecDeque<T> = span.iter().cloned().collect();
            while let Some(x) = queue.pop_front() {
                for g in &generators {
                    let y = x.compose(g);
                    if span.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        PermGroup {
            degree,
            generators,
            elements,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[T] {
        &self.generators
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn identity(&self) -> &T {
        self.elements
            .iter()
            .find(|e| e.is_identity())
            .expect("group contains its identity")
    }

    pub fn contains(&self, g: &T) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Subgroup of elements satisfying `pred`; `pred` must define a subgroup.
    pub fn filter_subgroup(&self, pred: impl Fn(&T) -> bool) -> PermGroup<T> {
        let elements: Vec<T> = self.elements.iter().filter(|e| pred(e)).cloned().collect();
        Self::from_closed_elements(self.identity().clone(), elements)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup<T>) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup<T> {
        let id = self.identity().clone();
        let mut gens: Vec<T> = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                gens.push(commutator(a, b));
            }
        }
        let cap = self.order().max(1);
        let mut d = PermGroup::closure(id.clone(), &gens, cap).expect("subgroup of a finite group");
        loop {
            let mut added = false;
            let current: Vec<T> = d.generators.clone();
            for x in &current {
                for g in &self.generators {
                    let conj = g.inverse().compose(x).compose(g);
                    if !d.contains(&conj) {
                        gens.push(conj);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
            d = PermGroup::closure(id.clone(), &gens, cap).expect("subgroup of a finite group");
        }
        d
    }

    pub fn center_order(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| self.generators.iter().all(|g| e.compose(g) == g.compose(e)))
            .count()
    }

    pub fn exponent(&self) -> u64 {
        self.elements.iter().fold(1u64, |acc, e| lcm(acc, e.order()))
    }

    /// Elementary divisors (prime powers, ascending) of G/G'.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        let derived = self.derived_subgroup();
        let mut coset_of: HashMap<T, usize> = HashMap::new();
        let mut reps: Vec<T> = Vec::new();
        for g in &self.elements {
            if coset_of.contains_key(g) {
                continue;
            }
            let id = reps.len();
            for d in derived.elements() {
                coset_of.insert(g.compose(d), id);
            }
            reps.push(g.clone());
        }
        let quotient_order = reps.len() as u64;
        let orders: Vec<u64> = reps
            .iter()
            .map(|g| {
                let mut m = 1u64;
                let mut cur = g.clone();
                while !derived.contains(&cur) {
                    cur = cur.compose(g);
                    m += 1;
                }
                m
            })
            .collect();
        let mut out = Vec::new();
        for p in prime_factors(quotient_order) {
            let mut count_le = Vec::new(); // log_p #{order | p^i}
            let mut i = 0u32;
            loop {
                let pi = p.pow(i);
                let c = orders.iter().filter(|&&o| pi % o == 0).count() as u64;
                count_le.push(ilog(c, p));
                if i > 0 && count_le[i as usize] == count_le[i as usize - 1] {
                    break;
                }
                i += 1;
            }
            // number of cyclic factors of exponent ≥ i is f(i) − f(i−1)
            let diffs: Vec<u32> = (1..count_le.len()).map(|i| count_le[i] - count_le[i - 1]).collect();
            for (idx, &at_least) in diffs.iter().enumerate() {
                let next = diffs.get(idx + 1).copied().unwrap_or(0);
                for _ in 0..(at_least - next) {
                    out.push(p.pow(idx as u32 + 1));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        GroupFingerprint {
            order: self.order() as u64,
            exponent: self.exponent(),
            center_order: self.center_order() as u64,
            derived_order: self.derived_subgroup().order() as u64,
            abelianization: self.abelian_invariants(),
        }
    }
}

fn commutator<T: GroupElement>(a: &T, b: &T) -> T {
    a.inverse().compose(&b.inverse()).compose(a).compose(b)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut e = 0;
    while x > 1 {
        x /= p;
        e += 1;
    }
    e
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Coarse isomorphism invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub order: u64,
    pub exponent: u64,
    pub center_order: u64,
    pub derived_order: u64,
    pub abelianization: Vec<u64>,
}

impl GroupFingerprint {
    pub fn tuple(&self) -> (u64, u64, u64, u64, Vec<u64>) {
        (
            self.order,
            self.exponent,
            self.center_order,
            self.derived_order,
            self.abelianization.clone(),
        )
    }
}

/// A partition of the domain into equal-size cells, sorted by cell minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BlockSystem {
    pub cells: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn cell_size(&self) -> usize {
        self.cells.first().map_or(0, Vec::len)
    }

    pub fn is_trivial(&self, domain: usize) -> bool {
        self.cells.len() == 1 || self.cells.len() == domain
    }

    /// Cell index of every point.
    pub fn cell_index(&self, domain: usize) -> Vec<usize> {
        let mut idx = vec![usize::MAX; domain];
        for (c, cell) in self.cells.iter().enumerate() {
            for &p in cell {
                idx[p] = c;
            }
        }
        idx
    }

    /// Cells partition `0..domain`, have equal sizes and are mapped to cells
    /// by every generator.
    pub fn is_valid_for(&self, g: &PermGroup<Permutation>, domain: usize) -> bool {
        let idx = self.cell_index(domain);
        if idx.contains(&usize::MAX) {
            return false;
        }
        let size = self.cell_size();
        if self.cells.iter().any(|c| c.len() != size) {
            return false;
        }
        g.generators().iter().all(|perm| {
            self.cells.iter().all(|cell| {
                let target = idx[perm.apply(cell[0])];
                cell.iter().all(|&p| idx[perm.apply(p)] == target)
            })
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl PermGroup<Permutation> {
    pub fn trivial(degree: usize) -> Self {
        PermGroup::closure(Permutation::identity(degree), &[], 1).expect("trivial")
    }

    pub fn from_permutations(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(KhmError::DimensionMismatch("generator degree".into()));
        }
        PermGroup::closure(Permutation::identity(degree), generators, cap)
    }

    /// Orbits on `0..degree`, each sorted, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut uf = UnionFind::new(n);
        for g in &self.generators {
            for i in 0..n {
                uf.union(i, g.apply(i));
            }
        }
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            let r = uf.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort();
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// The induced action on an invariant set of points, relabelled
    /// `0..points.len()` in ascending order of the original labels.
    pub fn action_on(&self, points: &[usize]) -> Result<PermGroup<Permutation>> {
        let mut pts = points.to_vec();
        pts.sort_unstable();
        let mut label = vec![usize::MAX; self.degree];
        for (i, &p) in pts.iter().enumerate() {
            label[p] = i;
        }
        let mut restricted: Vec<Permutation> = Vec::new();
        for e in &self.elements {
            let mut images = Vec::with_capacity(pts.len());
            for &p in &pts {
                let l = label[e.apply(p)];
                if l == usize::MAX {
                    return Err(KhmError::DimensionMismatch(
                        "point set is not invariant under the group".into(),
                    ));
                }
                images.push(l);
            }
            restricted.push(Permutation::from_images_unchecked(images));
        }
        let m = pts.len();
        Ok(PermGroup::from_closed_elements(Permutation::identity(m), restricted))
    }

    /// Smallest block containing `a` and `b` (Atkinson's union-find closure).
    pub fn minimal_block_containing(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        Ok(self.block_system_from_seed(a, b)?.cells.into_iter().find(|c| c.contains(&a)).unwrap())
    }

    /// Finest block system in which `a` and `b` share a cell.
    pub fn block_system_from_seed(&self, a: usize, b: usize) -> Result<BlockSystem> {
        if !self.is_transitive() {
            return Err(KhmError::NotTransitive);
        }
        let n = self.degree;
        let mut uf = UnionFind::new(n);
        let mut queue = VecDeque::new();
        if uf.union(a, b) {
            queue.push_back((a, b));
        }
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.generators {
                let (gx, gy) = (g.apply(x), g.apply(y));
                if uf.union(gx, gy) {
                    queue.push_back((gx, gy));
                }
            }
        }
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            let r = uf.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut cells: Vec<Vec<usize>> = by_root.into_values().collect();
        cells.sort();
        Ok(BlockSystem { cells })
    }

    /// Distinct nontrivial block systems generated by the seeds (0, i),
    /// sorted by cell size and then by cells.
    pub fn all_minimal_block_systems(&self) -> Result<Vec<BlockSystem>> {
        if !self.is_transitive() {
            return Err(KhmError::NotTransitive);
        }
        let n = self.degree;
        let mut out: Vec<BlockSystem> = Vec::new();
        for i in 1..n {
            let bs = self.block_system_from_seed(0, i)?;
            if !bs.is_trivial(n) && !out.contains(&bs) {
                out.push(bs);
            }
        }
        out.sort_by(|x, y| x.cell_size().cmp(&y.cell_size()).then_with(|| x.cells.cmp(&y.cells)));
        Ok(out)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.all_minimal_block_systems()?.is_empty())
    }

    /// Action on the cells of `blocks`, cells labelled by their index.
    pub fn induced_block_action(&self, blocks: &BlockSystem) -> Result<PermGroup<Permutation>> {
        let idx = blocks.cell_index(self.degree);
        let m = blocks.cells.len();
        let mut images_all = Vec::new();
        for e in &self.elements {
            let images: Vec<usize> = blocks.cells.iter().map(|c| idx[e.apply(c[0])]).collect();
            let p = Permutation::from_images(images).map_err(|_| {
                KhmError::DimensionMismatch("partition is not a block system".into())
            })?;
            images_all.push(p);
        }
        Ok(PermGroup::from_closed_elements(Permutation::identity(m), images_all))
    }

    /// Setwise stabilizer of `cell`, acting on the cell.
    pub fn point_stabilizer_action(&self, cell: &[usize]) -> Result<PermGroup<Permutation>> {
        let mut inside = vec![false; self.degree];
        for &p in cell {
            inside[p] = true;
        }
        let stab = self.filter_subgroup(|e| cell.iter().all(|&p| inside[e.apply(p)]));
        stab.action_on(cell)
    }
}

/// π∘π₁: the group of permutation parts of the R components.
pub fn project_unsigned(g: &PermGroup<AutPair>) -> PermGroup<Permutation> {
    let n = g.elements().first().map_or(0, AutPair::degree);
    let perms: Vec<Permutation> = g.elements().iter().map(|e| e.r.permutation_part()).collect();
    PermGroup::from_closed_elements(Permutation::identity(n), perms)
}

/// Closure of automorphism pairs of degree `n`.
pub fn closure_pairs(n: usize, generators: &[AutPair], cap: usize) -> Result<PermGroup<AutPair>> {
    if generators.iter().any(|g| g.degree() != n) {
        return Err(KhmError::DimensionMismatch("generator degree".into()));
    }
    PermGroup::closure(AutPair::identity(n), generators, cap)
}
