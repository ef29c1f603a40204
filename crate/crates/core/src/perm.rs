//! Permutations of `0..N` and explicitly enumerated permutation groups.
//!
//! Permutations act on the right: `x.apply(p)` is the image of `x` under `p`
//! and `p.then(&q)` applies `p` first, then `q`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of elements materialized by [`PermGroup::closure`].
pub const DEFAULT_ELEMENT_CAP: usize = 1 << 24;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        Self::try_from(images.into_iter().map(|x| x as u32).collect::<Vec<_>>())
    }

    /// Builds a permutation from disjoint cycles; unmentioned points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if touched[x] {
                    return Err(Error::NotAPermutation(format!("cycles overlap at {x}")));
                }
                touched[x] = true;
                images[x] = c[(k + 1) % c.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Same as [`compose`](Self::compose) but panics on a degree mismatch.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// `by⁻¹ · self · by`, i.e. `self^by`.
    pub fn conjugate(&self, by: &Permutation) -> Permutation {
        by.inverse().then(self).then(by)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.then(self).is_identity()
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Nontrivial cycles, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    /// Cycle notation such as `(0,1,2)(3,4)`; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        self.to_cycle_string_with(|x| x.to_string())
    }

    pub fn to_cycle_string_with(&self, name: impl Fn(usize) -> String) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.iter().map(|&x| name(x)).collect();
                format!("({})", parts.join(","))
            })
            .collect()
    }

    /// Image of a point sequence.
    pub fn map_seq(&self, seq: &[usize]) -> Vec<usize> {
        seq.iter().map(|&x| self.apply(x)).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
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

/// True when `order` divides `n!` (Legendre's formula per prime factor).
pub fn divides_factorial(order: u64, n: u64) -> bool {
    let mut rest = order;
    let mut p = 2u64;
    while rest > 1 {
        if p * p > rest {
            p = rest;
        }
        if rest.is_multiple_of(p) {
            let mut need = 0u64;
            while rest.is_multiple_of(p) {
                rest /= p;
                need += 1;
            }
            let mut have = 0u64;
            let mut q = p;
            while q <= n {
                have += n / q;
                match q.checked_mul(p) {
                    Some(v) => q = v,
                    None => break,
                }
            }
            if have < need {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Anything that can answer "is there an element mapping this tuple to that one".
///
/// Implemented by materialized [`PermGroup`]s and by the search-backed full
/// automorphism group of a graph.
pub trait Symmetry: Sync {
    fn degree(&self) -> usize;
    fn order(&self) -> u64;
    fn generators(&self) -> &[Permutation];
    /// Some element `g` with `from[i]·g = to[i]` for all `i`.
    fn map_tuple(&self, from: &[usize], to: &[usize]) -> Option<Permutation>;
    fn contains(&self, p: &Permutation) -> bool;
    /// Order of the subgroup fixing each of `points`.
    fn pointwise_stabilizer_order(&self, points: &[usize]) -> u64;
}

/// A finite permutation group with all of its elements enumerated and sorted.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// Breadth-first closure of `generators` with the default element cap.
    pub fn closure(generators: &[Permutation]) -> Result<PermGroup> {
        Self::closure_with_cap(generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn closure_with_cap(generators: &[Permutation], cap: usize) -> Result<PermGroup> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(PermGroup { degree, generators: generators.to_vec(), elements })
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> PermGroup {
        let id = Permutation::identity(degree);
        PermGroup { degree, generators: vec![id.clone()], elements: vec![id] }
    }

    /// Wraps an element set already known to be a group, choosing a small
    /// generating set greedily. Fails if the set is not closed.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Result<PermGroup> {
        elements.sort();
        elements.dedup();
        if elements.is_empty() {
            return Ok(Self::trivial(degree));
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut sub = PermGroup::trivial(degree);
        for e in &elements {
            if !sub.contains(e) {
                gens.push(e.clone());
                sub = PermGroup::closure_with_cap(&gens, elements.len() + 1)
                    .map_err(|_| Error::Consistency("element set is not closed".into()))?;
            }
        }
        if sub.elements != elements {
            return Err(Error::Consistency("element set is not closed".into()));
        }
        if gens.is_empty() {
            gens.push(Permutation::identity(degree));
        }
        sub.generators = gens;
        Ok(sub)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree {
            Err(Error::PointOutOfRange { point, degree: self.degree })
        } else {
            Ok(())
        }
    }

    /// Sorted orbit of `point`.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        self.check_point(point)?;
        Ok(orbit_under(&self.generators, point))
    }

    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.check_point(point)?;
        let elems = self.elements.iter().filter(|g| g.apply(point) == point).cloned().collect();
        PermGroup::from_elements(self.degree, elems)
    }

    /// Every `g` with `from.0·g = to.0` and `from.1·g = to.1`, sorted.
    pub fn arc_mappers(&self, from: (usize, usize), to: (usize, usize)) -> Result<Vec<Permutation>> {
        for p in [from.0, from.1, to.0, to.1] {
            self.check_point(p)?;
        }
        Ok(self.elements.iter().filter(|g| g.apply(from.0) == to.0 && g.apply(from.1) == to.1).cloned().collect())
    }

    /// Elements fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        let elems = self.elements.iter().filter(|g| points.iter().all(|&p| g.apply(p) == p)).cloned().collect();
        PermGroup::from_elements(self.degree, elems)
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree && self.elements.iter().all(|e| g.contains(e))
    }

    /// Checks closure under products of generators and inverses.
    pub fn verify_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|e| self.contains(&e.inverse()) && self.generators.iter().all(|g| self.contains(&e.then(g))))
    }

    /// True when all non-identity elements are involutions and the order is 4.
    pub fn is_klein_four(&self) -> bool {
        self.order() == 4 && self.elements.iter().all(|e| e.is_identity() || e.is_involution())
    }
}

/// `|g| / |h|` for a subgroup `h ≤ g`.
pub fn index(g: &PermGroup, h: &PermGroup) -> Result<u64> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    Ok(g.order() / h.order())
}

pub fn is_subgroup(h: &PermGroup, g: &PermGroup) -> bool {
    h.is_subgroup_of(g)
}

pub fn conjugate(t: &Permutation, by: &Permutation) -> Permutation {
    t.conjugate(by)
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

/// Sorted orbit of a point under the group generated by `gens`.
pub fn orbit_under(gens: &[Permutation], point: usize) -> Vec<usize> {
    let n = gens.first().map_or(point + 1, |g| g.degree());
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut stack = vec![point];
    let mut out = vec![point];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                stack.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

impl Symmetry for PermGroup {
    fn degree(&self) -> usize {
        self.degree
    }

    fn order(&self) -> u64 {
        self.order()
    }

    fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn map_tuple(&self, from: &[usize], to: &[usize]) -> Option<Permutation> {
        if from.len() != to.len() {
            return None;
        }
        self.elements.iter().find(|g| from.iter().zip(to).all(|(&a, &b)| g.apply(a) == b)).cloned()
    }

    fn contains(&self, p: &Permutation) -> bool {
        self.contains(p)
    }

    fn pointwise_stabilizer_order(&self, points: &[usize]) -> u64 {
        self.elements.iter().filter(|g| points.iter().all(|&p| g.apply(p) == p)).count() as u64
    }
}
