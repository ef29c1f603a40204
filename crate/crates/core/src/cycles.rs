//! Consistent cycles: directed cycles that some group element rotates by one
//! step. Orbits are found either from an explicit coset of a listed group or,
//! for groups too large to list, by a prefix search under an arc stabilizer.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::par::Parallelism;
use crate::perm::{PermGroup, Permutation, Symmetry};
use crate::search::verify_arc_transitivity;

/// Default bound on `|{h : u·h = v}|` for the coset route.
pub const DEFAULT_COSET_CAP: usize = 1 << 21;

/// Orbits larger than this keep only their size, not their member list.
pub const MEMBER_LIMIT: u64 = 1 << 15;

fn rotate(seq: &[usize], k: usize) -> Vec<usize> {
    let k = k % seq.len();
    seq[k..].iter().chain(&seq[..k]).copied().collect()
}

fn min_rotation(seq: &[usize]) -> Vec<usize> {
    (0..seq.len()).map(|k| rotate(seq, k)).min().unwrap_or_default()
}

fn reversed(seq: &[usize]) -> Vec<usize> {
    let mut r = Vec::with_capacity(seq.len());
    r.push(seq[0]);
    r.extend(seq[1..].iter().rev());
    r
}

fn check_simple(seq: &[usize]) -> Result<()> {
    if seq.len() < 3 {
        return Err(Error::InvalidParams(format!("cycle of length {} < 3", seq.len())));
    }
    let distinct: HashSet<_> = seq.iter().collect();
    if distinct.len() != seq.len() {
        return Err(Error::InvalidParams(format!("repeated vertex in {seq:?}")));
    }
    Ok(())
}

/// A directed cycle, stored from its lexicographically smallest rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DirectedCycle(Vec<usize>);

impl DirectedCycle {
    pub fn new(vertices: Vec<usize>) -> Result<DirectedCycle> {
        check_simple(&vertices)?;
        Ok(DirectedCycle(min_rotation(&vertices)))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reverse(&self) -> DirectedCycle {
        DirectedCycle(min_rotation(&reversed(&self.0)))
    }

    pub fn image(&self, p: &Permutation) -> DirectedCycle {
        DirectedCycle(min_rotation(&p.map_seq(&self.0)))
    }

    pub fn undirected(&self) -> Cycle {
        Cycle::from_canonical_parts(&self.0)
    }

    /// Consecutive (cyclically) vertices are adjacent in `g`.
    pub fn is_cycle_in(&self, g: &LabeledGraph) -> bool {
        arcs_of(&self.0).all(|(u, v)| g.adjacent(u, v))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        arcs_of(&self.0)
    }
}

fn arcs_of(seq: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..seq.len()).map(move |i| (seq[i], seq[(i + 1) % seq.len()]))
}

/// An undirected cycle, stored as the smallest rotation of either direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn new(vertices: Vec<usize>) -> Result<Cycle> {
        check_simple(&vertices)?;
        Ok(Cycle::from_canonical_parts(&vertices))
    }

    fn from_canonical_parts(seq: &[usize]) -> Cycle {
        let fwd = min_rotation(seq);
        let bwd = min_rotation(&reversed(seq));
        Cycle(fwd.min(bwd))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, p: &Permutation) -> Cycle {
        Cycle::from_canonical_parts(&p.map_seq(&self.0))
    }

    /// Edges as ordered pairs `(min, max)`, in walk order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        arcs_of(&self.0).map(|(u, v)| (u.min(v), u.max(v)))
    }

    pub fn directed(&self) -> DirectedCycle {
        DirectedCycle(self.0.clone())
    }

    pub fn is_cycle_in(&self, g: &LabeledGraph) -> bool {
        arcs_of(&self.0).all(|(u, v)| g.adjacent(u, v))
    }
}

/// True when `h` sends every vertex of `seq` to the next one.
pub fn is_shunt(seq: &[usize], h: &Permutation) -> bool {
    arcs_of(seq).all(|(u, v)| h.apply(u) == v)
}

/// Some element rotating `seq` forward by one step.
pub fn shunt_of(group: &dyn Symmetry, seq: &[usize]) -> Option<Permutation> {
    group.map_tuple(seq, &rotate(seq, 1))
}

/// Some element carrying the directed cycle `a` onto `b`.
pub fn directed_map(group: &dyn Symmetry, a: &[usize], b: &[usize]) -> Option<Permutation> {
    if a.len() != b.len() {
        return None;
    }
    (0..b.len()).find_map(|k| group.map_tuple(a, &rotate(b, k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chirality {
    Symmetric,
    Chiral,
}

/// One group orbit of consistent directed cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleOrbit {
    pub representative: DirectedCycle,
    pub shunt: Permutation,
    /// Number of directed cycles in the orbit.
    pub size: u64,
    /// All members, when there are at most [`MEMBER_LIMIT`].
    pub members: Option<Vec<DirectedCycle>>,
    pub chirality: Chirality,
    pub reversal_witness: Option<Permutation>,
}

impl CycleOrbit {
    pub fn length(&self) -> usize {
        self.representative.len()
    }

    /// Number of undirected cycles underlying the orbit.
    pub fn undirected_size(&self) -> u64 {
        match self.chirality {
            Chirality::Symmetric => self.size / 2,
            Chirality::Chiral => self.size,
        }
    }
}

/// Orbit of a directed cycle under the group generated by `gens`, or `None`
/// once it exceeds `limit` members.
pub fn directed_orbit(gens: &[Permutation], c: &DirectedCycle, limit: u64) -> Option<Vec<DirectedCycle>> {
    let mut seen: HashSet<DirectedCycle> = HashSet::from([c.clone()]);
    let mut queue = VecDeque::from([c.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.image(g);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > limit {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Some(out)
}

/// Orbit of an undirected cycle under the group generated by `gens`.
pub fn undirected_orbit(gens: &[Permutation], c: &Cycle) -> Vec<Cycle> {
    let mut seen: HashSet<Cycle> = HashSet::from([c.clone()]);
    let mut queue = VecDeque::from([c.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.image(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// Symmetric with a verified reversing element, or chiral.
pub fn classify_chirality(group: &dyn Symmetry, orbit: &CycleOrbit) -> (Chirality, Option<Permutation>) {
    let rep = orbit.representative.vertices();
    let rev = orbit.representative.reverse();
    if let Some(members) = &orbit.members {
        if members.binary_search(&rev).is_err() {
            return (Chirality::Chiral, None);
        }
    }
    match directed_map(group, rep, rev.vertices()) {
        Some(w) => {
            debug_assert_eq!(orbit.representative.image(&w), rev);
            (Chirality::Symmetric, Some(w))
        }
        None => (Chirality::Chiral, None),
    }
}

fn make_orbit(group: &dyn Symmetry, c: DirectedCycle, shunt: Permutation) -> Result<CycleOrbit> {
    if !is_shunt(c.vertices(), &shunt) {
        return Err(Error::InconsistentCycle(format!("{:?}: shunt check failed", c.vertices())));
    }
    let kernel = group.pointwise_stabilizer_order(c.vertices());
    let size = group.order() / (c.len() as u64 * kernel);
    let members = if size <= MEMBER_LIMIT { directed_orbit(group.generators(), &c, MEMBER_LIMIT) } else { None };
    if let Some(m) = &members {
        if m.len() as u64 != size {
            return Err(Error::Consistency(format!(
                "orbit of {:?} has {} members, expected {size}",
                c.vertices(),
                m.len()
            )));
        }
    }
    let mut orbit =
        CycleOrbit { representative: c, shunt, size, members, chirality: Chirality::Chiral, reversal_witness: None };
    let (chirality, witness) = classify_chirality(group, &orbit);
    orbit.chirality = chirality;
    orbit.reversal_witness = witness;
    Ok(orbit)
}

/// Every consistent directed cycle through the arc `(u, v)`, found by
/// tracing `u, u·h, u·h², …` for each `h` with `u·h = v`.
pub fn consistent_cycles_through_arc(
    group: &PermGroup,
    graph: &LabeledGraph,
    arc: (usize, usize),
    cap: usize,
) -> Result<Vec<(DirectedCycle, Permutation)>> {
    let (u, v) = arc;
    if !graph.adjacent(u, v) {
        return Err(Error::InvalidParams(format!("({u},{v}) is not an arc")));
    }
    let coset: Vec<&Permutation> = group.elements().iter().filter(|h| h.apply(u) == v).collect();
    if coset.len() > cap {
        return Err(Error::EnumerationTooLarge { size: coset.len(), cap });
    }
    let mut found: BTreeMap<DirectedCycle, Permutation> = BTreeMap::new();
    for h in coset {
        let mut walk = vec![u];
        let mut x = h.apply(u);
        while x != u {
            walk.push(x);
            x = h.apply(x);
        }
        if walk.len() >= 3 {
            let c = DirectedCycle::new(walk)?;
            found.entry(c).or_insert_with(|| h.clone());
        }
    }
    Ok(found.into_iter().collect())
}

/// Partitions consistent directed cycles into group orbits.
pub fn orbit_partition(group: &dyn Symmetry, cycles: &[DirectedCycle]) -> Result<Vec<CycleOrbit>> {
    let mut orbits: Vec<CycleOrbit> = Vec::new();
    for c in cycles {
        let shunt = shunt_of(group, c.vertices())
            .ok_or_else(|| Error::InconsistentCycle(format!("{:?} has no shunt", c.vertices())))?;
        let known = orbits.iter().any(|o| match &o.members {
            Some(m) => m.binary_search(c).is_ok(),
            None => directed_map(group, o.representative.vertices(), c.vertices()).is_some(),
        });
        if !known {
            orbits.push(make_orbit(group, c.clone(), shunt)?);
        }
    }
    orbits.sort_by(|a, b| (a.length(), &a.representative).cmp(&(b.length(), &b.representative)));
    Ok(orbits)
}

/// One consistent cycle per group orbit, each rooted at the arc `(u, v)`,
/// with a shunt.
///
/// Paths `(u, v, …)` are grown one vertex at a time and kept only while some
/// element shifts the path one step along itself; paths equivalent under the
/// pointwise stabilizer of their prefix are explored once.
pub fn rooted_consistent_cycles(
    group: &dyn Symmetry,
    graph: &LabeledGraph,
    arc: (usize, usize),
    par: Parallelism,
) -> Vec<(Vec<usize>, Permutation)> {
    let (u, v) = arc;
    let mut frontier = vec![vec![u, v]];
    let mut closed = Vec::new();
    while !frontier.is_empty() {
        let step = par.map(&frontier, |path| {
            let last = *path.last().expect("nonempty");
            let mut ext: Vec<Vec<usize>> = Vec::new();
            let mut done = Vec::new();
            for &w in graph.neighbors(last) {
                if w == path[0] && path.len() >= 3 {
                    if let Some(h) = shunt_of(group, path) {
                        done.push((path.clone(), h));
                    }
                    continue;
                }
                if path.contains(&w) {
                    continue;
                }
                let mut q = path.clone();
                q.push(w);
                if group.map_tuple(&q[..q.len() - 1], &q[1..]).is_none() {
                    continue;
                }
                if ext.iter().any(|r| group.map_tuple(r, &q).is_some()) {
                    continue;
                }
                ext.push(q);
            }
            (ext, done)
        });
        frontier = Vec::new();
        for (ext, done) in step {
            frontier.extend(ext);
            closed.extend(done);
        }
    }
    closed
}

/// Consistent-cycle orbits of an arc-transitive group, with the counts `s`
/// (symmetric) and `c` (chiral pairs).
#[derive(Clone, Debug)]
pub struct CycleCensus {
    pub orbits: Vec<CycleOrbit>,
    pub symmetric: usize,
    pub chiral: usize,
    pub valency: usize,
}

impl CycleCensus {
    pub fn directed_orbits(&self) -> usize {
        self.orbits.len()
    }

    pub fn undirected_orbits(&self) -> usize {
        self.symmetric + self.chiral
    }

    /// `s + 2c` equals the valency minus one.
    pub fn identity_holds(&self) -> bool {
        self.symmetric + 2 * self.chiral + 1 == self.valency
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.orbits.iter().map(CycleOrbit::length).collect()
    }

    pub fn all_symmetric(&self) -> bool {
        self.chiral == 0
    }

    pub fn to_json(&self, graph: &LabeledGraph) -> CensusJson {
        let name = |v: usize| graph.name(v).to_string();
        CensusJson {
            schema: crate::SCHEMA.to_string(),
            symmetric: self.symmetric,
            chiral: self.chiral,
            directed_orbits: self.directed_orbits(),
            undirected_orbits: self.undirected_orbits(),
            identity_holds: self.identity_holds(),
            orbits: self
                .orbits
                .iter()
                .map(|o| OrbitJson {
                    length: o.length(),
                    size: o.size,
                    undirected_size: o.undirected_size(),
                    chirality: o.chirality,
                    representative: o.representative.vertices().iter().map(|&v| name(v)).collect(),
                    shunt: o.shunt.to_cycle_string_with(name),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub length: usize,
    pub size: u64,
    pub undirected_size: u64,
    pub chirality: Chirality,
    pub representative: Vec<String>,
    pub shunt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub schema: String,
    pub symmetric: usize,
    pub chiral: usize,
    pub directed_orbits: usize,
    pub undirected_orbits: usize,
    pub identity_holds: bool,
    pub orbits: Vec<OrbitJson>,
}

/// All orbits of consistent cycles of an arc-transitive group.
pub fn cycle_census(group: &dyn Symmetry, graph: &LabeledGraph, par: Parallelism) -> Result<CycleCensus> {
    if !verify_arc_transitivity(graph, group) {
        return Err(Error::InvalidParams("group is not arc-transitive".into()));
    }
    let e = graph.edges()[0];
    let rooted = rooted_consistent_cycles(group, graph, (e.u, e.v), par);
    let mut orbits = par
        .map(&rooted, |(seq, h)| DirectedCycle::new(seq.clone()).and_then(|c| make_orbit(group, c, h.clone())))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    orbits.sort_by(|a, b| (a.length(), &a.representative).cmp(&(b.length(), &b.representative)));
    let symmetric = orbits.iter().filter(|o| o.chirality == Chirality::Symmetric).count();
    let chiral_directed = orbits.len() - symmetric;
    if chiral_directed % 2 != 0 {
        return Err(Error::Consistency("odd number of chiral directed orbits".into()));
    }
    Ok(CycleCensus { orbits, symmetric, chiral: chiral_directed / 2, valency: graph.degree(0) })
}

/// `(s, c, s + 2c = k − 1)` for an arc-transitive group on a `k`-regular graph.
pub fn verify_count_identity(group: &dyn Symmetry, graph: &LabeledGraph) -> Result<(usize, usize, bool)> {
    let census = cycle_census(group, graph, Parallelism::default())?;
    Ok((census.symmetric, census.chiral, census.identity_holds()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_rose_window, family_generators, generator, relabel_family, FamilyTag, RoseWindowParams};
    use crate::search::automorphism_group;

    fn rw(n: usize, a: i64, r: i64) -> LabeledGraph {
        build_rose_window(RoseWindowParams::new(n, a, r).unwrap()).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let c = DirectedCycle::new(vec![3, 1, 2]).unwrap();
        assert_eq!(c.vertices(), &[1, 2, 3]);
        assert_eq!(c.reverse().vertices(), &[1, 3, 2]);
        assert_eq!(c.undirected(), c.reverse().undirected());
        assert!(DirectedCycle::new(vec![1, 2]).is_err());
        assert!(DirectedCycle::new(vec![1, 2, 1]).is_err());
        assert_eq!(Cycle::new(vec![4, 0, 2, 9]).unwrap().vertices(), &[0, 2, 9, 4]);
    }

    #[test]
    fn family_i_generator_cycles() {
        for n in [5usize, 6, 7] {
            let g = rw(n, 2, 1);
            let aut = automorphism_group(&g).unwrap().to_perm_group(1 << 20).unwrap();
            let rl = relabel_family(&g, FamilyTag::FamilyI).unwrap();
            let arc = (rl.u(0), rl.u(1));
            let found = consistent_cycles_through_arc(&aut, &g, arc, DEFAULT_COSET_CAP).unwrap();
            let mut lengths: Vec<usize> = found.iter().map(|(c, _)| c.len()).collect();
            lengths.sort();
            lengths.dedup();
            assert_eq!(lengths, vec![4, n, 2 * n]);
            let cycles: Vec<DirectedCycle> = found.iter().map(|(c, _)| c.clone()).collect();
            let orbits = orbit_partition(&aut, &cycles).unwrap();
            assert_eq!(orbits.len(), 3);
            assert!(orbits.iter().all(|o| o.chirality == Chirality::Symmetric));

            // (u0,u1,v0,v1) is rotated by sigma1 mu rho
            let gens = family_generators(&g, FamilyTag::FamilyI).unwrap();
            let rho = generator(&gens, "rho").unwrap();
            let mu = generator(&gens, "mu").unwrap();
            let s1 = crate::graph::family_i_sigma(&rl, 1);
            let h = s1.then(mu).then(rho);
            assert!(is_shunt(&[rl.u(0), rl.u(1), rl.v(0), rl.v(1)], &h));
        }
    }

    #[test]
    fn census_routes_agree() {
        for (n, a, r) in [(6usize, 2i64, 1i64), (6, 5, 4), (12, 5, 10), (10, 4, 1)] {
            let g = rw(n, a, r);
            let aut = automorphism_group(&g).unwrap();
            let listed = aut.to_perm_group(1 << 20).unwrap();
            let by_search = cycle_census(&aut, &g, Parallelism::Sequential).unwrap();
            let by_list = cycle_census(&listed, &g, Parallelism::Parallel).unwrap();
            assert_eq!(by_search.lengths(), by_list.lengths());
            assert_eq!(by_search.symmetric, by_list.symmetric);
            assert!(by_search.identity_holds(), "{n} {a} {r}");
            let e = g.edges()[0];
            let coset = consistent_cycles_through_arc(&listed, &g, (e.u, e.v), DEFAULT_COSET_CAP).unwrap();
            let cycles: Vec<DirectedCycle> = coset.iter().map(|(c, _)| c.clone()).collect();
            assert_eq!(orbit_partition(&listed, &cycles).unwrap().len(), 3);
            for (c, h) in &coset {
                assert!(is_shunt(c.vertices(), h));
            }
        }
    }

    #[test]
    fn chirality_counts() {
        let g = rw(10, 4, 1);
        let aut = automorphism_group(&g).unwrap();
        assert_eq!(verify_count_identity(&aut, &g).unwrap(), (1, 1, true));
        let g = rw(7, 2, 1);
        let aut = automorphism_group(&g).unwrap();
        assert_eq!(verify_count_identity(&aut, &g).unwrap(), (3, 0, true));
    }

    #[test]
    fn one_regular_arc_coverage() {
        let g = rw(12, 5, 10);
        let aut = automorphism_group(&g).unwrap();
        let census = cycle_census(&aut, &g, Parallelism::default()).unwrap();
        for o in &census.orbits {
            let members = o.members.as_ref().unwrap();
            let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for c in members {
                for a in c.arcs() {
                    *count.entry(a).or_default() += 1;
                }
            }
            assert_eq!(count.len(), 2 * g.edge_count());
            assert!(count.values().all(|&k| k == 1));
        }
    }

    #[test]
    fn orbit_sizes_sum_to_sweep() {
        let g = rw(6, 5, 4);
        let aut = automorphism_group(&g).unwrap().to_perm_group(1 << 20).unwrap();
        let census = cycle_census(&aut, &g, Parallelism::default()).unwrap();
        let mut all: HashSet<DirectedCycle> = HashSet::new();
        for (u, v) in g.arcs() {
            for (c, _) in consistent_cycles_through_arc(&aut, &g, (u, v), DEFAULT_COSET_CAP).unwrap() {
                all.insert(c);
            }
        }
        let total: u64 = census.orbits.iter().map(|o| o.size).sum();
        assert_eq!(total, all.len() as u64);
        let mut lengths = census.lengths();
        lengths.sort();
        assert_eq!(lengths, vec![3, 4, 6]);
    }

    #[test]
    fn inconsistent_cycle_rejected() {
        let g = rw(7, 3, 1);
        let aut = automorphism_group(&g).unwrap();
        // a cycle mixing rim and spokes in a non-arc-transitive graph
        let c = DirectedCycle::new(vec![0, 1, 8, 7]).unwrap();
        assert!(c.is_cycle_in(&g));
        assert!(matches!(orbit_partition(&aut, &[c]), Err(Error::InconsistentCycle(_))));
    }

    #[test]
    fn coset_cap() {
        let g = rw(6, 2, 1);
        let aut = automorphism_group(&g).unwrap().to_perm_group(1 << 20).unwrap();
        let e = g.edges()[0];
        let err = consistent_cycles_through_arc(&aut, &g, (e.u, e.v), 4).unwrap_err();
        assert!(matches!(err, Error::EnumerationTooLarge { .. }));
    }

    #[test]
    fn census_json() {
        let g = rw(12, 5, 10);
        let aut = automorphism_group(&g).unwrap();
        let census = cycle_census(&aut, &g, Parallelism::default()).unwrap();
        let j = serde_json::to_value(census.to_json(&g)).unwrap();
        assert_eq!(j["schema"], "rwmaps/1");
        assert_eq!(j["orbits"].as_array().unwrap().len(), 3);
    }
}
