//! Family-specific constructions of 2_{0,1} maps.
//!
//! Families (i) and (ii) go through the block structure: a map is assembled
//! from face orbits `seed·T` for the admissible subgroups `T` of the block
//! kernel, completed with the short faces between consecutive blocks, and
//! closed under the third consistent-cycle orbit of each map found. Family
//! (iii) and family (iv) with `m ≢ 2 (mod 4)` have a 1-regular `Aut(Γ)` and
//! use its three cycle orbits directly; family (iv) with `m ≡ 2 (mod 4)`
//! works inside the two index-2 subgroups `H₁` and `H₂`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cycles::{cycle_census, Cycle, DirectedCycle};
use crate::error::{Error, Result};
use crate::graph::{
    build_rose_window, family_i_sigma, family_ii_beta, family_ii_sigma, family_iv_sigma, family_iv_tau, mu,
    recognize_all, relabel_family, rho, x, y, FamilyTag, LabeledGraph, Relabeling, RoseWindowParams,
};
use crate::maps::{face_orbits, MapOnGraph};
use crate::oracle::{
    classify_faces, decompositions_from_census, dedupe_classified, exact_covers, maps_from_decompositions,
    simple_cycles_of_length, ClassifiedMap, DEFAULT_DECOMPOSITION_CAP, DEFAULT_GROUP_CAP,
};
use crate::par::Parallelism;
use crate::perm::{index, PermGroup, Permutation, Symmetry};
use crate::search::automorphism_group;

/// Action of a block-fixing automorphism, one Klein-four code per block.
///
/// On a block `(u, v, w, z)` code `c` sends the `j`-th vertex to the
/// `(j xor c)`-th, so 1 is `(u v)(w z)`, 2 is `(u w)(v z)` and 3 is
/// `(u z)(v w)`. Family (i) blocks are `(u, v)` and use codes 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TTuple(pub Vec<u8>);

impl TTuple {
    fn periodic(pattern: &[u8], n: usize) -> TTuple {
        TTuple(pattern.iter().copied().cycle().take(n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// No two cyclically adjacent zero entries, unless all entries are zero.
    pub fn has_no_adjacent_zeros(&self) -> bool {
        let n = self.0.len();
        self.is_zero() || (0..n).all(|i| self.0[i] != 0 || self.0[(i + 1) % n] != 0)
    }
}

impl fmt::Display for TTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TShape {
    /// Family (i), `3 | n`: periods `(0,1,1)`, `(1,0,1)`, `(1,1,0)`.
    T1,
    /// Family (i), `2 | n`: periods `(0,1)`, `(1,0)` and all ones.
    T2,
    /// Family (ii), `3 | n`: periods `(0,1,2)` and its relatives, plus all threes.
    T3,
    /// Family (ii), `4 | n`: periods `(0,1,3,2)`, `(2,1)` and relatives, plus all threes.
    T4,
}

impl TShape {
    fn period(self) -> usize {
        match self {
            TShape::T1 | TShape::T3 => 3,
            TShape::T2 => 2,
            TShape::T4 => 4,
        }
    }

    fn patterns(self) -> &'static [&'static [u8]] {
        match self {
            TShape::T1 => &[&[0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]],
            TShape::T2 => &[&[0], &[0, 1], &[1, 0], &[1]],
            TShape::T3 => &[&[0], &[0, 1, 2], &[2, 0, 1], &[1, 2, 0], &[2, 1, 3], &[3, 2, 1], &[1, 3, 2], &[3]],
            TShape::T4 => &[&[0], &[0, 1, 3, 2], &[2, 0, 1, 3], &[3, 2, 0, 1], &[1, 3, 2, 0], &[2, 1], &[1, 2], &[3]],
        }
    }

    /// The tuples of this shape at length `n`, when `n` admits it.
    pub fn tuples(self, n: usize) -> Option<BTreeSet<TTuple>> {
        n.is_multiple_of(self.period()).then(|| self.patterns().iter().map(|p| TTuple::periodic(p, n)).collect())
    }
}

/// An admissible intersection of `Aut(M)` with the block kernel.
#[derive(Clone, Debug)]
pub struct TSubgroup {
    pub shape: TShape,
    pub tuples: BTreeSet<TTuple>,
    pub group: PermGroup,
}

/// The permutation a tuple encodes.
pub fn decode_tuple(rl: &Relabeling, t: &TTuple) -> Result<Permutation> {
    if t.len() != rl.len {
        return Err(Error::InvalidParams(format!("tuple {t} has length {}, expected {}", t.len(), rl.len)));
    }
    let width = if rl.w.is_empty() { 2 } else { 4 };
    let mut img: Vec<usize> = (0..width * rl.len).collect();
    for (i, &code) in t.0.iter().enumerate() {
        if code as usize >= width {
            return Err(Error::InvalidParams(format!("code {code} in {t}")));
        }
        let block = rl.block(i);
        for (j, &p) in block.iter().enumerate() {
            img[p] = block[j ^ code as usize];
        }
    }
    Permutation::from_images(img)
}

/// The tuple of a permutation that fixes every block and acts on each by a
/// Klein-four code; `None` otherwise.
pub fn encode_tuple(rl: &Relabeling, p: &Permutation) -> Option<TTuple> {
    let mut codes = Vec::with_capacity(rl.len);
    for i in 0..rl.len {
        let block = rl.block(i);
        let code = block.iter().position(|&q| q == p.apply(block[0]))?;
        if block.iter().enumerate().any(|(j, &q)| p.apply(q) != block[j ^ code]) {
            return None;
        }
        codes.push(code as u8);
    }
    Some(TTuple(codes))
}

fn t_subgroup(g: &LabeledGraph, rl: &Relabeling, shape: TShape, order: u64) -> Result<Option<TSubgroup>> {
    let Some(tuples) = shape.tuples(rl.len) else {
        return Ok(None);
    };
    let perms = tuples.iter().map(|t| decode_tuple(rl, t)).collect::<Result<Vec<_>>>()?;
    if let Some(bad) = perms.iter().position(|p| !g.is_automorphism(p)) {
        let t = tuples.iter().nth(bad).expect("index in range");
        return Err(Error::Consistency(format!("{shape:?} tuple {t} is not an automorphism")));
    }
    let group = PermGroup::closure(&perms)?;
    if group.order() != order || group.order() != tuples.len() as u64 {
        return Err(Error::Consistency(format!("{shape:?} generates a group of order {}", group.order())));
    }
    Ok(Some(TSubgroup { shape, tuples, group }))
}

fn family_i_graph(n: usize) -> Result<(LabeledGraph, Relabeling)> {
    let g = build_rose_window(RoseWindowParams::new(n, 2, 1)?)?;
    let rl = relabel_family(&g, FamilyTag::FamilyI)?;
    Ok((g, rl))
}

fn family_ii_graph(n: usize) -> Result<(LabeledGraph, Relabeling)> {
    let tag = FamilyTag::FamilyII { m: n };
    let p = tag
        .canonical_params(2 * n)
        .ok_or_else(|| Error::InvalidParams(format!("family (ii) needs n >= 3, got {n}")))?;
    let g = build_rose_window(p)?;
    let rl = relabel_family(&g, tag)?;
    Ok((g, rl))
}

/// Candidate `T` subgroups on `R_n(2,1)`, each a verified Klein four-group.
pub fn t_subgroups_family_i(n: usize) -> Result<Vec<TSubgroup>> {
    let (g, rl) = family_i_graph(n)?;
    let mut out = Vec::new();
    for shape in [TShape::T1, TShape::T2] {
        if let Some(t) = t_subgroup(&g, &rl, shape, 4)? {
            if !t.group.is_klein_four() {
                return Err(Error::Consistency(format!("{shape:?} is not a Klein four-group")));
            }
            out.push(t);
        }
    }
    Ok(out)
}

/// Candidate `T` subgroups of order 8 on the family (ii) graph with parameter `n`.
pub fn t_subgroups_family_ii(n: usize) -> Result<Vec<TSubgroup>> {
    let (g, rl) = family_ii_graph(n)?;
    let mut out = Vec::new();
    for shape in [TShape::T3, TShape::T4] {
        out.extend(t_subgroup(&g, &rl, shape, 8)?);
    }
    Ok(out)
}

/// `T` is normalized by each of `by`.
pub fn is_normalized_by(t: &TSubgroup, by: &[Permutation]) -> bool {
    by.iter().all(|g| t.group.elements().iter().all(|p| t.group.contains(&p.conjugate(g))))
}

/// `{seed·t : t ∈ T}` as undirected cycles.
pub fn face_orbit_from_seed(seed: &DirectedCycle, t: &TSubgroup) -> Vec<Cycle> {
    let set: BTreeSet<Cycle> = t.group.elements().iter().map(|p| seed.undirected().image(p)).collect();
    set.into_iter().collect()
}

/// Every edge lies on exactly one of the cycles.
pub fn is_decomposition(g: &LabeledGraph, cycles: &[Cycle]) -> bool {
    let mut count = vec![0u8; g.edge_count()];
    for c in cycles {
        if !c.is_cycle_in(g) {
            return false;
        }
        for (u, v) in c.edges() {
            let e = g.edge_id(u, v).expect("edge of a cycle in g");
            count[e] += 1;
        }
    }
    count.iter().all(|&k| k == 1)
}

/// `N ∩ Aut(M)` read off the listed `Aut(M)`, matched against the known shapes.
pub fn compute_t(aut: &PermGroup, rl: &Relabeling) -> Result<TSubgroup> {
    let mut tuples = BTreeSet::new();
    let mut perms = Vec::new();
    for p in aut.elements() {
        if let Some(t) = encode_tuple(rl, p) {
            tuples.insert(t);
            perms.push(p.clone());
        }
    }
    let shapes: &[TShape] = if rl.w.is_empty() { &[TShape::T1, TShape::T2] } else { &[TShape::T3, TShape::T4] };
    let shape = shapes.iter().copied().find(|s| s.tuples(rl.len).as_ref() == Some(&tuples)).ok_or_else(|| {
        let listed: Vec<String> = tuples.iter().map(TTuple::to_string).collect();
        Error::Consistency(format!("T = {{{}}} matches no known shape", listed.join(", ")))
    })?;
    let group = PermGroup::from_elements(aut.degree(), perms)?;
    Ok(TSubgroup { shape, tuples, group })
}

/// 4-cycles inside the union of two consecutive blocks.
pub fn block_squares(g: &LabeledGraph, rl: &Relabeling) -> Vec<Cycle> {
    let block_of = |v: usize| (0..rl.len).find(|&i| rl.block(i).contains(&v));
    simple_cycles_of_length(g, 4)
        .into_iter()
        .filter(|c| {
            let blocks: BTreeSet<usize> = c.vertices().iter().filter_map(|&v| block_of(v)).collect();
            blocks.len() == 2 && {
                let v: Vec<usize> = blocks.into_iter().collect();
                (v[0] + 1) % rl.len == v[1] || (v[1] + 1) % rl.len == v[0]
            }
        })
        .collect()
}

fn square_decompositions(g: &LabeledGraph, rl: &Relabeling) -> Result<Vec<Vec<Cycle>>> {
    let squares = block_squares(g, rl);
    if is_decomposition(g, &squares) {
        return Ok(vec![squares]);
    }
    exact_covers(g, &squares, DEFAULT_DECOMPOSITION_CAP)
}

/// The long-face seeds: `(u_0,…,u_{n−1})` and the length-`2n` seed of each family.
pub fn block_seeds(g: &LabeledGraph, rl: &Relabeling) -> Result<Vec<DirectedCycle>> {
    let n = rl.len as i64;
    let short: Vec<usize> = (0..n).map(|i| rl.u(i)).collect();
    let long: Vec<usize> = if rl.w.is_empty() {
        (0..n).map(|i| rl.u(i)).chain((0..n).map(|i| rl.v(i))).collect()
    } else {
        (0..n - 1)
            .map(|i| rl.u(i))
            .chain([rl.v(n - 1)])
            .chain((0..n - 1).map(|i| rl.z(i)))
            .chain([rl.w(n - 1)])
            .collect()
    };
    [short, long]
        .into_iter()
        .map(|seq| {
            let c = DirectedCycle::new(seq)?;
            if !c.is_cycle_in(g) {
                return Err(Error::Consistency(format!("seed {:?} is not a cycle", c.vertices())));
            }
            Ok(c)
        })
        .collect()
}

/// Undirected orbits of consistent cycles of `group`, as candidate face sets.
fn cycle_orbit_decompositions(g: &LabeledGraph, group: &PermGroup, par: Parallelism) -> Result<Vec<Vec<Cycle>>> {
    let census = cycle_census(group, g, par)?;
    let mut out: Vec<Vec<Cycle>> = Vec::new();
    for orbit in &census.orbits {
        let members = orbit.members.as_ref().ok_or(Error::EnumerationTooLarge {
            size: orbit.size as usize,
            cap: crate::cycles::MEMBER_LIMIT as usize,
        })?;
        let set: BTreeSet<Cycle> = members.iter().map(DirectedCycle::undirected).collect();
        let d: Vec<Cycle> = set.into_iter().collect();
        if !out.contains(&d) {
            out.push(d);
        }
    }
    Ok(out)
}

/// Pairs candidate face sets, keeps the 2_{0,1} maps, and feeds the remaining
/// cycle orbit of each map's group back in as a new candidate until nothing
/// new appears.
fn close_under_pairing(
    graph: &Arc<LabeledGraph>,
    seeds: Vec<Vec<Cycle>>,
    par: Parallelism,
) -> Result<Vec<ClassifiedMap>> {
    let mut decs: Vec<Vec<Cycle>> = Vec::new();
    let mut known: HashSet<Vec<Cycle>> = HashSet::new();
    for mut d in seeds {
        d.sort();
        if is_decomposition(graph, &d) && known.insert(d.clone()) {
            decs.push(d);
        }
    }
    let mut found = Vec::new();
    let mut done = 0;
    while done < decs.len() {
        let upto = decs.len();
        let pairs: Vec<(usize, usize)> =
            (0..upto).flat_map(|j| (0..j).map(move |i| (i, j))).filter(|&(_, j)| j >= done).collect();
        let results = par.map(&pairs, |&(i, j)| {
            let faces: Vec<Cycle> = decs[i].iter().chain(&decs[j]).cloned().collect();
            classify_faces(graph, faces, Parallelism::Sequential)
        });
        done = upto;
        for r in results {
            let Some(cm) = r? else { continue };
            if !cm.class.is_two_orbit_01() {
                continue;
            }
            for mut d in cycle_orbit_decompositions(graph, &cm.aut.group, Parallelism::Sequential)? {
                d.sort();
                if is_decomposition(graph, &d) && known.insert(d.clone()) {
                    decs.push(d);
                }
            }
            found.push(cm);
        }
    }
    dedupe_classified(found)
}

/// How a family's maps were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Face orbits `seed·T` and their closure.
    TSubgroups,
    /// Edge decompositions from the listed `Aut(Γ)`, paired exhaustively.
    Generic,
    /// Pairs of the three cycle orbits of a 1-regular `Aut(Γ)`.
    OneRegular,
    /// Pairs of cycle orbits of the two index-2 subgroups `H₁`, `H₂`.
    IndexTwo,
}

/// One 2_{0,1} map with the data reported alongside it.
#[derive(Clone, Debug)]
pub struct FamilyMap {
    pub classified: ClassifiedMap,
    /// Face lengths of the two face orbits, smaller first.
    pub face_lengths: (usize, usize),
    pub t_shape: Option<TShape>,
    /// Name of the subgroup equal to `Aut(M)`, when one was prescribed.
    pub group_name: Option<String>,
}

impl FamilyMap {
    pub fn map(&self) -> &MapOnGraph {
        &self.classified.map
    }
}

#[derive(Clone, Debug)]
pub struct FamilyMaps {
    pub tag: FamilyTag,
    pub params: RoseWindowParams,
    pub route: Route,
    pub maps: Vec<FamilyMap>,
}

impl FamilyMaps {
    pub fn face_length_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.maps.iter().map(|m| m.face_lengths).collect();
        v.sort();
        v
    }
}

/// Face lengths of the two `Aut(M)` face orbits.
pub fn orbit_face_lengths(cm: &ClassifiedMap) -> Result<(usize, usize)> {
    let orbits = face_orbits(&cm.map, &cm.aut.group);
    if orbits.len() != 2 {
        return Err(Error::Consistency(format!("{} face orbits in a 2_{{0,1}} map", orbits.len())));
    }
    let a = cm.map.faces()[orbits[0][0]].len();
    let b = cm.map.faces()[orbits[1][0]].len();
    Ok((a.min(b), a.max(b)))
}

fn annotate(cm: ClassifiedMap, rl: Option<&Relabeling>, group_name: Option<String>) -> Result<FamilyMap> {
    let face_lengths = orbit_face_lengths(&cm)?;
    let t_shape = match rl {
        Some(rl) => Some(compute_t(&cm.aut.group, rl)?.shape),
        None => None,
    };
    Ok(FamilyMap { classified: cm, face_lengths, t_shape, group_name })
}

fn sorted_pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Prediction for one graph: how many maps, and their face lengths when known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub count: usize,
    pub face_lengths: Option<Vec<(usize, usize)>>,
}

impl Expected {
    fn lengths(mut pairs: Vec<(usize, usize)>) -> Expected {
        pairs.sort();
        Expected { count: pairs.len(), face_lengths: Some(pairs) }
    }

    /// `Ok` when `found` agrees with the prediction, else a description of the difference.
    pub fn check(&self, found: &[(usize, usize)]) -> std::result::Result<(), String> {
        if found.len() != self.count {
            return Err(format!("expected {} maps, found {}", self.count, found.len()));
        }
        if let Some(want) = &self.face_lengths {
            let mut got = found.to_vec();
            got.sort();
            if &got != want {
                return Err(format!("expected face lengths {want:?}, found {got:?}"));
            }
        }
        Ok(())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Predicted 2_{0,1} maps on `R_n(2,1)`.
pub fn expected_family_i(n: usize) -> Expected {
    let p4n = sorted_pair(4, n);
    let p42 = (4, 2 * n);
    let pn2 = (n, 2 * n);
    if n == 4 {
        return Expected::lengths(vec![(4, 8)]);
    }
    if gcd(n, 6) == 1 {
        return Expected::lengths(vec![]);
    }
    Expected::lengths(match n % 12 {
        3 | 9 => vec![p4n],
        4 | 8 => vec![p4n, p42],
        2 | 10 => vec![p4n, p42, pn2],
        0 => vec![p4n, p4n, p42],
        6 => vec![p4n, p4n, p42, pn2],
        _ => unreachable!("gcd(n,6) > 1 leaves residues 0,2,3,4,6,8,9,10"),
    })
}

/// Predicted 2_{0,1} maps on `R_{2n}(n+2, n+1)`.
pub fn expected_family_ii(n: usize) -> Expected {
    let p4n = sorted_pair(4, n);
    let p42 = (4, 2 * n);
    let pn2 = (n, 2 * n);
    match n {
        3 => return Expected::lengths(vec![(3, 4), (3, 6), (4, 6)]),
        4 => return Expected::lengths(vec![(4, 8)]),
        _ => {}
    }
    if gcd(n, 12) <= 2 {
        return Expected::lengths(vec![]);
    }
    Expected::lengths(match n % 12 {
        3 | 9 => vec![p4n, p42, pn2],
        4 | 6 | 8 => vec![p4n, p42],
        0 => vec![p4n, p4n, p42, p42],
        _ => unreachable!("gcd(n,12) > 2 leaves residues 0,3,4,6,8,9"),
    })
}

/// Prediction for any tag. Families (iii) and (iv) predict counts only.
pub fn expected_maps(tag: FamilyTag, n: usize) -> Option<Expected> {
    Some(match tag {
        FamilyTag::FamilyI => expected_family_i(n),
        FamilyTag::FamilyII { m } => expected_family_ii(m),
        FamilyTag::FamilyIII { m, b, .. } => {
            Expected { count: if (b * b) % m == 1 % m { 3 } else { 0 }, face_lengths: None }
        }
        FamilyTag::FamilyIV { m, .. } => Expected { count: if m % 4 == 2 { 2 } else { 3 }, face_lengths: None },
        FamilyTag::NotArcTransitive => return None,
    })
}

fn generic_maps(g: &LabeledGraph, par: Parallelism) -> Result<Vec<ClassifiedMap>> {
    let aut = automorphism_group(g)?.to_perm_group(DEFAULT_GROUP_CAP)?;
    let census = cycle_census(&aut, g, par)?;
    let decs = decompositions_from_census(g, &aut, &census, DEFAULT_DECOMPOSITION_CAP)?;
    maps_from_decompositions(&Arc::new(g.clone()), &decs, par)
}

fn block_family(
    tag: FamilyTag,
    g: LabeledGraph,
    rl: Relabeling,
    ts: Vec<TSubgroup>,
    generic: bool,
    par: Parallelism,
) -> Result<FamilyMaps> {
    let params = g.params().expect("Rose Window graph");
    let (route, found) = if generic {
        (Route::Generic, generic_maps(&g, par)?)
    } else {
        let seeds = block_seeds(&g, &rl)?;
        let mut candidates = square_decompositions(&g, &rl)?;
        for t in &ts {
            for s in &seeds {
                candidates.push(face_orbit_from_seed(s, t));
            }
        }
        (Route::TSubgroups, close_under_pairing(&Arc::new(g), candidates, par)?)
    };
    let maps = found
        .into_iter()
        .map(|cm| {
            if route == Route::Generic {
                // K_{4,4} and the two smallest family (ii) graphs have extra
                // automorphisms that need not respect the blocks
                let t_shape = compute_t(&cm.aut.group, &rl).ok().map(|t| t.shape);
                let mut fm = annotate(cm, None, None)?;
                fm.t_shape = t_shape;
                Ok(fm)
            } else {
                annotate(cm, Some(&rl), None)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyMaps { tag, params, route, maps })
}

/// Every 2_{0,1} map on `R_n(2,1)`, without checking the count.
pub fn construct_family_i(n: usize, par: Parallelism) -> Result<FamilyMaps> {
    let (g, rl) = family_i_graph(n)?;
    let ts = t_subgroups_family_i(n)?;
    block_family(FamilyTag::FamilyI, g, rl, ts, n == 4, par)
}

/// Every 2_{0,1} map on `R_{2n}(n+2, n+1)`, without checking the count.
pub fn construct_family_ii(n: usize, par: Parallelism) -> Result<FamilyMaps> {
    let (g, rl) = family_ii_graph(n)?;
    let ts = t_subgroups_family_ii(n)?;
    block_family(FamilyTag::FamilyII { m: n }, g, rl, ts, n <= 4, par)
}

fn checked(fm: FamilyMaps) -> Result<Vec<MapOnGraph>> {
    let expected = expected_maps(fm.tag, fm.params.n).expect("arc-transitive tag");
    expected.check(&fm.face_length_pairs()).map_err(|d| Error::CountMismatch(format!("{}: {d}", fm.params)))?;
    Ok(fm.maps.into_iter().map(|m| m.classified.map).collect())
}

/// The 2_{0,1} maps on `R_n(2,1)`; fails when they disagree with the table.
pub fn family_i_maps(n: usize) -> Result<Vec<MapOnGraph>> {
    checked(construct_family_i(n, Parallelism::default())?)
}

/// The 2_{0,1} maps on `R_{2n}(n+2, n+1)`; fails when they disagree with the table.
pub fn family_ii_maps(n: usize) -> Result<Vec<MapOnGraph>> {
    checked(construct_family_ii(n, Parallelism::default())?)
}

/// Maps from pairs of the consistent-cycle orbits of an arc-transitive group.
pub fn maps_from_group(graph: &Arc<LabeledGraph>, group: &PermGroup, par: Parallelism) -> Result<Vec<ClassifiedMap>> {
    let decs = cycle_orbit_decompositions(graph, group, par)?;
    maps_from_decompositions(graph, &decs, par)
}

/// Maps on a graph whose full automorphism group is 1-regular.
pub fn one_regular_maps(g: &LabeledGraph, par: Parallelism) -> Result<Vec<ClassifiedMap>> {
    let aut = automorphism_group(g)?;
    if !aut.is_one_regular() {
        return Err(Error::Consistency(format!(
            "Aut({}) is not 1-regular",
            g.params().map_or("graph".into(), |p| p.to_string())
        )));
    }
    let group = aut.to_perm_group(DEFAULT_GROUP_CAP)?;
    maps_from_group(&Arc::new(g.clone()), &group, par)
}

fn construct_one_regular(tag: FamilyTag, p: RoseWindowParams, par: Parallelism) -> Result<FamilyMaps> {
    let g = build_rose_window(p)?;
    let maps = one_regular_maps(&g, par)?.into_iter().map(|cm| annotate(cm, None, None)).collect::<Result<Vec<_>>>()?;
    Ok(FamilyMaps { tag, params: p, route: Route::OneRegular, maps })
}

/// Every 2_{0,1} map on `R_{2m}(2b, r)`, without checking the count.
pub fn construct_family_iii(m: usize, b: usize, r: usize, par: Parallelism) -> Result<FamilyMaps> {
    let p = RoseWindowParams::new(2 * m, 2 * b as i64, r as i64)?;
    let tag = recognize_all(p)
        .matches
        .into_iter()
        .find(|t| matches!(t, FamilyTag::FamilyIII { .. }))
        .ok_or_else(|| Error::InvalidParams(format!("{p} is not in family (iii)")))?;
    construct_one_regular(tag, p, par)
}

/// The 2_{0,1} maps on `R_{2m}(2b, r)`; fails when the count disagrees.
pub fn family_iii_maps(m: usize, b: usize, r: usize) -> Result<Vec<MapOnGraph>> {
    checked(construct_family_iii(m, b, r, Parallelism::default())?)
}

fn family_iv_tag(m: usize, d: usize) -> Result<(FamilyTag, RoseWindowParams)> {
    if m == 0 || (d != m && d != 11 * m) {
        return Err(Error::InvalidParams(format!("family (iv) needs d = m or d = 11m, got m = {m}, d = {d}")));
    }
    let tag = FamilyTag::FamilyIV { m, d };
    let p = tag.canonical_params(12 * m).ok_or_else(|| Error::InvalidParams(format!("m = {m}")))?;
    Ok((tag, p))
}

/// Generators, subgroups and witnesses behind the family (iv) construction
/// when `m ≡ 2 (mod 4)`.
#[derive(Clone, Debug)]
pub struct IndexTwoData {
    pub params: RoseWindowParams,
    pub rho: Permutation,
    pub mu: Permutation,
    pub sigma: Permutation,
    pub tau: Permutation,
    pub aut_order: u64,
    pub h1: PermGroup,
    pub h2: PermGroup,
}

impl IndexTwoData {
    pub fn new(m: usize, d: usize) -> Result<IndexTwoData> {
        let (_, p) = family_iv_tag(m, d)?;
        if m % 4 != 2 {
            return Err(Error::InvalidParams(format!("tau needs m ≡ 2 (mod 4), got m = {m}")));
        }
        let g = build_rose_window(p)?;
        let (rho, mu, sigma, tau) = (rho(p), mu(p), family_iv_sigma(p, d), family_iv_tau(p, d));
        for (name, q) in [("rho", &rho), ("mu", &mu), ("sigma", &sigma), ("tau", &tau)] {
            if !g.is_automorphism(q) {
                return Err(Error::Consistency(format!("{name} is not an automorphism of {p}")));
            }
        }
        let aut = automorphism_group(&g)?;
        let aut_order = aut.order();
        let h1 = PermGroup::closure(&[mu.clone(), sigma.clone(), rho.clone()])?;
        let h2 = PermGroup::closure(&[mu.clone(), sigma.clone(), tau.then(&rho)])?;
        for (name, h) in [("H1", &h1), ("H2", &h2)] {
            if 2 * h.order() != aut_order {
                return Err(Error::Consistency(format!("{name} has order {}, |Aut| = {aut_order}", h.order())));
            }
            if !h.generators().iter().all(|q| aut.contains(q)) {
                return Err(Error::Consistency(format!("{name} is not inside Aut")));
            }
        }
        Ok(IndexTwoData { params: p, rho, mu, sigma, tau, aut_order, h1, h2 })
    }

    /// Named permutation identities among `ρ, μ, σ, τ`, in composition order
    /// left to right.
    pub fn identities(&self) -> Vec<(String, bool)> {
        let (r, m, s, t) = (&self.rho, &self.mu, &self.sigma, &self.tau);
        vec![
            ("sigma mu = mu sigma".into(), s.then(m) == m.then(s)),
            ("sigma tau = tau sigma".into(), s.then(t) == t.then(s)),
            ("tau mu tau = mu sigma".into(), t.then(m).then(t) == m.then(s)),
            ("tau rho tau = rho sigma".into(), t.then(r).then(t) == r.then(s)),
        ]
    }

    fn trace(start: usize, h: &Permutation) -> Vec<usize> {
        let mut seq = vec![start];
        let mut v = h.apply(start);
        while v != start {
            seq.push(v);
            v = h.apply(v);
        }
        seq
    }

    /// The four witness cycles of `H₁`: `C₁` traced from `x_0` by `σρ`, its
    /// images under `ρ` and `ρ²`, and the hub cycle traced by `ρ^r`.
    pub fn h1_witnesses(&self) -> Result<Vec<Cycle>> {
        let (n, a, r) = (self.params.n, self.params.a as i64, self.params.r as i64);
        let c1 = Self::trace(x(n, 0), &self.sigma.then(&self.rho));
        let want = [x(n, 0), x(n, 1), y(n, 1), x(n, a + 1), x(n, a + 2), y(n, a + 2)];
        if want.iter().enumerate().any(|(k, &v)| c1[k % c1.len()] != v) {
            return Err(Error::Consistency(format!("H1 witness starts {:?}", &c1[..6.min(c1.len())])));
        }
        let c4 = Self::trace(y(n, 0), &self.rho.pow(r));
        let c1 = Cycle::new(c1)?;
        Ok(vec![c1.clone(), c1.image(&self.rho), c1.image(&self.rho.pow(2)), Cycle::new(c4)?])
    }

    /// The four witness cycles of `H₂`: `C₁` traced from `x_0` by `στρ`, and
    /// its images under `μ`, `τρ` and `τρσ`. The walk repeats with period 6
    /// and closes after `6·12m / gcd(12m, 2+2r+a)` vertices.
    pub fn h2_witnesses(&self) -> Result<Vec<Cycle>> {
        let (n, a, r) = (self.params.n, self.params.a as i64, self.params.r as i64);
        let tr = self.tau.then(&self.rho);
        let c1 = Self::trace(x(n, 0), &self.sigma.then(&tr));
        let want = [x(n, 0), x(n, 1), x(n, 2), y(n, 2), y(n, 2 + r), y(n, 2 + 2 * r), x(n, 2 + 2 * r + a)];
        let step = (2 + 2 * r + a).rem_euclid(n as i64) as usize;
        if c1.len() != 6 * n / gcd(n, step) || want.iter().enumerate().any(|(k, &v)| c1[k % c1.len()] != v) {
            return Err(Error::Consistency(format!(
                "H2 witness starts {:?}, length {}",
                &c1[..7.min(c1.len())],
                c1.len()
            )));
        }
        let c1 = Cycle::new(c1)?;
        Ok(vec![c1.clone(), c1.image(&self.mu), c1.image(&tr), c1.image(&tr.then(&self.sigma))])
    }

    pub fn h1_witness_check(&self) -> Result<WitnessCheck> {
        let w = self.h1_witnesses()?;
        let keep = [self.rho.clone(), self.sigma.clone(), self.mu.clone()];
        Ok(WitnessCheck::new("H1", self.params.n, &w, &keep, &self.tau))
    }

    pub fn h2_witness_check(&self) -> Result<WitnessCheck> {
        let w = self.h2_witnesses()?;
        let keep = [self.tau.then(&self.rho), self.sigma.clone(), self.mu.clone()];
        Ok(WitnessCheck::new("H2", self.params.n, &w, &keep, &self.rho))
    }
}

/// Outcome of an index-2 witness argument: four cycles of length `12m`
/// whose set is preserved by the subgroup's generators and moved by the
/// excluded automorphism. The orbit fields record the same test run on the
/// full subgroup orbit of the first cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub group: String,
    pub first_length: usize,
    pub claimed_length: usize,
    pub set_preserved: bool,
    pub set_moved_by_excluded: bool,
    pub orbit_size: usize,
    pub orbit_moved_by_excluded: bool,
}

impl WitnessCheck {
    fn new(
        group: &str,
        claimed_length: usize,
        witnesses: &[Cycle],
        keep: &[Permutation],
        excluded: &Permutation,
    ) -> WitnessCheck {
        let preserves = |set: &[Cycle], p: &Permutation| {
            let lookup: BTreeSet<&Cycle> = set.iter().collect();
            set.iter().all(|c| lookup.contains(&c.image(p)))
        };
        let orbit = crate::cycles::undirected_orbit(keep, &witnesses[0]);
        WitnessCheck {
            group: group.to_string(),
            first_length: witnesses[0].len(),
            claimed_length,
            set_preserved: keep.iter().all(|p| preserves(witnesses, p)),
            set_moved_by_excluded: !preserves(witnesses, excluded),
            orbit_size: orbit.len(),
            orbit_moved_by_excluded: !preserves(&orbit, excluded),
        }
    }

    /// The four-cycle argument goes through as stated.
    pub fn holds(&self) -> bool {
        self.first_length == self.claimed_length && self.set_preserved && self.set_moved_by_excluded
    }
}

/// Every 2_{0,1} map on `R_{12m}(3d+2, 9d+1)`, without checking the count.
pub fn construct_family_iv(m: usize, d: usize, par: Parallelism) -> Result<FamilyMaps> {
    let (tag, p) = family_iv_tag(m, d)?;
    if m % 4 != 2 {
        return construct_one_regular(tag, p, par);
    }
    let data = IndexTwoData::new(m, d)?;
    let g = Arc::new(build_rose_window(p)?);
    let mut found = Vec::new();
    for (name, h) in [("H1", &data.h1), ("H2", &data.h2)] {
        for cm in maps_from_group(&g, h, par)? {
            if cm.aut.group.elements() != h.elements() {
                return Err(Error::Consistency(format!("Aut(M) of order {} differs from {name}", cm.aut.order())));
            }
            found.push((cm, name));
        }
    }
    let unique = dedupe_classified(found.iter().map(|(cm, _)| cm.clone()).collect())?;
    let maps = unique
        .into_iter()
        .map(|cm| {
            let name = found.iter().find(|(c, _)| c.map == cm.map).map(|(_, n)| n.to_string());
            annotate(cm, None, name)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyMaps { tag, params: p, route: Route::IndexTwo, maps })
}

/// The 2_{0,1} maps on `R_{12m}(3d+2, 9d+1)`; fails when the count disagrees.
pub fn family_iv_maps(m: usize, d: usize) -> Result<Vec<MapOnGraph>> {
    checked(construct_family_iv(m, d, Parallelism::default())?)
}

/// Dispatches on the canonical family tag of `p`. Families (iii) and (iv)
/// run on `p` itself; families (i) and (ii) on their representative graph,
/// which is `p` up to the sign isomorphisms.
pub fn construct_for_tag(tag: FamilyTag, p: RoseWindowParams, par: Parallelism) -> Result<FamilyMaps> {
    match tag {
        FamilyTag::FamilyI => construct_family_i(p.n, par),
        FamilyTag::FamilyII { m } => construct_family_ii(m, par),
        FamilyTag::FamilyIII { .. } => construct_one_regular(tag, p, par),
        FamilyTag::FamilyIV { m, d } => {
            if Some(p) == tag.canonical_params(p.n) {
                construct_family_iv(m, d, par)
            } else {
                let mut fm = construct_family_iv(m, d, par)?;
                fm.tag = tag;
                Ok(fm)
            }
        }
        FamilyTag::NotArcTransitive => Err(Error::InvalidParams(format!("{p} is not arc-transitive"))),
    }
}

/// Named identities among the explicit generators of families (i) and (ii).
pub fn block_family_identities(tag: FamilyTag, n: usize) -> Result<Vec<(String, bool)>> {
    match tag {
        FamilyTag::FamilyI => {
            let (g, rl) = family_i_graph(n)?;
            let p = g.params().expect("params");
            let r = rho(p);
            let s0 = family_i_sigma(&rl, 0);
            let conj = (0..n as i64).all(|i| family_i_sigma(&rl, i) == s0.conjugate(&r.pow(i)));
            let mu_ok = (0..n as i64).all(|i| mu(p).apply(rl.u(i)) == rl.u(-i) && mu(p).apply(rl.v(i)) == rl.v(-i));
            Ok(vec![("sigma_i = sigma_0^(rho^i)".into(), conj), ("u_i mu = u_-i, v_i mu = v_-i".into(), mu_ok)])
        }
        FamilyTag::FamilyII { m } => {
            let (g, rl) = family_ii_graph(m)?;
            let p = g.params().expect("params");
            let nn = m as i64;
            let sig = |i: i64| family_ii_sigma(&rl, i);
            let alpha = rho(p).then(&sig(nn - 1));
            let commute = (0..nn).all(|i| sig(i).then(&sig(i + 1)) == sig(i + 1).then(&sig(i)));
            let conj = (0..nn).all(|i| sig(i) == sig(0).conjugate(&alpha.pow(i)));
            let four_cycles = (0..nn).all(|i| {
                alpha.apply(rl.u(i)) == rl.u(i + 1)
                    && alpha.apply(rl.v(i)) == rl.v(i + 1)
                    && alpha.apply(rl.w(i)) == rl.w(i + 1)
                    && alpha.apply(rl.z(i)) == rl.z(i + 1)
            });
            let all_auto = (0..nn).all(|i| g.is_automorphism(&sig(i)))
                && g.is_automorphism(&alpha)
                && g.is_automorphism(&family_ii_beta(&rl));
            Ok(vec![
                ("sigma_i sigma_i+1 = sigma_i+1 sigma_i".into(), commute),
                ("sigma_i = sigma_0^(alpha^i)".into(), conj),
                ("alpha = rho sigma_n-1 shifts u, v, w, z".into(), four_cycles),
                ("sigma_i, alpha, beta are automorphisms".into(), all_auto),
            ])
        }
        _ => Err(Error::InvalidParams(format!("no block identities for family {}", tag.label()))),
    }
}

/// Index of a subgroup, re-exported for reports.
pub fn subgroup_index(g: &PermGroup, h: &PermGroup) -> Result<u64> {
    index(g, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_subgroups_by_divisibility() {
        let shapes = |n| t_subgroups_family_i(n).unwrap().iter().map(|t| t.shape).collect::<Vec<_>>();
        assert_eq!(shapes(6), vec![TShape::T1, TShape::T2]);
        assert!(shapes(5).is_empty());
        assert_eq!(shapes(4), vec![TShape::T2]);
        let t4 = &t_subgroups_family_i(4).unwrap()[0];
        assert!(t4.tuples.contains(&TTuple(vec![1, 1, 1, 1])));
        assert!(t4.tuples.iter().all(TTuple::has_no_adjacent_zeros));

        let shapes = |n| t_subgroups_family_ii(n).unwrap().iter().map(|t| t.shape).collect::<Vec<_>>();
        assert_eq!(shapes(12), vec![TShape::T3, TShape::T4]);
        assert_eq!(shapes(4), vec![TShape::T4]);
        assert_eq!(shapes(3), vec![TShape::T3]);
        assert!(shapes(5).is_empty());
        assert!(t_subgroups_family_ii(4).unwrap()[0].tuples.contains(&TTuple(vec![2, 1, 2, 1])));
        assert!(t_subgroups_family_ii(3).unwrap()[0].tuples.contains(&TTuple(vec![3, 3, 3])));
    }

    #[test]
    fn t_normalized_by_rotations() {
        for n in [6usize, 9, 12] {
            let (g, rl) = family_i_graph(n).unwrap();
            let p = g.params().unwrap();
            for t in t_subgroups_family_i(n).unwrap() {
                assert!(is_normalized_by(&t, &[rho(p), mu(p)]));
            }
            let _ = rl;
        }
        for n in [6usize, 8, 9, 12] {
            let (g, rl) = family_ii_graph(n).unwrap();
            let p = g.params().unwrap();
            let alpha = rho(p).then(&family_ii_sigma(&rl, n as i64 - 1));
            let beta = family_ii_beta(&rl);
            for t in t_subgroups_family_ii(n).unwrap() {
                assert!(is_normalized_by(&t, &[alpha.clone(), beta.clone()]), "n={n} {:?}", t.shape);
            }
        }
    }

    #[test]
    fn seed_orbits() {
        let (g, rl) = family_i_graph(6).unwrap();
        let seeds = block_seeds(&g, &rl).unwrap();
        let t1 = &t_subgroups_family_i(6).unwrap()[0];
        let faces = face_orbit_from_seed(&seeds[0], t1);
        assert_eq!(faces.len(), 4);
        assert!(is_decomposition(&g, &faces));
        // f·t for t = (0,1,1,0,1,1) is (u0, v1, v2, u3, v4, v5)
        let t = decode_tuple(&rl, &TTuple(vec![0, 1, 1, 0, 1, 1])).unwrap();
        let ft = Cycle::new(vec![rl.u(0), rl.v(1), rl.v(2), rl.u(3), rl.v(4), rl.v(5)]).unwrap();
        assert_eq!(seeds[0].undirected().image(&t), ft);

        let trivial =
            TSubgroup { shape: TShape::T1, tuples: BTreeSet::new(), group: PermGroup::trivial(g.vertex_count()) };
        assert_eq!(face_orbit_from_seed(&seeds[0], &trivial).len(), 1);

        let (g, rl) = family_ii_graph(6).unwrap();
        let seeds = block_seeds(&g, &rl).unwrap();
        let t3 = &t_subgroups_family_ii(6).unwrap()[0];
        let faces = face_orbit_from_seed(&seeds[0], t3);
        assert_eq!(faces.len(), 8);
        assert!(is_decomposition(&g, &faces));
    }

    #[test]
    fn squares_between_blocks() {
        for n in [5usize, 6, 9] {
            let (g, rl) = family_i_graph(n).unwrap();
            let sq = block_squares(&g, &rl);
            assert_eq!(sq.len(), n);
            assert!(is_decomposition(&g, &sq));
        }
        for n in [5usize, 6, 8] {
            let (g, rl) = family_ii_graph(n).unwrap();
            let decs = square_decompositions(&g, &rl).unwrap();
            assert!(!decs.is_empty(), "n={n}");
        }
    }

    #[test]
    fn expected_tables() {
        assert_eq!(expected_family_i(4).face_lengths.unwrap(), vec![(4, 8)]);
        assert_eq!(expected_family_i(18).count, 4);
        assert_eq!(expected_family_i(12).face_lengths.unwrap(), vec![(4, 12), (4, 12), (4, 24)]);
        assert_eq!(expected_family_i(3).face_lengths.unwrap(), vec![(3, 4)]);
        assert_eq!(expected_family_ii(12).count, 4);
        assert_eq!(expected_family_ii(10).count, 0);
        assert_eq!(expected_family_ii(9).count, 3);
    }

    #[test]
    fn small_family_i_counts() {
        for n in [3usize, 4, 5, 6, 8, 9, 10, 12] {
            let fm = construct_family_i(n, Parallelism::default()).unwrap_or_else(|e| panic!("n={n}: {e}"));
            assert_eq!(expected_family_i(n).check(&fm.face_length_pairs()), Ok(()), "n={n}");
        }
        let fm = construct_family_i(6, Parallelism::default()).unwrap();
        let shapes: Vec<_> = fm.maps.iter().filter(|m| m.face_lengths == (6, 12)).map(|m| m.t_shape).collect();
        assert_eq!(shapes, vec![Some(TShape::T2)]);
    }

    #[test]
    fn small_family_ii_counts() {
        for n in [3usize, 4, 5, 6, 8, 9] {
            let fm = construct_family_ii(n, Parallelism::default()).unwrap();
            assert_eq!(expected_family_ii(n).check(&fm.face_length_pairs()), Ok(()), "n={n}");
        }
        let fm = construct_family_ii(4, Parallelism::default()).unwrap();
        assert_eq!(fm.maps[0].t_shape, Some(TShape::T4));
    }

    #[test]
    fn family_iii_pattern_and_counts() {
        assert!(matches!(family_iii_maps(6, 2, 1), Err(Error::InvalidParams(_))));
        assert_eq!(family_iii_maps(8, 3, 1).unwrap().len(), 3);
        assert_eq!(family_iii_maps(5, 2, 1).unwrap().len(), 0);
    }

    #[test]
    fn family_iv_index_two() {
        let data = IndexTwoData::new(2, 2).unwrap();
        for (name, ok) in data.identities() {
            assert!(ok, "{name}");
        }
        let w1 = data.h1_witnesses().unwrap();
        assert!(w1.iter().take(3).all(|c| c.len() == 24));
        assert!(data.h1_witness_check().unwrap().holds());
        // at m = 2 the H2 walk closes after six vertices; its orbit still separates rho
        let h2 = data.h2_witness_check().unwrap();
        assert_eq!(h2.first_length, 6);
        assert!(!h2.holds());
        assert_eq!(h2.orbit_size, 16);
        assert!(h2.orbit_moved_by_excluded);

        let fm = construct_family_iv(2, 2, Parallelism::default()).unwrap();
        assert_eq!(fm.maps.len(), 2);
        let names: BTreeSet<_> = fm.maps.iter().filter_map(|m| m.group_name.clone()).collect();
        assert_eq!(names.len(), 2);
        assert_eq!(family_iv_maps(1, 1).unwrap().len(), 3);
    }

    #[test]
    fn block_identities_hold() {
        for n in [5usize, 6] {
            for (name, ok) in block_family_identities(FamilyTag::FamilyI, n).unwrap() {
                assert!(ok, "family i n={n}: {name}");
            }
            for (name, ok) in block_family_identities(FamilyTag::FamilyII { m: n }, 0).unwrap() {
                assert!(ok, "family ii n={n}: {name}");
            }
        }
    }
}
