//! Maps given by a face set on a graph, their flag systems, automorphisms and
//! flag-orbit classes, and the Petrie dual.
//!
//! Flags are indexed face by face: the flag at position `j` of face `f` on
//! side `s` (0 = start of the `j`-th edge, 1 = its end) has index
//! `offset[f] + 2j + s`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cycles::{directed_map, shunt_of, Cycle, CycleOrbit};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::par::Parallelism;
use crate::perm::{PermGroup, Permutation};

/// A set of simple cycles covering every edge of a graph twice and closing
/// into a disc around every vertex.
#[derive(Clone, Debug)]
pub struct MapOnGraph {
    graph: Arc<LabeledGraph>,
    faces: Vec<Cycle>,
    index: HashMap<Cycle, usize>,
}

impl PartialEq for MapOnGraph {
    fn eq(&self, other: &Self) -> bool {
        self.faces == other.faces && *self.graph == *other.graph
    }
}

impl MapOnGraph {
    /// Validates the face set and builds the map.
    pub fn new(graph: Arc<LabeledGraph>, faces: impl IntoIterator<Item = Cycle>) -> Result<MapOnGraph> {
        let mut faces: Vec<Cycle> = faces.into_iter().collect();
        faces.sort();
        let before = faces.len();
        faces.dedup();
        if faces.len() != before {
            return Err(Error::NotAMap("a face is listed twice".into()));
        }
        for f in &faces {
            if !f.is_cycle_in(&graph) {
                return Err(Error::NotAMap(format!("{:?} is not a cycle of the graph", f.vertices())));
            }
        }
        let mut cover = vec![0usize; graph.edge_count()];
        for f in &faces {
            for (u, v) in f.edges() {
                cover[graph.edge_id(u, v).expect("checked adjacency")] += 1;
            }
        }
        if let Some(e) = cover.iter().position(|&k| k != 2) {
            let edge = graph.edges()[e];
            return Err(Error::NotAMap(format!(
                "edge {}{} lies on {} faces",
                graph.name(edge.u),
                graph.name(edge.v),
                cover[e]
            )));
        }
        let index = faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let m = MapOnGraph { graph, faces, index };
        FlagSystem::new(&m)?;
        Ok(m)
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> Arc<LabeledGraph> {
        Arc::clone(&self.graph)
    }

    pub fn faces(&self) -> &[Cycle] {
        &self.faces
    }

    pub fn face_index(&self, c: &Cycle) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Face lengths with multiplicity, ascending.
    pub fn face_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.faces.iter().map(Cycle::len).collect();
        v.sort_unstable();
        v
    }

    /// Distinct face lengths, ascending.
    pub fn distinct_face_lengths(&self) -> Vec<usize> {
        let mut v = self.face_lengths();
        v.dedup();
        v
    }

    /// Image of the face set under a vertex permutation, if it is a face set
    /// of this map again.
    pub fn preserved_by(&self, p: &Permutation) -> bool {
        self.faces.iter().all(|f| self.index.contains_key(&f.image(p)))
    }
}

/// Builds a map whose faces are the union of the given orbits.
pub fn build_map(graph: Arc<LabeledGraph>, face_orbits: &[CycleOrbit]) -> Result<MapOnGraph> {
    let mut faces = BTreeSet::new();
    for o in face_orbits {
        let members = o.members.as_ref().ok_or_else(|| Error::NotAMap("orbit too large to list its members".into()))?;
        faces.extend(members.iter().map(|c| c.undirected()));
    }
    MapOnGraph::new(graph, faces)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    pub vertex: usize,
    pub edge: usize,
    pub face: usize,
}

/// Flags with the three adjacency involutions.
#[derive(Clone, Debug)]
pub struct FlagSystem {
    flags: Vec<Flag>,
    adj: [Vec<usize>; 3],
    by_triple: HashMap<Flag, usize>,
}

impl FlagSystem {
    pub fn new(m: &MapOnGraph) -> Result<FlagSystem> {
        let g = m.graph();
        let mut offsets = Vec::with_capacity(m.faces.len());
        let mut total = 0;
        for f in &m.faces {
            offsets.push(total);
            total += 2 * f.len();
        }
        let mut flags = Vec::with_capacity(total);
        // (edge id) -> [(face, position)]
        let mut on_edge: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.edge_count()];
        for (fi, f) in m.faces.iter().enumerate() {
            let c = f.vertices();
            let len = c.len();
            for j in 0..len {
                let (a, b) = (c[j], c[(j + 1) % len]);
                let e = g.edge_id(a, b).expect("face edge");
                on_edge[e].push((fi, j));
                flags.push(Flag { vertex: a, edge: e, face: fi });
                flags.push(Flag { vertex: b, edge: e, face: fi });
            }
        }
        let mut by_triple = HashMap::with_capacity(total);
        for (i, fl) in flags.iter().enumerate() {
            if by_triple.insert(*fl, i).is_some() {
                return Err(Error::NonPolytopal { vertex: fl.vertex, edge: fl.edge, face: fl.face });
            }
        }
        let mut s0 = vec![0; total];
        let mut s1 = vec![0; total];
        let mut s2 = vec![0; total];
        for (fi, f) in m.faces.iter().enumerate() {
            let len = f.len();
            for j in 0..len {
                let here = offsets[fi] + 2 * j;
                let next = offsets[fi] + 2 * ((j + 1) % len);
                s0[here] = here + 1;
                s0[here + 1] = here;
                s1[here + 1] = next;
                s1[next] = here + 1;
            }
        }
        for (i, fl) in flags.iter().enumerate() {
            let pair = &on_edge[fl.edge];
            if pair.len() != 2 {
                return Err(Error::NotAMap(format!("edge {} on {} faces", fl.edge, pair.len())));
            }
            let &(of, oj) = pair
                .iter()
                .find(|&&(f2, _)| f2 != fl.face)
                .ok_or_else(|| Error::NotAMap(format!("edge {} twice on face {}", fl.edge, fl.face)))?;
            let other = Flag { vertex: fl.vertex, edge: fl.edge, face: of };
            s2[i] = *by_triple.get(&other).unwrap_or_else(|| unreachable!("face {of} pos {oj}"));
        }
        let fs = FlagSystem { flags, adj: [s0, s1, s2], by_triple };
        // each vertex must see one closed umbrella of 2·deg flags
        let mut seen = vec![false; total];
        let mut umbrellas = vec![0usize; g.vertex_count()];
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let v = fs.flags[start].vertex;
            umbrellas[v] += 1;
            let mut x = start;
            loop {
                seen[x] = true;
                x = fs.adj[1][x];
                seen[x] = true;
                x = fs.adj[2][x];
                if x == start {
                    break;
                }
            }
        }
        if let Some(v) = umbrellas.iter().position(|&k| k != 1) {
            return Err(Error::NotSurface(format!("{} umbrellas at vertex {}", umbrellas[v], g.name(v))));
        }
        Ok(fs)
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn flag(&self, i: usize) -> Flag {
        self.flags[i]
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    /// `Φ^i` for `i ∈ {0,1,2}`.
    pub fn adjacent(&self, i: usize, flag: usize) -> usize {
        self.adj[i][flag]
    }

    pub fn involution(&self, i: usize) -> Permutation {
        Permutation::from_images(self.adj[i].clone()).expect("involution")
    }

    pub fn index_of(&self, f: Flag) -> Option<usize> {
        self.by_triple.get(&f).copied()
    }

    /// Checks the flag axioms: fixed-point-free involutions, `s0s2 = s2s0`,
    /// and transitivity of the monodromy group.
    pub fn check_axioms(&self) -> Result<()> {
        for (i, s) in self.adj.iter().enumerate() {
            for (x, &y) in s.iter().enumerate() {
                if y == x || s[y] != x {
                    return Err(Error::NotAMap(format!("s{i} is not a fixed-point-free involution at {x}")));
                }
            }
        }
        for x in 0..self.len() {
            if self.adj[0][self.adj[2][x]] != self.adj[2][self.adj[0][x]] {
                return Err(Error::NotAMap(format!("s0 and s2 do not commute at {x}")));
            }
        }
        if self.monodromy_orbit(&[0, 1, 2], 0).len() != self.len() {
            return Err(Error::NotAMap("flag graph not connected".into()));
        }
        Ok(())
    }

    fn monodromy_orbit(&self, which: &[usize], start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut out = vec![start];
        while let Some(x) = stack.pop() {
            for &i in which {
                let y = self.adj[i][x];
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    stack.push(y);
                }
            }
        }
        out
    }

    /// True when the flag graph is bipartite.
    pub fn is_orientable(&self) -> bool {
        let mut side = vec![u8::MAX; self.len()];
        side[0] = 0;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for s in &self.adj {
                let y = s[x];
                if side[y] == u8::MAX {
                    side[y] = 1 - side[x];
                    stack.push(y);
                } else if side[y] == side[x] {
                    return false;
                }
            }
        }
        true
    }

    /// Image of every flag under a face-preserving vertex permutation.
    pub fn flag_action(&self, m: &MapOnGraph, p: &Permutation) -> Option<Vec<usize>> {
        let g = m.graph();
        let face_img: Vec<usize> = m.faces().iter().map(|f| m.face_index(&f.image(p))).collect::<Option<_>>()?;
        self.flags
            .iter()
            .map(|fl| {
                let e = g.edges()[fl.edge];
                let edge = g.edge_id(p.apply(e.u), p.apply(e.v))?;
                self.index_of(Flag { vertex: p.apply(fl.vertex), edge, face: face_img[fl.face] })
            })
            .collect()
    }
}

/// Unique flag map commuting with `s0, s1, s2` that sends `from` to `to`.
fn extend(a: &FlagSystem, b: &FlagSystem, from: usize, to: usize) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let mut img = vec![usize::MAX; a.len()];
    img[from] = to;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        for i in 0..3 {
            let y = a.adj[i][x];
            let target = b.adj[i][img[x]];
            if img[y] == usize::MAX {
                img[y] = target;
                stack.push(y);
            } else if img[y] != target {
                return None;
            }
        }
    }
    let mut hit = vec![false; b.len()];
    for &t in &img {
        if t == usize::MAX || std::mem::replace(&mut hit[t], true) {
            return None;
        }
    }
    Some(img)
}

/// A map automorphism: its action on vertices and on flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapAutomorphism {
    pub vertices: Permutation,
    pub flags: Permutation,
}

/// `Aut(M)` with its vertex and flag actions.
#[derive(Clone, Debug)]
pub struct MapAutomorphisms {
    pub elements: Vec<MapAutomorphism>,
    pub group: PermGroup,
}

impl MapAutomorphisms {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
}

fn vertex_action(m: &MapOnGraph, fs: &FlagSystem, img: &[usize]) -> Permutation {
    let mut v = vec![usize::MAX; m.graph().vertex_count()];
    for (x, &y) in img.iter().enumerate() {
        v[fs.flags[x].vertex] = fs.flags[y].vertex;
    }
    Permutation::from_images(v).expect("vertex action of a map automorphism")
}

/// `Aut(M)`, found by extending the base flag to every flag.
pub fn map_automorphisms(m: &MapOnGraph, par: Parallelism) -> Result<MapAutomorphisms> {
    let fs = FlagSystem::new(m)?;
    let targets: Vec<usize> = (0..fs.len()).collect();
    let found: Vec<Option<Vec<usize>>> = par.map(&targets, |&t| extend(&fs, &fs, 0, t));
    let mut elements: Vec<MapAutomorphism> = found
        .into_iter()
        .flatten()
        .map(|img| MapAutomorphism {
            vertices: vertex_action(m, &fs, &img),
            flags: Permutation::from_images(img).expect("bijective flag map"),
        })
        .collect();
    elements.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    let group =
        PermGroup::from_elements(m.graph().vertex_count(), elements.iter().map(|e| e.vertices.clone()).collect())?;
    if group.order() != elements.len() as u64 {
        return Err(Error::Consistency("distinct flag maps with equal vertex action".into()));
    }
    Ok(MapAutomorphisms { elements, group })
}

/// `Aut(M)` as the elements of a listed `Aut(Γ)` that preserve the faces.
pub fn map_automorphisms_filtered(m: &MapOnGraph, aut_graph: &PermGroup, par: Parallelism) -> Result<PermGroup> {
    let keep = par.filter(aut_graph.elements(), |p| m.preserved_by(p));
    PermGroup::from_elements(m.graph().vertex_count(), keep)
}

/// Flag-orbit class of a map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapClass {
    Reflexible,
    /// Two flag orbits; `Φ` and `Φ^i` share an orbit exactly for `i` in the set.
    TwoOrbit(BTreeSet<u8>),
    KOrbit(usize),
}

impl MapClass {
    pub fn two_orbit(indices: &[u8]) -> MapClass {
        MapClass::TwoOrbit(indices.iter().copied().collect())
    }

    pub fn is_two_orbit_01(&self) -> bool {
        *self == MapClass::two_orbit(&[0, 1])
    }
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapClass::Reflexible => write!(f, "reflexible"),
            MapClass::TwoOrbit(set) if set.is_empty() => write!(f, "2"),
            MapClass::TwoOrbit(set) => {
                let parts: Vec<String> = set.iter().map(u8::to_string).collect();
                write!(f, "2_{{{}}}", parts.join(","))
            }
            MapClass::KOrbit(k) => write!(f, "{k}-orbit"),
        }
    }
}

/// Verifies that the flag action is free and reads off the class.
pub fn classify(m: &MapOnGraph, aut: &MapAutomorphisms) -> Result<MapClass> {
    let fs = FlagSystem::new(m)?;
    for a in &aut.elements {
        if !a.flags.is_identity() && (0..fs.len()).any(|x| a.flags.apply(x) == x) {
            return Err(Error::NonFree(format!("{} fixes a flag", a.vertices)));
        }
    }
    let order = aut.elements.len();
    if order == 0 || fs.len() % order != 0 {
        return Err(Error::NonFree(format!("{order} does not divide {} flags", fs.len())));
    }
    let orbits = fs.len() / order;
    Ok(match orbits {
        1 => MapClass::Reflexible,
        2 => {
            let orbit: BTreeSet<usize> = aut.elements.iter().map(|a| a.flags.apply(0)).collect();
            let set = (0..3u8).filter(|&i| orbit.contains(&fs.adjacent(i as usize, 0))).collect();
            MapClass::TwoOrbit(set)
        }
        k => MapClass::KOrbit(k),
    })
}

/// Closed zig-zag walks, one per Petrie polygon, as vertex sequences.
pub fn petrie_polygons(m: &MapOnGraph) -> Result<Vec<Vec<usize>>> {
    let fs = FlagSystem::new(m)?;
    let mut seen = vec![false; fs.len()];
    let mut polygons = Vec::new();
    for start in 0..fs.len() {
        if seen[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut x = start;
        loop {
            seen[x] = true;
            walk.push(fs.flags[x].vertex);
            let y = fs.adj[2][fs.adj[0][x]];
            seen[y] = true;
            x = fs.adj[1][y];
            if x == start {
                break;
            }
        }
        polygons.push(walk);
    }
    Ok(polygons)
}

/// The Petrial, or [`Error::PetrialNotPolytopal`] when some Petrie polygon is
/// not a simple cycle.
pub fn petrie_dual(m: &MapOnGraph) -> Result<MapOnGraph> {
    let mut faces = BTreeSet::new();
    for walk in petrie_polygons(m)? {
        let c = Cycle::new(walk).map_err(|_| Error::PetrialNotPolytopal)?;
        if !faces.insert(c) {
            return Err(Error::PetrialNotPolytopal);
        }
    }
    MapOnGraph::new(m.graph_arc(), faces).map_err(|_| Error::PetrialNotPolytopal)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapInvariants {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub face_lengths: Vec<usize>,
    pub valency: usize,
    pub orientable: bool,
    /// `{p, k}` for one face length, `{p over q, k}` for two.
    pub map_type: String,
}

pub fn map_invariants(m: &MapOnGraph) -> Result<MapInvariants> {
    let fs = FlagSystem::new(m)?;
    let g = m.graph();
    let lengths = m.distinct_face_lengths();
    let valency = g.degree(0);
    let map_type = match lengths.as_slice() {
        [p] => format!("{{{p}, {valency}}}"),
        [p, q] => format!("{{{p} over {q}, {valency}}}"),
        many => {
            let parts: Vec<String> = many.iter().map(usize::to_string).collect();
            format!("{{{}, {valency}}}", parts.join("|"))
        }
    };
    let (v, e, f) = (g.vertex_count(), g.edge_count(), m.faces().len());
    Ok(MapInvariants {
        vertices: v,
        edges: e,
        faces: f,
        euler: v as i64 - e as i64 + f as i64,
        face_lengths: lengths,
        valency,
        orientable: fs.is_orientable(),
        map_type,
    })
}

/// Faces in cyclic order around each vertex.
pub fn umbrellas(m: &MapOnGraph) -> Result<Vec<Vec<usize>>> {
    let fs = FlagSystem::new(m)?;
    let mut out = vec![Vec::new(); m.graph().vertex_count()];
    let mut done = vec![false; m.graph().vertex_count()];
    for start in 0..fs.len() {
        let v = fs.flags[start].vertex;
        if done[v] {
            continue;
        }
        done[v] = true;
        let mut x = start;
        loop {
            out[v].push(fs.flags[x].face);
            x = fs.adj[2][fs.adj[1][x]];
            if x == start {
                break;
            }
        }
    }
    Ok(out)
}

/// Faces of the two classes alternate around every vertex.
pub fn faces_alternate(m: &MapOnGraph, class_of_face: &[usize]) -> Result<bool> {
    Ok(umbrellas(m)?.iter().all(|u| (0..u.len()).all(|i| class_of_face[u[i]] != class_of_face[u[(i + 1) % u.len()]])))
}

/// No two faces share two consecutive edges.
pub fn no_shared_consecutive_edges(m: &MapOnGraph) -> Result<bool> {
    let fs = FlagSystem::new(m)?;
    Ok((0..fs.len()).all(|x| {
        // x and s1(x) are the two edges of face(x) at vertex(x)
        let across = fs.flags[fs.adj[2][x]].face;
        let across_next = fs.flags[fs.adj[2][fs.adj[1][x]]].face;
        across != across_next
    }))
}

/// Orbits of `Aut(M)` on the faces, as face indices.
pub fn face_orbits(m: &MapOnGraph, aut: &PermGroup) -> Vec<Vec<usize>> {
    let mut class = vec![usize::MAX; m.faces().len()];
    let mut orbits = Vec::new();
    for f in 0..m.faces().len() {
        if class[f] != usize::MAX {
            continue;
        }
        let mut members: BTreeSet<usize> = BTreeSet::new();
        for p in aut.elements() {
            if let Some(i) = m.face_index(&m.faces()[f].image(p)) {
                members.insert(i);
            }
        }
        for &i in &members {
            class[i] = orbits.len();
        }
        orbits.push(members.into_iter().collect());
    }
    orbits
}

/// Class index of each face under [`face_orbits`].
pub fn face_classes(m: &MapOnGraph, aut: &PermGroup) -> Vec<usize> {
    let mut class = vec![0; m.faces().len()];
    for (k, orbit) in face_orbits(m, aut).iter().enumerate() {
        for &f in orbit {
            class[f] = k;
        }
    }
    class
}

/// Every face is an `Aut(M)`-consistent cycle with some element reversing it.
pub fn faces_are_symmetric_consistent(m: &MapOnGraph, aut: &PermGroup) -> bool {
    m.faces().iter().all(|f| {
        let seq = f.vertices();
        shunt_of(aut, seq).is_some() && directed_map(aut, seq, f.directed().reverse().vertices()).is_some()
    })
}

/// Every face is rotated one step by some automorphism.
pub fn has_one_step_rotations(m: &MapOnGraph, aut: &PermGroup) -> bool {
    m.faces().iter().all(|f| shunt_of(aut, f.vertices()).is_some())
}

/// `(Φ·α)^i = (Φ^i)·α` for the given automorphisms, using their action on
/// incident triples.
pub fn equivariance_holds(m: &MapOnGraph, autos: &[Permutation]) -> Result<bool> {
    let fs = FlagSystem::new(m)?;
    for p in autos {
        let Some(img) = fs.flag_action(m, p) else {
            return Ok(false);
        };
        for x in 0..fs.len() {
            for i in 0..3 {
                if fs.adj[i][img[x]] != img[fs.adj[i][x]] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Isomorphism of maps via their flag systems.
pub fn maps_isomorphic(m1: &MapOnGraph, m2: &MapOnGraph) -> Result<bool> {
    if m1.face_lengths() != m2.face_lengths() || m1.graph().vertex_count() != m2.graph().vertex_count() {
        return Ok(false);
    }
    let a = FlagSystem::new(m1)?;
    let b = FlagSystem::new(m2)?;
    Ok((0..b.len()).any(|t| extend(&a, &b, 0, t).is_some()))
}

/// Keeps one map from each isomorphism class, in input order.
pub fn dedupe_isomorphic(maps: Vec<MapOnGraph>) -> Result<Vec<MapOnGraph>> {
    let mut out: Vec<MapOnGraph> = Vec::new();
    for m in maps {
        let mut fresh = true;
        for kept in &out {
            if maps_isomorphic(kept, &m)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            out.push(m);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub schema: String,
    pub graph: String,
    pub faces: Vec<Vec<String>>,
    pub class: Option<String>,
    #[serde(rename = "type")]
    pub map_type: String,
    #[serde(rename = "V")]
    pub vertices: usize,
    #[serde(rename = "E")]
    pub edges: usize,
    #[serde(rename = "F")]
    pub faces_count: usize,
    pub euler: i64,
    pub orientable: bool,
}

impl MapOnGraph {
    pub fn to_json(&self, class: Option<&MapClass>) -> Result<MapJson> {
        let inv = map_invariants(self)?;
        let g = self.graph();
        Ok(MapJson {
            schema: crate::SCHEMA.to_string(),
            graph: g.params().map_or_else(|| "G".into(), |p| p.to_string()),
            faces: self.faces.iter().map(|f| f.vertices().iter().map(|&v| g.name(v).to_string()).collect()).collect(),
            class: class.map(MapClass::to_string),
            map_type: inv.map_type,
            vertices: inv.vertices,
            edges: inv.edges,
            faces_count: inv.faces,
            euler: inv.euler,
            orientable: inv.orientable,
        })
    }

    /// Flag-system dump: the three involutions as image arrays.
    pub fn flag_dump(&self) -> Result<serde_json::Value> {
        let fs = FlagSystem::new(self)?;
        Ok(serde_json::json!({
            "schema": crate::SCHEMA,
            "s0": fs.adj[0],
            "s1": fs.adj[1],
            "s2": fs.adj[2],
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_rose_window, relabel_family, FamilyTag, RoseWindowParams};
    use crate::search::automorphism_group;

    fn tetrahedron() -> MapOnGraph {
        let g = LabeledGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let faces = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]].iter().map(|f| Cycle::new(f.to_vec()).unwrap());
        MapOnGraph::new(Arc::new(g), faces).unwrap()
    }

    fn cube() -> MapOnGraph {
        let edges: Vec<(usize, usize)> =
            (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b)))).filter(|&(u, v)| u < v).collect();
        let g = LabeledGraph::from_edges(8, &edges).unwrap();
        let faces = [[0, 1, 3, 2], [4, 5, 7, 6], [0, 1, 5, 4], [2, 3, 7, 6], [0, 2, 6, 4], [1, 3, 7, 5]]
            .iter()
            .map(|f| Cycle::new(f.to_vec()).unwrap());
        MapOnGraph::new(Arc::new(g), faces).unwrap()
    }

    /// The {4,8} map on K_{4,4} = R_4(2,1): 4-faces (u_i,u_{i+1},v_i,v_{i+1})
    /// and the two 8-faces (u_0..u_3, v_0..v_3) and (u_0..u_3 with v swapped in alternately).
    fn k44_map() -> MapOnGraph {
        let g = build_rose_window(RoseWindowParams::new(4, 2, 1).unwrap()).unwrap();
        let rl = relabel_family(&g, FamilyTag::FamilyI).unwrap();
        let mut faces = Vec::new();
        for i in 0..4 {
            faces.push(Cycle::new(vec![rl.u(i), rl.u(i + 1), rl.v(i), rl.v(i + 1)]).unwrap());
        }
        let long1: Vec<usize> = (0..4).map(|i| rl.u(i)).chain((0..4).map(|i| rl.v(i))).collect();
        let long2 = vec![rl.u(0), rl.v(1), rl.u(2), rl.v(3), rl.v(0), rl.u(1), rl.v(2), rl.u(3)];
        faces.push(Cycle::new(long1).unwrap());
        faces.push(Cycle::new(long2).unwrap());
        MapOnGraph::new(Arc::new(g), faces).unwrap()
    }

    #[test]
    fn tetrahedron_fixture() {
        let m = tetrahedron();
        let fs = FlagSystem::new(&m).unwrap();
        assert_eq!(fs.len(), 24);
        fs.check_axioms().unwrap();
        let aut = map_automorphisms(&m, Parallelism::default()).unwrap();
        assert_eq!(aut.order(), 24);
        assert_eq!(classify(&m, &aut).unwrap(), MapClass::Reflexible);
        let inv = map_invariants(&m).unwrap();
        assert_eq!((inv.vertices, inv.edges, inv.faces, inv.euler), (4, 6, 4, 2));
        assert!(inv.orientable);
        let petrial = petrie_dual(&m).unwrap();
        assert_eq!(petrial.distinct_face_lengths(), vec![4]);
        assert_eq!(petrial.faces().len(), 3);
        assert!(maps_isomorphic(&petrie_dual(&petrial).unwrap(), &m).unwrap());
    }

    #[test]
    fn cube_fixture() {
        let m = cube();
        let aut = map_automorphisms(&m, Parallelism::Sequential).unwrap();
        assert_eq!(aut.order(), 48);
        assert_eq!(classify(&m, &aut).unwrap(), MapClass::Reflexible);
        assert_eq!(map_invariants(&m).unwrap().map_type, "{4, 3}");
        let full = automorphism_group(m.graph()).unwrap().to_perm_group(1 << 10).unwrap();
        let filtered = map_automorphisms_filtered(&m, &full, Parallelism::default()).unwrap();
        assert_eq!(filtered.elements(), aut.group.elements());
    }

    #[test]
    fn k44_map_is_two_orbit_01() {
        let m = k44_map();
        let fs = FlagSystem::new(&m).unwrap();
        assert_eq!(fs.len(), 64);
        fs.check_axioms().unwrap();
        let aut = map_automorphisms(&m, Parallelism::default()).unwrap();
        assert_eq!(aut.order(), 32);
        let class = classify(&m, &aut).unwrap();
        assert_eq!(class, MapClass::two_orbit(&[0, 1]));
        assert_eq!(class.to_string(), "2_{0,1}");
        let inv = map_invariants(&m).unwrap();
        assert_eq!((inv.vertices, inv.edges, inv.faces, inv.euler), (8, 16, 6, -2));
        assert_eq!(inv.map_type, "{4 over 8, 4}");
        let classes = face_classes(&m, &aut.group);
        assert!(faces_alternate(&m, &classes).unwrap());
        assert!(no_shared_consecutive_edges(&m).unwrap());
        assert!(faces_are_symmetric_consistent(&m, &aut.group));
        let gens: Vec<Permutation> = aut.group.generators().to_vec();
        assert!(equivariance_holds(&m, &gens).unwrap());
        for v in 0..8 {
            assert!(aut.group.stabilizer(v).unwrap().is_klein_four());
        }
    }

    #[test]
    fn rejects_bad_face_sets() {
        let g = Arc::new(build_rose_window(RoseWindowParams::new(4, 2, 1).unwrap()).unwrap());
        let rl = relabel_family(&g, FamilyTag::FamilyI).unwrap();
        let quads: Vec<Cycle> =
            (0..4).map(|i| Cycle::new(vec![rl.u(i), rl.u(i + 1), rl.v(i), rl.v(i + 1)]).unwrap()).collect();
        // one copy of the 4-cycle orbit covers each edge once
        assert!(matches!(MapOnGraph::new(Arc::clone(&g), quads.clone()), Err(Error::NotAMap(_))));
        let not_cycle = Cycle::new(vec![0, 1, 2]).unwrap();
        assert!(matches!(MapOnGraph::new(g, vec![not_cycle]), Err(Error::NotAMap(_))));
    }

    #[test]
    fn rejects_split_umbrella() {
        // two theta graphs glued at vertex 0: a double cover whose faces
        // close into two separate umbrellas there
        let edges = [(0, 1), (0, 2), (1, 5), (5, 2), (1, 6), (6, 2), (0, 3), (0, 4), (3, 7), (7, 4), (3, 8), (8, 4)];
        let g = Arc::new(LabeledGraph::from_edges(9, &edges).unwrap());
        let faces = [
            vec![0, 1, 5, 2],
            vec![0, 1, 6, 2],
            vec![1, 5, 2, 6],
            vec![0, 3, 7, 4],
            vec![0, 3, 8, 4],
            vec![3, 7, 4, 8],
        ];
        let faces = faces.into_iter().map(|f| Cycle::new(f).unwrap());
        assert!(matches!(MapOnGraph::new(g, faces), Err(Error::NotSurface(_))));
    }

    #[test]
    fn petrial_of_two_orbit_map() {
        let m = k44_map();
        let p = petrie_polygons(&m).unwrap();
        let total: usize = p.iter().map(Vec::len).sum();
        assert_eq!(total, 2 * m.graph().edge_count());
        if let Ok(pm) = petrie_dual(&m) {
            let back = petrie_dual(&pm).unwrap();
            assert!(maps_isomorphic(&back, &m).unwrap());
            let aut = map_automorphisms(&pm, Parallelism::default()).unwrap();
            assert_eq!(classify(&pm, &aut).unwrap(), MapClass::two_orbit(&[1]));
        }
    }

    #[test]
    fn json_and_dump() {
        let m = k44_map();
        let aut = map_automorphisms(&m, Parallelism::default()).unwrap();
        let class = classify(&m, &aut).unwrap();
        let j = serde_json::to_value(m.to_json(Some(&class)).unwrap()).unwrap();
        assert_eq!(j["class"], "2_{0,1}");
        assert_eq!(j["V"], 8);
        assert_eq!(j["type"], "{4 over 8, 4}");
        let d = m.flag_dump().unwrap();
        assert_eq!(d["s0"].as_array().unwrap().len(), 64);
    }
}
