//! Graph automorphisms by individualization and colour refinement.
//!
//! The full group is never listed. It is described by a stabilizer chain
//! whose orbits are found by tuple-mapping searches, which is enough to get
//! the order and to answer "is there an automorphism sending this tuple to
//! that one", the only query the cycle census needs.

use crate::error::{Error, Result};
use crate::graph::{vertex_cap, LabeledGraph};
use crate::perm::{orbit_under, PermGroup, Permutation, Symmetry};

type Colors = Vec<u32>;

fn color_count(c: &[u32]) -> usize {
    c.iter().map(|&x| x as usize + 1).max().unwrap_or(0)
}

fn keys(g: &LabeledGraph, c: &[u32]) -> Vec<Vec<u32>> {
    (0..c.len())
        .map(|v| {
            let mut k = Vec::with_capacity(g.degree(v) + 1);
            k.push(c[v]);
            let start = k.len();
            k.extend(g.neighbors(v).iter().map(|&w| c[w]));
            k[start..].sort_unstable();
            k
        })
        .collect()
}

/// Refines both colourings in lock-step. Returns false as soon as the two
/// sides stop looking alike, in which case no automorphism can map one
/// coloured graph onto the other.
fn refine_pair(g: &LabeledGraph, left: &mut Colors, right: &mut Colors) -> bool {
    loop {
        let before = color_count(left);
        let kl = keys(g, left);
        let kr = keys(g, right);
        let mut sl = kl.clone();
        let mut sr = kr.clone();
        sl.sort_unstable();
        sr.sort_unstable();
        if sl != sr {
            return false;
        }
        sl.dedup();
        for (c, k) in left.iter_mut().zip(&kl) {
            *c = sl.binary_search(k).expect("key present") as u32;
        }
        for (c, k) in right.iter_mut().zip(&kr) {
            *c = sl.binary_search(k).expect("key present") as u32;
        }
        if sl.len() == before {
            return true;
        }
    }
}

fn refine(g: &LabeledGraph, c: &mut Colors) {
    let mut other = c.clone();
    refine_pair(g, c, &mut other);
}

fn individualize(c: &mut Colors, v: usize) {
    c[v] = color_count(c) as u32;
}

/// Smallest non-singleton colour class, lowest colour on ties.
fn target_cell(c: &[u32]) -> Option<u32> {
    let mut counts = vec![0usize; color_count(c)];
    for &x in c {
        counts[x as usize] += 1;
    }
    counts.iter().enumerate().filter(|&(_, &k)| k > 1).min_by_key(|&(i, &k)| (k, i)).map(|(i, _)| i as u32)
}

fn cell_members(c: &[u32], color: u32) -> Vec<usize> {
    (0..c.len()).filter(|&v| c[v] == color).collect()
}

fn dfs(g: &LabeledGraph, left: &Colors, right: &Colors) -> Option<Permutation> {
    let Some(cell) = target_cell(left) else {
        let mut by_color = vec![0usize; left.len()];
        for (w, &c) in right.iter().enumerate() {
            by_color[c as usize] = w;
        }
        let images: Vec<usize> = left.iter().map(|&c| by_color[c as usize]).collect();
        let p = Permutation::from_images(images).ok()?;
        return g.is_automorphism(&p).then_some(p);
    };
    let v = cell_members(left, cell)[0];
    for w in cell_members(right, cell) {
        let mut l = left.clone();
        let mut r = right.clone();
        individualize(&mut l, v);
        individualize(&mut r, w);
        if refine_pair(g, &mut l, &mut r) {
            if let Some(p) = dfs(g, &l, &r) {
                return Some(p);
            }
        }
    }
    None
}

/// Some automorphism of `g` sending `from[i]` to `to[i]` for every `i`.
pub fn find_tuple_map(g: &LabeledGraph, from: &[usize], to: &[usize]) -> Option<Permutation> {
    let nv = g.vertex_count();
    if from.len() != to.len() || from.iter().chain(to).any(|&p| p >= nv) {
        return None;
    }
    let mut left = vec![0u32; nv];
    let mut right = vec![0u32; nv];
    if !refine_pair(g, &mut left, &mut right) {
        return None;
    }
    for (&f, &t) in from.iter().zip(to) {
        if left[f] != right[t] {
            return None;
        }
        // a repeated point must repeat in the same positions
        if from.iter().zip(to).any(|(&f2, &t2)| (f2 == f) != (t2 == t)) {
            return None;
        }
        if cell_members(&left, left[f]).len() == 1 {
            continue;
        }
        individualize(&mut left, f);
        individualize(&mut right, t);
        if !refine_pair(g, &mut left, &mut right) {
            return None;
        }
    }
    dfs(g, &left, &right)
}

/// One level of a stabilizer chain: the orbit of `base` under the pointwise
/// stabilizer of the earlier base points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLevel {
    pub base: usize,
    pub orbit: Vec<usize>,
}

/// Builds a stabilizer chain whose base starts with `prefix`.
fn build_chain(g: &LabeledGraph, prefix: &[usize]) -> (Vec<ChainLevel>, Vec<Permutation>) {
    let nv = g.vertex_count();
    let mut colors = vec![0u32; nv];
    refine(g, &mut colors);
    let mut fixed: Vec<usize> = Vec::new();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut levels = Vec::new();
    let mut pending = prefix.iter().copied();
    loop {
        let base = match pending.next() {
            Some(b) if fixed.contains(&b) => continue,
            Some(b) => b,
            None => match target_cell(&colors) {
                Some(cell) => cell_members(&colors, cell)[0],
                None => break,
            },
        };
        let mut level_gens: Vec<Permutation> =
            gens.iter().filter(|p| fixed.iter().all(|&f| p.apply(f) == f)).cloned().collect();
        let mut orbit = orbit_under(&level_gens, base);
        let mut target: Vec<usize> = fixed.clone();
        target.push(base);
        let source = target.clone();
        for q in cell_members(&colors, colors[base]) {
            if orbit.contains(&q) {
                continue;
            }
            *target.last_mut().expect("nonempty") = q;
            if let Some(p) = find_tuple_map(g, &source, &target) {
                gens.push(p.clone());
                level_gens.push(p);
                orbit = orbit_under(&level_gens, base);
            }
        }
        orbit.sort_unstable();
        levels.push(ChainLevel { base, orbit });
        fixed.push(base);
        if target_cell(&colors).is_some() {
            individualize(&mut colors, base);
            refine(g, &mut colors);
        }
    }
    (levels, gens)
}

/// The full automorphism group of a graph.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    graph: LabeledGraph,
    levels: Vec<ChainLevel>,
    generators: Vec<Permutation>,
    order: u64,
}

impl AutomorphismGroup {
    pub fn new(graph: &LabeledGraph) -> Result<AutomorphismGroup> {
        Self::with_cap(graph, vertex_cap())
    }

    pub fn with_cap(graph: &LabeledGraph, cap: usize) -> Result<AutomorphismGroup> {
        let nv = graph.vertex_count();
        if nv > cap {
            return Err(Error::VertexCap { vertices: nv, cap });
        }
        if !graph.is_connected() {
            return Err(Error::InvalidParams("graph is not connected".into()));
        }
        let (levels, generators) = build_chain(graph, &[]);
        let order = levels.iter().map(|l| l.orbit.len() as u64).product();
        Ok(AutomorphismGroup { graph: graph.clone(), levels, generators, order })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn chain(&self) -> &[ChainLevel] {
        &self.levels
    }

    fn stabilizer_order_by_chain(&self, points: &[usize]) -> u64 {
        let (levels, _) = build_chain(&self.graph, points);
        let mut distinct = points.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        levels[distinct.len().min(levels.len())..].iter().map(|l| l.orbit.len() as u64).product()
    }

    /// True when every arc stabilizer is trivial.
    pub fn is_one_regular(&self) -> bool {
        self.order == 2 * self.graph.edge_count() as u64 && verify_arc_transitivity(&self.graph, self)
    }

    /// Lists the elements, failing when there are more than `cap`.
    pub fn to_perm_group(&self, cap: usize) -> Result<PermGroup> {
        if self.order > cap as u64 {
            return Err(Error::GroupTooLarge { cap });
        }
        if self.generators.is_empty() {
            return Ok(PermGroup::trivial(self.graph.vertex_count()));
        }
        let g = PermGroup::closure_with_cap(&self.generators, cap)?;
        if g.order() != self.order {
            return Err(Error::Consistency(format!("closure has order {}, chain says {}", g.order(), self.order)));
        }
        Ok(g)
    }
}

impl Symmetry for AutomorphismGroup {
    fn degree(&self) -> usize {
        self.graph.vertex_count()
    }

    fn order(&self) -> u64 {
        self.order
    }

    fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn map_tuple(&self, from: &[usize], to: &[usize]) -> Option<Permutation> {
        find_tuple_map(&self.graph, from, to)
    }

    fn contains(&self, p: &Permutation) -> bool {
        self.graph.is_automorphism(p)
    }

    fn pointwise_stabilizer_order(&self, points: &[usize]) -> u64 {
        self.stabilizer_order_by_chain(points)
    }
}

pub fn automorphism_group(g: &LabeledGraph) -> Result<AutomorphismGroup> {
    AutomorphismGroup::new(g)
}

/// Number of orbits of `group` on the arcs of `g`.
pub fn arc_orbit_count(g: &LabeledGraph, group: &dyn Symmetry) -> usize {
    let arcs = g.arcs();
    let index = |u: usize, v: usize| -> usize {
        let e = g.edge_id(u, v).expect("arc of graph");
        2 * e + usize::from(u > v)
    };
    let mut parent: Vec<usize> = (0..arcs.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in group.generators() {
        for &(u, v) in &arcs {
            let a = find(&mut parent, index(u, v));
            let b = find(&mut parent, index(p.apply(u), p.apply(v)));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..arcs.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// True iff `group` has a single orbit on the arcs of `g`.
pub fn verify_arc_transitivity(g: &LabeledGraph, group: &dyn Symmetry) -> bool {
    g.edge_count() > 0 && arc_orbit_count(g, group) == 1
}
