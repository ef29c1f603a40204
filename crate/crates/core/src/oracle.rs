//! Brute-force search for maps of class 2_{0,1} on small graphs.
//!
//! In such a map every edge lies on exactly one face of each face orbit, so
//! each orbit is a decomposition of the edge set into cycles of one length,
//! and the setwise stabilizer of each decomposition in `Aut(Γ)` contains
//! `Aut(M)`, hence is arc-transitive. The oracle lists every such
//! decomposition by exact cover over all cycles of the graph and pairs them.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::cycles::{Cycle, CycleCensus};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::maps::{classify, dedupe_isomorphic, map_automorphisms, MapAutomorphisms, MapClass, MapOnGraph};
use crate::par::Parallelism;
use crate::perm::PermGroup;
use crate::search::automorphism_group;

/// Largest graph the oracle accepts, in vertices.
pub const DEFAULT_ORACLE_CAP: usize = 20;

/// Vertex cap of the oracle, overridable through `RWMAPS_CAP`.
pub fn oracle_cap() -> usize {
    crate::graph::cap_from_env(DEFAULT_ORACLE_CAP)
}

/// Largest number of decompositions listed for one cycle length.
pub const DEFAULT_DECOMPOSITION_CAP: usize = 1 << 20;

/// Largest `Aut(Γ)` the oracle lists element by element.
pub const DEFAULT_GROUP_CAP: usize = 1 << 22;

type EdgeMask = u128;

fn edge_mask(g: &LabeledGraph, c: &Cycle) -> EdgeMask {
    c.edges().map(|(u, v)| 1u128 << g.edge_id(u, v).expect("cycle edge")).fold(0, |m, b| m | b)
}

fn check_edge_budget(g: &LabeledGraph) -> Result<()> {
    if g.edge_count() > EdgeMask::BITS as usize {
        return Err(Error::EnumerationTooLarge { size: g.edge_count(), cap: EdgeMask::BITS as usize });
    }
    Ok(())
}

/// Every simple cycle of the given length, each once.
pub fn simple_cycles_of_length(g: &LabeledGraph, len: usize) -> Vec<Cycle> {
    fn grow(g: &LabeledGraph, len: usize, path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Cycle>) {
        let start = path[0];
        let last = *path.last().expect("nonempty");
        if path.len() == len {
            if g.adjacent(last, start) && path[1] < path[len - 1] {
                out.push(Cycle::new(path.clone()).expect("simple by construction"));
            }
            return;
        }
        for &w in g.neighbors(last) {
            if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                grow(g, len, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    if len < 3 {
        return out;
    }
    let mut on_path = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        on_path[s] = true;
        let mut path = vec![s];
        grow(g, len, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out.sort();
    out
}

/// All ways of covering every edge exactly once with cycles from `pool`.
pub fn exact_covers(g: &LabeledGraph, pool: &[Cycle], cap: usize) -> Result<Vec<Vec<Cycle>>> {
    check_edge_budget(g)?;
    let full: EdgeMask = if g.edge_count() == 128 { !0 } else { (1u128 << g.edge_count()) - 1 };
    let masks: Vec<EdgeMask> = pool.iter().map(|c| edge_mask(g, c)).collect();
    let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    for (i, &m) in masks.iter().enumerate() {
        for (e, list) in by_edge.iter_mut().enumerate() {
            if m >> e & 1 == 1 {
                list.push(i);
            }
        }
    }
    let by_mask: HashMap<EdgeMask, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    struct Search<'a> {
        masks: &'a [EdgeMask],
        by_edge: &'a [Vec<usize>],
        by_mask: &'a HashMap<EdgeMask, usize>,
        full: EdgeMask,
        cap: usize,
        found: Vec<Vec<usize>>,
    }
    impl Search<'_> {
        fn run(&mut self, covered: EdgeMask, chosen: &mut Vec<usize>) -> Result<()> {
            if covered == self.full {
                if self.found.len() >= self.cap {
                    return Err(Error::EnumerationTooLarge { size: self.found.len() + 1, cap: self.cap });
                }
                self.found.push(chosen.clone());
                return Ok(());
            }
            let rest = self.full & !covered;
            // a single cycle may close the cover
            if let Some(&i) = self.by_mask.get(&rest) {
                chosen.push(i);
                self.run(self.full, chosen)?;
                chosen.pop();
                return Ok(());
            }
            let e = rest.trailing_zeros() as usize;
            for &i in &self.by_edge[e] {
                let m = self.masks[i];
                if m & covered == 0 && m != rest {
                    chosen.push(i);
                    self.run(covered | m, chosen)?;
                    chosen.pop();
                }
            }
            Ok(())
        }
    }
    let mut s = Search { masks: &masks, by_edge: &by_edge, by_mask: &by_mask, full, cap, found: Vec::new() };
    s.run(0, &mut Vec::new())?;
    Ok(s.found
        .into_iter()
        .map(|idx| {
            let mut d: Vec<Cycle> = idx.into_iter().map(|i| pool[i].clone()).collect();
            d.sort();
            d
        })
        .collect())
}

/// The setwise stabilizer of a set of cycles is transitive on arcs.
pub fn stabilizer_is_arc_transitive(g: &LabeledGraph, aut: &PermGroup, cycles: &[Cycle]) -> bool {
    let set: HashSet<&Cycle> = cycles.iter().collect();
    let e = g.edges()[0];
    let images: HashSet<(usize, usize)> = aut
        .elements()
        .iter()
        .filter(|p| cycles.iter().all(|c| set.contains(&c.image(p))))
        .map(|p| (p.apply(e.u), p.apply(e.v)))
        .collect();
    images.len() == 2 * g.edge_count()
}

/// A map together with its automorphism group and class.
#[derive(Clone, Debug)]
pub struct ClassifiedMap {
    pub map: MapOnGraph,
    pub aut: MapAutomorphisms,
    pub class: MapClass,
}

/// Classifies a face set; `None` when it is not a map.
pub fn classify_faces(graph: &Arc<LabeledGraph>, faces: Vec<Cycle>, par: Parallelism) -> Result<Option<ClassifiedMap>> {
    let map = match MapOnGraph::new(Arc::clone(graph), faces) {
        Ok(m) => m,
        Err(Error::NotAMap(_) | Error::NotSurface(_) | Error::NonPolytopal { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let aut = map_automorphisms(&map, par)?;
    let class = classify(&map, &aut)?;
    Ok(Some(ClassifiedMap { map, aut, class }))
}

/// Pairs decompositions into maps and keeps one of each isomorphism class
/// of 2_{0,1} maps.
pub fn maps_from_decompositions(
    graph: &Arc<LabeledGraph>,
    decompositions: &[Vec<Cycle>],
    par: Parallelism,
) -> Result<Vec<ClassifiedMap>> {
    let mut decs = decompositions.to_vec();
    decs.sort();
    decs.dedup();
    let pairs: Vec<(usize, usize)> = (0..decs.len()).flat_map(|i| (i + 1..decs.len()).map(move |j| (i, j))).collect();
    let results = par.map(&pairs, |&(i, j)| {
        let faces: Vec<Cycle> = decs[i].iter().chain(&decs[j]).cloned().collect();
        classify_faces(graph, faces, Parallelism::Sequential)
    });
    let mut kept = Vec::new();
    for r in results {
        if let Some(cm) = r? {
            if cm.class.is_two_orbit_01() {
                kept.push(cm);
            }
        }
    }
    dedupe_classified(kept)
}

/// Keeps one map of each isomorphism class, in input order.
pub fn dedupe_classified(maps: Vec<ClassifiedMap>) -> Result<Vec<ClassifiedMap>> {
    let order: Vec<MapOnGraph> = maps.iter().map(|c| c.map.clone()).collect();
    let unique = dedupe_isomorphic(order)?;
    let mut out = Vec::new();
    for m in unique {
        let pos = maps.iter().position(|c| c.map == m).expect("kept map");
        out.push(maps[pos].clone());
    }
    Ok(out)
}

/// Edge decompositions with arc-transitive stabilizer built from the
/// consistent cycles of `Aut(Γ)`, orbit by orbit.
pub fn decompositions_from_census(
    graph: &LabeledGraph,
    aut: &PermGroup,
    census: &CycleCensus,
    cap: usize,
) -> Result<Vec<Vec<Cycle>>> {
    let mut out = Vec::new();
    for orbit in &census.orbits {
        let members = orbit.members.as_ref().ok_or(Error::EnumerationTooLarge {
            size: orbit.size.min(usize::MAX as u64) as usize,
            cap: crate::cycles::MEMBER_LIMIT as usize,
        })?;
        let mut pool: Vec<Cycle> = members.iter().map(|c| c.undirected()).collect();
        pool.sort();
        pool.dedup();
        for d in exact_covers(graph, &pool, cap)? {
            if stabilizer_is_arc_transitive(graph, aut, &d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Every 2_{0,1} map on a small graph, up to isomorphism.
pub fn exhaustive_oracle(graph: &LabeledGraph) -> Result<Vec<ClassifiedMap>> {
    exhaustive_oracle_with(graph, oracle_cap(), DEFAULT_DECOMPOSITION_CAP, Parallelism::default())
}

pub fn exhaustive_oracle_with(
    graph: &LabeledGraph,
    vertex_cap: usize,
    decomposition_cap: usize,
    par: Parallelism,
) -> Result<Vec<ClassifiedMap>> {
    if graph.vertex_count() > vertex_cap {
        return Err(Error::VertexCap { vertices: graph.vertex_count(), cap: vertex_cap });
    }
    check_edge_budget(graph)?;
    let aut = automorphism_group(graph)?.to_perm_group(DEFAULT_GROUP_CAP)?;
    let lengths: Vec<usize> = (3..=graph.vertex_count()).filter(|p| graph.edge_count().is_multiple_of(*p)).collect();
    let per_length = par.map(&lengths, |&p| -> Result<Vec<Vec<Cycle>>> {
        let pool = simple_cycles_of_length(graph, p);
        let covers = exact_covers(graph, &pool, decomposition_cap)?;
        Ok(covers.into_iter().filter(|d| stabilizer_is_arc_transitive(graph, &aut, d)).collect())
    });
    let mut decs = Vec::new();
    for r in per_length {
        decs.extend(r?);
    }
    let graph = Arc::new(graph.clone());
    maps_from_decompositions(&graph, &decs, par)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_rose_window, RoseWindowParams};

    fn rw(n: usize, a: i64, r: i64) -> LabeledGraph {
        build_rose_window(RoseWindowParams::new(n, a, r).unwrap()).unwrap()
    }

    #[test]
    fn cycle_counts() {
        let k4 = LabeledGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(simple_cycles_of_length(&k4, 3).len(), 4);
        assert_eq!(simple_cycles_of_length(&k4, 4).len(), 3);
        // K_{4,4}: 36 four-cycles
        assert_eq!(simple_cycles_of_length(&rw(4, 2, 1), 4).len(), 36);
    }

    #[test]
    fn exact_cover_of_k4_triangles() {
        let k4 = LabeledGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let tri = simple_cycles_of_length(&k4, 3);
        assert!(exact_covers(&k4, &tri, 10).unwrap().is_empty());
        let sq = simple_cycles_of_length(&k4, 4);
        assert!(exact_covers(&k4, &sq, 10).unwrap().is_empty());
        let err = exact_covers(&rw(4, 2, 1), &simple_cycles_of_length(&rw(4, 2, 1), 4), 2).unwrap_err();
        assert!(matches!(err, Error::EnumerationTooLarge { .. }));
    }

    #[test]
    fn small_oracle_counts() {
        assert_eq!(exhaustive_oracle(&rw(4, 2, 1)).unwrap().len(), 1);
        assert_eq!(exhaustive_oracle(&rw(5, 2, 1)).unwrap().len(), 0);
        let maps = exhaustive_oracle(&rw(6, 5, 4)).unwrap();
        let mut lengths: Vec<Vec<usize>> = maps.iter().map(|m| m.map.distinct_face_lengths()).collect();
        lengths.sort();
        assert_eq!(lengths, vec![vec![3, 4], vec![3, 6], vec![4, 6]]);
    }

    #[test]
    fn oracle_rejects_large_graphs() {
        assert!(matches!(exhaustive_oracle(&rw(11, 2, 1)), Err(Error::VertexCap { .. })));
    }
}
