//! Rose Window graphs: construction, labelled views, family recognition and
//! the explicit automorphisms used throughout the classification.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest vertex count accepted by the automorphism search.
pub const DEFAULT_VERTEX_CAP: usize = 72;

/// Environment variable that replaces the vertex caps.
pub const CAP_ENV: &str = "RWMAPS_CAP";

/// `RWMAPS_CAP` when set to a number, else `default`.
pub fn cap_from_env(default: usize) -> usize {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
}

/// Vertex cap of the automorphism search.
pub fn vertex_cap() -> usize {
    cap_from_env(DEFAULT_VERTEX_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RoseWindowParams {
    pub n: usize,
    pub a: usize,
    pub r: usize,
}

impl RoseWindowParams {
    /// Validates and reduces `a` and `r` modulo `n`.
    pub fn new(n: usize, a: i64, r: i64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("n = {n} < 3")));
        }
        let a = a.rem_euclid(n as i64) as usize;
        let r = r.rem_euclid(n as i64) as usize;
        if r == 0 {
            return Err(Error::InvalidParams("r ≡ 0 (mod n)".into()));
        }
        if 2 * r == n {
            return Err(Error::InvalidParams(format!("r = n/2 = {r}")));
        }
        Ok(RoseWindowParams { n, a, r })
    }

    /// Representative with `a ≤ n/2` and `r < n/2` under `a ↦ −a`, `r ↦ −r`.
    pub fn normalized(&self) -> RoseWindowParams {
        let n = self.n;
        RoseWindowParams { n, a: self.a.min((n - self.a) % n), r: self.r.min(n - self.r) }
    }

    /// The four sign variants `(±a, ±r)` reduced mod `n`.
    pub fn sign_variants(&self) -> [(usize, usize); 4] {
        let n = self.n;
        let na = (n - self.a) % n;
        let nr = (n - self.r) % n;
        [(self.a, self.r), (na, self.r), (self.a, nr), (na, nr)]
    }
}

impl fmt::Display for RoseWindowParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{}({},{})", self.n, self.a, self.r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Rim,
    Hub,
    #[serde(rename = "in")]
    InSpoke,
    #[serde(rename = "out")]
    OutSpoke,
    /// Edges of graphs that are not Rose Window graphs (test fixtures).
    Plain,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Rim => "rim",
            EdgeKind::Hub => "hub",
            EdgeKind::InSpoke => "in",
            EdgeKind::OutSpoke => "out",
            EdgeKind::Plain => "plain",
        }
    }

    fn color(self) -> &'static str {
        match self {
            EdgeKind::Rim => "red",
            EdgeKind::Hub => "gold",
            EdgeKind::InSpoke => "green",
            EdgeKind::OutSpoke => "blue",
            EdgeKind::Plain => "black",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
}

/// A simple graph with named vertices and tagged edges.
///
/// For Rose Window graphs `x_i` is vertex `i` and `y_i` is vertex `n + i`.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    params: Option<RoseWindowParams>,
    names: Vec<String>,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    edge_ids: HashMap<(usize, usize), usize>,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names.len() == other.names.len() && self.edge_ids == other.edge_ids
    }
}

impl LabeledGraph {
    /// A plain graph from an edge list, rejecting loops and repeated edges.
    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Result<LabeledGraph> {
        let names = (0..vertices).map(|i| i.to_string()).collect();
        let tagged: Vec<Edge> = edges.iter().map(|&(u, v)| Edge { u, v, kind: EdgeKind::Plain }).collect();
        Self::assemble(None, names, tagged)
    }

    fn assemble(params: Option<RoseWindowParams>, names: Vec<String>, edges: Vec<Edge>) -> Result<LabeledGraph> {
        let nv = names.len();
        let mut adj = vec![Vec::new(); nv];
        let mut edge_ids = HashMap::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for e in edges {
            if e.u >= nv || e.v >= nv {
                return Err(Error::InvalidParams(format!("edge {}-{} out of range", e.u, e.v)));
            }
            if e.u == e.v {
                return Err(Error::NotSimple(format!("loop at {}", names[e.u])));
            }
            let (u, v) = (e.u.min(e.v), e.u.max(e.v));
            if edge_ids.insert((u, v), normalized.len()).is_some() {
                return Err(Error::NotSimple(format!("repeated edge {}{}", names[u], names[v])));
            }
            adj[u].push(v);
            adj[v].push(u);
            normalized.push(Edge { u, v, kind: e.kind });
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(LabeledGraph { params, names, edges: normalized, adj, edge_ids })
    }

    pub fn params(&self) -> Option<RoseWindowParams> {
        self.params
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_ids.contains_key(&(u.min(v), u.max(v)))
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_ids.get(&(u.min(v), u.max(v))).copied()
    }

    /// Both orientations of every edge, in edge order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().flat_map(|e| [(e.u, e.v), (e.v, e.u)]).collect()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adj.iter().all(|a| a.len() == k)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.vertex_count() && self.edges.iter().all(|e| self.adjacent(p.apply(e.u), p.apply(e.v)))
    }

    /// `u v kind` per line, using vertex names.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for e in &self.edges {
            s.push_str(&format!("{} {} {}\n", self.names[e.u], self.names[e.v], e.kind.as_str()));
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let title = self.params.map_or_else(|| "G".to_string(), |p| p.to_string());
        let mut s = format!("graph \"{title}\" {{\n");
        for e in &self.edges {
            s.push_str(&format!(
                "  \"{}\" -- \"{}\" [color={}, label=\"{}\"];\n",
                self.names[e.u],
                self.names[e.v],
                e.kind.color(),
                e.kind.as_str()
            ));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> GraphJson {
        let p = self.params.unwrap_or(RoseWindowParams { n: 0, a: 0, r: 0 });
        GraphJson {
            schema: crate::SCHEMA.to_string(),
            n: p.n,
            a: p.a,
            r: p.r,
            vertices: self.names.clone(),
            edges: self.edges.iter().map(|e| (e.u, e.v, e.kind)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub schema: String,
    pub n: usize,
    pub a: usize,
    pub r: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize, EdgeKind)>,
}

#[inline]
pub fn x(n: usize, i: i64) -> usize {
    i.rem_euclid(n as i64) as usize
}

#[inline]
pub fn y(n: usize, i: i64) -> usize {
    n + i.rem_euclid(n as i64) as usize
}

/// Builds `R_n(a, r)`: rim `x_i x_{i+1}`, hub `y_i y_{i+r}`, in-spoke `x_i y_i`
/// and out-spoke `x_i y_{i−a}`.
pub fn build_rose_window(p: RoseWindowParams) -> Result<LabeledGraph> {
    let p = RoseWindowParams::new(p.n, p.a as i64, p.r as i64)?;
    let n = p.n;
    let mut names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    names.extend((0..n).map(|i| format!("y{i}")));
    let (a, r) = (p.a as i64, p.r as i64);
    let mut edges = Vec::with_capacity(4 * n);
    for i in 0..n as i64 {
        edges.push(Edge { u: x(n, i), v: x(n, i + 1), kind: EdgeKind::Rim });
    }
    for i in 0..n as i64 {
        edges.push(Edge { u: y(n, i), v: y(n, i + r), kind: EdgeKind::Hub });
    }
    for i in 0..n as i64 {
        edges.push(Edge { u: x(n, i), v: y(n, i), kind: EdgeKind::InSpoke });
    }
    for i in 0..n as i64 {
        edges.push(Edge { u: x(n, i), v: y(n, i - a), kind: EdgeKind::OutSpoke });
    }
    LabeledGraph::assemble(Some(p), names, edges)
}

/// Arc-transitive family of a Rose Window graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum FamilyTag {
    /// `R_n(2,1)`.
    #[serde(rename = "i")]
    FamilyI,
    /// `R_{2m}(m−2, m−1)`.
    #[serde(rename = "ii")]
    FamilyII { m: usize },
    /// `R_{2m}(2b, r)` with `b² ≡ ±1 (mod m)`.
    #[serde(rename = "iii")]
    FamilyIII { m: usize, b: usize, r: usize },
    /// `R_{12m}(3d+2, 9d+1)` with `d ∈ {m, 11m}`.
    #[serde(rename = "iv")]
    FamilyIV { m: usize, d: usize },
    #[serde(rename = "none")]
    NotArcTransitive,
}

impl FamilyTag {
    pub fn label(&self) -> &'static str {
        match self {
            FamilyTag::FamilyI => "i",
            FamilyTag::FamilyII { .. } => "ii",
            FamilyTag::FamilyIII { .. } => "iii",
            FamilyTag::FamilyIV { .. } => "iv",
            FamilyTag::NotArcTransitive => "none",
        }
    }

    fn priority(&self) -> u8 {
        match self {
            FamilyTag::FamilyI => 0,
            FamilyTag::FamilyII { .. } => 1,
            FamilyTag::FamilyIII { .. } => 2,
            FamilyTag::FamilyIV { .. } => 3,
            FamilyTag::NotArcTransitive => 4,
        }
    }

    /// Parameters of the representative graph the family constructions use.
    pub fn canonical_params(&self, n: usize) -> Option<RoseWindowParams> {
        let p = match *self {
            FamilyTag::FamilyI => RoseWindowParams::new(n, 2, 1),
            FamilyTag::FamilyII { m } => RoseWindowParams::new(2 * m, m as i64 + 2, m as i64 + 1),
            FamilyTag::FamilyIII { m, b, r } => RoseWindowParams::new(2 * m, 2 * b as i64, r as i64),
            FamilyTag::FamilyIV { m: _, d } => RoseWindowParams::new(n, 3 * d as i64 + 2, 9 * d as i64 + 1),
            FamilyTag::NotArcTransitive => return None,
        };
        p.ok()
    }
}

/// All family patterns matched by some sign variant, plus the canonical tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recognition {
    pub canonical: FamilyTag,
    pub matches: Vec<FamilyTag>,
}

pub fn recognize_all(p: RoseWindowParams) -> Recognition {
    let n = p.n;
    let mut matches: Vec<FamilyTag> = Vec::new();
    let mut push = |t: FamilyTag| {
        if !matches.contains(&t) {
            matches.push(t);
        }
    };
    let variants = p.sign_variants();
    if variants.iter().any(|&(a, r)| a == 2 % n && r == 1) {
        push(FamilyTag::FamilyI);
    }
    if n.is_multiple_of(2) && n / 2 >= 3 {
        let m = n / 2;
        if variants.iter().any(|&(a, r)| a == m - 2 && r == m - 1) {
            push(FamilyTag::FamilyII { m });
        }
        let mut best: Option<(usize, usize)> = None;
        for &(a, r) in &variants {
            let r_ok = r == 1 || (m.is_multiple_of(2) && r == m - 1);
            if a % 2 != 0 || !r_ok {
                continue;
            }
            let b = (a / 2) % m;
            let sq = (b * b) % m;
            if sq == 1 % m || sq == m - 1 {
                let b = b.min(m - b);
                let cand = (b, r);
                if best.is_none_or(|cur| cand < cur) {
                    best = Some(cand);
                }
            }
        }
        if let Some((b, r)) = best {
            push(FamilyTag::FamilyIII { m, b, r });
        }
    }
    if n.is_multiple_of(12) {
        let m = n / 12;
        for &(a, r) in &variants {
            if a == 3 * m + 2 && r == 3 * m - 1 {
                push(FamilyTag::FamilyIV { m, d: m });
            }
            if a == (n - (3 * m - 2)) % n && r == 3 * m + 1 {
                push(FamilyTag::FamilyIV { m, d: 11 * m });
            }
        }
    }
    matches.sort_by_key(|t| t.priority());
    let canonical = matches.first().copied().unwrap_or(FamilyTag::NotArcTransitive);
    Recognition { canonical, matches }
}

pub fn recognize_family(p: RoseWindowParams) -> FamilyTag {
    recognize_all(p).canonical
}

/// Named vertex view of a family (i) or (ii) graph. Points are never
/// re-indexed; the view only records which point carries which label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    /// Index range of the labels, `Z_len`.
    pub len: usize,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    pub z: Vec<usize>,
}

impl Relabeling {
    pub fn u(&self, i: i64) -> usize {
        self.u[i.rem_euclid(self.len as i64) as usize]
    }
    pub fn v(&self, i: i64) -> usize {
        self.v[i.rem_euclid(self.len as i64) as usize]
    }
    pub fn w(&self, i: i64) -> usize {
        self.w[i.rem_euclid(self.len as i64) as usize]
    }
    pub fn z(&self, i: i64) -> usize {
        self.z[i.rem_euclid(self.len as i64) as usize]
    }

    /// The block `{u_i, v_i}` (family i) or `{u_i, v_i, w_i, z_i}` (family ii).
    pub fn block(&self, i: usize) -> Vec<usize> {
        let mut b = vec![self.u[i], self.v[i]];
        if !self.w.is_empty() {
            b.push(self.w[i]);
            b.push(self.z[i]);
        }
        b
    }

    /// Label such as `u3` for a point, if it has one.
    pub fn label_of(&self, point: usize) -> Option<String> {
        for (tag, arr) in [('u', &self.u), ('v', &self.v), ('w', &self.w), ('z', &self.z)] {
            if let Some(i) = arr.iter().position(|&p| p == point) {
                return Some(format!("{tag}{i}"));
            }
        }
        None
    }
}

/// Attaches the family (i) labels `u_i = x_i`, `v_i = y_{i−1}` or the
/// family (ii) labels on `R_{2n}(n+2, n+1)`.
pub fn relabel_family(g: &LabeledGraph, tag: FamilyTag) -> Result<Relabeling> {
    let p = g.params().ok_or_else(|| Error::NoRelabeling("graph without Rose Window parameters".into()))?;
    let gn = p.n;
    match tag {
        FamilyTag::FamilyI => {
            if (p.a, p.r) != (2 % gn, 1) {
                return Err(Error::NoRelabeling(format!("{p} is not R_n(2,1)")));
            }
            Ok(Relabeling {
                len: gn,
                u: (0..gn as i64).map(|i| x(gn, i)).collect(),
                v: (0..gn as i64).map(|i| y(gn, i - 1)).collect(),
                w: Vec::new(),
                z: Vec::new(),
            })
        }
        FamilyTag::FamilyII { m } => {
            let n = m;
            if gn != 2 * n || p.a != (n + 2) % gn || p.r != (n + 1) % gn {
                return Err(Error::NoRelabeling(format!("{p} is not R_{{2n}}(n+2,n+1) with n = {n}")));
            }
            let n_i = n as i64;
            let mut u = Vec::with_capacity(n);
            let mut v = Vec::with_capacity(n);
            let mut w = Vec::with_capacity(n);
            let mut z = Vec::with_capacity(n);
            for i in 0..n_i {
                u.push(if i <= n_i - 2 { x(gn, i) } else { y(gn, n_i - 2) });
                v.push(if i == 0 {
                    y(gn, 2 * n_i - 1)
                } else if i <= n_i - 2 {
                    y(gn, i - 1)
                } else {
                    x(gn, n_i - 1)
                });
                w.push(if i <= n_i - 2 { y(gn, n_i + i - 1) } else { x(gn, 2 * n_i - 1) });
                z.push(if i <= n_i - 2 { x(gn, n_i + i) } else { y(gn, 2 * n_i - 2) });
            }
            Ok(Relabeling { len: n, u, v, w, z })
        }
        other => Err(Error::NoRelabeling(format!("{other:?}"))),
    }
}

/// A permutation with the symbol it carries in reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedPermutation {
    pub name: String,
    pub perm: Permutation,
}

fn named(name: &str, perm: Permutation) -> NamedPermutation {
    NamedPermutation { name: name.to_string(), perm }
}

pub fn rho(p: RoseWindowParams) -> Permutation {
    let n = p.n;
    let mut img = vec![0usize; 2 * n];
    for i in 0..n as i64 {
        img[x(n, i)] = x(n, i + 1);
        img[y(n, i)] = y(n, i + 1);
    }
    Permutation::from_images(img).expect("rotation is a bijection")
}

/// `x_i ↔ x_{−i}`, `y_i ↔ y_{−i−a}`.
pub fn mu(p: RoseWindowParams) -> Permutation {
    let n = p.n;
    let a = p.a as i64;
    let mut img = vec![0usize; 2 * n];
    for i in 0..n as i64 {
        img[x(n, i)] = x(n, -i);
        img[y(n, i)] = y(n, -i - a);
    }
    Permutation::from_images(img).expect("reflection is a bijection")
}

/// Family (i): `σ_i` swaps `u_i` and `v_i`.
pub fn family_i_sigma(rl: &Relabeling, i: i64) -> Permutation {
    let deg = 2 * rl.len;
    Permutation::from_cycles(deg, &[vec![rl.u(i), rl.v(i)]]).expect("transposition")
}

/// Family (ii): `σ_i = (u_i,v_i)(w_i,z_i)(u_{i+1},w_{i+1})(v_{i+1},z_{i+1})`.
pub fn family_ii_sigma(rl: &Relabeling, i: i64) -> Permutation {
    let deg = 4 * rl.len;
    Permutation::from_cycles(
        deg,
        &[
            vec![rl.u(i), rl.v(i)],
            vec![rl.w(i), rl.z(i)],
            vec![rl.u(i + 1), rl.w(i + 1)],
            vec![rl.v(i + 1), rl.z(i + 1)],
        ],
    )
    .expect("disjoint transpositions")
}

/// Family (ii) twisted reflection `β`.
pub fn family_ii_beta(rl: &Relabeling) -> Permutation {
    let n = rl.len as i64;
    let mut cycles = Vec::new();
    for i in 1..=(n - 1) / 2 {
        cycles.push(vec![rl.u(i), rl.u(n - i)]);
        cycles.push(vec![rl.z(i), rl.z(n - i)]);
    }
    cycles.push(vec![rl.v(0), rl.w(0)]);
    for i in 1..n {
        cycles.push(vec![rl.v(i), rl.w(n - i)]);
    }
    Permutation::from_cycles(4 * rl.len, &cycles).expect("disjoint transpositions")
}

/// Family (iv) automorphism `σ` of `R_{12m}(3d+2, 9d+1)`.
pub fn family_iv_sigma(p: RoseWindowParams, d: usize) -> Permutation {
    let n = p.n;
    let a = p.a as i64;
    let d = d as i64;
    let mut img = vec![0usize; 2 * n];
    for i in 0..n as i64 {
        img[x(n, i)] = match i % 3 {
            0 => x(n, i),
            1 => y(n, i - 1),
            _ => y(n, i + 1 - a),
        };
        img[y(n, i)] = match i % 3 {
            0 => x(n, i + 1),
            1 => x(n, i - 1 + a),
            _ => y(n, i + 6 * d),
        };
    }
    Permutation::from_images(img).expect("sigma is a bijection")
}

/// Family (iv) extra automorphism `τ`, defined when `m ≡ 2 (mod 4)`, with `b = d+1`.
pub fn family_iv_tau(p: RoseWindowParams, d: usize) -> Permutation {
    let n = p.n;
    let b = d as i64 + 1;
    let mut img = vec![0usize; 2 * n];
    for i in 0..n as i64 {
        img[x(n, i)] = match i % 3 {
            0 => x(n, b * i),
            1 => y(n, b * i - b),
            _ => x(n, b * i + b - 1),
        };
        img[y(n, i)] = match i % 3 {
            0 => x(n, b * i + 1),
            1 => y(n, 4 + b * i - 4 * b),
            _ => y(n, b * i + b - 1),
        };
    }
    Permutation::from_images(img).expect("tau is a bijection")
}

/// The explicit generators known for each family, each verified to be an
/// automorphism of `g` before being returned.
pub fn family_generators(g: &LabeledGraph, tag: FamilyTag) -> Result<Vec<NamedPermutation>> {
    let p = g.params().ok_or_else(|| Error::InvalidParams("not a Rose Window graph".into()))?;
    let mut out = vec![named("rho", rho(p)), named("mu", mu(p))];
    let require_canonical = |tag: FamilyTag| -> Result<()> {
        if tag.canonical_params(p.n) != Some(p) {
            return Err(Error::InvalidParams(format!("{p} is not the representative graph of family {}", tag.label())));
        }
        Ok(())
    };
    match tag {
        FamilyTag::NotArcTransitive => {
            return Err(Error::InvalidParams("not arc-transitive".into()));
        }
        FamilyTag::FamilyI => {
            require_canonical(tag)?;
            let rl = relabel_family(g, tag)?;
            out.push(named("sigma0", family_i_sigma(&rl, 0)));
        }
        FamilyTag::FamilyII { .. } => {
            require_canonical(tag)?;
            let rl = relabel_family(g, tag)?;
            let s_last = family_ii_sigma(&rl, rl.len as i64 - 1);
            out.push(named("sigma0", family_ii_sigma(&rl, 0)));
            out.push(named("alpha", rho(p).then(&s_last)));
            out.push(named("beta", family_ii_beta(&rl)));
        }
        FamilyTag::FamilyIII { .. } => {}
        FamilyTag::FamilyIV { m, d } => {
            require_canonical(tag)?;
            out.push(named("sigma", family_iv_sigma(p, d)));
            if m % 4 == 2 {
                out.push(named("tau", family_iv_tau(p, d)));
            }
        }
    }
    for np in &out {
        if !g.is_automorphism(&np.perm) {
            return Err(Error::Consistency(format!("{} is not an automorphism of {p}", np.name)));
        }
    }
    Ok(out)
}

/// Looks up a generator by name.
pub fn generator<'a>(gens: &'a [NamedPermutation], name: &str) -> Option<&'a Permutation> {
    gens.iter().find(|g| g.name == name).map(|g| &g.perm)
}
