//! Tree partitions of a triangulation versus Hamilton cycles of its dual.
//!
//! A partition `{S, T}` of `V(G)` has both sides inducing trees iff the dual
//! edges of the cut `E(S, T)` form a Hamilton cycle of `G*`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::embed::{DualGraph, EmbeddedGraph, TriPartition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::treesplit::{self, EdgePartition, FaceSparsePartition, TreePartition};

/// Default budget of partial paths for [`enumerate_hamilton`].
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

/// Hamilton cycle as a cyclic vertex order. Canonical form: lowest vertex
/// first, then its lower neighbour on the cycle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HamiltonCycle {
    pub vertices: Vec<Vertex>,
}

impl HamiltonCycle {
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        if vertices.len() < 3 {
            return HamiltonCycle { vertices };
        }
        let k = vertices.len();
        let i = (0..k).min_by_key(|&i| vertices[i]).unwrap();
        vertices.rotate_left(i);
        if vertices[k - 1] < vertices[1] {
            vertices[1..].reverse();
        }
        HamiltonCycle { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges `(a, b)` with `a < b`, in cycle order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    pub fn edge_set(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.edges().into_iter().collect()
    }

    pub fn contains_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edges().contains(&(a.min(b), a.max(b)))
    }
}

/// Checks that `h` visits every vertex of `g` once along edges of `g`.
pub fn verify_hamilton(g: &Graph, h: &HamiltonCycle) -> std::result::Result<(), String> {
    let k = h.vertices.len();
    if k < 3 {
        return Err(format!("cycle of length {k}"));
    }
    let distinct: BTreeSet<Vertex> = h.vertices.iter().copied().collect();
    if distinct.len() != k {
        return Err("a vertex is visited twice".into());
    }
    if distinct != g.vertex_set() {
        return Err(format!("visits {k} of {} vertices or foreign ones", g.vertex_count()));
    }
    if let Some((a, b)) = h.edges().into_iter().find(|&(a, b)| !g.has_edge(a, b)) {
        return Err(format!("{a} and {b} are not adjacent"));
    }
    Ok(())
}

/// Orders an edge set in which every vertex has degree 2 into one cycle,
/// or `None` if it is not a single cycle through all of `vertices`.
fn cycle_from_edges(vertices: &BTreeSet<Vertex>, edges: &[(Vertex, Vertex)]) -> Option<HamiltonCycle> {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.len() != vertices.len() || adj.values().any(|n| n.len() != 2) {
        return None;
    }
    let start = *vertices.iter().next()?;
    let mut order = vec![start];
    let (mut prev, mut cur) = (start, adj[&start][0]);
    while cur != start {
        order.push(cur);
        let n = &adj[&cur];
        let next = if n[0] == prev { n[1] } else { n[0] };
        prev = cur;
        cur = next;
    }
    (order.len() == vertices.len()).then(|| HamiltonCycle::new(order))
}

/// Dual Hamilton cycle of a tree partition.
pub fn stein_forward(g: &EmbeddedGraph, p: &TreePartition) -> Result<HamiltonCycle> {
    stein_forward_with(g, &g.dual()?, p)
}

pub fn stein_forward_with(g: &EmbeddedGraph, dual: &DualGraph, p: &TreePartition) -> Result<HamiltonCycle> {
    treesplit::verify_tree_partition(&g.to_graph(), p).map_err(Error::NotTreePartition)?;
    let cut: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| p.s.contains(&u) != p.s.contains(&v))
        .map(|(u, v)| dual.dual_edge(u, v).unwrap())
        .collect();
    let h = cycle_from_edges(&dual.graph.to_graph().vertex_set(), &cut)
        .ok_or_else(|| Error::Internal("cut of a tree partition is not a dual Hamilton cycle".into()))?;
    Ok(h)
}

/// Tree partition read off a dual Hamilton cycle: the primal edges crossed
/// by the cycle are removed and the two remaining components are the sides,
/// `S` holding vertex 0.
pub fn stein_backward(g: &EmbeddedGraph, h: &HamiltonCycle) -> Result<TreePartition> {
    stein_backward_with(g, &g.dual()?, h)
}

pub fn stein_backward_with(g: &EmbeddedGraph, dual: &DualGraph, h: &HamiltonCycle) -> Result<TreePartition> {
    verify_hamilton(&dual.graph.to_graph(), h).map_err(Error::NotHamilton)?;
    let mut rest = g.to_graph();
    for (f, k) in h.edges() {
        let (u, v) = dual.primal_edge(f, k).unwrap();
        rest.remove_edge(u, v);
    }
    let comps = rest.components();
    if comps.len() != 2 {
        return Err(Error::Internal(format!("cycle leaves {} primal components", comps.len())));
    }
    let (s, t) = if comps[0].contains(&0) { (comps[0].clone(), comps[1].clone()) } else { (comps[1].clone(), comps[0].clone()) };
    let p = TreePartition { s, t };
    treesplit::verify_tree_partition(&g.to_graph(), &p).map_err(Error::Internal)?;
    Ok(p)
}

/// All Hamilton cycles of `g` in canonical form, sorted. Each partial path
/// counts against `cap`.
pub fn enumerate_hamilton(g: &Graph, cap: u64) -> Result<Vec<HamiltonCycle>> {
    let verts: Vec<Vertex> = g.vertices().collect();
    let n = verts.len();
    if n < 3 {
        return Ok(Vec::new());
    }
    let index: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = verts.iter().map(|&v| g.neighbors(v).map(|w| index[&w]).collect()).collect();
    struct Dfs<'a> {
        adj: &'a [Vec<usize>],
        on_path: Vec<bool>,
        path: Vec<usize>,
        states: u64,
        cap: u64,
        out: Vec<Vec<usize>>,
    }
    impl Dfs<'_> {
        fn go(&mut self) -> Result<()> {
            self.states += 1;
            if self.states > self.cap {
                return Err(Error::CapExceeded(self.cap));
            }
            let n = self.adj.len();
            let last = *self.path.last().unwrap();
            if self.path.len() == n {
                // each cycle is found in both directions; keep one
                if self.adj[last].contains(&0) && self.path[1] < last {
                    self.out.push(self.path.clone());
                }
                return Ok(());
            }
            for i in 0..self.adj[last].len() {
                let w = self.adj[last][i];
                if !self.on_path[w] {
                    self.on_path[w] = true;
                    self.path.push(w);
                    self.go()?;
                    self.path.pop();
                    self.on_path[w] = false;
                }
            }
            Ok(())
        }
    }
    let mut dfs = Dfs { adj: &adj, on_path: vec![false; n], path: vec![0], states: 0, cap, out: Vec::new() };
    dfs.on_path[0] = true;
    dfs.go()?;
    let mut cycles: Vec<HamiltonCycle> =
        dfs.out.into_iter().map(|p| HamiltonCycle::new(p.into_iter().map(|i| verts[i]).collect())).collect();
    cycles.sort();
    Ok(cycles)
}

/// Boundary edges of every face of an embedded graph.
fn face_edge_lists(g: &EmbeddedGraph) -> Vec<Vec<(Vertex, Vertex)>> {
    g.trace_faces().faces.iter().map(|f| f.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()).collect()
}

/// For any two edges on one face, some Hamilton cycle contains the first
/// and avoids the second.
pub fn check_h_plus_minus(g: &EmbeddedGraph, cap: u64) -> Result<bool> {
    let cycles: Vec<BTreeSet<(Vertex, Vertex)>> =
        enumerate_hamilton(&g.to_graph(), cap)?.iter().map(HamiltonCycle::edge_set).collect();
    for face in face_edge_lists(g) {
        for &e in &face {
            for &f in &face {
                if e != f && !cycles.iter().any(|c| c.contains(&e) && !c.contains(&f)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// For any two edges of one face whose positions along the boundary differ
/// by an even number, some Hamilton cycle avoids both.
pub fn check_h_minus_minus(g: &EmbeddedGraph, cap: u64) -> Result<bool> {
    let cycles: Vec<BTreeSet<(Vertex, Vertex)>> =
        enumerate_hamilton(&g.to_graph(), cap)?.iter().map(HamiltonCycle::edge_set).collect();
    for face in face_edge_lists(g) {
        for i in 0..face.len() {
            for j in (i + 2..face.len()).step_by(2) {
                let (e, f) = (face[i], face[j]);
                if !cycles.iter().any(|c| !c.contains(&e) && !c.contains(&f)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AvoidancePattern {
    EverySecond,
    AtMostTwo,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceAvoidance {
    /// Primal vertex surrounded by the face.
    pub vertex: Vertex,
    pub face_size: usize,
    pub avoided: Vec<(usize, usize)>,
    pub pattern: AvoidancePattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceReport {
    pub faces: Vec<FaceAvoidance>,
}

impl AvoidanceReport {
    pub fn violations(&self) -> impl Iterator<Item = &FaceAvoidance> {
        self.faces.iter().filter(|f| f.pattern == AvoidancePattern::Violation)
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// Avoidance pattern of `h` on the dual faces around the `B_3` vertices.
pub fn avoidance_report(g: &EmbeddedGraph, dual: &DualGraph, tp: &TriPartition, h: &HamiltonCycle) -> Result<AvoidanceReport> {
    let hyp = treesplit::hypothesis(g, tp)?;
    let used = h.edge_set();
    let faces = hyp
        .b(3)
        .iter()
        .map(|&v| {
            let boundary = dual.face_edges_around(v);
            let k = boundary.len();
            let mask: Vec<bool> = boundary.iter().map(|e| !used.contains(e)).collect();
            let avoided: Vec<(usize, usize)> = boundary.iter().zip(&mask).filter(|p| *p.1).map(|p| *p.0).collect();
            let alternating = k % 2 == 0 && (0..k).all(|i| mask[i] != mask[(i + 1) % k]);
            let pattern = if alternating {
                AvoidancePattern::EverySecond
            } else if avoided.len() <= 2 {
                AvoidancePattern::AtMostTwo
            } else {
                AvoidancePattern::Violation
            };
            FaceAvoidance { vertex: v, face_size: k, avoided, pattern }
        })
        .collect();
    Ok(AvoidanceReport { faces })
}

#[derive(Debug, Clone, Serialize)]
pub struct AvoidingCycle {
    pub cycle: HamiltonCycle,
    pub avoided: (usize, usize),
    /// `(v, w)` with `v ∈ B_3`.
    pub primal_edge: (Vertex, Vertex),
    pub construction: EdgePartition,
}

/// Hamilton cycle of `G*` avoiding the dual edge `e`, which must lie on the
/// face around a `B_3` vertex.
pub fn hamilton_avoiding_edge(g: &EmbeddedGraph, tp: &TriPartition, e: (usize, usize)) -> Result<AvoidingCycle> {
    let dual = g.dual()?;
    let (p, q) = dual
        .primal_edge(e.0, e.1)
        .ok_or_else(|| Error::Precondition(format!("{e:?} is not a dual edge")))?;
    let hyp = treesplit::hypothesis(g, tp)?;
    let (v, w) = if hyp.b(3).contains(&p) {
        (p, q)
    } else if hyp.b(3).contains(&q) {
        (q, p)
    } else {
        return Err(Error::Precondition(format!("{e:?} is not on a class-3 face of size at least 6")));
    };
    let construction = treesplit::edge_pinned_partition_with(g, tp, v, w)?;
    let cycle = stein_forward_with(g, &dual, &construction.partition)?;
    verify_hamilton(&dual.graph.to_graph(), &cycle).map_err(Error::Internal)?;
    let avoided = (e.0.min(e.1), e.0.max(e.1));
    if cycle.contains_edge(avoided.0, avoided.1) {
        return Err(Error::Internal("cycle uses the avoided edge".into()));
    }
    Ok(AvoidingCycle { cycle, avoided, primal_edge: (v, w), construction })
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceSparseCycle {
    pub cycle: HamiltonCycle,
    pub report: AvoidanceReport,
    pub construction: FaceSparsePartition,
}

/// Hamilton cycle of `G*` avoiding every second edge, or at most two edges,
/// of each face around a `B_3` vertex.
pub fn hamilton_face_sparse(g: &EmbeddedGraph, tp: &TriPartition) -> Result<FaceSparseCycle> {
    let dual = g.dual()?;
    let construction = treesplit::face_sparse_partition_with(g, tp)?;
    let cycle = stein_forward_with(g, &dual, &construction.partition)?;
    verify_hamilton(&dual.graph.to_graph(), &cycle).map_err(Error::Internal)?;
    let report = avoidance_report(g, &dual, tp, &cycle)?;
    Ok(FaceSparseCycle { cycle, report, construction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::gen_bipyramid;

    #[test]
    fn canonical_form() {
        assert_eq!(HamiltonCycle::new(vec![3, 1, 2, 0]).vertices, vec![0, 2, 1, 3]);
        assert_eq!(HamiltonCycle::new(vec![2, 0, 3, 1]).vertices, vec![0, 2, 1, 3]);
    }

    #[test]
    fn octahedron_round_trip() {
        let o = gen_bipyramid(2).unwrap();
        // poles 0, 5; equator 1, 2, 3, 4
        let p = TreePartition { s: [0, 1, 3].into(), t: [2, 4, 5].into() };
        let h = stein_forward(&o, &p).unwrap();
        assert_eq!(h.len(), 8);
        assert_eq!(stein_backward(&o, &h).unwrap(), p);
    }

    #[test]
    fn cyclic_side_is_rejected() {
        let o = gen_bipyramid(2).unwrap();
        let p = TreePartition { s: [0, 1, 2].into(), t: [3, 4, 5].into() };
        assert!(matches!(stein_forward(&o, &p), Err(Error::NotTreePartition(_))));
    }

    #[test]
    fn short_walk_is_not_hamilton() {
        let o = gen_bipyramid(2).unwrap();
        let d = o.dual().unwrap();
        let f = d.dual_faces.vertices(0);
        assert!(matches!(stein_backward(&o, &HamiltonCycle::new(f)), Err(Error::NotHamilton(_))));
    }

    #[test]
    fn tree_has_no_cycles() {
        assert!(enumerate_hamilton(&Graph::path(5), 100).unwrap().is_empty());
    }

    #[test]
    fn cap_is_reported() {
        let k = Graph::from_edges((0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))));
        assert_eq!(enumerate_hamilton(&k, 10), Err(Error::CapExceeded(10)));
    }

    #[test]
    fn hexagonal_bipyramid_avoiding_apex_edge() {
        let g = gen_bipyramid(3).unwrap();
        // permute classes so that the apexes form B_3
        let tp = g.tri_partition().unwrap();
        let tp = tp.permuted([3, 1, 2]);
        let d = g.dual().unwrap();
        let e = d.dual_edge(0, 1).unwrap();
        let out = hamilton_avoiding_edge(&g, &tp, e).unwrap();
        assert!(!out.cycle.contains_edge(e.0, e.1));
        assert_eq!(out.cycle.len(), 12);
    }
}
