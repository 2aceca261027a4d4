//! Plane-embedded graphs given by rotation systems.
//!
//! Each vertex carries the clockwise cyclic order of its neighbours. Faces are
//! traced with a single fixed rule: the dart following `(u, v)` is `(v, w)`
//! where `w` is the neighbour immediately after `u` in the rotation at `v`.
//! The embedding lives on the sphere, so no face is distinguished as outer.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Directed edge `(tail, head)`.
pub type Dart = (Vertex, Vertex);

/// Wire format shared by every tool: `{"n": .., "rotation": [[..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub rotation: Vec<Vec<Vertex>>,
}

impl GraphJson {
    /// Abstract graph view; checks symmetry and simplicity but not planarity.
    pub fn to_graph(&self) -> Result<Graph> {
        check_rotation(self.n, &self.rotation)?;
        let mut g = Graph::new();
        for (u, nbrs) in self.rotation.iter().enumerate() {
            g.add_vertex(u);
            for &v in nbrs {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }
}

fn check_rotation(n: usize, rotation: &[Vec<Vertex>]) -> Result<()> {
    if n == 0 || rotation.len() != n {
        return Err(Error::EmptyGraph);
    }
    let sets: Vec<BTreeSet<Vertex>> = rotation.iter().map(|r| r.iter().copied().collect()).collect();
    for (u, r) in rotation.iter().enumerate() {
        if sets[u].len() != r.len() || sets[u].contains(&u) {
            return Err(Error::MultiEdgeOrLoop(u));
        }
        for &v in r {
            if v >= n {
                return Err(Error::VertexOutOfRange(u, v));
            }
            if !sets[v].contains(&u) {
                return Err(Error::AsymmetricAdjacency(u, v));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    rotation: Vec<Vec<Vertex>>,
    /// `back[u][k]` is the position of `u` in the rotation of `rotation[u][k]`.
    back: Vec<Vec<usize>>,
    euler: i64,
}

impl EmbeddedGraph {
    /// Validates a rotation system: symmetric, simple, connected, and a
    /// sphere embedding (`n - m + f = 2`).
    pub fn build(rotation: Vec<Vec<Vertex>>) -> Result<Self> {
        let n = rotation.len();
        check_rotation(n, &rotation)?;
        let back = rotation
            .iter()
            .enumerate()
            .map(|(u, r)| {
                r.iter()
                    .map(|&v| rotation[v].iter().position(|&x| x == u).unwrap())
                    .collect()
            })
            .collect();
        let mut g = EmbeddedGraph { rotation, back, euler: 0 };
        if !g.to_graph().is_connected() {
            return Err(Error::Disconnected);
        }
        let f = g.trace_faces().len() as i64;
        g.euler = n as i64 - g.edge_count() as i64 + f;
        if g.euler != 2 {
            return Err(Error::NonPlanarEmbedding(g.euler));
        }
        Ok(g)
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        if j.rotation.len() != j.n {
            return Err(Error::EmptyGraph);
        }
        Self::build(j.rotation.clone())
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { n: self.n(), rotation: self.rotation.clone() }
    }

    /// Builds the embedding from oriented triangles `(a, b, c)`, meaning `c`
    /// follows `b` in the clockwise rotation at `a` (and cyclic shifts).
    pub fn from_oriented_triangles(n: usize, faces: &[[Vertex; 3]]) -> Result<Self> {
        let mut succ: Vec<HashMap<Vertex, Vertex>> = vec![HashMap::new(); n];
        for &[a, b, c] in faces {
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                if succ[x].insert(y, z).is_some() {
                    return Err(Error::MultiEdgeOrLoop(x));
                }
            }
        }
        let mut rotation = Vec::with_capacity(n);
        for (x, s) in succ.iter().enumerate() {
            let start = *s.keys().min().ok_or(Error::EmptyGraph)?;
            let mut r = vec![start];
            let mut cur = s[&start];
            while cur != start {
                if r.len() > s.len() {
                    return Err(Error::MultiEdgeOrLoop(x));
                }
                r.push(cur);
                cur = *s.get(&cur).ok_or(Error::MultiEdgeOrLoop(x))?;
            }
            if r.len() != s.len() {
                return Err(Error::NotEvenTriangulation(format!("vertex {x} is not a disc")));
            }
            rotation.push(r);
        }
        Self::build(rotation)
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.euler
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rotation[u].contains(&v)
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (u, r) in self.rotation.iter().enumerate() {
            out.extend(r.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out.sort_unstable();
        out
    }

    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new();
        for (u, r) in self.rotation.iter().enumerate() {
            g.add_vertex(u);
            for &v in r {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Dart following `(u, v)` on its face.
    pub fn next_dart(&self, (u, v): Dart) -> Dart {
        let r = &self.rotation[v];
        let i = r.iter().position(|&x| x == u).expect("dart exists");
        (v, r[(i + 1) % r.len()])
    }

    pub fn trace_faces(&self) -> FaceSet {
        let mut face_of: HashMap<Dart, usize> = HashMap::new();
        let mut faces = Vec::new();
        if self.edge_count() == 0 {
            faces.push(Vec::new());
        }
        for (u, r) in self.rotation.iter().enumerate() {
            for &v in r {
                if face_of.contains_key(&(u, v)) {
                    continue;
                }
                let idx = faces.len();
                let mut walk = Vec::new();
                let mut d = (u, v);
                while !face_of.contains_key(&d) {
                    face_of.insert(d, idx);
                    walk.push(d);
                    d = self.next_dart(d);
                }
                faces.push(walk);
            }
        }
        FaceSet { faces, face_of }
    }

    pub fn is_even_triangulation(&self) -> bool {
        self.n() >= 4
            && self.rotation.iter().all(|r| r.len() % 2 == 0)
            && self.trace_faces().faces.iter().all(|f| f.len() == 3)
    }

    /// The two apexes of a bipyramid `C^{2l} * E^2` (`l >= 2`), lowest first.
    pub fn bipyramid_apexes(&self) -> Option<(Vertex, Vertex)> {
        let n = self.n();
        if n < 6 || n % 2 != 0 || !self.is_even_triangulation() {
            return None;
        }
        let hubs: Vec<Vertex> = (0..n).filter(|&v| self.degree(v) == n - 2).collect();
        // the octahedron has three candidate pairs; any antipodal pair works
        for (i, &p) in hubs.iter().enumerate() {
            for &q in &hubs[i + 1..] {
                if !self.has_edge(p, q) && (0..n).all(|v| v == p || v == q || self.degree(v) == 4) {
                    return Some((p, q));
                }
            }
        }
        None
    }

    /// Oriented triangles in the convention of [`Self::from_oriented_triangles`].
    pub fn oriented_triangles(&self) -> Vec<[Vertex; 3]> {
        let mut out = Vec::new();
        for (a, r) in self.rotation.iter().enumerate() {
            for k in 0..r.len() {
                let (b, c) = (r[k], r[(k + 1) % r.len()]);
                if a < b && a < c {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    /// Canonical code, equal for two connected embedded graphs exactly when
    /// they are isomorphic as maps up to reflection. For 3-connected planar
    /// graphs this is graph isomorphism.
    pub fn canonical_code(&self) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        // start darts at minimum-degree vertices only: an invariant choice
        let dmin = self.rotation.iter().map(|r| r.len()).min().unwrap_or(0);
        for v in (0..self.n()).filter(|&v| self.rotation[v].len() == dmin) {
            for i in 0..self.rotation[v].len() {
                for forward in [true, false] {
                    if let Some(code) = self.code_from(v, i, forward, best.as_deref()) {
                        best = Some(code);
                    }
                }
            }
        }
        best.unwrap_or_else(|| vec![self.n()])
    }

    /// BFS code starting at dart `rotation[v0][i0]`; `None` if it is not
    /// smaller than `best`.
    fn code_from(&self, v0: Vertex, i0: usize, forward: bool, best: Option<&[usize]>) -> Option<Vec<usize>> {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut ref_pos = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        label[v0] = 1;
        ref_pos[v0] = i0;
        order.push(v0);
        let mut next_label = 2;
        let mut code = Vec::with_capacity(2 * self.edge_count() + n);
        let mut smaller = best.is_none();
        let emit = |code: &mut Vec<usize>, x: usize, smaller: &mut bool| -> bool {
            if !*smaller {
                let b = best.unwrap();
                let pos = code.len();
                match b.get(pos) {
                    Some(&bx) if x > bx => return false,
                    Some(&bx) if x < bx => *smaller = true,
                    None => return false,
                    _ => {}
                }
            }
            code.push(x);
            true
        };
        let mut qi = 0;
        while qi < order.len() {
            let u = order[qi];
            qi += 1;
            let r = &self.rotation[u];
            let d = r.len();
            for k in 0..d {
                let idx = if forward { (ref_pos[u] + k) % d } else { (ref_pos[u] + d - k) % d };
                let w = r[idx];
                if label[w] == usize::MAX {
                    label[w] = next_label;
                    next_label += 1;
                    ref_pos[w] = self.back[u][idx];
                    order.push(w);
                }
                if !emit(&mut code, label[w], &mut smaller) {
                    return None;
                }
            }
            if !emit(&mut code, 0, &mut smaller) {
                return None;
            }
        }
        if smaller {
            Some(code)
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &EmbeddedGraph) -> bool {
        self.n() == other.n()
            && self.edge_count() == other.edge_count()
            && self.canonical_code() == other.canonical_code()
    }

    /// Dual graph. Fails with [`Error::NonSimpleDual`] when faces meet in a
    /// loop or along more than one edge (never for triangulations with n >= 4).
    pub fn dual(&self) -> Result<DualGraph> {
        let faces = self.trace_faces();
        let mut rotation = Vec::with_capacity(faces.len());
        for (fi, walk) in faces.faces.iter().enumerate() {
            let r: Vec<usize> = walk.iter().map(|&(u, v)| faces.face_of[&(v, u)]).collect();
            let distinct: BTreeSet<_> = r.iter().collect();
            if distinct.len() != r.len() || distinct.contains(&fi) {
                return Err(Error::NonSimpleDual);
            }
            rotation.push(r);
        }
        let graph = EmbeddedGraph::build(rotation)?;
        let mut edge_map = BTreeMap::new();
        for (u, v) in self.edges() {
            let (f, g) = (faces.face_of[&(u, v)], faces.face_of[&(v, u)]);
            edge_map.insert((u, v), (f.min(g), f.max(g)));
        }
        let dual_edge_to_primal: BTreeMap<(usize, usize), (Vertex, Vertex)> =
            edge_map.iter().map(|(&p, &d)| (d, p)).collect();
        let dual_faces = graph.trace_faces();
        let mut face_vertex = Vec::with_capacity(dual_faces.len());
        for walk in &dual_faces.faces {
            let prim: Vec<(Vertex, Vertex)> = walk
                .iter()
                .map(|&(f, g)| dual_edge_to_primal[&(f.min(g), f.max(g))])
                .collect();
            let common = prim.iter().fold(None::<BTreeSet<Vertex>>, |acc, &(a, b)| {
                let s = BTreeSet::from([a, b]);
                Some(match acc {
                    None => s,
                    Some(acc) => acc.intersection(&s).copied().collect(),
                })
            });
            let common = common.unwrap_or_default();
            if common.len() != 1 {
                return Err(Error::Internal("dual face does not surround one primal vertex".into()));
            }
            face_vertex.push(*common.iter().next().unwrap());
        }
        let mut vertex_face = vec![usize::MAX; self.n()];
        for (fi, &v) in face_vertex.iter().enumerate() {
            vertex_face[v] = fi;
        }
        if vertex_face.contains(&usize::MAX) {
            return Err(Error::Internal("primal vertex without dual face".into()));
        }
        Ok(DualGraph { graph, primal_faces: faces, dual_faces, face_vertex, vertex_face, edge_map, dual_edge_to_primal })
    }

    /// Canonical 3-colouring of an even triangulation: vertex 0 gets class 1
    /// and the first vertex of its rotation class 2; the rest is forced by
    /// propagation around triangles.
    pub fn tri_partition(&self) -> Result<TriPartition> {
        if self.n() < 4 {
            return Err(Error::NotEvenTriangulation("fewer than four vertices".into()));
        }
        let faces = self.trace_faces();
        if let Some(f) = faces.faces.iter().find(|f| f.len() != 3) {
            return Err(Error::NotEvenTriangulation(format!("face of length {}", f.len())));
        }
        let tris: Vec<[Vertex; 3]> = faces.faces.iter().map(|f| [f[0].0, f[1].0, f[2].0]).collect();
        let mut class = vec![0u8; self.n()];
        class[0] = 1;
        class[self.rotation[0][0]] = 2;
        let mut changed = true;
        while changed {
            changed = false;
            for t in &tris {
                let known: Vec<u8> = t.iter().map(|&v| class[v]).filter(|&c| c != 0).collect();
                if known.len() == 2 {
                    if known[0] == known[1] {
                        return Err(Error::NotEvenTriangulation("3-colouring conflict".into()));
                    }
                    let missing = 6 - known[0] - known[1];
                    let v = *t.iter().find(|&&v| class[v] == 0).unwrap();
                    class[v] = missing;
                    changed = true;
                }
            }
        }
        let tp = TriPartition { class_of: class };
        for (u, v) in self.edges() {
            if tp.class_of[u] == 0 || tp.class_of[u] == tp.class_of[v] {
                return Err(Error::NotEvenTriangulation("not properly 3-colourable".into()));
            }
        }
        Ok(tp)
    }
}

#[derive(Debug, Clone)]
pub struct FaceSet {
    pub faces: Vec<Vec<Dart>>,
    pub face_of: HashMap<Dart, usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// Boundary vertices of face `i` in walk order.
    pub fn vertices(&self, i: usize) -> Vec<Vertex> {
        self.faces[i].iter().map(|d| d.0).collect()
    }
}

#[derive(Debug, Clone)]
pub struct DualGraph {
    pub graph: EmbeddedGraph,
    pub primal_faces: FaceSet,
    pub dual_faces: FaceSet,
    /// Primal vertex surrounded by each dual face.
    pub face_vertex: Vec<Vertex>,
    /// Dual face around each primal vertex.
    pub vertex_face: Vec<usize>,
    /// Primal edge `(u, v)`, `u < v`, to dual edge `(f, g)`, `f < g`.
    pub edge_map: BTreeMap<(Vertex, Vertex), (usize, usize)>,
    pub dual_edge_to_primal: BTreeMap<(usize, usize), (Vertex, Vertex)>,
}

impl DualGraph {
    pub fn dual_edge(&self, u: Vertex, v: Vertex) -> Option<(usize, usize)> {
        self.edge_map.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn primal_edge(&self, f: usize, g: usize) -> Option<(Vertex, Vertex)> {
        self.dual_edge_to_primal.get(&(f.min(g), f.max(g))).copied()
    }

    /// Colour of each dual face: the class of the primal vertex it surrounds.
    pub fn face_coloring(&self, tp: &TriPartition) -> Vec<u8> {
        self.face_vertex.iter().map(|&v| tp.class(v)).collect()
    }

    /// Dual edges on the face around primal vertex `v`, in boundary order.
    pub fn face_edges_around(&self, v: Vertex) -> Vec<(usize, usize)> {
        self.dual_faces.faces[self.vertex_face[v]]
            .iter()
            .map(|&(f, g)| (f.min(g), f.max(g)))
            .collect()
    }
}

/// Vertex classes `1, 2, 3` of a properly 3-coloured triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriPartition {
    pub class_of: Vec<u8>,
}

impl TriPartition {
    pub fn class(&self, v: Vertex) -> u8 {
        self.class_of[v]
    }

    pub fn members(&self, class: u8) -> BTreeSet<Vertex> {
        (0..self.class_of.len()).filter(|&v| self.class_of[v] == class).collect()
    }

    /// Relabels classes: old class `i` becomes `perm[i - 1]`.
    pub fn permuted(&self, perm: [u8; 3]) -> TriPartition {
        TriPartition { class_of: self.class_of.iter().map(|&c| perm[c as usize - 1]).collect() }
    }

    pub fn all_permutations(&self) -> Vec<TriPartition> {
        const PERMS: [[u8; 3]; 6] = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
        PERMS.iter().map(|&p| self.permuted(p)).collect()
    }
}

/// Big (degree >= 6) and small (degree 4) vertices, overall and per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigSmall {
    pub big: BTreeSet<Vertex>,
    pub small: BTreeSet<Vertex>,
    by_class_big: [BTreeSet<Vertex>; 3],
    by_class_small: [BTreeSet<Vertex>; 3],
}

impl BigSmall {
    pub fn classify(g: &EmbeddedGraph, tp: &TriPartition) -> Result<Self> {
        let mut out = BigSmall {
            big: BTreeSet::new(),
            small: BTreeSet::new(),
            by_class_big: Default::default(),
            by_class_small: Default::default(),
        };
        for v in 0..g.n() {
            let c = tp.class(v) as usize - 1;
            match g.degree(v) {
                d if d < 4 => return Err(Error::DegreeBelowFour(v)),
                4 => {
                    out.small.insert(v);
                    out.by_class_small[c].insert(v);
                }
                d if d % 2 == 0 => {
                    out.big.insert(v);
                    out.by_class_big[c].insert(v);
                }
                _ => return Err(Error::NotEvenTriangulation(format!("vertex {v} has odd degree"))),
            }
        }
        Ok(out)
    }

    /// `B_i` for `i` in `1..=3`.
    pub fn b(&self, class: u8) -> &BTreeSet<Vertex> {
        &self.by_class_big[class as usize - 1]
    }

    /// `S_i` for `i` in `1..=3`.
    pub fn s(&self, class: u8) -> &BTreeSet<Vertex> {
        &self.by_class_small[class as usize - 1]
    }

    pub fn is_big(&self, v: Vertex) -> bool {
        self.big.contains(&v)
    }

    pub fn is_small(&self, v: Vertex) -> bool {
        self.small.contains(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn octahedron() -> EmbeddedGraph {
        // poles 0 and 5, equator 1-2-3-4
        EmbeddedGraph::build(vec![
            vec![1, 2, 3, 4],
            vec![0, 4, 5, 2],
            vec![0, 1, 5, 3],
            vec![0, 2, 5, 4],
            vec![0, 3, 5, 1],
            vec![1, 4, 3, 2],
        ])
        .unwrap()
    }

    fn tetrahedron() -> EmbeddedGraph {
        EmbeddedGraph::build(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]).unwrap()
    }

    fn cube() -> EmbeddedGraph {
        octahedron().dual().unwrap().graph
    }

    #[test]
    fn octahedron_euler() {
        let g = octahedron();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.trace_faces().len(), 8);
        assert_eq!(g.euler_characteristic(), 2);
    }

    #[test]
    fn square_has_two_faces() {
        let g = EmbeddedGraph::build(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        assert_eq!(g.trace_faces().sizes(), vec![4, 4]);
    }

    #[test]
    fn asymmetric_rejected() {
        let err = EmbeddedGraph::build(vec![vec![1, 2], vec![2], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::AsymmetricAdjacency(..)));
    }

    #[test]
    fn repeated_neighbour_and_loop_rejected() {
        assert!(matches!(
            EmbeddedGraph::build(vec![vec![1, 1], vec![0, 0]]).unwrap_err(),
            Error::MultiEdgeOrLoop(0)
        ));
        assert!(matches!(EmbeddedGraph::build(vec![vec![0]]).unwrap_err(), Error::MultiEdgeOrLoop(0)));
    }

    #[test]
    fn disconnected_rejected() {
        let err = EmbeddedGraph::build(vec![vec![1], vec![0], vec![3], vec![2]]).unwrap_err();
        assert_eq!(err, Error::Disconnected);
    }

    #[test]
    fn k33_rotation_is_not_planar() {
        let rot = vec![vec![3, 4, 5], vec![3, 4, 5], vec![3, 4, 5], vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]];
        assert!(matches!(EmbeddedGraph::build(rot).unwrap_err(), Error::NonPlanarEmbedding(_)));
    }

    #[test]
    fn twisted_octahedron_rotation_is_not_planar() {
        let mut rot = octahedron().rotations().to_vec();
        rot[0].swap(0, 1);
        assert!(matches!(EmbeddedGraph::build(rot).unwrap_err(), Error::NonPlanarEmbedding(_)));
    }

    #[test]
    fn cube_faces() {
        let c = cube();
        assert_eq!(c.n(), 8);
        assert_eq!(c.edge_count(), 12);
        assert_eq!(c.trace_faces().sizes(), vec![4; 6]);
        assert!((0..8).all(|v| c.degree(v) == 3));
    }

    #[test]
    fn tetrahedron_is_self_dual() {
        let t = tetrahedron();
        assert!(t.dual().unwrap().graph.is_isomorphic(&t));
    }

    #[test]
    fn double_dual_is_octahedron() {
        let o = octahedron();
        let dd = o.dual().unwrap().graph.dual().unwrap().graph;
        assert!(dd.is_isomorphic(&o));
        assert!(!cube().is_isomorphic(&o));
    }

    #[test]
    fn dual_bijections() {
        let o = octahedron();
        let d = o.dual().unwrap();
        assert_eq!(d.edge_map.len(), o.edge_count());
        assert_eq!(d.graph.edge_count(), o.edge_count());
        for v in 0..o.n() {
            assert_eq!(d.face_vertex[d.vertex_face[v]], v);
            assert_eq!(d.dual_faces.faces[d.vertex_face[v]].len(), o.degree(v));
        }
    }

    #[test]
    fn square_dual_is_not_simple() {
        let g = EmbeddedGraph::build(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        assert_eq!(g.dual().unwrap_err(), Error::NonSimpleDual);
    }

    #[test]
    fn even_triangulation_predicate() {
        assert!(octahedron().is_even_triangulation());
        assert!(!tetrahedron().is_even_triangulation());
        assert!(!cube().is_even_triangulation());
    }

    #[test]
    fn octahedron_partition_is_antipodal_pairs() {
        let tp = octahedron().tri_partition().unwrap();
        assert_eq!(tp.class(0), 1);
        assert_eq!(tp.class(1), 2);
        let mut classes: Vec<BTreeSet<Vertex>> = (1..=3).map(|c| tp.members(c)).collect();
        classes.sort();
        assert_eq!(
            classes,
            vec![BTreeSet::from([0, 5]), BTreeSet::from([1, 3]), BTreeSet::from([2, 4])]
        );
    }

    #[test]
    fn cube_has_no_tri_partition() {
        assert!(matches!(cube().tri_partition().unwrap_err(), Error::NotEvenTriangulation(_)));
    }

    #[test]
    fn octahedron_all_small() {
        let g = octahedron();
        let tp = g.tri_partition().unwrap();
        let bs = BigSmall::classify(&g, &tp).unwrap();
        assert!(bs.big.is_empty());
        assert_eq!(bs.small.len(), 6);
        for c in 1..=3 {
            assert!(bs.b(c).is_empty());
            assert_eq!(bs.s(c).len(), 2);
        }
    }

    #[test]
    fn octahedron_dual_colouring() {
        let g = octahedron();
        let tp = g.tri_partition().unwrap();
        let d = g.dual().unwrap();
        let col = d.face_coloring(&tp);
        for c in 1..=3u8 {
            assert_eq!(col.iter().filter(|&&x| x == c).count(), 2);
        }
    }

    #[test]
    fn oriented_triangle_roundtrip() {
        let o = octahedron();
        let t = o.oriented_triangles();
        assert_eq!(t.len(), 8);
        let back = EmbeddedGraph::from_oriented_triangles(6, &t).unwrap();
        assert_eq!(back.canonical_code(), o.canonical_code());
    }

    #[test]
    fn json_roundtrip() {
        let o = octahedron();
        let s = serde_json::to_string(&o.to_json()).unwrap();
        assert!(s.starts_with("{\"n\":6,\"rotation\":[[1,2,3,4]"));
        let j: GraphJson = serde_json::from_str(&s).unwrap();
        assert_eq!(EmbeddedGraph::from_json(&j).unwrap(), o);
    }
}
