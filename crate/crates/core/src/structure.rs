//! Structure of graphs whose cycles all have length divisible by four.
//!
//! Such a graph is bipartite; its two colour classes are called type α and
//! type β. The operations here decompose a 2-connected member along pairs of
//! degree-2 paths (cut pairs) down to a side in which every branch vertex
//! has the same type.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Default cap on the number of cycles inspected by exhaustive enumeration.
pub const DEFAULT_CYCLE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VType {
    Alpha,
    Beta,
}

impl VType {
    pub fn other(self) -> VType {
        match self {
            VType::Alpha => VType::Beta,
            VType::Beta => VType::Alpha,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedBipartition {
    type_of: BTreeMap<Vertex, VType>,
}

impl TypedBipartition {
    /// Types every vertex of `g`: members of `alpha` are α, the rest β.
    /// Fails if some edge joins two vertices of the same type.
    pub fn from_alpha_set(g: &Graph, alpha: &BTreeSet<Vertex>) -> Result<Self> {
        let type_of = g
            .vertices()
            .map(|v| (v, if alpha.contains(&v) { VType::Alpha } else { VType::Beta }))
            .collect();
        let bp = TypedBipartition { type_of };
        bp.validate(g)?;
        Ok(bp)
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (u, v) in g.edges() {
            match (self.type_of.get(&u), self.type_of.get(&v)) {
                (Some(a), Some(b)) if a != b => {}
                _ => return Err(Error::NotBipartite(vec![u, v])),
            }
        }
        Ok(())
    }

    pub fn type_of(&self, v: Vertex) -> VType {
        self.type_of[&v]
    }

    pub fn get(&self, v: Vertex) -> Option<VType> {
        self.type_of.get(&v).copied()
    }

    pub fn is_alpha(&self, v: Vertex) -> bool {
        self.type_of.get(&v) == Some(&VType::Alpha)
    }

    pub fn is_beta(&self, v: Vertex) -> bool {
        self.type_of.get(&v) == Some(&VType::Beta)
    }

    pub fn alpha_set(&self) -> BTreeSet<Vertex> {
        self.of_type(VType::Alpha)
    }

    pub fn beta_set(&self) -> BTreeSet<Vertex> {
        self.of_type(VType::Beta)
    }

    fn of_type(&self, t: VType) -> BTreeSet<Vertex> {
        self.type_of.iter().filter(|(_, &x)| x == t).map(|(&v, _)| v).collect()
    }

    pub fn restrict(&self, g: &Graph) -> TypedBipartition {
        TypedBipartition { type_of: g.vertices().map(|v| (v, self.type_of[&v])).collect() }
    }
}

/// Canonical typing: the lowest vertex of every component is α.
pub fn bipartition_typed(g: &Graph) -> Result<TypedBipartition> {
    let side = g.two_colour().map_err(Error::NotBipartite)?;
    let type_of = side
        .into_iter()
        .map(|(v, s)| (v, if s { VType::Beta } else { VType::Alpha }))
        .collect();
    Ok(TypedBipartition { type_of })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: BTreeSet<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Block {
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::from_edges(self.edges.iter().copied());
        for &v in &self.vertices {
            g.add_vertex(v);
        }
        g
    }

    /// 2-connected in the strict sense: at least three vertices.
    pub fn is_two_connected(&self) -> bool {
        self.vertices.len() >= 3
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.contains(&e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: BTreeSet<Vertex>,
}

impl BlockDecomposition {
    pub fn blocks_containing(&self, v: Vertex) -> impl Iterator<Item = usize> + '_ {
        (0..self.blocks.len()).filter(move |&i| self.blocks[i].vertices.contains(&v))
    }
}

/// Biconnected components (Hopcroft–Tarjan). Bridges are two-vertex blocks,
/// isolated vertices are one-vertex blocks.
pub fn blocks(g: &Graph) -> BlockDecomposition {
    struct Dfs<'a> {
        g: &'a Graph,
        time: usize,
        disc: BTreeMap<Vertex, usize>,
        low: BTreeMap<Vertex, usize>,
        stack: Vec<(Vertex, Vertex)>,
        blocks: Vec<Block>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, u: Vertex, parent: Option<Vertex>) {
            self.disc.insert(u, self.time);
            self.low.insert(u, self.time);
            self.time += 1;
            let nbrs: Vec<Vertex> = self.g.neighbors(u).collect();
            for w in nbrs {
                if !self.disc.contains_key(&w) {
                    self.stack.push((u, w));
                    self.visit(w, Some(u));
                    let lw = self.low[&w];
                    if lw < self.low[&u] {
                        self.low.insert(u, lw);
                    }
                    if lw >= self.disc[&u] {
                        let mut vertices = BTreeSet::new();
                        let mut edges = Vec::new();
                        while let Some((a, b)) = self.stack.pop() {
                            vertices.insert(a);
                            vertices.insert(b);
                            edges.push((a.min(b), a.max(b)));
                            if (a, b) == (u, w) {
                                break;
                            }
                        }
                        edges.sort_unstable();
                        self.blocks.push(Block { vertices, edges });
                    }
                } else if Some(w) != parent && self.disc[&w] < self.disc[&u] {
                    self.stack.push((u, w));
                    let dw = self.disc[&w];
                    if dw < self.low[&u] {
                        self.low.insert(u, dw);
                    }
                }
            }
        }
    }
    let mut dfs = Dfs {
        g,
        time: 0,
        disc: BTreeMap::new(),
        low: BTreeMap::new(),
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in g.vertices() {
        if !dfs.disc.contains_key(&v) {
            if g.degree(v) == 0 {
                dfs.disc.insert(v, 0);
                dfs.blocks.push(Block { vertices: BTreeSet::from([v]), edges: Vec::new() });
            } else {
                dfs.visit(v, None);
            }
        }
    }
    let mut count: BTreeMap<Vertex, usize> = BTreeMap::new();
    for b in &dfs.blocks {
        for &v in &b.vertices {
            *count.entry(v).or_default() += 1;
        }
    }
    let cut_vertices = count.into_iter().filter(|&(_, c)| c > 1).map(|(v, _)| v).collect();
    BlockDecomposition { blocks: dfs.blocks, cut_vertices }
}

pub fn is_two_connected(g: &Graph) -> bool {
    g.vertex_count() >= 3 && g.is_connected() && blocks(g).blocks.len() == 1
}

/// Calls `f` on every simple cycle of `g` exactly once (as a vertex
/// sequence starting at its lowest vertex). Returns the number of cycles
/// visited, or [`Error::CycleCapExceeded`] once more than `cap` are seen.
pub fn for_each_simple_cycle(
    g: &Graph,
    cap: u64,
    mut f: impl FnMut(&[Vertex]) -> ControlFlow<()>,
) -> Result<u64> {
    let mut seen = 0u64;
    for b in blocks(g).blocks.iter().filter(|b| b.is_two_connected()) {
        let bg = b.to_graph();
        for &s in &b.vertices {
            let mut path = vec![s];
            let mut on_path = BTreeSet::from([s]);
            // explicit DFS: stack of neighbour iterators as vectors + index
            let mut frames: Vec<(Vec<Vertex>, usize)> =
                vec![(bg.neighbors(s).filter(|&w| w > s).collect(), 0)];
            while let Some((nbrs, idx)) = frames.last_mut() {
                if *idx == nbrs.len() {
                    frames.pop();
                    let v = path.pop().unwrap();
                    on_path.remove(&v);
                    continue;
                }
                let w = nbrs[*idx];
                *idx += 1;
                if on_path.contains(&w) {
                    continue;
                }
                path.push(w);
                on_path.insert(w);
                if path.len() >= 3 && bg.has_edge(w, s) && path[1] < w {
                    seen += 1;
                    if seen > cap {
                        return Err(Error::CycleCapExceeded(cap));
                    }
                    if f(&path).is_break() {
                        return Ok(seen);
                    }
                }
                frames.push((bg.neighbors(w).filter(|&x| x > s && !on_path.contains(&x)).collect(), 0));
            }
        }
    }
    Ok(seen)
}

/// A cycle whose length is not divisible by four, or `None` when `g` belongs
/// to the family. Bipartiteness and fundamental cycles are checked first;
/// the exhaustive per-block enumeration settles the rest.
pub fn multi4_witness(g: &Graph, cap: u64) -> Result<Option<Vec<Vertex>>> {
    if let Err(odd) = g.two_colour() {
        return Ok(Some(odd));
    }
    if let Some(c) = fundamental_cycles(g).into_iter().find(|c| c.len() % 4 != 0) {
        return Ok(Some(c));
    }
    let mut witness = None;
    for_each_simple_cycle(g, cap, |c| {
        if c.len() % 4 != 0 {
            witness = Some(c.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(witness)
}

pub fn is_multi4(g: &Graph) -> Result<bool> {
    Ok(multi4_witness(g, DEFAULT_CYCLE_CAP)?.is_none())
}

/// Fundamental cycles of a BFS spanning forest.
fn fundamental_cycles(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut depth: BTreeMap<Vertex, usize> = BTreeMap::new();
    for root in g.vertices() {
        if parent.contains_key(&root) {
            continue;
        }
        parent.insert(root, root);
        depth.insert(root, 0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(w) {
                    e.insert(u);
                    depth.insert(w, depth[&u] + 1);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if parent[&u] == v || parent[&v] == u {
            continue;
        }
        let (mut a, mut b) = (u, v);
        let mut left = vec![a];
        let mut right = vec![b];
        while a != b {
            if depth[&a] >= depth[&b] {
                a = parent[&a];
                left.push(a);
            } else {
                b = parent[&b];
                right.push(b);
            }
        }
        right.pop();
        left.extend(right.into_iter().rev());
        out.push(left);
    }
    out
}

/// A path given by its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathRec {
    pub vertices: Vec<Vertex>,
}

/// What `G - Int P` removes: the single edge of a length-1 path, otherwise
/// the inner vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Interior {
    Edge(Vertex, Vertex),
    Vertices(BTreeSet<Vertex>),
}

impl PathRec {
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Precondition("path needs at least one edge".into()));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::Precondition("path repeats a vertex".into()));
        }
        if let Some(w) = vertices.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(Error::Precondition(format!("{} and {} are not adjacent", w[0], w[1])));
        }
        Ok(PathRec { vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 2
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn ends(&self) -> (Vertex, Vertex) {
        (self.first(), self.last())
    }

    pub fn inner(&self) -> &[Vertex] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn interior(&self) -> Interior {
        if self.len() == 1 {
            Interior::Edge(self.first(), self.last())
        } else {
            Interior::Vertices(self.inner().iter().copied().collect())
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn reversed(&self) -> PathRec {
        let mut v = self.vertices.clone();
        v.reverse();
        PathRec { vertices: v }
    }

    pub fn remove_interior_from(&self, g: &mut Graph) {
        match self.interior() {
            Interior::Edge(u, v) => {
                g.remove_edge(u, v);
            }
            Interior::Vertices(s) => s.into_iter().for_each(|v| g.remove_vertex(v)),
        }
    }

    pub fn as_graph(&self) -> Graph {
        Graph::from_edges(self.edges())
    }
}

/// Condition (a) of a cutting pair: inner vertices of degree 2, ends of
/// different types and degree at least 3.
pub fn check_condition_a(g: &Graph, bp: &TypedBipartition, p: &PathRec) -> std::result::Result<(), String> {
    if let Some(w) = p.vertices.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        return Err(format!("{}-{} is not an edge", w[0], w[1]));
    }
    if let Some(&v) = p.inner().iter().find(|&&v| g.degree(v) != 2) {
        return Err(format!("inner vertex {v} has degree {}", g.degree(v)));
    }
    let (x, y) = p.ends();
    if bp.type_of(x) == bp.type_of(y) {
        return Err(format!("ends {x} and {y} have the same type"));
    }
    for e in [x, y] {
        if g.degree(e) < 3 {
            return Err(format!("end {e} has degree {}", g.degree(e)));
        }
    }
    Ok(())
}

/// For a C-path `p` of a 2-connected subgraph `c`, are
/// the ends of `p` of the same type?
pub fn cpath_type_check(g: &Graph, bp: &TypedBipartition, c: &Graph, p: &PathRec) -> Result<bool> {
    if !is_two_connected(c) {
        return Err(Error::NotCPath("subgraph is not 2-connected".into()));
    }
    if p.edges().any(|(u, v)| !g.has_edge(u, v)) {
        return Err(Error::NotCPath("path is not in the graph".into()));
    }
    let (x, y) = p.ends();
    if !c.contains(x) || !c.contains(y) {
        return Err(Error::NotCPath("an end lies outside the subgraph".into()));
    }
    if p.inner().iter().any(|&v| c.contains(v)) {
        return Err(Error::NotCPath("an inner vertex lies in the subgraph".into()));
    }
    if p.len() == 1 && c.has_edge(x, y) {
        return Err(Error::NotCPath("the path's edge lies in the subgraph".into()));
    }
    Ok(bp.type_of(x) == bp.type_of(y))
}

/// Ordered chain of blocks of `G - Int P` from one end of `P` to the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
    pub x: Vertex,
    pub y: Vertex,
}

impl ChainDecomposition {
    /// Attachment vertices `a_0 = x, a_1, ..., a_n, a_{n+1} = y`.
    pub fn attachments(&self) -> Vec<Vertex> {
        let mut v = vec![self.x];
        v.extend(&self.cut_vertices);
        v.push(self.y);
        v
    }

    pub fn reversed(&self) -> ChainDecomposition {
        ChainDecomposition {
            blocks: self.blocks.iter().rev().cloned().collect(),
            cut_vertices: self.cut_vertices.iter().rev().copied().collect(),
            x: self.y,
            y: self.x,
        }
    }
}

pub fn chain_decompose(g: &Graph, bp: &TypedBipartition, p: &PathRec) -> Result<ChainDecomposition> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    check_condition_a(g, bp, p).map_err(Error::PathConditionViolated)?;
    let (x, y) = p.ends();
    let mut rest = g.clone();
    p.remove_interior_from(&mut rest);
    let dec = blocks(&rest);
    // block-cut tree: block nodes 0..k, cut vertex nodes are the vertices
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
    enum Node {
        B(usize),
        C(Vertex),
    }
    let start = |v: Vertex| {
        if dec.cut_vertices.contains(&v) {
            Node::C(v)
        } else {
            Node::B(dec.blocks_containing(v).next().expect("vertex in some block"))
        }
    };
    let (s, t) = (start(x), start(y));
    let mut prev: BTreeMap<Node, Node> = BTreeMap::from([(s, s)]);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let next: Vec<Node> = match u {
            Node::B(i) => dec.blocks[i]
                .vertices
                .iter()
                .filter(|v| dec.cut_vertices.contains(v))
                .map(|&v| Node::C(v))
                .collect(),
            Node::C(v) => dec.blocks_containing(v).map(Node::B).collect(),
        };
        for w in next {
            if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(w) {
                e.insert(u);
                queue.push_back(w);
            }
        }
    }
    if !prev.contains_key(&t) {
        return Err(Error::Precondition("ends of the path are disconnected after removal".into()));
    }
    let mut seq = vec![t];
    while *seq.last().unwrap() != s {
        seq.push(prev[seq.last().unwrap()]);
    }
    seq.reverse();
    let chain_blocks: Vec<Block> = seq
        .iter()
        .filter_map(|n| if let Node::B(i) = n { Some(dec.blocks[*i].clone()) } else { None })
        .collect();
    let cut_vertices: Vec<Vertex> = seq
        .iter()
        .filter_map(|n| if let Node::C(v) = n { Some(*v) } else { None })
        .filter(|&v| v != x && v != y)
        .collect();
    let chain = ChainDecomposition { blocks: chain_blocks, cut_vertices, x, y };
    if chain.blocks.len() != dec.blocks.len()
        || chain.cut_vertices.len() + 1 != chain.blocks.len()
        || !chain.blocks[0].is_two_connected()
        || !chain.blocks.last().unwrap().is_two_connected()
    {
        return Err(Error::Precondition(
            "G - Int P is not a chain of blocks with 2-connected ends (graph outside the family?)".into(),
        ));
    }
    Ok(chain)
}

/// Every 4-cycle as `[a, b, c, d]` (cycle `a b c d a`), each listed once.
pub fn four_cycles(g: &Graph) -> Vec<[Vertex; 4]> {
    let mut out = Vec::new();
    let vs: Vec<Vertex> = g.vertices().collect();
    for (i, &a) in vs.iter().enumerate() {
        for &c in &vs[i + 1..] {
            let common: Vec<Vertex> = g.neighbor_set(a).intersection(g.neighbor_set(c)).copied().collect();
            for (j, &b) in common.iter().enumerate() {
                for &d in &common[j + 1..] {
                    // each 4-cycle has two diagonals; keep the one with the smallest vertex
                    if a.min(c) < b.min(d) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// A 4-cycle with two adjacent vertices of degree at least 3, if any.
pub fn heavy_4cycle_witness(g: &Graph) -> Option<[Vertex; 4]> {
    four_cycles(g)
        .into_iter()
        .find(|c| (0..4).any(|i| g.degree(c[i]) >= 3 && g.degree(c[(i + 1) % 4]) >= 3))
}

/// True iff no 4-cycle of `g` has two adjacent vertices of degree >= 3.
pub fn heavy_4cycle_check(g: &Graph, _bp: &TypedBipartition) -> bool {
    heavy_4cycle_witness(g).is_none()
}

/// Maximal paths whose inner vertices have degree 2 and whose distinct ends
/// have degree at least 3.
pub fn threads(g: &Graph) -> Vec<PathRec> {
    let mut out = BTreeSet::new();
    for u in g.vertices().filter(|&u| g.degree(u) >= 3) {
        for first in g.neighbors(u) {
            let mut seq = vec![u, first];
            let mut cur = first;
            let mut prev = u;
            while g.degree(cur) == 2 {
                let next = g.neighbors(cur).find(|&w| w != prev).unwrap();
                prev = cur;
                cur = next;
                if cur == u {
                    break;
                }
                seq.push(cur);
            }
            if cur == u || g.degree(cur) < 3 || seq.last() == Some(&u) {
                continue;
            }
            if seq.first() > seq.last() || (seq.first() == seq.last()) {
                seq.reverse();
            }
            out.insert(PathRec { vertices: seq });
        }
    }
    out.into_iter().collect()
}

/// All paths satisfying condition (a) of a cutting pair.
pub fn condition_a_paths(g: &Graph, bp: &TypedBipartition) -> Vec<PathRec> {
    threads(g).into_iter().filter(|p| check_condition_a(g, bp, p).is_ok()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutPair {
    pub p: PathRec,
    pub q: PathRec,
    /// Component of `G - (Int P ∪ Int Q)` containing the first vertex of `p`.
    pub side_c: BTreeSet<Vertex>,
    pub side_d: BTreeSet<Vertex>,
}

impl CutPair {
    /// The component graph for one side (edges of `G - (Int P ∪ Int Q)`).
    pub fn side_graph(&self, g: &Graph, side: &BTreeSet<Vertex>) -> Graph {
        self.remainder(g).induced(side)
    }

    pub fn remainder(&self, g: &Graph) -> Graph {
        let mut rest = g.clone();
        self.p.remove_interior_from(&mut rest);
        self.q.remove_interior_from(&mut rest);
        rest
    }
}

/// Full check that `(p, q)` cuts `g`; returns the two determined sides.
pub fn check_cut_pair(
    g: &Graph,
    bp: &TypedBipartition,
    p: &PathRec,
    q: &PathRec,
) -> std::result::Result<CutPair, String> {
    check_condition_a(g, bp, p).map_err(|e| format!("P: {e}"))?;
    check_condition_a(g, bp, q).map_err(|e| format!("Q: {e}"))?;
    let pv: BTreeSet<_> = p.vertices.iter().collect();
    if q.vertices.iter().any(|v| pv.contains(v)) {
        return Err("paths are not disjoint".into());
    }
    let mut cp = CutPair { p: p.clone(), q: q.clone(), side_c: BTreeSet::new(), side_d: BTreeSet::new() };
    let rest = cp.remainder(g);
    let comps = rest.components();
    if comps.len() != 2 {
        return Err(format!("removal leaves {} components", comps.len()));
    }
    let (px, py) = p.ends();
    let (qx, qy) = q.ends();
    let (c, d) = if comps[0].contains(&px) { (&comps[0], &comps[1]) } else { (&comps[1], &comps[0]) };
    for side in [c, d] {
        let pe: Vec<Vertex> = [px, py].into_iter().filter(|v| side.contains(v)).collect();
        let qe: Vec<Vertex> = [qx, qy].into_iter().filter(|v| side.contains(v)).collect();
        if pe.len() != 1 || qe.len() != 1 {
            return Err("a side does not hold exactly one end of each path".into());
        }
        if bp.type_of(pe[0]) != bp.type_of(qe[0]) {
            return Err("ends in a side have different types".into());
        }
    }
    cp.side_c = c.clone();
    cp.side_d = d.clone();
    Ok(cp)
}

/// Given `p` satisfying condition (a) and a 2-connected block `b` of
/// `G - Int P`, finds `q` such that `(p, q)` cuts `g` with `b` inside one
/// side. `q` is read off the chain of blocks: scanning from the end whose
/// type differs from `b`'s attachment type, take the first branch
/// attachment of that type and the last branch attachment before it.
pub fn find_cut_pair(g: &Graph, bp: &TypedBipartition, p: &PathRec, b: &Block) -> Result<CutPair> {
    let chain = chain_decompose(g, bp, p)?;
    let l = chain
        .blocks
        .iter()
        .position(|blk| blk == b)
        .filter(|&i| chain.blocks[i].is_two_connected())
        .ok_or(Error::NoSuchBlock)?;
    let att = chain.attachments();
    // block l sits between att[l] and att[l + 1]
    let target = bp.type_of(att[l]);
    if bp.type_of(att[l + 1]) != target {
        return Err(Error::Internal("2-connected block attached by vertices of different types".into()));
    }
    let (att, l) = if bp.type_of(chain.x) != target {
        (att, l)
    } else {
        let mut r = att.clone();
        r.reverse();
        let nb = chain.blocks.len();
        (r, nb - 1 - l)
    };
    let n = att.len() - 2;
    let k = (1..=n)
        .find(|&k| g.degree(att[k]) >= 3 && bp.type_of(att[k]) == target)
        .ok_or_else(|| Error::Internal("no attachment of the target type".into()))?;
    if k > l {
        return Err(Error::Internal("scan passed the block".into()));
    }
    let j = (1..k)
        .rev()
        .find(|&j| g.degree(att[j]) >= 3)
        .ok_or_else(|| Error::Internal("no branch attachment before the target".into()))?;
    let q = PathRec { vertices: att[j..=k].to_vec() };
    let cp = check_cut_pair(g, bp, p, &q).map_err(|e| Error::Internal(format!("constructed pair does not cut: {e}")))?;
    if !b.vertices.is_subset(&cp.side_c) && !b.vertices.is_subset(&cp.side_d) {
        return Err(Error::Internal("block is split between the sides".into()));
    }
    Ok(cp)
}

/// A cut pair together with one of its determined sides that is minimal by
/// inclusion among all determined sides of `g` (smallest size, then lowest
/// minimum vertex). Every branch vertex of that side has a single type.
pub fn minimal_determined_side(g: &Graph, bp: &TypedBipartition) -> Result<(CutPair, BTreeSet<Vertex>)> {
    let paths = condition_a_paths(g, bp);
    if paths.is_empty() {
        return Err(Error::NoCutPath);
    }
    let mut best: Option<(CutPair, BTreeSet<Vertex>)> = None;
    let key = |s: &BTreeSet<Vertex>| (s.len(), s.iter().next().copied());
    for (i, p) in paths.iter().enumerate() {
        for q in &paths[i + 1..] {
            let Ok(cp) = check_cut_pair(g, bp, p, q) else { continue };
            for side in [&cp.side_c, &cp.side_d] {
                if best.as_ref().is_none_or(|(_, s)| key(side) < key(s)) {
                    best = Some((cp.clone(), side.clone()));
                }
            }
        }
    }
    best.ok_or_else(|| Error::Internal("condition-(a) paths exist but no pair cuts the graph".into()))
}

/// Branch vertices (degree >= 3 in `g`) of `side`, grouped by type.
pub fn branch_types(g: &Graph, bp: &TypedBipartition, side: &BTreeSet<Vertex>) -> BTreeSet<VType> {
    side.iter().filter(|&&v| g.degree(v) >= 3).map(|&v| bp.type_of(v)).collect()
}
