//! Partitions of even triangulations into two induced trees.
//!
//! Classes are `V_1, V_2, V_3`; `B_i` / `S_i` are the big (degree >= 6) and
//! small (degree 4) vertices of class `i`. The hypothesis graph `H` has the
//! edges between `B_3` and `B_1 ∪ B_2` on the vertex set `B_1 ∪ B_2 ∪ B_3`.
//! A fan path is a straight line of small vertices between two big ends;
//! its two flanks are the vertices adjacent to all of it.
//!
//! The pipelines colour `B_3` with no monochromatic cycle, extend the
//! colouring over fan-path interiors, turn colour classes into seeds `X, Y`
//! and complete the seeds to a tree partition by exhaustive search.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::colorizer::{self, combine, monochromatic_cycle, Colour, ColoringRequest, TwoColoring};
use crate::embed::{BigSmall, EmbeddedGraph, TriPartition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::structure::{self, PathRec, TypedBipartition, DEFAULT_CYCLE_CAP};

/// Default node budget of the tree-partition search.
pub const DEFAULT_SEARCH_NODES: u64 = 5_000_000;

#[derive(Debug, Clone)]
pub struct Hypothesis {
    pub partition: TriPartition,
    pub bigsmall: BigSmall,
    /// `H`.
    pub graph: Graph,
    /// `α = B_1 ∪ B_2`, `β = B_3`.
    pub bipartition: TypedBipartition,
    /// `B_1 -> 1`, `B_2 -> 2`.
    pub a: TwoColoring,
    /// `G[B_1 ∪ B_2 ∪ B_3]`.
    pub core: Graph,
}

impl Hypothesis {
    pub fn family_witness(&self) -> Result<Option<Vec<Vertex>>> {
        structure::multi4_witness(&self.graph, DEFAULT_CYCLE_CAP)
    }

    pub fn in_family(&self) -> Result<bool> {
        Ok(self.family_witness()?.is_none())
    }

    /// Lowest vertex of a component of `H` that is not 2-connected (fewer
    /// than three vertices or a cut vertex).
    pub fn bad_component(&self) -> Option<Vertex> {
        self.graph
            .components()
            .into_iter()
            .find(|c| !structure::is_two_connected(&self.graph.induced(c)))
            .map(|c| *c.iter().next().unwrap())
    }

    pub fn components_two_connected(&self) -> bool {
        self.bad_component().is_none()
    }

    pub fn h_degree(&self, v: Vertex) -> usize {
        self.graph.degree(v)
    }

    pub fn b(&self, class: u8) -> &BTreeSet<Vertex> {
        self.bigsmall.b(class)
    }

    pub fn s(&self, class: u8) -> &BTreeSet<Vertex> {
        self.bigsmall.s(class)
    }

    pub fn class(&self, v: Vertex) -> u8 {
        self.partition.class(v)
    }
}

pub fn hypothesis(g: &EmbeddedGraph, tp: &TriPartition) -> Result<Hypothesis> {
    if !g.is_even_triangulation() {
        return Err(Error::NotEvenTriangulation("input is not an even triangulation".into()));
    }
    let bigsmall = BigSmall::classify(g, tp)?;
    let full = g.to_graph();
    let core = full.induced(&bigsmall.big);
    let b3 = bigsmall.b(3);
    let mut graph = Graph::new();
    for &v in &bigsmall.big {
        graph.add_vertex(v);
    }
    for (u, v) in core.edges() {
        if b3.contains(&u) != b3.contains(&v) {
            graph.add_edge(u, v);
        }
    }
    let alpha: BTreeSet<Vertex> = bigsmall.b(1).union(bigsmall.b(2)).copied().collect();
    let bipartition = TypedBipartition::from_alpha_set(&graph, &alpha)?;
    let a = bigsmall
        .b(1)
        .iter()
        .map(|&v| (v, Colour::One))
        .chain(bigsmall.b(2).iter().map(|&v| (v, Colour::Two)))
        .collect();
    Ok(Hypothesis { partition: tp.clone(), bigsmall, graph, bipartition, a, core })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FanKind {
    Induced,
    CycleMinusEdge,
}

/// Straight line of small vertices between two big ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanPath {
    pub path: PathRec,
    /// The two vertices adjacent to every vertex of the path.
    pub flanks: [Vertex; 2],
    pub ends: [Vertex; 2],
    pub kind: FanKind,
}

impl FanPath {
    pub fn interior(&self) -> &[Vertex] {
        self.path.inner()
    }

    /// Vertices of the path together with its flanks.
    pub fn span(&self) -> BTreeSet<Vertex> {
        self.path.vertices.iter().chain(&self.flanks).copied().collect()
    }

    fn sort_key(&self) -> (Vertex, Vertex, Vec<Vertex>) {
        (self.ends[0], self.ends[1], self.path.vertices.clone())
    }
}

/// Walks straight through small vertices, entering `cur` from `prev` and
/// leaving by the opposite rotation neighbour, until a big vertex. `None`
/// if the walk closes up.
fn walk_straight(g: &EmbeddedGraph, bs: &BigSmall, start: Vertex, mut prev: Vertex, mut cur: Vertex) -> Option<Vec<Vertex>> {
    let mut seq = vec![cur];
    while bs.is_small(cur) {
        let r = g.rotation(cur);
        let i = r.iter().position(|&x| x == prev).unwrap();
        let next = r[(i + 2) % 4];
        if next == start || seq.contains(&next) {
            return None;
        }
        prev = cur;
        cur = next;
        seq.push(cur);
    }
    Some(seq)
}

/// All fan paths (straight lines with big ends that are induced paths or
/// induced cycles minus one edge), without the coverage check.
pub fn straight_fan_paths(g: &EmbeddedGraph, bs: &BigSmall) -> Vec<FanPath> {
    let full = g.to_graph();
    let mut found: BTreeMap<Vec<Vertex>, FanPath> = BTreeMap::new();
    for &u in &bs.small {
        let r = g.rotation(u).to_vec();
        for k in 0..2 {
            let (Some(fwd), Some(back)) = (walk_straight(g, bs, u, u, r[k]), walk_straight(g, bs, u, u, r[k + 2])) else {
                continue;
            };
            let mut seq: Vec<Vertex> = back.into_iter().rev().collect();
            seq.push(u);
            seq.extend(fwd);
            let distinct: BTreeSet<Vertex> = seq.iter().copied().collect();
            if distinct.len() != seq.len() {
                continue;
            }
            if seq[0] > seq[seq.len() - 1] {
                seq.reverse();
            }
            if found.contains_key(&seq) {
                continue;
            }
            let (a, b) = (seq[0], seq[seq.len() - 1]);
            let induced_edges = full.induced(&distinct).edge_count();
            let kind = if full.has_edge(a, b) {
                if induced_edges != seq.len() {
                    continue;
                }
                FanKind::CycleMinusEdge
            } else {
                if induced_edges != seq.len() - 1 {
                    continue;
                }
                FanKind::Induced
            };
            let common: Vec<Vertex> = full
                .neighbor_set(seq[0])
                .iter()
                .copied()
                .filter(|&c| seq.iter().all(|&p| full.has_edge(c, p)))
                .collect();
            if common.len() != 2 {
                continue;
            }
            let fp = FanPath {
                path: PathRec { vertices: seq.clone() },
                flanks: [common[0], common[1]],
                ends: [a, b],
                kind,
            };
            found.insert(seq, fp);
        }
    }
    found.into_values().collect()
}

/// Fan paths, checking that every small vertex is interior to one of them.
/// Bipyramids whose small vertices are not all covered (the octahedron)
/// report [`Error::BipyramidSpecialCase`].
pub fn fan_paths(g: &EmbeddedGraph, bs: &BigSmall) -> Result<Vec<FanPath>> {
    let paths = straight_fan_paths(g, bs);
    let covered: BTreeSet<Vertex> = paths.iter().flat_map(|p| p.interior().iter().copied()).collect();
    if let Some(&u) = bs.small.iter().find(|u| !covered.contains(u)) {
        if g.bipyramid_apexes().is_some() {
            return Err(Error::BipyramidSpecialCase);
        }
        return Err(Error::CaseUnmatched(format!("small vertex {u} lies on no fan path")));
    }
    Ok(paths)
}

/// The families driving the face-sparse extension: paths with both flanks
/// big touching `B_3`, and paths flanked by one `B_3` and one `S_3` vertex.
pub fn families_r(paths: &[FanPath], hyp: &Hypothesis) -> (Vec<FanPath>, Vec<FanPath>) {
    let bs = &hyp.bigsmall;
    let (b3, s3) = (hyp.b(3), hyp.s(3));
    let mut r = Vec::new();
    let mut r_hat = Vec::new();
    for p in paths {
        let flanks_big = p.flanks.iter().all(|&f| bs.is_big(f));
        let touches_b3 = p.flanks.iter().chain(&p.ends).any(|v| b3.contains(v));
        if flanks_big && touches_b3 {
            r.push(p.clone());
        } else if p.flanks.iter().any(|f| b3.contains(f)) && p.flanks.iter().any(|f| s3.contains(f)) {
            r_hat.push(p.clone());
        }
    }
    (r, r_hat)
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PartitionConstraint {
    pub x: BTreeSet<Vertex>,
    pub y: BTreeSet<Vertex>,
}

impl PartitionConstraint {
    /// `X = B_1 ∪ {b = 1}`, `Y = B_2 ∪ {b = 2}`.
    pub fn from_colouring(hyp: &Hypothesis, b: &TwoColoring) -> Self {
        let mut x = hyp.b(1).clone();
        let mut y = hyp.b(2).clone();
        for (&v, &c) in b {
            match c {
                Colour::One => x.insert(v),
                Colour::Two => y.insert(v),
            };
        }
        PartitionConstraint { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePartition {
    pub s: BTreeSet<Vertex>,
    pub t: BTreeSet<Vertex>,
}

impl TreePartition {
    /// The same partition with `s` holding the lowest vertex.
    pub fn normalised(&self) -> TreePartition {
        if self.t.iter().next() < self.s.iter().next() {
            TreePartition { s: self.t.clone(), t: self.s.clone() }
        } else {
            self.clone()
        }
    }

    pub fn side_of(&self, v: Vertex) -> Option<bool> {
        if self.s.contains(&v) {
            Some(true)
        } else if self.t.contains(&v) {
            Some(false)
        } else {
            None
        }
    }
}

/// Checks that `p` splits `V(g)` into two sets each inducing a tree.
pub fn verify_tree_partition(g: &Graph, p: &TreePartition) -> std::result::Result<(), String> {
    if let Some(v) = p.s.intersection(&p.t).next() {
        return Err(format!("vertex {v} lies on both sides"));
    }
    if let Some(v) = g.vertices().find(|v| !p.s.contains(v) && !p.t.contains(v)) {
        return Err(format!("vertex {v} lies on neither side"));
    }
    if p.s.len() + p.t.len() != g.vertex_count() {
        return Err("sides contain foreign vertices".into());
    }
    for (name, side) in [("S", &p.s), ("T", &p.t)] {
        let h = g.induced(side);
        if !h.is_tree() {
            return Err(match h.find_cycle() {
                Some(c) => format!("{name} contains the cycle {c:?}"),
                None => format!("{name} is empty or disconnected"),
            });
        }
    }
    Ok(())
}

/// Seeding conditions: disjoint acyclic seeds, `B_1 ⊆ X`, `B_2 ⊆ Y`,
/// `B_3 ⊆ X ∪ Y`, and each fan-path interior inside or outside `X ∪ Y`.
/// Single-vertex interiors satisfy the last condition trivially.
pub fn check_constraint(
    g: &EmbeddedGraph,
    hyp: &Hypothesis,
    fans: &[FanPath],
    c: &PartitionConstraint,
) -> std::result::Result<(), String> {
    let full = g.to_graph();
    if let Some(v) = c.x.intersection(&c.y).next() {
        return Err(format!("vertex {v} is in both seeds"));
    }
    for (name, seed) in [("X", &c.x), ("Y", &c.y)] {
        if let Some(cy) = full.induced(seed).find_cycle() {
            return Err(format!("{name} contains the cycle {cy:?}"));
        }
    }
    if !hyp.b(1).is_subset(&c.x) {
        return Err("B_1 is not inside X".into());
    }
    if !hyp.b(2).is_subset(&c.y) {
        return Err("B_2 is not inside Y".into());
    }
    if let Some(v) = hyp.b(3).iter().find(|v| !c.x.contains(v) && !c.y.contains(v)) {
        return Err(format!("B_3 vertex {v} is unseeded"));
    }
    for p in fans {
        let inside = p.interior().iter().filter(|v| c.x.contains(v) || c.y.contains(v)).count();
        if inside != 0 && inside != p.interior().len() {
            return Err(format!("fan path {:?} is partly seeded", p.path.vertices));
        }
    }
    Ok(())
}

struct RollbackUf {
    parent: Vec<usize>,
    rank: Vec<u8>,
    log: Vec<(usize, usize, bool)>,
}

impl RollbackUf {
    fn new(n: usize) -> Self {
        RollbackUf { parent: (0..n).collect(), rank: vec![0; n], log: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.rank[ra] < self.rank[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        let bumped = self.rank[ra] == self.rank[rb];
        self.parent[rb] = ra;
        if bumped {
            self.rank[ra] += 1;
        }
        self.log.push((rb, ra, bumped));
    }

    fn rollback(&mut self, mark: usize) {
        while self.log.len() > mark {
            let (child, root, bumped) = self.log.pop().unwrap();
            self.parent[child] = child;
            if bumped {
                self.rank[root] -= 1;
            }
        }
    }
}

type Accept<'a> = &'a dyn Fn(&TreePartition) -> bool;

struct Search<'a> {
    adj: Vec<Vec<usize>>,
    side: Vec<u8>,
    uf: RollbackUf,
    nodes: u64,
    max_nodes: u64,
    accept: Accept<'a>,
}

impl Search<'_> {
    fn can_place(&self, v: usize, s: u8) -> bool {
        let mut roots: Vec<usize> = Vec::with_capacity(8);
        for &w in &self.adj[v] {
            if self.side[w] == s {
                let r = self.uf.find(w);
                if roots.contains(&r) {
                    return false;
                }
                roots.push(r);
            }
        }
        true
    }

    fn place(&mut self, v: usize, s: u8) -> usize {
        let mark = self.uf.log.len();
        self.side[v] = s;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if self.side[w] == s {
                self.uf.union(v, w);
            }
        }
        mark
    }

    fn unplace(&mut self, v: usize, mark: usize) {
        self.side[v] = 0;
        self.uf.rollback(mark);
    }

    /// Every side's assigned vertices are connected through that side and
    /// unassigned vertices.
    fn connectable(&self) -> bool {
        let n = self.side.len();
        for s in [1u8, 2] {
            let Some(start) = (0..n).find(|&v| self.side[v] == s) else { continue };
            let mut seen = vec![false; n];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] && (self.side[w] == s || self.side[w] == 0) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            if (0..n).any(|v| self.side[v] == s && !seen[v]) {
                return false;
            }
        }
        true
    }

    fn run(&mut self) -> Result<Option<TreePartition>> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::CapExceeded(self.max_nodes));
        }
        let n = self.side.len();
        let mut pick: Option<(usize, usize, usize)> = None; // (options, -assigned nbrs, v)
        for v in (0..n).filter(|&v| self.side[v] == 0) {
            let opts = [1u8, 2].iter().filter(|&&s| self.can_place(v, s)).count();
            if opts == 0 {
                return Ok(None);
            }
            let assigned = self.adj[v].iter().filter(|&&w| self.side[w] != 0).count();
            let key = (opts, usize::MAX - assigned, v);
            if pick.is_none_or(|p| key < p) {
                pick = Some(key);
            }
        }
        let Some((_, _, v)) = pick else {
            let p = TreePartition {
                s: (0..n).filter(|&v| self.side[v] == 1).collect(),
                t: (0..n).filter(|&v| self.side[v] == 2).collect(),
            };
            let ok = !p.s.is_empty() && !p.t.is_empty() && self.connectable() && (self.accept)(&p);
            return Ok(ok.then_some(p));
        };
        for s in [1u8, 2] {
            if !self.can_place(v, s) {
                continue;
            }
            let mark = self.place(v, s);
            if self.connectable() {
                if let Some(p) = self.run()? {
                    return Ok(Some(p));
                }
            }
            self.unplace(v, mark);
        }
        Ok(None)
    }
}

/// Exhaustive search for a tree partition of a graph on `0..n` with
/// `x ⊆ S`, `y ⊆ T`, accepted by `accept`. `Ok(None)` means none exists.
pub fn tree_partition_search(
    g: &Graph,
    c: &PartitionConstraint,
    max_nodes: u64,
    accept: Accept<'_>,
) -> Result<Option<TreePartition>> {
    let n = g.vertex_count();
    if g.vertices().enumerate().any(|(i, v)| i != v) {
        return Err(Error::Precondition("vertices must be 0..n".into()));
    }
    let mut search = Search {
        adj: (0..n).map(|v| g.neighbors(v).collect()).collect(),
        side: vec![0; n],
        uf: RollbackUf::new(n),
        nodes: 0,
        max_nodes,
        accept,
    };
    let seeds = c.x.iter().map(|&v| (v, 1u8)).chain(c.y.iter().map(|&v| (v, 2u8)));
    let mut any = false;
    for (v, s) in seeds {
        if v >= n || search.side[v] != 0 || !search.can_place(v, s) {
            return Ok(None);
        }
        search.place(v, s);
        any = true;
    }
    if !any && n > 0 {
        search.place(0, 1);
    }
    if !search.connectable() {
        return Ok(None);
    }
    search.run()
}

/// Tree partition with `X ⊆ S` and `Y ⊆ T` for a constraint satisfying the
/// seeding conditions. On such input a solution is expected to exist, so
/// exhaustion is reported as [`Error::SearchExhausted`].
pub fn tree_partition_solve(g: &EmbeddedGraph, tp: &TriPartition, c: &PartitionConstraint) -> Result<TreePartition> {
    let hyp = hypothesis(g, tp)?;
    let fans = straight_fan_paths(g, &hyp.bigsmall);
    check_constraint(g, &hyp, &fans, c).map_err(Error::ConstraintInvalid)?;
    tree_partition_search(&g.to_graph(), c, DEFAULT_SEARCH_NODES, &|_| true)?.ok_or(Error::SearchExhausted)
}

fn solve_seeded(g: &EmbeddedGraph, hyp: &Hypothesis, c: &PartitionConstraint, accept: Accept<'_>) -> Result<(TreePartition, bool)> {
    let fans = straight_fan_paths(g, &hyp.bigsmall);
    let valid = check_constraint(g, hyp, &fans, c);
    let seeded = valid.is_ok() && hyp.bigsmall.big.len() >= 3;
    let p = tree_partition_search(&g.to_graph(), c, DEFAULT_SEARCH_NODES, accept)?.ok_or_else(|| match valid {
        Ok(()) => Error::SearchExhausted,
        Err(e) => Error::ConstraintInvalid(e),
    })?;
    Ok((p, seeded))
}

/// True iff some path from `s` to `t` in `l` is monochromatic under `col`.
pub fn monochromatic_path(l: &Graph, col: &TwoColoring, s: Vertex, t: Vertex) -> bool {
    let (Some(cs), Some(ct)) = (col.get(&s), col.get(&t)) else { return false };
    cs == ct && l.contains(s) && l.reachable(s, |v| col.get(&v) == Some(cs)).contains(&t)
}

fn colour_of_class(class: u8) -> Option<Colour> {
    match class {
        1 => Some(Colour::One),
        2 => Some(Colour::Two),
        _ => None,
    }
}

/// How the vertex `v` and the opposite corner `y` of the 4-cycle formed by
/// the flanks and ends of `P_w` sit, for the single-edge construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeCase {
    /// `v, y` are the flanks and `y ∈ B_3`.
    FlanksInB3,
    /// `v, y` are the ends and `y ∈ B_3`.
    EndsInB3,
    /// `v, y` are the ends and `y ∈ B_1 ∪ B_2`.
    EndToOuterBig,
    /// `v, y` are the flanks and `y ∈ S_3`.
    SmallFlank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeRoute {
    Bipyramid,
    BigNeighbour,
    /// `repaired`: see [`extend_for_edge`].
    Extended { case: EdgeCase, repaired: bool },
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgePartition {
    pub partition: TreePartition,
    pub route: EdgeRoute,
    pub constraint: Option<PartitionConstraint>,
    /// The seeds met every seeding condition and `G` has three big vertices.
    pub seeding_conditions_hold: bool,
}

/// Fan path through small `w` used for the single-edge construction: `v`
/// is a flank or an end, and the flanks are both big or are `v` and an
/// `S_3` vertex. Paths with `v` as a flank come first, then lowest order.
pub fn choose_path_for(paths: &[FanPath], hyp: &Hypothesis, v: Vertex, w: Vertex) -> Option<FanPath> {
    let ok = |p: &&FanPath| p.interior().contains(&w) && path_fits(p, hyp, v);
    let mut cands: Vec<&FanPath> = paths.iter().filter(ok).collect();
    cands.sort_by_key(|p| (!p.flanks.contains(&v), p.sort_key()));
    cands.first().map(|p| (*p).clone())
}

/// `v` is a flank or an end of `p`, and the flanks are both big or are `v`
/// and an `S_3` vertex.
fn path_fits(p: &FanPath, hyp: &Hypothesis, v: Vertex) -> bool {
    (p.flanks.contains(&v) || p.ends.contains(&v))
        && (p.flanks.iter().all(|&f| hyp.bigsmall.is_big(f))
            || (p.flanks.contains(&v) && p.flanks.iter().any(|f| hyp.s(3).contains(f))))
}

fn opposite(pair: [Vertex; 2], v: Vertex) -> Vertex {
    if pair[0] == v {
        pair[1]
    } else {
        pair[0]
    }
}

/// Extends `b` (on `B_3`) over the interior of `pw` (and the small flank,
/// if any) so that no cycle of the core plus the span of `pw` is
/// monochromatic and `w` gets the colour of `v`. The flag is set when the
/// prescribed colours closed a cycle and the new vertices other than `w`
/// were recoloured by exhaustive search.
pub fn extend_for_edge(
    g: &EmbeddedGraph,
    hyp: &Hypothesis,
    b: &TwoColoring,
    v: Vertex,
    w: Vertex,
    pw: &FanPath,
) -> Result<(TwoColoring, EdgeCase, bool)> {
    let full = g.to_graph();
    let (b3, s3) = (hyp.b(3), hyp.s(3));
    if !pw.interior().contains(&w) || !path_fits(pw, hyp, v) {
        return Err(Error::Precondition(format!("fan path {:?} does not fit the edge {v}-{w}", pw.path.vertices)));
    }
    let mut b0 = b.clone();
    let bv = *b.get(&v).ok_or_else(|| Error::Precondition(format!("{v} is uncoloured")))?;
    let interior = pw.interior().to_vec();
    let by_class = |u: Vertex| colour_of_class(hyp.class(u));
    let case;
    if pw.flanks.contains(&v) {
        let y = opposite(pw.flanks, v);
        if b3.contains(&y) {
            case = EdgeCase::FlanksInB3;
            if b.get(&y) != Some(&bv.flip()) {
                return Err(Error::CaseUnmatched(format!("flanks {v}, {y} are not coloured apart")));
            }
        } else if s3.contains(&y) {
            case = EdgeCase::SmallFlank;
            b0.insert(y, bv.flip());
        } else {
            return Err(Error::CaseUnmatched(format!("flank {y} is neither in B_3 nor in S_3")));
        }
        for &u in &interior {
            let c = by_class(u).ok_or_else(|| Error::CaseUnmatched(format!("interior vertex {u} is in class 3")))?;
            b0.insert(u, c);
        }
    } else {
        let y = opposite(pw.ends, v);
        let [x, z] = pw.flanks;
        if b3.contains(&y) {
            case = EdgeCase::EndsInB3;
            if b.get(&y) != Some(&bv.flip()) {
                return Err(Error::CaseUnmatched(format!("ends {v}, {y} are not coloured apart")));
            }
            for &u in &interior {
                b0.insert(u, bv);
            }
        } else if hyp.bigsmall.is_big(y) {
            case = EdgeCase::EndToOuterBig;
            let s = *interior
                .iter()
                .find(|u| s3.contains(u))
                .ok_or_else(|| Error::CaseUnmatched("no S_3 vertex inside the path".into()))?;
            let col = combine(&hyp.a, b);
            let blocked = monochromatic_path(&hyp.core, &col, x, z);
            for &u in &interior {
                b0.insert(u, bv);
            }
            if !blocked {
                let ax = *hyp.a.get(&x).ok_or_else(|| Error::CaseUnmatched(format!("flank {x} is not in B_1 ∪ B_2")))?;
                b0.insert(s, ax);
            }
        } else {
            return Err(Error::CaseUnmatched(format!("end {y} is small")));
        }
    }
    if b0.get(&w) != Some(&bv) {
        return Err(Error::ConditionViolated { step: 0, condition: 'c', detail: format!("{w} differs from {v}") });
    }
    let span = hyp.core.union(&full.induced(&pw.span()));
    let Some(c) = monochromatic_cycle(&span, &combine(&hyp.a, &b0)) else {
        return Ok((b0, case, false));
    };
    // The prescribed colours close a cycle: search the new vertices, `w` fixed.
    let fresh: Vec<Vertex> = b0.keys().copied().filter(|u| !b.contains_key(u) && *u != w).collect();
    if fresh.len() <= 16 {
        for mask in 0u32..(1 << fresh.len()) {
            let mut cand = b0.clone();
            for (k, &u) in fresh.iter().enumerate() {
                cand.insert(u, if mask >> k & 1 == 0 { Colour::One } else { Colour::Two });
            }
            if monochromatic_cycle(&span, &combine(&hyp.a, &cand)).is_none() {
                return Ok((cand, case, true));
            }
        }
    }
    Err(Error::ConditionViolated { step: 0, condition: 'b', detail: format!("monochromatic cycle {c:?}") })
}

/// Tree partition with `B_1 ⊆ S`, `B_2 ⊆ T` and both ends of the edge `vw`
/// (`v ∈ B_3`) on the side of `w`'s class, for the canonical labelling.
pub fn edge_pinned_partition(g: &EmbeddedGraph, v: Vertex, w: Vertex) -> Result<EdgePartition> {
    let tp = g.tri_partition()?;
    edge_pinned_partition_with(g, &tp, v, w)
}

pub fn edge_pinned_partition_with(g: &EmbeddedGraph, tp: &TriPartition, v: Vertex, w: Vertex) -> Result<EdgePartition> {
    let hyp = hypothesis(g, tp)?;
    if !hyp.b(3).contains(&v) {
        return Err(Error::Precondition(format!("{v} is not a big vertex of class 3")));
    }
    if !g.has_edge(v, w) {
        return Err(Error::Precondition(format!("{v} and {w} are not adjacent")));
    }
    let cw = colour_of_class(hyp.class(w)).expect("neighbour of a class-3 vertex");
    let full = g.to_graph();
    let finish = |partition: TreePartition, route, constraint, seeded| -> Result<EdgePartition> {
        verify_tree_partition(&full, &partition).map_err(Error::Internal)?;
        let want_s = cw == Colour::One;
        let ok = partition.side_of(v) == Some(want_s)
            && partition.side_of(w) == Some(want_s)
            && hyp.b(1).is_subset(&partition.s)
            && hyp.b(2).is_subset(&partition.t);
        if !ok {
            return Err(Error::Internal("partition misplaces v, w or a big vertex".into()));
        }
        Ok(EdgePartition { partition, route, constraint, seeding_conditions_hold: seeded })
    };
    if let Some((p, q)) = g.bipyramid_apexes() {
        // v is an apex; the other apex, v and w form a path, the rest of the cycle is a path
        let trio: BTreeSet<Vertex> = [p, q, w].into();
        let rest: BTreeSet<Vertex> = (0..g.n()).filter(|u| !trio.contains(u)).collect();
        let partition = if cw == Colour::One {
            TreePartition { s: trio, t: rest }
        } else {
            TreePartition { s: rest, t: trio }
        };
        return finish(partition, EdgeRoute::Bipyramid, None, false);
    }
    if let Some(cycle) = hyp.family_witness()? {
        return Err(Error::HNotInFamily(cycle));
    }
    let request = |pin| ColoringRequest {
        graph: hyp.graph.clone(),
        bipartition: hyp.bipartition.clone(),
        a: hyp.a.clone(),
        pin: Some(pin),
    };
    if hyp.bigsmall.is_big(w) {
        let b = colorizer::color_beta(&request((v, cw)))?;
        let c = PartitionConstraint::from_colouring(&hyp, &b);
        let (p, seeded) = solve_seeded(g, &hyp, &c, &|_| true)?;
        return finish(p, EdgeRoute::BigNeighbour, Some(c), seeded);
    }
    let paths = fan_paths(g, &hyp.bigsmall)?;
    let pw = choose_path_for(&paths, &hyp, v, w)
        .ok_or_else(|| Error::CaseUnmatched(format!("no fan path through {w} meets {v} as required")))?;
    let y = if pw.flanks.contains(&v) { opposite(pw.flanks, v) } else { opposite(pw.ends, v) };
    let b = if hyp.b(3).contains(&y) {
        colorizer::color_beta_4cycle(&hyp.graph, &hyp.bipartition, &hyp.a, v, y, cw)?
    } else {
        colorizer::color_beta(&request((v, cw)))?
    };
    let (b0, case, repaired) = extend_for_edge(g, &hyp, &b, v, w, &pw)?;
    let c = PartitionConstraint::from_colouring(&hyp, &b0);
    let (p, seeded) = solve_seeded(g, &hyp, &c, &|_| true)?;
    finish(p, EdgeRoute::Extended { case, repaired }, Some(c), seeded)
}

/// Position of the `B_3` vertex `v_i`, its opposite corner `y_i`, and the
/// other two corners, for one step of the face-sparse extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FaceCase {
    /// Flanks in `B_3`, both of `H`-degree >= 3.
    FlanksHeavy,
    /// Ends in `B_3`, both of `H`-degree >= 3.
    EndsHeavy,
    /// Flanks in `B_3`, both of `H`-degree 2.
    FlanksLight,
    /// Ends in `B_3`, both of `H`-degree 2.
    EndsLight,
    /// One end in `B_3`, the other in `B_1 ∪ B_2`.
    MixedEnds,
    /// Flanks `B_3` and `S_3`, the `B_3` flank of `H`-degree >= 3.
    SmallFlankHeavy,
    /// Flanks `B_3` and `S_3`, the `B_3` flank of `H`-degree 2.
    SmallFlankLight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub path: Vec<Vertex>,
    pub case: FaceCase,
    /// The prescribed colours broke a step condition and the newly coloured
    /// vertices were recoloured by exhaustive search instead.
    pub repaired: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub v: Vertex,
    pub h_degree: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceSparsePartition {
    pub partition: TreePartition,
    pub steps: Vec<StepRecord>,
    pub implications: Vec<Implication>,
    pub constraint: PartitionConstraint,
    pub seeding_conditions_hold: bool,
    /// `H` has no vertices, so nothing is constrained.
    pub vacuous: bool,
    /// The seeded solution broke an implication, and the search was rerun
    /// with the implications as an acceptance filter.
    pub enforced_by_search: bool,
}

fn classify_face_case(hyp: &Hypothesis, p: &FanPath, is_hat: bool) -> Result<(FaceCase, Vertex, Vertex, Vertex, Vertex)> {
    let b3 = hyp.b(3);
    let dh = |u| hyp.h_degree(u);
    let heavy = |u| dh(u) >= 3;
    let light = |u| dh(u) == 2;
    let unmatched = |why: &str| Error::CaseUnmatched(format!("path {:?}: {why}", p.path.vertices));
    if is_hat {
        let v = *p.flanks.iter().find(|f| b3.contains(f)).unwrap();
        let y = opposite(p.flanks, v);
        let [x, z] = p.ends;
        let case = if heavy(v) {
            FaceCase::SmallFlankHeavy
        } else if light(v) {
            FaceCase::SmallFlankLight
        } else {
            return Err(unmatched("flank has H-degree below 2"));
        };
        return Ok((case, v, y, x, z));
    }
    if b3.contains(&p.flanks[0]) || b3.contains(&p.flanks[1]) {
        let [v, y] = p.flanks;
        let [x, z] = p.ends;
        if !(b3.contains(&v) && b3.contains(&y)) {
            return Err(unmatched("only one flank in B_3"));
        }
        let case = if heavy(v) && heavy(y) {
            FaceCase::FlanksHeavy
        } else if light(v) && light(y) {
            FaceCase::FlanksLight
        } else {
            return Err(unmatched("flanks of unequal weight"));
        };
        return Ok((case, v, y, x, z));
    }
    let [x, z] = p.flanks;
    match (b3.contains(&p.ends[0]), b3.contains(&p.ends[1])) {
        (true, true) => {
            let [v, y] = p.ends;
            let case = if heavy(v) && heavy(y) {
                FaceCase::EndsHeavy
            } else if light(v) && light(y) {
                FaceCase::EndsLight
            } else {
                return Err(unmatched("ends of unequal weight"));
            };
            Ok((case, v, y, x, z))
        }
        (true, false) => Ok((FaceCase::MixedEnds, p.ends[0], p.ends[1], x, z)),
        (false, true) => Ok((FaceCase::MixedEnds, p.ends[1], p.ends[0], x, z)),
        (false, false) => Err(unmatched("no B_3 vertex among flanks and ends")),
    }
}

/// Step conditions after adding path `p`: no monochromatic cycle in `l`;
/// around every `B_3` flank or end `v` inside the span of `p`, heavy `v`
/// sees classes coloured by their own colour, and light `v` coloured `c`
/// sees at most one neighbour of colour `c`, lying in `N_c(v)`.
fn step_conditions(
    hyp: &Hypothesis,
    full: &Graph,
    l: &Graph,
    col: &TwoColoring,
    b_init: &TwoColoring,
    p: &FanPath,
) -> std::result::Result<(), (char, String)> {
    if let Some(c) = monochromatic_cycle(l, col) {
        return Err(('d', format!("monochromatic cycle {c:?}")));
    }
    let span = p.span();
    for &v in p.flanks.iter().chain(&p.ends).filter(|u| hyp.b(3).contains(u)) {
        let near: Vec<Vertex> = full.neighbors(v).filter(|u| span.contains(u)).collect();
        if hyp.h_degree(v) >= 3 {
            for &u in &near {
                if colour_of_class(hyp.class(u)) != col.get(&u).copied() {
                    return Err(('e', format!("neighbour {u} of {v} has the wrong colour")));
                }
            }
        } else if hyp.h_degree(v) == 2 {
            let c = b_init[&v];
            let same: Vec<Vertex> = near.iter().copied().filter(|u| col.get(u) == Some(&c)).collect();
            let own = colour_of_class(c.as_u8());
            if same.len() > 1 || same.iter().any(|&u| colour_of_class(hyp.class(u)) != own) {
                return Err(('f', format!("neighbours {same:?} of {v} break the at-most-one rule")));
            }
        }
    }
    Ok(())
}

/// Extends `b` (on `B_3`, satisfying the preparatory conditions) over the
/// given paths in order, returning the final colouring and a record per
/// step.
pub fn extend_for_faces(
    g: &EmbeddedGraph,
    hyp: &Hypothesis,
    b: &TwoColoring,
    r: &[FanPath],
    r_hat: &[FanPath],
) -> Result<(TwoColoring, Vec<StepRecord>)> {
    let full = g.to_graph();
    let mut ordered: Vec<(FanPath, bool)> =
        r.iter().map(|p| (p.clone(), false)).chain(r_hat.iter().map(|p| (p.clone(), true))).collect();
    ordered.sort_by_key(|(p, _)| p.sort_key());
    let mut bi = b.clone();
    let mut l = hyp.core.clone();
    let mut steps = Vec::new();
    for (i, (p, is_hat)) in ordered.iter().enumerate() {
        let step = i + 1;
        let (case, v, y, x, z) = classify_face_case(hyp, p, *is_hat)?;
        let col_prev = combine(&hyp.a, &bi);
        let a = |u: Vertex| col_prev[&u];
        let bv = a(v);
        let interior = p.interior().to_vec();
        let mut proposal: Vec<(Vertex, Colour)> = Vec::new();
        let unmatched = |why: &str| Error::CaseUnmatched(format!("step {step}: {why}"));
        let pick_in = |pred: &dyn Fn(Vertex) -> bool, why: &str| {
            interior.iter().copied().find(|&u| pred(u)).ok_or_else(|| unmatched(why))
        };
        match case {
            FaceCase::FlanksHeavy | FaceCase::SmallFlankHeavy => {
                if case == FaceCase::FlanksHeavy && a(y) == bv {
                    return Err(unmatched("heavy flanks share a colour"));
                }
                if case == FaceCase::SmallFlankHeavy {
                    proposal.push((y, bv.flip()));
                }
                for &u in &interior {
                    proposal.push((u, colour_of_class(hyp.class(u)).ok_or_else(|| unmatched("interior in class 3"))?));
                }
            }
            FaceCase::EndsHeavy => {
                if a(x) != a(z) || a(y) == bv {
                    return Err(unmatched("heavy ends precondition fails"));
                }
                proposal.extend(interior.iter().map(|&u| (u, a(x).flip())));
            }
            FaceCase::FlanksLight => {
                if a(y) != bv {
                    return Err(unmatched("light flanks differ"));
                }
                if monochromatic_path(&l, &col_prev, v, y) {
                    let c = if a(x) != bv { a(x) } else { a(z) };
                    if c == bv {
                        return Err(unmatched("both ends share the flank colour"));
                    }
                    proposal.extend(interior.iter().map(|&u| (u, c)));
                } else {
                    if a(x) != a(z) || a(x) == bv {
                        return Err(unmatched("ends do not share the opposite colour"));
                    }
                    let s = pick_in(&|u| hyp.class(u) == bv.as_u8(), "no interior vertex of the flank colour's class")?;
                    proposal.extend(interior.iter().map(|&u| (u, if u == s { bv } else { bv.flip() })));
                }
            }
            FaceCase::EndsLight => {
                if a(x) != a(z) || a(x) == bv || a(y) != bv {
                    return Err(unmatched("light ends precondition fails"));
                }
                if monochromatic_path(&l, &col_prev, x, z) {
                    proposal.extend(interior.iter().map(|&u| (u, bv)));
                } else {
                    let s = pick_in(&|u| hyp.class(u) == bv.as_u8(), "no interior vertex of the end colour's class")?;
                    proposal.extend(interior.iter().map(|&u| (u, if u == s { bv.flip() } else { bv })));
                }
            }
            FaceCase::MixedEnds => {
                if a(x) != a(z) || a(x) == a(y) {
                    return Err(unmatched("mixed ends precondition fails"));
                }
                if monochromatic_path(&l, &col_prev, x, z) {
                    proposal.extend(interior.iter().map(|&u| (u, a(y))));
                } else {
                    if bv == a(x) {
                        return Err(unmatched("end colour equals the flank colour"));
                    }
                    let s = pick_in(&|u| hyp.s(3).contains(&u), "no S_3 vertex inside the path")?;
                    proposal.extend(interior.iter().map(|&u| (u, if u == s { a(x) } else { a(y) })));
                }
            }
            FaceCase::SmallFlankLight => {
                proposal.push((y, bv));
                proposal.extend(interior.iter().map(|&u| (u, bv.flip())));
            }
        }
        let fresh: Vec<Vertex> = proposal.iter().map(|p| p.0).filter(|u| !bi.contains_key(u)).collect();
        let mut next = bi.clone();
        for (u, c) in proposal {
            next.entry(u).or_insert(c);
        }
        let l_next = l.union(&full.induced(&p.span()));
        let mut repaired = false;
        if step_conditions(hyp, &full, &l_next, &combine(&hyp.a, &next), b, p).is_err() {
            match repair(hyp, &full, &l_next, &bi, b, p, &fresh) {
                Some(fixed) => {
                    next = fixed;
                    repaired = true;
                }
                None => {
                    let (condition, detail) =
                        step_conditions(hyp, &full, &l_next, &combine(&hyp.a, &next), b, p).unwrap_err();
                    return Err(Error::ConditionViolated { step, condition, detail });
                }
            }
        }
        bi = next;
        l = l_next;
        steps.push(StepRecord { path: p.path.vertices.clone(), case, repaired });
    }
    Ok((bi, steps))
}

/// First colouring of `fresh` (in binary counting order) meeting the step
/// conditions, keeping every earlier colour.
fn repair(
    hyp: &Hypothesis,
    full: &Graph,
    l: &Graph,
    prev: &TwoColoring,
    b_init: &TwoColoring,
    p: &FanPath,
    fresh: &[Vertex],
) -> Option<TwoColoring> {
    if fresh.len() > 16 {
        return None;
    }
    for mask in 0u32..(1 << fresh.len()) {
        let mut cand = prev.clone();
        for (k, &u) in fresh.iter().enumerate() {
            cand.insert(u, if mask >> k & 1 == 0 { Colour::One } else { Colour::Two });
        }
        if step_conditions(hyp, full, l, &combine(&hyp.a, &cand), b_init, p).is_ok() {
            return Some(cand);
        }
    }
    None
}

/// For every `v ∈ B_3`: heavy `v` (H-degree >= 3) has `N_1(v) ⊆ S` and
/// `N_2(v) ⊆ T`; light `v` on side `S` (`T`) has at most two neighbours on
/// its own side, all in `N_1(v)` (`N_2(v)`).
pub fn implication_report(g: &EmbeddedGraph, hyp: &Hypothesis, p: &TreePartition) -> Vec<Implication> {
    hyp.b(3)
        .iter()
        .map(|&v| {
            let d = hyp.h_degree(v);
            let nbrs = g.rotation(v);
            let holds = if d >= 3 {
                nbrs.iter().all(|&u| match hyp.class(u) {
                    1 => p.s.contains(&u),
                    2 => p.t.contains(&u),
                    _ => true,
                })
            } else {
                let in_s = p.s.contains(&v);
                let own_class = if in_s { 1 } else { 2 };
                let same: Vec<Vertex> = nbrs.iter().copied().filter(|&u| p.s.contains(&u) == in_s).collect();
                same.len() <= 2 && same.iter().all(|&u| hyp.class(u) == own_class)
            };
            Implication { v, h_degree: d, holds }
        })
        .collect()
}

/// Recolours every β vertex of `H`-degree 2: colour 1 if both neighbours
/// have colour 2, colour 2 otherwise. Every cycle of the core through such
/// a vertex runs through both of its neighbours, so no monochromatic cycle
/// is created.
pub fn recolour_light_betas(hyp: &Hypothesis, b: &mut TwoColoring) {
    for &v in hyp.b(3) {
        let nb: Vec<Vertex> = hyp.graph.neighbors(v).collect();
        if nb.len() == 2 {
            let both_two = nb.iter().all(|u| hyp.a[u] == Colour::Two);
            b.insert(v, if both_two { Colour::One } else { Colour::Two });
        }
    }
}

/// Tree partition with `B_1 ⊆ S`, `B_2 ⊆ T` such that every `B_3` vertex
/// has all its class-1 / class-2 neighbours split by class (when heavy in
/// `H`) or at most two neighbours on its own side (when light).
pub fn face_sparse_partition(g: &EmbeddedGraph) -> Result<FaceSparsePartition> {
    let tp = g.tri_partition()?;
    face_sparse_partition_with(g, &tp)
}

pub fn face_sparse_partition_with(g: &EmbeddedGraph, tp: &TriPartition) -> Result<FaceSparsePartition> {
    let hyp = hypothesis(g, tp)?;
    if let Some(cycle) = hyp.family_witness()? {
        return Err(Error::HNotInFamily(cycle));
    }
    if let Some(v) = hyp.bad_component() {
        return Err(Error::HComponentNot2Connected(v));
    }
    let full = g.to_graph();
    if hyp.graph.is_empty() {
        let c = PartitionConstraint::default();
        let p = tree_partition_search(&full, &c, DEFAULT_SEARCH_NODES, &|_| true)?.ok_or(Error::SearchExhausted)?;
        verify_tree_partition(&full, &p).map_err(Error::Internal)?;
        return Ok(FaceSparsePartition {
            partition: p,
            steps: Vec::new(),
            implications: Vec::new(),
            constraint: c,
            seeding_conditions_hold: false,
            vacuous: true,
            enforced_by_search: false,
        });
    }
    let req = ColoringRequest { graph: hyp.graph.clone(), bipartition: hyp.bipartition.clone(), a: hyp.a.clone(), pin: None };
    let mut b = colorizer::color_beta(&req)?;
    recolour_light_betas(&hyp, &mut b);
    if let Some(c) = monochromatic_cycle(&hyp.core, &combine(&hyp.a, &b)) {
        return Err(Error::ConditionViolated { step: 0, condition: 'a', detail: format!("monochromatic cycle {c:?}") });
    }
    for m in hyp.graph.vertices().filter(|&m| hyp.bipartition.is_alpha(m) && hyp.h_degree(m) == 2) {
        let nb: Vec<Vertex> = hyp.graph.neighbors(m).collect();
        if nb.iter().all(|&u| hyp.h_degree(u) >= 3) && b[&nb[0]] == b[&nb[1]] {
            return Err(Error::ConditionViolated { step: 0, condition: 'b', detail: format!("{nb:?} share a colour across {m}") });
        }
    }
    let paths = fan_paths(g, &hyp.bigsmall)?;
    let (r, r_hat) = families_r(&paths, &hyp);
    let (bn, steps) = extend_for_faces(g, &hyp, &b, &r, &r_hat)?;
    let c = PartitionConstraint::from_colouring(&hyp, &bn);
    let (mut p, seeded) = solve_seeded(g, &hyp, &c, &|_| true)?;
    let mut enforced = false;
    if implication_report(g, &hyp, &p).iter().any(|i| !i.holds) {
        let accept = |q: &TreePartition| implication_report(g, &hyp, q).iter().all(|i| i.holds);
        p = solve_seeded(g, &hyp, &c, &accept)?.0;
        enforced = true;
    }
    verify_tree_partition(&full, &p).map_err(Error::Internal)?;
    if !hyp.b(1).is_subset(&p.s) || !hyp.b(2).is_subset(&p.t) {
        return Err(Error::Internal("big vertex on the wrong side".into()));
    }
    let implications = implication_report(g, &hyp, &p);
    Ok(FaceSparsePartition {
        partition: p,
        steps,
        implications,
        constraint: c,
        seeding_conditions_hold: seeded,
        vacuous: false,
        enforced_by_search: enforced,
    })
}
