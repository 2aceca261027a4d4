//! Simple undirected graphs with stable vertex ids.
//!
//! Most of the structure theory works on subgraphs that keep the vertex
//! labels of the graph they came from, so vertices are arbitrary `usize`
//! ids rather than a dense `0..n` range.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub type Vertex = usize;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I: IntoIterator<Item = (Vertex, Vertex)>>(edges: I) -> Self {
        let mut g = Self::new();
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Cycle `0 - 1 - ... - (len-1) - 0`.
    pub fn cycle(len: usize) -> Self {
        assert!(len >= 3);
        Self::from_edges((0..len).map(|i| (i, (i + 1) % len)))
    }

    /// Path `0 - 1 - ... - len`.
    pub fn path(len: usize) -> Self {
        let mut g = Self::from_edges((0..len).map(|i| (i, i + 1)));
        g.add_vertex(0);
        g
    }

    /// `K_{p,q}` with parts `0..p` and `p..p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let mut g = Self::new();
        for u in 0..p {
            for v in p..p + q {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        assert_ne!(u, v, "loops are not allowed");
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let a = self.adj.get_mut(&u).map(|s| s.remove(&v)).unwrap_or(false);
        let b = self.adj.get_mut(&v).map(|s| s.remove(&u)).unwrap_or(false);
        a && b
    }

    pub fn remove_vertex(&mut self, v: Vertex) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for u in nbrs {
                if let Some(s) = self.adj.get_mut(&u) {
                    s.remove(&v);
                }
            }
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.adj.keys().copied().collect()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn neighbor_set(&self, v: Vertex) -> &BTreeSet<Vertex> {
        static EMPTY: BTreeSet<Vertex> = BTreeSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.adj
            .iter()
            .flat_map(|(&u, s)| s.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    pub fn min_vertex(&self) -> Option<Vertex> {
        self.adj.keys().next().copied()
    }

    pub fn induced<'a, I: IntoIterator<Item = &'a Vertex>>(&self, vertices: I) -> Graph {
        let keep: BTreeSet<Vertex> = vertices.into_iter().copied().filter(|v| self.contains(*v)).collect();
        let adj = keep
            .iter()
            .map(|&v| (v, self.adj[&v].intersection(&keep).copied().collect()))
            .collect();
        Graph { adj }
    }

    /// Edge-union of two graphs.
    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        for v in other.vertices() {
            g.add_vertex(v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.insert(v) {
                let comp = self.reachable(v, |_| true);
                seen.extend(comp.iter().copied());
                out.push(comp);
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        match self.min_vertex() {
            None => true,
            Some(v) => self.reachable(v, |_| true).len() == self.vertex_count(),
        }
    }

    /// Vertices reachable from `src` through vertices accepted by `allowed`.
    pub fn reachable(&self, src: Vertex, allowed: impl Fn(Vertex) -> bool) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::from([src]);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if allowed(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn bfs_distances(&self, src: Vertex) -> BTreeMap<Vertex, usize> {
        let mut dist = BTreeMap::from([(src, 0)]);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            for w in self.neighbors(u) {
                if !dist.contains_key(&w) {
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest `src`-`dst` path whose every vertex is accepted by `allowed`.
    pub fn find_path(
        &self,
        src: Vertex,
        dst: Vertex,
        allowed: impl Fn(Vertex) -> bool,
    ) -> Option<Vec<Vertex>> {
        if !allowed(src) || !allowed(dst) || !self.contains(src) {
            return None;
        }
        let mut parent = BTreeMap::from([(src, src)]);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            if u == dst {
                let mut path = vec![dst];
                let mut cur = dst;
                while cur != src {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for w in self.neighbors(u) {
                if allowed(w) && !parent.contains_key(&w) {
                    parent.insert(w, u);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Some cycle of the subgraph induced by `allowed`, if one exists.
    pub fn find_cycle_within(&self, allowed: impl Fn(Vertex) -> bool) -> Option<Vec<Vertex>> {
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for root in self.vertices().filter(|&v| allowed(v)) {
            if parent.contains_key(&root) {
                continue;
            }
            parent.insert(root, root);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u).filter(|&w| allowed(w)) {
                    if w == parent[&u] {
                        continue;
                    }
                    if parent.contains_key(&w) {
                        // non-tree edge u-w closes a cycle through their tree paths
                        return Some(tree_cycle(&parent, u, w));
                    }
                    parent.insert(w, u);
                    stack.push(w);
                }
            }
        }
        None
    }

    pub fn find_cycle(&self) -> Option<Vec<Vertex>> {
        self.find_cycle_within(|_| true)
    }

    pub fn is_forest(&self) -> bool {
        self.find_cycle().is_none()
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }

    /// Proper 2-colouring with the lowest vertex of each component on side `false`,
    /// or an odd cycle.
    pub fn two_colour(&self) -> std::result::Result<BTreeMap<Vertex, bool>, Vec<Vertex>> {
        let mut side: BTreeMap<Vertex, bool> = BTreeMap::new();
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for root in self.vertices() {
            if side.contains_key(&root) {
                continue;
            }
            side.insert(root, false);
            parent.insert(root, root);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    match side.get(&w) {
                        None => {
                            side.insert(w, !side[&u]);
                            parent.insert(w, u);
                            queue.push_back(w);
                        }
                        Some(&s) if s == side[&u] => return Err(tree_cycle(&parent, u, w)),
                        _ => {}
                    }
                }
            }
        }
        Ok(side)
    }
}

/// Cycle formed by the tree paths to `u` and `w` plus the edge `u-w`.
fn tree_cycle(parent: &BTreeMap<Vertex, Vertex>, u: Vertex, w: Vertex) -> Vec<Vertex> {
    let ancestors = |mut x: Vertex| {
        let mut out = vec![x];
        while parent[&x] != x {
            x = parent[&x];
            out.push(x);
        }
        out
    };
    let pu = ancestors(u);
    let pw = ancestors(w);
    let in_pw: BTreeSet<Vertex> = pw.iter().copied().collect();
    let lca_idx = pu.iter().position(|x| in_pw.contains(x)).expect("same tree");
    let lca = pu[lca_idx];
    let mut cycle: Vec<Vertex> = pu[..=lca_idx].to_vec();
    let w_idx = pw.iter().position(|&x| x == lca).unwrap();
    cycle.extend(pw[..w_idx].iter().rev());
    cycle
}
