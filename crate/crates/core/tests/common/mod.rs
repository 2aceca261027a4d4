//! Brute-force oracles shared by the integration tests. They avoid the
//! library's algorithms: no block decomposition, no forest tests on the
//! graph type, no embedding beyond the dual edge map.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use barnette::colorizer::{Colour, TwoColoring};
use barnette::{Graph, Vertex};

pub fn adjacency(g: &Graph) -> BTreeMap<Vertex, BTreeSet<Vertex>> {
    g.vertices().map(|v| (v, g.neighbors(v).collect())).collect()
}

/// Every simple cycle, each listed once, by DFS from its lowest vertex.
pub fn naive_cycles(g: &Graph) -> Vec<Vec<Vertex>> {
    let adj = adjacency(g);
    let mut out = Vec::new();
    fn dfs(adj: &BTreeMap<Vertex, BTreeSet<Vertex>>, s: Vertex, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let last = *path.last().unwrap();
        for &w in &adj[&last] {
            if w == s && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if w > s && !path.contains(&w) {
                path.push(w);
                dfs(adj, s, path, out);
                path.pop();
            }
        }
    }
    for &s in adj.keys() {
        dfs(&adj, s, &mut vec![s], &mut out);
    }
    out
}

pub fn naive_multi4(g: &Graph) -> bool {
    naive_cycles(g).iter().all(|c| c.len() % 4 == 0)
}

fn find(parent: &mut BTreeMap<Vertex, Vertex>, x: Vertex) -> Vertex {
    let p = parent[&x];
    if p == x {
        return x;
    }
    let r = find(parent, p);
    parent.insert(x, r);
    r
}

/// True iff the edges with both ends in `set` close a cycle.
pub fn has_cycle_within(g: &Graph, set: &BTreeSet<Vertex>) -> bool {
    let mut parent: BTreeMap<Vertex, Vertex> = set.iter().map(|&v| (v, v)).collect();
    for (u, v) in g.edges() {
        if set.contains(&u) && set.contains(&v) {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return true;
            }
            parent.insert(a, b);
        }
    }
    false
}

pub fn has_mono_cycle(g: &Graph, col: &TwoColoring) -> bool {
    [Colour::One, Colour::Two].into_iter().any(|c| {
        let set: BTreeSet<Vertex> = col.iter().filter(|p| *p.1 == c).map(|p| *p.0).collect();
        has_cycle_within(g, &set)
    })
}

/// `set` is nonempty and induces a connected acyclic graph.
pub fn induces_tree(g: &Graph, set: &BTreeSet<Vertex>) -> bool {
    let Some(&start) = set.iter().next() else { return false };
    let edges = g.edges().into_iter().filter(|(u, v)| set.contains(u) && set.contains(v)).count();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u) {
            if set.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == set.len() && edges + 1 == set.len()
}

/// The edge list forms one cycle through all of `vertices`.
pub fn is_hamilton_edge_set(vertices: &BTreeSet<Vertex>, edges: &[(Vertex, Vertex)]) -> bool {
    if edges.len() != vertices.len() || vertices.len() < 3 {
        return false;
    }
    let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut g = Graph::new();
    for &(a, b) in edges {
        *deg.entry(a).or_default() += 1;
        *deg.entry(b).or_default() += 1;
        g.add_edge(a, b);
    }
    deg.len() == vertices.len() && deg.values().all(|&d| d == 2) && induces_tree_minus_one(&g, vertices)
}

fn induces_tree_minus_one(g: &Graph, vertices: &BTreeSet<Vertex>) -> bool {
    let start = *vertices.iter().next().unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u) {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == vertices.len()
}

/// Hamilton cycles by filtering all vertex orders with the lowest vertex
/// fixed; each cycle once, as a sorted edge set.
pub fn permutation_hamilton(g: &Graph) -> BTreeSet<BTreeSet<(Vertex, Vertex)>> {
    let verts: Vec<Vertex> = g.vertices().collect();
    let mut out = BTreeSet::new();
    if verts.len() < 3 {
        return out;
    }
    let mut rest: Vec<Vertex> = verts[1..].to_vec();
    permute(&mut rest, 0, &mut |order| {
        let mut cyc = vec![verts[0]];
        cyc.extend_from_slice(order);
        let k = cyc.len();
        let edges: Option<BTreeSet<(Vertex, Vertex)>> = (0..k)
            .map(|i| {
                let (a, b) = (cyc[i], cyc[(i + 1) % k]);
                g.has_edge(a, b).then_some((a.min(b), a.max(b)))
            })
            .collect();
        if let Some(e) = edges {
            out.insert(e);
        }
    });
    out
}

fn permute(xs: &mut Vec<Vertex>, k: usize, f: &mut impl FnMut(&[Vertex])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// All `2^|vs|` colourings of `vs`.
pub fn all_colourings(vs: &[Vertex]) -> Vec<TwoColoring> {
    (0u32..1 << vs.len())
        .map(|m| vs.iter().enumerate().map(|(i, &v)| (v, if m >> i & 1 == 0 { Colour::One } else { Colour::Two })).collect())
        .collect()
}

/// Hamilton cycles by plain backtracking from the lowest vertex, each once
/// as a sorted edge set.
pub fn backtrack_hamilton(g: &Graph) -> BTreeSet<BTreeSet<(Vertex, Vertex)>> {
    let adj = adjacency(g);
    let mut out = BTreeSet::new();
    let Some(&s) = adj.keys().next() else { return out };
    fn go(
        adj: &BTreeMap<Vertex, BTreeSet<Vertex>>,
        path: &mut Vec<Vertex>,
        out: &mut BTreeSet<BTreeSet<(Vertex, Vertex)>>,
    ) {
        let last = *path.last().unwrap();
        if path.len() == adj.len() {
            if path.len() >= 3 && adj[&last].contains(&path[0]) {
                let k = path.len();
                out.insert((0..k).map(|i| (path[i].min(path[(i + 1) % k]), path[i].max(path[(i + 1) % k]))).collect());
            }
            return;
        }
        for &w in &adj[&last] {
            if !path.contains(&w) {
                path.push(w);
                go(adj, path, out);
                path.pop();
            }
        }
    }
    go(&adj, &mut vec![s], &mut out);
    out
}
