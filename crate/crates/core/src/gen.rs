//! Instance generators.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::BufRead;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embed::{EmbeddedGraph, GraphJson, TriPartition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::structure;
use crate::treesplit::{hypothesis, Hypothesis};

/// Largest vertex count accepted by [`gen_even_triangulations`].
pub const MAX_TRIANGULATION_N: usize = 16;
/// Largest size accepted by [`gen_multi4`].
pub const MAX_MULTI4_SIZE: usize = 40;

/// `C^{2l} * E^2`: apexes `0` and `2l + 1`, cycle `1..=2l`.
pub fn gen_bipyramid(l: usize) -> Result<EmbeddedGraph> {
    if l < 2 {
        return Err(Error::SizeTooSmall(l));
    }
    let m = 2 * l;
    let (north, south) = (0, m + 1);
    let c = |i: usize| 1 + i % m;
    let mut faces = Vec::with_capacity(2 * m);
    for i in 0..m {
        faces.push([north, c(i), c(i + 1)]);
        faces.push([south, c(i + 1), c(i)]);
    }
    EmbeddedGraph::from_oriented_triangles(m + 2, &faces)
}

/// `K_4` as a plane triangulation.
pub fn tetrahedron() -> EmbeddedGraph {
    EmbeddedGraph::from_oriented_triangles(4, &[[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])
        .expect("tetrahedron is a valid triangulation")
}

/// Splits `v` along the neighbours at rotation positions `i < j`: the new
/// vertex takes the arc `r_i..r_j` and becomes adjacent to `v`.
pub fn split_vertex(g: &EmbeddedGraph, v: Vertex, i: usize, j: usize) -> Result<EmbeddedGraph> {
    let r = g.rotation(v);
    let d = r.len();
    assert!(i < j && j < d);
    let nv = g.n();
    let (ri, rj) = (r[i], r[j]);
    let arc: BTreeSet<usize> = (i..j).collect();
    let mut faces = Vec::new();
    for t in g.oriented_triangles() {
        let pos = t.iter().position(|&x| x == v);
        let moved = pos.is_some_and(|p| {
            // rotate so v leads: (v, b, c) with c after b at v
            let b = t[(p + 1) % 3];
            let k = r.iter().position(|&x| x == b).unwrap();
            arc.contains(&k)
        });
        if moved {
            faces.push(t.map(|x| if x == v { nv } else { x }));
        } else {
            faces.push(t);
        }
    }
    faces.push([nv, rj, v]);
    faces.push([nv, v, ri]);
    EmbeddedGraph::from_oriented_triangles(nv + 1, &faces)
}

/// All plane triangulations on `n` vertices up to isomorphism (mirror
/// images identified), grown from `K_4` by vertex splitting.
pub fn all_triangulations(n: usize) -> Result<Vec<EmbeddedGraph>> {
    if !(4..=MAX_TRIANGULATION_N).contains(&n) {
        return Err(Error::SizeOutOfRange(n, 4, MAX_TRIANGULATION_N));
    }
    let mut level = vec![tetrahedron()];
    for _ in 4..n {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for v in 0..g.n() {
                let d = g.degree(v);
                for i in 0..d {
                    for j in i + 1..d {
                        let h = split_vertex(g, v, i, j)?;
                        if seen.insert(h.canonical_code()) {
                            next.push(h);
                        }
                    }
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// All even plane triangulations on `n` vertices up to isomorphism.
pub fn gen_even_triangulations(n: usize) -> Result<Vec<EmbeddedGraph>> {
    Ok(all_triangulations(n)?.into_iter().filter(|g| g.is_even_triangulation()).collect())
}

/// Replaces face `(a, b, c)` by an octahedron: three new vertices forming a
/// triangle, each adjacent to two of `a, b, c`. Degrees of `a, b, c` grow by
/// two, new vertices have degree 4, so evenness is preserved.
pub fn insert_octahedron(g: &EmbeddedGraph, face: [Vertex; 3]) -> Result<EmbeddedGraph> {
    let [a, b, c] = face;
    let mut faces = g.oriented_triangles();
    let pos = faces
        .iter()
        .position(|t| (0..3).any(|k| [t[k], t[(k + 1) % 3], t[(k + 2) % 3]] == face))
        .ok_or_else(|| Error::Precondition(format!("{face:?} is not an oriented face")))?;
    faces.swap_remove(pos);
    let n = g.n();
    let (x, y, z) = (n, n + 1, n + 2); // opposite a, b, c
    faces.extend([[a, b, z], [b, c, x], [c, a, y], [a, z, y], [b, x, z], [c, y, x], [x, y, z]]);
    EmbeddedGraph::from_oriented_triangles(n + 3, &faces)
}

/// Random member of the multi-4-cycle family with at least `size` vertices.
/// Grown by gluing `C_{4k}` at cut vertices or through a pair of odd paths,
/// pendant edges, and ears whose length makes the new cycle length divisible
/// by four; every step is certified and reverted if it leaves the family.
pub fn gen_multi4(size: usize, seed: u64) -> Result<Graph> {
    if size > MAX_MULTI4_SIZE {
        return Err(Error::SizeOutOfRange(size, 1, MAX_MULTI4_SIZE));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::cycle(4 * rng.gen_range(1..=2));
    let mut next = g.vertex_count();
    let mut stale = 0;
    while g.vertex_count() < size && stale < 200 {
        let vs: Vec<Vertex> = g.vertices().collect();
        let mut h = g.clone();
        match rng.gen_range(0..12) {
            10..=11 => {
                // cut pair: a new C_{4k} joined by two disjoint paths of odd length
                let x1 = *vs.choose(&mut rng).unwrap();
                let x2 = *vs.choose(&mut rng).unwrap();
                let Some(&d1) = g.bfs_distances(x1).get(&x2) else { continue };
                if x1 == x2 || d1 % 2 == 1 {
                    continue;
                }
                let k = 4 * rng.gen_range(1..=2);
                let ring: Vec<Vertex> = (next..next + k).collect();
                for i in 0..k {
                    h.add_edge(ring[i], ring[(i + 1) % k]);
                }
                let d2 = 2 * rng.gen_range(1..=k / 4);
                let (y1, y2) = (ring[0], ring[d2]);
                let lp = if rng.gen_bool(0.5) { 1 } else { 3 };
                let lq = match (4 - (lp + d1 + d2) % 4) % 4 {
                    0 => 4,
                    r => r,
                };
                let mut fresh = next + k;
                for (a, b, len) in [(x1, y1, lp), (x2, y2, lq)] {
                    let mut prev = a;
                    for _ in 0..len - 1 {
                        h.add_edge(prev, fresh);
                        prev = fresh;
                        fresh += 1;
                    }
                    h.add_edge(prev, b);
                }
            }
            0..=1 => {
                let at = *vs.choose(&mut rng).unwrap();
                let len = 4 * rng.gen_range(1..=2);
                let mut prev = at;
                for k in 1..len {
                    h.add_edge(prev, next + k - 1);
                    prev = next + k - 1;
                }
                h.add_edge(prev, at);
            }
            2 => {
                let at = *vs.choose(&mut rng).unwrap();
                h.add_edge(at, next);
            }
            _ => {
                let u = *vs.choose(&mut rng).unwrap();
                let w = *vs.choose(&mut rng).unwrap();
                let Some(&d) = g.bfs_distances(u).get(&w) else { continue };
                if u == w {
                    continue;
                }
                let mut len = (4 - d % 4) % 4;
                while len < 1 || (len == 1 && g.has_edge(u, w)) {
                    len += 4;
                }
                if len == 1 && rng.gen_bool(0.5) {
                    len = 5;
                }
                let mut prev = u;
                for k in 0..len - 1 {
                    h.add_edge(prev, next + k);
                    prev = next + k;
                }
                h.add_edge(prev, w);
            }
        }
        if structure::is_multi4(&h)? {
            g = h;
            next = g.vertices().max().unwrap() + 1;
            stale = 0;
        } else {
            stale += 1;
        }
    }
    Ok(g)
}

/// An even triangulation with a class
/// labelling under which the hypothesis graph lies in the family and all of
/// its components are 2-connected.
#[derive(Debug, Clone)]
pub struct LabelledTriangulation {
    pub graph: EmbeddedGraph,
    pub partition: TriPartition,
}

/// Class labellings (among the six relabellings of the canonical one) that
/// satisfy `accept`, deduplicated.
pub fn labellings_where(g: &EmbeddedGraph, accept: impl Fn(&Hypothesis) -> bool) -> Result<Vec<TriPartition>> {
    let base = g.tri_partition()?;
    let mut out: Vec<TriPartition> = Vec::new();
    for tp in base.all_permutations() {
        if out.contains(&tp) {
            continue;
        }
        let h = hypothesis(g, &tp)?;
        if accept(&h) {
            out.push(tp);
        }
    }
    Ok(out)
}

/// Even triangulations on exactly `n` vertices with a labelling meeting the
/// hypothesis of the face-sparse construction and a nonempty hypothesis
/// graph. Exhaustive for `n <= 12`; larger `n` are reached by seeded random
/// octahedron insertions into smaller catalog members.
pub fn gen_face_sparse_instances(n: usize, seed: u64) -> Result<Vec<LabelledTriangulation>> {
    let accept = |h: &Hypothesis| !h.graph.is_empty() && h.in_family().unwrap_or(false) && h.components_two_connected();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |g: EmbeddedGraph, out: &mut Vec<LabelledTriangulation>| -> Result<()> {
        if seen.insert(g.canonical_code()) {
            for tp in labellings_where(&g, accept)? {
                out.push(LabelledTriangulation { graph: g.clone(), partition: tp });
            }
        }
        Ok(())
    };
    if n <= 12 {
        for g in gen_even_triangulations(n)? {
            push(g, &mut out)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases: Vec<EmbeddedGraph> = (6..=n.min(10)).flat_map(|k| gen_even_triangulations(k).unwrap_or_default()).collect();
    for _ in 0..200 {
        let Some(mut g) = bases.choose(&mut rng).cloned() else { break };
        while g.n() + 3 <= n {
            let faces = g.oriented_triangles();
            let f = *faces.choose(&mut rng).unwrap();
            g = insert_octahedron(&g, f)?;
        }
        if g.n() == n {
            push(g, &mut out)?;
        }
    }
    if out.is_empty() {
        return Err(Error::NoneFound(format!("no instance on {n} vertices")));
    }
    Ok(out)
}

/// Reads newline-delimited JSON graphs; blank lines are skipped.
pub fn load_catalog(reader: impl BufRead) -> Result<Vec<EmbeddedGraph>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Precondition(format!("line {}: {e}", i + 1)))?;
        if line.trim().is_empty() {
            continue;
        }
        let j: GraphJson =
            serde_json::from_str(&line).map_err(|e| Error::Precondition(format!("line {}: {e}", i + 1)))?;
        out.push(EmbeddedGraph::from_json(&j)?);
    }
    Ok(out)
}

/// Degree sequence histogram, handy for summaries.
pub fn degree_profile(g: &EmbeddedGraph) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for v in 0..g.n() {
        *m.entry(g.degree(v)).or_default() += 1;
    }
    m
}
