//! 2-colourings of multi-4-cycle graphs with no monochromatic cycle.
//!
//! Given a colouring `a` of the α vertices, [`color_beta`] produces a
//! colouring `b` of the β vertices such that under the combined colouring
//! `a ▽ b` no cycle is monochromatic, β vertices along every degree-2 thread
//! alternate, and one chosen β vertex gets a chosen colour.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::structure::{self, blocks, BlockDecomposition, TypedBipartition, VType, DEFAULT_CYCLE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    One,
    Two,
}

impl Colour {
    pub fn flip(self) -> Colour {
        match self {
            Colour::One => Colour::Two,
            Colour::Two => Colour::One,
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Colour::One => 1,
            Colour::Two => 2,
        }
    }

    pub fn from_u8(x: u8) -> Option<Colour> {
        match x {
            1 => Some(Colour::One),
            2 => Some(Colour::Two),
            _ => None,
        }
    }
}

impl Serialize for Colour {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.as_u8())
    }
}

impl<'de> Deserialize<'de> for Colour {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = u8::deserialize(d)?;
        Colour::from_u8(x).ok_or_else(|| serde::de::Error::custom(format!("colour must be 1 or 2, got {x}")))
    }
}

/// Partial map vertex -> colour.
pub type TwoColoring = BTreeMap<Vertex, Colour>;

/// `a ▽ b`: the union of two colourings with disjoint domains.
pub fn combine(a: &TwoColoring, b: &TwoColoring) -> TwoColoring {
    let mut out = a.clone();
    out.extend(b.iter().map(|(&v, &c)| (v, c)));
    out
}

#[derive(Debug, Clone)]
pub struct ColoringRequest {
    pub graph: Graph,
    pub bipartition: TypedBipartition,
    pub a: TwoColoring,
    pub pin: Option<(Vertex, Colour)>,
}

fn validate(g: &Graph, bp: &TypedBipartition, a: &TwoColoring) -> Result<()> {
    bp.validate(g)?;
    for v in g.vertices() {
        match (bp.type_of(v), a.contains_key(&v)) {
            (VType::Alpha, false) => return Err(Error::InvalidRequest(format!("α vertex {v} has no colour"))),
            (VType::Beta, true) => return Err(Error::InvalidRequest(format!("β vertex {v} is coloured by a"))),
            _ => {}
        }
    }
    Ok(())
}

fn require_multi4(g: &Graph) -> Result<()> {
    match structure::multi4_witness(g, DEFAULT_CYCLE_CAP)? {
        None => Ok(()),
        Some(cycle) => {
            let len = cycle.len();
            Err(Error::NotInFamilyH { cycle, len })
        }
    }
}

/// Colouring `b` of the β vertices; see the module docs. Components without
/// the pin get their lowest β vertex coloured 1.
pub fn color_beta(req: &ColoringRequest) -> Result<TwoColoring> {
    let ColoringRequest { graph: g, bipartition: bp, a, pin } = req;
    validate(g, bp, a)?;
    if let Some((v, _)) = pin {
        if !bp.is_beta(*v) {
            return Err(Error::InvalidRequest(format!("pin vertex {v} is not of type β")));
        }
    }
    require_multi4(g)?;
    let mut b = TwoColoring::new();
    for comp in g.components() {
        let sub = g.induced(&comp);
        let p = pin.filter(|(v, _)| comp.contains(v));
        b.extend(solve_connected(&sub, bp, a, p)?);
    }
    Ok(b)
}

fn lowest_beta(g: &Graph, bp: &TypedBipartition) -> Option<Vertex> {
    g.vertices().find(|&v| bp.is_beta(v))
}

fn solve_connected(g: &Graph, bp: &TypedBipartition, a: &TwoColoring, pin: Option<(Vertex, Colour)>) -> Result<TwoColoring> {
    let Some(pin) = pin.or_else(|| lowest_beta(g, bp).map(|v| (v, Colour::One))) else {
        return Ok(TwoColoring::new());
    };
    let dec = blocks(g);
    let root = dec.blocks_containing(pin.0).next().expect("pin lies in a block");
    let col = solve_block(&dec.blocks[root].to_graph(), bp, a, Some(pin))?;
    extend_over_blocks(g, bp, a, &dec, root, col)
}

/// Colours every block reachable from `root` in the block-cut tree, given
/// the colouring of `root`. A β cut vertex passes its colour on; an α cut
/// vertex of degree 2 sits between two bridges, and the β vertex across it
/// gets the colour opposite to the β vertex before it.
fn extend_over_blocks(
    g: &Graph,
    bp: &TypedBipartition,
    a: &TwoColoring,
    dec: &BlockDecomposition,
    root: usize,
    mut col: TwoColoring,
) -> Result<TwoColoring> {
    let mut done = BTreeSet::from([root]);
    let mut queue = vec![root];
    while let Some(i) = queue.pop() {
        let cuts: Vec<Vertex> = dec.blocks[i].vertices.iter().copied().filter(|v| dec.cut_vertices.contains(v)).collect();
        for c in cuts {
            let children: Vec<usize> = dec.blocks_containing(c).filter(|j| !done.contains(j)).collect();
            for j in children {
                let child = &dec.blocks[j];
                let pin = if bp.is_beta(c) {
                    Some((c, col[&c]))
                } else if g.degree(c) == 2 {
                    let p = *dec.blocks[i].vertices.iter().find(|&&u| u != c).unwrap();
                    let q = *child.vertices.iter().find(|&&u| u != c).unwrap();
                    Some((q, col[&p].flip()))
                } else {
                    None
                };
                let cj = solve_block(&child.to_graph(), bp, a, pin)?;
                for (v, k) in cj {
                    if let Some(&old) = col.get(&v) {
                        if old != k {
                            return Err(Error::Internal(format!("blocks disagree on the colour of {v}")));
                        }
                    }
                    col.insert(v, k);
                }
                done.insert(j);
                queue.push(j);
            }
        }
    }
    Ok(col)
}

/// Colouring of a single block (2-connected, a bridge, or an isolated vertex).
fn solve_block(b: &Graph, bp: &TypedBipartition, a: &TwoColoring, pin: Option<(Vertex, Colour)>) -> Result<TwoColoring> {
    if b.vertex_count() <= 2 {
        return Ok(b
            .vertices()
            .filter(|&v| bp.is_beta(v))
            .map(|v| (v, pin.filter(|p| p.0 == v).map_or(Colour::One, |p| p.1)))
            .collect());
    }
    let types = structure::branch_types(b, bp, &b.vertex_set());
    if !types.contains(&VType::Alpha) {
        return procedure_a(b, bp, pin);
    }
    if !types.contains(&VType::Beta) {
        return procedure_b(b, b, bp, a, pin);
    }
    let (cp, side) = structure::minimal_determined_side(b, bp).map_err(|e| match e {
        Error::NoCutPath => Error::Internal("mixed-type 2-connected block without a cutting path".into()),
        other => other,
    })?;
    let other: BTreeSet<Vertex> = if side == cp.side_c { cp.side_d.clone() } else { cp.side_c.clone() };
    let c_graph = cp.side_graph(b, &side);
    let d_graph = cp.side_graph(b, &other);
    let paths = cp.p.as_graph().union(&cp.q.as_graph());
    let side_types = structure::branch_types(b, bp, &side);
    if side_types.len() != 1 {
        return Err(Error::Internal("minimal determined side is not monotypic".into()));
    }
    let pin_in = |s: &Graph| pin.filter(|p| s.contains(p.0));
    // end of P inside the chosen side, and its partner across
    let (x1, y1) = if side.contains(&cp.p.first()) { (cp.p.first(), cp.p.last()) } else { (cp.p.last(), cp.p.first()) };
    let mut col;
    if side_types.contains(&VType::Beta) {
        col = solve_connected(&d_graph, bp, a, pin_in(&d_graph))?;
        let k_graph = c_graph.union(&paths);
        if structure::branch_types(&k_graph, bp, &k_graph.vertex_set()).contains(&VType::Alpha) {
            return Err(Error::Internal("C ∪ P ∪ Q has a branch vertex of type α".into()));
        }
        col.extend(procedure_a(&k_graph, bp, pin_in(&k_graph))?);
    } else {
        col = procedure_b(&c_graph, b, bp, a, pin_in(&c_graph))?;
        let r_graph = d_graph.union(&paths);
        let r_pin = match pin_in(&c_graph) {
            None => pin_in(&r_graph),
            Some(_) => Some((y1, a[&x1].flip())),
        };
        col.extend(solve_connected(&r_graph, bp, a, r_pin)?);
    }
    Ok(col)
}

/// Colouring of a connected graph whose branch vertices are all β: β
/// vertices at distance `2 (mod 4)` from the root get the other colour.
fn procedure_a(k: &Graph, bp: &TypedBipartition, pin: Option<(Vertex, Colour)>) -> Result<TwoColoring> {
    let Some(root) = lowest_beta(k, bp) else {
        return Ok(TwoColoring::new());
    };
    let dist = k.bfs_distances(root);
    let mut col: TwoColoring = dist
        .iter()
        .filter(|(&v, _)| bp.is_beta(v))
        .map(|(&v, &d)| (v, if (d / 2) % 2 == 0 { Colour::One } else { Colour::Two }))
        .collect();
    for m in k.vertices().filter(|&m| bp.is_alpha(m)) {
        let nb: Vec<Vertex> = k.neighbors(m).collect();
        if nb.len() == 2 && col[&nb[0]] == col[&nb[1]] {
            return Err(Error::Internal(format!("distance colouring is inconsistent at {m}")));
        }
    }
    if let Some((v, c)) = pin {
        if col[&v] != c {
            col.values_mut().for_each(|x| *x = x.flip());
        }
    }
    Ok(col)
}

/// Colouring of a connected subgraph `l` whose branch vertices (by degree in
/// `g`) are all α. β vertices linked through degree-2 α vertices form
/// chains coloured alternately; a lone β vertex between two branch vertices
/// takes the colour that keeps that length-2 path non-monochromatic.
fn procedure_b(
    l: &Graph,
    g: &Graph,
    bp: &TypedBipartition,
    a: &TwoColoring,
    pin: Option<(Vertex, Colour)>,
) -> Result<TwoColoring> {
    // link graph on β vertices of l
    let betas: Vec<Vertex> = l.vertices().filter(|&v| bp.is_beta(v)).collect();
    let mut link = Graph::new();
    for &u in &betas {
        link.add_vertex(u);
    }
    for m in l.vertices().filter(|&m| bp.is_alpha(m) && g.degree(m) == 2) {
        let nb: Vec<Vertex> = g.neighbors(m).filter(|&u| l.contains(u) && l.has_edge(m, u)).collect();
        if nb.len() == 2 {
            link.add_edge(nb[0], nb[1]);
        }
    }
    let mut col = TwoColoring::new();
    for chain in link.components() {
        let order = chain_order(&link, &chain);
        if order.len() == 1 {
            let u = order[0];
            let c = match pin {
                Some((v, c)) if v == u => c,
                _ => {
                    let nb: Vec<Vertex> = l.neighbors(u).collect();
                    nb.first().map_or(Colour::One, |n| a[n].flip())
                }
            };
            col.insert(u, c);
            continue;
        }
        let (anchor_idx, anchor_colour) = match pin.and_then(|(v, c)| order.iter().position(|&u| u == v).map(|i| (i, c))) {
            Some(x) => x,
            None => {
                let end = order[0];
                let ext = l.neighbors(end).find(|&m| !(g.degree(m) == 2 && link.neighbors(end).any(|w| g.has_edge(m, w))));
                (0, ext.map_or(Colour::One, |m| a[&m].flip()))
            }
        };
        for (i, &u) in order.iter().enumerate() {
            let c = if (i + anchor_idx) % 2 == 0 { anchor_colour } else { anchor_colour.flip() };
            col.insert(u, c);
        }
    }
    Ok(col)
}

/// Vertices of a path or cycle component in walking order, starting from
/// the lower-id end of a path (lowest vertex of a cycle).
fn chain_order(link: &Graph, comp: &BTreeSet<Vertex>) -> Vec<Vertex> {
    let start = comp
        .iter()
        .copied()
        .find(|&v| link.degree(v) <= 1)
        .unwrap_or_else(|| *comp.iter().next().unwrap());
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next = link.neighbors(cur).find(|&w| Some(w) != prev && w != start);
        match next {
            Some(n) if !order.contains(&n) => {
                order.push(n);
                prev = Some(cur);
                cur = n;
            }
            _ => break,
        }
    }
    order
}

/// Colouring of the β vertices with `b(v) = v_colour` and `b(y)` the other
/// colour, where `v` and `y` are opposite corners of a 4-cycle.
pub fn color_beta_4cycle(
    g: &Graph,
    bp: &TypedBipartition,
    a: &TwoColoring,
    v: Vertex,
    y: Vertex,
    v_colour: Colour,
) -> Result<TwoColoring> {
    validate(g, bp, a)?;
    if v == y || !bp.is_beta(v) || !bp.is_beta(y) {
        return Err(Error::NotOn4Cycle(v, y));
    }
    let common: Vec<Vertex> = g.neighbor_set(v).intersection(g.neighbor_set(y)).copied().collect();
    if common.len() < 2 {
        return Err(Error::NotOn4Cycle(v, y));
    }
    require_multi4(g)?;
    let (x, z) = (common[0], common[1]);
    let comp = g.reachable(v, |_| true);
    let sub = g.induced(&comp);
    let dec = blocks(&sub);
    let root = dec
        .blocks
        .iter()
        .position(|b| [v, x, y, z].iter().all(|u| b.vertices.contains(u)))
        .ok_or_else(|| Error::Internal("4-cycle not inside one block".into()))?;
    let bg = dec.blocks[root].to_graph();
    let ax = a[&x];
    // pin whichever of v, y is to receive a(x)
    let (p, q) = if v_colour == ax { (v, y) } else { (y, v) };
    let mut col = solve_block(&bg, bp, a, Some((p, ax)))?;
    if col[&q] == col[&p] {
        if bg.degree(q) == 2 && a[&z] != ax {
            col.insert(q, ax.flip());
        } else {
            return Err(Error::Internal(format!("4-cycle corners {v} and {y} share a colour")));
        }
    }
    let mut b = extend_over_blocks(&sub, bp, a, &dec, root, col)?;
    for other in g.components().into_iter().filter(|c| !c.contains(&v)) {
        b.extend(solve_connected(&g.induced(&other), bp, a, None)?);
    }
    Ok(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyFlags {
    pub skip_alternation: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub no_monochromatic_cycle: bool,
    pub cycle_witness: Option<Vec<Vertex>>,
    pub alternation: bool,
    pub path_witness: Option<Vec<Vertex>>,
    pub pin_respected: bool,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.no_monochromatic_cycle && self.alternation && self.pin_respected
    }
}

/// A monochromatic cycle under a total colouring, if any. A colour class
/// containing a cycle is exactly a monochromatic cycle, so this is a forest
/// test per class.
pub fn monochromatic_cycle(g: &Graph, combined: &TwoColoring) -> Option<Vec<Vertex>> {
    [Colour::One, Colour::Two]
        .into_iter()
        .find_map(|c| g.find_cycle_within(|v| combined.get(&v) == Some(&c)))
}

/// Checks the three colouring conditions. Alternation along degree-2
/// threads reduces to: the two β neighbours of every degree-2 α vertex
/// differ.
pub fn verify_coloring(
    g: &Graph,
    bp: &TypedBipartition,
    combined: &TwoColoring,
    pin: Option<(Vertex, Colour)>,
    flags: VerifyFlags,
) -> Result<VerifyReport> {
    if let Some(v) = g.vertices().find(|v| !combined.contains_key(v)) {
        return Err(Error::InvalidRequest(format!("vertex {v} is uncoloured")));
    }
    let cycle_witness = monochromatic_cycle(g, combined);
    let mut path_witness = None;
    if !flags.skip_alternation {
        for m in g.vertices().filter(|&m| bp.is_alpha(m) && g.degree(m) == 2) {
            let nb: Vec<Vertex> = g.neighbors(m).collect();
            if combined[&nb[0]] == combined[&nb[1]] {
                path_witness = Some(vec![nb[0], m, nb[1]]);
                break;
            }
        }
    }
    Ok(VerifyReport {
        no_monochromatic_cycle: cycle_witness.is_none(),
        cycle_witness,
        alternation: path_witness.is_none(),
        path_witness,
        pin_respected: pin.is_none_or(|(v, c)| combined.get(&v) == Some(&c)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::bipartition_typed;

    fn alpha_all(bp: &TypedBipartition, c: Colour) -> TwoColoring {
        bp.alpha_set().into_iter().map(|v| (v, c)).collect()
    }

    fn run(g: &Graph, a: &TwoColoring, pin: (Vertex, Colour)) -> VerifyReport {
        let bp = bipartition_typed(g).unwrap();
        let req = ColoringRequest { graph: g.clone(), bipartition: bp.clone(), a: a.clone(), pin: Some(pin) };
        let b = color_beta(&req).unwrap();
        verify_coloring(g, &bp, &combine(a, &b), Some(pin), VerifyFlags::default()).unwrap()
    }

    #[test]
    fn c8_alternates() {
        let g = Graph::cycle(8);
        let bp = bipartition_typed(&g).unwrap();
        for c in [Colour::One, Colour::Two] {
            let a = alpha_all(&bp, Colour::One);
            let r = run(&g, &a, (1, c));
            assert!(r.all_pass(), "{r:?}");
        }
    }

    #[test]
    fn single_edge() {
        let g = Graph::from_edges([(0, 1)]);
        let bp = bipartition_typed(&g).unwrap();
        let a = TwoColoring::from([(0, Colour::One)]);
        let req = ColoringRequest { graph: g, bipartition: bp, a, pin: Some((1, Colour::Two)) };
        assert_eq!(color_beta(&req).unwrap(), TwoColoring::from([(1, Colour::Two)]));
    }

    #[test]
    fn k34_is_rejected() {
        let g = Graph::complete_bipartite(3, 4);
        let bp = TypedBipartition::from_alpha_set(&g, &BTreeSet::from([3, 4, 5, 6])).unwrap();
        let a = TwoColoring::from([(3, Colour::One), (4, Colour::One), (5, Colour::Two), (6, Colour::Two)]);
        let req = ColoringRequest { graph: g, bipartition: bp, a, pin: Some((0, Colour::One)) };
        assert!(matches!(color_beta(&req), Err(Error::NotInFamilyH { .. })));
    }

    #[test]
    fn pin_on_alpha_is_rejected() {
        let g = Graph::cycle(8);
        let bp = bipartition_typed(&g).unwrap();
        let req = ColoringRequest { graph: g, bipartition: bp.clone(), a: alpha_all(&bp, Colour::One), pin: Some((0, Colour::One)) };
        assert!(matches!(color_beta(&req), Err(Error::InvalidRequest(_))));
    }

    #[test]
    fn verify_catches_monochromatic_c8_and_bad_thread() {
        let g = Graph::cycle(8);
        let bp = bipartition_typed(&g).unwrap();
        let all1: TwoColoring = (0..8).map(|v| (v, Colour::One)).collect();
        let r = verify_coloring(&g, &bp, &all1, None, VerifyFlags::default()).unwrap();
        assert!(!r.no_monochromatic_cycle);
        assert_eq!(r.cycle_witness.unwrap().len(), 8);
        assert_eq!(r.path_witness.unwrap().len(), 3);
    }

    #[test]
    fn four_cycle_both_orientations() {
        let g = Graph::cycle(4);
        let bp = bipartition_typed(&g).unwrap();
        for az in [Colour::One, Colour::Two] {
            let a = TwoColoring::from([(0, Colour::One), (2, az)]);
            for vc in [Colour::One, Colour::Two] {
                let b = color_beta_4cycle(&g, &bp, &a, 1, 3, vc).unwrap();
                assert_eq!(b[&1], vc);
                assert_eq!(b[&3], vc.flip());
                assert!(monochromatic_cycle(&g, &combine(&a, &b)).is_none());
            }
        }
    }

    #[test]
    fn four_cycle_rejects_non_corners() {
        let g = Graph::cycle(8);
        let bp = bipartition_typed(&g).unwrap();
        let a = alpha_all(&bp, Colour::One);
        assert_eq!(color_beta_4cycle(&g, &bp, &a, 1, 5, Colour::One), Err(Error::NotOn4Cycle(1, 5)));
    }

    #[test]
    fn bridge_chain_alternates_through_alpha_cut_vertices() {
        let g = Graph::path(6);
        let bp = bipartition_typed(&g).unwrap();
        let a = alpha_all(&bp, Colour::Two);
        let r = run(&g, &a, (1, Colour::One));
        assert!(r.all_pass(), "{r:?}");
    }
}
