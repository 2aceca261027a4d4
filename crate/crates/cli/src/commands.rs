use std::collections::BTreeSet;

use anyhow::{bail, Result};
use barnette::colorizer::{color_beta, combine, verify_coloring, ColoringRequest, VerifyFlags};
use barnette::embed::{EmbeddedGraph, GraphJson};
use barnette::gen::{gen_bipyramid, gen_even_triangulations, gen_multi4, gen_face_sparse_instances};
use barnette::stein::{avoidance_report, hamilton_avoiding_edge, hamilton_face_sparse, verify_hamilton};
use barnette::structure::{multi4_witness, TypedBipartition};
use barnette::treesplit::{
    edge_pinned_partition_with, face_sparse_partition_with, hypothesis, tree_partition_search, verify_tree_partition,
    PartitionConstraint, TreePartition,
};
use barnette::{Error, Graph, Vertex};
use serde_json::{json, Value};

use crate::input::{labelling, parse_list, parse_pair, parse_pin, Loaded};
use crate::report::{Invariant, RunReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckFamily {
    EvenTri,
    Multi4,
    BarnetteHypothesis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GenKind {
    EvenTri,
    Bipyramid,
    Multi4,
    FaceSparse,
}

/// Library errors that are results about the input (a failed hypothesis or
/// a construction that did not go through) rather than unusable input.
pub fn as_failure(e: &Error) -> Option<Invariant> {
    Some(match e {
        Error::HNotInFamily(c) => Invariant::fail("h-in-family", json!({ "cycle": c, "len": c.len() })),
        Error::HComponentNot2Connected(v) => Invariant::fail("h-components-2-connected", json!({ "vertex": v })),
        Error::NotInFamilyH { cycle, len } => Invariant::fail("in-family", json!({ "cycle": cycle, "len": len })),
        Error::NotBipartite(c) => Invariant::fail("bipartite", json!({ "odd_cycle": c })),
        Error::SearchExhausted
        | Error::ConstraintInvalid(_)
        | Error::CaseUnmatched(_)
        | Error::ConditionViolated { .. }
        | Error::Internal(_) => Invariant::fail("construction", json!({ "error": e.to_string() })),
        _ => return None,
    })
}

fn lift<T>(r: barnette::Result<T>, report: &mut RunReport) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(e) => match as_failure(&e) {
            Some(inv) => {
                report.push(inv);
                Ok(None)
            }
            None => Err(e.into()),
        },
    }
}

/// Parses the embedding. Planarity and connectivity failures are reported
/// as a failed `embedding` invariant; malformed rotations are errors.
fn embedding(gj: &GraphJson, report: &mut RunReport) -> Result<Option<EmbeddedGraph>> {
    gj.to_graph()?;
    match EmbeddedGraph::from_json(gj) {
        Ok(g) => {
            report.push(Invariant::pass("embedding"));
            Ok(Some(g))
        }
        Err(e @ (Error::NonPlanarEmbedding(_) | Error::Disconnected)) => {
            report.push(Invariant::fail("embedding", json!({ "reason": e.to_string() })));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn even_triangulation_witness(g: &EmbeddedGraph) -> Value {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) % 2 == 1) {
        return json!({ "odd_degree_vertex": v, "degree": g.degree(v) });
    }
    let faces = g.trace_faces();
    match (0..faces.len()).find(|&i| faces.faces[i].len() != 3) {
        Some(i) => json!({ "non_triangular_face": faces.vertices(i) }),
        None => json!({ "reason": "fewer than four vertices" }),
    }
}

/// Even triangulation or a reason; anything else is unusable input.
fn triangulation(loaded: &Loaded) -> Result<EmbeddedGraph> {
    let g = EmbeddedGraph::from_json(&loaded.input.graph_json())?;
    if !g.is_even_triangulation() {
        bail!("not an even plane triangulation: {}", even_triangulation_witness(&g));
    }
    Ok(g)
}

pub fn check(loaded: &Loaded, family: CheckFamily, perm: Option<&str>, cap: u64) -> Result<RunReport> {
    let mut r = RunReport::new("check", Some(loaded.digest.clone()));
    let gj = loaded.input.graph_json();
    match family {
        CheckFamily::Multi4 => {
            let g = gj.to_graph()?;
            let w = multi4_witness(&g, cap)?;
            r.result = json!({ "family": "multi4", "n": g.vertex_count(), "m": g.edge_count() });
            r.push(match w {
                None => Invariant::pass("multi4"),
                Some(c) => Invariant::fail("multi4", json!({ "cycle": c, "len": c.len() })),
            });
        }
        CheckFamily::EvenTri | CheckFamily::BarnetteHypothesis => {
            let Some(g) = embedding(&gj, &mut r)? else { return Ok(r) };
            let even = g.is_even_triangulation();
            r.push(Invariant::check("even-triangulation", even, || even_triangulation_witness(&g)));
            r.result = json!({ "family": family_name(family), "n": g.n(), "m": g.edge_count(), "faces": g.trace_faces().len() });
            if family == CheckFamily::BarnetteHypothesis && even {
                let tp = labelling(&g, &loaded.input, perm)?;
                let h = hypothesis(&g, &tp)?;
                let w = h.family_witness()?;
                r.push(match &w {
                    None => Invariant::pass("h-in-family"),
                    Some(c) => Invariant::fail("h-in-family", json!({ "cycle": c, "len": c.len() })),
                });
                r.push(match h.bad_component() {
                    None => Invariant::pass("h-components-2-connected"),
                    Some(v) => Invariant::fail("h-components-2-connected", json!({ "vertex": v })),
                });
                r.result["classes"] = json!(tp.class_of);
                r.result["big"] = json!([h.b(1), h.b(2), h.b(3)]);
                r.result["h_edges"] = json!(h.graph.edges());
            }
        }
    }
    Ok(r)
}

fn family_name(f: CheckFamily) -> &'static str {
    match f {
        CheckFamily::EvenTri => "even-tri",
        CheckFamily::Multi4 => "multi4",
        CheckFamily::BarnetteHypothesis => "barnette-hypothesis",
    }
}

pub fn color(loaded: &Loaded, pin: Option<&str>) -> Result<RunReport> {
    let mut r = RunReport::new("color", Some(loaded.digest.clone()));
    let g = loaded.input.graph_json().to_graph()?;
    let a = loaded.input.alpha_colouring()?;
    if let Some(v) = a.keys().find(|v| !g.contains(**v)) {
        bail!("coloured vertex {v} is not in the graph");
    }
    let pin = pin.map(parse_pin).transpose()?;
    if let Some((v, _)) = pin {
        if !g.contains(v) {
            bail!("pin vertex {v} is not in the graph");
        }
        if a.contains_key(&v) {
            bail!("pin vertex {v} is an α vertex; pins must be β");
        }
    }
    let alpha: BTreeSet<Vertex> = a.keys().copied().collect();
    let Some(bp) = lift(TypedBipartition::from_alpha_set(&g, &alpha), &mut r)? else { return Ok(r) };
    let req = ColoringRequest { graph: g.clone(), bipartition: bp.clone(), a: a.clone(), pin };
    let Some(b) = lift(color_beta(&req), &mut r)? else { return Ok(r) };
    let v = verify_coloring(&g, &bp, &combine(&a, &b), pin, VerifyFlags::default())?;
    r.push(Invariant::check("no-monochromatic-cycle", v.no_monochromatic_cycle, || json!({ "cycle": v.cycle_witness })));
    r.push(Invariant::check("alternation", v.alternation, || json!({ "path": v.path_witness })));
    r.push(Invariant::check("pin", v.pin_respected, || json!({ "pin": pin.map(|(v, c)| (v, c.as_u8())) })));
    r.result = json!({ "b": b });
    Ok(r)
}

pub enum PartitionMode {
    Edge(String),
    FaceSparse,
    Seeds { x: Option<String>, y: Option<String> },
}

fn verify_partition(r: &mut RunReport, full: &Graph, p: &TreePartition, x: &BTreeSet<Vertex>, y: &BTreeSet<Vertex>) {
    let v = verify_tree_partition(full, p);
    r.push(Invariant::check("tree-partition", v.is_ok(), || json!({ "reason": v.clone().err() })));
    let missing: Vec<Vertex> = x.difference(&p.s).chain(y.difference(&p.t)).copied().collect();
    r.push(Invariant::check("seeds", missing.is_empty(), || json!({ "misplaced": missing })));
}

pub fn partition(loaded: &Loaded, mode: PartitionMode, perm: Option<&str>) -> Result<RunReport> {
    let mut r = RunReport::new("partition", Some(loaded.digest.clone()));
    let g = EmbeddedGraph::from_json(&loaded.input.graph_json())?;
    let full = g.to_graph();
    match mode {
        PartitionMode::Seeds { x, y } => {
            let x: BTreeSet<Vertex> = x.as_deref().map(parse_list).transpose()?.unwrap_or_default().into_iter().collect();
            let y: BTreeSet<Vertex> = y.as_deref().map(parse_list).transpose()?.unwrap_or_default().into_iter().collect();
            if let Some(v) = x.iter().chain(&y).find(|&&v| v >= g.n()) {
                bail!("seed vertex {v} is not in the graph");
            }
            let c = PartitionConstraint { x: x.clone(), y: y.clone() };
            let found = tree_partition_search(&full, &c, barnette::treesplit::DEFAULT_SEARCH_NODES, &|_| true)?;
            match found {
                Some(p) => {
                    verify_partition(&mut r, &full, &p, &x, &y);
                    r.result = json!({ "s": p.s, "t": p.t });
                }
                None => {
                    r.push(Invariant::fail("tree-partition", json!({ "reason": "no tree partition contains the seeds", "x": x, "y": y })));
                }
            }
        }
        PartitionMode::Edge(e) => {
            let g = triangulation(loaded)?;
            let (v, w) = parse_pair(&e)?;
            let tp = labelling(&g, &loaded.input, perm)?;
            let Some(ep) = lift(edge_pinned_partition_with(&g, &tp, v, w), &mut r)? else { return Ok(r) };
            let h = hypothesis(&g, &tp)?;
            verify_partition(&mut r, &full, &ep.partition, h.b(1), h.b(2));
            let side = if tp.class(w) == 1 { &ep.partition.s } else { &ep.partition.t };
            r.push(Invariant::check("edge-on-one-side", side.contains(&v) && side.contains(&w), || json!({ "edge": [v, w] })));
            r.result = json!({
                "s": ep.partition.s, "t": ep.partition.t, "route": ep.route,
                "seeding_conditions_hold": ep.seeding_conditions_hold,
            });
        }
        PartitionMode::FaceSparse => {
            let g = triangulation(loaded)?;
            let tp = labelling(&g, &loaded.input, perm)?;
            let Some(fp) = lift(face_sparse_partition_with(&g, &tp), &mut r)? else { return Ok(r) };
            let h = hypothesis(&g, &tp)?;
            verify_partition(&mut r, &full, &fp.partition, h.b(1), h.b(2));
            let broken: Vec<Vertex> = fp.implications.iter().filter(|i| !i.holds).map(|i| i.v).collect();
            r.push(Invariant::check("neighbour-sides", broken.is_empty(), || json!({ "vertices": broken })));
            r.result = json!({
                "s": fp.partition.s, "t": fp.partition.t, "steps": fp.steps, "vacuous": fp.vacuous,
                "seeding_conditions_hold": fp.seeding_conditions_hold, "enforced_by_search": fp.enforced_by_search,
            });
        }
    }
    Ok(r)
}

pub enum HamiltonMode {
    AvoidEdge(String),
    FaceSparse,
}

pub fn hamilton(loaded: &Loaded, mode: HamiltonMode, perm: Option<&str>) -> Result<RunReport> {
    let mut r = RunReport::new("hamilton", Some(loaded.digest.clone()));
    let g = triangulation(loaded)?;
    let tp = labelling(&g, &loaded.input, perm)?;
    let dual = g.dual()?;
    let dg = dual.graph.to_graph();
    match mode {
        HamiltonMode::AvoidEdge(e) => {
            let (u, v) = parse_pair(&e)?;
            let Some(de) = dual.dual_edge(u, v) else { bail!("{u},{v} is not an edge") };
            let Some(ac) = lift(hamilton_avoiding_edge(&g, &tp, de), &mut r)? else { return Ok(r) };
            let ver = verify_hamilton(&dg, &ac.cycle);
            r.push(Invariant::check("hamilton", ver.is_ok(), || json!({ "reason": ver.clone().err() })));
            r.push(Invariant::check("avoids-edge", !ac.cycle.contains_edge(de.0, de.1), || json!({ "dual_edge": de })));
            r.result = json!({
                "cycle": ac.cycle, "avoided_dual_edge": de, "primal_edge": ac.primal_edge,
                "s": ac.construction.partition.s, "t": ac.construction.partition.t,
            });
        }
        HamiltonMode::FaceSparse => {
            let Some(fs) = lift(hamilton_face_sparse(&g, &tp), &mut r)? else { return Ok(r) };
            let ver = verify_hamilton(&dg, &fs.cycle);
            r.push(Invariant::check("hamilton", ver.is_ok(), || json!({ "reason": ver.clone().err() })));
            let report = avoidance_report(&g, &dual, &tp, &fs.cycle)?;
            let bad: Vec<_> = report.violations().cloned().collect();
            r.push(Invariant::check("face-pattern", bad.is_empty(), || json!({ "faces": bad })));
            r.result = json!({ "cycle": fs.cycle, "faces": report.faces, "vacuous": fs.construction.vacuous });
        }
    }
    Ok(r)
}

/// Abstract graph in the wire format, vertices renumbered `0..n` in order
/// and neighbours sorted.
pub fn graph_to_json(g: &Graph) -> GraphJson {
    let verts: Vec<Vertex> = g.vertices().collect();
    let index = |v: Vertex| verts.binary_search(&v).unwrap();
    GraphJson { n: verts.len(), rotation: verts.iter().map(|&v| g.neighbors(v).map(index).collect()).collect() }
}

pub fn generate(kind: GenKind, n: usize, seed: u64) -> Result<Vec<Value>> {
    Ok(match kind {
        GenKind::EvenTri => gen_even_triangulations(n)?.iter().map(|g| json!(g.to_json())).collect(),
        GenKind::Bipyramid => vec![json!(gen_bipyramid(n)?.to_json())],
        GenKind::Multi4 => vec![json!(graph_to_json(&gen_multi4(n, seed)?))],
        GenKind::FaceSparse => gen_face_sparse_instances(n, seed)?
            .iter()
            .map(|l| {
                let mut v = json!(l.graph.to_json());
                v["classes"] = json!(l.partition.class_of);
                v
            })
            .collect(),
    })
}
