//! Case coverage of the colouring extensions behind the edge-pinned and
//! face-sparse partitions. Every extension is checked against the
//! brute-force oracles in `common`, not the library's own verifiers.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use barnette::colorizer::{color_beta, color_beta_4cycle, combine, Colour, ColoringRequest, TwoColoring};
use barnette::embed::{EmbeddedGraph, TriPartition};
use barnette::gen::{gen_even_triangulations, gen_face_sparse_instances};
use barnette::treesplit::*;
use barnette::{Graph, Vertex};

use common::{has_mono_cycle, induces_tree};

/// Even triangulations with `n <= 11` under every labelling whose `H` lies
/// in the family, plus sampled instances at 13 and 14 vertices.
fn corpus() -> Vec<(EmbeddedGraph, TriPartition, Hypothesis)> {
    let mut graphs = Vec::new();
    for n in 6..=11 {
        graphs.extend(gen_even_triangulations(n).unwrap());
    }
    for n in [13, 14] {
        graphs.extend(gen_face_sparse_instances(n, n as u64).unwrap().into_iter().map(|l| l.graph));
    }
    let mut out = Vec::new();
    for g in graphs {
        if g.bipyramid_apexes().is_some() {
            continue;
        }
        for tp in g.tri_partition().unwrap().all_permutations() {
            let h = hypothesis(&g, &tp).unwrap();
            if h.in_family().unwrap() {
                out.push((g.clone(), tp, h));
            }
        }
    }
    out
}

fn class_colour(tp: &TriPartition, v: Vertex) -> Colour {
    if tp.class(v) == 1 {
        Colour::One
    } else {
        Colour::Two
    }
}

fn span_graph(g: &EmbeddedGraph, core: &Graph, spans: &[BTreeSet<Vertex>]) -> Graph {
    let full = g.to_graph();
    let mut out = core.clone();
    for s in spans {
        out = out.union(&full.induced(s));
    }
    out
}

#[test]
fn single_edge_extension_reaches_every_case_and_is_sound() {
    let mut seen: BTreeMap<EdgeCase, usize> = BTreeMap::new();
    let mut repaired = 0;
    for (g, tp, h) in corpus() {
        let Ok(paths) = fan_paths(&g, &h.bigsmall) else { continue };
        let s3 = h.s(3);
        for &v in h.b(3) {
            for &w in g.rotation(v) {
                if h.bigsmall.is_big(w) {
                    continue;
                }
                let fits = |p: &&FanPath| {
                    p.interior().contains(&w)
                        && (p.flanks.contains(&v) || p.ends.contains(&v))
                        && (p.flanks.iter().all(|&f| h.bigsmall.is_big(f))
                            || (p.flanks.contains(&v) && p.flanks.iter().any(|f| s3.contains(f))))
                };
                for pw in paths.iter().filter(fits) {
                    let y = if pw.flanks.contains(&v) {
                        *pw.flanks.iter().find(|&&f| f != v).unwrap()
                    } else {
                        *pw.ends.iter().find(|&&e| e != v).unwrap()
                    };
                    let cw = class_colour(&tp, w);
                    let b = if h.b(3).contains(&y) {
                        color_beta_4cycle(&h.graph, &h.bipartition, &h.a, v, y, cw)
                    } else {
                        let req = ColoringRequest {
                            graph: h.graph.clone(),
                            bipartition: h.bipartition.clone(),
                            a: h.a.clone(),
                            pin: Some((v, cw)),
                        };
                        color_beta(&req)
                    }
                    .unwrap();
                    let (b0, case, rep) = extend_for_edge(&g, &h, &b, v, w, pw).unwrap();
                    *seen.entry(case).or_default() += 1;
                    repaired += rep as usize;
                    assert!(b.iter().all(|(u, c)| b0.get(u) == Some(c)), "extension recoloured a seed");
                    assert_eq!(b0.get(&w), Some(&cw), "w must take the colour of v");
                    let l = span_graph(&g, &h.core, &[pw.span()]);
                    assert!(!has_mono_cycle(&l, &combine(&h.a, &b0)), "monochromatic cycle after {case:?}");
                }
            }
        }
    }
    for case in [EdgeCase::FlanksInB3, EdgeCase::EndsInB3, EdgeCase::EndToOuterBig, EdgeCase::SmallFlank] {
        assert!(seen.get(&case).copied().unwrap_or(0) > 0, "{case:?} never exercised: {seen:?}");
    }
    assert!(repaired > 0, "the repair branch is never exercised");
}

/// The implications, recomputed from the partition and the labelling alone.
fn implications_hold(g: &EmbeddedGraph, tp: &TriPartition, h: &Hypothesis, p: &TreePartition) -> bool {
    h.b(3).iter().all(|&v| {
        let nbrs = g.rotation(v);
        if h.graph.neighbors(v).count() >= 3 {
            nbrs.iter().all(|&u| (tp.class(u) == 1) == p.s.contains(&u))
        } else {
            let own = if p.s.contains(&v) { 1 } else { 2 };
            let same: Vec<_> = nbrs.iter().filter(|&&u| p.s.contains(&u) == p.s.contains(&v)).collect();
            same.len() <= 2 && same.iter().all(|&&u| tp.class(u) == own)
        }
    })
}

#[test]
fn face_extension_reaches_every_case_and_is_sound() {
    let mut seen: BTreeMap<FaceCase, usize> = BTreeMap::new();
    for (g, tp, h) in corpus() {
        if h.graph.is_empty() || !h.components_two_connected() {
            continue;
        }
        let paths = fan_paths(&g, &h.bigsmall).unwrap();
        let (r, r_hat) = families_r(&paths, &h);
        let req = ColoringRequest { graph: h.graph.clone(), bipartition: h.bipartition.clone(), a: h.a.clone(), pin: None };
        let mut b: TwoColoring = color_beta(&req).unwrap();
        recolour_light_betas(&h, &mut b);
        assert!(!has_mono_cycle(&h.core, &combine(&h.a, &b)));
        let (bn, steps) = extend_for_faces(&g, &h, &b, &r, &r_hat).unwrap();
        for s in &steps {
            *seen.entry(s.case).or_default() += 1;
        }
        assert!(b.iter().all(|(u, c)| bn.get(u) == Some(c)));
        let spans: Vec<_> = r.iter().chain(&r_hat).map(|p| p.span()).collect();
        let l = span_graph(&g, &h.core, &spans);
        assert!(!has_mono_cycle(&l, &combine(&h.a, &bn)));

        let fsp = face_sparse_partition_with(&g, &tp).unwrap();
        let p = &fsp.partition;
        assert!(induces_tree(&g.to_graph(), &p.s) && induces_tree(&g.to_graph(), &p.t));
        assert!(h.b(1).is_subset(&p.s) && h.b(2).is_subset(&p.t));
        assert!(implications_hold(&g, &tp, &h, p));
    }
    for case in [
        FaceCase::FlanksHeavy,
        FaceCase::FlanksLight,
        FaceCase::EndsHeavy,
        FaceCase::EndsLight,
        FaceCase::SmallFlankHeavy,
        FaceCase::SmallFlankLight,
    ] {
        assert!(seen.get(&case).copied().unwrap_or(0) > 0, "{case:?} never exercised: {seen:?}");
    }
}
