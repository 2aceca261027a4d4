use std::collections::BTreeMap;

use anyhow::Result;
use barnette::colorizer::{color_beta, combine, verify_coloring, Colour, ColoringRequest, TwoColoring, VerifyFlags};
use barnette::embed::{EmbeddedGraph, TriPartition};
use barnette::gen::{gen_even_triangulations, gen_multi4, gen_face_sparse_instances};
use barnette::stein::{avoidance_report, hamilton_avoiding_edge, hamilton_face_sparse, stein_forward_with, verify_hamilton};
use barnette::structure::bipartition_typed;
use barnette::treesplit::{hypothesis, verify_tree_partition, TreePartition};
use barnette::{Error, Graph, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::graph_to_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SurveyFamily {
    EvenTri,
    Multi4,
    FaceSparse,
}

pub struct SurveyArgs {
    pub family: SurveyFamily,
    pub n_max: usize,
    pub count: usize,
    pub seed: u64,
    pub jobs: usize,
}

/// Tally of one certificate over an instance.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Tally {
    pub checked: u64,
    pub passed: u64,
    /// Instances outside the hypothesis of the certificate.
    pub skipped: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceRecord {
    pub family: &'static str,
    pub index: usize,
    pub n: usize,
    pub certificates: BTreeMap<&'static str, Tally>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<Value>,
}

struct Recorder {
    tallies: BTreeMap<&'static str, Tally>,
    failure: Option<Value>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { tallies: BTreeMap::new(), failure: None }
    }

    fn record(&mut self, cert: &'static str, ok: bool, witness: impl FnOnce() -> Value) {
        let t = self.tallies.entry(cert).or_default();
        t.checked += 1;
        if ok {
            t.passed += 1;
        } else if self.failure.is_none() {
            self.failure = Some(json!({ "certificate": cert, "witness": witness() }));
        }
    }

    fn skip(&mut self, cert: &'static str) {
        self.tallies.entry(cert).or_default().skipped += 1;
    }

    fn finish(self, family: &'static str, index: usize, n: usize, instance: impl FnOnce() -> Value) -> InstanceRecord {
        let pass = self.failure.is_none();
        InstanceRecord {
            family,
            index,
            n,
            certificates: self.tallies,
            pass,
            instance: (!pass).then(instance),
            failure: self.failure,
        }
    }
}

fn hypothesis_failure(e: &Error) -> bool {
    matches!(e, Error::HNotInFamily(_) | Error::HComponentNot2Connected(_))
}

fn distinct_labellings(g: &EmbeddedGraph) -> Result<Vec<TriPartition>> {
    let mut out: Vec<TriPartition> = Vec::new();
    for tp in g.tri_partition()?.all_permutations() {
        if !out.contains(&tp) {
            out.push(tp);
        }
    }
    Ok(out)
}

fn survey_triangulation(index: usize, g: &EmbeddedGraph, labellings: &[TriPartition]) -> Result<InstanceRecord> {
    let mut rec = Recorder::new();
    let full = g.to_graph();
    let dual = g.dual()?;
    let dg = dual.graph.to_graph();
    let n = g.n();
    for mask in 0u64..1 << n {
        let p = TreePartition {
            s: (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
            t: (0..n).filter(|&v| mask >> v & 1 == 0).collect(),
        };
        let trees = verify_tree_partition(&full, &p).is_ok();
        let cycle = stein_forward_with(g, &dual, &p).ok().filter(|h| verify_hamilton(&dg, h).is_ok());
        rec.record("stein-iff", trees == cycle.is_some(), || json!({ "s": p.s, "trees": trees }));
    }
    for tp in labellings {
        let h = hypothesis(g, tp)?;
        for &v in h.b(3) {
            for &w in g.rotation(v) {
                let de = dual.dual_edge(v, w).expect("primal edge has a dual");
                match hamilton_avoiding_edge(g, tp, de) {
                    Ok(ac) => {
                        let ok = verify_hamilton(&dg, &ac.cycle).is_ok() && !ac.cycle.contains_edge(de.0, de.1);
                        rec.record("avoid-edge", ok, || json!({ "classes": tp.class_of, "edge": [v, w] }));
                    }
                    Err(e) if hypothesis_failure(&e) => rec.skip("avoid-edge"),
                    Err(e) => rec.record("avoid-edge", false, || json!({ "classes": tp.class_of, "edge": [v, w], "error": e.to_string() })),
                }
            }
        }
        face_sparse(&mut rec, g, tp, &dual, &dg)?;
    }
    Ok(rec.finish("even-tri", index, n, || json!(g.to_json())))
}

fn face_sparse(rec: &mut Recorder, g: &EmbeddedGraph, tp: &TriPartition, dual: &barnette::embed::DualGraph, dg: &Graph) -> Result<()> {
    match hamilton_face_sparse(g, tp) {
        Ok(fs) => {
            let clean = avoidance_report(g, dual, tp, &fs.cycle)?.is_clean();
            let ok = verify_hamilton(dg, &fs.cycle).is_ok() && clean;
            rec.record("face-sparse", ok, || json!({ "classes": tp.class_of, "cycle": fs.cycle }));
        }
        Err(e) if hypothesis_failure(&e) => rec.skip("face-sparse"),
        Err(e) => rec.record("face-sparse", false, || json!({ "classes": tp.class_of, "error": e.to_string() })),
    }
    Ok(())
}

/// Exhaustive α-colourings up to six α vertices, otherwise 50 random ones.
fn alpha_colourings(alphas: &[Vertex], rng: &mut ChaCha8Rng) -> Vec<TwoColoring> {
    let pick = |bits: u64| -> TwoColoring {
        alphas.iter().enumerate().map(|(i, &v)| (v, if bits >> i & 1 == 0 { Colour::One } else { Colour::Two })).collect()
    };
    if alphas.len() <= 6 {
        (0u64..1 << alphas.len()).map(pick).collect()
    } else {
        (0..50)
            .map(|_| alphas.iter().map(|&v| (v, if rng.gen::<bool>() { Colour::One } else { Colour::Two })).collect())
            .collect()
    }
}

fn survey_multi4(index: usize, size: usize, seed: u64) -> Result<InstanceRecord> {
    let mut rec = Recorder::new();
    let g = gen_multi4(size, seed)?;
    let bp = bipartition_typed(&g)?;
    let alphas: Vec<Vertex> = g.vertices().filter(|&v| bp.is_alpha(v)).collect();
    let betas: Vec<Vertex> = g.vertices().filter(|&v| bp.is_beta(v)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for a in alpha_colourings(&alphas, &mut rng) {
        for &v in &betas {
            for c in [Colour::One, Colour::Two] {
                let req = ColoringRequest { graph: g.clone(), bipartition: bp.clone(), a: a.clone(), pin: Some((v, c)) };
                let ok = match color_beta(&req) {
                    Ok(b) => verify_coloring(&g, &bp, &combine(&a, &b), Some((v, c)), VerifyFlags::default())?.all_pass(),
                    Err(_) => false,
                };
                rec.record("colouring", ok, || json!({ "a": a, "pin": [v, c.as_u8()] }));
            }
        }
    }
    Ok(rec.finish("multi4", index, g.vertex_count(), || json!(graph_to_json(&g))))
}

fn survey_face_sparse(index: usize, g: &EmbeddedGraph, tp: &TriPartition) -> Result<InstanceRecord> {
    let mut rec = Recorder::new();
    let dual = g.dual()?;
    face_sparse(&mut rec, g, tp, &dual, &dual.graph.to_graph())?;
    Ok(rec.finish("face-sparse", index, g.n(), || {
        let mut v = json!(g.to_json());
        v["classes"] = json!(tp.class_of);
        v
    }))
}

/// Per-instance records in a deterministic order.
pub fn run(args: &SurveyArgs) -> Result<Vec<InstanceRecord>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs.max(1)).build()?;
    pool.install(|| match args.family {
        SurveyFamily::EvenTri => {
            let mut graphs = Vec::new();
            for n in 6..=args.n_max {
                graphs.extend(gen_even_triangulations(n)?);
            }
            graphs
                .par_iter()
                .enumerate()
                .map(|(i, g)| survey_triangulation(i, g, &distinct_labellings(g)?))
                .collect()
        }
        SurveyFamily::Multi4 => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let jobs: Vec<(usize, u64)> = (0..args.count).map(|_| (rng.gen_range(4..=16), rng.gen())).collect();
            jobs.par_iter().enumerate().map(|(i, &(size, seed))| survey_multi4(i, size, seed)).collect()
        }
        SurveyFamily::FaceSparse => {
            let mut inst = Vec::new();
            for n in 6..=args.n_max {
                match gen_face_sparse_instances(n, args.seed.wrapping_add(n as u64)) {
                    Ok(list) => inst.extend(list),
                    Err(Error::NoneFound(_)) => {}
                    Err(e) => return Err(e.into()),
                }
            }
            inst.par_iter().enumerate().map(|(i, l)| survey_face_sparse(i, &l.graph, &l.partition)).collect()
        }
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AggregateRow {
    pub certificate: &'static str,
    pub checked: u64,
    pub passed: u64,
    pub skipped: u64,
    pub pass_rate: Option<f64>,
}

pub fn aggregate(records: &[InstanceRecord]) -> Vec<AggregateRow> {
    let mut total: BTreeMap<&'static str, Tally> = BTreeMap::new();
    for r in records {
        for (&k, t) in &r.certificates {
            let e = total.entry(k).or_default();
            e.checked += t.checked;
            e.passed += t.passed;
            e.skipped += t.skipped;
        }
    }
    total
        .into_iter()
        .map(|(certificate, t)| AggregateRow {
            certificate,
            checked: t.checked,
            passed: t.passed,
            skipped: t.skipped,
            pass_rate: (t.checked > 0).then(|| t.passed as f64 / t.checked as f64),
        })
        .collect()
}
