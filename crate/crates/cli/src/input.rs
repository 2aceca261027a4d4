use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use barnette::colorizer::{Colour, TwoColoring};
use barnette::embed::{EmbeddedGraph, GraphJson, TriPartition};
use barnette::Vertex;
use serde::Deserialize;
use sha2::{Digest, Sha256};

/// The graph wire format plus the optional α-colouring used by `color`.
#[derive(Debug, Deserialize)]
pub struct Input {
    pub n: usize,
    pub rotation: Vec<Vec<Vertex>>,
    #[serde(default)]
    pub a: Option<BTreeMap<Vertex, u8>>,
    /// Vertex classes, as emitted by `gen --kind face-sparse`.
    #[serde(default)]
    pub classes: Option<Vec<u8>>,
}

pub struct Loaded {
    pub input: Input,
    pub digest: String,
}

impl Input {
    pub fn graph_json(&self) -> GraphJson {
        GraphJson { n: self.n, rotation: self.rotation.clone() }
    }

    pub fn alpha_colouring(&self) -> Result<TwoColoring> {
        let a = self.a.as_ref().ok_or_else(|| anyhow!("input has no \"a\" colouring"))?;
        a.iter()
            .map(|(&v, &c)| Ok((v, Colour::from_u8(c).ok_or_else(|| anyhow!("colour of {v} must be 1 or 2, got {c}"))?)))
            .collect()
    }
}

/// Reads a file, or standard input for `-`.
pub fn load(path: &Path) -> Result<Loaded> {
    let mut bytes = Vec::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut bytes).context("reading standard input")?;
    } else {
        bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    }
    let input: Input = serde_json::from_slice(&bytes).context("parsing graph JSON")?;
    Ok(Loaded { input, digest: hex::encode(Sha256::digest(&bytes)) })
}

/// `v=1` or `v=2`.
pub fn parse_pin(s: &str) -> Result<(Vertex, Colour)> {
    let (v, c) = s.split_once('=').ok_or_else(|| anyhow!("pin must look like v=1 or v=2"))?;
    let v: Vertex = v.trim().parse().context("pin vertex")?;
    let c = c.trim().parse::<u8>().ok().and_then(Colour::from_u8).ok_or_else(|| anyhow!("pin colour must be 1 or 2"))?;
    Ok((v, c))
}

/// `u,v`.
pub fn parse_pair(s: &str) -> Result<(Vertex, Vertex)> {
    let (u, v) = s.split_once(',').ok_or_else(|| anyhow!("expected u,v"))?;
    Ok((u.trim().parse()?, v.trim().parse()?))
}

pub fn parse_list(s: &str) -> Result<Vec<Vertex>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| Ok(t.trim().parse()?)).collect()
}

/// The labelling given in the input, if any, else the canonical one; then
/// the relabelling `perm` such as `312` (old class 1 becomes 3, ...).
pub fn labelling(g: &EmbeddedGraph, input: &Input, perm: Option<&str>) -> Result<TriPartition> {
    let mut tp = g.tri_partition()?;
    if let Some(c) = &input.classes {
        tp = tp
            .all_permutations()
            .into_iter()
            .find(|t| &t.class_of == c)
            .ok_or_else(|| anyhow!("\"classes\" is not a proper 3-colouring of the triangulation"))?;
    }
    relabel(tp, perm)
}

fn relabel(tp: TriPartition, perm: Option<&str>) -> Result<TriPartition> {
    let Some(p) = perm else { return Ok(tp) };
    let digits: Vec<u8> = p.bytes().map(|b| b.wrapping_sub(b'0')).collect();
    let mut sorted = digits.clone();
    sorted.sort();
    if sorted != [1, 2, 3] {
        bail!("relabelling must be a permutation of 123, got {p}");
    }
    Ok(tp.permuted([digits[0], digits[1], digits[2]]))
}
