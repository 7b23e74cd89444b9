use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;

use super::anticlique::AnticliqueOptions;
use super::partition::{partition_bits, PartitionFlags};
use super::{LineMode, PlsParams};
use crate::graphcore::{BitGraph, Graph};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractOptions {
    pub anticlique: AnticliqueOptions,
    /// Cap on the witnesses kept per failure kind.
    pub max_witnesses: usize,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            anticlique: AnticliqueOptions::default(),
            max_witnesses: 10,
        }
    }
}

/// A vertex whose local partition failed certification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalFailure {
    pub vertex: u32,
    pub s0: usize,
    pub flags: PartitionFlags,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineCertification {
    pub lines_are_cliques: bool,
    pub lines_are_maximal: bool,
    pub edges_in_no_line: u64,
    pub edges_in_several_lines: u64,
    pub uncovered_edges: Vec<(u32, u32)>,
    pub multiply_covered_edges: Vec<(u32, u32)>,
    /// Number of vertices by number of lines through them.
    pub lines_per_vertex: BTreeMap<usize, u64>,
    pub max_lines_per_vertex: usize,
    pub s: i128,
    pub within_s: bool,
}

impl LineCertification {
    pub fn every_edge_in_unique_line(&self) -> bool {
        self.edges_in_no_line == 0 && self.edges_in_several_lines == 0
    }

    pub fn pass(&self) -> bool {
        self.lines_are_cliques
            && self.lines_are_maximal
            && self.every_edge_in_unique_line()
            && self.within_s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineExtraction {
    pub mode: LineMode,
    pub threshold: i128,
    /// Sorted lines, each a sorted vertex list.
    pub lines: Vec<Vec<u32>>,
    pub local_failure_count: usize,
    pub local_failures: Vec<LocalFailure>,
    pub certification: LineCertification,
}

impl LineExtraction {
    pub fn pass(&self) -> bool {
        self.local_failure_count == 0 && self.certification.pass()
    }
}

fn vertex_seed(seed: u64, x: u32) -> u64 {
    seed ^ (x as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

#[derive(Default)]
struct Acc {
    lines: FxHashSet<Vec<u32>>,
    failures: Vec<LocalFailure>,
}

impl Acc {
    fn merge(mut self, mut other: Acc) -> Acc {
        if self.lines.len() < other.lines.len() {
            std::mem::swap(&mut self, &mut other);
        }
        self.lines.extend(other.lines);
        self.failures.extend(other.failures);
        self
    }
}

fn check_regular(g: &Graph, p: &PlsParams) -> Result<()> {
    if let Some(v) = (0..g.vertex_count() as u32).find(|&v| g.degree(v) as i128 != p.k) {
        return Err(Error::NotRegular {
            expected: p.k.max(0) as u64,
            vertex: v,
            degree: g.degree(v),
        });
    }
    Ok(())
}

fn local_lines(
    g: &Graph,
    p: &PlsParams,
    threshold: i128,
    opts: &ExtractOptions,
    pos: &mut [u32],
    x: u32,
    mut acc: Acc,
) -> Acc {
    let local = BitGraph::local(g, x, pos);
    let aopts = AnticliqueOptions {
        seed: vertex_seed(opts.anticlique.seed, x),
        ..opts.anticlique
    };
    let part = partition_bits(&local, p, &aopts);
    if !part.flags.all() {
        acc.failures.push(LocalFailure {
            vertex: x,
            s0: part.s0,
            flags: part.flags,
        });
    }
    let nbrs = g.neighbors(x);
    for c in &part.cliques {
        if c.len() as i128 + 1 < threshold {
            continue;
        }
        let mut line: Vec<u32> = c.iter().map(|&i| nbrs[i as usize]).collect();
        line.push(x);
        line.sort_unstable();
        acc.lines.insert(line);
    }
    acc
}

fn run(
    g: &Graph,
    p: &PlsParams,
    mode: LineMode,
    opts: &ExtractOptions,
    vertices: &[u32],
) -> (Vec<Vec<u32>>, Vec<LocalFailure>) {
    let threshold = p.line_threshold(mode);
    let n = g.vertex_count();
    let acc = vertices
        .par_iter()
        .fold(
            || (vec![u32::MAX; n], Acc::default()),
            |(mut pos, acc), &x| {
                let acc = local_lines(g, p, threshold, opts, &mut pos, x, acc);
                (pos, acc)
            },
        )
        .map(|(_, acc)| acc)
        .reduce(Acc::default, Acc::merge);
    let mut lines: Vec<Vec<u32>> = acc.lines.into_iter().collect();
    lines.sort_unstable();
    let mut failures = acc.failures;
    failures.sort_unstable_by_key(|f| f.vertex);
    (lines, failures)
}

pub fn extract_lines(g: &Graph, p: &PlsParams, mode: LineMode) -> Result<LineExtraction> {
    extract_lines_with(g, p, mode, &ExtractOptions::default())
}

/// Lines are the cliques `{x} ∪ C_i` from the strong-clique partition of
/// every local graph that meet the size threshold of `mode`; the result is
/// then certified against every edge of `g`.
pub fn extract_lines_with(
    g: &Graph,
    p: &PlsParams,
    mode: LineMode,
    opts: &ExtractOptions,
) -> Result<LineExtraction> {
    check_regular(g, p)?;
    let vertices: Vec<u32> = (0..g.vertex_count() as u32).collect();
    let (lines, mut failures) = run(g, p, mode, opts, &vertices);
    let local_failure_count = failures.len();
    failures.truncate(opts.max_witnesses);
    let certification = certify_lines(g, &lines, p.s, opts.max_witnesses);
    Ok(LineExtraction {
        mode,
        threshold: p.line_threshold(mode),
        lines,
        local_failure_count,
        local_failures: failures,
        certification,
    })
}

/// Checks that lines are maximal cliques and counts, for every edge, the
/// lines containing it.
pub fn certify_lines(
    g: &Graph,
    lines: &[Vec<u32>],
    s: i128,
    max_witnesses: usize,
) -> LineCertification {
    let n = g.vertex_count();
    let mut per_edge = vec![0u8; g.targets().len()];
    let mut per_vertex = vec![0usize; n];
    let mut cliques = true;
    for line in lines {
        for (i, &a) in line.iter().enumerate() {
            per_vertex[a as usize] += 1;
            for &b in &line[i + 1..] {
                match g.arc_index(a, b) {
                    Some(idx) => per_edge[idx] = per_edge[idx].saturating_add(1),
                    None => cliques = false,
                }
            }
        }
    }
    let maximal = lines.par_iter().all(|line| match line.first() {
        None => false,
        Some(&a) => g.neighbors(a).iter().all(|&v| {
            line.binary_search(&v).is_ok() || line.iter().any(|&u| u != a && !g.has_edge(u, v))
        }),
    });
    let (mut none, mut several) = (0u64, 0u64);
    let (mut uncovered, mut multiple) = (Vec::new(), Vec::new());
    for u in 0..n as u32 {
        let base = g.offsets()[u as usize] as usize;
        for (i, &v) in g.neighbors(u).iter().enumerate() {
            if v < u {
                continue;
            }
            match per_edge[base + i] {
                0 => {
                    none += 1;
                    if uncovered.len() < max_witnesses {
                        uncovered.push((u, v));
                    }
                }
                1 => {}
                _ => {
                    several += 1;
                    if multiple.len() < max_witnesses {
                        multiple.push((u, v));
                    }
                }
            }
        }
    }
    let mut hist = BTreeMap::new();
    per_vertex
        .iter()
        .for_each(|&c| *hist.entry(c).or_insert(0u64) += 1);
    let max = per_vertex.iter().copied().max().unwrap_or(0);
    LineCertification {
        lines_are_cliques: cliques,
        lines_are_maximal: maximal,
        edges_in_no_line: none,
        edges_in_several_lines: several,
        uncovered_edges: uncovered,
        multiply_covered_edges: multiple,
        lines_per_vertex: hist,
        max_lines_per_vertex: max,
        s,
        within_s: max as i128 <= s,
    }
}

/// Extraction restricted to the local graphs of `vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampledExtraction {
    pub vertices_checked: usize,
    pub local_failure_count: usize,
    pub local_failures: Vec<LocalFailure>,
    /// Distinct lines found through the sampled vertices.
    pub lines: Vec<Vec<u32>>,
    /// Number of sampled vertices by number of lines through them.
    pub lines_per_vertex: BTreeMap<usize, u64>,
}

pub fn extract_lines_at(
    g: &Graph,
    p: &PlsParams,
    mode: LineMode,
    vertices: &[u32],
    opts: &ExtractOptions,
) -> Result<SampledExtraction> {
    check_regular(g, p)?;
    if let Some(&v) = vertices.iter().find(|&&v| v as usize >= g.vertex_count()) {
        return Err(Error::InvalidVertex {
            vertex: v as u64,
            count: g.vertex_count(),
        });
    }
    let (lines, mut failures) = run(g, p, mode, opts, vertices);
    let mut hist = BTreeMap::new();
    for &x in vertices {
        let c = lines.iter().filter(|l| l.binary_search(&x).is_ok()).count();
        *hist.entry(c).or_insert(0u64) += 1;
    }
    let local_failure_count = failures.len();
    failures.truncate(opts.max_witnesses);
    Ok(SampledExtraction {
        vertices_checked: vertices.len(),
        local_failure_count,
        local_failures: failures,
        lines,
        lines_per_vertex: hist,
    })
}
