use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{pls_point_graph, PartialLinearSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RcsOptions {
    /// Conditions (3) and (4) are checked from every point up to this many
    /// points, and from `sample_points` seeded base points above it.
    pub exhaustive_cutoff: usize,
    pub sample_points: usize,
    pub seed: u64,
}

impl Default for RcsOptions {
    fn default() -> Self {
        Self {
            exhaustive_cutoff: 100_000,
            sample_points: 1000,
            seed: 42,
        }
    }
}

/// A minimum compared with a bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdCheck {
    pub observed_min: u64,
    pub bound: u64,
    pub pass: bool,
}

/// Counts that must all equal `expected`, as a histogram over the checked
/// configurations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountCheck {
    pub expected: u64,
    pub configurations: u64,
    pub histogram: BTreeMap<u64, u64>,
    pub pass: bool,
}

impl CountCheck {
    fn new(expected: u64, histogram: BTreeMap<u64, u64>) -> Self {
        let configurations = histogram.values().sum();
        let pass = histogram.keys().all(|&c| c == expected);
        Self {
            expected,
            configurations,
            histogram,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RcsCoverage {
    Exhaustive,
    SampledBasePoints { base_points: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RcsReport {
    pub q: u64,
    pub points: usize,
    pub lines: usize,
    /// Every line has at least `q^2 + q + 1` points.
    pub line_size: ThresholdCheck,
    /// Every point is on more than `q + 1` lines (`bound` is `q + 2`).
    pub lines_per_point: ThresholdCheck,
    /// Lines on `p` meeting `L`, over pairs with `p` at distance 1 from `L`.
    pub lines_meeting: CountCheck,
    /// Lines on `p` at distance 1 from `p'`, over pairs at distance 2.
    pub lines_near_point: CountCheck,
    pub components: usize,
    pub connected: bool,
    pub coverage: RcsCoverage,
    pub pass: bool,
}

pub fn verify_rcs(pls: &PartialLinearSpace, q: u64) -> RcsReport {
    verify_rcs_with(pls, q, &RcsOptions::default())
}

struct Scratch {
    line_count: Vec<u32>,
    line_epoch: Vec<u32>,
    point_count: Vec<u32>,
    point_epoch: Vec<u32>,
    point_line: Vec<u32>,
    near: Vec<u32>,
    touched: Vec<u32>,
    epoch: u32,
}

#[derive(Default)]
struct Hists {
    meeting: BTreeMap<u64, u64>,
    near: BTreeMap<u64, u64>,
}

impl Hists {
    fn merge(mut self, other: Hists) -> Hists {
        for (k, v) in other.meeting {
            *self.meeting.entry(k).or_default() += v;
        }
        for (k, v) in other.near {
            *self.near.entry(k).or_default() += v;
        }
        self
    }
}

/// Counts for conditions (3) and (4) with base point `p`.
fn count_from(pls: &PartialLinearSpace, p: u32, s: &mut Scratch, h: &mut Hists) {
    s.epoch += 1;
    let e = s.epoch;
    // condition (3): a line through a neighbour r of p, other than the line
    // pr, is at distance 1 from p; linearity makes each line on p meet it at
    // most once
    s.touched.clear();
    for &m in pls.lines_on(p) {
        for &r in pls.line(m) {
            if r == p {
                continue;
            }
            for &l in pls.lines_on(r) {
                if l == m {
                    continue;
                }
                if s.line_epoch[l as usize] != e {
                    s.line_epoch[l as usize] = e;
                    s.line_count[l as usize] = 0;
                    s.touched.push(l);
                }
                s.line_count[l as usize] += 1;
            }
        }
    }
    for &l in &s.touched {
        *h.meeting
            .entry(s.line_count[l as usize] as u64)
            .or_default() += 1;
    }

    // condition (4): points t at distance 2 are the neighbours of neighbours
    // outside N[p]; count the lines on p that contain a neighbour of t
    s.near[p as usize] = e;
    for &m in pls.lines_on(p) {
        pls.line(m).iter().for_each(|&r| s.near[r as usize] = e);
    }
    s.touched.clear();
    for &m in pls.lines_on(p) {
        for &r in pls.line(m) {
            if r == p {
                continue;
            }
            for &l in pls.lines_on(r) {
                if l == m {
                    continue;
                }
                for &t in pls.line(l) {
                    if s.near[t as usize] == e {
                        continue;
                    }
                    if s.point_epoch[t as usize] != e {
                        s.point_epoch[t as usize] = e;
                        s.point_count[t as usize] = 0;
                        s.point_line[t as usize] = u32::MAX;
                        s.touched.push(t);
                    }
                    if s.point_line[t as usize] != m {
                        s.point_line[t as usize] = m;
                        s.point_count[t as usize] += 1;
                    }
                }
            }
        }
    }
    for &t in &s.touched {
        *h.near.entry(s.point_count[t as usize] as u64).or_default() += 1;
    }
}

/// Checks the five Ray-Chaudhuri–Sprague conditions with the given `q`.
/// Distances are measured in the point graph of `pls`.
pub fn verify_rcs_with(pls: &PartialLinearSpace, q: u64, opts: &RcsOptions) -> RcsReport {
    let n = pls.point_count();
    let min_line = pls
        .lines()
        .iter()
        .map(|l| l.len() as u64)
        .min()
        .unwrap_or(0);
    let min_per_point = (0..n as u32)
        .map(|p| pls.lines_on(p).len() as u64)
        .min()
        .unwrap_or(0);
    let line_size = ThresholdCheck {
        observed_min: min_line,
        bound: q * q + q + 1,
        pass: min_line > q * q + q,
    };
    let lines_per_point = ThresholdCheck {
        observed_min: min_per_point,
        bound: q + 2,
        pass: min_per_point > q + 1,
    };
    let (bases, coverage): (Vec<u32>, RcsCoverage) = if n <= opts.exhaustive_cutoff {
        ((0..n as u32).collect(), RcsCoverage::Exhaustive)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut b: Vec<u32> = sample(&mut rng, n, opts.sample_points.min(n))
            .into_iter()
            .map(|v| v as u32)
            .collect();
        b.sort_unstable();
        let c = RcsCoverage::SampledBasePoints {
            base_points: b.len(),
            seed: opts.seed,
        };
        (b, c)
    };
    let lines = pls.line_count();
    // points are processed in contiguous chunks so that each scratch buffer
    // is reused many times
    let hists = bases
        .par_chunks(256)
        .map(|chunk| {
            let mut s = Scratch {
                line_count: vec![0; lines],
                line_epoch: vec![0; lines],
                point_count: vec![0; n],
                point_epoch: vec![0; n],
                point_line: vec![u32::MAX; n],
                near: vec![0; n],
                touched: Vec::new(),
                epoch: 0,
            };
            let mut h = Hists::default();
            for &p in chunk {
                count_from(pls, p, &mut s, &mut h);
            }
            h
        })
        .reduce(Hists::default, Hists::merge);
    let (_, components) = pls_point_graph(pls).components();
    let lines_meeting = CountCheck::new(q + 1, hists.meeting);
    let lines_near_point = CountCheck::new(q + 1, hists.near);
    let connected = components == 1;
    let pass = line_size.pass
        && lines_per_point.pass
        && lines_meeting.pass
        && lines_near_point.pass
        && connected;
    RcsReport {
        q,
        points: n,
        lines,
        line_size,
        lines_per_point,
        lines_meeting,
        lines_near_point,
        components,
        connected,
        coverage,
        pass,
    }
}
