use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graphcore::{BitGraph, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnticliqueOptions {
    /// Number of greedy starts.
    pub starts: usize,
    pub seed: u64,
    /// Branch-and-bound node cap.
    pub node_budget: u64,
}

impl Default for AnticliqueOptions {
    fn default() -> Self {
        Self {
            starts: 8,
            seed: 42,
            node_budget: 10_000_000,
        }
    }
}

/// Why the returned anti-clique is (or may not be) of maximum order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Optimality {
    /// A cover by this many cliques matches the order found.
    CliqueCover { cliques: usize },
    /// Branch and bound finished.
    Exhaustive { nodes: u64 },
    /// The order reached the cap; larger orders were not searched for.
    CapReached,
    /// Branch and bound stopped at the node budget.
    BudgetExhausted { nodes: u64 },
}

impl Optimality {
    pub fn is_proven(&self) -> bool {
        matches!(
            self,
            Optimality::CliqueCover { .. } | Optimality::Exhaustive { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnticliqueSearch {
    pub vertices: Vec<u32>,
    pub optimality: Optimality,
}

impl AnticliqueSearch {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }
}

pub fn max_anticlique(g: &Graph, cap: usize) -> AnticliqueSearch {
    max_anticlique_with(g, cap, &AnticliqueOptions::default())
}

/// Greedy anti-cliques from seeded starts, then an exact search whose depth
/// is capped at `cap`.
pub fn max_anticlique_with(g: &Graph, cap: usize, opts: &AnticliqueOptions) -> AnticliqueSearch {
    let bg = BitGraph::from_graph(g);
    let best = greedy_multistart(&bg, opts);
    exact_search(&bg, best, cap, opts)
}

/// Greedy maximal anti-clique from `start`, always adding the candidate
/// with fewest neighbours among the remaining candidates.
fn greedy_from(bg: &BitGraph, start: usize) -> Vec<usize> {
    let mut picked = vec![start];
    let mut cand = bg.full_set();
    cand.difference_with(&bg.closed_row(start));
    while !cand.is_clear() {
        let v = cand
            .ones()
            .min_by_key(|&v| (bg.row(v).intersection_count(&cand), v))
            .expect("nonempty");
        picked.push(v);
        cand.remove(v);
        cand.difference_with(bg.row(v));
    }
    picked.sort_unstable();
    picked
}

pub(crate) fn greedy_multistart(bg: &BitGraph, opts: &AnticliqueOptions) -> Vec<usize> {
    let n = bg.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let starts: Vec<usize> = if n <= opts.starts {
        (0..n).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut s = sample(&mut rng, n, opts.starts.max(1)).into_vec();
        s.sort_unstable();
        s
    };
    let mut best: Vec<usize> = Vec::new();
    for s in starts {
        let a = greedy_from(bg, s);
        if a.len() > best.len() {
            best = a;
        }
    }
    best
}

/// Sequential greedy clique cover, taking vertices in the given order.
fn greedy_classes(bg: &BitGraph, order: impl IntoIterator<Item = usize>) -> Vec<Vec<usize>> {
    let mut commons: Vec<FixedBitSet> = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in order {
        match commons.iter().position(|c| c.contains(v)) {
            Some(j) => {
                commons[j].intersect_with(bg.row(v));
                classes[j].push(v);
            }
            None => {
                commons.push(bg.row(v).clone());
                classes.push(vec![v]);
            }
        }
    }
    classes
}

/// Greedy clique cover of `set` in ascending order. Returns the vertices
/// sorted by class, with 1-based class numbers.
fn clique_cover(bg: &BitGraph, set: &FixedBitSet) -> Vec<(usize, usize)> {
    let classes = greedy_classes(bg, set.ones());
    classes
        .into_iter()
        .enumerate()
        .flat_map(|(j, c)| c.into_iter().map(move |v| (v, j + 1)))
        .collect()
}

/// Clique cover grown from one class per vertex of the anti-clique
/// `anchors`, always placing next the vertex with fewest classes able to
/// take it. Returns the number of classes.
fn anchored_cover_size(bg: &BitGraph, anchors: &[usize]) -> usize {
    let mut commons: Vec<FixedBitSet> = anchors.iter().map(|&a| bg.row(a).clone()).collect();
    let mut left: Vec<usize> = (0..bg.vertex_count())
        .filter(|v| !anchors.contains(v))
        .collect();
    while !left.is_empty() {
        let (i, _) = left
            .iter()
            .enumerate()
            .map(|(i, &v)| (i, commons.iter().filter(|c| c.contains(v)).count()))
            .min_by_key(|&(i, k)| (k, left[i]))
            .expect("nonempty");
        let v = left.swap_remove(i);
        match commons.iter().position(|c| c.contains(v)) {
            Some(j) => commons[j].intersect_with(bg.row(v)),
            None => commons.push(bg.row(v).clone()),
        }
    }
    commons.len()
}

struct Search<'a> {
    bg: &'a BitGraph,
    cap: usize,
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
    stopped: bool,
}

impl Search<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, mut cand: FixedBitSet) {
        let order = clique_cover(self.bg, &cand);
        for &(v, colour) in order.iter().rev() {
            if self.stopped || current.len() + colour <= self.best.len() {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.stopped = true;
                return;
            }
            current.push(v);
            let mut next = cand.clone();
            next.difference_with(&self.bg.closed_row(v));
            if next.is_clear() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                    if self.best.len() >= self.cap {
                        self.stopped = true;
                    }
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            cand.remove(v);
        }
    }
}

pub(crate) fn exact_search(
    bg: &BitGraph,
    start: Vec<usize>,
    cap: usize,
    opts: &AnticliqueOptions,
) -> AnticliqueSearch {
    let all = bg.full_set();
    let mut bound = greedy_classes(bg, 0..bg.vertex_count()).len();
    if start.len() < bound {
        bound = bound.min(anchored_cover_size(bg, &start));
    }
    let finish = |mut vs: Vec<usize>, optimality| {
        // extend to an inclusion-maximal anti-clique
        let mut cand = bg.full_set();
        vs.iter()
            .for_each(|&v| cand.difference_with(&bg.closed_row(v)));
        while let Some(v) = cand.minimum() {
            vs.push(v);
            cand.difference_with(&bg.closed_row(v));
        }
        vs.sort_unstable();
        AnticliqueSearch {
            vertices: vs.into_iter().map(|v| v as u32).collect(),
            optimality,
        }
    };
    if start.len() >= bound {
        return finish(start, Optimality::CliqueCover { cliques: bound });
    }
    if start.len() >= cap {
        return finish(start, Optimality::CapReached);
    }
    let mut search = Search {
        bg,
        cap,
        budget: opts.node_budget,
        nodes: 0,
        best: start,
        stopped: false,
    };
    search.expand(&mut Vec::new(), all);
    let optimality = if search.best.len() >= cap {
        Optimality::CapReached
    } else if search.stopped {
        Optimality::BudgetExhausted {
            nodes: search.nodes,
        }
    } else {
        Optimality::Exhaustive {
            nodes: search.nodes,
        }
    };
    finish(search.best, optimality)
}
