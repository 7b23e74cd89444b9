use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::anticlique::{exact_search, greedy_multistart, AnticliqueOptions, Optimality};
use super::clique::{find_kmn_witness, grow_bits, KmnOutcome};
use super::PlsParams;
use crate::drgparams::PlsMargins;
use crate::graphcore::{BitGraph, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartitionFlags {
    /// Every `P_i` is a clique.
    pub p_sets_are_cliques: bool,
    pub disjoint: bool,
    pub covering: bool,
    /// Every clique has at least `w - (s-1)m + 1` vertices.
    pub strong: bool,
    /// `s_0 <= s`.
    pub within_s: bool,
    /// The anti-clique is certified to be of maximum order.
    pub anticlique_maximum: bool,
}

impl PartitionFlags {
    pub fn all(&self) -> bool {
        self.p_sets_are_cliques
            && self.disjoint
            && self.covering
            && self.strong
            && self.within_s
            && self.anticlique_maximum
    }
}

/// The seven hypotheses of the partition lemma, checked one by one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaConditions {
    pub regular_of_valency_w: bool,
    /// Largest number of common neighbours of a non-adjacent pair.
    pub max_common_nonadjacent: u32,
    pub common_neighbours_at_most_e: bool,
    pub margins: PlsMargins,
    pub cond3: bool,
    pub cond4: bool,
    pub cond5: bool,
    pub cond6: bool,
    /// Outcome of the bounded `K~_{m+1,n}` search.
    pub kmn: KmnOutcome,
}

impl LemmaConditions {
    /// True when every condition holds, counting "no witness found" as a pass.
    pub fn all(&self) -> bool {
        self.regular_of_valency_w
            && self.common_neighbours_at_most_e
            && self.cond3
            && self.cond4
            && self.cond5
            && self.cond6
            && self.kmn == KmnOutcome::NoWitnessFound
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliquePartition {
    /// `C_1, ..., C_{s_0}` as sorted vertex lists, `C_i` grown from `P_i`.
    pub cliques: Vec<Vec<u32>>,
    pub s0: usize,
    /// The anti-clique `I`; `x_i` is its `i`-th smallest vertex.
    pub anticlique: Vec<u32>,
    pub anticlique_optimality: Optimality,
    pub p_set_sizes: Vec<usize>,
    pub strong_threshold: i128,
    pub flags: PartitionFlags,
    pub conditions: Option<LemmaConditions>,
}

/// Checks conditions (1)-(7) on `g` with the parameters `p` (`v` is taken
/// from `p`, not from `g`).
pub fn lemma_conditions(
    g: &Graph,
    p: &PlsParams,
    kmn_budget: u64,
) -> crate::Result<LemmaConditions> {
    let bg = BitGraph::from_graph(g);
    let n = bg.vertex_count();
    let mut max_common = 0;
    for a in 0..n {
        for b in a + 1..n {
            if !bg.has_edge(a, b) {
                max_common = max_common.max(bg.row(a).intersection_count(bg.row(b)) as u32);
            }
        }
    }
    let margins = p.margins();
    let kmn = find_kmn_witness(g, (p.m + 1) as usize, p.n as usize, kmn_budget)?.outcome;
    Ok(LemmaConditions {
        regular_of_valency_w: (0..n).all(|v| bg.degree(v) as i128 == p.w),
        max_common_nonadjacent: max_common,
        common_neighbours_at_most_e: max_common as i128 <= p.e,
        margins,
        cond3: margins.cond3_holds(),
        cond4: margins.cond4_holds(),
        cond5: margins.cond5_holds(),
        cond6: p.cond6_holds(),
        kmn,
    })
}

/// Partition of a local graph into strong cliques, following the proof of
/// the partition lemma, with every step re-checked.
pub fn strong_clique_partition(local: &Graph, p: &PlsParams) -> crate::Result<CliquePartition> {
    strong_clique_partition_with(local, p, &AnticliqueOptions::default(), true)
}

pub fn strong_clique_partition_with(
    local: &Graph,
    p: &PlsParams,
    opts: &AnticliqueOptions,
    check_conditions: bool,
) -> crate::Result<CliquePartition> {
    let bg = BitGraph::from_graph(local);
    let mut part = partition_bits(&bg, p, opts);
    if check_conditions {
        part.conditions = Some(lemma_conditions(local, p, 10_000_000)?);
    }
    Ok(part)
}

struct Cover {
    cliques: Vec<Vec<usize>>,
    p_sizes: Vec<usize>,
    p_cliques: bool,
    disjoint: bool,
    covering: bool,
}

fn cover_from(bg: &BitGraph, anticlique: &[usize]) -> Cover {
    let n = bg.vertex_count();
    let s0 = anticlique.len();
    // prefix[i] / suffix[i]: union of N[x_j] for j < i / j >= i
    let mut prefix = vec![bg.empty_set()];
    for &x in anticlique {
        let mut next = prefix.last().expect("nonempty").clone();
        next.union_with(&bg.closed_row(x));
        prefix.push(next);
    }
    let mut suffix = vec![bg.empty_set(); s0 + 1];
    for i in (0..s0).rev() {
        let mut next = suffix[i + 1].clone();
        next.union_with(&bg.closed_row(anticlique[i]));
        suffix[i] = next;
    }
    let mut cliques = Vec::with_capacity(s0);
    let mut p_sizes = Vec::with_capacity(s0);
    let mut p_cliques = true;
    for i in 0..s0 {
        let mut p_set = bg.full_set();
        p_set.difference_with(&prefix[i]);
        p_set.difference_with(&suffix[i + 1]);
        p_sizes.push(p_set.count_ones(..));
        let mut cand = bg.full_set();
        let mut members = Vec::new();
        let is_clique = p_set.ones().all(|y| {
            let mut closed = bg.closed_row(y);
            closed.intersect_with(&p_set);
            closed.count_ones(..) == p_set.count_ones(..)
        });
        if is_clique {
            for y in p_set.ones() {
                members.push(y);
                cand.intersect_with(bg.row(y));
            }
        } else {
            p_cliques = false;
            members.push(anticlique[i]);
            cand = bg.row(anticlique[i]).clone();
            cand.intersect_with(&p_set);
            while let Some(y) = cand.minimum() {
                members.push(y);
                cand.intersect_with(bg.row(y));
            }
            cand = members.iter().fold(bg.full_set(), |mut acc, &y| {
                acc.intersect_with(bg.row(y));
                acc
            });
        }
        grow_bits(bg, &mut members, cand);
        cliques.push(members);
    }
    let mut union = FixedBitSet::with_capacity(n);
    let mut total = 0;
    for c in &cliques {
        total += c.len();
        c.iter().for_each(|&v| union.insert(v));
    }
    let covered = union.count_ones(..);
    Cover {
        cliques,
        p_sizes,
        p_cliques,
        disjoint: covered == total,
        covering: covered == n,
    }
}

pub(crate) fn partition_bits(
    bg: &BitGraph,
    p: &PlsParams,
    opts: &AnticliqueOptions,
) -> CliquePartition {
    let mut anticlique = greedy_multistart(bg, opts);
    let mut cover = cover_from(bg, &anticlique);
    let optimality = if cover.covering {
        // |I| cliques covering the graph bound every anti-clique by |I|
        Optimality::CliqueCover {
            cliques: anticlique.len(),
        }
    } else {
        let cap = p.s.clamp(1, i128::from(u32::MAX)) as usize;
        let exact = exact_search(bg, anticlique.clone(), cap.max(anticlique.len()), opts);
        let found: Vec<usize> = exact.vertices.iter().map(|&v| v as usize).collect();
        if found.len() > anticlique.len() {
            anticlique = found;
            cover = cover_from(bg, &anticlique);
        }
        exact.optimality
    };
    let strong_threshold = p.strong_threshold();
    let flags = PartitionFlags {
        p_sets_are_cliques: cover.p_cliques,
        disjoint: cover.disjoint,
        covering: cover.covering,
        strong: cover
            .cliques
            .iter()
            .all(|c| c.len() as i128 >= strong_threshold),
        within_s: anticlique.len() as i128 <= p.s,
        anticlique_maximum: optimality.is_proven(),
    };
    CliquePartition {
        cliques: cover
            .cliques
            .into_iter()
            .map(|c| c.into_iter().map(|v| v as u32).collect())
            .collect(),
        s0: anticlique.len(),
        anticlique: anticlique.into_iter().map(|v| v as u32).collect(),
        anticlique_optimality: optimality,
        p_set_sizes: cover.p_sizes,
        strong_threshold,
        flags,
        conditions: None,
    }
}
