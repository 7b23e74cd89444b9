use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::drgparams::cbound_clique_threshold;
use crate::graphcore::{BitGraph, Graph};
use crate::{Error, Result};

fn check_clique(g: &Graph, vertices: &[u32]) -> Result<()> {
    for &v in vertices {
        if v as usize >= g.vertex_count() {
            return Err(Error::InvalidVertex {
                vertex: v as u64,
                count: g.vertex_count(),
            });
        }
    }
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            if a == b || !g.has_edge(a, b) {
                return Err(Error::NotAClique { a, b });
            }
        }
    }
    Ok(())
}

/// Extends `members` by repeatedly adding the smallest vertex of
/// `candidates`, which must hold exactly the common neighbours of `members`.
pub(crate) fn grow_bits(bg: &BitGraph, members: &mut Vec<usize>, mut candidates: FixedBitSet) {
    while let Some(v) = candidates.minimum() {
        members.push(v);
        candidates.intersect_with(bg.row(v));
    }
    members.sort_unstable();
}

/// A maximal clique containing the clique `seed`, extended greedily in
/// ascending vertex order.
pub fn grow_maximal_clique(g: &Graph, seed: &[u32]) -> Result<Vec<u32>> {
    check_clique(g, seed)?;
    let mut clique: Vec<u32> = seed.to_vec();
    let mut cand: Vec<u32> = match seed.first() {
        None => (0..g.vertex_count() as u32).collect(),
        Some(&v) => g.neighbors(v).to_vec(),
    };
    for &v in seed.iter().skip(1) {
        cand.retain(|&c| g.has_edge(v, c));
    }
    cand.retain(|c| !seed.contains(c));
    while let Some(&v) = cand.first() {
        clique.push(v);
        cand.retain(|&c| c != v && g.has_edge(v, c));
    }
    clique.sort_unstable();
    Ok(clique)
}

/// Outcome of the clique neighbour dichotomy check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CboundVerdict {
    pub clique_size: usize,
    pub lambda: i128,
    /// Vertices outside the clique may have at most this many neighbours in it...
    pub low_max: i128,
    /// ...or at least this many.
    pub high_min: i128,
    /// Number of outside vertices by neighbour count in the clique.
    pub histogram: BTreeMap<u32, u64>,
    /// Outside vertices whose count falls strictly between the two bands.
    pub violators: Vec<(u32, u32)>,
}

impl CboundVerdict {
    pub fn pass(&self) -> bool {
        self.violators.is_empty()
    }
}

/// Counts, for every vertex outside `clique`, its neighbours inside, and
/// flags counts in `(l^2 - l, c - (l-1)^2)`.
pub fn check_cbound(g: &Graph, clique: &[u32], lambda: i128) -> Result<CboundVerdict> {
    check_clique(g, clique)?;
    let required = cbound_clique_threshold(lambda);
    if (clique.len() as i128) < required {
        return Err(Error::ThresholdNotMet {
            order: clique.len(),
            required,
        });
    }
    let mut inside = FixedBitSet::with_capacity(g.vertex_count());
    clique.iter().for_each(|&v| inside.insert(v as usize));
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &u in clique {
        for &v in g.neighbors(u) {
            if !inside.contains(v as usize) {
                *counts.entry(v).or_default() += 1;
            }
        }
    }
    let low_max = lambda * lambda - lambda;
    let high_min = clique.len() as i128 - (lambda - 1) * (lambda - 1);
    let mut histogram = BTreeMap::new();
    let outside = g.vertex_count() - clique.len();
    if outside > counts.len() {
        histogram.insert(0, (outside - counts.len()) as u64);
    }
    let mut violators = Vec::new();
    for (&v, &c) in &counts {
        *histogram.entry(c).or_default() += 1;
        if (c as i128) > low_max && (c as i128) < high_min {
            violators.push((v, c));
        }
    }
    Ok(CboundVerdict {
        clique_size: clique.len(),
        lambda,
        low_max,
        high_min,
        histogram,
        violators,
    })
}

/// An induced `K~_{m,n}`: a clique on `neighbours ∪ non_neighbours` and an
/// apex adjacent to exactly the first part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KmnWitness {
    pub apex: u32,
    pub neighbours: Vec<u32>,
    pub non_neighbours: Vec<u32>,
}

impl KmnWitness {
    /// Re-checks the witness against `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let all: Vec<u32> = self
            .neighbours
            .iter()
            .chain(&self.non_neighbours)
            .copied()
            .collect();
        let n = g.vertex_count() as u32;
        if self.apex >= n || all.iter().any(|&v| v >= n || v == self.apex) {
            return false;
        }
        check_clique(g, &all).is_ok()
            && self.neighbours.iter().all(|&v| g.has_edge(self.apex, v))
            && self
                .non_neighbours
                .iter()
                .all(|&v| !g.has_edge(self.apex, v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KmnOutcome {
    WitnessFound,
    /// The bounded search ended without a witness. This is not a proof that
    /// none exists.
    NoWitnessFound,
    /// The iteration cap was hit before the search finished.
    BudgetExhausted,
}

impl std::fmt::Display for KmnOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            KmnOutcome::WitnessFound => "witness found",
            KmnOutcome::NoWitnessFound => "no witness found",
            KmnOutcome::BudgetExhausted => "budget exhausted, no witness found",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KmnSearch {
    pub outcome: KmnOutcome,
    pub witness: Option<KmnWitness>,
    pub cliques_examined: usize,
    pub iterations: u64,
}

/// Bounded search for an induced `K~_{m_plus_1, n}`: grow a maximal clique
/// from every edge, and for every clique of order at least `m_plus_1 + n`
/// look for an outside vertex with at least `m_plus_1` neighbours and at
/// least `n` non-neighbours in it. Graphs above `2^15` vertices are refused.
pub fn find_kmn_witness(g: &Graph, m_plus_1: usize, n: usize, budget: u64) -> Result<KmnSearch> {
    let order = g.vertex_count();
    if order > 1 << 15 {
        return Err(Error::BudgetExceeded {
            what: "dense adjacency for witness search",
            needed: order as u128,
            cap: 1 << 15,
        });
    }
    let mut search = KmnSearch {
        outcome: KmnOutcome::NoWitnessFound,
        witness: None,
        cliques_examined: 0,
        iterations: 0,
    };
    if order < m_plus_1 + n + 1 {
        return Ok(search);
    }
    let bg = BitGraph::from_graph(g);
    let mut seen: FxHashSet<Vec<usize>> = FxHashSet::default();
    for (u, v) in g.edges() {
        search.iterations += 1;
        if search.iterations > budget {
            search.outcome = KmnOutcome::BudgetExhausted;
            return Ok(search);
        }
        let (u, v) = (u as usize, v as usize);
        let mut cand = bg.row(u).clone();
        cand.intersect_with(bg.row(v));
        if (cand.count_ones(..) + 2) < m_plus_1 + n {
            continue;
        }
        let mut members = vec![u, v];
        grow_bits(&bg, &mut members, cand);
        if members.len() < m_plus_1 + n || !seen.insert(members.clone()) {
            continue;
        }
        search.cliques_examined += 1;
        let mut inside = bg.empty_set();
        members.iter().for_each(|&x| inside.insert(x));
        for apex in 0..order {
            search.iterations += 1;
            if search.iterations > budget {
                search.outcome = KmnOutcome::BudgetExhausted;
                return Ok(search);
            }
            if inside.contains(apex) {
                continue;
            }
            let hits = bg.row(apex).intersection_count(&inside);
            if hits >= m_plus_1 && members.len() - hits >= n {
                let neighbours: Vec<u32> = members
                    .iter()
                    .filter(|&&x| bg.has_edge(apex, x))
                    .take(m_plus_1)
                    .map(|&x| x as u32)
                    .collect();
                let non_neighbours: Vec<u32> = members
                    .iter()
                    .filter(|&&x| !bg.has_edge(apex, x))
                    .take(n)
                    .map(|&x| x as u32)
                    .collect();
                let w = KmnWitness {
                    apex: apex as u32,
                    neighbours,
                    non_neighbours,
                };
                debug_assert!(w.validate(g));
                search.witness = Some(w);
                search.outcome = KmnOutcome::WitnessFound;
                return Ok(search);
            }
        }
    }
    Ok(search)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_plus_apex(size: usize, attached: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..size as u32 {
            for j in i + 1..size as u32 {
                edges.push((i, j));
            }
        }
        for i in 0..attached as u32 {
            edges.push((i, size as u32));
        }
        Graph::from_edges(size + 1, &edges).unwrap()
    }

    #[test]
    fn growth_examples() {
        assert_eq!(
            grow_maximal_clique(&Graph::complete(5), &[0]).unwrap(),
            vec![0, 1, 2, 3, 4]
        );
        assert_eq!(
            grow_maximal_clique(&Graph::cycle(5), &[0, 1]).unwrap(),
            vec![0, 1]
        );
        assert_eq!(
            grow_maximal_clique(&Graph::cycle(5), &[]).unwrap(),
            vec![0, 1]
        );
        assert_eq!(
            grow_maximal_clique(&Graph::cycle(5), &[0, 2]),
            Err(Error::NotAClique { a: 0, b: 2 })
        );
    }

    #[test]
    fn cbound_trivial_pass_and_threshold() {
        let g = Graph::disjoint_cliques(&[48, 3]);
        let clique: Vec<u32> = (0..48).collect();
        let v = check_cbound(&g, &clique, 3).unwrap();
        assert!(v.pass());
        assert_eq!(v.histogram.get(&0), Some(&3));
        assert_eq!((v.low_max, v.high_min), (6, 44));
        assert!(matches!(
            check_cbound(&g, &clique[..47], 3),
            Err(Error::ThresholdNotMet {
                order: 47,
                required: 48
            })
        ));
    }

    #[test]
    fn cbound_flags_middle_band() {
        let g = k_plus_apex(48, 10);
        let clique: Vec<u32> = (0..48).collect();
        let v = check_cbound(&g, &clique, 3).unwrap();
        assert_eq!(v.violators, vec![(48, 10)]);
        assert!(!v.pass());
    }

    #[test]
    fn kmn_witness_on_synthetic_graph() {
        let g = k_plus_apex(48, 7);
        let s = find_kmn_witness(&g, 7, 41, 1_000_000).unwrap();
        assert_eq!(s.outcome, KmnOutcome::WitnessFound);
        let w = s.witness.unwrap();
        assert!(w.validate(&g));
        assert_eq!((w.neighbours.len(), w.non_neighbours.len()), (7, 41));
    }

    #[test]
    fn kmn_none_cases() {
        let s = find_kmn_witness(&Graph::complete(10), 7, 41, 1_000_000).unwrap();
        assert_eq!(s.outcome, KmnOutcome::NoWitnessFound);
        assert_eq!(s.outcome.to_string(), "no witness found");
        // apex with too few neighbours
        let s = find_kmn_witness(&k_plus_apex(48, 6), 7, 41, 1_000_000).unwrap();
        assert_eq!(s.outcome, KmnOutcome::NoWitnessFound);
        let s = find_kmn_witness(&k_plus_apex(48, 7), 7, 41, 1).unwrap();
        assert_eq!(s.outcome, KmnOutcome::BudgetExhausted);
    }

    #[test]
    fn witness_validation_rejects_tampering() {
        let g = k_plus_apex(48, 7);
        let mut w = find_kmn_witness(&g, 7, 41, 1_000_000)
            .unwrap()
            .witness
            .unwrap();
        w.non_neighbours[0] = w.neighbours[0];
        assert!(!w.validate(&g));
    }
}
