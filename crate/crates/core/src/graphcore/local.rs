use super::Graph;
use crate::{Error, Result};

/// Induced subgraph on `N(x)` with the map back to the parent ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalGraph {
    pub graph: Graph,
    /// `parent[i]` is the vertex of the parent graph playing vertex `i`.
    pub parent: Vec<u32>,
}

/// Local graph of `g` at `x`; vertex `i` is the `i`-th smallest neighbour.
pub fn local_graph(g: &Graph, x: u32) -> Result<LocalGraph> {
    if x as usize >= g.vertex_count() {
        return Err(Error::InvalidVertex {
            vertex: x as u64,
            count: g.vertex_count(),
        });
    }
    let parent = g.neighbors(x).to_vec();
    let mut offsets = Vec::with_capacity(parent.len() + 1);
    offsets.push(0u64);
    let mut targets = Vec::new();
    for &y in &parent {
        // both lists are sorted, so a merge yields sorted local ids
        let (mut i, mut j) = (0, 0);
        let ny = g.neighbors(y);
        while i < parent.len() && j < ny.len() {
            match parent[i].cmp(&ny[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    targets.push(i as u32);
                    i += 1;
                    j += 1;
                }
            }
        }
        offsets.push(targets.len() as u64);
    }
    Ok(LocalGraph {
        graph: Graph::from_csr_unchecked(offsets, targets),
        parent,
    })
}
