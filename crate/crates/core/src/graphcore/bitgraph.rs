use fixedbitset::FixedBitSet;

use super::Graph;

/// Dense bitset adjacency for graphs of a few thousand vertices at most.
#[derive(Debug, Clone)]
pub struct BitGraph {
    rows: Vec<FixedBitSet>,
}

impl BitGraph {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.vertex_count();
        let rows = (0..n as u32)
            .map(|u| {
                let mut row = FixedBitSet::with_capacity(n);
                for &v in g.neighbors(u) {
                    row.insert(v as usize);
                }
                row
            })
            .collect();
        Self { rows }
    }

    /// Induced subgraph of `g` on `N(x)`, vertex `i` being the `i`-th
    /// neighbour of `x`. `position` is scratch of length `g.vertex_count()`
    /// filled with `u32::MAX`, and is restored before returning.
    pub fn local(g: &Graph, x: u32, position: &mut [u32]) -> Self {
        let nbrs = g.neighbors(x);
        for (i, &y) in nbrs.iter().enumerate() {
            position[y as usize] = i as u32;
        }
        let k = nbrs.len();
        let rows = nbrs
            .iter()
            .map(|&y| {
                let mut row = FixedBitSet::with_capacity(k);
                for &z in g.neighbors(y) {
                    let p = position[z as usize];
                    if p != u32::MAX {
                        row.insert(p as usize);
                    }
                }
                row
            })
            .collect();
        for &y in nbrs {
            position[y as usize] = u32::MAX;
        }
        Self { rows }
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.rows.len());
        s.insert_range(..);
        s
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.rows.len())
    }

    /// Closed neighbourhood `N[v]`.
    pub fn closed_row(&self, v: usize) -> FixedBitSet {
        let mut s = self.rows[v].clone();
        s.insert(v);
        s
    }

    pub fn to_graph(&self) -> Graph {
        let lists = self
            .rows
            .iter()
            .map(|r| r.ones().map(|v| v as u32).collect())
            .collect();
        Graph::from_adjacency(lists).expect("bit rows describe a simple graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_of_complete_graph() {
        let g = Graph::complete(5);
        let mut pos = vec![u32::MAX; 5];
        let l = BitGraph::local(&g, 2, &mut pos);
        assert_eq!(l.vertex_count(), 4);
        assert!((0..4).all(|v| l.degree(v) == 3));
        assert!(pos.iter().all(|&p| p == u32::MAX));
        assert_eq!(l.to_graph(), Graph::complete(4));
    }
}
