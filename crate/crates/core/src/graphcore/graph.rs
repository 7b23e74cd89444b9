use crate::qlinalg::Subspace;
use crate::{Error, Result};

/// Subspace identities of the vertices of a Grassmann graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceLabels {
    pub n: usize,
    pub d: usize,
    pub q: u8,
    pub subspaces: Vec<Subspace>,
}

/// Immutable simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<u64>,
    targets: Vec<u32>,
    labels: Option<SubspaceLabels>,
}

impl Graph {
    /// Validates and compresses adjacency lists: each list must be sorted,
    /// loop free, duplicate free, in range, and the relation symmetric.
    pub fn from_adjacency(lists: Vec<Vec<u32>>) -> Result<Self> {
        if lists.len() > u32::MAX as usize {
            return Err(Error::InvalidGraph("more than 2^32 - 1 vertices".into()));
        }
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0u64);
        let total: usize = lists.iter().map(Vec::len).sum();
        let mut targets = Vec::with_capacity(total);
        for list in &lists {
            targets.extend_from_slice(list);
            offsets.push(targets.len() as u64);
        }
        let g = Graph {
            offsets,
            targets,
            labels: None,
        };
        g.validate()?;
        Ok(g)
    }

    /// Builds a graph from an undirected edge list; duplicates are merged.
    pub fn from_edges(vertex_count: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut lists = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            for x in [u, v] {
                if x as usize >= vertex_count {
                    return Err(Error::InvalidVertex {
                        vertex: x as u64,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            lists[u as usize].push(v);
            lists[v as usize].push(u);
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Self::from_adjacency(lists)
    }

    /// Assembles a graph from CSR arrays after validating them.
    pub fn from_csr(offsets: Vec<u64>, targets: Vec<u32>) -> Result<Self> {
        if offsets.first() != Some(&0) || *offsets.last().unwrap() != targets.len() as u64 {
            return Err(Error::InvalidGraph(
                "offsets do not delimit the neighbour array".into(),
            ));
        }
        if offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidGraph("offsets are not monotone".into()));
        }
        let g = Graph {
            offsets,
            targets,
            labels: None,
        };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_csr_unchecked(offsets: Vec<u64>, targets: Vec<u32>) -> Self {
        Graph {
            offsets,
            targets,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: SubspaceLabels) -> Result<Self> {
        if labels.subspaces.len() != self.vertex_count() {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.subspaces.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let n = self.vertex_count();
        for u in 0..n {
            let list = self.neighbors(u as u32);
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "adjacency of {u} is not strictly increasing"
                )));
            }
            for &v in list {
                if v as usize >= n {
                    return Err(Error::InvalidVertex {
                        vertex: v as u64,
                        count: n,
                    });
                }
                if v as usize == u {
                    return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
                }
                if !self.has_edge(v, u as u32) {
                    return Err(Error::InvalidGraph(format!(
                        "edge {u}-{v} is not symmetric"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        let v = v as usize;
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Position of `v` in the CSR neighbour array of `u`, if adjacent.
    #[inline]
    pub fn arc_index(&self, u: u32, v: u32) -> Option<usize> {
        let base = self.offsets[u as usize] as usize;
        self.neighbors(u).binary_search(&v).ok().map(|i| base + i)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count() as u32)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// The common degree, if the graph is regular and nonempty.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.vertex_count() == 0 {
            return None;
        }
        let d = self.degree(0);
        (0..self.vertex_count() as u32)
            .all(|v| self.degree(v) == d)
            .then_some(d)
    }

    /// Undirected edges `(u, v)` with `u < v`, in CSR order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn labels(&self) -> Option<&SubspaceLabels> {
        self.labels.as_ref()
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn targets(&self) -> &[u32] {
        &self.targets
    }

    /// Connected components as a component id per vertex, plus the count.
    pub fn components(&self) -> (Vec<u32>, usize) {
        let n = self.vertex_count();
        let mut comp = vec![u32::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != u32::MAX {
                continue;
            }
            comp[s] = count as u32;
            stack.push(s as u32);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if comp[v as usize] == u32::MAX {
                        comp[v as usize] = count as u32;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().1 == 1
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let lists = (0..n as u32)
            .map(|u| (0..n as u32).filter(|&v| v != u).collect())
            .collect();
        Self::from_adjacency(lists).expect("complete graph is valid")
    }

    /// Cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        Self::from_edges(n, &edges).expect("cycle is valid")
    }

    /// Disjoint union of cliques of the given orders, numbered consecutively.
    pub fn disjoint_cliques(orders: &[usize]) -> Self {
        let mut edges = Vec::new();
        let mut base = 0u32;
        for &o in orders {
            for i in 0..o as u32 {
                for j in i + 1..o as u32 {
                    edges.push((base + i, base + j));
                }
            }
            base += o as u32;
        }
        Self::from_edges(base as usize, &edges).expect("clique union is valid")
    }
}
