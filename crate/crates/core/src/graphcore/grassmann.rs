use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{Graph, SubspaceLabels};
use crate::qlinalg::{
    bits, enumerate_subspaces_with_budget, gauss_binomial, intersect_dim, FieldSpec, LinearMap,
    Subspace,
};
use crate::{Budget, Error, Result};

/// Packed-key lookup from canonical subspaces to vertex ids.
#[derive(Debug, Clone)]
pub struct SubspaceIndex {
    ids: FxHashMap<u128, u32>,
}

impl SubspaceIndex {
    pub fn new(subspaces: &[Subspace]) -> Result<Self> {
        let mut ids = FxHashMap::default();
        ids.reserve(subspaces.len());
        for (i, s) in subspaces.iter().enumerate() {
            let key = s.packed_key().ok_or_else(|| {
                Error::InvalidDimensions("subspace basis does not pack into 128 bits".into())
            })?;
            ids.insert(key, i as u32);
        }
        Ok(Self { ids })
    }

    #[inline]
    pub fn get_key(&self, key: u128) -> Option<u32> {
        self.ids.get(&key).copied()
    }

    pub fn get(&self, s: &Subspace) -> Option<u32> {
        s.packed_key().and_then(|k| self.get_key(k))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Valency of `J_q(n, D)`: `q [D;1] [n-D;1]`.
pub fn grassmann_degree(n: usize, d: usize, q: u8) -> Result<u128> {
    let a = gauss_binomial(d as u32, 1, q as u64)?;
    let b = gauss_binomial((n - d) as u32, 1, q as u64)?;
    (q as u128)
        .checked_mul(a)
        .and_then(|x| x.checked_mul(b))
        .ok_or(Error::Overflow("grassmann degree"))
}

fn check_dims(n: usize, d: usize) -> Result<()> {
    if d == 0 || n < 2 * d {
        return Err(Error::InvalidDimensions(format!(
            "need 1 <= D and n >= 2D, got n = {n}, D = {d}"
        )));
    }
    Ok(())
}

/// Builds `J_q(n, D)` with the default memory budget.
pub fn build_grassmann_graph(n: usize, d: usize, q: u64) -> Result<Graph> {
    build_grassmann_graph_with_budget(n, d, q, &Budget::default())
}

/// Vertices are the `D`-subspaces of `F_q^n` in canonical order; neighbours
/// of `X` are generated as the extensions of its hyperplanes, so the work is
/// linear in the number of edges.
pub fn build_grassmann_graph_with_budget(
    n: usize,
    d: usize,
    q: u64,
    budget: &Budget,
) -> Result<Graph> {
    check_dims(n, d)?;
    let field = FieldSpec::new(q)?;
    let count = gauss_binomial(n as u32, d as u32, q)?;
    if count >= u32::MAX as u128 {
        return Err(Error::BudgetExceeded {
            what: "vertex ids",
            needed: count,
            cap: u32::MAX as u128 - 1,
        });
    }
    let degree = grassmann_degree(n, d, field.q())?;
    let arcs = count
        .checked_mul(degree)
        .ok_or(Error::Overflow("arc count"))?;
    // CSR targets and offsets, the key index, and the labels
    budget.check(
        "grassmann graph",
        arcs * 4 + count * (8 + 48 + 64 + 8 * d as u128),
    )?;

    let subspaces = enumerate_subspaces_with_budget(n, d, &field, budget)?;
    let index = SubspaceIndex::new(&subspaces)?;
    let degree = degree as usize;
    let mut targets = vec![0u32; subspaces.len() * degree];
    let binary = subspaces.first().and_then(Subspace::binary_rows).is_some();

    targets
        .par_chunks_mut(degree)
        .enumerate()
        .try_for_each(|(id, out)| -> Result<()> {
            let filled = if binary {
                binary_neighbors(&subspaces[id], n, &index, id as u32, out)?
            } else {
                prime_neighbors(&subspaces[id], n, &field, &index, id as u32, out)?
            };
            if filled != degree {
                return Err(Error::NotRegular {
                    expected: degree as u64,
                    vertex: id as u32,
                    degree: filled,
                });
            }
            out.sort_unstable();
            Ok(())
        })?;

    let offsets = (0..=subspaces.len() as u64)
        .map(|i| i * degree as u64)
        .collect();
    let graph = Graph::from_csr_unchecked(offsets, targets);
    graph.with_labels(SubspaceLabels {
        n,
        d,
        q: field.q(),
        subspaces,
    })
}

fn lookup(index: &SubspaceIndex, key: u128) -> Result<u32> {
    index
        .get_key(key)
        .ok_or_else(|| Error::InvalidGraph("generated subspace missing from enumeration".into()))
}

fn binary_neighbors(
    x: &Subspace,
    n: usize,
    index: &SubspaceIndex,
    id: u32,
    out: &mut [u32],
) -> Result<usize> {
    let rows = x.binary_rows().expect("binary path");
    let d = rows.len();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut hyper = Vec::with_capacity(d);
    let mut ext = Vec::with_capacity(d);
    let mut filled = 0;
    for f in 1..(1u64 << d) {
        bits::hyperplane_into(rows, f, &mut hyper);
        let free = full & !bits::pivot_mask(&hyper);
        for w in 1..(1u64 << free.count_ones()) {
            bits::extend_into(&hyper, bits::deposit(w, free), &mut ext);
            let y = lookup(index, bits::pack(&ext, n))?;
            if y != id {
                *out.get_mut(filled)
                    .ok_or(Error::Overflow("neighbour buffer"))? = y;
                filled += 1;
            }
        }
    }
    Ok(filled)
}

/// Nonzero vectors of `F_q^len` with leading entry one, written into `v`
/// in turn (base-`q` counter over the tail for each leading position).
fn for_each_normalized(
    q: u8,
    len: usize,
    v: &mut [u8],
    mut f: impl FnMut(&[u8]) -> Result<()>,
) -> Result<()> {
    for lead in 0..len {
        v.fill(0);
        v[lead] = 1;
        'count: loop {
            f(v)?;
            let mut j = len;
            loop {
                if j == lead + 1 {
                    break 'count;
                }
                j -= 1;
                v[j] += 1;
                if v[j] < q {
                    continue 'count;
                }
                v[j] = 0;
            }
        }
    }
    Ok(())
}

fn prime_neighbors(
    x: &Subspace,
    n: usize,
    field: &FieldSpec,
    index: &SubspaceIndex,
    id: u32,
    out: &mut [u32],
) -> Result<usize> {
    let q = field.q();
    let d = x.dim();
    let basis: Vec<u8> = x.matrix().concat();
    let mut functional = vec![0u8; d];
    let mut hyper = vec![0u8; (d - 1) * n];
    let mut ext = vec![0u8; d * n];
    let mut coeffs = vec![0u8; n - d + 1];
    let mut filled = 0;
    for_each_normalized(q, d, &mut functional, |f| {
        let t = f.iter().position(|&c| c != 0).expect("normalized");
        for (r, i) in (0..d).filter(|&i| i != t).enumerate() {
            for j in 0..n {
                hyper[r * n + j] = field.sub(basis[i * n + j], field.mul(f[i], basis[t * n + j]));
            }
        }
        bits::prime_rref(&mut hyper, d - 1, n, field);
        let mut pivots = Vec::with_capacity(d - 1);
        for row in hyper.chunks(n) {
            pivots.push(row.iter().position(|&e| e != 0).expect("full rank"));
        }
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        for_each_normalized(q, free.len(), &mut coeffs, |c| {
            ext[..(d - 1) * n].copy_from_slice(&hyper);
            let tail = &mut ext[(d - 1) * n..];
            tail.fill(0);
            for (&j, &e) in free.iter().zip(c) {
                tail[j] = e;
            }
            bits::prime_rref(&mut ext, d, n, field);
            let key = bits::pack_prime(&ext, q).ok_or(Error::Overflow("packed subspace key"))?;
            let y = lookup(index, key)?;
            if y != id {
                *out.get_mut(filled)
                    .ok_or(Error::Overflow("neighbour buffer"))? = y;
                filled += 1;
            }
            Ok(())
        })
    })?;
    Ok(filled)
}

/// All-pairs construction from `intersect_dim`; quadratic, for cross-checks.
pub fn build_grassmann_graph_pairwise(n: usize, d: usize, q: u64) -> Result<Graph> {
    check_dims(n, d)?;
    let field = FieldSpec::new(q)?;
    let subspaces = enumerate_subspaces_with_budget(n, d, &field, &Budget::default())?;
    let mut edges = Vec::new();
    for i in 0..subspaces.len() {
        for j in i + 1..subspaces.len() {
            if intersect_dim(&subspaces[i], &subspaces[j])? + 1 == d {
                edges.push((i as u32, j as u32));
            }
        }
    }
    Graph::from_edges(subspaces.len(), &edges)?.with_labels(SubspaceLabels {
        n,
        d,
        q: field.q(),
        subspaces,
    })
}

/// Vertex permutations induced by the transvection `e_0 ↦ e_0 + e_1` and the
/// cyclic coordinate shift. Together they generate a group containing
/// `SL(n, q)`, which is transitive on `D`-subspaces.
pub fn grassmann_automorphisms(g: &Graph) -> Result<Vec<Vec<u32>>> {
    let labels = g.labels().ok_or(Error::MissingLabels)?;
    let field = FieldSpec::new(labels.q as u64)?;
    let index = SubspaceIndex::new(&labels.subspaces)?;
    let maps = [
        LinearMap::transvection(&field, labels.n, 0, 1, 1),
        LinearMap::cyclic_shift(&field, labels.n),
    ];
    maps.iter()
        .map(|m| {
            labels
                .subspaces
                .par_iter()
                .map(|s| {
                    let image = s.transform(m)?;
                    index
                        .get(&image)
                        .ok_or_else(|| Error::InvalidGraph("image subspace not a vertex".into()))
                })
                .collect()
        })
        .collect()
}
