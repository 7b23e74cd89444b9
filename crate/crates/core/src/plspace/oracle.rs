use serde::Serialize;

use crate::graphcore::SubspaceIndex;
use crate::qlinalg::{enumerate_subspaces_with_budget, gauss_binomial, FieldSpec};
use crate::{Budget, Error, Result};

pub fn grassmann_line_oracle(n: usize, d: usize, q: u64) -> Result<Vec<Vec<u32>>> {
    grassmann_line_oracle_with_budget(n, d, q, &Budget::default())
}

/// One line per `(D-1)`-subspace `Z`: the ids, in canonical Grassmann order,
/// of the `D`-subspaces containing `Z`. Lines are returned sorted.
pub fn grassmann_line_oracle_with_budget(
    n: usize,
    d: usize,
    q: u64,
    budget: &Budget,
) -> Result<Vec<Vec<u32>>> {
    if d == 0 || n < 2 * d {
        return Err(Error::InvalidDimensions(format!(
            "need 1 <= D and n >= 2D, got n = {n}, D = {d}"
        )));
    }
    let field = FieldSpec::new(q)?;
    let count = gauss_binomial(n as u32, (d - 1) as u32, q)?;
    let size = gauss_binomial((n - d + 1) as u32, 1, q)?;
    budget.check("line oracle", count.saturating_mul(size).saturating_mul(4))?;
    let vertices = enumerate_subspaces_with_budget(n, d, &field, budget)?;
    let index = SubspaceIndex::new(&vertices)?;
    drop(vertices);
    let mut lines = enumerate_subspaces_with_budget(n, d - 1, &field, budget)?
        .iter()
        .map(|z| {
            let mut line = z
                .extensions()
                .iter()
                .map(|y| {
                    index
                        .get(y)
                        .ok_or_else(|| Error::InvalidGraph("extension is not a vertex".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            line.sort_unstable();
            Ok(line)
        })
        .collect::<Result<Vec<_>>>()?;
    lines.sort_unstable();
    Ok(lines)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineSetComparison {
    pub equal: bool,
    pub count_a: usize,
    pub count_b: usize,
    pub only_in_a_count: usize,
    pub only_in_b_count: usize,
    /// Up to ten lines of each side missing from the other.
    pub only_in_a: Vec<Vec<u32>>,
    pub only_in_b: Vec<Vec<u32>>,
}

fn canonical(lines: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = lines
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Compares two line sets after canonicalization.
pub fn compare_line_sets(a: &[Vec<u32>], b: &[Vec<u32>]) -> LineSetComparison {
    let (a, b) = (canonical(a), canonical(b));
    let (mut i, mut j) = (0, 0);
    let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
    let (mut na, mut nb) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.cmp(y),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        match ord {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                na += 1;
                if only_a.len() < 10 {
                    only_a.push(a[i].clone());
                }
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                nb += 1;
                if only_b.len() < 10 {
                    only_b.push(b[j].clone());
                }
                j += 1;
            }
        }
    }
    LineSetComparison {
        equal: na == 0 && nb == 0,
        count_a: a.len(),
        count_b: b.len(),
        only_in_a_count: na,
        only_in_b_count: nb,
        only_in_a: only_a,
        only_in_b: only_b,
    }
}
