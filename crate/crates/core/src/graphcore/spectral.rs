use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Graph;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIterationOptions {
    /// Stop once `|M v - mu v| <= tol` for the unit iterate `v`.
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for PowerIterationOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 100_000,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenEstimate {
    pub value: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Smallest adjacency eigenvalue, to within `tol`.
pub fn min_eigenvalue(g: &Graph, tol: f64) -> Result<f64> {
    Ok(min_eigenvalue_with(
        g,
        &PowerIterationOptions {
            tol,
            ..Default::default()
        },
    )?
    .value)
}

/// Power iteration on `cI - A` with `c = max degree + 1`, whose spectrum is
/// positive, so the dominant eigenvalue is `c - lambda_min`.
pub fn min_eigenvalue_with(g: &Graph, opts: &PowerIterationOptions) -> Result<EigenEstimate> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidGraph("empty graph has no spectrum".into()));
    }
    let c = g.max_degree() as f64 + 1.0;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    normalize(&mut v);
    let mut w = vec![0.0; n];
    for it in 1..=opts.max_iter {
        for (u, wu) in w.iter_mut().enumerate() {
            let s: f64 = g.neighbors(u as u32).iter().map(|&x| v[x as usize]).sum();
            *wu = c * v[u] - s;
        }
        let mu: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let residual = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (b - mu * a).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= opts.tol {
            return Ok(EigenEstimate {
                value: c - mu,
                residual,
                iterations: it,
            });
        }
        std::mem::swap(&mut v, &mut w);
        normalize(&mut v);
    }
    Err(Error::NonConvergence(opts.max_iter))
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_min(g: &Graph) -> f64 {
        let n = g.vertex_count();
        let m = nalgebra::DMatrix::from_fn(n, n, |i, j| {
            if g.has_edge(i as u32, j as u32) {
                1.0
            } else {
                0.0
            }
        });
        nalgebra::SymmetricEigen::new(m)
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn complete_graphs() {
        for m in 2..8 {
            let g = Graph::complete(m);
            assert!((min_eigenvalue(&g, 1e-10).unwrap() + 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn four_cycle() {
        assert!((min_eigenvalue(&Graph::cycle(4), 1e-10).unwrap() + 2.0).abs() < 1e-8);
    }

    #[test]
    fn agrees_with_dense_solver() {
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        for g in [petersen, Graph::cycle(9), Graph::disjoint_cliques(&[2, 5])] {
            let est = min_eigenvalue_with(
                &g,
                &PowerIterationOptions {
                    tol: 1e-9,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(
                (est.value - dense_min(&g)).abs() < 1e-6,
                "{} vs {}",
                est.value,
                dense_min(&g)
            );
        }
    }

    #[test]
    fn iteration_cap_is_reported() {
        let opts = PowerIterationOptions {
            tol: 0.0,
            max_iter: 5,
            seed: 1,
        };
        assert_eq!(
            min_eigenvalue_with(&Graph::cycle(9), &opts),
            Err(Error::NonConvergence(5))
        );
    }

    #[test]
    fn single_vertex_and_empty() {
        let g = Graph::from_adjacency(vec![vec![]]).unwrap();
        assert!(min_eigenvalue(&g, 1e-9).unwrap().abs() < 1e-12);
        assert!(min_eigenvalue(&Graph::from_adjacency(vec![]).unwrap(), 1e-9).is_err());
    }
}
