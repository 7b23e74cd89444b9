use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Graph;
use crate::drgparams::IntersectionArray;

/// How many base vertices the audit runs BFS from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditMode {
    /// Every vertex.
    Full,
    /// `count` distinct vertices drawn with a seeded generator.
    Sampled { count: usize, seed: u64 },
    /// Vertex 0 only, justified by checking that the given vertex
    /// permutations are automorphisms whose group is transitive.
    Transitive { generators: Vec<Vec<u32>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    NotRegular,
    Disconnected,
    /// `c_i`, `a_i` or `b_i` takes two values at the same distance.
    Parameter(char),
    /// Two bases produced different arrays.
    ArrayMismatch,
    /// A generator is not an automorphism, or the orbit of vertex 0 is not
    /// the whole vertex set.
    Certificate,
}

/// First observed obstruction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditFailure {
    pub kind: FailureKind,
    pub base: u32,
    pub vertex: u32,
    pub distance: usize,
    pub expected: u64,
    pub found: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityCertificate {
    pub generators: usize,
    pub automorphisms_verified: bool,
    pub orbit_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum AuditScope {
    Full,
    Sampled { seed: u64 },
    Transitive(TransitivityCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceRegularityAudit {
    pub is_drg: bool,
    pub connected: bool,
    pub diameter: Option<usize>,
    pub array: Option<IntersectionArray>,
    pub counterexample: Option<AuditFailure>,
    pub scope: AuditScope,
    pub bases_checked: usize,
}

/// `(b_0..b_{d-1}, c_1..c_d)` seen from one base.
type Layers = (Vec<u64>, Vec<u64>);

fn fail(
    kind: FailureKind,
    base: u32,
    vertex: u32,
    distance: usize,
    expected: u64,
    found: u64,
) -> AuditFailure {
    AuditFailure {
        kind,
        base,
        vertex,
        distance,
        expected,
        found,
    }
}

fn bfs_layers(
    g: &Graph,
    base: u32,
    dist: &mut [u32],
    queue: &mut Vec<u32>,
) -> Result<Layers, AuditFailure> {
    dist.fill(u32::MAX);
    queue.clear();
    dist[base as usize] = 0;
    queue.push(base);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &v in g.neighbors(u) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = dist[u as usize] + 1;
                queue.push(v);
            }
        }
    }
    if queue.len() != g.vertex_count() {
        let v = dist.iter().position(|&d| d == u32::MAX).unwrap_or(0);
        return Err(fail(
            FailureKind::Disconnected,
            base,
            v as u32,
            0,
            g.vertex_count() as u64,
            queue.len() as u64,
        ));
    }
    // per distance: first observed (c, a, b)
    let mut seen: Vec<[u64; 3]> = Vec::new();
    for &y in queue.iter() {
        let i = dist[y as usize];
        let mut cab = [0u64; 3];
        for &z in g.neighbors(y) {
            let j = dist[z as usize];
            cab[(j + 1 - i) as usize] += 1;
        }
        let i = i as usize;
        if i == seen.len() {
            seen.push(cab);
        } else if let Some(p) = (0..3).find(|&p| seen[i][p] != cab[p]) {
            let kind = FailureKind::Parameter(['c', 'a', 'b'][p]);
            return Err(fail(kind, base, y, i, seen[i][p], cab[p]));
        }
    }
    let d = seen.len() - 1;
    Ok((
        (0..d).map(|i| seen[i][2]).collect(),
        (1..=d).map(|i| seen[i][0]).collect(),
    ))
}

fn certify_transitive(
    g: &Graph,
    generators: &[Vec<u32>],
) -> (TransitivityCertificate, Option<AuditFailure>) {
    let n = g.vertex_count();
    let mut bad = None;
    for p in generators {
        let mut hit = vec![false; n];
        let bijective = p.len() == n
            && p.iter()
                .all(|&v| (v as usize) < n && !std::mem::replace(&mut hit[v as usize], true));
        if !bijective {
            bad = Some(fail(
                FailureKind::Certificate,
                0,
                0,
                0,
                n as u64,
                p.len() as u64,
            ));
            break;
        }
        let broken = (0..n as u32).into_par_iter().find_first(|&u| {
            g.neighbors(u)
                .iter()
                .any(|&v| !g.has_edge(p[u as usize], p[v as usize]))
        });
        if let Some(u) = broken {
            bad = Some(fail(FailureKind::Certificate, 0, u, 1, 1, 0));
            break;
        }
    }
    let automorphisms_verified = bad.is_none();
    let mut orbit = 0;
    if automorphisms_verified {
        let mut in_orbit = vec![false; n];
        let mut stack = vec![0u32];
        in_orbit[0] = true;
        orbit = 1;
        while let Some(u) = stack.pop() {
            for p in generators {
                let v = p[u as usize];
                if !in_orbit[v as usize] {
                    in_orbit[v as usize] = true;
                    orbit += 1;
                    stack.push(v);
                }
            }
        }
        if orbit != n {
            let v = in_orbit.iter().position(|&x| !x).unwrap_or(0);
            bad = Some(fail(
                FailureKind::Certificate,
                0,
                v as u32,
                0,
                n as u64,
                orbit as u64,
            ));
        }
    }
    let cert = TransitivityCertificate {
        generators: generators.len(),
        automorphisms_verified,
        orbit_size: orbit,
    };
    (cert, bad)
}

/// Checks that `c_i`, `a_i`, `b_i` depend only on the distance, by BFS from
/// each base vertex chosen by `mode`.
pub fn audit_distance_regular(g: &Graph, mode: &AuditMode) -> DistanceRegularityAudit {
    let n = g.vertex_count();
    let (scope, bases, cert_failure): (AuditScope, Vec<u32>, Option<AuditFailure>) = match mode {
        AuditMode::Full => (AuditScope::Full, (0..n as u32).collect(), None),
        AuditMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut bases: Vec<u32> = sample(&mut rng, n, (*count).min(n))
                .into_iter()
                .map(|v| v as u32)
                .collect();
            bases.sort_unstable();
            (AuditScope::Sampled { seed: *seed }, bases, None)
        }
        AuditMode::Transitive { generators } => {
            let (cert, bad) = if n == 0 {
                (
                    TransitivityCertificate {
                        generators: generators.len(),
                        automorphisms_verified: true,
                        orbit_size: 0,
                    },
                    None,
                )
            } else {
                certify_transitive(g, generators)
            };
            (
                AuditScope::Transitive(cert),
                if n == 0 { vec![] } else { vec![0] },
                bad,
            )
        }
    };
    let mut report = DistanceRegularityAudit {
        is_drg: false,
        connected: n > 0 && g.is_connected(),
        diameter: None,
        array: None,
        counterexample: None,
        scope,
        bases_checked: 0,
    };
    if n == 0 {
        return report;
    }
    let k = g.degree(0);
    if let Some(v) = (0..n as u32).find(|&v| g.degree(v) != k) {
        report.counterexample = Some(fail(
            FailureKind::NotRegular,
            0,
            v,
            1,
            k as u64,
            g.degree(v) as u64,
        ));
        return report;
    }
    if let Some(f) = cert_failure {
        report.counterexample = Some(f);
        return report;
    }

    let results: Vec<Result<Layers, AuditFailure>> = bases
        .par_iter()
        .map_init(
            || (vec![u32::MAX; n], Vec::with_capacity(n)),
            |(dist, queue), &b| bfs_layers(g, b, dist, queue),
        )
        .collect();
    report.bases_checked = results.len();
    let mut reference: Option<(u32, Layers)> = None;
    for (&base, r) in bases.iter().zip(results) {
        match r {
            Err(f) => {
                report.counterexample = Some(f);
                return report;
            }
            Ok(layers) => match &reference {
                None => reference = Some((base, layers)),
                Some((_, first)) if *first != layers => {
                    let d = first.0.len().min(layers.0.len());
                    let i = (0..d)
                        .find(|&i| first.0[i] != layers.0[i] || first.1[i] != layers.1[i])
                        .unwrap_or(d);
                    let (e, f) = if i < d {
                        (first.0[i], layers.0[i])
                    } else {
                        (first.0.len() as u64, layers.0.len() as u64)
                    };
                    report.counterexample =
                        Some(fail(FailureKind::ArrayMismatch, base, base, i, e, f));
                    return report;
                }
                Some(_) => {}
            },
        }
    }
    let (_, (b, c)) = reference.expect("at least one base");
    report.diameter = Some(b.len());
    report.is_drg = true;
    if !b.is_empty() {
        report.array = IntersectionArray::new(
            b.iter().map(|&x| x as i128).collect(),
            c.iter().map(|&x| x as i128).collect(),
        )
        .ok();
    }
    report
}
