use crate::graphcore::Graph;
use crate::{Error, Result};

/// Points `0..point_count` with lines as sorted point lists and the
/// point-to-line incidence in CSR form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialLinearSpace {
    point_count: usize,
    lines: Vec<Vec<u32>>,
    offsets: Vec<usize>,
    incidence: Vec<u32>,
}

/// Indexes `lines` after checking that no two points share two lines.
/// Lines are canonicalized (sorted, then the list sorted and deduplicated).
pub fn build_pls(point_count: usize, mut lines: Vec<Vec<u32>>) -> Result<PartialLinearSpace> {
    if lines.len() > u32::MAX as usize {
        return Err(Error::InvalidGraph("too many lines".into()));
    }
    for line in &mut lines {
        line.sort_unstable();
        if line.is_empty() {
            return Err(Error::InvalidGraph("empty line".into()));
        }
        if let Some(w) = line.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "point {} repeated on a line",
                w[0]
            )));
        }
        if let Some(&p) = line.last().filter(|&&p| p as usize >= point_count) {
            return Err(Error::InvalidVertex {
                vertex: p as u64,
                count: point_count,
            });
        }
    }
    lines.sort_unstable();
    lines.dedup();

    let mut offsets = vec![0usize; point_count + 1];
    for line in &lines {
        line.iter().for_each(|&p| offsets[p as usize + 1] += 1);
    }
    for i in 0..point_count {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut incidence = vec![0u32; offsets[point_count]];
    for (id, line) in lines.iter().enumerate() {
        for &p in line {
            incidence[fill[p as usize]] = id as u32;
            fill[p as usize] += 1;
        }
    }

    // for each point, the other points on its lines must all differ
    let mut owner = vec![u32::MAX; point_count];
    for p in 0..point_count {
        for &l in &incidence[offsets[p]..offsets[p + 1]] {
            for &r in &lines[l as usize] {
                if r as usize == p {
                    continue;
                }
                let prev = owner[r as usize];
                if prev != u32::MAX {
                    let (a, b) = ((p as u32).min(r), (p as u32).max(r));
                    return Err(Error::Linearity {
                        a,
                        b,
                        first: prev as usize,
                        second: l as usize,
                    });
                }
                owner[r as usize] = l;
            }
        }
        for &l in &incidence[offsets[p]..offsets[p + 1]] {
            lines[l as usize]
                .iter()
                .for_each(|&r| owner[r as usize] = u32::MAX);
        }
    }
    Ok(PartialLinearSpace {
        point_count,
        lines,
        offsets,
        incidence,
    })
}

impl PartialLinearSpace {
    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    pub fn line(&self, id: u32) -> &[u32] {
        &self.lines[id as usize]
    }

    /// Ids of the lines through `p`, ascending.
    pub fn lines_on(&self, p: u32) -> &[u32] {
        &self.incidence[self.offsets[p as usize]..self.offsets[p as usize + 1]]
    }
}

/// Points adjacent when they share a line.
pub fn pls_point_graph(pls: &PartialLinearSpace) -> Graph {
    let mut offsets = Vec::with_capacity(pls.point_count + 1);
    offsets.push(0u64);
    let mut targets = Vec::new();
    for p in 0..pls.point_count as u32 {
        let start = targets.len();
        for &l in pls.lines_on(p) {
            targets.extend(pls.line(l).iter().copied().filter(|&r| r != p));
        }
        targets[start..].sort_unstable();
        offsets.push(targets.len() as u64);
    }
    Graph::from_csr(offsets, targets).expect("a partial linear space has a simple point graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_line() {
        let pls = build_pls(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(pls.line_count(), 1);
        assert_eq!(pls.lines_on(1), &[0]);
        assert_eq!(pls_point_graph(&pls), Graph::complete(3));
    }

    #[test]
    fn linearity_violation_names_the_pair() {
        let err = build_pls(4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap_err();
        assert!(
            matches!(err, Error::Linearity { a: 0, b: 1, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn point_graphs() {
        let k4 = build_pls(4, vec![vec![3, 2, 1, 0]]).unwrap();
        assert_eq!(pls_point_graph(&k4), Graph::complete(4));
        let two = build_pls(5, vec![vec![0, 1], vec![2, 3, 4]]).unwrap();
        assert_eq!(pls_point_graph(&two), Graph::disjoint_cliques(&[2, 3]));
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(build_pls(2, vec![vec![0, 2]]).is_err());
        assert!(build_pls(2, vec![vec![]]).is_err());
        assert!(build_pls(3, vec![vec![1, 1]]).is_err());
        // duplicate lines collapse
        assert_eq!(
            build_pls(3, vec![vec![0, 1], vec![1, 0]])
                .unwrap()
                .line_count(),
            1
        );
    }

    #[test]
    fn fano_plane_is_linear() {
        let lines = vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ];
        let pls = build_pls(7, lines).unwrap();
        assert_eq!(pls_point_graph(&pls), Graph::complete(7));
    }
}
