use num_rational::Ratio;
use serde::Serialize;

use crate::drgparams::{
    classical_intersection_numbers, default_s, grassmann_params, kfree_parameters, pls_margins,
    ClassicalParams, PlsMargins,
};
use crate::{Error, Result};

/// Which clique-size threshold defines a line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LineMode {
    /// `w + 2 - (s-1)m`.
    Improved,
    /// `w + 2 - (s-1)e`.
    Metsch,
}

impl std::str::FromStr for LineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "improved" => Ok(LineMode::Improved),
            "metsch" => Ok(LineMode::Metsch),
            other => Err(Error::InvalidDimensions(format!(
                "unknown line mode {other:?}"
            ))),
        }
    }
}

impl std::fmt::Display for LineMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LineMode::Improved => "improved",
            LineMode::Metsch => "metsch",
        })
    }
}

/// `(s, m, n, w, e)` together with the valency `k` of the host graph and
/// the order `v` of the graph the partition lemma is applied to.
///
/// When the lemma is applied to a local graph, `w = a_1` is its valency,
/// `v = k`, and `e = c_2 - 1`: a non-adjacent pair of neighbours of `x` has
/// at most `c_2` common neighbours in the host graph, one of which is `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlsParams {
    pub s: i128,
    pub m: i128,
    pub n: i128,
    pub w: i128,
    pub e: i128,
    pub k: i128,
    pub v: i128,
}

impl PlsParams {
    pub fn new(s: i128, m: i128, n: i128, w: i128, e: i128, k: i128, v: i128) -> Result<Self> {
        if [s, m, n, w, e, k, v].iter().any(|&x| x <= 0) {
            return Err(Error::InvalidDimensions(format!(
                "parameters must be positive: s={s} m={m} n={n} w={w} e={e} k={k} v={v}"
            )));
        }
        Ok(Self {
            s,
            m,
            n,
            w,
            e,
            k,
            v,
        })
    }

    /// Local-graph parameters of a graph with classical parameters, with
    /// `(m, n)` from the smallest-eigenvalue bound `-lambda`.
    pub fn from_classical(p: &ClassicalParams, lambda: i128, s: i128) -> Result<Self> {
        let arr = classical_intersection_numbers(p)?;
        if arr.diameter() < 2 {
            return Err(Error::InvalidDimensions(
                "need diameter at least 2 for c_2".into(),
            ));
        }
        let (m, n) = kfree_parameters(lambda);
        Self::new(s, m, n, arr.a(1), arr.c(2) - 1, arr.k(), arr.k())
    }

    /// `J_q(n, D)`: `lambda = q + 1` and `s = ceil(5 q^D / 4)`.
    pub fn from_grassmann(n: usize, d: usize, q: u64) -> Result<Self> {
        let p = grassmann_params(n as u32, d as u32, q)?;
        Self::from_classical(&p, q as i128 + 1, default_s(q as i128, d as u32)?)
    }

    pub fn with_s(self, s: i128) -> Result<Self> {
        Self::new(s, self.m, self.n, self.w, self.e, self.k, self.v)
    }

    /// Minimum order of a weak clique: `w - (s-1)e + 1`.
    pub fn weak_threshold(&self) -> i128 {
        self.w - (self.s - 1) * self.e + 1
    }

    /// Minimum order of a strong clique: `w - (s-1)m + 1`.
    pub fn strong_threshold(&self) -> i128 {
        self.w - (self.s - 1) * self.m + 1
    }

    /// Minimum order of a line in the host graph.
    pub fn line_threshold(&self, mode: LineMode) -> i128 {
        match mode {
            LineMode::Improved => self.w + 2 - (self.s - 1) * self.m,
            LineMode::Metsch => self.w + 2 - (self.s - 1) * self.e,
        }
    }

    /// Margins of the three inequality conditions with order `v`.
    pub fn margins(&self) -> PlsMargins {
        pls_margins(
            Ratio::from_integer(self.s),
            self.m,
            self.n,
            self.w,
            self.e,
            self.v,
        )
    }

    /// `e > m`.
    pub fn cond6_holds(&self) -> bool {
        self.e > self.m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grassmann_local_parameters() {
        let p = PlsParams::from_grassmann(7, 3, 2).unwrap();
        assert_eq!(
            (p.s, p.m, p.n, p.w, p.e, p.k, p.v),
            (10, 6, 41, 41, 8, 210, 210)
        );
        assert_eq!(p.strong_threshold(), 41 - 54 + 1);
        assert_eq!(
            p.line_threshold(LineMode::Improved),
            p.strong_threshold() + 1
        );
        assert_eq!(p.line_threshold(LineMode::Metsch), 43 - 72);
        let p = PlsParams::from_grassmann(9, 3, 2).unwrap();
        assert_eq!((p.w, p.k), (137, 882));
        assert!(p.margins().all_hold());
        assert!(p.cond6_holds());
    }

    #[test]
    fn thresholds_follow_fields() {
        let p = PlsParams::new(3, 1, 2, 20, 2, 21, 21).unwrap();
        assert_eq!(p.weak_threshold(), 17);
        assert_eq!(p.strong_threshold(), 19);
        assert_eq!(p.with_s(2).unwrap().strong_threshold(), 20);
        assert!(PlsParams::new(0, 1, 1, 1, 1, 1, 1).is_err());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("metsch".parse::<LineMode>().unwrap(), LineMode::Metsch);
        assert!("other".parse::<LineMode>().is_err());
        assert_eq!(LineMode::Improved.to_string(), "improved");
    }
}
