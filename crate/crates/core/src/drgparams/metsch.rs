use std::fmt;

use serde::Serialize;

use crate::qlinalg::FieldSpec;
use crate::{Error, Result};

/// Where `J_q(n, D)` sits relative to the parameter families for which
/// characterization by intersection numbers was open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MetschCase {
    Unique,
    N2D,
    N2DPlus1,
    #[serde(rename = "N2DPlus2_qIn23")]
    N2DPlus2QIn23,
    #[serde(rename = "N2DPlus3_q2")]
    N2DPlus3Q2,
}

impl fmt::Display for MetschCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetschCase::Unique => "Unique",
            MetschCase::N2D => "N2D",
            MetschCase::N2DPlus1 => "N2DPlus1",
            MetschCase::N2DPlus2QIn23 => "N2DPlus2_qIn23",
            MetschCase::N2DPlus3Q2 => "N2DPlus3_q2",
        })
    }
}

pub fn metsch_exception_case(n: u32, d: u32, q: u64) -> Result<MetschCase> {
    FieldSpec::new(q)?;
    if d < 3 {
        return Err(Error::Hypothesis(format!(
            "classification is stated for D >= 3 (D = {d})"
        )));
    }
    if n < 2 * d {
        return Err(Error::InvalidDimensions(format!(
            "need n >= 2D (n = {n}, D = {d})"
        )));
    }
    Ok(match n - 2 * d {
        0 => MetschCase::N2D,
        1 => MetschCase::N2DPlus1,
        2 if q == 2 || q == 3 => MetschCase::N2DPlus2QIn23,
        3 if q == 2 => MetschCase::N2DPlus3Q2,
        _ => MetschCase::Unique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_table() {
        assert_eq!(
            metsch_exception_case(9, 3, 2).unwrap(),
            MetschCase::N2DPlus3Q2
        );
        assert_eq!(metsch_exception_case(8, 3, 5).unwrap(), MetschCase::Unique);
        assert_eq!(metsch_exception_case(6, 3, 2).unwrap(), MetschCase::N2D);
        assert_eq!(
            metsch_exception_case(7, 3, 7).unwrap(),
            MetschCase::N2DPlus1
        );
        assert_eq!(
            metsch_exception_case(8, 3, 3).unwrap(),
            MetschCase::N2DPlus2QIn23
        );
        assert_eq!(metsch_exception_case(9, 3, 3).unwrap(), MetschCase::Unique);
        assert_eq!(metsch_exception_case(10, 3, 2).unwrap(), MetschCase::Unique);
        assert!(metsch_exception_case(6, 2, 2).is_err());
        assert!(metsch_exception_case(5, 3, 2).is_err());
    }

    #[test]
    fn serialized_tags() {
        assert_eq!(
            serde_json::to_string(&MetschCase::N2DPlus3Q2).unwrap(),
            "\"N2DPlus3_q2\""
        );
        assert_eq!(MetschCase::N2DPlus2QIn23.to_string(), "N2DPlus2_qIn23");
    }
}
