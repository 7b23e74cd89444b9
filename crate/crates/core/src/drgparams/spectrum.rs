use num_rational::Ratio;
use serde::Serialize;

use super::{Exact, IntersectionArray};
use crate::qlinalg::{gauss_binomial, gauss_bracket, FieldSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Eigenvalue {
    pub theta: i128,
    pub multiplicity: i128,
}

/// Distinct eigenvalues in natural (decreasing) order with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigenvalue>,
}

impl Spectrum {
    pub fn vertex_count(&self) -> i128 {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }

    /// `sum m_j theta_j`; zero for any loopless graph.
    pub fn trace(&self) -> Result<i128> {
        self.eigenvalues.iter().try_fold(0i128, |acc, e| {
            e.theta
                .checked_mul(e.multiplicity)
                .and_then(|t| acc.checked_add(t))
                .ok_or(Error::Overflow("spectrum trace"))
        })
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.eigenvalues.windows(2).all(|w| w[0].theta > w[1].theta)
    }

    pub fn thetas(&self) -> Vec<i128> {
        self.eigenvalues.iter().map(|e| e.theta).collect()
    }
}

fn to_i128(v: u128) -> Result<i128> {
    i128::try_from(v).map_err(|_| Error::Overflow("spectrum"))
}

/// `theta_j = q^{j+1}[n-D-j][D-j] - [j]`, `m_j = [n;j] - [n;j-1]`.
pub fn grassmann_spectrum(n: u32, d: u32, q: u64) -> Result<Spectrum> {
    FieldSpec::new(q)?;
    if d < 1 || n < 2 * d {
        return Err(Error::InvalidDimensions(format!(
            "need n >= 2D >= 2 (n = {n}, D = {d})"
        )));
    }
    let overflow = || Error::Overflow("Grassmann spectrum");
    let mut eigenvalues = Vec::with_capacity(d as usize + 1);
    for j in 0..=d {
        let lead = (q as u128)
            .checked_pow(j + 1)
            .and_then(|p| p.checked_mul(gauss_bracket(n - d - j, q).ok()?))
            .and_then(|p| p.checked_mul(gauss_bracket(d - j, q).ok()?))
            .ok_or_else(overflow)?;
        let theta = to_i128(lead)? - to_i128(gauss_bracket(j, q)?)?;
        let below = if j == 0 {
            0
        } else {
            gauss_binomial(n, j - 1, q)?
        };
        let multiplicity = to_i128(gauss_binomial(n, j, q)?)? - to_i128(below)?;
        eigenvalues.push(Eigenvalue {
            theta,
            multiplicity,
        });
    }
    Ok(Spectrum { eigenvalues })
}

/// Exact check that every claimed eigenvalue is a root of the characteristic
/// polynomial of the tridiagonal intersection matrix (sub-, main and
/// super-diagonal `c_i`, `a_i`, `b_i`).
pub fn verify_tridiagonal_spectrum(arr: &IntersectionArray, spec: &Spectrum) -> Result<bool> {
    let d = arr.diameter();
    if spec.eigenvalues.len() != d + 1 {
        return Ok(false);
    }
    let overflow = || Error::Overflow("tridiagonal determinant");
    for e in &spec.eigenvalues {
        // leading principal minors: p_i = (a_i - t) p_{i-1} - b_{i-1} c_i p_{i-2}
        let mut prev: i128 = 1;
        let mut cur: i128 = arr.a(0) - e.theta;
        for i in 1..=d {
            let diag = arr.a(i).checked_sub(e.theta).ok_or_else(overflow)?;
            let off = arr.b(i - 1).checked_mul(arr.c(i)).ok_or_else(overflow)?;
            let next = diag
                .checked_mul(cur)
                .and_then(|x| off.checked_mul(prev).and_then(|y| x.checked_sub(y)))
                .ok_or_else(overflow)?;
            prev = cur;
            cur = next;
        }
        if cur != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `-b_1 / (theta_1 + 1) - 1`, the lower bound on the smallest eigenvalue of
/// every local graph. The bound is a theorem for diameter at least three;
/// for smaller diameters the value is still returned.
pub fn local_eigen_lower_bound(arr: &IntersectionArray, spec: &Spectrum) -> Result<Exact> {
    let theta1 = spec
        .eigenvalues
        .get(1)
        .ok_or_else(|| Error::InvalidDimensions("spectrum needs at least two eigenvalues".into()))?
        .theta;
    let den = theta1 + 1;
    if den == 0 {
        return Err(Error::DivisionByZero(
            "local eigenvalue bound (theta_1 = -1)",
        ));
    }
    Ok(Exact(Ratio::new(-arr.b(1), den) - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drgparams::{classical_intersection_numbers, grassmann_params, ClassicalParams};

    fn grassmann_array(n: u32, d: u32, q: u64) -> IntersectionArray {
        classical_intersection_numbers(&grassmann_params(n, d, q).unwrap()).unwrap()
    }

    #[test]
    fn j2_7_3_spectrum() {
        let s = grassmann_spectrum(7, 3, 2).unwrap();
        assert_eq!(s.thetas(), vec![210, 83, 21, -7]);
        assert_eq!(s.eigenvalues[0].multiplicity, 1);
        assert_eq!(s.vertex_count(), 11811);
        assert_eq!(s.trace().unwrap(), 0);
        assert!(s.is_strictly_decreasing());
    }

    #[test]
    fn spectrum_invariants_small_range() {
        for q in [2u64, 3] {
            for n in 2..=9u32 {
                for d in 1..=4u32 {
                    if n < 2 * d {
                        continue;
                    }
                    let s = grassmann_spectrum(n, d, q).unwrap();
                    assert_eq!(s.eigenvalues[0].multiplicity, 1);
                    assert_eq!(s.vertex_count() as u128, gauss_binomial(n, d, q).unwrap());
                    assert_eq!(s.trace().unwrap(), 0);
                    assert!(s.is_strictly_decreasing());
                    assert!(verify_tridiagonal_spectrum(&grassmann_array(n, d, q), &s).unwrap());
                }
            }
        }
    }

    #[test]
    fn tridiagonal_examples() {
        let arr = grassmann_array(7, 3, 2);
        assert_eq!(arr.b_list(), &[210, 168, 96]);
        assert_eq!(arr.c_list(), &[1, 9, 49]);
        let mut s = grassmann_spectrum(7, 3, 2).unwrap();
        assert!(verify_tridiagonal_spectrum(&arr, &s).unwrap());
        s.eigenvalues[1].theta += 1;
        assert!(!verify_tridiagonal_spectrum(&arr, &s).unwrap());

        let k = 6;
        let kn = IntersectionArray::new(vec![k], vec![1]).unwrap();
        let spec = Spectrum {
            eigenvalues: vec![
                Eigenvalue {
                    theta: k,
                    multiplicity: 1,
                },
                Eigenvalue {
                    theta: -1,
                    multiplicity: k,
                },
            ],
        };
        assert!(verify_tridiagonal_spectrum(&kn, &spec).unwrap());
    }

    #[test]
    fn local_bounds() {
        for n in [7u32, 9] {
            let arr = grassmann_array(n, 3, 2);
            let b = local_eigen_lower_bound(&arr, &grassmann_spectrum(n, 3, 2).unwrap()).unwrap();
            assert!(b >= Exact::int(-3), "n={n}: {b}");
        }
        assert_eq!(
            local_eigen_lower_bound(
                &grassmann_array(7, 3, 2),
                &grassmann_spectrum(7, 3, 2).unwrap()
            )
            .unwrap(),
            Exact::int(-3)
        );
        // b_1 = 0 (complete graph)
        let kn = classical_intersection_numbers(&ClassicalParams {
            d: 1,
            b: 1,
            alpha: 0,
            beta: 5,
        })
        .unwrap();
        let spec = Spectrum {
            eigenvalues: vec![
                Eigenvalue {
                    theta: 5,
                    multiplicity: 1,
                },
                Eigenvalue {
                    theta: -1,
                    multiplicity: 5,
                },
            ],
        };
        assert!(matches!(
            local_eigen_lower_bound(&kn, &spec),
            Err(Error::DivisionByZero(_))
        ));
        let spec2 = Spectrum {
            eigenvalues: vec![
                Eigenvalue {
                    theta: 5,
                    multiplicity: 1,
                },
                Eigenvalue {
                    theta: 2,
                    multiplicity: 5,
                },
            ],
        };
        assert_eq!(
            local_eigen_lower_bound(&kn, &spec2).unwrap(),
            Exact::int(-1)
        );
    }

    #[test]
    fn classical_bound_at_most_b_plus_one() {
        for (n, d, q) in [
            (7u32, 3u32, 2u64),
            (8, 3, 2),
            (9, 3, 2),
            (8, 4, 2),
            (6, 3, 3),
            (8, 3, 3),
        ] {
            let arr = grassmann_array(n, d, q);
            let b = local_eigen_lower_bound(&arr, &grassmann_spectrum(n, d, q).unwrap()).unwrap();
            assert!(b >= Exact::int(-(q as i128) - 1));
        }
    }
}
