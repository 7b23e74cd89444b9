use crate::{Error, Result};

/// Exact nonnegative integer used for Gaussian brackets and binomials.
pub type GaussInt = u128;

fn checked_pow(base: u64, exp: u32) -> Result<u128> {
    (base as u128)
        .checked_pow(exp)
        .ok_or(Error::Overflow("q-power"))
}

/// `[j;1]_b = 1 + b + ... + b^(j-1)`; zero for `j = 0`.
pub fn gauss_bracket(j: u32, b: u64) -> Result<GaussInt> {
    if b == 0 {
        return Err(Error::InvalidDimensions(
            "bracket base must be at least 1".into(),
        ));
    }
    let mut acc: u128 = 0;
    let mut term: u128 = 1;
    for i in 0..j {
        acc = acc
            .checked_add(term)
            .ok_or(Error::Overflow("Gaussian bracket"))?;
        if i + 1 < j {
            term = term
                .checked_mul(b as u128)
                .ok_or(Error::Overflow("Gaussian bracket"))?;
        }
    }
    Ok(acc)
}

/// Number of `k`-dimensional subspaces of `F_q^n`, by the product formula
/// `prod_{i<k} (q^(n-i) - 1) / (q^(i+1) - 1)`.
pub fn gauss_binomial(n: u32, k: u32, q: u64) -> Result<GaussInt> {
    if k > n {
        return Err(Error::InvalidDimensions(format!("k = {k} exceeds n = {n}")));
    }
    if q < 2 {
        return Err(Error::InvalidDimensions("q must be at least 2".into()));
    }
    // Partial products are themselves Gaussian binomials, so each division is exact.
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = checked_pow(q, n - i)? - 1;
        let den = checked_pow(q, i + 1)? - 1;
        acc = acc
            .checked_mul(num)
            .ok_or(Error::Overflow("Gaussian binomial"))?
            / den;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_examples() {
        assert_eq!(gauss_bracket(3, 2).unwrap(), 7);
        assert_eq!(gauss_bracket(0, 5).unwrap(), 0);
        let direct: u128 = (0..7).map(|i| 2u128.pow(i)).sum();
        assert_eq!(gauss_bracket(7, 2).unwrap(), direct);
        assert_eq!(direct, 127);
        assert_eq!(gauss_bracket(4, 1).unwrap(), 4);
    }

    #[test]
    fn bracket_overflow_is_reported() {
        assert!(matches!(gauss_bracket(200, 2), Err(Error::Overflow(_))));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(gauss_binomial(4, 2, 2).unwrap(), 35);
        assert_eq!(gauss_binomial(7, 3, 2).unwrap(), 11811);
        assert_eq!(gauss_binomial(9, 3, 2).unwrap(), 788035);
        for n in 0..8 {
            assert_eq!(gauss_binomial(n, 0, 3).unwrap(), 1);
        }
        assert!(gauss_binomial(3, 4, 2).is_err());
        assert!(matches!(
            gauss_binomial(200, 100, 2),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn binomial_symmetry() {
        for q in [2, 3, 5] {
            for n in 0..10 {
                for k in 0..=n {
                    assert_eq!(
                        gauss_binomial(n, k, q).unwrap(),
                        gauss_binomial(n, n - k, q).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn binomial_pascal_recurrence() {
        // [n;k] = [n-1;k-1] + q^k [n-1;k]
        for q in [2u64, 3] {
            for n in 1..12u32 {
                for k in 1..n {
                    let lhs = gauss_binomial(n, k, q).unwrap();
                    let rhs = gauss_binomial(n - 1, k - 1, q).unwrap()
                        + (q as u128).pow(k) * gauss_binomial(n - 1, k, q).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
