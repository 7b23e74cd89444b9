//! The numeric side of the clique-partition conditions and their
//! instantiation for `b = alpha = 2`.

use num_rational::Ratio;
use serde::Serialize;

use super::{classical_eigenvalues, classical_intersection_numbers, ClassicalParams, Exact};
use crate::{Error, Result};

/// Margins of the three inequality conditions for a parameter choice
/// `(s, m, n, w, e)` on a graph of order (or valency) `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlsMargins {
    /// `w - (s-1)e - ms + 1`; condition holds iff positive.
    pub cond3: Exact,
    /// `(s+1)(w+1) - s(s+1)e/2 - v`; condition holds iff positive.
    pub cond4: Exact,
    /// `ms + 1 - e - n`; condition holds iff nonnegative.
    pub cond5: Exact,
}

impl PlsMargins {
    pub fn cond3_holds(&self) -> bool {
        self.cond3.is_positive()
    }

    pub fn cond4_holds(&self) -> bool {
        self.cond4.is_positive()
    }

    pub fn cond5_holds(&self) -> bool {
        *self.cond5.0.numer() >= 0
    }

    pub fn all_hold(&self) -> bool {
        self.cond3_holds() && self.cond4_holds() && self.cond5_holds()
    }
}

pub fn pls_margins(s: Ratio<i128>, m: i128, n: i128, w: i128, e: i128, v: i128) -> PlsMargins {
    let one = Ratio::from_integer(1);
    let int = Ratio::from_integer;
    PlsMargins {
        cond3: Exact(int(w) - (s - one) * e - s * m + one),
        cond4: Exact((s + one) * (w + 1) - s * (s + one) * e / 2 - int(v)),
        cond5: Exact(s * m + one - int(e) - int(n)),
    }
}

/// `(m, n) = (l^2 - l, l^4 - 2l^3 + 2l^2 - 2l + 2)`: a graph with smallest
/// eigenvalue at least `-l` is free of `K~_{m+1,n}`.
pub fn kfree_parameters(lambda: i128) -> (i128, i128) {
    let l = lambda;
    (l * l - l, l.pow(4) - 2 * l.pow(3) + 2 * l * l - 2 * l + 2)
}

/// `l^4 - 2l^3 + 3l^2 - 3l + 3`: cliques at least this large see every
/// outside vertex with few or with almost all neighbours in them.
pub fn cbound_clique_threshold(lambda: i128) -> i128 {
    let l = lambda;
    l.pow(4) - 2 * l.pow(3) + 3 * l * l - 3 * l + 3
}

/// `ceil(5 b^D / 4)`, which is exactly `5 * 2^D / 4` for `b = 2`.
pub fn default_s(b: i128, d: u32) -> Result<i128> {
    let p = b
        .checked_pow(d)
        .and_then(|x| x.checked_mul(5))
        .ok_or(Error::Overflow("default s"))?;
    Ok((p + 3) / 4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MainMargins {
    pub cond3: Exact,
    pub cond4: Exact,
    pub cond5: Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MainPass {
    pub cond3: bool,
    pub cond4: bool,
    pub cond5: bool,
    /// `e > m`.
    pub cond6: bool,
    /// The local smallest-eigenvalue bound is at least `-lambda`, so local
    /// graphs are `K~_{m+1,n}`-free.
    pub cond7: bool,
    pub all: bool,
}

/// Exact evaluation of the parameter instantiation `s = 5 * 2^D / 4`,
/// `m = 6`, `n = 41`, `e = c_2 - 1 = 8` for classical parameters
/// `(D, 2, 2, beta)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MainConditionsReport {
    pub d: u32,
    pub beta: i128,
    /// `l` with `beta = [D+l+1]_2 - 1`, when `beta` has that shape.
    pub ell: Option<u32>,
    pub s: Exact,
    pub m: i128,
    pub n: i128,
    pub w: i128,
    pub e: i128,
    pub k: i128,
    pub c2: i128,
    pub lambda: i128,
    pub local_eigen_bound: Exact,
    pub cbound_clique_threshold: i128,
    pub kfree_apex_neighbours: i128,
    pub kfree_clique_rest: i128,
    pub margins: MainMargins,
    pub pass: MainPass,
}

pub fn theorem_main_conditions(d: u32, beta: i128) -> Result<MainConditionsReport> {
    if d < 3 {
        return Err(Error::Hypothesis(format!("D must be at least 3 (D = {d})")));
    }
    // [D+4]_2 - 1 = 2^{D+4} - 2
    let floor = 1i128
        .checked_shl(d + 4)
        .ok_or(Error::Overflow("beta bound"))?
        - 2;
    if beta < floor {
        return Err(Error::Hypothesis(format!(
            "beta = {beta} is below [D+4]_2 - 1 = {floor}"
        )));
    }
    let params = ClassicalParams {
        d,
        b: 2,
        alpha: 2,
        beta,
    };
    let arr = classical_intersection_numbers(&params)?;
    let k = arr.k();
    let w = arr.a(1);
    let c2 = arr.c(2);
    let e = c2 - 1;
    let s = Ratio::new(5 * (1i128 << d), 4);
    if !s.is_integer() {
        return Err(Error::NonIntegralS(Exact(s).to_string()));
    }
    let lambda = params.b + 1;
    let (m, n) = kfree_parameters(lambda);
    let margins = pls_margins(s, m, n, w, e, k);

    let thetas = classical_eigenvalues(&params)?;
    if thetas[1] + 1 == 0 {
        return Err(Error::DivisionByZero(
            "local eigenvalue bound (theta_1 = -1)",
        ));
    }
    let local = Exact(Ratio::new(-arr.b(1), thetas[1] + 1) - 1);

    let ell = {
        let t = beta + 2;
        (t & (t - 1) == 0)
            .then(|| t.trailing_zeros())
            .and_then(|j| j.checked_sub(d + 1))
    };
    let pass = MainPass {
        cond3: margins.cond3_holds(),
        cond4: margins.cond4_holds(),
        cond5: margins.cond5.is_positive(),
        cond6: e > m,
        cond7: local >= Exact::int(-lambda),
        all: false,
    };
    let pass = MainPass {
        all: pass.cond3 && pass.cond4 && pass.cond5 && pass.cond6 && pass.cond7,
        ..pass
    };
    Ok(MainConditionsReport {
        d,
        beta,
        ell,
        s: Exact(s),
        m,
        n,
        w,
        e,
        k,
        c2,
        lambda,
        local_eigen_bound: local,
        cbound_clique_threshold: cbound_clique_threshold(lambda),
        kfree_apex_neighbours: m + 1,
        kfree_clique_rest: n,
        margins: MainMargins {
            cond3: margins.cond3,
            cond4: margins.cond4,
            cond5: margins.cond5,
        },
        pass,
    })
}

/// Every integer `s` in `[1, s_max]` satisfying conditions (3), (4) and (5)
/// with `k = b_0` and `w = a_1` taken from `params`.
pub fn feasible_s_search(
    params: &ClassicalParams,
    m: i128,
    n: i128,
    e: i128,
    s_max: u64,
) -> Result<Vec<u64>> {
    let arr = classical_intersection_numbers(params)?;
    let (k, w) = (arr.k(), arr.a(1));
    Ok((1..=s_max)
        .filter(|&s| pls_margins(Ratio::from_integer(s as i128), m, n, w, e, k).all_hold())
        .collect())
}
