use serde::Serialize;

use crate::qlinalg::{gauss_bracket, FieldSpec};
use crate::{Error, Result};

/// Classical parameters `(D, b, alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassicalParams {
    pub d: u32,
    pub b: i128,
    pub alpha: i128,
    pub beta: i128,
}

/// `{b_0, ..., b_{D-1}; c_1, ..., c_D}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    b: Vec<i128>,
    c: Vec<i128>,
}

impl IntersectionArray {
    /// Validates lengths, nonnegativity and `a_i >= 0`.
    pub fn new(b: Vec<i128>, c: Vec<i128>) -> Result<Self> {
        if b.len() != c.len() || b.is_empty() {
            return Err(Error::Infeasible(format!(
                "array needs D >= 1 entries on both sides (got {} and {})",
                b.len(),
                c.len()
            )));
        }
        if b.iter().chain(&c).any(|&x| x < 0) {
            return Err(Error::Infeasible("negative intersection number".into()));
        }
        let arr = Self { b, c };
        if let Some(i) = (0..=arr.diameter()).find(|&i| arr.a(i) < 0) {
            return Err(Error::Infeasible(format!(
                "a_{i} = {} is negative",
                arr.a(i)
            )));
        }
        Ok(arr)
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    /// Valency `k = b_0`.
    pub fn k(&self) -> i128 {
        self.b[0]
    }

    /// `b_i`, with `b_D = 0`.
    pub fn b(&self, i: usize) -> i128 {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_i`, with `c_0 = 0`.
    pub fn c(&self, i: usize) -> i128 {
        if i == 0 {
            0
        } else {
            self.c.get(i - 1).copied().unwrap_or(0)
        }
    }

    /// `a_i = k - b_i - c_i`.
    pub fn a(&self, i: usize) -> i128 {
        self.k() - self.b(i) - self.c(i)
    }

    pub fn b_list(&self) -> &[i128] {
        &self.b
    }

    pub fn c_list(&self) -> &[i128] {
        &self.c
    }
}

impl std::fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[i128]| v.iter().map(i128::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{}; {}}}", join(&self.b), join(&self.c))
    }
}

fn bracket(j: u32, b: i128) -> Result<i128> {
    if b < 1 {
        return Err(Error::Infeasible(format!(
            "base b = {b} must be at least 1"
        )));
    }
    i128::try_from(gauss_bracket(j, b as u64)?).map_err(|_| Error::Overflow("bracket"))
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b)
        .ok_or(Error::Overflow("intersection numbers"))
}

fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b)
        .ok_or(Error::Overflow("intersection numbers"))
}

/// `b_i = ([D]-[i])(beta - alpha [i])`, `c_i = [i](1 + alpha [i-1])`.
pub fn classical_intersection_numbers(p: &ClassicalParams) -> Result<IntersectionArray> {
    if p.d < 1 {
        return Err(Error::Infeasible("diameter must be at least 1".into()));
    }
    let top = bracket(p.d, p.b)?;
    let mut b = Vec::with_capacity(p.d as usize);
    let mut c = Vec::with_capacity(p.d as usize);
    for i in 0..p.d {
        let bi = bracket(i, p.b)?;
        let v = mul(sub(top, bi)?, sub(p.beta, mul(p.alpha, bi)?)?)?;
        if v <= 0 {
            return Err(Error::Infeasible(format!("b_{i} = {v} is not positive")));
        }
        b.push(v);
    }
    for i in 1..=p.d {
        let v = mul(bracket(i, p.b)?, 1 + mul(p.alpha, bracket(i - 1, p.b)?)?)?;
        if v <= 0 {
            return Err(Error::Infeasible(format!("c_{i} = {v} is not positive")));
        }
        c.push(v);
    }
    IntersectionArray::new(b, c)
}

/// `theta_i = [D-i](beta - alpha [i]) - [i]` for `0 <= i <= D`.
pub fn classical_eigenvalues(p: &ClassicalParams) -> Result<Vec<i128>> {
    (0..=p.d)
        .map(|i| {
            let bi = bracket(i, p.b)?;
            sub(
                mul(bracket(p.d - i, p.b)?, sub(p.beta, mul(p.alpha, bi)?)?)?,
                bi,
            )
        })
        .collect()
}

/// Classical parameters of `J_q(n, D)`: `(D, q, q, [n-D+1]_q - 1)`.
pub fn grassmann_params(n: u32, d: u32, q: u64) -> Result<ClassicalParams> {
    FieldSpec::new(q)?;
    if d < 1 || n < 2 * d {
        return Err(Error::InvalidDimensions(format!(
            "Grassmann graph needs n >= 2D >= 2 (n = {n}, D = {d})"
        )));
    }
    let q = q as i128;
    Ok(ClassicalParams {
        d,
        b: q,
        alpha: q,
        beta: bracket(n - d + 1, q)? - 1,
    })
}
