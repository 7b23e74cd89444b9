use std::fmt;

use super::bits;
use super::{gauss_binomial, FieldSpec, LinearMap};
use crate::{Budget, Error, Result};

/// A subspace of `F_q^n` in canonical reduced row-echelon form.
///
/// Two values compare equal exactly when they describe the same subspace.
/// The derived order is lexicographic on the basis rows (after `q`, `n`,
/// `k`), which is the canonical vertex order of Grassmann graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    q: u8,
    n: usize,
    k: usize,
    rows: Rows,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Rows {
    /// One word per row, column 0 in bit `n - 1`.
    Binary(Vec<u64>),
    /// Row-major `k x n` entries.
    Prime(Vec<u8>),
}

fn uses_words(q: u8, n: usize) -> bool {
    q == 2 && n <= 64
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(q={}, n={}, k={}, [", self.q, self.n, self.k)?;
        for (i, row) in self.matrix().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            for e in row {
                write!(f, "{e}")?;
            }
        }
        write!(f, "])")
    }
}

/// Canonical subspace spanned by the rows of an `r x n` matrix.
pub fn rref(field: &FieldSpec, n: usize, matrix: &[Vec<u8>]) -> Result<Subspace> {
    for row in matrix {
        if row.len() != n {
            return Err(Error::RaggedMatrix {
                expected: n,
                found: row.len(),
            });
        }
        if let Some(&e) = row.iter().find(|&&e| e >= field.q()) {
            return Err(Error::EntryOutOfRange {
                entry: e as u64,
                q: field.q() as u64,
            });
        }
    }
    if uses_words(field.q(), n) {
        let words = matrix
            .iter()
            .map(|row| row.iter().fold(0u64, |acc, &e| (acc << 1) | e as u64))
            .collect();
        return Ok(Subspace::from_binary_words(n, words));
    }
    let mut flat: Vec<u8> = matrix.iter().flatten().copied().collect();
    let k = bits::prime_rref(&mut flat, matrix.len(), n, field);
    flat.truncate(k * n);
    Ok(Subspace {
        q: field.q(),
        n,
        k,
        rows: Rows::Prime(flat),
    })
}

impl Subspace {
    /// The zero subspace of `F_q^n`.
    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        let rows = if uses_words(field.q(), n) {
            Rows::Binary(Vec::new())
        } else {
            Rows::Prime(Vec::new())
        };
        Subspace {
            q: field.q(),
            n,
            k: 0,
            rows,
        }
    }

    /// Span of binary row words (column 0 in bit `n - 1`), for `n <= 64`.
    pub fn from_binary_words(n: usize, mut words: Vec<u64>) -> Self {
        assert!(n <= 64, "binary word rows need n <= 64");
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        debug_assert!(words.iter().all(|&w| w & !mask == 0));
        let k = bits::canonicalize(&mut words);
        Subspace {
            q: 2,
            n,
            k,
            rows: Rows::Binary(words),
        }
    }

    /// Rebuilds a canonical subspace from [`Subspace::packed_key`].
    pub fn from_packed(field: &FieldSpec, n: usize, k: usize, key: u128) -> Result<Self> {
        if uses_words(field.q(), n) {
            if k * n > 128 {
                return Err(Error::InvalidDimensions(format!(
                    "{k} x {n} does not pack into 128 bits"
                )));
            }
            return Ok(Subspace::from_binary_words(n, bits::unpack(key, k, n)));
        }
        let mut entries = vec![0u8; k * n];
        let mut rest = key;
        for e in entries.iter_mut().rev() {
            *e = (rest % field.q() as u128) as u8;
            rest /= field.q() as u128;
        }
        if rest != 0 {
            return Err(Error::InvalidDimensions("packed key too large".into()));
        }
        let rows: Vec<Vec<u8>> = entries.chunks(n.max(1)).map(<[u8]>::to_vec).collect();
        rref(field, n, &rows[..k.min(rows.len())])
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Subspace dimension `k`.
    pub fn dim(&self) -> usize {
        self.k
    }

    /// Ambient dimension `n`.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Basis words when stored in the binary representation.
    pub fn binary_rows(&self) -> Option<&[u64]> {
        match &self.rows {
            Rows::Binary(w) => Some(w),
            Rows::Prime(_) => None,
        }
    }

    /// The canonical basis as a `k x n` matrix.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        match &self.rows {
            Rows::Binary(words) => words
                .iter()
                .map(|&w| {
                    (0..self.n)
                        .map(|j| (w >> (self.n - 1 - j) & 1) as u8)
                        .collect()
                })
                .collect(),
            Rows::Prime(e) => e
                .chunks(self.n.max(1))
                .take(self.k)
                .map(<[u8]>::to_vec)
                .collect(),
        }
    }

    /// Pivot columns, strictly increasing.
    pub fn pivots(&self) -> Vec<usize> {
        self.matrix()
            .iter()
            .map(|row| row.iter().position(|&e| e != 0).expect("nonzero row"))
            .collect()
    }

    /// Single-integer encoding of the canonical basis, order preserving among
    /// subspaces with the same `(q, n, k)`. `None` if it exceeds 128 bits.
    pub fn packed_key(&self) -> Option<u128> {
        match &self.rows {
            Rows::Binary(w) => (self.k * self.n <= 128).then(|| bits::pack(w, self.n)),
            Rows::Prime(e) => bits::pack_prime(e, self.q),
        }
    }

    fn field(&self) -> FieldSpec {
        FieldSpec::new(self.q as u64).expect("stored q is prime")
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.q != other.q || self.n != other.n {
            return Err(Error::AmbientMismatch(format!(
                "F_{}^{} vs F_{}^{}",
                self.q, self.n, other.q, other.n
            )));
        }
        Ok(())
    }

    /// `self + other`.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        match (&self.rows, &other.rows) {
            (Rows::Binary(a), Rows::Binary(b)) => Ok(Subspace::from_binary_words(
                self.n,
                a.iter().chain(b).copied().collect(),
            )),
            _ => {
                let mut m = self.matrix();
                m.extend(other.matrix());
                rref(&self.field(), self.n, &m)
            }
        }
    }

    /// Whether `v` (length `n`) lies in the subspace.
    pub fn contains(&self, v: &[u8]) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::RaggedMatrix {
                expected: self.n,
                found: v.len(),
            });
        }
        let field = self.field();
        let line = rref(&field, self.n, &[v.to_vec()])?;
        Ok(self.join(&line)?.dim() == self.k)
    }

    /// Image under a linear map of the same ambient space.
    pub fn transform(&self, map: &LinearMap) -> Result<Subspace> {
        if map.q() != self.q || map.dim() != self.n {
            return Err(Error::AmbientMismatch(format!(
                "map on F_{}^{} applied to subspace of F_{}^{}",
                map.q(),
                map.dim(),
                self.q,
                self.n
            )));
        }
        match &self.rows {
            Rows::Binary(w) => Ok(Subspace::from_binary_words(
                self.n,
                w.iter().map(|&r| map.apply_word(r)).collect(),
            )),
            Rows::Prime(_) => {
                let images: Vec<Vec<u8>> = self.matrix().iter().map(|r| map.apply(r)).collect();
                rref(&self.field(), self.n, &images)
            }
        }
    }

    /// All `(k-1)`-dimensional subspaces of `self`, in canonical order.
    pub fn hyperplanes(&self) -> Vec<Subspace> {
        if self.k == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        match &self.rows {
            Rows::Binary(w) => {
                let mut buf = Vec::with_capacity(self.k);
                for f in 1..(1u64 << self.k) {
                    bits::hyperplane_into(w, f, &mut buf);
                    out.push(Subspace {
                        q: 2,
                        n: self.n,
                        k: self.k - 1,
                        rows: Rows::Binary(buf.clone()),
                    });
                }
            }
            Rows::Prime(_) => {
                let field = self.field();
                let basis = self.matrix();
                for f in normalized_vectors(self.q, self.k) {
                    let t = f.iter().position(|&x| x != 0).expect("normalized");
                    let rows: Vec<Vec<u8>> = (0..self.k)
                        .filter(|&i| i != t)
                        .map(|i| {
                            (0..self.n)
                                .map(|j| field.sub(basis[i][j], field.mul(f[i], basis[t][j])))
                                .collect()
                        })
                        .collect();
                    out.push(rref(&field, self.n, &rows).expect("valid entries"));
                }
            }
        }
        out.sort();
        out
    }

    /// All `(k+1)`-dimensional subspaces containing `self`, in canonical order.
    pub fn extensions(&self) -> Vec<Subspace> {
        if self.k == self.n {
            return Vec::new();
        }
        let pivots = self.pivots();
        let free: Vec<usize> = (0..self.n).filter(|j| !pivots.contains(j)).collect();
        let mut out = Vec::new();
        match &self.rows {
            Rows::Binary(w) => {
                let free_mask = free
                    .iter()
                    .fold(0u64, |acc, &j| acc | 1u64 << (self.n - 1 - j));
                let mut buf = Vec::with_capacity(self.k + 1);
                for x in 1..(1u64 << free.len()) {
                    bits::extend_into(w, bits::deposit(x, free_mask), &mut buf);
                    out.push(Subspace {
                        q: 2,
                        n: self.n,
                        k: self.k + 1,
                        rows: Rows::Binary(buf.clone()),
                    });
                }
            }
            Rows::Prime(_) => {
                let field = self.field();
                let basis = self.matrix();
                for x in normalized_vectors(self.q, free.len()) {
                    let mut v = vec![0u8; self.n];
                    for (&j, &e) in free.iter().zip(&x) {
                        v[j] = e;
                    }
                    let mut rows = basis.clone();
                    rows.push(v);
                    out.push(rref(&field, self.n, &rows).expect("valid entries"));
                }
            }
        }
        out.sort();
        out
    }

    /// Every vector of the subspace (`q^k` of them). Meant for small cases.
    pub fn span_vectors(&self) -> Vec<Vec<u8>> {
        let basis = self.matrix();
        let q = self.q as usize;
        let total = q.pow(self.k as u32);
        let mut out = Vec::with_capacity(total);
        for mut idx in 0..total {
            let mut v = vec![0u8; self.n];
            for row in &basis {
                let c = (idx % q) as u16;
                idx /= q;
                for (x, &b) in v.iter_mut().zip(row) {
                    *x = ((*x as u16 + c * b as u16) % q as u16) as u8;
                }
            }
            out.push(v);
        }
        out
    }
}

/// Nonzero vectors of `F_q^len` whose first nonzero entry is one.
fn normalized_vectors(q: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for lead in 0..len {
        let tail = len - lead - 1;
        let count = (q as usize).pow(tail as u32);
        for mut idx in 0..count {
            let mut v = vec![0u8; len];
            v[lead] = 1;
            for j in (lead + 1..len).rev() {
                v[j] = (idx % q as usize) as u8;
                idx /= q as usize;
            }
            out.push(v);
        }
    }
    out
}

/// `dim(U ∩ W) = dim U + dim W - dim(U + W)`.
pub fn intersect_dim(u: &Subspace, w: &Subspace) -> Result<usize> {
    Ok(u.dim() + w.dim() - u.join(w)?.dim())
}

/// Every `k`-dimensional subspace of `F_q^n`, each once, in canonical order.
pub fn enumerate_subspaces(n: usize, k: usize, field: &FieldSpec) -> Result<Vec<Subspace>> {
    enumerate_subspaces_with_budget(n, k, field, &Budget::default())
}

pub fn enumerate_subspaces_with_budget(
    n: usize,
    k: usize,
    field: &FieldSpec,
    budget: &Budget,
) -> Result<Vec<Subspace>> {
    if k > n {
        return Err(Error::InvalidDimensions(format!("k = {k} exceeds n = {n}")));
    }
    let count = gauss_binomial(n as u32, k as u32, field.q() as u64)?;
    let per_item = std::mem::size_of::<Subspace>() as u128
        + if uses_words(field.q(), n) {
            8 * k as u128
        } else {
            (k * n) as u128
        };
    budget.check("subspace enumeration", count.saturating_mul(per_item))?;

    let mut out = Vec::with_capacity(count as usize);
    let q = field.q();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free entries: (row, column) right of the row's pivot, off pivot columns
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                ((pivots[i] + 1)..n)
                    .filter(|j| !pivots.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let combos = (q as u128).pow(free.len() as u32);
        for mut idx in 0..combos {
            if uses_words(q, n) {
                let mut words: Vec<u64> = pivots.iter().map(|&p| 1u64 << (n - 1 - p)).collect();
                for &(i, j) in &free {
                    if idx & 1 == 1 {
                        words[i] |= 1u64 << (n - 1 - j);
                    }
                    idx >>= 1;
                }
                out.push(Subspace {
                    q,
                    n,
                    k,
                    rows: Rows::Binary(words),
                });
            } else {
                let mut entries = vec![0u8; k * n];
                for (i, &p) in pivots.iter().enumerate() {
                    entries[i * n + p] = 1;
                }
                for &(i, j) in &free {
                    entries[i * n + j] = (idx % q as u128) as u8;
                    idx /= q as u128;
                }
                out.push(Subspace {
                    q,
                    n,
                    k,
                    rows: Rows::Prime(entries),
                });
            }
        }
        // next pivot combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| pivots[i] < n - k + i) else {
            break;
        };
        pivots[i] += 1;
        for j in i + 1..k {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
    out.sort_unstable();
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn f2() -> FieldSpec {
        FieldSpec::binary()
    }

    #[test]
    fn rref_examples() {
        let id = rref(&f2(), 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(id.dim(), 3);
        assert_eq!(
            id.matrix(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );

        let s = rref(&f2(), 3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.matrix(), vec![vec![1, 0, 1], vec![0, 1, 1]]);

        let z = rref(&f2(), 3, &[vec![0, 0, 0]]).unwrap();
        assert_eq!(z.dim(), 0);
        assert_eq!(z, Subspace::zero(&f2(), 3));
    }

    #[test]
    fn rref_rejects_bad_input() {
        let f3 = FieldSpec::new(3).unwrap();
        assert!(matches!(
            rref(&f3, 2, &[vec![0, 3]]),
            Err(Error::EntryOutOfRange { .. })
        ));
        assert!(matches!(
            rref(&f3, 2, &[vec![0]]),
            Err(Error::RaggedMatrix { .. })
        ));
    }

    #[test]
    fn prime_rref_canonical_shape() {
        let f3 = FieldSpec::new(3).unwrap();
        let s = rref(
            &f3,
            4,
            &[vec![2, 1, 0, 1], vec![1, 1, 1, 0], vec![0, 2, 2, 1]],
        )
        .unwrap();
        let m = s.matrix();
        let piv = s.pivots();
        assert!(piv.windows(2).all(|w| w[0] < w[1]));
        for (i, &p) in piv.iter().enumerate() {
            for (r, row) in m.iter().enumerate() {
                assert_eq!(row[p], u8::from(r == i));
            }
        }
    }

    #[test]
    fn small_enumeration_counts() {
        assert_eq!(enumerate_subspaces(2, 1, &f2()).unwrap().len(), 3);
        assert_eq!(enumerate_subspaces(4, 2, &f2()).unwrap().len(), 35);
        assert_eq!(enumerate_subspaces(7, 3, &f2()).unwrap().len(), 11811);
        assert_eq!(enumerate_subspaces(5, 0, &f2()).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_respects_budget() {
        let tiny = Budget::with_mem_bytes(1024);
        assert!(matches!(
            enumerate_subspaces_with_budget(7, 3, &f2(), &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    /// Oracle: distinct spans of all k-tuples of vectors, as explicit vector sets.
    fn brute_force_count(n: usize, k: usize, q: u8) -> usize {
        let f = FieldSpec::new(q as u64).unwrap();
        let vectors: Vec<Vec<u8>> = (0..(q as usize).pow(n as u32))
            .map(|mut i| {
                (0..n)
                    .map(|_| {
                        let e = (i % q as usize) as u8;
                        i /= q as usize;
                        e
                    })
                    .collect()
            })
            .collect();
        let mut spans: BTreeSet<BTreeSet<Vec<u8>>> = BTreeSet::new();
        let mut tuple = vec![0usize; k];
        loop {
            let mut set: BTreeSet<Vec<u8>> = BTreeSet::new();
            set.insert(vec![0; n]);
            for &t in &tuple {
                let current: Vec<Vec<u8>> = set.iter().cloned().collect();
                for c in 1..q {
                    for u in &current {
                        let w: Vec<u8> = u
                            .iter()
                            .zip(&vectors[t])
                            .map(|(&a, &b)| f.add(a, f.mul(c, b)))
                            .collect();
                        set.insert(w);
                    }
                }
            }
            if set.len() == (q as usize).pow(k as u32) {
                spans.insert(set);
            }
            let Some(pos) = (0..k).rev().find(|&i| tuple[i] + 1 < vectors.len()) else {
                break;
            };
            tuple[pos] += 1;
            for t in tuple.iter_mut().skip(pos + 1) {
                *t = 0;
            }
        }
        spans.len()
    }

    #[test]
    fn enumeration_matches_brute_force_spans() {
        assert_eq!(brute_force_count(4, 2, 2), 35);
        assert_eq!(brute_force_count(3, 1, 3), 13);
        assert_eq!(brute_force_count(3, 2, 3), 13);
        for (n, k, q) in [(4usize, 2usize, 2u8), (3, 1, 3), (3, 2, 3), (5, 2, 2)] {
            let f = FieldSpec::new(q as u64).unwrap();
            assert_eq!(
                enumerate_subspaces(n, k, &f).unwrap().len(),
                brute_force_count(n, k, q)
            );
        }
    }

    #[test]
    fn count_identity_up_to_eight() {
        for q in [2u8, 3] {
            let f = FieldSpec::new(q as u64).unwrap();
            for n in 0..=8usize {
                for k in 0..=n {
                    let expected = gauss_binomial(n as u32, k as u32, q as u64).unwrap();
                    if expected > 200_000 {
                        continue;
                    }
                    let all = enumerate_subspaces(n, k, &f).unwrap();
                    assert_eq!(all.len() as u128, expected, "n={n} k={k} q={q}");
                    assert!(
                        all.windows(2).all(|w| w[0] < w[1]),
                        "order n={n} k={k} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn hyperplanes_and_extensions_counts() {
        let f = f2();
        let x = enumerate_subspaces(7, 3, &f).unwrap()[100].clone();
        let hyper = x.hyperplanes();
        assert_eq!(hyper.len(), 7);
        for h in &hyper {
            assert_eq!(h.dim(), 2);
            assert_eq!(intersect_dim(h, &x).unwrap(), 2);
        }
        let ext = hyper[0].extensions();
        assert_eq!(ext.len(), 31);
        assert!(ext.contains(&x));

        let f3 = FieldSpec::new(3).unwrap();
        let y = enumerate_subspaces(5, 2, &f3).unwrap()[17].clone();
        assert_eq!(y.hyperplanes().len(), 4);
        assert_eq!(y.extensions().len(), 13);
        for e in y.extensions() {
            assert_eq!(intersect_dim(&e, &y).unwrap(), 2);
        }
    }

    #[test]
    fn intersect_dim_examples() {
        let f = f2();
        let u = rref(&f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let w = rref(&f, 4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        assert_eq!(intersect_dim(&u, &u).unwrap(), 2);
        assert_eq!(intersect_dim(&u, &w).unwrap(), 0);
        let other = rref(&f, 5, &[vec![1, 0, 0, 0, 0]]).unwrap();
        assert!(matches!(
            intersect_dim(&u, &other),
            Err(Error::AmbientMismatch(_))
        ));
    }

    #[test]
    fn packed_key_roundtrip() {
        for q in [2u64, 3] {
            let f = FieldSpec::new(q).unwrap();
            for s in enumerate_subspaces(5, 2, &f).unwrap() {
                let key = s.packed_key().unwrap();
                assert_eq!(Subspace::from_packed(&f, 5, 2, key).unwrap(), s);
            }
        }
    }
}
