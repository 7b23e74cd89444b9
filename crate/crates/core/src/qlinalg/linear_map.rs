use super::FieldSpec;

/// An `n x n` matrix over `F_q` acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    field: FieldSpec,
    n: usize,
    entries: Vec<u8>,
    /// Images of the unit vectors as binary words (only when `q = 2`, `n <= 64`).
    words: Vec<u64>,
}

impl LinearMap {
    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Self::from_entries(field, n, entries)
    }

    /// `e_i ↦ e_i + a e_j`.
    pub fn transvection(field: &FieldSpec, n: usize, i: usize, j: usize, a: u8) -> Self {
        assert!(i != j && i < n && j < n);
        let mut m = Self::identity(field, n);
        m.entries[i * n + j] = a % field.q();
        Self::from_entries(field, n, m.entries)
    }

    /// `e_i ↦ e_{i+1 mod n}`.
    pub fn cyclic_shift(field: &FieldSpec, n: usize) -> Self {
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            entries[i * n + (i + 1) % n] = 1;
        }
        Self::from_entries(field, n, entries)
    }

    /// `e_i ↦ a e_i`, `a` nonzero.
    pub fn scaling(field: &FieldSpec, n: usize, i: usize, a: u8) -> Self {
        let mut m = Self::identity(field, n);
        m.entries[i * n + i] = a % field.q();
        Self::from_entries(field, n, m.entries)
    }

    fn from_entries(field: &FieldSpec, n: usize, entries: Vec<u8>) -> Self {
        let words = if field.is_binary() && n <= 64 {
            (0..n)
                .map(|i| (0..n).fold(0u64, |acc, j| (acc << 1) | entries[i * n + j] as u64))
                .collect()
        } else {
            Vec::new()
        };
        Self {
            field: field.clone(),
            n,
            entries,
            words,
        }
    }

    pub fn q(&self) -> u8 {
        self.field.q()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `v M` for a row vector `v`.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        let n = self.n;
        let mut out = vec![0u8; n];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = self
                    .field
                    .add(*o, self.field.mul(vi, self.entries[i * n + j]));
            }
        }
        out
    }

    /// `v M` on the binary word representation.
    #[inline]
    pub fn apply_word(&self, v: u64) -> u64 {
        let n = self.n;
        let mut out = 0;
        let mut rest = v;
        while rest != 0 {
            let b = 63 - rest.leading_zeros() as usize;
            out ^= self.words[n - 1 - b];
            rest &= !(1u64 << b);
        }
        out
    }
}
