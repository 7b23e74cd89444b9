//! Word-level kernels for canonical forms.
//!
//! Binary rows use bit `n - 1 - j` for column `j`, so numeric order on a row
//! equals lexicographic order on its coefficient string. A canonical binary
//! basis is fully reduced and sorted in descending numeric order, which is
//! the same as ascending pivot column.

use super::FieldSpec;

#[inline]
fn lead(v: u64) -> u64 {
    1u64 << (63 - v.leading_zeros())
}

/// Inserts `v` into a fully reduced binary basis. Returns `false` when `v`
/// already lies in the span. The basis is left unsorted.
#[inline]
pub fn insert_reduced(basis: &mut Vec<u64>, mut v: u64) -> bool {
    for &b in basis.iter() {
        if v & lead(b) != 0 {
            v ^= b;
        }
    }
    if v == 0 {
        return false;
    }
    let l = lead(v);
    for b in basis.iter_mut() {
        if *b & l != 0 {
            *b ^= v;
        }
    }
    basis.push(v);
    true
}

/// Replaces `rows` by the canonical basis of their span and returns the rank.
pub fn canonicalize(rows: &mut Vec<u64>) -> usize {
    let input = std::mem::take(rows);
    for v in input {
        insert_reduced(rows, v);
    }
    rows.sort_unstable_by(|a, b| b.cmp(a));
    rows.len()
}

/// Packs a canonical binary basis into one integer; row 0 is most significant.
/// Requires `rows.len() * n <= 128`.
#[inline]
pub fn pack(rows: &[u64], n: usize) -> u128 {
    debug_assert!(rows.len() * n <= 128);
    rows.iter().fold(0u128, |acc, &r| (acc << n) | r as u128)
}

/// Inverse of [`pack`].
pub fn unpack(key: u128, k: usize, n: usize) -> Vec<u64> {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    (0..k)
        .map(|i| ((key >> ((k - 1 - i) * n)) as u64) & mask)
        .collect()
}

/// Mask of the pivot columns of a canonical basis.
#[inline]
pub fn pivot_mask(rows: &[u64]) -> u64 {
    rows.iter().fold(0, |acc, &r| acc | lead(r))
}

/// Scatters the low bits of `w` into the set bits of `mask`, lowest first.
#[inline]
pub fn deposit(mut w: u64, mut mask: u64) -> u64 {
    let mut out = 0;
    while w != 0 && mask != 0 {
        let bit = mask & mask.wrapping_neg();
        if w & 1 != 0 {
            out |= bit;
        }
        w >>= 1;
        mask &= mask - 1;
    }
    out
}

/// Canonical basis of the hyperplane `{ sum a_i r_i : sum a_i f_i = 0 }` of
/// the span of `rows`, where bit `i` of the nonzero functional `f` is `f_i`.
pub fn hyperplane_into(rows: &[u64], f: u64, out: &mut Vec<u64>) {
    debug_assert!(f != 0);
    let t = f.trailing_zeros() as usize;
    out.clear();
    for (i, &r) in rows.iter().enumerate() {
        if i == t {
            continue;
        }
        let v = if f >> i & 1 == 1 { r ^ rows[t] } else { r };
        insert_reduced(out, v);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
}

/// Canonical basis of `span(base) + <v>` where `base` is canonical and `v`
/// is zero on the pivot columns of `base` (and nonzero).
pub fn extend_into(base: &[u64], v: u64, out: &mut Vec<u64>) {
    let l = lead(v);
    out.clear();
    out.extend(base.iter().map(|&b| if b & l != 0 { b ^ v } else { b }));
    let pos = out.iter().position(|&b| b < v).unwrap_or(out.len());
    out.insert(pos, v);
}

/// In-place Gauss–Jordan elimination of a row-major `rows x n` byte matrix
/// over a prime field. Pivots are normalized to one; zero rows sink to the
/// bottom. Returns the rank.
pub fn prime_rref(m: &mut [u8], rows: usize, n: usize, field: &FieldSpec) -> usize {
    debug_assert_eq!(m.len(), rows * n);
    let mut rank = 0;
    for col in 0..n {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| m[r * n + col] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..n {
                m.swap(p * n + j, rank * n + j);
            }
        }
        let inv = field.inv(m[rank * n + col]);
        if inv != 1 {
            for j in col..n {
                m[rank * n + j] = field.mul(m[rank * n + j], inv);
            }
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let factor = m[r * n + col];
            if factor == 0 {
                continue;
            }
            for j in col..n {
                let sub = field.mul(factor, m[rank * n + j]);
                m[r * n + j] = field.sub(m[r * n + j], sub);
            }
        }
        rank += 1;
    }
    rank
}

/// Base-`q` packing of a row-major entry buffer, first entry most
/// significant. `None` if it does not fit in 128 bits.
pub fn pack_prime(entries: &[u8], q: u8) -> Option<u128> {
    let mut acc: u128 = 0;
    for &e in entries {
        acc = acc.checked_mul(q as u128)?.checked_add(e as u128)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_of_small_binary_span() {
        // rows 110, 011, 101 span a plane with canonical basis {101, 011}
        let mut rows = vec![0b110, 0b011, 0b101];
        assert_eq!(canonicalize(&mut rows), 2);
        assert_eq!(rows, vec![0b101, 0b011]);
    }

    #[test]
    fn deposit_scatters_low_bits() {
        assert_eq!(deposit(0b11, 0b1010), 0b1010);
        assert_eq!(deposit(0b10, 0b1010), 0b1000);
        assert_eq!(deposit(0b1, 0b1100), 0b0100);
    }

    #[test]
    fn pack_roundtrip() {
        let rows = vec![0b1001000, 0b0100110, 0b0010001];
        assert_eq!(unpack(pack(&rows, 7), 3, 7), rows);
    }

    #[test]
    fn prime_rref_normalizes_pivots() {
        let f = FieldSpec::new(3).unwrap();
        // [2 1 0; 1 2 0] over F_3: second row = 2 * first
        let mut m = vec![2, 1, 0, 1, 2, 0];
        assert_eq!(prime_rref(&mut m, 2, 3, &f), 1);
        assert_eq!(m, vec![1, 2, 0, 0, 0, 0]);
    }
}
