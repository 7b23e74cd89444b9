use crate::{Error, Result};

/// A prime field `F_q`, with precomputed inverses.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    q: u8,
    inv: Vec<u8>,
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if q > 255 {
            return Err(Error::FieldTooLarge(q));
        }
        let q8 = q as u8;
        let mut inv = vec![0u8; q as usize];
        for a in 1..q {
            // Fermat: a^(q-2)
            let mut r = 1u64;
            let mut base = a;
            let mut e = q - 2;
            while e > 0 {
                if e & 1 == 1 {
                    r = r * base % q;
                }
                base = base * base % q;
                e >>= 1;
            }
            inv[a as usize] = r as u8;
        }
        Ok(Self { q: q8, inv })
    }

    pub fn binary() -> Self {
        Self::new(2).expect("2 is prime")
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.q
    }

    #[inline]
    pub fn is_binary(&self) -> bool {
        self.q == 2
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.q as u16) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.q as u16 - b as u16) % self.q as u16) as u8
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.q as u16) as u8
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
}
