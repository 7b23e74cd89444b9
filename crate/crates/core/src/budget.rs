use crate::{Error, Result};

/// Resource limits for the constructions that can blow up combinatorially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Budget {
    /// Approximate memory ceiling in bytes.
    pub mem_bytes: u64,
}

impl Budget {
    pub const DEFAULT_MEM_BYTES: u64 = 16 << 30;

    pub fn with_mem_bytes(mem_bytes: u64) -> Self {
        Self { mem_bytes }
    }

    pub fn check(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.mem_bytes as u128 {
            return Err(Error::BudgetExceeded {
                what,
                needed,
                cap: self.mem_bytes as u128,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            mem_bytes: Self::DEFAULT_MEM_BYTES,
        }
    }
}
