//! Up-front memory estimates so solvers that need `Θ(nk)` space refuse
//! cleanly instead of exhausting the machine.

use thiserror::Error;

/// Bytes charged per (node, center) entry of a materialized table: one
/// `f64` distance plus one `u32` id.
pub const PAIR_ENTRY_BYTES: u64 = 12;

pub const DEFAULT_BUDGET_BYTES: u64 = 2 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("run needs an estimated {required} bytes, budget is {budget} bytes")]
pub struct MemoryRefused {
    pub required: u64,
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryBudget {
    limit: Option<u64>,
}

impl Default for MemoryBudget {
    fn default() -> Self {
        MemoryBudget::bytes(DEFAULT_BUDGET_BYTES)
    }
}

impl MemoryBudget {
    pub const fn bytes(limit: u64) -> Self {
        MemoryBudget { limit: Some(limit) }
    }

    /// Budget equal to `entries` pair-table entries.
    pub const fn pair_entries(entries: u64) -> Self {
        MemoryBudget::bytes(entries.saturating_mul(PAIR_ENTRY_BYTES))
    }

    pub const fn unlimited() -> Self {
        MemoryBudget { limit: None }
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    pub fn admit(&self, required: u64) -> Result<(), MemoryRefused> {
        match self.limit {
            Some(budget) if required > budget => Err(MemoryRefused { required, budget }),
            _ => Ok(()),
        }
    }
}

/// Full preference tables: `n · k` pair entries.
pub fn pair_table_bytes(n: usize, k: usize) -> u64 {
    (n as u64)
        .saturating_mul(k as u64)
        .saturating_mul(PAIR_ENTRY_BYTES)
}

/// Circle growing's per-center settled bitsets: `n · k` bits.
pub fn settled_bitset_bytes(n: usize, k: usize) -> u64 {
    (n as u64).saturating_mul(k as u64).div_ceil(8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refusal_threshold() {
        let cap = MemoryBudget::pair_entries(1_000_000);
        assert!(cap.admit(pair_table_bytes(10_000, 100)).is_ok());
        let err = cap.admit(pair_table_bytes(10_000, 512)).unwrap_err();
        assert_eq!(err.budget, 12_000_000);
        assert_eq!(err.required, 61_440_000);
        assert!(cap.admit(settled_bitset_bytes(10_000, 512)).is_ok());
        assert!(MemoryBudget::unlimited().admit(u64::MAX).is_ok());
        assert_eq!(MemoryBudget::default().limit(), Some(2 * 1024 * 1024 * 1024));
    }
}
