use crate::error::{Error, Result};

/// Upper bound on the number of configurations (lattice points, edge subsets,
/// orientations, group states) any single enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_points: u64,
}

impl Budget {
    pub const DEFAULT_POINTS: u64 = 100_000_000;

    pub fn new(max_points: u64) -> Self {
        Budget { max_points }
    }

    pub fn unlimited() -> Self {
        Budget {
            max_points: u64::MAX,
        }
    }

    pub fn check(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.max_points as u128 {
            Err(Error::BudgetExceeded {
                what,
                needed,
                budget: self.max_points,
            })
        } else {
            Ok(())
        }
    }

    /// Checks `base^exp` without overflowing.
    pub fn check_power(&self, what: &'static str, base: u128, exp: usize) -> Result<()> {
        let mut acc: u128 = 1;
        for _ in 0..exp {
            acc = acc.saturating_mul(base);
            if acc > self.max_points as u128 {
                return self.check(what, acc);
            }
        }
        self.check(what, acc)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_POINTS)
    }
}
