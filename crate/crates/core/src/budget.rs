//! Work limits for exhaustive enumerations.

use crate::error::{Error, Result};

/// Environment variable that overrides [`Budget::DEFAULT_TESTS`].
pub const BUDGET_ENV: &str = "STOPRED_BUDGET";

/// Upper limit on the number of (set, row) tests an enumeration may perform.
///
/// Checks are made up front against the worst case, so an oversized request
/// fails before any work is done.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    tests: u128,
}

impl Budget {
    pub const DEFAULT_TESTS: u128 = 1_000_000_000;

    pub const fn new(tests: u128) -> Self {
        Budget { tests }
    }

    pub const fn unlimited() -> Self {
        Budget { tests: u128::MAX }
    }

    /// Reads `STOPRED_BUDGET`, falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .replace('_', "")
                .parse::<u128>()
                .map(Budget::new)
                .map_err(|_| Error::precondition(format!("{BUDGET_ENV}={v:?} is not an integer"))),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub const fn tests(&self) -> u128 {
        self.tests
    }

    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.tests {
            Err(Error::Budget {
                needed,
                budget: self.tests,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_TESTS)
    }
}
