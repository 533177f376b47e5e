use crate::error::{Error, Result};

/// Enumeration caps. Every operation whose cost is exponential in the
/// input takes a `Limits` and fails with `SizeCapExceeded` past it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest type set whose subsets may be enumerated (2^n subsets).
    pub subset_types: usize,
    /// Largest type set whose sequents may be enumerated (4^n sequents).
    pub closure_types: usize,
    /// Largest instance-map search space.
    pub morphism_search: u128,
}

pub const ENV_MAX_TYPES: &str = "TRUTHKIT_MAX_TYPES";

impl Default for Limits {
    fn default() -> Self {
        Limits { subset_types: 12, closure_types: 6, morphism_search: 1_000_000 }
    }
}

impl Limits {
    /// Defaults, with both type caps replaced by `TRUTHKIT_MAX_TYPES` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(ENV_MAX_TYPES) {
            let n: usize = raw.trim().parse().map_err(|_| Error::ValidationError {
                path: ENV_MAX_TYPES.into(),
                message: format!("expected a non-negative integer, got {raw:?}"),
            })?;
            if n > 20 {
                return Err(Error::ValidationError {
                    path: ENV_MAX_TYPES.into(),
                    message: format!("{n} exceeds the hard limit of 20"),
                });
            }
            limits.subset_types = n;
            limits.closure_types = n;
        }
        Ok(limits)
    }

    pub(crate) fn check_subsets(&self, n: usize) -> Result<()> {
        if n > self.subset_types {
            return Err(Error::cap("types for subset enumeration", n as u128, self.subset_types as u128));
        }
        Ok(())
    }

    pub(crate) fn check_sequents(&self, n: usize) -> Result<()> {
        if n > self.closure_types {
            return Err(Error::cap("types for sequent enumeration", n as u128, self.closure_types as u128));
        }
        Ok(())
    }
}
