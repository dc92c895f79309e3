use serde::Serialize;

use crate::error::{Error, Result};

/// Dimension limits for the enumerating and symbolic operations.
///
/// Enumerating every minor costs `sum_k C(n,k)^2 = C(2n,n)` determinants, and
/// the symbolic invariants grow much faster still.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Guards {
    pub max_enumeration_dim: usize,
    pub max_symbolic_dim: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Self { max_enumeration_dim: 12, max_symbolic_dim: 6 }
    }
}

impl Guards {
    pub fn check_enumeration(&self, n: usize) -> Result<()> {
        if n > self.max_enumeration_dim {
            return Err(Error::GuardExceeded {
                what: "minor enumeration",
                n,
                limit: self.max_enumeration_dim,
            });
        }
        Ok(())
    }

    pub fn check_symbolic(&self, n: usize) -> Result<()> {
        self.check_enumeration(n)?;
        if n > self.max_symbolic_dim {
            return Err(Error::GuardExceeded {
                what: "symbolic expansion",
                n,
                limit: self.max_symbolic_dim,
            });
        }
        Ok(())
    }
}
