//! Limits for exhaustive enumerations.

use crate::error::{Error, Result};

/// Name of the environment variable overriding [`SizeGuard::default`].
pub const SIZE_GUARD_ENV: &str = "COXCALC_SIZE_GUARD";

/// Bounds on exhaustive searches. `max_vars` limits the number of generators
/// for which all `2^r` faces of the orthant are examined; `max_orbit_cones`
/// limits the number of orbit cones entering bunch enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_vars: usize,
    pub max_orbit_cones: usize,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard { max_vars: 16, max_orbit_cones: 256 }
    }
}

impl SizeGuard {
    /// Reads `COXCALC_SIZE_GUARD`, formatted `VARS` or `VARS,CONES`.
    pub fn from_env() -> Result<Self> {
        match std::env::var(SIZE_GUARD_ENV) {
            Ok(v) => Self::parse(&v),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("{SIZE_GUARD_ENV}={s}: expected VARS or VARS,CONES"));
        let mut g = Self::default();
        let mut parts = s.split(',');
        g.max_vars = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        if let Some(c) = parts.next() {
            g.max_orbit_cones = c.trim().parse().map_err(|_| bad())?;
        }
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(g)
    }

    pub fn check_vars(&self, n: usize) -> Result<()> {
        if n > self.max_vars {
            return Err(Error::SizeGuardExceeded { what: "variables".into(), size: n, limit: self.max_vars });
        }
        Ok(())
    }

    pub fn check_orbit_cones(&self, n: usize) -> Result<()> {
        if n > self.max_orbit_cones {
            return Err(Error::SizeGuardExceeded {
                what: "orbit cones".into(),
                size: n,
                limit: self.max_orbit_cones,
            });
        }
        Ok(())
    }
}
