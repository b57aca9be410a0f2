//! Size guards for the combinatorial kernels.

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "RSS_SIZE_GUARD";

/// Caps counted in elements produced (vertices, entries, multisets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guards {
    pub polar_vertices: usize,
    pub index_size: usize,
    pub level_multisets: usize,
    pub counterexample_entries: usize,
    pub tensor_entries: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            polar_vertices: crate::polar::DEFAULT_VERTEX_CAP,
            index_size: 4096,
            level_multisets: 2_000_000,
            counterexample_entries: 100_000,
            tensor_entries: 1_000_000,
        }
    }
}

impl Guards {
    /// Every cap replaced by `limit`.
    pub fn uniform(limit: usize) -> Self {
        Guards {
            polar_vertices: limit,
            index_size: limit,
            level_multisets: limit,
            counterexample_entries: limit,
            tensor_entries: limit,
        }
    }

    /// Defaults, unless `RSS_SIZE_GUARD` holds a positive integer.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ENV_VAR) {
            Ok(s) => s
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&k| k > 0)
                .map(Guards::uniform)
                .ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("{ENV_VAR} must be a positive integer, got `{s}`"),
                }),
            Err(_) => Ok(Guards::default()),
        }
    }
}

pub(crate) fn check(guard: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeGuard { guard, size, limit })
    } else {
        Ok(())
    }
}
