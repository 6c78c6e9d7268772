//! Limits for the exhaustive searches.

use crate::error::{Error, Result};

/// Environment variable that overrides the brute-force style limits.
pub const MAX_SEARCH_ENV: &str = "DFT_UNITARY_MAX_SEARCH";

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    /// Subsets visited by the exhaustive prescribed-zero-set search.
    pub exhaustive_subsets: u128,
    /// Combinations (or ordered pairs of combinations) visited by brute-force counters.
    pub brute_force: u128,
    /// Index sets yielded by `enumerate_valid`.
    pub enumeration: u128,
    /// Largest N for the general clique search.
    pub clique_max_n: usize,
    /// Largest N for the odd-hole search.
    pub hole_max_n: usize,
    /// Default longest cycle examined by the odd-hole search.
    pub hole_max_len: usize,
    /// Search-tree nodes visited by the exhaustive tiling-complement search.
    pub tiling_nodes: u128,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            exhaustive_subsets: 1 << 24,
            brute_force: 10_000_000,
            enumeration: 10_000_000,
            clique_max_n: 64,
            hole_max_n: 100,
            hole_max_len: 13,
            tiling_nodes: 50_000_000,
        }
    }
}

impl SearchBounds {
    /// Defaults, with the brute-force limits replaced by `DFT_UNITARY_MAX_SEARCH` when set.
    pub fn from_env() -> Result<Self> {
        let mut bounds = SearchBounds::default();
        if let Ok(raw) = std::env::var(MAX_SEARCH_ENV) {
            let limit: u128 = raw.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("{MAX_SEARCH_ENV}={raw:?} is not an integer"))
            })?;
            bounds = bounds.with_search_limit(limit);
        }
        Ok(bounds)
    }

    pub fn with_search_limit(mut self, limit: u128) -> Self {
        self.exhaustive_subsets = limit;
        self.brute_force = limit;
        self.enumeration = limit;
        self.tiling_nodes = limit;
        self
    }

    pub(crate) fn check(what: &'static str, required: u128, limit: u128) -> Result<()> {
        if required > limit {
            Err(Error::BoundExceeded {
                what,
                required,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
