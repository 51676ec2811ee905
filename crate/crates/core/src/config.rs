//! Knobs shared by the quartic and cubic sampling stages.

use serde::{Deserialize, Serialize};

use crate::arith::is_prime_u64;

pub const DEFAULT_ELL_SET: [u64; 5] = [2, 3, 5, 7, 11];
pub const DEFAULT_QUARTIC_SEARCH_BOUND: u64 = 256;
pub const DEFAULT_CUBIC_SEARCH_BOUND: u64 = 64;
pub const DEFAULT_STAGE_BUDGET: u64 = 10_000;

/// How the ternary cubic is mapped to `(c4, c6)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CubicInvariantMode {
    /// Classical degree-4 and degree-6 invariants.
    #[default]
    Classical,
    /// Hash of the coefficient vector, emulating a prototype that had no
    /// real invariants. Singularity is still decided classically.
    HashPlaceholder,
}

impl CubicInvariantMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CubicInvariantMode::Classical => "classical",
            CubicInvariantMode::HashPlaceholder => "hash_placeholder",
        }
    }
}

impl std::str::FromStr for CubicInvariantMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" => Ok(Self::Classical),
            "hash_placeholder" | "hash-placeholder" => Ok(Self::HashPlaceholder),
            other => Err(format!("unknown cubic invariant mode `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentConfig {
    /// Small primes for the `F_ℓ` solubility scans.
    pub ell_set: Vec<u64>,
    /// Abscissae tried over `F_p` for the quartic.
    pub quartic_search_bound: u64,
    /// Abscissae tried over `F_p` for the cubic.
    pub cubic_search_bound: u64,
    /// Draws allowed per stage within one trial.
    pub stage_budget: u64,
    pub cubic_mode: CubicInvariantMode,
}

impl Default for DescentConfig {
    fn default() -> Self {
        Self {
            ell_set: DEFAULT_ELL_SET.to_vec(),
            quartic_search_bound: DEFAULT_QUARTIC_SEARCH_BOUND,
            cubic_search_bound: DEFAULT_CUBIC_SEARCH_BOUND,
            stage_budget: DEFAULT_STAGE_BUDGET,
            cubic_mode: CubicInvariantMode::Classical,
        }
    }
}

impl DescentConfig {
    pub fn check(&self) -> Result<(), String> {
        if let Some(bad) = self.ell_set.iter().find(|&&l| !is_prime_u64(l)) {
            return Err(format!("ell set entry {bad} is not prime"));
        }
        if self.ell_set.iter().any(|&l| l > 1 << 12) {
            return Err("ell set entries must be at most 4096".into());
        }
        if self.stage_budget == 0 {
            return Err("stage budget must be at least 1".into());
        }
        Ok(())
    }
}
